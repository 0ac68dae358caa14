use serde::Serialize;
use serde_json::Value;

/// Result of a verifier in the stable `{check, ok, details}` shape.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub check: String,
    pub ok: bool,
    pub details: Value,
}

impl AnalysisReport {
    pub fn new(check: impl Into<String>, ok: bool, details: &(impl Serialize + ?Sized)) -> Self {
        AnalysisReport {
            check: check.into(),
            ok,
            // Every details type here is plain data; serialization cannot fail.
            details: serde_json::to_value(details).expect("details serialize"),
        }
    }
}

/// Typed analysis results that can be rendered as an [`AnalysisReport`].
pub trait Check: Serialize {
    const NAME: &'static str;

    fn passed(&self) -> bool;

    fn to_report(&self) -> AnalysisReport {
        AnalysisReport::new(Self::NAME, self.passed(), self)
    }
}
