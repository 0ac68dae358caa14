//! Flat `key = value` files holding default flags.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

use crate::CliError;

/// Flags read from `path`, in file order, as `--key value` arguments.
///
/// `key = true` becomes a bare `--key`; `key = false` is dropped. Blank lines
/// and lines starting with `#` are skipped.
pub fn load(path: &Path) -> Result<Vec<OsString>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("cannot read config {}: {e}", path.display())))?;
    let mut args = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Invalid(format!(
                "{}:{}: expected key = value, got {line:?}",
                path.display(),
                i + 1
            )));
        };
        let key = key.trim().trim_start_matches("--");
        let value = value.trim();
        if key.is_empty() || key == "config" {
            return Err(CliError::Invalid(format!("{}:{}: invalid key {key:?}", path.display(), i + 1)));
        }
        match value {
            "true" => args.push(format!("--{key}").into()),
            "false" => {}
            _ => {
                args.push(format!("--{key}").into());
                args.push(value.into());
            }
        }
    }
    Ok(args)
}

/// Removes `--config PATH` / `--config=PATH` from `argv` and splices the file's
/// flags in directly after the subcommand name, so flags given on the
/// command line (parsed later) take precedence.
pub fn expand(argv: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let mut path = None;
    let mut rest = Vec::with_capacity(argv.len());
    let mut it = argv.into_iter();
    while let Some(arg) = it.next() {
        let s = arg.to_string_lossy();
        if s == "--config" {
            let v = it
                .next()
                .ok_or_else(|| CliError::Invalid("--config needs a path".into()))?;
            path = Some(v);
        } else if let Some(v) = s.strip_prefix("--config=") {
            path = Some(OsString::from(v));
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let extra = load(Path::new(&path))?;
    // The subcommand is the first non-flag argument after the program name.
    let at = rest
        .iter()
        .skip(1)
        .position(|a| !a.to_string_lossy().starts_with('-'))
        .map(|i| i + 2)
        .unwrap_or(rest.len());
    rest.splice(at..at, extra);
    Ok(rest)
}
