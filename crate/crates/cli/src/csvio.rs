//! Pair lists as CSV: `n,a,b,delta,ratio`.

use std::io::{self, Read, Write};

use gdwn::beatty::BeattyPair;
use gdwn::Pair;

use crate::CliError;

pub const PAIRS_HEADER: &str = "n,a,b,delta,ratio";

/// `b/a` rounded half-up to six decimals, computed exactly. Empty for `a = 0`.
pub fn format_ratio(a: u64, b: u64) -> String {
    if a == 0 {
        return String::new();
    }
    let scaled = (2 * b as u128 * 1_000_000 + a as u128) / (2 * a as u128);
    format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
}

pub fn write_pairs(out: &mut dyn Write, pairs: &[Pair]) -> io::Result<()> {
    writeln!(out, "{PAIRS_HEADER}")?;
    for (n, p) in pairs.iter().enumerate() {
        writeln!(out, "{n},{},{},{},{}", p.a, p.b, p.delta(), format_ratio(p.a, p.b))?;
    }
    Ok(())
}

pub fn write_wythoff_table(out: &mut dyn Write, rows: &[BeattyPair]) -> io::Result<()> {
    writeln!(out, "n,A,B,Delta")?;
    for r in rows {
        writeln!(out, "{},{},{},{}", r.n, r.a, r.b, r.delta)?;
    }
    Ok(())
}

/// Reads a pair list from CSV with a header naming `a` and `b` columns;
/// other columns are ignored.
pub fn read_pairs(input: impl Read, source: &str) -> Result<Vec<Pair>, CliError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let bad = |msg: String| CliError::Invalid(format!("{source}: {msg}"));
    let headers = rdr.headers().map_err(|e| bad(e.to_string()))?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h.eq_ignore_ascii_case(name))
            .ok_or_else(|| bad(format!("missing column {name:?} (header is {:?})", headers.iter().collect::<Vec<_>>())))
    };
    let (ia, ib) = (col("a")?, col("b")?);
    let mut pairs = Vec::new();
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        let line = row + 2;
        let field = |i: usize, name: &str| -> Result<u64, CliError> {
            let v = rec.get(i).unwrap_or("");
            v.parse()
                .map_err(|_| bad(format!("line {line}: {name} = {v:?} is not a nonnegative integer")))
        };
        pairs.push(Pair::new(field(ia, "a")?, field(ib, "b")?));
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios_round_half_up() {
        assert_eq!(format_ratio(0, 0), "");
        assert_eq!(format_ratio(1, 3), "3.000000");
        assert_eq!(format_ratio(9, 17), "1.888889");
        assert_eq!(format_ratio(3, 2), "0.666667");
        assert_eq!(format_ratio(8, 1), "0.125000");
        assert_eq!(format_ratio(u64::MAX, u64::MAX), "1.000000");
    }

    #[test]
    fn round_trip() {
        let pairs: Vec<Pair> = [(0, 0), (1, 3), (2, 6)].into_iter().map(Pair::from).collect();
        let mut buf = Vec::new();
        write_pairs(&mut buf, &pairs).unwrap();
        assert_eq!(read_pairs(&buf[..], "buf").unwrap(), pairs);
    }

    #[test]
    fn rejects_bad_rows() {
        let err = read_pairs("a,b\n1,x\n".as_bytes(), "in").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(read_pairs("x,y\n1,2\n".as_bytes(), "in").is_err());
        assert!(read_pairs("a,b\n-1,2\n".as_bytes(), "in").is_err());
    }
}
