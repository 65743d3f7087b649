//! Plain-text family format: a header line `n=<n>` followed by one member
//! per line, written as its sorted elements separated by single spaces. The
//! empty set is an empty line. Members are written in ascending mask order
//! and every line, including the last, ends with `\n`.

use std::fmt::Write as _;

use super::explicit::ExplicitFamily;
use super::mask::SubsetMask;
use crate::error::{Error, Result};

pub fn to_text(fam: &ExplicitFamily) -> String {
    let mut out = format!("n={}\n", fam.ground_size());
    for m in fam.members() {
        let _ = writeln!(out, "{m}");
    }
    out
}

pub fn from_text(text: &str) -> Result<ExplicitFamily> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let (header, body) = text.split_once('\n').ok_or_else(|| err(1, "missing header line".into()))?;
    let n: u32 = header
        .strip_prefix("n=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| err(1, format!("expected \"n=<size>\", found {header:?}")))?;
    let mut fam = ExplicitFamily::empty(n)?;
    if body.is_empty() {
        return Ok(fam);
    }
    let body = body.strip_suffix('\n').ok_or_else(|| err(0, "last line is not terminated by a newline".into()))?;
    for (k, line) in body.split('\n').enumerate() {
        let lineno = k + 2;
        let mut mask = SubsetMask::EMPTY;
        let mut last = 0u32;
        if !line.is_empty() {
            for tok in line.split(' ') {
                let e: u32 = tok.parse().map_err(|_| err(lineno, format!("bad element {tok:?}")))?;
                if e == 0 || e > n {
                    return Err(err(lineno, format!("element {e} outside [1, {n}]")));
                }
                if e <= last {
                    return Err(err(lineno, "elements must be strictly increasing".into()));
                }
                last = e;
                mask = mask.with(e);
            }
        }
        if fam.contains(mask) {
            return Err(err(lineno, format!("duplicate member {{{mask}}}")));
        }
        fam.insert(mask);
    }
    Ok(fam)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_bit_exact() {
        let text = "n=4\n\n1\n1 3 4\n2 3 4\n";
        let fam = from_text(text).unwrap();
        assert_eq!(fam.len(), 4);
        assert_eq!(to_text(&fam), text);
        assert_eq!(to_text(&ExplicitFamily::empty(3).unwrap()), "n=3\n");
        assert!(from_text("n=3\n").unwrap().is_empty());
    }

    #[test]
    fn rejects_malformed() {
        assert!(from_text("m=3\n1\n").is_err());
        assert!(from_text("n=3\n4\n").is_err());
        assert!(from_text("n=3\n2 1\n").is_err());
        assert!(from_text("n=3\n1\n1\n").is_err());
        assert!(from_text("n=3\n1").is_err());
        assert!(from_text("n=3\n1  2\n").is_err());
        assert!(from_text("n=30\n").is_err());
    }
}
