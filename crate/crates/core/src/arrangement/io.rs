//! Plain-text arrangement files.
//!
//! ```text
//! vars: 3
//! # xyz(x+y+z)
//! 1 0 0
//! 0 1 0
//! 0 0 1
//! 1 1 1
//! ```
//!
//! A row may end in `| m` (or `| mult: m`) to give a multiplicity.

use super::{Arrangement, Hyperplane, Multiplicity};
use crate::algebra::{format_rational, parse_rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ArrangementFile {
    pub arrangement: Arrangement,
    /// Present iff some row carried a multiplicity column.
    pub mult: Option<Multiplicity>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_arrangement(text: &str) -> Result<ArrangementFile> {
    let mut nvars: Option<usize> = None;
    let mut hyperplanes = Vec::new();
    let mut mults = Vec::new();
    let mut any_mult = false;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some(n) = nvars else {
            let rest = line
                .strip_prefix("vars:")
                .ok_or_else(|| parse_err(lineno, "expected `vars: <n>` header"))?;
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad variable count `{}`", rest.trim())))?;
            if n == 0 {
                return Err(parse_err(lineno, "variable count must be positive"));
            }
            nvars = Some(n);
            continue;
        };
        let (coeff_part, mult_part) = match line.split_once('|') {
            Some((c, m)) => (c, Some(m.trim())),
            None => (line, None),
        };
        let tokens: Vec<&str> = coeff_part.split_whitespace().collect();
        if tokens.len() != n {
            return Err(parse_err(
                lineno,
                format!("expected {n} coefficients, found {}", tokens.len()),
            ));
        }
        let form = tokens
            .iter()
            .map(|t| {
                parse_rational(t).ok_or_else(|| parse_err(lineno, format!("bad rational `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let h = Hyperplane::new(form).map_err(|e| parse_err(lineno, e.to_string()))?;
        if let Some(j) = hyperplanes.iter().position(|g| *g == h) {
            return Err(parse_err(
                lineno,
                format!("hyperplane is proportional to hyperplane {j}"),
            ));
        }
        hyperplanes.push(h);
        let m = match mult_part {
            None => 1,
            Some(m) => {
                any_mult = true;
                let m = m.strip_prefix("mult:").unwrap_or(m).trim();
                match m.parse::<u32>() {
                    Ok(v) if v >= 1 => v,
                    _ => return Err(parse_err(lineno, format!("bad multiplicity `{m}`"))),
                }
            }
        };
        mults.push(m);
    }
    let nvars = nvars.ok_or_else(|| parse_err(1, "missing `vars: <n>` header"))?;
    let arrangement = Arrangement::new(nvars, hyperplanes)?;
    let mult = if any_mult {
        Some(Multiplicity::new(mults)?)
    } else {
        None
    };
    Ok(ArrangementFile { arrangement, mult })
}

/// Serialize in normalized form; `parse_arrangement` inverts this exactly.
pub fn write_arrangement(a: &Arrangement, mult: Option<&Multiplicity>) -> String {
    let mut out = format!("vars: {}\n", a.nvars());
    for (i, h) in a.hyperplanes().iter().enumerate() {
        let row: Vec<String> = h.form().iter().map(format_rational).collect();
        out.push_str(&row.join(" "));
        if let Some(m) = mult {
            out.push_str(&format!(" | {}", m.get(i)));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_with_comments_and_mult() {
        let text = "# example\nvars: 2\n1 0 | 2\n\n# second\n0 -1/2 | mult: 1\n";
        let f = parse_arrangement(text).unwrap();
        assert_eq!(f.arrangement.len(), 2);
        assert_eq!(f.mult.as_ref().unwrap().values(), &[2, 1]);
        assert_eq!(
            write_arrangement(&f.arrangement, f.mult.as_ref()),
            "vars: 2\n1 0 | 2\n0 1 | 1\n"
        );
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_arrangement("vars: 3\n1 0 0\n1 0.5 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = parse_arrangement("vars: 3\n1 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_arrangement("1 0 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = parse_arrangement("vars: 2\n1 1\n2 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = parse_arrangement("vars: 2\n0 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn round_trip_normalizes() {
        let f = parse_arrangement("vars: 3\n2 4 0\n0 0 -3\n").unwrap();
        let w = write_arrangement(&f.arrangement, None);
        assert_eq!(w, "vars: 3\n1 2 0\n0 0 1\n");
        assert_eq!(parse_arrangement(&w).unwrap(), f);
    }
}
