use std::fs;
use std::path::Path;

use lcprof_core::coeff_poly::{Fp, Seq};
use lcprof_core::{Error, Result};

/// Comma- or whitespace-separated field integers. Values outside `[0, p)`
/// are rejected rather than reduced.
pub fn parse_sequence(text: &str, field: Fp) -> Result<Seq<Fp>> {
    let p = field.modulus();
    let terms = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let v: i128 = t
                .parse()
                .map_err(|_| Error::Parse(format!("'{t}' is not an integer")))?;
            if v < 0 || v >= p as i128 {
                return Err(Error::Range {
                    value: t.to_string(),
                    p,
                });
            }
            Ok(v as u32)
        })
        .collect::<Result<Vec<u32>>>()?;
    Ok(Seq::new(field, terms))
}

/// One sequence per line. Blank lines and `#` comments are skipped.
pub fn read_sequences(path: &Path, field: Fp) -> Result<Vec<Seq<Fp>>> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .enumerate()
        .map(|(i, l)| {
            parse_sequence(l, field).map_err(|e| match e {
                Error::Parse(m) => Error::Parse(format!("{}: line {}: {m}", path.display(), i + 1)),
                other => other,
            })
        })
        .collect()
}
