use lcprof_core::coeff_poly::{Fp, Ring, Seq};
use lcprof_core::mp_engine::{mp_trace, ProfileReport};

/// Left-aligned columns, two spaces apart, no trailing blanks.
pub fn columns(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..width)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            line.extend(std::iter::repeat_n(' ', widths[c] - cell.chars().count()));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Row `j` shows the discrepancy of step `j` (row 0: the initial `Delta' = 1`),
/// the exponent after step `j` and the first column of `M^(j)`.
pub fn profile_table(s: &Seq<Fp>, report: &ProfileReport<Fp>, config: &lcprof_core::mp_engine::MpConfig<Fp>) -> String {
    let field = report.ring;
    let trace = mp_trace(s, config);
    let mut rows = vec![vec![
        "j".to_string(),
        "Delta_j".to_string(),
        "e_{j-1}".to_string(),
        "mu^(j)".to_string(),
        "mu'^(j)".to_string(),
    ]];
    for (j, m) in trace.iter().enumerate() {
        let (delta, e) = if j == 0 {
            (field.format_elem(&field.one()), String::new())
        } else {
            (field.format_elem(&report.deltas[j - 1]), report.exponents[j].to_string())
        };
        rows.push(vec![j.to_string(), delta, e, m.get(0, 0).to_string(), m.get(1, 0).to_string()]);
    }
    columns(&rows)
}
