//! Text formats: matrix CSV, graph edge lists, and number formatting.
//!
//! Matrix CSV is one row per line with comma-separated decimal literals
//! (scientific notation allowed). Blank lines are skipped.
//!
//! Graph files start with the vertex count `n`; every following line holds
//! one edge `i j` with `1 <= i < j <= n`. `#` starts a comment.

use crate::dense::Matrix;
use crate::error::{Error, Result};
use crate::hardness::Graph;

pub fn parse_matrix_csv(text: &str) -> Result<Matrix> {
    let mut cols = None;
    let mut data = Vec::new();
    let mut rows = 0;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut count = 0;
        for (c, tok) in line.split(',').enumerate() {
            let tok = tok.trim();
            let value: f64 = tok.parse().map_err(|_| Error::Parse {
                line: line_no,
                column: c + 1,
                message: format!("cannot parse {tok:?} as a number"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    line: line_no,
                    column: c + 1,
                    message: format!("non-finite value {tok:?}"),
                });
            }
            data.push(value);
            count += 1;
        }
        match cols {
            None => cols = Some(count),
            Some(expected) if expected != count => {
                return Err(Error::Parse {
                    line: line_no,
                    column: count.min(expected) + 1,
                    message: format!("row has {count} entries, expected {expected}"),
                })
            }
            _ => {}
        }
        rows += 1;
    }
    let cols = cols.ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "no matrix rows found".into(),
    })?;
    Matrix::new(rows, cols, data)
}

/// Inverse of [`parse_matrix_csv`]; entries use [`format_g17`].
pub fn format_matrix_csv(a: &Matrix) -> String {
    let mut out = String::new();
    for r in 0..a.rows() {
        let row: Vec<String> = (0..a.cols()).map(|j| format_g17(a[(r, j)])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let parse = |t: &str, column: usize| -> Result<usize> {
            t.parse().map_err(|_| Error::Parse {
                line: line_no,
                column,
                message: format!("expected a positive integer, found {t:?}"),
            })
        };
        match n {
            None => {
                if toks.len() != 1 {
                    return Err(Error::Parse {
                        line: line_no,
                        column: 1,
                        message: "first line must hold only the vertex count".into(),
                    });
                }
                let v = parse(toks[0], 1)?;
                if v == 0 {
                    return Err(Error::Parse {
                        line: line_no,
                        column: 1,
                        message: "vertex count must be at least 1".into(),
                    });
                }
                n = Some(v);
            }
            Some(nv) => {
                if toks.len() != 2 {
                    return Err(Error::Parse {
                        line: line_no,
                        column: 1,
                        message: format!("expected an edge `i j`, found {line:?}"),
                    });
                }
                let i = parse(toks[0], 1)?;
                let j = parse(toks[1], 2)?;
                if !(1 <= i && i < j && j <= nv) {
                    return Err(Error::Parse {
                        line: line_no,
                        column: 1,
                        message: format!("edge {i} {j} must satisfy 1 <= i < j <= {nv}"),
                    });
                }
                if !seen.insert((i, j)) {
                    return Err(Error::Parse {
                        line: line_no,
                        column: 1,
                        message: format!("duplicate edge {i} {j}"),
                    });
                }
                edges.push((i - 1, j - 1));
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "missing vertex count".into(),
    })?;
    Graph::new(n, edges)
}

pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("{}\n", g.vertex_count());
    for (i, j) in g.edges() {
        out.push_str(&format!("{} {}\n", i + 1, j + 1));
    }
    out
}

/// `%.17g`: 17 significant digits, trailing zeros dropped, exponent form
/// outside `[1e-5, 1e17)`. Round-trips every finite `f64`.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        let m = trim_zeros(mantissa.to_string());
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
