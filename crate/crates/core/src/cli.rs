//! Report builders behind the `opnorm` subcommands. They return text and a
//! status so the binary only handles argument parsing, files and exit codes.

use std::fmt::Write as _;

use crate::dense::{Matrix, NormIndex};
use crate::error::Result;
use crate::hardness::{
    mc_from_graph, quadratic_max_bruteforce, reduction_value, threshold_holds, Graph,
};
use crate::io::format_g17;
use crate::norms::{induced_norm_with, NormOptions, NormPair, NormResult};
use crate::oracle::lower_bound_estimate;
use crate::rng::seeded;

/// Relative slack before an oracle value above the closed form counts as a bug.
pub const CHECK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSelection {
    One(NormPair),
    All,
}

impl std::str::FromStr for PairSelection {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().eq_ignore_ascii_case("all") {
            Ok(PairSelection::All)
        } else {
            Ok(PairSelection::One(s.parse()?))
        }
    }
}

fn join_g17(xs: &[f64]) -> String {
    xs.iter().map(|&x| format_g17(x)).collect::<Vec<_>>().join(",")
}

/// `norm`: a single value, or the 3x3 table with rows `p` and columns `q`.
pub fn norm_report(a: &Matrix, which: PairSelection, witness: bool, opts: &NormOptions) -> Result<String> {
    let mut out = String::new();
    match which {
        PairSelection::One(pair) => {
            let r = induced_norm_with(a, pair, opts)?;
            writeln!(out, "{}", format_g17(r.value)).unwrap();
            if witness {
                writeln!(out, "witness: {}", join_g17(&r.witness)).unwrap();
            }
        }
        PairSelection::All => {
            let results: Vec<NormResult> = NormPair::ALL
                .iter()
                .map(|&pair| induced_norm_with(a, pair, opts))
                .collect::<Result<_>>()?;
            writeln!(out, "{:<5}{:>26}{:>26}{:>26}", "p\\q", "1", "2", "inf").unwrap();
            for (p, row) in NormIndex::ALL.iter().zip(results.chunks(3)) {
                write!(out, "{:<5}", p.to_string()).unwrap();
                for r in row {
                    write!(out, "{:>26}", format_g17(r.value)).unwrap();
                }
                out.push('\n');
            }
            if witness {
                for r in &results {
                    writeln!(out, "witness {}: {}", r.pair, join_g17(&r.witness)).unwrap();
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub pair: NormPair,
    pub value: f64,
    pub lower_bound: f64,
    pub gap: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub rows: Vec<CheckRow>,
    pub text: String,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.rows.iter().all(|r| r.ok)
    }
}

/// `check`: closed form against the sampling oracle for all nine pairs.
/// `evaluate` supplies the closed-form values so a broken one can be
/// injected in tests.
pub fn check_report(
    a: &Matrix,
    samples: usize,
    seed: u64,
    evaluate: impl Fn(&Matrix, NormPair) -> Result<NormResult>,
) -> Result<CheckReport> {
    let mut rows = Vec::with_capacity(9);
    let mut text = format!(
        "{:<7}{:>26}{:>26}{:>26}  status\n",
        "pair", "closed_form", "oracle_lower_bound", "gap"
    );
    for (i, &pair) in NormPair::ALL.iter().enumerate() {
        let value = evaluate(a, pair)?.value;
        let mut rng = seeded(seed.wrapping_add(i as u64));
        let lower_bound = lower_bound_estimate(a, pair, samples, &mut rng)?.lower_bound;
        let gap = value - lower_bound;
        let ok = gap >= -CHECK_TOLERANCE * value.abs().max(1.0);
        writeln!(
            text,
            "{:<7}{:>26}{:>26}{:>26}  {}",
            pair.to_string(),
            format_g17(value),
            format_g17(lower_bound),
            format_g17(gap),
            if ok { "ok" } else { "VIOLATION" }
        )
        .unwrap();
        rows.push(CheckRow {
            pair,
            value,
            lower_bound,
            gap,
            ok,
        });
    }
    Ok(CheckReport { rows, text })
}

/// The default `check` evaluator.
pub fn closed_form(opts: NormOptions) -> impl Fn(&Matrix, NormPair) -> Result<NormResult> {
    move |a, pair| induced_norm_with(a, pair, &opts)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardnessReport {
    pub size: usize,
    pub norm_squared: f64,
    pub decision: bool,
    pub bruteforce: Option<(f64, bool)>,
    pub text: String,
}

impl HardnessReport {
    /// `None` without brute force.
    pub fn agree(&self) -> Option<bool> {
        self.bruteforce.map(|(_, d)| d == self.decision)
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "YES"
    } else {
        "NO"
    }
}

/// `hardness`: decide `max uᵀAu >= M` for the graph's MC-matrix through the
/// `(∞,2)`-norm of its square root, optionally confirmed by enumeration.
pub fn hardness_report(g: &Graph, threshold: u64, bruteforce: bool, opts: &NormOptions) -> Result<HardnessReport> {
    let a = mc_from_graph(g)?;
    let norm_squared = reduction_value(&a, opts)?;
    let decision = threshold_holds(norm_squared, threshold);
    let mut text = String::new();
    writeln!(text, "mc_matrix_size: {}", a.size()).unwrap();
    writeln!(text, "edges: {}", g.edge_count()).unwrap();
    writeln!(text, "sqrt_norm_inf_2_squared: {}", format_g17(norm_squared)).unwrap();
    writeln!(text, "threshold: {threshold}").unwrap();
    writeln!(text, "decision: {}", yes_no(decision)).unwrap();
    let brute = if bruteforce {
        let (max, u) = quadratic_max_bruteforce(a.matrix())?;
        let brute_decision = max >= threshold as f64;
        writeln!(text, "bruteforce_max: {}", format_g17(max)).unwrap();
        writeln!(text, "bruteforce_signs: {u}").unwrap();
        writeln!(text, "max_cut: {}", g.cut_size(&u)).unwrap();
        writeln!(text, "bruteforce_decision: {}", yes_no(brute_decision)).unwrap();
        writeln!(
            text,
            "agree: {}",
            if brute_decision == decision { "yes" } else { "NO" }
        )
        .unwrap();
        Some((max, brute_decision))
    } else {
        None
    };
    Ok(HardnessReport {
        size: a.size(),
        norm_squared,
        decision,
        bruteforce: brute,
        text,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use NormIndex::*;

    fn m22() -> Matrix {
        Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap()
    }

    #[test]
    fn single_norm_output() {
        let o = NormOptions::default();
        let s = norm_report(&m22(), PairSelection::One(NormPair::new(One, One)), false, &o).unwrap();
        assert_eq!(s, "6\n");
        let s = norm_report(&m22(), PairSelection::One(NormPair::new(One, One)), true, &o).unwrap();
        assert_eq!(s, "6\nwitness: 0,1\n");
        let s = norm_report(&m22(), PairSelection::One(NormPair::new(Two, Two)), false, &o).unwrap();
        let v: f64 = s.trim().parse().unwrap();
        assert!((v - 5.464_985_704_219_043).abs() <= 1e-9);
    }

    #[test]
    fn identity_table() {
        let s = norm_report(&Matrix::identity(3).unwrap(), PairSelection::All, false, &NormOptions::default())
            .unwrap();
        let rows: Vec<Vec<&str>> = s.lines().skip(1).map(|l| l.split_whitespace().collect()).collect();
        let r3 = format_g17(3f64.sqrt());
        assert_eq!(rows[0], vec!["1", "1", "1", "1"]);
        assert_eq!(rows[1], vec!["2", r3.as_str(), "1", "1"]);
        assert_eq!(rows[2], vec!["inf", "3", r3.as_str(), "1"]);
    }

    #[test]
    fn check_zero_and_identity() {
        let z = Matrix::zeros(2, 2).unwrap();
        let r = check_report(&z, 10, 1, closed_form(NormOptions::default())).unwrap();
        assert!(r.ok());
        assert!(r.rows.iter().all(|row| row.value == 0.0 && row.gap == 0.0));

        let r = check_report(&Matrix::identity(2).unwrap(), 100, 1, closed_form(NormOptions::default()))
            .unwrap();
        assert!(r.ok());
        assert!(r.rows.iter().all(|row| row.gap >= -1e-9));
    }

    #[test]
    fn check_flags_corrupted_norm() {
        let corrupt = |a: &Matrix, pair: NormPair| {
            let mut r = induced_norm_with(a, pair, &NormOptions::default())?;
            if pair == NormPair::new(Infinity, Two) {
                r.value *= 0.5;
            }
            Ok(r)
        };
        let r = check_report(&m22(), 100, 3, corrupt).unwrap();
        assert!(!r.ok());
        assert!(r.text.contains("VIOLATION"));
    }

    #[test]
    fn hardness_examples() {
        let o = NormOptions::default();
        let path = Graph::path(3).unwrap();
        let r = hardness_report(&path, 13, true, &o).unwrap();
        assert!(r.decision);
        assert_eq!(r.bruteforce.unwrap().0, 13.0);
        assert_eq!(r.agree(), Some(true));
        assert!(r.text.contains("decision: YES"));
        let r = hardness_report(&path, 14, true, &o).unwrap();
        assert!(!r.decision && r.agree() == Some(true));
        let r = hardness_report(&Graph::edgeless(2).unwrap(), 4, false, &o).unwrap();
        assert!(r.decision && r.agree().is_none());
    }

    #[test]
    fn selection_parsing() {
        assert_eq!("all".parse::<PairSelection>().unwrap(), PairSelection::All);
        assert_eq!(
            "inf,1".parse::<PairSelection>().unwrap(),
            PairSelection::One(NormPair::new(Infinity, One))
        );
        assert!("x".parse::<PairSelection>().is_err());
    }
}
