//! Acceptance suite. Runs every criterion in order, prints one PASS/FAIL line
//! each and exits non-zero if any failed.

use std::process::ExitCode;
use std::time::Instant;

use opnorm::bench::{fit_model, run_bench, BenchConfig, BenchEntry, BenchRecord, GrowthModel};
use opnorm::hardness::{mc_from_graph, quadratic_max_bruteforce, reduction_value, threshold_holds};
use opnorm::oracle::{exact_extreme_oracle, lower_bound_estimate};
use opnorm::rng::{random_matrix, seeded, uniform_pm1};
use opnorm::spectral::power_iteration;
use opnorm::{induced_norm, vec_norm, Graph, Matrix, NormIndex, NormOptions, NormPair};

use NormIndex::{Infinity, One, Two};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: opnorm::Error) -> String {
    e.to_string()
}

/// 200 matrices covering every shape from 1x1 to 6x6.
fn small_matrices() -> Vec<Matrix> {
    (0..200u64)
        .map(|i| {
            let rows = 1 + (i % 6) as usize;
            let cols = 1 + ((i / 6) % 6) as usize;
            random_matrix(i, rows, cols)
        })
        .collect()
}

fn oracle_suite() -> Outcome {
    let tol = 1e-9;
    let mut worst_gap = 0f64;
    for (i, a) in small_matrices().iter().enumerate() {
        for (k, &pair) in NormPair::ALL.iter().enumerate() {
            let r = induced_norm(a, pair).map_err(err)?;
            let mut rng = seeded(1_000_000 + 9 * i as u64 + k as u64);
            let lb = lower_bound_estimate(a, pair, 10_000, &mut rng).map_err(err)?.lower_bound;
            ensure(lb <= r.value * (1.0 + tol), || {
                format!("matrix {i} pair ({pair}): oracle {lb} exceeds closed form {}", r.value)
            })?;
            worst_gap = worst_gap.max((lb - r.value) / r.value.max(f64::MIN_POSITIVE));
            let image = a.matvec(&r.witness).map_err(err)?;
            let achieved = vec_norm(&image, pair.q) / vec_norm(&r.witness, pair.p);
            ensure(rel_close(achieved, r.value, tol), || {
                format!("matrix {i} pair ({pair}): witness gives {achieved}, value {}", r.value)
            })?;
        }
    }
    Ok(format!("200 matrices x 9 pairs, worst relative excess {worst_gap:.3e}"))
}

fn exact_oracle() -> Outcome {
    let mut checked = 0;
    for i in 0..100u64 {
        let rows = 1 + (i % 8) as usize;
        let cols = 1 + ((i * 5 + i / 8) % 8) as usize;
        let a = random_matrix(10_000 + i, rows, cols);
        for p in [One, Infinity] {
            for q in NormIndex::ALL {
                let pair = NormPair::new(p, q);
                let closed = induced_norm(&a, pair).map_err(err)?.value;
                let exact = exact_extreme_oracle(&a, pair).map_err(err)?.lower_bound;
                ensure(rel_close(closed, exact, 1e-12), || {
                    format!("matrix {i} {rows}x{cols} pair ({pair}): closed {closed}, exact {exact}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} comparisons on 100 matrices up to 8x8"))
}

fn spectral_agreement() -> Outcome {
    let spectral = NormPair::new(Two, Two);
    let a = Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).map_err(err)?;
    let v = induced_norm(&a, spectral).map_err(err)?.value;
    // AᵀA = [[10,14],[14,20]]
    let closed = ((30.0 + (30.0f64 * 30.0 - 4.0 * (10.0 * 20.0 - 14.0 * 14.0)).sqrt()) / 2.0).sqrt();
    ensure((v - closed).abs() <= 1e-9, || format!("[[1,2],[3,4]]: {v} vs {closed}"))?;
    let mut worst = 0f64;
    for i in 0..100u64 {
        let rows = 1 + (i % 8) as usize;
        let cols = 1 + ((i / 8) % 8) as usize;
        let a = random_matrix(20_000 + i, rows, cols);
        let v = induced_norm(&a, spectral).map_err(err)?.value;
        let est = power_iteration(&a.gram(), i).map_err(err)?;
        let p = est.value.max(0.0).sqrt();
        ensure(rel_close(v, p, 1e-5), || {
            format!("matrix {i} {rows}x{cols}: jacobi {v}, power {p}")
        })?;
        worst = worst.max((v - p).abs() / v.max(f64::MIN_POSITIVE));
    }
    Ok(format!("[[1,2],[3,4]] = {v:.15}, 100 matrices worst relative gap {worst:.3e}"))
}

fn duality() -> Outcome {
    let mut mats = small_matrices();
    mats.extend((0..40u64).map(|i| random_matrix(30_000 + i, 1 + (i % 12) as usize, 1 + (i % 7) as usize)));
    mats.push(Matrix::zeros(3, 2).map_err(err)?);
    for (i, a) in mats.iter().enumerate() {
        let lhs = induced_norm(a, NormPair::new(Two, One)).map_err(err)?.value;
        let rhs = induced_norm(&a.transpose(), NormPair::new(Infinity, Two)).map_err(err)?.value;
        ensure(lhs.to_bits() == rhs.to_bits(), || format!("matrix {i}: {lhs} vs {rhs}"))?;
    }
    Ok(format!("{} matrices identical to the bit", mats.len()))
}

fn reduction() -> Outcome {
    let opts = NormOptions::default();
    let mut graphs: Vec<Graph> = Vec::new();
    for n in 1..=4 {
        graphs.extend(Graph::all_on(n).map_err(err)?);
    }
    let mut rng = seeded(40_000);
    for n in 5..=12 {
        for _ in 0..20 {
            graphs.push(Graph::random(n, 0.5, &mut rng).map_err(err)?);
        }
    }
    let mut decisions = 0usize;
    for (i, g) in graphs.iter().enumerate() {
        let n = g.vertex_count();
        let a = mc_from_graph(g).map_err(err)?;
        let via_norm = reduction_value(&a, &opts).map_err(err)?;
        let (brute, _) = quadratic_max_bruteforce(a.matrix()).map_err(err)?;
        let nn = (n * n) as f64;
        ensure((via_norm - brute).abs() <= 1e-6 * nn, || {
            format!("graph {i} (n={n}): norm route {via_norm}, brute force {brute}")
        })?;
        for m in 0..=(2 * n * n) as u64 {
            let want = brute >= m as f64;
            ensure(threshold_holds(via_norm, m) == want, || {
                format!("graph {i} (n={n}) M={m}: decision differs from brute force {brute}")
            })?;
            decisions += 1;
        }
    }
    Ok(format!("{} graphs, {decisions} threshold decisions", graphs.len()))
}

fn records(pair: NormPair, lo: usize, hi: usize) -> Result<Vec<BenchRecord>, String> {
    let cfg = BenchConfig::new(pair, lo, hi, 5, 7);
    run_bench(&cfg)
        .map_err(err)?
        .into_iter()
        .map(|e| match e {
            BenchEntry::Record(r) => Ok(r),
            BenchEntry::Skipped { n, reason, .. } => Err(format!("({pair}) n={n} skipped: {reason}")),
        })
        .collect()
}

fn scaling() -> Outcome {
    let mut notes = Vec::new();
    for pair in NormPair::ALL {
        if pair.is_exponential() {
            let fit = fit_model(&records(pair, 10, 22)?, GrowthModel::Exponential).map_err(err)?;
            ensure((0.8..=1.2).contains(&fit.slope), || {
                format!("({pair}) exponential slope {:.3} outside [0.8, 1.2]", fit.slope)
            })?;
            notes.push(format!("({pair}) 2^{:.2}n", fit.slope));
        } else {
            let fit = fit_model(&records(pair, 4, 64)?, GrowthModel::Polynomial).map_err(err)?;
            ensure(fit.slope <= 3.5, || format!("({pair}) log-log slope {:.3} above 3.5", fit.slope))?;
            notes.push(format!("({pair}) n^{:.2}", fit.slope));
        }
    }
    Ok(notes.join(" "))
}

fn identity_ladder() -> Outcome {
    for n in 1..=8 {
        let id = Matrix::identity(n).map_err(err)?;
        let s = (n as f64).sqrt();
        let nf = n as f64;
        let expected = [1.0, 1.0, 1.0, s, 1.0, 1.0, nf, s, 1.0];
        for (pair, want) in NormPair::ALL.iter().zip(expected) {
            let got = induced_norm(&id, *pair).map_err(err)?.value;
            ensure(rel_close(got, want, 1e-12), || format!("I_{n} ({pair}): {got}, expected {want}"))?;
        }
    }
    Ok("I_1 through I_8".into())
}

fn norm_axioms() -> Outcome {
    let tol = 1e-10;
    let mut rng = seeded(50_000);
    for i in 0..100u64 {
        let rows = 1 + (i % 6) as usize;
        let cols = 1 + ((i / 6) % 6) as usize;
        let a = random_matrix(60_000 + 2 * i, rows, cols);
        let b = random_matrix(60_001 + 2 * i, rows, cols);
        let c = 4.0 * uniform_pm1(&mut rng);
        let sum = a.add(&b).map_err(err)?;
        let scaled = a.scaled(c).map_err(err)?;
        let zero = Matrix::zeros(rows, cols).map_err(err)?;
        for pair in NormPair::ALL {
            let na = induced_norm(&a, pair).map_err(err)?.value;
            let nb = induced_norm(&b, pair).map_err(err)?.value;
            let ns = induced_norm(&sum, pair).map_err(err)?.value;
            ensure(ns <= (na + nb) * (1.0 + tol), || {
                format!("pair {i} ({pair}): ‖A+B‖ = {ns} > {na} + {nb}")
            })?;
            let nc = induced_norm(&scaled, pair).map_err(err)?.value;
            ensure(rel_close(nc, c.abs() * na, tol), || {
                format!("pair {i} ({pair}): ‖cA‖ = {nc}, |c|‖A‖ = {}", c.abs() * na)
            })?;
            ensure(na > 0.0 && nb > 0.0, || format!("pair {i} ({pair}): nonzero matrix has norm 0"))?;
            let nz = induced_norm(&zero, pair).map_err(err)?.value;
            ensure(nz == 0.0, || format!("({pair}) zero matrix has norm {nz}"))?;
        }
    }
    Ok("100 pairs x 9 norms".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("nine-norm oracle suite", oracle_suite),
        ("exact-oracle equivalence", exact_oracle),
        ("spectral agreement", spectral_agreement),
        ("duality", duality),
        ("reduction fidelity", reduction),
        ("scaling split", scaling),
        ("identity ladder", identity_ladder),
        ("norm axioms", norm_axioms),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name} ({secs:.1}s): {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.1}s): {detail}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
