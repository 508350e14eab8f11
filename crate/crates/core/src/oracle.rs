//! Independent checks on the closed-form norms.
//!
//! Nothing here calls [`crate::norms`]: the sampling oracle only evaluates
//! `‖A x‖_q` at feasible points, and the exact oracle enumerates the vertices
//! of the unit ball with fresh matrix-vector products. Agreement between the
//! two paths therefore means something.
//!
//! For `(2,2)` the exact cross-check is [`crate::spectral::power_iteration`].

use rand::{Rng, RngExt};
use rand_distr::{Exp1, StandardNormal};

use crate::dense::{vec_norm, Matrix, NormIndex, Vector};
use crate::error::{Error, Result};
use crate::pair::NormPair;

/// Exact enumeration over `{-1,1}^n` is refused beyond this `n`.
pub const EXACT_CUBE_LIMIT: usize = 20;

const POLISH_MIN_GAIN: f64 = 1e-12;
const POLISH_MIN_STEP: f64 = 1e-8;
const POLISH_MAX_EVALS: usize = 20_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    /// `‖A best_point‖_q`, a lower bound on `‖A‖_{p,q}`.
    pub lower_bound: f64,
    pub best_point: Vector,
    pub samples_used: usize,
    /// `true` when every vertex of the unit ball was evaluated.
    pub exact: bool,
}

fn normalize(x: &mut [f64], p: NormIndex) -> bool {
    let len = vec_norm(x, p);
    if len == 0.0 || !len.is_finite() {
        return false;
    }
    x.iter_mut().for_each(|v| *v /= len);
    true
}

/// A random point on the `p`-unit sphere of `ℝⁿ`.
///
/// `p = 2`: normalised Gaussian. `p = 1`: exponential magnitudes scaled onto
/// the simplex, random signs. `p = ∞`: uniform `[-1,1]` entries divided by
/// the largest magnitude.
pub fn sample_unit_sphere<R: Rng + ?Sized>(n: usize, p: NormIndex, rng: &mut R) -> Result<Vector> {
    if n == 0 {
        return Err(Error::Empty);
    }
    loop {
        let mut x: Vec<f64> = match p {
            NormIndex::Two => (0..n).map(|_| rng.sample(StandardNormal)).collect(),
            NormIndex::One => (0..n)
                .map(|_| {
                    let e: f64 = rng.sample(Exp1);
                    if rng.random::<bool>() {
                        e
                    } else {
                        -e
                    }
                })
                .collect(),
            NormIndex::Infinity => (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect(),
        };
        if normalize(&mut x, p) {
            return Ok(Vector::from_vec_unchecked(x));
        }
    }
}

struct Objective<'a> {
    a: &'a Matrix,
    q: NormIndex,
    buf: Vec<f64>,
    evals: usize,
}

impl Objective<'_> {
    fn eval(&mut self, x: &[f64]) -> f64 {
        self.evals += 1;
        self.a.matvec_into(x, &mut self.buf);
        vec_norm(&self.buf, self.q)
    }
}

/// Derivative-free coordinate search on the `p`-sphere: nudge one coordinate,
/// renormalise, keep the move if it gains more than `POLISH_MIN_GAIN`; halve
/// the step when no move helps.
fn polish(f: &mut Objective<'_>, p: NormIndex, mut x: Vec<f64>, mut fx: f64) -> (Vec<f64>, f64) {
    let n = x.len();
    let mut step = 0.5;
    let mut trial = vec![0.0; n];
    f.evals = 0;
    while step >= POLISH_MIN_STEP && f.evals < POLISH_MAX_EVALS {
        let mut improved = false;
        for j in 0..n {
            for mv in 0..3 {
                trial.copy_from_slice(&x);
                match mv {
                    0 => trial[j] += step,
                    1 => trial[j] -= step,
                    _ => trial[j] = -trial[j],
                }
                if !normalize(&mut trial, p) {
                    continue;
                }
                let ft = f.eval(&trial);
                if ft > fx + POLISH_MIN_GAIN {
                    x.copy_from_slice(&trial);
                    fx = ft;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (x, fx)
}

/// Best `‖A x‖_q` over `samples` random points of the `p`-sphere.
///
/// Every sample that sets a new record is polished by coordinate search, and
/// the report keeps the best polished point. Records of a seed prefix are
/// records of the full stream, so the bound never decreases as `samples`
/// grows for a fixed seed.
pub fn lower_bound_estimate<R: Rng + ?Sized>(
    a: &Matrix,
    pair: NormPair,
    samples: usize,
    rng: &mut R,
) -> Result<OracleReport> {
    if samples == 0 {
        return Err(Error::Unsupported("sampling oracle needs at least one sample".into()));
    }
    let mut f = Objective {
        a,
        q: pair.q,
        buf: vec![0.0; a.rows()],
        evals: 0,
    };
    let mut record = f64::NEG_INFINITY;
    let mut best: Option<(Vec<f64>, f64)> = None;
    for _ in 0..samples {
        let x = sample_unit_sphere(a.cols(), pair.p, rng)?.into_inner();
        let fx = f.eval(&x);
        if fx > record {
            record = fx;
            let (px, pfx) = polish(&mut f, pair.p, x, fx);
            if best.as_ref().map_or(true, |(_, b)| pfx > *b) {
                best = Some((px, pfx));
            }
        }
    }
    let (x, value) = best.expect("at least one sample");
    Ok(OracleReport {
        lower_bound: value,
        best_point: Vector::from_vec_unchecked(x),
        samples_used: samples,
        exact: false,
    })
}

/// Exact `‖A‖_{p,q}` for `p ∈ {1, ∞}` by evaluating every vertex of the
/// `p`-unit ball: `±e_k` for `p = 1`, all of `{-1,1}^n` for `p = ∞`.
pub fn exact_extreme_oracle(a: &Matrix, pair: NormPair) -> Result<OracleReport> {
    let n = a.cols();
    let mut f = Objective {
        a,
        q: pair.q,
        buf: vec![0.0; a.rows()],
        evals: 0,
    };
    let mut best_value = f64::NEG_INFINITY;
    let mut best_point = vec![0.0; n];
    let mut x = vec![0.0; n];
    let mut consider = |x: &[f64], f: &mut Objective<'_>| {
        let v = f.eval(x);
        if v > best_value {
            best_value = v;
            best_point.copy_from_slice(x);
        }
    };
    let count = match pair.p {
        NormIndex::One => {
            for k in 0..n {
                for s in [1.0, -1.0] {
                    x.iter_mut().for_each(|v| *v = 0.0);
                    x[k] = s;
                    consider(&x, &mut f);
                }
            }
            2 * n
        }
        NormIndex::Infinity => {
            if n > EXACT_CUBE_LIMIT {
                return Err(Error::GuardExceeded {
                    exponent: n,
                    limit: EXACT_CUBE_LIMIT,
                });
            }
            for mask in 0u64..(1u64 << n) {
                for (k, v) in x.iter_mut().enumerate() {
                    *v = if (mask >> k) & 1 == 1 { -1.0 } else { 1.0 };
                }
                consider(&x, &mut f);
            }
            1usize << n
        }
        NormIndex::Two => {
            return Err(Error::Unsupported(
                "the 2-ball has no finite vertex set; use power iteration for (2,2)".into(),
            ))
        }
    };
    Ok(OracleReport {
        lower_bound: best_value,
        best_point: Vector::from_vec_unchecked(best_point),
        samples_used: count,
        exact: true,
    })
}
