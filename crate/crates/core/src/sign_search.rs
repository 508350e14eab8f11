//! Exhaustive maximisation of `u ↦ ‖A u‖_q` over sign vectors `u ∈ {-1,1}^n`.
//!
//! Because `‖A(-u)‖ = ‖A u‖`, only the `2^(n-1)` vectors with `u_1 = +1` are
//! visited. They are walked in reflected Gray-code order over the remaining
//! coordinates, so consecutive vectors differ in one sign and the image
//! `A u` is updated with a single column in `O(m)`.
//!
//! Step `t` (1-based) flips free bit `trailing_zeros(t)`, i.e. coordinate
//! `trailing_zeros(t) + 1` (0-based). The image is recomputed from scratch
//! every [`REFRESH_INTERVAL`] steps to bound rounding drift.
//!
//! Candidates are screened on the incremental image, but any candidate within
//! a generous slack of the incumbent is re-evaluated with a fresh `A u`; the
//! reported value is therefore exactly `vec_norm(matvec(A, u*), q)`, the same
//! number a naive loop would produce.

use std::fmt;

use crate::dense::{vec_norm, Matrix, NormIndex, Vector};
use crate::error::{Error, Result};

/// Exponential paths refuse more than `2^ENUMERATION_LIMIT` sign vectors
/// unless forced.
pub const ENUMERATION_LIMIT: usize = 30;

/// Hard ceiling even when forced: steps are counted in a `u64`.
const FORCED_LIMIT: usize = 63;

pub const REFRESH_INTERVAL: u64 = 1 << 10;

/// Largest `k` accepted by [`gray_flip_sequence`].
pub const MAX_SEQUENCE_LEN: usize = 31;

/// A vector in `{-1, +1}^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(index) = entries.iter().position(|&s| s != 1 && s != -1) {
            return Err(Error::Unsupported(format!(
                "sign entry {} is {}, expected -1 or +1",
                index + 1,
                entries[index]
            )));
        }
        Ok(SignVector(entries))
    }

    pub fn ones(k: usize) -> Result<Self> {
        SignVector::new(vec![1; k])
    }

    /// Signs from the low bits of `mask`: bit `b` set means coordinate
    /// `b + 1` is negative. Coordinate 0 is always `+1`.
    pub(crate) fn from_gray_mask(k: usize, mask: u64) -> Self {
        SignVector(
            (0..k)
                .map(|i| if i > 0 && (mask >> (i - 1)) & 1 == 1 { -1 } else { 1 })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    pub fn negated(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| -s).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|&s| f64::from(s)).collect()
    }

    pub fn to_vector(&self) -> Vector {
        Vector::from_vec_unchecked(self.to_f64())
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(if *s > 0 { "+" } else { "-" })?;
        }
        f.write_str(")")
    }
}

/// Checks an exponential enumeration over `2^exponent` candidates.
pub fn check_guard(exponent: usize, force: bool) -> Result<()> {
    let limit = if force { FORCED_LIMIT } else { ENUMERATION_LIMIT };
    if exponent > limit {
        return Err(Error::GuardExceeded { exponent, limit });
    }
    Ok(())
}

/// 0-based coordinate flipped at Gray step `step >= 1`.
#[inline]
pub fn flip_position(step: u64) -> usize {
    step.trailing_zeros() as usize + 1
}

/// The `2^(k-1) - 1` coordinates (0-based, in `1..k`) whose successive flips
/// visit every sign vector with first entry `+1` exactly once, starting from
/// all `+1`.
pub fn gray_flip_sequence(k: usize) -> Result<Vec<usize>> {
    if k == 0 || k > MAX_SEQUENCE_LEN {
        return Err(Error::Unsupported(format!(
            "Gray sequence length {k} outside 1..={MAX_SEQUENCE_LEN}"
        )));
    }
    let steps = 1u64 << (k - 1);
    Ok((1..steps).map(flip_position).collect())
}

/// Walk state: current signs and the running image `A u`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayCursor {
    step: u64,
    signs: Vec<f64>,
    image: Vec<f64>,
}

impl GrayCursor {
    /// Starts at `u = (1, ..., 1)` with a fresh image.
    pub fn new(a: &Matrix) -> Self {
        GrayCursor::at(a, 0)
    }

    /// Cursor positioned at Gray step `step`, image computed from scratch.
    pub fn at(a: &Matrix, step: u64) -> Self {
        let mask = step ^ (step >> 1);
        let signs = SignVector::from_gray_mask(a.cols(), mask).to_f64();
        let mut image = vec![0.0; a.rows()];
        a.matvec_into(&signs, &mut image);
        GrayCursor { step, signs, image }
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn image(&self) -> &[f64] {
        &self.image
    }

    pub fn signs(&self) -> SignVector {
        SignVector(self.signs.iter().map(|&s| s as i8).collect())
    }

    /// Negates coordinate `j` (0-based, `j >= 1`) and patches the image with
    /// `-2 s_j · col(A, j)`.
    pub fn flip(&mut self, a: &Matrix, j: usize) {
        debug_assert!(j >= 1 && j < self.signs.len());
        let old = self.signs[j];
        let delta = -2.0 * old;
        let cols = a.cols();
        let data = a.as_slice();
        for (r, y) in self.image.iter_mut().enumerate() {
            *y += delta * data[r * cols + j];
        }
        self.signs[j] = -old;
        self.step += 1;
    }

    /// Replaces the running image with a fresh `A u`.
    pub fn refresh(&mut self, a: &Matrix) {
        a.matvec_into(&self.signs, &mut self.image);
    }
}

/// Functional form of [`GrayCursor::flip`].
pub fn flip_update(mut cursor: GrayCursor, a: &Matrix, j: usize) -> Result<GrayCursor> {
    if j == 0 || j >= a.cols() || cursor.signs.len() != a.cols() || cursor.image.len() != a.rows()
    {
        return Err(Error::IndexOutOfRange {
            index: j,
            len: a.cols(),
        });
    }
    cursor.flip(a, j);
    Ok(cursor)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Lift the `2^30` guard.
    pub force: bool,
    /// Worker threads; `1` runs sequentially.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            force: false,
            threads: 1,
        }
    }
}

/// Outcome of [`maximize_signs`].
#[derive(Debug, Clone, PartialEq)]
pub struct SignMax {
    pub value: f64,
    /// Maximiser with first entry `+1`, earliest in Gray order among ties.
    pub signs: SignVector,
    /// Gray step at which `signs` was visited.
    pub step: u64,
    /// Number of sign vectors evaluated (`2^(n-1)`).
    pub visited: u64,
}

fn fresh_value(a: &Matrix, signs: &[f64], q: NormIndex, buf: &mut [f64]) -> f64 {
    a.matvec_into(signs, buf);
    vec_norm(buf, q)
}

struct ChunkBest {
    value: f64,
    step: u64,
    signs: Vec<f64>,
}

fn search_chunk(a: &Matrix, q: NormIndex, start: u64, end: u64, slack: f64) -> ChunkBest {
    let mut cursor = GrayCursor::at(a, start);
    let mut buf = vec![0.0; a.rows()];
    let mut best = ChunkBest {
        value: fresh_value(a, &cursor.signs, q, &mut buf),
        step: start,
        signs: cursor.signs.clone(),
    };
    for step in start + 1..end {
        cursor.flip(a, flip_position(step));
        if step % REFRESH_INTERVAL == 0 {
            cursor.refresh(a);
        }
        let approx = vec_norm(&cursor.image, q);
        if approx + slack >= best.value {
            let exact = fresh_value(a, &cursor.signs, q, &mut buf);
            if exact > best.value {
                best.value = exact;
                best.step = step;
                best.signs.copy_from_slice(&cursor.signs);
            }
        }
    }
    best
}

/// Exact `max_{u ∈ {-1,1}^n} ‖A u‖_q`.
pub fn maximize_signs(a: &Matrix, q: NormIndex, opts: &SearchOptions) -> Result<SignMax> {
    let n = a.cols();
    check_guard(n, opts.force)?;
    let total = 1u64 << (n - 1);

    // Bound on |incremental - fresh| for the screen; far above the real drift.
    let k = n as f64;
    let slack = 1e-9 * a.frobenius_norm() * k.sqrt() * (a.rows() as f64).max(1.0) + 1e-300;

    let workers = opts.threads.max(1).next_power_of_two() as u64;
    let chunks = workers.min(total);
    let chunk_len = total / chunks;

    let bests: Vec<ChunkBest> = if chunks == 1 {
        vec![search_chunk(a, q, 0, total, slack)]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..chunks)
                .map(|c| {
                    let start = c * chunk_len;
                    scope.spawn(move || search_chunk(a, q, start, start + chunk_len, slack))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sign-search worker panicked"))
                .collect()
        })
    };

    // Chunks are in visitation order, so strict > keeps the earliest tie.
    let mut winner = &bests[0];
    for b in &bests[1..] {
        if b.value > winner.value {
            winner = b;
        }
    }
    Ok(SignMax {
        value: winner.value,
        signs: SignVector(winner.signs.iter().map(|&s| s as i8).collect()),
        step: winner.step,
        visited: total,
    })
}
