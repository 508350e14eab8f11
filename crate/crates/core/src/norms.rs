//! The nine induced norms `‖A‖_{p,q} = sup { ‖A x‖_q : ‖x‖_p = 1 }` for
//! `p, q ∈ {1, 2, ∞}`, each returned with a unit witness `x` attaining it.
//!
//! | p \ q | 1                        | 2                        | ∞                    |
//! |-------|--------------------------|--------------------------|----------------------|
//! | 1     | max column 1-norm        | max column 2-norm        | max abs entry        |
//! | 2     | max over signs `‖Aᵀu‖₂`  | `√λ_max(AᵀA)`            | max row 2-norm       |
//! | ∞     | max over signs `‖Au‖₁`   | max over signs `‖Au‖₂`   | max row 1-norm       |
//!
//! The three sign-enumeration cases are exponential; see [`crate::sign_search`].
//! Ties in every max-reduction go to the lowest index. The zero matrix has
//! value 0 and witness `e₁` for every pair.

use crate::dense::{vec_norm, Matrix, NormIndex, Vector};
use crate::error::Result;
pub use crate::pair::NormPair;
use crate::sign_search::{check_guard, maximize_signs, SearchOptions};
use crate::spectral::max_eigenpair;

/// A norm value with a feasible point attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct NormResult {
    pub value: f64,
    /// `‖witness‖_p = 1` and `‖A witness‖_q = value` (up to rounding).
    pub witness: Vector,
    pub pair: NormPair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormOptions {
    /// Run exponential enumerations past the `2^30` guard.
    pub force: bool,
    pub threads: usize,
}

impl Default for NormOptions {
    fn default() -> Self {
        NormOptions {
            force: false,
            threads: 1,
        }
    }
}

impl From<&NormOptions> for SearchOptions {
    fn from(o: &NormOptions) -> Self {
        SearchOptions {
            force: o.force,
            threads: o.threads,
        }
    }
}

fn e1(n: usize) -> Vector {
    let mut e = vec![0.0; n];
    e[0] = 1.0;
    Vector::from_vec_unchecked(e)
}

fn zero_result(a: &Matrix, pair: NormPair) -> NormResult {
    NormResult {
        value: 0.0,
        witness: e1(a.cols()),
        pair,
    }
}

/// `‖A‖_{p,q}` with default options.
pub fn induced_norm(a: &Matrix, pair: NormPair) -> Result<NormResult> {
    induced_norm_with(a, pair, &NormOptions::default())
}

pub fn induced_norm_with(a: &Matrix, pair: NormPair, opts: &NormOptions) -> Result<NormResult> {
    use NormIndex::*;
    match (pair.p, pair.q) {
        (One, q) => Ok(max_column_norm(a, q)),
        (Two, Infinity) => Ok(max_row_norm(a, Two)),
        (Infinity, Infinity) => Ok(max_row_norm(a, One)),
        (Two, Two) => spectral_norm(a),
        (Infinity, q) => sign_maximized_norm(a, q, opts),
        (Two, One) => two_one_norm(a, opts),
    }
}

/// `max_j ‖col(A, j)‖_q`, the `(1, q)` norm, witnessed by `e_j`.
pub fn max_column_norm(a: &Matrix, q: NormIndex) -> NormResult {
    let (m, n) = (a.rows(), a.cols());
    let data = a.as_slice();
    let mut best = (0.0f64, 0usize);
    for j in 0..n {
        let v = match q {
            NormIndex::One => (0..m).map(|r| data[r * n + j].abs()).sum(),
            NormIndex::Two => (0..m).map(|r| data[r * n + j].powi(2)).sum::<f64>().sqrt(),
            NormIndex::Infinity => (0..m).fold(0.0f64, |acc, r| acc.max(data[r * n + j].abs())),
        };
        if v > best.0 {
            best = (v, j);
        }
    }
    let mut witness = vec![0.0; n];
    witness[best.1] = 1.0;
    NormResult {
        value: best.0,
        witness: Vector::from_vec_unchecked(witness),
        pair: NormPair::new(NormIndex::One, q),
    }
}

/// `max_a ‖row(A, a)‖_r`.
///
/// With `r = 2` this is `‖A‖_{2,∞}`, witnessed by the normalised maximal row.
/// With `r = 1` it is `‖A‖_{∞,∞}`, witnessed by the sign pattern of the
/// maximal row (`+1` where the entry is `>= 0`). `r = ∞` gives `‖A‖_{1,∞}`
/// and is answered by [`max_column_norm`].
pub fn max_row_norm(a: &Matrix, r: NormIndex) -> NormResult {
    let pair = match r {
        NormIndex::One => NormPair::new(NormIndex::Infinity, NormIndex::Infinity),
        NormIndex::Two => NormPair::new(NormIndex::Two, NormIndex::Infinity),
        NormIndex::Infinity => return max_column_norm(a, NormIndex::Infinity),
    };
    if a.is_zero() {
        return zero_result(a, pair);
    }
    let mut best = (0.0f64, 0usize);
    for row in 0..a.rows() {
        let v = vec_norm(a.row_slice(row), r);
        if v > best.0 {
            best = (v, row);
        }
    }
    let top = a.row_slice(best.1);
    let witness = match r {
        NormIndex::Two => top.iter().map(|x| x / best.0).collect(),
        _ => top.iter().map(|&x| if x >= 0.0 { 1.0 } else { -1.0 }).collect(),
    };
    NormResult {
        value: best.0,
        witness: Vector::from_vec_unchecked(witness),
        pair,
    }
}

/// `‖A‖_{2,2} = √λ_max(AᵀA)`, witnessed by the top eigenvector of `AᵀA`.
pub fn spectral_norm(a: &Matrix) -> Result<NormResult> {
    let pair = NormPair::new(NormIndex::Two, NormIndex::Two);
    if a.is_zero() {
        return Ok(zero_result(a, pair));
    }
    let (lambda, v) = max_eigenpair(&a.gram())?;
    Ok(NormResult {
        value: lambda.max(0.0).sqrt(),
        witness: v,
        pair,
    })
}

/// `max_{u ∈ {-1,1}^n} ‖A u‖_q`, the `(∞, q)` norm, witnessed by the
/// maximising sign vector (first entry `+1`).
pub fn sign_maximized_norm(a: &Matrix, q: NormIndex, opts: &NormOptions) -> Result<NormResult> {
    let pair = NormPair::new(NormIndex::Infinity, q);
    check_guard(a.cols(), opts.force)?;
    if a.is_zero() {
        return Ok(zero_result(a, pair));
    }
    let best = maximize_signs(a, q, &opts.into())?;
    Ok(NormResult {
        value: best.value,
        witness: best.signs.to_vector(),
        pair,
    })
}

/// `‖A‖_{2,1} = ‖Aᵀ‖_{∞,2}`; the witness is `Aᵀu*/‖Aᵀu*‖₂` for the
/// maximising sign vector `u*`.
pub fn two_one_norm(a: &Matrix, opts: &NormOptions) -> Result<NormResult> {
    let pair = NormPair::new(NormIndex::Two, NormIndex::One);
    check_guard(a.rows(), opts.force)?;
    if a.is_zero() {
        return Ok(zero_result(a, pair));
    }
    let at = a.transpose();
    let dual = sign_maximized_norm(&at, NormIndex::Two, opts)?;
    let image = at.matvec(&dual.witness)?;
    let len = image.norm(NormIndex::Two);
    let witness = Vector::from_vec_unchecked(image.iter().map(|x| x / len).collect());
    Ok(NormResult {
        value: dual.value,
        witness,
        pair,
    })
}

/// All nine norms in [`NormPair::ALL`] order.
pub fn norm_table(a: &Matrix, opts: &NormOptions) -> Result<Vec<NormResult>> {
    NormPair::ALL
        .iter()
        .map(|&pair| induced_norm_with(a, pair, opts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use NormIndex::*;

    fn m22() -> Matrix {
        Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs().max(1.0)
    }

    #[test]
    fn dispatch_examples() {
        let r = induced_norm(&m22(), NormPair::new(One, One)).unwrap();
        assert_eq!(r.value, 6.0);
        assert_eq!(r.witness.as_slice(), &[0.0, 1.0]);

        let i3 = Matrix::identity(3).unwrap();
        assert_eq!(induced_norm(&i3, NormPair::new(Infinity, Infinity)).unwrap().value, 1.0);
        let r = induced_norm(&i3, NormPair::new(Infinity, One)).unwrap();
        assert_eq!(r.value, 3.0);
        assert_eq!(r.witness.as_slice(), &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn column_examples() {
        let r = max_column_norm(&m22(), Two);
        assert!(close(r.value, 20f64.sqrt()));
        assert_eq!(r.witness.as_slice(), &[0.0, 1.0]);
        let r = max_column_norm(&m22(), Infinity);
        assert_eq!((r.value, r.witness.as_slice()), (4.0, &[0.0, 1.0][..]));
        for q in NormIndex::ALL {
            let r = max_column_norm(&Matrix::identity(4).unwrap(), q);
            assert_eq!((r.value, r.witness.as_slice()), (1.0, &[1.0, 0.0, 0.0, 0.0][..]));
        }
    }

    #[test]
    fn row_examples() {
        let r = max_row_norm(&m22(), Two);
        assert_eq!(r.value, 5.0);
        assert!(close(r.witness[0], 0.6) && close(r.witness[1], 0.8));
        let r = max_row_norm(&m22(), One);
        assert_eq!((r.value, r.witness.as_slice()), (7.0, &[1.0, 1.0][..]));
        let a = Matrix::from_rows(&[[1.0, -1.0], [0.0, 0.0]]).unwrap();
        let r = max_row_norm(&a, One);
        assert_eq!((r.value, r.witness.as_slice()), (2.0, &[1.0, -1.0][..]));
        assert_eq!(max_row_norm(&m22(), Infinity).pair, NormPair::new(One, Infinity));
    }

    #[test]
    fn spectral_examples() {
        let want = ((30.0 + 884f64.sqrt()) / 2.0).sqrt();
        let r = spectral_norm(&m22()).unwrap();
        assert!(close(r.value, want));
        assert!((r.value - 5.46498570).abs() < 1e-8);
        assert!(close(spectral_norm(&Matrix::identity(3).unwrap()).unwrap().value, 1.0));
        assert!(close(spectral_norm(&Matrix::diag(&[3.0, -7.0]).unwrap()).unwrap().value, 7.0));
    }

    #[test]
    fn sign_examples() {
        let o = NormOptions::default();
        let r = sign_maximized_norm(&m22(), One, &o).unwrap();
        assert_eq!((r.value, r.witness.as_slice()), (10.0, &[1.0, 1.0][..]));
        let r = sign_maximized_norm(&m22(), Two, &o).unwrap();
        assert!(close(r.value, 58f64.sqrt()));
        assert_eq!(r.witness.as_slice(), &[1.0, 1.0]);
        let r = sign_maximized_norm(&Matrix::identity(3).unwrap(), Two, &o).unwrap();
        assert!(close(r.value, 3f64.sqrt()));
    }

    #[test]
    fn two_one_examples() {
        let o = NormOptions::default();
        let r = two_one_norm(&m22(), &o).unwrap();
        let s52 = 52f64.sqrt();
        assert!(close(r.value, s52));
        assert!(close(r.witness[0], 4.0 / s52) && close(r.witness[1], 6.0 / s52));
        assert!(close(two_one_norm(&Matrix::identity(3).unwrap(), &o).unwrap().value, 3f64.sqrt()));
        let r = two_one_norm(&Matrix::zeros(2, 3).unwrap(), &o).unwrap();
        assert_eq!((r.value, r.witness.as_slice()), (0.0, &[1.0, 0.0, 0.0][..]));
    }

    #[test]
    fn zero_matrix_convention_for_every_pair() {
        let z = Matrix::zeros(3, 2).unwrap();
        for pair in NormPair::ALL {
            let r = induced_norm(&z, pair).unwrap();
            assert_eq!(r.value, 0.0, "{pair}");
            assert_eq!(r.witness.as_slice(), &[1.0, 0.0], "{pair}");
            assert_eq!(r.pair, pair);
        }
    }

    #[test]
    fn guard_applies_to_exponential_pairs_only() {
        let wide = Matrix::from_fn(2, 31, |a, j| (a + j) as f64).unwrap();
        for pair in NormPair::ALL {
            let r = induced_norm(&wide, pair);
            if pair.enumeration_exponent(2, 31).is_some_and(|e| e > 30) {
                assert_eq!(r.unwrap_err(), Error::GuardExceeded { exponent: 31, limit: 30 });
            } else {
                assert!(r.is_ok(), "{pair}");
            }
        }
        let tall = wide.transpose();
        assert!(matches!(
            induced_norm(&tall, NormPair::new(Two, One)),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn pair_parsing_and_display() {
        let p: NormPair = "inf,2".parse().unwrap();
        assert_eq!(p, NormPair::new(Infinity, Two));
        assert_eq!(p.to_string(), "inf,2");
        assert!("2".parse::<NormPair>().is_err());
        assert!("2,3".parse::<NormPair>().is_err());
        assert_eq!(NormPair::ALL.iter().filter(|p| p.is_exponential()).count(), 3);
    }
}
