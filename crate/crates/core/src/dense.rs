//! Dense real vectors and matrices, the three vector norms, and the handful
//! of linear-algebra verbs the norm routines need.
//!
//! Both types reject NaN and infinite entries at construction, so every
//! comparison downstream is a plain total order on finite values.
//!
//! Indices in the Rust API are 0-based. Error messages and CLI output
//! report them 1-based.

use std::fmt;
use std::ops::{Deref, Index};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Which of the three vector norms to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormIndex {
    One,
    Two,
    Infinity,
}

impl NormIndex {
    pub const ALL: [NormIndex; 3] = [NormIndex::One, NormIndex::Two, NormIndex::Infinity];
}

impl fmt::Display for NormIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormIndex::One => "1",
            NormIndex::Two => "2",
            NormIndex::Infinity => "inf",
        })
    }
}

impl FromStr for NormIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" | "one" => Ok(NormIndex::One),
            "2" | "two" => Ok(NormIndex::Two),
            "inf" | "infinity" | "∞" | "i" => Ok(NormIndex::Infinity),
            other => Err(Error::Unsupported(format!(
                "norm index {other:?} (expected 1, 2 or inf)"
            ))),
        }
    }
}

/// `‖v‖_p` for a slice.
pub fn vec_norm(v: &[f64], p: NormIndex) -> f64 {
    match p {
        NormIndex::One => v.iter().map(|x| x.abs()).sum(),
        NormIndex::Two => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
        NormIndex::Infinity => v.iter().fold(0.0, |acc, x| acc.max(x.abs())),
    }
}

/// Euclidean norm with running rescaling, for entries large enough that
/// squaring them would overflow (roughly beyond 1e150).
pub fn scaled_two_norm(v: &[f64]) -> f64 {
    let mut scale = 0.0f64;
    let mut ssq = 1.0f64;
    for &x in v {
        if x != 0.0 {
            let ax = x.abs();
            if scale < ax {
                ssq = 1.0 + ssq * (scale / ax) * (scale / ax);
                scale = ax;
            } else {
                ssq += (ax / scale) * (ax / scale);
            }
        }
    }
    scale * ssq.sqrt()
}

fn check_finite(entries: &[f64]) -> Result<()> {
    match entries.iter().position(|x| !x.is_finite()) {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

/// A nonempty vector of finite reals.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        check_finite(&entries)?;
        Ok(Vector(entries))
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<f64>) -> Self {
        debug_assert!(!entries.is_empty());
        debug_assert!(entries.iter().all(|x| x.is_finite()));
        Vector(entries)
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Vector::new(vec![0.0; len])
    }

    /// The standard basis vector `e_k` of length `len` (`k` is 0-based).
    pub fn basis(len: usize, k: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::Empty);
        }
        if k >= len {
            return Err(Error::IndexOutOfRange { index: k, len });
        }
        let mut e = vec![0.0; len];
        e[k] = 1.0;
        Ok(Vector(e))
    }

    pub fn norm(&self, p: NormIndex) -> f64 {
        vec_norm(&self.0, p)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0.0)
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Vector::new(self.0.iter().map(|x| c * x).collect())
    }
}

impl Deref for Vector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// `e_k` as a free function, matching [`Vector::basis`].
pub fn basis_vector(len: usize, k: usize) -> Result<Vector> {
    Vector::basis(len, k)
}

/// A dense `rows x cols` matrix of finite reals, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty);
        }
        let expected = rows.checked_mul(cols).ok_or(Error::DimensionMismatch {
            expected: usize::MAX,
            found: data.len(),
        })?;
        if data.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: data.len(),
            });
        }
        check_finite(&data)?;
        Ok(Matrix { rows, cols, data })
    }

    pub(crate) fn from_vec_unchecked(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|x| x.is_finite()));
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from a list of equally long rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Matrix::new(rows.len(), cols, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for a in 0..rows {
            for j in 0..cols {
                data.push(f(a, j));
            }
        }
        Matrix::new(rows, cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Matrix::new(rows, cols, vec![0.0; rows * cols])
    }

    pub fn identity(n: usize) -> Result<Self> {
        Matrix::from_fn(n, n, |a, j| if a == j { 1.0 } else { 0.0 })
    }

    pub fn diag(d: &[f64]) -> Result<Self> {
        Matrix::from_fn(d.len(), d.len(), |a, j| if a == j { d[a] } else { 0.0 })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, a: usize, j: usize) -> Option<f64> {
        (a < self.rows && j < self.cols).then(|| self.data[a * self.cols + j])
    }

    pub(crate) fn row_slice(&self, a: usize) -> &[f64] {
        &self.data[a * self.cols..(a + 1) * self.cols]
    }

    pub fn row(&self, a: usize) -> Result<Vector> {
        if a >= self.rows {
            return Err(Error::IndexOutOfRange {
                index: a,
                len: self.rows,
            });
        }
        Ok(Vector(self.row_slice(a).to_vec()))
    }

    pub fn col(&self, j: usize) -> Result<Vector> {
        if j >= self.cols {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.cols,
            });
        }
        Ok(Vector((0..self.rows).map(|a| self[(a, j)]).collect()))
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for a in 0..self.rows {
                data.push(self[(a, j)]);
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// `A x` for a slice of length `cols`.
    pub fn matvec(&self, x: &[f64]) -> Result<Vector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let mut out = vec![0.0; self.rows];
        self.matvec_into(x, &mut out);
        Ok(Vector(out))
    }

    pub(crate) fn matvec_into(&self, x: &[f64], out: &mut [f64]) {
        for (a, o) in out.iter_mut().enumerate() {
            *o = self
                .row_slice(a)
                .iter()
                .zip(x)
                .map(|(r, x)| r * x)
                .sum();
        }
    }

    /// Plain triple-loop product `self * rhs`.
    pub fn matmul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut data = vec![0.0; self.rows * rhs.cols];
        for a in 0..self.rows {
            for k in 0..self.cols {
                let s = self[(a, k)];
                if s == 0.0 {
                    continue;
                }
                let out = &mut data[a * rhs.cols..(a + 1) * rhs.cols];
                for (o, r) in out.iter_mut().zip(rhs.row_slice(k)) {
                    *o += s * r;
                }
            }
        }
        Matrix::new(self.rows, rhs.cols, data)
    }

    /// `AᵀA`, exactly symmetric: only the upper triangle is computed.
    pub fn gram(&self) -> Matrix {
        let n = self.cols;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let s: f64 = (0..self.rows).map(|a| self[(a, i)] * self[(a, j)]).sum();
                data[i * n + j] = s;
                data[j * n + i] = s;
            }
        }
        Matrix {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        vec_norm(&self.data, NormIndex::Two)
    }

    pub fn max_abs(&self) -> f64 {
        vec_norm(&self.data, NormIndex::Infinity)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0.0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Largest `|S_ij - S_ji|`, or `None` if not square.
    pub fn asymmetry(&self) -> Option<f64> {
        if !self.is_square() {
            return None;
        }
        let mut dev = 0.0f64;
        for i in 0..self.rows {
            for j in 0..i {
                dev = dev.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        Some(dev)
    }

    /// `(S + Sᵀ)/2`, exactly symmetric.
    pub fn symmetrized(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..i {
                let s = 0.5 * (self[(i, j)] + self[(j, i)]);
                out.data[i * n + j] = s;
                out.data[j * n + i] = s;
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, c: f64) -> Result<Matrix> {
        Matrix::new(self.rows, self.cols, self.data.iter().map(|x| c * x).collect())
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                expected: self.data.len(),
                found: rhs.data.len(),
            });
        }
        Matrix::new(
            self.rows,
            self.cols,
            self.data.iter().zip(&rhs.data).map(|(x, y)| x + y).collect(),
        )
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.add(&rhs.scaled(-1.0)?)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (a, j): (usize, usize)) -> &f64 {
        assert!(a < self.rows && j < self.cols, "matrix index out of bounds");
        &self.data[a * self.cols + j]
    }
}
