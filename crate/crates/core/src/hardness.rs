//! Max-cut instances as `(∞,2)`-norm computations.
//!
//! An MC-matrix is a symmetric `n x n` matrix with every diagonal entry `n`
//! and every off-diagonal entry `0` or `-1`; it is positive definite. If `S`
//! is its symmetric square root then `‖S u‖₂² = uᵀ A u`, so
//! `‖S‖²_{∞,2} = max_{u ∈ {-1,1}^n} uᵀ A u`, and asking whether that maximum
//! reaches `M` is NP-complete. This module builds the matrices, runs the
//! decision through the norm, and checks it against direct enumeration.

use std::collections::BTreeSet;

use rand::{Rng, RngExt};

use crate::dense::{Matrix, NormIndex};
use crate::error::{Error, Result};
use crate::norms::{induced_norm_with, NormOptions, NormPair};
use crate::sign_search::{flip_position, SignVector, REFRESH_INTERVAL};
use crate::spectral::{jacobi_eigh, psd_sqrt};

/// Largest `n` accepted by [`quadratic_max_bruteforce`].
pub const BRUTEFORCE_LIMIT: usize = 24;

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Edges are 0-based pairs; `(i, j)` and `(j, i)` name the same edge.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {} {} has an endpoint outside 1..={n}",
                    i + 1,
                    j + 1
                )));
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {}", i + 1)));
            }
            if !set.insert((i.min(j), i.max(j))) {
                return Err(Error::InvalidGraph(format!("duplicate edge {} {}", i + 1, j + 1)));
            }
        }
        Ok(Graph { n, edges: set })
    }

    pub fn edgeless(n: usize) -> Result<Self> {
        Graph::new(n, [])
    }

    pub fn path(n: usize) -> Result<Self> {
        Graph::new(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Erdős–Rényi `G(n, p)`: each pair `i < j`, in lexicographic order, is
    /// an edge when a uniform `[0,1)` draw falls below `p`.
    pub fn random<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.random::<f64>() < p {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(n, edges)
    }

    /// Every graph on `n` vertices: bit `b` of `mask` selects the `b`-th pair
    /// in lexicographic order.
    pub fn all_on(n: usize) -> Result<Vec<Graph>> {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        if pairs.len() > 20 {
            return Err(Error::GuardExceeded {
                exponent: pairs.len(),
                limit: 20,
            });
        }
        (0u32..1 << pairs.len())
            .map(|mask| {
                Graph::new(
                    n,
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|(b, _)| (mask >> b) & 1 == 1)
                        .map(|(_, &e)| e),
                )
            })
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of edges crossing the partition given by the signs of `u`.
    pub fn cut_size(&self, u: &SignVector) -> usize {
        let s = u.entries();
        self.edges.iter().filter(|&&(i, j)| s[i] != s[j]).count()
    }
}

/// A validated MC-matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct McMatrix(Matrix);

impl McMatrix {
    /// Checks the structure exactly and positive-definiteness with Jacobi.
    pub fn new(a: Matrix) -> Result<Self> {
        if !is_mc(&a) {
            return Err(Error::Invariant(
                "matrix is not an MC-matrix (diagonal n, off-diagonal 0 or -1, symmetric)".into(),
            ));
        }
        let eig = jacobi_eigh(&a)?;
        let min = eig.values()[0];
        if min <= 0.0 {
            return Err(Error::Invariant(format!(
                "MC-matrix has non-positive eigenvalue {min:e}"
            )));
        }
        Ok(McMatrix(a))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    pub fn into_inner(self) -> Matrix {
        self.0
    }
}

/// `A_ii = n`, `A_ij = -1` on edges and `0` elsewhere.
pub fn mc_from_graph(g: &Graph) -> Result<McMatrix> {
    let n = g.n;
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        data[i * n + i] = n as f64;
    }
    for (i, j) in g.edges() {
        data[i * n + j] = -1.0;
        data[j * n + i] = -1.0;
    }
    McMatrix::new(Matrix::new(n, n, data)?)
}

/// Structural MC test with exact comparisons.
pub fn is_mc(a: &Matrix) -> bool {
    if !a.is_square() || !a.is_symmetric() {
        return false;
    }
    let n = a.rows();
    let diag = n as f64;
    (0..n).all(|i| {
        (0..n).all(|j| {
            let x = a[(i, j)];
            if i == j {
                x == diag
            } else {
                x == 0.0 || x == -1.0
            }
        })
    })
}

/// The symmetric positive-definite square root of an MC-matrix.
pub fn sqrt_mc(a: &McMatrix) -> Result<Matrix> {
    psd_sqrt(&a.0)
}

/// `max uᵀ A u` over `u ∈ {-1,1}^n` with `u_1 = +1`, by Gray-code walk.
///
/// Flipping coordinate `j` changes the form by `-4 u_j (A u)_j + 4 A_jj`, so
/// each step costs `O(n)`. Ties go to the earliest vector visited.
pub fn quadratic_max_bruteforce(a: &Matrix) -> Result<(f64, SignVector)> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if !a.is_symmetric() {
        return Err(Error::NotSymmetric {
            deviation: a.asymmetry().unwrap_or(0.0),
        });
    }
    let n = a.rows();
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::GuardExceeded {
            exponent: n,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    let mut u = vec![1.0; n];
    let mut au = vec![0.0; n];
    let fresh = |u: &[f64], au: &mut [f64]| -> f64 {
        a.matvec_into(u, au);
        u.iter().zip(au.iter()).map(|(x, y)| x * y).sum()
    };
    let mut form = fresh(&u, &mut au);
    let mut best = (form, u.clone());
    let total = 1u64 << (n - 1);
    for step in 1..total {
        let j = flip_position(step);
        let s = u[j];
        form += -4.0 * s * au[j] + 4.0 * a[(j, j)];
        u[j] = -s;
        for (r, y) in au.iter_mut().enumerate() {
            *y -= 2.0 * s * a[(r, j)];
        }
        if step % REFRESH_INTERVAL == 0 {
            form = fresh(&u, &mut au);
        }
        if form > best.0 {
            best = (form, u.clone());
        }
    }
    let signs = SignVector::new(best.1.iter().map(|&x| x as i8).collect())?;
    // Report the form evaluated from scratch at the maximiser.
    let value = fresh(&best.1, &mut au);
    Ok((value, signs))
}

/// `‖A^{1/2}‖²_{∞,2}`, which equals `max uᵀ A u` over sign vectors.
pub fn reduction_value(a: &McMatrix, opts: &NormOptions) -> Result<f64> {
    let root = sqrt_mc(a)?;
    let v = induced_norm_with(&root, NormPair::new(NormIndex::Infinity, NormIndex::Two), opts)?.value;
    Ok(v * v)
}

/// Relative slack on the threshold comparison. The form is an integer on
/// sign vectors, so a true gap is at least 1 and this cannot flip an answer.
pub const THRESHOLD_TOLERANCE: f64 = 1e-6;

pub fn threshold_holds(value: f64, threshold: u64) -> bool {
    let m = threshold as f64;
    value >= m - THRESHOLD_TOLERANCE * m.max(1.0)
}

/// Is `uᵀ A u >= threshold` for some sign vector `u`? Answered through the
/// `(∞,2)`-norm of `A^{1/2}`.
pub fn decide_threshold_via_norm(a: &McMatrix, threshold: u64, opts: &NormOptions) -> Result<bool> {
    Ok(threshold_holds(reduction_value(a, opts)?, threshold))
}
