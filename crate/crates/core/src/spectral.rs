//! Symmetric eigendecomposition by cyclic Jacobi rotations, a power-iteration
//! cross-check, and the square root of a positive-semidefinite matrix.

use crate::dense::{vec_norm, Matrix, NormIndex, Vector};
use crate::error::{Error, Result};
use crate::rng::{seeded, uniform_pm1};

pub const MAX_SWEEPS: usize = 64;

/// Converged once the off-diagonal Frobenius mass drops below this times `‖S‖_F`.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-14;

/// Inputs may deviate from symmetry by this much (relative to `‖S‖_F`).
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Eigenvalues in `[-PSD_CLAMP·‖S‖_F, 0)` are treated as rounding noise.
pub const PSD_CLAMP: f64 = 1e-10;

pub const POWER_MAX_ITERATIONS: usize = 100_000;

/// Eigenvalues in ascending order with orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    values: Vec<f64>,
    /// Column `j` pairs with `values[j]`.
    vectors: Matrix,
    sweeps: usize,
}

impl EigenDecomposition {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Eigenvectors as the columns of an orthogonal matrix.
    pub fn vectors(&self) -> &Matrix {
        &self.vectors
    }

    pub fn vector(&self, j: usize) -> Result<Vector> {
        self.vectors.col(j)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sweeps the solver needed.
    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    /// `U diag(f(λ)) Uᵀ`, exactly symmetric.
    pub fn reassemble(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let n = self.values.len();
        let d: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let u = &self.vectors;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let s: f64 = (0..n).map(|k| u[(i, k)] * d[k] * u[(j, k)]).sum();
                data[i * n + j] = s;
                data[j * n + i] = s;
            }
        }
        Matrix::from_vec_unchecked(n, n, data)
    }
}

fn require_symmetric(s: &Matrix) -> Result<Matrix> {
    if !s.is_square() {
        return Err(Error::NotSquare {
            rows: s.rows(),
            cols: s.cols(),
        });
    }
    let deviation = s.asymmetry().unwrap_or(0.0);
    if deviation > SYMMETRY_TOLERANCE * s.frobenius_norm() {
        return Err(Error::NotSymmetric { deviation });
    }
    s.symmetrized()
}

fn off_diagonal_mass(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            sum += a[i * n + j] * a[i * n + j];
        }
    }
    (2.0 * sum).sqrt()
}

/// Cyclic-by-rows Jacobi eigensolver for a symmetric matrix.
pub fn jacobi_eigh(s: &Matrix) -> Result<EigenDecomposition> {
    let sym = require_symmetric(s)?;
    let n = sym.rows();
    let mut a = sym.as_slice().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let tol = OFF_DIAGONAL_TOLERANCE * sym.frobenius_norm();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_mass(&a, n);
        if off <= tol {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_diagonal: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let g = 100.0 * apq.abs();
                // Negligible against both diagonal entries: drop it.
                if sweeps > 4 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;

                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_kp = c * akp - sn * akq;
                    let new_kq = sn * akp + c * akq;
                    a[k * n + p] = new_kp;
                    a[p * n + k] = new_kp;
                    a[k * n + q] = new_kq;
                    a[q * n + k] = new_kq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;

                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - sn * vkq;
                    v[k * n + q] = sn * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new, &old) in order.iter().enumerate() {
        for k in 0..n {
            vectors[k * n + new] = v[k * n + old];
        }
    }
    Ok(EigenDecomposition {
        values,
        vectors: Matrix::from_vec_unchecked(n, n, vectors),
        sweeps,
    })
}

/// Largest eigenvalue and its unit eigenvector.
pub fn max_eigenpair(s: &Matrix) -> Result<(f64, Vector)> {
    let eig = jacobi_eigh(s)?;
    let top = eig.len() - 1;
    Ok((eig.values[top], eig.vector(top)?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerEstimate {
    pub value: f64,
    pub iterations: usize,
    /// `false` when the iteration cap was reached first.
    pub converged: bool,
}

/// Dominant eigenvalue of a symmetric PSD matrix by power iteration from a
/// seeded random start. Stops when `‖S v - ρ v‖₂ ≤ 1e-9·ρ`.
pub fn power_iteration(s: &Matrix, seed: u64) -> Result<PowerEstimate> {
    let s = require_symmetric(s)?;
    let n = s.rows();
    let mut rng = seeded(seed);
    let mut v: Vec<f64> = (0..n).map(|_| uniform_pm1(&mut rng)).collect();
    let norm = vec_norm(&v, NormIndex::Two);
    if norm == 0.0 {
        v.iter_mut().for_each(|x| *x = 1.0);
    }
    let norm = vec_norm(&v, NormIndex::Two);
    v.iter_mut().for_each(|x| *x /= norm);

    let mut w = vec![0.0; n];
    let mut rho = 0.0;
    for it in 1..=POWER_MAX_ITERATIONS {
        s.matvec_into(&v, &mut w);
        rho = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        let wn = vec_norm(&w, NormIndex::Two);
        if wn == 0.0 {
            return Ok(PowerEstimate {
                value: 0.0,
                iterations: it,
                converged: true,
            });
        }
        let residual = v
            .iter()
            .zip(&w)
            .map(|(a, b)| (b - rho * a) * (b - rho * a))
            .sum::<f64>()
            .sqrt();
        if residual <= 1e-9 * rho.abs() {
            return Ok(PowerEstimate {
                value: rho,
                iterations: it,
                converged: true,
            });
        }
        for (x, y) in v.iter_mut().zip(&w) {
            *x = y / wn;
        }
    }
    Ok(PowerEstimate {
        value: rho,
        iterations: POWER_MAX_ITERATIONS,
        converged: false,
    })
}

/// `U D^{1/2} Uᵀ` for symmetric positive-semidefinite `S`.
pub fn psd_sqrt(s: &Matrix) -> Result<Matrix> {
    let eig = jacobi_eigh(s)?;
    let floor = -PSD_CLAMP * s.frobenius_norm();
    if let Some(&min) = eig.values.first() {
        if min < floor {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: min,
            });
        }
    }
    Ok(eig.reassemble(|l| l.max(0.0).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::uniform_matrix;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn jacobi_examples() {
        let e = jacobi_eigh(&Matrix::diag(&[2.0, 1.0]).unwrap()).unwrap();
        assert_eq!(e.values(), &[1.0, 2.0]);

        let swap = Matrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        let e = jacobi_eigh(&swap).unwrap();
        assert!(close(e.values()[0], -1.0, 1e-15) && close(e.values()[1], 1.0, 1e-15));

        // Quadratic formula on λ² - 30λ + 4 = 0.
        let g = Matrix::from_rows(&[[10.0, 14.0], [14.0, 20.0]]).unwrap();
        let e = jacobi_eigh(&g).unwrap();
        let r = 884f64.sqrt();
        assert!(close(e.values()[0], (30.0 - r) / 2.0, 1e-12));
        assert!(close(e.values()[1], (30.0 + r) / 2.0, 1e-12));
        assert!(close(e.values()[0], 0.13394, 1e-5));
    }

    #[test]
    fn rejects_non_square_and_asymmetric() {
        assert!(matches!(jacobi_eigh(&Matrix::zeros(2, 3).unwrap()), Err(Error::NotSquare { .. })));
        let a = Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        assert!(matches!(jacobi_eigh(&a), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn zero_matrix_is_already_diagonal() {
        let e = jacobi_eigh(&Matrix::zeros(3, 3).unwrap()).unwrap();
        assert_eq!(e.values(), &[0.0, 0.0, 0.0]);
        assert_eq!(e.sweeps(), 0);
    }

    #[test]
    fn max_eigenpair_examples() {
        let (l, v) = max_eigenpair(&Matrix::identity(3).unwrap()).unwrap();
        assert_eq!(l, 1.0);
        assert!(close(v.norm(NormIndex::Two), 1.0, 1e-15));

        let (l, v) = max_eigenpair(&Matrix::diag(&[1.0, 5.0, 2.0]).unwrap()).unwrap();
        assert_eq!(l, 5.0);
        assert_eq!(v[1].abs(), 1.0);

        let g = Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap().gram();
        let (l, _) = max_eigenpair(&g).unwrap();
        assert!(close(l, (30.0 + 884f64.sqrt()) / 2.0, 1e-12));
    }

    #[test]
    fn power_iteration_examples() {
        let p = power_iteration(&Matrix::identity(4).unwrap(), 1).unwrap();
        assert!(p.converged && close(p.value, 1.0, 1e-12));
        let p = power_iteration(&Matrix::diag(&[9.0, 1.0]).unwrap(), 2).unwrap();
        assert!(p.converged && close(p.value, 9.0, 9e-6));
        let g = Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap().gram();
        let p = power_iteration(&g, 3).unwrap();
        let exact = (30.0 + 884f64.sqrt()) / 2.0;
        assert!(p.converged && ((p.value - exact) / exact).abs() < 1e-6);
        let p = power_iteration(&Matrix::zeros(2, 2).unwrap(), 3).unwrap();
        assert_eq!(p.value, 0.0);
    }

    #[test]
    fn psd_sqrt_examples() {
        let i3 = Matrix::identity(3).unwrap();
        assert_eq!(psd_sqrt(&i3).unwrap(), i3);
        assert_eq!(
            psd_sqrt(&Matrix::diag(&[4.0, 9.0]).unwrap()).unwrap(),
            Matrix::diag(&[2.0, 3.0]).unwrap()
        );
        let s = psd_sqrt(&Matrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap()).unwrap();
        let r3 = 3f64.sqrt();
        let want = [(r3 + 1.0) / 2.0, (r3 - 1.0) / 2.0, (r3 - 1.0) / 2.0, (r3 + 1.0) / 2.0];
        for (x, w) in s.as_slice().iter().zip(want) {
            assert!(close(*x, w, 1e-14));
        }
        assert!(s.is_symmetric());
    }

    #[test]
    fn psd_sqrt_rejects_indefinite() {
        let a = Matrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert!(matches!(psd_sqrt(&a), Err(Error::NotPositiveSemidefinite { .. })));
        // A rounding-level negative eigenvalue is clamped.
        let tiny = Matrix::diag(&[1.0, -1e-13]).unwrap();
        assert_eq!(psd_sqrt(&tiny).unwrap(), Matrix::diag(&[1.0, 0.0]).unwrap());
    }

    #[test]
    fn reconstruction_and_orthogonality_on_random_symmetric() {
        let mut rng = seeded(99);
        for n in 1..=12 {
            let b = uniform_matrix(&mut rng, n, n);
            let s = b.add(&b.transpose()).unwrap();
            let e = jacobi_eigh(&s).unwrap();
            let fro = s.frobenius_norm();
            let back = e.reassemble(|l| l);
            assert!(back.sub(&s).unwrap().frobenius_norm() <= 1e-9 * fro);
            let utu = e.vectors().transpose().matmul(e.vectors()).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let d = if i == j { 1.0 } else { 0.0 };
                    assert!((utu[(i, j)] - d).abs() <= 1e-10);
                }
            }
            assert!(e.values().windows(2).all(|w| w[0] <= w[1]));
            for j in 0..n {
                let v = e.vector(j).unwrap();
                let sv = s.matvec(&v).unwrap();
                let res: f64 = sv
                    .iter()
                    .zip(v.iter())
                    .map(|(x, y)| (x - e.values()[j] * y).powi(2))
                    .sum::<f64>()
                    .sqrt();
                assert!(res <= 1e-8 * fro);
            }
        }
    }
}
