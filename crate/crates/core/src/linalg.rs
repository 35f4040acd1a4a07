//! Dense complex matrices and a Hermitian eigensolver.
//!
//! Everything here is sized for at most a few hundred rows, so all storage is
//! a flat row-major `Vec<Complex64>`.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maximum `|M[i][j] - conj(M[j][i])|` accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_OFF_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_row_major(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                actual: data.len(),
            });
        }
        Ok(ComplexMatrix { dim, data })
    }

    pub fn from_real(dim: usize, data: &[f64]) -> Result<Self> {
        Self::from_row_major(dim, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { dim, data }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// `|psi><psi|`.
    pub fn outer(psi: &[Complex64]) -> Self {
        Self::from_fn(psi.len(), |i, j| psi[i] * psi[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, rhs: &ComplexMatrix) -> Result<Self> {
        if rhs.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: rhs.dim,
            });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: v.len(),
            });
        }
        Ok((0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff on different dimensions");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |M[i][j] - conj(M[j][i])|`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_defect() <= HERMITIAN_TOL
    }

    fn require_hermitian(&self) -> Result<()> {
        let defect = self.hermitian_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::NonHermitianInput { defect });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Kronecker product: `out[(i*db + k, j*db + l)] = a[i][j] * b[k][l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let db = b.dim;
    ComplexMatrix::from_fn(a.dim * db, |row, col| {
        a[(row / db, col / db)] * b[(row % db, col % db)]
    })
}

/// Eigenvalues (ascending) and matching unit eigenvectors, stored as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        let n = self.vectors.dim();
        (0..n).map(|i| self.vectors[(i, k)]).collect()
    }

    /// `sum_k lambda_k v_k v_k^H`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.vectors.dim();
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| self.vectors[(i, k)] * self.vectors[(j, k)].conj() * self.values[k])
                .sum()
        })
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim;
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi on a Hermitian matrix.
///
/// Each step rotates the `(p, q)` plane with `J = diag(1, e) * R(theta)`, where
/// `e` strips the phase of `a[p][q]` and `R` is the real Jacobi rotation that
/// annihilates the now-real off-diagonal element. Sweeps stop once the
/// off-diagonal Frobenius norm is at most `1e-12 * dim`.
fn jacobi(m: &ComplexMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<ComplexMatrix>)> {
    m.require_hermitian()?;
    let n = m.dim;
    let mut a = m.clone();
    // Symmetrize away sub-tolerance asymmetry so rotations stay exact.
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));
    let tol = JACOBI_OFF_TOL * n.max(1) as f64;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= tol {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag < f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // J columns: J[p][p]=c, J[q][p]=-s*conj(e), J[p][q]=s, J[q][q]=c*conj(e)
                let pc = phase.conj();
                let jpp = Complex64::new(c, 0.0);
                let jqp = -pc * s;
                let jpq = Complex64::new(s, 0.0);
                let jqq = pc * c;

                // A <- A J (columns p, q)
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * jpp + akq * jqp;
                    a[(k, q)] = akp * jpq + akq * jqq;
                }
                // A <- J^H A (rows p, q)
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
                    a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;

                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * jpp + vkq * jqp;
                        v[(k, q)] = vkp * jpq + vkq * jqq;
                    }
                }
            }
        }
    }

    let values: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    Ok((values, v))
}

fn ascending_order(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    order
}

/// Real eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let (mut values, _) = jacobi(m, false)?;
    values.sort_by(f64::total_cmp);
    Ok(values)
}

pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let (values, vectors) = jacobi(m, true)?;
    let vectors = vectors.expect("vectors requested");
    let order = ascending_order(&values);
    let n = m.dim;
    let sorted = ComplexMatrix::from_fn(n, |i, k| vectors[(i, order[k])]);
    Ok(HermitianEigen {
        values: order.iter().map(|&k| values[k]).collect(),
        vectors: sorted,
    })
}

/// `tr sqrt(M^H M)`, which for Hermitian `M` is the sum of `|lambda_i|`.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?.iter().map(|l| l.abs()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    #[test]
    fn kron_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_projectors() {
        let p0 = ComplexMatrix::diagonal(&[1.0, 0.0]);
        let p1 = ComplexMatrix::diagonal(&[0.0, 1.0]);
        assert_eq!(
            kron(&p0, &p1),
            ComplexMatrix::diagonal(&[0.0, 1.0, 0.0, 0.0])
        );
    }

    #[test]
    fn kron_bit_flips_flip_both() {
        let xx = kron(&pauli_x(), &pauli_x());
        let ket00 = vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let out = xx.apply(&ket00).unwrap();
        assert_eq!(
            out,
            vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]
        );
    }

    #[test]
    fn kron_index_formula() {
        let a = ComplexMatrix::from_fn(2, |i, j| c(i as f64 + 1.0, j as f64));
        let b = ComplexMatrix::from_fn(3, |i, j| c(j as f64 - 1.0, i as f64 * 0.5));
        let k = kron(&a, &b);
        assert_eq!(k.dim(), 6);
        for i in 0..2 {
            for j in 0..2 {
                for p in 0..3 {
                    for q in 0..3 {
                        assert_eq!(k[(i * 3 + p, j * 3 + q)], a[(i, j)] * b[(p, q)]);
                    }
                }
            }
        }
    }

    #[test]
    fn pauli_x_spectrum() {
        let ev = hermitian_eigenvalues(&pauli_x()).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn complex_two_by_two_spectrum() {
        let m = ComplexMatrix::from_row_major(
            2,
            vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(1.0, 0.0)],
        )
        .unwrap();
        let ev = hermitian_eigenvalues(&m).unwrap();
        assert!(ev[0].abs() < 1e-14, "{ev:?}");
        assert!((ev[1] - 2.0).abs() < 1e-14, "{ev:?}");
    }

    #[test]
    fn diagonal_sorted() {
        let ev = hermitian_eigenvalues(&ComplexMatrix::diagonal(&[0.75, 0.25])).unwrap();
        assert_eq!(ev, vec![0.25, 0.75]);
    }

    #[test]
    fn non_hermitian_rejected() {
        let m = ComplexMatrix::from_real(2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(Error::NonHermitianInput { .. })
        ));
        assert!(trace_norm(&m).is_err());
    }

    #[test]
    fn trace_norms() {
        assert!((trace_norm(&ComplexMatrix::identity(4)).unwrap() - 4.0).abs() < 1e-14);
        assert!((trace_norm(&ComplexMatrix::diagonal(&[0.5, -0.5])).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigenvectors_are_eigenvectors() {
        let m = ComplexMatrix::from_row_major(
            3,
            vec![
                c(2.0, 0.0),
                c(0.5, 0.3),
                c(0.0, -1.0),
                c(0.5, -0.3),
                c(-1.0, 0.0),
                c(0.2, 0.0),
                c(0.0, 1.0),
                c(0.2, 0.0),
                c(0.5, 0.0),
            ],
        )
        .unwrap();
        let eig = hermitian_eigen(&m).unwrap();
        for k in 0..3 {
            let v = eig.vector(k);
            let mv = m.apply(&v).unwrap();
            for i in 0..3 {
                assert!((mv[i] - v[i] * eig.values[k]).norm() < 1e-12);
            }
        }
        assert!(eig.reconstruct().max_abs_diff(&m) < 1e-12);
    }
}
