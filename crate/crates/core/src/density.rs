use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix, HERMITIAN_TOL};
use crate::register::{normalize_slot_set, ModeRegister, Party};

pub const TRACE_TOL: f64 = 1e-10;
/// Smallest eigenvalue tolerated in a density matrix.
pub const PSD_TOL: f64 = -1e-10;

/// A Hermitian, unit-trace, positive semidefinite matrix over a register.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    register: ModeRegister,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, trace and positivity.
    pub fn new(register: ModeRegister, matrix: ComplexMatrix) -> Result<Self> {
        let rho = Self::from_trusted(register, matrix)?;
        let min = hermitian_eigenvalues(&rho.matrix)?
            .first()
            .copied()
            .unwrap_or(0.0);
        if min < PSD_TOL {
            return Err(Error::NotADensityMatrix(format!(
                "smallest eigenvalue {min:e} is negative"
            )));
        }
        Ok(rho)
    }

    /// Checks shape, Hermiticity and trace but skips the eigenvalue test; for
    /// matrices that are positive by construction (outer products, reductions).
    pub(crate) fn from_trusted(register: ModeRegister, matrix: ComplexMatrix) -> Result<Self> {
        if matrix.dim() != register.dim() {
            return Err(Error::DimensionMismatch {
                expected: register.dim(),
                actual: matrix.dim(),
            });
        }
        let defect = matrix.hermitian_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::NonHermitianInput { defect });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::NotADensityMatrix(format!("trace {tr} is not 1")));
        }
        Ok(DensityMatrix { register, matrix })
    }

    pub fn register(&self) -> &ModeRegister {
        &self.register
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.matrix)
    }

    /// `tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        // for Hermitian rho, tr(rho^2) = sum |rho_ij|^2
        self.matrix.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    /// Traces out every slot not listed in `keep`. The result keeps the
    /// surviving slots in canonical order regardless of the order of `keep`.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::EmptyKeepSet);
        }
        let n = self.register.len();
        let keep = normalize_slot_set(keep, n)?;
        let traced: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();

        let kept_offsets = bit_offsets(&keep, n);
        let traced_offsets = bit_offsets(&traced, n);
        let dk = kept_offsets.len();

        let mut out = ComplexMatrix::zeros(dk);
        for (i, &fi) in kept_offsets.iter().enumerate() {
            for (j, &fj) in kept_offsets.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for &t in &traced_offsets {
                    acc += self.matrix[(fi | t, fj | t)];
                }
                out[(i, j)] = acc;
            }
        }
        DensityMatrix::from_trusted(self.register.restrict(&keep), out)
    }

    /// Reduction onto every slot owned by `parties`.
    pub fn reduce_to_parties(&self, parties: &[Party]) -> Result<DensityMatrix> {
        let keep = self.slots_of_parties(parties)?;
        self.partial_trace(&keep)
    }

    /// Transposes the listed slots: `<i_T j_R| rho^T |k_T l_R> = <k_T j_R| rho |i_T l_R>`.
    pub fn partial_transpose(&self, transposed: &[usize]) -> Result<ComplexMatrix> {
        if transposed.is_empty() {
            return Err(Error::EmptyTransposeSet);
        }
        let n = self.register.len();
        let transposed = normalize_slot_set(transposed, n)?;
        let mask = transposed
            .iter()
            .fold(0usize, |m, &s| m | (1 << (n - 1 - s)));
        let d = self.dim();
        Ok(ComplexMatrix::from_fn(d, |i, j| {
            let ii = (i & !mask) | (j & mask);
            let jj = (j & !mask) | (i & mask);
            self.matrix[(ii, jj)]
        }))
    }

    /// Partial transpose over every slot owned by `party`.
    pub fn partial_transpose_party(&self, party: Party) -> Result<ComplexMatrix> {
        let slots = self.register.slots_of(party);
        if slots.is_empty() {
            return Err(Error::PartyNotInRegister(party));
        }
        self.partial_transpose(&slots)
    }

    pub(crate) fn slots_of_parties(&self, parties: &[Party]) -> Result<Vec<usize>> {
        let mut keep = Vec::new();
        for &p in parties {
            let s = self.register.slots_of(p);
            if s.is_empty() {
                return Err(Error::PartyNotInRegister(p));
            }
            keep.extend(s);
        }
        Ok(keep)
    }
}

/// Full-register offsets contributed by each assignment of the bits in
/// `positions` (listed most significant first).
fn bit_offsets(positions: &[usize], n: usize) -> Vec<usize> {
    let k = positions.len();
    (0..1usize << k)
        .map(|local| {
            positions
                .iter()
                .enumerate()
                .fold(0usize, |acc, (b, &slot)| {
                    let bit = (local >> (k - 1 - b)) & 1;
                    acc | (bit << (n - 1 - slot))
                })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kron;

    fn bell() -> DensityMatrix {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [h, 0.0, 0.0, h].map(|x| Complex64::new(x, 0.0));
        DensityMatrix::new(
            ModeRegister::minkowski(2).unwrap(),
            ComplexMatrix::outer(&psi),
        )
        .unwrap()
    }

    #[test]
    fn product_state_trace() {
        let a = ComplexMatrix::diagonal(&[0.3, 0.7]);
        let b = ComplexMatrix::from_row_major(
            2,
            vec![
                Complex64::new(0.6, 0.0),
                Complex64::new(0.1, 0.2),
                Complex64::new(0.1, -0.2),
                Complex64::new(0.4, 0.0),
            ],
        )
        .unwrap();
        let rho = DensityMatrix::new(ModeRegister::minkowski(2).unwrap(), kron(&a, &b)).unwrap();
        assert!(rho.partial_trace(&[0]).unwrap().matrix().max_abs_diff(&a) < 1e-15);
        assert!(rho.partial_trace(&[1]).unwrap().matrix().max_abs_diff(&b) < 1e-15);
    }

    #[test]
    fn bell_reductions_maximally_mixed() {
        let half = ComplexMatrix::diagonal(&[0.5, 0.5]);
        for k in 0..2 {
            let red = bell().partial_trace(&[k]).unwrap();
            assert!(red.matrix().max_abs_diff(&half) < 1e-15);
        }
    }

    #[test]
    fn bell_partial_transpose_spectrum() {
        let pt = bell().partial_transpose(&[0]).unwrap();
        let ev = hermitian_eigenvalues(&pt).unwrap();
        assert!((ev[0] + 0.5).abs() < 1e-14);
        for v in &ev[1..] {
            assert!((v - 0.5).abs() < 1e-14);
        }
        assert!((crate::linalg::trace_norm(&pt).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn product_state_is_ppt() {
        let a = ComplexMatrix::diagonal(&[0.2, 0.8]);
        let b = ComplexMatrix::diagonal(&[0.5, 0.5]);
        let rho = DensityMatrix::new(ModeRegister::minkowski(2).unwrap(), kron(&a, &b)).unwrap();
        let ev = hermitian_eigenvalues(&rho.partial_transpose(&[0]).unwrap()).unwrap();
        assert!(ev[0] >= -1e-15);
    }

    #[test]
    fn empty_sets_rejected() {
        assert!(matches!(
            bell().partial_trace(&[]),
            Err(Error::EmptyKeepSet)
        ));
        assert!(matches!(
            bell().partial_transpose(&[]),
            Err(Error::EmptyTransposeSet)
        ));
        assert!(matches!(
            bell().partial_trace(&[2]),
            Err(Error::SlotOutOfRange { index: 2, len: 2 })
        ));
    }

    #[test]
    fn rejects_non_density() {
        let reg = ModeRegister::minkowski(1).unwrap();
        assert!(DensityMatrix::new(reg.clone(), ComplexMatrix::diagonal(&[1.5, -0.5])).is_err());
        assert!(DensityMatrix::new(reg.clone(), ComplexMatrix::diagonal(&[0.5, 0.6])).is_err());
        assert!(DensityMatrix::new(reg, ComplexMatrix::identity(4)).is_err());
    }

    #[test]
    fn reduce_by_party_missing() {
        assert!(matches!(
            bell().reduce_to_parties(&[Party::C]),
            Err(Error::PartyNotInRegister(Party::C))
        ));
    }
}
