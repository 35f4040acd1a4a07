//! Pure states over a [`ModeRegister`] and the initial W and GHZ states.

use num_complex::Complex64;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::register::{normalize_slot_set, ModeRegister, MAX_PARTIES};

/// Norm deviation beyond which a state is rejected as unnormalized.
pub const NORM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    register: ModeRegister,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(register: ModeRegister, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != register.dim() {
            return Err(Error::DimensionMismatch {
                expected: register.dim(),
                actual: amplitudes.len(),
            });
        }
        Ok(StateVector {
            register,
            amplitudes,
        })
    }

    /// Single basis ket.
    pub fn basis(register: ModeRegister, index: usize) -> Result<Self> {
        let mut amps = vec![Complex64::new(0.0, 0.0); register.dim()];
        let len = amps.len();
        *amps.get_mut(index).ok_or(Error::DimensionMismatch {
            expected: len,
            actual: index,
        })? = Complex64::new(1.0, 0.0);
        Self::new(register, amps)
    }

    pub fn register(&self) -> &ModeRegister {
        &self.register
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.register != other.register {
            return Err(Error::InvalidRegister(format!(
                "inner product between {} and {}",
                self.register, other.register
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    fn require_normalized(&self) -> Result<()> {
        let norm = self.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::UnnormalizedState { norm });
        }
        Ok(())
    }

    /// Reduced density matrix on `keep`, computed straight from the
    /// amplitudes as `Psi Psi^H` with `Psi` the (kept x traced) reshaping.
    pub fn reduced_density(&self, keep: &[usize]) -> Result<DensityMatrix> {
        self.require_normalized()?;
        if keep.is_empty() {
            return Err(Error::EmptyKeepSet);
        }
        let n = self.register.len();
        let keep = normalize_slot_set(keep, n)?;
        let traced: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        let dk = 1usize << keep.len();
        let dt = 1usize << traced.len();

        // psi[i][t] with i over kept assignments and t over traced ones
        let mut psi = vec![Complex64::new(0.0, 0.0); dk * dt];
        for (full, &amp) in self.amplitudes.iter().enumerate() {
            if amp == Complex64::new(0.0, 0.0) {
                continue;
            }
            let i = gather_bits(full, &keep, n);
            let t = gather_bits(full, &traced, n);
            psi[i * dt + t] = amp;
        }
        let m = ComplexMatrix::from_fn(dk, |i, j| {
            (0..dt)
                .map(|t| psi[i * dt + t] * psi[j * dt + t].conj())
                .sum()
        });
        DensityMatrix::from_trusted(self.register.restrict(&keep), m)
    }
}

/// Compacts the bits of `full` sitting at `positions` into a local index.
fn gather_bits(full: usize, positions: &[usize], n: usize) -> usize {
    positions.iter().fold(0usize, |acc, &slot| {
        (acc << 1) | ((full >> (n - 1 - slot)) & 1)
    })
}

fn check_party_count(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::PartyCountTooSmall(n));
    }
    if n > MAX_PARTIES {
        return Err(Error::TooManyParties(n));
    }
    Ok(())
}

/// `(1/sqrt n) * sum of the n kets with exactly one excitation`.
pub fn w_state(n: usize) -> Result<StateVector> {
    check_party_count(n)?;
    let register = ModeRegister::minkowski(n)?;
    let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); register.dim()];
    for k in 0..n {
        amps[1 << k] = amp;
    }
    StateVector::new(register, amps)
}

/// `(|0...0> + |1...1>)/sqrt 2`.
pub fn ghz_state(n: usize) -> Result<StateVector> {
    check_party_count(n)?;
    let register = ModeRegister::minkowski(n)?;
    let dim = register.dim();
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    amps[0] = h;
    amps[dim - 1] = h;
    StateVector::new(register, amps)
}

/// `|psi><psi|`.
pub fn pure_density(psi: &StateVector) -> Result<DensityMatrix> {
    psi.require_normalized()?;
    DensityMatrix::from_trusted(psi.register.clone(), ComplexMatrix::outer(&psi.amplitudes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::register::Party;

    fn real_amps(s: &StateVector) -> Vec<f64> {
        s.amplitudes().iter().map(|a| a.re).collect()
    }

    #[test]
    fn w2_is_symmetric_bell() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let got = real_amps(&w_state(2).unwrap());
        for (g, e) in got.iter().zip([0.0, h, h, 0.0]) {
            assert!((g - e).abs() < 1e-15);
        }
    }

    #[test]
    fn w4_amplitudes() {
        let w = w_state(4).unwrap();
        for idx in 0..16 {
            let expected = if [0b1000, 0b0100, 0b0010, 0b0001].contains(&idx) {
                0.5
            } else {
                0.0
            };
            assert_eq!(
                w.amplitude(idx),
                Complex64::new(expected, 0.0),
                "index {idx:04b}"
            );
        }
    }

    #[test]
    fn w3_amplitudes() {
        let w = w_state(3).unwrap();
        let a = 1.0 / 3f64.sqrt();
        assert_eq!(real_amps(&w), vec![0.0, a, a, 0.0, a, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn ghz_amplitudes() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(real_amps(&ghz_state(2).unwrap()), vec![h, 0.0, 0.0, h]);
        let g4 = ghz_state(4).unwrap();
        assert_eq!(g4.amplitude(0).re, h);
        assert_eq!(g4.amplitude(15).re, h);
        assert!((g4.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn too_few_parties() {
        assert!(matches!(w_state(1), Err(Error::PartyCountTooSmall(1))));
        assert!(matches!(ghz_state(0), Err(Error::PartyCountTooSmall(0))));
        assert!(matches!(w_state(9), Err(Error::TooManyParties(9))));
    }

    #[test]
    fn pure_density_of_zero_ket() {
        let psi = StateVector::basis(ModeRegister::minkowski(1).unwrap(), 0).unwrap();
        let rho = pure_density(&psi).unwrap();
        assert_eq!(rho.matrix(), &ComplexMatrix::diagonal(&[1.0, 0.0]));
    }

    #[test]
    fn pure_density_of_w4_has_sixteen_quarter_entries() {
        let rho = pure_density(&w_state(4).unwrap()).unwrap();
        let nonzero: Vec<_> = rho
            .matrix()
            .as_slice()
            .iter()
            .filter(|z| z.norm() > 0.0)
            .collect();
        assert_eq!(nonzero.len(), 16);
        assert!(nonzero
            .iter()
            .all(|z| (z.re - 0.25).abs() < 1e-15 && z.im == 0.0));
        assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unnormalized_rejected() {
        let reg = ModeRegister::minkowski(1).unwrap();
        let psi = StateVector::new(reg, vec![Complex64::new(1.0, 0.0); 2]).unwrap();
        assert!(matches!(
            pure_density(&psi),
            Err(Error::UnnormalizedState { .. })
        ));
    }

    #[test]
    fn reduced_density_matches_partial_trace() {
        let w = w_state(4).unwrap();
        let full = pure_density(&w).unwrap();
        for keep in [vec![0], vec![1, 3], vec![0, 2, 3], vec![3, 0]] {
            let a = w.reduced_density(&keep).unwrap();
            let b = full.partial_trace(&keep).unwrap();
            assert_eq!(a.register(), b.register());
            assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-15);
        }
    }

    #[test]
    fn w4_single_party_reduction() {
        let w = w_state(4).unwrap();
        let rho_a = pure_density(&w)
            .unwrap()
            .reduce_to_parties(&[Party::A])
            .unwrap();
        assert!(
            rho_a
                .matrix()
                .max_abs_diff(&ComplexMatrix::diagonal(&[0.75, 0.25]))
                < 1e-15
        );
    }
}
