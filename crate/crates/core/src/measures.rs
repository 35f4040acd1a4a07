//! Negativities, residual tangles and von Neumann entropies.
//!
//! The negativity of `rho` with party `k` transposed is `||rho^{T_k}|| - 1`,
//! computed as twice the summed magnitude of the negative eigenvalues of the
//! partial transpose. The 1-3 tangle applies it to the full four-party state,
//! the 1-1 tangle to a two-party reduction. The residual tangle of `k` is the
//! squared 1-3 tangle minus the squared 1-1 tangles of `k` with each other
//! party; `pi4` and `Pi4` are their arithmetic and geometric means.

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, trace_norm};
use crate::register::Party;
use crate::unruh::Scenario;

/// Partial-transpose eigenvalues at or above `-NEGATIVITY_FLOOR` count as zero.
pub const NEGATIVITY_FLOOR: f64 = 1e-12;
/// Density eigenvalues at or below this are dropped from the entropy sum.
pub const ENTROPY_FLOOR: f64 = 1e-12;

/// `2 * sum |lambda|` over eigenvalues of `rho^{T_party}` below `-1e-12`.
pub fn negativity(rho: &DensityMatrix, transposed_party: Party) -> Result<f64> {
    let pt = rho.partial_transpose_party(transposed_party)?;
    let neg = hermitian_eigenvalues(&pt)?
        .into_iter()
        .filter(|&l| l < -NEGATIVITY_FLOOR)
        .fold(0.0, |acc, l| acc - l);
    Ok(2.0 * neg)
}

/// The trace-norm form `||rho^{T_party}|| - 1`; agrees with [`negativity`]
/// up to eigenvalues inside the noise floor.
pub fn negativity_trace_norm(rho: &DensityMatrix, transposed_party: Party) -> Result<f64> {
    let pt = rho.partial_transpose_party(transposed_party)?;
    Ok(trace_norm(&pt)? - 1.0)
}

/// `-sum lambda log2 lambda`, in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let s: f64 = rho
        .eigenvalues()?
        .into_iter()
        .filter(|&l| l > ENTROPY_FLOOR)
        .map(|l| -l * l.log2())
        .sum();
    // -0.0 for pure states
    Ok(s.max(0.0))
}

fn require_tetrapartite(party: Party) -> Result<()> {
    if party.index() >= 4 {
        return Err(Error::PartyNotInRegister(party));
    }
    Ok(())
}

fn require_distinct(p: Party, q: Party) -> Result<()> {
    if p == q {
        return Err(Error::IdenticalParties(p));
    }
    Ok(())
}

/// 1-1 tangle on an already-built physical density.
pub fn pair_negativity(rho: &DensityMatrix, p: Party, q: Party) -> Result<f64> {
    require_distinct(p, q)?;
    negativity(&rho.reduce_to_parties(&[p, q])?, p)
}

/// `N_{k(rest)}^2 - sum_{j != k} N_{kj}^2` on a physical density.
pub fn residual_tangle_of(rho: &DensityMatrix, party: Party) -> Result<f64> {
    let one_three = negativity(rho, party)?;
    let mut pi = one_three * one_three;
    for other in rho.register().parties() {
        if other != party {
            let n = pair_negativity(rho, party, other)?;
            pi -= n * n;
        }
    }
    Ok(pi)
}

pub fn one_three_tangle(scenario: &Scenario, party: Party) -> Result<f64> {
    require_tetrapartite(party)?;
    negativity(&scenario.physical_density()?, party)
}

/// Negativity of the `(first, second)` reduction with `first` transposed.
///
/// A reduction only depends on the acceleration statuses of its own members,
/// so this equals the value for any other scenario that accelerates the same
/// members of the pair.
pub fn one_one_tangle(scenario: &Scenario, pair: (Party, Party)) -> Result<f64> {
    let (p, q) = pair;
    require_distinct(p, q)?;
    require_tetrapartite(p)?;
    require_tetrapartite(q)?;
    pair_negativity(&scenario.physical_density()?, p, q)
}

pub fn residual_tangle(scenario: &Scenario, party: Party) -> Result<f64> {
    require_tetrapartite(party)?;
    residual_tangle_of(&scenario.physical_density()?, party)
}

/// Entropy of the reduction onto `parties` (Region-I modes for accelerated ones).
pub fn subsystem_entropy(scenario: &Scenario, parties: &[Party]) -> Result<f64> {
    let rho = scenario.physical_density()?;
    von_neumann_entropy(&rho.reduce_to_parties(parties)?)
}

/// Per-party residual tangles with their arithmetic and geometric means.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangleSet {
    /// Indexed by party `A..D`.
    pub residual: [f64; 4],
    pub pi4: f64,
    /// Geometric mean of `max(pi, 0)`.
    pub big_pi4: f64,
    /// Set when any residual tangle was negative and clamped for `big_pi4`.
    pub clamped: bool,
}

impl TangleSet {
    pub fn from_residuals(residual: [f64; 4]) -> Self {
        let pi4 = residual.iter().sum::<f64>() / 4.0;
        let clamped = residual.iter().any(|&p| p < 0.0);
        let big_pi4 = residual
            .iter()
            .map(|&p| p.max(0.0))
            .product::<f64>()
            .powf(0.25);
        TangleSet {
            residual,
            pi4,
            big_pi4,
            clamped,
        }
    }

    pub fn from_density(rho: &DensityMatrix) -> Result<Self> {
        let mut residual = [0.0; 4];
        for (slot, party) in residual.iter_mut().zip(Party::ABCD) {
            *slot = residual_tangle_of(rho, party)?;
        }
        Ok(Self::from_residuals(residual))
    }

    pub fn pi(&self, party: Party) -> f64 {
        self.residual[party.index()]
    }

    /// `pi4 - Pi4`.
    pub fn gap(&self) -> f64 {
        self.pi4 - self.big_pi4
    }
}

pub fn tangle_set(scenario: &Scenario) -> Result<TangleSet> {
    TangleSet::from_density(&scenario.physical_density()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use crate::register::ModeRegister;
    use crate::states::{pure_density, w_state, StateVector};
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    const ALL: [Party; 4] = Party::ABCD;

    fn bell() -> DensityMatrix {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let amps = [h, 0.0, 0.0, h].map(|x| Complex64::new(x, 0.0)).to_vec();
        pure_density(&StateVector::new(ModeRegister::minkowski(2).unwrap(), amps).unwrap()).unwrap()
    }

    #[test]
    fn bell_negativity_is_one() {
        for p in [Party::A, Party::B] {
            assert!((negativity(&bell(), p).unwrap() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn product_negativity_is_zero() {
        let m = crate::linalg::kron(
            &ComplexMatrix::diagonal(&[0.1, 0.9]),
            &ComplexMatrix::diagonal(&[0.6, 0.4]),
        );
        let rho = DensityMatrix::new(ModeRegister::minkowski(2).unwrap(), m).unwrap();
        assert_eq!(negativity(&rho, Party::A).unwrap(), 0.0);
    }

    #[test]
    fn w4_one_vs_rest_from_schmidt_split() {
        // |W4> = (1/2)|1>|000> + (sqrt3/2)|0>|W3>  =>  N = 2 * (1/2) * (sqrt3/2)
        let expected = 3f64.sqrt() / 2.0;
        let rho = pure_density(&w_state(4).unwrap()).unwrap();
        for p in ALL {
            assert!((negativity(&rho, p).unwrap() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn missing_party() {
        assert!(matches!(
            negativity(&bell(), Party::D),
            Err(Error::PartyNotInRegister(Party::D))
        ));
        let s = Scenario::w([], 0.1).unwrap();
        assert!(matches!(
            one_one_tangle(&s, (Party::B, Party::B)),
            Err(Error::IdenticalParties(Party::B))
        ));
        assert!(one_three_tangle(&s, Party::new(5).unwrap()).is_err());
    }

    #[test]
    fn inertial_pair_tangle() {
        let expected = (SQRT_2 - 1.0) / 2.0;
        let s = Scenario::w([Party::C, Party::D], 0.6).unwrap();
        assert!((one_one_tangle(&s, (Party::A, Party::B)).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn one_accelerated_pair_dies_only_at_infinity() {
        let s = Scenario::w([Party::D], FRAC_PI_4).unwrap();
        assert_eq!(one_one_tangle(&s, (Party::D, Party::A)).unwrap(), 0.0);
        let s = Scenario::w([Party::D], 0.7).unwrap();
        assert!(one_one_tangle(&s, (Party::D, Party::A)).unwrap() > 0.0);
    }

    #[test]
    fn both_accelerated_at_rest() {
        let s = Scenario::w([Party::A, Party::B], 0.0).unwrap();
        let n = one_one_tangle(&s, (Party::A, Party::B)).unwrap();
        assert!((n - (SQRT_2 - 1.0) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn residual_at_rest() {
        let expected = (6.0 * SQRT_2 - 6.0) / 4.0;
        let s = Scenario::w([Party::B], 0.0).unwrap();
        for p in ALL {
            assert!((residual_tangle(&s, p).unwrap() - expected).abs() < 1e-12);
        }
        let t = tangle_set(&s).unwrap();
        assert!((t.pi4 - expected).abs() < 1e-12);
        assert!((t.big_pi4 - expected).abs() < 1e-12);
        assert!(!t.clamped);
    }

    #[test]
    fn inertial_members_share_residual_tangle() {
        let s = Scenario::w([Party::D], 0.5).unwrap();
        let t = tangle_set(&s).unwrap();
        assert!((t.pi(Party::A) - t.pi(Party::B)).abs() < 1e-12);
        assert!((t.pi(Party::B) - t.pi(Party::C)).abs() < 1e-12);
        assert!(t.pi4 >= t.big_pi4);
    }

    #[test]
    fn tangle_set_clamps() {
        let t = TangleSet::from_residuals([0.5, 0.5, 0.5, -0.1]);
        assert!(t.clamped);
        assert_eq!(t.big_pi4, 0.0);
        assert!((t.pi4 - 0.35).abs() < 1e-15);
    }

    #[test]
    fn entropy_values() {
        assert!(von_neumann_entropy(&bell()).unwrap().abs() < 1e-9);
        let half = bell().partial_trace(&[0]).unwrap();
        assert!((von_neumann_entropy(&half).unwrap() - 1.0).abs() < 1e-12);
        let s = Scenario::w([Party::D], 0.4).unwrap();
        let h = -(0.25f64 * 0.25f64.log2() + 0.75 * 0.75f64.log2());
        assert!((subsystem_entropy(&s, &[Party::A, Party::B]).unwrap() - 1.0).abs() < 1e-9);
        let triple = subsystem_entropy(&s, &[Party::A, Party::B, Party::C]).unwrap();
        assert!((triple - h).abs() < 1e-9);
        assert!((h - 0.811278).abs() < 5e-7);
    }

    #[test]
    fn trace_norm_form_agrees() {
        let s = Scenario::w([Party::B, Party::C], 0.55).unwrap();
        let rho = s.physical_density().unwrap();
        for p in ALL {
            let a = negativity(&rho, p).unwrap();
            let b = negativity_trace_norm(&rho, p).unwrap();
            assert!((a - b).abs() < 1e-10);
        }
    }
}
