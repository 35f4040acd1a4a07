//! Single-mode Rindler expansion of accelerated observers.
//!
//! An accelerated party's Minkowski mode is split into a Region-I and a
//! Region-II mode:
//!
//! ```text
//! |0>_M = cos r |0_I 0_II> + sin r |1_I 1_II>
//! |1>_M = |1_I 0_II>
//! ```
//!
//! The map is an isometry per party, so expanded states stay normalized.
//! Observers only access Region I; [`physical_density`] traces Region II out.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt;

use num_complex::Complex64;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::register::{ModeRegister, Party, Region, Slot};
use crate::states::{ghz_state, w_state, StateVector};

/// Initial inertial state of the four observers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum StateFamily {
    #[default]
    W,
    Ghz,
}

impl StateFamily {
    pub fn initial_state(self) -> Result<StateVector> {
        match self {
            StateFamily::W => w_state(4),
            StateFamily::Ghz => ghz_state(4),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StateFamily::W => "w",
            StateFamily::Ghz => "ghz",
        }
    }
}

/// Which of `A..D` accelerate, with a common acceleration parameter `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    family: StateFamily,
    accelerated: BTreeSet<Party>,
    r: f64,
}

pub(crate) fn check_r(r: f64) -> Result<()> {
    if !(0.0..=FRAC_PI_4).contains(&r) {
        return Err(Error::InvalidScenario(format!(
            "acceleration parameter r = {r} outside [0, pi/4]"
        )));
    }
    Ok(())
}

impl Scenario {
    pub fn new(
        family: StateFamily,
        accelerated: impl IntoIterator<Item = Party>,
        r: f64,
    ) -> Result<Self> {
        check_r(r)?;
        let accelerated: BTreeSet<Party> = accelerated.into_iter().collect();
        if let Some(p) = accelerated.iter().find(|p| p.index() >= 4) {
            return Err(Error::InvalidScenario(format!(
                "party {p} is not one of A, B, C, D"
            )));
        }
        Ok(Scenario {
            family,
            accelerated,
            r,
        })
    }

    /// W-state scenario.
    pub fn w(accelerated: impl IntoIterator<Item = Party>, r: f64) -> Result<Self> {
        Self::new(StateFamily::W, accelerated, r)
    }

    pub fn with_r(&self, r: f64) -> Result<Self> {
        check_r(r)?;
        Ok(Scenario { r, ..self.clone() })
    }

    pub fn family(&self) -> StateFamily {
        self.family
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn accelerated(&self) -> &BTreeSet<Party> {
        &self.accelerated
    }

    pub fn is_accelerated(&self, p: Party) -> bool {
        self.accelerated.contains(&p)
    }

    /// Sorted letters of the accelerated set, `none` when empty; GHZ
    /// scenarios carry a `ghz:` prefix.
    pub fn name(&self) -> String {
        let letters: String = if self.accelerated.is_empty() {
            "none".to_string()
        } else {
            self.accelerated.iter().map(|p| p.letter()).collect()
        };
        match self.family {
            StateFamily::W => letters,
            StateFamily::Ghz => format!("ghz:{letters}"),
        }
    }

    /// `A`, or `A_I` when `A` accelerates.
    pub fn label(&self, p: Party) -> String {
        if self.is_accelerated(p) {
            format!("{p}_I")
        } else {
            p.to_string()
        }
    }

    pub fn expanded_state(&self) -> Result<StateVector> {
        unruh_expand(&self.family.initial_state()?, self)
    }

    /// Four-slot state seen by the observers (Region II traced out).
    pub fn physical_density(&self) -> Result<DensityMatrix> {
        physical_density(&self.expanded_state()?)
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ r={}", self.name(), self.r)
    }
}

/// Proper acceleration `a`, mode frequency `omega` and light speed `c` in any
/// consistent units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalAcceleration {
    a: f64,
    omega: f64,
    c: f64,
}

impl PhysicalAcceleration {
    pub fn new(a: f64, omega: f64, c: f64) -> Result<Self> {
        // written so that NaN fails every test
        let valid = a >= 0.0 && omega > 0.0 && c > 0.0;
        if !valid {
            return Err(Error::InvalidScenario(format!(
                "need a >= 0, omega > 0, c > 0 (got a={a}, omega={omega}, c={c})"
            )));
        }
        Ok(PhysicalAcceleration { a, omega, c })
    }
}

/// `r = arccos(1/sqrt(1 + exp(-2 pi omega c / a)))`; `a = 0` gives `r = 0`.
pub fn r_from_acceleration(p: PhysicalAcceleration) -> f64 {
    if p.a == 0.0 {
        return 0.0;
    }
    let x = 2.0 * PI * p.omega * p.c / p.a;
    (1.0 / (1.0 + (-x).exp()).sqrt()).acos()
}

/// Replaces the Minkowski slot of every accelerated party by a
/// (Region-I, Region-II) pair.
pub fn unruh_expand(psi: &StateVector, scenario: &Scenario) -> Result<StateVector> {
    check_r(scenario.r)?;
    let mut state = psi.clone();
    for &party in &scenario.accelerated {
        let pos = state
            .register()
            .position(Slot::new(party, Region::Minkowski))
            .ok_or_else(|| {
                if state.register().slots_of(party).is_empty() {
                    Error::PartyNotInRegister(party)
                } else {
                    Error::InvalidScenario(format!("party {party} is already expanded"))
                }
            })?;
        state = expand_slot(&state, pos, scenario.r)?;
    }
    Ok(state)
}

fn expand_slot(state: &StateVector, pos: usize, r: f64) -> Result<StateVector> {
    let old = state.register();
    let n = old.len();
    let party = old.slots()[pos].party;

    let mut slots = old.slots().to_vec();
    slots[pos] = Slot::new(party, Region::RindlerI);
    slots.insert(pos + 1, Slot::new(party, Region::RindlerII));
    let register = ModeRegister::new(slots)?;

    let low_bits = n - 1 - pos;
    let low_mask = (1usize << low_bits) - 1;
    let (cos, sin) = (r.cos(), r.sin());

    let mut amps = vec![Complex64::new(0.0, 0.0); register.dim()];
    for (idx, &amp) in state.amplitudes().iter().enumerate() {
        if amp == Complex64::new(0.0, 0.0) {
            continue;
        }
        let low = idx & low_mask;
        let bit = (idx >> low_bits) & 1;
        let high = idx >> (low_bits + 1);
        let at = |pair: usize| (((high << 2) | pair) << low_bits) | low;
        if bit == 0 {
            amps[at(0b00)] += amp * cos;
            amps[at(0b11)] += amp * sin;
        } else {
            amps[at(0b10)] += amp;
        }
    }
    StateVector::new(register, amps)
}

/// Traces every Region-II slot out of an expanded state.
pub fn physical_density(psi_expanded: &StateVector) -> Result<DensityMatrix> {
    let keep: Vec<usize> = psi_expanded
        .register()
        .slots()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.region != Region::RindlerII)
        .map(|(i, _)| i)
        .collect();
    psi_expanded.reduced_density(&keep)
}
