use std::collections::BTreeSet;
use std::fmt;

use crate::closed_form::{closed_form_one_one, PairKind};
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::measures::{negativity, pair_negativity, von_neumann_entropy, TangleSet};
use crate::register::Party;
use crate::states::StateVector;
use crate::unruh::{Scenario, StateFamily};

/// A scenario without its acceleration parameter.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ScenarioTemplate {
    pub family: StateFamily,
    pub accelerated: BTreeSet<Party>,
}

impl ScenarioTemplate {
    pub fn new(family: StateFamily, accelerated: impl IntoIterator<Item = Party>) -> Self {
        ScenarioTemplate {
            family,
            accelerated: accelerated.into_iter().collect(),
        }
    }

    pub fn w(accelerated: impl IntoIterator<Item = Party>) -> Self {
        Self::new(StateFamily::W, accelerated)
    }

    pub fn at(&self, r: f64) -> Result<Scenario> {
        Scenario::new(self.family, self.accelerated.iter().copied(), r)
    }

    /// Parses `none`, `CD`, `C,D`, ... (case-insensitive).
    pub fn parse_accelerated(family: StateFamily, text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() || t.eq_ignore_ascii_case("none") {
            return Ok(Self::new(family, []));
        }
        let parties = parse_parties(t)?;
        if let Some(p) = parties.iter().find(|p| p.index() >= 4) {
            return Err(Error::InvalidConfig(format!(
                "party {p} is not one of A, B, C, D"
            )));
        }
        Ok(Self::new(family, parties))
    }
}

/// Parses party lists such as `A,B`, `AB`, `A_I,B` or `A(BCD_I)`; Rindler
/// suffixes are ignored since the scenario decides acceleration.
pub fn parse_parties(text: &str) -> Result<Vec<Party>> {
    let cleaned = text.replace("_II", "").replace("_I", "");
    let mut out = Vec::new();
    for ch in cleaned.chars() {
        match ch {
            ',' | ' ' | '(' | ')' | '|' | '+' => continue,
            c => out.push(Party::from_letter(c).ok_or_else(|| {
                Error::InvalidConfig(format!("'{c}' is not a party letter in {text:?}"))
            })?),
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidConfig(format!("no parties in {text:?}")));
    }
    Ok(out)
}

/// A quantity that can be evaluated at one acceleration parameter.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Measure {
    /// 1-3 tangle of the party against the rest.
    OneThree(Party),
    /// 1-1 tangle, first member transposed.
    OneOne(Party, Party),
    /// Printed closed form of the 1-1 tangle for the pair's acceleration count.
    OneOneClosedForm(Party, Party),
    Residual(Party),
    Pi4,
    GeometricPi4,
    /// `pi4 - Pi4`.
    Pi4Gap,
    /// Entropy of the listed parties; empty means the whole four-party state.
    Entropy(Vec<Party>),
    /// Norm of the Rindler-expanded pure state.
    UnruhNorm,
}

impl Measure {
    pub fn name(&self) -> &'static str {
        match self {
            Measure::OneThree(_) => "n13",
            Measure::OneOne(..) => "n11",
            Measure::OneOneClosedForm(..) => "n11-closed",
            Measure::Residual(_) => "pi",
            Measure::Pi4 => "pi4",
            Measure::GeometricPi4 => "geo-pi4",
            Measure::Pi4Gap => "pi4-gap",
            Measure::Entropy(_) => "entropy",
            Measure::UnruhNorm => "norm",
        }
    }

    pub const NAMES: [&'static str; 9] = [
        "n13",
        "n11",
        "n11-closed",
        "pi",
        "pi4",
        "geo-pi4",
        "pi4-gap",
        "entropy",
        "norm",
    ];

    /// Builds a measure from its name and an optional party list.
    pub fn parse(name: &str, subsystem: Option<&str>) -> Result<Self> {
        let parties = subsystem.map(parse_parties).transpose()?;
        let need = |n: usize| -> Result<Vec<Party>> {
            match &parties {
                Some(p) if p.len() == n => Ok(p.clone()),
                _ => Err(Error::InvalidConfig(format!(
                    "measure {name} needs a subsystem of {n} part{}",
                    if n == 1 { "y" } else { "ies" }
                ))),
            }
        };
        let m = match name {
            "n13" => Measure::OneThree(need(1)?[0]),
            "n11" => {
                let p = need(2)?;
                Measure::OneOne(p[0], p[1])
            }
            "n11-closed" => {
                let p = need(2)?;
                Measure::OneOneClosedForm(p[0], p[1])
            }
            "pi" => Measure::Residual(need(1)?[0]),
            "pi4" => Measure::Pi4,
            "geo-pi4" => Measure::GeometricPi4,
            "pi4-gap" => Measure::Pi4Gap,
            "entropy" => Measure::Entropy(parties.unwrap_or_default()),
            "norm" => Measure::UnruhNorm,
            other => {
                return Err(Error::InvalidConfig(format!(
                    "unknown measure {other:?} (expected one of {})",
                    Self::NAMES.join(", ")
                )))
            }
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let check = |p: &Party| -> Result<()> {
            if p.index() >= 4 {
                return Err(Error::InvalidConfig(format!(
                    "party {p} is not one of A, B, C, D"
                )));
            }
            Ok(())
        };
        match self {
            Measure::OneThree(p) | Measure::Residual(p) => check(p),
            Measure::OneOne(p, q) | Measure::OneOneClosedForm(p, q) => {
                check(p)?;
                check(q)?;
                if p == q {
                    return Err(Error::IdenticalParties(*p));
                }
                Ok(())
            }
            Measure::Entropy(ps) => {
                ps.iter().try_for_each(check)?;
                let unique: BTreeSet<_> = ps.iter().collect();
                if unique.len() != ps.len() {
                    return Err(Error::InvalidConfig(
                        "entropy subsystem repeats a party".into(),
                    ));
                }
                Ok(())
            }
            Measure::Pi4 | Measure::GeometricPi4 | Measure::Pi4Gap | Measure::UnruhNorm => Ok(()),
        }
    }

    fn needs_tangles(&self) -> bool {
        matches!(self, Measure::Pi4 | Measure::GeometricPi4 | Measure::Pi4Gap)
    }

    /// Label of the subsystem in the given scenario, e.g. `A(BCD_I)`,
    /// `A(D_I)`, `A_IB_I`; `all` for whole-system quantities.
    pub fn subsystem_label(&self, template: &ScenarioTemplate) -> String {
        let tag = |p: Party| {
            if template.accelerated.contains(&p) {
                format!("{p}_I")
            } else {
                p.to_string()
            }
        };
        match self {
            Measure::OneThree(p) => {
                let rest: String = Party::ABCD
                    .iter()
                    .filter(|q| *q != p)
                    .map(|&q| tag(q))
                    .collect();
                format!("{}({rest})", tag(*p))
            }
            Measure::OneOne(p, q) | Measure::OneOneClosedForm(p, q) => {
                format!("{}({})", tag(*p), tag(*q))
            }
            Measure::Residual(p) => tag(*p),
            Measure::Entropy(ps) if !ps.is_empty() => {
                let mut sorted = ps.clone();
                sorted.sort();
                sorted.into_iter().map(tag).collect()
            }
            _ => "all".to_string(),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[{}]",
            self.name(),
            self.subsystem_label(&ScenarioTemplate::default())
        )
    }
}

/// Everything derived from one (scenario, r) point, shared across measures.
pub struct PointState {
    pub scenario: Scenario,
    pub expanded: StateVector,
    pub density: DensityMatrix,
    tangles: Option<TangleSet>,
}

impl PointState {
    pub fn new(scenario: Scenario) -> Result<Self> {
        let expanded = scenario.expanded_state()?;
        let density = crate::unruh::physical_density(&expanded)?;
        Ok(PointState {
            scenario,
            expanded,
            density,
            tangles: None,
        })
    }

    fn tangles(&mut self) -> Result<TangleSet> {
        if let Some(t) = self.tangles {
            return Ok(t);
        }
        let t = TangleSet::from_density(&self.density)?;
        self.tangles = Some(t);
        Ok(t)
    }

    pub fn evaluate(&mut self, measure: &Measure) -> Result<f64> {
        let rho = &self.density;
        Ok(match measure {
            Measure::OneThree(p) => negativity(rho, *p)?,
            Measure::OneOne(p, q) => pair_negativity(rho, *p, *q)?,
            Measure::OneOneClosedForm(p, q) => {
                let count = [p, q]
                    .iter()
                    .filter(|x| self.scenario.is_accelerated(***x))
                    .count();
                let kind = PairKind::from_count(count).expect("a pair has at most two members");
                closed_form_one_one(self.scenario.r(), kind)
            }
            Measure::Residual(p) => crate::measures::residual_tangle_of(rho, *p)?,
            Measure::Entropy(ps) if ps.is_empty() => von_neumann_entropy(rho)?,
            Measure::Entropy(ps) => von_neumann_entropy(&rho.reduce_to_parties(ps)?)?,
            Measure::UnruhNorm => self.expanded.norm(),
            m if m.needs_tangles() => {
                let t = self.tangles()?;
                match m {
                    Measure::Pi4 => t.pi4,
                    Measure::GeometricPi4 => t.big_pi4,
                    _ => t.gap(),
                }
            }
            _ => unreachable!("all measures handled"),
        })
    }
}

/// Evaluates a single measure at one point.
pub fn evaluate(template: &ScenarioTemplate, measure: &Measure, r: f64) -> Result<f64> {
    measure.validate()?;
    PointState::new(template.at(r)?)?.evaluate(measure)
}
