//! Sweeps that regenerate the data behind each published figure, one CSV per
//! figure, plus a helper that groups records into distinct curves.

use std::collections::BTreeMap;
use std::path::Path;

use super::csv_out::emit_csv;
use super::measure::{Measure, ScenarioTemplate};
use super::sweep::{run_sweep, MeasureRecord, SweepConfig};
use crate::error::Result;
use crate::register::Party;

#[derive(Debug, Clone)]
pub struct FigurePreset {
    pub name: &'static str,
    pub file_name: &'static str,
    pub description: &'static str,
    pub config: SweepConfig,
}

/// `{D}, {C,D}, {B,C,D}, {A,B,C,D}`.
pub fn accelerated_chain() -> Vec<ScenarioTemplate> {
    use Party as P;
    vec![
        ScenarioTemplate::w([P::D]),
        ScenarioTemplate::w([P::C, P::D]),
        ScenarioTemplate::w([P::B, P::C, P::D]),
        ScenarioTemplate::w([P::A, P::B, P::C, P::D]),
    ]
}

fn pairs() -> Vec<(Party, Party)> {
    let mut out = Vec::new();
    for (i, &p) in Party::ABCD.iter().enumerate() {
        for &q in &Party::ABCD[i + 1..] {
            out.push((p, q));
        }
    }
    out
}

fn triples() -> Vec<Vec<Party>> {
    (0..4)
        .map(|skip| {
            Party::ABCD
                .iter()
                .copied()
                .filter(|p| p.index() != skip)
                .collect()
        })
        .collect()
}

pub fn figure_presets(points: usize) -> Vec<FigurePreset> {
    let chain = accelerated_chain();
    let mut with_inertial = vec![ScenarioTemplate::w([])];
    with_inertial.extend(chain.iter().cloned());

    let cfg = |scenarios: Vec<ScenarioTemplate>, measures: Vec<Measure>| SweepConfig {
        points,
        ..SweepConfig::new(scenarios, measures)
    };

    let mut entropy = vec![Measure::Entropy(vec![])];
    entropy.extend(triples().into_iter().map(Measure::Entropy));
    entropy.extend(
        pairs()
            .into_iter()
            .map(|(p, q)| Measure::Entropy(vec![p, q])),
    );

    vec![
        FigurePreset {
            name: "fig1",
            file_name: "fig1_one_three_tangles.csv",
            description: "1-3 tangles of every party for one to four accelerated observers",
            config: cfg(chain.clone(), Party::ABCD.map(Measure::OneThree).to_vec()),
        },
        FigurePreset {
            name: "fig2",
            file_name: "fig2_one_one_tangles.csv",
            description: "1-1 tangles of every pair",
            config: cfg(
                chain.clone(),
                pairs()
                    .into_iter()
                    .map(|(p, q)| Measure::OneOne(p, q))
                    .collect(),
            ),
        },
        FigurePreset {
            name: "fig3",
            file_name: "fig3_residual_tangles.csv",
            description: "residual tangles of every party in every scenario",
            config: cfg(chain.clone(), Party::ABCD.map(Measure::Residual).to_vec()),
        },
        FigurePreset {
            name: "fig4",
            file_name: "fig4_pi4_tangles.csv",
            description:
                "arithmetic (pi4) and geometric (geo-pi4) averages of the residual tangles",
            config: cfg(chain.clone(), vec![Measure::Pi4, Measure::GeometricPi4]),
        },
        FigurePreset {
            name: "fig5",
            file_name: "fig5_pi4_gap.csv",
            description: "difference between the arithmetic and geometric averages",
            config: cfg(chain, vec![Measure::Pi4Gap]),
        },
        FigurePreset {
            name: "fig6",
            file_name: "fig6_entropies.csv",
            description: "von Neumann entropies of the whole system, triples and pairs",
            config: cfg(with_inertial, entropy),
        },
    ]
}

pub fn preset(name: &str, points: usize) -> Option<FigurePreset> {
    figure_presets(points).into_iter().find(|p| p.name == name)
}

/// Runs a preset and writes its CSV into `dir`; returns the records.
pub fn run_preset(preset: &FigurePreset, dir: &Path) -> Result<Vec<MeasureRecord>> {
    let records = run_sweep(&preset.config)?;
    emit_csv(&records, &dir.join(preset.file_name))?;
    Ok(records)
}

/// Identifies a curve: (scenario, measure, subsystem).
pub type CurveKey = (String, String, String);

/// `(r, value)` samples of one curve.
type Curve = Vec<(f64, f64)>;

/// Groups records into curves and merges curves whose values agree at every
/// grid point within `tol`. Each returned class lists its member curves.
pub fn distinct_curves(records: &[MeasureRecord], tol: f64) -> Vec<Vec<CurveKey>> {
    let mut curves: BTreeMap<CurveKey, Curve> = BTreeMap::new();
    for rec in records {
        curves
            .entry((rec.scenario.name(), rec.name.clone(), rec.subsystem.clone()))
            .or_default()
            .push((rec.r, rec.value));
    }
    let mut classes: Vec<(Curve, Vec<CurveKey>)> = Vec::new();
    for (key, mut values) in curves {
        values.sort_by(|a, b| a.0.total_cmp(&b.0));
        let same = |other: &[(f64, f64)]| {
            other.len() == values.len()
                && other
                    .iter()
                    .zip(&values)
                    .all(|(a, b)| a.0 == b.0 && (a.1 - b.1).abs() <= tol)
        };
        match classes.iter_mut().find(|(v, _)| same(v)) {
            Some((_, members)) => members.push(key),
            None => classes.push((values, vec![key])),
        }
    }
    classes.into_iter().map(|(_, members)| members).collect()
}
