use std::cmp::Ordering;
use std::f64::consts::FRAC_PI_4;
use std::path::PathBuf;

use rayon::prelude::*;

use super::measure::{Measure, PointState, ScenarioTemplate};
use crate::error::{Error, Result};
use crate::unruh::Scenario;

pub const DEFAULT_POINTS: usize = 200;

/// One computed value.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureRecord {
    pub scenario: Scenario,
    pub r: f64,
    pub name: String,
    pub subsystem: String,
    pub value: f64,
}

impl MeasureRecord {
    fn sort_cmp(&self, other: &Self) -> Ordering {
        self.scenario
            .name()
            .cmp(&other.scenario.name())
            .then_with(|| self.name.cmp(&other.name))
            .then_with(|| self.subsystem.cmp(&other.subsystem))
            .then_with(|| self.r.total_cmp(&other.r))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub scenarios: Vec<ScenarioTemplate>,
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
    pub measures: Vec<Measure>,
    pub output: Option<PathBuf>,
}

impl SweepConfig {
    /// Full `[0, pi/4]` range at the default resolution.
    pub fn new(scenarios: Vec<ScenarioTemplate>, measures: Vec<Measure>) -> Self {
        SweepConfig {
            scenarios,
            r_min: 0.0,
            r_max: FRAC_PI_4,
            points: DEFAULT_POINTS,
            measures,
            output: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0 <= self.r_min && self.r_min < self.r_max && self.r_max <= FRAC_PI_4) {
            return Err(Error::InvalidConfig(format!(
                "need 0 <= r_min < r_max <= pi/4, got [{}, {}]",
                self.r_min, self.r_max
            )));
        }
        if self.points < 2 {
            return Err(Error::InvalidConfig(format!(
                "need at least 2 grid points, got {}",
                self.points
            )));
        }
        if self.scenarios.is_empty() || self.measures.is_empty() {
            return Err(Error::InvalidConfig(
                "a sweep needs at least one scenario and one measure".into(),
            ));
        }
        for m in &self.measures {
            m.validate()
                .map_err(|e| Error::InvalidConfig(format!("measure {}: {e}", m.name())))?;
        }
        for s in &self.scenarios {
            s.at(self.r_min)
                .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        }
        Ok(())
    }

    /// Evenly spaced grid; the last point is exactly `r_max`.
    pub fn grid(&self) -> Vec<f64> {
        linspace(self.r_min, self.r_max, self.points)
    }
}

pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (points - 1) as f64;
    (0..points)
        .map(|i| {
            if i + 1 == points {
                hi
            } else {
                lo + step * i as f64
            }
        })
        .collect()
}

/// Evaluates every measure for every scenario on the grid.
///
/// Points are computed in parallel; the output is sorted by
/// (scenario, measure, subsystem, r) so it does not depend on scheduling.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<MeasureRecord>> {
    config.validate()?;
    let grid = config.grid();
    let jobs: Vec<(&ScenarioTemplate, f64)> = config
        .scenarios
        .iter()
        .flat_map(|s| grid.iter().map(move |&r| (s, r)))
        .collect();

    let chunks: Vec<Vec<MeasureRecord>> = jobs
        .par_iter()
        .map(|&(template, r)| {
            let mut point = PointState::new(template.at(r)?)?;
            config
                .measures
                .iter()
                .map(|m| {
                    Ok(MeasureRecord {
                        scenario: point.scenario.clone(),
                        r,
                        name: m.name().to_string(),
                        subsystem: m.subsystem_label(template),
                        value: point.evaluate(m)?,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut records: Vec<MeasureRecord> = chunks.into_iter().flatten().collect();
    records.sort_by(MeasureRecord::sort_cmp);
    Ok(records)
}
