//! Sweeps over the acceleration parameter, threshold search, figure presets
//! and CSV output.

pub mod csv_out;
pub mod measure;
pub mod presets;
pub mod sweep;
pub mod threshold;

pub use csv_out::{emit_csv, format_significant, write_csv, CSV_HEADER};
pub use measure::{evaluate, parse_parties, Measure, PointState, ScenarioTemplate};
pub use presets::{distinct_curves, figure_presets, preset, run_preset, FigurePreset};
pub use sweep::{linspace, run_sweep, MeasureRecord, SweepConfig, DEFAULT_POINTS};
pub use threshold::{bisect_positive_boundary, find_threshold, ThresholdResult, BRACKET_TOL};
