//! Reproducible experiments: task generators, the suite runner comparing
//! Graph Separation Boosting with AdaBoost, the halfspace grid probe, and
//! SVG plots.

mod plot;
mod probe;
mod suite;
mod tasks;

pub use plot::{line_chart_svg, suite_plots, Series};
pub use probe::{halfspace_grid_probe, probe_csv, ProbeRow};
pub use suite::{comparison_table, run_suite, suite_csv, Algorithm, ExperimentConfig, ModeConfig, RunRecord, SuiteResult};
pub use tasks::{Task, TaskFamily};
