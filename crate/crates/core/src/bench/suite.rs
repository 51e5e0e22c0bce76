//! Experiment configuration and the suite runner.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::tasks::{Task, TaskFamily};
use crate::adaboost::adaboost_fit;
use crate::base_classes::BaseClassSpec;
use crate::boost::{self, default_m0, default_max_rounds, BoostConfig, BoostMode, RoundRecord};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::rational::{self, Rational};
use crate::rng::Rng;
use crate::sample::LabeledSample;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    GraphBoost,
    Adaboost,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::GraphBoost => "graph-boost",
            Algorithm::Adaboost => "adaboost",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModeConfig {
    #[default]
    FullErm,
    /// `m0` defaults to `⌈32·(v+1)/γ²⌉` with `γ` the configured value or the
    /// training sample's γ*.
    Sampled {
        #[serde(default)]
        m0: Option<usize>,
    },
}

fn default_algorithms() -> Vec<Algorithm> {
    vec![Algorithm::GraphBoost]
}

fn default_m_test() -> usize {
    200
}

fn default_delta() -> f64 {
    0.05
}

/// JSON experiment description. Every run is a function of the config and
/// its seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub tasks: Vec<TaskFamily>,
    /// Class name (`thresholds`, `stumps<d>`, `halfspaces<d>`); each task's
    /// default when absent.
    #[serde(default)]
    pub class: Option<String>,
    #[serde(default = "default_algorithms")]
    pub algorithms: Vec<Algorithm>,
    #[serde(default)]
    pub mode: ModeConfig,
    #[serde(default = "default_m_test")]
    pub m_test: usize,
    /// Edge parameter as `"p/q"`.
    #[serde(default, with = "rational::serde_opt")]
    pub gamma: Option<Rational>,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub max_rounds: Option<usize>,
    /// Nominal confidence, carried into reports only.
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.seeds.is_empty() {
            return Err(Error::Config("seed list is empty".into()));
        }
        if self.tasks.is_empty() {
            return Err(Error::Config("task list is empty".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::Config("algorithm list is empty".into()));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Config("delta must lie in (0, 1)".into()));
        }
        if let Some(g) = &self.gamma {
            if *g <= Rational::default() || *g > rational::int(1) {
                return Err(Error::Config("gamma must lie in (0, 1]".into()));
            }
        }
        if self.max_rounds == Some(0) {
            return Err(Error::Config("max_rounds must be positive".into()));
        }
        if let Some(c) = &self.class {
            c.parse::<BaseClassSpec>().map_err(|e| Error::Config(e.to_string()))?;
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub task: String,
    pub algorithm: Algorithm,
    pub mode: String,
    pub seed: u64,
    pub m: usize,
    pub gamma_star: Rational,
    pub rounds: usize,
    /// Weak-learner calls; one per round.
    pub oracle_calls: usize,
    pub train_error: f64,
    pub test_error: f64,
    pub wall_time: Duration,
    /// Remaining edges before round 1 and after every round (graph boost).
    pub edge_counts: Vec<u64>,
    /// Per-round correlation and removed fraction (graph boost).
    pub round_log: Vec<RoundRecord>,
    /// `None` on success, else the cell's error message.
    pub failure: Option<String>,
}

impl RunRecord {
    pub fn succeeded(&self) -> bool {
        self.failure.is_none()
    }

    /// `2·ln m / γ*`, or `None` when γ* is 0.
    pub fn round_bound(&self) -> Option<f64> {
        let g = rational::to_f64(&self.gamma_star);
        (g > 0.0).then(|| 2.0 * (self.m as f64).ln() / g)
    }
}

fn error_rate(sample: &LabeledSample, predict: impl Fn(&[Rational]) -> Result<i8>) -> Result<f64> {
    let mut wrong = 0usize;
    for (x, &y) in sample.points().iter().zip(sample.labels()) {
        if predict(x)? != y {
            wrong += 1;
        }
    }
    Ok(wrong as f64 / sample.len() as f64)
}

struct Cell {
    task_index: usize,
    seed: u64,
}

fn mode_name(mode: &ModeConfig, alg: Algorithm) -> String {
    match (alg, mode) {
        (Algorithm::Adaboost, _) => "exact-erm".into(),
        (_, ModeConfig::FullErm) => "full-erm".into(),
        (_, ModeConfig::Sampled { .. }) => "sampled".into(),
    }
}

fn run_algorithm(config: &ExperimentConfig, task: &Task, alg: Algorithm, rng: &mut Rng) -> Result<RunRecord> {
    let m = task.train.len();
    let gamma = config.gamma.clone().or_else(|| (task.gamma_star > Rational::default()).then(|| task.gamma_star.clone()));
    let max_rounds = config.max_rounds.unwrap_or_else(|| default_max_rounds(m, gamma.as_ref()));
    let start = Instant::now();
    let mut record = RunRecord {
        task: task.family.to_string(),
        algorithm: alg,
        mode: mode_name(&config.mode, alg),
        seed: 0,
        m,
        gamma_star: task.gamma_star.clone(),
        rounds: 0,
        oracle_calls: 0,
        train_error: 0.0,
        test_error: 0.0,
        wall_time: Duration::ZERO,
        edge_counts: Vec::new(),
        round_log: Vec::new(),
        failure: None,
    };
    match alg {
        Algorithm::GraphBoost => {
            let mode = match &config.mode {
                ModeConfig::FullErm => BoostMode::FullErm,
                ModeConfig::Sampled { m0 } => {
                    let m0 = match (m0, &gamma) {
                        (Some(v), _) => *v,
                        (None, Some(g)) => default_m0(task.class.vc_estimate(), g)?,
                        (None, None) => return Err(Error::Config("sampled mode needs m0 or a positive gamma".into())),
                    };
                    BoostMode::Sampled { m0 }
                }
            };
            let cfg = BoostConfig { weak: boost::WeakLearner::Erm, mode, max_rounds, exec: Exec::Sequential };
            let (model, log) = boost::fit_traced(&task.train, &task.class, &cfg, rng)?;
            record.rounds = model.rounds;
            record.oracle_calls = model.rounds;
            let initial = boost::EdgeGraphState::new(&task.train).remaining_edges();
            record.edge_counts = std::iter::once(initial).chain(log.iter().map(|r| r.edges_after)).collect();
            record.round_log = log;
            record.train_error = error_rate(&task.train, |x| model.predict(x))?;
            record.test_error = error_rate(&task.test, |x| model.predict(x))?;
        }
        Algorithm::Adaboost => {
            let fit = adaboost_fit(&task.train, &task.class, max_rounds)?;
            record.rounds = fit.rounds;
            record.oracle_calls = fit.rounds;
            if !fit.zero_training_error {
                record.failure = Some(format!("training error not zero after {} rounds", fit.rounds));
            }
            record.train_error = error_rate(&task.train, |x| fit.model.predict(x))?;
            record.test_error = error_rate(&task.test, |x| fit.model.predict(x))?;
        }
    }
    record.wall_time = start.elapsed();
    Ok(record)
}

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub records: Vec<RunRecord>,
    pub csv: String,
}

/// Runs every (task, seed) cell; within a cell each algorithm sees the same
/// generated task. Cells run in parallel, each single-threaded, and results
/// are ordered by (task, seed, algorithm). Failing cells are recorded and
/// the suite continues.
pub fn run_suite(config: &ExperimentConfig, exec: Exec) -> Result<SuiteResult> {
    config.validate()?;
    let class = config.class.as_deref().map(str::parse::<BaseClassSpec>).transpose()?;
    let cells: Vec<Cell> = (0..config.tasks.len())
        .flat_map(|task_index| config.seeds.iter().map(move |&seed| Cell { task_index, seed }))
        .collect();
    let per_cell = par::map(exec, &cells, |cell| {
        let family = &config.tasks[cell.task_index];
        let mut rng = Rng::seed_from(cell.seed);
        let mut task_rng = rng.split();
        let task = family.generate(class.as_ref(), config.m_test, &mut task_rng);
        config
            .algorithms
            .iter()
            .map(|&alg| {
                let mut alg_rng = rng.split();
                let result = task.as_ref().map_err(|e| Error::Config(e.to_string())).and_then(|t| run_algorithm(config, t, alg, &mut alg_rng));
                match result {
                    Ok(mut r) => {
                        r.seed = cell.seed;
                        r
                    }
                    Err(e) => RunRecord {
                        task: family.to_string(),
                        algorithm: alg,
                        mode: mode_name(&config.mode, alg),
                        seed: cell.seed,
                        m: task.as_ref().map_or(0, |t| t.train.len()),
                        gamma_star: task.as_ref().map_or_else(|_| Rational::default(), |t| t.gamma_star.clone()),
                        rounds: 0,
                        oracle_calls: 0,
                        train_error: f64::NAN,
                        test_error: f64::NAN,
                        wall_time: Duration::ZERO,
                        edge_counts: Vec::new(),
                        round_log: Vec::new(),
                        failure: Some(e.to_string()),
                    },
                }
            })
            .collect::<Vec<_>>()
    });
    let records: Vec<RunRecord> = per_cell.into_iter().flatten().collect();
    let csv = suite_csv(&records)?;
    Ok(SuiteResult { records, csv })
}

const HEADER: [&str; 19] = [
    "kind",
    "task",
    "algorithm",
    "mode",
    "seed",
    "m",
    "gamma_star",
    "rounds",
    "train_error",
    "test_error",
    "status",
    "edge_counts",
    "runs",
    "mean_rounds",
    "median_rounds",
    "max_rounds",
    "test_error_q10",
    "test_error_q50",
    "test_error_q90",
];

fn quantile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let rank = ((q * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    sorted[rank - 1]
}

fn fmt_f(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else {
        format!("{v:.6}")
    }
}

/// One `run` row per record, then one `summary` row per (task, algorithm)
/// over successful runs. Wall time is left out so the file is reproducible.
pub fn suite_csv(records: &[RunRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER)?;
    for r in records {
        let edges: Vec<String> = r.edge_counts.iter().map(u64::to_string).collect();
        let status = match &r.failure {
            None => "ok".to_string(),
            Some(msg) => format!("error: {msg}"),
        };
        w.write_record([
            "run",
            &r.task,
            r.algorithm.name(),
            &r.mode,
            &r.seed.to_string(),
            &r.m.to_string(),
            &rational::format(&r.gamma_star),
            &r.rounds.to_string(),
            &fmt_f(r.train_error),
            &fmt_f(r.test_error),
            &status,
            &edges.join(";"),
            "",
            "",
            "",
            "",
            "",
            "",
            "",
        ])?;
    }
    let mut groups: Vec<(String, Algorithm, String)> = Vec::new();
    for r in records {
        let key = (r.task.clone(), r.algorithm, r.mode.clone());
        if !groups.contains(&key) {
            groups.push(key);
        }
    }
    for (task, alg, mode) in groups {
        let ok: Vec<&RunRecord> =
            records.iter().filter(|r| r.task == task && r.algorithm == alg && r.mode == mode && r.succeeded()).collect();
        let mut rounds: Vec<f64> = ok.iter().map(|r| r.rounds as f64).collect();
        rounds.sort_by(f64::total_cmp);
        let mut errs: Vec<f64> = ok.iter().map(|r| r.test_error).collect();
        errs.sort_by(f64::total_cmp);
        let mean = if rounds.is_empty() { f64::NAN } else { rounds.iter().sum::<f64>() / rounds.len() as f64 };
        let gamma = ok.first().map(|r| rational::format(&r.gamma_star)).unwrap_or_default();
        let m = ok.first().map(|r| r.m.to_string()).unwrap_or_default();
        w.write_record([
            "summary",
            &task,
            alg.name(),
            &mode,
            "",
            &m,
            &gamma,
            "",
            "",
            "",
            "",
            "",
            &ok.len().to_string(),
            &fmt_f(mean),
            &fmt_f(quantile(&rounds, 0.5)),
            &fmt_f(rounds.last().copied().unwrap_or(f64::NAN)),
            &fmt_f(quantile(&errs, 0.1)),
            &fmt_f(quantile(&errs, 0.5)),
            &fmt_f(quantile(&errs, 0.9)),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

/// Graph-boost rounds against AdaBoost rounds-to-zero-error, one line per
/// task, as a Markdown table. Means are over successful runs.
pub fn comparison_table(records: &[RunRecord]) -> String {
    let mut tasks: Vec<&str> = Vec::new();
    for r in records {
        if !tasks.contains(&r.task.as_str()) {
            tasks.push(&r.task);
        }
    }
    let mut out = String::from("| task | m | gamma_star | graph-boost T | bound 2 ln m / gamma_star | adaboost rounds |\n");
    out.push_str("|---|---|---|---|---|---|\n");
    let mean = |alg: Algorithm, task: &str| -> String {
        let v: Vec<f64> = records
            .iter()
            .filter(|r| r.task == task && r.algorithm == alg && r.succeeded())
            .map(|r| r.rounds as f64)
            .collect();
        if v.is_empty() {
            "n/a".into()
        } else {
            format!("{:.2}", v.iter().sum::<f64>() / v.len() as f64)
        }
    };
    for task in tasks {
        let first = records.iter().find(|r| r.task == task).expect("task has records");
        let bound = first.round_bound().map_or("n/a".into(), |b| format!("{b:.2}"));
        out.push_str(&format!(
            "| {task} | {} | {} | {} | {bound} | {} |\n",
            first.m,
            rational::format(&first.gamma_star),
            mean(Algorithm::GraphBoost, task),
            mean(Algorithm::Adaboost, task)
        ));
    }
    out
}
