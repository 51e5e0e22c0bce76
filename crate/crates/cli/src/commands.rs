use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use boostlab::adaboost::{adaboost_fit, MajorityModel};
use boostlab::base_classes::{BaseClassSpec, ClassKind, FiniteClass};
use boostlab::bench::{self, ExperimentConfig};
use boostlab::boost::{self, BoostConfig, BoostMode, BoostModel, ExternalLearner, UnseenRule, WeakLearner};
use boostlab::discrepancy::{self, SetSystem};
use boostlab::gamma_vc;
use boostlab::io::{write_atomic, write_json_atomic};
use boostlab::rational::{self, Rational};
use boostlab::realizability::{self, Verdict};
use boostlab::sample::{read_points_csv, LabeledSample, Pattern};
use boostlab::{selftest, Error, Exec, Result, Rng};
use serde::{Deserialize, Serialize};

use crate::{
    AdaboostArgs, BenchArgs, BoostArgs, CheckArgs, ClassArgs, Command, DiscArgs, GammaVcCommand, Layout, ModeArg,
    PlotArgs, PredictArgs, UnseenArg,
};

/// On-disk model: the fitted model tagged with its algorithm.
#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "algorithm", rename_all = "kebab-case")]
enum SavedModel {
    GraphBoost { class: String, dim: usize, model: BoostModel },
    Adaboost { class: String, dim: usize, model: MajorityModel },
}

pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Boost(a) => boost_cmd(a),
        Command::Adaboost(a) => adaboost_cmd(a),
        Command::Predict(a) => predict_cmd(a),
        Command::Check(a) => check_cmd(a),
        Command::GammaVc(a) => gamma_vc_cmd(a.command),
        Command::Disc(a) => disc_cmd(a),
        Command::Bench(a) => bench_cmd(a),
        Command::Plot(a) => plot_cmd(a),
        Command::Selftest(a) => selftest_cmd(a.seed),
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn load_class(args: &ClassArgs) -> Result<BaseClassSpec> {
    match (args.class.trim(), &args.finite_class) {
        ("finite", Some(path)) => BaseClassSpec::new(ClassKind::Finite(FiniteClass::read_csv(open(path)?)?)),
        ("finite", None) => Err(Error::Config("--class finite needs --finite-class <csv>".into())),
        (_, Some(_)) => Err(Error::Config("--finite-class only applies to --class finite".into())),
        (name, None) => name.parse(),
    }
}

fn load_sample(path: &Path) -> Result<LabeledSample> {
    LabeledSample::read_csv(open(path)?)
}

fn boost_cmd(a: BoostArgs) -> Result<ExitCode> {
    let class = load_class(&a.class)?;
    let sample = load_sample(&a.data)?;
    let needs_gamma = a.gamma.is_none() && (a.max_rounds.is_none() || (matches!(a.mode, ModeArg::Sampled) && a.m0.is_none()));
    let gamma = match a.gamma.clone() {
        Some(g) => Some(g),
        None if needs_gamma => Some(realizability::gamma_star(&sample, &class)?.0).filter(|g| *g > Rational::default()),
        None => None,
    };
    let max_rounds = a.max_rounds.unwrap_or_else(|| boost::default_max_rounds(sample.len(), gamma.as_ref()));
    let mode = match a.mode {
        ModeArg::FullErm => BoostMode::FullErm,
        ModeArg::Sampled => {
            let m0 = match (a.m0, &gamma) {
                (Some(m0), _) => m0,
                (None, Some(g)) => boost::default_m0(class.vc_estimate(), g)?,
                (None, None) => {
                    return Err(Error::Config("sample has γ* = 0; pass --m0 for sampled mode".into()));
                }
            };
            BoostMode::Sampled { m0 }
        }
    };
    let weak = match &a.learner {
        Some(cmd) => WeakLearner::External(ExternalLearner::new(
            cmd,
            a.learner_args.clone(),
            Duration::from_secs(a.learner_timeout),
        )),
        None => WeakLearner::Erm,
    };
    let config = BoostConfig { weak, mode, max_rounds, exec: Exec::default() };
    let mut rng = Rng::seed_from(a.seed);
    let (model, log) = boost::fit_traced(&sample, &class, &config, &mut rng)?;
    let model = model.with_unseen_rule(match a.unseen {
        UnseenArg::Negative => UnseenRule::NegativeDefault,
        UnseenArg::Hamming => UnseenRule::HammingNearest,
    });
    if let Some(path) = &a.trace {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["round", "edges_before", "edges_after", "correlation", "removed_fraction", "pattern"])?;
        for r in &log {
            w.write_record([
                r.round.to_string(),
                r.edges_before.to_string(),
                r.edges_after.to_string(),
                rational::format(&r.correlation),
                rational::format(&r.removed_fraction()),
                r.pattern.to_string(),
            ])?;
        }
        write_atomic(path, &w.into_inner().map_err(|e| Error::Io(e.into_error()))?)?;
    }
    let cells = model.distinct_signatures();
    let saved = SavedModel::GraphBoost { class: class.to_string(), dim: class.dim(), model };
    write_json_atomic(&a.model, &saved)?;
    println!("rounds={} cells={cells} train_error=0 model={}", log.len(), a.model.display());
    Ok(ExitCode::SUCCESS)
}

fn adaboost_cmd(a: AdaboostArgs) -> Result<ExitCode> {
    let class = load_class(&a.class)?;
    let sample = load_sample(&a.data)?;
    let fit = adaboost_fit(&sample, &class, a.rounds)?;
    let err = fit.training_errors.last().copied().unwrap_or(f64::NAN);
    let saved = SavedModel::Adaboost { class: class.to_string(), dim: class.dim(), model: fit.model };
    write_json_atomic(&a.model, &saved)?;
    println!("rounds={} train_error={err} zero_training_error={} model={}", fit.rounds, fit.zero_training_error, a.model.display());
    Ok(ExitCode::SUCCESS)
}

fn predict_cmd(a: PredictArgs) -> Result<ExitCode> {
    let saved: SavedModel = serde_json::from_reader(open(&a.model)?)?;
    let points = read_points_csv(open(&a.points)?)?;
    let dim = match &saved {
        SavedModel::GraphBoost { dim, .. } | SavedModel::Adaboost { dim, .. } => *dim,
    };
    let labels = points
        .iter()
        .map(|x| {
            if x.len() != dim {
                return Err(Error::Dimension { expected: dim, got: x.len() });
            }
            match &saved {
                SavedModel::GraphBoost { model, .. } => model.predict(x),
                SavedModel::Adaboost { model, .. } => model.predict(x),
            }
        })
        .collect::<Result<Vec<i8>>>()?;
    let out = LabeledSample::new(points, labels)?;
    let mut buf = Vec::new();
    out.write_csv(&mut buf)?;
    match &a.output {
        Some(path) => write_atomic(path, &buf)?,
        None => io::stdout().write_all(&buf)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn check_cmd(a: CheckArgs) -> Result<ExitCode> {
    let class = load_class(&a.class)?;
    let sample = load_sample(&a.data)?;
    let cert = realizability::is_gamma_realizable(&sample, &class, &a.gamma)?;
    if let Some(path) = &a.certificate {
        write_json_atomic(path, &cert)?;
    }
    let verdict = match cert.verdict {
        Verdict::Realizable => "realizable",
        Verdict::NotRealizable => "not realizable",
    };
    println!("{verdict}, gamma_star={}", rational::format(&cert.gamma_star));
    Ok(ExitCode::SUCCESS)
}

fn gamma_vc_cmd(command: GammaVcCommand) -> Result<ExitCode> {
    match command {
        GammaVcCommand::Shatter { class, points, gamma, report } => {
            let class = load_class(&class)?;
            let points = read_points_csv(open(&points)?)?;
            let rep = gamma_vc::gamma_shatter_check(&class, &points, &gamma)?;
            if let Some(path) = &report {
                write_json_atomic(path, &rep)?;
            }
            println!(
                "all_realizable={} worst_labeling={} worst_gamma_star={}",
                rep.all_realizable,
                rep.worst_labeling,
                rational::format(&rep.worst_gamma_star)
            );
        }
        GammaVcCommand::Estimate { class, gamma, layout, budget } => {
            let class = load_class(&class)?;
            let generator = move |n: usize| -> Option<Vec<boostlab::Point>> {
                Some(match layout {
                    Layout::Line => gamma_vc::line_points(n),
                    Layout::Grid => gamma_vc::square_grid(n),
                })
            };
            let est = gamma_vc::gamma_vc_lower_estimate(&class, &generator, &gamma, budget)?;
            let upper = gamma_vc::gamma_vc_upper_formula(class.vc_estimate(), rational::to_f64(&gamma));
            println!(
                "lower_bound={} budget_exhausted={} upper_formula={upper:.1}",
                est.lower_bound, est.budget_exhausted
            );
        }
        GammaVcCommand::Hadamard { t, s } => {
            let value = gamma_vc::verify_orthogonal_advantage(&gamma_vc::sylvester_rows(t)?)?;
            println!(
                "t={t} value={} value_sq_at_least_1_over_t={}",
                rational::format(&value),
                gamma_vc::at_least_inverse_sqrt(&value, t)
            );
            let class = gamma_vc::hadamard_class(t, s)?;
            let (worst, g) = gamma_vc::worst_labeling(Exec::default(), class.patterns(), s * t)?;
            println!(
                "s={s} points={} worst_labeling={worst} worst_gamma_star={} gamma_sq_at_least_1_over_t={}",
                s * t,
                rational::format(&g),
                gamma_vc::at_least_inverse_sqrt(&g, t)
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn disc_cmd(a: DiscArgs) -> Result<ExitCode> {
    let (system, source) = match (&a.sets, &a.class, &a.points) {
        (Some(path), _, _) => (SetSystem::read(open(path)?)?, None),
        (None, Some(class), Some(points)) => {
            let class: BaseClassSpec = class.parse()?;
            let points = read_points_csv(open(points)?)?;
            let patterns = class.patterns(&points)?;
            (SetSystem::from_patterns(&patterns)?, Some((class, points)))
        }
        _ => return Err(Error::Config("pass --sets, or --class with --points".into())),
    };
    let (coloring, disc): (Pattern, u64) = if a.exhaustive {
        discrepancy::min_discrepancy_exhaustive(&system)?
    } else {
        discrepancy::min_discrepancy_coloring(&system)?
    };
    print!("disc={disc} coloring={coloring}");
    if let Some((class, points)) = source {
        let bound = discrepancy::coloring_to_gamma_bound(&class, &points, &coloring)?;
        print!(" gamma_bound={}", rational::format(&bound));
    }
    println!();
    Ok(ExitCode::SUCCESS)
}

fn bench_cmd(a: BenchArgs) -> Result<ExitCode> {
    let exec = if a.sequential { Exec::Sequential } else { Exec::Parallel };
    if !a.probe.is_empty() {
        let rows = bench::halfspace_grid_probe(&a.probe, a.probe_samples, a.seed, exec)?;
        let csv = bench::probe_csv(&rows)?;
        match &a.output {
            Some(path) => write_atomic(path, csv.as_bytes())?,
            None => print!("{csv}"),
        }
        for r in &rows {
            eprintln!("n={} min_gamma_star={} time={:.3}s", r.n, rational::format(&r.min_gamma_star), r.wall_time.as_secs_f64());
        }
        return Ok(ExitCode::SUCCESS);
    }
    let path = a.config.as_ref().expect("clap requires --config");
    let text = fs::read_to_string(path).map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    let config = ExperimentConfig::from_json(&text)?;
    let started = Instant::now();
    let result = bench::run_suite(&config, exec)?;
    match a.output.as_ref().or(config.output.as_ref()) {
        Some(out) => {
            write_atomic(out, result.csv.as_bytes())?;
            eprintln!("wrote {} ({} runs)", out.display(), result.records.len());
        }
        None => print!("{}", result.csv),
    }
    if a.table {
        println!("{}", bench::comparison_table(&result.records));
    }
    let failed = result.records.iter().filter(|r| !r.succeeded()).count();
    eprintln!("{} runs, {failed} failed, {:.2}s", result.records.len(), started.elapsed().as_secs_f64());
    Ok(ExitCode::SUCCESS)
}

fn plot_cmd(a: PlotArgs) -> Result<ExitCode> {
    let (vs_m, vs_gamma) = bench::suite_plots(open(&a.csv)?)?;
    fs::create_dir_all(&a.out_dir)?;
    let m_path = a.out_dir.join("rounds_vs_m.svg");
    let g_path = a.out_dir.join("rounds_vs_inv_gamma.svg");
    write_atomic(&m_path, vs_m.as_bytes())?;
    write_atomic(&g_path, vs_gamma.as_bytes())?;
    println!("{}\n{}", m_path.display(), g_path.display());
    Ok(ExitCode::SUCCESS)
}

fn selftest_cmd(seed: u64) -> Result<ExitCode> {
    let outcomes = selftest::run(seed, Exec::default());
    let mut failed = 0;
    for o in &outcomes {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        failed += usize::from(!o.passed);
        println!("{tag} {} ({}, {} ms)", o.name, o.detail, o.elapsed.as_millis());
    }
    println!("{} properties, {failed} failed", outcomes.len());
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
