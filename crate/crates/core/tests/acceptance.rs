//! End-to-end acceptance checks. Prints one PASS/FAIL line per check and
//! exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use boostlab::base_classes::{dual_vc_dimension, shatters, ClassKind};
use boostlab::bench::{self, ExperimentConfig, ModeConfig, RunRecord, TaskFamily};
use boostlab::boost::{self, BoostConfig};
use boostlab::discrepancy::weighted_disc;
use boostlab::gamma_vc::{self, BoolFn};
use boostlab::rational::{int, ratio};
use boostlab::realizability::{self, verify_certificate};
use boostlab::{
    BaseClassSpec, Exec, LabeledSample, Pattern, Point, Rational, Rng, SampleDistribution,
};
use num_traits::{One, ToPrimitive, Zero};

type Outcome = Result<String, String>;

struct Check {
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn main() -> ExitCode {
    let checks = [
        Check { name: "alternating-thresholds-exact-gamma-star", budget: secs(5), run: alternating_gamma_star },
        Check { name: "threshold-gamma-shattering", budget: secs(30), run: threshold_shattering },
        Check { name: "full-erm-oracle-complexity", budget: secs(120), run: full_erm_oracle_complexity },
        Check { name: "sampled-mode-oracle-complexity", budget: secs(120), run: sampled_oracle_complexity },
        Check { name: "separation-iff-consistent-aggregation", budget: secs(60), run: separation_equivalence },
        Check { name: "hadamard-advantage", budget: secs(120), run: hadamard },
        Check { name: "composition-vc-bound", budget: secs(60), run: composition },
        Check { name: "cell-count-bound", budget: secs(120), run: cell_count },
        Check { name: "weighted-discrepancy-identity", budget: secs(10), run: discrepancy_identity },
        Check { name: "certificate-soundness-and-lp-agreement", budget: secs(120), run: certificates_and_lp_routes },
        Check { name: "graph-boost-vs-adaboost-report", budget: secs(120), run: comparison_report },
        Check { name: "halfspace-grid-probe", budget: secs(120), run: grid_probe },
    ];
    let mut failed = 0;
    for c in &checks {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(d) if elapsed > c.budget => Err(format!("{d}; over the {}s budget", c.budget.as_secs())),
            other => other,
        };
        match outcome {
            Ok(d) => println!("PASS {} ({d}; {:.2}s)", c.name, elapsed.as_secs_f64()),
            Err(d) => {
                failed += 1;
                println!("FAIL {} ({d}; {:.2}s)", c.name, elapsed.as_secs_f64());
            }
        }
    }
    println!("{} checks, {failed} failed", checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn alternating(m: usize) -> LabeledSample {
    let xs: Vec<i64> = (0..m as i64).collect();
    let ys: Vec<i8> = (0..m).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
    LabeledSample::from_1d(&xs, &ys).unwrap()
}

fn labeling(n: usize, code: u64) -> Vec<i8> {
    (0..n).map(|i| if code >> i & 1 == 1 { 1 } else { -1 }).collect()
}

fn alternating_gamma_star() -> Outcome {
    let th = BaseClassSpec::thresholds();
    let mut wrong = Vec::new();
    for m in 2..=8 {
        let (g, _) = realizability::gamma_star(&alternating(m), &th).map_err(|e| e.to_string())?;
        if g != ratio(1, m as i64) {
            wrong.push(format!("m={m}: {g}"));
        }
    }
    if wrong.is_empty() {
        Ok("γ* = 1/m for m in 2..=8".into())
    } else {
        Err(format!("expected 1/m, got {}", wrong.join(", ")))
    }
}

fn threshold_shattering() -> Outcome {
    let th = BaseClassSpec::thresholds();
    let mut solved = 0;
    for n in 2..=8usize {
        let points = gamma_vc::line_points(n);
        let patterns = th.patterns(&points).map_err(|e| e.to_string())?;
        let gamma = ratio(1, n as i64);
        for code in 0..1u64 << n {
            let y = labeling(n, code);
            let g = realizability::gamma_star_of_patterns(&y, &patterns).map_err(|e| e.to_string())?;
            solved += 1;
            if g < gamma {
                return Err(format!("n={n}, labeling {code:b}: γ* = {g} < {gamma}"));
            }
        }
    }
    Ok(format!("{solved} labelings, all (1/n)-realizable"))
}

fn realizable_tasks() -> Vec<TaskFamily> {
    let mut tasks: Vec<TaskFamily> = (2..=16).map(|m| TaskFamily::AlternatingThresholds { m }).collect();
    for m in [8, 12, 16, 24] {
        for k in [1, 2, 3, 5] {
            tasks.push(TaskFamily::KSignChanges { m, k });
        }
    }
    for n in [2, 3] {
        tasks.push(TaskFamily::GridRandomLabels { n, d: 2, m: None, labels: None });
    }
    tasks.push(TaskFamily::GridRandomLabels { n: 4, d: 1, m: None, labels: None });
    tasks.push(TaskFamily::FiniteClassMixture { t: 4, s: 2, m: 12 });
    tasks.push(TaskFamily::FiniteClassMixture { t: 2, s: 3, m: 10 });
    tasks
}

fn suite_config(tasks: Vec<TaskFamily>, seeds: Vec<u64>) -> ExperimentConfig {
    ExperimentConfig {
        tasks,
        class: None,
        algorithms: vec![bench::Algorithm::GraphBoost],
        mode: ModeConfig::FullErm,
        m_test: 50,
        gamma: None,
        seeds,
        max_rounds: None,
        delta: 0.05,
        output: None,
    }
}

/// Violations of per-round edge decay and the `2 ln m / γ*` round bound.
fn bound_violations(r: &RunRecord) -> Vec<String> {
    let mut v = Vec::new();
    if !r.succeeded() {
        v.push(format!("{} seed {}: {}", r.task, r.seed, r.failure.as_deref().unwrap_or("")));
        return v;
    }
    for round in &r.round_log {
        if round.removed_fraction() < r.gamma_star {
            v.push(format!("{} seed {} round {}: removed {}", r.task, r.seed, round.round, round.removed_fraction()));
        }
    }
    if r.edge_counts.windows(2).any(|w| w[1] >= w[0]) || r.edge_counts.last() != Some(&0) {
        v.push(format!("{} seed {}: edge counts {:?}", r.task, r.seed, r.edge_counts));
    }
    let bound = 2.0 * (r.m as f64).ln() / r.gamma_star.to_f64().unwrap();
    if r.rounds as f64 > bound.max(0.0) && r.rounds > 0 {
        v.push(format!("{} seed {}: T = {} > {bound:.3}", r.task, r.seed, r.rounds));
    }
    if r.train_error != 0.0 {
        v.push(format!("{} seed {}: train error {}", r.task, r.seed, r.train_error));
    }
    v
}

fn full_erm_oracle_complexity() -> Outcome {
    let result = bench::run_suite(&suite_config(realizable_tasks(), (0..20).collect()), Exec::Parallel)
        .map_err(|e| e.to_string())?;
    let runs: Vec<&RunRecord> = result.records.iter().filter(|r| r.gamma_star > Rational::zero()).collect();
    let violations: Vec<String> = runs.iter().flat_map(|r| bound_violations(r)).collect();
    if runs.len() < 500 {
        return Err(format!("only {} runs with γ* > 0", runs.len()));
    }
    if let Some(first) = violations.first() {
        return Err(format!("{} violations over {} runs, first: {first}", violations.len(), runs.len()));
    }
    let rounds: usize = runs.iter().map(|r| r.rounds).sum();
    Ok(format!("{} runs, {rounds} rounds, zero violations", runs.len()))
}

fn sampled_oracle_complexity() -> Outcome {
    let mut cfg = suite_config(vec![TaskFamily::AlternatingThresholds { m: 16 }], (0..200).collect());
    cfg.mode = ModeConfig::Sampled { m0: None };
    cfg.m_test = 1;
    let result = bench::run_suite(&cfg, Exec::Parallel).map_err(|e| e.to_string())?;
    if let Some(bad) = result.records.iter().find(|r| !r.succeeded()) {
        return Err(format!("seed {} failed: {}", bad.seed, bad.failure.as_deref().unwrap_or("")));
    }
    let gamma = &result.records[0].gamma_star;
    let m0 = boost::default_m0(BaseClassSpec::thresholds().vc_estimate(), gamma).map_err(|e| e.to_string())?;
    let mean = result.records.iter().map(|r| r.rounds as f64).sum::<f64>() / result.records.len() as f64;
    let bound = 8.0 * 16f64.ln() / gamma.to_f64().unwrap();
    let detail = format!("γ* = {gamma}, m0 = {m0}, mean T = {mean:.2} over 200 seeds, bound {bound:.2}");
    if mean <= bound {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Whether some `g: {±1}^T → {±1}` labels every point by its signature.
fn consistent_aggregation_exists(hyps: &[Pattern], labels: &[i8]) -> bool {
    let t = hyps.len();
    let sig = |i: usize| hyps.iter().enumerate().fold(0usize, |acc, (j, h)| acc | usize::from(h.get(i) == 1) << j);
    (0..1u64 << (1usize << t)).any(|table| {
        labels.iter().enumerate().all(|(i, &y)| {
            let out = if table >> sig(i) & 1 == 1 { 1 } else { -1 };
            out == y
        })
    })
}

fn separation_equivalence() -> Outcome {
    let th = BaseClassSpec::thresholds();
    let mut cases = 0u64;
    for m in 1..=5usize {
        let points: Vec<Point> = (0..m).map(|i| vec![int(i as i64)]).collect();
        let patterns = th.patterns(&points).map_err(|e| e.to_string())?;
        let mut sets: Vec<Vec<Pattern>> = vec![Vec::new()];
        for a in 0..patterns.len() {
            sets.push(vec![patterns[a].clone()]);
            for b in a + 1..patterns.len() {
                sets.push(vec![patterns[a].clone(), patterns[b].clone()]);
                for c in b + 1..patterns.len() {
                    sets.push(vec![patterns[a].clone(), patterns[b].clone(), patterns[c].clone()]);
                }
            }
        }
        for code in 0..1u64 << m {
            let y = labeling(m, code);
            let sample = LabeledSample::new(points.clone(), y.clone()).unwrap();
            for hyps in &sets {
                cases += 1;
                let sep = boost::separates(hyps, &sample).map_err(|e| e.to_string())?;
                if sep != consistent_aggregation_exists(hyps, &y) {
                    return Err(format!("m={m}, labels {code:b}, {} hypotheses: separates={sep}", hyps.len()));
                }
            }
        }
    }
    Ok(format!("{cases} cases agree"))
}

fn hadamard() -> Outcome {
    let mut notes = Vec::new();
    for t in [2usize, 4, 8] {
        let rows = gamma_vc::sylvester_rows(t).map_err(|e| e.to_string())?;
        let v = gamma_vc::verify_orthogonal_advantage(&rows).map_err(|e| e.to_string())?;
        if &v * &v * int(t as i64) < Rational::one() {
            return Err(format!("t={t}: v = {v}, v² < 1/t"));
        }
        notes.push(format!("t={t}: v={v}"));
    }
    for t in [2usize, 4] {
        for s in [1usize, 2] {
            let class = gamma_vc::hadamard_class(t, s).map_err(|e| e.to_string())?;
            let n = s * t;
            let mut min: Option<Rational> = None;
            for code in 0..1u64 << n {
                let g = realizability::gamma_star_of_patterns(&labeling(n, code), class.patterns())
                    .map_err(|e| e.to_string())?;
                if &g * &g * int(t as i64) < Rational::one() {
                    return Err(format!("t={t}, s={s}, labeling {code:b}: γ* = {g}"));
                }
                min = Some(min.map_or(g.clone(), |m: Rational| m.min(g)));
            }
            notes.push(format!("t={t},s={s}: min γ*={}", min.unwrap()));
        }
    }
    Ok(notes.join(", "))
}

fn brute_vc(patterns: &[Pattern]) -> usize {
    let n = patterns.first().map_or(0, Pattern::len);
    let mut best = 0;
    for mask in 1u32..1 << n {
        let cols: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if cols.len() > best && shatters(patterns, &cols) {
            best = cols.len();
        }
    }
    best
}

fn composition() -> Outcome {
    let mut rng = Rng::seed_from(0xC0FFEE);
    let mut worst_ratio = 0.0f64;
    for trial in 0..100 {
        let t = 1 + rng.below_usize(3);
        let n = 2 + rng.below_usize(9);
        let classes: Vec<Vec<Pattern>> = (0..t)
            .map(|_| {
                let k = 1 + rng.below_usize(6);
                let set: BTreeSet<Pattern> =
                    (0..k).map(|_| Pattern::new((0..n).map(|_| rng.sign()).collect()).unwrap()).collect();
                set.into_iter().collect()
            })
            .collect();
        let all = BoolFn::all(t).map_err(|e| e.to_string())?;
        let mut g: Vec<BoolFn> = all.into_iter().filter(|_| rng.below(4) == 0).collect();
        if g.is_empty() {
            g.push(BoolFn::majority(t));
        }
        let report = gamma_vc::composition_vc_check(&classes, &g).map_err(|e| e.to_string())?;

        // independent recomputation of the composed class and its VC
        let mut composed = BTreeSet::new();
        let mut idx = vec![0usize; t];
        loop {
            for f in &g {
                let bits = (0..n)
                    .map(|x| f.apply(&idx.iter().enumerate().map(|(i, &k)| classes[i][k].get(x)).collect::<Vec<_>>()))
                    .collect();
                composed.insert(Pattern::new(bits).unwrap());
            }
            let mut pos = 0;
            while pos < t {
                idx[pos] += 1;
                if idx[pos] < classes[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == t {
                break;
            }
        }
        let composed: Vec<Pattern> = composed.into_iter().collect();
        let vc = brute_vc(&composed);
        if vc != report.computed_vc {
            return Err(format!("trial {trial}: library VC {} vs brute force {vc}", report.computed_vc));
        }
        let d_sum: usize = classes.iter().map(|c| brute_vc(c)).sum();
        let g_patterns: Vec<Pattern> = g
            .iter()
            .map(|f| Pattern::new((0..1usize << t).map(|x| f.apply(&labeling(t, x as u64))).collect()).unwrap())
            .collect();
        let bound = gamma_vc::composition_constant(t) * (d_sum + brute_vc(&g_patterns)) as f64;
        if vc as f64 > bound {
            return Err(format!("trial {trial}: VC {vc} > {bound:.3} (T={t}, n={n})"));
        }
        if bound > 0.0 {
            worst_ratio = worst_ratio.max(vc as f64 / bound);
        }
    }
    Ok(format!("100 instances, max VC/bound = {worst_ratio:.3}"))
}

fn binomial_prefix_sum(t: usize, d: usize) -> u128 {
    let mut total = 0u128;
    let mut c = 1u128;
    for i in 0..=d.min(t) {
        total += c;
        c = c * (t - i) as u128 / (i + 1) as u128;
    }
    total
}

fn cell_count() -> Outcome {
    let mut fits = 0;
    let mut check = |sample: &LabeledSample, class: &BaseClassSpec, rng: &mut Rng| -> Result<(), String> {
        let patterns = class.patterns(sample.points()).map_err(|e| e.to_string())?;
        let (g, _) = realizability::gamma_star(sample, class).map_err(|e| e.to_string())?;
        if g.is_zero() {
            return Ok(());
        }
        let d_star = dual_vc_dimension(&patterns).map_err(|e| e.to_string())?;
        let cfg = BoostConfig::full_erm(boost::default_max_rounds(sample.len(), Some(&g)));
        let model = boost::fit(sample, class, &cfg, rng).map_err(|e| e.to_string())?;
        let cells = model.distinct_signatures() as u128;
        let bound = binomial_prefix_sum(model.rounds, d_star);
        fits += 1;
        if cells > bound {
            return Err(format!("{class}, m={}: {cells} cells > {bound} (T={}, d*={d_star})", sample.len(), model.rounds));
        }
        Ok(())
    };
    let mut rng = Rng::seed_from(2024);
    let th = BaseClassSpec::thresholds();
    for _ in 0..150 {
        let m = 2 + rng.below_usize(30);
        let xs: Vec<i64> = (0..m as i64).collect();
        let ys: Vec<i8> = (0..m).map(|_| rng.sign()).collect();
        check(&LabeledSample::from_1d(&xs, &ys).unwrap(), &th, &mut rng)?;
    }
    for d in [2usize, 3] {
        let st = BaseClassSpec::stumps(d).map_err(|e| e.to_string())?;
        for _ in 0..50 {
            let m = 2 + rng.below_usize(14);
            let mut seen = BTreeSet::new();
            while seen.len() < m {
                seen.insert((0..d).map(|_| int(rng.below(6) as i64)).collect::<Point>());
            }
            let ys = (0..m).map(|_| rng.sign()).collect();
            check(&LabeledSample::new(seen.into_iter().collect(), ys).unwrap(), &st, &mut rng)?;
        }
    }
    Ok(format!("{fits} fits within the cell bound"))
}

fn random_rational(rng: &mut Rng) -> Rational {
    ratio(rng.below(1000) as i64, 1 + rng.below(999) as i64)
}

fn discrepancy_identity() -> Outcome {
    let mut rng = Rng::seed_from(4);
    for trial in 0..10_000 {
        let n = 1 + rng.below_usize(12);
        let mut w: Vec<Rational> = (0..n).map(|_| random_rational(&mut rng)).collect();
        let total: Rational = w.iter().sum();
        if total.is_zero() {
            w[0] = Rational::one();
        } else {
            w.iter_mut().for_each(|x| *x /= &total);
        }
        let p = SampleDistribution::new(w.clone()).map_err(|e| e.to_string())?;
        let c = Pattern::new((0..n).map(|_| rng.sign()).collect()).unwrap();
        let b = Pattern::new((0..n).map(|_| rng.sign()).collect()).unwrap();
        let lhs: Rational = (0..n).map(|i| &w[i] * int((c.get(i) * b.get(i)) as i64)).sum();
        let rhs = weighted_disc(&p, &c, &b).map_err(|e| e.to_string())?
            - weighted_disc(&p, &c, &b.negated()).map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err(format!("trial {trial}: {lhs} != {rhs}"));
        }
    }
    Ok("10000 exact instances".into())
}

fn random_instance(rng: &mut Rng, which: usize) -> (LabeledSample, BaseClassSpec) {
    let m = 2 + rng.below_usize(6);
    let mut points: Vec<Point> = Vec::new();
    let class = match which {
        0 => BaseClassSpec::thresholds(),
        1 => BaseClassSpec::stumps(2).unwrap(),
        2 => BaseClassSpec::halfspaces(2).unwrap(),
        _ => {
            let patterns = (0..1 + rng.below_usize(5))
                .map(|_| Pattern::new((0..m).map(|_| rng.sign()).collect()).unwrap())
                .collect();
            BaseClassSpec::finite(patterns).unwrap()
        }
    };
    let dim = class.dim();
    let distinct = !matches!(class.kind(), ClassKind::Finite(_));
    while points.len() < m {
        let p: Point = if matches!(class.kind(), ClassKind::Finite(_)) {
            vec![int(points.len() as i64)]
        } else {
            let range = if dim == 1 { 20 } else { 6 };
            (0..dim).map(|_| int(rng.below(range) as i64)).collect()
        };
        if !distinct || !points.contains(&p) {
            points.push(p);
        }
    }
    let labels = (0..m).map(|_| rng.sign()).collect();
    (LabeledSample::new(points, labels).unwrap(), class)
}

fn certificates_and_lp_routes() -> Outcome {
    // every certificate for the tasks of the oracle-complexity suite
    let mut certs = 0;
    for family in realizable_tasks() {
        for seed in 0..20u64 {
            let mut rng = Rng::seed_from(seed);
            let task = family.generate(None, 50, &mut rng.split()).map_err(|e| e.to_string())?;
            let (g, cert) = realizability::gamma_star(&task.train, &task.class).map_err(|e| e.to_string())?;
            if g != task.gamma_star {
                return Err(format!("{family} seed {seed}: stale γ* {} vs {g}", task.gamma_star));
            }
            certs += 1;
            if !verify_certificate(&task.train, &task.class, &cert).map_err(|e| e.to_string())? {
                return Err(format!("{family} seed {seed}: certificate rejected"));
            }
            if g > Rational::zero() {
                let half = &g / int(2);
                for gamma in [g.clone(), half, (&g + Rational::one()) / int(2)] {
                    let c = realizability::is_gamma_realizable(&task.train, &task.class, &gamma)
                        .map_err(|e| e.to_string())?;
                    certs += 1;
                    if !verify_certificate(&task.train, &task.class, &c).map_err(|e| e.to_string())? {
                        return Err(format!("{family} seed {seed}: certificate at γ = {gamma} rejected"));
                    }
                }
            }
        }
    }
    // the two independent LP formulations on random instances
    let mut rng = Rng::seed_from(10);
    let mut disagreements = Vec::new();
    for i in 0..100 {
        let (sample, class) = random_instance(&mut rng, i % 4);
        let a = realizability::minmax_gamma_star(&sample, &class).map_err(|e| e.to_string())?;
        let b = realizability::hull_gamma_star(&sample, &class).map_err(|e| e.to_string())?;
        if a != b {
            disagreements.push(format!("#{i} {class} y={}: minmax {a}, hull {b}", sample.label_pattern()));
        }
    }
    if disagreements.is_empty() {
        Ok(format!("{certs} certificates verified; minmax and hull agree on 100 instances"))
    } else {
        Err(format!(
            "{certs} certificates verified; minmax and hull disagree on {}/100 instances, first {}",
            disagreements.len(),
            disagreements[0]
        ))
    }
}

fn comparison_report() -> Outcome {
    let mut cfg = suite_config(
        [4, 8, 16].iter().map(|&m| TaskFamily::AlternatingThresholds { m }).collect(),
        (0..5).collect(),
    );
    cfg.algorithms = vec![bench::Algorithm::GraphBoost, bench::Algorithm::Adaboost];
    let result = bench::run_suite(&cfg, Exec::Parallel).map_err(|e| e.to_string())?;
    println!("{}", bench::comparison_table(&result.records));
    let graph: Vec<&RunRecord> =
        result.records.iter().filter(|r| r.algorithm == bench::Algorithm::GraphBoost).collect();
    let violations: Vec<String> = graph.iter().flat_map(|r| bound_violations(r)).collect();
    match violations.first() {
        None => Ok(format!("{} graph-boost runs within bound; adaboost reported", graph.len())),
        Some(v) => Err(v.clone()),
    }
}

fn grid_probe() -> Outcome {
    let a = bench::halfspace_grid_probe(&[2, 3], 0, 0, Exec::Parallel).map_err(|e| e.to_string())?;
    let b = bench::halfspace_grid_probe(&[2, 3], 0, 0, Exec::Sequential).map_err(|e| e.to_string())?;
    let (ca, cb) = (bench::probe_csv(&a).map_err(|e| e.to_string())?, bench::probe_csv(&b).map_err(|e| e.to_string())?);
    if ca != cb {
        return Err("probe CSV differs between runs".into());
    }
    if !a.iter().all(|r| r.exact) {
        return Err("2x2 and 3x3 grids must be solved exhaustively".into());
    }
    // independent route for the 2x2 grid
    let hs = BaseClassSpec::halfspaces(2).unwrap();
    let grid = gamma_vc::square_grid(2);
    let mut min2: Option<Rational> = None;
    for code in 0..16 {
        let s = LabeledSample::new(grid.clone(), labeling(4, code)).unwrap();
        let g = realizability::minmax_gamma_star(&s, &hs).map_err(|e| e.to_string())?;
        min2 = Some(min2.map_or(g.clone(), |m: Rational| m.min(g)));
    }
    let min2 = min2.unwrap();
    if a[0].min_gamma_star != min2 {
        return Err(format!("2x2 probe {} vs independent {min2}", a[0].min_gamma_star));
    }
    if a[1].min_gamma_star > a[0].min_gamma_star {
        return Err(format!("not monotone: {} then {}", a[0].min_gamma_star, a[1].min_gamma_star));
    }
    Ok(format!("min γ*: 2x2 = {}, 3x3 = {}; byte-identical CSV", a[0].min_gamma_star, a[1].min_gamma_star))
}
