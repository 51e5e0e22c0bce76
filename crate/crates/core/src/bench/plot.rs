//! Standalone SVG line charts of suite results.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;

use crate::error::{Error, Result};
use crate::rational;

#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
    pub dashed: bool,
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// A line chart with linear axes starting at zero.
pub fn line_chart_svg(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let (w, h) = (720.0, 440.0);
    let (left, right, top, bottom) = (70.0, 200.0, 40.0, 60.0);
    let pw = w - left - right;
    let ph = h - top - bottom;
    let all = series.iter().flat_map(|s| s.points.iter());
    let xmax = all.clone().map(|p| p.0).fold(0.0f64, f64::max).max(1e-9) * 1.05;
    let ymax = all.map(|p| p.1).fold(0.0f64, f64::max).max(1e-9) * 1.05;
    let sx = |x: f64| left + x / xmax * pw;
    let sy = |y: f64| top + ph - y / ymax * ph;

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="24" font-size="15" text-anchor="middle">{}</text>"#, left + pw / 2.0, esc(title));
    let _ = writeln!(s, r##"<g stroke="#333"><line x1="{left}" y1="{}" x2="{}" y2="{}"/><line x1="{left}" y1="{top}" x2="{left}" y2="{}"/></g>"##, top + ph, left + pw, top + ph, top + ph);
    for i in 0..=5 {
        let fx = xmax * i as f64 / 5.0;
        let fy = ymax * i as f64 / 5.0;
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{fx:.1}</text>"#, sx(fx), top + ph + 18.0);
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{fy:.1}</text>"#, left - 6.0, sy(fy) + 4.0);
        let _ = writeln!(s, r##"<line x1="{left}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#eee"/>"##, sy(fy), left + pw, sy(fy));
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, left + pw / 2.0, h - 16.0, esc(x_label));
    let _ = writeln!(s, r#"<text transform="translate(18 {}) rotate(-90)" text-anchor="middle">{}</text>"#, top + ph / 2.0, esc(y_label));

    for (i, ser) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut pts = ser.points.clone();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let path: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.1},{:.1}", sx(x), sy(y))).collect();
        let dash = if ser.dashed { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="2"{dash} points="{}"/>"#, path.join(" "));
        for &(x, y) in &pts {
            let _ = writeln!(s, r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="{color}"/>"#, sx(x), sy(y));
        }
        let ly = top + 10.0 + 20.0 * i as f64;
        let lx = left + pw + 16.0;
        let _ = writeln!(s, r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"{dash}/>"#, lx + 24.0);
        let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, lx + 30.0, ly + 4.0, esc(&ser.name));
    }
    s.push_str("</svg>\n");
    s
}

#[derive(Default)]
struct Agg {
    sum: f64,
    count: usize,
}

/// Reads `run` rows of a suite CSV and returns two charts: mean rounds
/// against `m` and against `1/γ*`, each with the `2 ln m / γ*` and
/// `4 ln m / γ*` reference lines.
pub fn suite_plots<R: Read>(csv_reader: R) -> Result<(String, String)> {
    let mut rdr = csv::Reader::from_reader(csv_reader);
    let headers = rdr.headers()?.clone();
    let col = |name: &str| {
        headers.iter().position(|h| h == name).ok_or_else(|| Error::Parse(format!("suite CSV lacks column {name}")))
    };
    let (kind, alg, m_col, g_col, t_col, st_col) =
        (col("kind")?, col("algorithm")?, col("m")?, col("gamma_star")?, col("rounds")?, col("status")?);
    // (algorithm, m, gamma) -> mean rounds
    let mut groups: BTreeMap<(String, usize, String), Agg> = BTreeMap::new();
    for rec in rdr.records() {
        let rec = rec?;
        if &rec[kind] != "run" || &rec[st_col] != "ok" {
            continue;
        }
        let m: usize = rec[m_col].parse().map_err(|_| Error::Parse(format!("bad m {:?}", &rec[m_col])))?;
        let t: f64 = rec[t_col].parse().map_err(|_| Error::Parse(format!("bad rounds {:?}", &rec[t_col])))?;
        let e = groups.entry((rec[alg].to_string(), m, rec[g_col].to_string())).or_default();
        e.sum += t;
        e.count += 1;
    }
    if groups.is_empty() {
        return Err(Error::Parse("suite CSV has no successful runs".into()));
    }
    let mut by_alg: BTreeMap<String, Vec<(usize, f64, f64)>> = BTreeMap::new();
    let mut bounds: BTreeMap<(usize, String), f64> = BTreeMap::new();
    for ((a, m, g), agg) in &groups {
        let gamma = rational::to_f64(&rational::parse_exact(g)?);
        by_alg.entry(a.clone()).or_default().push((*m, gamma, agg.sum / agg.count as f64));
        if gamma > 0.0 {
            bounds.insert((*m, g.clone()), gamma);
        }
    }
    let bound_series = |x_of: &dyn Fn(usize, f64) -> f64, factor: f64, name: &str| Series {
        name: name.into(),
        points: bounds.iter().map(|((m, _), &g)| (x_of(*m, g), factor * (*m as f64).ln() / g)).collect(),
        dashed: true,
    };
    let build = |x_of: &dyn Fn(usize, f64) -> f64| -> Vec<Series> {
        let mut v: Vec<Series> = by_alg
            .iter()
            .map(|(a, pts)| Series {
                name: format!("{a} mean T"),
                points: pts.iter().filter(|p| p.1 > 0.0).map(|&(m, g, t)| (x_of(m, g), t)).collect(),
                dashed: false,
            })
            .collect();
        v.push(bound_series(x_of, 2.0, "2 ln m / gamma*"));
        v.push(bound_series(x_of, 4.0, "4 ln m / gamma*"));
        v
    };
    let vs_m = line_chart_svg("Rounds against sample size", "m", "rounds T", &build(&|m, _| m as f64));
    let vs_gamma = line_chart_svg("Rounds against 1/gamma*", "1 / gamma*", "rounds T", &build(&|_, g| 1.0 / g));
    Ok((vs_m, vs_gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{run_suite, ExperimentConfig};
    use crate::par::Exec;

    #[test]
    fn charts_from_a_small_suite() {
        let cfg = ExperimentConfig::from_json(
            r#"{"tasks":[{"family":"alternating-thresholds","m":4},{"family":"alternating-thresholds","m":8}],
                "algorithms":["graph-boost","adaboost"],"seeds":[1]}"#,
        )
        .unwrap();
        let res = run_suite(&cfg, Exec::Sequential).unwrap();
        let (a, b) = suite_plots(res.csv.as_bytes()).unwrap();
        for svg in [&a, &b] {
            assert!(svg.starts_with("<svg"));
            assert!(svg.contains("graph-boost mean T"));
            assert!(svg.contains("4 ln m / gamma*"));
        }
        assert!(suite_plots("kind,algorithm,m,gamma_star,rounds,status\n".as_bytes()).is_err());
    }
}
