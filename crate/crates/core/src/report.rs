//! File formats and command implementations: CSV ingestion, the calibration
//! cache, JSON reports and SVG smoother plots.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ResultExt, Stage};
use crate::estimators::{boxplot_outlier_indices, EstimatorSpec};
use crate::global::{anc_glob, calibrate_critical_p, delta_vector, neighbor_counts, GlobalConfig, GlobalTestResult};
use crate::pointwise::{anc_w, MethodWResult};
use crate::rng::RngStream;
use crate::sim::{run_study, ScenarioSpec, SimResult, StudyConfig};
use crate::smoother::{select_design_points, smoother_curve, DesignPoints, PairedSample, PointRule, SmootherConfig};

pub const TOOL_NAME: &str = "robust-ancova";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Largest share of rows that may be dropped during ingestion.
pub const MAX_DROPPED_FRACTION: f64 = 0.5;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const DATA: i32 = 3;
    pub const NUMERICAL: i32 = 4;
}

/// Exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err.root() {
        Error::InvalidArgument(_) => exit::USAGE,
        Error::DegenerateCloud(_) | Error::ResampleExhausted(_) | Error::ExcessiveFailures(_) => exit::NUMERICAL,
        _ => exit::DATA,
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestOptions {
    pub has_header: bool,
    /// Remove rows whose covariate is a boxplot outlier.
    pub drop_x_outliers: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ingested {
    #[serde(skip)]
    pub sample: Option<PairedSample>,
    pub path: String,
    pub rows_read: usize,
    pub rows_dropped: usize,
    pub x_outliers_removed: usize,
    pub n: usize,
}

impl Ingested {
    pub fn sample(&self) -> &PairedSample {
        self.sample.as_ref().expect("ingested sample present")
    }
}

fn parse_cell(cell: Option<&str>) -> Option<f64> {
    cell?.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Read a two-column `x,y` CSV file.
pub fn ingest_csv(path: &Path, opts: IngestOptions) -> Result<Ingested> {
    let fail = |msg: String| Error::Ingestion(format!("{}: {msg}", path.display()));
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(opts.has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| fail(e.to_string()))?;
    let (mut x, mut y) = (Vec::new(), Vec::new());
    let mut rows_read = 0;
    let mut rows_dropped = 0;
    for record in reader.records() {
        let record = record.map_err(|e| fail(e.to_string()))?;
        if record.iter().all(|c| c.is_empty()) {
            continue;
        }
        rows_read += 1;
        match (parse_cell(record.get(0)), parse_cell(record.get(1))) {
            (Some(a), Some(b)) => {
                x.push(a);
                y.push(b);
            }
            _ => rows_dropped += 1,
        }
    }
    if x.is_empty() {
        return Err(fail("no usable rows".into()));
    }
    if rows_dropped as f64 > MAX_DROPPED_FRACTION * rows_read as f64 {
        return Err(fail(format!("{rows_dropped} of {rows_read} rows were missing or non-numeric")));
    }
    if rows_dropped > 0 {
        log::warn!("{}: dropped {rows_dropped} rows with missing or non-numeric cells", path.display());
    }
    let mut sample = PairedSample::new(x, y).map_err(|e| fail(e.to_string()))?;
    let mut x_outliers_removed = 0;
    if opts.drop_x_outliers {
        let idx = boxplot_outlier_indices(sample.x()).map_err(|e| fail(e.to_string()))?;
        if !idx.is_empty() {
            x_outliers_removed = idx.len();
            sample = sample.without(&idx).map_err(|e| fail(e.to_string()))?;
        }
    }
    Ok(Ingested {
        n: sample.len(),
        sample: Some(sample),
        path: path.display().to_string(),
        rows_read,
        rows_dropped,
        x_outliers_removed,
    })
}

/// Everything that determines a calibrated critical p-value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationKey {
    pub n1: usize,
    pub n2: usize,
    pub alpha: f64,
    pub estimator: EstimatorSpec,
    pub span: f64,
    pub span2: Option<f64>,
    pub min_neighbors: usize,
    pub points: usize,
    pub point_rule: PointRule,
    pub freeze_madn: bool,
    pub ncrit: usize,
    pub nboot: usize,
    pub seed: u64,
}

impl CalibrationKey {
    pub fn new(n1: usize, n2: usize, spec: EstimatorSpec, cfg: &SmootherConfig, g: &GlobalConfig) -> Self {
        Self {
            n1,
            n2,
            alpha: g.alpha,
            estimator: spec,
            span: cfg.span,
            span2: cfg.span2,
            min_neighbors: cfg.min_neighbors,
            points: cfg.num_points,
            point_rule: cfg.point_rule,
            freeze_madn: g.freeze_madn,
            ncrit: g.ncrit,
            nboot: g.nboot,
            seed: g.seed,
        }
    }

    /// Canonical single-line form used in the cache file.
    pub fn canonical(&self) -> String {
        let rule = match self.point_rule {
            PointRule::FivePoint => "five-point",
            PointRule::QuartilePoints => "quartiles",
        };
        let span2 = self.span2.map_or_else(|| "-".to_string(), |s| s.to_string());
        format!(
            "n1={};n2={};alpha={};estimator={};span={};span2={};min_neighbors={};p={};rule={};freeze_madn={};A={};B={};seed={}",
            self.n1,
            self.n2,
            self.alpha,
            self.estimator,
            self.span,
            span2,
            self.min_neighbors,
            self.points,
            rule,
            self.freeze_madn,
            self.ncrit,
            self.nboot,
            self.seed
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub critical_p: f64,
    pub failures: usize,
}

const CACHE_HEADER: &str = "# robust-ancova calibration cache v1: key<TAB>critical_p<TAB>failures";

/// Append-only text file of calibrated critical p-values.
#[derive(Debug)]
pub struct CalibrationCache {
    path: PathBuf,
    entries: BTreeMap<String, CacheEntry>,
    pub warnings: Vec<String>,
}

impl CalibrationCache {
    /// Load the cache, rebuilding the file if it contains malformed lines.
    pub fn open(path: &Path) -> Result<Self> {
        let mut cache = Self {
            path: path.to_path_buf(),
            entries: BTreeMap::new(),
            warnings: Vec::new(),
        };
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => {
                cache.warn(format!("calibration cache {} unreadable ({e}); rebuilding", path.display()));
                cache.rewrite()?;
                return Ok(cache);
            }
        };
        let mut corrupt = 0;
        for line in text.lines() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            match Self::parse_line(line) {
                Some((k, v)) => {
                    cache.entries.insert(k, v);
                }
                None => corrupt += 1,
            }
        }
        if corrupt > 0 {
            cache.warn(format!(
                "calibration cache {} had {corrupt} malformed lines; rebuilt from {} valid entries",
                path.display(),
                cache.entries.len()
            ));
            cache.rewrite()?;
        }
        Ok(cache)
    }

    fn warn(&mut self, msg: String) {
        log::warn!("{msg}");
        self.warnings.push(msg);
    }

    fn parse_line(line: &str) -> Option<(String, CacheEntry)> {
        let mut parts = line.split('\t');
        let key = parts.next()?.to_string();
        let critical_p: f64 = parts.next()?.parse().ok()?;
        let failures: usize = parts.next()?.parse().ok()?;
        if parts.next().is_some() || !key.starts_with("n1=") || !(0.0..=1.0).contains(&critical_p) {
            return None;
        }
        Some((key, CacheEntry { critical_p, failures }))
    }

    fn rewrite(&self) -> Result<()> {
        let mut text = String::from(CACHE_HEADER);
        text.push('\n');
        for (k, v) in &self.entries {
            let _ = writeln!(text, "{k}\t{}\t{}", v.critical_p, v.failures);
        }
        fs::write(&self.path, text).map_err(|e| Error::Ingestion(format!("{}: {e}", self.path.display())))
    }

    pub fn get(&self, key: &CalibrationKey) -> Option<CacheEntry> {
        self.entries.get(&key.canonical()).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn insert(&mut self, key: &CalibrationKey, entry: CacheEntry) -> Result<()> {
        let canonical = key.canonical();
        let io = |e: std::io::Error| Error::Ingestion(format!("{}: {e}", self.path.display()));
        let fresh = !self.path.exists();
        let mut f = fs::OpenOptions::new().create(true).append(true).open(&self.path).map_err(io)?;
        if fresh {
            writeln!(f, "{CACHE_HEADER}").map_err(io)?;
        }
        writeln!(f, "{canonical}\t{}\t{}", entry.critical_p, entry.failures).map_err(io)?;
        self.entries.insert(canonical, entry);
        Ok(())
    }
}

/// Settings shared by every command, echoed into reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub estimator: EstimatorSpec,
    pub smoother: SmootherConfig,
    pub alpha: f64,
    pub nboot: usize,
    pub ncrit: usize,
    pub seed: u64,
    /// True when the seed was generated rather than supplied.
    pub seed_generated: bool,
    pub freeze_madn: bool,
    pub data1: Option<PathBuf>,
    pub data2: Option<PathBuf>,
    pub ingest: IngestOptions,
    pub cache: Option<PathBuf>,
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            estimator: EstimatorSpec::default(),
            smoother: SmootherConfig::default(),
            alpha: 0.05,
            nboot: 500,
            ncrit: 1000,
            seed: 0,
            seed_generated: false,
            freeze_madn: false,
            data1: None,
            data2: None,
            ingest: IngestOptions::default(),
            cache: None,
            out: None,
            threads: None,
        }
    }
}

impl RunConfig {
    pub fn global(&self) -> GlobalConfig {
        GlobalConfig {
            alpha: self.alpha,
            nboot: self.nboot,
            ncrit: self.ncrit,
            freeze_madn: self.freeze_madn,
            seed: self.seed,
        }
    }

    fn load(&self) -> Result<(Ingested, Ingested)> {
        let need = |p: &Option<PathBuf>, flag: &str| {
            p.clone().ok_or_else(|| Error::InvalidArgument(format!("{flag} is required")))
        };
        let d1 = ingest_csv(&need(&self.data1, "--data1")?, self.ingest)?;
        let d2 = ingest_csv(&need(&self.data2, "--data2")?, self.ingest)?;
        Ok((d1, d2))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationProvenance {
    pub cached: bool,
    pub key: String,
    pub critical_p: f64,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignPointRow {
    pub x: f64,
    pub n1: usize,
    pub n2: usize,
    pub theta1: f64,
    pub theta2: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: RunConfig,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inputs: Vec<Ingested>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub design_points: Vec<DesignPointRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub global: Option<GlobalTestResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pointwise: Option<MethodWResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub calibration: Option<CalibrationProvenance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simulation: Option<SimResult>,
    pub warnings: Vec<String>,
}

impl ReportDocument {
    fn new(command: &str, config: &RunConfig) -> Self {
        Self {
            tool: TOOL_NAME.to_string(),
            version: TOOL_VERSION.to_string(),
            command: command.to_string(),
            config: config.clone(),
            inputs: Vec::new(),
            design_points: Vec::new(),
            global: None,
            pointwise: None,
            calibration: None,
            simulation: None,
            warnings: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Ingestion(format!("report: {e}")))
    }

    fn note_inputs(&mut self, d1: &Ingested, d2: &Ingested) {
        for d in [d1, d2] {
            if d.rows_dropped > 0 {
                self.warnings.push(format!("{}: dropped {} rows", d.path, d.rows_dropped));
            }
            if d.x_outliers_removed > 0 {
                self.warnings.push(format!("{}: removed {} covariate outliers", d.path, d.x_outliers_removed));
            }
        }
        self.inputs = vec![d1.clone(), d2.clone()];
    }
}

/// Write `text` to `out`, or stdout when `out` is `None`.
pub fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Ingestion(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Look up or compute the critical p-value for these sample sizes.
pub fn cached_critical_p(n1: usize, n2: usize, cfg: &RunConfig, warnings: &mut Vec<String>) -> Result<CalibrationProvenance> {
    let gcfg = cfg.global();
    gcfg.validate(cfg.smoother.num_points).at(Stage::Calibration)?;
    let key = CalibrationKey::new(n1, n2, cfg.estimator, &cfg.smoother, &gcfg);
    let mut cache = match &cfg.cache {
        Some(p) => Some(CalibrationCache::open(p)?),
        None => None,
    };
    if let Some(c) = cache.as_mut() {
        warnings.append(&mut c.warnings);
        if let Some(hit) = c.get(&key) {
            log::info!("calibration cache hit for {}", key.canonical());
            return Ok(CalibrationProvenance {
                cached: true,
                key: key.canonical(),
                critical_p: hit.critical_p,
                failures: hit.failures,
            });
        }
    }
    let cal = calibrate_critical_p(
        n1,
        n2,
        cfg.alpha,
        cfg.ncrit,
        cfg.nboot,
        cfg.estimator,
        &cfg.smoother,
        cfg.freeze_madn,
        RngStream::new(cfg.seed).named("calibration"),
    )?;
    if let Some(c) = cache.as_mut() {
        c.insert(&key, CacheEntry { critical_p: cal.critical_p, failures: cal.failures })?;
        log::info!("calibration stored for {}", key.canonical());
    }
    Ok(CalibrationProvenance {
        cached: false,
        key: key.canonical(),
        critical_p: cal.critical_p,
        failures: cal.failures,
    })
}

fn rows_from(result: &GlobalTestResult) -> Vec<DesignPointRow> {
    result
        .estimates
        .iter()
        .map(|e| DesignPointRow {
            x: e.x,
            n1: e.n1,
            n2: e.n2,
            theta1: e.theta1,
            theta2: e.theta2,
            delta: e.delta,
        })
        .collect()
}

/// Global test on two CSV files.
pub fn cmd_ancglob(cfg: &RunConfig) -> Result<ReportDocument> {
    let (d1, d2) = cfg.load()?;
    let mut doc = ReportDocument::new("ancglob", cfg);
    doc.note_inputs(&d1, &d2);
    let (s1, s2) = (d1.sample(), d2.sample());
    let provenance = cached_critical_p(s1.len(), s2.len(), cfg, &mut doc.warnings)?;
    let result = anc_glob(s1, s2, cfg.estimator, &cfg.smoother, &cfg.global(), Some(provenance.critical_p))?;
    doc.design_points = rows_from(&result);
    doc.warnings.extend(result.warnings.iter().cloned());
    doc.calibration = Some(provenance);
    doc.global = Some(result);
    Ok(doc)
}

/// Pointwise tests on two CSV files.
pub fn cmd_ancw(cfg: &RunConfig) -> Result<ReportDocument> {
    let (d1, d2) = cfg.load()?;
    let mut doc = ReportDocument::new("ancw", cfg);
    doc.note_inputs(&d1, &d2);
    let (s1, s2) = (d1.sample(), d2.sample());
    let points = select_design_points(s1, s2, &cfg.smoother).at(Stage::DesignPoints)?;
    let (_, rows) = delta_vector(s1, s2, &points, cfg.estimator, &cfg.smoother).at(Stage::Estimation)?;
    let result = anc_w(
        s1,
        s2,
        &points,
        cfg.estimator,
        cfg.alpha,
        cfg.nboot,
        &cfg.smoother,
        RngStream::new(cfg.seed).named("pointwise"),
    )?;
    doc.design_points = rows
        .into_iter()
        .map(|e| DesignPointRow { x: e.x, n1: e.n1, n2: e.n2, theta1: e.theta1, theta2: e.theta2, delta: e.delta })
        .collect();
    doc.warnings.extend(result.warnings.iter().cloned());
    doc.pointwise = Some(result);
    Ok(doc)
}

/// Calibrate (or fetch from the cache) the critical p-value for `(n1, n2)`.
pub fn cmd_calibrate(cfg: &RunConfig, n1: usize, n2: usize) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("calibrate", cfg);
    let provenance = cached_critical_p(n1, n2, cfg, &mut doc.warnings)?;
    doc.calibration = Some(provenance);
    Ok(doc)
}

/// Monte Carlo Type I error or power study.
pub fn cmd_simulate(cfg: &RunConfig, scenario: &ScenarioSpec, study: &StudyConfig) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("simulate", cfg);
    let result = run_study(scenario, study)?;
    if result.failures > 0 {
        doc.warnings.push(format!("{} generated datasets were redrawn", result.failures));
    }
    doc.simulation = Some(result);
    Ok(doc)
}

/// Both smoothers as an SVG document.
pub fn cmd_plot(cfg: &RunConfig) -> Result<String> {
    let (d1, d2) = cfg.load()?;
    let points = select_design_points(d1.sample(), d2.sample(), &cfg.smoother).at(Stage::DesignPoints)?;
    Ok(render_smoother_svg(d1.sample(), d2.sample(), &points, cfg.estimator, &cfg.smoother))
}

/// Points on the grid used for plotted curves.
pub const PLOT_GRID_POINTS: usize = 201;

/// Render both groups' smoothers over `[x_1, x_p]` with the design points marked.
pub fn render_smoother_svg(
    s1: &PairedSample,
    s2: &PairedSample,
    points: &DesignPoints,
    spec: EstimatorSpec,
    cfg: &SmootherConfig,
) -> String {
    const W: f64 = 720.0;
    const H: f64 = 480.0;
    const ML: f64 = 70.0;
    const MR: f64 = 20.0;
    const MT: f64 = 30.0;
    const MB: f64 = 50.0;

    let lo = points.values.first().copied().unwrap_or(0.0);
    let hi = points.values.last().copied().unwrap_or(1.0);
    let grid: Vec<f64> = (0..PLOT_GRID_POINTS)
        .map(|i| lo + (hi - lo) * i as f64 / (PLOT_GRID_POINTS - 1) as f64)
        .collect();
    let c1 = smoother_curve(s1, &grid, spec, cfg.span_for(1));
    let c2 = smoother_curve(s2, &grid, spec, cfg.span_for(2));

    let ys: Vec<f64> = c1.iter().chain(&c2).filter_map(|(_, f)| *f).collect();
    let (mut ymin, mut ymax) = ys
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    if !ymin.is_finite() {
        (ymin, ymax) = (0.0, 1.0);
    }
    if ymax - ymin < 1e-12 {
        ymin -= 1.0;
        ymax += 1.0;
    } else {
        let pad = 0.05 * (ymax - ymin);
        ymin -= pad;
        ymax += pad;
    }
    let (xmin, xmax) = if hi > lo { (lo, hi) } else { (lo - 1.0, hi + 1.0) };
    let sx = |x: f64| ML + (x - xmin) / (xmax - xmin) * (W - ML - MR);
    let sy = |y: f64| H - MB - (y - ymin) / (ymax - ymin) * (H - MT - MB);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<g id="axes" stroke="black" fill="none"><line x1="{ML}" y1="{}" x2="{}" y2="{}"/><line x1="{ML}" y1="{MT}" x2="{ML}" y2="{}"/></g>"#,
        H - MB,
        W - MR,
        H - MB,
        H - MB
    );
    for i in 0..=4 {
        let xv = xmin + (xmax - xmin) * i as f64 / 4.0;
        let yv = ymin + (ymax - ymin) * i as f64 / 4.0;
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{}" text-anchor="middle">{:.3}</text>"#,
            sx(xv),
            H - MB + 18.0,
            xv
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{:.2}" text-anchor="end">{:.3}</text>"#,
            ML - 6.0,
            sy(yv) + 4.0,
            yv
        );
    }
    let _ = writeln!(svg, r#"<text x="{}" y="{}" text-anchor="middle">covariate</text>"#, (ML + W - MR) / 2.0, H - 10.0);
    let _ = writeln!(svg, r#"<text x="{}" y="{}" text-anchor="middle">{spec}</text>"#, (ML + W - MR) / 2.0, MT - 10.0);

    for &x in &points.values {
        let _ = writeln!(
            svg,
            r##"<line class="design-point" x1="{0:.2}" y1="{MT}" x2="{0:.2}" y2="{1}" stroke="#999" stroke-dasharray="2,3"/>"##,
            sx(x),
            H - MB
        );
    }
    for (id, curve, style) in [("group1", &c1, ""), ("group2", &c2, r#" stroke-dasharray="6,4""#)] {
        // a missing fit breaks the line
        let mut segments: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
        for &(x, f) in curve {
            match f {
                Some(y) => segments.last_mut().expect("segment").push((sx(x), sy(y))),
                None => {
                    if !segments.last().expect("segment").is_empty() {
                        segments.push(Vec::new());
                    }
                }
            }
        }
        for seg in segments.iter().filter(|s| s.len() > 1) {
            let pts: Vec<String> = seg.iter().map(|(a, b)| format!("{a:.2},{b:.2}")).collect();
            let _ = writeln!(
                svg,
                r#"<polyline class="{id}" fill="none" stroke="black" stroke-width="2"{style} points="{}"/>"#,
                pts.join(" ")
            );
        }
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}">solid: group 1, dashed: group 2</text>"#,
        ML + 10.0,
        MT + 14.0
    );
    svg.push_str("</svg>\n");
    svg
}

/// Per-point neighborhood sizes, for diagnostics.
pub fn design_point_counts(s1: &PairedSample, s2: &PairedSample, points: &DesignPoints, cfg: &SmootherConfig) -> Vec<(usize, usize)> {
    neighbor_counts(s1, s2, points, cfg)
}
