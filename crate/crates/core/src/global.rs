//! Global test of equal conditional location at all design points.
//!
//! Both groups are resampled in pairs, the location difference at every
//! design point is re-estimated, and the null vector's Mahalanobis depth in
//! the resulting cloud gives a generalized p-value. The rejection cutoff is
//! not the nominal level: it is calibrated by running the whole procedure on
//! independent bivariate normal data of the same sizes and taking the
//! Harrell–Davis `alpha` quantile of the simulated p-values.

use rand::Rng as _;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ResultExt, Stage};
use crate::estimators::{harrell_davis, mad_with, EstimatorSpec, PreparedEstimator, MADN_CONSTANT};
use crate::rng::{Rng, RngStream};
use crate::smoother::{
    neighborhood_count, neighborhood_values, select_design_points, within, DesignPoints, PairedSample,
    SmootherConfig,
};

/// Consecutive redraws allowed for one bootstrap replicate.
pub const MAX_RESAMPLE_REDRAWS: usize = 50;
/// Redraws allowed for one calibration replication.
const MAX_CALIBRATION_REDRAWS: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaVector(pub Vec<f64>);

impl DeltaVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Per-point estimates for both groups.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointEstimate {
    pub x: f64,
    pub n1: usize,
    pub n2: usize,
    pub theta1: f64,
    pub theta2: f64,
    pub delta: f64,
}

/// Settings for the global test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GlobalConfig {
    pub alpha: f64,
    /// Bootstrap samples per cloud (B).
    pub nboot: usize,
    /// Simulated datasets for the critical p-value (A).
    pub ncrit: usize,
    /// Keep each group's original MADN inside bootstrap samples.
    #[serde(default)]
    pub freeze_madn: bool,
    pub seed: u64,
}

impl Default for GlobalConfig {
    fn default() -> Self {
        Self {
            alpha: 0.05,
            nboot: 500,
            ncrit: 1000,
            freeze_madn: false,
            seed: 0,
        }
    }
}

impl GlobalConfig {
    pub fn validate(&self, p: usize) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidArgument(format!("alpha {} outside (0, 1]", self.alpha)));
        }
        if self.nboot < p + 1 {
            return Err(Error::InvalidArgument(format!(
                "need at least {} bootstrap samples for a {p}-point covariance, got {}",
                p + 1,
                self.nboot
            )));
        }
        if self.ncrit == 0 {
            return Err(Error::InvalidArgument("ncrit must be positive".into()));
        }
        Ok(())
    }
}

/// Observed location differences at the design points.
pub fn delta_vector(
    s1: &PairedSample,
    s2: &PairedSample,
    points: &DesignPoints,
    spec: EstimatorSpec,
    cfg: &SmootherConfig,
) -> Result<(DeltaVector, Vec<PointEstimate>)> {
    spec.validate()?;
    let mut deltas = Vec::with_capacity(points.len());
    let mut rows = Vec::with_capacity(points.len());
    for &x in &points.values {
        let est = |s: &PairedSample, span: f64| -> Result<(usize, f64)> {
            let ys = neighborhood_values(s, x, span);
            if ys.len() < 2 {
                return Err(Error::NotComparable(format!(
                    "only {} observations near x = {x}",
                    ys.len()
                )));
            }
            Ok((ys.len(), crate::estimators::apply_estimator(&ys, spec)?))
        };
        let (n1, theta1) = est(s1, cfg.span_for(1))?;
        let (n2, theta2) = est(s2, cfg.span_for(2))?;
        deltas.push(theta1 - theta2);
        rows.push(PointEstimate {
            x,
            n1,
            n2,
            theta1,
            theta2,
            delta: theta1 - theta2,
        });
    }
    Ok((DeltaVector(deltas), rows))
}

// Lower-triangular Cholesky factor of a small dense matrix.
#[derive(Debug, Clone)]
struct Cholesky {
    p: usize,
    l: Vec<f64>,
}

impl Cholesky {
    fn factor(a: &[f64], p: usize) -> Option<Self> {
        let max_diag = (0..p).map(|i| a[i * p + i]).fold(0.0, f64::max);
        if !(max_diag > 0.0) || !max_diag.is_finite() {
            return None;
        }
        let tol = max_diag * 1e-14;
        let mut l = vec![0.0; p * p];
        for i in 0..p {
            for j in 0..=i {
                let mut s = a[i * p + j];
                for k in 0..j {
                    s -= l[i * p + k] * l[j * p + k];
                }
                if i == j {
                    if !(s > tol) {
                        return None;
                    }
                    l[i * p + i] = s.sqrt();
                } else {
                    l[i * p + j] = s / l[j * p + j];
                }
            }
        }
        Some(Self { p, l })
    }

    /// `d' A^{-1} d` via one forward substitution.
    fn quad_form(&self, d: &[f64], work: &mut [f64]) -> f64 {
        let p = self.p;
        let mut acc = 0.0;
        for i in 0..p {
            let mut s = d[i];
            for k in 0..i {
                s -= self.l[i * p + k] * work[k];
            }
            let z = s / self.l[i * p + i];
            work[i] = z;
            acc += z * z;
        }
        acc
    }
}

/// Factor `cov`, adding a small ridge once if the plain factorization fails.
fn factor_with_ridge(cov: &[f64], p: usize) -> Result<(Cholesky, f64)> {
    if let Some(c) = Cholesky::factor(cov, p) {
        return Ok((c, 0.0));
    }
    let trace: f64 = (0..p).map(|i| cov[i * p + i]).sum();
    let ridge = 1e-10 * trace / p as f64;
    if ridge > 0.0 && ridge.is_finite() {
        let mut jittered = cov.to_vec();
        for i in 0..p {
            jittered[i * p + i] += ridge;
        }
        if let Some(c) = Cholesky::factor(&jittered, p) {
            return Ok((c, ridge));
        }
    }
    Err(Error::DegenerateCloud(format!(
        "bootstrap covariance is singular (trace {trace:e})"
    )))
}

/// Squared Mahalanobis distance of `v` from `center` under `covariance`.
pub fn mahalanobis_sq(v: &[f64], center: &[f64], covariance: &[Vec<f64>]) -> Result<f64> {
    let p = center.len();
    if v.len() != p || covariance.len() != p || covariance.iter().any(|r| r.len() != p) {
        return Err(Error::InvalidArgument("dimension mismatch".into()));
    }
    let flat: Vec<f64> = covariance.iter().flatten().copied().collect();
    let chol = Cholesky::factor(&flat, p)
        .ok_or_else(|| Error::DegenerateCloud("covariance is not positive definite".into()))?;
    let diff: Vec<f64> = v.iter().zip(center).map(|(a, b)| a - b).collect();
    Ok(chol.quad_form(&diff, &mut vec![0.0; p]))
}

/// Bootstrap delta vectors with their covariance and distances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapCloud {
    pub vectors: Vec<Vec<f64>>,
    /// The observed-data estimate, used as the cloud's center.
    pub center: DeltaVector,
    pub covariance: Vec<Vec<f64>>,
    /// `d²_b` for every bootstrap vector.
    pub distances: Vec<f64>,
    /// `d²_0`, the null vector's distance.
    pub null_distance: f64,
    /// Diagonal jitter added to make the covariance factorizable (0 if none).
    pub ridge: f64,
}

impl BootstrapCloud {
    /// Compute covariance and distances for `vectors` around `center`.
    pub fn from_vectors(vectors: Vec<Vec<f64>>, center: DeltaVector) -> Result<Self> {
        let p = center.len();
        if vectors.iter().any(|v| v.len() != p) {
            return Err(Error::InvalidArgument("cloud vectors differ in length from the center".into()));
        }
        let flat: Vec<f64> = vectors.iter().flatten().copied().collect();
        let (cov, distances, null_distance, ridge) = cloud_distances(&flat, center.as_slice())?;
        Ok(Self {
            covariance: cov.chunks(p).map(<[f64]>::to_vec).collect(),
            vectors,
            center,
            distances,
            null_distance,
            ridge,
        })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Covariance (divisor B - 1), bootstrap distances and null distance for a
/// flat B×p array.
fn cloud_distances(flat: &[f64], center: &[f64]) -> Result<(Vec<f64>, Vec<f64>, f64, f64)> {
    let p = center.len();
    let b = flat.len() / p;
    if b < p + 1 {
        return Err(Error::InvalidArgument(format!(
            "{b} bootstrap vectors cannot estimate a {p}x{p} covariance"
        )));
    }
    let mut mean = vec![0.0; p];
    for v in flat.chunks_exact(p) {
        for (m, x) in mean.iter_mut().zip(v) {
            *m += x;
        }
    }
    mean.iter_mut().for_each(|m| *m /= b as f64);
    let mut cov = vec![0.0; p * p];
    let mut dev = vec![0.0; p];
    for v in flat.chunks_exact(p) {
        for k in 0..p {
            dev[k] = v[k] - mean[k];
        }
        for i in 0..p {
            for j in 0..=i {
                cov[i * p + j] += dev[i] * dev[j];
            }
        }
    }
    for i in 0..p {
        for j in 0..=i {
            let c = cov[i * p + j] / (b - 1) as f64;
            cov[i * p + j] = c;
            cov[j * p + i] = c;
        }
    }
    let (chol, ridge) = factor_with_ridge(&cov, p)?;
    let mut work = vec![0.0; p];
    let distances = flat
        .chunks_exact(p)
        .map(|v| {
            for k in 0..p {
                dev[k] = v[k] - center[k];
            }
            chol.quad_form(&dev, &mut work)
        })
        .collect();
    let neg: Vec<f64> = center.iter().map(|c| -c).collect();
    let null_distance = chol.quad_form(&neg, &mut work);
    Ok((cov, distances, null_distance, ridge))
}

/// Fraction of bootstrap distances at least as large as the null distance.
pub fn generalized_p_value(cloud: &BootstrapCloud) -> f64 {
    p_value_from(&cloud.distances, cloud.null_distance)
}

fn p_value_from(distances: &[f64], null_distance: f64) -> f64 {
    let hits = distances.iter().filter(|&&d| null_distance <= d).count();
    hits as f64 / distances.len() as f64
}

/// Depth-rank confidence region: the bootstrap vectors with the
/// `⌈(1 - critical_p) B⌉` smallest distances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionSummary {
    pub rank_threshold: usize,
    pub null_in_region: bool,
    /// Indices of the retained cloud vectors, nearest first.
    pub retained: Vec<usize>,
}

pub fn confidence_region_summary(cloud: &BootstrapCloud, critical_p: f64) -> RegionSummary {
    let b = cloud.distances.len();
    let cut = (critical_p.clamp(0.0, 1.0) * b as f64).floor() as usize;
    let rank_threshold = b - cut.min(b);
    let mut order: Vec<usize> = (0..b).collect();
    order.sort_by(|&i, &j| cloud.distances[i].total_cmp(&cloud.distances[j]).then(i.cmp(&j)));
    order.truncate(rank_threshold);
    let null_in_region = order
        .last()
        .is_some_and(|&i| cloud.null_distance <= cloud.distances[i]);
    RegionSummary {
        rank_threshold,
        null_in_region,
        retained: order,
    }
}

/// Reusable buffers for one group's resample.
#[derive(Default)]
struct GroupScratch {
    xb: Vec<f64>,
    yb: Vec<f64>,
    tmp: Vec<f64>,
    buf: Vec<f64>,
}

impl GroupScratch {
    fn resample(&mut self, s: &PairedSample, rng: &mut Rng) {
        let n = s.len();
        self.xb.clear();
        self.yb.clear();
        for _ in 0..n {
            let i = rng.random_range(0..n);
            self.xb.push(s.x()[i]);
            self.yb.push(s.y()[i]);
        }
    }

    /// Estimates at each point into `out`; false if a neighborhood is too small.
    fn estimate(&mut self, points: &[f64], radius_scale: f64, madn: Option<f64>, est: &PreparedEstimator, out: &mut [f64]) -> bool {
        let madn = match madn {
            Some(m) => m,
            None => mad_with(&self.xb, &mut self.tmp) / MADN_CONSTANT,
        };
        let radius = radius_scale * madn;
        for (k, &x0) in points.iter().enumerate() {
            self.buf.clear();
            for (&xi, &yi) in self.xb.iter().zip(&self.yb) {
                if within(xi, x0, radius) {
                    self.buf.push(yi);
                }
            }
            if self.buf.len() < est.spec().min_resample_size(self.buf.len()) {
                return false;
            }
            out[k] = est.estimate_in_place(&mut self.buf);
        }
        true
    }
}

struct CloudJob<'a> {
    s1: &'a PairedSample,
    s2: &'a PairedSample,
    points: &'a [f64],
    est: &'a PreparedEstimator,
    span1: f64,
    span2: f64,
    freeze_madn: bool,
}

impl CloudJob<'_> {
    /// One bootstrap delta vector, redrawing when a neighborhood is too small.
    fn replicate(&self, stream: RngStream, g1: &mut GroupScratch, g2: &mut GroupScratch, e1: &mut [f64], e2: &mut [f64], out: &mut [f64]) -> Result<()> {
        let mut rng = stream.rng();
        let m1 = self.freeze_madn.then_some(self.s1.madn());
        let m2 = self.freeze_madn.then_some(self.s2.madn());
        for _ in 0..=MAX_RESAMPLE_REDRAWS {
            g1.resample(self.s1, &mut rng);
            g2.resample(self.s2, &mut rng);
            if g1.estimate(self.points, self.span1, m1, self.est, e1) && g2.estimate(self.points, self.span2, m2, self.est, e2) {
                for k in 0..out.len() {
                    out[k] = e1[k] - e2[k];
                }
                return Ok(());
            }
        }
        Err(Error::ResampleExhausted(format!(
            "{MAX_RESAMPLE_REDRAWS} consecutive bootstrap samples left a neighborhood too small"
        )))
    }

    /// B×p flat array of bootstrap vectors.
    fn run(&self, nboot: usize, stream: RngStream, parallel: bool) -> Result<Vec<f64>> {
        let p = self.points.len();
        let mut flat = vec![0.0; nboot * p];
        let work = |(b, out): (usize, &mut [f64]), st: &mut (GroupScratch, GroupScratch, Vec<f64>, Vec<f64>)| {
            self.replicate(stream.substream(b as u64), &mut st.0, &mut st.1, &mut st.2, &mut st.3, out)
        };
        let init = || (GroupScratch::default(), GroupScratch::default(), vec![0.0; p], vec![0.0; p]);
        if parallel {
            flat.par_chunks_mut(p)
                .enumerate()
                .try_for_each_init(init, |st, item| work(item, st))?;
        } else {
            let mut st = init();
            for item in flat.chunks_mut(p).enumerate() {
                work(item, &mut st)?;
            }
        }
        Ok(flat)
    }
}

/// Bootstrap cloud at fixed design points. Neighborhoods and MADN are
/// recomputed within each bootstrap sample unless `freeze_madn` is set.
pub fn bootstrap_cloud(
    s1: &PairedSample,
    s2: &PairedSample,
    points: &DesignPoints,
    spec: EstimatorSpec,
    cfg: &SmootherConfig,
    nboot: usize,
    freeze_madn: bool,
    stream: RngStream,
) -> Result<BootstrapCloud> {
    let (center, _) = delta_vector(s1, s2, points, spec, cfg)?;
    bootstrap_cloud_inner(s1, s2, points, &center, spec, cfg, nboot, freeze_madn, stream, true)
}

#[allow(clippy::too_many_arguments)]
fn bootstrap_cloud_inner(
    s1: &PairedSample,
    s2: &PairedSample,
    points: &DesignPoints,
    center: &DeltaVector,
    spec: EstimatorSpec,
    cfg: &SmootherConfig,
    nboot: usize,
    freeze_madn: bool,
    stream: RngStream,
    parallel: bool,
) -> Result<BootstrapCloud> {
    let p = points.len();
    if nboot < p + 1 {
        return Err(Error::InvalidArgument(format!("B = {nboot} is below p + 1 = {}", p + 1)));
    }
    let est = PreparedEstimator::new(spec, s1.len().max(s2.len()));
    let job = CloudJob {
        s1,
        s2,
        points: &points.values,
        est: &est,
        span1: cfg.span_for(1),
        span2: cfg.span_for(2),
        freeze_madn,
    };
    let flat = job.run(nboot, stream, parallel)?;
    let (cov, distances, null_distance, ridge) = cloud_distances(&flat, center.as_slice())?;
    Ok(BootstrapCloud {
        vectors: flat.chunks(p).map(<[f64]>::to_vec).collect(),
        center: center.clone(),
        covariance: cov.chunks(p).map(<[f64]>::to_vec).collect(),
        distances,
        null_distance,
        ridge,
    })
}

/// P-value only, skipping the cloud bookkeeping. Used inside calibration.
pub(crate) fn null_p_value(
    s1: &PairedSample,
    s2: &PairedSample,
    cfg: &SmootherConfig,
    est: &PreparedEstimator,
    nboot: usize,
    freeze_madn: bool,
    stream: RngStream,
) -> Result<f64> {
    let points = select_design_points(s1, s2, cfg)?;
    let (center, _) = delta_vector(s1, s2, &points, est.spec(), cfg)?;
    let job = CloudJob {
        s1,
        s2,
        points: &points.values,
        est,
        span1: cfg.span_for(1),
        span2: cfg.span_for(2),
        freeze_madn,
    };
    let flat = job.run(nboot, stream, false)?;
    let (_, distances, null_distance, _) = cloud_distances(&flat, center.as_slice())?;
    Ok(p_value_from(&distances, null_distance))
}

/// `n` pairs of independent standard normal covariate and outcome.
pub(crate) fn normal_pairs(n: usize, rng: &mut Rng) -> PairedSample {
    let x: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
    let y: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
    PairedSample::new(x, y).expect("finite normal draws")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub critical_p: f64,
    pub replications: usize,
    /// Simulated datasets discarded and redrawn.
    pub failures: usize,
}

/// Critical p-value for sample sizes `(n1, n2)`: the Harrell–Davis `alpha`
/// quantile of `ncrit` null p-values simulated under bivariate normality.
#[allow(clippy::too_many_arguments)]
pub fn calibrate_critical_p(
    n1: usize,
    n2: usize,
    alpha: f64,
    ncrit: usize,
    nboot: usize,
    spec: EstimatorSpec,
    cfg: &SmootherConfig,
    freeze_madn: bool,
    stream: RngStream,
) -> Result<Calibration> {
    spec.validate().at(Stage::Calibration)?;
    cfg.validate().at(Stage::Calibration)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidArgument(format!("alpha {alpha} outside (0, 1)")).at(Stage::Calibration));
    }
    if ncrit == 0 {
        return Err(Error::InvalidArgument("ncrit must be positive".into()).at(Stage::Calibration));
    }
    let est = PreparedEstimator::new(spec, n1.max(n2));
    let results: Vec<Result<(f64, usize)>> = (0..ncrit)
        .into_par_iter()
        .map(|a| {
            let mut rng = stream.substream(a as u64).rng();
            let mut failures = 0;
            loop {
                let s1 = normal_pairs(n1, &mut rng);
                let s2 = normal_pairs(n2, &mut rng);
                let boot = RngStream::new(rng.random());
                match null_p_value(&s1, &s2, cfg, &est, nboot, freeze_madn, boot) {
                    Ok(p) => return Ok((p, failures)),
                    Err(e) if failures < MAX_CALIBRATION_REDRAWS => {
                        log::debug!("calibration replication {a} redrawn: {e}");
                        failures += 1;
                    }
                    Err(e) => {
                        return Err(Error::ExcessiveFailures(format!(
                            "calibration replication {a} failed {failures} times, last: {e}"
                        )))
                    }
                }
            }
        })
        .collect();
    let mut pvals = Vec::with_capacity(ncrit);
    let mut failures = 0;
    for r in results {
        let (p, f) = r.at(Stage::Calibration)?;
        pvals.push(p);
        failures += f;
    }
    if failures > ncrit {
        return Err(Error::ExcessiveFailures(format!(
            "{failures} simulated datasets were unusable for {ncrit} replications"
        ))
        .at(Stage::Calibration));
    }
    if failures > 0 {
        log::info!("calibration redrew {failures} simulated datasets");
    }
    let critical_p = harrell_davis(&pvals, alpha).at(Stage::Calibration)?;
    Ok(Calibration {
        critical_p,
        replications: ncrit,
        failures,
    })
}

/// Where the critical p-value came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "kebab-case")]
pub enum CriticalSource {
    Computed { replications: usize, failures: usize },
    Supplied,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalTestResult {
    pub p_value: f64,
    pub critical_p: f64,
    pub reject: bool,
    pub design_points: DesignPoints,
    pub delta: DeltaVector,
    pub estimates: Vec<PointEstimate>,
    pub region_rank_threshold: usize,
    pub null_in_region: bool,
    pub null_distance: f64,
    pub ridge: f64,
    pub critical_source: CriticalSource,
    pub estimator: EstimatorSpec,
    pub alpha: f64,
    pub nboot: usize,
    pub ncrit: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    /// Retained cloud vectors of the confidence region.
    #[serde(skip)]
    pub region: Vec<Vec<f64>>,
}

/// Run the global test on observed data. The critical p-value is
/// calibrated for `(n1, n2)` unless `precomputed_critical_p` is given.
pub fn anc_glob(
    s1: &PairedSample,
    s2: &PairedSample,
    spec: EstimatorSpec,
    cfg: &SmootherConfig,
    gcfg: &GlobalConfig,
    precomputed_critical_p: Option<f64>,
) -> Result<GlobalTestResult> {
    spec.validate().at(Stage::Estimation)?;
    let points = select_design_points(s1, s2, cfg).at(Stage::DesignPoints)?;
    gcfg.validate(points.len()).at(Stage::Bootstrap)?;
    let (delta, estimates) = delta_vector(s1, s2, &points, spec, cfg).at(Stage::Estimation)?;
    let root = RngStream::new(gcfg.seed);
    let cloud = bootstrap_cloud_inner(
        s1,
        s2,
        &points,
        &delta,
        spec,
        cfg,
        gcfg.nboot,
        gcfg.freeze_madn,
        root.named("cloud"),
        true,
    )
    .at(Stage::Bootstrap)?;
    let p_value = generalized_p_value(&cloud);
    let (critical_p, critical_source) = match precomputed_critical_p {
        Some(c) => (c, CriticalSource::Supplied),
        None => {
            let cal = calibrate_critical_p(
                s1.len(),
                s2.len(),
                gcfg.alpha,
                gcfg.ncrit,
                gcfg.nboot,
                spec,
                cfg,
                gcfg.freeze_madn,
                root.named("calibration"),
            )?;
            (
                cal.critical_p,
                CriticalSource::Computed {
                    replications: cal.replications,
                    failures: cal.failures,
                },
            )
        }
    };
    let region = confidence_region_summary(&cloud, critical_p);
    let mut warnings = points.warnings.clone();
    if cloud.ridge > 0.0 {
        warnings.push(format!("bootstrap covariance needed a ridge of {:e}", cloud.ridge));
    }
    Ok(GlobalTestResult {
        p_value,
        critical_p,
        reject: p_value <= critical_p,
        region_rank_threshold: region.rank_threshold,
        null_in_region: region.null_in_region,
        region: region.retained.iter().map(|&i| cloud.vectors[i].clone()).collect(),
        null_distance: cloud.null_distance,
        ridge: cloud.ridge,
        design_points: points,
        delta,
        estimates,
        critical_source,
        estimator: spec,
        alpha: gcfg.alpha,
        nboot: gcfg.nboot,
        ncrit: gcfg.ncrit,
        seed: gcfg.seed,
        warnings,
    })
}

/// Group sizes `N_j(x)` at the design points.
pub fn neighbor_counts(s1: &PairedSample, s2: &PairedSample, points: &DesignPoints, cfg: &SmootherConfig) -> Vec<(usize, usize)> {
    points
        .values
        .iter()
        .map(|&x| (neighborhood_count(s1, x, cfg.span_for(1)), neighborhood_count(s2, x, cfg.span_for(2))))
        .collect()
}
