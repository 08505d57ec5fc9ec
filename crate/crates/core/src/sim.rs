//! g-and-h error distributions and the Monte Carlo harness for Type I error
//! and power of the global and pointwise tests.

use rand::Rng as _;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ResultExt, Stage};
use crate::estimators::{EstimatorSpec, PreparedEstimator};
use crate::global::{calibrate_critical_p, delta_vector, GlobalConfig};
use crate::pointwise::anc_w;
use crate::rng::{Rng, RngStream};
use crate::smoother::{select_design_points, PairedSample, SmootherConfig};

/// Redraws allowed for a single replication before the study gives up.
const MAX_REPLICATION_REDRAWS: usize = 100;
/// Largest tolerated share of discarded datasets.
pub const MAX_FAILURE_FRACTION: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GhParams {
    pub g: f64,
    pub h: f64,
}

impl GhParams {
    pub const NORMAL: GhParams = GhParams { g: 0.0, h: 0.0 };
    pub const SYMMETRIC_HEAVY: GhParams = GhParams { g: 0.0, h: 0.2 };
    pub const SKEWED_LIGHT: GhParams = GhParams { g: 0.2, h: 0.0 };
    pub const SKEWED_HEAVY: GhParams = GhParams { g: 0.2, h: 0.2 };

    pub fn new(g: f64, h: f64) -> Result<Self> {
        if g >= 0.0 && h >= 0.0 && g.is_finite() && h.is_finite() {
            Ok(Self { g, h })
        } else {
            Err(Error::InvalidArgument(format!("g-and-h parameters must be nonnegative (g = {g}, h = {h})")))
        }
    }
}

/// Skewness and kurtosis of the four standard configurations, for reference.
pub const GH_MOMENTS: [(GhParams, f64, f64); 4] = [
    (GhParams::NORMAL, 0.00, 3.0),
    (GhParams::SYMMETRIC_HEAVY, 0.00, 21.46),
    (GhParams::SKEWED_LIGHT, 0.61, 3.68),
    (GhParams::SKEWED_HEAVY, 2.81, 155.98),
];

/// Map a standard normal deviate to the g-and-h distribution.
pub fn gh_transform(z: f64, params: GhParams) -> f64 {
    let tail = (params.h * z * z / 2.0).exp();
    if params.g > 0.0 {
        (params.g * z).exp_m1() / params.g * tail
    } else {
        z * tail
    }
}

pub(crate) fn gh_draws(n: usize, params: GhParams, rng: &mut Rng) -> Vec<f64> {
    (0..n).map(|_| gh_transform(rng.sample(StandardNormal), params)).collect()
}

pub fn gh_sample(n: usize, params: GhParams, stream: RngStream) -> Vec<f64> {
    gh_draws(n, params, &mut stream.rng())
}

/// Regression function linking outcome to covariate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Association {
    /// `Y = e`
    S1,
    /// `Y = X + e`
    S2,
    /// `Y = X^2 + e`
    S3,
    /// `Y = slope * X^degree + shift + e`; degree 0 drops the covariate term.
    Shifted { slope: f64, degree: u32, shift: f64 },
}

impl Association {
    pub fn mean_at(&self, x: f64) -> f64 {
        match *self {
            Association::S1 => 0.0,
            Association::S2 => x,
            Association::S3 => x * x,
            Association::Shifted { slope, degree, shift } => {
                let trend = if degree == 0 { 0.0 } else { slope * x.powi(degree as i32) };
                trend + shift
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub group1: Association,
    pub group2: Association,
    pub error: GhParams,
    pub n1: usize,
    pub n2: usize,
}

impl ScenarioSpec {
    /// Both groups share `association`, so the null hypothesis holds.
    pub fn null(association: Association, error: GhParams, n1: usize, n2: usize) -> Self {
        Self {
            group1: association,
            group2: association,
            error,
            n1,
            n2,
        }
    }

    /// Group 1 follows `base`, group 2 follows `alternative`.
    pub fn alternative(base: Association, alternative: Association, error: GhParams, n1: usize, n2: usize) -> Self {
        Self {
            group1: base,
            group2: alternative,
            error,
            n1,
            n2,
        }
    }

    pub fn is_null(&self) -> bool {
        self.group1 == self.group2
    }
}

fn generate_group(n: usize, assoc: Association, error: GhParams, rng: &mut Rng) -> PairedSample {
    let x: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
    let e = gh_draws(n, error, rng);
    let y = x.iter().zip(e).map(|(&x, e)| assoc.mean_at(x) + e).collect();
    PairedSample::new(x, y).expect("generated values are finite")
}

pub(crate) fn generate_with(spec: &ScenarioSpec, rng: &mut Rng) -> (PairedSample, PairedSample) {
    let s1 = generate_group(spec.n1, spec.group1, spec.error, rng);
    let s2 = generate_group(spec.n2, spec.group2, spec.error, rng);
    (s1, s2)
}

/// Two independent samples with standard normal covariates.
pub fn generate_scenario(spec: &ScenarioSpec, stream: RngStream) -> (PairedSample, PairedSample) {
    generate_with(spec, &mut stream.rng())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestMethod {
    /// Global bootstrap depth test.
    Global,
    /// Pointwise tests; a replication counts as a rejection when any point rejects.
    Pointwise,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    pub method: TestMethod,
    pub estimator: EstimatorSpec,
    pub smoother: SmootherConfig,
    pub replications: usize,
    pub nboot: usize,
    pub ncrit: usize,
    pub alpha: f64,
    pub seed: u64,
    #[serde(default)]
    pub freeze_madn: bool,
    /// Use this critical p-value instead of calibrating.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub critical_p: Option<f64>,
}

impl Default for StudyConfig {
    fn default() -> Self {
        Self {
            method: TestMethod::Global,
            estimator: EstimatorSpec::default(),
            smoother: SmootherConfig::default(),
            replications: 1000,
            nboot: 500,
            ncrit: 1000,
            alpha: 0.05,
            seed: 0,
            freeze_madn: false,
            critical_p: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub rejection_rate: f64,
    pub rejections: usize,
    pub replications: usize,
    /// Generated datasets that were discarded and redrawn.
    pub failures: usize,
    pub standard_error: f64,
    /// Critical p-value used by the global test.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub critical_p: Option<f64>,
    pub scenario: ScenarioSpec,
    pub config: StudyConfig,
}

/// Estimated Type I error; `scenario` must satisfy the null.
pub fn run_type1_study(scenario: &ScenarioSpec, cfg: &StudyConfig) -> Result<SimResult> {
    if !scenario.is_null() {
        return Err(Error::InvalidArgument(
            "Type I error study needs both groups to share the same association".into(),
        ));
    }
    run_study(scenario, cfg)
}

/// Estimated power against the alternative in `scenario`.
pub fn run_power_study(scenario: &ScenarioSpec, cfg: &StudyConfig) -> Result<SimResult> {
    run_study(scenario, cfg)
}

/// Rejection rate for any scenario, null or not.
pub fn run_study(scenario: &ScenarioSpec, cfg: &StudyConfig) -> Result<SimResult> {
    cfg.estimator.validate().at(Stage::Simulation)?;
    cfg.smoother.validate().at(Stage::Simulation)?;
    if cfg.replications == 0 {
        return Err(Error::InvalidArgument("replications must be positive".into()).at(Stage::Simulation));
    }
    let root = RngStream::new(cfg.seed);
    let critical_p = match (cfg.method, cfg.critical_p) {
        (TestMethod::Global, Some(c)) => Some(c),
        (TestMethod::Global, None) => Some(
            calibrate_critical_p(
                scenario.n1,
                scenario.n2,
                cfg.alpha,
                cfg.ncrit,
                cfg.nboot,
                cfg.estimator,
                &cfg.smoother,
                cfg.freeze_madn,
                root.named("calibration"),
            )?
            .critical_p,
        ),
        (TestMethod::Pointwise, _) => None,
    };
    let gcfg = GlobalConfig {
        alpha: cfg.alpha,
        nboot: cfg.nboot,
        ncrit: cfg.ncrit,
        freeze_madn: cfg.freeze_madn,
        seed: 0,
    };
    let est = PreparedEstimator::new(cfg.estimator, scenario.n1.max(scenario.n2));
    let reps = root.named("replications");
    let outcomes: Vec<Result<(bool, usize)>> = (0..cfg.replications)
        .into_par_iter()
        .map(|r| {
            let mut rng = reps.substream(r as u64).rng();
            let mut failures = 0;
            loop {
                let (s1, s2) = generate_with(scenario, &mut rng);
                let boot = RngStream::new(rng.random());
                let decision = match critical_p {
                    Some(pc) => global_decision(&s1, &s2, cfg, &gcfg, &est, pc, boot),
                    None => pointwise_decision(&s1, &s2, cfg, boot),
                };
                match decision {
                    Ok(reject) => return Ok((reject, failures)),
                    Err(e) if failures < MAX_REPLICATION_REDRAWS => {
                        log::debug!("replication {r} redrawn: {e}");
                        failures += 1;
                    }
                    Err(e) => {
                        return Err(Error::ExcessiveFailures(format!(
                            "replication {r} failed {failures} times, last: {e}"
                        )))
                    }
                }
            }
        })
        .collect();
    let mut rejections = 0;
    let mut failures = 0;
    for o in outcomes {
        let (reject, f) = o.at(Stage::Simulation)?;
        rejections += reject as usize;
        failures += f;
    }
    let drawn = cfg.replications + failures;
    if failures as f64 > MAX_FAILURE_FRACTION * drawn as f64 {
        return Err(Error::ExcessiveFailures(format!(
            "{failures} of {drawn} generated datasets had no usable design points"
        ))
        .at(Stage::Simulation));
    }
    let rate = rejections as f64 / cfg.replications as f64;
    Ok(SimResult {
        rejection_rate: rate,
        rejections,
        replications: cfg.replications,
        failures,
        standard_error: (rate * (1.0 - rate) / cfg.replications as f64).sqrt(),
        critical_p,
        scenario: *scenario,
        config: *cfg,
    })
}

fn global_decision(
    s1: &PairedSample,
    s2: &PairedSample,
    cfg: &StudyConfig,
    gcfg: &GlobalConfig,
    est: &PreparedEstimator,
    critical_p: f64,
    stream: RngStream,
) -> Result<bool> {
    let p = crate::global::null_p_value(s1, s2, &cfg.smoother, est, gcfg.nboot, gcfg.freeze_madn, stream)?;
    Ok(p <= critical_p)
}

fn pointwise_decision(s1: &PairedSample, s2: &PairedSample, cfg: &StudyConfig, stream: RngStream) -> Result<bool> {
    let points = select_design_points(s1, s2, &cfg.smoother)?;
    // surface neighborhoods too small for the estimator as a redraw
    delta_vector(s1, s2, &points, cfg.estimator, &cfg.smoother)?;
    let r = anc_w(s1, s2, &points, cfg.estimator, cfg.alpha, cfg.nboot, &cfg.smoother, stream)?;
    Ok(r.any_rejected())
}
