//! Separate tests at each design point with Hochberg familywise control.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ResultExt, Stage};
use crate::estimators::{yuen_test, PreparedEstimator, EstimatorSpec};
use crate::rng::RngStream;
use crate::smoother::{neighborhood_values, DesignPoints, PairedSample, SmootherConfig};
use rand::Rng as _;

/// Hochberg step-up rule. Returns one rejection flag per input p-value.
pub fn hochberg_adjust(p_values: &[f64], alpha: f64) -> Result<Vec<bool>> {
    if p_values.is_empty() {
        return Err(Error::InvalidArgument("no p-values to adjust".into()));
    }
    if let Some(p) = p_values.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::InvalidArgument(format!("p-value {p} outside [0, 1]")));
    }
    let m = p_values.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| p_values[a].total_cmp(&p_values[b]));
    // largest k (1-based) with p_(k) <= alpha / (m - k + 1)
    let cutoff = (1..=m)
        .rev()
        .find(|&k| p_values[order[k - 1]] <= alpha / (m - k + 1) as f64)
        .map(|k| p_values[order[k - 1]]);
    Ok(match cutoff {
        Some(c) => p_values.iter().map(|&p| p <= c).collect(),
        None => vec![false; m],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointwiseMethod {
    Yuen,
    PercentileBootstrap,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointTest {
    pub x: f64,
    pub n1: usize,
    pub n2: usize,
    pub theta1: f64,
    pub theta2: f64,
    pub delta: f64,
    pub p_value: f64,
    /// Unadjusted 1 - alpha interval for the difference.
    pub ci_low: f64,
    pub ci_high: f64,
    pub reject_adjusted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodWResult {
    pub points: Vec<PointTest>,
    pub alpha: f64,
    pub method: PointwiseMethod,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl MethodWResult {
    pub fn any_rejected(&self) -> bool {
        self.points.iter().any(|p| p.reject_adjusted)
    }

    fn apply_hochberg(&mut self) -> Result<()> {
        let ps: Vec<f64> = self.points.iter().map(|p| p.p_value).collect();
        for (pt, r) in self.points.iter_mut().zip(hochberg_adjust(&ps, self.alpha)?) {
            pt.reject_adjusted = r;
        }
        Ok(())
    }
}

fn neighborhoods(s1: &PairedSample, s2: &PairedSample, x: f64, cfg: &SmootherConfig) -> (Vec<f64>, Vec<f64>) {
    (neighborhood_values(s1, x, cfg.span_for(1)), neighborhood_values(s2, x, cfg.span_for(2)))
}

/// Yuen's test on the neighborhood outcomes at every design point.
pub fn anc_w_trimmed(
    s1: &PairedSample,
    s2: &PairedSample,
    points: &DesignPoints,
    gamma: f64,
    alpha: f64,
    cfg: &SmootherConfig,
) -> Result<MethodWResult> {
    let mut out = MethodWResult {
        points: Vec::with_capacity(points.len()),
        alpha,
        method: PointwiseMethod::Yuen,
        warnings: points.warnings.clone(),
    };
    for &x in &points.values {
        let (y1, y2) = neighborhoods(s1, s2, x, cfg);
        let r = yuen_test(&y1, &y2, gamma, alpha).at(Stage::Pointwise)?;
        let theta1 = crate::estimators::trimmed_mean(&y1, gamma)?;
        let theta2 = crate::estimators::trimmed_mean(&y2, gamma)?;
        out.points.push(PointTest {
            x,
            n1: y1.len(),
            n2: y2.len(),
            theta1,
            theta2,
            delta: r.estimate_diff,
            p_value: r.p_value,
            ci_low: r.ci_low,
            ci_high: r.ci_high,
            reject_adjusted: false,
        });
    }
    out.apply_hochberg().at(Stage::Pointwise)?;
    Ok(out)
}

/// Percentile-bootstrap comparison of Harrell–Davis quantiles at every
/// design point. Each point resamples its own neighborhood members.
pub fn anc_w_quantile(
    s1: &PairedSample,
    s2: &PairedSample,
    points: &DesignPoints,
    q: f64,
    alpha: f64,
    nboot: usize,
    cfg: &SmootherConfig,
    stream: RngStream,
) -> Result<MethodWResult> {
    let spec = EstimatorSpec::quantile(q)?;
    if nboot < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 bootstrap samples, got {nboot}")));
    }
    if nboot < 100 {
        log::warn!("percentile bootstrap with only {nboot} samples");
    }
    let est = PreparedEstimator::new(spec, s1.len().max(s2.len()));
    let rows: Vec<Result<(PointTest, Option<String>)>> = points
        .values
        .par_iter()
        .enumerate()
        .map(|(k, &x)| {
            let (y1, y2) = neighborhoods(s1, s2, x, cfg);
            if y1.len() < 2 || y2.len() < 2 {
                return Err(Error::InsufficientData(format!("neighborhood at x = {x} has fewer than 2 points")));
            }
            let theta1 = est.estimate_in_place(&mut y1.clone());
            let theta2 = est.estimate_in_place(&mut y2.clone());
            let delta = theta1 - theta2;
            let degenerate = y1.iter().chain(&y2).all(|&v| v == y1[0]);
            if degenerate {
                let msg = format!("all outcomes equal near x = {x}; p-value set to 1");
                log::warn!("{msg}");
                let row = PointTest {
                    x,
                    n1: y1.len(),
                    n2: y2.len(),
                    theta1,
                    theta2,
                    delta,
                    p_value: 1.0,
                    ci_low: delta,
                    ci_high: delta,
                    reject_adjusted: false,
                };
                return Ok((row, Some(msg)));
            }
            let mut rng = stream.substream(k as u64).rng();
            let mut b1 = vec![0.0; y1.len()];
            let mut b2 = vec![0.0; y2.len()];
            let mut boot: Vec<f64> = (0..nboot)
                .map(|_| {
                    b1.iter_mut().for_each(|v| *v = y1[rng.random_range(0..y1.len())]);
                    b2.iter_mut().for_each(|v| *v = y2[rng.random_range(0..y2.len())]);
                    est.estimate_in_place(&mut b1) - est.estimate_in_place(&mut b2)
                })
                .collect();
            let below = boot.iter().filter(|&&d| d < 0.0).count() as f64;
            let ties = boot.iter().filter(|&&d| d == 0.0).count() as f64;
            let phat = (below + 0.5 * ties) / nboot as f64;
            let p_value = (2.0 * phat.min(1.0 - phat)).min(1.0);
            boot.sort_by(f64::total_cmp);
            let lo = ((alpha / 2.0) * nboot as f64).round() as usize;
            let hi = nboot.saturating_sub(lo + 1).max(lo.min(nboot - 1));
            Ok((
                PointTest {
                    x,
                    n1: y1.len(),
                    n2: y2.len(),
                    theta1,
                    theta2,
                    delta,
                    p_value,
                    ci_low: boot[lo.min(nboot - 1)],
                    ci_high: boot[hi],
                    reject_adjusted: false,
                },
                None,
            ))
        })
        .collect();
    let mut out = MethodWResult {
        points: Vec::with_capacity(points.len()),
        alpha,
        method: PointwiseMethod::PercentileBootstrap,
        warnings: points.warnings.clone(),
    };
    for r in rows {
        let (row, warning) = r.at(Stage::Pointwise)?;
        out.points.push(row);
        out.warnings.extend(warning);
    }
    out.apply_hochberg().at(Stage::Pointwise)?;
    Ok(out)
}

/// Dispatch on the estimator: Yuen for trimmed means, bootstrap for quantiles.
pub fn anc_w(
    s1: &PairedSample,
    s2: &PairedSample,
    points: &DesignPoints,
    spec: EstimatorSpec,
    alpha: f64,
    nboot: usize,
    cfg: &SmootherConfig,
    stream: RngStream,
) -> Result<MethodWResult> {
    match spec {
        EstimatorSpec::TrimmedMean { gamma } => anc_w_trimmed(s1, s2, points, gamma, alpha, cfg),
        EstimatorSpec::HdQuantile { q } => anc_w_quantile(s1, s2, points, q, alpha, nboot, cfg, stream),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::global::normal_pairs;
    use crate::smoother::select_design_points;

    #[test]
    fn hochberg_examples() {
        assert_eq!(hochberg_adjust(&[0.0; 4], 0.05).unwrap(), vec![true; 4]);
        assert_eq!(hochberg_adjust(&[1.0; 4], 0.05).unwrap(), vec![false; 4]);
        assert_eq!(
            hochberg_adjust(&[0.01, 0.2, 0.3, 0.4, 0.5], 0.05).unwrap(),
            vec![true, false, false, false, false]
        );
        // step-up: the largest p passing its own bound carries all smaller ones
        assert_eq!(hochberg_adjust(&[0.04, 0.03, 0.045], 0.05).unwrap(), vec![true, true, true]);
        // ties share fate
        assert_eq!(hochberg_adjust(&[0.02, 0.02, 0.9], 0.05).unwrap(), vec![true, true, false]);
        assert!(hochberg_adjust(&[], 0.05).is_err());
        assert!(hochberg_adjust(&[1.5], 0.05).is_err());
    }

    fn samples(shift: f64) -> (PairedSample, PairedSample) {
        let mut rng = RngStream::new(21).rng();
        let s1 = normal_pairs(60, &mut rng);
        let s2 = normal_pairs(60, &mut rng).shift_y(shift).unwrap();
        (s1, s2)
    }

    #[test]
    fn trimmed_identical_and_shifted() {
        let cfg = SmootherConfig::default().lenient();
        let (s1, _) = samples(0.0);
        let pts = select_design_points(&s1, &s1, &cfg).unwrap();
        let r = anc_w_trimmed(&s1, &s1, &pts, 0.2, 0.05, &cfg).unwrap();
        assert!(!r.any_rejected());

        let (s1, s2) = samples(10.0);
        let pts = select_design_points(&s1, &s2, &cfg).unwrap();
        let r = anc_w_trimmed(&s1, &s2, &pts, 0.2, 0.05, &cfg).unwrap();
        assert!(r.points.iter().all(|p| p.reject_adjusted));
    }

    #[test]
    fn quantile_identical_and_shifted() {
        let cfg = SmootherConfig::default().lenient();
        let (s1, _) = samples(0.0);
        let pts = select_design_points(&s1, &s1, &cfg).unwrap();
        let r = anc_w_quantile(&s1, &s1, &pts, 0.5, 0.05, 200, &cfg, RngStream::new(1)).unwrap();
        assert!(!r.any_rejected());
        assert!(r.points.iter().all(|p| p.p_value > 0.5));

        let (s1, s2) = samples(10.0);
        let pts = select_design_points(&s1, &s2, &cfg).unwrap();
        let run = || anc_w_quantile(&s1, &s2, &pts, 0.5, 0.05, 200, &cfg, RngStream::new(1)).unwrap();
        let r = run();
        assert!(r.points.iter().all(|p| p.reject_adjusted));
        assert_eq!(r, run());
    }

    #[test]
    fn constant_neighborhoods_get_p_one() {
        let x: Vec<f64> = (0..30).map(|i| i as f64).collect();
        let s = PairedSample::new(x, vec![1.0; 30]).unwrap();
        let cfg = SmootherConfig::default();
        let pts = select_design_points(&s, &s, &cfg).unwrap();
        let r = anc_w_quantile(&s, &s, &pts, 0.5, 0.05, 100, &cfg, RngStream::new(2)).unwrap();
        assert!(r.points.iter().all(|p| p.p_value == 1.0));
        assert!(!r.warnings.is_empty());
    }
}
