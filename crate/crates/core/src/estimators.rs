//! Location and scale estimators plus Yuen's two-sample trimmed-mean test.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{inc_beta_unchecked, student_t_quantile, student_t_two_sided};

/// Normal-consistency constant for the MAD.
pub const MADN_CONSTANT: f64 = 0.6745;

/// The location functional applied inside each neighborhood.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EstimatorSpec {
    /// γ-trimmed mean, `0 <= gamma < 0.5`.
    TrimmedMean { gamma: f64 },
    /// Harrell–Davis estimate of the `q`th quantile, `0 < q < 1`.
    HdQuantile { q: f64 },
}

impl EstimatorSpec {
    pub fn trimmed(gamma: f64) -> Result<Self> {
        let spec = EstimatorSpec::TrimmedMean { gamma };
        spec.validate()?;
        Ok(spec)
    }

    pub fn quantile(q: f64) -> Result<Self> {
        let spec = EstimatorSpec::HdQuantile { q };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            EstimatorSpec::TrimmedMean { gamma } => check_gamma(gamma),
            EstimatorSpec::HdQuantile { q } => check_q(q),
        }
    }

    /// Smallest neighborhood on which the estimator is computed during
    /// bootstrap re-estimation.
    pub fn min_resample_size(&self, n: usize) -> usize {
        match *self {
            EstimatorSpec::TrimmedMean { gamma } => {
                let g = (gamma * n as f64).floor() as usize;
                2.max(2 * g + 1)
            }
            EstimatorSpec::HdQuantile { .. } => 2,
        }
    }
}

impl Default for EstimatorSpec {
    fn default() -> Self {
        EstimatorSpec::TrimmedMean { gamma: 0.2 }
    }
}

impl fmt::Display for EstimatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EstimatorSpec::TrimmedMean { gamma } => write!(f, "trimmed:{gamma}"),
            EstimatorSpec::HdQuantile { q } => write!(f, "quantile:{q}"),
        }
    }
}

impl FromStr for EstimatorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, value) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("expected kind:value, got {s:?}")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad estimator parameter in {s:?}")))?;
        match kind.trim() {
            "trimmed" | "tmean" => EstimatorSpec::trimmed(value),
            "quantile" | "hd" => EstimatorSpec::quantile(value),
            other => Err(Error::InvalidArgument(format!("unknown estimator {other:?}"))),
        }
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if (0.0..0.5).contains(&gamma) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("trimming proportion {gamma} outside [0, 0.5)")))
    }
}

fn check_q(q: f64) -> Result<()> {
    if q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("quantile {q} outside (0, 1)")))
    }
}

fn check_nonempty(z: &[f64]) -> Result<()> {
    if z.is_empty() {
        Err(Error::InvalidArgument("empty sample".into()))
    } else {
        Ok(())
    }
}

pub(crate) fn sort(z: &mut [f64]) {
    z.sort_unstable_by(f64::total_cmp);
}

fn sorted_copy(z: &[f64]) -> Vec<f64> {
    let mut v = z.to_vec();
    // stable, so tied order statistics keep input order
    v.sort_by(f64::total_cmp);
    v
}

#[inline]
fn trim_count(n: usize, gamma: f64) -> usize {
    (gamma * n as f64).floor() as usize
}

pub(crate) fn trimmed_mean_sorted(sorted: &[f64], gamma: f64) -> f64 {
    let n = sorted.len();
    let g = trim_count(n, gamma);
    let kept = &sorted[g..n - g];
    kept.iter().sum::<f64>() / kept.len() as f64
}

pub fn trimmed_mean(z: &[f64], gamma: f64) -> Result<f64> {
    check_nonempty(z)?;
    check_gamma(gamma)?;
    Ok(trimmed_mean_sorted(&sorted_copy(z), gamma))
}

fn winsorized_variance_sorted(sorted: &[f64], gamma: f64) -> f64 {
    let n = sorted.len();
    let g = trim_count(n, gamma);
    let lo = sorted[g];
    let hi = sorted[n - g - 1];
    let w = |v: f64| v.clamp(lo, hi);
    let mean = sorted.iter().map(|&v| w(v)).sum::<f64>() / n as f64;
    sorted.iter().map(|&v| (w(v) - mean).powi(2)).sum::<f64>() / (n - 1) as f64
}

/// Sample variance after winsorizing `⌊γn⌋` observations in each tail.
pub fn winsorized_variance(z: &[f64], gamma: f64) -> Result<f64> {
    check_gamma(gamma)?;
    if z.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "winsorized variance needs at least 2 observations, got {}",
            z.len()
        )));
    }
    Ok(winsorized_variance_sorted(&sorted_copy(z), gamma))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct YuenResult {
    pub statistic: f64,
    pub degrees_of_freedom: f64,
    pub p_value: f64,
    /// Trimmed mean of the first sample minus that of the second.
    pub estimate_diff: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Yuen's heteroscedastic test for equal trimmed means, two-sided.
pub fn yuen_test(z1: &[f64], z2: &[f64], gamma: f64, alpha: f64) -> Result<YuenResult> {
    check_gamma(gamma)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidArgument(format!("alpha {alpha} outside (0, 1)")));
    }
    let s1 = sorted_copy(z1);
    let s2 = sorted_copy(z2);
    let part = |s: &[f64]| -> Result<(f64, f64, f64)> {
        let n = s.len();
        let h = n.saturating_sub(2 * trim_count(n, gamma));
        if h < 2 {
            return Err(Error::InsufficientData(format!(
                "Yuen's test needs an effective sample size of at least 2 (n = {n}, kept {h})"
            )));
        }
        let h = h as f64;
        let d = winsorized_variance_sorted(s, gamma) * (n as f64 - 1.0) / (h * (h - 1.0));
        Ok((trimmed_mean_sorted(s, gamma), d, h))
    };
    let (t1, d1, h1) = part(&s1)?;
    let (t2, d2, h2) = part(&s2)?;
    let diff = t1 - t2;
    let se = (d1 + d2).sqrt();
    let mut df = (d1 + d2).powi(2) / (d1 * d1 / (h1 - 1.0) + d2 * d2 / (h2 - 1.0));
    if !df.is_finite() {
        df = h1 + h2 - 2.0;
    }
    let (statistic, p_value) = if se > 0.0 {
        let t = diff / se;
        (t, student_t_two_sided(t, df))
    } else if diff == 0.0 {
        (0.0, 1.0)
    } else {
        (diff.signum() * f64::INFINITY, 0.0)
    };
    let crit = student_t_quantile(1.0 - alpha / 2.0, df);
    Ok(YuenResult {
        statistic,
        degrees_of_freedom: df,
        p_value,
        estimate_diff: diff,
        ci_low: diff - crit * se,
        ci_high: diff + crit * se,
    })
}

/// Harrell–Davis weights: the Beta((n+1)q, (n+1)(1-q)) probability of each
/// cell `[(i-1)/n, i/n]`.
pub fn hd_weights(n: usize, q: f64) -> Result<Vec<f64>> {
    check_q(q)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    Ok(hd_weights_unchecked(n, q))
}

pub(crate) fn hd_weights_unchecked(n: usize, q: f64) -> Vec<f64> {
    let m = n as f64 + 1.0;
    let (a, b) = (m * q, m * (1.0 - q));
    let mut prev = 0.0;
    (1..=n)
        .map(|i| {
            let cur = if i == n {
                1.0
            } else {
                inc_beta_unchecked(i as f64 / n as f64, a, b)
            };
            let w = (cur - prev).max(0.0);
            prev = cur;
            w
        })
        .collect()
}

pub fn harrell_davis(z: &[f64], q: f64) -> Result<f64> {
    check_nonempty(z)?;
    let w = hd_weights(z.len(), q)?;
    Ok(dot(&w, &sorted_copy(z)))
}

#[inline]
fn dot(w: &[f64], sorted: &[f64]) -> f64 {
    w.iter().zip(sorted).map(|(w, v)| w * v).sum()
}

pub fn apply_estimator(z: &[f64], spec: EstimatorSpec) -> Result<f64> {
    match spec {
        EstimatorSpec::TrimmedMean { gamma } => trimmed_mean(z, gamma),
        EstimatorSpec::HdQuantile { q } => harrell_davis(z, q),
    }
}

/// An estimator with its Harrell–Davis weights precomputed for every sample
/// size up to a bound. Used on the bootstrap hot path.
#[derive(Debug, Clone)]
pub(crate) struct PreparedEstimator {
    spec: EstimatorSpec,
    hd_table: Vec<Vec<f64>>,
}

impl PreparedEstimator {
    pub fn new(spec: EstimatorSpec, max_n: usize) -> Self {
        let hd_table = match spec {
            EstimatorSpec::HdQuantile { q } => {
                (0..=max_n).map(|n| if n == 0 { Vec::new() } else { hd_weights_unchecked(n, q) }).collect()
            }
            EstimatorSpec::TrimmedMean { .. } => Vec::new(),
        };
        Self { spec, hd_table }
    }

    pub fn spec(&self) -> EstimatorSpec {
        self.spec
    }

    /// Estimate on `buf` (nonempty), sorting it in place.
    pub fn estimate_in_place(&self, buf: &mut [f64]) -> f64 {
        sort(buf);
        match self.spec {
            EstimatorSpec::TrimmedMean { gamma } => trimmed_mean_sorted(buf, gamma),
            EstimatorSpec::HdQuantile { q } => match self.hd_table.get(buf.len()) {
                Some(w) => dot(w, buf),
                None => dot(&hd_weights_unchecked(buf.len(), q), buf),
            },
        }
    }
}

pub(crate) fn median_in_place(buf: &mut [f64]) -> f64 {
    let n = buf.len();
    let mid = n / 2;
    let (lower, m, _) = buf.select_nth_unstable_by(mid, f64::total_cmp);
    let m = *m;
    if n % 2 == 1 {
        m
    } else {
        let below = lower.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        0.5 * (below + m)
    }
}

pub fn median(z: &[f64]) -> Result<f64> {
    check_nonempty(z)?;
    Ok(median_in_place(&mut z.to_vec()))
}

/// Median absolute deviation from the median; `scratch` is overwritten.
pub(crate) fn mad_with(z: &[f64], scratch: &mut Vec<f64>) -> f64 {
    scratch.clear();
    scratch.extend_from_slice(z);
    let m = median_in_place(scratch);
    scratch.clear();
    scratch.extend(z.iter().map(|v| (v - m).abs()));
    median_in_place(scratch)
}

pub fn mad(z: &[f64]) -> Result<f64> {
    check_nonempty(z)?;
    Ok(mad_with(z, &mut Vec::with_capacity(z.len())))
}

pub fn madn(z: &[f64]) -> Result<f64> {
    Ok(mad(z)? / MADN_CONSTANT)
}

/// Lower and upper ideal fourths.
pub fn ideal_fourths(z: &[f64]) -> Result<(f64, f64)> {
    check_nonempty(z)?;
    let s = sorted_copy(z);
    let n = s.len();
    let pos = n as f64 / 4.0 + 5.0 / 12.0;
    let j = pos.floor() as usize; // 1-based
    let h = pos - j as f64;
    let at = |i: usize| s[(i.clamp(1, n)) - 1];
    let lower = (1.0 - h) * at(j) + h * at(j + 1);
    let k = n + 1 - j;
    let upper = (1.0 - h) * at(k) + h * at(k.saturating_sub(1));
    Ok((lower, upper))
}

/// Indices of values outside the boxplot fences `[Q1 - 1.5 IQR, Q3 + 1.5 IQR]`,
/// with quartiles estimated by the ideal fourths.
pub fn boxplot_outlier_indices(z: &[f64]) -> Result<Vec<usize>> {
    if z.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "boxplot rule needs at least 4 observations, got {}",
            z.len()
        )));
    }
    let (q1, q3) = ideal_fourths(z)?;
    let iqr = q3 - q1;
    let (lo, hi) = (q1 - 1.5 * iqr, q3 + 1.5 * iqr);
    Ok(z.iter()
        .enumerate()
        .filter(|(_, &v)| v < lo || v > hi)
        .map(|(i, _)| i)
        .collect())
}
