//! Running-interval smoother: neighborhoods, comparability, design points.
//!
//! The neighborhood of `x` in a group is every observation whose covariate
//! lies within `span * MADN` of `x` (closed interval), where MADN is the
//! normalized MAD of that group's covariate. Two groups are comparable at
//! `x` when both neighborhoods hold at least `min_neighbors` points.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{apply_estimator, ideal_fourths, mad_with, EstimatorSpec, MADN_CONSTANT};

/// One group's `(covariate, outcome)` observations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSample")]
pub struct PairedSample {
    x: Vec<f64>,
    y: Vec<f64>,
    #[serde(skip)]
    madn: f64,
}

#[derive(Deserialize)]
struct RawSample {
    x: Vec<f64>,
    y: Vec<f64>,
}

impl TryFrom<RawSample> for PairedSample {
    type Error = Error;
    fn try_from(raw: RawSample) -> Result<Self> {
        PairedSample::new(raw.x, raw.y)
    }
}

impl PairedSample {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::InvalidArgument(format!(
                "covariate and outcome lengths differ ({} vs {})",
                x.len(),
                y.len()
            )));
        }
        if x.is_empty() {
            return Err(Error::InsufficientData("sample has no observations".into()));
        }
        if x.iter().chain(&y).any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("sample contains non-finite values".into()));
        }
        let madn = mad_with(&x, &mut Vec::with_capacity(x.len())) / MADN_CONSTANT;
        Ok(Self { x, y, madn })
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let (x, y) = pairs.into_iter().unzip();
        Self::new(x, y)
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// MADN of the covariate.
    pub fn madn(&self) -> f64 {
        self.madn
    }

    /// Same sample with `dy` added to every outcome.
    pub fn shift_y(&self, dy: f64) -> Result<Self> {
        Self::new(self.x.clone(), self.y.iter().map(|v| v + dy).collect())
    }

    /// Drop the observations at `indices`.
    pub fn without(&self, indices: &[usize]) -> Result<Self> {
        let keep = |i: &usize| !indices.contains(i);
        let x = (0..self.len()).filter(keep).map(|i| self.x[i]).collect();
        let y = (0..self.len()).filter(keep).map(|i| self.y[i]).collect();
        Self::new(x, y)
    }
}

/// How the covariate values to compare at are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointRule {
    /// Five points from the comparable range of group 1 by index halving.
    #[default]
    FivePoint,
    /// The three quartiles of group 1's covariate.
    QuartilePoints,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmootherConfig {
    pub span: f64,
    /// Span for group 2 when it differs from group 1's.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span2: Option<f64>,
    pub min_neighbors: usize,
    pub num_points: usize,
    #[serde(default)]
    pub point_rule: PointRule,
    /// Fail when an interior design point is not comparable; otherwise warn.
    #[serde(default = "default_true")]
    pub strict_comparability: bool,
}

fn default_true() -> bool {
    true
}

impl Default for SmootherConfig {
    fn default() -> Self {
        Self {
            span: 1.0,
            span2: None,
            min_neighbors: 12,
            num_points: 5,
            point_rule: PointRule::FivePoint,
            strict_comparability: true,
        }
    }
}

impl SmootherConfig {
    pub fn with_span(mut self, span: f64) -> Self {
        self.span = span;
        self
    }

    pub fn with_min_neighbors(mut self, min_neighbors: usize) -> Self {
        self.min_neighbors = min_neighbors;
        self
    }

    pub fn with_quartile_points(mut self) -> Self {
        self.point_rule = PointRule::QuartilePoints;
        self.num_points = 3;
        self
    }

    pub fn lenient(mut self) -> Self {
        self.strict_comparability = false;
        self
    }

    /// Span for group `1` or `2`.
    pub fn span_for(&self, group: usize) -> f64 {
        match group {
            2 => self.span2.unwrap_or(self.span),
            _ => self.span,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for s in [Some(self.span), self.span2].into_iter().flatten() {
            if !(s > 0.0) {
                return Err(Error::InvalidArgument(format!("span must be positive, got {s}")));
            }
        }
        if self.min_neighbors < 2 {
            return Err(Error::InvalidArgument(format!(
                "min_neighbors must be at least 2, got {}",
                self.min_neighbors
            )));
        }
        let expected = match self.point_rule {
            PointRule::FivePoint => 5,
            PointRule::QuartilePoints => 3,
        };
        if self.num_points != expected {
            return Err(Error::InvalidArgument(format!(
                "{:?} selects {expected} points; num_points = {} is not supported",
                self.point_rule, self.num_points
            )));
        }
        Ok(())
    }
}

/// Covariate values at which the groups are compared.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignPoints {
    pub values: Vec<f64>,
    /// Zero-based positions in group 1's ascending covariates. For quartile
    /// points, the largest position not exceeding the quartile.
    pub source_indices: Vec<usize>,
    pub rule: PointRule,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl DesignPoints {
    /// Points chosen by the caller rather than from data.
    pub fn fixed(values: Vec<f64>) -> Self {
        Self {
            source_indices: Vec::new(),
            values,
            rule: PointRule::FivePoint,
            warnings: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[inline]
pub(crate) fn within(xi: f64, x0: f64, radius: f64) -> bool {
    (xi - x0).abs() <= radius
}

/// Indices `i` with `|x_i - x0| <= span * madn_x`.
pub fn neighborhood(x_all: &[f64], x0: f64, span: f64, madn_x: f64) -> Vec<usize> {
    let radius = span * madn_x;
    x_all
        .iter()
        .enumerate()
        .filter(|(_, &xi)| within(xi, x0, radius))
        .map(|(i, _)| i)
        .collect()
}

pub(crate) fn count_within(x_all: &[f64], x0: f64, radius: f64) -> usize {
    x_all.iter().filter(|&&xi| within(xi, x0, radius)).count()
}

/// `N(x0)`: the neighborhood size of `x0` in `sample`.
pub fn neighborhood_count(sample: &PairedSample, x0: f64, span: f64) -> usize {
    count_within(&sample.x, x0, span * sample.madn)
}

pub fn comparable(s1: &PairedSample, s2: &PairedSample, x0: f64, cfg: &SmootherConfig) -> bool {
    neighborhood_count(s1, x0, cfg.span_for(1)) >= cfg.min_neighbors
        && neighborhood_count(s2, x0, cfg.span_for(2)) >= cfg.min_neighbors
}

/// Choose the design points from group 1's covariates.
pub fn select_design_points(s1: &PairedSample, s2: &PairedSample, cfg: &SmootherConfig) -> Result<DesignPoints> {
    cfg.validate()?;
    let mut sorted = s1.x.clone();
    sorted.sort_by(f64::total_cmp);
    let is_comparable = |x0: f64| comparable(s1, s2, x0, cfg);

    let (values, source_indices) = match cfg.point_rule {
        PointRule::FivePoint => {
            let first = sorted.iter().position(|&x| is_comparable(x)).ok_or_else(|| {
                Error::NotComparable(format!(
                    "no covariate value of group 1 has at least {} neighbors in both groups",
                    cfg.min_neighbors
                ))
            })?;
            let last = sorted
                .iter()
                .rposition(|&x| is_comparable(x))
                .expect("a comparable point exists");
            if last - first < 4 {
                return Err(Error::InsufficientSpread(format!(
                    "comparable range spans positions {first}..={last}; five distinct positions are needed"
                )));
            }
            let mid = (first + last) / 2;
            let idx = vec![first, (first + mid) / 2, mid, (mid + last) / 2, last];
            (idx.iter().map(|&i| sorted[i]).collect::<Vec<_>>(), idx)
        }
        PointRule::QuartilePoints => {
            let (q1, q3) = ideal_fourths(&sorted)?;
            let n = sorted.len();
            let med = if n % 2 == 1 {
                sorted[n / 2]
            } else {
                0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
            };
            let vals = vec![q1, med, q3];
            let idx = vals
                .iter()
                .map(|&v| sorted.iter().rposition(|&s| s <= v).unwrap_or(0))
                .collect();
            (vals, idx)
        }
    };

    let mut warnings = Vec::new();
    let failing: Vec<String> = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| !is_comparable(v))
        .map(|(k, &v)| {
            format!(
                "x{} = {v} (N1 = {}, N2 = {})",
                k + 1,
                neighborhood_count(s1, v, cfg.span_for(1)),
                neighborhood_count(s2, v, cfg.span_for(2))
            )
        })
        .collect();
    if !failing.is_empty() {
        let msg = format!(
            "design points below {} neighbors: {}",
            cfg.min_neighbors,
            failing.join(", ")
        );
        if cfg.strict_comparability {
            return Err(Error::NotComparable(msg));
        }
        log::warn!("{msg}");
        warnings.push(msg);
    }
    if values.windows(2).any(|w| w[0] == w[1]) {
        let msg = "design points are not all distinct (tied covariate values)".to_string();
        log::warn!("{msg}");
        warnings.push(msg);
    }

    Ok(DesignPoints {
        values,
        source_indices,
        rule: cfg.point_rule,
        warnings,
    })
}

/// Location estimate of the outcomes in the neighborhood of `x0`; `None`
/// when fewer than two observations fall inside it.
pub fn fitted_value(sample: &PairedSample, x0: f64, spec: EstimatorSpec, span: f64) -> Option<f64> {
    let ys = neighborhood_values(sample, x0, span);
    if ys.len() < 2 {
        return None;
    }
    apply_estimator(&ys, spec).ok()
}

pub(crate) fn neighborhood_values(sample: &PairedSample, x0: f64, span: f64) -> Vec<f64> {
    let radius = span * sample.madn;
    sample
        .x
        .iter()
        .zip(&sample.y)
        .filter(|(&xi, _)| within(xi, x0, radius))
        .map(|(_, &yi)| yi)
        .collect()
}

/// Fitted values over a grid of covariate values.
pub fn smoother_curve(sample: &PairedSample, grid: &[f64], spec: EstimatorSpec, span: f64) -> Vec<(f64, Option<f64>)> {
    grid.iter().map(|&x0| (x0, fitted_value(sample, x0, spec, span))).collect()
}
