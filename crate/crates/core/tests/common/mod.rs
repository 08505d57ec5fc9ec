#![allow(dead_code)]

use statrs::distribution::{ContinuousCDF, StudentsT};
use statrs::function::beta::ln_beta;

// Gauss–Kronrod 7/15 nodes and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive Gauss–Kronrod integral of `f` over `[a, b]`. Subintervals are
/// accepted once the error estimate is below `rel` times their own value,
/// which suits the positive integrands used here.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel: f64) -> f64 {
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel: f64, depth: u32) -> f64 {
        let (v, err) = gk15(f, a, b);
        if err <= rel * v.abs() || depth == 0 || (b - a) <= 1e-15 * b.abs().max(1e-300) {
            return v;
        }
        let m = 0.5 * (a + b);
        rec(f, a, m, rel, depth - 1) + rec(f, m, b, rel, depth - 1)
    }
    if b <= a {
        return 0.0;
    }
    rec(f, a, b, rel, 40)
}

fn beta_density_unnormalized(t: f64, a: f64, b: f64) -> f64 {
    if t <= 0.0 || t >= 1.0 {
        0.0
    } else {
        ((a - 1.0) * t.ln() + (b - 1.0) * (-t).ln_1p()).exp()
    }
}

/// ∫_0^c t^(a-1)(1-t)^(b-1) dt. Dyadic pieces [c/2^(k+1), c/2^k] keep the
/// integrand tame for any a; on the last sliver [0, c/2^80] the substitution
/// t = s^(1/a) leaves an integrand that is constant to rounding.
fn left_mass(c: f64, a: f64, b: f64) -> f64 {
    let tol = 1e-14;
    let f = |t: f64| beta_density_unnormalized(t, a, b);
    let mut total = 0.0;
    let mut hi = c;
    for _ in 0..80 {
        let lo = 0.5 * hi;
        total += integrate(&f, lo, hi, tol);
        hi = lo;
    }
    let g = |s: f64| ((b - 1.0) * (-s.powf(1.0 / a)).ln_1p()).exp() / a;
    total + integrate(&g, 0.0, hi.powf(a), tol)
}

/// Unnormalized Beta(a, b) mass of `[lo, hi]`.
pub fn beta_mass_unnormalized(lo: f64, hi: f64, a: f64, b: f64) -> f64 {
    if hi <= lo {
        return 0.0;
    }
    let mid = 0.5 * (lo + hi);
    let left = if lo == 0.0 {
        left_mass(mid, a, b)
    } else {
        integrate(&|t| beta_density_unnormalized(t, a, b), lo, mid, 1e-14)
    };
    let right = if hi == 1.0 {
        left_mass(1.0 - mid, b, a)
    } else {
        integrate(&|t| beta_density_unnormalized(t, a, b), mid, hi, 1e-14)
    };
    left + right
}

/// Regularized incomplete beta by quadrature.
pub fn inc_beta_oracle(x: f64, a: f64, b: f64) -> f64 {
    let num = beta_mass_unnormalized(0.0, x, a, b);
    (num.ln() - ln_beta(a, b)).exp().min(1.0)
}

/// Harrell–Davis weights by quadrature, normalized by the total of the cells.
pub fn hd_weights_oracle(n: usize, q: f64) -> Vec<f64> {
    let m = n as f64 + 1.0;
    let (a, b) = (m * q, m * (1.0 - q));
    let cells: Vec<f64> = (1..=n)
        .map(|i| {
            let lo = if i == 1 { 0.0 } else { (i - 1) as f64 / n as f64 };
            let hi = if i == n { 1.0 } else { i as f64 / n as f64 };
            beta_mass_unnormalized(lo, hi, a, b)
        })
        .collect();
    let total: f64 = cells.iter().sum();
    cells.into_iter().map(|c| c / total).collect()
}

pub fn harrell_davis_oracle(z: &[f64], q: f64) -> f64 {
    let mut s = z.to_vec();
    s.sort_by(f64::total_cmp);
    hd_weights_oracle(s.len(), q).iter().zip(&s).map(|(w, x)| w * x).sum()
}

fn sorted(z: &[f64]) -> Vec<f64> {
    let mut s = z.to_vec();
    s.sort_by(f64::total_cmp);
    s
}

/// Mean of X_(g+1), ..., X_(n-g) with g = floor(gamma n).
pub fn trimmed_mean_brute(z: &[f64], gamma: f64) -> f64 {
    let s = sorted(z);
    let n = s.len();
    let g = (gamma * n as f64).floor() as usize;
    let mut total = 0.0;
    for i in (g + 1)..=(n - g) {
        total += s[i - 1];
    }
    total / (n - 2 * g) as f64
}

/// Winsorized sample in order-statistic order.
pub fn winsorize_brute(z: &[f64], gamma: f64) -> Vec<f64> {
    let s = sorted(z);
    let n = s.len();
    let g = (gamma * n as f64).floor() as usize;
    (0..n)
        .map(|i| {
            if i < g {
                s[g]
            } else if i > n - g - 1 {
                s[n - g - 1]
            } else {
                s[i]
            }
        })
        .collect()
}

pub fn winsorized_variance_brute(z: &[f64], gamma: f64) -> f64 {
    let w = winsorize_brute(z, gamma);
    let n = w.len();
    let mut total = 0.0;
    for v in &w {
        total += v;
    }
    let mean = total / n as f64;
    let mut ss = 0.0;
    for v in &w {
        ss += (v - mean) * (v - mean);
    }
    ss / (n - 1) as f64
}

pub struct YuenBrute {
    pub statistic: f64,
    pub df: f64,
    pub p_value: f64,
    pub ci: (f64, f64),
}

pub fn yuen_brute(z1: &[f64], z2: &[f64], gamma: f64, alpha: f64) -> YuenBrute {
    let part = |z: &[f64]| {
        let n = z.len() as f64;
        let h = n - 2.0 * (gamma * n).floor();
        let d = (n - 1.0) * winsorized_variance_brute(z, gamma) / (h * (h - 1.0));
        (trimmed_mean_brute(z, gamma), d, h)
    };
    let (t1, d1, h1) = part(z1);
    let (t2, d2, h2) = part(z2);
    let statistic = (t1 - t2) / (d1 + d2).sqrt();
    let df = (d1 + d2).powi(2) / (d1 * d1 / (h1 - 1.0) + d2 * d2 / (h2 - 1.0));
    let t = StudentsT::new(0.0, 1.0, df).unwrap();
    let p_value = 2.0 * (1.0 - t.cdf(statistic.abs()));
    let crit = t.inverse_cdf(1.0 - alpha / 2.0);
    let se = (d1 + d2).sqrt();
    YuenBrute {
        statistic,
        df,
        p_value,
        ci: (t1 - t2 - crit * se, t1 - t2 + crit * se),
    }
}

/// Independent g-and-h transcription.
pub fn gh_oracle(z: f64, g: f64, h: f64) -> f64 {
    let base = if g == 0.0 { z } else { ((g * z).exp() - 1.0) / g };
    base * (h * z * z / 2.0).exp()
}
