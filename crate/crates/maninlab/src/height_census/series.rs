//! Counting series N(T) over a geometric ladder of thresholds, CSV
//! interchange, and least-squares recovery of growth exponents from the
//! model N ≈ c · T^a · (log T)^{b−1}.

use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::{enumerate_points_engine_b, HeightSpec, VarietySpec};
use crate::{Error, Result};

/// One (threshold, count) pair; the threshold is exact.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesSample {
    #[serde(with = "crate::rational::serde_ratio")]
    pub t: BigRational,
    pub n: u64,
}

/// A monotone counting series: strictly increasing thresholds with
/// nondecreasing counts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountSeries {
    pub samples: Vec<SeriesSample>,
}

impl CountSeries {
    pub fn new(samples: Vec<SeriesSample>) -> Result<Self> {
        for w in samples.windows(2) {
            if w[0].t >= w[1].t {
                return Err(Error::Invalid("thresholds must strictly increase".into()));
            }
            if w[0].n > w[1].n {
                return Err(Error::Invalid(
                    "counts must be nondecreasing in the threshold".into(),
                ));
            }
        }
        Ok(CountSeries { samples })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Half-integer sampling ladder: start at 5/2, multiply by roughly 1.3
/// (rounded to the nearest half), always advancing by at least 1/2, up to
/// and including thresholds ≤ t_max. Requires t_max > 2.
pub fn sample_thresholds(t_max: &BigRational) -> Result<Vec<BigRational>> {
    if *t_max <= BigRational::from_u64(2).unwrap() {
        return Err(Error::Invalid("maximum threshold must exceed 2".into()));
    }
    let mut out = Vec::new();
    let mut half: u64 = 5; // thresholds stored as halves: 5 ↦ 5/2
    loop {
        let t = BigRational::new(half.into(), 2.into());
        if t > *t_max {
            break;
        }
        out.push(t);
        half = (half + 1).max((13 * half + 5) / 10);
    }
    Ok(out)
}

/// Count points at every ladder threshold with the algebraic engine.
pub fn count_series(
    spec: &VarietySpec,
    t_max: &BigRational,
    h: &HeightSpec,
    work_budget: u64,
) -> Result<CountSeries> {
    let mut samples = Vec::new();
    for t in sample_thresholds(t_max)? {
        let n = enumerate_points_engine_b(spec, &t, h, work_budget)?;
        samples.push(SeriesSample { t, n });
    }
    CountSeries::new(samples)
}

/// Render as `T,N` comma-separated rows with a header.
pub fn series_to_csv(series: &CountSeries) -> String {
    let mut out = String::from("T,N\n");
    for s in &series.samples {
        let t = s.t.to_f64().unwrap_or(f64::NAN);
        out.push_str(&format!("{},{}\n", t, s.n));
    }
    out
}

/// Parse `T,N` rows (optional header) back into a series.
pub fn parse_series_csv(text: &str) -> Result<CountSeries> {
    let mut samples = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.eq_ignore_ascii_case("t,n") {
            continue;
        }
        let mut parts = line.split(',');
        let (t_str, n_str) = match (parts.next(), parts.next(), parts.next()) {
            (Some(t), Some(n), None) => (t.trim(), n.trim()),
            _ => {
                return Err(Error::Invalid(format!(
                    "line {}: expected two comma-separated fields",
                    lineno + 1
                )))
            }
        };
        let t = crate::rational::parse_rational(t_str)
            .map_err(|e| Error::Invalid(format!("line {}: {e}", lineno + 1)))?;
        let n: u64 = n_str
            .parse()
            .map_err(|e| Error::Invalid(format!("line {}: bad count: {e}", lineno + 1)))?;
        samples.push(SeriesSample { t, n });
    }
    CountSeries::new(samples)
}

/// Least-squares estimates for N ≈ c · T^a · (log T)^{b−1}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub a_hat: f64,
    pub b_hat: f64,
    /// Multiplicative constant c of the fitted model.
    pub c_hat: f64,
    /// Root-mean-square residual of log N across the fitted window.
    pub residual: f64,
    pub samples_used: usize,
}

/// Fraction of the usable samples (counted from the tail) fitted by default.
pub const DEFAULT_FIT_WINDOW: f64 = 0.5;

/// Fit log N = log c + a·log T + (b−1)·log log T on the trailing
/// `window` fraction of the usable samples (N > 0 and T > e, so both
/// logarithms are positive). Needs at least six usable samples.
pub fn fit_exponents(series: &CountSeries, window: f64) -> Result<FitResult> {
    if !(window > 0.0 && window <= 1.0) {
        return Err(Error::Invalid("fit window must lie in (0, 1]".into()));
    }
    let usable: Vec<(f64, f64)> = series
        .samples
        .iter()
        .filter_map(|s| {
            let t = s.t.to_f64()?;
            (s.n > 0 && t > std::f64::consts::E).then(|| (t, s.n as f64))
        })
        .collect();
    let keep = ((usable.len() as f64) * window).ceil() as usize;
    let tail = &usable[usable.len().saturating_sub(keep)..];
    if tail.len() < 6 {
        return Err(Error::Invalid(format!(
            "need at least 6 usable samples in the fit window, have {}",
            tail.len()
        )));
    }

    // Least squares for y = c0 + a·x1 + (b−1)·x2, solved by QR so the
    // near-collinearity of log T and log log T over a geometric ladder
    // does not wash out the exponents.
    let rows: Vec<([f64; 3], f64)> =
        tail.iter().map(|&(t, n)| ([1.0, t.ln(), t.ln().ln()], n.ln())).collect();
    let sol = least_squares_qr(&rows)
        .ok_or_else(|| Error::Invalid("degenerate design matrix in exponent fit".into()))?;

    let mut ss = 0.0;
    for &(t, n) in tail {
        let pred = sol[0] + sol[1] * t.ln() + sol[2] * t.ln().ln();
        let r = n.ln() - pred;
        ss += r * r;
    }
    Ok(FitResult {
        a_hat: sol[1],
        b_hat: 1.0 + sol[2],
        c_hat: sol[0].exp(),
        residual: (ss / tail.len() as f64).sqrt(),
        samples_used: tail.len(),
    })
}

/// Least squares for rows (x, y) with three regressors, via modified
/// Gram–Schmidt QR; None when a column is numerically dependent.
fn least_squares_qr(rows: &[([f64; 3], f64)]) -> Option<[f64; 3]> {
    let n = rows.len();
    let mut q: Vec<Vec<f64>> = (0..3).map(|j| rows.iter().map(|(x, _)| x[j]).collect()).collect();
    let mut r = [[0.0f64; 3]; 3];
    for j in 0..3 {
        for i in 0..j {
            let dot: f64 = (0..n).map(|k| q[i][k] * q[j][k]).sum();
            r[i][j] = dot;
            for k in 0..n {
                q[j][k] -= dot * q[i][k];
            }
        }
        let norm: f64 = (0..n).map(|k| q[j][k] * q[j][k]).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return None;
        }
        r[j][j] = norm;
        for k in 0..n {
            q[j][k] /= norm;
        }
    }
    let d: Vec<f64> = (0..3)
        .map(|j| (0..n).map(|k| q[j][k] * rows[k].1).sum())
        .collect();
    let mut out = [0.0f64; 3];
    for j in (0..3).rev() {
        let mut v = d[j];
        for i in j + 1..3 {
            v -= r[j][i] * out[i];
        }
        out[j] = v / r[j][j];
    }
    Some(out)
}

/// Exact synthetic series for tests and calibration: N(T) = round(c · T^a ·
/// (log T)^{b−1}) over a geometric integer ladder.
pub fn synthetic_series(a: f64, b: f64, c: f64, t_start: u64, steps: usize) -> Result<CountSeries> {
    let mut samples = Vec::new();
    let mut t = t_start as f64;
    for _ in 0..steps {
        let ti = t.round() as u64;
        let n = (c * (ti as f64).powf(a) * (ti as f64).ln().powf(b - 1.0)).round();
        if !(n.is_finite() && n >= 0.0 && n <= u64::MAX as f64) {
            return Err(Error::Invalid("synthetic count out of range".into()));
        }
        samples.push(SeriesSample {
            t: BigRational::from_u64(ti).unwrap(),
            n: n as u64,
        });
        t *= 1.3;
    }
    CountSeries::new(samples)
}

#[cfg(test)]
mod tests {
    use super::super::{builtin_variety, enumerate_points_engine_a};
    use super::*;

    fn halves(nums: &[u64]) -> Vec<BigRational> {
        nums.iter().map(|&h| BigRational::new(h.into(), 2.into())).collect()
    }

    #[test]
    fn ladder_shape() {
        let ts = sample_thresholds(&BigRational::from_u64(20).unwrap()).unwrap();
        assert_eq!(&ts[..8], &halves(&[5, 7, 9, 12, 16, 21, 27, 35])[..]);
        for w in ts.windows(2) {
            assert!(w[0] < w[1]);
            let ratio = w[1].to_f64().unwrap() / w[0].to_f64().unwrap();
            assert!(ratio <= 1.45, "ratio {ratio}");
        }
        assert!(*ts.last().unwrap() <= BigRational::from_u64(20).unwrap());
        assert!(sample_thresholds(&BigRational::from_u64(2).unwrap()).is_err());
    }

    #[test]
    fn series_matches_direct_engine() {
        let p1 = builtin_variety("p1").unwrap();
        let h = HeightSpec::max();
        let series =
            count_series(&p1, &BigRational::from_u64(20).unwrap(), &h, 1_000_000_000).unwrap();
        assert!(series.len() >= 8);
        for s in &series.samples {
            let direct = enumerate_points_engine_a(&p1, &s.t, &h, 100_000_000).unwrap();
            assert_eq!(s.n, direct, "at t = {}", s.t);
        }
    }

    #[test]
    fn monotonicity_enforced() {
        let bad = vec![
            SeriesSample { t: BigRational::from_u64(3).unwrap(), n: 10 },
            SeriesSample { t: BigRational::from_u64(4).unwrap(), n: 9 },
        ];
        assert!(CountSeries::new(bad).is_err());
        let unordered = vec![
            SeriesSample { t: BigRational::from_u64(4).unwrap(), n: 1 },
            SeriesSample { t: BigRational::from_u64(3).unwrap(), n: 2 },
        ];
        assert!(CountSeries::new(unordered).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let series = CountSeries::new(vec![
            SeriesSample { t: BigRational::new(5.into(), 2.into()), n: 4 },
            SeriesSample { t: BigRational::from_u64(4).unwrap(), n: 16 },
        ])
        .unwrap();
        let csv = series_to_csv(&series);
        assert_eq!(csv, "T,N\n2.5,4\n4,16\n");
        let back = parse_series_csv(&csv).unwrap();
        assert_eq!(series, back);
        assert!(parse_series_csv("T,N\n1,2,3\n").is_err());
    }

    #[test]
    fn json_round_trip() {
        let series = CountSeries::new(vec![SeriesSample {
            t: BigRational::new(7.into(), 2.into()),
            n: 12,
        }])
        .unwrap();
        let s = serde_json::to_string(&series).unwrap();
        assert_eq!(s, r#"{"samples":[{"t":"7/2","n":12}]}"#);
        let back: CountSeries = serde_json::from_str(&s).unwrap();
        assert_eq!(series, back);
    }

    #[test]
    fn fit_recovers_pure_power_law() {
        let series = synthetic_series(2.0, 1.0, 5.0, 1000, 12).unwrap();
        let fit = fit_exponents(&series, DEFAULT_FIT_WINDOW).unwrap();
        assert!((fit.a_hat - 2.0).abs() < 1e-6, "a_hat = {}", fit.a_hat);
        assert!((fit.b_hat - 1.0).abs() < 1e-6, "b_hat = {}", fit.b_hat);
        assert!((fit.c_hat - 5.0).abs() < 1e-4, "c_hat = {}", fit.c_hat);
        assert!(fit.residual < 1e-9);
    }

    #[test]
    fn fit_recovers_logarithmic_factor() {
        let series = synthetic_series(3.0, 2.0, 2.0, 1000, 12).unwrap();
        let fit = fit_exponents(&series, DEFAULT_FIT_WINDOW).unwrap();
        assert!((fit.a_hat - 3.0).abs() < 1e-6, "a_hat = {}", fit.a_hat);
        assert!((fit.b_hat - 2.0).abs() < 1e-6, "b_hat = {}", fit.b_hat);
    }

    #[test]
    fn fit_requires_enough_samples() {
        let series = synthetic_series(2.0, 1.0, 5.0, 1000, 4).unwrap();
        assert!(fit_exponents(&series, 1.0).is_err());
        let series = synthetic_series(2.0, 1.0, 5.0, 1000, 12).unwrap();
        assert!(fit_exponents(&series, 0.0).is_err());
        assert!(fit_exponents(&series, 1.5).is_err());
    }
}
