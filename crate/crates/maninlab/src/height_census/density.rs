//! Local point densities: exhaustive affine-chart solution counts over 𝔽_p,
//! reported as exact rationals count / p^dim.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::VarietySpec;
use crate::{Error, Result};

/// Exact density of chart solutions modulo p.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalDensity {
    pub p: u64,
    /// Number of chart solutions over 𝔽_p.
    pub count: u64,
    /// Dimension of the open locus; the denominator is p^dim.
    pub dim: usize,
    #[serde(with = "crate::rational::serde_ratio")]
    pub density: BigRational,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Count solutions of the affine chart (chart coordinate set to 1) over
/// 𝔽_p by exhaustive scan and divide by p^dim exactly. The scan touches
/// p^(ambient_dim) residue tuples; anything beyond `budget` is rejected up
/// front with the required budget in the message.
pub fn local_density(spec: &VarietySpec, p: u64, budget: u64) -> Result<LocalDensity> {
    spec.validate()?;
    let chart = spec.affine_chart.ok_or_else(|| {
        Error::Invalid(format!("{}: local densities need an affine chart", spec.name))
    })?;
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }

    let scan_vars: Vec<usize> = (0..spec.coords()).filter(|&i| i != chart).collect();
    let mut work: u128 = 1;
    for _ in &scan_vars {
        work = work.saturating_mul(p as u128);
    }
    if work > budget as u128 {
        return Err(Error::Budget(format!(
            "chart scan over p = {p} needs {work} evaluations, budget is {budget}"
        )));
    }

    let mut v = vec![0u64; spec.coords()];
    v[chart] = 1;
    let mut count: u64 = 0;
    let mut done = false;
    while !done {
        let member = spec.equations.iter().all(|e| e.eval_mod(&v, p) == 0)
            && spec.inequations.iter().all(|e| e.eval_mod(&v, p) != 0);
        count += member as u64;
        done = true;
        for &i in &scan_vars {
            v[i] += 1;
            if v[i] < p {
                done = false;
                break;
            }
            v[i] = 0;
        }
    }

    let mut denom = num_bigint::BigInt::from(1u8);
    for _ in 0..spec.dim_u {
        denom *= p;
    }
    Ok(LocalDensity {
        p,
        count,
        dim: spec.dim_u,
        density: BigRational::new(count.into(), denom),
    })
}
