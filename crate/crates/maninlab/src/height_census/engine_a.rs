//! Direct enumeration engine: scan every candidate integer vector in the
//! height box and test membership coordinate by coordinate. Slow but
//! transparently correct — this is the oracle the algebraic engine is
//! checked against.

use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;

use super::{BoundSpec, HeightSpec, VarietySpec};
use crate::{Error, Result};

/// Count points of height strictly below `t` by scanning the full box of
/// sign-canonical representatives (first nonzero coordinate positive).
///
/// `visit_budget` bounds the number of candidate vectors examined; the
/// worst case is estimated up front and rejected with the required budget,
/// so infeasible requests fail fast instead of running for hours.
pub fn enumerate_points_engine_a(
    spec: &VarietySpec,
    t: &BigRational,
    h: &HeightSpec,
    visit_budget: u64,
) -> Result<u64> {
    spec.validate()?;
    let bound = BoundSpec::from_threshold(t, h)?;
    let n = spec.coords();
    let b = bound.b_linf;
    if b < 1 {
        return Ok(0);
    }

    let width = 2 * (b as u128) + 1;
    let mut estimate: u128 = 0;
    for lead in 0..n {
        let mut leaves = b as u128; // positive choices of the leading coordinate
        for _ in lead + 1..n {
            leaves = leaves.saturating_mul(width);
        }
        estimate = estimate.saturating_add(leaves);
    }
    if estimate > visit_budget as u128 {
        return Err(Error::Budget(format!(
            "direct scan needs about {estimate} visits, budget is {visit_budget}"
        )));
    }

    // Canonical representatives: coordinates before `lead` vanish and the
    // coordinate at `lead` is positive. Partition work on (lead, value).
    let mut tasks: Vec<(usize, i64)> = Vec::new();
    for lead in 0..n {
        for v in 1..=b {
            tasks.push((lead, v));
        }
    }

    let total: u64 = tasks
        .par_iter()
        .map(|&(lead, value)| {
            let mut v = vec![0i64; n];
            v[lead] = value;
            let head_square = (value as i128) * (value as i128);
            if !bound.admits_square_sum(head_square) {
                return 0;
            }
            count_tail(spec, &bound, &mut v, lead + 1, value, head_square)
        })
        .sum();
    Ok(total)
}

/// Recurse over coordinates `from..n`, accumulating the running gcd and
/// sum of squares, and count members at the leaves.
fn count_tail(
    spec: &VarietySpec,
    bound: &BoundSpec,
    v: &mut Vec<i64>,
    from: usize,
    gcd_so_far: i64,
    square_sum: i128,
) -> u64 {
    if from == v.len() {
        let primitive = gcd_so_far == 1;
        return (primitive && bound.admits_square_sum(square_sum) && spec.satisfies(v)) as u64;
    }
    let mut total = 0;
    for x in -bound.b_linf..=bound.b_linf {
        let s = square_sum + (x as i128) * (x as i128);
        if !bound.admits_square_sum(s) {
            continue;
        }
        v[from] = x;
        total += count_tail(spec, bound, v, from + 1, gcd_so_far.gcd(&x), s);
    }
    v[from] = 0;
    total
}

#[cfg(test)]
mod tests {
    use super::super::{builtin_variety, make_primitive};
    use super::*;
    use num_traits::FromPrimitive;
    use std::collections::BTreeSet;

    fn rat(x: f64) -> BigRational {
        BigRational::from_f64(x).unwrap()
    }

    const BUDGET: u64 = 100_000_000;

    #[test]
    fn projective_line_below_three_halves() {
        // Height < 1.5 means max-norm exactly 1: the points
        // (1:0), (0:1), (1:1), (1:−1).
        let p1 = builtin_variety("p1").unwrap();
        let n = enumerate_points_engine_a(&p1, &rat(1.5), &HeightSpec::max(), BUDGET).unwrap();
        assert_eq!(n, 4);
    }

    #[test]
    fn projective_plane_euclidean_unit_ball() {
        // Euclidean height < 1.1 forces a single ±1 coordinate: the three
        // coordinate points.
        let p2 = builtin_variety("p2").unwrap();
        let n =
            enumerate_points_engine_a(&p2, &rat(1.1), &HeightSpec::euclidean(), BUDGET).unwrap();
        assert_eq!(n, 3);
    }

    #[test]
    fn unimodular_classes_of_sup_norm_one() {
        // 2×2 integer matrices with entries in {−1,0,1} and nonzero
        // determinant, up to sign: hand count gives 24.
        let pgl2 = builtin_variety("pgl2").unwrap();
        let n = enumerate_points_engine_a(&pgl2, &rat(1.5), &HeightSpec::max(), BUDGET).unwrap();
        assert_eq!(n, 24);
    }

    #[test]
    fn matches_bruteforce_pair_counting() {
        // Independent re-count: collect primitive representatives of every
        // nonzero vector in the box and compare set sizes.
        for d in 1..=2usize {
            let spec = builtin_variety(&format!("p{d}")).unwrap();
            for t in [1.5, 2.5, 3.5, 4.5] {
                let engine =
                    enumerate_points_engine_a(&spec, &rat(t), &HeightSpec::max(), BUDGET).unwrap();
                let b = t as i64; // box bound for half-integer thresholds
                let mut reps: BTreeSet<Vec<i64>> = BTreeSet::new();
                let n = d + 1;
                let mut v = vec![-b; n];
                loop {
                    if v.iter().any(|&x| x != 0) {
                        reps.insert(make_primitive(&v).unwrap());
                    }
                    let mut k = 0;
                    loop {
                        v[k] += 1;
                        if v[k] <= b {
                            break;
                        }
                        v[k] = -b;
                        k += 1;
                        if k == n {
                            break;
                        }
                    }
                    if k == n {
                        break;
                    }
                }
                assert_eq!(engine, reps.len() as u64, "d={d} t={t}");
            }
        }
    }

    #[test]
    fn height_one_points_have_small_coordinates() {
        // In the max norm, primitive height-1 points are exactly those with
        // all coordinates in {−1, 0, 1}.
        for d in 1..=2usize {
            let spec = builtin_variety(&format!("p{d}")).unwrap();
            let below = enumerate_points_engine_a(&spec, &rat(1.5), &HeightSpec::max(), BUDGET)
                .unwrap();
            let expected = (3u64.pow(d as u32 + 1) - 1) / 2;
            assert_eq!(below, expected, "canonical ±-classes of {{−1,0,1}}^{}", d + 1);
        }
    }

    #[test]
    fn budget_rejection_reports_requirement() {
        let p3 = builtin_variety("p3").unwrap();
        let err = enumerate_points_engine_a(&p3, &rat(100.0), &HeightSpec::max(), 10).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("budget"), "{msg}");
    }

    #[test]
    fn zero_below_smallest_height() {
        let sl2 = builtin_variety("sl2").unwrap();
        let n = enumerate_points_engine_a(&sl2, &rat(1.0), &HeightSpec::max(), BUDGET).unwrap();
        assert_eq!(n, 0, "no member has height below 1");
        let n = enumerate_points_engine_a(&sl2, &rat(1.5), &HeightSpec::max(), BUDGET).unwrap();
        assert!(n > 0, "identity matrix appears at height 1");
    }
}
