//! Algebraic counting engine. Primitivity is handled by Möbius inversion
//! over scaled boxes, open conditions by inclusion–exclusion, and the
//! resulting closed systems are counted by closed forms, product-count
//! convolutions, or constraint-propagating enumeration — never by scanning
//! the full ambient box. Completely independent of the direct engine.

use std::collections::HashMap;

use num_rational::BigRational;

use super::poly::{disjoint_form, FormTerm, Poly};
use super::{BoundSpec, HeightSpec, VarietySpec};
use crate::{Error, Result};

/// Count points of height strictly below `t` via Möbius inversion and
/// algebraic box counts. `work_budget` bounds the abstract step count of
/// the underlying strategies; requests that would exceed it fail with the
/// budget error instead of stalling.
pub fn enumerate_points_engine_b(
    spec: &VarietySpec,
    t: &BigRational,
    h: &HeightSpec,
    work_budget: u64,
) -> Result<u64> {
    spec.validate()?;
    let bound = BoundSpec::from_threshold(t, h)?;
    if bound.b_linf < 1 {
        return Ok(0);
    }
    let pieces: Vec<(Vec<Poly>, i64)> = match &spec.engine_b_union {
        Some(u) => u.iter().map(|p| (p.equations.clone(), p.sign)).collect(),
        None => vec![(spec.equations.clone(), 1)],
    };
    let opens = spec.open_conditions();
    if opens.len() > 20 {
        return Err(Error::Budget("too many open conditions for inclusion–exclusion".into()));
    }
    let mobius = mobius_table(bound.b_linf as usize);

    let mut total: i128 = 0;
    for g in 1..=bound.b_linf {
        let mu = mobius[g as usize] as i128;
        if mu == 0 {
            continue;
        }
        let bg = bound.scaled_down(g);
        if bg.b_linf < 1 {
            break;
        }
        for (piece_eqs, sign) in &pieces {
            for mask in 0u32..(1 << opens.len()) {
                let mut eqs = piece_eqs.clone();
                let mut parity: i128 = 1;
                for (i, o) in opens.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        eqs.push(o.clone());
                        parity = -parity;
                    }
                }
                // −1 removes the zero vector, which satisfies every
                // homogeneous system.
                let raw = raw_box_count(&eqs, spec.coords(), &bg, work_budget)? - 1;
                total += mu * (*sign as i128) * parity * raw;
            }
        }
    }
    assert!(total >= 0 && total % 2 == 0, "sign-pair structure violated: {total}");
    Ok((total / 2) as u64)
}

/// Möbius function table on 1..=n via a smallest-prime-factor sieve.
fn mobius_table(n: usize) -> Vec<i8> {
    let mut mu = vec![0i8; n + 1];
    if n >= 1 {
        mu[1] = 1;
    }
    let mut spf = vec![0usize; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i;
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if p > spf[i] || ip > n {
                break;
            }
            spf[ip] = p;
            mu[ip] = if p == spf[i] { 0 } else { -mu[i] };
        }
    }
    mu
}

/// Count all vectors of the bounded box (zero included) satisfying every
/// equation, by the cheapest applicable strategy.
fn raw_box_count(eqs: &[Poly], n: usize, bound: &BoundSpec, budget: u64) -> Result<i128> {
    // Forced-zero propagation: an equation c·x^k = 0 pins its variable.
    let mut active = vec![true; n];
    let mut system: Vec<Poly> = eqs.iter().filter(|p| !p.is_zero()).cloned().collect();
    loop {
        let mut fixed = None;
        for p in &system {
            if let Some(v) = p.single_variable_monomial() {
                fixed = Some(v);
                break;
            }
        }
        match fixed {
            None => break,
            Some(v) => {
                active[v] = false;
                system = system
                    .iter()
                    .map(|p| p.substitute_zero(v))
                    .filter(|p| !p.is_zero())
                    .collect();
            }
        }
    }

    let active_vars: Vec<usize> = (0..n).filter(|&i| active[i]).collect();
    if system.is_empty() {
        return free_box_count(active_vars.len(), bound, budget);
    }
    if system.len() == 1 && bound.r2.is_none() {
        if let Some(form) = disjoint_form(&system[0]) {
            if let Some(count) = convolution_count(&form, bound.b_linf, budget)? {
                let in_eq: Vec<usize> = form.iter().flat_map(|t| t.variables()).collect();
                let free = active_vars.iter().filter(|v| !in_eq.contains(v)).count();
                let width = 2 * bound.b_linf as i128 + 1;
                let mut mult: i128 = 1;
                for _ in 0..free {
                    mult *= width;
                }
                return Ok(count * mult);
            }
        }
    }
    propagation_count(&system, &active_vars, n, bound, budget)
}

/// Box count with no equations: closed form for the sup norm, memoized
/// shell recursion for the euclidean ball.
fn free_box_count(k: usize, bound: &BoundSpec, budget: u64) -> Result<i128> {
    match bound.r2 {
        None => {
            let width = 2 * bound.b_linf as i128 + 1;
            let mut total: i128 = 1;
            for _ in 0..k {
                total *= width;
            }
            Ok(total)
        }
        Some(r2) => {
            let work = (k as u128)
                .saturating_mul(r2 as u128 + 1)
                .saturating_mul(2 * bound.b_linf as u128 + 1);
            if work > budget as u128 {
                return Err(Error::Budget(format!(
                    "euclidean ball recursion needs about {work} steps, budget is {budget}"
                )));
            }
            let mut memo = HashMap::new();
            Ok(ball_count(k, r2, bound.b_linf, &mut memo))
        }
    }
}

/// Number of integer k-vectors with Σx² ≤ r2 and |x_i| ≤ b.
fn ball_count(k: usize, r2: i128, b: i64, memo: &mut HashMap<(usize, i128), i128>) -> i128 {
    if r2 < 0 {
        return 0;
    }
    if k == 0 {
        return 1;
    }
    if let Some(&c) = memo.get(&(k, r2)) {
        return c;
    }
    let mut total = ball_count(k - 1, r2, b, memo);
    let mut x: i64 = 1;
    while x <= b && (x as i128) * (x as i128) <= r2 {
        total += 2 * ball_count(k - 1, r2 - (x as i128) * (x as i128), b, memo);
        x += 1;
    }
    memo.insert((k, r2), total);
    total
}

/// Count solutions of Σ form-terms = 0 over the sup-norm box by
/// convolving per-term value distributions: dense arrays for bilinear
/// terms, sparse value → multiplicity lists for powers. Returns Ok(None)
/// when the shape is unsupported (more than three bilinear terms).
fn convolution_count(form: &[FormTerm], b: i64, budget: u64) -> Result<Option<i128>> {
    let mut dense: Vec<(i128, Vec<i64>)> = Vec::new();
    let mut sparse: Vec<Vec<(i128, i64)>> = Vec::new();
    for term in form {
        match *term {
            FormTerm::Bilinear { coeff, .. } => {
                let span = (coeff.unsigned_abs() as u128) * (b as u128) * (b as u128);
                let len = 2 * span + 1;
                if (b as u64).saturating_mul(b as u64) > budget || len > budget as u128 {
                    return Err(Error::Budget(format!(
                        "product distribution needs {len} cells"
                    )));
                }
                let offset = span as i128;
                let mut counts = vec![0i64; len as usize];
                // a·b = 0 when either factor is zero
                counts[offset as usize] += 2 * (2 * b + 1) - 1;
                for x in 1..=b {
                    for y in 1..=b {
                        let m = (coeff as i128) * (x as i128) * (y as i128);
                        counts[(offset + m) as usize] += 2;
                        counts[(offset - m) as usize] += 2;
                    }
                }
                dense.push((offset, counts));
            }
            FormTerm::Power { coeff, k, .. } => {
                let mut map: HashMap<i128, i64> = HashMap::new();
                for x in -b..=b {
                    let mut val: i128 = coeff as i128;
                    for _ in 0..k {
                        val *= x as i128;
                    }
                    *map.entry(val).or_insert(0) += 1;
                }
                let mut list: Vec<(i128, i64)> = map.into_iter().collect();
                list.sort_unstable();
                sparse.push(list);
            }
        }
    }

    if dense.len() > 3 {
        return Ok(None);
    }
    dense.sort_by_key(|(_, c)| c.len());
    while dense.len() > 2 {
        let (off_a, a) = dense.remove(0);
        let (off_b, bb) = dense.remove(0);
        let work = (a.len() as u128) * (bb.len() as u128);
        if work > budget as u128 {
            return Err(Error::Budget(format!("convolution needs {work} steps")));
        }
        let mut counts = vec![0i64; a.len() + bb.len() - 1];
        for (i, &ca) in a.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in bb.iter().enumerate() {
                counts[i + j] += ca * cb;
            }
        }
        dense.push((off_a + off_b, counts));
        dense.sort_by_key(|(_, c)| c.len());
    }

    let combos: u128 = sparse.iter().map(|s| s.len() as u128).product();
    let per_combo = dense.first().map(|(_, c)| c.len()).unwrap_or(1) as u128;
    if combos.saturating_mul(per_combo) > budget as u128 {
        return Err(Error::Budget(format!(
            "sparse × dense evaluation needs {} steps",
            combos * per_combo
        )));
    }

    let mut total: i128 = 0;
    let mut stack: Vec<(usize, i128, i128)> = vec![(0, 0, 1)];
    while let Some((depth, sum, mult)) = stack.pop() {
        if depth < sparse.len() {
            for &(val, cnt) in &sparse[depth] {
                stack.push((depth + 1, sum + val, mult * cnt as i128));
            }
            continue;
        }
        let target = -sum;
        let hit: i128 = match dense.as_slice() {
            [] => (target == 0) as i128,
            [(off, c)] => {
                let idx = target + off;
                if idx >= 0 && (idx as usize) < c.len() {
                    c[idx as usize] as i128
                } else {
                    0
                }
            }
            [(off1, c1), (off2, c2)] => {
                // Σ_m c1(m) · c2(target − m)
                let mut acc: i128 = 0;
                for (i, &v1) in c1.iter().enumerate() {
                    if v1 == 0 {
                        continue;
                    }
                    let m = i as i128 - off1;
                    let idx = target - m + off2;
                    if idx >= 0 && (idx as usize) < c2.len() {
                        acc += (v1 as i128) * (c2[idx as usize] as i128);
                    }
                }
                acc
            }
            _ => unreachable!("dense list reduced to ≤ 2 above"),
        };
        total += mult * hit;
    }
    Ok(Some(total))
}

/// General fallback: enumerate the variables the system mentions except
/// one pivot that every equation is linear in, and solve for the pivot at
/// each leaf. Under the sup norm, variables absent from the system factor
/// out as a multiplier; the euclidean ball couples them, so they stay in
/// the scan.
fn propagation_count(
    system: &[Poly],
    active_vars: &[usize],
    n: usize,
    bound: &BoundSpec,
    budget: u64,
) -> Result<i128> {
    let present: Vec<usize> = active_vars
        .iter()
        .copied()
        .filter(|&v| system.iter().any(|p| p.degree_in(v) > 0))
        .collect();
    let (scan_vars, free_mult) = if bound.r2.is_none() {
        let width = 2 * bound.b_linf as i128 + 1;
        let mut mult: i128 = 1;
        for _ in 0..active_vars.len() - present.len() {
            mult *= width;
        }
        (present, mult)
    } else {
        (active_vars.to_vec(), 1)
    };

    let pivot = scan_vars.iter().copied().find(|&v| {
        system.iter().any(|p| p.degree_in(v) > 0)
            && system.iter().all(|p| p.degree_in(v) <= 1)
    });
    let enumerated: Vec<usize> =
        scan_vars.iter().copied().filter(|&v| Some(v) != pivot).collect();

    let width = 2 * bound.b_linf as u128 + 1;
    let mut work: u128 = 1;
    for _ in &enumerated {
        work = work.saturating_mul(width);
    }
    if work > budget as u128 {
        return Err(Error::Budget(format!(
            "constraint propagation needs about {work} assignments, budget is {budget}"
        )));
    }

    let splits: Option<Vec<(Poly, Poly)>> =
        pivot.map(|p| system.iter().map(|e| e.split_linear(p).unwrap()).collect());
    let mut v = vec![0i64; n];
    let mut total = 0i128;
    enumerate_rec(
        system,
        &splits,
        pivot,
        &enumerated,
        0,
        bound,
        &mut v,
        0,
        &mut total,
    );
    Ok(total * free_mult)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_rec(
    system: &[Poly],
    splits: &Option<Vec<(Poly, Poly)>>,
    pivot: Option<usize>,
    enumerated: &[usize],
    depth: usize,
    bound: &BoundSpec,
    v: &mut Vec<i64>,
    square_sum: i128,
    total: &mut i128,
) {
    if depth < enumerated.len() {
        let var = enumerated[depth];
        for x in -bound.b_linf..=bound.b_linf {
            let s = square_sum + (x as i128) * (x as i128);
            if !bound.admits_square_sum(s) {
                continue;
            }
            v[var] = x;
            enumerate_rec(system, splits, pivot, enumerated, depth + 1, bound, v, s, total);
        }
        v[var] = 0;
        return;
    }
    match (pivot, splits) {
        (None, _) => {
            if system.iter().all(|p| p.eval_i128(v) == 0) {
                *total += 1;
            }
        }
        (Some(_), Some(splits)) => {
            let coeffs: Vec<(i128, i128)> =
                splits.iter().map(|(a, c)| (a.eval_i128(v), c.eval_i128(v))).collect();
            match coeffs.iter().find(|(a, _)| *a != 0) {
                None => {
                    // pivot unconstrained; all constants must vanish
                    if coeffs.iter().all(|(_, c)| *c == 0) {
                        *total += pivot_freedom(bound, square_sum);
                    }
                }
                Some(&(a, c)) => {
                    if c % a == 0 {
                        let x = -c / a;
                        let s = square_sum + x * x;
                        if x.unsigned_abs() <= bound.b_linf as u128
                            && bound.admits_square_sum(s)
                        {
                            let x = x as i64;
                            if coeffs.iter().all(|&(ae, ce)| ae * (x as i128) + ce == 0) {
                                *total += 1;
                            }
                        }
                    }
                }
            }
        }
        (Some(_), None) => unreachable!("splits exist whenever a pivot does"),
    }
}

/// Number of admissible values of an unconstrained pivot coordinate.
fn pivot_freedom(bound: &BoundSpec, square_sum: i128) -> i128 {
    match bound.r2 {
        None => 2 * bound.b_linf as i128 + 1,
        Some(r2) => {
            let rem = r2 - square_sum;
            if rem < 0 {
                return 0;
            }
            let mut m = (rem as f64).sqrt() as i128 + 1;
            while m * m > rem {
                m -= 1;
            }
            let m = m.min(bound.b_linf as i128);
            2 * m + 1
        }
    }
}
