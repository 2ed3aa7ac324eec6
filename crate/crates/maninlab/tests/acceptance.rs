//! Acceptance gate: one test per shipped guarantee, each printing a single
//! `criterion NN: PASS/FAIL` line (run with `--nocapture` to see the lines
//! for passing tests; failing tests always show theirs).

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use maninlab::exact_lattice::{smith_normal_form, IntMatrix};
use maninlab::height_census::{
    builtin_varieties, builtin_variety, count_series, enumerate_points_engine_a,
    enumerate_points_engine_b, fit_exponents, local_density, sample_thresholds, synthetic_series,
    HeightSpec, DEFAULT_FIT_WINDOW, DEFAULT_WORK_BUDGET,
};
use maninlab::manin_exponents::{
    ab_from_divisor_data, ab_wonderful_symmetric, trivial_orbits, DivisorData,
};
use maninlab::orbit_finiteness::{
    cokernel_torsion_factors, e6_f4, even_hyperplane, even_hyperplane_coroot_matrix, f4_spin9,
    odd_hyperplane, symplectic_in_linear, symplectic_product, symplectic_product_coroot_matrix,
    Isogeny, SymmetricPair,
};
use maninlab::root_systems::{
    build_root_system, kac_classify, restricted_sum_psl2n_psp, AffineDiagramChoice, KacVerdict,
    OuterFamily, WeightInRootBasis,
};
use maninlab::Error;

fn report(number: u32, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("criterion {number:02}: {verdict} - {detail}");
}

/// All (type, rank) combinations the root-system builder supports with
/// classical rank at most 8.
fn supported_systems() -> Vec<(char, usize)> {
    let mut systems = Vec::new();
    systems.extend((1..=8).map(|l| ('A', l)));
    systems.extend((2..=8).map(|l| ('B', l)));
    systems.extend((2..=8).map(|l| ('C', l)));
    systems.extend((3..=8).map(|l| ('D', l)));
    systems.extend((6..=8).map(|l| ('E', l)));
    systems.push(('F', 4));
    systems.push(('G', 2));
    systems
}

#[test]
fn criterion_01_orbit_verdict_grids() {
    let start = Instant::now();
    let mut cases: Vec<(SymmetricPair, bool)> = Vec::new();
    for n in 3..=10 {
        cases.push((symplectic_in_linear(n, Isogeny::Adjoint, false).unwrap(), true));
        cases.push((symplectic_in_linear(n, Isogeny::Adjoint, true).unwrap(), n % 2 == 1));
    }
    for l in 3..=10 {
        cases.push((odd_hyperplane(l, Isogeny::Adjoint, true).unwrap(), false));
        cases.push((even_hyperplane(l, Isogeny::Adjoint).unwrap(), true));
    }
    for p in 1..=5 {
        for q in p..=5 {
            cases.push((symplectic_product(p, q, Isogeny::Adjoint).unwrap(), true));
        }
    }
    cases.push((f4_spin9(Isogeny::Adjoint).unwrap(), true));
    cases.push((e6_f4(Isogeny::Adjoint).unwrap(), true));

    let mismatches: Vec<String> = cases
        .iter()
        .filter_map(|(pair, want)| {
            let got = pair.check_finiteness().is_finite();
            (got != *want).then(|| format!("{}: finite={got}, want {want}", pair.name()))
        })
        .collect();
    let elapsed = start.elapsed();

    let ok = mismatches.is_empty() && elapsed < Duration::from_secs(5);
    report(
        1,
        ok,
        &format!(
            "{} adjoint verdicts, {} mismatches, {:.2?} (limit 5s)",
            cases.len(),
            mismatches.len(),
            elapsed
        ),
    );
    assert!(ok, "mismatches: {mismatches:?}, elapsed {elapsed:.2?}");
}

#[test]
fn criterion_02_fixed_subgroup_table_and_lattice_cross_check() {
    let mut failures = Vec::new();

    // Sweep every inner choice (mark-2 affine vertex) over the supported
    // systems; simply connected verdicts must land exactly on the interior
    // symplectic vertices, the short odd-orthogonal end, and F4 vertex 4.
    let mut inner_choices = 0;
    for (t, l) in supported_systems() {
        let rs = build_root_system(t, l).unwrap();
        let marks = rs.affine_marks();
        for v in 1..=l {
            if marks[v] != 2 {
                continue;
            }
            inner_choices += 1;
            let verdict = kac_classify(&AffineDiagramChoice::inner(rs.clone(), v).unwrap());
            let want_sc = match t {
                'C' => true,
                'B' => v == l,
                'F' => v == 4,
                _ => false,
            };
            let got_sc = verdict == KacVerdict::SimplyConnected;
            if got_sc != want_sc {
                failures.push(format!("{t}_{l} vertex {v}: {verdict:?}"));
            }
        }
    }

    // The tabulated outer families.
    let outer_cases: &[(char, usize, OuterFamily, KacVerdict)] = &[
        ('A', 2, OuterFamily::OrthogonalFixed { n: 3 }, KacVerdict::Z2),
        ('A', 7, OuterFamily::OrthogonalFixed { n: 8 }, KacVerdict::Z2),
        ('A', 5, OuterFamily::SymplecticFixed { n: 3 }, KacVerdict::SimplyConnected),
        ('A', 7, OuterFamily::SymplecticFixed { n: 4 }, KacVerdict::SimplyConnected),
        ('D', 3, OuterFamily::OddOddSplit { p: 3, q: 3 }, KacVerdict::Z2),
        ('D', 5, OuterFamily::OddOddSplit { p: 3, q: 7 }, KacVerdict::Z2),
        ('D', 4, OuterFamily::OddHyperplane { l: 4 }, KacVerdict::SimplyConnected),
        ('D', 8, OuterFamily::OddHyperplane { l: 8 }, KacVerdict::SimplyConnected),
        ('E', 6, OuterFamily::E6FixedF4, KacVerdict::SimplyConnected),
        ('E', 6, OuterFamily::E6FixedC4, KacVerdict::Z2),
    ];
    for &(t, l, family, want) in outer_cases {
        let rs = build_root_system(t, l).unwrap();
        let got = kac_classify(&AffineDiagramChoice::outer(rs, family).unwrap());
        if got != want {
            failures.push(format!("{family:?}: {got:?}, want {want:?}"));
        }
    }

    // Cross-validate against an independent computation: the fixed subgroup
    // is simply connected exactly when its coroot lattice sits in the
    // ambient coroot lattice with torsion-free quotient.
    let mut cross_checks = 0;
    for (p, q) in [(1usize, 1usize), (1, 2), (1, 3), (2, 2)] {
        cross_checks += 1;
        let rs = build_root_system('C', p + q).unwrap();
        let verdict = kac_classify(&AffineDiagramChoice::inner(rs, p.min(q)).unwrap());
        let torsion = cokernel_torsion_factors(&symplectic_product_coroot_matrix(p, q)).unwrap();
        if (verdict == KacVerdict::SimplyConnected) != torsion.is_empty() {
            failures.push(format!(
                "symplectic product ({p},{q}): verdict {verdict:?} vs torsion {torsion:?}"
            ));
        }
    }
    cross_checks += 1;
    let torsion = cokernel_torsion_factors(&even_hyperplane_coroot_matrix(3)).unwrap();
    if !torsion.is_empty() {
        failures.push(format!(
            "rank-3 even hyperplane lattice has torsion {torsion:?}; its fixed subgroup is \
             tabulated as simply connected"
        ));
    }

    let ok = failures.is_empty();
    report(
        2,
        ok,
        &format!(
            "{inner_choices} inner choices + {} outer families swept, {cross_checks} lattice \
             cross-checks, {} disagreements",
            outer_cases.len(),
            failures.len()
        ),
    );
    assert!(ok, "failures: {failures:?}");
}

#[test]
fn criterion_03_restricted_sum_closed_form() {
    let mut failures = Vec::new();

    // Claimed closed form 2i(2n-i) for the coefficients of the restricted
    // positive-root sum, against the enumeration oracle.
    for n in 2..=6usize {
        let oracle = restricted_sum_psl2n_psp(n).unwrap();
        let claimed: Vec<i64> =
            (1..n as i64).map(|i| 2 * i * (2 * (n as i64) - i)).collect();
        if oracle != claimed {
            failures.push(format!("n={n}: oracle {oracle:?} vs claimed {claimed:?}"));
        }
    }

    // Claimed consequence at n = 2 with unit height weight: exponents (7, 1).
    let m = WeightInRootBasis {
        coefficients: restricted_sum_psl2n_psp(2)
            .unwrap()
            .into_iter()
            .map(|c| BigRational::from_integer(c.into()))
            .collect(),
    };
    let lambda = WeightInRootBasis { coefficients: vec![BigRational::from_integer(1.into())] };
    let pair = ab_wonderful_symmetric(&m, &lambda, &trivial_orbits(1)).unwrap();
    let claimed_a = BigRational::from_integer(7.into());
    if pair.a != claimed_a || pair.b != 1 {
        failures.push(format!("n=2 exponents: got ({}, {}), claimed (7, 1)", pair.a, pair.b));
    }

    let ok = failures.is_empty();
    let detail =
        if ok { "closed form matches the oracle".to_string() } else { failures.join("; ") };
    report(3, ok, &detail);
    assert!(ok, "failures: {failures:?}");
}

#[test]
fn criterion_04_affine_mark_identities() {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (t, l) in supported_systems() {
        checked += 1;
        let rs = build_root_system(t, l).unwrap();
        let marks = rs.affine_marks();
        let dual = rs.dual_marks();
        let theta = rs.ambient_from_simple(rs.highest_root());
        let dim = theta.len();

        // Sum of marks times affine simple roots, with the added node
        // carrying the negated highest root.
        let mut sum = vec![BigRational::zero(); dim];
        for (k, x) in theta.iter().enumerate() {
            sum[k] -= BigRational::from_integer(marks[0].into()) * x;
        }
        for (i, alpha) in rs.simple_roots().iter().enumerate() {
            for (k, x) in alpha.iter().enumerate() {
                sum[k] += BigRational::from_integer(marks[i + 1].into()) * x;
            }
        }
        if sum.iter().any(|x| !x.is_zero()) {
            failures.push(format!("{t}_{l}: mark relation sum {sum:?}"));
        }

        // The dual relation on coroots, with the added node carrying the
        // negated highest-root coroot.
        let theta_coroot = rs.coroot(&theta);
        let mut dual_sum = vec![BigRational::zero(); dim];
        for (k, x) in theta_coroot.iter().enumerate() {
            dual_sum[k] -= BigRational::from_integer(dual[0].into()) * x;
        }
        for (i, alpha) in rs.simple_roots().iter().enumerate() {
            let coroot = rs.coroot(alpha);
            for (k, x) in coroot.iter().enumerate() {
                dual_sum[k] += BigRational::from_integer(dual[i + 1].into()) * x;
            }
        }
        if dual_sum.iter().any(|x| !x.is_zero()) {
            failures.push(format!("{t}_{l}: dual mark relation sum {dual_sum:?}"));
        }

        let want_positive = match (t, l) {
            ('A', l) => l * (l + 1) / 2,
            ('B', l) | ('C', l) => l * l,
            ('D', l) => l * (l - 1),
            ('E', 6) => 36,
            ('E', 7) => 63,
            ('E', 8) => 120,
            ('F', 4) => 24,
            ('G', 2) => 6,
            _ => unreachable!(),
        };
        if rs.positive_root_count() != want_positive {
            failures.push(format!(
                "{t}_{l}: {} positive roots, want {want_positive}",
                rs.positive_root_count()
            ));
        }
    }

    let g2_marks = build_root_system('G', 2).unwrap().affine_marks();
    if g2_marks != vec![1, 2, 3] {
        failures.push(format!("G_2 marks {g2_marks:?}, want [1, 2, 3]"));
    }

    let ok = failures.is_empty();
    report(
        4,
        ok,
        &format!("{checked} diagrams: mark and dual-mark relations, positive-root counts"),
    );
    assert!(ok, "failures: {failures:?}");
}

#[test]
fn criterion_05_smith_form_property_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0005);
    let mut square_nonsingular = 0;
    for trial in 0..1000 {
        let rows = 1 + (rng.next_u64() % 6) as usize;
        let cols = 1 + (rng.next_u64() % 6) as usize;
        let entries: Vec<BigInt> =
            (0..rows * cols).map(|_| BigInt::from((rng.next_u64() % 19) as i64 - 9)).collect();
        let a = IntMatrix::new(rows, cols, entries).unwrap();
        let s = smith_normal_form(&a);

        assert_eq!(s.u.mul(&a).mul(&s.v), s.d, "trial {trial}: u*a*v != d");
        assert!(s.u.is_unimodular(), "trial {trial}: u not unimodular");
        assert!(s.v.is_unimodular(), "trial {trial}: v not unimodular");

        let diag = s.diagonal();
        for pair in diag.windows(2) {
            assert!(!pair[0].is_negative() && !pair[1].is_negative(), "trial {trial}");
            if pair[0].is_zero() {
                assert!(pair[1].is_zero(), "trial {trial}: zero before nonzero entry");
            } else {
                assert!((&pair[1] % &pair[0]).is_zero(), "trial {trial}: chain broken");
            }
        }

        if rows == cols {
            let det = a.determinant();
            if !det.is_zero() {
                square_nonsingular += 1;
                let order: BigInt = diag.iter().product();
                assert_eq!(order, det.abs(), "trial {trial}: cokernel order vs determinant");
            }
        }
    }
    report(
        5,
        true,
        &format!(
            "1000 random matrices up to 6x6: exact factorization, unimodularity, divisibility \
             chain; {square_nonsingular} nonsingular square cokernel orders"
        ),
    );
}

#[test]
fn criterion_06_projective_exponent_fits() {
    let mut failures = Vec::new();
    let mut details = Vec::new();
    let t_max = BigRational::from_integer(500.into());
    let h = HeightSpec::max();

    for (name, target) in [("p1", 2.0), ("p2", 3.0), ("p3", 4.0)] {
        let start = Instant::now();
        let spec = builtin_variety(name).unwrap();
        let series = count_series(&spec, &t_max, &h, DEFAULT_WORK_BUDGET).unwrap();
        let fit = fit_exponents(&series, DEFAULT_FIT_WINDOW).unwrap();
        let elapsed = start.elapsed();
        if (fit.a_hat - target).abs() > 0.15 {
            failures.push(format!("{name}: a_hat {:.4}, want {target} +/- 0.15", fit.a_hat));
        }
        if elapsed >= Duration::from_secs(60) {
            failures.push(format!("{name}: {elapsed:.2?} exceeds 60s"));
        }
        details.push(format!("{name} a_hat={:.3} ({elapsed:.2?})", fit.a_hat));
    }

    let start = Instant::now();
    let spec = builtin_variety("pgl2").unwrap();
    let series = count_series(&spec, &t_max, &h, DEFAULT_WORK_BUDGET).unwrap();
    let fit = fit_exponents(&series, DEFAULT_FIT_WINDOW).unwrap();
    let elapsed = start.elapsed();
    if !(3.8..=4.2).contains(&fit.a_hat) {
        failures.push(format!("pgl2: a_hat {:.4} outside [3.8, 4.2]", fit.a_hat));
    }
    if elapsed >= Duration::from_secs(60) {
        failures.push(format!("pgl2: {elapsed:.2?} exceeds 60s"));
    }
    details.push(format!("pgl2 a_hat={:.3} ({elapsed:.2?})", fit.a_hat));

    let ok = failures.is_empty();
    report(6, ok, &format!("T_max=500, max norm, single-threaded: {}", details.join(", ")));
    assert!(ok, "failures: {failures:?}");
}

/// Step cap for the direct-scan engine in the cross-check. Samples whose
/// upfront visit estimate exceeds this are skipped and reported.
const CROSS_CHECK_SCAN_BUDGET: u64 = 40_000_000;

#[test]
fn criterion_07_engine_cross_check() {
    let t_cap = BigRational::from_integer(50.into());
    let thresholds = sample_thresholds(&t_cap).unwrap();
    let h = HeightSpec::max();

    let mut failures = Vec::new();
    let mut agreements = 0;
    let mut skipped = 0;
    let mut coverage = Vec::new();

    for spec in builtin_varieties() {
        let mut max_checked: Option<f64> = None;
        for t in &thresholds {
            let counted = match enumerate_points_engine_b(&spec, t, &h, DEFAULT_WORK_BUDGET) {
                Ok(n) => n,
                Err(e) => {
                    failures.push(format!("{} T={t}: sieve engine failed: {e}", spec.name));
                    continue;
                }
            };
            match enumerate_points_engine_a(&spec, t, &h, CROSS_CHECK_SCAN_BUDGET) {
                Ok(scanned) => {
                    agreements += 1;
                    max_checked = t.to_f64();
                    if scanned != counted {
                        failures.push(format!(
                            "{} T={t}: scan {scanned} vs sieve {counted}",
                            spec.name
                        ));
                    }
                }
                Err(Error::Budget(_)) => skipped += 1,
                Err(e) => failures.push(format!("{} T={t}: scan failed: {e}", spec.name)),
            }
        }
        match max_checked {
            Some(t) => coverage.push(format!("{}<={t}", spec.name)),
            None => failures.push(format!("{}: no sample fit the scan budget", spec.name)),
        }
    }

    let ok = failures.is_empty();
    report(
        7,
        ok,
        &format!(
            "{agreements} sampled T agree exactly, max norm (scan capped at \
             {CROSS_CHECK_SCAN_BUDGET} visits: {skipped} samples skipped; covered {})",
            coverage.join(", ")
        ),
    );
    assert!(ok, "failures: {failures:?}");
}

#[test]
fn criterion_08_local_densities() {
    let cases: &[(&str, u64, (i64, i64))] =
        &[("sl2", 2, (3, 4)), ("sl2", 3, (8, 9)), ("skew4", 2, (7, 8))];
    let mut failures = Vec::new();
    let mut details = Vec::new();
    for &(name, p, (num, den)) in cases {
        let start = Instant::now();
        let spec = builtin_variety(name).unwrap();
        let density = local_density(&spec, p, DEFAULT_WORK_BUDGET).unwrap();
        let elapsed = start.elapsed();
        let want = BigRational::new(num.into(), den.into());
        if density.density != want {
            failures.push(format!("{name} p={p}: {} want {want}", density.density));
        }
        if elapsed >= Duration::from_secs(1) {
            failures.push(format!("{name} p={p}: {elapsed:.2?} exceeds 1s"));
        }
        details.push(format!("{name} p={p}: {} ({elapsed:.2?})", density.density));
    }
    let ok = failures.is_empty();
    report(8, ok, &format!("exhaustive scans: {}", details.join(", ")));
    assert!(ok, "failures: {failures:?}");
}

#[test]
fn criterion_09_synthetic_fit_recovery() {
    let mut failures = Vec::new();
    // The steep (7, 1) model needs a lower ladder to keep counts inside u64.
    for (a, b, t_start) in [(2.0, 1.0, 1000), (3.0, 2.0, 1000), (7.0, 1.0, 20)] {
        let series = synthetic_series(a, b, 2.0, t_start, 12).unwrap();
        let fit = fit_exponents(&series, DEFAULT_FIT_WINDOW).unwrap();
        if (fit.a_hat - a).abs() >= 1e-6 || (fit.b_hat - b).abs() >= 1e-6 {
            failures.push(format!(
                "(a,b)=({a},{b}): recovered ({:.8}, {:.8})",
                fit.a_hat, fit.b_hat
            ));
        }
    }
    let ok = failures.is_empty();
    report(9, ok, "exponent pairs (2,1), (3,2), (7,1) recovered within 1e-6");
    assert!(ok, "failures: {failures:?}");
}

#[test]
fn criterion_10_height_power_scaling() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0010);
    let mut trials = 0;
    for _ in 0..200 {
        // Random divisor data with shared-ratio orbit groups: each group
        // repeats one (m, n) ratio with random positive stretches.
        let groups = 1 + (rng.next_u64() % 4) as usize;
        let mut m = Vec::new();
        let mut n = Vec::new();
        let mut orbits = Vec::new();
        for _ in 0..groups {
            let m0 = 1 + rng.next_u64() % 9;
            let n0 = (rng.next_u64() % 19) as i64 - 9;
            let size = 1 + (rng.next_u64() % 3) as usize;
            let mut orbit = Vec::new();
            for _ in 0..size {
                let stretch = 1 + rng.next_u64() % 3;
                orbit.push(m.len());
                m.push(m0 * stretch);
                n.push(n0 * stretch as i64);
            }
            orbits.push(orbit);
        }
        let base =
            ab_from_divisor_data(&DivisorData::new(m.clone(), n.clone(), orbits.clone()).unwrap());
        for k in [1u64, 2, 3] {
            trials += 1;
            let scaled_m: Vec<u64> = m.iter().map(|mi| k * mi).collect();
            let scaled =
                ab_from_divisor_data(&DivisorData::new(scaled_m, n.clone(), orbits.clone()).unwrap());
            assert_eq!(scaled.a, &base.a / BigRational::from_integer(k.into()), "k={k}");
            assert_eq!(scaled.b, base.b, "k={k}");
        }
    }
    report(10, true, &format!("{trials} scaled instances: exponents scale as (a/k, b)"));
}
