//! Growth exponents (a, b) from divisor data.
//!
//! For a height attached to a line bundle, point counts grow like
//! c · Tᵃ (log T)ᵇ⁻¹. Both exponents are ratios of boundary-divisor
//! multiplicities: a is the largest ratio and b counts the Galois orbits of
//! boundary components achieving it. Root-theoretic front ends translate the
//! group-variety and wonderful-symmetric cases into the same maximum.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::root_systems::{RootSystemData, WeightInRootBasis};
use crate::{Error, Result};

/// Boundary multiplicities of the height section (`m`) and of the
/// anticanonical section (`n`), with a Galois-orbit partition of the index
/// set. Conjugate components must share the same ratio n/m.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DivisorDataRepr", into = "DivisorDataRepr")]
pub struct DivisorData {
    m: Vec<u64>,
    n: Vec<i64>,
    orbits: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct DivisorDataRepr {
    m: Vec<u64>,
    n: Vec<i64>,
    orbits: Vec<Vec<usize>>,
}

impl TryFrom<DivisorDataRepr> for DivisorData {
    type Error = Error;
    fn try_from(r: DivisorDataRepr) -> Result<Self> {
        DivisorData::new(r.m, r.n, r.orbits)
    }
}

impl From<DivisorData> for DivisorDataRepr {
    fn from(d: DivisorData) -> Self {
        DivisorDataRepr { m: d.m, n: d.n, orbits: d.orbits }
    }
}

impl DivisorData {
    pub fn new(m: Vec<u64>, n: Vec<i64>, orbits: Vec<Vec<usize>>) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::Invalid("empty divisor index set".into()));
        }
        if m.len() != n.len() {
            return Err(Error::Shape(format!(
                "{} height multiplicities vs {} anticanonical multiplicities",
                m.len(),
                n.len()
            )));
        }
        if let Some(bad) = m.iter().position(|&x| x == 0) {
            return Err(Error::Invalid(format!("height multiplicity {bad} must be positive")));
        }
        let ratios: Vec<BigRational> = m
            .iter()
            .zip(&n)
            .map(|(&mi, &ni)| BigRational::new(BigInt::from(ni), BigInt::from(mi)))
            .collect();
        validate_orbits(&orbits, &ratios)?;
        Ok(DivisorData { m, n, orbits })
    }

    /// Every index its own orbit: the split case.
    pub fn with_trivial_orbits(m: Vec<u64>, n: Vec<i64>) -> Result<Self> {
        let orbits = trivial_orbits(m.len());
        Self::new(m, n, orbits)
    }

    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }
}

pub fn trivial_orbits(len: usize) -> Vec<Vec<usize>> {
    (0..len).map(|i| vec![i]).collect()
}

/// Check that `orbits` partitions 0..len and that conjugate indices share a
/// ratio.
fn validate_orbits(orbits: &[Vec<usize>], ratios: &[BigRational]) -> Result<()> {
    let len = ratios.len();
    let mut seen = vec![false; len];
    for orbit in orbits {
        if orbit.is_empty() {
            return Err(Error::Invalid("empty Galois orbit".into()));
        }
        for &i in orbit {
            if i >= len {
                return Err(Error::Invalid(format!("orbit index {i} out of range")));
            }
            if seen[i] {
                return Err(Error::Invalid(format!("index {i} appears in two orbits")));
            }
            seen[i] = true;
        }
        let first = &ratios[orbit[0]];
        if let Some(&bad) = orbit.iter().find(|&&i| &ratios[i] != first) {
            return Err(Error::Invalid(format!(
                "conjugate components {} and {bad} have different ratios",
                orbit[0]
            )));
        }
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(Error::Invalid(format!("index {missing} missing from the orbit partition")));
    }
    Ok(())
}

/// The exponent pair: a is an exact rational, b a positive orbit count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ExponentPairRepr", into = "ExponentPairRepr")]
pub struct ExponentPair {
    pub a: BigRational,
    pub b: usize,
}

#[derive(Serialize, Deserialize)]
struct ExponentPairRepr {
    a: String,
    a_decimal: f64,
    b: usize,
}

impl TryFrom<ExponentPairRepr> for ExponentPair {
    type Error = Error;
    fn try_from(r: ExponentPairRepr) -> Result<Self> {
        let a = crate::rational::parse_rational(&r.a).map_err(Error::Invalid)?;
        if r.b == 0 {
            return Err(Error::Invalid("b must be positive".into()));
        }
        Ok(ExponentPair { a, b: r.b })
    }
}

impl From<ExponentPair> for ExponentPairRepr {
    fn from(p: ExponentPair) -> Self {
        ExponentPairRepr {
            a: crate::rational::to_string(&p.a),
            a_decimal: crate::rational::to_f64(&p.a),
            b: p.b,
        }
    }
}

impl ExponentPair {
    pub fn new(a: BigRational, b: usize) -> Self {
        assert!(b >= 1, "b counts a nonempty tie set");
        ExponentPair { a, b }
    }

    pub fn a_f64(&self) -> f64 {
        self.a.to_f64().expect("exponent fits in f64")
    }
}

/// Shared maximum: a = max ratio, b = number of orbits achieving it.
fn exponents_from_ratios(ratios: Vec<BigRational>, orbits: &[Vec<usize>]) -> Result<ExponentPair> {
    validate_orbits(orbits, &ratios)?;
    let a = ratios.iter().max().expect("nonempty index set").clone();
    let b = orbits.iter().filter(|orbit| ratios[orbit[0]] == a).count();
    Ok(ExponentPair::new(a, b))
}

/// The exponents straight from validated divisor data.
pub fn ab_from_divisor_data(d: &DivisorData) -> ExponentPair {
    let ratios: Vec<BigRational> = d
        .m
        .iter()
        .zip(&d.n)
        .map(|(&mi, &ni)| BigRational::new(BigInt::from(ni), BigInt::from(mi)))
        .collect();
    exponents_from_ratios(ratios, &d.orbits).expect("validated at construction")
}

/// Exponents for a group variety embedded via the weight `lambda`, written
/// in the simple-root basis with strictly positive coefficients. The
/// anticanonical numerators are the coefficients of 2ρ plus one.
pub fn ab_group_variety(
    rs: &RootSystemData,
    lambda: &WeightInRootBasis,
    orbits: &[Vec<usize>],
) -> Result<ExponentPair> {
    let two_rho = rs.two_rho_in_simple_basis();
    ab_from_numerator_weight(&two_rho, lambda, orbits)
}

/// Exponents for a wonderful symmetric variety: `m_restricted` lists the
/// coefficients of the sum of positive restricting roots in the restricted
/// simple basis, and `lambda` the height weight in the same basis.
pub fn ab_wonderful_symmetric(
    m_restricted: &WeightInRootBasis,
    lambda: &WeightInRootBasis,
    orbits: &[Vec<usize>],
) -> Result<ExponentPair> {
    ab_from_numerator_weight(m_restricted, lambda, orbits)
}

fn ab_from_numerator_weight(
    m: &WeightInRootBasis,
    lambda: &WeightInRootBasis,
    orbits: &[Vec<usize>],
) -> Result<ExponentPair> {
    if m.coefficients.is_empty() {
        return Err(Error::Invalid("empty index set".into()));
    }
    if m.coefficients.len() != lambda.coefficients.len() {
        return Err(Error::Shape(format!(
            "{} multiplicities vs {} weight coefficients",
            m.coefficients.len(),
            lambda.coefficients.len()
        )));
    }
    if let Some(bad) = lambda.coefficients.iter().position(|c| !c.is_positive()) {
        return Err(Error::Invalid(format!(
            "weight coefficient {bad} must be strictly positive"
        )));
    }
    let one = BigRational::one();
    let ratios: Vec<BigRational> = m
        .coefficients
        .iter()
        .zip(&lambda.coefficients)
        .map(|(mi, ni)| (mi + &one) / ni)
        .collect();
    exponents_from_ratios(ratios, orbits)
}
