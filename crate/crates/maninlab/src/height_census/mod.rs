//! Bounded-height rational point enumeration on projective models, with two
//! independent counting engines, local densities, and exponent fitting.
//!
//! A variety is described by homogeneous integer equations and inequations
//! inside ℙ^d. Points are primitive integer vectors up to sign; the height
//! is an archimedean norm of the primitive representative, and all threshold
//! comparisons (`height < T`) are exact rational arithmetic — no floats
//! decide membership.

mod density;
mod engine_a;
mod engine_b;
pub mod poly;
mod series;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use density::{local_density, LocalDensity};
pub use engine_a::enumerate_points_engine_a;
pub use engine_b::enumerate_points_engine_b;
pub use poly::Poly;
pub use series::{
    count_series, fit_exponents, parse_series_csv, sample_thresholds, series_to_csv,
    synthetic_series, CountSeries, FitResult, SeriesSample, DEFAULT_FIT_WINDOW,
};

use crate::{Error, Result};

/// Archimedean norm used for heights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    Max,
    Euclidean,
}

/// Height conventions: currently just the choice of archimedean norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightSpec {
    pub norm: Norm,
}

impl HeightSpec {
    pub fn max() -> Self {
        HeightSpec { norm: Norm::Max }
    }

    pub fn euclidean() -> Self {
        HeightSpec { norm: Norm::Euclidean }
    }
}

/// One signed piece of an equation-set decomposition used by the algebraic
/// engine when the defining equation itself is out of reach (for example a
/// squared Pfaffian): the counts of the pieces, weighted by `sign`, must sum
/// to the count of the original system. Shipped plans are property-tested
/// against the direct engine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionPiece {
    pub equations: Vec<Poly>,
    pub sign: i64,
}

/// A projective (or affine-chart) variety given by integer forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietySpec {
    pub name: String,
    /// Dimension d of the ambient ℙ^d; coordinates are x_0 … x_d.
    pub ambient_dim: usize,
    /// Homogeneous forms required to vanish.
    pub equations: Vec<Poly>,
    /// Homogeneous forms required to be nonzero (open conditions).
    pub inequations: Vec<Poly>,
    /// If set, index of a coordinate required nonzero: the model is the
    /// affine chart x_i ≠ 0 and integral points of that chart are counted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub affine_chart: Option<usize>,
    /// Dimension of the open locus being counted (used by local densities).
    pub dim_u: usize,
    /// Optional signed decomposition replacing `equations` inside the
    /// algebraic engine.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub engine_b_union: Option<Vec<UnionPiece>>,
}

impl VarietySpec {
    /// Number of homogeneous coordinates, d + 1.
    pub fn coords(&self) -> usize {
        self.ambient_dim + 1
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.coords();
        if self.ambient_dim == 0 {
            return Err(Error::Invalid("ambient dimension must be positive".into()));
        }
        if self.dim_u > self.ambient_dim {
            return Err(Error::Invalid(format!(
                "open locus dimension {} exceeds ambient {}",
                self.dim_u, self.ambient_dim
            )));
        }
        if let Some(c) = self.affine_chart {
            if c >= n {
                return Err(Error::Invalid(format!("chart index {c} out of range")));
            }
        }
        let check_poly = |p: &Poly, role: &str| -> Result<()> {
            p.check_n_vars(n)?;
            if p.homogeneous_degree().is_none() {
                return Err(Error::Invalid(format!("{role} is not homogeneous")));
            }
            Ok(())
        };
        for p in &self.equations {
            check_poly(p, "equation")?;
        }
        for p in &self.inequations {
            check_poly(p, "inequation")?;
            if p.is_zero() {
                return Err(Error::Invalid("inequation is identically zero".into()));
            }
        }
        if let Some(pieces) = &self.engine_b_union {
            if pieces.is_empty() {
                return Err(Error::Invalid("empty equation decomposition".into()));
            }
            for piece in pieces {
                if piece.sign == 0 {
                    return Err(Error::Invalid("decomposition piece with zero sign".into()));
                }
                for p in &piece.equations {
                    check_poly(p, "decomposition equation")?;
                }
            }
        }
        Ok(())
    }

    /// Open conditions as polynomials: declared inequations plus the chart
    /// coordinate when present.
    pub(crate) fn open_conditions(&self) -> Vec<Poly> {
        let mut out = self.inequations.clone();
        if let Some(c) = self.affine_chart {
            out.push(Poly::monomial(self.coords(), 1, c, 1));
        }
        out
    }

    /// Exact membership test for an integer representative.
    pub fn satisfies(&self, v: &[i64]) -> bool {
        self.equations.iter().all(|p| p.eval_i128(v) == 0)
            && self.open_conditions().iter().all(|p| p.eval_i128(v) != 0)
    }
}

/// Divide out the gcd and normalize the sign so the first nonzero
/// coordinate is positive. Rejects the zero vector.
pub fn make_primitive(v: &[i64]) -> Result<Vec<i64>> {
    let mut g: i64 = 0;
    for &x in v {
        g = g.gcd(&x);
    }
    if g == 0 {
        return Err(Error::Invalid("zero vector has no primitive representative".into()));
    }
    let mut out: Vec<i64> = v.iter().map(|&x| x / g).collect();
    if let Some(&first) = out.iter().find(|&&x| x != 0) {
        if first < 0 {
            for x in &mut out {
                *x = -*x;
            }
        }
    }
    Ok(out)
}

/// Height of the primitive representative of `v` under the chosen norm.
pub fn height(v: &[i64], h: &HeightSpec) -> Result<f64> {
    let p = make_primitive(v)?;
    Ok(match h.norm {
        Norm::Max => p.iter().map(|x| x.abs()).max().unwrap() as f64,
        Norm::Euclidean => {
            let s: i128 = p.iter().map(|&x| (x as i128) * (x as i128)).sum();
            (s as f64).sqrt()
        }
    })
}

/// Exact strict threshold: does the primitive representative of `v` have
/// height < t?
pub fn height_below(v: &[i64], t: &BigRational, h: &HeightSpec) -> Result<bool> {
    let p = make_primitive(v)?;
    let (num, den) = (t.numer().clone(), t.denom().clone());
    if num.sign() == num_bigint::Sign::Minus || num.is_zero() {
        return Ok(false);
    }
    Ok(match h.norm {
        Norm::Max => {
            let m = p.iter().map(|x| x.abs()).max().unwrap();
            BigInt::from(m) * den < num
        }
        Norm::Euclidean => {
            let s: i128 = p.iter().map(|&x| (x as i128) * (x as i128)).sum();
            BigInt::from(s) * (&den * &den) < (&num * &num)
        }
    })
}

/// Integer search bounds equivalent to the strict height comparison.
#[derive(Clone, Copy, Debug)]
pub(crate) struct BoundSpec {
    /// |x_i| ≤ b_linf for every coordinate.
    pub b_linf: i64,
    /// Additionally Σ x_i² ≤ r2 for the euclidean norm.
    pub r2: Option<i128>,
}

impl BoundSpec {
    /// Bounds for primitive vectors of height strictly below t.
    pub fn from_threshold(t: &BigRational, h: &HeightSpec) -> Result<BoundSpec> {
        if !t.is_positive() {
            return Err(Error::Invalid("height threshold must be positive".into()));
        }
        let (p, q) = (t.numer(), t.denom());
        match h.norm {
            Norm::Max => {
                // integer m satisfies m·q < p ⟺ m ≤ ⌊(p−1)/q⌋
                let b = ((p - 1u8).div_floor(q))
                    .to_i64()
                    .ok_or_else(|| Error::Invalid("height threshold too large".into()))?;
                Ok(BoundSpec { b_linf: b.max(0), r2: None })
            }
            Norm::Euclidean => {
                // integer s satisfies s·q² < p² ⟺ s ≤ ⌊(p²−1)/q²⌋
                let s = ((p * p - 1u8).div_floor(&(q * q)))
                    .to_i128()
                    .ok_or_else(|| Error::Invalid("height threshold too large".into()))?;
                let s = s.max(0);
                let b = (s as f64).sqrt() as i64 + 1;
                let b = (0..=b).rev().find(|&b| (b as i128) * (b as i128) <= s).unwrap_or(0);
                Ok(BoundSpec { b_linf: b, r2: Some(s) })
            }
        }
    }

    /// Bounds for the sublattice g·ℤ^n: w is admissible iff g·w was.
    pub fn scaled_down(&self, g: i64) -> BoundSpec {
        BoundSpec {
            b_linf: self.b_linf / g,
            r2: self.r2.map(|s| s / ((g as i128) * (g as i128))),
        }
    }

    /// Does the partial sum of squares still admit the vector?
    pub fn admits_square_sum(&self, s: i128) -> bool {
        match self.r2 {
            None => true,
            Some(r2) => s <= r2,
        }
    }
}

/// Count points of height strictly below `t` with the default (algebraic)
/// engine and a generous work budget.
pub fn enumerate_points(spec: &VarietySpec, t: &BigRational, h: &HeightSpec) -> Result<u64> {
    enumerate_points_engine_b(spec, t, h, DEFAULT_WORK_BUDGET)
}

/// Default step budget for both engines (abstract operations, not seconds).
pub const DEFAULT_WORK_BUDGET: u64 = 2_000_000_000;

fn projective_space(name: &str, d: usize) -> VarietySpec {
    VarietySpec {
        name: name.into(),
        ambient_dim: d,
        equations: vec![],
        inequations: vec![],
        affine_chart: None,
        dim_u: d,
        engine_b_union: None,
    }
}

/// The 2×2 Pfaffian-style form x1·x6 − x2·x5 + x3·x4 in seven coordinates.
fn pfaffian_form() -> Poly {
    Poly::from_terms(&[
        (1, &[0, 1, 0, 0, 0, 0, 1]),
        (-1, &[0, 0, 1, 0, 0, 1, 0]),
        (1, &[0, 0, 0, 1, 1, 0, 0]),
    ])
}

/// Built-in varieties: ℙ¹, ℙ², ℙ³, the PGL₂ open cell, the SL₂ affine
/// quadric, and the degree-four skew model with its counting plan.
pub fn builtin_varieties() -> Vec<VarietySpec> {
    let det = Poly::from_terms(&[(1, &[1, 0, 0, 1]), (-1, &[0, 1, 1, 0])]);
    let pgl2 = VarietySpec {
        name: "pgl2".into(),
        ambient_dim: 3,
        equations: vec![],
        inequations: vec![det],
        affine_chart: None,
        dim_u: 3,
        engine_b_union: None,
    };

    // x1·x4 − x2·x3 − x0² = 0, chart x0 ≠ 0: unimodular 2×2 matrices.
    let sl2_eq = Poly::from_terms(&[
        (1, &[0, 1, 0, 0, 1]),
        (-1, &[0, 0, 1, 1, 0]),
        (-1, &[2, 0, 0, 0, 0]),
    ]);
    let sl2 = VarietySpec {
        name: "sl2".into(),
        ambient_dim: 4,
        equations: vec![sl2_eq],
        inequations: vec![],
        affine_chart: Some(0),
        dim_u: 3,
        engine_b_union: None,
    };

    let pf = pfaffian_form();
    // pf² − x0⁴ expanded.
    let pf_sq_minus = Poly::from_terms(&[
        (1, &[0, 2, 0, 0, 0, 0, 2]),
        (1, &[0, 0, 2, 0, 0, 2, 0]),
        (1, &[0, 0, 0, 2, 2, 0, 0]),
        (-2, &[0, 1, 1, 0, 0, 1, 1]),
        (2, &[0, 1, 0, 1, 1, 0, 1]),
        (-2, &[0, 0, 1, 1, 1, 1, 0]),
        (-1, &[4, 0, 0, 0, 0, 0, 0]),
    ]);
    let x0_sq = Poly::monomial(7, 1, 0, 2);
    let minus_x0_sq = Poly::monomial(7, -1, 0, 2);
    let x0 = Poly::monomial(7, 1, 0, 1);
    let mut pf_minus = pf.clone();
    pf_minus.terms.push(minus_x0_sq.terms[0].clone());
    let mut pf_plus = pf.clone();
    pf_plus.terms.push(x0_sq.terms[0].clone());
    let skew4 = VarietySpec {
        name: "skew4".into(),
        ambient_dim: 6,
        equations: vec![pf_sq_minus],
        inequations: vec![],
        affine_chart: Some(0),
        dim_u: 5,
        // pf² = x0⁴ splits as {pf = x0²} ⊔ {pf = −x0²} glued along
        // {pf = 0, x0 = 0}, hence the signed pieces below.
        engine_b_union: Some(vec![
            UnionPiece { equations: vec![pf_minus], sign: 1 },
            UnionPiece { equations: vec![pf_plus], sign: 1 },
            UnionPiece { equations: vec![pf, x0], sign: -1 },
        ]),
    };

    vec![
        projective_space("p1", 1),
        projective_space("p2", 2),
        projective_space("p3", 3),
        pgl2,
        sl2,
        skew4,
    ]
}

/// Look up a built-in variety by name.
pub fn builtin_variety(name: &str) -> Result<VarietySpec> {
    builtin_varieties()
        .into_iter()
        .find(|v| v.name == name)
        .ok_or_else(|| Error::UnknownCatalogEntry(name.into()))
}
