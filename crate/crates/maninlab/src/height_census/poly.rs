//! Sparse integer polynomials in the ambient coordinates, with the exact
//! evaluations and decompositions the enumeration engines need.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One monomial: coeff · ∏ xᵢ^{exponents[i]}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: i64,
    pub exponents: Vec<u32>,
}

/// A sparse polynomial with exact integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poly {
    pub terms: Vec<Term>,
}

impl Poly {
    /// Build from (coeff, exponents) pairs.
    pub fn from_terms(terms: &[(i64, &[u32])]) -> Poly {
        Poly {
            terms: terms
                .iter()
                .map(|(c, e)| Term { coeff: *c, exponents: e.to_vec() })
                .collect(),
        }
    }

    /// A single monomial c · x_var^k in `n` variables.
    pub fn monomial(n: usize, coeff: i64, var: usize, k: u32) -> Poly {
        let mut e = vec![0u32; n];
        e[var] = k;
        Poly { terms: vec![Term { coeff, exponents: e }] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Shared variable count, or an error if terms disagree.
    pub fn check_n_vars(&self, n: usize) -> Result<()> {
        for t in &self.terms {
            if t.exponents.len() != n {
                return Err(Error::Shape(format!(
                    "term has {} exponents, ambient needs {n}",
                    t.exponents.len()
                )));
            }
            if t.coeff == 0 {
                return Err(Error::Invalid("zero coefficient term".into()));
            }
        }
        Ok(())
    }

    /// Total degree if homogeneous (all terms equal degree), else None.
    /// The zero polynomial is homogeneous of any degree; reported as Some(0).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.iter().map(|t| t.exponents.iter().sum::<u32>());
        let first = match degrees.next() {
            None => return Some(0),
            Some(d) => d,
        };
        if degrees.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn eval_i128(&self, v: &[i64]) -> i128 {
        let mut total: i128 = 0;
        for t in &self.terms {
            let mut m: i128 = t.coeff as i128;
            for (x, &e) in v.iter().zip(&t.exponents) {
                for _ in 0..e {
                    m *= *x as i128;
                }
            }
            total += m;
        }
        total
    }

    /// Evaluate modulo p on residues in 0..p.
    pub fn eval_mod(&self, v: &[u64], p: u64) -> u64 {
        let mut total: u64 = 0;
        for t in &self.terms {
            let mut m = (t.coeff.rem_euclid(p as i64)) as u64 % p;
            for (x, &e) in v.iter().zip(&t.exponents) {
                for _ in 0..e {
                    m = m * x % p;
                }
            }
            total = (total + m) % p;
        }
        total
    }

    /// Indices of variables occurring with positive exponent.
    pub fn variables(&self) -> Vec<usize> {
        let mut present = vec![];
        if let Some(t) = self.terms.first() {
            for i in 0..t.exponents.len() {
                if self.terms.iter().any(|t| t.exponents[i] > 0) {
                    present.push(i);
                }
            }
        }
        present
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|t| t.exponents[var]).max().unwrap_or(0)
    }

    /// If this is a single monomial c·x^k in exactly one variable, that
    /// variable (whose vanishing the equation then forces).
    pub fn single_variable_monomial(&self) -> Option<usize> {
        if self.terms.len() != 1 {
            return None;
        }
        let t = &self.terms[0];
        let mut vars = t.exponents.iter().enumerate().filter(|(_, &e)| e > 0);
        match (vars.next(), vars.next()) {
            (Some((v, _)), None) => Some(v),
            _ => None,
        }
    }

    /// Drop all terms containing `var` (substitute x_var = 0).
    pub fn substitute_zero(&self, var: usize) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|t| t.exponents[var] == 0)
                .cloned()
                .collect(),
        }
    }

    /// Split as A·x_var + C when the polynomial is (at most) linear in
    /// `var`; A has the x_var factor removed.
    pub fn split_linear(&self, var: usize) -> Option<(Poly, Poly)> {
        if self.degree_in(var) > 1 {
            return None;
        }
        let mut a = Vec::new();
        let mut c = Vec::new();
        for t in &self.terms {
            if t.exponents[var] == 1 {
                let mut stripped = t.clone();
                stripped.exponents[var] = 0;
                a.push(stripped);
            } else {
                c.push(t.clone());
            }
        }
        Some((Poly { terms: a }, Poly { terms: c }))
    }
}

/// Structure of one term of a variable-disjoint quadratic-or-power form.
#[derive(Clone, Copy, Debug)]
pub enum FormTerm {
    /// c · x_a · x_b with a ≠ b.
    Bilinear { coeff: i64, a: usize, b: usize },
    /// c · x_v^k, k ≥ 1.
    Power { coeff: i64, var: usize, k: u32 },
}

impl FormTerm {
    pub fn variables(&self) -> Vec<usize> {
        match *self {
            FormTerm::Bilinear { a, b, .. } => vec![a, b],
            FormTerm::Power { var, .. } => vec![var],
        }
    }
}

/// Recognize Σ terms with pairwise-disjoint variable sets, each term either
/// bilinear x_a·x_b or a single-variable power. The convolution counter
/// needs exactly this shape.
pub fn disjoint_form(p: &Poly) -> Option<Vec<FormTerm>> {
    let mut used: Vec<usize> = Vec::new();
    let mut form = Vec::with_capacity(p.terms.len());
    for t in &p.terms {
        let vars: Vec<(usize, u32)> =
            t.exponents.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i, e)).collect();
        let ft = match vars.as_slice() {
            [(v, k)] => FormTerm::Power { coeff: t.coeff, var: *v, k: *k },
            [(a, 1), (b, 1)] => FormTerm::Bilinear { coeff: t.coeff, a: *a, b: *b },
            _ => return None,
        };
        for v in ft.variables() {
            if used.contains(&v) {
                return None;
            }
            used.push(v);
        }
        form.push(ft);
    }
    Some(form)
}
