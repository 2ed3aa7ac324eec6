//! Finitely generated abelian groups presented as ℤⁿ modulo a relation lattice.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{smith_normal_form, AbHom, GroupAction, IntMatrix, SmithDecomposition};
use crate::{Error, Result};

/// ℤⁿ / column-span(relations). Elements are ambient coordinate vectors;
/// equality is decided through the Smith basis of the relation lattice.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "GroupRepr", into = "GroupRepr")]
pub struct FinAbGroup {
    ambient_rank: usize,
    relations: IntMatrix,
    snf: SmithDecomposition,
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    ambient_rank: usize,
    relations: IntMatrix,
}

impl TryFrom<GroupRepr> for FinAbGroup {
    type Error = String;

    fn try_from(r: GroupRepr) -> std::result::Result<Self, String> {
        FinAbGroup::new(r.ambient_rank, r.relations).map_err(|e| e.to_string())
    }
}

impl From<FinAbGroup> for GroupRepr {
    fn from(g: FinAbGroup) -> Self {
        GroupRepr { ambient_rank: g.ambient_rank, relations: g.relations }
    }
}

impl PartialEq for FinAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.relations == other.relations
    }
}
impl Eq for FinAbGroup {}

impl FinAbGroup {
    pub fn new(ambient_rank: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != ambient_rank {
            return Err(Error::Shape(format!(
                "relations have {} rows for ambient rank {}",
                relations.rows(),
                ambient_rank
            )));
        }
        let snf = smith_normal_form(&relations);
        let rank = snf.rank();
        let invariant_factors =
            snf.diagonal().into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect();
        Ok(FinAbGroup {
            ambient_rank,
            relations,
            snf,
            invariant_factors,
            free_rank: ambient_rank - rank,
        })
    }

    /// The trivial group (ambient rank 0).
    pub fn trivial() -> Self {
        Self::new(0, IntMatrix::zeros(0, 0)).expect("trivial group")
    }

    /// ℤ/n for n ≥ 1 (n = 1 gives the trivial group on one generator).
    pub fn cyclic(n: u64) -> Self {
        assert!(n >= 1, "cyclic group needs n >= 1");
        Self::new(1, IntMatrix::from_rows(&[&[n as i64]])).expect("cyclic group")
    }

    /// Free abelian group ℤ^rank (no relations).
    pub fn free(rank: usize) -> Self {
        Self::new(rank, IntMatrix::zeros(rank, 0)).expect("free group")
    }

    /// ℤ/d₁ ⊕ … ⊕ ℤ/d_k from a diagonal relation matrix.
    pub fn from_diagonal(ds: &[i64]) -> Self {
        let k = ds.len();
        let mut rel = IntMatrix::zeros(k, k);
        for (i, &d) in ds.iter().enumerate() {
            *rel.entry_mut(i, i) = BigInt::from(d);
        }
        Self::new(k, rel).expect("diagonal group")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn snf(&self) -> &SmithDecomposition {
        &self.snf
    }

    /// Invariant factors (> 1, divisibility chain) and the free rank.
    pub fn invariant_factors(&self) -> (&[BigInt], usize) {
        (&self.invariant_factors, self.free_rank)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Group order; None when the free rank is positive.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().product())
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Same isomorphism class (equal invariant factors and free rank).
    pub fn is_isomorphic_to(&self, other: &Self) -> bool {
        self.invariant_factors == other.invariant_factors && self.free_rank == other.free_rank
    }

    /// Canonical coordinates of an element: transport through the Smith basis,
    /// reduce torsion coordinates modulo the diagonal. Two vectors represent
    /// the same element iff their canonical forms agree.
    pub fn canonical_form(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.ambient_rank, "element length mismatch");
        let mut y = self.snf.u.mul_vec(x);
        let diag = self.snf.diagonal();
        for (i, d) in diag.iter().enumerate() {
            if !d.is_zero() {
                y[i] = y[i].mod_floor(d);
            }
        }
        y
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        self.canonical_form(x).iter().all(|c| c.is_zero())
    }

    pub fn elements_equal(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        self.canonical_form(x) == self.canonical_form(y)
    }

    /// Whether b lies in the column span of the relations (over ℤ).
    pub fn relation_span_contains(&self, b: &[BigInt]) -> bool {
        assert_eq!(b.len(), self.ambient_rank, "vector length mismatch");
        let w = self.snf.u.mul_vec(b);
        let diag = self.snf.diagonal();
        for (i, wi) in w.iter().enumerate() {
            let divisible = match diag.get(i) {
                Some(d) if !d.is_zero() => (wi % d).is_zero(),
                _ => wi.is_zero(),
            };
            if !divisible {
                return false;
            }
        }
        true
    }

    /// The subgroup of finite-order elements, with its inclusion.
    pub fn torsion_subgroup(&self) -> (FinAbGroup, AbHom) {
        let rank = self.snf.rank();
        let diag = self.snf.diagonal();
        let mut rel = IntMatrix::zeros(rank, rank);
        for i in 0..rank {
            *rel.entry_mut(i, i) = diag[i].clone();
        }
        let torsion = FinAbGroup::new(rank, rel).expect("torsion presentation");
        // Generator i of the torsion presentation is the element u_inv·e_i,
        // i.e. the i-th Smith basis vector of the ambient lattice.
        let incl_cols: Vec<Vec<BigInt>> = (0..rank).map(|i| self.snf.u_inv.column(i)).collect();
        let incl_matrix = IntMatrix::from_columns(self.ambient_rank, &incl_cols);
        let incl = AbHom::new(torsion.clone(), self.clone(), incl_matrix)
            .expect("torsion inclusion is compatible");
        (torsion, incl)
    }

    /// Largest quotient on which the chosen actors act trivially:
    /// ℤⁿ / (relations + columns of (A_g − 1) for g in the subgroup).
    pub fn coinvariants(
        &self,
        act: &GroupAction,
        subgroup: &[usize],
    ) -> Result<(FinAbGroup, AbHom)> {
        if act.ambient_rank() != self.ambient_rank {
            return Err(Error::Shape("action is for a different ambient rank".into()));
        }
        let mut rel = self.relations.clone();
        for &g in subgroup {
            let actor = act.actor(g).ok_or(Error::UnknownActor(g))?;
            let mut shifted = actor.clone();
            for i in 0..self.ambient_rank {
                *shifted.entry_mut(i, i) -= BigInt::one();
            }
            rel = rel.hstack(&shifted);
        }
        let quotient = FinAbGroup::new(self.ambient_rank, rel)?;
        let proj = AbHom::new(
            self.clone(),
            quotient.clone(),
            IntMatrix::identity(self.ambient_rank),
        )
        .expect("quotient projection is compatible");
        Ok((quotient, proj))
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))
    }
}
