//! Finite group actions on presented abelian groups, stored by full
//! enumeration of the acting automorphisms.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;

use super::{AbHom, FinAbGroup, IntMatrix};
use crate::{Error, Result};

/// An explicitly enumerated group of automorphisms of a fixed presented
/// group: every actor is validated as an automorphism, the identity must be
/// present, and the list must be closed under composition.
#[derive(Clone, Debug)]
pub struct GroupAction {
    ambient_rank: usize,
    actors: Vec<IntMatrix>,
    identity: usize,
    /// table[i][j] = index of the actor inducing actor_i ∘ actor_j.
    table: Vec<Vec<usize>>,
}

/// Canonical images of the ambient basis vectors — a fingerprint of the
/// induced endomorphism that is insensitive to the matrix representative.
fn induced_fingerprint(group: &FinAbGroup, m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..group.ambient_rank()).map(|j| group.canonical_form(&m.column(j))).collect()
}

impl GroupAction {
    pub fn new(group: &FinAbGroup, actors: Vec<IntMatrix>) -> Result<Self> {
        let n = group.ambient_rank();
        if actors.is_empty() {
            return Err(Error::InvalidAction("empty actor list".into()));
        }
        for (i, a) in actors.iter().enumerate() {
            if a.rows() != n || a.cols() != n {
                return Err(Error::InvalidAction(format!("actor {i} is not {n}x{n}")));
            }
            // Compatible endomorphism?
            AbHom::new(group.clone(), group.clone(), a.clone()).map_err(|e| {
                Error::InvalidAction(format!("actor {i} does not preserve relations: {e}"))
            })?;
            // Automorphism: injective and surjective on the presented group.
            let h = AbHom::new(group.clone(), group.clone(), a.clone()).expect("checked above");
            if !h.is_injective() {
                return Err(Error::InvalidAction(format!("actor {i} is not injective")));
            }
            let image_quotient =
                FinAbGroup::new(n, a.hstack(group.relations())).expect("quotient by image");
            if !image_quotient.is_trivial() {
                return Err(Error::InvalidAction(format!("actor {i} is not surjective")));
            }
        }

        let fingerprints: Vec<_> = actors.iter().map(|a| induced_fingerprint(group, a)).collect();
        let identity_fp = induced_fingerprint(group, &IntMatrix::identity(n));
        let identity = fingerprints
            .iter()
            .position(|fp| *fp == identity_fp)
            .ok_or_else(|| Error::InvalidAction("identity actor missing".into()))?;

        let mut table = vec![vec![0usize; actors.len()]; actors.len()];
        for i in 0..actors.len() {
            for j in 0..actors.len() {
                let prod = actors[i].mul(&actors[j]);
                let fp = induced_fingerprint(group, &prod);
                let k = fingerprints.iter().position(|x| *x == fp).ok_or_else(|| {
                    Error::InvalidAction(format!("composition of actors {i} and {j} is unlisted"))
                })?;
                table[i][j] = k;
            }
        }

        Ok(GroupAction { ambient_rank: n, actors, identity, table })
    }

    /// The one-element action of the identity.
    pub fn trivial(group: &FinAbGroup) -> Self {
        Self::new(group, vec![IntMatrix::identity(group.ambient_rank())])
            .expect("trivial action is valid")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn len(&self) -> usize {
        self.actors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actors.is_empty()
    }

    pub fn actor(&self, i: usize) -> Option<&IntMatrix> {
        self.actors.get(i)
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn compose_index(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    /// All cyclic subgroups ⟨g⟩, as sorted actor-index sets, deduplicated.
    /// Always contains the trivial subgroup.
    pub fn cyclic_subgroups(&self) -> Vec<Vec<usize>> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for g in 0..self.actors.len() {
            let mut orbit = BTreeSet::new();
            let mut cur = self.identity;
            loop {
                if !orbit.insert(cur) {
                    break;
                }
                cur = self.compose_index(cur, g);
            }
            seen.insert(orbit.into_iter().collect());
        }
        seen.into_iter().collect()
    }
}

/// Negation automorphism x ↦ −x on an ambient rank-n presentation.
pub fn negation_matrix(n: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        *m.entry_mut(i, i) = -BigInt::one();
    }
    m
}
