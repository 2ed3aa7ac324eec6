//! Orbit-finiteness verdicts for symmetric pairs.
//!
//! A pair is described by the fundamental groups of the two compactified
//! groups, the map between them induced by the embedding, and a finite group
//! of twists acting compatibly on both sides. The integral points of bounded
//! height fall into finitely many orbits exactly when, for every cyclic
//! subgroup of twists, the induced map between the torsion subgroups of the
//! twist-coinvariants is injective. Failures come with a checkable witness.

mod catalog;

use num_bigint::BigInt;

pub use catalog::{
    builtin_catalog, even_hyperplane, even_hyperplane_coroot_matrix, e6_f4, f4_spin9,
    find_pair, odd_hyperplane, odd_hyperplane_coroot_matrix, odd_split_coroot_matrix,
    projective_linear_double, quaternionic_coroot_matrix, symplectic_in_linear,
    symplectic_product, symplectic_product_coroot_matrix, Isogeny, PairSpec,
};

use crate::exact_lattice::{AbHom, FinAbGroup, GroupAction, IntMatrix};
use crate::{Error, Result};

/// A symmetric pair prepared for the finiteness check: fundamental groups of
/// both compactified groups, the embedding-induced map, and a finite twist
/// group acting on both sides.
#[derive(Clone, Debug)]
pub struct SymmetricPair {
    name: String,
    pi1_h: FinAbGroup,
    pi1_g: FinAbGroup,
    embedding: AbHom,
    action_h: GroupAction,
    action_g: GroupAction,
    /// Diagonal action on π₁(H̄) ⊕ π₁(Ḡ); its closure table is the abstract
    /// twist group even when one side represents it unfaithfully.
    paired: GroupAction,
    expected_finite: Option<bool>,
}

impl SymmetricPair {
    /// Validate and assemble a pair. `actors` lists the twists as matrix
    /// pairs (action on π₁(H̄), action on π₁(Ḡ)); the identity pair must be
    /// present and the list must be closed under composition.
    pub fn new(
        name: impl Into<String>,
        pi1_h: FinAbGroup,
        pi1_g: FinAbGroup,
        embedding: IntMatrix,
        actors: Vec<(IntMatrix, IntMatrix)>,
        expected_finite: Option<bool>,
    ) -> Result<Self> {
        let name = name.into();
        let embedding = AbHom::new(pi1_h.clone(), pi1_g.clone(), embedding)?;
        let sum_group = FinAbGroup::new(
            pi1_h.ambient_rank() + pi1_g.ambient_rank(),
            pi1_h.relations().block_diag(pi1_g.relations()),
        )?;
        let paired_actors: Vec<IntMatrix> =
            actors.iter().map(|(h, g)| h.block_diag(g)).collect();
        let paired = GroupAction::new(&sum_group, paired_actors)?;
        let (actors_h, actors_g): (Vec<_>, Vec<_>) = actors.into_iter().unzip();
        let action_h = GroupAction::new(&pi1_h, actors_h)?;
        let action_g = GroupAction::new(&pi1_g, actors_g)?;
        for i in 0..action_h.len() {
            let eh = embedding.matrix().mul(action_h.actor(i).expect("index in range"));
            let ge = action_g.actor(i).expect("index in range").mul(embedding.matrix());
            for j in 0..pi1_h.ambient_rank() {
                if !pi1_g.elements_equal(&eh.column(j), &ge.column(j)) {
                    return Err(Error::Incompatible(format!(
                        "twist {i} of pair {name} does not commute with the embedding"
                    )));
                }
            }
        }
        Ok(SymmetricPair {
            name,
            pi1_h,
            pi1_g,
            embedding,
            action_h,
            action_g,
            paired,
            expected_finite,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pi1_h(&self) -> &FinAbGroup {
        &self.pi1_h
    }

    pub fn pi1_g(&self) -> &FinAbGroup {
        &self.pi1_g
    }

    pub fn embedding(&self) -> &AbHom {
        &self.embedding
    }

    pub fn twist_count(&self) -> usize {
        self.paired.len()
    }

    /// The documented verdict for catalog entries, if any.
    pub fn expected_finite(&self) -> Option<bool> {
        self.expected_finite
    }

    /// The torsion-coinvariant map for one subgroup of twists.
    fn torsion_map_for(&self, subgroup: &[usize]) -> Result<AbHom> {
        let (qh, _) = self.pi1_h.coinvariants(&self.action_h, subgroup)?;
        let (qg, _) = self.pi1_g.coinvariants(&self.action_g, subgroup)?;
        let hom = AbHom::new(qh, qg, self.embedding.matrix().clone())
            .expect("embedding descends to coinvariants");
        Ok(hom.induced_on_torsion())
    }

    /// Run the finiteness criterion over every cyclic subgroup of twists.
    pub fn check_finiteness(&self) -> FinitenessReport {
        let subgroups = self.paired.cyclic_subgroups();
        let checked = subgroups.len();
        for subgroup in subgroups {
            let t = self.torsion_map_for(&subgroup).expect("validated subgroup indices");
            let bad = t
                .kernel_generators()
                .into_iter()
                .find(|gen| !t.source().is_zero_element(gen));
            if let Some(element) = bad {
                return FinitenessReport {
                    name: self.name.clone(),
                    verdict: Verdict::Infinite(Witness { subgroup, element }),
                    subgroups_checked: checked,
                };
            }
            debug_assert!(t.is_injective());
        }
        FinitenessReport {
            name: self.name.clone(),
            verdict: Verdict::Finite,
            subgroups_checked: checked,
        }
    }

    /// Independently re-check a witness: its element must be nonzero in the
    /// torsion coinvariants on the subgroup side and die in the target.
    pub fn verify_witness(&self, witness: &Witness) -> bool {
        if witness.subgroup.iter().any(|&i| i >= self.paired.len()) {
            return false;
        }
        let t = match self.torsion_map_for(&witness.subgroup) {
            Ok(t) => t,
            Err(_) => return false,
        };
        if witness.element.len() != t.source().ambient_rank() {
            return false;
        }
        !t.source().is_zero_element(&witness.element)
            && t.target().is_zero_element(&t.apply(&witness.element))
    }
}

/// Outcome of the check for one pair.
#[derive(Clone, Debug)]
pub struct FinitenessReport {
    pub name: String,
    pub verdict: Verdict,
    pub subgroups_checked: usize,
}

impl FinitenessReport {
    pub fn is_finite(&self) -> bool {
        matches!(self.verdict, Verdict::Finite)
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Finite,
    Infinite(Witness),
}

/// Evidence of infinitude: a twist subgroup and a torsion class that the
/// induced map kills. Coordinates refer to the canonical torsion presentation
/// of the coinvariants, which is deterministic for a given pair.
#[derive(Clone, Debug)]
pub struct Witness {
    pub subgroup: Vec<usize>,
    pub element: Vec<BigInt>,
}

/// Invariant factors of the torsion of coker(map). An empty list means the
/// sublattice image has torsion-free quotient, i.e. the corresponding fixed
/// subgroup is simply connected.
pub fn cokernel_torsion_factors(map: &IntMatrix) -> Result<Vec<BigInt>> {
    let coker = FinAbGroup::new(map.rows(), map.clone())?;
    Ok(coker.invariant_factors().0.to_vec())
}
