//! Classification of involutions by marked affine diagrams.
//!
//! An inner involution is selected by a vertex of mark 2 on the affine
//! diagram; an outer one by a tabulated family. The verdict records whether
//! the fixed subgroup inside the simply connected group is itself simply
//! connected or has fundamental group of order two.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::build::RootSystemData;
use crate::{Error, Result};

/// Fundamental group of the fixed subgroup: trivial or of order two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KacVerdict {
    SimplyConnected,
    Z2,
}

/// The tabulated outer-involution families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OuterFamily {
    /// Fixed points SO(n) inside SL(n), n ≥ 3, n ≠ 4.
    OrthogonalFixed { n: usize },
    /// Fixed points Sp(2n) inside SL(2n), n ≥ 3.
    SymplecticFixed { n: usize },
    /// Split orthogonal signature (p, q) with p, q odd, 3 ≤ p ≤ q.
    OddOddSplit { p: usize, q: usize },
    /// Split orthogonal signature (2l−1, 1): a hyperplane stabilizer.
    OddHyperplane { l: usize },
    /// F₄ fixed points inside E₆.
    E6FixedF4,
    /// Sp(8)/±1 fixed points inside E₆.
    E6FixedC4,
}

#[derive(Clone, Debug)]
pub enum Twist {
    Inner,
    Outer(OuterFamily),
}

/// A validated involution choice: a root system together with either a
/// distinguished mark-2 affine vertex (inner) or an outer family.
#[derive(Clone, Debug)]
pub struct AffineDiagramChoice {
    rs: RootSystemData,
    marks: Vec<i64>,
    distinguished_vertex: Option<usize>,
    twist: Twist,
}

impl AffineDiagramChoice {
    /// Inner choice: `vertex` indexes the affine diagram (1..=rank; vertex 0
    /// is the added lowest-root node) and must carry mark 2.
    pub fn inner(rs: RootSystemData, vertex: usize) -> Result<Self> {
        let marks = rs.affine_marks();
        if vertex == 0 || vertex > rs.rank() {
            return Err(Error::Invalid(format!(
                "vertex {vertex} out of range 1..={}",
                rs.rank()
            )));
        }
        if marks[vertex] != 2 {
            return Err(Error::Invalid(format!(
                "vertex {vertex} has mark {}, need mark 2",
                marks[vertex]
            )));
        }
        Ok(AffineDiagramChoice { rs, marks, distinguished_vertex: Some(vertex), twist: Twist::Inner })
    }

    pub fn outer(rs: RootSystemData, family: OuterFamily) -> Result<Self> {
        let ok = match family {
            OuterFamily::OrthogonalFixed { n } => {
                n >= 3 && n != 4 && rs.type_label() == 'A' && rs.rank() == n - 1
            }
            OuterFamily::SymplecticFixed { n } => {
                n >= 3 && rs.type_label() == 'A' && rs.rank() == 2 * n - 1
            }
            OuterFamily::OddOddSplit { p, q } => {
                p % 2 == 1
                    && q % 2 == 1
                    && (3..=q).contains(&p)
                    && rs.type_label() == 'D'
                    && 2 * rs.rank() == p + q
            }
            OuterFamily::OddHyperplane { l } => {
                l >= 3 && rs.type_label() == 'D' && rs.rank() == l
            }
            OuterFamily::E6FixedF4 | OuterFamily::E6FixedC4 => {
                rs.type_label() == 'E' && rs.rank() == 6
            }
        };
        if !ok {
            return Err(Error::OuterNotTabulated(format!(
                "{family:?} is not available on {}_{}",
                rs.type_label(),
                rs.rank()
            )));
        }
        let marks = rs.affine_marks();
        Ok(AffineDiagramChoice { rs, marks, distinguished_vertex: None, twist: Twist::Outer(family) })
    }

    pub fn root_system(&self) -> &RootSystemData {
        &self.rs
    }

    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn distinguished_vertex(&self) -> Option<usize> {
        self.distinguished_vertex
    }

    pub fn twist(&self) -> &Twist {
        &self.twist
    }
}

/// Decide the verdict for a validated involution choice.
pub fn kac_classify(choice: &AffineDiagramChoice) -> KacVerdict {
    match &choice.twist {
        Twist::Inner => {
            let vertex = choice.distinguished_vertex.expect("inner choice has a vertex");
            classify_inner(&choice.rs, vertex)
        }
        Twist::Outer(family) => match family {
            OuterFamily::OrthogonalFixed { .. } => KacVerdict::Z2,
            OuterFamily::SymplecticFixed { .. } => KacVerdict::SimplyConnected,
            OuterFamily::OddOddSplit { .. } => KacVerdict::Z2,
            OuterFamily::OddHyperplane { .. } => KacVerdict::SimplyConnected,
            OuterFamily::E6FixedF4 => KacVerdict::SimplyConnected,
            OuterFamily::E6FixedC4 => KacVerdict::Z2,
        },
    }
}

/// Inner rule: on a doubly-laced affine diagram the verdict is simply
/// connected exactly when the distinguished vertex is short; simply-laced
/// and triply-laced diagrams always give Z₂.
fn classify_inner(rs: &RootSystemData, vertex: usize) -> KacVerdict {
    let theta = rs.ambient_from_simple(rs.highest_root());
    let mut nodes: Vec<Vec<BigRational>> =
        vec![theta.iter().map(|x| -x.clone()).collect()];
    nodes.extend(rs.simple_roots().iter().cloned());
    let mut max_bond = 0i64;
    for i in 0..nodes.len() {
        for j in 0..nodes.len() {
            if i == j {
                continue;
            }
            let c_ij = BigRational::from_integer(2.into()) * rs.inner(&nodes[i], &nodes[j])
                / rs.inner(&nodes[j], &nodes[j]);
            let c_ji = BigRational::from_integer(2.into()) * rs.inner(&nodes[j], &nodes[i])
                / rs.inner(&nodes[i], &nodes[i]);
            let bond = (c_ij * c_ji).to_integer().to_i64().expect("small bond");
            max_bond = max_bond.max(bond);
        }
    }
    let two = BigRational::from_integer(2.into());
    let short = rs.squared_lengths()[vertex - 1] < two;
    debug_assert!(rs.squared_lengths()[vertex - 1].is_positive());
    match max_bond {
        2 if short => KacVerdict::SimplyConnected,
        _ => KacVerdict::Z2,
    }
}

/// How a choice is written down in JSON, e.g.
/// `{"type":"C","rank":4,"vertex":2,"twist":"inner"}`.
///
/// For outer twists the vertex selects a family:
/// on `A_r`, 0 is the orthogonal form (n = r+1) and 1 the symplectic form
/// (r odd, n = (r+1)/2); on `D_l`, 0 is the hyperplane stabilizer (2l−1, 1)
/// and v ≥ 1 the odd-odd split (2v+1, 2l−2v−1); on `E_6`, 0 fixes F₄ and
/// 1 fixes Sp(8)/±1.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DiagramChoiceSpec {
    #[serde(rename = "type")]
    pub type_label: char,
    pub rank: usize,
    pub vertex: usize,
    pub twist: TwistKind,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum TwistKind {
    Inner,
    Outer,
}

impl DiagramChoiceSpec {
    pub fn resolve(&self) -> Result<AffineDiagramChoice> {
        let rs = super::build_root_system(self.type_label, self.rank)?;
        match self.twist {
            TwistKind::Inner => AffineDiagramChoice::inner(rs, self.vertex),
            TwistKind::Outer => {
                let family = match (self.type_label, self.vertex) {
                    ('A', 0) => OuterFamily::OrthogonalFixed { n: self.rank + 1 },
                    ('A', 1) if self.rank % 2 == 1 => {
                        OuterFamily::SymplecticFixed { n: (self.rank + 1) / 2 }
                    }
                    ('D', 0) => OuterFamily::OddHyperplane { l: self.rank },
                    ('D', v) if v >= 1 && 2 * v + 1 <= self.rank => {
                        let p = 2 * v + 1;
                        OuterFamily::OddOddSplit { p, q: 2 * self.rank - p }
                    }
                    ('E', 0) if self.rank == 6 => OuterFamily::E6FixedF4,
                    ('E', 1) if self.rank == 6 => OuterFamily::E6FixedC4,
                    _ => {
                        return Err(Error::OuterNotTabulated(format!(
                            "no outer family for {}_{} vertex {}",
                            self.type_label, self.rank, self.vertex
                        )))
                    }
                };
                AffineDiagramChoice::outer(rs, family)
            }
        }
    }
}
