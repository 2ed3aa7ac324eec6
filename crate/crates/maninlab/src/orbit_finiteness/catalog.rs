//! Built-in symmetric pairs with documented verdicts, plus the coroot-lattice
//! matrices used to cross-check fixed-subgroup fundamental groups.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::SymmetricPair;
use crate::exact_lattice::{negation_matrix, FinAbGroup, IntMatrix};
use crate::{Error, Result};

/// Which point of the isogeny class the pair lives at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Isogeny {
    SimplyConnected,
    Adjoint,
}

impl Isogeny {
    fn tag(self) -> &'static str {
        match self {
            Isogeny::SimplyConnected => "sc",
            Isogeny::Adjoint => "adj",
        }
    }
}

fn identity_only(rank_h: usize, rank_g: usize) -> Vec<(IntMatrix, IntMatrix)> {
    vec![(IntMatrix::identity(rank_h), IntMatrix::identity(rank_g))]
}

fn trivial_pair(name: String) -> Result<SymmetricPair> {
    SymmetricPair::new(
        name,
        FinAbGroup::trivial(),
        FinAbGroup::trivial(),
        IntMatrix::zeros(0, 0),
        identity_only(0, 0),
        Some(true),
    )
}

/// The quaternionic form: Sp(2n) fixed inside SL(2n), n ≥ 3. With the
/// Galois twist acting by inversion the adjoint pair is finite exactly for
/// odd n; untwisted it is always finite.
pub fn symplectic_in_linear(n: usize, isogeny: Isogeny, twisted: bool) -> Result<SymmetricPair> {
    if n < 3 {
        return Err(Error::Invalid(format!("quaternionic pair needs n >= 3, got {n}")));
    }
    let twist_tag = if twisted { "-twisted" } else { "" };
    let name = format!("aII-n{n}-{}{twist_tag}", isogeny.tag());
    match isogeny {
        Isogeny::SimplyConnected => trivial_pair(name),
        Isogeny::Adjoint => {
            let mut actors = identity_only(1, 1);
            if twisted {
                actors.push((negation_matrix(1), negation_matrix(1)));
            }
            SymmetricPair::new(
                name,
                FinAbGroup::cyclic(2),
                FinAbGroup::cyclic(2 * n as u64),
                IntMatrix::from_rows(&[&[n as i64]]),
                actors,
                Some(!twisted || n % 2 == 1),
            )
        }
    }
}

/// Sp(2p) × Sp(2q) fixed inside Sp(2p + 2q), 1 ≤ p ≤ q. Always finite.
pub fn symplectic_product(p: usize, q: usize, isogeny: Isogeny) -> Result<SymmetricPair> {
    if p < 1 || p > q {
        return Err(Error::Invalid(format!("need 1 <= p <= q, got ({p}, {q})")));
    }
    let name = format!("cII-p{p}q{q}-{}", isogeny.tag());
    match isogeny {
        Isogeny::SimplyConnected => trivial_pair(name),
        Isogeny::Adjoint => SymmetricPair::new(
            name,
            FinAbGroup::cyclic(2),
            FinAbGroup::cyclic(2),
            IntMatrix::identity(1),
            identity_only(1, 1),
            Some(true),
        ),
    }
}

/// SO(2l) fixed inside SO(2l + 1), l ≥ 2. Always finite.
pub fn even_hyperplane(l: usize, isogeny: Isogeny) -> Result<SymmetricPair> {
    if l < 2 {
        return Err(Error::Invalid(format!("even hyperplane pair needs l >= 2, got {l}")));
    }
    let name = format!("bdI-{}-1-{}", 2 * l, isogeny.tag());
    match isogeny {
        Isogeny::SimplyConnected => trivial_pair(name),
        Isogeny::Adjoint => SymmetricPair::new(
            name,
            FinAbGroup::cyclic(2),
            FinAbGroup::cyclic(2),
            IntMatrix::identity(1),
            identity_only(1, 1),
            Some(true),
        ),
    }
}

/// SO(2l − 1) fixed inside SO(2l), l ≥ 3. The center of Spin(2l) is Z/4 for
/// odd l and Z/2 × Z/2 for even l; the hyperplane class lands on the element
/// of order two either way. Twisting by the outer flip makes the adjoint
/// pair infinite for every l.
pub fn odd_hyperplane(l: usize, isogeny: Isogeny, twisted: bool) -> Result<SymmetricPair> {
    if l < 3 {
        return Err(Error::Invalid(format!("odd hyperplane pair needs l >= 3, got {l}")));
    }
    let twist_tag = if twisted { "-twisted" } else { "" };
    let name = format!("bdI-{}-1-{}{twist_tag}", 2 * l - 1, isogeny.tag());
    match isogeny {
        Isogeny::SimplyConnected => trivial_pair(name),
        Isogeny::Adjoint if l % 2 == 1 => {
            let mut actors = identity_only(1, 1);
            if twisted {
                actors.push((negation_matrix(1), negation_matrix(1)));
            }
            SymmetricPair::new(
                name,
                FinAbGroup::cyclic(2),
                FinAbGroup::cyclic(4),
                IntMatrix::from_rows(&[&[2]]),
                actors,
                Some(!twisted),
            )
        }
        Isogeny::Adjoint => {
            let mut actors = identity_only(1, 2);
            if twisted {
                let flip = IntMatrix::from_rows(&[&[0, 1], &[1, 0]]);
                actors.push((negation_matrix(1), flip));
            }
            SymmetricPair::new(
                name,
                FinAbGroup::cyclic(2),
                FinAbGroup::from_diagonal(&[2, 2]),
                IntMatrix::from_rows(&[&[1], &[1]]),
                actors,
                Some(!twisted),
            )
        }
    }
}

/// F₄ fixed inside E₆. The adjoint fundamental group Z/3 receives the
/// trivial group, so the pair is always finite.
pub fn e6_f4(isogeny: Isogeny) -> Result<SymmetricPair> {
    let name = format!("eIV-{}", isogeny.tag());
    match isogeny {
        Isogeny::SimplyConnected => trivial_pair(name),
        Isogeny::Adjoint => SymmetricPair::new(
            name,
            FinAbGroup::trivial(),
            FinAbGroup::cyclic(3),
            IntMatrix::zeros(1, 0),
            vec![(IntMatrix::identity(0), IntMatrix::identity(1))],
            Some(true),
        ),
    }
}

/// Spin(9) fixed inside F₄; both fundamental groups vanish.
pub fn f4_spin9(isogeny: Isogeny) -> Result<SymmetricPair> {
    trivial_pair(format!("fII-{}", isogeny.tag()))
}

/// PGL(n) embedded in PGL(n) × PGL(n) by g ↦ (g, g⁻ᵗ), with the factor swap
/// as twist: the group variety of the projective unitary family. Finite for
/// odd n, infinite for even n.
pub fn projective_linear_double(n: usize) -> Result<SymmetricPair> {
    if n < 2 {
        return Err(Error::Invalid(format!("doubled pair needs n >= 2, got {n}")));
    }
    let swap = IntMatrix::from_rows(&[&[0, 1], &[1, 0]]);
    SymmetricPair::new(
        format!("psl{n}-double"),
        FinAbGroup::cyclic(n as u64),
        FinAbGroup::from_diagonal(&[n as i64, n as i64]),
        IntMatrix::from_rows(&[&[1], &[-1]]),
        vec![
            (IntMatrix::identity(1), IntMatrix::identity(2)),
            (negation_matrix(1), swap),
        ],
        Some(n % 2 == 1),
    )
}

/// Every built-in pair, with documented verdicts, over the standard grids.
pub fn builtin_catalog() -> Vec<SymmetricPair> {
    let mut pairs = Vec::new();
    for n in 3..=10 {
        for iso in [Isogeny::SimplyConnected, Isogeny::Adjoint] {
            for twisted in [false, true] {
                pairs.push(symplectic_in_linear(n, iso, twisted).expect("valid grid entry"));
            }
        }
    }
    for p in 1..=5 {
        for q in p..=5 {
            for iso in [Isogeny::SimplyConnected, Isogeny::Adjoint] {
                pairs.push(symplectic_product(p, q, iso).expect("valid grid entry"));
            }
        }
    }
    for l in 3..=10 {
        for iso in [Isogeny::SimplyConnected, Isogeny::Adjoint] {
            pairs.push(even_hyperplane(l, iso).expect("valid grid entry"));
            for twisted in [false, true] {
                pairs.push(odd_hyperplane(l, iso, twisted).expect("valid grid entry"));
            }
        }
    }
    for iso in [Isogeny::SimplyConnected, Isogeny::Adjoint] {
        pairs.push(e6_f4(iso).expect("valid grid entry"));
        pairs.push(f4_spin9(iso).expect("valid grid entry"));
    }
    for n in 2..=10 {
        pairs.push(projective_linear_double(n).expect("valid grid entry"));
    }
    pairs
}

pub fn find_pair(name: &str) -> Option<SymmetricPair> {
    builtin_catalog().into_iter().find(|p| p.name() == name)
}

/// Serializable description of a pair, for external catalog files.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairSpec {
    pub name: String,
    pub pi1_h: FinAbGroup,
    pub pi1_g: FinAbGroup,
    pub embedding: IntMatrix,
    pub actors_h: Vec<IntMatrix>,
    pub actors_g: Vec<IntMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_finite: Option<bool>,
}

impl PairSpec {
    pub fn build(self) -> Result<SymmetricPair> {
        if self.actors_h.len() != self.actors_g.len() {
            return Err(Error::Shape(format!(
                "{} twists on one side, {} on the other",
                self.actors_h.len(),
                self.actors_g.len()
            )));
        }
        let actors = self.actors_h.into_iter().zip(self.actors_g).collect();
        SymmetricPair::new(
            self.name,
            self.pi1_h,
            self.pi1_g,
            self.embedding,
            actors,
            self.expected_finite,
        )
    }
}

impl From<&SymmetricPair> for PairSpec {
    fn from(pair: &SymmetricPair) -> Self {
        let actors_h =
            (0..pair.action_h.len()).map(|i| pair.action_h.actor(i).unwrap().clone()).collect();
        let actors_g =
            (0..pair.action_g.len()).map(|i| pair.action_g.actor(i).unwrap().clone()).collect();
        PairSpec {
            name: pair.name.clone(),
            pi1_h: pair.pi1_h.clone(),
            pi1_g: pair.pi1_g.clone(),
            embedding: pair.embedding.matrix().clone(),
            actors_h,
            actors_g,
            expected_finite: pair.expected_finite,
        }
    }
}

/// Simple coroots of SO(2l) in the coroot basis of SO(2l + 1): the identity
/// pattern except that the forked column is b_{l−1} + b_l.
pub fn even_hyperplane_coroot_matrix(l: usize) -> IntMatrix {
    assert!(l >= 2, "need l >= 2");
    let mut m = IntMatrix::identity(l);
    *m.entry_mut(l - 2, l - 1) = BigInt::one();
    m
}

/// Simple coroots of SO(2l − 1) in the coroot basis of SO(2l): unit columns
/// b₁ … b_{l−2} followed by b_{l−1} + b_l.
pub fn odd_hyperplane_coroot_matrix(l: usize) -> IntMatrix {
    assert!(l >= 3, "need l >= 3");
    let mut m = IntMatrix::zeros(l, l - 1);
    for j in 0..l - 2 {
        *m.entry_mut(j, j) = BigInt::one();
    }
    *m.entry_mut(l - 2, l - 2) = BigInt::one();
    *m.entry_mut(l - 1, l - 2) = BigInt::one();
    m
}

/// Simple coroots of Sp(2p) × Sp(2q) in the coroot basis of Sp(2p + 2q).
pub fn symplectic_product_coroot_matrix(p: usize, q: usize) -> IntMatrix {
    assert!(p >= 1 && p <= q, "need 1 <= p <= q");
    let l = p + q;
    let mut m = IntMatrix::zeros(l, l);
    let mut col = 0;
    for j in 0..p - 1 {
        *m.entry_mut(j, col) = BigInt::one();
        col += 1;
    }
    // Long coroot of the first factor: e_p = b_p + … + b_l.
    for row in p - 1..l {
        *m.entry_mut(row, col) = BigInt::one();
    }
    col += 1;
    for j in p..l - 1 {
        *m.entry_mut(j, col) = BigInt::one();
        col += 1;
    }
    // Long coroot of the second factor: e_l = b_l.
    *m.entry_mut(l - 1, col) = BigInt::one();
    m
}

/// Simple coroots of Sp(2n) in the coroot basis of SL(2n): folded columns
/// b_i + b_{2n−i} and the middle column b_n.
pub fn quaternionic_coroot_matrix(n: usize) -> IntMatrix {
    assert!(n >= 2, "need n >= 2");
    let mut m = IntMatrix::zeros(2 * n - 1, n);
    for i in 0..n - 1 {
        *m.entry_mut(i, i) = BigInt::one();
        *m.entry_mut(2 * n - 2 - i, i) = BigInt::one();
    }
    *m.entry_mut(n - 1, n - 1) = BigInt::one();
    m
}

/// Simple coroots of SO(4) × SO(3) in the coroot basis of SO(7): the fixed
/// subgroup at the interior mark-2 vertex. The middle column b₁ + 2b₂ + b₃
/// spans an index-two sublattice with the others.
pub fn odd_split_coroot_matrix() -> IntMatrix {
    IntMatrix::from_rows(&[&[1, 1, 0], &[0, 2, 0], &[0, 1, 1]])
}
