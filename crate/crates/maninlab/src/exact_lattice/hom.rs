//! Homomorphisms between presented abelian groups: compatibility checking,
//! torsion restriction, kernels, injectivity.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{smith_normal_form, FinAbGroup, IntMatrix};
use crate::{Error, Result};

/// A homomorphism source → target given by an integer matrix on ambient
/// coordinates. Construction verifies that the matrix carries the source
/// relation lattice into the target relation lattice.
#[derive(Clone, Debug)]
pub struct AbHom {
    source: FinAbGroup,
    target: FinAbGroup,
    matrix: IntMatrix,
}

impl AbHom {
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.ambient_rank() || matrix.cols() != source.ambient_rank() {
            return Err(Error::Shape(format!(
                "hom matrix is {}x{}, want {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ambient_rank(),
                source.ambient_rank()
            )));
        }
        for j in 0..source.relations().cols() {
            let image = matrix.mul_vec(&source.relations().column(j));
            if !target.relation_span_contains(&image) {
                return Err(Error::Incompatible(format!(
                    "image of source relation {j} is not in the target relation span"
                )));
            }
        }
        Ok(AbHom { source, target, matrix })
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        AbHom::new(g.clone(), g.clone(), IntMatrix::identity(g.ambient_rank()))
            .expect("identity is compatible")
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(x)
    }

    /// The restriction to torsion subgroups, expressed between the torsion
    /// presentations of source and target.
    pub fn induced_on_torsion(&self) -> AbHom {
        let (ts, incl_s) = self.source.torsion_subgroup();
        let (tt, _) = self.target.torsion_subgroup();
        let u_t = &self.target.snf().u;
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(ts.ambient_rank());
        for i in 0..ts.ambient_rank() {
            let x = incl_s.matrix.column(i);
            let y = self.matrix.mul_vec(&x);
            let w = u_t.mul_vec(&y);
            // A torsion element maps to a torsion element, so the coordinates
            // beyond the target torsion rank vanish identically.
            for free in &w[tt.ambient_rank()..] {
                debug_assert!(free.is_zero(), "torsion image has a free component");
            }
            cols.push(w[..tt.ambient_rank()].to_vec());
        }
        let matrix = IntMatrix::from_columns(tt.ambient_rank(), &cols);
        AbHom::new(ts, tt, matrix).expect("torsion transport stays compatible")
    }

    /// Generators (in source ambient coordinates) of the lattice
    /// {x : h(x) ∈ target relations} whose classes span the kernel.
    pub fn kernel_generators(&self) -> Vec<Vec<BigInt>> {
        let a = self.source.ambient_rank();
        let stacked = self.matrix.hstack(self.target.relations());
        null_space_lattice(&stacked).iter().map(|v| v[..a].to_vec()).collect()
    }

    /// Kernel presented as a group: the lattice {x : h(x) ∈ target relations}
    /// modulo the source relations.
    pub fn kernel(&self) -> FinAbGroup {
        let a = self.source.ambient_rank();
        let gen_cols = self.kernel_generators();
        if gen_cols.is_empty() {
            return FinAbGroup::trivial();
        }
        let generators = IntMatrix::from_columns(a, &gen_cols);
        let k = generators.cols();
        let stacked2 = generators.hstack(self.source.relations());
        let null2 = null_space_lattice(&stacked2);
        let rel_cols: Vec<Vec<BigInt>> = null2.iter().map(|v| v[..k].to_vec()).collect();
        let relations = IntMatrix::from_columns(k, &rel_cols);
        FinAbGroup::new(k, relations).expect("kernel presentation")
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }
}

/// Basis of the integer null lattice {x ∈ ℤᶜ : m·x = 0}.
pub fn null_space_lattice(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = smith_normal_form(m);
    let diag = s.diagonal();
    let mut basis = Vec::new();
    for j in 0..m.cols() {
        let zero_diag = match diag.get(j) {
            Some(d) => d.is_zero(),
            None => true,
        };
        if zero_diag {
            basis.push(s.v.column(j));
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hom(src: FinAbGroup, tgt: FinAbGroup, m: &[&[i64]]) -> AbHom {
        AbHom::new(src, tgt, IntMatrix::from_rows(m)).unwrap()
    }

    #[test]
    fn identity_is_injective() {
        let g = FinAbGroup::from_diagonal(&[4, 8]);
        let h = AbHom::identity(&g);
        assert!(h.is_injective());
        assert!(h.kernel().is_trivial());
    }

    #[test]
    fn order_two_element_embeddings() {
        // Z/2 → Z/6, 1 ↦ 3: injective.
        let h = hom(FinAbGroup::cyclic(2), FinAbGroup::cyclic(6), &[&[3]]);
        assert!(h.is_injective());
        // Z/2 → Z/4, 1 ↦ 2: injective.
        let h = hom(FinAbGroup::cyclic(2), FinAbGroup::cyclic(4), &[&[2]]);
        assert!(h.is_injective());
        // Z/2 → Z/2, 1 ↦ 0: kernel is all of Z/2.
        let h = hom(FinAbGroup::cyclic(2), FinAbGroup::cyclic(2), &[&[0]]);
        assert!(!h.is_injective());
        let k = h.kernel();
        assert_eq!(k.invariant_factors().0, &[BigInt::from(2)]);
    }

    #[test]
    fn incompatible_matrix_rejected() {
        // Z/2 → Z/3 by 1 ↦ 1 does not respect 2·1 = 0.
        let r = AbHom::new(
            FinAbGroup::cyclic(2),
            FinAbGroup::cyclic(3),
            IntMatrix::from_rows(&[&[1]]),
        );
        assert!(r.is_err());
    }

    #[test]
    fn doubling_on_z_induces_trivial_torsion_map() {
        let z = FinAbGroup::free(1);
        let h = hom(z.clone(), z, &[&[2]]);
        assert!(h.is_injective());
        let t = h.induced_on_torsion();
        assert!(t.source().is_trivial());
        assert!(t.target().is_trivial());
    }

    #[test]
    fn torsion_restriction_of_identity_on_mixed_group() {
        // Z ⊕ Z/4: identity restricts to the identity on Z/4.
        let g = FinAbGroup::new(2, IntMatrix::from_rows(&[&[0], &[4]])).unwrap();
        let h = AbHom::identity(&g);
        let t = h.induced_on_torsion();
        assert_eq!(t.source().invariant_factors().0, &[BigInt::from(4)]);
        assert!(t.is_injective());
        for i in 0..t.source().ambient_rank() {
            let e: Vec<BigInt> = (0..t.source().ambient_rank())
                .map(|j| if i == j { BigInt::from(1) } else { BigInt::from(0) })
                .collect();
            assert!(t.target().elements_equal(&t.apply(&e), &e));
        }
    }

    #[test]
    fn torsion_restriction_keeps_embedding() {
        // Z/2 → Z/2n by 1 ↦ n stays the same map on torsion (both finite).
        for n in [2i64, 3, 5] {
            let h = hom(
                FinAbGroup::cyclic(2),
                FinAbGroup::cyclic(2 * n as u64),
                &[&[n]],
            );
            let t = h.induced_on_torsion();
            assert!(t.is_injective());
            assert_eq!(t.source().order(), Some(BigInt::from(2)));
            assert_eq!(t.target().order(), Some(BigInt::from(2 * n)));
        }
    }

    #[test]
    fn kernel_of_quotient_map() {
        // Z/4 → Z/2, 1 ↦ 1: kernel Z/2.
        let h = hom(FinAbGroup::cyclic(4), FinAbGroup::cyclic(2), &[&[1]]);
        let k = h.kernel();
        assert_eq!(k.invariant_factors().0, &[BigInt::from(2)]);
        assert_eq!(k.free_rank(), 0);
    }

    #[test]
    fn kernel_on_free_source() {
        // Z² → Z, (x, y) ↦ x: kernel Z.
        let h = hom(FinAbGroup::free(2), FinAbGroup::free(1), &[&[1, 0]]);
        let k = h.kernel();
        assert_eq!(k.invariant_factors(), (&[][..], 1));
    }

    #[test]
    fn null_space_of_singular_matrix() {
        let m = IntMatrix::from_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        let basis = null_space_lattice(&m);
        assert_eq!(basis.len(), 2);
        for v in basis {
            assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }
}
