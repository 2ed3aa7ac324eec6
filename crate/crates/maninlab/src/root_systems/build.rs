//! Standard realizations of the irreducible root systems and the exact data
//! derived from them: Cartan matrix, positive roots, highest root, 2ρ.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::WeightInRootBasis;
use crate::exact_lattice::IntMatrix;
use crate::{Error, Result};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// An irreducible root system in a fixed Euclidean realization. The inner
/// product carries a global rational rescaling chosen so that long roots have
/// squared length exactly 2; all derived data is exact.
///
/// Vertex labeling is the common convention for every type except G₂, where
/// the first simple root is the long one (so the affine marks read (1, 2, 3)
/// with the triple relation hanging off the short vertex). The alternative
/// short-first labeling is available through `reordered`.
#[derive(Clone, Debug)]
pub struct RootSystemData {
    type_label: char,
    rank: usize,
    simple_roots: Vec<Vec<BigRational>>,
    scale: BigRational,
    cartan: IntMatrix,
    cartan_i64: Vec<Vec<i64>>,
    squared_lengths: Vec<BigRational>,
    /// Positive roots as integer coordinate vectors in the simple-root basis.
    positive_roots: Vec<Vec<i64>>,
    highest_root: Vec<i64>,
}

pub fn build_root_system(type_label: char, rank: usize) -> Result<RootSystemData> {
    let (simple, scale) = match (type_label, rank) {
        ('A', l) if l >= 1 => (simple_a(l), rat(1)),
        ('B', l) if l >= 2 => (simple_b(l), rat(1)),
        ('C', l) if l >= 2 => (simple_c(l), frac(1, 2)),
        ('D', l) if l >= 3 => (simple_d(l), rat(1)),
        ('E', l) if (6..=8).contains(&l) => (simple_e(l), rat(1)),
        ('F', 4) => (simple_f4(), rat(1)),
        ('G', 2) => (simple_g2(), frac(1, 3)),
        _ => return Err(Error::UnsupportedRootSystem(type_label, rank)),
    };
    RootSystemData::from_simple_roots(type_label, rank, simple, scale)
}

fn basis_diff(dim: usize, i: usize, j: usize) -> Vec<BigRational> {
    let mut v = vec![rat(0); dim];
    v[i] = rat(1);
    v[j] = rat(-1);
    v
}

fn simple_a(l: usize) -> Vec<Vec<BigRational>> {
    (0..l).map(|i| basis_diff(l + 1, i, i + 1)).collect()
}

fn simple_b(l: usize) -> Vec<Vec<BigRational>> {
    let mut roots: Vec<_> = (0..l - 1).map(|i| basis_diff(l, i, i + 1)).collect();
    let mut last = vec![rat(0); l];
    last[l - 1] = rat(1);
    roots.push(last);
    roots
}

fn simple_c(l: usize) -> Vec<Vec<BigRational>> {
    let mut roots: Vec<_> = (0..l - 1).map(|i| basis_diff(l, i, i + 1)).collect();
    let mut last = vec![rat(0); l];
    last[l - 1] = rat(2);
    roots.push(last);
    roots
}

fn simple_d(l: usize) -> Vec<Vec<BigRational>> {
    let mut roots: Vec<_> = (0..l - 1).map(|i| basis_diff(l, i, i + 1)).collect();
    let mut last = vec![rat(0); l];
    last[l - 2] = rat(1);
    last[l - 1] = rat(1);
    roots.push(last);
    roots
}

fn simple_e(l: usize) -> Vec<Vec<BigRational>> {
    // E_6 and E_7 sit inside the E_8 realization on the first l simple roots.
    let mut roots = Vec::with_capacity(l);
    let mut a1 = vec![frac(-1, 2); 8];
    a1[0] = frac(1, 2);
    a1[7] = frac(1, 2);
    roots.push(a1);
    let mut a2 = vec![rat(0); 8];
    a2[0] = rat(1);
    a2[1] = rat(1);
    roots.push(a2);
    for i in 0..6 {
        roots.push(basis_diff(8, i + 1, i));
    }
    roots.truncate(l);
    roots
}

fn simple_f4() -> Vec<Vec<BigRational>> {
    let mut a3 = vec![rat(0); 4];
    a3[3] = rat(1);
    let a4 = vec![frac(1, 2), frac(-1, 2), frac(-1, 2), frac(-1, 2)];
    vec![basis_diff(4, 1, 2), basis_diff(4, 2, 3), a3, a4]
}

fn simple_g2() -> Vec<Vec<BigRational>> {
    // Long root first; ambient is the sum-zero plane in ℝ³.
    let long = vec![rat(-2), rat(1), rat(1)];
    let short = vec![rat(1), rat(-1), rat(0)];
    vec![long, short]
}

impl RootSystemData {
    fn from_simple_roots(
        type_label: char,
        rank: usize,
        simple_roots: Vec<Vec<BigRational>>,
        scale: BigRational,
    ) -> Result<Self> {
        let inner = |a: &[BigRational], b: &[BigRational]| -> BigRational {
            let dot: BigRational = a.iter().zip(b).map(|(x, y)| x * y).sum();
            dot * &scale
        };
        let squared_lengths: Vec<BigRational> =
            simple_roots.iter().map(|r| inner(r, r)).collect();
        let two = rat(2);
        assert!(
            squared_lengths.iter().max() == Some(&two),
            "long roots must have squared length 2"
        );

        let mut cartan = IntMatrix::zeros(rank, rank);
        let mut cartan_i64 = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                let c = rat(2) * inner(&simple_roots[i], &simple_roots[j]) / &squared_lengths[j];
                assert!(c.is_integer(), "non-integral Cartan entry");
                let ci = c.to_integer().to_i64().expect("small Cartan entry");
                cartan_i64[i][j] = ci;
                *cartan.entry_mut(i, j) = BigInt::from(ci);
            }
            assert_eq!(cartan_i64[i][i], 2, "Cartan diagonal must be 2");
        }

        // Generate the full root set by closing the simple roots under all
        // simple reflections, working in integer simple-basis coordinates.
        let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: Vec<Vec<i64>> = Vec::new();
        for i in 0..rank {
            let mut e = vec![0i64; rank];
            e[i] = 1;
            roots.insert(e.clone());
            queue.push(e);
        }
        while let Some(beta) = queue.pop() {
            for i in 0..rank {
                // ⟨β, αᵢ∨⟩ = Σ_j β_j · c_ji
                let pairing: i64 = (0..rank).map(|j| beta[j] * cartan_i64[j][i]).sum();
                let mut refl = beta.clone();
                refl[i] -= pairing;
                if roots.insert(refl.clone()) {
                    queue.push(refl);
                }
            }
        }
        let positive_roots: Vec<Vec<i64>> =
            roots.iter().filter(|r| r.iter().all(|&c| c >= 0)).cloned().collect();
        assert_eq!(
            2 * positive_roots.len(),
            roots.len(),
            "roots must split evenly into positive and negative"
        );
        assert_eq!(
            positive_roots.len(),
            classical_positive_count(type_label, rank),
            "positive-root count does not match the classical value for {type_label}_{rank}"
        );

        let highest_root = positive_roots
            .iter()
            .max_by_key(|r| r.iter().sum::<i64>())
            .cloned()
            .expect("nonempty root system");
        let top_height: i64 = highest_root.iter().sum();
        assert_eq!(
            positive_roots.iter().filter(|r| r.iter().sum::<i64>() == top_height).count(),
            1,
            "highest root must be unique"
        );

        Ok(RootSystemData {
            type_label,
            rank,
            simple_roots,
            scale,
            cartan,
            cartan_i64,
            squared_lengths,
            positive_roots,
            highest_root,
        })
    }

    /// Same system with simple roots listed in a different order.
    pub fn reordered(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.rank {
            return Err(Error::Invalid("permutation length != rank".into()));
        }
        let mut seen = vec![false; self.rank];
        for &p in perm {
            if p >= self.rank || seen[p] {
                return Err(Error::Invalid("not a permutation".into()));
            }
            seen[p] = true;
        }
        let simple = perm.iter().map(|&p| self.simple_roots[p].clone()).collect();
        Self::from_simple_roots(self.type_label, self.rank, simple, self.scale.clone())
    }

    pub fn type_label(&self) -> char {
        self.type_label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn simple_roots(&self) -> &[Vec<BigRational>] {
        &self.simple_roots
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn squared_lengths(&self) -> &[BigRational] {
        &self.squared_lengths
    }

    /// Positive roots as integer vectors in the simple-root basis.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn positive_root_count(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn highest_root(&self) -> &[i64] {
        &self.highest_root
    }

    /// Exact inner product of ambient vectors under the normalized form.
    pub fn inner(&self, a: &[BigRational], b: &[BigRational]) -> BigRational {
        let dot: BigRational = a.iter().zip(b).map(|(x, y)| x * y).sum();
        dot * &self.scale
    }

    /// Ambient coordinates of a vector given in the simple-root basis.
    pub fn ambient_from_simple(&self, coords: &[i64]) -> Vec<BigRational> {
        let dim = self.simple_roots[0].len();
        let mut v = vec![rat(0); dim];
        for (c, root) in coords.iter().zip(&self.simple_roots) {
            for (vi, ri) in v.iter_mut().zip(root) {
                *vi += rat(*c) * ri;
            }
        }
        v
    }

    /// Coroot α∨ = 2α/(α, α) of an ambient root vector.
    pub fn coroot(&self, alpha: &[BigRational]) -> Vec<BigRational> {
        let len2 = self.inner(alpha, alpha);
        alpha.iter().map(|x| rat(2) * x / &len2).collect()
    }

    /// Coefficients of the sum of all positive roots in the simple basis.
    pub fn two_rho_in_simple_basis(&self) -> WeightInRootBasis {
        let mut sums = vec![0i64; self.rank];
        for r in &self.positive_roots {
            for (s, c) in sums.iter_mut().zip(r) {
                *s += c;
            }
        }
        WeightInRootBasis { coefficients: sums.into_iter().map(rat).collect() }
    }

    /// Solve Cᵀ·n = fw: the weight Σ fwᵢ·ωᵢ expressed in the simple-root basis.
    pub fn weight_in_simple_root_basis(&self, fw: &[BigRational]) -> Result<WeightInRootBasis> {
        if fw.len() != self.rank {
            return Err(Error::Shape(format!(
                "expected {} fundamental-weight coordinates, got {}",
                self.rank,
                fw.len()
            )));
        }
        // Dense exact Gaussian elimination on the transposed Cartan matrix.
        let n = self.rank;
        let mut m: Vec<Vec<BigRational>> =
            (0..n).map(|i| (0..n).map(|j| rat(self.cartan_i64[j][i])).collect()).collect();
        let mut rhs: Vec<BigRational> = fw.to_vec();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !m[r][col].is_zero())
                .expect("Cartan matrix is invertible");
            m.swap(col, pivot);
            rhs.swap(col, pivot);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x /= &p;
            }
            rhs[col] /= &p;
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c2 in 0..n {
                        let sub = &f * &m[col][c2];
                        m[r][c2] -= sub;
                    }
                    let sub = &f * &rhs[col];
                    rhs[r] -= sub;
                }
            }
        }
        Ok(WeightInRootBasis { coefficients: rhs })
    }

    /// Affine marks (a₀ = 1, a₁, …, a_l): coefficients of Σ aᵢαᵢ = 0 with
    /// α₀ the lowest root.
    pub fn affine_marks(&self) -> Vec<i64> {
        let mut marks = Vec::with_capacity(self.rank + 1);
        marks.push(1);
        marks.extend_from_slice(&self.highest_root);
        // α₀ = −θ, so Σ aᵢαᵢ = −θ + Σ θᵢαᵢ must vanish in ambient coordinates.
        let theta = self.ambient_from_simple(&self.highest_root);
        let mut total: Vec<BigRational> = theta.iter().map(|x| -x.clone()).collect();
        for (i, root) in self.simple_roots.iter().enumerate() {
            for (t, r) in total.iter_mut().zip(root) {
                *t += rat(marks[i + 1]) * r;
            }
        }
        assert!(total.iter().all(|x| x.is_zero()), "affine mark relation failed");
        marks
    }

    /// Dual marks (a′₀, …, a′_l): coefficients of Σ a′ᵢαᵢ∨ = 0. Long roots
    /// keep their mark; short roots scale by (α, α)/2. Always integral.
    pub fn dual_marks(&self) -> Vec<i64> {
        let marks = self.affine_marks();
        let theta = self.ambient_from_simple(&self.highest_root);
        let theta_len2 = self.inner(&theta, &theta);
        assert_eq!(theta_len2, rat(2), "highest root must be long");
        let mut duals = Vec::with_capacity(self.rank + 1);
        duals.push(1i64);
        for i in 0..self.rank {
            let scaled = rat(marks[i + 1]) * &self.squared_lengths[i] / rat(2);
            assert!(scaled.is_integer(), "dual mark must be integral");
            duals.push(scaled.to_integer().to_i64().expect("small dual mark"));
        }
        // Σ a′ᵢαᵢ∨ = 0 with α₀∨ = −θ∨.
        let mut total: Vec<BigRational> =
            self.coroot(&theta).iter().map(|x| -x.clone()).collect();
        for (i, root) in self.simple_roots.iter().enumerate() {
            let co = self.coroot(root);
            for (t, c) in total.iter_mut().zip(&co) {
                *t += rat(duals[i + 1]) * c;
            }
        }
        assert!(total.iter().all(|x| x.is_zero()), "dual mark relation failed");
        duals
    }
}

fn classical_positive_count(type_label: char, rank: usize) -> usize {
    match (type_label, rank) {
        ('A', l) => l * (l + 1) / 2,
        ('B', l) | ('C', l) => l * l,
        ('D', l) => l * (l - 1),
        ('E', 6) => 36,
        ('E', 7) => 63,
        ('E', 8) => 120,
        ('F', 4) => 24,
        ('G', 2) => 6,
        _ => unreachable!("validated in build_root_system"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_root_counts_match_classical_values() {
        let cases: &[(char, usize, usize)] = &[
            ('A', 1, 1),
            ('A', 4, 10),
            ('B', 2, 4),
            ('B', 5, 25),
            ('C', 3, 9),
            ('D', 3, 6),
            ('D', 6, 30),
            ('E', 6, 36),
            ('E', 7, 63),
            ('E', 8, 120),
            ('F', 4, 24),
            ('G', 2, 6),
        ];
        for &(t, l, count) in cases {
            let rs = build_root_system(t, l).unwrap();
            assert_eq!(rs.positive_root_count(), count, "{t}_{l}");
        }
    }

    #[test]
    fn invalid_pairs_rejected() {
        assert!(build_root_system('A', 0).is_err());
        assert!(build_root_system('B', 1).is_err());
        assert!(build_root_system('D', 2).is_err());
        assert!(build_root_system('E', 9).is_err());
        assert!(build_root_system('F', 3).is_err());
        assert!(build_root_system('G', 3).is_err());
        assert!(build_root_system('H', 3).is_err());
    }

    #[test]
    fn cartan_matrices_of_small_types() {
        let a3 = build_root_system('A', 3).unwrap();
        assert_eq!(
            a3.cartan(),
            &IntMatrix::from_rows(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])
        );
        let c3 = build_root_system('C', 3).unwrap();
        assert_eq!(
            c3.cartan(),
            &IntMatrix::from_rows(&[&[2, -1, 0], &[-1, 2, -1], &[0, -2, 2]])
        );
        let b3 = build_root_system('B', 3).unwrap();
        assert_eq!(
            b3.cartan(),
            &IntMatrix::from_rows(&[&[2, -1, 0], &[-1, 2, -2], &[0, -1, 2]])
        );
        let g2 = build_root_system('G', 2).unwrap();
        assert_eq!(g2.cartan(), &IntMatrix::from_rows(&[&[2, -3], &[-1, 2]]));
        let f4 = build_root_system('F', 4).unwrap();
        assert_eq!(
            f4.cartan(),
            &IntMatrix::from_rows(&[&[2, -1, 0, 0], &[-1, 2, -2, 0], &[0, -1, 2, -1], &[0, 0, -1, 2]])
        );
    }

    #[test]
    fn two_rho_examples() {
        let a1 = build_root_system('A', 1).unwrap();
        assert_eq!(a1.two_rho_in_simple_basis().coefficients, vec![rat(1)]);
        let a2 = build_root_system('A', 2).unwrap();
        assert_eq!(a2.two_rho_in_simple_basis().coefficients, vec![rat(2), rat(2)]);
        let a4 = build_root_system('A', 4).unwrap();
        assert_eq!(
            a4.two_rho_in_simple_basis().coefficients,
            vec![rat(4), rat(6), rat(6), rat(4)]
        );
    }

    #[test]
    fn two_rho_is_strictly_positive_integers_everywhere() {
        for (t, l) in [
            ('A', 5),
            ('B', 4),
            ('C', 4),
            ('D', 5),
            ('E', 6),
            ('E', 7),
            ('E', 8),
            ('F', 4),
            ('G', 2),
        ] {
            let rs = build_root_system(t, l).unwrap();
            for c in rs.two_rho_in_simple_basis().coefficients {
                assert!(c.is_integer() && c > rat(0), "{t}_{l}");
            }
        }
    }

    #[test]
    fn weight_conversion_examples() {
        let a1 = build_root_system('A', 1).unwrap();
        let w = a1.weight_in_simple_root_basis(&[rat(1)]).unwrap();
        assert_eq!(w.coefficients, vec![frac(1, 2)]);

        let a2 = build_root_system('A', 2).unwrap();
        let w = a2.weight_in_simple_root_basis(&[rat(1), rat(0)]).unwrap();
        assert_eq!(w.coefficients, vec![frac(2, 3), frac(1, 3)]);
    }

    #[test]
    fn adjoint_weight_recovers_finite_marks() {
        for (t, l) in [('A', 3), ('B', 3), ('C', 4), ('D', 4), ('F', 4), ('G', 2), ('E', 6)] {
            let rs = build_root_system(t, l).unwrap();
            // Fundamental-weight coordinates of θ are ⟨θ, αᵢ∨⟩.
            let theta = rs.ambient_from_simple(rs.highest_root());
            let fw: Vec<BigRational> = (0..rs.rank())
                .map(|i| {
                    rat(2) * rs.inner(&theta, &rs.simple_roots()[i])
                        / &rs.squared_lengths()[i]
                })
                .collect();
            let w = rs.weight_in_simple_root_basis(&fw).unwrap();
            let marks: Vec<BigRational> =
                rs.highest_root().iter().map(|&c| rat(c)).collect();
            assert_eq!(w.coefficients, marks, "{t}_{l}");
        }
    }

    #[test]
    fn g2_long_first_labeling_and_its_reorder() {
        let g2 = build_root_system('G', 2).unwrap();
        assert_eq!(g2.squared_lengths()[0], rat(2));
        assert_eq!(g2.squared_lengths()[1], frac(2, 3));
        assert_eq!(g2.affine_marks(), vec![1, 2, 3]);
        assert_eq!(g2.dual_marks(), vec![1, 2, 1]);

        let swapped = g2.reordered(&[1, 0]).unwrap();
        assert_eq!(swapped.affine_marks(), vec![1, 3, 2]);
        assert_eq!(swapped.dual_marks(), vec![1, 1, 2]);
        assert_eq!(swapped.cartan(), &IntMatrix::from_rows(&[&[2, -1], &[-3, 2]]));
    }

    #[test]
    fn affine_and_dual_marks_for_the_catalog_of_types() {
        let f4 = build_root_system('F', 4).unwrap();
        assert_eq!(f4.affine_marks(), vec![1, 2, 3, 4, 2]);
        let c3 = build_root_system('C', 3).unwrap();
        assert_eq!(c3.affine_marks(), vec![1, 2, 2, 1]);
        assert_eq!(c3.dual_marks(), vec![1, 1, 1, 1]);
        for l in [1usize, 3, 5, 7] {
            let al = build_root_system('A', l).unwrap();
            assert_eq!(al.affine_marks(), vec![1; l + 1]);
        }
        // Simply-laced: dual marks equal marks.
        for (t, l) in [('A', 4), ('D', 5), ('E', 6), ('E', 7), ('E', 8)] {
            let rs = build_root_system(t, l).unwrap();
            assert_eq!(rs.dual_marks(), rs.affine_marks(), "{t}_{l}");
        }
    }
}
