//! Restricted-root bookkeeping for the projective linear / projective
//! symplectic pair: the sum of the positive roots with nonzero restriction,
//! expressed in the natural basis of restricted simple roots.

use crate::{Error, Result};

/// Sum the positive roots of SL(2n) that restrict nontrivially along the
/// symplectic involution, and express the total in the basis
/// α̃ᵢ = (sᵢ − sᵢ₊₁) + (tᵢ − tᵢ₊₁), i = 1..n−1.
///
/// Coordinates: the 2n torus characters are s₁..s_n, t₁..t_n and the
/// involution sends sᵢ ↦ −tᵢ, tᵢ ↦ −sᵢ. Roots sₖ − tₖ restrict to zero and
/// are excluded. The positive system is the interleaved order
/// s₁ > t₁ > s₂ > t₂ > … which the involution sends to its negative on
/// every root with nonzero restriction; this compatibility is asserted.
pub fn restricted_sum_psl2n_psp(n: usize) -> Result<Vec<i64>> {
    if n < 2 {
        return Err(Error::Invalid(format!(
            "need n >= 2 for a nontrivial restricted system, got {n}"
        )));
    }
    let dim = 2 * n;
    // Index layout: s_i -> i-1, t_i -> n+i-1 (1-based i).
    let sigma = |v: &[i64]| -> Vec<i64> {
        let mut out = vec![0i64; dim];
        for i in 0..n {
            out[i] = -v[n + i];
            out[n + i] = -v[i];
        }
        out
    };
    // Height functional realizing s_1 > t_1 > s_2 > t_2 > ... > s_n > t_n.
    let mut f = vec![0i64; dim];
    for i in 0..n {
        f[i] = 2 * (n - i) as i64;
        f[n + i] = 2 * (n - i) as i64 - 1;
    }
    let height = |v: &[i64]| -> i64 { v.iter().zip(&f).map(|(a, b)| a * b).sum() };

    let mut total = vec![0i64; dim];
    for a in 0..dim {
        for b in 0..dim {
            if a == b {
                continue;
            }
            let mut root = vec![0i64; dim];
            root[a] = 1;
            root[b] = -1;
            // Zero restriction: s_k - t_k and its negative.
            if (a + n == b) || (b + n == a) {
                continue;
            }
            if height(&root) > 0 {
                assert!(
                    height(&sigma(&root)) < 0,
                    "positive system must be sent to its negative on restricting roots"
                );
                for (t, r) in total.iter_mut().zip(&root) {
                    *t += r;
                }
            }
        }
    }

    // The total is invariant under s_i <-> t_i, so it lives in the span of
    // u_i = s_i + t_i; read off the telescoping coefficients against
    // α̃_i = u_i − u_{i+1}.
    let mut m = Vec::with_capacity(n);
    for i in 0..n {
        assert_eq!(total[i], total[n + i], "block-symmetric total");
        m.push(total[i]);
    }
    assert_eq!(m.iter().sum::<i64>(), 0, "total lies in the root lattice span");
    let mut coeffs = Vec::with_capacity(n - 1);
    let mut acc = 0i64;
    for &mi in m.iter().take(n - 1) {
        acc += mi;
        coeffs.push(acc);
    }

    // Cross-check the expansion as vectors.
    let mut rebuilt = vec![0i64; dim];
    for (i, &c) in coeffs.iter().enumerate() {
        rebuilt[i] += c;
        rebuilt[i + 1] -= c;
        rebuilt[n + i] += c;
        rebuilt[n + i + 1] -= c;
    }
    assert_eq!(rebuilt, total, "basis expansion must reproduce the sum");

    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(restricted_sum_psl2n_psp(2).unwrap(), vec![2]);
        assert_eq!(restricted_sum_psl2n_psp(3).unwrap(), vec![4, 4]);
        assert_eq!(restricted_sum_psl2n_psp(4).unwrap(), vec![6, 8, 6]);
    }

    #[test]
    fn closed_form_and_symmetry() {
        for n in 2..=8usize {
            let c = restricted_sum_psl2n_psp(n).unwrap();
            assert_eq!(c.len(), n - 1);
            for (i, &ci) in c.iter().enumerate() {
                let i1 = (i + 1) as i64;
                assert_eq!(ci, 2 * i1 * (n as i64 - i1), "n={n} i={}", i + 1);
                assert_eq!(ci, c[n - 2 - i], "palindromic in the diagram flip");
            }
        }
    }

    #[test]
    fn degenerate_ranks_rejected() {
        assert!(restricted_sum_psl2n_psp(0).is_err());
        assert!(restricted_sum_psl2n_psp(1).is_err());
    }
}
