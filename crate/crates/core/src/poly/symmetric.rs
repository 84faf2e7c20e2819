//! Elementary symmetric polynomials and the fundamental theorem of
//! symmetric functions.

use super::multipoly::{Exponent, MultiPoly};
use super::{PolyError, Scalar};

/// The `k`-th elementary symmetric polynomial in `n` variables
/// (`σ_0 = 1`, `σ_k = 0` for `k > n`).
pub fn elementary(n: usize, k: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(n);
    if k > n {
        return out;
    }
    for subset in subsets(n, k) {
        let mut e = vec![0u32; n];
        for i in subset {
            e[i] = 1;
        }
        out.add_term(Exponent(e), Scalar::one());
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Rewrites a symmetric polynomial `f(b_1..b_p)` as `g(σ_1..σ_p)`.
///
/// Classical leading-term reduction: the leading exponent `α` of a symmetric
/// polynomial is a partition, and `σ_1^{α_1−α_2} ⋯ σ_p^{α_p}` has the same
/// leading monomial, so subtracting the matching multiple strictly lowers the
/// leading term.
pub fn express_in_elementary_symmetrics(f: &MultiPoly) -> Result<MultiPoly, PolyError> {
    if !f.is_symmetric() {
        return Err(PolyError::NotSymmetric);
    }
    let p = f.nvars();
    let sigmas: Vec<MultiPoly> = (1..=p).map(|k| elementary(p, k)).collect();
    let mut rest = f.clone();
    let mut out = MultiPoly::zero(p);
    while let Some((lead, c)) = rest.leading_term() {
        let alpha = lead.0.clone();
        let c = c.clone();
        // σ-exponents: α_k − α_{k+1}
        let mut sexp = vec![0u32; p];
        for k in 0..p {
            let next = if k + 1 < p { alpha[k + 1] } else { 0 };
            debug_assert!(
                alpha[k] >= next,
                "leading exponent of a symmetric poly is a partition"
            );
            sexp[k] = alpha[k] - next;
        }
        let mut prod = MultiPoly::constant(p, c.clone());
        for (s, &e) in sigmas.iter().zip(&sexp) {
            if e > 0 {
                prod = &prod * &s.pow(e);
            }
        }
        rest = &rest - &prod;
        out.add_term(Exponent(sexp), c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;
    use proptest::prelude::*;

    fn b(p: usize, i: usize) -> MultiPoly {
        MultiPoly::var(p, i)
    }

    #[test]
    fn newton_identity() {
        let f = &(&b(2, 0) * &b(2, 0)) + &(&b(2, 1) * &b(2, 1));
        let g = express_in_elementary_symmetrics(&f).unwrap();
        // σ1^2 − 2σ2
        let expected = MultiPoly::from_terms(2, [(vec![2, 0], q(1, 1)), (vec![0, 1], q(-2, 1))]);
        assert_eq!(g, expected);
    }

    #[test]
    fn product_is_sigma2() {
        let g = express_in_elementary_symmetrics(&(&b(2, 0) * &b(2, 1))).unwrap();
        assert_eq!(g, MultiPoly::var(2, 1));
    }

    #[test]
    fn difference_is_rejected() {
        assert_eq!(
            express_in_elementary_symmetrics(&(&b(2, 0) - &b(2, 1))),
            Err(PolyError::NotSymmetric)
        );
    }

    #[test]
    fn constants_pass_through() {
        let c = MultiPoly::constant(3, q(7, 2));
        assert_eq!(express_in_elementary_symmetrics(&c).unwrap(), c);
    }

    /// Symmetrize a random polynomial by summing over all permutations.
    fn symmetrize(f: &MultiPoly) -> MultiPoly {
        let p = f.nvars();
        let mut perms = vec![vec![]];
        for _ in 0..p {
            perms = perms
                .into_iter()
                .flat_map(|pre: Vec<usize>| {
                    (0..p)
                        .filter(|i| !pre.contains(i))
                        .map(|i| {
                            let mut v = pre.clone();
                            v.push(i);
                            v
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        perms
            .iter()
            .fold(MultiPoly::zero(p), |acc, perm| &acc + &f.permute(perm))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn substitution_reproduces_input(
            p in 1usize..=3,
            raw in proptest::collection::vec((proptest::collection::vec(0u32..=4, 3), -9i64..9), 1..5),
        ) {
            let terms = raw.into_iter().filter_map(|(e, c)| {
                let e: Vec<u32> = e.into_iter().take(p).collect();
                (e.iter().sum::<u32>() <= 4).then_some((e, Scalar::from(c)))
            });
            let f = symmetrize(&MultiPoly::from_terms(p, terms));
            let g = express_in_elementary_symmetrics(&f).unwrap();
            let sig: Vec<MultiPoly> = (1..=p).map(|k| elementary(p, k)).collect();
            prop_assert_eq!(g.substitute(&sig), f);
        }
    }
}
