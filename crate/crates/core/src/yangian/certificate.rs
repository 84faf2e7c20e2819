//! Relations `Σ_l z^l · x · a_l = 0` with `z = t_22^(i)` and `a_l ∈ Γ`.
//!
//! On a weight vector with parameters `b = (b_1..b_p)` the generator
//! `t_22^(k)` acts as `σ_k(b)`, and `x` moves `b` by some `δ ∈ S`. The
//! polynomial `F(Z, b) = ∏_{δ∈S} (Z − σ_i(b+δ))` is symmetric in `b` when `S`
//! is permutation invariant, so its `Z`-coefficients are polynomials in the
//! `σ_k(b)`, i.e. in the `t_22^(k)`.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{Generator, NCPolynomial, Yangian, YangianError};
use crate::poly::{elementary, express_in_elementary_symmetrics, MultiPoly, Scalar};

/// Lattice shifts by which `g` moves weights.
pub fn displacement_set(p: u32, g: Generator) -> BTreeSet<Vec<i64>> {
    let p = p as usize;
    let delta = |i: usize| {
        let mut v = vec![0i64; p];
        v[i] = 1;
        v
    };
    let mut out = BTreeSet::new();
    match (g.i, g.j) {
        (2, 1) => out.extend((0..p).map(delta)),
        (1, 2) => out.extend((0..p).map(|i| delta(i).iter().map(|x| -x).collect())),
        (1, 1) => {
            for i in 0..p {
                for j in 0..p {
                    let mut v = delta(i);
                    v[j] -= 1;
                    out.insert(v);
                }
            }
        }
        _ => {
            out.insert(vec![0; p]);
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct StraighteningCertificate {
    pub x: Generator,
    pub z: Generator,
    pub shifts: Vec<Vec<i64>>,
    /// `a_0, …, a_q`, each a polynomial in the `t_22^(k)`.
    pub coefficients: Vec<NCPolynomial>,
    /// Normal form of `Σ_l z^l · x · a_l`.
    pub residual: NCPolynomial,
    pub verified: bool,
}

fn is_permutation_invariant(p: usize, s: &BTreeSet<Vec<i64>>) -> bool {
    if p < 2 {
        return true;
    }
    s.iter().all(|d| {
        let mut swapped = d.clone();
        swapped.swap(0, 1);
        let mut rotated = d.clone();
        rotated.rotate_left(1);
        s.contains(&swapped) && s.contains(&rotated)
    })
}

impl Yangian {
    pub fn straightening_certificate(
        &self,
        x: Generator,
        z_level: u32,
        shifts: &BTreeSet<Vec<i64>>,
    ) -> Result<StraighteningCertificate, YangianError> {
        let p = self.level();
        let n = p as usize;
        x.check(p)?;
        let z = Generator::new(2, 2, z_level);
        z.check(p)?;
        if let Some(bad) = shifts.iter().find(|d| d.len() != n) {
            return Err(YangianError::BadDisplacement(bad.clone()));
        }
        if !is_permutation_invariant(n, shifts) {
            return Err(YangianError::NotInvariant);
        }
        if let Some(missing) = displacement_set(p, x)
            .into_iter()
            .find(|d| !shifts.contains(d))
        {
            return Err(YangianError::MissingDisplacement(missing));
        }

        // F(Z, b) as a list of Z-coefficients in Q[b_1..b_p].
        let sigma = elementary(n, z_level as usize);
        let mut f: Vec<MultiPoly> = vec![MultiPoly::one(n)];
        for d in shifts {
            let images: Vec<MultiPoly> = (0..n)
                .map(|k| &MultiPoly::var(n, k) + &MultiPoly::constant(n, Scalar::from(d[k])))
                .collect();
            let root = sigma.substitute(&images);
            let mut next = vec![MultiPoly::zero(n); f.len() + 1];
            for (l, c) in f.iter().enumerate() {
                next[l + 1] = &next[l + 1] + c;
                next[l] = &next[l] - &(c * &root);
            }
            f = next;
        }

        let t22: Vec<NCPolynomial> = (1..=p).map(|r| self.gen(2, 2, r)).collect();
        let mut coefficients = Vec::with_capacity(f.len());
        for c in &f {
            let g = express_in_elementary_symmetrics(c).map_err(|_| YangianError::NotInvariant)?;
            coefficients.push(self.eval_commuting(&g, &t22));
        }
        debug_assert!(coefficients
            .iter()
            .flat_map(NCPolynomial::generators)
            .all(|g| g.i == 2 && g.j == 2));

        let xp = NCPolynomial::generator(p, x);
        let zp = NCPolynomial::generator(p, z);
        let mut residual = NCPolynomial::zero(p);
        let mut zl = self.one();
        for a in &coefficients {
            let term = self.multiply(&self.multiply(&zl, &xp), a);
            residual = &residual + &term;
            zl = self.multiply(&zl, &zp);
        }
        Ok(StraighteningCertificate {
            x,
            z,
            shifts: shifts.iter().cloned().collect(),
            coefficients,
            verified: residual.is_zero(),
            residual,
        })
    }

    /// Evaluates a commutative polynomial at pairwise commuting elements.
    fn eval_commuting(&self, g: &MultiPoly, at: &[NCPolynomial]) -> NCPolynomial {
        let mut out = NCPolynomial::zero(self.level());
        for (e, c) in g.terms() {
            let mut term = NCPolynomial::constant(self.level(), c.clone());
            for (x, &k) in at.iter().zip(&e.0) {
                if k > 0 {
                    term = self.multiply(&term, &self.pow(x, k));
                }
            }
            out = &out + &term;
        }
        out
    }
}
