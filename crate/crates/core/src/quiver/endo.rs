//! Hom spaces, the local-ring indecomposability probe, Fitting splits and
//! isomorphism testing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::QuiverRep;
use crate::linalg::Matrix;
use crate::poly::{Scalar, UniPoly};

/// A family of linear maps, one per vertex.
pub type Morphism = Vec<Matrix>;

/// Basis of `Hom(x, y)`: tuples `f_v` with `Y_α f_s = f_t X_α` for every arrow.
pub fn hom_space(x: &QuiverRep, y: &QuiverRep) -> Vec<Morphism> {
    let nv = x.dims.len();
    let mut base = Vec::with_capacity(nv);
    let mut nvars = 0;
    for v in 0..nv {
        base.push(nvars);
        nvars += y.dims[v] * x.dims[v];
    }
    if nvars == 0 {
        return Vec::new();
    }
    let var = |v: usize, i: usize, j: usize| base[v] + i * x.dims[v] + j;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (a, arrow) in x.quiver.arrows.iter().enumerate() {
        let (s, t) = (arrow.source, arrow.target);
        let (xa, ya) = (&x.maps[a], &y.maps[a]);
        for i in 0..y.dims[t] {
            for c in 0..x.dims[s] {
                let mut row = vec![Scalar::zero(); nvars];
                for z in 0..y.dims[s] {
                    let e = ya.get(i, z);
                    if !e.is_zero() {
                        row[var(s, z, c)] += e;
                    }
                }
                for z in 0..x.dims[t] {
                    let e = xa.get(z, c);
                    if !e.is_zero() {
                        row[var(t, i, z)] -= e;
                    }
                }
                if row.iter().any(|e| !e.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let system = Matrix::from_rows_shaped(rows.len(), nvars, rows).expect("rectangular system");
    system
        .nullspace()
        .into_iter()
        .map(|sol| {
            (0..nv)
                .map(|v| {
                    let mut m = Matrix::zeros(y.dims[v], x.dims[v]);
                    for i in 0..y.dims[v] {
                        for j in 0..x.dims[v] {
                            m.set(i, j, sol[var(v, i, j)].clone());
                        }
                    }
                    m
                })
                .collect()
        })
        .collect()
}

pub fn endomorphism_algebra(rep: &QuiverRep) -> Vec<Morphism> {
    hom_space(rep, rep)
}

fn block_diag(phi: &Morphism) -> Matrix {
    phi.iter()
        .fold(Matrix::zeros(0, 0), |acc, m| acc.direct_sum(m))
}

fn compose(g: &Morphism, f: &Morphism) -> Morphism {
    g.iter().zip(f).map(|(a, b)| a * b).collect()
}

fn is_nilpotent(phi: &Morphism) -> bool {
    phi.iter()
        .all(|m| m.rows() == 0 || m.pow(m.rows() as u32).is_zero())
}

fn trace_of_product(a: &Morphism, b: &Morphism) -> Scalar {
    let mut t = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        for i in 0..x.rows() {
            for j in 0..x.cols() {
                if !x.get(i, j).is_zero() && !y.get(j, i).is_zero() {
                    t += x.get(i, j) * y.get(j, i);
                }
            }
        }
    }
    t
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// No split was found. `certified` means the traceless parts of an `End`
    /// basis satisfy `tr(xy) = 0` pairwise, which forces them to be
    /// nilpotent and `End` to be local with residue field `Q`.
    LikelyIndecomposable {
        certified: bool,
    },
    Decomposable(Box<QuiverRep>, Box<QuiverRep>),
    Inconclusive(String),
}

impl Verdict {
    pub fn is_indecomposable(&self) -> bool {
        matches!(self, Verdict::LikelyIndecomposable { .. })
    }
}

/// Local-ring certificate on an `End` basis.
fn certify_local(basis: &[Morphism], n: usize) -> bool {
    let nf = Scalar::from(n as i64);
    let traceless: Vec<Morphism> = basis
        .iter()
        .map(|phi| {
            let c = phi.iter().map(Matrix::trace).sum::<Scalar>() / nf.clone();
            phi.iter()
                .map(|m| m - &Matrix::scalar(m.rows(), c.clone()))
                .collect()
        })
        .collect();
    (0..traceless.len()).all(|i| {
        (i..traceless.len()).all(|j| trace_of_product(&traceless[i], &traceless[j]).is_zero())
    })
}

fn monic(p: &UniPoly) -> UniPoly {
    p.scale(&p.leading().recip())
}

fn exact_div(a: &UniPoly, b: &UniPoly) -> UniPoly {
    a.div_rem(b).expect("nonzero divisor").0
}

/// `f = ∏ a_i^i` with the `a_i` squarefree and pairwise coprime.
fn squarefree_factors(f: &UniPoly) -> Vec<UniPoly> {
    let mut layers = Vec::new();
    let mut g = monic(f);
    while g.degree().unwrap_or(0) > 0 {
        let h = monic(&g.gcd(&g.derivative()));
        layers.push(exact_div(&g, &h));
        g = h;
    }
    let mut out = Vec::with_capacity(layers.len());
    for i in 0..layers.len() {
        let next = layers.get(i + 1).cloned().unwrap_or_else(UniPoly::one);
        out.push(monic(&exact_div(&layers[i], &next)));
    }
    out
}

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

/// Some rational root of `f`, searched among `±a/b` with `a | f_0`, `b | f_d`.
fn rational_root(f: &UniPoly) -> Option<Scalar> {
    let coeffs = f.coeffs();
    if coeffs.first().is_none_or(Scalar::is_zero) {
        return Some(Scalar::zero());
    }
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let num = divisors(&ints[0])?;
    let den = divisors(ints.last().unwrap())?;
    for &a in &num {
        for &b in &den {
            for sign in [1i64, -1] {
                let cand = Scalar::new(BigInt::from(a) * sign, BigInt::from(b));
                if f.eval(&cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

enum SplitSearch {
    Split(UniPoly),
    Local,
    Unfactored,
}

/// A polynomial `q` such that `q(φ)` is neither nilpotent nor invertible,
/// when one can be found from the characteristic polynomial.
fn splitting_poly(chi: &UniPoly) -> SplitSearch {
    let n = chi.degree().unwrap_or(0);
    let x = UniPoly::monomial(Scalar::one(), 1);
    if chi.coeff(0).is_zero() && *chi != UniPoly::monomial(Scalar::one(), n) {
        return SplitSearch::Split(x);
    }
    let layers: Vec<UniPoly> = squarefree_factors(chi)
        .into_iter()
        .filter(|a| a.degree().unwrap_or(0) > 0)
        .collect();
    if layers.len() >= 2 {
        return SplitSearch::Split(layers[0].clone());
    }
    let Some(core) = layers.into_iter().next() else {
        return SplitSearch::Local;
    };
    if core.degree() == Some(1) {
        return SplitSearch::Local;
    }
    match rational_root(&core) {
        Some(lambda) => SplitSearch::Split(UniPoly::linear(-lambda)),
        None => SplitSearch::Unfactored,
    }
}

/// Fitting decomposition `ker ψ^N ⊕ im ψ^N` of a representation.
fn fitting_split(rep: &QuiverRep, psi: &Morphism) -> (QuiverRep, QuiverRep) {
    let n = rep.total_dim() as u32;
    let mut kernels = Vec::new();
    let mut images = Vec::new();
    for (v, m) in psi.iter().enumerate() {
        let d = rep.dims[v];
        let p = m.pow(n);
        kernels.push(Matrix::from_cols(d, &p.nullspace()));
        images.push(Matrix::from_cols(d, &p.column_space()));
    }
    (rep.restrict(&kernels), rep.restrict(&images))
}

fn random_combination(basis: &[Morphism], rng: &mut ChaCha8Rng) -> Morphism {
    let mut acc: Morphism = basis[0]
        .iter()
        .map(|m| Matrix::zeros(m.rows(), m.cols()))
        .collect();
    for phi in basis {
        let c = Scalar::from(rng.gen_range(-3i64..=3));
        if c.is_zero() {
            continue;
        }
        for (a, m) in acc.iter_mut().zip(phi) {
            *a = &*a + &m.scale(&c);
        }
    }
    acc
}

/// Local-ring test on an `End` basis plus `trials` random combinations.
pub fn is_indecomposable_probe(rep: &QuiverRep, trials: usize, seed: u64) -> Verdict {
    let n = rep.total_dim();
    if n == 0 {
        return Verdict::Inconclusive("zero representation".into());
    }
    let basis = endomorphism_algebra(rep);
    if certify_local(&basis, n) {
        return Verdict::LikelyIndecomposable { certified: true };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut unfactored = false;
    let candidates = basis
        .iter()
        .cloned()
        .chain((0..trials).map(|_| random_combination(&basis, &mut rng)));
    for phi in candidates {
        match splitting_poly(&block_diag(&phi).charpoly()) {
            SplitSearch::Split(q) => {
                let psi: Morphism = phi.iter().map(|m| m.eval_poly(&q)).collect();
                let (a, b) = fitting_split(rep, &psi);
                if a.total_dim() > 0 && b.total_dim() > 0 {
                    return Verdict::Decomposable(Box::new(a), Box::new(b));
                }
            }
            SplitSearch::Local => {}
            SplitSearch::Unfactored => unfactored = true,
        }
    }
    if unfactored {
        Verdict::Inconclusive("characteristic polynomial without a rational splitting".into())
    } else {
        Verdict::LikelyIndecomposable { certified: false }
    }
}

/// Repeated probe splits until every piece passes.
pub fn decompose(rep: &QuiverRep, trials: usize, seed: u64) -> Vec<QuiverRep> {
    let mut work = vec![rep.clone()];
    let mut out = Vec::new();
    let mut round = 0u64;
    while let Some(r) = work.pop() {
        if r.total_dim() == 0 {
            continue;
        }
        match is_indecomposable_probe(&r, trials, seed.wrapping_add(round)) {
            Verdict::Decomposable(a, b) => {
                work.push(*b);
                work.push(*a);
            }
            _ => out.push(r),
        }
        round += 1;
    }
    out
}

/// Isomorphism test for `x` with local endomorphism ring: `x ≅ y` iff the
/// dimension vectors agree and some `g ∘ f` with `f: x → y`, `g: y → x` is
/// not nilpotent.
pub fn is_isomorphic(x: &QuiverRep, y: &QuiverRep) -> bool {
    if x.quiver != y.quiver || x.dims != y.dims {
        return false;
    }
    if x.total_dim() == 0 {
        return true;
    }
    let to = hom_space(x, y);
    if to.is_empty() {
        return false;
    }
    let back = hom_space(y, x);
    to.iter()
        .any(|f| back.iter().any(|g| !is_nilpotent(&compose(g, f))))
}
