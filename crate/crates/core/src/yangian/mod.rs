//! The truncated Yangian `Y_p(gl_2)` in PBW normal form.
//!
//! Elements are linear combinations of ordered monomials in the generators
//! `t_ij^(r)`, `1 ≤ r ≤ p`, ordered lexicographically on `(i, j, r)`.
//! Products are normal-ordered by moving an out-of-order generator one step
//! left at a time; each swap emits a commutator whose terms have strictly
//! smaller filtration degree, so the rewriting terminates under the measure
//! (filtration degree, number of inversions).

mod certificate;
mod qdet;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::linalg::Matrix;
use crate::poly::{Exponent, MultiPoly, Scalar};

pub use certificate::{displacement_set, StraighteningCertificate};
pub use qdet::{OperatorPoly, QdetExpression};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum YangianError {
    #[error("displacement set is not invariant under permutations of coordinates")]
    NotInvariant,
    #[error("displacement set misses the shift {0:?} of the generator")]
    MissingDisplacement(Vec<i64>),
    #[error("displacement vector {0:?} does not have length p")]
    BadDisplacement(Vec<i64>),
    #[error("generator {0} is out of range for level p = {1}")]
    GeneratorOutOfRange(Generator, u32),
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),
    #[error("monomial {0:?} is not in normal order")]
    NotOrdered(Vec<Generator>),
    #[error("expected {expected} coordinates, got {got}")]
    WrongArity { expected: usize, got: usize },
}

/// The generator `t_ij^(r)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub i: u8,
    pub j: u8,
    pub r: u32,
}

impl Generator {
    pub fn new(i: u8, j: u8, r: u32) -> Self {
        assert!(
            (1..=2).contains(&i) && (1..=2).contains(&j) && r >= 1,
            "bad generator"
        );
        Generator { i, j, r }
    }

    /// All `4p` generators in normal order.
    pub fn all(p: u32) -> Vec<Generator> {
        let mut out = Vec::with_capacity(4 * p as usize);
        for i in 1..=2 {
            for j in 1..=2 {
                for r in 1..=p {
                    out.push(Generator::new(i, j, r));
                }
            }
        }
        out
    }

    /// Position of this generator among the `4p` commuting variables of the
    /// associated graded algebra.
    pub fn var_index(&self, p: u32) -> usize {
        ((self.i as usize - 1) * 2 + (self.j as usize - 1)) * p as usize + (self.r as usize - 1)
    }

    fn check(&self, p: u32) -> Result<(), YangianError> {
        if self.r > p {
            Err(YangianError::GeneratorOutOfRange(*self, p))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}{}^({})", self.i, self.j, self.r)
    }
}

/// Parses `t21^(2)` or `t21^2`.
impl std::str::FromStr for Generator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let err = || format!("expected a generator like t21^(2), got {s:?}");
        let rest = s.trim().strip_prefix('t').ok_or_else(err)?;
        let (ij, r) = rest.split_once('^').ok_or_else(err)?;
        let r = r.trim_start_matches('(').trim_end_matches(')');
        let mut digits = ij.chars().map(|c| c.to_digit(10));
        let (Some(Some(i)), Some(Some(j)), None) = (digits.next(), digits.next(), digits.next())
        else {
            return Err(err());
        };
        if !(1..=2).contains(&i) || !(1..=2).contains(&j) {
            return Err(err());
        }
        let r: u32 = r.parse().map_err(|_| err())?;
        Ok(Generator::new(i as u8, j as u8, r))
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Generator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.i as u32, self.j as u32, self.r].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [i, j, r] = <[u32; 3]>::deserialize(d)?;
        if !(1..=2).contains(&i) || !(1..=2).contains(&j) || r == 0 {
            return Err(serde::de::Error::custom(format!(
                "bad generator [{i},{j},{r}]"
            )));
        }
        Ok(Generator::new(i as u8, j as u8, r))
    }
}

/// A nondecreasing word in the generators; the empty word is `1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct Monomial(Vec<Generator>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// Accepts only words already in normal order.
    pub fn new(factors: Vec<Generator>) -> Result<Self, YangianError> {
        if factors.windows(2).any(|w| w[0] > w[1]) {
            return Err(YangianError::NotOrdered(factors));
        }
        Ok(Monomial(factors))
    }

    pub fn factors(&self) -> &[Generator] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of generator levels.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|g| g.r).sum()
    }

    fn appended(&self, g: Generator) -> Monomial {
        let mut v = self.0.clone();
        v.push(g);
        Monomial(v)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("*"))
    }
}

type Terms = BTreeMap<Monomial, Scalar>;

fn add_into(acc: &mut Terms, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&m) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                acc.remove(&m);
            }
        }
        None => {
            acc.insert(m, c);
        }
    }
}

/// An element of `Y_p(gl_2)` in PBW normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NCPolynomial {
    p: u32,
    terms: Terms,
}

impl NCPolynomial {
    pub fn zero(p: u32) -> Self {
        NCPolynomial {
            p,
            terms: Terms::new(),
        }
    }

    pub fn constant(p: u32, c: Scalar) -> Self {
        let mut out = NCPolynomial::zero(p);
        add_into(&mut out.terms, Monomial::one(), c);
        out
    }

    pub fn one(p: u32) -> Self {
        NCPolynomial::constant(p, Scalar::one())
    }

    pub fn generator(p: u32, g: Generator) -> Self {
        assert!(g.r <= p, "generator level exceeds p");
        let mut out = NCPolynomial::zero(p);
        out.terms.insert(Monomial(vec![g]), Scalar::one());
        out
    }

    /// `t_ij^(r)` with the conventions `t^(0) = δ` and `t^(r) = 0` for `r > p`.
    pub fn t(p: u32, i: u8, j: u8, r: u32) -> Self {
        match r {
            0 if i == j => NCPolynomial::one(p),
            0 => NCPolynomial::zero(p),
            r if r > p => NCPolynomial::zero(p),
            r => NCPolynomial::generator(p, Generator::new(i, j, r)),
        }
    }

    pub fn from_terms(
        p: u32,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self, YangianError> {
        let mut out = NCPolynomial::zero(p);
        for (m, c) in terms {
            for g in m.factors() {
                g.check(p)?;
            }
            add_into(&mut out.terms, m, c);
        }
        Ok(out)
    }

    pub fn level(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Highest filtration degree of a term, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn scale(&self, c: &Scalar) -> NCPolynomial {
        let mut out = NCPolynomial::zero(self.p);
        for (m, v) in &self.terms {
            add_into(&mut out.terms, m.clone(), v * c);
        }
        out
    }

    /// The set of generators occurring in some term.
    pub fn generators(&self) -> Vec<Generator> {
        let mut v: Vec<Generator> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().copied())
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Top filtration-degree part as a commutative polynomial in the `4p`
    /// variables `t̄_ij^(r)` indexed by [`Generator::var_index`].
    pub fn graded_symbol(&self) -> MultiPoly {
        let n = 4 * self.p as usize;
        let mut out = MultiPoly::zero(n);
        let Some(top) = self.degree() else {
            return out;
        };
        for (m, c) in &self.terms {
            if m.degree() != top {
                continue;
            }
            let mut e = vec![0u32; n];
            for g in m.factors() {
                e[g.var_index(self.p)] += 1;
            }
            out.add_term(Exponent(e), c.clone());
        }
        out
    }

    pub fn to_wire(&self) -> Vec<WireTerm> {
        self.terms
            .iter()
            .map(|(m, c)| WireTerm {
                monomial: m.factors().to_vec(),
                coeff: c.clone(),
            })
            .collect()
    }

    /// Rebuilds an element from its JSON term list; monomials must be ordered.
    pub fn from_wire(p: u32, wire: Vec<WireTerm>) -> Result<Self, YangianError> {
        let mut terms = Vec::with_capacity(wire.len());
        for t in wire {
            terms.push((Monomial::new(t.monomial)?, t.coeff));
        }
        NCPolynomial::from_terms(p, terms)
    }

    fn same_level(&self, other: &NCPolynomial) {
        assert_eq!(self.p, other.p, "level mismatch");
    }
}

/// One `{monomial, coeff}` entry of the JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireTerm {
    pub monomial: Vec<Generator>,
    pub coeff: Scalar,
}

impl Serialize for NCPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_wire().serialize(s)
    }
}

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut entries: Vec<(&Monomial, &Scalar)> = self.terms.iter().collect();
        entries.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| a.0.cmp(b.0)));
        for (n, (m, c)) in entries.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m:?}")?;
            } else {
                write!(f, "{a}*{m:?}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &NCPolynomial {
    type Output = NCPolynomial;
    fn add(self, rhs: &NCPolynomial) -> NCPolynomial {
        self.same_level(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            add_into(&mut out.terms, m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &NCPolynomial {
    type Output = NCPolynomial;
    fn sub(self, rhs: &NCPolynomial) -> NCPolynomial {
        self.same_level(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            add_into(&mut out.terms, m.clone(), -c);
        }
        out
    }
}

impl Neg for &NCPolynomial {
    type Output = NCPolynomial;
    fn neg(self) -> NCPolynomial {
        self.scale(&-Scalar::one())
    }
}

/// The algebra `Y_p(gl_2)` together with memo tables for normal ordering.
pub struct Yangian {
    p: u32,
    mono_gen: Mutex<HashMap<(Monomial, Generator), Arc<Terms>>>,
    commutators: Mutex<HashMap<(Generator, Generator), Arc<Terms>>>,
}

impl Yangian {
    pub fn new(p: u32) -> Self {
        assert!(p >= 1, "level must be positive");
        Yangian {
            p,
            mono_gen: Mutex::new(HashMap::new()),
            commutators: Mutex::new(HashMap::new()),
        }
    }

    pub fn level(&self) -> u32 {
        self.p
    }

    pub fn generators(&self) -> Vec<Generator> {
        Generator::all(self.p)
    }

    pub fn one(&self) -> NCPolynomial {
        NCPolynomial::one(self.p)
    }

    pub fn gen(&self, i: u8, j: u8, r: u32) -> NCPolynomial {
        NCPolynomial::t(self.p, i, j, r)
    }

    /// `[g1, g2]` from the defining relations, in normal form.
    pub fn commutator_basic(&self, g1: Generator, g2: Generator) -> NCPolynomial {
        NCPolynomial {
            p: self.p,
            terms: (*self.commutator_terms(g1, g2)).clone(),
        }
    }

    fn commutator_terms(&self, g1: Generator, g2: Generator) -> Arc<Terms> {
        if let Some(t) = self.commutators.lock().unwrap().get(&(g1, g2)) {
            return t.clone();
        }
        let Generator { i, j, r } = g1;
        let Generator { i: k, j: l, r: s } = g2;
        let mut out = Terms::new();
        for a in 1..=r.min(s) {
            let hi = r + s - a;
            if hi > self.p {
                continue;
            }
            // t^(a-1)_kj t^(hi)_il − t^(hi)_kj t^(a-1)_il
            let plus = self.word_product(&[(k, j, a - 1), (i, l, hi)]);
            let minus = self.word_product(&[(k, j, hi), (i, l, a - 1)]);
            for (m, c) in plus {
                add_into(&mut out, m, c);
            }
            for (m, c) in minus {
                add_into(&mut out, m, -c);
            }
        }
        let out = Arc::new(out);
        self.commutators
            .lock()
            .unwrap()
            .insert((g1, g2), out.clone());
        out
    }

    /// Normal form of a word of symbols `t_ij^(r)`, honouring `t^(0) = δ`.
    fn word_product(&self, word: &[(u8, u8, u32)]) -> Terms {
        let mut acc = Terms::new();
        acc.insert(Monomial::one(), Scalar::one());
        for &(i, j, r) in word {
            if r == 0 {
                if i != j {
                    return Terms::new();
                }
                continue;
            }
            if r > self.p {
                return Terms::new();
            }
            acc = self.terms_times_gen(&acc, Generator::new(i, j, r));
        }
        acc
    }

    fn terms_times_gen(&self, x: &Terms, g: Generator) -> Terms {
        let mut out = Terms::new();
        for (m, c) in x {
            for (m2, c2) in self.mono_times_gen(m, g).iter() {
                add_into(&mut out, m2.clone(), c * c2);
            }
        }
        out
    }

    fn mono_times_gen(&self, m: &Monomial, g: Generator) -> Arc<Terms> {
        match m.0.last() {
            None => return Arc::new(Terms::from([(Monomial(vec![g]), Scalar::one())])),
            Some(&last) if last <= g => {
                return Arc::new(Terms::from([(m.appended(g), Scalar::one())]))
            }
            _ => {}
        }
        let key = (m.clone(), g);
        if let Some(t) = self.mono_gen.lock().unwrap().get(&key) {
            return t.clone();
        }
        let (&x, prefix) = m.0.split_last().expect("nonempty");
        let prefix = Monomial(prefix.to_vec());
        // prefix·x·g = (prefix·g)·x + prefix·[x, g]
        let mut out = Terms::new();
        for (m1, c1) in self.mono_times_gen(&prefix, g).iter() {
            for (m2, c2) in self.mono_times_gen(m1, x).iter() {
                add_into(&mut out, m2.clone(), c1 * c2);
            }
        }
        let comm = self.commutator_terms(x, g);
        for (cm, cc) in comm.iter() {
            for (m2, c2) in self.mono_times_mono(&prefix, cm) {
                add_into(&mut out, m2, cc * &c2);
            }
        }
        let out = Arc::new(out);
        self.mono_gen.lock().unwrap().insert(key, out.clone());
        out
    }

    fn mono_times_mono(&self, a: &Monomial, b: &Monomial) -> Terms {
        let mut acc = Terms::from([(a.clone(), Scalar::one())]);
        for &g in b.factors() {
            acc = self.terms_times_gen(&acc, g);
        }
        acc
    }

    /// PBW normal form of `x · y`.
    pub fn multiply(&self, x: &NCPolynomial, y: &NCPolynomial) -> NCPolynomial {
        assert_eq!(x.p, self.p, "level mismatch");
        assert_eq!(y.p, self.p, "level mismatch");
        let mut out = Terms::new();
        for (mb, cb) in &y.terms {
            let mut partial = x.terms.clone();
            for &g in mb.factors() {
                partial = self.terms_times_gen(&partial, g);
            }
            for (m, c) in partial {
                add_into(&mut out, m, c * cb);
            }
        }
        NCPolynomial {
            p: self.p,
            terms: out,
        }
    }

    pub fn product(&self, factors: &[&NCPolynomial]) -> NCPolynomial {
        factors
            .iter()
            .fold(self.one(), |acc, f| self.multiply(&acc, f))
    }

    pub fn pow(&self, x: &NCPolynomial, e: u32) -> NCPolynomial {
        (0..e).fold(self.one(), |acc, _| self.multiply(&acc, x))
    }

    /// Normal form of an arbitrary word of generators.
    pub fn word(&self, gens: &[Generator]) -> Result<NCPolynomial, YangianError> {
        for g in gens {
            g.check(self.p)?;
        }
        let mut acc = Terms::from([(Monomial::one(), Scalar::one())]);
        for &g in gens {
            acc = self.terms_times_gen(&acc, g);
        }
        Ok(NCPolynomial {
            p: self.p,
            terms: acc,
        })
    }

    /// `x y − y x`.
    pub fn bracket(&self, x: &NCPolynomial, y: &NCPolynomial) -> NCPolynomial {
        &self.multiply(x, y) - &self.multiply(y, x)
    }

    /// Whether `x` commutes with all `4p` generators.
    pub fn is_central(&self, x: &NCPolynomial) -> bool {
        self.generators().into_iter().all(|g| {
            let gp = NCPolynomial::generator(self.p, g);
            self.bracket(x, &gp).is_zero()
        })
    }

    /// `[t_22^(1), …, t_22^(p), d_1, …, d_2p]`.
    pub fn gamma_generators(&self) -> Vec<NCPolynomial> {
        let mut out: Vec<NCPolynomial> = (1..=self.p).map(|r| self.gen(2, 2, r)).collect();
        out.extend(self.quantum_determinant());
        out
    }

    /// Rank of the Jacobian of the graded symbols of the generators of Γ at a
    /// point of `Q^{4p}` (coordinates indexed by [`Generator::var_index`]).
    pub fn jacobian_rank_gamma(&self, point: &[Scalar]) -> Result<usize, YangianError> {
        let n = 4 * self.p as usize;
        if point.len() != n {
            return Err(YangianError::WrongArity {
                expected: n,
                got: point.len(),
            });
        }
        let symbols: Vec<MultiPoly> = self
            .gamma_generators()
            .iter()
            .map(NCPolynomial::graded_symbol)
            .collect();
        let rows: Vec<Vec<Scalar>> = symbols
            .iter()
            .map(|s| (0..n).map(|v| s.derivative(v).eval(point)).collect())
            .collect();
        Ok(Matrix::from_rows(rows).rank())
    }
}

impl fmt::Debug for Yangian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Yangian(p={})", self.p)
    }
}
