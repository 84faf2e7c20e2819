//! The universal module `M(ℓ)` and Verma quotients, realized on a finite box
//! of the weight lattice `Z^p`.
//!
//! Basis vectors are `ξ^(k)`, one per lattice point. Generator matrices are
//! stored column-wise: for each source `k` the list of `(k', coeff)` with
//! `k'` inside the window. Contributions leaving the window go to a spill
//! log so that nothing is lost silently.

mod action;
mod sample;
mod verify;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::poly::{poly_from_roots, PolyError, Scalar, UniPoly};
use crate::yangian::Generator;

pub use action::{build_verma, build_window_module, ladder_coefficient, t22_eigenpoly, Direction};
pub use sample::{random_generic_params, random_planted_params};
pub use verify::{
    apply_tau, central_character_at, central_character_check, tau_independence_check,
    verify_defining_relations, CentralReport, RelationReport, RelationViolation,
};

pub type Point = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("β is not generic: β_{0} − β_{1} is an integer")]
    NotGeneric(usize, usize),
    #[error("expected {expected} {what}, got {got}")]
    WrongArity {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("level must be at least 1")]
    ZeroLevel,
    #[error("window bounds are empty on axis {0}")]
    EmptyWindow(usize),
    #[error("interpolation denominator vanishes between axes {axis} and {other}")]
    DegenerateDenominator { axis: usize, other: usize },
    #[error("t11 entry {origin:?} -> {target:?} is not a polynomial: remainder {remainder}")]
    DivisibilityViolation {
        origin: Point,
        target: Point,
        remainder: UniPoly,
    },
    #[error("window axis {axis} has size {size}, needs more than {needed}")]
    WindowTooSmall { axis: usize, size: i64, needed: i64 },
    #[error("ladder path to {0:?} leaves the window")]
    PathLeavesWindow(Point),
    #[error("Verma windows must lie in the nonnegative orthant")]
    NotInOrthant,
    #[error("matrix data invalid: {0}")]
    BadMatrix(String),
}

impl From<PolyError> for ModuleError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::DegenerateDenominator { axis, other } => {
                ModuleError::DegenerateDenominator { axis, other }
            }
            other => ModuleError::BadMatrix(other.to_string()),
        }
    }
}

/// `ℓ = (β, γ)` with `T_22(u)` acting on `ξ` by `∏ (u + β_i)` and `D(u)` by
/// `γ(u) = ∏ (u + γ_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleParams {
    pub p: u32,
    pub beta: Vec<Scalar>,
    pub gamma: Vec<Scalar>,
}

impl ModuleParams {
    pub fn new(beta: Vec<Scalar>, gamma: Vec<Scalar>) -> Result<Self, ModuleError> {
        if beta.is_empty() {
            return Err(ModuleError::ZeroLevel);
        }
        if gamma.len() != 2 * beta.len() {
            return Err(ModuleError::WrongArity {
                what: "γ roots",
                expected: 2 * beta.len(),
                got: gamma.len(),
            });
        }
        Ok(ModuleParams {
            p: beta.len() as u32,
            beta,
            gamma,
        })
    }

    pub fn level(&self) -> usize {
        self.p as usize
    }

    pub fn is_generic(&self) -> bool {
        check_generic(&self.beta)
    }

    pub fn require_generic(&self) -> Result<(), ModuleError> {
        match first_integral_pair(&self.beta) {
            Some((i, j)) => Err(ModuleError::NotGeneric(i, j)),
            None => Ok(()),
        }
    }

    pub fn gamma_poly(&self) -> UniPoly {
        poly_from_roots(&self.gamma)
    }

    /// `γ(u)` at a point.
    pub fn gamma_at(&self, u: &Scalar) -> Scalar {
        self.gamma.iter().map(|g| u + g).product()
    }
}

/// True iff no two entries differ by an integer.
pub fn check_generic(beta: &[Scalar]) -> bool {
    first_integral_pair(beta).is_none()
}

fn first_integral_pair(beta: &[Scalar]) -> Option<(usize, usize)> {
    for i in 0..beta.len() {
        for j in i + 1..beta.len() {
            if (&beta[i] - &beta[j]).is_integer() {
                return Some((i, j));
            }
        }
    }
    None
}

/// A nonempty box `∏ [lo_i, hi_i]` in `Z^p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl Window {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self, ModuleError> {
        if lo.len() != hi.len() {
            return Err(ModuleError::WrongArity {
                what: "upper bounds",
                expected: lo.len(),
                got: hi.len(),
            });
        }
        if let Some(axis) = (0..lo.len()).find(|&a| lo[a] > hi[a]) {
            return Err(ModuleError::EmptyWindow(axis));
        }
        Ok(Window { lo, hi })
    }

    /// `[−r, r]^p`.
    pub fn cube(p: usize, r: i64) -> Self {
        Window {
            lo: vec![-r; p],
            hi: vec![r; p],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, k: &[i64]) -> bool {
        k.len() == self.dim()
            && k.iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(x, (l, h))| l <= x && x <= h)
    }

    /// Whether `k` is at distance at least `margin` from the boundary on every axis.
    pub fn is_interior(&self, k: &[i64], margin: i64) -> bool {
        k.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(x, (l, h))| l + margin <= *x && *x <= h - margin)
    }

    pub fn len(&self) -> usize {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (h - l + 1) as usize)
            .product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All points in lexicographic order.
    pub fn points(&self) -> Vec<Point> {
        let mut out: Vec<Point> = vec![Vec::new()];
        for (l, h) in self.lo.iter().zip(&self.hi) {
            out = out
                .into_iter()
                .flat_map(|pre| {
                    (*l..=*h).map(move |x| {
                        let mut v = pre.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// Index of a point in [`Window::points`] order.
    pub fn index_of(&self, k: &[i64]) -> Option<usize> {
        if !self.contains(k) {
            return None;
        }
        let mut idx = 0usize;
        for a in 0..self.dim() {
            let size = (self.hi[a] - self.lo[a] + 1) as usize;
            idx = idx * size + (k[a] - self.lo[a]) as usize;
        }
        Some(idx)
    }

    /// Parses `lo:hi,lo:hi,...`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for part in s.split(',') {
            let (a, b) = part
                .split_once(':')
                .ok_or_else(|| format!("window axis `{part}` is not of the form lo:hi"))?;
            lo.push(a.trim().parse::<i64>().map_err(|e| format!("{a}: {e}"))?);
            hi.push(b.trim().parse::<i64>().map_err(|e| format!("{b}: {e}"))?);
        }
        Window::new(lo, hi).map_err(|e| e.to_string())
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| format!("{l}:{h}"))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A finitely supported vector `Σ c_k ξ^(k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleVector(pub BTreeMap<Point, Scalar>);

impl ModuleVector {
    pub fn zero() -> Self {
        ModuleVector::default()
    }

    pub fn basis(k: Point) -> Self {
        ModuleVector(BTreeMap::from([(k, Scalar::one())]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, k: Point, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(k.clone()).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn add_scaled(&mut self, other: &ModuleVector, c: &Scalar) {
        for (k, v) in &other.0 {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn coeff(&self, k: &[i64]) -> Scalar {
        self.0.get(k).cloned().unwrap_or_else(Scalar::zero)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleKind {
    Universal,
    Verma,
}

/// A matrix entry whose target fell outside the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spill {
    pub generator: String,
    pub source: Point,
    pub target: Point,
    pub coeff: Scalar,
}

/// Sparse column storage: source → [(target, coeff)].
pub type SparseColumns = BTreeMap<Point, Vec<(Point, Scalar)>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowModule {
    pub params: ModuleParams,
    pub window: Window,
    pub kind: ModuleKind,
    matrices: BTreeMap<Generator, SparseColumns>,
    spill: Vec<Spill>,
}

/// Key used for generator matrices in JSON: `t[i][j][r]`.
pub fn generator_key(g: Generator) -> String {
    format!("t[{}][{}][{}]", g.i, g.j, g.r)
}

pub fn parse_generator_key(s: &str) -> Option<Generator> {
    let rest = s.strip_prefix("t[")?.strip_suffix(']')?;
    let mut it = rest.split("][");
    let i: u8 = it.next()?.parse().ok()?;
    let j: u8 = it.next()?.parse().ok()?;
    let r: u32 = it.next()?.parse().ok()?;
    if it.next().is_some() || !(1..=2).contains(&i) || !(1..=2).contains(&j) || r == 0 {
        return None;
    }
    Some(Generator::new(i, j, r))
}

impl WindowModule {
    pub fn level(&self) -> u32 {
        self.params.p
    }

    pub fn matrix(&self, g: Generator) -> Option<&SparseColumns> {
        self.matrices.get(&g)
    }

    pub fn spill(&self) -> &[Spill] {
        &self.spill
    }

    /// Basis points carried by the module.
    pub fn points(&self) -> Vec<Point> {
        self.window.points()
    }

    /// Entry `⟨ξ^(target), g ξ^(source)⟩` among in-window entries.
    pub fn entry(&self, g: Generator, source: &[i64], target: &[i64]) -> Scalar {
        self.matrices
            .get(&g)
            .and_then(|m| m.get(source))
            .and_then(|col| col.iter().find(|(t, _)| t.as_slice() == target))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }

    /// Overwrites one in-window entry (zero removes it).
    pub fn set_entry(&mut self, g: Generator, source: Point, target: Point, c: Scalar) {
        let col = self
            .matrices
            .entry(g)
            .or_default()
            .entry(source)
            .or_default();
        col.retain(|(t, _)| *t != target);
        if !c.is_zero() {
            col.push((target, c));
            col.sort_by(|a, b| a.0.cmp(&b.0));
        }
    }

    /// `g · v`, keeping only in-window components.
    pub fn apply(&self, g: Generator, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero();
        let Some(m) = self.matrices.get(&g) else {
            return out;
        };
        for (k, c) in &v.0 {
            if let Some(col) = m.get(k) {
                for (t, e) in col {
                    out.add_term(t.clone(), c * e);
                }
            }
        }
        out
    }

    /// `t_ij^(r) · v` with `t^(0) = δ` and `t^(r) = 0` beyond the level.
    pub fn apply_symbol(&self, i: u8, j: u8, r: u32, v: &ModuleVector) -> ModuleVector {
        match r {
            0 if i == j => v.clone(),
            0 => ModuleVector::zero(),
            r if r > self.level() => ModuleVector::zero(),
            r => self.apply(Generator::new(i, j, r), v),
        }
    }

    pub fn to_json(&self) -> ModuleJson {
        let matrices = self
            .matrices
            .iter()
            .map(|(g, cols)| {
                let entries = cols
                    .iter()
                    .flat_map(|(k, col)| {
                        col.iter()
                            .map(move |(t, c)| MatrixEntry(k.clone(), t.clone(), c.clone()))
                    })
                    .collect();
                (generator_key(*g), entries)
            })
            .collect();
        ModuleJson {
            kind: self.kind,
            p: self.params.p,
            beta: self.params.beta.clone(),
            gamma: self.params.gamma.clone(),
            window: self.window.clone(),
            matrices,
            spill: self.spill.clone(),
        }
    }

    pub fn from_json(json: ModuleJson) -> Result<Self, ModuleError> {
        let params = ModuleParams::new(json.beta, json.gamma)?;
        if params.p != json.p {
            return Err(ModuleError::WrongArity {
                what: "β entries",
                expected: json.p as usize,
                got: params.level(),
            });
        }
        let window = Window::new(json.window.lo, json.window.hi)?;
        if window.dim() != params.level() {
            return Err(ModuleError::WrongArity {
                what: "window axes",
                expected: params.level(),
                got: window.dim(),
            });
        }
        let mut module = WindowModule {
            params,
            window,
            kind: json.kind,
            matrices: BTreeMap::new(),
            spill: json.spill,
        };
        for (key, entries) in json.matrices {
            let g = parse_generator_key(&key)
                .filter(|g| g.r <= module.level())
                .ok_or_else(|| ModuleError::BadMatrix(format!("unknown generator key {key}")))?;
            module.matrices.entry(g).or_default();
            for MatrixEntry(k, t, c) in entries {
                if !module.window.contains(&k) || !module.window.contains(&t) {
                    return Err(ModuleError::BadMatrix(format!(
                        "{key}: entry {k:?} -> {t:?} outside the window"
                    )));
                }
                module.set_entry(g, k, t, c);
            }
        }
        Ok(module)
    }
}

/// One `[k, k', "coeff"]` matrix entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixEntry(pub Point, pub Point, pub Scalar);

/// The `module.json` layout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub kind: ModuleKind,
    pub p: u32,
    pub beta: Vec<Scalar>,
    pub gamma: Vec<Scalar>,
    pub window: Window,
    pub matrices: BTreeMap<String, Vec<MatrixEntry>>,
    pub spill: Vec<Spill>,
}
