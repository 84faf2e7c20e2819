//! Checks on window modules: defining relations, central character, and the
//! ladder-product description of the basis.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{
    build_window_module, ModuleError, ModuleKind, ModuleParams, ModuleVector, Point, Window,
    WindowModule,
};
use crate::linalg::Matrix;
use crate::poly::{Scalar, UniPoly};
use crate::yangian::{Generator, QdetExpression};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationViolation {
    pub i: u8,
    pub j: u8,
    pub k: u8,
    pub l: u8,
    pub r: u32,
    pub s: u32,
    pub witness: Point,
    pub lhs: ModuleVector,
    pub rhs: ModuleVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub margin: i64,
    pub witnesses: usize,
    pub relations_checked: usize,
    pub violations: Vec<RelationViolation>,
}

impl RelationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Points whose relation checks only touch stored entries. For Verma
/// modules the lower face at 0 is exact (the quotient), so it needs no margin.
fn witnesses(module: &WindowModule, margin: i64) -> Vec<Point> {
    let w = &module.window;
    module
        .points()
        .into_iter()
        .filter(|k| {
            (0..w.dim()).all(|a| {
                let lo_margin = if module.kind == ModuleKind::Verma && w.lo[a] == 0 {
                    0
                } else {
                    margin
                };
                w.lo[a] + lo_margin <= k[a] && k[a] <= w.hi[a] - margin
            })
        })
        .collect()
}

fn check_margin(window: &Window, margin: i64) -> Result<(), ModuleError> {
    for a in 0..window.dim() {
        let size = window.hi[a] - window.lo[a] + 1;
        if size <= 2 * margin {
            return Err(ModuleError::WindowTooSmall {
                axis: a,
                size,
                needed: 2 * margin,
            });
        }
    }
    Ok(())
}

/// Checks `[t_ij^(r), t_kl^(s)] = Σ_a (t_kj^(a−1) t_il^(r+s−a) − t_kj^(r+s−a) t_il^(a−1))`
/// on every basis vector at distance at least `margin` from the window edge.
pub fn verify_defining_relations(
    module: &WindowModule,
    margin: i64,
) -> Result<RelationReport, ModuleError> {
    check_margin(&module.window, margin)?;
    let p = module.level();
    let gens = Generator::all(p);
    let ws = witnesses(module, margin);
    let mut violations = Vec::new();
    for w in &ws {
        let xi = ModuleVector::basis(w.clone());
        let single: BTreeMap<Generator, ModuleVector> =
            gens.iter().map(|&g| (g, module.apply(g, &xi))).collect();
        for &g1 in &gens {
            for &g2 in &gens {
                let mut lhs = module.apply(g1, &single[&g2]);
                lhs.add_scaled(&module.apply(g2, &single[&g1]), &-Scalar::one());
                let (i, j, r) = (g1.i, g1.j, g1.r);
                let (k, l, s) = (g2.i, g2.j, g2.r);
                let mut rhs = ModuleVector::zero();
                for a in 1..=r.min(s) {
                    let hi = r + s - a;
                    let plus =
                        module.apply_symbol(k, j, a - 1, &module.apply_symbol(i, l, hi, &xi));
                    let minus =
                        module.apply_symbol(k, j, hi, &module.apply_symbol(i, l, a - 1, &xi));
                    rhs.add_scaled(&plus, &Scalar::one());
                    rhs.add_scaled(&minus, &-Scalar::one());
                }
                if lhs != rhs {
                    violations.push(RelationViolation {
                        i,
                        j,
                        k,
                        l,
                        r,
                        s,
                        witness: w.clone(),
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }
    Ok(RelationReport {
        margin,
        witnesses: ws.len(),
        relations_checked: ws.len() * gens.len() * gens.len(),
        violations,
    })
}

type PolyVector = BTreeMap<Point, UniPoly>;

/// `T_ij(u + c)` applied to a vector with polynomial coefficients.
fn apply_operator(module: &WindowModule, i: u8, j: u8, c: i64, v: &PolyVector) -> PolyVector {
    let p = module.level();
    let shifted = |e: u32| UniPoly::linear(Scalar::from(c)).pow(e);
    let mut out = PolyVector::new();
    for (k, f) in v {
        let xi = ModuleVector::basis(k.clone());
        for r in 0..=p {
            let weight = &shifted(p - r) * f;
            for (t, e) in module.apply_symbol(i, j, r, &xi).0 {
                let slot = out.entry(t).or_insert_with(UniPoly::zero);
                *slot = &*slot + &weight.scale(&e);
            }
        }
    }
    out.retain(|_, f| !f.is_zero());
    out
}

fn sub_poly_vectors(a: &PolyVector, b: &PolyVector) -> PolyVector {
    let mut out = a.clone();
    for (k, f) in b {
        let slot = out.entry(k.clone()).or_insert_with(UniPoly::zero);
        *slot = &*slot - f;
    }
    out.retain(|_, f| !f.is_zero());
    out
}

/// `D(u) ξ^(k)` computed from the generator matrices.
pub(crate) fn qdet_on_basis(module: &WindowModule, expr: QdetExpression, k: &[i64]) -> PolyVector {
    // (i, j, shift) pairs: D = A B − C E with the rightmost factor applied first
    let ((a, b), (c, e)) = match expr {
        QdetExpression::First => (((1, 1, 0), (2, 2, -1)), ((2, 1, 0), (1, 2, -1))),
        QdetExpression::Second => (((1, 1, -1), (2, 2, 0)), ((1, 2, -1), (2, 1, 0))),
        QdetExpression::Third => (((2, 2, 0), (1, 1, -1)), ((1, 2, 0), (2, 1, -1))),
        QdetExpression::Fourth => (((2, 2, -1), (1, 1, 0)), ((2, 1, -1), (1, 2, 0))),
    };
    let start = PolyVector::from([(k.to_vec(), UniPoly::one())]);
    let prod = |x: (u8, u8, i64), y: (u8, u8, i64)| {
        let inner = apply_operator(module, y.0, y.1, y.2, &start);
        apply_operator(module, x.0, x.1, x.2, &inner)
    };
    sub_poly_vectors(&prod(a, b), &prod(c, e))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralReport {
    pub margin: i64,
    pub checked: usize,
    /// Witnesses where some presentation of `D(u)` differs from `γ(u)`.
    pub failures: Vec<(QdetExpression, Point)>,
}

impl CentralReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that all four presentations of `D(u)` act by `γ(u)` on interior
/// basis vectors.
pub fn central_character_check(
    module: &WindowModule,
    margin: i64,
) -> Result<CentralReport, ModuleError> {
    check_margin(&module.window, margin)?;
    let gamma = module.params.gamma_poly();
    let ws = witnesses(module, margin);
    let mut failures = Vec::new();
    for k in &ws {
        let expected = PolyVector::from([(k.clone(), gamma.clone())]);
        for expr in QdetExpression::ALL {
            if qdet_on_basis(module, expr, k) != expected {
                failures.push((expr, k.clone()));
            }
        }
    }
    Ok(CentralReport {
        margin,
        checked: ws.len(),
        failures,
    })
}

/// Whether every presentation of `D(u)` acts by `γ(u)` on the single basis
/// vector `ξ^(k)`; useful at boundary points such as the Verma highest weight.
pub fn central_character_at(module: &WindowModule, k: &[i64]) -> Result<bool, ModuleError> {
    if !module.window.contains(k) {
        return Err(ModuleError::PathLeavesWindow(k.to_vec()));
    }
    let expected = PolyVector::from([(k.to_vec(), module.params.gamma_poly())]);
    Ok(QdetExpression::ALL
        .iter()
        .all(|&expr| qdet_on_basis(module, expr, k) == expected))
}

/// `T_ij(c) v` using the window matrices.
fn apply_at(module: &WindowModule, i: u8, j: u8, c: &Scalar, v: &ModuleVector) -> ModuleVector {
    let p = module.level();
    let mut out = ModuleVector::zero();
    for r in 0..=p {
        let w = c.pow(p - r);
        out.add_scaled(&module.apply_symbol(i, j, r, v), &w);
    }
    out
}

/// The ordered product of ladder operators that defines `ξ^(k)`, applied to
/// `ξ^(0)`: first `T_12(−β_i + m)` for `m = 0, 1, …` on negative axes, then
/// `T_21(−β_i − m)` on positive axes.
pub fn apply_tau(module: &WindowModule, k: &[i64]) -> Result<ModuleVector, ModuleError> {
    let zero = vec![0i64; module.window.dim()];
    if k.len() != zero.len() {
        return Err(ModuleError::WrongArity {
            what: "coordinates",
            expected: zero.len(),
            got: k.len(),
        });
    }
    if !module.window.contains(&zero) || !module.window.contains(k) {
        return Err(ModuleError::PathLeavesWindow(k.to_vec()));
    }
    let mut v = ModuleVector::basis(zero);
    for (axis, &ki) in k.iter().enumerate() {
        let b = &module.params.beta[axis];
        for m in 0..(-ki).max(0) {
            v = apply_at(module, 1, 2, &(Scalar::from(m) - b), &v);
        }
    }
    for (axis, &ki) in k.iter().enumerate() {
        let b = &module.params.beta[axis];
        for m in 0..ki.max(0) {
            v = apply_at(module, 2, 1, &(-(b + Scalar::from(m))), &v);
        }
    }
    Ok(v)
}

/// Whether the vectors `τ^(k) ξ` for the given points are linearly independent.
pub fn tau_independence_check(
    params: &ModuleParams,
    ks: &[Point],
    window: &Window,
) -> Result<bool, ModuleError> {
    let module = build_window_module(params, window)?;
    let index: BTreeMap<Point, usize> = window
        .points()
        .into_iter()
        .enumerate()
        .map(|(n, k)| (k, n))
        .collect();
    let mut cols = Vec::with_capacity(ks.len());
    for k in ks {
        let v = apply_tau(&module, k)?;
        let mut col = vec![Scalar::zero(); index.len()];
        for (t, c) in v.0 {
            col[index[&t]] = c;
        }
        cols.push(col);
    }
    if cols.is_empty() {
        return Ok(true);
    }
    Ok(Matrix::from_cols(index.len(), &cols).rank() == ks.len())
}
