//! Closed-form action of `T_ij(u)` on the basis `ξ^(k)` and the
//! construction of window matrices from it.

use std::collections::BTreeMap;

use super::{
    generator_key, ModuleError, ModuleKind, ModuleParams, Point, SparseColumns, Spill, Window,
    WindowModule,
};
use crate::poly::{lagrange_numerator, poly_div_exact, PolyError, Scalar, UniPoly};
use crate::yangian::Generator;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `T_21`, towards `k + δ_i`.
    Up,
    /// `T_12`, towards `k − δ_i`.
    Down,
}

/// `∏_i (u + β_i + k_i)`, the eigenvalue of `T_22(u)` on `ξ^(k)`.
pub fn t22_eigenpoly(params: &ModuleParams, k: &[i64]) -> UniPoly {
    params
        .beta
        .iter()
        .zip(k)
        .fold(UniPoly::one(), |acc, (b, &ki)| {
            &acc * &UniPoly::linear(b + Scalar::from(ki))
        })
}

/// Scalar prefactor `A_i(k)` (up) or `B_i(k)` (down).
fn ladder_scalar(params: &ModuleParams, k: &[i64], axis: usize, dir: Direction) -> Scalar {
    let b = &params.beta[axis];
    let ki = k[axis];
    match dir {
        Direction::Up if ki < 0 => -params.gamma_at(&-(b + Scalar::from(ki))),
        Direction::Down if ki > 0 => -params.gamma_at(&(-(b + Scalar::from(ki)) + Scalar::one())),
        _ => Scalar::one(),
    }
}

/// Coefficient polynomial of `ξ^(k ± δ_axis)` in `T_21(u) ξ^(k)` (up) or
/// `T_12(u) ξ^(k)` (down); `axis` is 0-based.
pub fn ladder_coefficient(
    params: &ModuleParams,
    k: &[i64],
    axis: usize,
    dir: Direction,
) -> Result<UniPoly, ModuleError> {
    let (num, den) = lagrange_numerator(&params.beta, k, axis)?;
    let c = ladder_scalar(params, k, axis, dir) / den;
    Ok(num.scale(&c))
}

fn step(k: &[i64], axis: usize, d: i64) -> Point {
    let mut v = k.to_vec();
    v[axis] += d;
    v
}

/// `T_21(u) ξ^(k)` or `T_12(u) ξ^(k)` as a list of `(target, polynomial)`.
fn ladder_action(
    params: &ModuleParams,
    k: &[i64],
    dir: Direction,
) -> Result<Vec<(Point, UniPoly)>, ModuleError> {
    let d = if dir == Direction::Up { 1 } else { -1 };
    (0..params.level())
        .map(|axis| Ok((step(k, axis, d), ladder_coefficient(params, k, axis, dir)?)))
        .collect()
}

/// `T_11(u) ξ^(k)`, from
/// `T_11(u) β_k(u−1) ξ^(k) = γ(u) ξ^(k) + T_21(u) T_12(u−1) ξ^(k)`
/// where `β_k(u−1)` is the `T_22(u−1)` eigenvalue of the source `ξ^(k)`.
fn t11_action(params: &ModuleParams, k: &[i64]) -> Result<Vec<(Point, UniPoly)>, ModuleError> {
    let mut numer: BTreeMap<Point, UniPoly> = BTreeMap::new();
    numer.insert(k.to_vec(), params.gamma_poly());
    let minus_one = -Scalar::one();
    for (mid, down) in ladder_action(params, k, Direction::Down)? {
        let down = down.shift(&minus_one);
        for (target, up) in ladder_action(params, &mid, Direction::Up)? {
            let slot = numer.entry(target).or_insert_with(UniPoly::zero);
            *slot = &*slot + &(&down * &up);
        }
    }
    let divisor = t22_eigenpoly(params, k).shift(&minus_one);
    let mut out = Vec::with_capacity(numer.len());
    for (target, n) in numer {
        match poly_div_exact(&n, &divisor) {
            Ok(q) if q.is_zero() => {}
            Ok(q) => out.push((target, q)),
            Err(PolyError::NonzeroRemainder(remainder)) => {
                return Err(ModuleError::DivisibilityViolation {
                    origin: k.to_vec(),
                    target,
                    remainder,
                })
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

/// `T_ij(u) ξ^(k)` as `(target, polynomial in u)` pairs.
pub(crate) fn operator_action(
    params: &ModuleParams,
    i: u8,
    j: u8,
    k: &[i64],
) -> Result<Vec<(Point, UniPoly)>, ModuleError> {
    match (i, j) {
        (2, 2) => Ok(vec![(k.to_vec(), t22_eigenpoly(params, k))]),
        (2, 1) => ladder_action(params, k, Direction::Up),
        (1, 2) => ladder_action(params, k, Direction::Down),
        _ => t11_action(params, k),
    }
}

/// Target filter: `Keep` stores in-window entries, `Spill` logs the rest,
/// `Drop` discards (quotient directions).
enum Placement {
    Keep,
    Spill,
    Drop,
}

fn assemble(
    params: ModuleParams,
    window: Window,
    kind: ModuleKind,
    place: impl Fn(&[i64]) -> Placement,
) -> Result<WindowModule, ModuleError> {
    let p = params.p;
    let mut matrices: BTreeMap<Generator, SparseColumns> = BTreeMap::new();
    let mut spill = Vec::new();
    for k in window.points() {
        for (i, j) in [(1u8, 1u8), (1, 2), (2, 1), (2, 2)] {
            let action = operator_action(&params, i, j, &k)?;
            for r in 1..=p {
                let g = Generator::new(i, j, r);
                let col = matrices.entry(g).or_default().entry(k.clone()).or_default();
                for (target, poly) in &action {
                    let c = poly.coeff((p - r) as usize);
                    if c.is_zero() {
                        continue;
                    }
                    match place(target) {
                        Placement::Keep => col.push((target.clone(), c)),
                        Placement::Spill => spill.push(Spill {
                            generator: generator_key(g),
                            source: k.clone(),
                            target: target.clone(),
                            coeff: c,
                        }),
                        Placement::Drop => {}
                    }
                }
                col.sort_by(|a, b| a.0.cmp(&b.0));
            }
        }
    }
    for cols in matrices.values_mut() {
        cols.retain(|_, col| !col.is_empty());
    }
    Ok(WindowModule {
        params,
        window,
        kind,
        matrices,
        spill,
    })
}

fn check_window(params: &ModuleParams, window: &Window) -> Result<(), ModuleError> {
    if window.dim() != params.level() {
        return Err(ModuleError::WrongArity {
            what: "window axes",
            expected: params.level(),
            got: window.dim(),
        });
    }
    Ok(())
}

/// Matrices of all `4p` generators of `M(ℓ)` on the window.
pub fn build_window_module(
    params: &ModuleParams,
    window: &Window,
) -> Result<WindowModule, ModuleError> {
    params.require_generic()?;
    check_window(params, window)?;
    let w = window.clone();
    assemble(
        params.clone(),
        window.clone(),
        ModuleKind::Universal,
        move |t| {
            if w.contains(t) {
                Placement::Keep
            } else {
                Placement::Spill
            }
        },
    )
}

/// The Verma module `V(α(u), β(u))` with `α(u) = ∏ (u + α_i)` and
/// `β(u) = ∏ (u + β_i)`: the quotient of `M(β, γ)`, `γ(u) = α(u) β(u−1)`,
/// by the span of `ξ^(k)` with a negative coordinate.
pub fn build_verma(
    alpha: &[Scalar],
    beta: &[Scalar],
    window: &Window,
) -> Result<WindowModule, ModuleError> {
    if alpha.len() != beta.len() {
        return Err(ModuleError::WrongArity {
            what: "α roots",
            expected: beta.len(),
            got: alpha.len(),
        });
    }
    let gamma = alpha
        .iter()
        .cloned()
        .chain(beta.iter().map(|b| b - Scalar::one()))
        .collect();
    let params = ModuleParams::new(beta.to_vec(), gamma)?;
    params.require_generic()?;
    check_window(&params, window)?;
    if window.lo.iter().any(|&l| l < 0) {
        return Err(ModuleError::NotInOrthant);
    }
    let w = window.clone();
    assemble(params, window.clone(), ModuleKind::Verma, move |t| {
        if t.iter().any(|&x| x < 0) {
            Placement::Drop
        } else if w.contains(t) {
            Placement::Keep
        } else {
            Placement::Spill
        }
    })
}
