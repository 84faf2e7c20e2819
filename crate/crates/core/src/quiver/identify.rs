//! Matching indecomposables against the classified families.

use serde::Serialize;

use super::families::discrete_dims;
use super::{
    is_indecomposable_probe, is_isomorphic, ClassLabel, QuiverError, QuiverKind, QuiverRep,
    StandardForm, Verdict,
};
use crate::linalg::Matrix;
use crate::poly::{poly_from_roots, Scalar};

/// The cycle map of a band-shaped representation of `B`, after normalizing
/// the three arrows that must be invertible.
fn cycle_map(rep: &QuiverRep, variant: u8) -> Option<Matrix> {
    let m = |name: &str| rep.map(name).expect("arrow of B");
    let (x, y, z, w) = if variant == 1 {
        (m("a2"), m("b1"), m("a0"), m("b3"))
    } else {
        (m("b0"), m("a1"), m("b2"), m("a3"))
    };
    let d = rep.dims[0];
    if rep.dims.iter().any(|&v| v != d) || d == 0 {
        return None;
    }
    let path = &(x * &y.inverse()?) * z;
    Some(&path.inverse()? * w)
}

/// `λ` when `φ` has the single eigenvalue `λ`.
fn single_eigenvalue(phi: &Matrix) -> Option<Scalar> {
    let d = phi.rows();
    let lambda = phi.trace() / Scalar::from(d as i64);
    let chi = phi.charpoly();
    (chi == poly_from_roots(&vec![-lambda.clone(); d])).then_some(lambda)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CycleInvariant {
    pub variant: u8,
    /// Coefficients of the characteristic polynomial, lowest degree first.
    pub charpoly: Vec<Scalar>,
    /// `rank (φ − (tr φ / d))^k` for `k = 1..=d`.
    pub shifted_ranks: Vec<usize>,
}

/// Basis-independent data of a representation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Invariants {
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub cycles: Vec<CycleInvariant>,
}

pub fn invariants(rep: &QuiverRep) -> Invariants {
    let mut cycles = Vec::new();
    if rep.quiver.kind == QuiverKind::B {
        for variant in [1, 2] {
            if let Some(phi) = cycle_map(rep, variant) {
                let d = phi.rows();
                let shifted = &phi - &Matrix::scalar(d, phi.trace() / Scalar::from(d as i64));
                cycles.push(CycleInvariant {
                    variant,
                    charpoly: phi.charpoly().coeffs().to_vec(),
                    shifted_ranks: (1..=d as u32).map(|k| shifted.pow(k).rank()).collect(),
                });
            }
        }
    }
    Invariants {
        dims: rep.dims.clone(),
        ranks: rep.maps.iter().map(Matrix::rank).collect(),
        cycles,
    }
}

fn matching(candidates: Vec<ClassLabel>, rep: &QuiverRep) -> ClassLabel {
    candidates
        .into_iter()
        .find(|label| label.construct().is_ok_and(|c| is_isomorphic(&c, rep)))
        .unwrap_or(ClassLabel::Unknown)
}

fn identify_a(rep: &QuiverRep, r: usize) -> ClassLabel {
    let support: Vec<usize> = (0..=r).filter(|&v| rep.dims[v] > 0).collect();
    let (Some(&first), Some(&last)) = (support.first(), support.last()) else {
        return ClassLabel::Unknown;
    };
    if support.len() != last - first + 1 || support.iter().any(|&v| rep.dims[v] != 1) {
        return ClassLabel::Unknown;
    }
    let (k1, k2) = (first + 1, last + 1);
    let label = if k1 == k2 {
        ClassLabel::Simple {
            vertex: k1,
            r: Some(r),
        }
    } else {
        let xi = (k1..k2)
            .map(|i| u8::from(!rep.map(&format!("a{i}")).expect("arrow of A").is_zero()))
            .collect();
        ClassLabel::TypeA { r, k1, k2, xi }
    };
    matching(vec![label], rep)
}

fn identify_b(rep: &QuiverRep) -> ClassLabel {
    let dims = &rep.dims;
    let total = rep.total_dim();
    let mut candidates = Vec::new();
    if total == 1 {
        let vertex = dims
            .iter()
            .position(|&d| d == 1)
            .expect("one nonzero vertex");
        candidates.push(ClassLabel::Simple { vertex, r: None });
    }
    if dims.iter().all(|&d| d == 1) {
        candidates.extend((0..4).map(|i| ClassLabel::BM { i }));
    }
    if total >= 2 {
        for j in 0..4 {
            if discrete_dims(total, j) == *dims {
                for variant in [1, 2] {
                    candidates.push(ClassLabel::BDiscrete {
                        n: total,
                        j,
                        variant,
                    });
                }
            }
        }
    }
    for variant in [1, 2] {
        if let Some(lambda) = cycle_map(rep, variant).as_ref().and_then(single_eigenvalue) {
            if !lambda.is_zero() {
                candidates.push(ClassLabel::BBand {
                    d: dims[0],
                    lambda,
                    variant,
                });
            }
        }
    }
    matching(candidates, rep)
}

/// The isoclass of an indecomposable representation, or `Unknown` when no
/// classified family matches.
pub fn identify_class(
    rep: &QuiverRep,
    trials: usize,
    seed: u64,
) -> Result<ClassLabel, QuiverError> {
    if let Verdict::Decomposable(..) = is_indecomposable_probe(rep, trials, seed) {
        return Err(QuiverError::NotIndecomposable);
    }
    Ok(match &rep.quiver.kind {
        _ if rep.total_dim() == 0 => ClassLabel::Unknown,
        QuiverKind::A { r } => identify_a(rep, *r),
        QuiverKind::B => identify_b(rep),
        QuiverKind::Skeleton { sizes } => match StandardForm::for_sizes(sizes) {
            Some(form) => return identify_class(&form.transport(rep), trials, seed),
            None => ClassLabel::Unknown,
        },
    })
}
