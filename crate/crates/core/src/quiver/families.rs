//! The classified indecomposables of the quivers `A` and `B`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{quiver_a, quiver_b, unit, QuiverError, QuiverRep};
use crate::linalg::Matrix;
use crate::poly::Scalar;

/// Isoclass labels. Vertices of `A` are numbered `1..=r+1`, vertices of `B`
/// `0..=3`. For `TypeA`, `xi[m]` is `ξ(k1 + m)` for `k1 ≤ k1 + m < k2`; the
/// value of `ξ` at `k2` does not affect the module and is not stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "class")]
pub enum ClassLabel {
    Simple {
        vertex: usize,
        /// Present for the quiver `A` on `r + 1` points.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        r: Option<usize>,
    },
    TypeA {
        r: usize,
        k1: usize,
        k2: usize,
        xi: Vec<u8>,
    },
    #[serde(rename = "B_M")]
    BM {
        i: usize,
    },
    #[serde(rename = "B_Discrete")]
    BDiscrete {
        n: usize,
        j: usize,
        variant: u8,
    },
    #[serde(rename = "B_Band")]
    BBand {
        d: usize,
        lambda: Scalar,
        variant: u8,
    },
    Unknown,
}

impl ClassLabel {
    pub fn construct(&self) -> Result<QuiverRep, QuiverError> {
        match self {
            ClassLabel::Simple { vertex, r: Some(r) } => {
                if *vertex == 0 || *vertex > r + 1 {
                    return Err(QuiverError::BadParams(format!(
                        "vertex {vertex} not in 1..={}",
                        r + 1
                    )));
                }
                let mut dims = vec![0; r + 1];
                dims[vertex - 1] = 1;
                QuiverRep::from_named(quiver_a(*r), dims, &[])
            }
            ClassLabel::TypeA { r, k1, k2, xi } => type_a_indecomposable(*r, *k1, *k2, xi),
            ClassLabel::Unknown => Err(QuiverError::BadParams("Unknown has no module".into())),
            _ => type_b_indecomposable(self),
        }
    }

    pub fn is_type_b(&self) -> bool {
        matches!(
            self,
            ClassLabel::Simple { r: None, .. }
                | ClassLabel::BM { .. }
                | ClassLabel::BDiscrete { .. }
                | ClassLabel::BBand { .. }
        )
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Simple { vertex, .. } => write!(f, "S_{vertex}"),
            ClassLabel::TypeA { k1, k2, xi, .. } => {
                let bits: String = xi.iter().map(|b| b.to_string()).collect();
                write!(f, "M({k1},{k2},{bits})")
            }
            ClassLabel::BM { i } => write!(f, "M_{i}"),
            ClassLabel::BDiscrete { n, j, variant } => write!(f, "M_({n},{j},{variant})"),
            ClassLabel::BBand { d, lambda, variant } => write!(f, "M_({d},{lambda},{variant})"),
            ClassLabel::Unknown => write!(f, "Unknown"),
        }
    }
}

/// Interval module on `[k1, k2]` of the quiver `A` with `r + 1` points:
/// across edge `i`, `a_i e_i = e_{i+1}` if `ξ(i) = 1`, else `b_i e_{i+1} = e_i`.
/// `xi` may have length `k2 − k1` or `k2 − k1 + 1`.
pub fn type_a_indecomposable(
    r: usize,
    k1: usize,
    k2: usize,
    xi: &[u8],
) -> Result<QuiverRep, QuiverError> {
    if !(1 <= k1 && k1 < k2 && k2 <= r + 1) {
        return Err(QuiverError::BadInterval { r, k1, k2 });
    }
    let edges = k2 - k1;
    if xi.len() != edges && xi.len() != edges + 1 {
        return Err(QuiverError::BadParams(format!(
            "ξ needs {edges} or {} values, got {}",
            edges + 1,
            xi.len()
        )));
    }
    if xi.iter().any(|&b| b > 1) {
        return Err(QuiverError::BadParams("ξ takes values in {0, 1}".into()));
    }
    let mut dims = vec![0; r + 1];
    for d in &mut dims[k1 - 1..k2] {
        *d = 1;
    }
    let names: Vec<String> = (0..edges)
        .map(|m| {
            let i = k1 + m;
            if xi[m] == 1 {
                format!("a{i}")
            } else {
                format!("b{i}")
            }
        })
        .collect();
    let named: Vec<(&str, Matrix)> = names
        .iter()
        .map(|n| (n.as_str(), unit(Scalar::one())))
        .collect();
    QuiverRep::from_named(quiver_a(r), dims, &named)
}

fn check_variant(variant: u8) -> Result<(), QuiverError> {
    if variant == 1 || variant == 2 {
        Ok(())
    } else {
        Err(QuiverError::BadParams(format!(
            "variant must be 1 or 2, got {variant}"
        )))
    }
}

/// Vertex of `e_k` in the discrete module `M_{n,j,v}`.
fn discrete_vertex(j: usize, k: usize) -> usize {
    (j + k - 1) % 4
}

pub(crate) fn discrete_dims(n: usize, j: usize) -> Vec<usize> {
    let mut dims = vec![0; 4];
    for k in 1..=n {
        dims[discrete_vertex(j, k)] += 1;
    }
    dims
}

pub fn type_b_indecomposable(label: &ClassLabel) -> Result<QuiverRep, QuiverError> {
    let q = quiver_b();
    let one = || unit(Scalar::one());
    match label {
        ClassLabel::Simple { vertex, r: None } => {
            if *vertex > 3 {
                return Err(QuiverError::BadParams(format!(
                    "vertex {vertex} not in 0..=3"
                )));
            }
            let mut dims = vec![0; 4];
            dims[*vertex] = 1;
            QuiverRep::from_named(q, dims, &[])
        }
        ClassLabel::BM { i } => {
            if *i > 3 {
                return Err(QuiverError::BadParams(format!(
                    "M_i needs i in 0..=3, got {i}"
                )));
            }
            let names = [
                format!("a{i}"),
                format!("a{}", (i + 1) % 4),
                format!("b{}", (i + 3) % 4),
                format!("b{}", (i + 2) % 4),
            ];
            let named: Vec<(&str, Matrix)> = names.iter().map(|n| (n.as_str(), one())).collect();
            QuiverRep::from_named(q, vec![1; 4], &named)
        }
        ClassLabel::BDiscrete { n, j, variant } => {
            check_variant(*variant)?;
            if *n < 2 || *j > 3 {
                return Err(QuiverError::BadParams(format!(
                    "M_(n,j,v) needs n ≥ 2 and j ≤ 3, got n={n}, j={j}"
                )));
            }
            let dims = discrete_dims(*n, *j);
            // position of e_k inside its vertex space
            let mut slot = vec![0; n + 1];
            let mut seen = [0usize; 4];
            for k in 1..=*n {
                let v = discrete_vertex(*j, k);
                slot[k] = seen[v];
                seen[v] += 1;
            }
            let mut maps: Vec<Matrix> = q
                .arrows
                .iter()
                .map(|a| Matrix::zeros(dims[a.target], dims[a.source]))
                .collect();
            for k in 1..=*n {
                let l = discrete_vertex(*j, k);
                let active = l.is_multiple_of(2) == (*variant == 1);
                if !active {
                    continue;
                }
                if k < *n {
                    maps[l].set(slot[k + 1], slot[k], Scalar::one());
                }
                if k > 1 {
                    maps[4 + (l + 3) % 4].set(slot[k - 1], slot[k], Scalar::one());
                }
            }
            QuiverRep::new(q, dims, maps)
        }
        ClassLabel::BBand { d, lambda, variant } => {
            check_variant(*variant)?;
            if *d == 0 || lambda.is_zero() {
                return Err(QuiverError::BadParams(
                    "band modules need d ≥ 1 and λ ≠ 0".into(),
                ));
            }
            let id = Matrix::identity(*d);
            let j = Matrix::jordan(*d, lambda);
            let named: Vec<(&str, Matrix)> = if *variant == 1 {
                vec![
                    ("a0", id.clone()),
                    ("a2", id.clone()),
                    ("b1", id),
                    ("b3", j),
                ]
            } else {
                vec![
                    ("b0", id.clone()),
                    ("b2", id.clone()),
                    ("a1", id),
                    ("a3", j),
                ]
            };
            QuiverRep::from_named(q, vec![*d; 4], &named)
        }
        other => Err(QuiverError::BadParams(format!(
            "{other} is not a B-family label"
        ))),
    }
}

/// Every classified indecomposable of `A` on `r + 1` points.
pub fn classified_type_a(r: usize) -> Vec<ClassLabel> {
    let mut out: Vec<ClassLabel> = (1..=r + 1)
        .map(|v| ClassLabel::Simple {
            vertex: v,
            r: Some(r),
        })
        .collect();
    for k1 in 1..=r {
        for k2 in k1 + 1..=r + 1 {
            let edges = k2 - k1;
            for mask in 0..(1u32 << edges) {
                let xi = (0..edges).map(|m| ((mask >> m) & 1) as u8).collect();
                out.push(ClassLabel::TypeA { r, k1, k2, xi });
            }
        }
    }
    out
}

/// Classified indecomposables of `B`: all `S_i`, `M_i`, the discrete family
/// for `2 ≤ n ≤ max_n`, and bands for `d ≤ max_d` and each `λ`.
pub fn classified_type_b(max_n: usize, max_d: usize, lambdas: &[Scalar]) -> Vec<ClassLabel> {
    let mut out: Vec<ClassLabel> = (0..4)
        .map(|v| ClassLabel::Simple { vertex: v, r: None })
        .collect();
    out.extend((0..4).map(|i| ClassLabel::BM { i }));
    for n in 2..=max_n {
        for j in 0..4 {
            for variant in 1..=2 {
                out.push(ClassLabel::BDiscrete { n, j, variant });
            }
        }
    }
    for d in 1..=max_d {
        for lambda in lambdas {
            for variant in 1..=2 {
                out.push(ClassLabel::BBand {
                    d,
                    lambda: lambda.clone(),
                    variant,
                });
            }
        }
    }
    out
}
