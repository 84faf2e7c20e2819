//! Bound quivers of the blocks of weight modules: the linear quiver `A`,
//! the square quiver `B`, the skeleton `S_ℓ`, and their finite-dimensional
//! representations over `Q`.

mod endo;
mod families;
mod identify;
mod skeleton;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::Matrix;
use crate::module::ModuleError;
use crate::poly::Scalar;

pub use endo::{
    decompose, endomorphism_algebra, hom_space, is_indecomposable_probe, is_isomorphic, Morphism,
    Verdict,
};
pub use families::{
    classified_type_a, classified_type_b, type_a_indecomposable, type_b_indecomposable, ClassLabel,
};
pub use identify::{identify_class, invariants, Invariants};
pub use skeleton::{module_to_quiver_rep, skeleton, SkeletonPresentation, StandardForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("arrow {arrow}: expected a {expected:?} matrix, got {got:?}")]
    ShapeMismatch {
        arrow: String,
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("expected {expected} {what}, got {got}")]
    WrongCount {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("interval [{k1}, {k2}] is not valid for r = {r}")]
    BadInterval { r: usize, k1: usize, k2: usize },
    #[error("bad family parameters: {0}")]
    BadParams(String),
    #[error("representation is decomposable")]
    NotIndecomposable,
    #[error("class-breaking edge {edge}↔{next} on axis {axis} lies outside the window", next = edge + 1)]
    SupportTouchesBoundary { axis: usize, edge: i64 },
    #[error("only universal window modules have a skeleton image")]
    UnsupportedModule,
    #[error("weight spaces of one class disagree on axis {axis} at edge {edge}")]
    InconsistentIdentification { axis: usize, edge: i64 },
    #[error("unknown name {0}")]
    UnknownName(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// Which bound quiver a representation lives on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum QuiverKind {
    /// Linear quiver on `r + 1` points, vertices labelled `1..=r+1`.
    A { r: usize },
    /// Four points `0..=3` on a square.
    B,
    /// Skeleton with objects `∏ {0..sizes[i]}`.
    Skeleton { sizes: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A path is a list of arrow indices, first applied first.
pub type Path = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Relation {
    Zero(Path),
    Commute(Path, Path),
}

impl Relation {
    /// Canonical form, so that presentations can be compared as sets.
    pub fn normalized(&self) -> Relation {
        match self {
            Relation::Commute(x, y) if y < x => Relation::Commute(y.clone(), x.clone()),
            r => r.clone(),
        }
    }

    pub fn map_arrows(&self, f: impl Fn(usize) -> usize) -> Relation {
        let m = |p: &Path| p.iter().map(|&a| f(a)).collect();
        match self {
            Relation::Zero(p) => Relation::Zero(m(p)),
            Relation::Commute(x, y) => Relation::Commute(m(x), m(y)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub kind: QuiverKind,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
}

impl Quiver {
    pub fn from_kind(kind: &QuiverKind) -> Quiver {
        match kind {
            QuiverKind::A { r } => quiver_a(*r),
            QuiverKind::B => quiver_b(),
            QuiverKind::Skeleton { sizes } => skeleton::skeleton_quiver(sizes),
        }
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Relation in composition notation, e.g. `a0 b0 = 0`.
    pub fn relation_label(&self, rel: &Relation) -> String {
        let word = |p: &Path| {
            p.iter()
                .rev()
                .map(|&a| self.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join(" ")
        };
        match rel {
            Relation::Zero(p) => format!("{} = 0", word(p)),
            Relation::Commute(x, y) => format!("{} = {}", word(x), word(y)),
        }
    }
}

fn arrow(name: String, source: usize, target: usize) -> Arrow {
    Arrow {
        name,
        source,
        target,
    }
}

/// `1 ⇄ 2 ⇄ … ⇄ r+1` with `a_j: j → j+1`, `b_j: j+1 → j` and
/// `a_j b_j = b_j a_j = 0`.
pub fn quiver_a(r: usize) -> Quiver {
    let vertices = (1..=r + 1).map(|j| j.to_string()).collect();
    let mut arrows: Vec<Arrow> = (0..r)
        .map(|j| arrow(format!("a{}", j + 1), j, j + 1))
        .collect();
    arrows.extend((0..r).map(|j| arrow(format!("b{}", j + 1), j + 1, j)));
    let relations = (0..r)
        .flat_map(|j| {
            [
                Relation::Zero(vec![r + j, j]),
                Relation::Zero(vec![j, r + j]),
            ]
        })
        .collect();
    Quiver {
        kind: QuiverKind::A { r },
        vertices,
        arrows,
        relations,
    }
}

/// The square `0,1,2,3` with `a_i: i → i+1`, `b_i: i+1 → i` (indices mod 4),
/// `a_i b_i = b_i a_i = 0` and `a_{i+1} a_i = b_{i+2} b_{i+3}`.
pub fn quiver_b() -> Quiver {
    let vertices = (0..4).map(|i| i.to_string()).collect();
    let mut arrows: Vec<Arrow> = (0..4)
        .map(|i| arrow(format!("a{i}"), i, (i + 1) % 4))
        .collect();
    arrows.extend((0..4).map(|i| arrow(format!("b{i}"), (i + 1) % 4, i)));
    let b = |i: usize| 4 + i % 4;
    let mut relations = Vec::new();
    for i in 0..4 {
        relations.push(Relation::Zero(vec![b(i), i]));
        relations.push(Relation::Zero(vec![i, b(i)]));
    }
    for i in 0..4 {
        relations.push(Relation::Commute(
            vec![i, (i + 1) % 4],
            vec![b(i + 3), b(i + 2)],
        ));
    }
    Quiver {
        kind: QuiverKind::B,
        vertices,
        arrows,
        relations,
    }
}

/// A representation: a vector space `Q^{dims[v]}` per vertex and a
/// `dims[target] × dims[source]` matrix per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    pub quiver: Quiver,
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl RelationCheck {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl QuiverRep {
    pub fn new(quiver: Quiver, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self, QuiverError> {
        if dims.len() != quiver.vertices.len() {
            return Err(QuiverError::WrongCount {
                what: "vertex dimensions",
                expected: quiver.vertices.len(),
                got: dims.len(),
            });
        }
        if maps.len() != quiver.arrows.len() {
            return Err(QuiverError::WrongCount {
                what: "arrow matrices",
                expected: quiver.arrows.len(),
                got: maps.len(),
            });
        }
        for (a, m) in quiver.arrows.iter().zip(&maps) {
            let expected = (dims[a.target], dims[a.source]);
            if m.shape() != expected {
                return Err(QuiverError::ShapeMismatch {
                    arrow: a.name.clone(),
                    expected,
                    got: m.shape(),
                });
            }
        }
        Ok(QuiverRep { quiver, dims, maps })
    }

    pub fn zero(quiver: Quiver) -> Self {
        let dims = vec![0; quiver.vertices.len()];
        let maps = quiver.arrows.iter().map(|_| Matrix::zeros(0, 0)).collect();
        QuiverRep { quiver, dims, maps }
    }

    /// Builds a representation from named nonzero arrows; all others are zero.
    pub fn from_named(
        quiver: Quiver,
        dims: Vec<usize>,
        named: &[(&str, Matrix)],
    ) -> Result<Self, QuiverError> {
        let mut maps: Vec<Matrix> = quiver
            .arrows
            .iter()
            .map(|a| {
                Matrix::zeros(
                    dims.get(a.target).copied().unwrap_or(0),
                    dims.get(a.source).copied().unwrap_or(0),
                )
            })
            .collect();
        for (name, m) in named {
            let idx = quiver
                .arrow_index(name)
                .ok_or_else(|| QuiverError::UnknownName(name.to_string()))?;
            maps[idx] = m.clone();
        }
        QuiverRep::new(quiver, dims, maps)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn map(&self, name: &str) -> Option<&Matrix> {
        self.quiver.arrow_index(name).map(|i| &self.maps[i])
    }

    /// Matrix of a path, `dims[end] × dims[start]`.
    pub fn path_matrix(&self, path: &[usize]) -> Matrix {
        let start = self.quiver.arrows[path[0]].source;
        let mut acc = Matrix::identity(self.dims[start]);
        for &a in path {
            acc = &self.maps[a] * &acc;
        }
        acc
    }

    pub fn verify_relations(&self) -> RelationCheck {
        let mut violations = Vec::new();
        for rel in &self.quiver.relations {
            let ok = match rel {
                Relation::Zero(p) => self.path_matrix(p).is_zero(),
                Relation::Commute(x, y) => self.path_matrix(x) == self.path_matrix(y),
            };
            if !ok {
                violations.push(self.quiver.relation_label(rel));
            }
        }
        RelationCheck {
            checked: self.quiver.relations.len(),
            violations,
        }
    }

    pub fn direct_sum(&self, other: &QuiverRep) -> QuiverRep {
        assert_eq!(
            self.quiver, other.quiver,
            "direct sum across different quivers"
        );
        let dims = self
            .dims
            .iter()
            .zip(&other.dims)
            .map(|(a, b)| a + b)
            .collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        QuiverRep {
            quiver: self.quiver.clone(),
            dims,
            maps,
        }
    }

    /// Transports the structure along invertible `g_v`: `M_α ↦ g_t M_α g_s⁻¹`.
    pub fn conjugate(&self, g: &[Matrix]) -> Option<QuiverRep> {
        let inv: Vec<Matrix> = g.iter().map(Matrix::inverse).collect::<Option<_>>()?;
        let maps = self
            .quiver
            .arrows
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| &(&g[a.target] * m) * &inv[a.source])
            .collect();
        Some(QuiverRep {
            quiver: self.quiver.clone(),
            dims: self.dims.clone(),
            maps,
        })
    }

    /// Subrepresentation on subspaces spanned by the columns of `bases[v]`,
    /// which must be stable under every arrow.
    pub fn restrict(&self, bases: &[Matrix]) -> QuiverRep {
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let maps = self
            .quiver
            .arrows
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| {
                let (s, t) = (a.source, a.target);
                if dims[t] == 0 || dims[s] == 0 {
                    return Matrix::zeros(dims[t], dims[s]);
                }
                let image = m * &bases[s];
                bases[t]
                    .solve(&image)
                    .expect("subspace is not stable under the arrow")
            })
            .collect();
        QuiverRep {
            quiver: self.quiver.clone(),
            dims,
            maps,
        }
    }

    pub fn to_json(&self) -> QuiverRepJson {
        QuiverRepJson {
            quiver: self.quiver.kind.clone(),
            dims: self
                .quiver
                .vertices
                .iter()
                .cloned()
                .zip(self.dims.iter().copied())
                .collect(),
            maps: self
                .quiver
                .arrows
                .iter()
                .zip(&self.maps)
                .map(|(a, m)| (a.name.clone(), m.clone()))
                .collect(),
        }
    }

    pub fn from_json(json: &QuiverRepJson) -> Result<QuiverRep, QuiverError> {
        let quiver = Quiver::from_kind(&json.quiver);
        for name in json.dims.keys() {
            quiver
                .vertex_index(name)
                .ok_or_else(|| QuiverError::UnknownName(name.clone()))?;
        }
        let dims: Vec<usize> = quiver
            .vertices
            .iter()
            .map(|v| json.dims.get(v).copied().unwrap_or(0))
            .collect();
        let mut maps = Vec::with_capacity(quiver.arrows.len());
        for a in &quiver.arrows {
            let shape = (dims[a.target], dims[a.source]);
            let m = match json.maps.get(&a.name) {
                // Empty row lists lose their column count in JSON.
                Some(m) if m.rows() == 0 || m.cols() == 0 => {
                    if shape.0 * shape.1 != 0 {
                        return Err(QuiverError::ShapeMismatch {
                            arrow: a.name.clone(),
                            expected: shape,
                            got: m.shape(),
                        });
                    }
                    Matrix::zeros(shape.0, shape.1)
                }
                Some(m) => m.clone(),
                None => Matrix::zeros(shape.0, shape.1),
            };
            maps.push(m);
        }
        for name in json.maps.keys() {
            quiver
                .arrow_index(name)
                .ok_or_else(|| QuiverError::UnknownName(name.clone()))?;
        }
        QuiverRep::new(quiver, dims, maps)
    }
}

impl fmt::Display for QuiverRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dims {:?}", self.dims)?;
        for (a, m) in self.quiver.arrows.iter().zip(&self.maps) {
            if !m.is_zero() {
                write!(f, ", {} = {:?}", a.name, m)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverRepJson {
    pub quiver: QuiverKind,
    pub dims: BTreeMap<String, usize>,
    pub maps: BTreeMap<String, Matrix>,
}

/// `1×1` matrix.
pub(crate) fn unit(c: Scalar) -> Matrix {
    Matrix::from_rows(vec![vec![c]])
}
