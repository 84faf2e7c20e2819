//! The skeleton `S_ℓ` of a block, its identification with `A` or `B`, and the
//! passage from window modules to skeleton representations.

use std::collections::{BTreeSet, HashMap};

use super::{
    quiver_a, quiver_b, unit, Arrow, Quiver, QuiverError, QuiverKind, QuiverRep, Relation,
};
use crate::block::representation_type;
use crate::module::{ModuleKind, ModuleParams, WindowModule};
use crate::poly::Scalar;
use crate::yangian::Generator;

/// Objects of the box `∏ {0..=sizes[i]}` in lexicographic order.
fn box_points(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &s in sizes {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=s).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

fn point_name(p: &[usize]) -> String {
    let parts: Vec<String> = p.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

/// Arrow lookup `(axis, up?, source object) → arrow index`.
type MoveTable = HashMap<(usize, bool, Vec<usize>), usize>;

fn skeleton_parts(sizes: &[usize]) -> (Quiver, MoveTable) {
    let points = box_points(sizes);
    let index: HashMap<Vec<usize>, usize> = points
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let mut arrows = Vec::new();
    let mut moves = MoveTable::new();
    for (axis, &size) in sizes.iter().enumerate() {
        for up in [true, false] {
            for p in &points {
                if (up && p[axis] == size) || (!up && p[axis] == 0) {
                    continue;
                }
                let mut q = p.clone();
                if up {
                    q[axis] += 1;
                } else {
                    q[axis] -= 1;
                }
                let letter = if up { 'r' } else { 's' };
                moves.insert((axis, up, p.clone()), arrows.len());
                arrows.push(Arrow {
                    name: format!("{letter}{}@{}", axis + 1, point_name(p)),
                    source: index[p],
                    target: index[&q],
                });
            }
        }
    }
    let step = |p: &[usize], axis: usize, up: bool| -> Option<Vec<usize>> {
        let mut q = p.to_vec();
        if up {
            (q[axis] < sizes[axis]).then(|| {
                q[axis] += 1;
                q
            })
        } else {
            (q[axis] > 0).then(|| {
                q[axis] -= 1;
                q
            })
        }
    };
    let mut relations = Vec::new();
    for p in &points {
        for axis in 0..sizes.len() {
            for up in [true, false] {
                if let Some(q) = step(p, axis, up) {
                    relations.push(Relation::Zero(vec![
                        moves[&(axis, up, p.clone())],
                        moves[&(axis, !up, q)],
                    ]));
                }
            }
        }
        for k in 0..sizes.len() {
            for l in k + 1..sizes.len() {
                for uk in [true, false] {
                    for ul in [true, false] {
                        let (Some(pk), Some(pl)) = (step(p, k, uk), step(p, l, ul)) else {
                            continue;
                        };
                        let via_k = vec![moves[&(k, uk, p.clone())], moves[&(l, ul, pk)]];
                        let via_l = vec![moves[&(l, ul, p.clone())], moves[&(k, uk, pl)]];
                        relations.push(Relation::Commute(via_k, via_l));
                    }
                }
            }
        }
    }
    let quiver = Quiver {
        kind: QuiverKind::Skeleton {
            sizes: sizes.to_vec(),
        },
        vertices: points.iter().map(|p| point_name(p)).collect(),
        arrows,
        relations,
    };
    (quiver, moves)
}

pub(crate) fn skeleton_quiver(sizes: &[usize]) -> Quiver {
    skeleton_parts(sizes).0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonPresentation {
    /// `I_i` per axis, sorted.
    pub offsets: Vec<Vec<i64>>,
    pub quiver: Quiver,
}

impl SkeletonPresentation {
    pub fn sizes(&self) -> Vec<usize> {
        self.offsets.iter().map(Vec::len).collect()
    }

    pub fn standard_form(&self) -> Option<StandardForm> {
        StandardForm::for_sizes(&self.sizes())
    }

    /// Object `c(k)` containing the lattice point `k`: `c_i = #{t ∈ I_i : t < k_i}`.
    pub fn class_of(&self, k: &[i64]) -> Vec<usize> {
        self.offsets
            .iter()
            .zip(k)
            .map(|(offs, &x)| offs.iter().filter(|&&t| t < x).count())
            .collect()
    }
}

pub fn skeleton(params: &ModuleParams) -> Result<SkeletonPresentation, QuiverError> {
    let profile = representation_type(params)?;
    let sizes: Vec<usize> = profile.offsets.iter().map(Vec::len).collect();
    Ok(SkeletonPresentation {
        offsets: profile.offsets,
        quiver: skeleton_quiver(&sizes),
    })
}

/// A bijection of vertices and arrows from a skeleton onto `A` or `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    pub source: Quiver,
    pub target: Quiver,
    pub vertex_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

impl StandardForm {
    /// Defined when at most one axis is active, or exactly two with one
    /// offset each.
    pub fn for_sizes(sizes: &[usize]) -> Option<StandardForm> {
        let (source, moves) = skeleton_parts(sizes);
        let active: Vec<usize> = (0..sizes.len()).filter(|&i| sizes[i] > 0).collect();
        let coords = |name: &str| -> Vec<usize> {
            name.trim_matches(|c| c == '(' || c == ')')
                .split(',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().expect("object name"))
                .collect()
        };
        let embed = |assign: &[(usize, usize)]| -> Vec<usize> {
            let mut p = vec![0; sizes.len()];
            for &(axis, c) in assign {
                p[axis] = c;
            }
            p
        };
        let mut vertex_map = vec![0; source.vertices.len()];
        let mut arrow_map = vec![0; source.arrows.len()];
        let target = match active.as_slice() {
            [] => quiver_a(0),
            [i] => {
                let r = sizes[*i];
                for (v, name) in source.vertices.iter().enumerate() {
                    vertex_map[v] = coords(name)[*i];
                }
                for c in 0..r {
                    arrow_map[moves[&(*i, true, embed(&[(*i, c)]))]] = c;
                    arrow_map[moves[&(*i, false, embed(&[(*i, c + 1)]))]] = r + c;
                }
                quiver_a(r)
            }
            [i1, i2] if sizes[*i1] == 1 && sizes[*i2] == 1 => {
                let square = [(0, 0), (1, 0), (1, 1), (0, 1)];
                for (v, name) in source.vertices.iter().enumerate() {
                    let c = coords(name);
                    vertex_map[v] = square
                        .iter()
                        .position(|&s| s == (c[*i1], c[*i2]))
                        .expect("corner");
                }
                let at = |x: usize, y: usize| embed(&[(*i1, x), (*i2, y)]);
                // a0..a3, then b0..b3
                let table = [
                    (*i1, true, at(0, 0)),
                    (*i2, true, at(1, 0)),
                    (*i1, false, at(1, 1)),
                    (*i2, false, at(0, 1)),
                    (*i1, false, at(1, 0)),
                    (*i2, false, at(1, 1)),
                    (*i1, true, at(0, 1)),
                    (*i2, true, at(0, 0)),
                ];
                for (b_index, key) in table.into_iter().enumerate() {
                    arrow_map[moves[&key]] = b_index;
                }
                quiver_b()
            }
            _ => return None,
        };
        Some(StandardForm {
            source,
            target,
            vertex_map,
            arrow_map,
        })
    }

    /// Whether the arrow bijection carries the skeleton relations exactly
    /// onto the relations of the target quiver.
    pub fn is_presentation_isomorphism(&self) -> bool {
        let arrows_ok = self.source.arrows.iter().enumerate().all(|(a, arr)| {
            let img = &self.target.arrows[self.arrow_map[a]];
            img.source == self.vertex_map[arr.source] && img.target == self.vertex_map[arr.target]
        });
        let bijective = self.arrow_map.iter().collect::<BTreeSet<_>>().len()
            == self.target.arrows.len()
            && self.vertex_map.iter().collect::<BTreeSet<_>>().len() == self.target.vertices.len()
            && self.source.arrows.len() == self.target.arrows.len();
        let mapped: BTreeSet<Relation> = self
            .source
            .relations
            .iter()
            .map(|r| r.map_arrows(|a| self.arrow_map[a]).normalized())
            .collect();
        let native: BTreeSet<Relation> = self
            .target
            .relations
            .iter()
            .map(Relation::normalized)
            .collect();
        arrows_ok && bijective && mapped == native
    }

    pub fn transport(&self, rep: &QuiverRep) -> QuiverRep {
        let mut dims = vec![0; self.target.vertices.len()];
        for (v, &d) in rep.dims.iter().enumerate() {
            dims[self.vertex_map[v]] = d;
        }
        let mut maps = vec![crate::linalg::Matrix::zeros(0, 0); self.target.arrows.len()];
        for (a, m) in rep.maps.iter().enumerate() {
            maps[self.arrow_map[a]] = m.clone();
        }
        QuiverRep {
            quiver: self.target.clone(),
            dims,
            maps,
        }
    }
}

/// Scalar by which `T_ab(u)` sends `ξ^(source)` to `ξ^(target)`, read from
/// the stored generator matrices.
fn operator_entry(
    module: &WindowModule,
    a: u8,
    b: u8,
    u: &Scalar,
    source: &[i64],
    target: &[i64],
) -> Scalar {
    let p = module.level();
    (1..=p)
        .map(|r| module.entry(Generator::new(a, b, r), source, target) * u.pow(p - r))
        .sum()
}

/// The skeleton representation of a universal window module: one
/// one-dimensional space per class, identified through the `ξ` basis, with
/// `f_i = T_21(−β_i − k_i)` and `e_i = T_12(−β_i − k_i)` across the
/// class-breaking edges.
pub fn module_to_quiver_rep(module: &WindowModule) -> Result<QuiverRep, QuiverError> {
    if module.kind != ModuleKind::Universal {
        return Err(QuiverError::UnsupportedModule);
    }
    let pres = skeleton(&module.params)?;
    let window = &module.window;
    for (axis, offs) in pres.offsets.iter().enumerate() {
        for &t in offs {
            if t < window.lo[axis] || t + 1 > window.hi[axis] {
                return Err(QuiverError::SupportTouchesBoundary {
                    axis: axis + 1,
                    edge: t,
                });
            }
        }
    }
    let (quiver, moves) = skeleton_parts(&pres.sizes());
    let points = window.points();
    let mut maps: Vec<_> = quiver.arrows.iter().map(|_| unit(Scalar::zero())).collect();
    for ((axis, up, obj), &arrow) in &moves {
        let offs = &pres.offsets[*axis];
        // the broken edge t ↔ t+1 crossed by this arrow
        let t = if *up {
            offs[obj[*axis]]
        } else {
            offs[obj[*axis] - 1]
        };
        let beta = &module.params.beta[*axis];
        let mut value: Option<Scalar> = None;
        for k in &points {
            let start = if *up { t } else { t + 1 };
            if k[*axis] != start {
                continue;
            }
            let cls = pres.class_of(k);
            if (0..cls.len()).any(|j| j != *axis && cls[j] != obj[j]) {
                continue;
            }
            let mut target = k.clone();
            target[*axis] += if *up { 1 } else { -1 };
            let u = -(beta + Scalar::from(k[*axis]));
            let c = if *up {
                operator_entry(module, 2, 1, &u, k, &target)
            } else {
                operator_entry(module, 1, 2, &u, k, &target)
            };
            match &value {
                None => value = Some(c),
                Some(v) if *v == c => {}
                Some(_) => {
                    return Err(QuiverError::InconsistentIdentification {
                        axis: axis + 1,
                        edge: t,
                    })
                }
            }
        }
        maps[arrow] = unit(value.expect("edge inside the window"));
    }
    let dims = vec![1; quiver.vertices.len()];
    QuiverRep::new(quiver, dims, maps)
}
