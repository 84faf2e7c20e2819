//! Integral offsets of `γ` relative to `β`, supports of the simple
//! quotients `L(ℓ)`, and the representation type of a block.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::module::{ModuleError, ModuleParams, Point, Window};
use crate::poly::Scalar;

/// `{γ_j − β_i : γ_j − β_i ∈ Z}`, i.e. the `k` with `γ(−β_i − k) = 0`.
pub fn integer_offsets(beta_i: &Scalar, gamma: &[Scalar]) -> BTreeSet<i64> {
    offset_multiplicities(beta_i, gamma).into_keys().collect()
}

fn offset_multiplicities(beta_i: &Scalar, gamma: &[Scalar]) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for g in gamma {
        let d = g - beta_i;
        if d.is_integer() {
            let k = d.to_i64().expect("offset fits in i64");
            *out.entry(k).or_insert(0) += 1;
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RepType {
    Semisimple,
    Finite,
    Tame,
    Wild,
}

impl fmt::Display for RepType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockProfile {
    /// `I_i` per axis, sorted.
    #[serde(rename = "I")]
    pub offsets: Vec<Vec<i64>>,
    /// How many roots of `γ` produce each offset.
    pub multiplicities: Vec<BTreeMap<i64, usize>>,
    /// Axes with a nonempty offset set, 1-based.
    #[serde(rename = "X")]
    pub axes: Vec<usize>,
    #[serde(rename = "type")]
    pub rep_type: RepType,
}

pub fn representation_type(params: &ModuleParams) -> Result<BlockProfile, ModuleError> {
    params.require_generic()?;
    let multiplicities: Vec<BTreeMap<i64, usize>> = params
        .beta
        .iter()
        .map(|b| offset_multiplicities(b, &params.gamma))
        .collect();
    let offsets: Vec<Vec<i64>> = multiplicities
        .iter()
        .map(|m| m.keys().copied().collect())
        .collect();
    let axes: Vec<usize> = (0..offsets.len())
        .filter(|&i| !offsets[i].is_empty())
        .map(|i| i + 1)
        .collect();
    let rep_type = match axes.len() {
        0 => RepType::Semisimple,
        1 => RepType::Finite,
        2 if axes.iter().all(|&i| offsets[i - 1].len() == 1) => RepType::Tame,
        _ => RepType::Wild,
    };
    Ok(BlockProfile {
        offsets,
        multiplicities,
        axes,
        rep_type,
    })
}

/// The parallelepiped `∏ [n_i, m_i]` of lattice offsets, `None` marking an
/// infinite side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportBox {
    pub lo: Vec<Option<i64>>,
    pub hi: Vec<Option<i64>>,
}

impl SupportBox {
    pub fn contains(&self, k: &[i64]) -> bool {
        k.iter()
            .enumerate()
            .all(|(i, &x)| self.lo[i].is_none_or(|l| l <= x) && self.hi[i].is_none_or(|h| x <= h))
    }

    pub fn is_finite(&self) -> bool {
        self.lo.iter().chain(&self.hi).all(Option::is_some)
    }

    /// Intersection with a window, as a point set.
    pub fn clip(&self, window: &Window) -> BTreeSet<Point> {
        window
            .points()
            .into_iter()
            .filter(|k| self.contains(k))
            .collect()
    }
}

impl Serialize for SupportBox {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(Serialize)]
        #[serde(untagged)]
        enum Bound {
            Int(i64),
            Inf(&'static str),
        }
        let side = |v: &[Option<i64>], inf: &'static str| -> Vec<Bound> {
            v.iter()
                .map(|b| b.map_or(Bound::Inf(inf), Bound::Int))
                .collect()
        };
        let mut st = s.serialize_struct("SupportBox", 2)?;
        st.serialize_field("lo", &side(&self.lo, "-inf"))?;
        st.serialize_field("hi", &side(&self.hi, "+inf"))?;
        st.end()
    }
}

/// Per axis: `m_i` is the least nonnegative element of `I_i`, and `n_i = t + 1`
/// for the greatest negative `t ∈ I_i`.
pub fn support_box(params: &ModuleParams) -> Result<SupportBox, ModuleError> {
    params.require_generic()?;
    let mut lo = Vec::with_capacity(params.level());
    let mut hi = Vec::with_capacity(params.level());
    for b in &params.beta {
        let offs = integer_offsets(b, &params.gamma);
        hi.push(offs.range(0..).next().copied());
        lo.push(offs.range(..0).next_back().map(|t| t + 1));
    }
    Ok(SupportBox { lo, hi })
}

/// Whether the edge `k ↔ k + δ_axis` survives in `L(ℓ)`: `γ(−β_i − k_i) ≠ 0`.
pub fn edge_unbroken(params: &ModuleParams, axis: usize, k_axis: i64) -> bool {
    let u = -(&params.beta[axis] + Scalar::from(k_axis));
    !params.gamma_at(&u).is_zero()
}

/// Connected component of `0` in the window under unbroken edges.
pub fn brute_force_support(params: &ModuleParams, window: &Window) -> BTreeSet<Point> {
    let p = params.level();
    let origin = vec![0i64; p];
    let mut seen = BTreeSet::new();
    if !window.contains(&origin) {
        return seen;
    }
    let mut queue = VecDeque::from([origin.clone()]);
    seen.insert(origin);
    while let Some(k) = queue.pop_front() {
        for axis in 0..p {
            let mut up = k.clone();
            up[axis] += 1;
            if window.contains(&up) && !seen.contains(&up) && edge_unbroken(params, axis, k[axis]) {
                seen.insert(up.clone());
                queue.push_back(up);
            }
            let mut down = k.clone();
            down[axis] -= 1;
            if window.contains(&down)
                && !seen.contains(&down)
                && edge_unbroken(params, axis, down[axis])
            {
                seen.insert(down.clone());
                queue.push_back(down);
            }
        }
    }
    seen
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    Finite(u128),
    Infinite,
}

impl Serialize for Dimension {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Dimension::Finite(n) => s.serialize_u128(*n),
            Dimension::Infinite => s.serialize_str("inf"),
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::Infinite => write!(f, "inf"),
        }
    }
}

pub fn dim_of_box(b: &SupportBox) -> Dimension {
    let mut total: u128 = 1;
    for (lo, hi) in b.lo.iter().zip(&b.hi) {
        match (lo, hi) {
            (Some(l), Some(h)) => total *= (h - l + 1) as u128,
            _ => return Dimension::Infinite,
        }
    }
    Dimension::Finite(total)
}

/// Dimension of `L(ℓ)`: all weight spaces are one-dimensional, so this is the
/// number of points of the support box.
pub fn dim_l(params: &ModuleParams) -> Result<Dimension, ModuleError> {
    Ok(dim_of_box(&support_box(params)?))
}
