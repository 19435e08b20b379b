//! The group-realizing spaces.
//!
//! For a group `G` of order `n` and generators `h_1..h_r` the base space
//! `X_G` has points `(g, l)` for `g` in `G` and `-1 <= l <= r`, ordered by the
//! column chains `(g, b) < (g, c)` for `b < c` and the cross relations
//! `(g h_b, -1) < (g, c)` for `1 <= b <= c`.
//!
//! Gadgets are attached at every `(g, i)` with `0 <= i <= r - 1`:
//!
//! - `S`: four points with `A > C`, `A > D`, `B > C`, `B > (g,i)`, `(g,i) > D`.
//! - `Tⁿ`: maxima `x_1..x_m` and minima `y_1..y_m`, `m = n + 2`, joined into a
//!   closed fence through `(g, i)`. For `n = 1` the points carry the letters
//!   `E, F, G` (maxima) and `H, I, J` (minima).
//!
//! The pointed variant adds one point above every `(g, -1)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{ConstructionError, PosetError};
use crate::group::{FiniteGroup, GeneratingSet};
use crate::poset::{BasePoint, Extremity, FinitePoset, PointLabel, PosetMap, SKind, TKind};

/// Which gadgets decorate the base space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GadgetMode {
    None,
    SOnly,
    /// `S` plus the `Tⁿ` fence with the given `n >= 1`.
    SAndT(u32),
}

impl fmt::Display for GadgetMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetMode::None => write!(f, "none"),
            GadgetMode::SOnly => write!(f, "sonly"),
            GadgetMode::SAndT(n) => write!(f, "sandt:{}", n),
        }
    }
}

impl FromStr for GadgetMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(GadgetMode::None),
            "sonly" => Ok(GadgetMode::SOnly),
            _ => {
                let n = s
                    .strip_prefix("sandt:")
                    .and_then(|n| n.parse::<u32>().ok())
                    .ok_or_else(|| format!("unknown gadget mode `{}` (expected none, sonly or sandt:N)", s))?;
                if n == 0 {
                    return Err("sandt:N needs N >= 1".to_string());
                }
                Ok(GadgetMode::SAndT(n))
            }
        }
    }
}

/// Everything needed to build one space.
#[derive(Clone, Debug)]
pub struct ConstructionSpec {
    pub group: FiniteGroup,
    pub gens: GeneratingSet,
    pub mode: GadgetMode,
    pub pointed: bool,
}

impl ConstructionSpec {
    pub fn new(group: FiniteGroup, gens: GeneratingSet, mode: GadgetMode, pointed: bool) -> Self {
        ConstructionSpec { group, gens, mode, pointed }
    }

    /// Same group and generators, different decoration.
    pub fn with_mode(&self, mode: GadgetMode, pointed: bool) -> Self {
        ConstructionSpec { mode, pointed, ..self.clone() }
    }

    pub fn n(&self) -> usize {
        self.group.order()
    }

    pub fn r(&self) -> usize {
        self.gens.len()
    }

    /// Points contributed by the gadgets at one `(g, i)`.
    pub fn gadget_size(&self) -> usize {
        match self.mode {
            GadgetMode::None => 0,
            GadgetMode::SOnly => 4,
            GadgetMode::SAndT(k) => 4 + 2 * k as usize + 4,
        }
    }

    pub fn expected_points(&self) -> usize {
        let (n, r) = (self.n(), self.r());
        n * (r + 2) + self.gadget_size() * n * r + usize::from(self.pointed)
    }
}

fn base_index(r: usize, b: BasePoint) -> usize {
    b.element * (r + 2) + (b.level + 1) as usize
}

/// `X_G`: the undecorated base space. The gadget mode of `spec` is ignored.
pub fn build_base(spec: &ConstructionSpec) -> Result<FinitePoset, ConstructionError> {
    let (n, r) = (spec.n(), spec.r());
    let mut labels = Vec::with_capacity(n * (r + 2));
    for g in 0..n {
        for level in -1..=r as i32 {
            labels.push(PointLabel::Base(BasePoint::new(g, level)));
        }
    }
    let mut rels = Vec::new();
    for g in 0..n {
        for level in 0..=r as i32 {
            rels.push((base_index(r, BasePoint::new(g, level - 1)), base_index(r, BasePoint::new(g, level))));
        }
        for beta in 1..=r {
            let gh = spec.group.mul(g, spec.gens.h(beta));
            rels.push((base_index(r, BasePoint::new(gh, -1)), base_index(r, BasePoint::new(g, beta as i32))));
        }
    }
    Ok(FinitePoset::from_relations(labels, rels)?)
}

/// Fence order of the maxima and minima of `Tⁿ`: walking from `(g, i)` the
/// path visits `x_{sigma_1} > y_{tau_1} < x_{sigma_2} > ... > y_{tau_m}`.
pub fn fence_order(m: u32) -> (Vec<u32>, Vec<u32>) {
    let odd = (1..=m).filter(|i| i % 2 == 1);
    let even = (1..=m).filter(|i| i % 2 == 0);
    let sigma = odd.clone().chain(even.clone().rev()).collect();
    let tau = even.chain(odd.rev()).collect();
    (sigma, tau)
}

fn t_label(n: u32, kind: Extremity, index: u32, base: BasePoint) -> PointLabel {
    if n == 1 {
        let kind = TKind::from_fence_position(kind, index).expect("index is 1..=3 for n = 1");
        PointLabel::GadgetT { kind, base }
    } else {
        PointLabel::GadgetTn { kind, index, base }
    }
}

/// Adds the gadgets selected by `spec.mode` to a base space built from the
/// same spec. Fails for [`GadgetMode::None`].
pub fn attach_gadgets(base: &FinitePoset, spec: &ConstructionSpec) -> Result<FinitePoset, ConstructionError> {
    let t_param = match spec.mode {
        GadgetMode::None => return Err(ConstructionError::NoGadgets),
        GadgetMode::SAndT(0) => return Err(ConstructionError::ZeroGadgetParameter),
        GadgetMode::SOnly => None,
        GadgetMode::SAndT(k) => Some(k),
    };
    let (n, r) = (spec.n(), spec.r());
    let expected_base = base.len();
    if expected_base != n * (r + 2) {
        return Err(ConstructionError::Mismatch(format!(
            "base has {} points, expected {}",
            expected_base,
            n * (r + 2)
        )));
    }
    let mut labels: Vec<PointLabel> = base.labels().to_vec();
    let mut rels: Vec<(usize, usize)> = base.hasse_edges().to_vec();
    let push = |labels: &mut Vec<PointLabel>, l: PointLabel| {
        labels.push(l);
        labels.len() - 1
    };
    for g in 0..n {
        for i in 0..r as i32 {
            let bp = BasePoint::new(g, i);
            let x = base
                .index_of(&PointLabel::Base(bp))
                .ok_or_else(|| ConstructionError::Mismatch(format!("missing {}", PointLabel::Base(bp))))?;
            let s: Vec<usize> =
                SKind::ALL.iter().map(|&kind| push(&mut labels, PointLabel::GadgetS { kind, base: bp })).collect();
            let (a, b, c, d) = (s[0], s[1], s[2], s[3]);
            rels.extend([(c, a), (d, a), (c, b), (x, b), (d, x)]);
            if let Some(k) = t_param {
                let m = k + 2;
                let maxima: Vec<usize> =
                    (1..=m).map(|j| push(&mut labels, t_label(k, Extremity::Max, j, bp))).collect();
                let minima: Vec<usize> =
                    (1..=m).map(|j| push(&mut labels, t_label(k, Extremity::Min, j, bp))).collect();
                let (sigma, tau) = fence_order(m);
                let xs = |j: u32| maxima[j as usize - 1];
                let ys = |j: u32| minima[j as usize - 1];
                rels.push((x, xs(sigma[0])));
                for idx in 0..m as usize {
                    rels.push((ys(tau[idx]), xs(sigma[idx])));
                    if idx + 1 < m as usize {
                        rels.push((ys(tau[idx]), xs(sigma[idx + 1])));
                    }
                }
                rels.push((ys(tau[m as usize - 1]), x));
            }
        }
    }
    Ok(FinitePoset::from_relations(labels, rels)?)
}

/// Adds a maximal basepoint above every level `-1` point.
pub fn add_basepoint(space: &FinitePoset) -> Result<FinitePoset, ConstructionError> {
    if space.index_of(&PointLabel::Star).is_some() {
        return Err(ConstructionError::StarPresent);
    }
    let elements: std::collections::BTreeSet<usize> =
        space.labels().iter().filter_map(|l| l.as_base()).map(|b| b.element).collect();
    let mut below = Vec::with_capacity(elements.len());
    for g in elements {
        let idx =
            space.index_of(&PointLabel::Base(BasePoint::new(g, -1))).ok_or(ConstructionError::MissingBottom(g))?;
        below.push(idx);
    }
    Ok(space.with_point(PointLabel::Star, &below, &[])?)
}

/// The full space described by `spec`.
pub fn build_space(spec: &ConstructionSpec) -> Result<FinitePoset, ConstructionError> {
    let base = build_base(spec)?;
    let decorated = match spec.mode {
        GadgetMode::None => base,
        _ => attach_gadgets(&base, spec)?,
    };
    if spec.pointed {
        add_basepoint(&decorated)
    } else {
        Ok(decorated)
    }
}

/// The label a point of a `Tⁿ`-decorated space is sent to by the collapse
/// onto the `T`-decorated space.
pub fn collapse_label(label: &PointLabel) -> PointLabel {
    match label {
        PointLabel::GadgetTn { kind, index, base } => {
            let kind = TKind::from_fence_position(*kind, (*index).min(3)).expect("index clamps into 1..=3");
            PointLabel::GadgetT { kind, base: *base }
        }
        other => other.clone(),
    }
}

/// The collapse map from a `Tⁿ`-decorated space onto the `T`-decorated one:
/// identity off the fences, `x_i -> x_min(i,3)` and `y_i -> y_min(i,3)`.
pub fn collapse_map(source: &FinitePoset, target: &FinitePoset) -> Result<PosetMap, ConstructionError> {
    let mut images = Vec::with_capacity(source.len());
    for l in source.labels() {
        let t = collapse_label(l);
        let idx = target
            .index_of(&t)
            .ok_or_else(|| ConstructionError::Mismatch(format!("collapse image {} not in target", t)))?;
        images.push(idx);
    }
    Ok(PosetMap::new(images))
}

/// Builds the `SAndT(n)` and `SAndT(1)` spaces of `spec` and the collapse
/// between them.
pub fn collapse_between(
    n: u32,
    spec: &ConstructionSpec,
) -> Result<(FinitePoset, FinitePoset, PosetMap), ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::ZeroGadgetParameter);
    }
    let source = build_space(&spec.with_mode(GadgetMode::SAndT(n), spec.pointed))?;
    let target = build_space(&spec.with_mode(GadgetMode::SAndT(1), spec.pointed))?;
    let f = collapse_map(&source, &target)?;
    Ok((source, target, f))
}

/// Left translation by `g`: `(s, l) -> (g s, l)`, carried along on gadget
/// labels, fixing the basepoint.
pub fn translation(space: &FinitePoset, group: &FiniteGroup, g: usize) -> Result<PosetMap, ConstructionError> {
    let mut images = Vec::with_capacity(space.len());
    for l in space.labels() {
        let moved = match l.as_base().or_else(|| l.gadget_base()) {
            Some(b) => l.with_base(BasePoint::new(group.mul(g, b.element), b.level)),
            None => l.clone(),
        };
        let idx = space.index_of(&moved).ok_or_else(|| PosetError::UnknownPoint(moved.to_string()))?;
        images.push(idx);
    }
    Ok(PosetMap::new(images))
}

/// Indices of the base points of a space.
pub fn base_points(space: &FinitePoset) -> Vec<usize> {
    (0..space.len()).filter(|&x| space.label(x).as_base().is_some()).collect()
}
