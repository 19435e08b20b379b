//! Cores, automorphism groups, self-map enumeration and fence homotopy.

use std::collections::HashMap;

use serde_json::json;

use crate::error::{GroupError, SearchError};
use crate::group::FiniteGroup;
use crate::iso::{self, SearchOptions, DEFAULT_AUT_BUDGET};
use crate::poset::{BasePoint, BeatKind, FinitePoset, PointLabel, PosetMap};
use crate::report::{CheckRecord, VerificationReport};

pub const DEFAULT_MAP_BUDGET: u64 = 10_000_000;
pub const DEFAULT_MAX_MAP_POINTS: usize = 8;

/// Which beat point to remove when several are available.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RemovalOrder {
    #[default]
    LowestIndex,
    HighestIndex,
}

/// One step of a core reduction, in indices of the original poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Removal {
    pub point: usize,
    pub kind: BeatKind,
    pub dominated_by: usize,
}

#[derive(Clone, Debug)]
pub struct CoreReduction {
    pub core: FinitePoset,
    pub trace: Vec<Removal>,
    /// Original indices of the surviving points, ascending; point `i` of the
    /// core is `kept[i]`.
    pub kept: Vec<usize>,
    /// Retraction of the original poset onto the kept points, as a map into
    /// the core.
    pub retraction: PosetMap,
}

impl CoreReduction {
    /// The inclusion of the core back into the original poset.
    pub fn inclusion(&self) -> PosetMap {
        PosetMap::new(self.kept.clone())
    }
}

/// Strips beat points (lowest index first) until none remain.
pub fn core(p: &FinitePoset) -> CoreReduction {
    core_with(p, RemovalOrder::LowestIndex)
}

pub fn core_with(p: &FinitePoset, order: RemovalOrder) -> CoreReduction {
    let mut current = p.clone();
    let mut kept: Vec<usize> = (0..p.len()).collect();
    let mut target: Vec<usize> = (0..p.len()).collect();
    let mut trace = Vec::new();
    loop {
        let beats = current.beat_points();
        let pick = match order {
            RemovalOrder::LowestIndex => beats.first(),
            RemovalOrder::HighestIndex => beats.iter().max_by_key(|b| b.point),
        };
        let Some(b) = pick.copied() else { break };
        let (x, y) = (kept[b.point], kept[b.dominated_by]);
        for t in target.iter_mut() {
            if *t == x {
                *t = y;
            }
        }
        trace.push(Removal { point: x, kind: b.kind, dominated_by: y });
        current = current.without_point(b.point);
        kept.remove(b.point);
    }
    let position: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let retraction = PosetMap::new(target.iter().map(|t| position[t]).collect());
    CoreReduction { core: current, trace, kept, retraction }
}

/// Search options for automorphism groups.
#[derive(Clone, Debug)]
pub struct AutOptions {
    pub node_budget: u64,
    /// Colour base points by level before refining. Only use once level
    /// preservation is established independently.
    pub level_hint: bool,
    /// On a pure base space, branch first on the bottom point of the identity
    /// column: an automorphism is then fixed by one choice.
    pub anchor_shortcut: bool,
}

impl Default for AutOptions {
    fn default() -> Self {
        AutOptions { node_budget: DEFAULT_AUT_BUDGET, level_hint: false, anchor_shortcut: true }
    }
}

/// All automorphisms of a space with their composition table.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    pub space: FinitePoset,
    /// Sorted by image tuple; element 0 is the identity.
    pub elements: Vec<PosetMap>,
    /// `table[i][j]` is the index of `elements[i] ∘ elements[j]`.
    pub table: Vec<Vec<usize>>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, f: &PosetMap) -> Option<usize> {
        self.elements.binary_search(f).ok()
    }

    pub fn to_finite_group(&self) -> Result<FiniteGroup, GroupError> {
        let labels = (0..self.order()).map(|i| format!("f{}", i)).collect();
        FiniteGroup::new(self.table.clone(), 0, labels)
    }
}

pub fn automorphism_group(p: &FinitePoset, opts: &AutOptions) -> Result<AutomorphismGroup, SearchError> {
    let pure_base = !p.is_empty() && p.labels().iter().all(|l| l.as_base().is_some());
    let anchor =
        if opts.anchor_shortcut && pure_base { p.index_of(&PointLabel::Base(BasePoint::new(0, -1))) } else { None };
    let search = SearchOptions { node_budget: opts.node_budget, level_hint: opts.level_hint, anchor };
    let elements = iso::all_automorphisms(p, &search)?;
    let index: HashMap<&PosetMap, usize> = elements.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut table = Vec::with_capacity(elements.len());
    for f in &elements {
        let mut row = Vec::with_capacity(elements.len());
        for g in &elements {
            let fg = f.compose(g);
            let k = *index
                .get(&fg)
                .ok_or_else(|| SearchError::Inconsistent("automorphisms not closed under composition".into()))?;
            row.push(k);
        }
        table.push(row);
    }
    Ok(AutomorphismGroup { space: p.clone(), elements, table })
}

fn base_restriction(f: &PosetMap, full: &FinitePoset, base: &FinitePoset) -> Result<PosetMap, String> {
    let mut images = vec![usize::MAX; base.len()];
    for (bx, l) in base.labels().iter().enumerate() {
        let fx = full.index_of(l).ok_or_else(|| format!("base point {} missing from full space", l))?;
        let image = full.label(f.apply(fx));
        images[bx] = base.index_of(image).ok_or_else(|| format!("{} is sent off the base to {}", l, image))?;
    }
    Ok(PosetMap::new(images))
}

/// Transports every label along the base map `h`.
fn natural_extension(h: &PosetMap, base: &FinitePoset, full: &FinitePoset) -> Result<PosetMap, String> {
    let mut images = Vec::with_capacity(full.len());
    for l in full.labels() {
        let anchor = l.as_base().or_else(|| l.gadget_base());
        let moved = match anchor {
            Some(b) => {
                let bx = base.index_of(&PointLabel::Base(b)).ok_or_else(|| format!("{} not in base", l))?;
                let nb = base.label(h.apply(bx)).as_base().ok_or("base image is not a base point")?;
                l.with_base(nb)
            }
            None => l.clone(),
        };
        images.push(full.index_of(&moved).ok_or_else(|| format!("extension image {} missing", moved))?);
    }
    Ok(PosetMap::new(images))
}

/// Checks that restricting automorphisms of the decorated space to its base
/// is a bijection onto the automorphisms of the base, inverted by the
/// natural extension.
pub fn extension_isomorphism_check(base_aut: &AutomorphismGroup, full_aut: &AutomorphismGroup) -> VerificationReport {
    let base = &base_aut.space;
    let full = &full_aut.space;
    let mut report = VerificationReport::new();

    let mut restrictions = Vec::new();
    let mut off_base = None;
    for (i, f) in full_aut.elements.iter().enumerate() {
        match base_restriction(f, full, base) {
            Ok(r) => restrictions.push(r),
            Err(e) => {
                off_base = Some(json!({"automorphism": i, "reason": e}));
                break;
            }
        }
    }
    report.run(|| match &off_base {
        None => CheckRecord::pass(
            "extension.preserves_base",
            format!("{} automorphisms map the base onto itself", full_aut.order()),
        ),
        Some(w) => CheckRecord::fail("extension.preserves_base", "an automorphism leaves the base", w.clone()),
    });

    report.run(|| {
        if off_base.is_some() {
            return CheckRecord::fail(
                "extension.restriction_bijective",
                "restriction undefined",
                off_base.clone().unwrap(),
            );
        }
        let mut hit = vec![false; base_aut.order()];
        for (i, r) in restrictions.iter().enumerate() {
            match base_aut.index_of(r) {
                None => {
                    return CheckRecord::fail(
                        "extension.restriction_bijective",
                        "restriction is not an automorphism of the base",
                        json!({"automorphism": i}),
                    )
                }
                Some(k) if hit[k] => {
                    return CheckRecord::fail(
                        "extension.restriction_bijective",
                        "two automorphisms restrict to the same map",
                        json!({"automorphism": i, "collides_with_base": k}),
                    )
                }
                Some(k) => hit[k] = true,
            }
        }
        if let Some(missing) = hit.iter().position(|h| !h) {
            return CheckRecord::fail(
                "extension.restriction_bijective",
                format!("{} of {} base automorphisms are restrictions", restrictions.len(), base_aut.order()),
                json!({"base_automorphism_not_hit": missing}),
            );
        }
        CheckRecord::pass(
            "extension.restriction_bijective",
            format!("restriction is a bijection of two groups of order {}", base_aut.order()),
        )
    });

    report.run(|| {
        for (k, h) in base_aut.elements.iter().enumerate() {
            let ext = match natural_extension(h, base, full) {
                Ok(e) => e,
                Err(e) => {
                    return CheckRecord::fail(
                        "extension.natural_inverse",
                        "extension undefined",
                        json!({"base_automorphism": k, "reason": e}),
                    )
                }
            };
            if full_aut.index_of(&ext).is_none() {
                return CheckRecord::fail(
                    "extension.natural_inverse",
                    "natural extension is not an automorphism of the decorated space",
                    json!({"base_automorphism": k}),
                );
            }
            if base_restriction(&ext, full, base).as_ref() != Ok(h) {
                return CheckRecord::fail(
                    "extension.natural_inverse",
                    "extension does not restrict back",
                    json!({"base_automorphism": k}),
                );
            }
        }
        CheckRecord::pass("extension.natural_inverse", "extension followed by restriction is the identity")
    });
    report
}

/// Limits for exhaustive map enumeration.
#[derive(Clone, Copy, Debug)]
pub struct MapLimits {
    pub max_points: usize,
    pub node_budget: u64,
}

impl Default for MapLimits {
    fn default() -> Self {
        MapLimits { max_points: DEFAULT_MAX_MAP_POINTS, node_budget: DEFAULT_MAP_BUDGET }
    }
}

/// All order-preserving maps `src -> tgt`, sorted by image tuple.
pub fn enumerate_order_preserving(
    src: &FinitePoset,
    tgt: &FinitePoset,
    node_budget: u64,
) -> Result<Vec<PosetMap>, SearchError> {
    let order = src.linear_extension();
    let mut images = vec![usize::MAX; src.len()];
    let mut out = Vec::new();
    let mut nodes = 0u64;
    fn go(
        depth: usize,
        order: &[usize],
        src: &FinitePoset,
        tgt: &FinitePoset,
        images: &mut Vec<usize>,
        out: &mut Vec<PosetMap>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<(), SearchError> {
        *nodes += 1;
        if *nodes > budget {
            return Err(SearchError::BudgetExceeded { budget });
        }
        if depth == order.len() {
            out.push(PosetMap::new(images.clone()));
            return Ok(());
        }
        let x = order[depth];
        for y in 0..tgt.len() {
            if src.lower_covers(x).iter().all(|&l| tgt.leq(images[l], y)) {
                images[x] = y;
                go(depth + 1, order, src, tgt, images, out, nodes, budget)?;
            }
        }
        images[x] = usize::MAX;
        Ok(())
    }
    go(0, &order, src, tgt, &mut images, &mut out, &mut nodes, node_budget)?;
    out.sort();
    Ok(out)
}

/// All continuous self-maps of a small space.
pub fn enumerate_continuous_selfmaps(p: &FinitePoset, limits: MapLimits) -> Result<Vec<PosetMap>, SearchError> {
    if p.len() > limits.max_points {
        return Err(SearchError::SizeLimitExceeded { points: p.len(), limit: limits.max_points });
    }
    enumerate_order_preserving(p, p, limits.node_budget)
}

#[derive(Clone, Debug)]
pub struct HomotopyClassification {
    pub maps: Vec<PosetMap>,
    /// Map indices per class, each ascending; classes ordered by first member.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub identity_class: usize,
    /// Classes made of homotopy equivalences, ascending.
    pub equivalence_classes: Vec<usize>,
    /// The group of equivalence classes under composition; element `i` is
    /// `equivalence_classes[i]`.
    pub group: FiniteGroup,
}

/// Fence-homotopy classes of a complete list of self-maps of `p`.
pub fn homotopy_classes(p: &FinitePoset, maps: &[PosetMap]) -> Result<HomotopyClassification, SearchError> {
    let n = p.len();
    for (i, f) in maps.iter().enumerate() {
        if f.len() != n || f.images().iter().any(|&y| y >= n) {
            return Err(SearchError::Inconsistent(format!("map {} is not a self-map of the space", i)));
        }
    }
    let m = maps.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..m {
        for j in i + 1..m {
            if maps[i].pointwise_leq(&maps[j], p) || maps[j].pointwise_leq(&maps[i], p) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut root_class: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![0; m];
    for i in 0..m {
        let r = find(&mut parent, i);
        let c = *root_class.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(i);
        class_of[i] = c;
    }
    let index: HashMap<&PosetMap, usize> = maps.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let lookup = |f: &PosetMap| {
        index
            .get(f)
            .copied()
            .ok_or_else(|| SearchError::Inconsistent("composition of listed maps is not listed".into()))
    };
    let identity_class = class_of[lookup(&PosetMap::identity(n))?];
    let reps: Vec<&PosetMap> = classes.iter().map(|c| &maps[c[0]]).collect();
    let k = classes.len();
    let mut compose = vec![vec![0usize; k]; k];
    for a in 0..k {
        for b in 0..k {
            compose[a][b] = class_of[lookup(&reps[a].compose(reps[b]))?];
        }
    }
    let equivalence_classes: Vec<usize> = (0..k)
        .filter(|&a| (0..k).any(|b| compose[a][b] == identity_class && compose[b][a] == identity_class))
        .collect();
    let pos: HashMap<usize, usize> = equivalence_classes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let table: Vec<Vec<usize>> = equivalence_classes
        .iter()
        .map(|&a| equivalence_classes.iter().map(|&b| pos[&compose[a][b]]).collect())
        .collect();
    let labels = equivalence_classes.iter().map(|c| format!("[{}]", c)).collect();
    let group = FiniteGroup::new(table, pos[&identity_class], labels)
        .map_err(|e| SearchError::Inconsistent(format!("equivalence classes do not form a group: {}", e)))?;
    Ok(HomotopyClassification { maps: maps.to_vec(), classes, class_of, identity_class, equivalence_classes, group })
}

/// Retractions `r` (idempotent self-maps) with `r(x)` comparable to `x` for
/// every `x`, sorted by image tuple.
pub fn comparative_retractions(p: &FinitePoset, limits: MapLimits) -> Result<Vec<PosetMap>, SearchError> {
    if p.len() > limits.max_points {
        return Err(SearchError::SizeLimitExceeded { points: p.len(), limit: limits.max_points });
    }
    let order = p.linear_extension();
    let domains: Vec<Vec<usize>> =
        (0..p.len()).map(|x| (0..p.len()).filter(|&y| p.comparable(x, y)).collect()).collect();
    let mut r = vec![usize::MAX; p.len()];
    let mut out = Vec::new();
    let mut nodes = 0u64;
    #[allow(clippy::too_many_arguments)]
    fn go(
        depth: usize,
        order: &[usize],
        p: &FinitePoset,
        domains: &[Vec<usize>],
        r: &mut Vec<usize>,
        out: &mut Vec<PosetMap>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<(), SearchError> {
        *nodes += 1;
        if *nodes > budget {
            return Err(SearchError::BudgetExceeded { budget });
        }
        if depth == order.len() {
            let f = PosetMap::new(r.clone());
            if f.compose(&f) == f && f.is_order_preserving(p, p) {
                out.push(f);
            }
            return Ok(());
        }
        let x = order[depth];
        // x is already the image of an earlier point, so it must be fixed.
        let must_fix = order[..depth].iter().any(|&z| r[z] == x);
        for &y in &domains[x] {
            if must_fix && y != x {
                continue;
            }
            if y != x && r[y] != usize::MAX && r[y] != y {
                continue;
            }
            if !p.lower_covers(x).iter().all(|&l| p.leq(r[l], y)) {
                continue;
            }
            r[x] = y;
            go(depth + 1, order, p, domains, r, out, nodes, budget)?;
        }
        r[x] = usize::MAX;
        Ok(())
    }
    go(0, &order, p, &domains, &mut r, &mut out, &mut nodes, limits.node_budget)?;
    out.sort();
    Ok(out)
}

/// Five points `a, b < c, d, e` with `c < e`: its core is the four-point
/// circle.
pub fn example_space_a() -> FinitePoset {
    FinitePoset::from_named(
        &["a", "b", "c", "d", "e"],
        &[("a", "c"), ("a", "d"), ("a", "e"), ("b", "c"), ("b", "d"), ("b", "e"), ("c", "e")],
    )
    .expect("fixture is a poset")
}

/// The four-point circle `a, b < c, d`.
pub fn four_point_circle() -> FinitePoset {
    FinitePoset::from_named(&["a", "b", "c", "d"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
        .expect("fixture is a poset")
}
