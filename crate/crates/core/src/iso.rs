//! Isomorphism and automorphism search for finite posets.
//!
//! Colours are refined jointly on both posets (iterated multisets of the
//! colours of upper and lower covers, starting from up/down-set sizes and
//! cover degrees), then the search individualizes one point of the smallest
//! non-trivial cell at a time and backtracks. Colour ids are assigned from
//! sorted signatures so the same structure gets the same colour on both
//! sides.

use std::collections::BTreeMap;

use crate::error::SearchError;
use crate::poset::{FinitePoset, PointLabel, PosetMap};

pub const DEFAULT_AUT_BUDGET: u64 = 1_000_000;

/// Knobs for the refinement search.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Maximum number of search-tree nodes before giving up with an error.
    pub node_budget: u64,
    /// Seed the colouring with the level of base-space labels. Only sound
    /// when maps are already known to preserve levels.
    pub level_hint: bool,
    /// Branch first on this point of the source poset.
    pub anchor: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { node_budget: DEFAULT_AUT_BUDGET, level_hint: false, anchor: None }
    }
}

type Colors = Vec<u32>;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Seed {
    down: u32,
    up: u32,
    lower: u32,
    upper: u32,
    hint: i64,
}

fn hint(label: &PointLabel) -> i64 {
    match label.as_base() {
        Some(b) => b.level as i64,
        None => i64::MIN,
    }
}

fn seeds(p: &FinitePoset, level_hint: bool) -> Vec<Seed> {
    (0..p.len())
        .map(|x| Seed {
            down: p.down_set(x).count_ones(..) as u32,
            up: p.up_set(x).count_ones(..) as u32,
            lower: p.lower_covers(x).len() as u32,
            upper: p.upper_covers(x).len() as u32,
            hint: if level_hint { hint(p.label(x)) } else { 0 },
        })
        .collect()
}

fn initial_colors(p: &FinitePoset, q: &FinitePoset, level_hint: bool) -> (Colors, Colors) {
    let sp = seeds(p, level_hint);
    let sq = seeds(q, level_hint);
    let mut dict: BTreeMap<Seed, u32> = sp.iter().chain(&sq).map(|s| (*s, 0)).collect();
    for (i, v) in dict.values_mut().enumerate() {
        *v = i as u32;
    }
    (sp.iter().map(|s| dict[s]).collect(), sq.iter().map(|s| dict[s]).collect())
}

fn distinct(c: &Colors) -> usize {
    let mut v = c.clone();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn histogram(c: &Colors) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for &x in c {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

type Signature = (u32, Vec<u32>, Vec<u32>);

fn signature(p: &FinitePoset, c: &Colors, x: usize) -> Signature {
    let mut up: Vec<u32> = p.upper_covers(x).iter().map(|&y| c[y]).collect();
    let mut lo: Vec<u32> = p.lower_covers(x).iter().map(|&y| c[y]).collect();
    up.sort_unstable();
    lo.sort_unstable();
    (c[x], up, lo)
}

/// Refines both colourings to a common stable partition. Returns false when
/// the colour histograms diverge, i.e. no isomorphism respects them.
fn refine(p: &FinitePoset, q: &FinitePoset, cp: &mut Colors, cq: &mut Colors) -> bool {
    loop {
        if histogram(cp) != histogram(cq) {
            return false;
        }
        let before = distinct(cp);
        let sp: Vec<Signature> = (0..p.len()).map(|x| signature(p, cp, x)).collect();
        let sq: Vec<Signature> = (0..q.len()).map(|x| signature(q, cq, x)).collect();
        let mut dict: BTreeMap<&Signature, u32> = sp.iter().chain(&sq).map(|s| (s, 0)).collect();
        for (i, v) in dict.values_mut().enumerate() {
            *v = i as u32;
        }
        let np: Colors = sp.iter().map(|s| dict[s]).collect();
        let nq: Colors = sq.iter().map(|s| dict[s]).collect();
        *cp = np;
        *cq = nq;
        if distinct(cp) == before {
            return histogram(cp) == histogram(cq);
        }
    }
}

struct Search<'a, F: FnMut(PosetMap) -> bool> {
    p: &'a FinitePoset,
    q: &'a FinitePoset,
    budget: u64,
    nodes: u64,
    anchor: Option<usize>,
    on_found: F,
    stopped: bool,
}

impl<F: FnMut(PosetMap) -> bool> Search<'_, F> {
    fn run(&mut self, mut cp: Colors, mut cq: Colors) -> Result<(), SearchError> {
        if self.stopped {
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SearchError::BudgetExceeded { budget: self.budget });
        }
        if !refine(self.p, self.q, &mut cp, &mut cq) {
            return Ok(());
        }
        let hist = histogram(&cp);
        let branch = match self.anchor.take() {
            Some(a) if hist[&cp[a]] > 1 => Some(a),
            _ => hist
                .iter()
                .filter(|(_, &size)| size > 1)
                .min_by_key(|(&color, &size)| (size, color))
                .map(|(&color, _)| cp.iter().position(|&c| c == color).expect("cell is non-empty")),
        };
        let Some(v) = branch else {
            let by_color: BTreeMap<u32, usize> = cq.iter().enumerate().map(|(w, &c)| (c, w)).collect();
            let images: Vec<usize> = cp.iter().map(|c| by_color[c]).collect();
            let map = PosetMap::new(images);
            if map.is_isomorphism(self.p, self.q) && !(self.on_found)(map) {
                self.stopped = true;
            }
            return Ok(());
        };
        let target = cp[v];
        let fresh = cp.iter().chain(&cq).copied().max().unwrap_or(0) + 1;
        let candidates: Vec<usize> = (0..cq.len()).filter(|&w| cq[w] == target).collect();
        for w in candidates {
            let mut np = cp.clone();
            let mut nq = cq.clone();
            np[v] = fresh;
            nq[w] = fresh;
            self.run(np, nq)?;
            if self.stopped {
                break;
            }
        }
        Ok(())
    }
}

fn search(
    p: &FinitePoset,
    q: &FinitePoset,
    opts: &SearchOptions,
    on_found: impl FnMut(PosetMap) -> bool,
) -> Result<(), SearchError> {
    if p.len() != q.len() || p.hasse_edges().len() != q.hasse_edges().len() {
        return Ok(());
    }
    if p.is_empty() {
        let mut f = on_found;
        f(PosetMap::new(Vec::new()));
        return Ok(());
    }
    let (cp, cq) = initial_colors(p, q, opts.level_hint);
    let mut s = Search {
        p,
        q,
        budget: opts.node_budget,
        nodes: 0,
        anchor: opts.anchor.filter(|&a| a < p.len()),
        on_found,
        stopped: false,
    };
    s.run(cp, cq)
}

/// An order isomorphism `P -> Q`, if one exists.
pub fn find_isomorphism(
    p: &FinitePoset,
    q: &FinitePoset,
    opts: &SearchOptions,
) -> Result<Option<PosetMap>, SearchError> {
    let mut found = None;
    search(p, q, opts, |m| {
        found = Some(m);
        false
    })?;
    Ok(found)
}

/// Convenience wrapper with default options (structural colours only).
pub fn are_isomorphic(p: &FinitePoset, q: &FinitePoset) -> Result<Option<PosetMap>, SearchError> {
    find_isomorphism(p, q, &SearchOptions::default())
}

/// Every automorphism of `p`, sorted lexicographically by image tuple (so
/// the identity comes first).
pub fn all_automorphisms(p: &FinitePoset, opts: &SearchOptions) -> Result<Vec<PosetMap>, SearchError> {
    let mut out = Vec::new();
    search(p, p, opts, |m| {
        out.push(m);
        true
    })?;
    out.sort();
    out.dedup();
    Ok(out)
}
