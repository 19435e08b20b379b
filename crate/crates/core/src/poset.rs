//! Finite posets, read as finite T0 (Alexandroff) spaces.
//!
//! The order convention is the one where the minimal open set of a point is
//! its down-set: `U_x = { y : y <= x }`. Continuous maps are exactly the
//! order-preserving ones.
//!
//! A [`FinitePoset`] stores its covering relation (the Hasse diagram) as the
//! ground truth and materializes the reflexive-transitive closure as one
//! down-set and one up-set bitset per point, so `leq` is a bit test.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;

use crate::error::PosetError;

/// A point `(g, level)` of the base space `X_G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasePoint {
    pub element: usize,
    pub level: i32,
}

impl BasePoint {
    pub fn new(element: usize, level: i32) -> Self {
        BasePoint { element, level }
    }
}

/// Points of the four-point gadget attached below/above a base point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SKind {
    A,
    B,
    C,
    D,
}

/// Points of the six-point fence gadget (the `n = 1` member of the `Tⁿ` family).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TKind {
    E,
    F,
    G,
    H,
    I,
    J,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Extremity {
    Max,
    Min,
}

impl SKind {
    pub const ALL: [SKind; 4] = [SKind::A, SKind::B, SKind::C, SKind::D];

    fn letter(self) -> char {
        match self {
            SKind::A => 'A',
            SKind::B => 'B',
            SKind::C => 'C',
            SKind::D => 'D',
        }
    }

    fn from_letter(s: &str) -> Option<Self> {
        Some(match s {
            "A" => SKind::A,
            "B" => SKind::B,
            "C" => SKind::C,
            "D" => SKind::D,
            _ => return None,
        })
    }
}

impl TKind {
    pub const ALL: [TKind; 6] = [TKind::E, TKind::F, TKind::G, TKind::H, TKind::I, TKind::J];

    fn letter(self) -> char {
        match self {
            TKind::E => 'E',
            TKind::F => 'F',
            TKind::G => 'G',
            TKind::H => 'H',
            TKind::I => 'I',
            TKind::J => 'J',
        }
    }

    fn from_letter(s: &str) -> Option<Self> {
        Some(match s {
            "E" => TKind::E,
            "F" => TKind::F,
            "G" => TKind::G,
            "H" => TKind::H,
            "I" => TKind::I,
            "J" => TKind::J,
            _ => return None,
        })
    }

    /// The fence point this letter names: `E, F, G` are the maxima
    /// `x_1, x_2, x_3` and `H, I, J` the minima `y_1, y_2, y_3`.
    pub fn fence_position(self) -> (Extremity, u32) {
        match self {
            TKind::E => (Extremity::Max, 1),
            TKind::F => (Extremity::Max, 2),
            TKind::G => (Extremity::Max, 3),
            TKind::H => (Extremity::Min, 1),
            TKind::I => (Extremity::Min, 2),
            TKind::J => (Extremity::Min, 3),
        }
    }

    pub fn from_fence_position(kind: Extremity, index: u32) -> Option<Self> {
        Some(match (kind, index) {
            (Extremity::Max, 1) => TKind::E,
            (Extremity::Max, 2) => TKind::F,
            (Extremity::Max, 3) => TKind::G,
            (Extremity::Min, 1) => TKind::H,
            (Extremity::Min, 2) => TKind::I,
            (Extremity::Min, 3) => TKind::J,
            _ => return None,
        })
    }
}

/// Structured name of a point. The canonical string form (see [`fmt::Display`])
/// is the stable id used by the persisted documents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointLabel {
    Base(BasePoint),
    GadgetS {
        kind: SKind,
        base: BasePoint,
    },
    GadgetT {
        kind: TKind,
        base: BasePoint,
    },
    GadgetTn {
        kind: Extremity,
        index: u32,
        base: BasePoint,
    },
    Star,
    /// Free-form label for hand-built fixtures.
    Named(String),
}

impl PointLabel {
    pub fn named(name: impl Into<String>) -> Self {
        PointLabel::Named(name.into())
    }

    pub fn as_base(&self) -> Option<BasePoint> {
        match self {
            PointLabel::Base(b) => Some(*b),
            _ => None,
        }
    }

    /// The base point a gadget label hangs from.
    pub fn gadget_base(&self) -> Option<BasePoint> {
        match self {
            PointLabel::GadgetS { base, .. } | PointLabel::GadgetT { base, .. } | PointLabel::GadgetTn { base, .. } => {
                Some(*base)
            }
            _ => None,
        }
    }

    /// Same label with its base point (own or referenced) replaced.
    pub fn with_base(&self, new_base: BasePoint) -> PointLabel {
        match self {
            PointLabel::Base(_) => PointLabel::Base(new_base),
            PointLabel::GadgetS { kind, .. } => PointLabel::GadgetS { kind: *kind, base: new_base },
            PointLabel::GadgetT { kind, .. } => PointLabel::GadgetT { kind: *kind, base: new_base },
            PointLabel::GadgetTn { kind, index, .. } => {
                PointLabel::GadgetTn { kind: *kind, index: *index, base: new_base }
            }
            other => other.clone(),
        }
    }
}

fn fmt_base(b: &BasePoint) -> String {
    format!("base:g{}:lv{}", b.element, b.level)
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointLabel::Base(b) => write!(f, "{}", fmt_base(b)),
            PointLabel::GadgetS { kind, base } => write!(f, "S:{}:{}", kind.letter(), fmt_base(base)),
            PointLabel::GadgetT { kind, base } => write!(f, "T:{}:{}", kind.letter(), fmt_base(base)),
            PointLabel::GadgetTn { kind, index, base } => {
                let k = match kind {
                    Extremity::Max => "max",
                    Extremity::Min => "min",
                };
                write!(f, "Tn:{}:{}:{}", k, index, fmt_base(base))
            }
            PointLabel::Star => write!(f, "star"),
            PointLabel::Named(name) => write!(f, "pt:{}", name),
        }
    }
}

fn parse_base(s: &str, whole: &str) -> Result<BasePoint, PosetError> {
    let bad = || PosetError::MalformedId(whole.to_string());
    let rest = s.strip_prefix("base:g").ok_or_else(bad)?;
    let (elem, level) = rest.split_once(":lv").ok_or_else(bad)?;
    if elem.is_empty() || !elem.bytes().all(|b| b.is_ascii_digit()) || (elem.len() > 1 && elem.starts_with('0')) {
        return Err(bad());
    }
    let element: usize = elem.parse().map_err(|_| bad())?;
    let level: i32 = level.parse().map_err(|_| bad())?;
    // Reject non-canonical spellings such as "lv+1" or "lv01" so ids round-trip.
    if format!("{}", level) != s.split_once(":lv").map(|(_, l)| l).unwrap_or_default() {
        return Err(bad());
    }
    Ok(BasePoint { element, level })
}

impl FromStr for PointLabel {
    type Err = PosetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PosetError::MalformedId(s.to_string());
        if s == "star" {
            return Ok(PointLabel::Star);
        }
        if let Some(name) = s.strip_prefix("pt:") {
            if name.is_empty() {
                return Err(bad());
            }
            return Ok(PointLabel::Named(name.to_string()));
        }
        if s.starts_with("base:") {
            return Ok(PointLabel::Base(parse_base(s, s)?));
        }
        if let Some(rest) = s.strip_prefix("S:") {
            let (letter, base) = rest.split_once(':').ok_or_else(bad)?;
            let kind = SKind::from_letter(letter).ok_or_else(bad)?;
            return Ok(PointLabel::GadgetS { kind, base: parse_base(base, s)? });
        }
        if let Some(rest) = s.strip_prefix("T:") {
            let (letter, base) = rest.split_once(':').ok_or_else(bad)?;
            let kind = TKind::from_letter(letter).ok_or_else(bad)?;
            return Ok(PointLabel::GadgetT { kind, base: parse_base(base, s)? });
        }
        if let Some(rest) = s.strip_prefix("Tn:") {
            let mut parts = rest.splitn(3, ':');
            let kind = match parts.next() {
                Some("max") => Extremity::Max,
                Some("min") => Extremity::Min,
                _ => return Err(bad()),
            };
            let idx = parts.next().ok_or_else(bad)?;
            let index: u32 = idx.parse().map_err(|_| bad())?;
            if index == 0 || index.to_string() != idx {
                return Err(bad());
            }
            let base = parse_base(parts.next().ok_or_else(bad)?, s)?;
            return Ok(PointLabel::GadgetTn { kind, index, base });
        }
        Err(bad())
    }
}

/// Whether a beat point is dominated from above or from below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BeatKind {
    /// The strict up-set has a unique minimal element.
    Up,
    /// The strict down-set has a unique maximal element.
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BeatPoint {
    pub point: usize,
    pub kind: BeatKind,
    /// The unique cover that dominates the point.
    pub dominated_by: usize,
}

/// A finite partial order on labelled points.
#[derive(Clone, Debug)]
pub struct FinitePoset {
    labels: Vec<PointLabel>,
    index: HashMap<PointLabel, usize>,
    hasse: Vec<(usize, usize)>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    down: Vec<FixedBitSet>,
    up: Vec<FixedBitSet>,
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.hasse == other.hasse
    }
}

impl Eq for FinitePoset {}

impl FinitePoset {
    /// Builds a poset from any set of strict relations `lower < upper`; the
    /// stored Hasse diagram is their transitive reduction.
    pub fn from_relations(
        labels: Vec<PointLabel>,
        relations: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, PosetError> {
        let n = labels.len();
        let index = index_labels(&labels)?;
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (a, b) in relations {
            check_index(a, n)?;
            check_index(b, n)?;
            if a == b {
                return Err(PosetError::Reflexive(labels[a].to_string()));
            }
            succ[a].push(b);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        let (down, up) = closure(&labels, &succ)?;
        let hasse = reduce(&down, &up);
        Ok(Self::assemble(labels, index, hasse, down, up))
    }

    /// Builds a poset from its covering relation. Every edge must be a cover:
    /// an edge implied by the others is rejected.
    pub fn from_hasse(labels: Vec<PointLabel>, edges: &[(usize, usize)]) -> Result<Self, PosetError> {
        let poset = Self::from_relations(labels, edges.iter().copied())?;
        let mut given: Vec<(usize, usize)> = edges.to_vec();
        given.sort_unstable();
        given.dedup();
        if given.len() != poset.hasse.len() {
            let redundant = given.iter().find(|e| poset.hasse.binary_search(e).is_err()).expect("an extra edge exists");
            return Err(PosetError::RedundantEdge {
                lower: poset.labels[redundant.0].to_string(),
                upper: poset.labels[redundant.1].to_string(),
            });
        }
        Ok(poset)
    }

    /// Fixture helper: points named by strings, relations between names.
    pub fn from_named(names: &[&str], relations: &[(&str, &str)]) -> Result<Self, PosetError> {
        let labels: Vec<PointLabel> = names.iter().map(|n| PointLabel::named(*n)).collect();
        let lookup = |name: &str| {
            names.iter().position(|n| *n == name).ok_or_else(|| PosetError::UnknownPoint(name.to_string()))
        };
        let mut rels = Vec::with_capacity(relations.len());
        for (a, b) in relations {
            rels.push((lookup(a)?, lookup(b)?));
        }
        Self::from_relations(labels, rels)
    }

    /// A chain `p0 < p1 < ... < p(n-1)`.
    pub fn chain(n: usize) -> Self {
        let labels = (0..n).map(|i| PointLabel::named(format!("p{}", i))).collect();
        Self::from_relations(labels, (1..n).map(|i| (i - 1, i))).expect("a chain is a poset")
    }

    /// `n` pairwise incomparable points.
    pub fn antichain(n: usize) -> Self {
        let labels = (0..n).map(|i| PointLabel::named(format!("p{}", i))).collect();
        Self::from_relations(labels, std::iter::empty()).expect("an antichain is a poset")
    }

    fn assemble(
        labels: Vec<PointLabel>,
        index: HashMap<PointLabel, usize>,
        hasse: Vec<(usize, usize)>,
        down: Vec<FixedBitSet>,
        up: Vec<FixedBitSet>,
    ) -> Self {
        let n = labels.len();
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for &(a, b) in &hasse {
            upper_covers[a].push(b);
            lower_covers[b].push(a);
        }
        FinitePoset { labels, index, hasse, upper_covers, lower_covers, down, up }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[PointLabel] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &PointLabel {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &PointLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Covering pairs `(lower, upper)`, sorted.
    pub fn hasse_edges(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down[b].contains(a)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// `{ y : y <= x }` as a bitset.
    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    /// `{ y : y >= x }` as a bitset.
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    /// The minimal open set `U_x`, i.e. the down-set of `x`, in index order.
    pub fn minimal_open_set(&self, x: usize) -> Result<Vec<usize>, PosetError> {
        check_index(x, self.len())?;
        Ok(self.down[x].ones().collect())
    }

    pub fn is_minimal(&self, x: usize) -> bool {
        self.lower_covers[x].is_empty()
    }

    pub fn is_maximal(&self, x: usize) -> bool {
        self.upper_covers[x].is_empty()
    }

    /// All beat points in ascending index order; a point that is both an up
    /// and a down beat point is listed twice (up first).
    pub fn beat_points(&self) -> Vec<BeatPoint> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            if let [y] = self.upper_covers[x][..] {
                out.push(BeatPoint { point: x, kind: BeatKind::Up, dominated_by: y });
            }
            if let [y] = self.lower_covers[x][..] {
                out.push(BeatPoint { point: x, kind: BeatKind::Down, dominated_by: y });
            }
        }
        out
    }

    pub fn is_core(&self) -> bool {
        self.beat_points().is_empty()
    }

    /// Connected components of the comparability graph, each sorted, ordered
    /// by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &y in self.upper_covers[x].iter().chain(&self.lower_covers[x]) {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// True iff the space is path-connected. The empty poset counts as
    /// connected.
    pub fn is_path_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The induced subposet on `keep` (indices of `self`), preserving the
    /// relative order of the kept points.
    pub fn induced(&self, keep: &[usize]) -> Self {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut new_index = vec![usize::MAX; self.len()];
        for (i, &x) in keep.iter().enumerate() {
            new_index[x] = i;
        }
        let labels: Vec<PointLabel> = keep.iter().map(|&x| self.labels[x].clone()).collect();
        let mut rels = Vec::new();
        for (i, &x) in keep.iter().enumerate() {
            for y in self.up[x].ones() {
                if y != x && new_index[y] != usize::MAX {
                    rels.push((i, new_index[y]));
                }
            }
        }
        Self::from_relations(labels, rels).expect("a subposet of a poset is a poset")
    }

    pub fn without_point(&self, x: usize) -> Self {
        let keep: Vec<usize> = (0..self.len()).filter(|&y| y != x).collect();
        self.induced(&keep)
    }

    /// Adds one point whose strict down-set is generated by `below` and whose
    /// strict up-set is generated by `above`.
    pub fn with_point(&self, label: PointLabel, below: &[usize], above: &[usize]) -> Result<Self, PosetError> {
        let n = self.len();
        let mut labels = self.labels.clone();
        labels.push(label);
        let mut rels: Vec<(usize, usize)> = self.hasse.clone();
        for &b in below {
            check_index(b, n)?;
            rels.push((b, n));
        }
        for &a in above {
            check_index(a, n)?;
            rels.push((n, a));
        }
        Self::from_relations(labels, rels)
    }

    /// The same poset with the covering edge `(lower, upper)` removed from
    /// the Hasse diagram (relations implied only through it disappear too).
    pub fn without_hasse_edge(&self, lower: usize, upper: usize) -> Result<Self, PosetError> {
        let edges: Vec<(usize, usize)> = self.hasse.iter().copied().filter(|&e| e != (lower, upper)).collect();
        Self::from_relations(self.labels.clone(), edges)
    }

    /// Length (number of points) of the longest chain.
    pub fn height(&self) -> usize {
        let order = self.linear_extension();
        let mut best = vec![1usize; self.len()];
        for &x in &order {
            for &y in &self.upper_covers[x] {
                best[y] = best[y].max(best[x] + 1);
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// A linear extension, choosing the smallest available index first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut indeg: Vec<usize> = (0..n).map(|x| self.lower_covers[x].len()).collect();
        let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
        let mut out = Vec::with_capacity(n);
        while let Some(x) = ready.pop_first() {
            out.push(x);
            for &y in &self.upper_covers[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    ready.insert(y);
                }
            }
        }
        out
    }

    /// Same points, relabelled by `perm`: point `i` of the result is point
    /// `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, PosetError> {
        if perm.len() != self.len() {
            return Err(PosetError::MapLength { expected: self.len(), got: perm.len() });
        }
        let mut inv = vec![usize::MAX; self.len()];
        for (i, &p) in perm.iter().enumerate() {
            check_index(p, self.len())?;
            inv[p] = i;
        }
        let labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        let edges: Vec<(usize, usize)> = self.hasse.iter().map(|&(a, b)| (inv[a], inv[b])).collect();
        Self::from_relations(labels, edges)
    }
}

fn check_index(i: usize, len: usize) -> Result<(), PosetError> {
    if i >= len {
        Err(PosetError::IndexOutOfRange { index: i, len })
    } else {
        Ok(())
    }
}

fn index_labels(labels: &[PointLabel]) -> Result<HashMap<PointLabel, usize>, PosetError> {
    let mut index = HashMap::with_capacity(labels.len());
    let mut stars = 0;
    for (i, l) in labels.iter().enumerate() {
        if *l == PointLabel::Star {
            stars += 1;
        }
        if index.insert(l.clone(), i).is_some() {
            return Err(PosetError::DuplicateLabel(l.to_string()));
        }
    }
    if stars > 1 {
        return Err(PosetError::MultipleStars);
    }
    Ok(index)
}

/// Reflexive-transitive closure as (down-sets, up-sets); fails on cycles.
fn closure(labels: &[PointLabel], succ: &[Vec<usize>]) -> Result<(Vec<FixedBitSet>, Vec<FixedBitSet>), PosetError> {
    let n = succ.len();
    let mut indeg = vec![0usize; n];
    for s in succ {
        for &b in s {
            indeg[b] += 1;
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut stack: Vec<usize> = (0..n).rev().filter(|&x| indeg[x] == 0).collect();
    while let Some(x) = stack.pop() {
        order.push(x);
        for &b in &succ[x] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                stack.push(b);
            }
        }
    }
    if order.len() != n {
        let culprit = (0..n).find(|&x| indeg[x] > 0).expect("cycle member");
        return Err(PosetError::Cycle(labels[culprit].to_string()));
    }
    let mut down: Vec<FixedBitSet> = (0..n)
        .map(|x| {
            let mut s = FixedBitSet::with_capacity(n);
            s.insert(x);
            s
        })
        .collect();
    for &x in &order {
        let dx = down[x].clone();
        for &b in &succ[x] {
            down[b].union_with(&dx);
        }
    }
    let mut up: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
    for (x, d) in down.iter().enumerate() {
        for y in d.ones() {
            up[y].insert(x);
        }
    }
    Ok((down, up))
}

/// Covering pairs: `a < b` with nothing strictly between.
fn reduce(down: &[FixedBitSet], up: &[FixedBitSet]) -> Vec<(usize, usize)> {
    let mut hasse = Vec::new();
    for (b, d) in down.iter().enumerate() {
        for a in d.ones() {
            if a != b && up[a].intersection_count(d) == 2 {
                hasse.push((a, b));
            }
        }
    }
    hasse.sort_unstable();
    hasse
}

/// A total function between the points of two posets. Maps do not own their
/// posets; order-related checks take them as arguments.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PosetMap {
    images: Vec<usize>,
}

impl PosetMap {
    pub fn new(images: Vec<usize>) -> Self {
        PosetMap { images }
    }

    /// Checks the image count against `source` and the image range against `target`.
    pub fn checked(images: Vec<usize>, source: &FinitePoset, target: &FinitePoset) -> Result<Self, PosetError> {
        if images.len() != source.len() {
            return Err(PosetError::MapLength { expected: source.len(), got: images.len() });
        }
        if let Some(&bad) = images.iter().find(|&&y| y >= target.len()) {
            return Err(PosetError::ImageOutOfRange { image: bad, len: target.len() });
        }
        Ok(PosetMap { images })
    }

    pub fn identity(n: usize) -> Self {
        PosetMap { images: (0..n).collect() }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i == y)
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &PosetMap) -> PosetMap {
        PosetMap { images: inner.images.iter().map(|&y| self.images[y]).collect() }
    }

    pub fn is_bijective(&self, target_len: usize) -> bool {
        if self.images.len() != target_len {
            return false;
        }
        let mut seen = vec![false; target_len];
        for &y in &self.images {
            if y >= target_len || seen[y] {
                return false;
            }
            seen[y] = true;
        }
        true
    }

    pub fn is_surjective(&self, target_len: usize) -> bool {
        let mut seen = vec![false; target_len];
        for &y in &self.images {
            if y < target_len {
                seen[y] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn inverse(&self) -> Option<PosetMap> {
        if !self.is_bijective(self.images.len()) {
            return None;
        }
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Some(PosetMap { images: inv })
    }

    /// Continuity: `x <= y` implies `f(x) <= f(y)`. Checking covering pairs suffices.
    pub fn is_order_preserving(&self, source: &FinitePoset, target: &FinitePoset) -> bool {
        self.images.len() == source.len()
            && self.images.iter().all(|&y| y < target.len())
            && source.hasse_edges().iter().all(|&(a, b)| target.leq(self.images[a], self.images[b]))
    }

    /// Bijective, order-preserving, with order-preserving inverse.
    pub fn is_isomorphism(&self, source: &FinitePoset, target: &FinitePoset) -> bool {
        if source.len() != target.len() || !self.is_bijective(target.len()) {
            return false;
        }
        if source.hasse_edges().len() != target.hasse_edges().len() {
            return false;
        }
        source
            .hasse_edges()
            .iter()
            .all(|&(a, b)| target.hasse_edges().binary_search(&(self.images[a], self.images[b])).is_ok())
    }

    /// Pointwise order `self(x) <= other(x)` for all `x`.
    pub fn pointwise_leq(&self, other: &PosetMap, target: &FinitePoset) -> bool {
        self.images.iter().zip(&other.images).all(|(&a, &b)| target.leq(a, b))
    }

    /// Fixed points in ascending order.
    pub fn fixed_points(&self) -> Vec<usize> {
        self.images.iter().enumerate().filter(|(i, &y)| *i == y).map(|(i, _)| i).collect()
    }
}
