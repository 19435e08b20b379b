//! Finite groups given by Cayley tables, generating sets and the built-in
//! families used as fixtures.
//!
//! Built-in groups are generated from a concrete representation by
//! breadth-first search over right multiplication by the generators, so
//! element `0` is the identity and the remaining elements appear in shortlex
//! order of their first word. Labels are those words with runs compressed,
//! e.g. `a^2b`.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::error::GroupError;

/// Largest order accepted by [`FiniteGroup::new`] (associativity is checked
/// exhaustively).
pub const MAX_GROUP_ORDER: usize = 256;

/// Default order bound for [`groups_isomorphic`].
pub const DEFAULT_ISO_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    cayley: Vec<Vec<usize>>,
    identity: usize,
    labels: Vec<String>,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the table: latin square, two-sided identity, associativity.
    pub fn new(cayley: Vec<Vec<usize>>, identity: usize, labels: Vec<String>) -> Result<Self, GroupError> {
        let n = cayley.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > MAX_GROUP_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        if cayley.iter().any(|row| row.len() != n) {
            return Err(GroupError::NotSquare(n));
        }
        if let Some(&bad) = cayley.iter().flatten().find(|&&v| v >= n) {
            return Err(GroupError::EntryOutOfRange(bad));
        }
        if labels.len() != n {
            return Err(GroupError::LabelCount { expected: n, got: labels.len() });
        }
        let mut seen = HashMap::new();
        for l in &labels {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(GroupError::DuplicateLabel(l.clone()));
            }
        }
        if identity >= n {
            return Err(GroupError::ElementOutOfRange(identity));
        }
        for x in 0..n {
            if cayley[identity][x] != x || cayley[x][identity] != x {
                return Err(GroupError::BadIdentity(identity));
            }
        }
        for i in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for j in 0..n {
                if std::mem::replace(&mut row[cayley[i][j]], true) || std::mem::replace(&mut col[cayley[j][i]], true) {
                    return Err(GroupError::NotLatin);
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = cayley[a][b];
                for c in 0..n {
                    if cayley[ab][c] != cayley[a][cayley[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let inverses =
            (0..n).map(|a| (0..n).find(|&b| cayley[a][b] == identity).expect("latin square has an inverse")).collect();
        Ok(FiniteGroup { cayley, identity, labels, inverses })
    }

    /// Builds a group by closing `gens` under multiplication, starting from
    /// `id`. Elements are numbered in BFS order of right multiplication.
    pub fn from_generators<T, F>(id: T, gens: &[(&str, T)], mul: F) -> Result<Self, GroupError>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elems: Vec<T> = vec![id.clone()];
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut index: HashMap<T, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (k, (_, g)) in gens.iter().enumerate() {
                let prod = mul(&elems[i], g);
                if !index.contains_key(&prod) {
                    if elems.len() >= MAX_GROUP_ORDER {
                        return Err(GroupError::TooLarge(elems.len() + 1));
                    }
                    index.insert(prod.clone(), elems.len());
                    let mut w = words[i].clone();
                    w.push(k);
                    words.push(w);
                    elems.push(prod);
                    queue.push_back(elems.len() - 1);
                }
            }
        }
        let n = elems.len();
        let cayley = (0..n).map(|a| (0..n).map(|b| index[&mul(&elems[a], &elems[b])]).collect()).collect();
        let names: Vec<&str> = gens.iter().map(|(name, _)| *name).collect();
        let labels = words.iter().map(|w| word_label(w, &names)).collect();
        FiniteGroup::new(cayley, 0, labels)
    }

    pub fn order(&self) -> usize {
        self.cayley.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted multiset of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    pub fn element_by_label(&self, label: &str) -> Result<usize, GroupError> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| GroupError::UnknownElement(label.to_string()))
    }

    /// Resolves a generator token: an element label, or a decimal index when
    /// no label matches.
    pub fn resolve(&self, token: &str) -> Result<usize, GroupError> {
        if let Ok(i) = self.element_by_label(token) {
            return Ok(i);
        }
        match token.parse::<usize>() {
            Ok(i) if i < self.order() => Ok(i),
            _ => Err(GroupError::UnknownElement(token.to_string())),
        }
    }

    /// The subgroup generated by `elems`, as sorted element indices.
    pub fn subgroup_generated(&self, elems: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order()];
        inside[self.identity] = true;
        let mut members = vec![self.identity];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in elems {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        members
    }

    /// A short generating set, chosen greedily by decreasing element order.
    pub fn small_generating_set(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (0..self.order()).filter(|&a| a != self.identity).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for a in by_order {
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.subgroup_generated(&gens);
            }
        }
        gens
    }
}

fn word_label(word: &[usize], names: &[&str]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    let mut out = String::new();
    let mut i = 0;
    while i < word.len() {
        let mut j = i;
        while j < word.len() && word[j] == word[i] {
            j += 1;
        }
        out.push_str(names[word[i]]);
        if j - i > 1 {
            out.push_str(&format!("^{}", j - i));
        }
        i = j;
    }
    out
}

/// An ordered list of non-identity, pairwise distinct generators `h_1..h_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingSet {
    gens: Vec<usize>,
    span: Vec<usize>,
    group_order: usize,
}

impl GeneratingSet {
    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    /// Number of generators `r`.
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// `h_beta` for `1 <= beta <= r`.
    pub fn h(&self, beta: usize) -> usize {
        self.gens[beta - 1]
    }

    /// The subgroup the list generates, sorted.
    pub fn span(&self) -> &[usize] {
        &self.span
    }

    pub fn generates(&self) -> bool {
        self.span.len() == self.group_order
    }
}

fn check_list(g: &FiniteGroup, s: &[usize]) -> Result<(), GroupError> {
    for (position, &x) in s.iter().enumerate() {
        if x >= g.order() {
            return Err(GroupError::ElementOutOfRange(x));
        }
        if x == g.identity() {
            return Err(GroupError::ContainsIdentity { position });
        }
        if s[..position].contains(&x) {
            return Err(GroupError::DuplicateGenerator(g.label(x).to_string()));
        }
    }
    Ok(())
}

/// Validates `s` as a generating set of `g`, keeping its order.
pub fn validate_generating_set(g: &FiniteGroup, s: &[usize]) -> Result<GeneratingSet, GroupError> {
    let set = generator_list_unchecked(g, s)?;
    if !set.generates() {
        return Err(GroupError::DoesNotGenerate { subgroup: set.span });
    }
    Ok(set)
}

/// Test mode: the identity, duplicate and range checks still apply, but the
/// list may generate a proper subgroup.
pub fn generator_list_unchecked(g: &FiniteGroup, s: &[usize]) -> Result<GeneratingSet, GroupError> {
    check_list(g, s)?;
    Ok(GeneratingSet { gens: s.to_vec(), span: g.subgroup_generated(s), group_order: g.order() })
}

/// The standard generators of a built-in group, in label form.
pub fn standard_generators(g: &FiniteGroup) -> Vec<usize> {
    // Built-in groups label each generator by a single word of length one.
    (0..g.order())
        .filter(|&a| {
            let l = g.label(a);
            a != g.identity() && !l.contains('^') && l.chars().count() == 1
        })
        .collect()
}

fn bad_param(family: &str, param: impl ToString) -> GroupError {
    GroupError::BadParameter { family: family.to_string(), param: param.to_string() }
}

/// Cyclic group `Z/n` with generator `a = 1`.
pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 || n > MAX_GROUP_ORDER {
        return Err(bad_param("cyclic", n));
    }
    let gens: Vec<(&str, usize)> = if n == 1 { vec![] } else { vec![("a", 1)] };
    FiniteGroup::from_generators(0usize, &gens, |x, y| (x + y) % n)
}

/// Dihedral group of order `2m`, generated by the two reflections
/// `a: x -> -x` and `b: x -> 1 - x` of `Z/m`.
pub fn dihedral(m: usize) -> Result<FiniteGroup, GroupError> {
    if !(3..=MAX_GROUP_ORDER / 2).contains(&m) {
        return Err(bad_param("dihedral", m));
    }
    let m = m as i64;
    // (s, t) is the affine map x -> s*x + t; the product is composition.
    let mul = |p: &(i64, i64), q: &(i64, i64)| (p.0 * q.0, (p.0 * q.1 + p.1).rem_euclid(m));
    FiniteGroup::from_generators((1i64, 0i64), &[("a", (-1, 0)), ("b", (-1, 1))], mul)
}

/// Symmetric group on `n <= 5` letters, generated by `a = (0 1)` and the
/// `n`-cycle `b`.
pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    if !(1..=5).contains(&n) {
        return Err(bad_param("symmetric", n));
    }
    let id: Vec<usize> = (0..n).collect();
    let mut gens = Vec::new();
    if n >= 2 {
        let mut t = id.clone();
        t.swap(0, 1);
        gens.push(("a", t));
    }
    if n >= 3 {
        gens.push(("b", (0..n).map(|i| (i + 1) % n).collect()));
    }
    FiniteGroup::from_generators(id, &gens, |p, q| q.iter().map(|&i| p[i]).collect())
}

pub fn klein4() -> Result<FiniteGroup, GroupError> {
    FiniteGroup::from_generators((0u8, 0u8), &[("a", (1, 0)), ("b", (0, 1))], |x, y| (x.0 ^ y.0, x.1 ^ y.1))
}

/// Quaternion group `{±1, ±i, ±j, ±k}` generated by `i` and `j`.
pub fn quaternion8() -> Result<FiniteGroup, GroupError> {
    let mul = |p: &[i64; 4], q: &[i64; 4]| {
        [
            p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
            p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
            p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
            p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0],
        ]
    };
    FiniteGroup::from_generators([1, 0, 0, 0], &[("i", [0, 1, 0, 0]), ("j", [0, 0, 1, 0])], mul)
}

/// A built-in group by family name and parameter.
pub fn builtin_group(family: &str, param: Option<usize>) -> Result<FiniteGroup, GroupError> {
    let need = |p: Option<usize>| p.ok_or_else(|| bad_param(family, "missing"));
    match family {
        "cyclic" => cyclic(need(param)?),
        "dihedral" => dihedral(need(param)?),
        "symmetric" => symmetric(need(param)?),
        "klein4" => match param {
            None => klein4(),
            Some(p) => Err(bad_param(family, p)),
        },
        "quaternion8" => match param {
            None => quaternion8(),
            Some(p) => Err(bad_param(family, p)),
        },
        other => Err(GroupError::UnknownFamily(other.to_string())),
    }
}

/// Parses `family:param` (or a bare family name for parameterless groups).
pub fn parse_builtin(spec: &str) -> Result<FiniteGroup, GroupError> {
    match spec.split_once(':') {
        Some((family, p)) => {
            let param = p.parse::<usize>().map_err(|_| bad_param(family, p))?;
            builtin_group(family, Some(param))
        }
        None => builtin_group(spec, None),
    }
}

/// True iff `g` and `h` are isomorphic. Groups of different order are
/// rejected before the size bound is consulted.
pub fn groups_isomorphic(g: &FiniteGroup, h: &FiniteGroup, limit: usize) -> Result<bool, GroupError> {
    Ok(find_group_isomorphism(g, h, limit)?.is_some())
}

/// An isomorphism `g -> h` as an image table, if one exists.
pub fn find_group_isomorphism(
    g: &FiniteGroup,
    h: &FiniteGroup,
    limit: usize,
) -> Result<Option<Vec<usize>>, GroupError> {
    if g.order() != h.order() {
        return Ok(None);
    }
    if g.order() > limit {
        return Err(GroupError::SizeLimitExceeded { order: g.order(), limit });
    }
    if g.order_profile() != h.order_profile() {
        return Ok(None);
    }
    let gens = g.small_generating_set();
    let h_orders: Vec<usize> = (0..h.order()).map(|a| h.element_order(a)).collect();
    let mut images = Vec::with_capacity(gens.len());
    Ok(extend(g, h, &gens, &h_orders, &mut images))
}

fn extend(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    h_orders: &[usize],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if images.len() == gens.len() {
        return homomorphism_from(g, h, gens, images);
    }
    let x = gens[images.len()];
    let want = g.element_order(x);
    for y in 0..h.order() {
        if h_orders[y] != want || images.contains(&y) {
            continue;
        }
        images.push(y);
        if let Some(m) = extend(g, h, gens, h_orders, images) {
            return Some(m);
        }
        images.pop();
    }
    None
}

/// Extends generator images along a BFS of `g` and checks the result is a
/// bijective homomorphism.
fn homomorphism_from(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = g.order();
    let mut phi = vec![usize::MAX; n];
    phi[g.identity()] = h.identity();
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let img = h.mul(phi[x], t);
            if phi[y] == usize::MAX {
                phi[y] = img;
                queue.push_back(y);
            } else if phi[y] != img {
                return None;
            }
        }
    }
    let mut hit = vec![false; n];
    for &y in &phi {
        if std::mem::replace(&mut hit[y], true) {
            return None;
        }
    }
    for a in 0..n {
        for b in 0..n {
            if phi[g.mul(a, b)] != h.mul(phi[a], phi[b]) {
                return None;
            }
        }
    }
    Some(phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_orders() {
        assert_eq!(cyclic(3).unwrap().order(), 3);
        assert_eq!(cyclic(1).unwrap().order(), 1);
        assert_eq!(dihedral(4).unwrap().order(), 8);
        assert_eq!(dihedral(3).unwrap().order(), 6);
        assert_eq!(symmetric(3).unwrap().order(), 6);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert_eq!(klein4().unwrap().order(), 4);
        assert_eq!(quaternion8().unwrap().order(), 8);
    }

    #[test]
    fn shortlex_labels() {
        assert_eq!(cyclic(4).unwrap().labels(), &["e", "a", "a^2", "a^3"]);
        assert_eq!(quaternion8().unwrap().labels(), &["e", "i", "j", "i^2", "ij", "ji", "i^3", "i^2j"]);
    }

    #[test]
    fn dihedral_generators_are_involutions_with_product_of_order_four() {
        let d = dihedral(4).unwrap();
        let a = d.element_by_label("a").unwrap();
        let b = d.element_by_label("b").unwrap();
        assert_eq!(d.element_order(a), 2);
        assert_eq!(d.element_order(b), 2);
        assert_eq!(d.element_order(d.mul(a, b)), 4);
    }

    #[test]
    fn generating_set_errors() {
        let c3 = cyclic(3).unwrap();
        assert_eq!(validate_generating_set(&c3, &[0]), Err(GroupError::ContainsIdentity { position: 0 }));
        assert!(matches!(validate_generating_set(&c3, &[1, 1]), Err(GroupError::DuplicateGenerator(_))));
        let c4 = cyclic(4).unwrap();
        let a2 = c4.element_by_label("a^2").unwrap();
        assert_eq!(validate_generating_set(&c4, &[a2]), Err(GroupError::DoesNotGenerate { subgroup: vec![0, a2] }));
        let forced = generator_list_unchecked(&c4, &[a2]).unwrap();
        assert!(!forced.generates());
    }

    #[test]
    fn rejects_bad_tables() {
        let labels = || vec!["e".to_string(), "x".to_string()];
        assert_eq!(FiniteGroup::new(vec![vec![0, 1], vec![1, 1]], 0, labels()), Err(GroupError::NotLatin));
        assert_eq!(FiniteGroup::new(vec![vec![1, 0], vec![0, 1]], 0, labels()), Err(GroupError::BadIdentity(0)));
        assert_eq!(FiniteGroup::new(vec![], 0, vec![]), Err(GroupError::Empty));
        // Latin with identity but not associative (order 5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let l5 = (0..5).map(|i| i.to_string()).collect();
        assert!(matches!(FiniteGroup::new(loop5, 0, l5), Err(GroupError::NotAssociative(..))));
    }

    #[test]
    fn isomorphism_checks() {
        let c4 = cyclic(4).unwrap();
        let k4 = klein4().unwrap();
        assert!(!groups_isomorphic(&c4, &k4, DEFAULT_ISO_LIMIT).unwrap());
        assert!(groups_isomorphic(&dihedral(4).unwrap(), &dihedral(4).unwrap(), DEFAULT_ISO_LIMIT).unwrap());
        assert!(!groups_isomorphic(&dihedral(4).unwrap(), &quaternion8().unwrap(), DEFAULT_ISO_LIMIT).unwrap());
        assert!(groups_isomorphic(&dihedral(3).unwrap(), &symmetric(3).unwrap(), DEFAULT_ISO_LIMIT).unwrap());
        assert!(matches!(
            groups_isomorphic(&symmetric(4).unwrap(), &symmetric(4).unwrap(), DEFAULT_ISO_LIMIT),
            Err(GroupError::SizeLimitExceeded { order: 24, limit: 16 })
        ));
        assert!(!groups_isomorphic(&symmetric(4).unwrap(), &cyclic(3).unwrap(), DEFAULT_ISO_LIMIT).unwrap());
    }

    #[test]
    fn parsing_builtins() {
        assert_eq!(parse_builtin("dihedral:4").unwrap().order(), 8);
        assert_eq!(parse_builtin("klein4").unwrap().order(), 4);
        assert!(matches!(parse_builtin("free:2"), Err(GroupError::UnknownFamily(_))));
        assert!(matches!(parse_builtin("symmetric:9"), Err(GroupError::BadParameter { .. })));
        assert!(matches!(parse_builtin("cyclic"), Err(GroupError::BadParameter { .. })));
    }

    #[test]
    fn standard_generators_follow_family() {
        assert_eq!(standard_generators(&dihedral(4).unwrap()).len(), 2);
        assert_eq!(standard_generators(&cyclic(1).unwrap()).len(), 0);
        assert_eq!(standard_generators(&symmetric(2).unwrap()).len(), 1);
    }
}
