//! Order complexes and their low-degree integral homology.
//!
//! The order complex `K(P)` has the points of `P` as vertices and the
//! non-empty chains as simplices. Simplices are stored as vertex lists
//! ordered from bottom to top, which fixes their orientation; in particular
//! every edge is oriented from its lower to its upper end.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;

use crate::error::HomologyError;
use crate::poset::{FinitePoset, PosetMap};
use crate::snf::{self, SparseMatrix};

pub const DEFAULT_DIM_CAP: usize = 2;
pub const DEFAULT_MAX_SIMPLICES: usize = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n_vertices: usize,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl SimplicialComplex {
    /// Validates closure under faces and sorts each dimension.
    pub fn from_simplices(n_vertices: usize, mut simplices: Vec<Vec<Vec<usize>>>) -> Result<Self, HomologyError> {
        for (k, list) in simplices.iter_mut().enumerate() {
            for s in list.iter() {
                if s.len() != k + 1 {
                    return Err(HomologyError::NotClosed(format!("{:?} listed in dimension {}", s, k)));
                }
                if let Some(&v) = s.iter().find(|&&v| v >= n_vertices) {
                    return Err(HomologyError::NotClosed(format!("vertex {} out of range", v)));
                }
            }
            list.sort();
            list.dedup();
        }
        let index: Vec<HashMap<Vec<usize>, usize>> =
            simplices.iter().map(|list| list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
        for k in 1..simplices.len() {
            for s in &simplices[k] {
                for drop in 0..s.len() {
                    let face: Vec<usize> = face(s, drop);
                    if !index[k - 1].contains_key(&face) {
                        return Err(HomologyError::NotClosed(format!("face {:?} of {:?} missing", face, s)));
                    }
                }
            }
        }
        Ok(SimplicialComplex { n_vertices, simplices, index })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn dim_cap(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    pub fn simplices_by_dim(&self) -> &[Vec<Vec<usize>>] {
        &self.simplices
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        self.index.get(simplex.len().checked_sub(1)?)?.get(simplex).copied()
    }

    /// Euler characteristic of the stored skeleton.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, l)| if k % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// Simplicial boundary matrices `∂_1 .. ∂_cap`.
    pub fn chain_complex(&self) -> ChainComplex {
        let mut boundaries = vec![SparseMatrix::new(0)];
        for k in 1..self.simplices.len() {
            let mut m = SparseMatrix::new(self.simplices[k - 1].len());
            for s in &self.simplices[k] {
                let col = (0..s.len())
                    .map(|drop| {
                        let row = self.index[k - 1][&face(s, drop)];
                        (row, if drop % 2 == 0 { 1 } else { -1 })
                    })
                    .collect();
                m.push_col(col);
            }
            boundaries.push(m);
        }
        ChainComplex { dims: self.simplices.iter().map(Vec::len).collect(), boundaries }
    }
}

fn face(s: &[usize], drop: usize) -> Vec<usize> {
    s.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, &v)| v).collect()
}

/// All chains of at most `dim_cap + 1` points.
pub fn order_complex(
    p: &FinitePoset,
    dim_cap: usize,
    max_simplices: usize,
) -> Result<SimplicialComplex, HomologyError> {
    if dim_cap < 1 {
        return Err(HomologyError::BadCap);
    }
    let order = p.linear_extension();
    let mut rank_of = vec![0; p.len()];
    for (i, &x) in order.iter().enumerate() {
        rank_of[x] = i;
    }
    // Strict up-sets listed in linear-extension order so chains come out
    // bottom to top.
    let above: Vec<Vec<usize>> = (0..p.len())
        .map(|x| {
            let mut v: Vec<usize> = p.up_set(x).ones().filter(|&y| y != x).collect();
            v.sort_by_key(|&y| rank_of[y]);
            v
        })
        .collect();
    let mut simplices: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dim_cap + 1];
    let mut total = 0usize;
    let mut stack: Vec<Vec<usize>> = (0..p.len()).map(|x| vec![x]).collect();
    while let Some(chain) = stack.pop() {
        total += 1;
        if total > max_simplices {
            return Err(HomologyError::TooManySimplices { limit: max_simplices });
        }
        let top = *chain.last().expect("non-empty chain");
        if chain.len() <= dim_cap {
            for &y in &above[top] {
                let mut c = chain.clone();
                c.push(y);
                stack.push(c);
            }
        }
        simplices[chain.len() - 1].push(chain);
    }
    SimplicialComplex::from_simplices(p.len(), simplices)
}

/// Boundary matrices of a chain complex, `boundaries[k] = ∂_k`. `∂_0` is the
/// zero map to the zero group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn boundary(&self, k: usize) -> Result<&SparseMatrix, HomologyError> {
        self.boundaries.get(k).ok_or(HomologyError::MissingBoundary(k))
    }

    /// True iff `∂_k ∘ ∂_{k+1} = 0` for every stored pair.
    pub fn is_chain_complex(&self) -> bool {
        (1..self.boundaries.len().saturating_sub(1)).all(|k| self.boundaries[k].mul(&self.boundaries[k + 1]).is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

/// Rank and torsion of `H_k`; needs `∂_k` and `∂_{k+1}`.
pub fn betti(c: &ChainComplex, k: usize) -> Result<HomologyGroup, HomologyError> {
    let dim = *c.dims.get(k).ok_or(HomologyError::MissingBoundary(k))?;
    let rank_k = if k == 0 { 0 } else { snf::rank(c.boundary(k)?) };
    let next = snf::reduce(c.boundary(k + 1)?);
    Ok(HomologyGroup { betti: dim - rank_k - next.rank, torsion: next.torsion() })
}

/// `b_0`, `b_1` and the torsion of `H_1` of `K(P)` truncated at dimension 2.
pub fn low_homology(p: &FinitePoset) -> Result<(HomologyGroup, HomologyGroup), HomologyError> {
    let k = order_complex(p, DEFAULT_DIM_CAP, DEFAULT_MAX_SIMPLICES)?;
    let c = k.chain_complex();
    Ok((betti(&c, 0)?, betti(&c, 1)?))
}

/// An undirected simple graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub n_vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n_vertices).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let mut comps = self.n_vertices;
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                comps -= 1;
            }
        }
        comps
    }

    /// `E - V + components`: the rank of the graph's first homology.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.components() - self.n_vertices
    }
}

/// The Hasse diagram with orientation forgotten (edges still listed as
/// `(lower, upper)`).
pub fn hasse_undirected(p: &FinitePoset) -> Graph {
    Graph { n_vertices: p.len(), edges: p.hasse_edges().to_vec() }
}

/// A basis of `H_1(K(P))` made of fundamental cycles of a spanning forest of
/// the Hasse diagram. The forest is grown breadth-first from the lowest
/// unvisited index, visiting neighbours in index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleBasis {
    /// Hasse edges not in the forest; cycle `j` runs through `non_tree[j]`.
    pub non_tree: Vec<(usize, usize)>,
    /// Each cycle as signed Hasse edges `(lower, upper, coefficient)`.
    pub cycles: Vec<Vec<(usize, usize, i64)>>,
}

impl CycleBasis {
    /// Builds the basis and checks it against the chain complex of `K(P)`:
    /// each cycle is closed, there are `b_1` of them, and together with the
    /// boundaries they span all 1-cycles over the integers.
    pub fn from_hasse(p: &FinitePoset, k: &SimplicialComplex) -> Result<Self, HomologyError> {
        if k.n_vertices() != p.len() || k.dim_cap() < 2 {
            return Err(HomologyError::BasisInconsistent(
                "complex does not come from this poset with dimension cap >= 2".into(),
            ));
        }
        let basis = Self::fundamental_cycles(p);
        let c = k.chain_complex();
        let h1 = betti(&c, 1)?;
        if !h1.torsion.is_empty() {
            return Err(HomologyError::BasisInconsistent(format!("H_1 has torsion {:?}", h1.torsion)));
        }
        if basis.cycles.len() != h1.betti {
            return Err(HomologyError::BasisInconsistent(format!(
                "{} graph cycles but b_1 = {}",
                basis.cycles.len(),
                h1.betti
            )));
        }
        let mut z = SparseMatrix::new(k.count(1));
        for cyc in &basis.cycles {
            let mut col = Vec::with_capacity(cyc.len());
            for &(a, b, coef) in cyc {
                let idx = k
                    .index_of(&[a, b])
                    .ok_or_else(|| HomologyError::BasisInconsistent(format!("edge ({a}, {b}) is not a 1-simplex")))?;
                col.push((idx, coef));
            }
            z.push_col(col);
        }
        if !c.boundary(1)?.mul(&z).is_zero() {
            return Err(HomologyError::BasisInconsistent("a basis chain has non-zero boundary".into()));
        }
        let d2 = c.boundary(2)?;
        let rank_d2 = snf::rank(d2);
        let joint = snf::reduce(&d2.hcat(&z));
        if joint.rank != rank_d2 + h1.betti || !joint.torsion().is_empty() {
            return Err(HomologyError::BasisInconsistent(
                "cycles and boundaries do not span the integral 1-cycles".into(),
            ));
        }
        Ok(basis)
    }

    /// Fundamental cycles only, without validation.
    pub fn fundamental_cycles(p: &FinitePoset) -> Self {
        let n = p.len();
        let neighbours: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                let mut v: Vec<usize> = p.upper_covers(x).iter().chain(p.lower_covers(x)).copied().collect();
                v.sort_unstable();
                v
            })
            .collect();
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        let mut seen = vec![false; n];
        let mut tree = std::collections::HashSet::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &y in &neighbours[x] {
                    if !seen[y] {
                        seen[y] = true;
                        parent[y] = x;
                        depth[y] = depth[x] + 1;
                        tree.insert(ordered(p, x, y));
                        queue.push_back(y);
                    }
                }
            }
        }
        let mut non_tree = Vec::new();
        let mut cycles = Vec::new();
        for &(a, b) in p.hasse_edges() {
            if tree.contains(&(a, b)) {
                continue;
            }
            // Edge a -> b, then the tree path from b back to a.
            let mut cyc = vec![(a, b, 1i64)];
            let (mut u, mut v) = (b, a);
            let mut tail = Vec::new();
            while u != v {
                if depth[u] >= depth[v] {
                    cyc.push(step(p, u, parent[u]));
                    u = parent[u];
                } else {
                    tail.push(step(p, parent[v], v));
                    v = parent[v];
                }
            }
            cyc.extend(tail.into_iter().rev());
            non_tree.push((a, b));
            cycles.push(cyc);
        }
        CycleBasis { non_tree, cycles }
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Coordinates of a cycle of the Hasse graph, read off the non-tree edges.
    pub fn coordinates(&self, cycle: &[(usize, usize, i64)]) -> Vec<i64> {
        let mut acc: HashMap<(usize, usize), i64> = HashMap::new();
        for &(a, b, c) in cycle {
            *acc.entry((a, b)).or_insert(0) += c;
        }
        self.non_tree.iter().map(|e| acc.get(e).copied().unwrap_or(0)).collect()
    }
}

fn ordered(p: &FinitePoset, x: usize, y: usize) -> (usize, usize) {
    if p.leq(x, y) {
        (x, y)
    } else {
        (y, x)
    }
}

/// Traversal of the Hasse edge between `from` and `to` as a signed edge.
fn step(p: &FinitePoset, from: usize, to: usize) -> (usize, usize, i64) {
    if p.leq(from, to) {
        (from, to, 1)
    } else {
        (to, from, -1)
    }
}

/// Matrix of the map induced on `H_1` by the automorphism `f`, in the given
/// basis: column `j` holds the coordinates of `f(cycle_j)`.
pub fn induced_h1_action(p: &FinitePoset, f: &PosetMap, basis: &CycleBasis) -> Result<Vec<Vec<i64>>, HomologyError> {
    if !f.is_isomorphism(p, p) {
        return Err(HomologyError::NotAnAutomorphism);
    }
    let r = basis.len();
    let mut m = vec![vec![0i64; r]; r];
    for (j, cyc) in basis.cycles.iter().enumerate() {
        let image: Vec<(usize, usize, i64)> = cyc.iter().map(|&(a, b, c)| (f.apply(a), f.apply(b), c)).collect();
        for (i, v) in basis.coordinates(&image).into_iter().enumerate() {
            m[i][j] = v;
        }
    }
    Ok(m)
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let inner = b.len();
    (0..n).map(|i| (0..m).map(|j| (0..inner).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn trace(a: &[Vec<i64>]) -> i64 {
    (0..a.len()).map(|i| a[i][i]).sum()
}
