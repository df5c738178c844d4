//! Weight components of the confusability graph.
//!
//! Words of different weight never collide, so the graph splits into one
//! component per weight `h`. Inside a component, vertices are offset tuples
//! and two tuples collide exactly when they differ by at most one in every
//! coordinate. [`build_component`] uses that criterion directly;
//! [`oracle_component`] recomputes the edges from the channel by brute
//! force so the two can be compared.

use std::fmt::Write as _;

use crate::channel::{output_set, SkewMode};
use crate::words::{from_offsets, offset_tuples, OffsetTuple};
use crate::{Error, Result};

/// Largest block length [`oracle_component`] will enumerate skews for.
pub const ORACLE_MAX_W: usize = 16;

/// Largest component [`max_independent_set`] will search exactly.
pub const MIS_MAX_VERTICES: usize = 1000;

/// Whether two distinct tuples of the same shape are within L-infinity
/// distance one.
pub fn is_edge(x: &OffsetTuple, y: &OffsetTuple) -> Result<bool> {
    if !x.same_shape(y) {
        return Err(Error::ShapeMismatch);
    }
    Ok(x != y
        && x.offsets()
            .iter()
            .zip(y.offsets())
            .all(|(a, b)| a.abs_diff(*b) <= 1))
}

/// One weight class of the confusability graph. Vertices are in
/// lexicographic order; adjacency lists hold vertex ranks in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightComponent {
    w: usize,
    h: usize,
    vertices: Vec<OffsetTuple>,
    adjacency: Vec<Vec<usize>>,
}

impl WeightComponent {
    fn from_predicate(
        w: usize,
        h: usize,
        mut adjacent: impl FnMut(usize, usize) -> Result<bool>,
    ) -> Result<Self> {
        if h > w {
            return Err(Error::WeightOutOfRange { h, w });
        }
        let vertices: Vec<_> = offset_tuples(h, (w - h) as u32).collect();
        let n = vertices.len();
        let mut adjacency = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(i, j)? {
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            w,
            h,
            vertices,
            adjacency,
        })
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn vertices(&self) -> &[OffsetTuple] {
        &self.vertices
    }

    pub fn neighbors(&self, rank: usize) -> &[usize] {
        &self.adjacency[rank]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as rank pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| ns.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
            .collect()
    }

    pub fn rank_of(&self, x: &OffsetTuple) -> Option<usize> {
        self.vertices.binary_search(x).ok()
    }

    pub fn contains_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    /// No two of `set` are adjacent and all are vertices of this component.
    pub fn is_independent(&self, set: &[OffsetTuple]) -> bool {
        let Some(ranks) = set
            .iter()
            .map(|x| self.rank_of(x))
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        ranks.iter().enumerate().all(|(a, &i)| {
            ranks[a + 1..]
                .iter()
                .all(|&j| i != j && !self.contains_edge(i, j))
        })
    }

    /// Plain edge-list export: a `w h n m` header, one `i j` line per
    /// edge, then one `# rank: offsets` comment per vertex.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!(
            "{} {} {} {}\n",
            self.w,
            self.h,
            self.vertices.len(),
            edges.len()
        );
        for (i, j) in edges {
            let _ = writeln!(out, "{i} {j}");
        }
        for (rank, x) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "# {rank}: {x}");
        }
        out
    }
}

/// Component of weight `h` built from the L-infinity criterion.
pub fn build_component(w: usize, h: usize) -> Result<WeightComponent> {
    let vertices: Vec<_> = if h <= w {
        offset_tuples(h, (w - h) as u32).collect()
    } else {
        Vec::new()
    };
    WeightComponent::from_predicate(w, h, |i, j| is_edge(&vertices[i], &vertices[j]))
}

/// Component of weight `h` whose edges come from exhaustive channel
/// simulation rather than the L-infinity criterion.
pub fn oracle_component(w: usize, h: usize, mode: SkewMode) -> Result<WeightComponent> {
    if w > ORACLE_MAX_W {
        return Err(Error::GuardExceeded {
            w,
            limit: ORACLE_MAX_W,
        });
    }
    if w == 0 {
        return Err(Error::EmptyBlock);
    }
    if h > w {
        return Err(Error::WeightOutOfRange { h, w });
    }
    let outputs = offset_tuples(h, (w - h) as u32)
        .map(|x| output_set(&from_offsets(&x, w)?, mode))
        .collect::<Result<Vec<_>>>()?;
    WeightComponent::from_predicate(w, h, |i, j| Ok(!outputs[i].is_disjoint(&outputs[j])))
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Self::empty(n);
        for i in 0..n {
            b.insert(i);
        }
        b
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    fn and_not(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|x| x.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                (rest != 0).then(|| {
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    k * 64 + bit
                })
            })
        })
    }
}

struct MisSearch {
    adj: Vec<Bits>,
    best: Vec<usize>,
}

impl MisSearch {
    /// Greedy partition of `cand` into cliques; an independent set takes
    /// at most one vertex from each.
    fn clique_cover_bound(&self, cand: &Bits) -> usize {
        let mut commons: Vec<Bits> = Vec::new();
        for v in cand.iter() {
            match commons.iter_mut().find(|c| c.contains(v)) {
                Some(c) => *c = c.and(&self.adj[v]),
                None => commons.push(self.adj[v].and(cand)),
            }
        }
        commons.len()
    }

    fn expand(&mut self, current: &mut Vec<usize>, cand: Bits) {
        if cand.is_empty() {
            if current.len() > self.best.len() {
                self.best = current.clone();
            }
            return;
        }
        if current.len() + self.clique_cover_bound(&cand) <= self.best.len() {
            return;
        }
        // Branch on the candidate with the most neighbours still in play.
        let v = cand
            .iter()
            .max_by_key(|&v| (self.adj[v].and(&cand).count(), std::cmp::Reverse(v)))
            .expect("nonempty");
        let mut closed = self.adj[v].clone();
        closed.insert(v);

        current.push(v);
        self.expand(current, cand.and_not(&closed));
        current.pop();

        if self.adj[v].and(&cand).is_empty() {
            // An isolated candidate always belongs to some maximum set.
            return;
        }
        let mut without = cand;
        without.remove(v);
        self.expand(current, without);
    }
}

/// An independent set of maximum cardinality, found by exact
/// branch and bound.
pub fn max_independent_set(c: &WeightComponent) -> Result<Vec<OffsetTuple>> {
    let n = c.vertex_count();
    if n > MIS_MAX_VERTICES {
        return Err(Error::ComponentTooLarge {
            vertices: n,
            limit: MIS_MAX_VERTICES,
        });
    }
    let adj = (0..n)
        .map(|i| {
            let mut b = Bits::empty(n);
            for &j in c.neighbors(i) {
                b.insert(j);
            }
            b
        })
        .collect();
    let mut search = MisSearch {
        adj,
        best: Vec::new(),
    };
    search.expand(&mut Vec::new(), Bits::full(n));
    let mut best = search.best;
    best.sort_unstable();
    Ok(best.into_iter().map(|i| c.vertices[i].clone()).collect())
}
