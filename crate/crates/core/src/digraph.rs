//! Simple loopless digraphs with bit-set adjacency, and vertex weightings.

use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::rational::{self, Rational};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("loop arc at vertex {0}")]
    LoopArc(usize),
    #[error("arc {0}->{1} repeats or is antiparallel to an existing arc")]
    DuplicateOrAntiparallel(usize, usize),
    #[error("arc {0}->{1} has an endpoint outside 0..{2}")]
    OutOfRange(usize, usize, usize),
}

/// Immutable simple loopless digraph on vertices `0..n`.
///
/// Between any two vertices there is at most one arc, in one direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out_adj: Vec<VertexSet>,
    in_adj: Vec<VertexSet>,
}

impl Digraph {
    pub fn new<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = DigraphBuilder::new(n);
        for (u, v) in arcs {
            b.add_arc(u, v)?;
        }
        Ok(b.build())
    }

    pub fn edgeless(n: usize) -> Self {
        Digraph {
            n,
            out_adj: vec![VertexSet::empty(n); n],
            in_adj: vec![VertexSet::empty(n); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.n)
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out_adj[u].contains(v)
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    pub fn arc_count(&self) -> usize {
        self.out_adj.iter().map(VertexSet::len).sum()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices()
            .flat_map(move |u| self.out_adj[u].iter().map(move |v| (u, v)))
    }

    /// N⁺(v)
    pub fn out_neighbors(&self, v: usize) -> &VertexSet {
        &self.out_adj[v]
    }

    /// N⁻(v)
    pub fn in_neighbors(&self, v: usize) -> &VertexSet {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    pub fn max_out_degree(&self) -> usize {
        self.vertices().map(|v| self.out_degree(v)).max().unwrap_or(0)
    }

    /// N⁺[v]
    pub fn closed_out(&self, v: usize) -> VertexSet {
        let mut s = self.out_adj[v].clone();
        s.insert(v);
        s
    }

    /// N⁻[v]
    pub fn closed_in(&self, v: usize) -> VertexSet {
        let mut s = self.in_adj[v].clone();
        s.insert(v);
        s
    }

    /// Neighbors in the underlying undirected graph.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.out_adj[v].union(&self.in_adj[v])
    }

    /// N⁺[S] = S ∪ ⋃_{v∈S} N⁺(v).
    pub fn out_closed(&self, s: &VertexSet) -> VertexSet {
        let mut res = s.clone();
        for v in s {
            res.union_with(&self.out_adj[v]);
        }
        res
    }

    /// N°(v): vertices joined to `v` by no arc in either direction.
    pub fn indep_neighborhood(&self, v: usize) -> VertexSet {
        let mut s = self.neighbors(v);
        s.insert(v);
        s.complement()
    }

    /// True iff no arc joins two members of `s`.
    pub fn is_stable(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| !self.out_adj[v].intersects(s))
    }

    pub fn is_tournament(&self) -> bool {
        self.vertices()
            .all(|v| self.neighbors(v).len() + 1 == self.n)
    }

    /// G[X], with `map[i]` the original label of new vertex `i`.
    pub fn induced_subgraph(&self, x: &VertexSet) -> (Digraph, Vec<usize>) {
        let map = x.to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let m = map.len();
        let mut out_adj = vec![VertexSet::empty(m); m];
        let mut in_adj = vec![VertexSet::empty(m); m];
        for (i, &u) in map.iter().enumerate() {
            for v in self.out_adj[u].intersection(x).iter() {
                let j = index[v];
                out_adj[i].insert(j);
                in_adj[j].insert(i);
            }
        }
        (Digraph { n: m, out_adj, in_adj }, map)
    }
}

/// Incremental construction with the same checks as [`Digraph::new`].
#[derive(Debug, Clone)]
pub struct DigraphBuilder {
    g: Digraph,
}

impl DigraphBuilder {
    pub fn new(n: usize) -> Self {
        DigraphBuilder {
            g: Digraph::edgeless(n),
        }
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let g = &mut self.g;
        if u >= g.n || v >= g.n {
            return Err(GraphError::OutOfRange(u, v, g.n));
        }
        if u == v {
            return Err(GraphError::LoopArc(u));
        }
        if g.out_adj[u].contains(v) || g.out_adj[v].contains(u) {
            return Err(GraphError::DuplicateOrAntiparallel(u, v));
        }
        g.out_adj[u].insert(v);
        g.in_adj[v].insert(u);
        Ok(())
    }

    pub fn build(self) -> Digraph {
        self.g
    }
}

/// Nonnegative rational weight per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFn {
    values: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("weight of vertex {vertex} is negative")]
pub struct NegativeWeight {
    pub vertex: usize,
}

impl WeightFn {
    pub fn new(values: Vec<Rational>) -> Result<Self, NegativeWeight> {
        match values.iter().position(Signed::is_negative) {
            Some(vertex) => Err(NegativeWeight { vertex }),
            None => Ok(WeightFn { values }),
        }
    }

    pub fn constant(n: usize, value: Rational) -> Self {
        assert!(!value.is_negative());
        WeightFn {
            values: vec![value; n],
        }
    }

    pub fn zeros(n: usize) -> Self {
        Self::constant(n, rational::zero())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: usize) -> &Rational {
        &self.values[v]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    /// p(X)
    pub fn weight_sum(&self, x: &VertexSet) -> Rational {
        x.iter().fold(rational::zero(), |acc, v| acc + &self.values[v])
    }

    pub fn total(&self) -> Rational {
        self.values.iter().fold(rational::zero(), |acc, q| acc + q)
    }

    /// Weights of the vertices listed in `map`, in that order.
    pub fn restrict(&self, map: &[usize]) -> WeightFn {
        WeightFn {
            values: map.iter().map(|&v| self.values[v].clone()).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Rational) -> Rational) -> WeightFn {
        WeightFn::new(self.values.iter().map(f).collect()).expect("mapped weight negative")
    }

    /// Every vertex `v` satisfies g(N⁻[v]) ≥ 1; returns the first vertex that fails.
    pub fn first_undominated(&self, g: &Digraph) -> Option<usize> {
        let one = rational::one();
        g.vertices().find(|&v| self.weight_sum(&g.closed_in(v)) < one)
    }
}

impl Serialize for WeightFn {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        rational::serde_str::vec::serialize(&self.values, s)
    }
}
