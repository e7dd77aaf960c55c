//! Exponential-time exact solvers: independence number, domination
//! number, maximal stable sets, and small structural predicates.

use serde::Serialize;

use crate::constructions::greedy_dominating_set;
use crate::digraph::Digraph;
use crate::limits::{CapError, Limits};
use crate::lp;
use crate::rational;
use crate::vertex_set::VertexSet;

/// Below this order domination is solved by plain subset enumeration.
const SUBSET_ENUMERATION_BELOW: usize = 20;

/// α(G) with a maximum stable set.
pub fn independence_number(g: &Digraph) -> (usize, VertexSet) {
    let compat: Vec<VertexSet> = g.vertices().map(|v| g.indep_neighborhood(v)).collect();
    let mut search = CliqueSearch {
        compat: &compat,
        best: VertexSet::empty(g.n()),
        best_len: 0,
    };
    let mut current = VertexSet::empty(g.n());
    search.expand(&mut current, 0, g.all());
    (search.best_len, search.best)
}

/// Maximum clique of the compatibility graph, i.e. a maximum stable set
/// of the digraph. Greedy colouring of the candidates bounds each branch.
struct CliqueSearch<'a> {
    compat: &'a [VertexSet],
    best: VertexSet,
    best_len: usize,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, current: &mut VertexSet, size: usize, mut cand: VertexSet) {
        if cand.is_empty() {
            if size > self.best_len {
                self.best_len = size;
                self.best = current.clone();
            }
            return;
        }
        let (order, colors) = self.color(&cand);
        for (&v, &c) in order.iter().zip(&colors).rev() {
            if size + c <= self.best_len {
                return;
            }
            current.insert(v);
            self.expand(current, size + 1, cand.intersection(&self.compat[v]));
            current.remove(v);
            cand.remove(v);
        }
    }

    /// Candidates listed by colour class, with the running colour count.
    fn color(&self, cand: &VertexSet) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(cand.len());
        let mut colors = Vec::with_capacity(cand.len());
        let mut uncolored = cand.clone();
        let mut k = 0;
        while !uncolored.is_empty() {
            k += 1;
            let mut avail = uncolored.clone();
            while let Some(v) = avail.first() {
                // one class holds pairwise adjacent vertices
                avail.remove(v);
                avail.difference_with(&self.compat[v]);
                uncolored.remove(v);
                order.push(v);
                colors.push(k);
            }
        }
        (order, colors)
    }
}

pub fn is_dominating(g: &Digraph, s: &VertexSet) -> bool {
    g.out_closed(s).len() == g.n()
}

/// γ(G) with a minimum dominating set.
pub fn domination_number(g: &Digraph, limits: &Limits) -> Result<(usize, VertexSet), CapError> {
    let n = g.n();
    if n == 0 {
        return Ok((0, VertexSet::empty(0)));
    }
    let upper = greedy_dominating_set(g).dominating_set;
    if n < SUBSET_ENUMERATION_BELOW {
        for k in 1..upper.len() {
            if let Some(d) = first_dominating_subset(g, k) {
                return Ok((k, d));
            }
        }
        return Ok((upper.len(), upper));
    }
    let lower = lp::gamma_star(g).value;
    let start = rational::ceil(&lower)
        .try_into()
        .expect("γ* is at most n");
    let mut search = DomSearch::new(g, limits);
    for k in start..upper.len() {
        if let Some(d) = search.find(k)? {
            return Ok((d.len(), d));
        }
    }
    Ok((upper.len(), upper))
}

/// Lexicographically first `k`-subset that dominates.
fn first_dominating_subset(g: &Digraph, k: usize) -> Option<VertexSet> {
    let n = g.n();
    let closed: Vec<VertexSet> = g.vertices().map(|v| g.closed_out(v)).collect();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut covered = VertexSet::empty(n);
        for &v in &idx {
            covered.union_with(&closed[v]);
        }
        if covered.len() == n {
            return Some(VertexSet::from_members(n, idx));
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Outcome of a bounded dominating-set search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominationBound {
    /// Every dominating set has at least this many vertices.
    pub lower_bound: usize,
    /// Set when the search met a dominating set, which is then minimum.
    pub witness: Option<VertexSet>,
}

/// Refutes dominating sets of size `1..=max_size` one size at a time.
/// Stops at the first size admitting one, which is then γ exactly.
pub fn domination_lower_bound(
    g: &Digraph,
    max_size: usize,
    limits: &Limits,
) -> Result<DominationBound, CapError> {
    if g.n() == 0 {
        return Ok(DominationBound {
            lower_bound: 0,
            witness: Some(VertexSet::empty(0)),
        });
    }
    let mut search = DomSearch::new(g, limits);
    for k in 1..=max_size {
        if let Some(d) = search.find(k)? {
            return Ok(DominationBound {
                lower_bound: d.len(),
                witness: Some(d),
            });
        }
    }
    Ok(DominationBound {
        lower_bound: max_size + 1,
        witness: None,
    })
}

/// Branches on the in-neighbourhood of the lowest undominated vertex.
struct DomSearch<'a> {
    g: &'a Digraph,
    closed_out: Vec<VertexSet>,
    closed_in: Vec<VertexSet>,
    reach: usize,
    nodes: u64,
    limit: u64,
}

impl<'a> DomSearch<'a> {
    fn new(g: &'a Digraph, limits: &Limits) -> Self {
        DomSearch {
            g,
            closed_out: g.vertices().map(|v| g.closed_out(v)).collect(),
            closed_in: g.vertices().map(|v| g.closed_in(v)).collect(),
            reach: g.max_out_degree() + 1,
            nodes: 0,
            limit: limits.max_search_nodes,
        }
    }

    /// A dominating set of at most `k` vertices, if one exists.
    fn find(&mut self, k: usize) -> Result<Option<VertexSet>, CapError> {
        let mut chosen = Vec::with_capacity(k);
        let undominated = self.g.all();
        if self.branch(&undominated, k, &mut chosen)? {
            Ok(Some(VertexSet::from_members(self.g.n(), chosen)))
        } else {
            Ok(None)
        }
    }

    fn branch(
        &mut self,
        undominated: &VertexSet,
        budget: usize,
        chosen: &mut Vec<usize>,
    ) -> Result<bool, CapError> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(CapError::BudgetExceeded {
                what: "dominating-set search nodes",
                limit: self.limit,
            });
        }
        let Some(v) = undominated.first() else {
            return Ok(true);
        };
        if budget == 0 || undominated.len() > budget * self.reach {
            return Ok(false);
        }
        for u in self.closed_in[v].clone().iter() {
            chosen.push(u);
            let rest = undominated.difference(&self.closed_out[u]);
            if self.branch(&rest, budget - 1, chosen)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
}

/// All maximal stable sets, ordered lexicographically by sorted members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableSetFamily {
    sets: Vec<VertexSet>,
}

impl StableSetFamily {
    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

pub fn maximal_stable_sets(g: &Digraph, limits: &Limits) -> Result<StableSetFamily, CapError> {
    let compat: Vec<VertexSet> = g.vertices().map(|v| g.indep_neighborhood(v)).collect();
    let mut out = Vec::new();
    let mut current = VertexSet::empty(g.n());
    bron_kerbosch(
        &compat,
        &mut current,
        g.all(),
        VertexSet::empty(g.n()),
        &mut out,
        limits.max_stable_sets,
    )?;
    let mut keyed: Vec<(Vec<usize>, VertexSet)> = out.into_iter().map(|s| (s.to_vec(), s)).collect();
    keyed.sort();
    Ok(StableSetFamily {
        sets: keyed.into_iter().map(|(_, s)| s).collect(),
    })
}

fn bron_kerbosch(
    compat: &[VertexSet],
    current: &mut VertexSet,
    mut cand: VertexSet,
    mut excluded: VertexSet,
    out: &mut Vec<VertexSet>,
    cap: usize,
) -> Result<(), CapError> {
    if cand.is_empty() {
        if excluded.is_empty() {
            if out.len() == cap {
                return Err(CapError::TooLarge {
                    what: "maximal stable set family",
                    limit: cap as u64,
                });
            }
            out.push(current.clone());
        }
        return Ok(());
    }
    // Tomita pivot: maximize |cand ∩ compat(u)| over cand ∪ excluded.
    let pivot = cand
        .union(&excluded)
        .iter()
        .max_by_key(|&u| (cand.intersection_len(&compat[u]), std::cmp::Reverse(u)))
        .expect("nonempty");
    let branch = cand.difference(&compat[pivot]);
    for v in branch.iter() {
        current.insert(v);
        bron_kerbosch(
            compat,
            current,
            cand.intersection(&compat[v]),
            excluded.intersection(&compat[v]),
            out,
            cap,
        )?;
        current.remove(v);
        cand.remove(v);
        excluded.insert(v);
    }
    Ok(())
}

/// Stable, and every outside vertex is adjacent to a member.
pub fn is_maximal_stable(g: &Digraph, s: &VertexSet) -> bool {
    g.is_stable(s)
        && g
            .vertices()
            .filter(|&v| !s.contains(v))
            .all(|v| g.neighbors(v).intersects(s))
}

/// True iff some `u → v → w → u` exists.
pub fn has_directed_triangle(g: &Digraph) -> bool {
    g.arcs()
        .any(|(u, v)| g.out_neighbors(v).intersects(g.in_neighbors(u)))
}
