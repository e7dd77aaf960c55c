//! Constructive procedures: light vertices, half covers, the greedy
//! logarithmic dominating set, and two fractional dominating functions
//! of total weight at most 2α.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::digraph::{Digraph, WeightFn};
use crate::exact::independence_number;
use crate::limits::{CapError, Limits};
use crate::lp::{farkas_weights, stable_lp_value};
use crate::rational::{self, Rational};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("the digraph has no vertices")]
    EmptyGraph,
    #[error("weights do not dominate vertex {vertex}")]
    NotFeasible { vertex: usize },
    #[error("weight function has {found} entries for {expected} vertices")]
    Dimension { found: usize, expected: usize },
    #[error(transparent)]
    Cap(#[from] CapError),
}

/// Integer weights proportional to `p`; every comparison done by the
/// constructions is invariant under positive scaling.
fn integer_weights(p: &WeightFn) -> Vec<BigInt> {
    let lcm = p
        .values()
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    p.values()
        .iter()
        .map(|q| q.numer() * (&lcm / q.denom()))
        .collect()
}

fn int_sum(w: &[BigInt], s: &VertexSet) -> BigInt {
    s.iter().fold(BigInt::zero(), |acc, v| acc + &w[v])
}

fn masked_sum(w: &[BigInt], s: &VertexSet, active: &VertexSet) -> BigInt {
    s.iter()
        .filter(|&v| active.contains(v))
        .fold(BigInt::zero(), |acc, v| acc + &w[v])
}

fn check_dim(g: &Digraph, p: &WeightFn) -> Result<(), ConstructionError> {
    if p.len() != g.n() {
        return Err(ConstructionError::Dimension {
            found: p.len(),
            expected: g.n(),
        });
    }
    Ok(())
}

/// Lowest-index v of `active` with p(N⁻(v)) ≤ p(N⁺(v)) inside G[active].
fn light_vertex_in(g: &Digraph, w: &[BigInt], active: &VertexSet) -> Option<usize> {
    active.iter().find(|&v| {
        masked_sum(w, g.in_neighbors(v), active) <= masked_sum(w, g.out_neighbors(v), active)
    })
}

/// Lowest-index vertex with p(N⁻(v)) ≤ p(N⁺(v)). One always exists.
pub fn light_vertex(g: &Digraph, p: &WeightFn) -> Result<usize, ConstructionError> {
    check_dim(g, p)?;
    if g.n() == 0 {
        return Err(ConstructionError::EmptyGraph);
    }
    let v = light_vertex_in(g, &integer_weights(p), &g.all());
    Ok(v.expect("every nonempty digraph has a light vertex"))
}

/// Stable set inside G[active] covering at least half of p(active):
/// take a light vertex, then repeat inside its independent neighbourhood.
fn half_cover_in(g: &Digraph, w: &[BigInt], mut active: VertexSet) -> VertexSet {
    let mut s = VertexSet::empty(g.n());
    while !int_sum(w, &active).is_zero() {
        let v = light_vertex_in(g, w, &active).expect("active set is nonempty");
        s.insert(v);
        active.intersect_with(&g.indep_neighborhood(v));
    }
    s
}

/// A stable S with p(N⁺[S]) ≥ p(V)/2. Returns ∅ when p(V) = 0.
pub fn half_cover(g: &Digraph, p: &WeightFn) -> Result<VertexSet, ConstructionError> {
    check_dim(g, p)?;
    Ok(half_cover_in(g, &integer_weights(p), g.all()))
}

/// Greedily grows a stable set to a maximal one, lowest index first.
pub fn extend_to_maximal(g: &Digraph, s: &VertexSet) -> VertexSet {
    let mut s = s.clone();
    for v in g.vertices() {
        if !s.contains(v) && !g.neighbors(v).intersects(&s) {
            s.insert(v);
        }
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreedyRound {
    pub stable: VertexSet,
    /// Vertices first dominated in this round.
    pub covered: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreedyTrace {
    pub rounds: Vec<GreedyRound>,
    pub dominating_set: VertexSet,
}

impl GreedyTrace {
    pub fn max_round_size(&self) -> usize {
        self.rounds.iter().map(|r| r.stable.len()).max().unwrap_or(0)
    }
}

/// ⌈log₂(n + 1)⌉, the round bound of [`greedy_dominating_set`].
pub fn log2_rounds(n: usize) -> usize {
    (usize::BITS - n.leading_zeros()) as usize
}

/// Repeatedly half-covers the undominated vertices with unit weights and
/// removes what the chosen stable set dominates.
pub fn greedy_dominating_set(g: &Digraph) -> GreedyTrace {
    let unit = vec![BigInt::one(); g.n()];
    let mut remaining = g.all();
    let mut rounds = Vec::new();
    let mut dominating_set = g.empty_set();
    while !remaining.is_empty() {
        let stable = half_cover_in(g, &unit, remaining.clone());
        let covered = g.out_closed(&stable).intersection(&remaining);
        remaining.difference_with(&covered);
        dominating_set.union_with(&stable);
        rounds.push(GreedyRound { stable, covered });
    }
    GreedyTrace {
        rounds,
        dominating_set,
    }
}

/// A fractional dominating function with its guaranteed bound 2α(G).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FracDomWitness {
    pub g: WeightFn,
    #[serde(with = "rational::serde_str")]
    pub certified_bound: Rational,
}

/// Builds g(x) = 2p(x) + Σ_{y ∈ N°(x)} g_y(x)·p(y), with p a Farkas
/// distribution and g_y built the same way on G[N°(y)].
pub fn frac_dom_recursive(g: &Digraph) -> Result<FracDomWitness, ConstructionError> {
    if g.n() == 0 {
        return Err(ConstructionError::EmptyGraph);
    }
    let mut builder = Recursive {
        g,
        memo: HashMap::new(),
    };
    let (weights, alpha) = builder.build(&g.all());
    let certified_bound = rational::int(2 * alpha as i64);
    let g_fn = WeightFn::new(weights).expect("construction is nonnegative");
    debug_assert!(g_fn.total() <= certified_bound);
    Ok(FracDomWitness {
        g: g_fn,
        certified_bound,
    })
}

struct Recursive<'a> {
    g: &'a Digraph,
    /// Keyed by the vertex set of the subgraph; weights over all of V.
    memo: HashMap<VertexSet, (Vec<Rational>, usize)>,
}

impl Recursive<'_> {
    fn build(&mut self, x: &VertexSet) -> (Vec<Rational>, usize) {
        if let Some(hit) = self.memo.get(x) {
            return hit.clone();
        }
        let g = self.g;
        let (sub, map) = g.induced_subgraph(x);
        let (alpha, _) = independence_number(&sub);
        let p_local = farkas_weights(&sub);
        let mut p = vec![rational::zero(); g.n()];
        for (i, &v) in map.iter().enumerate() {
            p[v] = p_local.get(i).clone();
        }
        let two = rational::int(2);
        let mut out = vec![rational::zero(); g.n()];
        for &v in &map {
            out[v] = &two * &p[v];
        }
        for &y in &map {
            let inner = g.indep_neighborhood(y).intersection(x);
            if inner.is_empty() || p[y].is_zero() {
                continue;
            }
            let (g_y, alpha_y) = self.build(&inner);
            assert!(
                alpha_y < alpha,
                "independent neighbourhood must lose independence"
            );
            for v in &inner {
                out[v] += &g_y[v] * &p[y];
            }
        }
        self.memo.insert(x.clone(), (out.clone(), alpha));
        (out, alpha)
    }
}

/// g(v) = Σ_{S ∋ v} z(S) for an optimal z of the stable-set covering program.
pub fn frac_dom_from_lp(g: &Digraph, limits: &Limits) -> Result<FracDomWitness, ConstructionError> {
    if g.n() == 0 {
        return Err(ConstructionError::EmptyGraph);
    }
    let sol = stable_lp_value(g, limits)?;
    let mut weights = vec![rational::zero(); g.n()];
    for (s, z) in sol.family.sets().iter().zip(&sol.z) {
        for v in s {
            weights[v] += z;
        }
    }
    let (alpha, _) = independence_number(g);
    Ok(FracDomWitness {
        g: WeightFn::new(weights).expect("z is nonnegative"),
        certified_bound: rational::int(2 * alpha as i64),
    })
}

/// min(g(v), 1) at every vertex; still dominating.
pub fn clip_to_one(graph: &Digraph, g: &WeightFn) -> Result<WeightFn, ConstructionError> {
    check_dim(graph, g)?;
    if let Some(vertex) = g.first_undominated(graph) {
        return Err(ConstructionError::NotFeasible { vertex });
    }
    let one = rational::one();
    Ok(g.map(|q| if q > &one { one.clone() } else { q.clone() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{directed_cycle, random_digraph, rotational_tournament, Seed};
    use crate::rational::{int, ratio};

    fn set(n: usize, xs: &[usize]) -> VertexSet {
        VertexSet::from_members(n, xs.iter().copied())
    }

    fn single_arc() -> Digraph {
        Digraph::new(2, [(0, 1)]).unwrap()
    }

    #[test]
    fn light_vertex_examples() {
        for r in 2..6 {
            let t = rotational_tournament(r).unwrap();
            assert_eq!(light_vertex(&t, &WeightFn::constant(t.n(), int(1))).unwrap(), 0);
        }
        let p = WeightFn::constant(2, int(1));
        assert_eq!(light_vertex(&single_arc(), &p).unwrap(), 0);
        let rev = Digraph::new(2, [(1, 0)]).unwrap();
        assert_eq!(light_vertex(&rev, &p).unwrap(), 1);
        assert_eq!(light_vertex(&Digraph::edgeless(3), &WeightFn::zeros(3)).unwrap(), 0);
        assert_eq!(
            light_vertex(&Digraph::edgeless(0), &WeightFn::zeros(0)),
            Err(ConstructionError::EmptyGraph)
        );
    }

    #[test]
    fn half_cover_examples() {
        let c3 = directed_cycle(3).unwrap();
        assert_eq!(half_cover(&c3, &WeightFn::constant(3, int(1))).unwrap(), set(3, &[0]));
        let c5 = directed_cycle(5).unwrap();
        let s = half_cover(&c5, &WeightFn::constant(5, int(1))).unwrap();
        assert_eq!(s, set(5, &[0, 2]));
        assert_eq!(c5.out_closed(&s).len(), 4);
        let e2 = Digraph::edgeless(2);
        assert_eq!(half_cover(&e2, &WeightFn::constant(2, int(1))).unwrap(), set(2, &[0, 1]));
        assert!(half_cover(&c5, &WeightFn::zeros(5)).unwrap().is_empty());
        assert!(matches!(
            half_cover(&c5, &WeightFn::zeros(4)),
            Err(ConstructionError::Dimension { .. })
        ));
    }

    #[test]
    fn half_cover_extends_to_maximal() {
        let g = random_digraph(12, &ratio(1, 2), Seed(4)).unwrap();
        let p = WeightFn::constant(12, int(1));
        let s = half_cover(&g, &p).unwrap();
        let m = extend_to_maximal(&g, &s);
        assert!(crate::exact::is_maximal_stable(&g, &m));
        assert!(s.is_subset(&m));
        assert!(p.weight_sum(&g.out_closed(&m)) * int(2) >= p.total());
    }

    #[test]
    fn greedy_examples() {
        let c3 = greedy_dominating_set(&directed_cycle(3).unwrap());
        assert_eq!(c3.rounds.len(), 2);
        assert_eq!(c3.dominating_set.len(), 2);
        let c5 = greedy_dominating_set(&directed_cycle(5).unwrap());
        assert_eq!(c5.dominating_set, set(5, &[0, 2, 4]));
        assert_eq!(c5.rounds.len(), 2);
        assert_eq!(c5.rounds[0].stable, set(5, &[0, 2]));
        assert_eq!(c5.rounds[1].stable, set(5, &[4]));
        let one = greedy_dominating_set(&Digraph::edgeless(1));
        assert_eq!(one.rounds.len(), 1);
        assert_eq!(one.dominating_set, set(1, &[0]));
    }

    #[test]
    fn log_rounds() {
        assert_eq!(log2_rounds(1), 1);
        assert_eq!(log2_rounds(3), 2);
        assert_eq!(log2_rounds(4), 3);
        assert_eq!(log2_rounds(7), 3);
        assert_eq!(log2_rounds(1024), 11);
    }

    #[test]
    fn recursive_examples() {
        let c3 = frac_dom_recursive(&directed_cycle(3).unwrap()).unwrap();
        assert_eq!(c3.g.values(), &[ratio(2, 3), ratio(2, 3), ratio(2, 3)]);
        assert_eq!(c3.certified_bound, int(2));
        let one = frac_dom_recursive(&Digraph::edgeless(1)).unwrap();
        assert_eq!(one.g.values(), &[int(2)]);
        let e2 = Digraph::edgeless(2);
        let w = frac_dom_recursive(&e2).unwrap();
        assert!(w.g.total() <= int(4));
        assert_eq!(w.g.first_undominated(&e2), None);
    }

    #[test]
    fn from_lp_examples() {
        let lim = Limits::default();
        let c3 = frac_dom_from_lp(&directed_cycle(3).unwrap(), &lim).unwrap();
        assert_eq!(c3.g.values(), &[ratio(1, 2), ratio(1, 2), ratio(1, 2)]);
        let e2 = frac_dom_from_lp(&Digraph::edgeless(2), &lim).unwrap();
        assert_eq!(e2.g.values(), &[int(1), int(1)]);
        assert_eq!(e2.certified_bound, int(4));
        let one = frac_dom_from_lp(&Digraph::edgeless(1), &lim).unwrap();
        assert_eq!(one.g.values(), &[int(1)]);
    }

    #[test]
    fn clip_examples() {
        let one = Digraph::edgeless(1);
        assert_eq!(clip_to_one(&one, &WeightFn::constant(1, int(2))).unwrap().values(), &[int(1)]);
        let c3 = directed_cycle(3).unwrap();
        let half = WeightFn::constant(3, ratio(1, 2));
        assert_eq!(clip_to_one(&c3, &half).unwrap(), half);
        let arc = single_arc();
        let g = WeightFn::new(vec![ratio(3, 2), ratio(1, 4)]).unwrap();
        let clipped = clip_to_one(&arc, &g).unwrap();
        assert_eq!(clipped.values(), &[int(1), ratio(1, 4)]);
        assert_eq!(clipped.first_undominated(&arc), None);
        assert_eq!(
            clip_to_one(&c3, &WeightFn::constant(3, ratio(1, 3))),
            Err(ConstructionError::NotFeasible { vertex: 0 })
        );
    }
}
