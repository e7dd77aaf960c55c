use serde::Serialize;

use crate::digraph::{Digraph, WeightFn};
use crate::exact::{maximal_stable_sets, StableSetFamily};
use crate::limits::{CapError, Limits};
use crate::rational::{self, Rational};
use crate::vertex_set::VertexSet;

use super::simplex::{solve_lp, LpProblem, Optimum, Relation};

fn indicator(n: usize, s: &VertexSet) -> Vec<Rational> {
    (0..n)
        .map(|x| if s.contains(x) { rational::one() } else { rational::zero() })
        .collect()
}

fn negated(row: Vec<Rational>) -> Vec<Rational> {
    row.into_iter().map(|q| -q).collect()
}

fn solve_optimal(lp: &LpProblem) -> Optimum {
    let opt = solve_lp(lp)
        .into_optimum()
        .expect("program is feasible and bounded");
    debug_assert_eq!(opt.verify(lp), Ok(()));
    opt
}

/// minimize g(V) s.t. g(N⁻[v]) ≥ 1 for every v, g ≥ 0.
pub fn gamma_star_problem(g: &Digraph) -> LpProblem {
    let n = g.n();
    let mut lp = LpProblem::minimize(vec![rational::one(); n]);
    for v in g.vertices() {
        lp.add(indicator(n, &g.closed_in(v)), Relation::Ge, rational::one())
            .unwrap();
    }
    lp
}

/// The packing dual of [`gamma_star_problem`], as a minimization:
/// minimize −y(V) s.t. −y(N⁺[x]) ≥ −1 for every x, y ≥ 0.
pub fn gamma_star_packing_problem(g: &Digraph) -> LpProblem {
    let n = g.n();
    let mut lp = LpProblem::minimize(vec![-rational::one(); n]);
    for x in g.vertices() {
        lp.add(negated(indicator(n, &g.closed_out(x))), Relation::Ge, -rational::one())
            .unwrap();
    }
    lp
}

/// γ*(G) with a minimum fractional dominating function and a packing
/// `y` (y ≥ 0, y(N⁺[x]) ≤ 1) of equal value proving minimality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaStar {
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    pub g: WeightFn,
    pub packing: WeightFn,
}

/// Solves the packing side, whose slack basis is feasible from the start;
/// the covering solution is read off its dual multipliers.
pub fn gamma_star(g: &Digraph) -> GammaStar {
    let lp = gamma_star_packing_problem(g);
    let opt = solve_optimal(&lp);
    let value = -opt.value;
    let cover = WeightFn::new(opt.duals).expect("multipliers of >= rows are nonnegative");
    let packing = WeightFn::new(opt.assignment).unwrap();
    assert_eq!(cover.first_undominated(g), None);
    assert_eq!(cover.total(), value);
    GammaStar {
        value,
        g: cover,
        packing,
    }
}

/// n / (Δ⁺ + 1), a lower bound on γ*.
pub fn max_outdegree_lower_bound(g: &Digraph) -> Rational {
    Rational::new(g.n().into(), (g.max_out_degree() + 1).into())
}

/// p ≥ 0, p(V) = 1, p(N⁻(v)) − p(N⁺(v)) ≥ 0 for every v, zero objective.
pub fn farkas_problem(g: &Digraph) -> LpProblem {
    let n = g.n();
    let mut lp = LpProblem::minimize(vec![rational::zero(); n]);
    lp.add(vec![rational::one(); n], Relation::Eq, rational::one())
        .unwrap();
    for v in g.vertices() {
        let row = (0..n)
            .map(|x| {
                if g.has_arc(x, v) {
                    rational::one()
                } else if g.has_arc(v, x) {
                    -rational::one()
                } else {
                    rational::zero()
                }
            })
            .collect();
        lp.add(row, Relation::Ge, rational::zero()).unwrap();
    }
    lp
}

/// A probability distribution `p` with p(N⁻(v)) ≥ p(N⁺(v)) at every vertex.
pub fn farkas_weights(g: &Digraph) -> WeightFn {
    assert!(g.n() > 0, "farkas weights need a vertex");
    let opt = solve_optimal(&farkas_problem(g));
    WeightFn::new(opt.assignment).unwrap()
}

/// Exact check of the Farkas conditions.
pub fn is_farkas(g: &Digraph, p: &WeightFn) -> bool {
    p.total() == rational::one()
        && g
            .vertices()
            .all(|v| p.weight_sum(g.in_neighbors(v)) >= p.weight_sum(g.out_neighbors(v)))
}

/// Row `v`, column `S` of the cover matrix: 1 iff v ∈ N⁺[S].
pub fn cover_matrix(g: &Digraph, family: &StableSetFamily) -> Vec<Vec<bool>> {
    let closed: Vec<VertexSet> = family.sets().iter().map(|s| g.out_closed(s)).collect();
    g.vertices()
        .map(|v| closed.iter().map(|c| c.contains(v)).collect())
        .collect()
}

fn bool_row(row: impl Iterator<Item = bool>) -> Vec<Rational> {
    row.map(|b| if b { rational::one() } else { rational::zero() })
        .collect()
}

/// minimize 1ᵀz s.t. Az ≥ 1, z ≥ 0.
pub fn stable_lp_problem(g: &Digraph, family: &StableSetFamily) -> LpProblem {
    let a = cover_matrix(g, family);
    let mut lp = LpProblem::minimize(vec![rational::one(); family.len()]);
    for row in &a {
        lp.add(bool_row(row.iter().copied()), Relation::Ge, rational::one())
            .unwrap();
    }
    lp
}

/// maximize 1ᵀw s.t. Aᵀw ≤ 1, w ≥ 0, written as minimize −1ᵀw s.t. −Aᵀw ≥ −1.
pub fn stable_lp_dual_problem(g: &Digraph, family: &StableSetFamily) -> LpProblem {
    let a = cover_matrix(g, family);
    let mut lp = LpProblem::minimize(vec![-rational::one(); g.n()]);
    for s in 0..family.len() {
        let col = bool_row(a.iter().map(|row| row[s]));
        lp.add(negated(col), Relation::Ge, -rational::one()).unwrap();
    }
    lp
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableLpSolution {
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    pub family: StableSetFamily,
    /// Weight per member of `family`, in the same order.
    #[serde(with = "rational::serde_str::vec")]
    pub z: Vec<Rational>,
}

pub fn stable_lp_value(g: &Digraph, limits: &Limits) -> Result<StableLpSolution, CapError> {
    let family = maximal_stable_sets(g, limits)?;
    let opt = solve_optimal(&stable_lp_problem(g, &family));
    Ok(StableLpSolution {
        value: opt.value,
        family,
        z: opt.assignment,
    })
}

pub fn stable_lp_dual_value(g: &Digraph, limits: &Limits) -> Result<Rational, CapError> {
    let family = maximal_stable_sets(g, limits)?;
    let opt = solve_optimal(&stable_lp_dual_problem(g, &family));
    Ok(-opt.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{directed_cycle, random_digraph, rotational_tournament, Seed};
    use crate::rational::{int, ratio};

    #[test]
    fn gamma_star_examples() {
        assert_eq!(gamma_star(&Digraph::edgeless(1)).value, int(1));
        let c3 = gamma_star(&directed_cycle(3).unwrap());
        assert_eq!(c3.value, ratio(3, 2));
        assert_eq!(gamma_star(&rotational_tournament(3).unwrap()).value, ratio(5, 3));
        assert_eq!(gamma_star(&Digraph::edgeless(4)).value, int(4));
    }

    #[test]
    fn both_covering_routes_agree() {
        for i in 0..60u64 {
            let g = random_digraph(1 + (i % 12) as usize, &ratio(1, 2), Seed(i)).unwrap();
            let direct = solve_lp(&gamma_star_problem(&g)).into_optimum().unwrap();
            let via_packing = gamma_star(&g);
            assert_eq!(direct.value, via_packing.value);
            // the packing is a feasible dual of the covering program
            for x in g.vertices() {
                assert!(via_packing.packing.weight_sum(&g.closed_out(x)) <= int(1));
            }
            assert_eq!(via_packing.packing.total(), via_packing.value);
        }
    }

    #[test]
    fn outdegree_bound_examples() {
        assert_eq!(max_outdegree_lower_bound(&directed_cycle(3).unwrap()), ratio(3, 2));
        for r in 2..6 {
            let t = rotational_tournament(r).unwrap();
            assert_eq!(max_outdegree_lower_bound(&t), ratio(2 * r as i64 - 1, r as i64));
        }
        assert_eq!(max_outdegree_lower_bound(&Digraph::edgeless(7)), int(7));
    }

    #[test]
    fn farkas_examples() {
        assert_eq!(farkas_weights(&Digraph::edgeless(1)).values(), &[int(1)]);
        let c3 = directed_cycle(3).unwrap();
        let p = farkas_weights(&c3);
        assert_eq!(p.values(), &[ratio(1, 3), ratio(1, 3), ratio(1, 3)]);
        let e2 = Digraph::edgeless(2);
        assert!(is_farkas(&e2, &farkas_weights(&e2)));
    }

    #[test]
    fn farkas_feasibility_survives_scaling() {
        let g = random_digraph(8, &ratio(1, 2), Seed(11)).unwrap();
        let p = farkas_weights(&g);
        let scaled = p.map(|q| q * int(7));
        for v in g.vertices() {
            assert!(scaled.weight_sum(g.in_neighbors(v)) >= scaled.weight_sum(g.out_neighbors(v)));
        }
        assert!(!is_farkas(&g, &scaled));
    }

    #[test]
    fn stable_lp_examples() {
        let lim = Limits::default();
        let one = Digraph::edgeless(1);
        assert_eq!(stable_lp_value(&one, &lim).unwrap().value, int(1));
        assert_eq!(stable_lp_dual_value(&one, &lim).unwrap(), int(1));
        let c3 = directed_cycle(3).unwrap();
        let sol = stable_lp_value(&c3, &lim).unwrap();
        assert_eq!(sol.value, ratio(3, 2));
        assert_eq!(sol.z, vec![ratio(1, 2); 3]);
        assert_eq!(stable_lp_dual_value(&c3, &lim).unwrap(), ratio(3, 2));
        let e2 = Digraph::edgeless(2);
        assert_eq!(stable_lp_value(&e2, &lim).unwrap().value, int(1));
        assert_eq!(stable_lp_dual_value(&e2, &lim).unwrap(), int(1));
    }
}
