//! Bound verification over instances and instance families.
//!
//! A [`BoundReport`] stores only exact measured values. Every pass/fail
//! flag is recomputed from those values whenever the report is queried
//! or serialized.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::constructions::{greedy_dominating_set, log2_rounds};
use crate::digraph::Digraph;
use crate::exact::{domination_lower_bound, domination_number, independence_number, DominationBound};
use crate::generators::{disjoint_union, random_digraph, random_tournament, rotational_tournament, Seed};
use crate::io::emit_dgf;
use crate::limits::{CapError, Limits};
use crate::lp::{gamma_star, max_outdegree_lower_bound};
use crate::rational::{self, Rational};
use crate::vertex_set::VertexSet;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HarnessError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Cap(#[from] CapError),
}

/// SHA-256 of the canonical DGF text.
pub fn digest(g: &Digraph) -> String {
    hex::encode(Sha256::digest(emit_dgf(g).as_bytes()))
}

fn rat(v: usize) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Exact values measured on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceRecord {
    pub id: String,
    pub n: usize,
    pub arcs: usize,
    pub digest: String,
    pub alpha: usize,
    pub alpha_witness: VertexSet,
    /// Absent when exact domination was not attempted.
    pub gamma: Option<usize>,
    pub gamma_witness: Option<VertexSet>,
    #[serde(with = "rational::serde_str")]
    pub gamma_star: Rational,
    pub gamma_star_witness_digest: String,
    pub max_out_degree: usize,
    pub greedy_rounds: usize,
    pub greedy_size: usize,
    pub greedy_max_round: usize,
    pub greedy_witness: VertexSet,
}

/// Quantities derived from an [`InstanceRecord`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Derived {
    pub log_bound: usize,
    pub two_alpha: usize,
    pub alpha_log_bound: usize,
    #[serde(with = "rational::serde_str")]
    pub outdegree_bound: Rational,
}

impl InstanceRecord {
    pub fn derived(&self) -> Derived {
        let log_bound = log2_rounds(self.n);
        Derived {
            log_bound,
            two_alpha: 2 * self.alpha,
            alpha_log_bound: self.alpha * log_bound,
            outdegree_bound: Rational::new(self.n.into(), (self.max_out_degree + 1).into()),
        }
    }

    /// Each inequality, `None` where it does not apply or was not measured.
    pub fn flags(&self) -> BTreeMap<&'static str, Option<bool>> {
        let d = self.derived();
        let mut f = BTreeMap::new();
        f.insert("frac_le_two_alpha", Some(self.gamma_star <= rat(d.two_alpha)));
        f.insert("frac_ge_outdegree_bound", Some(self.gamma_star >= d.outdegree_bound));
        f.insert("greedy_rounds_le_log", Some(self.greedy_rounds <= d.log_bound));
        f.insert("greedy_size_le_alpha_log", Some(self.greedy_size <= d.alpha_log_bound));
        f.insert(
            "greedy_size_le_rounds_max_round",
            Some(self.greedy_size <= self.greedy_rounds * self.greedy_max_round),
        );
        f.insert("gamma_le_alpha_log", self.gamma.map(|g| g <= d.alpha_log_bound));
        f.insert("gamma_ge_frac", self.gamma.map(|g| rat(g) >= self.gamma_star));
        f.insert(
            "gamma_le_alpha_squared_if_large_alpha",
            match self.gamma {
                Some(g) if self.alpha >= d.log_bound => Some(g <= self.alpha * self.alpha),
                _ => None,
            },
        );
        f
    }

    pub fn holds(&self) -> bool {
        self.flags().values().all(|f| f.unwrap_or(true))
    }
}

/// The sharpness family for one (k, ε).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TightnessRecord {
    pub k: usize,
    #[serde(with = "rational::serde_str")]
    pub eps: Rational,
    pub r: usize,
    pub instance_id: String,
    #[serde(with = "rational::serde_str")]
    pub gamma_star: Rational,
    pub alpha: usize,
}

impl TightnessRecord {
    /// k(2r − 1)/r
    pub fn expected_gamma_star(&self) -> Rational {
        Rational::new((self.k * (2 * self.r - 1)).into(), self.r.into())
    }

    pub fn flags(&self) -> BTreeMap<&'static str, Option<bool>> {
        let mut f = BTreeMap::new();
        f.insert("alpha_eq_k", Some(self.alpha == self.k));
        f.insert("frac_eq_formula", Some(self.gamma_star == self.expected_gamma_star()));
        f.insert("frac_gt_two_k_minus_eps", Some(self.gamma_star > rat(2 * self.k) - &self.eps));
        f
    }

    pub fn holds(&self) -> bool {
        self.flags().values().all(|f| f.unwrap_or(true))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BoundReport {
    pub records: Vec<InstanceRecord>,
    pub tightness: Vec<TightnessRecord>,
}

#[derive(Serialize)]
struct RecordView<'a> {
    #[serde(flatten)]
    record: &'a InstanceRecord,
    derived: Derived,
    flags: BTreeMap<&'static str, Option<bool>>,
}

#[derive(Serialize)]
struct TightnessView<'a> {
    #[serde(flatten)]
    record: &'a TightnessRecord,
    #[serde(with = "rational::serde_str")]
    expected_gamma_star: Rational,
    flags: BTreeMap<&'static str, Option<bool>>,
}

#[derive(Serialize)]
struct ReportView<'a> {
    schema_version: u32,
    all_hold: bool,
    records: Vec<RecordView<'a>>,
    tightness: Vec<TightnessView<'a>>,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.records.iter().all(InstanceRecord::holds)
            && self.tightness.iter().all(TightnessRecord::holds)
    }

    pub fn merge(&mut self, other: BoundReport) {
        self.records.extend(other.records);
        self.tightness.extend(other.tightness);
    }

    fn view(&self) -> ReportView<'_> {
        ReportView {
            schema_version: SCHEMA_VERSION,
            all_hold: self.holds(),
            records: self
                .records
                .iter()
                .map(|record| RecordView {
                    record,
                    derived: record.derived(),
                    flags: record.flags(),
                })
                .collect(),
            tightness: self
                .tightness
                .iter()
                .map(|record| TightnessView {
                    record,
                    expected_gamma_star: record.expected_gamma_star(),
                    flags: record.flags(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.view()).expect("report serializes") + "\n"
    }

    /// One row per instance record.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "id,n,arcs,alpha,gamma,gamma_star,two_alpha,alpha_log_bound,outdegree_bound,greedy_rounds,greedy_size,all_hold\n",
        );
        for r in &self.records {
            let d = r.derived();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                r.id,
                r.n,
                r.arcs,
                r.alpha,
                r.gamma.map(|g| g.to_string()).unwrap_or_default(),
                rational::format(&r.gamma_star),
                d.two_alpha,
                d.alpha_log_bound,
                rational::format(&d.outdegree_bound),
                r.greedy_rounds,
                r.greedy_size,
                r.holds()
            ));
        }
        out
    }
}

fn measure(id: &str, g: &Digraph, exact_gamma: bool, limits: &Limits) -> Result<InstanceRecord, CapError> {
    let (alpha, alpha_witness) = independence_number(g);
    let gs = gamma_star(g);
    let greedy = greedy_dominating_set(g);
    let (gamma, gamma_witness) = if exact_gamma {
        let (k, w) = domination_number(g, limits)?;
        (Some(k), Some(w))
    } else {
        (None, None)
    };
    Ok(InstanceRecord {
        id: id.to_string(),
        n: g.n(),
        arcs: g.arc_count(),
        digest: digest(g),
        alpha,
        alpha_witness,
        gamma,
        gamma_witness,
        gamma_star: gs.value,
        gamma_star_witness_digest: hex::encode(Sha256::digest(
            crate::io::emit_weights(&gs.g).as_bytes(),
        )),
        max_out_degree: g.max_out_degree(),
        greedy_rounds: greedy.rounds.len(),
        greedy_size: greedy.dominating_set.len(),
        greedy_max_round: greedy.max_round_size(),
        greedy_witness: greedy.dominating_set,
    })
}

/// Measures α, γ, γ*, the greedy dominating set and Δ⁺ on `g`.
pub fn check_bounds(id: &str, g: &Digraph, limits: &Limits) -> Result<BoundReport, CapError> {
    Ok(BoundReport {
        records: vec![measure(id, g, true, limits)?],
        tightness: Vec::new(),
    })
}

/// [`check_bounds`] over many instances, in parallel, in input order.
pub fn check_bounds_batch(instances: &[(String, Digraph)], limits: &Limits) -> Result<BoundReport, CapError> {
    let records = instances
        .par_iter()
        .map(|(id, g)| measure(id, g, true, limits))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BoundReport {
        records,
        tightness: Vec::new(),
    })
}

/// r = ⌈k/ε⌉ + 1
pub fn tightness_r(k: usize, eps: &Rational) -> Result<usize, HarnessError> {
    if k == 0 || eps <= &rational::zero() {
        return Err(HarnessError::BadParameter(format!(
            "tightness needs k >= 1 and eps > 0, got k={k}, eps={}",
            rational::format(eps)
        )));
    }
    let c = rational::ceil(&(rat(k) / eps));
    usize::try_from(c + 1).map_err(|_| HarnessError::BadParameter("k/eps too large".into()))
}

/// Disjoint union of k rotational tournaments on 2r − 1 vertices each.
pub fn tightness_suite(k: usize, eps: &Rational, limits: &Limits) -> Result<BoundReport, HarnessError> {
    let r = tightness_r(k, eps)?;
    let n = k.saturating_mul(2 * r - 1);
    if n > limits.max_vertices {
        return Err(CapError::BudgetExceeded {
            what: "tightness instance vertices",
            limit: limits.max_vertices as u64,
        }
        .into());
    }
    let part = rotational_tournament(r).expect("r >= 2");
    let g = disjoint_union(&vec![part; k]);
    let id = format!("tight-k{k}-r{r}");
    let record = measure(&id, &g, false, limits)?;
    let tight = TightnessRecord {
        k,
        eps: eps.clone(),
        r,
        instance_id: id,
        gamma_star: record.gamma_star.clone(),
        alpha: record.alpha,
    };
    Ok(BoundReport {
        records: vec![record],
        tightness: vec![tight],
    })
}

/// Seeded random digraphs: instance `i` has `sizes(i)` vertices, arc
/// probability `probs[i % probs.len()]` and seed `seed.child(i)`.
pub fn random_family(
    count: usize,
    sizes: impl Fn(usize) -> usize,
    probs: &[Rational],
    seed: Seed,
) -> Vec<(String, Digraph)> {
    (0..count)
        .map(|i| {
            let n = sizes(i);
            let p = &probs[i % probs.len()];
            let s = seed.child(i as u64);
            let g = random_digraph(n, p, s).expect("probabilities lie in [0, 1]");
            (format!("random-{i}-n{n}-p{}-s{:016x}", rational::format(p), s.0), g)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: Seed,
    pub max_out_degree: usize,
    #[serde(with = "rational::serde_str")]
    pub gamma_star: Rational,
    pub domination: DominationBound,
}

impl TrialRecord {
    pub fn outdegree_bound(&self, n: usize) -> Rational {
        Rational::new(n.into(), (self.max_out_degree + 1).into())
    }
}

/// n/2 + 10·√(n ln n), the out-degree threshold of the concentration argument.
pub fn chernoff_threshold(n: usize) -> f64 {
    let n = n as f64;
    n / 2.0 + 10.0 * (n * n.ln()).sqrt()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentStats {
    pub n: usize,
    pub trials: Vec<TrialRecord>,
    pub seed: Seed,
    pub k_max: usize,
}

#[derive(Serialize)]
struct ExperimentView<'a> {
    schema_version: u32,
    n: usize,
    trial_count: usize,
    seed: Seed,
    k_max: usize,
    #[serde(with = "rational::serde_str")]
    mean_gamma_star: Rational,
    #[serde(with = "rational::serde_str")]
    min_gamma_star: Rational,
    #[serde(with = "rational::serde_str")]
    fraction_gamma_above_k_max: Rational,
    #[serde(with = "rational::serde_str")]
    fraction_within_chernoff_threshold: Rational,
    all_outdegree_bounds_hold: bool,
    trials: &'a [TrialRecord],
}

impl ExperimentStats {
    fn fraction(&self, pred: impl Fn(&TrialRecord) -> bool) -> Rational {
        let hits = self.trials.iter().filter(|t| pred(t)).count();
        Rational::new(hits.into(), self.trials.len().max(1).into())
    }

    pub fn mean_gamma_star(&self) -> Rational {
        let sum = self
            .trials
            .iter()
            .fold(rational::zero(), |acc, t| acc + &t.gamma_star);
        sum / rat(self.trials.len().max(1))
    }

    pub fn min_gamma_star(&self) -> Rational {
        self.trials
            .iter()
            .map(|t| t.gamma_star.clone())
            .min()
            .unwrap_or_else(rational::zero)
    }

    /// Share of trials certifying γ ≥ k.
    pub fn fraction_gamma_at_least(&self, k: usize) -> Rational {
        self.fraction(|t| t.domination.lower_bound >= k)
    }

    pub fn fraction_within_chernoff(&self) -> Rational {
        let threshold = chernoff_threshold(self.n);
        self.fraction(|t| (t.max_out_degree as f64) <= threshold)
    }

    /// γ* ≥ n/(Δ⁺ + 1) in every trial, exactly.
    pub fn outdegree_bounds_hold(&self) -> bool {
        self.trials
            .iter()
            .all(|t| t.gamma_star >= t.outdegree_bound(self.n))
    }

    pub fn to_json(&self) -> String {
        let view = ExperimentView {
            schema_version: SCHEMA_VERSION,
            n: self.n,
            trial_count: self.trials.len(),
            seed: self.seed,
            k_max: self.k_max,
            mean_gamma_star: self.mean_gamma_star(),
            min_gamma_star: self.min_gamma_star(),
            fraction_gamma_above_k_max: self.fraction_gamma_at_least(self.k_max + 1),
            fraction_within_chernoff_threshold: self.fraction_within_chernoff(),
            all_outdegree_bounds_hold: self.outdegree_bounds_hold(),
            trials: &self.trials,
        };
        serde_json::to_string_pretty(&view).expect("stats serialize") + "\n"
    }
}

/// Trial `t` uses the tournament `random_tournament(n, seed.child(t))`.
/// Domination is refuted exhaustively for every size up to `k_max`.
pub fn random_tournament_experiment(
    n: usize,
    trials: usize,
    seed: Seed,
    k_max: usize,
    limits: &Limits,
) -> Result<ExperimentStats, HarnessError> {
    if n == 0 {
        return Err(HarnessError::BadParameter("experiment needs n >= 1".into()));
    }
    if n > limits.max_vertices {
        return Err(CapError::BudgetExceeded {
            what: "experiment tournament vertices",
            limit: limits.max_vertices as u64,
        }
        .into());
    }
    let records = (0..trials)
        .into_par_iter()
        .map(|t| {
            let s = seed.child(t as u64);
            let g = random_tournament(n, s);
            let domination = domination_lower_bound(&g, k_max, limits)?;
            let gs = gamma_star(&g);
            debug_assert!(gs.value >= max_outdegree_lower_bound(&g));
            Ok(TrialRecord {
                trial: t,
                seed: s,
                max_out_degree: g.max_out_degree(),
                gamma_star: gs.value,
                domination,
            })
        })
        .collect::<Result<Vec<_>, CapError>>()?;
    Ok(ExperimentStats {
        n,
        trials: records,
        seed,
        k_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::directed_cycle;
    use crate::rational::{int, ratio};

    #[test]
    fn pentagon_record() {
        let rep = check_bounds("c5", &directed_cycle(5).unwrap(), &Limits::default()).unwrap();
        let r = &rep.records[0];
        assert_eq!((r.alpha, r.gamma), (2, Some(3)));
        assert_eq!(r.gamma_star, ratio(5, 2));
        assert_eq!(rat(r.gamma.unwrap()) / rat(r.alpha), ratio(3, 2));
        assert!(rep.holds());
    }

    #[test]
    fn three_cycle_is_tight_for_log_bound() {
        let rep = check_bounds("c3", &directed_cycle(3).unwrap(), &Limits::default()).unwrap();
        let r = &rep.records[0];
        assert_eq!((r.alpha, r.gamma), (1, Some(2)));
        assert_eq!(r.gamma_star, ratio(3, 2));
        assert_eq!(r.derived().alpha_log_bound, 2);
        assert!(rep.holds());
    }

    #[test]
    fn edgeless_record() {
        let rep = check_bounds("e4", &Digraph::edgeless(4), &Limits::default()).unwrap();
        let r = &rep.records[0];
        assert_eq!((r.alpha, r.gamma), (4, Some(4)));
        assert_eq!(r.gamma_star, int(4));
        assert_eq!(r.derived().two_alpha, 8);
        // α = 4 ≥ ⌈log₂5⌉ = 3, so γ ≤ α² applies
        assert_eq!(r.flags()["gamma_le_alpha_squared_if_large_alpha"], Some(true));
        assert!(rep.holds());
    }

    #[test]
    fn flags_follow_recorded_values() {
        let mut rep = check_bounds("c3", &directed_cycle(3).unwrap(), &Limits::default()).unwrap();
        rep.records[0].gamma_star = int(3);
        assert_eq!(rep.records[0].flags()["frac_le_two_alpha"], Some(false));
        assert!(!rep.holds());
        assert!(rep.to_json().contains("\"all_hold\": false"));
    }

    #[test]
    fn tightness_examples() {
        let lim = Limits::default();
        let cases = [(1, ratio(1, 4), 5, ratio(9, 5)), (2, ratio(1, 2), 5, ratio(18, 5)), (1, int(1), 2, ratio(3, 2))];
        for (k, eps, r, value) in cases {
            let rep = tightness_suite(k, &eps, &lim).unwrap();
            let t = &rep.tightness[0];
            assert_eq!(t.r, r);
            assert_eq!(t.gamma_star, value);
            assert!(rep.holds(), "{k} {eps}");
        }
        assert!(tightness_suite(1, &int(0), &lim).is_err());
        let small = Limits { max_vertices: 8, ..lim };
        assert!(matches!(
            tightness_suite(1, &ratio(1, 4), &small),
            Err(HarnessError::Cap(CapError::BudgetExceeded { .. }))
        ));
    }

    #[test]
    fn small_experiment() {
        let stats = random_tournament_experiment(9, 20, Seed(1), 2, &Limits::default()).unwrap();
        assert_eq!(stats.trials.len(), 20);
        assert!(stats.outdegree_bounds_hold());
        assert_eq!(stats.fraction_within_chernoff(), int(1));
        let again = random_tournament_experiment(9, 20, Seed(1), 2, &Limits::default()).unwrap();
        assert_eq!(stats.to_json(), again.to_json());
    }

    #[test]
    fn family_is_reproducible() {
        let probs = [ratio(1, 4), ratio(1, 2)];
        let a = random_family(10, |i| 1 + i % 5, &probs, Seed(3));
        let b = random_family(10, |i| 1 + i % 5, &probs, Seed(3));
        assert_eq!(a, b);
        assert_eq!(a[3].1.n(), 4);
    }

    #[test]
    fn csv_has_one_row_per_record() {
        let inst = random_family(4, |_| 6, &[ratio(1, 2)], Seed(9));
        let rep = check_bounds_batch(&inst, &Limits::default()).unwrap();
        assert_eq!(rep.to_csv().lines().count(), 5);
    }
}
