//! Named and random instance families.
//!
//! Random instances draw from ChaCha8 seeded through
//! `rand_core::SeedableRng::seed_from_u64`. Unordered pairs `{i, j}`,
//! `i < j`, are visited in lexicographic order and each consumes a
//! fixed number of 64-bit words from the stream: one word for a
//! tournament orientation, two words (presence, then orientation) for
//! [`random_digraph`]. A draw `w` orients the pair `i → j` iff `w` is
//! even. Presence with probability `a/b` is `w · b < a · 2⁶⁴`, computed
//! exactly in 128-bit arithmetic.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;

use crate::digraph::Digraph;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Seed(pub u64);

impl Seed {
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Independent seed for sub-instance `index`: the first word of
    /// ChaCha8 stream `index` under this seed.
    pub fn child(self, index: u64) -> Seed {
        let mut rng = self.rng();
        rng.set_stream(index);
        Seed(rng.next_u64())
    }
}

/// Tournament on `2r − 1` vertices where `v_i → v_j` iff
/// `1 ≤ (j − i) mod (2r − 1) ≤ r − 1`; label `v_i` is vertex `i − 1`.
pub fn rotational_tournament(r: usize) -> Result<Digraph, GenError> {
    if r < 2 {
        return Err(GenError::BadParameter(format!("rotational tournament needs r >= 2, got {r}")));
    }
    let n = 2 * r - 1;
    let arcs = (0..n).flat_map(|i| (1..r).map(move |s| (i, (i + s) % n)));
    Ok(Digraph::new(n, arcs).expect("rotational tournament is simple"))
}

pub fn directed_cycle(n: usize) -> Result<Digraph, GenError> {
    if n < 3 {
        return Err(GenError::BadParameter(format!("directed cycle needs n >= 3, got {n}")));
    }
    Ok(Digraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple"))
}

/// Parts are laid out consecutively in the given order.
pub fn disjoint_union(parts: &[Digraph]) -> Digraph {
    let n = parts.iter().map(Digraph::n).sum();
    let mut offset = 0;
    let mut arcs = Vec::new();
    for g in parts {
        arcs.extend(g.arcs().map(|(u, v)| (u + offset, v + offset)));
        offset += g.n();
    }
    Digraph::new(n, arcs).expect("union of simple digraphs is simple")
}

pub fn random_tournament(n: usize, seed: Seed) -> Digraph {
    let mut rng = seed.rng();
    let mut arcs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            arcs.push(orient(i, j, rng.next_u64()));
        }
    }
    Digraph::new(n, arcs).expect("tournament is simple")
}

pub fn random_digraph(n: usize, arc_prob: &Rational, seed: Seed) -> Result<Digraph, GenError> {
    let threshold = probability_threshold(arc_prob)?;
    let mut rng = seed.rng();
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let present = rng.next_u64();
            let direction = rng.next_u64();
            if threshold.includes(present) {
                arcs.push(orient(i, j, direction));
            }
        }
    }
    Ok(Digraph::new(n, arcs).expect("random digraph is simple"))
}

fn orient(i: usize, j: usize, word: u64) -> (usize, usize) {
    if word & 1 == 0 {
        (i, j)
    } else {
        (j, i)
    }
}

struct Threshold {
    num: u128,
    den: u128,
}

impl Threshold {
    fn includes(&self, word: u64) -> bool {
        // word / 2^64 < num / den
        if self.num >= self.den {
            return true;
        }
        // num < den < 2^64, so num << 64 fits
        (word as u128) * self.den < self.num << 64
    }
}

fn probability_threshold(p: &Rational) -> Result<Threshold, GenError> {
    let bad = || GenError::BadParameter(format!("arc probability {p} outside [0, 1]"));
    if p.is_negative() || p > &Rational::from_integer(BigInt::from(1)) {
        return Err(bad());
    }
    let num = p.numer().to_u128();
    let den = p.denom().to_u128();
    match (num, den) {
        // den < 2^64 keeps `word * den` inside u128
        (Some(num), Some(den)) if den < (1 << 64) => Ok(Threshold { num, den }),
        _ => Err(GenError::BadParameter(format!("arc probability {p} has a denominator of 2^64 or more"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn rotational_small_cases() {
        let t2 = rotational_tournament(2).unwrap();
        assert_eq!(t2.arcs().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(t2, directed_cycle(3).unwrap());
        let t3 = rotational_tournament(3).unwrap();
        assert_eq!(t3.n(), 5);
        assert_eq!(t3.out_neighbors(0).to_vec(), vec![1, 2]);
        assert!(rotational_tournament(1).is_err());
    }

    #[test]
    fn rotational_is_eulerian_tournament() {
        for r in 2..12 {
            let g = rotational_tournament(r).unwrap();
            assert!(g.is_tournament());
            for v in g.vertices() {
                assert_eq!(g.out_degree(v), r - 1);
                assert_eq!(g.in_degree(v), r - 1);
            }
        }
    }

    #[test]
    fn cycles() {
        let c4 = directed_cycle(4).unwrap();
        assert!(c4.vertices().all(|v| c4.out_degree(v) == 1));
        assert!(directed_cycle(2).is_err());
    }

    #[test]
    fn union_layout() {
        let c3 = directed_cycle(3).unwrap();
        let u = disjoint_union(&[c3.clone(), c3.clone()]);
        assert_eq!(u.n(), 6);
        assert_eq!(u.arc_count(), 6);
        assert!(u.has_arc(5, 3));
        assert!(!u.adjacent(0, 3));
        assert_eq!(disjoint_union(std::slice::from_ref(&c3)), c3);
    }

    #[test]
    fn random_tournaments() {
        assert_eq!(random_tournament(1, Seed(9)).n(), 1);
        let t = random_tournament(5, Seed(0));
        assert_eq!(t.arc_count(), 10);
        assert!(t.is_tournament());
        let differing = (0..100u64)
            .filter(|&i| random_tournament(50, Seed(2 * i)) != random_tournament(50, Seed(2 * i + 1)))
            .count();
        assert_eq!(differing, 100);
    }

    #[test]
    fn random_digraph_extremes() {
        let full = random_digraph(9, &int(1), Seed(3)).unwrap();
        assert!(full.is_tournament());
        let none = random_digraph(9, &int(0), Seed(3)).unwrap();
        assert_eq!(none.arc_count(), 0);
        assert!(random_digraph(3, &ratio(3, 2), Seed(1)).is_err());
        assert!(random_digraph(3, &ratio(-1, 2), Seed(1)).is_err());
    }

    #[test]
    fn random_digraph_is_reproducible() {
        let a = random_digraph(8, &ratio(1, 2), Seed(42)).unwrap();
        let b = random_digraph(8, &ratio(1, 2), Seed(42)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_digraph(8, &ratio(1, 2), Seed(43)).unwrap());
    }

    #[test]
    fn half_probability_density() {
        let g = random_digraph(200, &ratio(1, 2), Seed(5)).unwrap();
        let pairs = 200 * 199 / 2;
        let arcs = g.arc_count();
        assert!(arcs > pairs * 45 / 100 && arcs < pairs * 55 / 100, "{arcs}");
    }

    #[test]
    fn child_seeds_differ() {
        let s = Seed(7);
        assert_ne!(s.child(0), s.child(1));
        assert_eq!(s.child(3), s.child(3));
    }
}
