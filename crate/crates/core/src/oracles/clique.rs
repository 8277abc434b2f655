//! Exact maximum t-intersecting families by branch and bound on the
//! compatibility graph (k-subsets adjacent when they share at least `t`
//! points), with greedy-colouring bounds.
//!
//! The graph is vertex-transitive (the symmetric group acts transitively on
//! k-subsets and preserves intersection sizes), so some maximum clique
//! contains vertex 0 and the root only branches on it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::binom_u64;
use crate::subsets::{meet, Family, FamilyDoc, KSubset};

#[derive(Debug, Clone, PartialEq)]
pub struct MaxFamilyResult {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub size: usize,
    pub witness: Family,
    /// The search space was exhausted, so `size` is the maximum.
    pub optimal: bool,
    pub nodes: u64,
}

impl Serialize for MaxFamilyResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc {
            #[serde(flatten)]
            family: FamilyDoc,
            size: usize,
            optimal: bool,
            nodes: u64,
        }
        let mut family = self.witness.to_doc();
        family.t = Some(self.t);
        Doc {
            family,
            size: self.size,
            optimal: self.optimal,
            nodes: self.nodes,
        }
        .serialize(s)
    }
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn and_not_assign(&mut self, other: &Bits) {
        self.0.iter_mut().zip(&other.0).for_each(|(a, b)| *a &= !b);
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

struct Search {
    adj: Vec<Bits>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Search {
    /// Greedy sequential colouring in vertex order; returns vertices sorted
    /// by colour with the colour (1-based) of each.
    fn colour_order(&self, cand: &Bits) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = cand.clone();
        let mut order = Vec::new();
        let mut colours = Vec::new();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut avail = uncoloured.clone();
            while let Some(v) = avail.first() {
                avail.clear(v);
                avail.and_not_assign(&self.adj[v]);
                uncoloured.clear(v);
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }

    fn expand(&mut self, current: &mut Vec<usize>, mut cand: Bits) {
        if self.nodes >= self.budget {
            self.aborted = true;
            return;
        }
        self.nodes += 1;
        let (order, colours) = self.colour_order(&cand);
        for idx in (0..order.len()).rev() {
            if current.len() + colours[idx] <= self.best.len() {
                return;
            }
            let v = order[idx];
            current.push(v);
            let next = cand.and(&self.adj[v]);
            if next.is_empty() {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                }
            } else {
                self.expand(current, next);
            }
            current.pop();
            if self.aborted {
                return;
            }
            cand.clear(v);
        }
    }
}

/// Largest t-intersecting family of k-subsets of `{1..n}`; `budget` caps
/// the number of search nodes.
pub fn max_family(n: usize, k: usize, t: usize, budget: u64) -> Result<MaxFamilyResult> {
    if !(1 <= k && k <= n && t <= k) {
        return Err(Error::InvalidParams(format!("need t <= k <= n, got n={n}, k={k}, t={t}")));
    }
    let sets: Vec<KSubset> = KSubset::all(n, k).collect();
    let order = binom_u64(n, k) as usize;
    let adj: Vec<Bits> = sets
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let mut b = Bits::empty(order);
            for (j, c) in sets.iter().enumerate() {
                if i != j && meet(a.elements(), c.elements()) >= t {
                    b.set(j);
                }
            }
            b
        })
        .collect();
    let mut search = Search {
        best: vec![0],
        adj,
        nodes: 0,
        budget,
        aborted: false,
    };
    let root = search.adj[0].clone();
    let mut current = vec![0];
    if !root.is_empty() {
        search.expand(&mut current, root);
    }
    let mut chosen = search.best.clone();
    chosen.sort_unstable();
    let witness = Family::new(n, k, chosen.iter().map(|&i| sets[i].clone()).collect())?;
    debug_assert!(witness.is_t_intersecting(t));
    Ok(MaxFamilyResult {
        n,
        k,
        t,
        size: witness.len(),
        witness,
        optimal: !search.aborted,
        nodes: search.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_maxima() {
        for (n, k, t, size) in [(6, 3, 2, 4), (7, 3, 2, 5), (5, 2, 1, 4), (4, 2, 2, 1), (6, 2, 1, 5)] {
            let r = max_family(n, k, t, 10_000_000).unwrap();
            assert!(r.optimal);
            assert_eq!(r.size, size, "({n},{k},{t})");
            assert!(r.witness.is_t_intersecting(t));
        }
    }

    #[test]
    fn budget_exhaustion_keeps_best_found() {
        let r = max_family(7, 3, 1, 2).unwrap();
        assert!(!r.optimal);
        assert_eq!(r.nodes, 2);
        assert!(r.witness.is_t_intersecting(1));
    }

    #[test]
    fn deterministic_witness() {
        assert_eq!(max_family(7, 3, 2, 1_000_000).unwrap(), max_family(7, 3, 2, 1_000_000).unwrap());
    }

    #[test]
    fn larger_maxima() {
        for (n, k, t, size) in [(8, 3, 1, 21), (9, 3, 2, 7)] {
            let r = max_family(n, k, t, 50_000_000).unwrap();
            eprintln!("({n},{k},{t}) nodes={}", r.nodes);
            assert!(r.optimal);
            assert_eq!(r.size, size);
        }
    }
}
