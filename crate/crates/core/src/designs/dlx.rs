//! Dancing-links search for t-(n,k,1) designs.
//!
//! Columns are the t-subsets, rows the k-subsets, both in colex order. The
//! column with the fewest live rows is covered first, ties going to the
//! lowest colex rank, and candidate rows are tried top to bottom, so every
//! run expands the same nodes in the same order.

use serde::Serialize;

use super::Design;
use crate::error::{Error, Result};
use crate::exact::binom_u64;
use crate::subsets::{colex_rank, Family, KSubset};

#[derive(Debug, Clone, PartialEq)]
pub enum SearchOutcome {
    Found { design: Design, nodes: u64 },
    /// The search space was exhausted: no such design exists.
    NotFound { nodes: u64 },
    /// Stopped after `nodes` row choices without an answer.
    BudgetExhausted { nodes: u64 },
}

impl SearchOutcome {
    pub fn nodes(&self) -> u64 {
        match self {
            SearchOutcome::Found { nodes, .. }
            | SearchOutcome::NotFound { nodes }
            | SearchOutcome::BudgetExhausted { nodes } => *nodes,
        }
    }

    pub fn design(&self) -> Option<&Design> {
        match self {
            SearchOutcome::Found { design, .. } => Some(design),
            _ => None,
        }
    }
}

#[derive(Serialize)]
struct Status<'a> {
    status: &'a str,
    nodes: u64,
}

impl SearchOutcome {
    pub fn status(&self) -> &'static str {
        match self {
            SearchOutcome::Found { .. } => "found",
            SearchOutcome::NotFound { .. } => "not-found",
            SearchOutcome::BudgetExhausted { .. } => "budget-exhausted",
        }
    }

    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::to_value(Status {
            status: self.status(),
            nodes: self.nodes(),
        })
        .expect("plain struct")
    }
}

struct Links {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    col: Vec<usize>,
    row: Vec<usize>,
    size: Vec<usize>,
}

const ROOT: usize = 0;

impl Links {
    /// Header nodes `1..=columns`, then one node per (row, column) incidence.
    fn new(columns: usize, rows: &[Vec<usize>]) -> Self {
        let cap = 1 + columns + rows.iter().map(Vec::len).sum::<usize>();
        let mut l = Links {
            left: Vec::with_capacity(cap),
            right: Vec::with_capacity(cap),
            up: Vec::with_capacity(cap),
            down: Vec::with_capacity(cap),
            col: Vec::with_capacity(cap),
            row: Vec::with_capacity(cap),
            size: vec![0; columns + 1],
        };
        for h in 0..=columns {
            l.left.push(if h == 0 { columns } else { h - 1 });
            l.right.push(if h == columns { 0 } else { h + 1 });
            l.up.push(h);
            l.down.push(h);
            l.col.push(h);
            l.row.push(usize::MAX);
        }
        for (r, cols) in rows.iter().enumerate() {
            let first = l.left.len();
            for (idx, &c) in cols.iter().enumerate() {
                let node = first + idx;
                let h = c + 1;
                l.left.push(if idx == 0 { first + cols.len() - 1 } else { node - 1 });
                l.right.push(if idx + 1 == cols.len() { first } else { node + 1 });
                l.up.push(l.up[h]);
                l.down.push(h);
                let last = l.up[h];
                l.down[last] = node;
                l.up[h] = node;
                l.col.push(h);
                l.row.push(r);
                l.size[h] += 1;
            }
        }
        l
    }

    fn cover(&mut self, c: usize) {
        let (lc, rc) = (self.left[c], self.right[c]);
        self.right[lc] = rc;
        self.left[rc] = lc;
        let mut i = self.down[c];
        while i != c {
            let mut j = self.right[i];
            while j != i {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = d;
                self.up[d] = u;
                self.size[self.col[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.up[c];
        while i != c {
            let mut j = self.left[i];
            while j != i {
                self.size[self.col[j]] += 1;
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = j;
                self.up[d] = j;
                j = self.left[j];
            }
            i = self.up[i];
        }
        let (lc, rc) = (self.left[c], self.right[c]);
        self.right[lc] = c;
        self.left[rc] = c;
    }

    /// Fewest live rows, ties to the lowest header index.
    fn choose_column(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut c = self.right[ROOT];
        while c != ROOT {
            if best.is_none_or(|b| self.size[c] < self.size[b]) {
                best = Some(c);
            }
            c = self.right[c];
        }
        best
    }
}

enum Step {
    Solved,
    Dead,
    OutOfBudget,
}

struct Solver {
    links: Links,
    partial: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Solver {
    fn search(&mut self) -> Step {
        let Some(c) = self.links.choose_column() else {
            return Step::Solved;
        };
        if self.links.size[c] == 0 {
            return Step::Dead;
        }
        self.links.cover(c);
        let mut r = self.links.down[c];
        while r != c {
            if self.nodes >= self.budget {
                self.links.uncover(c);
                return Step::OutOfBudget;
            }
            self.nodes += 1;
            self.partial.push(self.links.row[r]);
            let mut j = self.links.right[r];
            while j != r {
                self.links.cover(self.links.col[j]);
                j = self.links.right[j];
            }
            let step = self.search();
            let mut j = self.links.left[r];
            while j != r {
                self.links.uncover(self.links.col[j]);
                j = self.links.left[j];
            }
            match step {
                Step::Solved => {
                    self.links.uncover(c);
                    return Step::Solved;
                }
                Step::OutOfBudget => {
                    self.partial.pop();
                    self.links.uncover(c);
                    return Step::OutOfBudget;
                }
                Step::Dead => {
                    self.partial.pop();
                }
            }
            r = self.links.down[r];
        }
        self.links.uncover(c);
        Step::Dead
    }
}

/// Searches for a t-(n,k,1) design; `budget` caps the number of row choices.
pub fn search_design(n: usize, k: usize, t: usize, budget: u64) -> Result<SearchOutcome> {
    if !(1 <= t && t <= k && k <= n) {
        return Err(Error::InvalidParams(format!("need 1 <= t <= k <= n, got n={n}, k={k}, t={t}")));
    }
    let columns = binom_u64(n, t) as usize;
    let blocks: Vec<KSubset> = KSubset::all(n, k).collect();
    let rows: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| {
            let mut cols: Vec<usize> = KSubset::all(k, t)
                .map(|pos| {
                    let pts = pos.elements().iter().map(|&p| b.elements()[p - 1]).collect();
                    colex_rank(&KSubset::new(n, pts).expect("subset of a block")) as usize
                })
                .collect();
            cols.sort_unstable();
            cols
        })
        .collect();
    let mut solver = Solver {
        links: Links::new(columns, &rows),
        partial: Vec::new(),
        nodes: 0,
        budget,
    };
    Ok(match solver.search() {
        Step::Solved => {
            let mut chosen = solver.partial.clone();
            chosen.sort_unstable();
            let family = Family::new(n, k, chosen.into_iter().map(|r| blocks[r].clone()).collect())?;
            SearchOutcome::Found {
                design: Design::verify(family, t)?,
                nodes: solver.nodes,
            }
        }
        Step::Dead => SearchOutcome::NotFound { nodes: solver.nodes },
        Step::OutOfBudget => SearchOutcome::BudgetExhausted { nodes: solver.nodes },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn found(n: usize, k: usize, t: usize) -> Design {
        match search_design(n, k, t, 1_000_000).unwrap() {
            SearchOutcome::Found { design, .. } => design,
            other => panic!("({n},{k},{t}): {other:?}"),
        }
    }

    #[test]
    fn finds_small_steiner_systems() {
        for (n, k, t, blocks) in [(7, 3, 2, 7), (9, 3, 2, 12), (8, 4, 3, 14), (6, 3, 1, 2), (13, 3, 2, 26)] {
            let d = found(n, k, t);
            assert_eq!(d.family().len(), blocks);
            assert_eq!(d.lambda(), 1);
        }
    }

    #[test]
    fn exhausts_impossible_parameters() {
        assert!(matches!(search_design(8, 3, 2, 1_000_000).unwrap(), SearchOutcome::NotFound { .. }));
        assert!(matches!(search_design(7, 3, 1, 1_000_000).unwrap(), SearchOutcome::NotFound { .. }));
    }

    #[test]
    fn budget_is_respected() {
        match search_design(9, 3, 2, 3).unwrap() {
            SearchOutcome::BudgetExhausted { nodes } => assert_eq!(nodes, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn deterministic() {
        let a = search_design(9, 3, 2, 1_000_000).unwrap();
        let b = search_design(9, 3, 2, 1_000_000).unwrap();
        assert_eq!(a, b);
    }
}
