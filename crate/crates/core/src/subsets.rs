//! k-subsets of `{1..n}` in colexicographic order, and families of them.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::binom_u64;

/// A k-subset of `{1, …, n}` with strictly increasing 1-based elements.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KSubset {
    n: usize,
    elems: Vec<usize>,
}

impl KSubset {
    pub fn new(n: usize, mut elems: Vec<usize>) -> Result<Self> {
        elems.sort_unstable();
        if elems.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSubset(format!("{elems:?} repeats an element")));
        }
        if let Some(&e) = elems.iter().find(|&&e| e == 0 || e > n) {
            return Err(Error::InvalidSubset(format!("element {e} outside 1..={n}")));
        }
        Ok(KSubset { n, elems })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    pub fn contains_all(&self, other: &KSubset) -> bool {
        let mut it = self.elems.iter().peekable();
        'outer: for x in &other.elems {
            while let Some(&&y) = it.peek() {
                it.next();
                if y == *x {
                    continue 'outer;
                }
                if y > *x {
                    return false;
                }
            }
            return false;
        }
        true
    }

    /// Every k-subset of `{1..n}` in colex order.
    pub fn all(n: usize, k: usize) -> impl Iterator<Item = KSubset> {
        let total = if k <= n { binom_u64(n, k) } else { 0 };
        let mut cur: Vec<usize> = (1..=k).collect();
        (0..total).map(move |idx| {
            if idx > 0 {
                colex_successor(&mut cur);
            }
            KSubset { n, elems: cur.clone() }
        })
    }
}

fn colex_successor(s: &mut [usize]) {
    // advance the lowest element that can move up, reset the ones below it
    let k = s.len();
    for i in 0..k {
        let limit = if i + 1 < k { s[i + 1] } else { usize::MAX };
        if s[i] + 1 < limit {
            s[i] += 1;
            for (j, e) in s.iter_mut().enumerate().take(i) {
                *e = j + 1;
            }
            return;
        }
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `Σ_i C(s_i − 1, i)` over the sorted elements (1-based `i`).
pub fn colex_rank(s: &KSubset) -> u64 {
    s.elems
        .iter()
        .enumerate()
        .map(|(i, &e)| binom_u64(e - 1, i + 1))
        .sum()
}

pub fn colex_unrank(rank: u64, n: usize, k: usize) -> Result<KSubset> {
    let total = binom_u64(n, k);
    if rank >= total {
        return Err(Error::InvalidSubset(format!(
            "rank {rank} outside [0, {total}) for J({n},{k})"
        )));
    }
    let mut r = rank;
    let mut elems = vec![0; k];
    let mut hi = n;
    for i in (1..=k).rev() {
        // largest c < hi with C(c, i) <= r
        let mut c = hi - 1;
        while binom_u64(c, i) > r {
            c -= 1;
        }
        r -= binom_u64(c, i);
        elems[i - 1] = c + 1;
        hi = c;
    }
    Ok(KSubset { n, elems })
}

pub fn inter_size(s: &KSubset, t: &KSubset) -> Result<usize> {
    if s.n != t.n || s.k() != t.k() {
        return Err(Error::Mismatch(format!(
            "subsets {s} of J({},{}) and {t} of J({},{})",
            s.n,
            s.k(),
            t.n,
            t.k()
        )));
    }
    Ok(meet(&s.elems, &t.elems))
}

/// Size of the intersection of two sorted slices.
pub(crate) fn meet(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// A set of distinct k-subsets of `{1..n}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Family {
    n: usize,
    k: usize,
    members: Vec<KSubset>,
}

/// On-disk form shared by families and designs.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct FamilyDoc {
    pub n: usize,
    pub k: usize,
    pub blocks: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<u64>,
}

impl Family {
    pub fn new(n: usize, k: usize, members: Vec<KSubset>) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidParams(format!("need 1 <= k <= n, got n={n}, k={k}")));
        }
        let mut seen = HashSet::with_capacity(members.len());
        for m in &members {
            if m.n != n || m.k() != k {
                return Err(Error::Malformed(format!("block {m} is not a {k}-subset of 1..={n}")));
            }
            if !seen.insert(m) {
                return Err(Error::Malformed(format!("duplicate block {m}")));
            }
        }
        Ok(Family { n, k, members })
    }

    pub fn from_blocks(n: usize, k: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let members = blocks
            .into_iter()
            .map(|b| {
                if b.len() != k {
                    return Err(Error::Malformed(format!("block {b:?} has size {}, expected {k}", b.len())));
                }
                KSubset::new(n, b).map_err(|e| Error::Malformed(e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Family::new(n, k, members)
    }

    pub fn from_doc(doc: FamilyDoc) -> Result<Self> {
        Family::from_blocks(doc.n, doc.k, doc.blocks)
    }

    pub fn to_doc(&self) -> FamilyDoc {
        FamilyDoc {
            n: self.n,
            k: self.k,
            blocks: self.members.iter().map(|m| m.elems.clone()).collect(),
            t: None,
            lambda: None,
        }
    }

    /// All k-subsets containing the given points.
    pub fn star(n: usize, k: usize, core: &[usize]) -> Result<Self> {
        let core = KSubset::new(n, core.to_vec())?;
        let members = KSubset::all(n, k).filter(|s| s.contains_all(&core)).collect();
        Family::new(n, k, members)
    }

    /// The complete family of all k-subsets.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        Family::new(n, k, KSubset::all(n, k).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[KSubset] {
        &self.members
    }

    /// Colex ranks of the members, in member order.
    pub fn ranks(&self) -> Vec<u64> {
        self.members.iter().map(colex_rank).collect()
    }

    /// First pair of members meeting in fewer than `t` points, if any.
    pub fn t_intersecting_violation(&self, t: usize) -> Option<(KSubset, KSubset)> {
        for (i, a) in self.members.iter().enumerate() {
            for b in &self.members[i + 1..] {
                if meet(&a.elems, &b.elems) < t {
                    return Some((a.clone(), b.clone()));
                }
            }
        }
        None
    }

    pub fn is_t_intersecting(&self, t: usize) -> bool {
        self.t_intersecting_violation(t).is_none()
    }
}

/// Parses and validates a family document (`{"n":…,"k":…,"blocks":[…]}`).
pub fn load_family(document: &str) -> Result<Family> {
    let doc: FamilyDoc = serde_json::from_str(document).map_err(|e| Error::Malformed(e.to_string()))?;
    Family::from_doc(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, e: &[usize]) -> KSubset {
        KSubset::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(colex_rank(&s(7, &[1, 2, 3])), 0);
        assert_eq!(colex_rank(&s(7, &[1, 2, 4])), 1);
        assert_eq!(colex_rank(&s(7, &[2, 4, 5])), 8);
        assert_eq!(colex_unrank(0, 7, 3).unwrap(), s(7, &[1, 2, 3]));
        assert_eq!(colex_unrank(8, 7, 3).unwrap(), s(7, &[2, 4, 5]));
        assert!(colex_unrank(35, 7, 3).is_err());
    }

    #[test]
    fn rank_is_a_bijection_matching_enumeration() {
        for n in 1..=9 {
            for k in 0..=n {
                let all: Vec<_> = KSubset::all(n, k).collect();
                assert_eq!(all.len() as u64, binom_u64(n, k));
                for (idx, sub) in all.iter().enumerate() {
                    assert_eq!(colex_rank(sub), idx as u64, "n={n} k={k} {sub}");
                    assert_eq!(&colex_unrank(idx as u64, n, k).unwrap(), sub);
                }
            }
        }
    }

    #[test]
    fn intersections() {
        assert_eq!(inter_size(&s(7, &[1, 2, 3]), &s(7, &[1, 2, 3])).unwrap(), 3);
        assert_eq!(inter_size(&s(7, &[1, 2, 3]), &s(7, &[4, 5, 6])).unwrap(), 0);
        assert_eq!(inter_size(&s(7, &[1, 2, 3]), &s(7, &[2, 3, 7])).unwrap(), 2);
        assert!(inter_size(&s(7, &[1, 2, 3]), &s(8, &[1, 2, 3])).is_err());
        assert!(inter_size(&s(7, &[1, 2, 3]), &s(7, &[1, 2])).is_err());
    }

    #[test]
    fn intersection_bounds() {
        let (n, k) = (8, 3);
        let all: Vec<_> = KSubset::all(n, k).collect();
        for a in &all {
            assert_eq!(inter_size(a, a).unwrap(), k);
            for b in &all {
                let m = inter_size(a, b).unwrap();
                assert_eq!(m, inter_size(b, a).unwrap());
                assert!(k - m <= k.min(n - k));
            }
        }
    }

    #[test]
    fn load_examples() {
        let f = load_family(r#"{"n":7,"k":3,"blocks":[[3,1,2]]}"#).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.members()[0].elements(), &[1, 2, 3]);
        assert!(load_family(r#"{"n":7,"k":3,"blocks":[[1,1,2]]}"#).is_err());
        assert!(load_family(r#"{"n":7,"k":3,"blocks":[[1,2,8]]}"#).is_err());
        assert!(load_family(r#"{"n":7,"k":3,"blocks":[[1,2,3],[3,2,1]]}"#).is_err());
        assert!(load_family(r#"{"n":7,"k":3,"blocks":[[1,2]]}"#).is_err());
        assert!(load_family(r#"{"n":7,"blocks":[]}"#).is_err());
    }

    #[test]
    fn stars() {
        let f = Family::star(7, 3, &[1, 2]).unwrap();
        assert_eq!(f.len(), 5);
        assert!(f.is_t_intersecting(2));
        let g = Family::from_blocks(7, 3, vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        assert_eq!(g.t_intersecting_violation(1), Some((s(7, &[1, 2, 3]), s(7, &[4, 5, 6]))));
    }
}
