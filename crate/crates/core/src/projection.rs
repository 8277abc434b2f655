//! Orthogonal projection onto the Bose-Mesner algebra.
//!
//! For a family `F` with characteristic vector `x`, `⟨A_r, xxᵀ⟩ = xᵀA_r x`
//! counts ordered pairs at distance `r`, so the projection of `N_F = xxᵀ`
//! only needs the pair distribution.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::exec::Execution;
use crate::johnson::{BMVector, DenseMatrix, SchemeParams};
use crate::subsets::{meet, Family, KSubset};

/// `d_r = #{(α, β) ∈ F × F : |α ∩ β| = k − r}`, diagonal included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairDistribution {
    pub d: Vec<u64>,
}

pub fn pair_distribution(family: &Family) -> PairDistribution {
    pair_distribution_with(family, Execution::default())
}

pub fn pair_distribution_with(family: &Family, exec: Execution) -> PairDistribution {
    let k = family.k();
    let members = family.members();
    let d = exec.sum_counts(members.len(), k + 1, |i, acc| {
        let a = members[i].elements();
        for b in members {
            acc[k - meet(a, b.elements())] += 1;
        }
    });
    PairDistribution { d }
}

/// `Ψ(N_F)` with `c_r = d_r / ⟨A_r, A_r⟩`.
pub fn project_family(family: &Family) -> Result<BMVector> {
    project_family_with(family, Execution::default())
}

pub fn project_family_with(family: &Family, exec: Execution) -> Result<BMVector> {
    let params = SchemeParams::new(family.n(), family.k())?;
    let dist = pair_distribution_with(family, exec);
    let coeffs = dist
        .d
        .iter()
        .enumerate()
        .map(|(r, &count)| {
            let weight = params.class_weight(r);
            if count == 0 {
                Ok(Rational::zero())
            } else {
                Rational::from_big(count.into(), weight)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    BMVector::from_coeffs(params, coeffs)
}

/// `Ψ(M) = Σ_i ⟨M, A_i⟩/⟨A_i, A_i⟩ · A_i` computed entry by entry.
pub fn project_dense(m: &DenseMatrix, params: SchemeParams) -> Result<BMVector> {
    let sets: Vec<KSubset> = KSubset::all(params.n(), params.k()).collect();
    if !m.is_square() || m.rows() != sets.len() {
        return Err(Error::Mismatch(format!(
            "{}x{} matrix for {params} of order {}",
            m.rows(),
            m.cols(),
            sets.len()
        )));
    }
    let k = params.k();
    let mut sums = vec![Rational::zero(); k + 1];
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            let x = &m[(i, j)];
            if !x.is_zero() {
                sums[k - meet(a.elements(), b.elements())] += x;
            }
        }
    }
    let coeffs = sums
        .into_iter()
        .enumerate()
        .map(|(r, s)| {
            if s.is_zero() {
                Ok(Rational::zero())
            } else {
                s.checked_div(&params.class_weight(r).into())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    BMVector::from_coeffs(params, coeffs)
}

/// The family lemma: a t-intersecting family projects into the span of
/// `A_0..A_{k−t}`, with trace `|F|` and entry sum `|F|²`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyLemmaReport {
    pub t_intersecting: bool,
    /// First pair meeting in fewer than `t` points.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<[Vec<usize>; 2]>,
    /// All coefficients on `A_r`, `r >= k − t + 1`, vanish.
    pub support_ok: bool,
    pub trace: Rational,
    pub elsm: Rational,
    pub trace_ok: bool,
    pub elsm_ok: bool,
    pub coeffs: Vec<Rational>,
}

impl FamilyLemmaReport {
    /// Whether the lemma's conclusions hold (vacuously true off its hypothesis).
    pub fn holds(&self) -> bool {
        !self.t_intersecting || (self.support_ok && self.trace_ok && self.elsm_ok)
    }
}

pub fn check_family_lemma(family: &Family, t: usize) -> Result<FamilyLemmaReport> {
    let psi = project_family(family)?;
    let k = family.k();
    let violation = family
        .t_intersecting_violation(t)
        .map(|(a, b)| [a.elements().to_vec(), b.elements().to_vec()]);
    let size = Rational::from(family.len() as u64);
    let trace = psi.trace()?;
    let elsm = psi.elsm()?;
    let support_ok = (k + 1).saturating_sub(t) > k
        || psi.coeffs()[(k + 1).saturating_sub(t)..].iter().all(Rational::is_zero);
    Ok(FamilyLemmaReport {
        t_intersecting: violation.is_none(),
        violation,
        support_ok,
        trace_ok: trace == size,
        elsm_ok: elsm == &size * &size,
        trace,
        elsm,
        coeffs: psi.coeffs().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::classical::{affine_plane_3 as sts9, fano};
    use crate::johnson::bm_dense;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    #[test]
    fn distributions() {
        let single = Family::from_blocks(7, 3, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(pair_distribution(&single).d, vec![1, 0, 0, 0]);
        assert_eq!(pair_distribution(&fano()).d, vec![7, 0, 42, 0]);
        assert_eq!(pair_distribution(&sts9()).d, vec![12, 0, 108, 24]);
        assert_eq!(
            pair_distribution_with(&sts9(), Execution::Sequential),
            pair_distribution_with(&sts9(), Execution::Parallel)
        );
    }

    #[test]
    fn projections() {
        let single = Family::from_blocks(7, 3, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(project_family(&single).unwrap().coeffs(), &[q(1, 35), q(0, 1), q(0, 1), q(0, 1)]);
        assert_eq!(project_family(&fano()).unwrap().coeffs(), &[q(1, 5), q(0, 1), q(1, 15), q(0, 1)]);
        assert_eq!(project_family(&sts9()).unwrap().coeffs(), &[q(1, 7), q(0, 1), q(1, 35), q(1, 70)]);
    }

    #[test]
    fn dense_projection_fixes_the_algebra() {
        let p = SchemeParams::new(6, 3).unwrap();
        let v = BMVector::from_coeffs(p, vec![q(2, 3), q(-1, 1), q(0, 1), q(5, 7)]).unwrap();
        assert_eq!(project_dense(&bm_dense(&v, 100).unwrap(), p).unwrap(), v);
    }

    #[test]
    fn dense_projection_of_a_diagonal_unit() {
        let p = SchemeParams::new(6, 3).unwrap();
        let mut e = DenseMatrix::<Rational>::zeros(20, 20);
        e[(4, 4)] = Rational::one();
        let v = project_dense(&e, p).unwrap();
        assert_eq!(v.coeffs(), &[q(1, 20), q(0, 1), q(0, 1), q(0, 1)]);
        assert!(project_dense(&DenseMatrix::zeros(3, 3), p).is_err());
    }

    #[test]
    fn family_lemma_examples() {
        let star = Family::star(7, 3, &[1, 2]).unwrap();
        let r = check_family_lemma(&star, 2).unwrap();
        assert!(r.t_intersecting && r.support_ok && r.holds());
        assert_eq!((r.trace.clone(), r.elsm.clone()), (q(5, 1), q(25, 1)));
        assert!(r.coeffs[2].is_zero() && r.coeffs[3].is_zero());

        let r = check_family_lemma(&fano(), 1).unwrap();
        assert!(r.t_intersecting && r.support_ok);
        assert_eq!((r.trace.clone(), r.elsm.clone()), (q(7, 1), q(49, 1)));

        let pair = Family::from_blocks(7, 3, vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        let r = check_family_lemma(&pair, 1).unwrap();
        assert!(!r.t_intersecting);
        assert_eq!(r.violation, Some([vec![1, 2, 3], vec![4, 5, 6]]));
        assert!(!r.support_ok);
        assert!(r.holds());
    }

    /// Ψ preserves the entry sum, not just the trace: the sum of Ψ(N_F) is
    /// |F|², which differs from tr(N_F) = |F| whenever |F| > 1.
    #[test]
    fn projection_preserves_entry_sum_not_trace_in_sum_slot() {
        let r = check_family_lemma(&fano(), 1).unwrap();
        assert_ne!(r.elsm, r.trace);
        assert_eq!(r.elsm, q(49, 1));
    }
}
