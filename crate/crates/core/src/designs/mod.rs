//! t-designs: verification, the block-count formulas, the matrix `M(n,k,t)`,
//! exact-cover search for small Steiner systems, and divisibility
//! admissibility.

pub mod classical;
mod dlx;

use serde::Serialize;

pub use dlx::{search_design, SearchOutcome};

use crate::error::{Error, Result};
use crate::exact::{binom_unchecked, AtN, BinomialInN, Rational, RationalFunction, Scalar, Symbolic};
use crate::johnson::{BMVector, SchemeParams};
use crate::projection::project_family;
use crate::subsets::{colex_rank, colex_unrank, Family, FamilyDoc, KSubset};

/// A family verified to be a t-(n,k,λ) design.
#[derive(Debug, Clone, PartialEq)]
pub struct Design {
    family: Family,
    t: usize,
    lambda: u64,
}

impl Design {
    pub fn verify(family: Family, t: usize) -> Result<Self> {
        let lambda = verify_design(&family, t)?;
        Ok(Design { family, t, lambda })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    pub fn to_doc(&self) -> FamilyDoc {
        FamilyDoc {
            t: Some(self.t),
            lambda: Some(self.lambda),
            ..self.family.to_doc()
        }
    }
}

/// Counts the blocks through every t-subset; returns the common count λ, or
/// the first (colex) t-subset whose count deviates from that of `{1..t}`.
pub fn verify_design(family: &Family, t: usize) -> Result<u64> {
    let (n, k) = (family.n(), family.k());
    if t > k {
        return Err(Error::InvalidParams(format!("t = {t} exceeds k = {k}")));
    }
    let counts = block_counts(family, t);
    let expected = counts[0];
    if let Some(rank) = counts.iter().position(|&c| c != expected) {
        return Err(Error::NotADesign {
            witness: colex_unrank(rank as u64, n, t)?,
            count: counts[rank],
            expected,
        });
    }
    Ok(expected)
}

/// Number of blocks containing each i-subset, indexed by colex rank.
pub fn block_counts(family: &Family, i: usize) -> Vec<u64> {
    let total = binom_unchecked(family.n() as u64, i as i64);
    let mut counts = vec![0u64; usize::try_from(total).expect("C(n, i) fits in memory")];
    for block in family.members() {
        for sub in KSubset::all(family.k(), i) {
            let mapped: Vec<usize> = sub.elements().iter().map(|&p| block.elements()[p - 1]).collect();
            let rank = colex_rank(&KSubset::new(family.n(), mapped).expect("subset of a block"));
            counts[rank as usize] += 1;
        }
    }
    counts
}

fn check_ikt(n: usize, k: usize, t: usize, i: usize) -> Result<()> {
    if !(i <= t && t <= k && k <= n) {
        return Err(Error::InvalidParams(format!(
            "need 0 <= i <= t <= k <= n, got i={i}, t={t}, k={k}, n={n}"
        )));
    }
    Ok(())
}

fn lambda_generic<S: Scalar>(g: &impl BinomialInN<S>, k: usize, t: usize, i: usize) -> Result<S> {
    let num = g.binom_n(-(i as i64), k - i)?;
    let den = g.binom_n(-(t as i64), k - t)?;
    num.div(&den)
}

fn gamma_generic<S: Scalar>(g: &impl BinomialInN<S>, k: usize, t: usize, s: usize) -> Result<S> {
    let mut acc = S::zero();
    for i in s..=t {
        let weight = binom_unchecked(i as u64, s as i64) * binom_unchecked(k as u64, i as i64);
        let term = lambda_generic(g, k, t, i)?.sub(&S::one()).mul(&S::from_rational(weight.into()));
        acc = if (i - s).is_multiple_of(2) { acc.add(&term) } else { acc.sub(&term) };
    }
    Ok(acc)
}

/// Coefficients of `M(n,k,t)`: `γ_s / (C(n−k, k−s)·C(k,s))` on `A_{k−s}`.
fn m_generic<S: Scalar>(g: &impl BinomialInN<S>, k: usize, t: usize) -> Result<Vec<S>> {
    let mut coeffs = vec![S::zero(); k + 1];
    for s in 0..=t {
        let den = g
            .binom_n(-(k as i64), k - s)?
            .mul(&S::from_rational(binom_unchecked(k as u64, s as i64).into()));
        if den.is_zero() {
            return Err(Error::ZeroDenominator {
                what: format!("C(n-k, {})", k - s),
                n: g.fixed_n().map_or(-1, |n| n as i64),
            });
        }
        coeffs[k - s] = gamma_generic(g, k, t, s)?.div(&den)?;
    }
    Ok(coeffs)
}

/// `λ_i = C(n−i, k−i) / C(n−t, k−t)`.
pub fn lambda_i(n: usize, k: usize, t: usize, i: usize) -> Result<Rational> {
    check_ikt(n, k, t, i)?;
    lambda_generic(&AtN(n), k, t, i)
}

/// `γ_s = Σ_{i=s}^{t} (−1)^{i−s} C(i,s) C(k,i) (λ_i − 1)`.
pub fn gamma_s(n: usize, k: usize, t: usize, s: usize) -> Result<Rational> {
    check_ikt(n, k, t, s)?;
    gamma_generic(&AtN(n), k, t, s)
}

/// `M(n,k,t)` at a fixed `n`, defined whether or not a design exists.
pub fn m_vector(n: usize, k: usize, t: usize) -> Result<BMVector> {
    check_ikt(n, k, t, 0)?;
    BMVector::from_coeffs(SchemeParams::new(n, k)?, m_generic(&AtN(n), k, t)?)
}

/// `M(n,k,t)` with coefficients as rational functions of `n`.
pub fn m_symbolic(k: usize, t: usize) -> Result<BMVector<RationalFunction>> {
    if t > k || k == 0 {
        return Err(Error::InvalidParams(format!("need 0 <= t <= k, k >= 1; got k={k}, t={t}")));
    }
    BMVector::symbolic(k, m_generic(&Symbolic, k, t)?)
}

/// The projection of a Steiner system against `M(n,k,t)`.
///
/// The direct Gram-Schmidt projection is ground truth. The relation that
/// holds is `Ψ(N_D) = (|D|/C(n,k))·(I + M)`; the report also records the
/// readings `Ψ(N_D) = M` and `elsm(Ψ(N_D)) = |D|`, which do not hold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DesignProjectionReport {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub blocks: usize,
    pub psi: BMVector,
    pub m: BMVector,
    /// `(|D|/C(n,k))·(I + M)`.
    pub rescaled: BMVector,
    pub relation_holds: bool,
    pub trace: Rational,
    pub elsm: Rational,
    pub trace_ok: bool,
    pub elsm_ok: bool,
    /// `Ψ(N_D) = M` coefficientwise.
    pub psi_equals_m: bool,
    /// `elsm(Ψ(N_D)) = |D|`.
    pub elsm_equals_size: bool,
}

impl DesignProjectionReport {
    pub fn passed(&self) -> bool {
        self.relation_holds && self.trace_ok && self.elsm_ok
    }
}

pub fn design_projection_identity(design: &Design) -> Result<DesignProjectionReport> {
    if design.lambda != 1 {
        return Err(Error::InvalidParams(format!("expected a Steiner system, got lambda = {}", design.lambda)));
    }
    let fam = &design.family;
    let (n, k, t) = (fam.n(), fam.k(), design.t);
    let params = SchemeParams::new(n, k)?;
    let psi = project_family(fam)?;
    let m = m_vector(n, k, t)?;
    let size = Rational::from(fam.len() as u64);
    let scale = size.checked_div(&params.order().into())?;
    let rescaled = BMVector::identity(params).add(&m)?.scale(&scale);
    let trace = psi.trace()?;
    let elsm = psi.elsm()?;
    Ok(DesignProjectionReport {
        n,
        k,
        t,
        blocks: fam.len(),
        relation_holds: psi == rescaled,
        trace_ok: trace == size,
        elsm_ok: elsm == &size * &size,
        psi_equals_m: psi == m,
        elsm_equals_size: elsm == size,
        psi,
        m,
        rescaled,
        trace,
        elsm,
    })
}

/// Divisibility conditions: `C(k−i, t−i) | C(n−i, t−i)` for `i = 0..t−1`.
pub fn admissible(n: usize, k: usize, t: usize) -> bool {
    if !(t <= k && k <= n) {
        return false;
    }
    (0..t).all(|i| {
        let d = binom_unchecked((k - i) as u64, (t - i) as i64);
        let v = binom_unchecked((n - i) as u64, (t - i) as i64);
        (v % d) == 0.into()
    })
}

/// Admissible `n` in `k < n <= n_max`; `n = k` (the single-block design) is
/// left out.
pub fn admissible_range(k: usize, t: usize, n_max: usize) -> Vec<usize> {
    (k + 1..=n_max).filter(|&n| admissible(n, k, t)).collect()
}

#[cfg(test)]
mod tests {
    use super::classical::*;
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    #[test]
    fn verify_examples() {
        assert_eq!(verify_design(&fano(), 2).unwrap(), 1);
        assert_eq!(verify_design(&affine_plane_3(), 2).unwrap(), 1);
        assert_eq!(verify_design(&affine_space_2_cubed(), 3).unwrap(), 1);
        assert_eq!(affine_space_2_cubed().len(), 14);

        let mut blocks = fano().to_doc().blocks;
        blocks.pop();
        let broken = Family::from_blocks(7, 3, blocks).unwrap();
        match verify_design(&broken, 2) {
            Err(Error::NotADesign { witness, count, expected }) => {
                assert_eq!((count, expected), (0, 1));
                // the removed line {3,5,6} leaves its pairs uncovered
                assert!(witness.elements().iter().all(|p| [3, 5, 6].contains(p)));
            }
            other => panic!("expected a witness, got {other:?}"),
        }
        for t in 0..=3 {
            let complete = Family::complete(7, 3).unwrap();
            let expected = binom_unchecked(7 - t as u64, 3 - t as i64);
            assert_eq!(verify_design(&complete, t).unwrap(), u64::try_from(expected).unwrap());
        }
        assert!(verify_design(&fano(), 4).is_err());
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_i(7, 3, 2, 2).unwrap(), q(1, 1));
        assert_eq!(lambda_i(7, 3, 2, 0).unwrap(), q(7, 1));
        assert_eq!(lambda_i(7, 3, 2, 1).unwrap(), q(3, 1));
        assert_eq!(lambda_i(9, 3, 2, 1).unwrap(), q(4, 1));
        assert!(lambda_i(7, 3, 2, 3).is_err());
    }

    #[test]
    fn lambda_matches_block_counts() {
        for (fam, t) in [(fano(), 2), (affine_plane_3(), 2), (affine_space_2_cubed(), 3)] {
            for i in 0..=t {
                let formula = lambda_i(fam.n(), fam.k(), t, i).unwrap();
                let counts = block_counts(&fam, i);
                assert!(counts.iter().all(|&c| Rational::from(c) == formula), "i = {i}");
            }
        }
    }

    #[test]
    fn gamma_examples() {
        let g = |n, k, t| (0..=t).map(|s| gamma_s(n, k, t, s).unwrap()).collect::<Vec<_>>();
        assert_eq!(g(7, 3, 2), vec![q(0, 1), q(6, 1), q(0, 1)]);
        assert_eq!(g(9, 3, 2), vec![q(2, 1), q(9, 1), q(0, 1)]);
        for (n, k, t) in [(8, 4, 3), (13, 3, 2), (12, 4, 1)] {
            assert!(gamma_s(n, k, t, t).unwrap().is_zero());
        }
    }

    #[test]
    fn m_examples() {
        assert_eq!(m_vector(7, 3, 2).unwrap().coeffs(), &[q(0, 1), q(0, 1), q(1, 3), q(0, 1)]);
        assert_eq!(m_vector(9, 3, 2).unwrap().coeffs(), &[q(0, 1), q(0, 1), q(1, 5), q(1, 10)]);
        for n in 6..=14 {
            for k in 2..=n / 2 {
                let m = m_vector(n, k, 1).unwrap();
                let mut expected = vec![Rational::zero(); k + 1];
                expected[k] = Rational::from(binom_unchecked((n - k - 1) as u64, k as i64 - 1)).recip().unwrap();
                assert_eq!(m.coeffs(), &expected[..], "n={n} k={k}");
            }
        }
        assert!(matches!(m_vector(5, 3, 1), Err(Error::ZeroDenominator { .. })));
    }

    #[test]
    fn m_support_lies_in_top_classes() {
        for k in 2..=5 {
            for t in 1..k {
                for n in 2 * k..=16 {
                    let m = m_vector(n, k, t).unwrap();
                    assert!(m.coeffs()[..k - t].iter().all(Rational::is_zero), "n={n} k={k} t={t}");
                    assert!(m.coeffs()[k - t].is_zero(), "gamma_t = 0 kills A_(k-t)");
                }
            }
        }
    }

    #[test]
    fn symbolic_m_specialises_to_numeric() {
        for (k, t) in [(2, 1), (3, 1), (3, 2), (4, 2), (4, 3), (5, 2)] {
            let sym = m_symbolic(k, t).unwrap();
            for n in 2 * k..=20 {
                assert_eq!(sym.evaluate(n).unwrap(), m_vector(n, k, t).unwrap(), "n={n} k={k} t={t}");
            }
        }
    }

    #[test]
    fn projection_relation_examples() {
        let r = design_projection_identity(&Design::verify(fano(), 2).unwrap()).unwrap();
        assert!(r.passed());
        assert_eq!(r.psi.coeffs(), &[q(1, 5), q(0, 1), q(1, 15), q(0, 1)]);
        assert!(!r.psi_equals_m && !r.elsm_equals_size);

        let r = design_projection_identity(&Design::verify(affine_plane_3(), 2).unwrap()).unwrap();
        assert!(r.passed());
        assert_eq!(r.rescaled.coeffs(), &[q(1, 7), q(0, 1), q(1, 35), q(1, 70)]);

        let r = design_projection_identity(&Design::verify(partition(6, 3).unwrap(), 1).unwrap()).unwrap();
        assert!(r.passed());
        assert_eq!(r.psi.coeffs(), &[q(1, 10), q(0, 1), q(0, 1), q(1, 10)]);

        let complete = Design::verify(Family::complete(6, 3).unwrap(), 1).unwrap();
        assert!(design_projection_identity(&complete).is_err());
    }

    #[test]
    fn admissibility() {
        assert!(admissible(7, 3, 2));
        assert!(!admissible(8, 3, 2));
        assert!(admissible(8, 4, 3));
        assert_eq!(admissible_range(3, 2, 20), vec![7, 9, 13, 15, 19]);
        assert!(admissible_range(3, 1, 12).iter().all(|n| n % 3 == 0));
    }
}
