//! Exact eigenvalue table of `J(n, k)`.
//!
//! `A_1` generates the algebra and `A_1 A_i` only touches `A_{i−1}, A_i,
//! A_{i+1}`. On the `j`-th eigenspace this gives the recurrence
//!
//! ```text
//! θ·P_i = p_{1,i}(i−1)·P_{i−1} + p_{1,i}(i)·P_i + p_{1,i}(i+1)·P_{i+1}
//! ```
//!
//! with `θ = θ_j(A_1) = (k−j)(n−k−j) − j`. The intersection numbers are
//! counted directly, and the table is checked against trace and row-sum
//! identities before it is handed out.

use num_bigint::BigInt;
use serde::Serialize;

use super::{BMVector, SchemeParams};
use crate::error::{Error, Result};
use crate::exact::{binom_unchecked, Rational, Scalar};
use crate::exec::Execution;
use crate::subsets::{meet, KSubset};

/// `p_{i,j}(r)`: for a fixed pair `(α, β)` at distance `r`, the number of
/// `γ` at distance `i` from `α` and `j` from `β`. Zero when no pair at
/// distance `r` exists (`r > n − k`).
pub fn intersection_numbers(i: usize, j: usize, r: usize, params: SchemeParams) -> Result<u64> {
    intersection_numbers_with(i, j, r, params, Execution::default())
}

pub(crate) fn intersection_numbers_with(
    i: usize,
    j: usize,
    r: usize,
    params: SchemeParams,
    exec: Execution,
) -> Result<u64> {
    let (n, k) = (params.n(), params.k());
    if i > k || j > k || r > k {
        return Err(Error::InvalidParams(format!("p_{{{i},{j}}}({r}) outside 0..={k}")));
    }
    if r > n - k {
        return Ok(0);
    }
    let alpha: Vec<usize> = (1..=k).collect();
    let beta: Vec<usize> = (1..=k - r).chain(k + 1..=k + r).collect();
    let sets: Vec<KSubset> = KSubset::all(n, k).collect();
    let counts = exec.sum_counts(sets.len(), 1, |idx, acc| {
        let g = sets[idx].elements();
        if k - meet(&alpha, g) == i && k - meet(g, &beta) == j {
            acc[0] += 1;
        }
    });
    Ok(counts[0])
}

/// Eigenvalues `P[j][i]` of each `A_i` on the common eigenspaces, with
/// multiplicities `m_j = C(n,j) − C(n,j−1)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenSystem {
    pub params: SchemeParams,
    pub theta1: Vec<Rational>,
    #[serde(rename = "P")]
    pub p: Vec<Vec<Rational>>,
    #[serde(serialize_with = "crate::exact::ser_bigints")]
    pub m: Vec<BigInt>,
}

impl EigenSystem {
    pub fn new(params: SchemeParams) -> Result<Self> {
        Self::with_execution(params, Execution::default())
    }

    pub fn with_execution(params: SchemeParams, exec: Execution) -> Result<Self> {
        params.require_nondegenerate()?;
        let (n, k) = (params.n(), params.k());
        let fail = |check: String| Error::EigenCheck { n, k, check };

        // (p_{1,i}(i−1), p_{1,i}(i), p_{1,i}(i+1)) for i = 0..=k
        let mut tri = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let below = if i == 0 { 0 } else { intersection_numbers_with(1, i, i - 1, params, exec)? };
            let diag = intersection_numbers_with(1, i, i, params, exec)?;
            let above = if i == k { 0 } else { intersection_numbers_with(1, i, i + 1, params, exec)? };
            tri.push([below, diag, above].map(Rational::from));
        }

        let theta1: Vec<Rational> = (0..=k)
            .map(|j| Rational::from_int(((k - j) * (n - k - j)) as i64 - j as i64))
            .collect();

        let mut p = Vec::with_capacity(k + 1);
        for (j, theta) in theta1.iter().enumerate() {
            let mut row = vec![Rational::one()];
            if k >= 1 {
                row.push(theta.clone());
            }
            for i in 1..k {
                let [below, diag, above] = &tri[i];
                let next = &(&(theta * &row[i]) - &(diag * &row[i])) - &(below * &row[i - 1]);
                row.push(next.checked_div(above).map_err(|_| fail(format!("p_{{1,{i}}}({}) = 0", i + 1)))?);
            }
            // θ must be a root of the characteristic polynomial of the
            // tridiagonal intersection matrix: the recurrence closes at i = k.
            let [below, diag, _] = &tri[k];
            let residual = &(&(theta * &row[k]) - &(diag * &row[k])) - &(below * &row[k - 1]);
            if !residual.is_zero() {
                return Err(fail(format!("theta1[{j}] = {theta} is not an eigenvalue of A_1 (residual {residual})")));
            }
            p.push(row);
        }

        let m: Vec<BigInt> = (0..=k)
            .map(|j| binom_unchecked(n as u64, j as i64) - binom_unchecked(n as u64, j as i64 - 1))
            .collect();

        let sys = EigenSystem { params, theta1, p, m };
        sys.self_check().map_err(fail)?;
        Ok(sys)
    }

    fn self_check(&self) -> std::result::Result<(), String> {
        let k = self.params.k();
        let order = self.params.order();
        let total: BigInt = self.m.iter().sum();
        if total != order {
            return Err(format!("sum of multiplicities {total} != {order}"));
        }
        for (j, row) in self.p.iter().enumerate() {
            if row[0] != Rational::one() {
                return Err(format!("P[{j}][0] = {}", row[0]));
            }
            let sum: Rational = row.iter().cloned().sum();
            let expected = if j == 0 { Rational::from(order.clone()) } else { Rational::zero() };
            if sum != expected {
                return Err(format!("row {j} sums to {sum}, expected {expected}"));
            }
        }
        for i in 0..=k {
            if self.p[0][i] != Rational::from(self.params.valency(i)) {
                return Err(format!("P[0][{i}] is not the valency of A_{i}"));
            }
            if i == 0 {
                continue;
            }
            let tr: Rational = (0..=k)
                .map(|j| &Rational::from(self.m[j].clone()) * &self.p[j][i])
                .sum();
            if !tr.is_zero() {
                return Err(format!("trace of A_{i} is {tr}"));
            }
        }
        Ok(())
    }

    /// `θ_j(v) = Σ_i c_i P[j][i]` for `j = 0..=k`.
    pub fn eigenvalues<S: Scalar>(&self, v: &BMVector<S>) -> Result<Vec<S>> {
        if v.params()? != self.params {
            return Err(Error::Mismatch(format!("vector over {} vs {}", v.params()?, self.params)));
        }
        Ok(self
            .p
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v.coeffs())
                    .fold(S::zero(), |acc, (pij, c)| acc.add(&c.mul(&S::from_rational(pij.clone()))))
            })
            .collect())
    }

    /// Exact positive-semidefiniteness via the spectrum.
    pub fn psd_report(&self, v: &BMVector<Rational>) -> Result<PsdReport> {
        let spectrum = self.eigenvalues(v)?;
        let (argmin, min) = spectrum
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)))
            .map(|(j, x)| (j, x.clone()))
            .expect("k + 1 >= 1 eigenvalues");
        Ok(PsdReport {
            psd: !min.is_negative(),
            min_eigenvalue: min,
            argmin,
            spectrum,
        })
    }
}

/// Outcome of an exact PSD test on a Bose-Mesner element.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PsdReport {
    pub psd: bool,
    pub min_eigenvalue: Rational,
    pub argmin: usize,
    pub spectrum: Vec<Rational>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, k: usize) -> SchemeParams {
        SchemeParams::new(n, k).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn triangular_and_petersen() {
        let sys = EigenSystem::new(params(5, 2)).unwrap();
        assert_eq!(sys.theta1, ints(&[6, 1, -2]));
        assert_eq!(sys.m, vec![BigInt::from(1), BigInt::from(4), BigInt::from(5)]);
        let col2: Vec<_> = sys.p.iter().map(|row| row[2].clone()).collect();
        assert_eq!(col2, ints(&[3, -2, 1]));
        assert!(sys.p.iter().all(|row| row[0] == Rational::one()));
    }

    #[test]
    fn multiplicities_j73() {
        let sys = EigenSystem::new(params(7, 3)).unwrap();
        let m: Vec<_> = sys.m.iter().map(ToString::to_string).collect();
        assert_eq!(m, ["1", "6", "14", "14"]);
    }

    #[test]
    fn rejects_k_above_half() {
        assert!(matches!(EigenSystem::new(params(3, 2)), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn self_checks_hold_on_grid() {
        for n in 4..=12 {
            for k in 2..=5.min(n / 2) {
                EigenSystem::new(params(n, k)).unwrap();
            }
        }
    }

    #[test]
    fn intersection_number_examples() {
        let p = params(7, 3);
        for j in 0..=3 {
            for r in 0..=3 {
                assert_eq!(intersection_numbers(0, j, r, p).unwrap(), (j == r) as u64);
            }
        }
        assert_eq!(intersection_numbers(1, 1, 0, p).unwrap(), 12);
        assert!(intersection_numbers(4, 0, 0, p).is_err());
        let seq = intersection_numbers_with(2, 3, 1, p, Execution::Sequential).unwrap();
        assert_eq!(seq, intersection_numbers_with(2, 3, 1, p, Execution::Parallel).unwrap());
    }

    #[test]
    fn eigenvalues_of_simple_elements() {
        let p = params(5, 2);
        let sys = EigenSystem::new(p).unwrap();
        assert_eq!(sys.eigenvalues(&BMVector::<Rational>::identity(p)).unwrap(), ints(&[1, 1, 1]));
        assert_eq!(sys.eigenvalues(&BMVector::<Rational>::all_ones(p)).unwrap(), ints(&[10, 0, 0]));
        assert_eq!(sys.eigenvalues(&BMVector::<Rational>::basis(p, 1).unwrap()).unwrap(), ints(&[6, 1, -2]));
    }

    #[test]
    fn psd_examples() {
        let p = params(7, 3);
        let sys = EigenSystem::new(p).unwrap();
        let id = BMVector::<Rational>::identity(p);
        let r = sys.psd_report(&id).unwrap();
        assert!(r.psd);
        assert_eq!(r.min_eigenvalue, Rational::one());
        assert!(!sys.psd_report(&id.scale(&Rational::from_int(-1))).unwrap().psd);
        // Kneser graph K(7,3): least eigenvalue −C(n−k−1, k−1) = −3 on j = 1
        let kneser = BMVector::<Rational>::basis(p, 3).unwrap();
        let v = id.add(&kneser.scale(&Rational::new(1, 3))).unwrap();
        let r = sys.psd_report(&v).unwrap();
        assert!(r.psd);
        assert_eq!(r.min_eigenvalue, Rational::zero());
        assert_eq!(r.argmin, 1);
        let half = id.add(&kneser.scale(&Rational::new(1, 6))).unwrap();
        assert_eq!(sys.psd_report(&half).unwrap().min_eigenvalue, Rational::new(1, 2));
    }
}
