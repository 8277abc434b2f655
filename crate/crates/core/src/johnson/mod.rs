//! The Bose-Mesner algebra of the Johnson scheme `J(n, k)`.
//!
//! Convention: `(A_r)_{α,β} = 1` iff `|α ∩ β| = k − r`, so `A_r` is the
//! distance-`r` relation of the Johnson graph and `A_0 = I`.

mod dense;
mod eigen;

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub use dense::{bm_dense, w_dense, wbar_dense, DenseMatrix, DEFAULT_DENSE_BUDGET};
pub use eigen::{intersection_numbers, EigenSystem, PsdReport};

use crate::error::{Error, Result};
use crate::exact::{binom_unchecked, Rational, RationalFunction, Scalar};
use crate::subsets::{meet, KSubset};

/// `(n, k)` with `1 <= k <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SchemeParams {
    n: usize,
    k: usize,
}

impl SchemeParams {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidParams(format!("J({n},{k}) needs 1 <= k <= n")));
        }
        Ok(SchemeParams { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of k-subsets, `C(n, k)`.
    pub fn order(&self) -> BigInt {
        binom_unchecked(self.n as u64, self.k as i64)
    }

    /// `⟨A_r, A_r⟩ = C(n,k)·C(k,r)·C(n−k,r)`, the number of ones in `A_r`.
    pub fn class_weight(&self, r: usize) -> BigInt {
        self.order() * self.valency(r)
    }

    /// Row sum of `A_r`: `C(k,r)·C(n−k,r)`.
    pub fn valency(&self, r: usize) -> BigInt {
        binom_unchecked(self.k as u64, r as i64) * binom_unchecked((self.n - self.k) as u64, r as i64)
    }

    /// The eigenvalue machinery needs every `A_r` to be nonzero.
    pub fn require_nondegenerate(&self) -> Result<()> {
        if self.k > self.n - self.k {
            return Err(Error::InvalidParams(format!(
                "J({},{}) has k > n - k; some classes are empty",
                self.n, self.k
            )));
        }
        Ok(())
    }
}

impl fmt::Display for SchemeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J({},{})", self.n, self.k)
    }
}

/// `Σ_r c_r A_r`, coefficients indexed by `r = 0..=k`.
///
/// `n` is `None` for symbolic vectors whose coefficients are rational
/// functions of `n`.
#[derive(Clone, PartialEq)]
pub struct BMVector<S = Rational> {
    k: usize,
    n: Option<usize>,
    coeffs: Vec<S>,
}

impl<S: Scalar> BMVector<S> {
    pub fn from_coeffs(params: SchemeParams, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() != params.k + 1 {
            return Err(Error::InvalidParams(format!(
                "{params} needs {} coefficients, got {}",
                params.k + 1,
                coeffs.len()
            )));
        }
        Ok(BMVector {
            k: params.k,
            n: Some(params.n),
            coeffs,
        })
    }

    /// A vector whose coefficients are functions of the indeterminate `n`.
    pub fn symbolic(k: usize, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() != k + 1 {
            return Err(Error::InvalidParams(format!("k = {k} needs {} coefficients", k + 1)));
        }
        Ok(BMVector { k, n: None, coeffs })
    }

    fn like(&self, coeffs: Vec<S>) -> Self {
        BMVector {
            k: self.k,
            n: self.n,
            coeffs,
        }
    }

    pub fn zero(params: SchemeParams) -> Self {
        BMVector {
            k: params.k,
            n: Some(params.n),
            coeffs: vec![S::zero(); params.k + 1],
        }
    }

    /// The basis element `A_r`.
    pub fn basis(params: SchemeParams, r: usize) -> Result<Self> {
        if r > params.k {
            return Err(Error::InvalidParams(format!("A_{r} does not exist in {params}")));
        }
        let mut v = Self::zero(params);
        v.coeffs[r] = S::one();
        Ok(v)
    }

    pub fn identity(params: SchemeParams) -> Self {
        Self::basis(params, 0).expect("A_0 always exists")
    }

    /// `J = Σ_r A_r`.
    pub fn all_ones(params: SchemeParams) -> Self {
        BMVector {
            k: params.k,
            n: Some(params.n),
            coeffs: vec![S::one(); params.k + 1],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> Option<usize> {
        self.n
    }

    pub fn params(&self) -> Result<SchemeParams> {
        let n = self
            .n
            .ok_or_else(|| Error::Mismatch("symbolic vector has no fixed n".into()))?;
        SchemeParams::new(n, self.k)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, r: usize) -> &S {
        &self.coeffs[r]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(S::is_zero)
    }

    /// Indices `r` with a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..=self.k).filter(|&r| !self.coeffs[r].is_zero()).collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.k != other.k || self.n != other.n {
            return Err(Error::Mismatch(format!(
                "vectors over (n={:?}, k={}) and (n={:?}, k={})",
                self.n, self.k, other.n, other.k
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.like(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, S::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, S::sub)
    }

    pub fn scale(&self, c: &S) -> Self {
        self.like(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Schur (entrywise) product. The `A_r` are 0/1 with disjoint supports,
    /// so this is coefficientwise multiplication.
    pub fn schur(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, S::mul)
    }

    /// The `(S, T)` entry: `c_{k − |S∩T|}`.
    pub fn entry(&self, s: &KSubset, t: &KSubset) -> Result<S> {
        let params = self.params()?;
        for x in [s, t] {
            if x.n() != params.n || x.k() != params.k {
                return Err(Error::Mismatch(format!("subset {x} is not in {params}")));
            }
        }
        Ok(self.coeffs[self.k - meet(s.elements(), t.elements())].clone())
    }

    /// `⟨u, v⟩ = tr(uᵀv) = Σ_r u_r v_r ⟨A_r, A_r⟩`.
    pub fn inner(&self, other: &Self) -> Result<S> {
        self.check_compatible(other)?;
        let params = self.params()?;
        Ok((0..=self.k).fold(S::zero(), |acc, r| {
            let g = S::from_rational(params.class_weight(r).into());
            acc.add(&self.coeffs[r].mul(&other.coeffs[r]).mul(&g))
        }))
    }

    pub fn trace(&self) -> Result<S> {
        self.inner(&Self::identity(self.params()?))
    }

    /// Sum of all entries.
    pub fn elsm(&self) -> Result<S> {
        self.inner(&Self::all_ones(self.params()?))
    }
}

impl BMVector<RationalFunction> {
    /// Specialise a symbolic vector at an integer `n`.
    pub fn evaluate(&self, n: usize) -> Result<BMVector<Rational>> {
        let params = SchemeParams::new(n, self.k)?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.eval(n as i64))
            .collect::<Result<Vec<_>>>()?;
        BMVector::from_coeffs(params, coeffs)
    }
}

impl<S: Scalar> fmt::Debug for BMVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BMVector(n={:?}, k={}, [", self.n, self.k)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "])")
    }
}

/// `D_i = W_{i,k}ᵀ W̄_{i,k}` in the `A_r` basis: the `(α, β)` entry counts the
/// i-subsets of `α ∖ β`, so `c_r = C(r, i)`.
pub fn d_vector<S: Scalar>(i: usize, params: SchemeParams) -> Result<BMVector<S>> {
    if i > params.k {
        return Err(Error::InvalidParams(format!("D_{i} needs i <= k = {}", params.k)));
    }
    BMVector::from_coeffs(params, d_coeffs(i, params.k))
}

pub(crate) fn d_coeffs<S: Scalar>(i: usize, k: usize) -> Vec<S> {
    (0..=k)
        .map(|r| S::from_rational(binom_unchecked(r as u64, i as i64).into()))
        .collect()
}

#[derive(Serialize, Deserialize)]
struct BMVectorDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    k: usize,
    coeffs: Vec<String>,
}

impl<S: Scalar> Serialize for BMVector<S> {
    fn serialize<Se: serde::Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        BMVectorDoc {
            n: self.n,
            k: self.k,
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de, S> Deserialize<'de> for BMVector<S>
where
    S: Scalar + std::str::FromStr<Err = Error>,
{
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = BMVectorDoc::deserialize(d)?;
        let coeffs = doc
            .coeffs
            .iter()
            .map(|c| c.parse::<S>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        match doc.n {
            Some(n) => SchemeParams::new(n, doc.k).and_then(|p| BMVector::from_coeffs(p, coeffs)),
            None => BMVector::symbolic(doc.k, coeffs),
        }
        .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j73() -> SchemeParams {
        SchemeParams::new(7, 3).unwrap()
    }

    fn a(r: usize) -> BMVector {
        BMVector::basis(j73(), r).unwrap()
    }

    fn s(e: &[usize]) -> KSubset {
        KSubset::new(7, e.to_vec()).unwrap()
    }

    #[test]
    fn entries() {
        let p = j73();
        assert_eq!(a(0).entry(&s(&[1, 2, 3]), &s(&[1, 2, 3])).unwrap(), Rational::one());
        let j = BMVector::<Rational>::all_ones(p);
        assert_eq!(j.entry(&s(&[1, 2, 3]), &s(&[4, 5, 6])).unwrap(), Rational::one());
        assert_eq!(a(2).entry(&s(&[1, 2, 3]), &s(&[2, 3, 7])).unwrap(), Rational::zero());
        assert_eq!(a(1).entry(&s(&[1, 2, 3]), &s(&[2, 3, 7])).unwrap(), Rational::one());
        let other = KSubset::new(8, vec![1, 2, 3]).unwrap();
        assert!(a(1).entry(&other, &s(&[1, 2, 3])).is_err());
    }

    #[test]
    fn schur_products() {
        let p = j73();
        let v = BMVector::from_coeffs(p, vec![Rational::new(1, 2), Rational::from_int(3), Rational::zero(), Rational::new(-2, 7)]).unwrap();
        assert_eq!(BMVector::all_ones(p).schur(&v).unwrap(), v);
        assert!(a(1).schur(&a(2)).unwrap().is_zero());
        let other = BMVector::<Rational>::identity(SchemeParams::new(8, 3).unwrap());
        assert!(a(0).schur(&other).is_err());
    }

    #[test]
    fn inner_products_trace_and_sum() {
        assert_eq!(a(0).inner(&a(0)).unwrap(), Rational::from_int(35));
        assert_eq!(a(2).inner(&a(2)).unwrap(), Rational::from_int(630));
        assert_eq!(a(1).inner(&a(2)).unwrap(), Rational::zero());
        let j = BMVector::<Rational>::all_ones(j73());
        assert_eq!(j.trace().unwrap(), Rational::from_int(35));
        assert_eq!(j.elsm().unwrap(), Rational::from_int(1225));
        assert_eq!(a(2).elsm().unwrap(), Rational::from_int(630));
        assert!(BMVector::<Rational>::symbolic(3, vec![Rational::one(); 4]).unwrap().trace().is_err());
    }

    #[test]
    fn orthogonal_basis() {
        for i in 0..=3 {
            for j in 0..=3 {
                let expected = if i == j { Rational::from(j73().class_weight(i)) } else { Rational::zero() };
                assert_eq!(a(i).inner(&a(j)).unwrap(), expected);
            }
        }
    }

    #[test]
    fn d_vector_extremes() {
        let d0: BMVector = d_vector(0, j73()).unwrap();
        assert_eq!(d0, BMVector::all_ones(j73()));
        let d3: BMVector = d_vector(3, j73()).unwrap();
        assert_eq!(d3, a(3));
        assert!(d_vector::<Rational>(4, j73()).is_err());
    }

    #[test]
    fn json_round_trip() {
        let v = BMVector::from_coeffs(j73(), vec![Rational::new(1, 5), Rational::zero(), Rational::new(1, 15), Rational::zero()]).unwrap();
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(text, r#"{"n":7,"k":3,"coeffs":["1/5","0","1/15","0"]}"#);
        assert_eq!(serde_json::from_str::<BMVector>(&text).unwrap(), v);
        assert!(serde_json::from_str::<BMVector>(r#"{"n":7,"k":3,"coeffs":["1"]}"#).is_err());
    }
}
