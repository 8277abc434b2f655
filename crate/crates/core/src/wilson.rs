//! Wilson's matrix `Ω(n,k,t)`, `∇ = I + Ω`, the clique–coclique bound and
//! Erdős–Ko–Rado certificates.
//!
//! `Ω = Σ_{i=0}^{t−1} (−1)^{t−1−i} C(k−1−i, k−t) / den_i · D_{k−i}`, where the
//! literal form uses the constant `den_i = C(n−k−t+1, k−t)` and the corrected
//! form the shifted `den_i = C(n−k−t+i, k−t)`. Only the corrected form equals
//! `M(n,k,t)`; both are kept so the difference stays observable.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::designs::Design;
use crate::error::{Error, Result};
use crate::exact::{binom_unchecked, AtN, BinomialInN, Rational, RationalFunction, Scalar, Symbolic};
use crate::exec::Execution;
use crate::johnson::{d_coeffs, BMVector, EigenSystem, SchemeParams};
use crate::projection::project_family;
use crate::subsets::Family;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OmegaVariant {
    Literal,
    #[default]
    Corrected,
}

impl fmt::Display for OmegaVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OmegaVariant::Literal => "literal",
            OmegaVariant::Corrected => "corrected",
        })
    }
}

impl FromStr for OmegaVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(OmegaVariant::Literal),
            "corrected" => Ok(OmegaVariant::Corrected),
            _ => Err(Error::Parse(format!("unknown variant {s:?}"))),
        }
    }
}

fn omega_generic<S: Scalar>(g: &impl BinomialInN<S>, k: usize, t: usize, variant: OmegaVariant) -> Result<Vec<S>> {
    let mut coeffs = vec![S::zero(); k + 1];
    for i in 0..t {
        let shift = match variant {
            OmegaVariant::Literal => -((k + t) as i64) + 1,
            OmegaVariant::Corrected => -((k + t) as i64) + i as i64,
        };
        let den = g.binom_n(shift, k - t)?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator {
                what: format!("C(n{shift:+}, {})", k - t),
                n: g.fixed_n().map_or(-1, |n| n as i64),
            });
        }
        let num = S::from_rational(binom_unchecked((k - 1 - i) as u64, (k - t) as i64).into());
        let mut c = num.div(&den)?;
        if (t - 1 - i) % 2 == 1 {
            c = c.neg();
        }
        for (acc, d) in coeffs.iter_mut().zip(d_coeffs::<S>(k - i, k)) {
            *acc = acc.add(&c.mul(&d));
        }
    }
    Ok(coeffs)
}

fn check_nkt(n: usize, k: usize, t: usize) -> Result<SchemeParams> {
    if !(1 <= t && t <= k && k <= n.saturating_sub(k)) {
        return Err(Error::InvalidParams(format!(
            "need 1 <= t <= k <= n - k, got n={n}, k={k}, t={t}"
        )));
    }
    SchemeParams::new(n, k)
}

pub fn omega(n: usize, k: usize, t: usize, variant: OmegaVariant) -> Result<BMVector> {
    let params = check_nkt(n, k, t)?;
    BMVector::from_coeffs(params, omega_generic(&AtN(n), k, t, variant)?)
}

/// `Ω` with coefficients as rational functions of `n`.
pub fn omega_symbolic(k: usize, t: usize, variant: OmegaVariant) -> Result<BMVector<RationalFunction>> {
    if !(1 <= t && t <= k) {
        return Err(Error::InvalidParams(format!("need 1 <= t <= k, got k={k}, t={t}")));
    }
    BMVector::symbolic(k, omega_generic(&Symbolic, k, t, variant)?)
}

/// `∇ = I + Ω`.
pub fn nabla(n: usize, k: usize, t: usize, variant: OmegaVariant) -> Result<BMVector> {
    let om = omega(n, k, t, variant)?;
    BMVector::identity(om.params()?).add(&om)
}

/// True iff the coefficients on `A_1..A_{k−t}` vanish. `A_0` is allowed,
/// since `∇` carries the identity.
pub fn support_check<S: Scalar>(v: &BMVector<S>, t: usize) -> bool {
    let k = v.k();
    (1..=k.saturating_sub(t)).all(|r| v.coeff(r).is_zero())
}

/// `elsm(v) / tr(v)`.
pub fn ratio(v: &BMVector) -> Result<Rational> {
    v.elsm()?.checked_div(&v.trace()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    Holds,
    Violated,
    NotApplicable,
}

/// Premises and both sides of `(elsm M / tr M)(elsm N / tr N) <= C(n,k)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliqueCocliqueReport {
    pub m_psd: bool,
    pub n_psd: bool,
    pub m_min_eigenvalue: Rational,
    pub n_min_eigenvalue: Rational,
    /// Premise (b): `M ∘ N = γI`.
    pub schur_scalar: bool,
    pub gamma: Option<Rational>,
    pub m_ratio: Option<Rational>,
    pub n_ratio: Option<Rational>,
    pub product: Option<Rational>,
    pub order: Rational,
    pub conclusion: Conclusion,
    pub tight: bool,
}

pub fn clique_coclique(m: &BMVector, n: &BMVector) -> Result<CliqueCocliqueReport> {
    let sys = EigenSystem::new(m.params()?)?;
    clique_coclique_with(&sys, m, n)
}

pub fn clique_coclique_with(sys: &EigenSystem, m: &BMVector, n: &BMVector) -> Result<CliqueCocliqueReport> {
    let pm = sys.psd_report(m)?;
    let pn = sys.psd_report(n)?;
    let schur = m.schur(n)?;
    let schur_scalar = support_check(&schur, 0);
    let ratio_opt = |v: &BMVector| ratio(v).ok();
    let (m_ratio, n_ratio) = (ratio_opt(m), ratio_opt(n));
    let product = match (&m_ratio, &n_ratio) {
        (Some(a), Some(b)) => Some(a * b),
        _ => None,
    };
    let order = Rational::from(sys.params.order());
    let applicable = pm.psd && pn.psd && schur_scalar && product.is_some();
    let (conclusion, tight) = match (&product, applicable) {
        (Some(p), true) if *p <= order => (Conclusion::Holds, *p == order),
        (Some(p), true) => (Conclusion::Violated, *p == order),
        _ => (Conclusion::NotApplicable, false),
    };
    Ok(CliqueCocliqueReport {
        m_psd: pm.psd,
        n_psd: pn.psd,
        m_min_eigenvalue: pm.min_eigenvalue,
        n_min_eigenvalue: pn.min_eigenvalue,
        gamma: schur_scalar.then(|| schur.coeff(0).clone()),
        schur_scalar,
        m_ratio,
        n_ratio,
        product,
        order,
        conclusion,
        tight,
    })
}

/// Exact certificate that every t-intersecting family in `J(n,k)` has at
/// most `C(n−t, k−t)` members.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EkrCertificate {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub variant: OmegaVariant,
    pub valid: bool,
    pub regime_ok: bool,
    pub psd: bool,
    pub support_ok: bool,
    pub ratio_ok: bool,
    #[serde(serialize_with = "crate::exact::ser_bigint")]
    pub bound: BigInt,
    pub ratio: Rational,
    pub expected_ratio: Rational,
    pub min_eigenvalue: Rational,
    pub argmin: usize,
    pub spectrum: Vec<Rational>,
    pub nabla: BMVector,
    pub notes: Vec<String>,
}

pub fn ekr_certificate(n: usize, k: usize, t: usize) -> Result<EkrCertificate> {
    ekr_certificate_with(n, k, t, OmegaVariant::Corrected)
}

pub fn ekr_certificate_with(n: usize, k: usize, t: usize, variant: OmegaVariant) -> Result<EkrCertificate> {
    if !(1 <= t && t < k && k <= n.saturating_sub(k)) {
        return Err(Error::InvalidParams(format!(
            "need 1 <= t < k <= n - k, got n={n}, k={k}, t={t}"
        )));
    }
    let params = SchemeParams::new(n, k)?;
    let sys = EigenSystem::new(params)?;
    let nab = nabla(n, k, t, variant)?;
    let psd = sys.psd_report(&nab)?;
    let off_diagonal = nab.sub(&BMVector::identity(params))?;
    let support_ok = support_check(&off_diagonal, t);
    let ratio = ratio(&nab)?;
    let bin = |a: usize, b: usize| Rational::from(binom_unchecked(a as u64, b as i64));
    let expected_ratio = bin(n, t).checked_div(&bin(k, t))?;
    let ratio_ok = ratio == expected_ratio;
    let regime_ok = n >= (t + 1) * (k - t + 1);
    let bound = binom_unchecked((n - t) as u64, (k - t) as i64);

    let mut notes = Vec::new();
    let literal_c = bin(n, t).checked_div(&bin(n - t, k - t))?;
    if literal_c != ratio {
        notes.push(format!(
            "literal condition (c) ratio C(n,t)/C(n-t,k-t) = {literal_c} differs from elsm/tr = {ratio}; \
             checked against C(n,t)/C(k,t) = {expected_ratio}"
        ));
    }
    if variant == OmegaVariant::Literal {
        notes.push("literal Omega denominator C(n-k-t+1, k-t) in use".to_string());
    }
    if !regime_ok {
        notes.push(format!("n < (t+1)(k-t+1) = {}", (t + 1) * (k - t + 1)));
    }
    if !psd.psd {
        notes.push(format!("eigenvalue {} on eigenspace {} is negative", psd.min_eigenvalue, psd.argmin));
    }

    Ok(EkrCertificate {
        n,
        k,
        t,
        variant,
        valid: psd.psd && support_ok && ratio_ok && regime_ok,
        regime_ok,
        psd: psd.psd,
        support_ok,
        ratio_ok,
        bound,
        ratio,
        expected_ratio,
        min_eigenvalue: psd.min_eigenvalue,
        argmin: psd.argmin,
        spectrum: psd.spectrum,
        nabla: nab,
        notes,
    })
}

/// Certificates for many parameter points, in input order.
pub fn certify_grid(points: &[(usize, usize, usize)], exec: Execution) -> Vec<Result<EkrCertificate>> {
    exec.map(points, |&(n, k, t)| ekr_certificate(n, k, t))
}

/// Every `(n, k, t)` with `1 <= t < k <= k_max`, `(t+1)(k−t+1) <= n <= n_max`
/// and `k <= n − k`, sorted.
pub fn regime_grid(k_max: usize, n_max: usize) -> Vec<(usize, usize, usize)> {
    let mut pts = Vec::new();
    for k in 2..=k_max {
        for t in 1..k {
            for n in ((t + 1) * (k - t + 1)).max(2 * k)..=n_max {
                pts.push((n, k, t));
            }
        }
    }
    pts.sort_unstable();
    pts
}

/// The bound obtained from a Steiner system: clique–coclique applied to
/// `Ψ(N_F)` and `(C(n,k)/|D|)·Ψ(N_D)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DesignBoundReport {
    pub family_size: usize,
    pub t_intersecting: bool,
    pub steiner: bool,
    pub implied_bound: Option<Rational>,
    #[serde(serialize_with = "crate::exact::ser_bigint")]
    pub expected_bound: BigInt,
    pub holds: bool,
    pub tight: bool,
    pub clique_coclique: CliqueCocliqueReport,
}

pub fn bound_from_design(design: &Design, family: &Family) -> Result<DesignBoundReport> {
    let dfam = design.family();
    if (dfam.n(), dfam.k()) != (family.n(), family.k()) {
        return Err(Error::Mismatch("design and family live in different schemes".into()));
    }
    let (n, k, t) = (dfam.n(), dfam.k(), design.t());
    let params = SchemeParams::new(n, k)?;
    let psi_f = project_family(family)?;
    let scale = Rational::from(params.order()).checked_div(&Rational::from(dfam.len() as u64))?;
    let l = project_family(dfam)?.scale(&scale);
    let cc = clique_coclique(&psi_f, &l)?;
    let t_intersecting = family.is_t_intersecting(t);
    let steiner = design.lambda() == 1;
    let implied_bound = match (&cc.n_ratio, cc.conclusion) {
        (Some(r), Conclusion::Holds | Conclusion::Violated) => cc.order.checked_div(r).ok(),
        _ => None,
    };
    let size = Rational::from(family.len() as u64);
    let holds = implied_bound.as_ref().is_some_and(|b| size <= *b) && t_intersecting && steiner;
    Ok(DesignBoundReport {
        family_size: family.len(),
        t_intersecting,
        steiner,
        tight: holds && implied_bound.as_ref() == Some(&size),
        holds,
        implied_bound,
        expected_bound: binom_unchecked((n - t) as u64, (k - t) as i64),
        clique_coclique: cc,
    })
}
