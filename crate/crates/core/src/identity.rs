//! `M(n,k,t)` against Wilson's matrix as exact rational functions of `n`.
//!
//! For fixed `(k, t)` both sides are `Σ_r c_r(n) A_r` with rational-function
//! coefficients. The `A_r` are linearly independent, so the sides agree as
//! matrices for every `n` iff every `h_r = lhs_r − rhs_r` is the zero
//! function. Pointwise comparison at more integers than the numerator degree
//! bound reaches the same verdict by the polynomial-vanishing argument.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::designs::{admissible, design_projection_identity, m_symbolic, m_vector, search_design, SearchOutcome};
use crate::error::{Error, Result};
use crate::exact::{Rational, RationalFunction, Scalar};
use crate::exec::Execution;
use crate::johnson::{BMVector, EigenSystem, SchemeParams};
use crate::projection::project_family;
use crate::wilson::{omega, omega_symbolic, OmegaVariant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Lhs {
    #[serde(rename = "M")]
    M,
    #[serde(rename = "M+I")]
    MPlusI,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rhs {
    OmegaLiteral,
    OmegaCorrected,
    NablaCorrected,
}

impl FromStr for Lhs {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" | "m" => Ok(Lhs::M),
            "M+I" | "m+i" | "m-plus-i" => Ok(Lhs::MPlusI),
            _ => Err(Error::Parse(format!("unknown lhs {s:?}"))),
        }
    }
}

impl FromStr for Rhs {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" | "omega_literal" => Ok(Rhs::OmegaLiteral),
            "corrected" | "omega_corrected" => Ok(Rhs::OmegaCorrected),
            "nabla" | "nabla_corrected" => Ok(Rhs::NablaCorrected),
            _ => Err(Error::Parse(format!("unknown rhs {s:?}"))),
        }
    }
}

impl fmt::Display for Rhs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rhs::OmegaLiteral => "omega_literal",
            Rhs::OmegaCorrected => "omega_corrected",
            Rhs::NablaCorrected => "nabla_corrected",
        })
    }
}

fn with_identity<S: Scalar>(v: BMVector<S>) -> BMVector<S> {
    let mut coeffs = v.coeffs().to_vec();
    coeffs[0] = coeffs[0].add(&S::one());
    match v.n() {
        Some(n) => BMVector::from_coeffs(SchemeParams::new(n, v.k()).expect("valid"), coeffs),
        None => BMVector::symbolic(v.k(), coeffs),
    }
    .expect("same length")
}

fn lhs_symbolic(k: usize, t: usize, lhs: Lhs) -> Result<BMVector<RationalFunction>> {
    let m = m_symbolic(k, t)?;
    Ok(match lhs {
        Lhs::M => m,
        Lhs::MPlusI => with_identity(m),
    })
}

fn rhs_symbolic(k: usize, t: usize, rhs: Rhs) -> Result<BMVector<RationalFunction>> {
    Ok(match rhs {
        Rhs::OmegaLiteral => omega_symbolic(k, t, OmegaVariant::Literal)?,
        Rhs::OmegaCorrected => omega_symbolic(k, t, OmegaVariant::Corrected)?,
        Rhs::NablaCorrected => with_identity(omega_symbolic(k, t, OmegaVariant::Corrected)?),
    })
}

fn lhs_at(n: usize, k: usize, t: usize, lhs: Lhs) -> Result<BMVector> {
    let m = m_vector(n, k, t)?;
    Ok(match lhs {
        Lhs::M => m,
        Lhs::MPlusI => with_identity(m),
    })
}

fn rhs_at(n: usize, k: usize, t: usize, rhs: Rhs) -> Result<BMVector> {
    Ok(match rhs {
        Rhs::OmegaLiteral => omega(n, k, t, OmegaVariant::Literal)?,
        Rhs::OmegaCorrected => omega(n, k, t, OmegaVariant::Corrected)?,
        Rhs::NablaCorrected => with_identity(omega(n, k, t, OmegaVariant::Corrected)?),
    })
}

fn check_kt(k: usize, t: usize) -> Result<()> {
    if !(1 <= t && t < k) {
        return Err(Error::InvalidParams(format!("need 1 <= t < k, got k={k}, t={t}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub r: usize,
    pub n: usize,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub k: usize,
    pub t: usize,
    pub lhs: Lhs,
    pub rhs: Rhs,
    pub equal: bool,
    /// `h_r = lhs_r − rhs_r`, reduced.
    pub h: Vec<RationalFunction>,
    pub witness: Option<Witness>,
}

impl Serialize for IdentityReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc<'a> {
            k: usize,
            t: usize,
            lhs: Lhs,
            rhs: Rhs,
            equal: bool,
            h: Vec<String>,
            witness: &'a Option<Witness>,
        }
        Doc {
            k: self.k,
            t: self.t,
            lhs: self.lhs,
            rhs: self.rhs,
            equal: self.equal,
            h: self.h.iter().map(ToString::to_string).collect(),
            witness: &self.witness,
        }
        .serialize(s)
    }
}

/// Witness evaluations start at `n = 2k + 1`, the first size strictly past
/// the `k = n − k` boundary.
fn first_sample(k: usize) -> usize {
    2 * k + 1
}

pub fn compare_symbolic(k: usize, t: usize, lhs: Lhs, rhs: Rhs) -> Result<IdentityReport> {
    check_kt(k, t)?;
    let diff = lhs_symbolic(k, t, lhs)?.sub(&rhs_symbolic(k, t, rhs)?)?;
    let h = diff.coeffs().to_vec();
    for (r, hr) in h.iter().enumerate() {
        let deg = hr.num().degree().unwrap_or(0);
        assert!(deg <= 2 * k, "numerator of h_{r} has degree {deg} > 2k for (k,t) = ({k},{t})");
    }
    let witness = h.iter().enumerate().find(|(_, hr)| !hr.is_zero()).map(|(r, hr)| {
        // a nonzero rational function has finitely many zeros and poles
        let span = 2 * (hr.num().degree().unwrap_or(0) + hr.den().degree().unwrap_or(0)) + 1;
        (first_sample(k)..)
            .take(span)
            .find_map(|n| match hr.eval(n as i64) {
                Ok(v) if !v.is_zero() => Some(Witness { r, n, value: v }),
                _ => None,
            })
            .expect("a nonzero rational function is nonzero somewhere in any long enough range")
    });
    Ok(IdentityReport {
        k,
        t,
        lhs,
        rhs,
        equal: witness.is_none(),
        h,
        witness,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointStatus {
    Equal,
    Differs,
    Pole,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointResult {
    pub n: usize,
    pub status: PointStatus,
    /// Whether the spectra of both sides agree (the eigenvalue route).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigen_equal: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointwiseReport {
    pub k: usize,
    pub t: usize,
    pub lhs: Lhs,
    pub rhs: Rhs,
    pub points: Vec<PointResult>,
    pub agreements: usize,
    pub poles: usize,
    pub required: usize,
    pub first_failure: Option<usize>,
    /// All pole-free points agree and there are at least `required` of them.
    pub identity: bool,
    pub symbolic_equal: bool,
    /// Pointwise and symbolic verdicts coincide.
    pub consistent: bool,
}

pub fn compare_pointwise(k: usize, t: usize, lhs: Lhs, rhs: Rhs, n_from: usize, n_to: usize) -> Result<PointwiseReport> {
    compare_pointwise_with(k, t, lhs, rhs, n_from, n_to, Execution::default())
}

pub fn compare_pointwise_with(
    k: usize,
    t: usize,
    lhs: Lhs,
    rhs: Rhs,
    n_from: usize,
    n_to: usize,
    exec: Execution,
) -> Result<PointwiseReport> {
    check_kt(k, t)?;
    let required = 2 * k + 1;
    if n_from < 2 * k || n_to < n_from || n_to - n_from + 1 < required {
        return Err(Error::InvalidParams(format!(
            "need n_from >= 2k = {} and at least {required} points, got [{n_from}, {n_to}]",
            2 * k
        )));
    }
    let ns: Vec<usize> = (n_from..=n_to).collect();
    let points = exec
        .map(&ns, |&n| -> Result<PointResult> {
            let sides = lhs_at(n, k, t, lhs).and_then(|a| Ok((a, rhs_at(n, k, t, rhs)?)));
            let (a, b) = match sides {
                Ok(ab) => ab,
                Err(Error::ZeroDenominator { .. }) => {
                    return Ok(PointResult { n, status: PointStatus::Pole, eigen_equal: None })
                }
                Err(e) => return Err(e),
            };
            let sys = EigenSystem::new(a.params()?)?;
            let eigen_equal = sys.eigenvalues(&a)? == sys.eigenvalues(&b)?;
            let status = if a == b { PointStatus::Equal } else { PointStatus::Differs };
            Ok(PointResult { n, status, eigen_equal: Some(eigen_equal) })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let agreements = points.iter().filter(|p| p.status == PointStatus::Equal).count();
    let poles = points.iter().filter(|p| p.status == PointStatus::Pole).count();
    let first_failure = points.iter().find(|p| p.status == PointStatus::Differs).map(|p| p.n);
    let identity = first_failure.is_none() && agreements >= required;
    let symbolic_equal = compare_symbolic(k, t, lhs, rhs)?.equal;
    let decided = identity || first_failure.is_some();
    Ok(PointwiseReport {
        k,
        t,
        lhs,
        rhs,
        points,
        agreements,
        poles,
        required,
        first_failure,
        identity,
        symbolic_equal,
        consistent: decided && identity == symbolic_equal,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessStatus {
    Verified,
    Failed,
    Unverified,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessPoint {
    pub n: usize,
    pub status: WitnessStatus,
    pub reason: String,
    pub nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DesignWitnessReport {
    pub k: usize,
    pub t: usize,
    pub points: Vec<WitnessPoint>,
}

impl DesignWitnessReport {
    pub fn any_failed(&self) -> bool {
        self.points.iter().any(|p| p.status == WitnessStatus::Failed)
    }
}

/// At each admissible `n` where a Steiner system is found, checks
/// `(C(n,k)/|D|)·Ψ(N_D) − I = M(n,k,t) = Ω_corrected(n,k,t)`.
pub fn design_witness_check(k: usize, t: usize, ns: &[usize], budget: u64) -> Result<DesignWitnessReport> {
    design_witness_check_with(k, t, ns, budget, Execution::default())
}

pub fn design_witness_check_with(
    k: usize,
    t: usize,
    ns: &[usize],
    budget: u64,
    exec: Execution,
) -> Result<DesignWitnessReport> {
    check_kt(k, t)?;
    let points = exec
        .map(ns, |&n| -> Result<WitnessPoint> {
            let point = |status, reason: String, nodes, blocks| WitnessPoint { n, status, reason, nodes, blocks };
            if n < 2 * k {
                return Ok(point(WitnessStatus::Skipped, format!("n < 2k = {}", 2 * k), 0, None));
            }
            if !admissible(n, k, t) {
                return Ok(point(WitnessStatus::Skipped, "divisibility conditions fail".into(), 0, None));
            }
            let outcome = search_design(n, k, t, budget)?;
            let nodes = outcome.nodes();
            let design = match outcome {
                SearchOutcome::Found { design, .. } => design,
                SearchOutcome::NotFound { .. } => {
                    return Ok(point(WitnessStatus::Unverified, "no design exists".into(), nodes, None))
                }
                SearchOutcome::BudgetExhausted { .. } => {
                    return Ok(point(WitnessStatus::Unverified, "search budget exhausted".into(), nodes, None))
                }
            };
            let params = SchemeParams::new(n, k)?;
            let blocks = design.family().len();
            let scale = Rational::from(params.order()).checked_div(&Rational::from(blocks as u64))?;
            let lhs = project_family(design.family())?
                .scale(&scale)
                .sub(&BMVector::identity(params))?;
            let m = m_vector(n, k, t)?;
            let om = omega(n, k, t, OmegaVariant::Corrected)?;
            let relation = design_projection_identity(&design)?;
            Ok(if lhs == m && m == om && relation.passed() {
                point(WitnessStatus::Verified, "projection matches M and corrected Omega".into(), nodes, Some(blocks))
            } else {
                point(
                    WitnessStatus::Failed,
                    format!("rescaled projection {lhs:?}, M {m:?}, Omega {om:?}"),
                    nodes,
                    Some(blocks),
                )
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(DesignWitnessReport { k, t, points })
}
