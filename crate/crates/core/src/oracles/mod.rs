//! Independent ground truth: double-precision spectra, dense projections and
//! exact maximum t-intersecting families. Nothing here feeds a certificate.

mod clique;

use nalgebra::DMatrix;

pub use clique::{max_family, MaxFamilyResult};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::johnson::{DenseMatrix, EigenSystem, SchemeParams};
use crate::projection::project_dense;
use crate::subsets::{colex_rank, Family};
use crate::BMVector;

/// Relative tolerance for comparing exact and floating-point spectra.
pub const SPECTRUM_TOLERANCE: f64 = 1e-8;

/// Eigenvalues of a symmetric matrix in double precision, descending.
pub fn float_spectrum(m: &DenseMatrix) -> Result<Vec<f64>> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = m.rows();
    let a = DMatrix::from_fn(n, n, |i, j| m[(i, j)].to_f64());
    let mut eig = a.symmetric_eigenvalues().as_slice().to_vec();
    eig.sort_by(|x, y| y.total_cmp(x));
    Ok(eig)
}

/// The exact spectrum `{θ_j with multiplicity m_j}`, descending, as floats.
pub fn exact_spectrum_f64(sys: &EigenSystem, v: &BMVector) -> Result<Vec<f64>> {
    let theta = sys.eigenvalues(v)?;
    let mut out = Vec::new();
    for (th, m) in theta.iter().zip(&sys.m) {
        let m = usize::try_from(m).map_err(|_| Error::InvalidParams("multiplicity too large".into()))?;
        out.extend(std::iter::repeat_n(th.to_f64(), m));
    }
    out.sort_by(|x, y| y.total_cmp(x));
    Ok(out)
}

/// Elementwise agreement of two descending spectra within `tol`, relative to
/// `max(1, |x|)`.
pub fn spectra_match(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol * x.abs().max(1.0))
}

/// `N_F = xxᵀ` for the characteristic vector `x` of `F`.
pub fn family_gram(family: &Family, budget: u64) -> Result<DenseMatrix> {
    let params = SchemeParams::new(family.n(), family.k())?;
    let order = u64::try_from(params.order()).unwrap_or(u64::MAX);
    if order > budget {
        return Err(Error::SizeBudget { order, budget });
    }
    let mut x = vec![false; order as usize];
    for m in family.members() {
        x[colex_rank(m) as usize] = true;
    }
    Ok(DenseMatrix::from_fn(x.len(), x.len(), Default::default(), |i, j| {
        if x[i] && x[j] {
            Rational::one()
        } else {
            Rational::zero()
        }
    }))
}

/// `Ψ(N_F)` through the dense path.
pub fn brute_projection(family: &Family, budget: u64) -> Result<BMVector> {
    let params = SchemeParams::new(family.n(), family.k())?;
    project_dense(&family_gram(family, budget)?, params)
}
