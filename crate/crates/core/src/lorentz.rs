//! Lorentzian trace forms on symmetric, Hermitian, and quaternionic
//! self-adjoint matrices, cone classification of Gram forms against the
//! light cone, and the hyperbolic distance between negative-cone
//! representatives.

use nalgebra::DMatrix;
use serde::Serialize;
use thiserror::Error;

use crate::algebras::{HermitianGram, HyperHermitianGram};
use crate::distances::GramForm;
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LorentzError {
    #[error("size mismatch: {a} vs {b}")]
    SizeMismatch { a: usize, b: usize },
    #[error("{which} argument lies in the {region:?} region, not the negative cone")]
    NotInNegativeCone {
        which: &'static str,
        region: ConeRegion,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeRegion {
    NegativeCone,
    LightCone,
    PositiveRegion,
}

/// Where a Gram form sits relative to the light cone L(A, A) = 0, with the
/// rank-based extremal-ray flag.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LorentzReport {
    pub value: f64,
    pub region: ConeRegion,
    pub is_extremal_candidate: bool,
}

fn check_sizes(a: usize, b: usize) -> Result<(), LorentzError> {
    if a != b {
        return Err(LorentzError::SizeMismatch { a, b });
    }
    Ok(())
}

fn l_raw(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a * b).trace() - a.trace() * b.trace()
}

/// The bilinear form Tr(AB) - Tr(A)Tr(B) on symmetric Gram forms.
pub fn lorentz_l(a: &GramForm, b: &GramForm) -> Result<f64, LorentzError> {
    check_sizes(a.matrix().nrows(), b.matrix().nrows())?;
    Ok(l_raw(a.matrix(), b.matrix()))
}

/// The Hermitian form Tr(A B*) - Tr(A)Tr(B*); real-valued on self-adjoint
/// inputs and equal to `lorentz_l` on real symmetric ones.
pub fn lorentz_hermitian(a: &HermitianGram, b: &HermitianGram) -> Result<f64, LorentzError> {
    check_sizes(a.matrix().nrows(), b.matrix().nrows())?;
    let badj = a.matrix() * b.matrix().adjoint();
    let value = badj.trace() - a.matrix().trace() * b.matrix().adjoint().trace();
    Ok(value.re)
}

/// The symmetrized quaternionic form Tr((AB + BA)/2) - Tr(A)Tr(B), with all
/// traces taken as real parts.
pub fn lorentz_quaternionic(
    a: &HyperHermitianGram,
    b: &HyperHermitianGram,
) -> Result<f64, LorentzError> {
    let m = a.size();
    check_sizes(m, b.size())?;
    let mut tr_ab = 0.0;
    let mut tr_ba = 0.0;
    for i in 0..m {
        for k in 0..m {
            tr_ab += (a.entry(i, k) * b.entry(k, i)).a;
            tr_ba += (b.entry(i, k) * a.entry(k, i)).a;
        }
    }
    let tr_a: f64 = (0..m).map(|i| a.entry(i, i).a).sum();
    let tr_b: f64 = (0..m).map(|i| b.entry(i, i).a).sum();
    Ok(0.5 * (tr_ab + tr_ba) - tr_a * tr_b)
}

/// Classify a Gram form by the sign of L(A, A), with the tolerance scaled
/// by the squared Frobenius norm; the extremal flag records numerical
/// rank <= 1.
pub fn cone_classify(a: &GramForm, tol: f64) -> LorentzReport {
    let value = l_raw(a.matrix(), a.matrix());
    let threshold = tol * a.matrix().iter().map(|x| x * x).sum::<f64>();
    let region = if value < -threshold {
        ConeRegion::NegativeCone
    } else if value.abs() <= threshold {
        ConeRegion::LightCone
    } else {
        ConeRegion::PositiveRegion
    };
    let (eigs, _) = linalg::symmetric_eigen_desc(a.matrix());
    let rank = linalg::rank_from_eigenvalues(&eigs, tol);
    LorentzReport {
        value,
        region,
        is_extremal_candidate: rank <= 1,
    }
}

/// Matrix of L on the symmetric (n-1) x (n-1) matrices in the standard
/// basis: the diagonal units E_ii first, then E_ij + E_ji for i < j in
/// lexicographic order. Requires n >= 2.
pub fn lorentz_form_matrix(n: usize) -> DMatrix<f64> {
    assert!(n >= 2, "need at least two points");
    let m = n - 1;
    let mut basis: Vec<DMatrix<f64>> = Vec::with_capacity(m * (m + 1) / 2);
    for i in 0..m {
        let mut e = DMatrix::zeros(m, m);
        e[(i, i)] = 1.0;
        basis.push(e);
    }
    for i in 0..m {
        for j in (i + 1)..m {
            let mut e = DMatrix::zeros(m, m);
            e[(i, j)] = 1.0;
            e[(j, i)] = 1.0;
            basis.push(e);
        }
    }
    let dim = basis.len();
    DMatrix::from_fn(dim, dim, |p, q| l_raw(&basis[p], &basis[q]))
}

/// Hyperbolic distance arcosh(|L(A, B)| / sqrt(L(A, A) L(B, B))) between
/// two negative-cone representatives; invariant under positive rescaling
/// of either argument. The ratio is clamped to 1 from below.
pub fn hyperbolic_distance(a: &GramForm, b: &GramForm, tol: f64) -> Result<f64, LorentzError> {
    let lab = lorentz_l(a, b)?;
    let ra = cone_classify(a, tol);
    if ra.region != ConeRegion::NegativeCone {
        return Err(LorentzError::NotInNegativeCone {
            which: "first",
            region: ra.region,
        });
    }
    let rb = cone_classify(b, tol);
    if rb.region != ConeRegion::NegativeCone {
        return Err(LorentzError::NotInNegativeCone {
            which: "second",
            region: rb.region,
        });
    }
    let ratio = (lab.abs() / (ra.value * rb.value).sqrt()).max(1.0);
    Ok(ratio.acosh())
}
