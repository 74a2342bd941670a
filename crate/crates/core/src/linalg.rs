//! Thin wrappers over nalgebra: sorted symmetric and Hermitian
//! eigendecompositions, spectral norms, and tolerance-based ranks.

use nalgebra::{Complex, DMatrix};

/// Eigendecomposition of a real symmetric matrix with eigenvalues sorted
/// descending; column k of the returned matrix is the eigenvector for the
/// k-th eigenvalue.
pub fn symmetric_eigen_desc(a: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = a.clone().symmetric_eigen();
    let m = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(m, m, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Hermitian eigendecomposition with real eigenvalues sorted descending.
pub fn hermitian_eigen_desc(
    a: &DMatrix<Complex<f64>>,
) -> (Vec<f64>, DMatrix<Complex<f64>>) {
    let eig = a.clone().symmetric_eigen();
    let m = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(m, m, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Spectral norm of a symmetric matrix (largest absolute eigenvalue).
pub fn spectral_norm_sym(a: &DMatrix<f64>) -> f64 {
    a.clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(0.0, |acc, &l| acc.max(l.abs()))
}

/// Rank from an eigenvalue list: entries with |l| > tol * max(1, max|l|).
pub fn rank_from_eigenvalues(eigenvalues: &[f64], tol: f64) -> usize {
    let scale = eigenvalues.iter().fold(0.0f64, |acc, &l| acc.max(l.abs()));
    let threshold = tol * scale.max(1.0);
    eigenvalues.iter().filter(|l| l.abs() > threshold).count()
}

/// Numerical rank of a real matrix via singular values.
pub fn rank_svd(a: &DMatrix<f64>, tol: f64) -> usize {
    let sv = a.clone().singular_values();
    let scale = sv.iter().fold(0.0f64, |acc, &s| acc.max(s));
    let threshold = tol * scale.max(1.0);
    sv.iter().filter(|&&s| s > threshold).count()
}

/// Numerical rank of a complex matrix via singular values.
pub fn rank_svd_complex(a: &DMatrix<Complex<f64>>, tol: f64) -> usize {
    let sv = a.clone().singular_values();
    let scale = sv.iter().fold(0.0f64, |acc, &s| acc.max(s));
    let threshold = tol * scale.max(1.0);
    sv.iter().filter(|&&s| s > threshold).count()
}

/// Singular values of a complex matrix, descending.
pub fn singular_values_complex(a: &DMatrix<Complex<f64>>) -> Vec<f64> {
    let mut sv: Vec<f64> = a.clone().singular_values().iter().copied().collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// Determinant via LU with partial pivoting.
pub fn det_lu(a: &DMatrix<f64>) -> f64 {
    a.clone().lu().determinant()
}
