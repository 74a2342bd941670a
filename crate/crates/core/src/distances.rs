//! Cayley and Gram coordinates for real point configurations: the
//! distance/Gram transform in both directions, the bordered distance
//! matrix with its rank and determinant identities, realizability
//! testing, and configuration recovery by eigendecomposition.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::{exact, linalg};

#[derive(Debug, Error)]
pub enum DistanceError {
    #[error("need at least two points, got {0}")]
    TooFewPoints(usize),
    #[error("point {index} has {got} coordinates, expected {expected}")]
    DimensionMismatch {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("all points coincide; the all-coincident class has no distance coordinates")]
    AllCoincident,
    #[error("expected {expected} distance entries for n={n}, got {got}")]
    WrongEntryCount { n: usize, expected: usize, got: usize },
    #[error("invalid index pair ({i},{j}) for n={n}; need 1 <= i < j <= n")]
    BadIndexPair { i: usize, j: usize, n: usize },
    #[error("squared distance s[{i},{j}] = {value} is negative")]
    NegativeEntry { i: usize, j: usize, value: f64 },
    #[error("gram matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("gram matrix is not symmetric: |a[{i}][{j}] - a[{j}][{i}]| = {delta:e}")]
    NotSymmetric { i: usize, j: usize, delta: f64 },
    #[error("gram input yields negative squared distance {value} at ({i},{j})")]
    NegativeSquaredDistance { i: usize, j: usize, value: f64 },
    #[error("{which} identity violated: {detail}")]
    IdentityViolation { which: &'static str, detail: String },
    #[error("not realizable: eigenvalue {value} at index {index} is negative beyond tolerance")]
    NotRealizable { index: usize, value: f64 },
    #[error("minimal embedding rank {min_rank} exceeds target dimension {d}")]
    RankExceedsTarget { min_rank: usize, d: usize },
    #[error("invalid permutation of 1..={n}: {detail}")]
    BadPermutation { n: usize, detail: String },
}

/// Ordered labeled points in R^d. Point 1 is the base point for Gram
/// coordinates throughout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ConfigurationRaw", into = "ConfigurationRaw")]
pub struct Configuration {
    dim: usize,
    points: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct ConfigurationRaw {
    dim: usize,
    points: Vec<Vec<f64>>,
}

impl From<Configuration> for ConfigurationRaw {
    fn from(c: Configuration) -> Self {
        ConfigurationRaw {
            dim: c.dim,
            points: c.points,
        }
    }
}

impl TryFrom<ConfigurationRaw> for Configuration {
    type Error = DistanceError;
    fn try_from(raw: ConfigurationRaw) -> Result<Self, DistanceError> {
        Configuration::new(raw.dim, raw.points)
    }
}

impl Configuration {
    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Result<Self, DistanceError> {
        if points.len() < 2 {
            return Err(DistanceError::TooFewPoints(points.len()));
        }
        for (index, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(DistanceError::DimensionMismatch {
                    index: index + 1,
                    got: p.len(),
                    expected: dim,
                });
            }
        }
        if points.iter().all(|p| p == &points[0]) {
            return Err(DistanceError::AllCoincident);
        }
        Ok(Configuration { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Point with 1-based label i.
    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i - 1]
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    /// Relabel points: old point i becomes point perm[i-1]. perm must be a
    /// permutation of 1..=n.
    pub fn relabel(&self, perm: &[usize]) -> Result<Configuration, DistanceError> {
        check_permutation(perm, self.points.len())?;
        let mut points = vec![Vec::new(); self.points.len()];
        for (old, p) in self.points.iter().enumerate() {
            points[perm[old] - 1] = p.clone();
        }
        Ok(Configuration {
            dim: self.dim,
            points,
        })
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<(), DistanceError> {
    if perm.len() != n {
        return Err(DistanceError::BadPermutation {
            n,
            detail: format!("length {} != {}", perm.len(), n),
        });
    }
    let mut seen = vec![false; n];
    for &v in perm {
        if v < 1 || v > n || seen[v - 1] {
            return Err(DistanceError::BadPermutation {
                n,
                detail: format!("value {v} repeated or out of range"),
            });
        }
        seen[v - 1] = true;
    }
    Ok(())
}

/// The C(n,2) squared distances of a configuration, as projective
/// coordinates: nonnegative, not all zero, indexed by pairs 1 <= i < j <= n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CayleyVectorRaw", into = "CayleyVectorRaw")]
pub struct CayleyVector {
    n: usize,
    s: BTreeMap<(usize, usize), f64>,
}

#[derive(Serialize, Deserialize)]
struct CayleyVectorRaw {
    n: usize,
    s: BTreeMap<String, f64>,
}

impl From<CayleyVector> for CayleyVectorRaw {
    fn from(v: CayleyVector) -> Self {
        CayleyVectorRaw {
            n: v.n,
            s: v.s
                .into_iter()
                .map(|((i, j), val)| (format!("{i},{j}"), val))
                .collect(),
        }
    }
}

impl TryFrom<CayleyVectorRaw> for CayleyVector {
    type Error = DistanceError;
    fn try_from(raw: CayleyVectorRaw) -> Result<Self, DistanceError> {
        let mut s = BTreeMap::new();
        for (key, value) in raw.s {
            let parts: Vec<&str> = key.split(',').collect();
            let parsed = match parts.as_slice() {
                [a, b] => a
                    .trim()
                    .parse::<usize>()
                    .ok()
                    .zip(b.trim().parse::<usize>().ok()),
                _ => None,
            };
            let (i, j) = parsed.ok_or(DistanceError::BadIndexPair {
                i: 0,
                j: 0,
                n: raw.n,
            })?;
            s.insert((i, j), value);
        }
        CayleyVector::new(raw.n, s)
    }
}

impl CayleyVector {
    pub fn new(n: usize, s: BTreeMap<(usize, usize), f64>) -> Result<Self, DistanceError> {
        if n < 2 {
            return Err(DistanceError::TooFewPoints(n));
        }
        let expected = n * (n - 1) / 2;
        if s.len() != expected {
            return Err(DistanceError::WrongEntryCount {
                n,
                expected,
                got: s.len(),
            });
        }
        for (&(i, j), &value) in &s {
            if i < 1 || j <= i || j > n {
                return Err(DistanceError::BadIndexPair { i, j, n });
            }
            if value < 0.0 || !value.is_finite() {
                return Err(DistanceError::NegativeEntry { i, j, value });
            }
        }
        if s.values().all(|&v| v == 0.0) {
            return Err(DistanceError::AllCoincident);
        }
        Ok(CayleyVector { n, s })
    }

    /// Convenience constructor from entries listed in lexicographic pair
    /// order (1,2), (1,3), ..., (n-1,n).
    pub fn from_ordered(n: usize, values: &[f64]) -> Result<Self, DistanceError> {
        let mut s = BTreeMap::new();
        let mut it = values.iter();
        for i in 1..=n {
            for j in (i + 1)..=n {
                if let Some(&v) = it.next() {
                    s.insert((i, j), v);
                }
            }
        }
        CayleyVector::new(n, s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Squared distance between points i and j (any order, i != j).
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let key = if i < j { (i, j) } else { (j, i) };
        self.s[&key]
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.s
    }

    /// Relabel points: old point i becomes point perm[i-1]; entries move to
    /// the corresponding sorted pairs.
    pub fn relabel(&self, perm: &[usize]) -> Result<CayleyVector, DistanceError> {
        check_permutation(perm, self.n)?;
        let mut s = BTreeMap::new();
        for (&(i, j), &value) in &self.s {
            let a = perm[i - 1];
            let b = perm[j - 1];
            let key = if a < b { (a, b) } else { (b, a) };
            s.insert(key, value);
        }
        CayleyVector::new(self.n, s)
    }

    /// Scale all entries by lambda > 0 (projective rescaling).
    pub fn scale(&self, lambda: f64) -> Result<CayleyVector, DistanceError> {
        let s = self.s.iter().map(|(&k, &v)| (k, lambda * v)).collect();
        CayleyVector::new(self.n, s)
    }
}

/// The bordered (n+1) x (n+1) distance matrix: zero diagonal, unit border
/// row/column at index 0, squared distances elsewhere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "CayleyMatrixRaw", try_from = "CayleyMatrixRaw")]
pub struct CayleyMatrix {
    n: usize,
    mat: DMatrix<f64>,
}

#[derive(Serialize, Deserialize)]
struct CayleyMatrixRaw {
    n: usize,
    matrix: Vec<Vec<f64>>,
}

impl From<CayleyMatrix> for CayleyMatrixRaw {
    fn from(m: CayleyMatrix) -> Self {
        CayleyMatrixRaw {
            n: m.n,
            matrix: matrix_rows(&m.mat),
        }
    }
}

impl TryFrom<CayleyMatrixRaw> for CayleyMatrix {
    type Error = DistanceError;
    fn try_from(raw: CayleyMatrixRaw) -> Result<Self, DistanceError> {
        let mat = matrix_from_rows(&raw.matrix)?;
        if mat.nrows() != raw.n + 1 {
            return Err(DistanceError::WrongEntryCount {
                n: raw.n,
                expected: raw.n + 1,
                got: mat.nrows(),
            });
        }
        Ok(CayleyMatrix { n: raw.n, mat })
    }
}

impl CayleyMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }
}

/// Symmetric (n-1) x (n-1) Gram matrix of inner products relative to the
/// base point: a_ij = <p_i - p_1, p_j - p_1> for 2 <= i, j <= n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "GramFormRaw", try_from = "GramFormRaw")]
pub struct GramForm {
    mat: DMatrix<f64>,
}

#[derive(Serialize, Deserialize)]
struct GramFormRaw {
    n: usize,
    gram: Vec<Vec<f64>>,
}

impl From<GramForm> for GramFormRaw {
    fn from(g: GramForm) -> Self {
        GramFormRaw {
            n: g.n(),
            gram: matrix_rows(&g.mat),
        }
    }
}

impl TryFrom<GramFormRaw> for GramForm {
    type Error = DistanceError;
    fn try_from(raw: GramFormRaw) -> Result<Self, DistanceError> {
        let mat = matrix_from_rows(&raw.gram)?;
        if mat.nrows() + 1 != raw.n {
            return Err(DistanceError::WrongEntryCount {
                n: raw.n,
                expected: raw.n - 1,
                got: mat.nrows(),
            });
        }
        GramForm::from_matrix(mat)
    }
}

impl GramForm {
    /// Wrap a symmetric matrix; asymmetry beyond 1e-9 of scale is rejected,
    /// below that it is symmetrized away.
    pub fn from_matrix(mat: DMatrix<f64>) -> Result<Self, DistanceError> {
        if mat.nrows() != mat.ncols() {
            return Err(DistanceError::NotSquare {
                rows: mat.nrows(),
                cols: mat.ncols(),
            });
        }
        let scale = mat.abs().max().max(1.0);
        for i in 0..mat.nrows() {
            for j in (i + 1)..mat.ncols() {
                let delta = (mat[(i, j)] - mat[(j, i)]).abs();
                if delta > 1e-9 * scale {
                    return Err(DistanceError::NotSymmetric { i, j, delta });
                }
            }
        }
        let sym = (&mat + mat.transpose()) * 0.5;
        Ok(GramForm { mat: sym })
    }

    /// Point count n; the matrix is (n-1) x (n-1).
    pub fn n(&self) -> usize {
        self.mat.nrows() + 1
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    /// Entry a_ij with 2-based labels 2 <= i, j <= n.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.mat[(i - 2, j - 2)]
    }
}

fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect())
        .collect()
}

fn matrix_from_rows(rows: &[Vec<f64>]) -> Result<DMatrix<f64>, DistanceError> {
    let r = rows.len();
    let c = rows.first().map_or(0, |row| row.len());
    if r == 0 || rows.iter().any(|row| row.len() != c) || r != c {
        return Err(DistanceError::NotSquare { rows: r, cols: c });
    }
    Ok(DMatrix::from_fn(r, c, |i, j| rows[i][j]))
}

/// Outcome of the realizability test: PSD spectrum check plus the minimal
/// embedding dimension.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealizabilityReport {
    pub realizable: bool,
    pub min_rank: usize,
    /// Spectrum of the Gram form, descending.
    pub eigenvalues: Vec<f64>,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// Minimal dimension admitting a realization.
    EmbeddingDim(usize),
    /// Index (into the descending spectrum) of a disqualifying eigenvalue.
    NegativeEigenvalue { index: usize, value: f64 },
}

/// Squared pairwise distances of a configuration.
pub fn cayley_from_configuration(cfg: &Configuration) -> Result<CayleyVector, DistanceError> {
    let n = cfg.len();
    let mut s = BTreeMap::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            let d2: f64 = cfg
                .point(i)
                .iter()
                .zip(cfg.point(j))
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            s.insert((i, j), d2);
        }
    }
    CayleyVector::new(n, s)
}

/// Gram coordinates from Cayley coordinates relative to base point 1:
/// a_ij = (s_1i + s_1j - s_ij) / 2, so a_ii = s_1i.
pub fn gram_from_cayley(s: &CayleyVector) -> GramForm {
    let n = s.n();
    let m = n - 1;
    let mat = DMatrix::from_fn(m, m, |r, c| {
        let i = r + 2;
        let j = c + 2;
        if i == j {
            s.get(1, i)
        } else {
            0.5 * (s.get(1, i) + s.get(1, j) - s.get(i, j))
        }
    });
    GramForm { mat }
}

/// Cayley coordinates from Gram coordinates: s_1i = a_ii,
/// s_ij = a_ii + a_jj - 2 a_ij. Exact inverse of gram_from_cayley.
pub fn cayley_from_gram(a: &GramForm) -> Result<CayleyVector, DistanceError> {
    let n = a.n();
    let mut s = BTreeMap::new();
    for i in 2..=n {
        s.insert((1, i), a.entry(i, i));
    }
    for i in 2..=n {
        for j in (i + 1)..=n {
            s.insert((i, j), a.entry(i, i) + a.entry(j, j) - 2.0 * a.entry(i, j));
        }
    }
    for (&(i, j), &value) in &s {
        if value < 0.0 {
            return Err(DistanceError::NegativeSquaredDistance { i, j, value });
        }
    }
    CayleyVector::new(n, s)
}

/// The bordered (n+1) x (n+1) matrix: zero diagonal, unit border at index 0.
pub fn cayley_matrix(s: &CayleyVector) -> CayleyMatrix {
    let n = s.n();
    let mat = DMatrix::from_fn(n + 1, n + 1, |r, c| {
        if r == c {
            0.0
        } else if r == 0 || c == 0 {
            1.0
        } else {
            s.get(r, c)
        }
    });
    CayleyMatrix { n, mat }
}

/// Numerical ranks and determinants of the bordered matrix S and the Gram
/// form A, checked against rank(S) = 2 + rank(A) and
/// det(S) = (-1)^n 2^(n-1) det(A).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankDetReport {
    pub rank_s: usize,
    pub rank_a: usize,
    pub det_s: f64,
    pub det_a: f64,
}

pub fn rank_det_check(s: &CayleyVector, tol: f64) -> Result<RankDetReport, DistanceError> {
    let n = s.n();
    let big = cayley_matrix(s);
    let gram = gram_from_cayley(s);
    let (eig_s, _) = linalg::symmetric_eigen_desc(big.matrix());
    let (eig_a, _) = linalg::symmetric_eigen_desc(gram.matrix());
    let rank_s = linalg::rank_from_eigenvalues(&eig_s, tol);
    let rank_a = linalg::rank_from_eigenvalues(&eig_a, tol);
    let det_s = linalg::det_lu(big.matrix());
    let det_a = linalg::det_lu(gram.matrix());
    if rank_s != 2 + rank_a {
        return Err(DistanceError::IdentityViolation {
            which: "rank",
            detail: format!("rank_S = {rank_s}, 2 + rank_A = {}", 2 + rank_a),
        });
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let expected = sign * 2f64.powi(n as i32 - 1) * det_a;
    if (det_s - expected).abs() > tol * det_s.abs().max(1.0) {
        return Err(DistanceError::IdentityViolation {
            which: "determinant",
            detail: format!("det_S = {det_s}, (-1)^n 2^(n-1) det_A = {expected}"),
        });
    }
    Ok(RankDetReport {
        rank_s,
        rank_a,
        det_s,
        det_a,
    })
}

/// Exact-arithmetic variant of [`rank_det_check`] over rationals; the two
/// identities are verified with zero tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactRankDet {
    pub rank_s: usize,
    pub rank_a: usize,
    pub det_s: BigRational,
    pub det_a: BigRational,
}

pub fn rank_det_check_exact(
    n: usize,
    entries: &BTreeMap<(usize, usize), BigRational>,
) -> Result<ExactRankDet, DistanceError> {
    if n < 2 {
        return Err(DistanceError::TooFewPoints(n));
    }
    let expected = n * (n - 1) / 2;
    if entries.len() != expected {
        return Err(DistanceError::WrongEntryCount {
            n,
            expected,
            got: entries.len(),
        });
    }
    for &(i, j) in entries.keys() {
        if i < 1 || j <= i || j > n {
            return Err(DistanceError::BadIndexPair { i, j, n });
        }
    }
    let get = |i: usize, j: usize| -> BigRational {
        let key = if i < j { (i, j) } else { (j, i) };
        entries[&key].clone()
    };
    let zero = BigRational::zero();
    let one = BigRational::from_integer(1.into());
    let two = BigRational::from_integer(2.into());
    let mut s_mat = vec![vec![zero.clone(); n + 1]; n + 1];
    for (r, row) in s_mat.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            if r == c {
                continue;
            }
            *entry = if r == 0 || c == 0 {
                one.clone()
            } else {
                get(r, c)
            };
        }
    }
    let m = n - 1;
    let mut a_mat = vec![vec![zero.clone(); m]; m];
    for (r, row) in a_mat.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            let i = r + 2;
            let j = c + 2;
            *entry = if i == j {
                get(1, i)
            } else {
                (get(1, i) + get(1, j) - get(i, j)) / &two
            };
        }
    }
    let rank_s = exact::rational_rank(&s_mat);
    let rank_a = exact::rational_rank(&a_mat);
    let det_s = exact::rational_det(&s_mat);
    let det_a = exact::rational_det(&a_mat);
    if rank_s != 2 + rank_a {
        return Err(DistanceError::IdentityViolation {
            which: "rank",
            detail: format!("exact rank_S = {rank_s}, 2 + rank_A = {}", 2 + rank_a),
        });
    }
    let mut pow = BigRational::from_integer(1.into());
    for _ in 0..(n - 1) {
        pow *= BigRational::from_integer(2.into());
    }
    let expected_det = if n.is_multiple_of(2) {
        pow * &det_a
    } else {
        -pow * &det_a
    };
    if det_s != expected_det {
        return Err(DistanceError::IdentityViolation {
            which: "determinant",
            detail: "exact determinants disagree".to_string(),
        });
    }
    Ok(ExactRankDet {
        rank_s,
        rank_a,
        det_s,
        det_a,
    })
}

/// PSD test of the Gram form with spectrum report and minimal embedding
/// dimension.
pub fn realizability(s: &CayleyVector, tol: f64) -> RealizabilityReport {
    let gram = gram_from_cayley(s);
    let (eigenvalues, _) = linalg::symmetric_eigen_desc(gram.matrix());
    realizability_from_spectrum(eigenvalues, tol)
}

fn realizability_from_spectrum(eigenvalues: Vec<f64>, tol: f64) -> RealizabilityReport {
    let norm = eigenvalues.iter().fold(0.0f64, |acc, &l| acc.max(l.abs()));
    let floor = -tol * norm;
    let min_rank = linalg::rank_from_eigenvalues(&eigenvalues, tol);
    let worst = eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, &v)| (i, v))
        .unwrap_or((0, 0.0));
    let realizable = worst.1 >= floor;
    let certificate = if realizable {
        Certificate::EmbeddingDim(min_rank)
    } else {
        Certificate::NegativeEigenvalue {
            index: worst.0,
            value: worst.1,
        }
    };
    RealizabilityReport {
        realizable,
        min_rank,
        eigenvalues,
        certificate,
    }
}

/// Recover a configuration in R^d from squared distances: eigendecompose
/// the Gram form, clamp tolerated negatives to zero, scale the top-d
/// eigenvectors, and prepend the base point at the origin.
pub fn embed(s: &CayleyVector, d: usize, tol: f64) -> Result<Configuration, DistanceError> {
    let report = realizability(s, tol);
    if !report.realizable {
        if let Certificate::NegativeEigenvalue { index, value } = report.certificate {
            return Err(DistanceError::NotRealizable { index, value });
        }
        unreachable!("non-realizable report must carry a negative eigenvalue");
    }
    if report.min_rank > d {
        return Err(DistanceError::RankExceedsTarget {
            min_rank: report.min_rank,
            d,
        });
    }
    let gram = gram_from_cayley(s);
    let (eigenvalues, eigenvectors) = linalg::symmetric_eigen_desc(gram.matrix());
    let n = s.n();
    let mut points = Vec::with_capacity(n);
    points.push(vec![0.0; d]);
    for r in 0..(n - 1) {
        let mut p = Vec::with_capacity(d);
        for k in 0..d {
            let lambda = if k < eigenvalues.len() {
                eigenvalues[k].max(0.0)
            } else {
                0.0
            };
            let q = if k < eigenvalues.len() {
                eigenvectors[(r, k)]
            } else {
                0.0
            };
            p.push(lambda.sqrt() * q);
        }
        points.push(p);
    }
    Configuration::new(d, points)
}
