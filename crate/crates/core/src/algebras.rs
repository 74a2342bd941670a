//! Quaternion and octonion arithmetic over exact or floating scalars,
//! Hermitian and quaternionic Gram matrices of point configurations, the
//! entrywise skew transform with its even-rank computation, and the 2x2 and
//! 3x3 octonionic Hermitian determinants.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::Num;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("need at least two points, got {0}")]
    TooFewPoints(usize),
    #[error("point {index} has {got} coordinates, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("all points coincide; Gram matrix is undefined at scale zero")]
    AllCoincident,
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("entries ({i},{j}) and ({j},{i}) violate self-adjointness by {delta:.3e}")]
    SelfAdjointnessViolation { i: usize, j: usize, delta: f64 },
    #[error("entries ({i},{j}) and ({j},{i}) violate skew-symmetry by {delta:.3e}")]
    NotSkew { i: usize, j: usize, delta: f64 },
    #[error("skew form must have even size, got {0}")]
    OddSize(usize),
    #[error("singular values {hi:.6e} and {lo:.6e} do not pair; input is not numerically skew-symmetric")]
    OddRankAnomaly { hi: f64, lo: f64 },
}

/// Scalar coefficients for the division-algebra types: `f64` for numeric
/// work, `BigRational` for the exact mode.
pub trait Scalar: Clone + Num + Neg<Output = Self> {}
impl<T: Clone + Num + Neg<Output = T>> Scalar for T {}

/// A quaternion a + bi + cj + dk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    from = "(T, T, T, T)",
    into = "(T, T, T, T)",
    bound(serialize = "T: Serialize + Clone", deserialize = "T: Deserialize<'de>")
)]
pub struct Quaternion<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T> From<(T, T, T, T)> for Quaternion<T> {
    fn from((a, b, c, d): (T, T, T, T)) -> Self {
        Quaternion { a, b, c, d }
    }
}

impl<T> From<Quaternion<T>> for (T, T, T, T) {
    fn from(q: Quaternion<T>) -> Self {
        (q.a, q.b, q.c, q.d)
    }
}

impl<T: Scalar> Quaternion<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Quaternion { a, b, c, d }
    }

    pub fn zero() -> Self {
        Self::from_real(T::zero())
    }

    pub fn one() -> Self {
        Self::from_real(T::one())
    }

    pub fn from_real(a: T) -> Self {
        Quaternion {
            a,
            b: T::zero(),
            c: T::zero(),
            d: T::zero(),
        }
    }

    pub fn i() -> Self {
        Quaternion {
            a: T::zero(),
            b: T::one(),
            c: T::zero(),
            d: T::zero(),
        }
    }

    pub fn j() -> Self {
        Quaternion {
            a: T::zero(),
            b: T::zero(),
            c: T::one(),
            d: T::zero(),
        }
    }

    pub fn k() -> Self {
        Quaternion {
            a: T::zero(),
            b: T::zero(),
            c: T::zero(),
            d: T::one(),
        }
    }

    pub fn conj(&self) -> Self {
        Quaternion {
            a: self.a.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: -self.d.clone(),
        }
    }

    pub fn norm_sqr(&self) -> T {
        self.a.clone() * self.a.clone()
            + self.b.clone() * self.b.clone()
            + self.c.clone() * self.c.clone()
            + self.d.clone() * self.d.clone()
    }

    pub fn scale(&self, t: &T) -> Self {
        Quaternion {
            a: self.a.clone() * t.clone(),
            b: self.b.clone() * t.clone(),
            c: self.c.clone() * t.clone(),
            d: self.d.clone() * t.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// First complex coordinate in the splitting x = u + jv: u = a + bi.
    pub fn u(&self) -> Complex<T> {
        Complex::new(self.a.clone(), self.b.clone())
    }

    /// Second complex coordinate in the splitting x = u + jv: v = c - di.
    pub fn v(&self) -> Complex<T> {
        Complex::new(self.c.clone(), -self.d.clone())
    }

    pub fn from_uv(u: Complex<T>, v: Complex<T>) -> Self {
        Quaternion {
            a: u.re,
            b: u.im,
            c: v.re,
            d: -v.im,
        }
    }

    /// The order-four transform x -> x * j; in components
    /// (a, b, c, d) -> (-c, -d, a, b). Its left-multiplication block is
    /// `complex_block(x)` times the block of j, [[0, -1], [1, 0]].
    pub fn sigma(&self) -> Self {
        Quaternion {
            a: -self.c.clone(),
            b: -self.d.clone(),
            c: self.a.clone(),
            d: self.b.clone(),
        }
    }

    /// Left-multiplication block [[u, -conj(v)], [v, conj(u)]].
    pub fn complex_block(&self) -> [[Complex<T>; 2]; 2] {
        let u = self.u();
        let v = self.v();
        [[u.clone(), -v.conj()], [v, u.conj()]]
    }
}

impl Quaternion<f64> {
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn max_component(&self) -> f64 {
        self.a
            .abs()
            .max(self.b.abs())
            .max(self.c.abs())
            .max(self.d.abs())
    }
}

impl<T: Scalar> Mul for &Quaternion<T> {
    type Output = Quaternion<T>;
    fn mul(self, rhs: &Quaternion<T>) -> Quaternion<T> {
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&rhs.a, &rhs.b, &rhs.c, &rhs.d);
        Quaternion {
            a: a1.clone() * a2.clone()
                - b1.clone() * b2.clone()
                - c1.clone() * c2.clone()
                - d1.clone() * d2.clone(),
            b: a1.clone() * b2.clone() + b1.clone() * a2.clone() + c1.clone() * d2.clone()
                - d1.clone() * c2.clone(),
            c: a1.clone() * c2.clone() - b1.clone() * d2.clone()
                + c1.clone() * a2.clone()
                + d1.clone() * b2.clone(),
            d: a1.clone() * d2.clone() + b1.clone() * c2.clone() - c1.clone() * b2.clone()
                + d1.clone() * a2.clone(),
        }
    }
}

impl<T: Scalar> Mul for Quaternion<T> {
    type Output = Quaternion<T>;
    fn mul(self, rhs: Quaternion<T>) -> Quaternion<T> {
        &self * &rhs
    }
}

impl<T: Scalar> Add for &Quaternion<T> {
    type Output = Quaternion<T>;
    fn add(self, rhs: &Quaternion<T>) -> Quaternion<T> {
        Quaternion {
            a: self.a.clone() + rhs.a.clone(),
            b: self.b.clone() + rhs.b.clone(),
            c: self.c.clone() + rhs.c.clone(),
            d: self.d.clone() + rhs.d.clone(),
        }
    }
}

impl<T: Scalar> Add for Quaternion<T> {
    type Output = Quaternion<T>;
    fn add(self, rhs: Quaternion<T>) -> Quaternion<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for &Quaternion<T> {
    type Output = Quaternion<T>;
    fn sub(self, rhs: &Quaternion<T>) -> Quaternion<T> {
        Quaternion {
            a: self.a.clone() - rhs.a.clone(),
            b: self.b.clone() - rhs.b.clone(),
            c: self.c.clone() - rhs.c.clone(),
            d: self.d.clone() - rhs.d.clone(),
        }
    }
}

impl<T: Scalar> Sub for Quaternion<T> {
    type Output = Quaternion<T>;
    fn sub(self, rhs: Quaternion<T>) -> Quaternion<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Neg for &Quaternion<T> {
    type Output = Quaternion<T>;
    fn neg(self) -> Quaternion<T> {
        Quaternion {
            a: -self.a.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: -self.d.clone(),
        }
    }
}

impl<T: Scalar> Neg for Quaternion<T> {
    type Output = Quaternion<T>;
    fn neg(self) -> Quaternion<T> {
        -&self
    }
}

/// An octonion x1 + x2 e built from a quaternion pair by doubling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    from = "((T, T, T, T), (T, T, T, T))",
    into = "((T, T, T, T), (T, T, T, T))",
    bound(serialize = "T: Serialize + Clone", deserialize = "T: Deserialize<'de>")
)]
pub struct Octonion<T> {
    pub x1: Quaternion<T>,
    pub x2: Quaternion<T>,
}

impl<T> From<((T, T, T, T), (T, T, T, T))> for Octonion<T> {
    fn from((x1, x2): ((T, T, T, T), (T, T, T, T))) -> Self {
        Octonion {
            x1: x1.into(),
            x2: x2.into(),
        }
    }
}

impl<T> From<Octonion<T>> for ((T, T, T, T), (T, T, T, T)) {
    fn from(x: Octonion<T>) -> Self {
        (x.x1.into(), x.x2.into())
    }
}

impl<T: Scalar> Octonion<T> {
    pub fn new(x1: Quaternion<T>, x2: Quaternion<T>) -> Self {
        Octonion { x1, x2 }
    }

    pub fn zero() -> Self {
        Octonion {
            x1: Quaternion::zero(),
            x2: Quaternion::zero(),
        }
    }

    pub fn one() -> Self {
        Octonion {
            x1: Quaternion::one(),
            x2: Quaternion::zero(),
        }
    }

    pub fn from_real(a: T) -> Self {
        Octonion {
            x1: Quaternion::from_real(a),
            x2: Quaternion::zero(),
        }
    }

    pub fn from_quaternion(x1: Quaternion<T>) -> Self {
        Octonion {
            x1,
            x2: Quaternion::zero(),
        }
    }

    /// The doubling unit e, with e^2 = -1.
    pub fn e() -> Self {
        Octonion {
            x1: Quaternion::zero(),
            x2: Quaternion::one(),
        }
    }

    /// Conjugate: x1 + x2 e maps to conj(x1) - x2 e.
    pub fn conj(&self) -> Self {
        Octonion {
            x1: self.x1.conj(),
            x2: -&self.x2,
        }
    }

    pub fn norm_sqr(&self) -> T {
        self.x1.norm_sqr() + self.x2.norm_sqr()
    }

    pub fn scale(&self, t: &T) -> Self {
        Octonion {
            x1: self.x1.scale(t),
            x2: self.x2.scale(t),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x1.is_zero() && self.x2.is_zero()
    }

    /// Scalar (real) component.
    pub fn real_part(&self) -> T {
        self.x1.a.clone()
    }
}

impl Octonion<f64> {
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn max_component(&self) -> f64 {
        self.x1.max_component().max(self.x2.max_component())
    }
}

impl<T: Scalar> Mul for &Octonion<T> {
    type Output = Octonion<T>;
    fn mul(self, rhs: &Octonion<T>) -> Octonion<T> {
        let (x1, x2) = (&self.x1, &self.x2);
        let (y1, y2) = (&rhs.x1, &rhs.x2);
        Octonion {
            x1: &(x1 * y1) - &(&y2.conj() * x2),
            x2: &(x2 * &y1.conj()) + &(y2 * x1),
        }
    }
}

impl<T: Scalar> Mul for Octonion<T> {
    type Output = Octonion<T>;
    fn mul(self, rhs: Octonion<T>) -> Octonion<T> {
        &self * &rhs
    }
}

impl<T: Scalar> Add for &Octonion<T> {
    type Output = Octonion<T>;
    fn add(self, rhs: &Octonion<T>) -> Octonion<T> {
        Octonion {
            x1: &self.x1 + &rhs.x1,
            x2: &self.x2 + &rhs.x2,
        }
    }
}

impl<T: Scalar> Add for Octonion<T> {
    type Output = Octonion<T>;
    fn add(self, rhs: Octonion<T>) -> Octonion<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for &Octonion<T> {
    type Output = Octonion<T>;
    fn sub(self, rhs: &Octonion<T>) -> Octonion<T> {
        Octonion {
            x1: &self.x1 - &rhs.x1,
            x2: &self.x2 - &rhs.x2,
        }
    }
}

impl<T: Scalar> Sub for Octonion<T> {
    type Output = Octonion<T>;
    fn sub(self, rhs: Octonion<T>) -> Octonion<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Neg for &Octonion<T> {
    type Output = Octonion<T>;
    fn neg(self) -> Octonion<T> {
        Octonion {
            x1: -&self.x1,
            x2: -&self.x2,
        }
    }
}

impl<T: Scalar> Neg for Octonion<T> {
    type Output = Octonion<T>;
    fn neg(self) -> Octonion<T> {
        -&self
    }
}

pub fn quat_mul<T: Scalar>(x: &Quaternion<T>, y: &Quaternion<T>) -> Quaternion<T> {
    x * y
}

pub fn oct_mul<T: Scalar>(x: &Octonion<T>, y: &Octonion<T>) -> Octonion<T> {
    x * y
}

/// (xy)z - x(yz); zero whenever two arguments are equal or conjugate.
pub fn associator<T: Scalar>(x: &Octonion<T>, y: &Octonion<T>, z: &Octonion<T>) -> Octonion<T> {
    &(&(x * y) * z) - &(x * &(y * z))
}

/// A fixed non-associative triple with all doubling parts nonzero;
/// its associator has norm well above 1.
pub fn associator_witness() -> [Octonion<f64>; 3] {
    [
        Octonion::new(
            Quaternion::new(1.0, 2.0, 3.0, 4.0),
            Quaternion::new(5.0, 6.0, 7.0, 8.0),
        ),
        Octonion::new(
            Quaternion::new(2.0, -1.0, 0.5, 3.0),
            Quaternion::new(-2.0, 4.0, 1.0, -0.5),
        ),
        Octonion::new(
            Quaternion::new(0.0, 1.0, -3.0, 2.0),
            Quaternion::new(1.5, -2.5, 2.0, 1.0),
        ),
    ]
}

/// 2x2 complex left-multiplication matrix of a quaternion.
pub fn quat_to_complex_block(x: &Quaternion<f64>) -> DMatrix<Complex<f64>> {
    let b = x.complex_block();
    DMatrix::from_row_slice(2, 2, &[b[0][0], b[0][1], b[1][0], b[1][1]])
}

/// Self-adjoint complex Gram matrix of an n-point configuration,
/// relative to the first point.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianGram {
    mat: DMatrix<Complex<f64>>,
}

fn validate_points<P: PartialEq>(points: &[Vec<P>]) -> Result<usize, AlgebraError> {
    if points.len() < 2 {
        return Err(AlgebraError::TooFewPoints(points.len()));
    }
    let dim = points[0].len();
    for (idx, p) in points.iter().enumerate() {
        if p.len() != dim {
            return Err(AlgebraError::DimensionMismatch {
                index: idx + 1,
                expected: dim,
                got: p.len(),
            });
        }
    }
    if points.iter().all(|p| *p == points[0]) {
        return Err(AlgebraError::AllCoincident);
    }
    Ok(dim)
}

impl HermitianGram {
    /// Entries <q_i, q_j> = sum_k q_i[k] conj(q_j[k]) for the translated
    /// points q_i = p_{i+1} - p_1; stored exactly self-adjoint.
    pub fn from_points(points: &[Vec<Complex<f64>>]) -> Result<Self, AlgebraError> {
        let dim = validate_points(points)?;
        let m = points.len() - 1;
        let q: Vec<Vec<Complex<f64>>> = (1..points.len())
            .map(|i| (0..dim).map(|k| points[i][k] - points[0][k]).collect())
            .collect();
        let mut mat = DMatrix::zeros(m, m);
        for i in 0..m {
            for j in i..m {
                let mut acc = Complex::new(0.0, 0.0);
                for (x, y) in q[i].iter().zip(&q[j]) {
                    acc += x * y.conj();
                }
                if i == j {
                    mat[(i, i)] = Complex::new(acc.re, 0.0);
                } else {
                    mat[(i, j)] = acc;
                    mat[(j, i)] = acc.conj();
                }
            }
        }
        Ok(HermitianGram { mat })
    }

    /// Wrap a self-adjoint matrix; asymmetry beyond 1e-9 of scale is
    /// rejected, below that it is projected away.
    pub fn from_matrix(mat: DMatrix<Complex<f64>>) -> Result<Self, AlgebraError> {
        if mat.nrows() != mat.ncols() {
            return Err(AlgebraError::NotSquare {
                rows: mat.nrows(),
                cols: mat.ncols(),
            });
        }
        let scale = mat.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
        let m = mat.nrows();
        let mut out = DMatrix::zeros(m, m);
        for i in 0..m {
            if mat[(i, i)].im.abs() > 1e-9 * scale {
                return Err(AlgebraError::SelfAdjointnessViolation {
                    i,
                    j: i,
                    delta: mat[(i, i)].im.abs(),
                });
            }
            out[(i, i)] = Complex::new(mat[(i, i)].re, 0.0);
            for j in (i + 1)..m {
                let delta = (mat[(i, j)] - mat[(j, i)].conj()).norm();
                if delta > 1e-9 * scale {
                    return Err(AlgebraError::SelfAdjointnessViolation { i, j, delta });
                }
                let avg = (mat[(i, j)] + mat[(j, i)].conj()) * Complex::new(0.5, 0.0);
                out[(i, j)] = avg;
                out[(j, i)] = avg.conj();
            }
        }
        Ok(HermitianGram { mat: out })
    }

    pub fn identity(m: usize) -> Self {
        HermitianGram {
            mat: DMatrix::identity(m, m),
        }
    }

    /// Point count n; the matrix is (n-1) x (n-1).
    pub fn n(&self) -> usize {
        self.mat.nrows() + 1
    }

    pub fn matrix(&self) -> &DMatrix<Complex<f64>> {
        &self.mat
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigen_desc(&self.mat).0
    }

    pub fn rank(&self, tol: f64) -> usize {
        linalg::rank_svd_complex(&self.mat, tol)
    }

    /// The plain (non-conjugate) symmetrization (A + A^T)/2, the entrywise
    /// average with the transpose; maps Hermitian Gram data onto complex
    /// symmetric matrices.
    pub fn symmetrized(&self) -> DMatrix<Complex<f64>> {
        (&self.mat + self.mat.transpose()) * Complex::new(0.5, 0.0)
    }
}

pub fn hermitian_gram(points: &[Vec<Complex<f64>>]) -> Result<HermitianGram, AlgebraError> {
    HermitianGram::from_points(points)
}

/// Self-adjoint quaternionic Gram matrix of an n-point configuration,
/// relative to the first point.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperHermitianGram {
    entries: Vec<Vec<Quaternion<f64>>>,
}

impl HyperHermitianGram {
    /// Entries a_ij = sum_k q_i[k] conj(q_j[k]) for the translated points;
    /// this factor order keeps the right span of the columns inside the
    /// d-dimensional point span, so the quaternionic rank is at most d and
    /// the block representation is positive semidefinite. Stored exactly
    /// self-adjoint by mirroring the upper triangle.
    pub fn from_points(points: &[Vec<Quaternion<f64>>]) -> Result<Self, AlgebraError> {
        let dim = validate_points(points)?;
        let m = points.len() - 1;
        let q: Vec<Vec<Quaternion<f64>>> = (1..points.len())
            .map(|i| {
                (0..dim)
                    .map(|k| &points[i][k] - &points[0][k])
                    .collect()
            })
            .collect();
        let mut entries = vec![vec![Quaternion::zero(); m]; m];
        for i in 0..m {
            for j in i..m {
                let mut acc = Quaternion::zero();
                for (x, y) in q[i].iter().zip(&q[j]) {
                    acc = &acc + &(x * &y.conj());
                }
                if i == j {
                    entries[i][i] = Quaternion::from_real(acc.a);
                } else {
                    entries[j][i] = acc.conj();
                    entries[i][j] = acc;
                }
            }
        }
        Ok(HyperHermitianGram { entries })
    }

    /// Wrap a square quaternionic matrix; self-adjointness is required
    /// within 1e-9 of scale and the entries are kept as given.
    pub fn from_entries(entries: Vec<Vec<Quaternion<f64>>>) -> Result<Self, AlgebraError> {
        let m = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != m {
                return Err(AlgebraError::NotSquare {
                    rows: m,
                    cols: entries[i].len(),
                });
            }
        }
        let scale = entries
            .iter()
            .flatten()
            .map(Quaternion::max_component)
            .fold(1.0f64, f64::max);
        for (i, row) in entries.iter().enumerate() {
            for (j, upper) in row.iter().enumerate().skip(i) {
                let delta = (&upper.conj() - &entries[j][i]).max_component();
                if delta > 1e-9 * scale {
                    return Err(AlgebraError::SelfAdjointnessViolation { i, j, delta });
                }
            }
        }
        Ok(HyperHermitianGram { entries })
    }

    pub fn identity(m: usize) -> Self {
        let mut entries = vec![vec![Quaternion::zero(); m]; m];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = Quaternion::one();
        }
        HyperHermitianGram { entries }
    }

    /// Point count n; the matrix is (n-1) x (n-1).
    pub fn n(&self) -> usize {
        self.entries.len() + 1
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Quaternion<f64> {
        &self.entries[i][j]
    }

    /// The 2m x 2m complex matrix obtained by replacing each entry with
    /// its left-multiplication block.
    pub fn complex_representation(&self) -> DMatrix<Complex<f64>> {
        let m = self.entries.len();
        let mut out = DMatrix::zeros(2 * m, 2 * m);
        for i in 0..m {
            for j in 0..m {
                let b = self.entries[i][j].complex_block();
                for (r, row) in b.iter().enumerate() {
                    for (c, z) in row.iter().enumerate() {
                        out[(2 * i + r, 2 * j + c)] = *z;
                    }
                }
            }
        }
        out
    }

    /// Half the complex rank of the block representation.
    pub fn quaternionic_rank(&self, tol: f64) -> usize {
        let r = linalg::rank_svd_complex(&self.complex_representation(), tol);
        r / 2 + r % 2
    }
}

pub fn hyper_hermitian_gram(
    points: &[Vec<Quaternion<f64>>],
) -> Result<HyperHermitianGram, AlgebraError> {
    HyperHermitianGram::from_points(points)
}

/// An exactly skew-symmetric complex matrix of even size.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewForm {
    mat: DMatrix<Complex<f64>>,
}

impl SkewForm {
    /// Wrap a matrix; skew violations beyond 1e-12 of scale are rejected,
    /// below that the matrix is projected to (M - M^T)/2, which is skew
    /// to the last bit.
    pub fn from_matrix(mat: DMatrix<Complex<f64>>) -> Result<Self, AlgebraError> {
        if mat.nrows() != mat.ncols() {
            return Err(AlgebraError::NotSquare {
                rows: mat.nrows(),
                cols: mat.ncols(),
            });
        }
        let m = mat.nrows();
        if !m.is_multiple_of(2) {
            return Err(AlgebraError::OddSize(m));
        }
        let scale = mat.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
        let mut out = DMatrix::zeros(m, m);
        for i in 0..m {
            for j in i..m {
                let delta = (mat[(i, j)] + mat[(j, i)]).norm();
                if delta > 1e-12 * scale {
                    return Err(AlgebraError::NotSkew { i, j, delta });
                }
                if i != j {
                    let half = (mat[(i, j)] - mat[(j, i)]) * Complex::new(0.5, 0.0);
                    out[(i, j)] = half;
                    out[(j, i)] = -half;
                }
            }
        }
        Ok(SkewForm { mat: out })
    }

    pub fn size(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex<f64>> {
        &self.mat
    }
}

/// Apply the entrywise transform x -> x * j to a self-adjoint quaternionic
/// matrix and expand every entry to its complex block; the result equals the
/// complex representation times a block-diagonal stack of [[0, -1], [1, 0]].
/// The output is skew-symmetric bit for bit: the lower triangle of blocks is
/// generated from the conjugated upper triangle, which the transform sends
/// to exact negated transposes. Its rank is twice the quaternionic rank of
/// the input.
pub fn sigma_map(a: &HyperHermitianGram, tol: f64) -> Result<SkewForm, AlgebraError> {
    let m = a.size();
    let scale = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .map(|(i, j)| a.entry(i, j).max_component())
        .fold(1.0f64, f64::max);
    for i in 0..m {
        for j in i..m {
            let delta = (&a.entry(i, j).conj() - a.entry(j, i)).max_component();
            if delta > tol * scale {
                return Err(AlgebraError::SelfAdjointnessViolation { i, j, delta });
            }
        }
    }
    let mut out = DMatrix::zeros(2 * m, 2 * m);
    let mut put = |bi: usize, bj: usize, q: &Quaternion<f64>| {
        let b = q.sigma().complex_block();
        for (r, row) in b.iter().enumerate() {
            for (c, z) in row.iter().enumerate() {
                out[(2 * bi + r, 2 * bj + c)] = *z;
            }
        }
    };
    for i in 0..m {
        put(i, i, &Quaternion::from_real(a.entry(i, i).a));
        for j in (i + 1)..m {
            put(i, j, a.entry(i, j));
            put(j, i, &a.entry(i, j).conj());
        }
    }
    Ok(SkewForm { mat: out })
}

/// Numerical rank of a skew form, resolved to an even integer. A rank
/// count that lands inside a paired singular value is rounded by the pair
/// midpoint; an unpaired value signals a non-skew input.
pub fn pfaffian_rank(m: &SkewForm, tol: f64) -> Result<usize, AlgebraError> {
    let sv = linalg::singular_values_complex(m.matrix());
    let top = sv.first().copied().unwrap_or(0.0);
    let threshold = tol * top.max(1.0);
    let r = sv.iter().filter(|&&s| s > threshold).count();
    if r % 2 == 0 {
        return Ok(r);
    }
    let hi = sv[r - 1];
    let lo = if r < sv.len() { sv[r] } else { 0.0 };
    if hi - lo <= 1e-6 * hi {
        Ok(if (hi + lo) / 2.0 > threshold { r + 1 } else { r - 1 })
    } else {
        Err(AlgebraError::OddRankAnomaly { hi, lo })
    }
}

/// Test whether an even complex matrix is fixed by the blockwise
/// involution (rotate each 2x2 block by pi, negate the second diagonal,
/// conjugate): block [[p, q], [r, s]] must satisfy p = conj(s) and
/// q = -conj(r). The fixed locus is the image of `sigma_map`.
pub fn is_quaternionic_real(m: &DMatrix<Complex<f64>>, tol: f64) -> Result<bool, AlgebraError> {
    if m.nrows() != m.ncols() {
        return Err(AlgebraError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if !m.nrows().is_multiple_of(2) {
        return Err(AlgebraError::OddSize(m.nrows()));
    }
    let scale = m.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
    let half = m.nrows() / 2;
    for bi in 0..half {
        for bj in 0..half {
            let p = m[(2 * bi, 2 * bj)];
            let q = m[(2 * bi, 2 * bj + 1)];
            let r = m[(2 * bi + 1, 2 * bj)];
            let s = m[(2 * bi + 1, 2 * bj + 1)];
            if (p - s.conj()).norm() > tol * scale || (q + r.conj()).norm() > tol * scale {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Determinant of the 2x2 octonionic Hermitian matrix [[alpha, x],
/// [conj(x), beta]]: alpha beta - |x|^2.
pub fn oct_herm_det2<T: Scalar>(alpha: T, beta: T, x: &Octonion<T>) -> T {
    alpha * beta - x.norm_sqr()
}

/// A 3x3 octonionic Hermitian matrix: real diagonal (alpha, beta, gamma)
/// and octonion entries laid out as [[alpha, z, y], [conj(z), beta, x],
/// [conj(y), conj(x), gamma]].
#[derive(Debug, Clone, PartialEq)]
pub struct OctHermitian3<T> {
    entries: [[Octonion<T>; 3]; 3],
}

impl<T: Scalar> OctHermitian3<T> {
    pub fn new(diag: [T; 3], x: Octonion<T>, y: Octonion<T>, z: Octonion<T>) -> Self {
        let [alpha, beta, gamma] = diag;
        OctHermitian3 {
            entries: [
                [Octonion::from_real(alpha), z.clone(), y.clone()],
                [z.conj(), Octonion::from_real(beta), x.clone()],
                [y.conj(), x.conj(), Octonion::from_real(gamma)],
            ],
        }
    }

    /// Validate an explicit entry grid: diagonal exactly real, lower
    /// triangle exactly the conjugate of the upper.
    pub fn from_entries(entries: [[Octonion<T>; 3]; 3]) -> Result<Self, AlgebraError> {
        for (i, row) in entries.iter().enumerate() {
            for (j, upper) in row.iter().enumerate().skip(i) {
                let ok = if i == j {
                    *upper == Octonion::from_real(upper.real_part())
                } else {
                    entries[j][i] == upper.conj()
                };
                if !ok {
                    return Err(AlgebraError::SelfAdjointnessViolation {
                        i,
                        j,
                        delta: f64::NAN,
                    });
                }
            }
        }
        Ok(OctHermitian3 { entries })
    }

    pub fn entries(&self) -> &[[Octonion<T>; 3]; 3] {
        &self.entries
    }
}

fn oct_mat_mul<T: Scalar>(
    a: &[[Octonion<T>; 3]; 3],
    b: &[[Octonion<T>; 3]; 3],
) -> [[Octonion<T>; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = Octonion::zero();
            for (k, bk) in b.iter().enumerate() {
                acc = &acc + &(&a[i][k] * &bk[j]);
            }
            acc
        })
    })
}

fn oct_mat_trace<T: Scalar>(a: &[[Octonion<T>; 3]; 3]) -> T {
    a[0][0].real_part() + a[1][1].real_part() + a[2][2].real_part()
}

/// Determinant via the trace polynomial
/// Tr(A^3)/3 - Tr(A) Tr(A^2)/2 + Tr(A)^3/6, with the cube taken in the
/// symmetrized product (AB + BA)/2 so that it is unambiguous despite
/// non-associativity.
pub fn oct_herm_det3<T: Scalar>(a: &OctHermitian3<T>) -> T {
    let two = T::one() + T::one();
    let three = two.clone() + T::one();
    let six = two.clone() * three.clone();
    let m = &a.entries;
    let m2 = oct_mat_mul(m, m);
    let m2m = oct_mat_mul(&m2, m);
    let mm2 = oct_mat_mul(m, &m2);
    let tr1 = oct_mat_trace(m);
    let tr2 = oct_mat_trace(&m2);
    let tr3 = (oct_mat_trace(&m2m) + oct_mat_trace(&mm2)) / two.clone();
    tr3 / three - tr1.clone() * tr2 / two + tr1.clone() * tr1.clone() * tr1 / six
}
