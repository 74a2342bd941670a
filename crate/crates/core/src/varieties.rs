//! Closed-form invariants for the rank-stratified matrix families over the
//! four normed division algebras: dimension, ambient dimension, exact
//! degree, sectional genus, the projective-dual index map, and defining
//! minor systems with a numeric evaluator.

use nalgebra::DMatrix;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::binomial_rational;

#[derive(Debug, Error)]
pub enum VarietyError {
    #[error("no ({family:?}, d={d}, n={n}) member: need 1 <= d <= n-1, n >= 2, and for O one of (1,3),(2,3),(1,4),(2,4),(3,4)")]
    InvalidVariety { family: Family, d: usize, n: usize },
    #[error("{op} is not provided for family {family:?}")]
    UnsupportedFamily { family: Family, op: &'static str },
    #[error("{0}")]
    DomainError(String),
    #[error("product formula produced a non-integer {0}; implementation bug")]
    NonIntegerProduct(String),
    #[error("matrix is {got}x{got} but the minor system expects {expected}x{expected}")]
    SizeMismatch { expected: usize, got: usize },
}

/// Coefficient algebra of the matrix family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    R,
    C,
    H,
    O,
}

/// One member of the family: rank bound d on configurations of n points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarietyId {
    pub family: Family,
    pub d: usize,
    pub n: usize,
}

const OCTONION_TABLE: [(usize, usize); 5] = [(1, 3), (2, 3), (1, 4), (2, 4), (3, 4)];

impl VarietyId {
    pub fn new(family: Family, d: usize, n: usize) -> Result<Self, VarietyError> {
        let valid = match family {
            Family::O => OCTONION_TABLE.contains(&(d, n)),
            _ => n >= 2 && d >= 1 && d < n,
        };
        if !valid {
            return Err(VarietyError::InvalidVariety { family, d, n });
        }
        Ok(VarietyId { family, d, n })
    }
}

/// Complex dimension of the rank-<=d locus.
pub fn dimension(v: VarietyId) -> Result<usize, VarietyError> {
    let (d, n) = (v.d, v.n);
    match v.family {
        Family::R => Ok(d * (n - 1) - d * (d - 1) / 2 - 1),
        Family::C => Ok(2 * d * (n - 1) - d * d - 1),
        Family::H => Ok(4 * d * (n - 1) - d * (2 * d + 1) - 1),
        Family::O => Err(VarietyError::UnsupportedFamily {
            family: Family::O,
            op: "dimension",
        }),
    }
}

/// Dimension of the ambient projective space (the d = n-1 member).
pub fn ambient_dimension(v: VarietyId) -> usize {
    let n = v.n;
    match v.family {
        Family::R => n * (n - 1) / 2 - 1,
        Family::C => (n - 1) * (n - 1) - 1,
        Family::H => (2 * n - 2) * (2 * n - 3) / 2 - 1,
        Family::O => match n {
            3 => 9,
            _ => 26,
        },
    }
}

fn product_to_integer(
    terms: impl Iterator<Item = BigRational>,
    label: &str,
) -> Result<BigUint, VarietyError> {
    let mut acc = BigRational::one();
    for t in terms {
        acc *= t;
    }
    if !acc.is_integer() || acc.is_negative() || acc.is_zero() {
        return Err(VarietyError::NonIntegerProduct(format!("{label}: {acc}")));
    }
    Ok(acc
        .to_integer()
        .to_biguint()
        .expect("positive integer product"))
}

/// Exact degree of the rank-<=d locus; 1 for d = n-1 (the ambient space).
pub fn degree(v: VarietyId) -> Result<BigUint, VarietyError> {
    let (d, n) = (v.d as i64, v.n as i64);
    if v.d == v.n - 1 {
        return Ok(BigUint::one());
    }
    match v.family {
        Family::R => product_to_integer(
            (0..=(n - d - 2)).map(|k| {
                binomial_rational(n - 1 + k, n - d - 1 - k) / binomial_rational(2 * k + 1, k)
            }),
            "symmetric degree",
        ),
        Family::C => product_to_integer(
            (0..=(n - d - 2))
                .map(|k| binomial_rational(n - 1 + k, d) / binomial_rational(d + k, k)),
            "general degree",
        ),
        Family::H => {
            let (_, second) = pfaffian_degree_both(v.d, v.n)?;
            if !second.is_integer() {
                return Err(VarietyError::NonIntegerProduct(format!(
                    "skew degree: {second}"
                )));
            }
            Ok(second
                .to_integer()
                .to_biguint()
                .expect("positive integer product"))
        }
        Family::O => Err(VarietyError::UnsupportedFamily {
            family: Family::O,
            op: "degree",
        }),
    }
}

/// Degree of the rank-<=2 symmetric locus: C(2n-4, n-2) / 2, exact.
pub fn degree_cm2(n: usize) -> Result<BigUint, VarietyError> {
    if n < 3 {
        return Err(VarietyError::DomainError(format!(
            "degree_cm2 needs n >= 3, got {n}"
        )));
    }
    let n = n as i64;
    let half = binomial_rational(2 * n - 4, n - 2) / BigRational::from_integer(2.into());
    if !half.is_integer() {
        return Err(VarietyError::NonIntegerProduct(format!("half binomial: {half}")));
    }
    Ok(half.to_integer().to_biguint().expect("positive"))
}

/// Sectional genus of the rank-<=2 symmetric locus for n >= 4:
/// 1 + (n-4)/4 * C(2n-4, n-2), exact and asserted integral.
pub fn sectional_genus(n: usize) -> Result<BigInt, VarietyError> {
    if n < 4 {
        return Err(VarietyError::DomainError(format!(
            "sectional genus needs n >= 4, got {n}"
        )));
    }
    let ni = n as i64;
    let g = BigRational::one()
        + BigRational::new(BigInt::from(ni - 4), BigInt::from(4))
            * binomial_rational(2 * ni - 4, ni - 2);
    if !g.is_integer() {
        return Err(VarietyError::NonIntegerProduct(format!("genus: {g}")));
    }
    Ok(g.to_integer())
}

/// Both printed product expressions for the degree of the skew family,
/// evaluated independently for equality testing.
pub fn pfaffian_degree_both(
    d: usize,
    n: usize,
) -> Result<(BigRational, BigRational), VarietyError> {
    if !(1 <= d && d + 2 <= n) {
        return Err(VarietyError::DomainError(format!(
            "pfaffian degree needs 1 <= d <= n-2, got d={d}, n={n}"
        )));
    }
    let (d, n) = (d as i64, n as i64);
    let mut first = BigRational::one();
    for i in 0..=(2 * n - 2 * d - 4) {
        first *= binomial_rational(2 * n - 2 + i, 2 * d + 2 * i + 1)
            / binomial_rational(2 * i + 1, i);
    }
    let mut denom = BigRational::one();
    for _ in 0..(2 * n - 2 * d - 3) {
        denom *= BigRational::from_integer(2.into());
    }
    first /= denom;

    let mut second = BigRational::one();
    let m = 2 * n - 2 * d - 3;
    for i in 1..=m {
        for j in i..=m {
            second *= BigRational::new(BigInt::from(2 * d + i + j), BigInt::from(i + j));
        }
    }
    Ok((first, second))
}

/// Projective dual within the family: d maps to n-d-1.
pub fn dual(v: VarietyId) -> Result<VarietyId, VarietyError> {
    if v.d > v.n - 2 {
        return Err(VarietyError::DomainError(format!(
            "the ambient member d = n-1 = {} has no dual in the family",
            v.d
        )));
    }
    VarietyId::new(v.family, v.n - 1 - v.d, v.n)
}

/// Assembled invariants of one family member. Degree is omitted for the
/// octonionic family and for the ambient member d = n-1 (where it is 1);
/// sectional genus only applies to the symmetric d = 2 members with n >= 4.
#[derive(Debug, Clone, PartialEq)]
pub struct VarietyInvariants {
    pub ambient_dim: usize,
    pub dim: Option<usize>,
    pub degree: Option<BigUint>,
    pub sectional_genus: Option<BigInt>,
    pub dual_d: usize,
    pub singular_locus_d: usize,
}

pub fn invariants(v: VarietyId) -> VarietyInvariants {
    let genus = if v.family == Family::R && v.d == 2 && v.n >= 4 {
        sectional_genus(v.n).ok()
    } else {
        None
    };
    VarietyInvariants {
        ambient_dim: ambient_dimension(v),
        dim: dimension(v).ok(),
        degree: if v.d == v.n - 1 { None } else { degree(v).ok() },
        sectional_genus: genus,
        dual_d: v.n - 1 - v.d,
        singular_locus_d: v.d - 1,
    }
}

/// Which symbolic matrix the minors are taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinorSource {
    /// (d+1)-minors of the symmetric (n-1) x (n-1) Gram matrix,
    /// labels 2..=n.
    Gram,
    /// (d+3)-minors of the bordered (n+1) x (n+1) distance matrix,
    /// labels 0..=n.
    Cayley,
}

/// One minor: row and column label sets of equal cardinality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// All size-k minors defining the rank locus, as unordered pairs of
/// row/column subsets (asymmetric pairs included once).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinorSystem {
    pub variety: VarietyId,
    pub source: MinorSource,
    pub size: usize,
    pub minors: Vec<Minor>,
}

fn k_subsets(labels: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(labels: &[usize], k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for idx in start..labels.len() {
            current.push(labels[idx]);
            rec(labels, k, idx + 1, current, out);
            current.pop();
        }
    }
    rec(labels, k, 0, &mut current, &mut out);
    out
}

pub fn defining_minors(
    v: VarietyId,
    source: MinorSource,
) -> Result<MinorSystem, VarietyError> {
    if v.family != Family::R {
        return Err(VarietyError::UnsupportedFamily {
            family: v.family,
            op: "defining_minors",
        });
    }
    if v.d > v.n - 2 {
        return Err(VarietyError::DomainError(format!(
            "minor systems need d <= n-2, got d={}, n={}",
            v.d, v.n
        )));
    }
    let (labels, size): (Vec<usize>, usize) = match source {
        MinorSource::Gram => ((2..=v.n).collect(), v.d + 1),
        MinorSource::Cayley => ((0..=v.n).collect(), v.d + 3),
    };
    if size > labels.len() {
        return Err(VarietyError::DomainError(format!(
            "{size}x{size} minors do not fit a {}x{} matrix",
            labels.len(),
            labels.len()
        )));
    }
    let subsets = k_subsets(&labels, size);
    let mut minors = Vec::new();
    for (a, rows) in subsets.iter().enumerate() {
        for cols in subsets.iter().skip(a) {
            minors.push(Minor {
                rows: rows.clone(),
                cols: cols.clone(),
            });
        }
    }
    Ok(MinorSystem {
        variety: v,
        source,
        size,
        minors,
    })
}

/// Result of evaluating a minor system on a numeric matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinorEvaluation {
    pub max_abs: f64,
    pub all_vanish: bool,
}

/// Evaluate all minors of a system on a concrete matrix (Gram-sized
/// (n-1) x (n-1) or bordered (n+1) x (n+1), depending on source); the
/// system vanishes when every minor determinant is at most
/// tol * max(1, largest absolute entry)^size in magnitude.
pub fn evaluate_minors(
    system: &MinorSystem,
    matrix: &DMatrix<f64>,
    tol: f64,
) -> Result<MinorEvaluation, VarietyError> {
    let (expected, offset) = match system.source {
        MinorSource::Gram => (system.variety.n - 1, 2usize),
        MinorSource::Cayley => (system.variety.n + 1, 0usize),
    };
    if matrix.nrows() != expected || matrix.ncols() != expected {
        return Err(VarietyError::SizeMismatch {
            expected,
            got: matrix.nrows(),
        });
    }
    let mut max_abs = 0.0f64;
    for minor in &system.minors {
        let k = minor.rows.len();
        let sub = DMatrix::from_fn(k, k, |r, c| {
            matrix[(minor.rows[r] - offset, minor.cols[c] - offset)]
        });
        max_abs = max_abs.max(crate::linalg::det_lu(&sub).abs());
    }
    let entry_scale = matrix.abs().max().max(1.0);
    let threshold = tol * entry_scale.powi(system.size as i32);
    Ok(MinorEvaluation {
        max_abs,
        all_vanish: max_abs <= threshold,
    })
}
