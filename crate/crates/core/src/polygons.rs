//! Polygon linkages: edge-length standardization and admissibility, the
//! exhaustive wall scan over sign vectors, the cyclic linkage assembly,
//! moduli dimension, collinear realizations on walls, and the octic
//! polynomial that vanishes on the embedded three-torus.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distances::Configuration;
use crate::rigidity::LinkageSpec;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolygonError {
    #[error("need at least 3 edges, got {n}")]
    TooFewEdges { n: usize },
    #[error("edge length {index} must be positive and finite, got {value}")]
    NonpositiveEntry { index: usize, value: f64 },
    #[error("wall scan supports at most {max} edges, got {n}")]
    TooManyEdges { n: usize, max: usize },
    #[error("radius must lie strictly between 0 and 1, got {r}")]
    InvalidRadius { r: f64 },
    #[error("sign vector length {got} does not match edge count {expected}")]
    WitnessLengthMismatch { expected: usize, got: usize },
    #[error("sign vector entry {index} must be +1 or -1, got {value}")]
    BadSign { index: usize, value: i32 },
    #[error("signed edge sum {sum} is not within {tol} of zero")]
    NotOnWall { sum: f64, tol: f64 },
}

/// Positive polygon edge lengths q_1..q_n (lengths, not squares), n >= 3.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct EdgeLengthVector {
    q: Vec<f64>,
}

impl From<EdgeLengthVector> for Vec<f64> {
    fn from(v: EdgeLengthVector) -> Self {
        v.q
    }
}

impl TryFrom<Vec<f64>> for EdgeLengthVector {
    type Error = PolygonError;
    fn try_from(q: Vec<f64>) -> Result<Self, PolygonError> {
        EdgeLengthVector::new(q)
    }
}

impl EdgeLengthVector {
    pub fn new(q: Vec<f64>) -> Result<Self, PolygonError> {
        if q.len() < 3 {
            return Err(PolygonError::TooFewEdges { n: q.len() });
        }
        for (idx, &value) in q.iter().enumerate() {
            if !value.is_finite() || value <= 0.0 {
                return Err(PolygonError::NonpositiveEntry {
                    index: idx + 1,
                    value,
                });
            }
        }
        Ok(EdgeLengthVector { q })
    }

    pub fn n(&self) -> usize {
        self.q.len()
    }

    pub fn lengths(&self) -> &[f64] {
        &self.q
    }

    pub fn total(&self) -> f64 {
        self.q.iter().sum()
    }
}

/// Rescale so the lengths sum to one.
pub fn standardize(q: &EdgeLengthVector) -> EdgeLengthVector {
    let total = q.total();
    EdgeLengthVector {
        q: q.lengths().iter().map(|&v| v / total).collect(),
    }
}

/// Closed admissibility: no edge longer than the sum of the rest. On
/// standardized input this is the max q_i <= 1/2 test.
pub fn is_admissible(q: &EdgeLengthVector) -> bool {
    let max = q.lengths().iter().fold(0.0f64, |acc, &v| acc.max(v));
    2.0 * max <= q.total()
}

/// Wall membership of an edge-length vector: the sign vectors with
/// |sum eps_i q_i| <= tol, up to the global flip (normalized to
/// eps_1 = +1), and the smallest margin over all sign vectors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WallReport {
    pub on_wall: bool,
    pub witnesses: Vec<Vec<i32>>,
    pub distance_to_nearest_wall: f64,
}

#[allow(clippy::too_many_arguments)]
fn wall_dfs(
    k: usize,
    partial: f64,
    sorted: &[f64],
    suffix: &[f64],
    tol: f64,
    signs: &mut [i32],
    order: &[usize],
    witnesses: &mut Vec<Vec<i32>>,
    best: &mut f64,
) {
    let n = sorted.len();
    let unreachable_below = partial.abs() - suffix[k];
    if unreachable_below > tol && unreachable_below > *best {
        return;
    }
    if k == n {
        let margin = partial.abs();
        if margin < *best {
            *best = margin;
        }
        if margin <= tol {
            let mut eps = vec![0i32; n];
            for (pos, &orig) in order.iter().enumerate() {
                eps[orig] = signs[pos];
            }
            if eps[0] < 0 {
                for e in eps.iter_mut() {
                    *e = -*e;
                }
            }
            witnesses.push(eps);
        }
        return;
    }
    for s in [1i32, -1] {
        if k == 0 && s < 0 {
            continue;
        }
        signs[k] = s;
        wall_dfs(
            k + 1,
            partial + f64::from(s) * sorted[k],
            sorted,
            suffix,
            tol,
            signs,
            order,
            witnesses,
            best,
        );
    }
}

/// Exhaustive scan of the 2^(n-1) sign classes with branch-and-bound
/// pruning on descending partial sums.
pub fn wall_report(q: &EdgeLengthVector, tol: f64) -> Result<WallReport, PolygonError> {
    let n = q.n();
    if n > 30 {
        return Err(PolygonError::TooManyEdges { n, max: 30 });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| q.lengths()[b].total_cmp(&q.lengths()[a]).then(a.cmp(&b)));
    let sorted: Vec<f64> = order.iter().map(|&i| q.lengths()[i]).collect();
    let mut suffix = vec![0.0; n + 1];
    for k in (0..n).rev() {
        suffix[k] = suffix[k + 1] + sorted[k];
    }
    let mut signs = vec![1i32; n];
    let mut witnesses = Vec::new();
    let mut best = f64::INFINITY;
    wall_dfs(
        0,
        0.0,
        &sorted,
        &suffix,
        tol,
        &mut signs,
        &order,
        &mut witnesses,
        &mut best,
    );
    witnesses.sort();
    Ok(WallReport {
        on_wall: !witnesses.is_empty(),
        witnesses,
        distance_to_nearest_wall: best,
    })
}

/// The cyclic linkage on n vertices with squared lengths sigma_{i,i+1} =
/// q_i^2 (indices mod n).
pub fn polygon_linkage(q: &EdgeLengthVector) -> LinkageSpec {
    let n = q.n();
    let mut edges = Vec::with_capacity(n);
    let mut sigma = BTreeMap::new();
    for i in 1..n {
        edges.push((i, i + 1));
        sigma.insert((i, i + 1), q.lengths()[i - 1] * q.lengths()[i - 1]);
    }
    edges.push((1, n));
    sigma.insert((1, n), q.lengths()[n - 1] * q.lengths()[n - 1]);
    LinkageSpec::new(n, edges, sigma).expect("a cycle with positive lengths is a valid linkage")
}

/// Dimension n - 3 of the polygon moduli space off the walls.
pub fn polygon_space_dimension(n: usize) -> Result<usize, PolygonError> {
    if n < 3 {
        return Err(PolygonError::TooFewEdges { n });
    }
    Ok(n - 3)
}

/// A collinear polygon realization for a wall witness: vertex k+1 sits at
/// the k-th signed partial sum of the edge lengths.
pub fn collinear_realization(
    q: &EdgeLengthVector,
    eps: &[i32],
    tol: f64,
) -> Result<Configuration, PolygonError> {
    let n = q.n();
    if eps.len() != n {
        return Err(PolygonError::WitnessLengthMismatch {
            expected: n,
            got: eps.len(),
        });
    }
    for (idx, &e) in eps.iter().enumerate() {
        if e != 1 && e != -1 {
            return Err(PolygonError::BadSign {
                index: idx + 1,
                value: e,
            });
        }
    }
    let sum: f64 = eps
        .iter()
        .zip(q.lengths())
        .map(|(&e, &len)| f64::from(e) * len)
        .sum();
    if sum.abs() > tol {
        return Err(PolygonError::NotOnWall { sum, tol });
    }
    let mut positions = Vec::with_capacity(n);
    let mut x = 0.0;
    positions.push(vec![0.0]);
    for (&e, &len) in eps.iter().zip(q.lengths()).take(n - 1) {
        x += f64::from(e) * len;
        positions.push(vec![x]);
    }
    Ok(Configuration::new(1, positions).expect("first edge has positive length"))
}

/// The octic LHS - RHS at (a, b, c, d) for torus radius r:
/// [S^2 - 2r^2 S + (2 - r^2)^2]^2 - 64 (a^2+b^2)(c^2+d^2) with
/// S = a^2+b^2+c^2+d^2.
pub fn octic_value(a: f64, b: f64, c: f64, d: f64, r: f64) -> f64 {
    let s = a * a + b * b + c * c + d * d;
    let inner = s * s - 2.0 * r * r * s + (2.0 - r * r) * (2.0 - r * r);
    inner * inner - 64.0 * (a * a + b * b) * (c * c + d * d)
}

/// Point of the embedded three-torus: (lambda x1, lambda x2, mu x3, mu x4)
/// with lambda = 1 + r cos(theta), mu = 1 + r sin(theta), and unit circles
/// x = (cos phi1, sin phi1), (cos phi2, sin phi2). Requires 0 < r < 1.
pub fn torus_point(r: f64, theta: f64, phi1: f64, phi2: f64) -> Result<[f64; 4], PolygonError> {
    if !(r > 0.0 && r < 1.0) {
        return Err(PolygonError::InvalidRadius { r });
    }
    let lambda = 1.0 + r * theta.cos();
    let mu = 1.0 + r * theta.sin();
    Ok([
        lambda * phi1.cos(),
        lambda * phi1.sin(),
        mu * phi2.cos(),
        mu * phi2.sin(),
    ])
}
