//! Laman-graph verification, linkage specifications and their Cayley-space
//! sections, the realization-count bound, the rigidity Jacobian, and a
//! deterministic multi-start Newton enumerator for planar realizations up
//! to congruence.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distances::{CayleyVector, Configuration};
use crate::linalg;
use crate::varieties;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RigidityError {
    #[error("need at least {min} vertices, got {n}")]
    TooFewVertices { n: usize, min: usize },
    #[error("edge ({i},{j}) out of range for n = {n}")]
    InvalidEdge { i: usize, j: usize, n: usize },
    #[error("duplicate edge ({i},{j})")]
    DuplicateEdge { i: usize, j: usize },
    #[error("sigma missing for edge ({i},{j})")]
    MissingSigma { i: usize, j: usize },
    #[error("sigma key ({i},{j}) is not an edge")]
    SigmaKeyNotAnEdge { i: usize, j: usize },
    #[error("sigma for edge ({i},{j}) must be finite and nonnegative, got {value}")]
    InvalidSigma { i: usize, j: usize, value: f64 },
    #[error("graph is not connected")]
    NotConnected,
    #[error("sigma is identically zero")]
    AllZeroSigma,
    #[error("not a Laman graph: {reason}")]
    NotLaman { reason: String },
    #[error("operation supports at most {max} vertices, got {n}")]
    TooManyVertices { n: usize, max: usize },
    #[error("configuration must be planar, got dimension {dim}")]
    NotPlanar { dim: usize },
    #[error("point count mismatch: {a} vs {b}")]
    PointCountMismatch { a: usize, b: usize },
}

fn validate_graph(n: usize, edges: &[(usize, usize)]) -> Result<(), RigidityError> {
    if n < 2 {
        return Err(RigidityError::TooFewVertices { n, min: 2 });
    }
    let mut seen = std::collections::BTreeSet::new();
    for &(i, j) in edges {
        if i < 1 || j <= i || j > n {
            return Err(RigidityError::InvalidEdge { i, j, n });
        }
        if !seen.insert((i, j)) {
            return Err(RigidityError::DuplicateEdge { i, j });
        }
    }
    Ok(())
}

/// Verdict of the Laman test, with a reason and a sparsity-violating
/// vertex subset when the answer is negative.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LamanReport {
    pub laman: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violating_subset: Option<Vec<usize>>,
}

impl LamanReport {
    fn yes() -> Self {
        LamanReport {
            laman: true,
            reason: None,
            violating_subset: None,
        }
    }

    fn count_mismatch(got: usize, expected: usize) -> Self {
        LamanReport {
            laman: false,
            reason: Some(format!("edge count {got} != {expected}")),
            violating_subset: None,
        }
    }

    fn subset_violation(subset: Vec<usize>, span: usize) -> Self {
        let k = subset.len();
        let names: Vec<String> = subset.iter().map(|v| v.to_string()).collect();
        LamanReport {
            laman: false,
            reason: Some(format!(
                "subset {{{}}} of size {k} spans {span} edges (max {})",
                names.join(","),
                2 * k - 3
            )),
            violating_subset: Some(subset),
        }
    }
}

fn induced_edge_count(edges: &[(usize, usize)], subset: &[usize]) -> usize {
    let inside: std::collections::BTreeSet<usize> = subset.iter().copied().collect();
    edges
        .iter()
        .filter(|(i, j)| inside.contains(i) && inside.contains(j))
        .count()
}

struct PebbleGame {
    pebbles: Vec<u8>,
    out: Vec<Vec<usize>>,
}

impl PebbleGame {
    fn new(n: usize) -> Self {
        PebbleGame {
            pebbles: vec![2; n],
            out: vec![Vec::new(); n],
        }
    }

    /// Move one pebble onto `root` by reversing a directed path to a
    /// pebbled vertex, never disturbing `blocked`.
    fn pull(&mut self, root: usize, blocked: usize) -> bool {
        let n = self.pebbles.len();
        let mut parent = vec![usize::MAX; n];
        let mut visited = vec![false; n];
        visited[root] = true;
        visited[blocked] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in &self.out[v] {
                if visited[w] {
                    continue;
                }
                visited[w] = true;
                parent[w] = v;
                if self.pebbles[w] > 0 {
                    self.pebbles[w] -= 1;
                    self.pebbles[root] += 1;
                    let mut cur = w;
                    while cur != root {
                        let p = parent[cur];
                        let pos = self.out[p].iter().position(|&x| x == cur).unwrap();
                        self.out[p].swap_remove(pos);
                        self.out[cur].push(p);
                        cur = p;
                    }
                    return true;
                }
                stack.push(w);
            }
        }
        false
    }

    fn reachable(&self, u: usize, v: usize) -> Vec<usize> {
        let n = self.pebbles.len();
        let mut visited = vec![false; n];
        let mut stack = vec![u, v];
        visited[u] = true;
        visited[v] = true;
        while let Some(x) = stack.pop() {
            for &w in &self.out[x] {
                if !visited[w] {
                    visited[w] = true;
                    stack.push(w);
                }
            }
        }
        (0..n).filter(|&x| visited[x]).map(|x| x + 1).collect()
    }

    /// Insert the edge; on failure return the blocked vertex set (1-based).
    fn insert(&mut self, u: usize, v: usize) -> Result<(), Vec<usize>> {
        while self.pebbles[u] + self.pebbles[v] < 4 {
            if !self.pull(u, v) && !self.pull(v, u) {
                return Err(self.reachable(u, v));
            }
        }
        self.pebbles[u] -= 1;
        self.out[u].push(v);
        Ok(())
    }
}

/// Laman test via the (2,3)-pebble game: 2n-3 edges and no vertex subset
/// spanning more than 2k-3 of them.
pub fn is_laman(n: usize, edges: &[(usize, usize)]) -> Result<LamanReport, RigidityError> {
    validate_graph(n, edges)?;
    let expected = 2 * n - 3;
    if edges.len() != expected {
        return Ok(LamanReport::count_mismatch(edges.len(), expected));
    }
    let mut game = PebbleGame::new(n);
    for &(i, j) in edges {
        if let Err(subset) = game.insert(i - 1, j - 1) {
            let span = induced_edge_count(edges, &subset);
            return Ok(LamanReport::subset_violation(subset, span));
        }
    }
    Ok(LamanReport::yes())
}

/// Laman test by direct enumeration of all vertex subsets; the reference
/// oracle for the pebble game, limited to n <= 10.
pub fn is_laman_exhaustive(
    n: usize,
    edges: &[(usize, usize)],
) -> Result<LamanReport, RigidityError> {
    validate_graph(n, edges)?;
    if n > 10 {
        return Err(RigidityError::TooManyVertices { n, max: 10 });
    }
    let expected = 2 * n - 3;
    if edges.len() != expected {
        return Ok(LamanReport::count_mismatch(edges.len(), expected));
    }
    for mask in 1u32..(1 << n) {
        let k = mask.count_ones() as usize;
        if k < 2 {
            continue;
        }
        let subset: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).map(|v| v + 1).collect();
        let span = induced_edge_count(edges, &subset);
        if span > 2 * k - 3 {
            return Ok(LamanReport::subset_violation(subset, span));
        }
    }
    Ok(LamanReport::yes())
}

/// A bar-joint linkage: a connected simple graph on 1..=n with a
/// nonnegative squared length on every edge, not all zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LinkageSpecRaw", into = "LinkageSpecRaw")]
pub struct LinkageSpec {
    n: usize,
    edges: Vec<(usize, usize)>,
    sigma: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct LinkageSpecRaw {
    n: usize,
    edges: Vec<(usize, usize)>,
    sigma: BTreeMap<String, f64>,
}

impl From<LinkageSpec> for LinkageSpecRaw {
    fn from(spec: LinkageSpec) -> Self {
        LinkageSpecRaw {
            n: spec.n,
            edges: spec.edges.clone(),
            sigma: spec
                .edges
                .iter()
                .zip(&spec.sigma)
                .map(|(&(i, j), &v)| (format!("{i},{j}"), v))
                .collect(),
        }
    }
}

impl TryFrom<LinkageSpecRaw> for LinkageSpec {
    type Error = RigidityError;
    fn try_from(raw: LinkageSpecRaw) -> Result<Self, RigidityError> {
        let mut sigma = BTreeMap::new();
        for (key, value) in raw.sigma {
            let parts: Vec<&str> = key.split(',').collect();
            let parsed = match parts.as_slice() {
                [a, b] => a
                    .trim()
                    .parse::<usize>()
                    .ok()
                    .zip(b.trim().parse::<usize>().ok()),
                _ => None,
            };
            let (i, j) = parsed.ok_or(RigidityError::InvalidEdge { i: 0, j: 0, n: raw.n })?;
            sigma.insert((i, j), value);
        }
        LinkageSpec::new(raw.n, raw.edges, sigma)
    }
}

impl LinkageSpec {
    pub fn new(
        n: usize,
        mut edges: Vec<(usize, usize)>,
        sigma: BTreeMap<(usize, usize), f64>,
    ) -> Result<Self, RigidityError> {
        edges.sort_unstable();
        validate_graph(n, &edges)?;
        for (&(i, j), &value) in &sigma {
            if edges.binary_search(&(i, j)).is_err() {
                return Err(RigidityError::SigmaKeyNotAnEdge { i, j });
            }
            if !value.is_finite() || value < 0.0 {
                return Err(RigidityError::InvalidSigma { i, j, value });
            }
        }
        let values: Vec<f64> = edges
            .iter()
            .map(|&(i, j)| {
                sigma
                    .get(&(i, j))
                    .copied()
                    .ok_or(RigidityError::MissingSigma { i, j })
            })
            .collect::<Result<_, _>>()?;
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(i, j) in &edges {
                let (a, b) = (i - 1, j - 1);
                if a == v && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                } else if b == v && !seen[a] {
                    seen[a] = true;
                    stack.push(a);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(RigidityError::NotConnected);
        }
        if values.iter().all(|&v| v == 0.0) {
            return Err(RigidityError::AllZeroSigma);
        }
        Ok(LinkageSpec {
            n,
            edges,
            sigma: values,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Squared lengths, parallel to `edges()`.
    pub fn sigma_values(&self) -> &[f64] {
        &self.sigma
    }

    pub fn sigma(&self, i: usize, j: usize) -> Option<f64> {
        let key = if i < j { (i, j) } else { (j, i) };
        self.edges
            .binary_search(&key)
            .ok()
            .map(|pos| self.sigma[pos])
    }
}

/// Linear section of Cayley-coordinate space cut out by edge-length
/// proportionality: each equation ((i,j),(k,l)) encodes
/// sigma_kl * s_ij - sigma_ij * s_kl = 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinkageSection {
    pub equations: Vec<((usize, usize), (usize, usize))>,
    pub codim: usize,
}

/// Chain of |edges| - 1 proportionality equations: consecutive pairs of
/// the positive-sigma edges in lexicographic order, plus one s = 0
/// equation per zero-sigma edge, anchored at the first positive edge.
pub fn linkage_section(spec: &LinkageSpec) -> Result<LinkageSection, RigidityError> {
    let positive: Vec<(usize, usize)> = spec
        .edges()
        .iter()
        .zip(spec.sigma_values())
        .filter(|(_, &v)| v > 0.0)
        .map(|(&e, _)| e)
        .collect();
    if positive.is_empty() {
        return Err(RigidityError::AllZeroSigma);
    }
    let mut equations: Vec<((usize, usize), (usize, usize))> = positive
        .windows(2)
        .map(|w| (w[0], w[1]))
        .collect();
    for (&e, &v) in spec.edges().iter().zip(spec.sigma_values()) {
        if v == 0.0 {
            equations.push((e, positive[0]));
        }
    }
    let codim = equations.len();
    Ok(LinkageSection { equations, codim })
}

/// Largest absolute value of the section equations at a Cayley vector.
pub fn section_residual(
    spec: &LinkageSpec,
    section: &LinkageSection,
    s: &CayleyVector,
) -> Result<f64, RigidityError> {
    if s.n() != spec.n() {
        return Err(RigidityError::PointCountMismatch {
            a: spec.n(),
            b: s.n(),
        });
    }
    let mut worst = 0.0f64;
    for &((i, j), (k, l)) in &section.equations {
        let sigma_ij = spec.sigma(i, j).ok_or(RigidityError::MissingSigma { i, j })?;
        let sigma_kl = spec
            .sigma(k, l)
            .ok_or(RigidityError::MissingSigma { i: k, j: l })?;
        worst = worst.max((sigma_kl * s.get(i, j) - sigma_ij * s.get(k, l)).abs());
    }
    Ok(worst)
}

/// Upper bound (2n-4 choose n-2)/2 on the number of realizations of a
/// generic Laman linkage up to congruence.
pub fn realization_bound(n: usize) -> Result<BigUint, RigidityError> {
    if n < 3 {
        return Err(RigidityError::TooFewVertices { n, min: 3 });
    }
    Ok(varieties::degree_cm2(n).expect("half binomial is integral for n >= 3"))
}

/// Numerical rank of the Jacobian of the squared-distance map at a planar
/// configuration, with the first point pinned at the origin.
pub fn rigidity_jacobian_rank(cfg: &Configuration, tol: f64) -> Result<usize, RigidityError> {
    if cfg.dim() != 2 {
        return Err(RigidityError::NotPlanar { dim: cfg.dim() });
    }
    let n = cfg.len();
    if n < 2 {
        return Ok(0);
    }
    let base = cfg.point(1).to_vec();
    let pts: Vec<(f64, f64)> = cfg
        .points()
        .iter()
        .map(|p| (p[0] - base[0], p[1] - base[1]))
        .collect();
    let rows = n * (n - 1) / 2;
    let cols = 2 * (n - 1);
    let mut jac = DMatrix::zeros(rows, cols);
    let mut row = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = pts[i].0 - pts[j].0;
            let dy = pts[i].1 - pts[j].1;
            if i >= 1 {
                jac[(row, 2 * (i - 1))] = 2.0 * dx;
                jac[(row, 2 * (i - 1) + 1)] = 2.0 * dy;
            }
            jac[(row, 2 * (j - 1))] = -2.0 * dx;
            jac[(row, 2 * (j - 1) + 1)] = -2.0 * dy;
            row += 1;
        }
    }
    Ok(linalg::rank_svd(&jac, tol))
}

/// Knobs for `enumerate_realizations`; the defaults implement the
/// 200-starts-per-bound budget with solver residual 1e-10 and dedup
/// distance 1e-5 in pinned coordinates.
#[derive(Debug, Clone)]
pub struct SolverOptions {
    pub seed: u64,
    pub budget: Option<u64>,
    pub require_laman: bool,
    pub max_n: usize,
    pub residual_tol: f64,
    pub dedup_tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            seed: 0,
            budget: None,
            require_laman: true,
            max_n: 7,
            residual_tol: 1e-10,
            dedup_tol: 1e-5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverStats {
    pub attempts: u64,
    pub converged: u64,
    pub deduplicated: u64,
}

/// Realizations of a linkage up to congruence, where congruence includes
/// reflections (`reflections_quotiented` records the convention). The set
/// is complete only when `lower_bound_only` is false, which the local
/// solver can certify only by reaching the bound.
#[derive(Debug, Clone)]
pub struct RealizationSet {
    pub representatives: Vec<Configuration>,
    pub count: usize,
    pub bound: BigUint,
    pub solver_stats: SolverStats,
    pub lower_bound_only: bool,
    pub non_generic_warning: bool,
    pub reflections_quotiented: bool,
}

struct GaugeProblem<'a> {
    spec: &'a LinkageSpec,
    pinned_x2: Option<f64>,
    equations: Vec<usize>,
    vars: usize,
}

impl<'a> GaugeProblem<'a> {
    fn new(spec: &'a LinkageSpec) -> Self {
        let pinned_x2 = spec.sigma(1, 2).filter(|&s| s > 0.0).map(f64::sqrt);
        let equations: Vec<usize> = spec
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, &e)| !(pinned_x2.is_some() && e == (1, 2)))
            .map(|(idx, _)| idx)
            .collect();
        let n = spec.n();
        let vars = if pinned_x2.is_some() {
            2 * (n - 2)
        } else {
            1 + 2 * (n - 2)
        };
        GaugeProblem {
            spec,
            pinned_x2,
            equations,
            vars,
        }
    }

    fn points(&self, vars: &[f64]) -> Vec<(f64, f64)> {
        let n = self.spec.n();
        let mut pts = Vec::with_capacity(n);
        pts.push((0.0, 0.0));
        let (x2, offset) = match self.pinned_x2 {
            Some(x2) => (x2, 0),
            None => (vars[0], 1),
        };
        pts.push((x2, 0.0));
        for k in 0..(n - 2) {
            pts.push((vars[offset + 2 * k], vars[offset + 2 * k + 1]));
        }
        pts
    }

    fn residual(&self, pts: &[(f64, f64)]) -> DVector<f64> {
        DVector::from_iterator(
            self.equations.len(),
            self.equations.iter().map(|&idx| {
                let (i, j) = self.spec.edges()[idx];
                let (a, b) = (pts[i - 1], pts[j - 1]);
                (a.0 - b.0).powi(2) + (a.1 - b.1).powi(2) - self.spec.sigma_values()[idx]
            }),
        )
    }

    fn jacobian(&self, pts: &[(f64, f64)]) -> DMatrix<f64> {
        let offset = if self.pinned_x2.is_some() { 0 } else { 1 };
        let mut jac = DMatrix::zeros(self.equations.len(), self.vars);
        for (row, &idx) in self.equations.iter().enumerate() {
            let (i, j) = self.spec.edges()[idx];
            let (a, b) = (pts[i - 1], pts[j - 1]);
            let dx = a.0 - b.0;
            let dy = a.1 - b.1;
            for (vertex, sign) in [(i, 1.0), (j, -1.0)] {
                match vertex {
                    1 => {}
                    2 => {
                        if self.pinned_x2.is_none() {
                            jac[(row, 0)] += 2.0 * sign * dx;
                        }
                    }
                    k => {
                        jac[(row, offset + 2 * (k - 2 - 1))] = 2.0 * sign * dx;
                        jac[(row, offset + 2 * (k - 2 - 1) + 1)] = 2.0 * sign * dy;
                    }
                }
            }
        }
        jac
    }

    fn converged(&self, pts: &[(f64, f64)], tol: f64) -> bool {
        self.equations.iter().all(|&idx| {
            let (i, j) = self.spec.edges()[idx];
            let (a, b) = (pts[i - 1], pts[j - 1]);
            let res = (a.0 - b.0).powi(2) + (a.1 - b.1).powi(2) - self.spec.sigma_values()[idx];
            res.abs() <= tol * self.spec.sigma_values()[idx].max(1.0)
        })
    }

    fn newton(&self, start: Vec<f64>, residual_tol: f64) -> Option<Vec<f64>> {
        let mut vars = start;
        for _ in 0..80 {
            let pts = self.points(&vars);
            if self.converged(&pts, residual_tol) {
                return Some(vars);
            }
            let f = self.residual(&pts);
            let jac = self.jacobian(&pts);
            let delta = jac.svd(true, true).solve(&(-&f), 1e-13).ok()?;
            let base = f.norm_squared();
            let mut lambda = 1.0;
            let mut accepted = false;
            for _ in 0..30 {
                let trial: Vec<f64> = vars
                    .iter()
                    .zip(delta.iter())
                    .map(|(v, d)| v + lambda * d)
                    .collect();
                let trial_norm = self.residual(&self.points(&trial)).norm_squared();
                if trial_norm < base {
                    vars = trial;
                    accepted = true;
                    break;
                }
                lambda *= 0.5;
            }
            if !accepted {
                return None;
            }
        }
        let pts = self.points(&vars);
        self.converged(&pts, residual_tol).then_some(vars)
    }

    /// Quotient out the residual symmetries of the gauge: rotate by pi to
    /// make x2 positive, then reflect across the x-axis so the first
    /// off-axis point has positive y.
    fn canonicalize(&self, vars: &[f64], scale: f64) -> Vec<(f64, f64)> {
        let mut pts = self.points(vars);
        let axis_tol = 1e-7 * scale.max(1.0);
        if pts[1].0 < 0.0 {
            for p in pts.iter_mut() {
                *p = (-p.0, -p.1);
            }
        }
        if let Some(first) = pts.iter().find(|p| p.1.abs() > axis_tol) {
            if first.1 < 0.0 {
                for p in pts.iter_mut() {
                    p.1 = -p.1;
                }
            }
        }
        pts
    }
}

/// Multi-start damped Newton enumeration of the realizations of a linkage,
/// deterministic in (spec, seed, budget) regardless of worker count:
/// starts are processed in fixed-order batches and deduplicated in start
/// order, stopping early only at batch boundaries once the bound is met.
pub fn enumerate_realizations(
    spec: &LinkageSpec,
    opts: &SolverOptions,
) -> Result<RealizationSet, RigidityError> {
    let n = spec.n();
    if n > opts.max_n {
        return Err(RigidityError::TooManyVertices { n, max: opts.max_n });
    }
    if opts.require_laman {
        let report = is_laman(n, spec.edges())?;
        if !report.laman {
            return Err(RigidityError::NotLaman {
                reason: report.reason.unwrap_or_else(|| "subset violation".into()),
            });
        }
    }
    if n == 2 {
        let x = spec.sigma_values()[0].sqrt();
        let cfg = Configuration::new(2, vec![vec![0.0, 0.0], vec![x, 0.0]])
            .expect("two-point configuration");
        return Ok(RealizationSet {
            representatives: vec![cfg],
            count: 1,
            bound: BigUint::one(),
            solver_stats: SolverStats {
                attempts: 0,
                converged: 0,
                deduplicated: 0,
            },
            lower_bound_only: false,
            non_generic_warning: false,
            reflections_quotiented: true,
        });
    }
    let bound = realization_bound(n)?;
    let bound_usize = bound.to_usize().expect("bound fits for n <= max_n");
    let budget = opts
        .budget
        .unwrap_or_else(|| 200 * bound.to_u64().expect("bound fits"));
    let problem = GaugeProblem::new(spec);
    let scale = spec
        .sigma_values()
        .iter()
        .fold(0.0f64, |acc, &s| acc.max(s))
        .sqrt();
    let box_half = 2.0 * scale.max(1e-3);

    let run_start = |idx: u64| -> Option<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(idx);
        let start: Vec<f64> = (0..problem.vars)
            .map(|_| rng.gen_range(-box_half..box_half))
            .collect();
        problem.newton(start, opts.residual_tol)
    };

    let mut accepted: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut attempts = 0u64;
    let mut converged = 0u64;
    let mut deduplicated = 0u64;
    const BATCH: u64 = 64;
    while attempts < budget && accepted.len() < bound_usize {
        let size = BATCH.min(budget - attempts);
        let results: Vec<Option<Vec<f64>>> = (attempts..attempts + size)
            .into_par_iter()
            .map(run_start)
            .collect();
        attempts += size;
        for solution in results.into_iter().flatten() {
            converged += 1;
            let pts = problem.canonicalize(&solution, scale);
            let duplicate = accepted.iter().any(|known| {
                known
                    .iter()
                    .zip(&pts)
                    .all(|(a, b)| (a.0 - b.0).abs() < opts.dedup_tol && (a.1 - b.1).abs() < opts.dedup_tol)
            });
            if duplicate {
                deduplicated += 1;
            } else if accepted.len() < bound_usize {
                accepted.push(pts);
            }
        }
    }

    let non_generic_warning = accepted.iter().any(|pts| {
        let jac = problem.jacobian(pts);
        linalg::rank_svd(&jac, 1e-7) < problem.vars
    });
    let representatives: Vec<Configuration> = accepted
        .iter()
        .map(|pts| {
            Configuration::new(2, pts.iter().map(|&(x, y)| vec![x, y]).collect())
                .expect("solver output is planar")
        })
        .collect();
    let count = representatives.len();
    Ok(RealizationSet {
        representatives,
        count,
        bound,
        solver_stats: SolverStats {
            attempts,
            converged,
            deduplicated,
        },
        lower_bound_only: count < bound_usize,
        non_generic_warning,
        reflections_quotiented: true,
    })
}
