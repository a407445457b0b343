//! Adjacency-tensor numerics for uniform hypergraphs.
//!
//! With entries `1/(k-1)!` on every ordering of an edge, the tensor never
//! needs to be materialized:
//!
//! * `(A x^{k-1})_v = Σ_{e ∋ v} Π_{u ∈ e, u ≠ v} x_u`
//! * `A x^k = Σ_e k Π_{u ∈ e} x_u`
//!
//! The spectral radius comes from a shifted power iteration with a
//! Collatz–Wielandt bracket. The least H-eigenvalue is only bounded from
//! above, by descending `A x^k` on the unit `k`-norm sphere from the
//! sign-flipped Perron vectors and random starts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::Hypergraph;
use crate::transversal::{self, find_odd_transversal};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("hypergraph is not uniform")]
    NotUniform,
    #[error("hypergraph has no edges")]
    Empty,
    #[error("uniformity k = {0} is odd")]
    OddUniformity(usize),
    #[error("hypergraph is disconnected")]
    Disconnected,
    #[error("hypergraph is not minimal non-odd-bipartite")]
    NotMinimal,
    #[error("edge index {edge} out of range for {m} edges")]
    EdgeOutOfRange { edge: usize, m: usize },
    #[error("vector length {actual} does not match {expected} vertices")]
    DimensionMismatch { expected: usize, actual: usize },
}

/// Iteration settings shared by the spectral routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralOptions {
    /// Bracket width at which the power iteration stops.
    pub tol: f64,
    pub max_iter: usize,
    /// Random starts for the least-eigenvalue descent.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 100_000,
            restarts: 8,
            seed: 0,
        }
    }
}

/// Shift added to the power iteration.
pub const POWER_SHIFT: f64 = 1.0;

fn uniformity(g: &Hypergraph) -> Result<usize, SpectralError> {
    if g.m() == 0 {
        return Err(SpectralError::Empty);
    }
    g.uniformity().ok_or(SpectralError::NotUniform)
}

fn even_uniformity(g: &Hypergraph) -> Result<usize, SpectralError> {
    let k = uniformity(g)?;
    if k % 2 == 1 {
        return Err(SpectralError::OddUniformity(k));
    }
    Ok(k)
}

fn check_len(g: &Hypergraph, x: &[f64]) -> Result<(), SpectralError> {
    if x.len() != g.n() {
        return Err(SpectralError::DimensionMismatch {
            expected: g.n(),
            actual: x.len(),
        });
    }
    Ok(())
}

/// `A(G) x^{k-1}`.
pub fn apply(g: &Hypergraph, x: &[f64]) -> Result<Vec<f64>, SpectralError> {
    let _ = uniformity(g)?;
    check_len(g, x)?;
    Ok(apply_unchecked(g, x))
}

fn apply_unchecked(g: &Hypergraph, x: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; g.n()];
    let mut prefix = Vec::new();
    for e in g.edges() {
        // product of all entries except position i, via prefix/suffix products
        prefix.clear();
        let mut acc = 1.0;
        for &v in e {
            prefix.push(acc);
            acc *= x[v];
        }
        let mut suffix = 1.0;
        for (i, &v) in e.iter().enumerate().rev() {
            out[v] += prefix[i] * suffix;
            suffix *= x[v];
        }
    }
    out
}

/// `A(G) x^k = Σ_e k x^e`.
pub fn rayleigh(g: &Hypergraph, x: &[f64]) -> Result<f64, SpectralError> {
    let k = uniformity(g)?;
    check_len(g, x)?;
    Ok(rayleigh_unchecked(g, k, x))
}

fn rayleigh_unchecked(g: &Hypergraph, k: usize, x: &[f64]) -> f64 {
    k as f64 * g.edges().iter().map(|e| edge_product(e, x)).sum::<f64>()
}

/// `x^e = Π_{v ∈ e} x_v`.
pub fn edge_product(e: &[usize], x: &[f64]) -> f64 {
    e.iter().map(|&v| x[v]).product()
}

/// Gradient of `x ↦ A x^k`, which is `k A x^{k-1}`.
pub fn gradient(g: &Hypergraph, x: &[f64]) -> Result<Vec<f64>, SpectralError> {
    let k = uniformity(g)? as f64;
    Ok(apply(g, x)?.into_iter().map(|y| k * y).collect())
}

pub fn k_norm(x: &[f64], k: usize) -> f64 {
    x.iter()
        .map(|v| v.abs().powi(k as i32))
        .sum::<f64>()
        .powf(1.0 / k as f64)
}

fn normalize(x: &mut [f64], k: usize) -> bool {
    let norm = k_norm(x, k);
    if !(norm.is_finite() && norm > 0.0) {
        return false;
    }
    for v in x.iter_mut() {
        *v /= norm;
    }
    true
}

/// Perron eigenpair estimate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerronResult {
    /// Upper end of the final bracket.
    pub rho: f64,
    /// Lower end of the final bracket.
    pub rho_lower: f64,
    /// Positive, unit `k`-norm iterate.
    pub vector: Vec<f64>,
    /// `max_v |(A x^{k-1})_v - rho x_v^{k-1}|`.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Collatz–Wielandt bracket `min_v, max_v y_v / x_v^{k-1}`.
fn bracket(ax: &[f64], x: &[f64], k: usize) -> (f64, f64) {
    ax.iter()
        .zip(x)
        .map(|(&y, &xv)| y / xv.powi(k as i32 - 1))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
            (lo.min(r), hi.max(r))
        })
}

/// Spectral radius of a connected uniform hypergraph by the shifted power
/// iteration `y = A x^{k-1} + σ x^{[k-1]}`, `x ← y^{[1/(k-1)]} / ‖·‖_k`.
///
/// When `max_iter` runs out the best bracket is returned with
/// `converged = false`.
pub fn spectral_radius(
    g: &Hypergraph,
    tol: f64,
    max_iter: usize,
) -> Result<PerronResult, SpectralError> {
    let k = uniformity(g)?;
    if !g.is_connected() {
        return Err(SpectralError::Disconnected);
    }
    let n = g.n();
    let mut x = vec![(n as f64).powf(-1.0 / k as f64); n];
    let mut best = (f64::NEG_INFINITY, f64::INFINITY);
    let mut iterations = 0;
    let mut converged = false;
    let exponent = 1.0 / (k as f64 - 1.0);
    loop {
        let ax = apply_unchecked(g, &x);
        let (lo, hi) = bracket(&ax, &x, k);
        best = (best.0.max(lo), best.1.min(hi));
        if hi - lo < tol {
            converged = true;
            best = (lo, hi);
            break;
        }
        if iterations == max_iter {
            break;
        }
        iterations += 1;
        for (xv, y) in x.iter_mut().zip(&ax) {
            let shifted = y + POWER_SHIFT * xv.powi(k as i32 - 1);
            *xv = shifted.powf(exponent);
        }
        normalize(&mut x, k);
    }
    let rho = best.1;
    let ax = apply_unchecked(g, &x);
    let residual = ax
        .iter()
        .zip(&x)
        .map(|(&y, &xv)| (y - rho * xv.powi(k as i32 - 1)).abs())
        .fold(0.0, f64::max);
    Ok(PerronResult {
        rho,
        rho_lower: best.0,
        vector: x,
        residual,
        iterations,
        converged,
    })
}

/// `y_v = x_v` on `U`, `-x_v` off `U`.
fn flip(x: &[f64], u: &[usize]) -> Vec<f64> {
    let mut inside = vec![false; x.len()];
    for &v in u {
        inside[v] = true;
    }
    x.iter()
        .zip(&inside)
        .map(|(&v, &i)| if i { v } else { -v })
        .collect()
}

/// A sign-flipped Perron vector for a single edge.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlipVector {
    pub edge: usize,
    /// Odd transversal of `G - e` used for the flip.
    pub transversal: Vec<usize>,
    pub y: Vec<f64>,
    /// `A(G) y^k`.
    pub value: f64,
    /// `-A(G) x^k + 2k x^e`.
    pub predicted: f64,
    /// `x^e` for the Perron vector `x`.
    pub edge_weight: f64,
}

/// Flips the Perron vector along an odd bipartition of `G - e`.
///
/// Requires `G - e` odd-transversal and `G` not, which holds for every edge
/// of a minimal non-odd-bipartite hypergraph. Then `e` meets the complement
/// of the transversal evenly and `A y^k = -A x^k + 2k x^e`.
pub fn flip_vector(
    g: &Hypergraph,
    edge: usize,
    perron: &PerronResult,
) -> Result<FlipVector, SpectralError> {
    let k = even_uniformity(g)?;
    check_len(g, &perron.vector)?;
    if edge >= g.m() {
        return Err(SpectralError::EdgeOutOfRange { edge, m: g.m() });
    }
    let minus = g.delete_edge(edge).expect("edge index checked");
    let u = find_odd_transversal(&minus).ok_or(SpectralError::NotMinimal)?;
    let outside = g.edge(edge).iter().filter(|v| !u.contains(v)).count();
    if outside % 2 == 1 {
        // e meets the transversal oddly, so G itself is odd-transversal
        return Err(SpectralError::NotMinimal);
    }
    let y = flip(&perron.vector, &u);
    let value = rayleigh_unchecked(g, k, &y);
    let edge_weight = edge_product(g.edge(edge), &perron.vector);
    let predicted = -rayleigh_unchecked(g, k, &perron.vector) + 2.0 * k as f64 * edge_weight;
    Ok(FlipVector {
        edge,
        transversal: u,
        y,
        value,
        predicted,
        edge_weight,
    })
}

/// Smallest Rayleigh value found on the unit `k`-norm sphere.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaMinEstimate {
    /// `A x^k` at `vector`; an upper bound on the least H-eigenvalue.
    pub value: f64,
    pub vector: Vec<f64>,
    /// Which start produced the best value.
    pub start: StartKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "index")]
pub enum StartKind {
    /// Perron vector flipped along an odd transversal of `G`.
    OddBipartition,
    /// Perron vector flipped along an odd transversal of `G - e`.
    EdgeFlip(usize),
    Random(usize),
}

const DESCENT_MAX_STEPS: usize = 5_000;

/// Projected gradient descent of `A x^k` on the unit `k`-norm sphere with
/// Armijo backtracking. The gradient is projected onto the tangent space,
/// whose normal at `x` is `x^{[k-1]}`.
fn descend(g: &Hypergraph, k: usize, mut x: Vec<f64>, tol: f64) -> (f64, Vec<f64>) {
    if !normalize(&mut x, k) {
        return (f64::INFINITY, x);
    }
    let mut f = rayleigh_unchecked(g, k, &x);
    let mut step = 1.0;
    for _ in 0..DESCENT_MAX_STEPS {
        let grad: Vec<f64> = apply_unchecked(g, &x)
            .into_iter()
            .map(|v| k as f64 * v)
            .collect();
        let normal: Vec<f64> = x.iter().map(|v| v.powi(k as i32 - 1)).collect();
        let nn: f64 = normal.iter().map(|v| v * v).sum();
        let gn: f64 = grad.iter().zip(&normal).map(|(a, b)| a * b).sum();
        let tangent: Vec<f64> = grad
            .iter()
            .zip(&normal)
            .map(|(a, b)| a - gn / nn * b)
            .collect();
        let t2: f64 = tangent.iter().map(|v| v * v).sum();
        if t2.sqrt() < 1e-13 {
            break;
        }
        let mut eta = step;
        let mut accepted = None;
        while eta > 1e-14 {
            let mut cand: Vec<f64> = x.iter().zip(&tangent).map(|(a, b)| a - eta * b).collect();
            if normalize(&mut cand, k) {
                let fc = rayleigh_unchecked(g, k, &cand);
                if fc <= f - 1e-4 * eta * t2 {
                    accepted = Some((fc, cand));
                    break;
                }
            }
            eta *= 0.5;
        }
        let Some((fc, cand)) = accepted else {
            break;
        };
        let gain = f - fc;
        x = cand;
        f = fc;
        step = (eta * 2.0).min(1e3);
        if gain < tol * f.abs().max(1.0) {
            break;
        }
    }
    (f, x)
}

/// Upper estimate of `λ_min(G)` for a connected even-uniform hypergraph.
///
/// Starts: the Perron vector flipped along an odd transversal of `G` (when
/// one exists), along an odd transversal of each `G - e` (when one exists),
/// and `restarts` random points; restart `i` draws from stream `i` of a
/// ChaCha generator seeded with `seed`. Every returned value is attained at
/// a feasible point, so it bounds `λ_min` from above.
pub fn lambda_min_upper(
    g: &Hypergraph,
    perron: &PerronResult,
    restarts: usize,
    tol: f64,
    seed: u64,
) -> Result<LambdaMinEstimate, SpectralError> {
    let k = even_uniformity(g)?;
    if !g.is_connected() {
        return Err(SpectralError::Disconnected);
    }
    check_len(g, &perron.vector)?;
    let mut starts: Vec<(StartKind, Vec<f64>)> = Vec::new();
    if let Some(u) = find_odd_transversal(g) {
        starts.push((StartKind::OddBipartition, flip(&perron.vector, &u)));
    } else {
        for e in 0..g.m() {
            if let Ok(fv) = flip_vector(g, e, perron) {
                starts.push((StartKind::EdgeFlip(e), fv.y));
            }
        }
    }
    for i in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let x: Vec<f64> = (0..g.n()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        starts.push((StartKind::Random(i), x));
    }

    let mut best: Option<LambdaMinEstimate> = None;
    for (start, x0) in starts {
        let (value, vector) = descend(g, k, x0, tol);
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(LambdaMinEstimate {
                value,
                vector,
                start,
            });
        }
    }
    Ok(best.expect("at least one start when m >= 1"))
}

/// Bound quantities for a minimal non-odd-bipartite hypergraph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub rho: f64,
    pub perron_residual: f64,
    /// `-ρ + 2k / n^{1/k}`.
    pub bound1: f64,
    /// `-(1 - 2/m) ρ`.
    pub bound2: f64,
    /// Edge minimizing `x^e`.
    pub min_weight_edge: usize,
    pub flip_value_min_edge: f64,
    /// Vertex minimizing `x_v`, and the edge through it used for the flip.
    pub min_vertex: usize,
    pub min_vertex_edge: usize,
    pub flip_value_min_vertex_edge: f64,
    /// Largest `|A y^k - (-A x^k + 2k x^e)|` over all edges.
    pub flip_identity_error: f64,
    pub lambda_min_upper: f64,
    pub lambda_min_start: StartKind,
    /// `ρ + λ`, with `λ` the upper estimate.
    pub alpha: f64,
    /// `-λ / ρ`, with `λ` the upper estimate.
    pub beta: f64,
}

pub fn bound_report(g: &Hypergraph, opts: &SpectralOptions) -> Result<BoundReport, SpectralError> {
    let k = even_uniformity(g)?;
    if !transversal::classify_with(g, transversal::Method::RankCriterion).is_minimal {
        return Err(SpectralError::NotMinimal);
    }
    let perron = spectral_radius(g, opts.tol, opts.max_iter)?;
    let (n, m, rho) = (g.n(), g.m(), perron.rho);
    let x = &perron.vector;

    let flips: Vec<FlipVector> = (0..m)
        .map(|e| flip_vector(g, e, &perron))
        .collect::<Result<_, _>>()?;
    let flip_identity_error = flips
        .iter()
        .map(|f| (f.value - f.predicted).abs())
        .fold(0.0, f64::max);

    let min_weight_edge = (0..m)
        .min_by(|&a, &b| flips[a].edge_weight.total_cmp(&flips[b].edge_weight))
        .expect("m >= 1");
    let min_vertex = (0..n)
        .min_by(|&a, &b| x[a].total_cmp(&x[b]))
        .expect("n >= 1");
    let min_vertex_edge = (0..m)
        .filter(|&e| g.edge(e).contains(&min_vertex))
        .min_by(|&a, &b| flips[a].edge_weight.total_cmp(&flips[b].edge_weight))
        .expect("no isolated vertices");

    let estimate = lambda_min_upper(g, &perron, opts.restarts, opts.tol, opts.seed)?;
    let lambda = estimate.value;
    Ok(BoundReport {
        n,
        m,
        k,
        rho,
        perron_residual: perron.residual,
        bound1: -rho + 2.0 * k as f64 / (n as f64).powf(1.0 / k as f64),
        bound2: -(1.0 - 2.0 / m as f64) * rho,
        min_weight_edge,
        flip_value_min_edge: flips[min_weight_edge].value,
        min_vertex,
        min_vertex_edge,
        flip_value_min_vertex_edge: flips[min_vertex_edge].value,
        flip_identity_error,
        lambda_min_upper: lambda,
        lambda_min_start: estimate.start,
        alpha: rho + lambda,
        beta: -lambda / rho,
    })
}
