//! Numerical search for planar point sets realizing a given graph at unit
//! threshold, with exact certification of any candidate found.
//!
//! The search minimizes a hinge penalty over coordinates: edges are pushed
//! below `1 - ε`, non-edges above `1 + ε`. A configuration with zero penalty
//! is rationalized to a fixed grid and re-checked with exact arithmetic;
//! only the exact pass produces a `Certified` verdict, so the margin makes
//! the certificate valid for every threshold in `[1-ε, 1+ε]` regardless of
//! whether the threshold comparison is strict.

use crate::complex::Graph;
use crate::geom::{Point2, Rational};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RealizerError {
    #[error("expected {expected} points for the graph, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("margin must satisfy 0 < epsilon < 1/2, got {0}")]
    MarginOutOfRange(String),
}

/// A realization search instance.
#[derive(Debug, Clone)]
pub struct RealizationProblem {
    pub graph: Graph,
    /// Separation margin: edges must fit within `1 - ε`, non-edges beyond
    /// `1 + ε`. Must satisfy `0 < ε < 1/2`.
    pub epsilon: Rational,
    pub restarts: usize,
    pub iters: usize,
    pub seed: u64,
}

impl RealizationProblem {
    /// Default budget: margin 1/100, 200 restarts of 2000 iterations.
    pub fn new(graph: Graph, seed: u64) -> Self {
        RealizationProblem {
            graph,
            epsilon: Rational::new(BigInt::from(1), BigInt::from(100)),
            restarts: 200,
            iters: 2000,
            seed,
        }
    }

    fn check_margin(&self) -> Result<(), RealizerError> {
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        if self.epsilon <= Rational::zero() || self.epsilon >= half {
            return Err(RealizerError::MarginOutOfRange(self.epsilon.to_string()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RealizationVerdict {
    /// Exactly certified coordinates on the 10⁻⁶ grid.
    Certified(Vec<Point2>),
    /// Search exhausted its budget; says nothing about realizability.
    Inconclusive { best_loss: f64 },
}

#[derive(Debug, Clone)]
pub struct RealizationOutcome {
    pub verdict: RealizationVerdict,
    /// Best penalty reached in each restart that ran (the search stops at
    /// the first restart that certifies).
    pub trace: Vec<f64>,
}

impl RealizationOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self.verdict, RealizationVerdict::Certified(_))
    }
}

/// Hinge penalty and its gradient at `coords` (flattened `[x0, y0, x1, ..]`)
/// for the given edge/non-edge bounds.
///
/// penalty = Σ_edges max(0, d - lo)² + Σ_non-edges max(0, hi - d)²
pub fn penalty_and_grad(graph: &Graph, coords: &[f64], lo: f64, hi: f64) -> (f64, Vec<f64>) {
    let n = graph.n();
    let mut loss = 0.0;
    let mut grad = vec![0.0; 2 * n];
    for u in 0..n {
        for v in (u + 1)..n {
            let dx = coords[2 * u] - coords[2 * v];
            let dy = coords[2 * u + 1] - coords[2 * v + 1];
            let d = (dx * dx + dy * dy).sqrt();
            // Coincident points: treat the direction as along +x so the
            // non-edge push still separates them.
            let (ux, uy) = if d > 1e-12 {
                (dx / d, dy / d)
            } else {
                (1.0, 0.0)
            };
            if graph.has_edge(u, v) {
                let excess = d - lo;
                if excess > 0.0 {
                    loss += excess * excess;
                    let c = 2.0 * excess;
                    grad[2 * u] += c * ux;
                    grad[2 * u + 1] += c * uy;
                    grad[2 * v] -= c * ux;
                    grad[2 * v + 1] -= c * uy;
                }
            } else {
                let short = hi - d;
                if short > 0.0 {
                    loss += short * short;
                    let c = -2.0 * short;
                    grad[2 * u] += c * ux;
                    grad[2 * u + 1] += c * uy;
                    grad[2 * v] -= c * ux;
                    grad[2 * v + 1] -= c * uy;
                }
            }
        }
    }
    (loss, grad)
}

/// Gradient descent with backtracking line search from a fixed start.
/// Returns the best coordinates seen and their penalty.
fn descend(graph: &Graph, start: Vec<f64>, iters: usize, lo: f64, hi: f64) -> (Vec<f64>, f64) {
    let mut x = start;
    let (mut fx, mut gx) = penalty_and_grad(graph, &x, lo, hi);
    let mut step = 0.25;
    for _ in 0..iters {
        if fx == 0.0 {
            break;
        }
        let gnorm2: f64 = gx.iter().map(|g| g * g).sum();
        if gnorm2 < 1e-30 {
            break;
        }
        // Backtracking Armijo line search on the steepest-descent ray.
        let mut accepted = false;
        while step > 1e-16 {
            let trial: Vec<f64> = x
                .iter()
                .zip(&gx)
                .map(|(xi, gi)| xi - step * gi)
                .collect();
            let (ft, gt) = penalty_and_grad(graph, &trial, lo, hi);
            if ft <= fx - 1e-4 * step * gnorm2 {
                x = trial;
                fx = ft;
                gx = gt;
                step = (step * 2.0).min(1.0);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (x, fx)
}

/// Round each coordinate to the nearest multiple of 10⁻⁶.
fn rationalize(coords: &[f64]) -> Vec<Point2> {
    const RES: i64 = 1_000_000;
    coords
        .chunks(2)
        .map(|xy| {
            let xn = (xy[0] * RES as f64).round() as i64;
            let yn = (xy[1] * RES as f64).round() as i64;
            Point2::from_ratios(xn, RES, yn, RES)
        })
        .collect()
}

/// Exact margin check: every edge at squared distance at most `(1-ε)²`,
/// every non-edge at least `(1+ε)²`.
pub fn certify(points: &[Point2], graph: &Graph, epsilon: &Rational) -> Result<bool, RealizerError> {
    if points.len() != graph.n() {
        return Err(RealizerError::SizeMismatch {
            expected: graph.n(),
            got: points.len(),
        });
    }
    let lo = Rational::one() - epsilon;
    let hi = Rational::one() + epsilon;
    let lo2 = &lo * &lo;
    let hi2 = &hi * &hi;
    for u in 0..graph.n() {
        for v in (u + 1)..graph.n() {
            let d2 = points[u].dist2(&points[v]);
            let ok = if graph.has_edge(u, v) {
                d2 <= lo2
            } else {
                d2 >= hi2
            };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Search for a realization. The first restart descends from a deterministic
/// circular layout, later restarts from seed-determined uniform layouts in
/// `[0, √n]²`. A restart whose penalty reaches zero is rationalized to the
/// 10⁻⁶ grid and certified exactly; only an exact pass yields `Certified`.
pub fn realize(problem: &RealizationProblem) -> Result<RealizationOutcome, RealizerError> {
    problem.check_margin()?;
    let graph = &problem.graph;
    let n = graph.n();
    if n == 0 {
        return Ok(RealizationOutcome {
            verdict: RealizationVerdict::Certified(Vec::new()),
            trace: Vec::new(),
        });
    }
    let eps = problem.epsilon.to_f64().expect("margin fits in f64");
    // Optimize a hair inside the stated margin so that rounding to the
    // rational grid (≤ ~1.5e-6 distance perturbation) cannot invalidate the
    // exact re-check.
    let pad = 1e-4;
    let lo = 1.0 - eps - pad;
    let hi = 1.0 + eps + pad;

    let side = (n as f64).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(problem.seed);
    let mut trace = Vec::new();
    let mut best_loss = f64::INFINITY;

    for restart in 0..problem.restarts.max(1) {
        let start: Vec<f64> = if restart == 0 {
            let r = side / 2.0;
            (0..n)
                .flat_map(|i| {
                    let th = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                    [r + r * th.cos(), r + r * th.sin()]
                })
                .collect()
        } else {
            (0..2 * n).map(|_| rng.random_range(0.0..side.max(1.0))).collect()
        };
        let (coords, loss) = descend(graph, start, problem.iters, lo, hi);
        trace.push(loss);
        best_loss = best_loss.min(loss);
        if loss == 0.0 {
            let points = rationalize(&coords);
            // Distinctness is implied: non-edges are far apart and edges of
            // a certified layout are separated by the margin bounds, but a
            // degenerate rounding could still collide edge endpoints, which
            // certify rejects via the exact non-edge/edge distance bounds
            // only when distances are off; guard explicitly.
            let distinct = (0..points.len()).all(|i| {
                (i + 1..points.len()).all(|j| points[i] != points[j])
            });
            if distinct && certify(&points, graph, &problem.epsilon)? {
                return Ok(RealizationOutcome {
                    verdict: RealizationVerdict::Certified(points),
                    trace,
                });
            }
        }
    }
    Ok(RealizationOutcome {
        verdict: RealizationVerdict::Inconclusive { best_loss },
        trace,
    })
}
