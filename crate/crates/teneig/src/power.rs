//! Iterative eigenvalue algorithms: a bracketing power iteration for the
//! spectral radius of a nonnegative tensor, and a shifted symmetric power
//! method for Z-eigenpairs.
//!
//! The bracketing iteration follows the classic scheme for nonnegative
//! tensors: from a positive iterate `x` the componentwise ratios
//! `(A xᵐ⁻¹)ᵢ / xᵢᵐ⁻¹` enclose the spectral radius, and the next iterate is
//! the normalized `(m−1)`-th root of `A xᵐ⁻¹`. The lower bounds never
//! decrease and the upper bounds never increase; the bracket midpoint is the
//! reported estimate.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::direct::{canonical_z_rep, desc_lex_cmp, EigenKind, EigenPair};
use crate::error::{Error, Result};
use crate::tensor::{SymTensor, Tensor};

/// Shift strategy for [`z_power`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shift {
    /// `α = m · max |entry|`, which makes the shifted map monotone on the
    /// sphere.
    Auto,
    Value(f64),
}

/// Options shared by the iterative solvers.
#[derive(Debug, Clone, Copy)]
pub struct IterOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Seeds the optional random restarts of [`z_power`]; has no effect on
    /// the deterministic bracketing iteration.
    pub seed: u64,
    pub shift: Shift,
}

impl Default for IterOptions {
    fn default() -> Self {
        IterOptions { tol: 1e-10, max_iter: 10_000, seed: 0, shift: Shift::Auto }
    }
}

impl IterOptions {
    fn validate(&self) -> Result<()> {
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::Degenerate(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(Error::Degenerate("max_iter must be positive".into()));
        }
        Ok(())
    }
}

/// One recorded bracketing step.
#[derive(Debug, Clone)]
pub struct NqzIterate {
    pub lower: f64,
    pub upper: f64,
    /// The positive iterate the ratios were taken at.
    pub iterate: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NqzStatus {
    Converged,
    /// Bracket width stopped moving; typical for reducible tensors, where
    /// the ratios are independent of the iterate.
    Stagnated,
    MaxIter,
}

/// Bracketing trace of the spectral-radius iteration.
#[derive(Debug, Clone)]
pub struct NqzTrace {
    pub iterates: Vec<NqzIterate>,
    pub status: NqzStatus,
    pub converged: bool,
    /// Midpoint of the final bracket.
    pub rho: f64,
    /// Set when a zero component of `A xᵐ⁻¹` forced an ε-adjustment; the
    /// bracket is then an estimate, not a certificate.
    pub epsilon_adjusted: bool,
}

impl NqzTrace {
    /// Final `(lower, upper)` bracket.
    pub fn bracket(&self) -> (f64, f64) {
        let last = self.iterates.last().expect("at least one iterate");
        (last.lower, last.upper)
    }

    pub fn iterations(&self) -> usize {
        self.iterates.len()
    }
}

fn check_nonnegative<T: Tensor + ?Sized>(a: &T) -> Result<()> {
    if let Some((index, value)) = a.negative_entry() {
        return Err(Error::NotNonnegative { index, value });
    }
    Ok(())
}

/// Componentwise `(min, max)` of `(A xᵐ⁻¹)ᵢ / xᵢᵐ⁻¹` for positive `x`.
/// For an irreducible nonnegative tensor these enclose the spectral radius.
pub fn collatz_ratios<T: Tensor + ?Sized>(a: &T, x: &[f64]) -> Result<(f64, f64)> {
    check_nonnegative(a)?;
    if x.len() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), got: x.len() });
    }
    if let Some(i) = x.iter().position(|&v| v.is_nan() || v <= 0.0) {
        return Err(Error::NonPositiveVector { component: i });
    }
    let y = a.apply(x)?;
    let exp = (a.order() - 1) as i32;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (yi, xi) in y.iter().zip(x) {
        let r = yi / xi.powi(exp);
        lo = lo.min(r);
        hi = hi.max(r);
    }
    Ok((lo, hi))
}

/// Spectral radius of a nonnegative tensor by bracketing power iteration,
/// started from the normalized all-ones vector.
///
/// On convergence `rho` is an eigenvalue with a nonnegative eigenvector (the
/// final iterate); for weakly irreducible input the eigenvector is positive.
/// Reducible inputs typically stagnate and come back with
/// [`NqzStatus::Stagnated`] and the final bracket intact.
pub fn nqz<T: Tensor + ?Sized>(a: &T, opts: &IterOptions) -> Result<NqzTrace> {
    opts.validate()?;
    check_nonnegative(a)?;
    let n = a.dim();
    let m = a.order();
    let exp = (m - 1) as i32;
    let root = 1.0 / (m - 1) as f64;
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut iterates: Vec<NqzIterate> = Vec::new();
    let mut lower = f64::NEG_INFINITY;
    let mut upper = f64::INFINITY;
    let mut epsilon_adjusted = false;
    let mut status = NqzStatus::MaxIter;

    for _ in 0..opts.max_iter {
        let mut y = a.apply(&x)?;
        if y.iter().any(|&v| v <= 0.0) {
            for v in &mut y {
                *v += 1e-12;
            }
            epsilon_adjusted = true;
        }
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (yi, xi) in y.iter().zip(&x) {
            let r = yi / xi.powi(exp);
            lo = lo.min(r);
            hi = hi.max(r);
        }
        // keep the tightest bounds seen so far
        lower = lower.max(lo);
        upper = upper.min(hi);
        iterates.push(NqzIterate { lower, upper, iterate: x.clone() });

        let width = upper - lower;
        if width <= opts.tol {
            status = NqzStatus::Converged;
            break;
        }
        if iterates.len() > 50 {
            let before = &iterates[iterates.len() - 51];
            if (before.upper - before.lower) - width < 1e-14 {
                status = NqzStatus::Stagnated;
                break;
            }
        }

        let mut z: Vec<f64> = y.iter().map(|&v| v.powf(root)).collect();
        let norm = z.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in &mut z {
            *v /= norm;
        }
        x = z;
    }

    let (lo, hi) = {
        let last = iterates.last().expect("max_iter > 0 guarantees an iterate");
        (last.lower, last.upper)
    };
    Ok(NqzTrace {
        iterates,
        status,
        converged: status == NqzStatus::Converged,
        rho: 0.5 * (lo + hi),
        epsilon_adjusted,
    })
}

fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

struct PowerCandidate {
    x: Vec<f64>,
    lambda: f64,
    residual: f64,
    converged: bool,
}

fn z_power_run(a: &SymTensor, start: &[f64], alpha: f64, opts: &IterOptions) -> PowerCandidate {
    let mut x = start.to_vec();
    let norm = norm2(&x);
    for v in &mut x {
        *v /= norm;
    }
    let mut best = PowerCandidate { x: x.clone(), lambda: 0.0, residual: f64::INFINITY, converged: false };
    for _ in 0..opts.max_iter {
        let w = a.apply_unchecked(&x);
        let lambda: f64 = w.iter().zip(&x).map(|(a, b)| a * b).sum();
        let residual =
            norm2(&w.iter().zip(&x).map(|(wi, xi)| wi - lambda * xi).collect::<Vec<_>>());
        if residual < best.residual {
            best = PowerCandidate { x: x.clone(), lambda, residual, converged: false };
        }
        if residual <= opts.tol * (1.0 + a.frobenius_norm()) {
            best.converged = true;
            break;
        }
        let mut y: Vec<f64> = w.iter().zip(&x).map(|(wi, xi)| wi + alpha * xi).collect();
        let ny = norm2(&y);
        if ny < 1e-300 || ny.is_nan() {
            break;
        }
        for v in &mut y {
            *v /= ny;
        }
        x = y;
    }
    best
}

/// One Z-eigenpair by the shifted symmetric power method, started from the
/// given vector. No extremality is guaranteed.
pub fn z_power_with_start(a: &SymTensor, start: &[f64], opts: &IterOptions) -> Result<EigenPair> {
    opts.validate()?;
    if start.len() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), got: start.len() });
    }
    if norm2(start).is_nan() || norm2(start) <= 0.0 {
        return Err(Error::NonPositiveVector { component: 0 });
    }
    let alpha = resolve_shift(a, opts.shift);
    let cand = z_power_run(a, start, alpha, opts);
    if !cand.converged {
        return Err(Error::NonConvergence { iterations: opts.max_iter, best_residual: cand.residual });
    }
    Ok(candidate_to_pair(a, cand))
}

/// One Z-eigenpair by the shifted symmetric power method, from the uniform
/// start plus 8 seeded random restarts. Converged candidates with the
/// largest `|λ|` win; without any convergence the best residual is reported
/// as the error.
pub fn z_power(a: &SymTensor, opts: &IterOptions) -> Result<EigenPair> {
    opts.validate()?;
    let n = a.dim();
    let alpha = resolve_shift(a, opts.shift);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut starts: Vec<Vec<f64>> = vec![vec![1.0 / (n as f64).sqrt(); n]];
    for _ in 0..8 {
        let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = norm2(&v);
        if norm < 1e-6 {
            v = vec![1.0 / (n as f64).sqrt(); n];
        } else {
            for c in &mut v {
                *c /= norm;
            }
        }
        starts.push(v);
    }
    let mut best: Option<PowerCandidate> = None;
    let mut best_residual = f64::INFINITY;
    for start in &starts {
        let cand = z_power_run(a, start, alpha, opts);
        best_residual = best_residual.min(cand.residual);
        if !cand.converged {
            continue;
        }
        best = Some(match best {
            None => cand,
            Some(prev) => pick_candidate(prev, cand),
        });
    }
    match best {
        Some(cand) => Ok(candidate_to_pair(a, cand)),
        None => Err(Error::NonConvergence { iterations: opts.max_iter, best_residual }),
    }
}

fn resolve_shift(a: &SymTensor, shift: Shift) -> f64 {
    match shift {
        Shift::Auto => a.order() as f64 * Tensor::max_abs_entry(a),
        Shift::Value(v) => v,
    }
}

fn pick_candidate(a: PowerCandidate, b: PowerCandidate) -> PowerCandidate {
    let scale = 1.0 + a.lambda.abs().max(b.lambda.abs());
    if (a.lambda.abs() - b.lambda.abs()).abs() > 1e-12 * scale {
        return if a.lambda.abs() > b.lambda.abs() { a } else { b };
    }
    if a.lambda != b.lambda {
        return if a.lambda > b.lambda { a } else { b };
    }
    match desc_lex_cmp(&a.x, &b.x) {
        std::cmp::Ordering::Greater => b,
        _ => a,
    }
}

fn candidate_to_pair(a: &SymTensor, cand: PowerCandidate) -> EigenPair {
    let (lambda, x) = canonical_z_rep(a, cand.x);
    EigenPair {
        value: Complex64::new(lambda, 0.0),
        vector: Some(x.iter().map(|&v| Complex64::new(v, 0.0)).collect()),
        kind: EigenKind::Z,
        multiplicity: 1,
    }
}
