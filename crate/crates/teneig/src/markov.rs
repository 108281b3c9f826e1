//! Higher-order Markov chains: transition-tensor validation, the evolution
//! map, and the stationary fixed-point iteration.
//!
//! A chain of memory `m − 1` on `n` states is driven by an order-`m`
//! transition tensor whose entries `p_{k₁k₂…kₘ}` are conditional
//! probabilities of the next state `k₁` given the last `m − 1` states, so the
//! sums over the first index are 1 for every fixed tail. The stationary
//! distribution solves the fixed-point problem `P xᵐ⁻¹ = x` on the simplex;
//! the power iteration converges linearly under the known sufficient
//! conditions but not in general, so cycling is detected and reported rather
//! than assumed away.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result, TransitionViolation};
use crate::power::IterOptions;
use crate::tensor::GenTensor;

/// A point of the probability simplex: nonnegative components summing to 1
/// (within 1e-12).
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVec {
    x: Vec<f64>,
}

impl ProbVec {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::NotProbability("empty vector".into()));
        }
        if let Some((i, &v)) = x.iter().enumerate().find(|(_, &v)| !v.is_finite() || v < 0.0) {
            return Err(Error::NotProbability(format!("component {i} is {v}")));
        }
        let sum: f64 = x.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::NotProbability(format!("components sum to {sum}")));
        }
        Ok(ProbVec { x })
    }

    pub fn uniform(n: usize) -> Self {
        ProbVec { x: vec![1.0 / n as f64; n] }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.x
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.x
    }

    pub fn l1_distance(&self, other: &ProbVec) -> f64 {
        self.x.iter().zip(&other.x).map(|(a, b)| (a - b).abs()).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StationaryStatus {
    Converged,
    /// An earlier iterate recurred (at 1e-12 granularity) without meeting the
    /// tolerance.
    Cycling,
    MaxIter,
}

/// Outcome of the stationary fixed-point iteration.
#[derive(Debug, Clone)]
pub struct StationaryResult {
    pub x_star: ProbVec,
    /// `‖P x*ᵐ⁻¹ − x*‖₁` at the returned point.
    pub residual: f64,
    pub iterations: usize,
    pub status: StationaryStatus,
}

/// Column-stochastic order-`m` transition tensor: entries in `[0, 1]`, sums
/// over the first index equal to 1 for every tail `(k₂, …, kₘ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionTensor {
    tensor: GenTensor,
}

impl TransitionTensor {
    /// Validate a general tensor as a transition tensor, listing every
    /// violated column sum and out-of-range entry on failure.
    pub fn new(tensor: GenTensor) -> Result<Self> {
        if tensor.order() < 2 {
            return Err(Error::OrderTooSmall { order: tensor.order(), min: 2 });
        }
        let n = tensor.dim();
        let mut violations: Vec<TransitionViolation> = Vec::new();
        let mut sums: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        for (idx, v) in tensor.entries() {
            if v < 0.0 {
                violations.push(TransitionViolation::NegativeEntry { index: idx.to_vec(), value: v });
            } else if v > 1.0 {
                violations.push(TransitionViolation::EntryAboveOne { index: idx.to_vec(), value: v });
            }
            *sums.entry(idx[1..].to_vec()).or_insert(0.0) += v;
        }
        for (tail, sum) in &sums {
            if (sum - 1.0).abs() > 1e-10 {
                violations.push(TransitionViolation::ColumnSum { tail: tail.clone(), sum: *sum });
            }
        }
        // walk the sorted stored tails against the full lexicographic
        // enumeration to spot all-zero columns without densifying
        let mut stored = sums.keys();
        let mut next_stored = stored.next();
        let mut reported = 0usize;
        for tail in crate::index::CartesianIndices::new(tensor.order() - 1, n) {
            match next_stored {
                Some(t) if *t == tail => {
                    next_stored = stored.next();
                }
                _ => {
                    violations.push(TransitionViolation::ColumnSum { tail, sum: 0.0 });
                    reported += 1;
                    if reported >= 1024 {
                        break;
                    }
                }
            }
        }
        if violations.is_empty() {
            Ok(TransitionTensor { tensor })
        } else {
            Err(Error::InvalidTransition(violations))
        }
    }

    pub fn order(&self) -> usize {
        self.tensor.order()
    }

    pub fn dim(&self) -> usize {
        self.tensor.dim()
    }

    pub fn tensor(&self) -> &GenTensor {
        &self.tensor
    }

    /// Raw evolution map `(P x⁽¹⁾ ⋯ x⁽ᵐ⁻¹⁾)ᵢ = Σ p_{i k₂…kₘ} x⁽¹⁾_{k₂} ⋯`,
    /// without renormalization.
    fn contract(&self, history: &[&[f64]]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        for (idx, v) in self.tensor.entries() {
            let mut prod = v;
            for (t, &k) in idx[1..].iter().enumerate() {
                prod *= history[t][k];
            }
            out[idx[0]] += prod;
        }
        out
    }

    /// One step of the chain: the distribution at time `t` from the
    /// distributions at `t−1, …, t−m+1` (most recent first). The output is
    /// renormalized onto the simplex to stop drift from accumulating over
    /// long simulations.
    pub fn evolve(&self, history: &[ProbVec]) -> Result<ProbVec> {
        let expected = self.order() - 1;
        if history.len() != expected {
            return Err(Error::InvalidHistory { order: self.order(), expected, got: history.len() });
        }
        for h in history {
            if h.dim() != self.dim() {
                return Err(Error::DimensionMismatch { expected: self.dim(), got: h.dim() });
            }
        }
        let slices: Vec<&[f64]> = history.iter().map(|h| h.as_slice()).collect();
        let mut out = self.contract(&slices);
        let sum: f64 = out.iter().sum();
        for v in &mut out {
            *v /= sum;
        }
        ProbVec::new(out)
    }

    /// `‖P xᵐ⁻¹ − x‖₁`, the fixed-point defect at `x`.
    pub fn fixed_point_residual(&self, x: &ProbVec) -> f64 {
        let slices: Vec<&[f64]> = vec![x.as_slice(); self.order() - 1];
        let y = self.contract(&slices);
        y.iter().zip(x.as_slice()).map(|(a, b)| (a - b).abs()).sum()
    }

    /// Stationary distribution by the power iteration
    /// `y ← P yᵐ⁻¹`, stopping when consecutive iterates agree to `opts.tol`
    /// in the 1-norm. The returned point carries a residual no larger than
    /// the tolerance when the status is `Converged`.
    pub fn stationary_power(&self, x0: &ProbVec, opts: &IterOptions) -> Result<StationaryResult> {
        if x0.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x0.dim() });
        }
        let quantize = |x: &[f64]| -> Vec<i64> {
            x.iter().map(|&v| (v / 1e-12).round() as i64).collect()
        };
        let mut window: VecDeque<Vec<i64>> = VecDeque::with_capacity(64);
        window.push_back(quantize(x0.as_slice()));
        let mut y = x0.clone();
        for k in 1..=opts.max_iter {
            let z = self.evolve(&vec![y.clone(); self.order() - 1])?;
            let r = z.l1_distance(&y);
            if r <= opts.tol {
                return Ok(StationaryResult {
                    x_star: y,
                    residual: r,
                    iterations: k,
                    status: StationaryStatus::Converged,
                });
            }
            let q = quantize(z.as_slice());
            if window.contains(&q) {
                let residual = self.fixed_point_residual(&z);
                return Ok(StationaryResult {
                    x_star: z,
                    residual,
                    iterations: k,
                    status: StationaryStatus::Cycling,
                });
            }
            if window.len() == 64 {
                window.pop_front();
            }
            window.push_back(q);
            y = z;
        }
        let residual = self.fixed_point_residual(&y);
        Ok(StationaryResult {
            x_star: y,
            residual,
            iterations: opts.max_iter,
            status: StationaryStatus::MaxIter,
        })
    }

    /// Diagnostic full-history simulation: iterate [`TransitionTensor::evolve`]
    /// with a sliding window for `steps` steps and return the trajectory.
    /// Convergence of this map is observed, never asserted.
    pub fn simulate(&self, history: &[ProbVec], steps: usize) -> Result<Vec<ProbVec>> {
        let mut window: VecDeque<ProbVec> = history.iter().cloned().collect();
        let mut out = Vec::with_capacity(steps);
        for _ in 0..steps {
            let hist: Vec<ProbVec> = window.iter().cloned().collect();
            let next = self.evolve(&hist)?;
            window.pop_back();
            window.push_front(next.clone());
            out.push(next);
        }
        Ok(out)
    }
}
