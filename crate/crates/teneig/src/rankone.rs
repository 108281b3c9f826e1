//! Best rank-one approximation of symmetric tensors, successive deflation,
//! approximation-ratio bounds, and the multilinear maximum.
//!
//! For a symmetric tensor the best rank-one approximation is `λ xᵐ` where
//! `(λ, x)` is the Z-eigenpair of largest `|λ|`, and the Frobenius error
//! satisfies `‖A − λxᵐ‖² = ‖A‖² − λ²`. Repeated deflation by the dominant
//! pair contracts the residual by at least the best rank-one approximation
//! ratio of the space, which is bounded below by `1/√(nᵐ⁻¹)`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::direct::{canonical_z_rep, desc_lex_cmp, z_spectrum_small};
use crate::error::{Error, Result};
use crate::index::factorial;
use crate::power::{z_power, IterOptions, Shift};
use crate::tensor::{SymTensor, Tensor};

/// One deflation term `lambda · vectorᵐ` with a unit vector under the usual
/// sign convention.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneTerm {
    pub lambda: f64,
    pub vector: Vec<f64>,
}

impl RankOneTerm {
    /// The symmetric tensor `lambda · vectorᵐ` of the given order.
    pub fn to_tensor(&self, order: usize) -> SymTensor {
        SymTensor::rank_one(order, self.lambda, &self.vector).expect("unit vector is valid")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SsbraStatus {
    /// Residual norm fell below the tolerance.
    ResidualTol,
    /// Term budget exhausted first.
    MaxTerms,
    /// The inner eigensolver failed; the result holds the terms found so far.
    SolverFailed,
}

/// Successive deflation result: ordered rank-one terms and the Frobenius
/// norm of the residual tensor after each deflation.
#[derive(Debug, Clone)]
pub struct SsbraResult {
    pub terms: Vec<RankOneTerm>,
    pub residual_norms: Vec<f64>,
    pub status: SsbraStatus,
}

impl SsbraResult {
    /// Reconstruct `Σ λ_k x_kᵐ`.
    pub fn reconstruct(&self, order: usize, dim: usize) -> Result<SymTensor> {
        let mut acc = SymTensor::new(order, dim)?;
        for term in &self.terms {
            acc = acc.sub(&term.to_tensor(order).scale(-1.0))?;
        }
        Ok(acc)
    }
}

/// Bounds on the best rank-one approximation ratio of the space of
/// order-`m`, dimension-`n` symmetric tensors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AppBounds {
    pub order: usize,
    pub dim: usize,
    /// `1/√(nᵐ⁻¹)`, valid for every order.
    pub lower: f64,
    /// Ratio of the reference tensor: `ρ_Z(A) / ‖A‖_F` with `ρ_Z = 1` for
    /// even order and `√n` for odd order.
    pub upper: f64,
    /// Closed form reported alongside, where one exists (orders 2–4). For
    /// odd order this disagrees with `upper` beyond `n = 1`; both values are
    /// surfaced rather than reconciled.
    pub closed_form_upper: Option<f64>,
}

fn better_pair(a: &(f64, Vec<f64>), b: &(f64, Vec<f64>)) -> bool {
    let scale = 1.0 + a.0.abs().max(b.0.abs());
    if (a.0.abs() - b.0.abs()).abs() > 1e-12 * scale {
        return a.0.abs() > b.0.abs();
    }
    if a.0 != b.0 {
        return a.0 > b.0;
    }
    desc_lex_cmp(&a.1, &b.1) == std::cmp::Ordering::Less
}

/// The Z-eigenpair of largest `|λ|`: exact elimination for `n ≤ 3`,
/// multi-start shifted power method above that (where the residual identity
/// still holds but global dominance is not certified).
pub fn best_rank_one(a: &SymTensor, opts: &IterOptions) -> Result<RankOneTerm> {
    if a.is_zero() {
        return Err(Error::ZeroTensor);
    }
    let mut candidates: Vec<(f64, Vec<f64>)> = Vec::new();
    if a.dim() <= 3 {
        let spectrum = z_spectrum_small(a, opts.tol)?;
        for pair in &spectrum.pairs {
            if let (Some(lambda), Some(x)) = (pair.real_value(), pair.real_vector()) {
                candidates.push((lambda, x));
            }
        }
    } else {
        let shifts = match opts.shift {
            Shift::Auto => {
                let alpha = a.order() as f64 * Tensor::max_abs_entry(a);
                vec![Shift::Value(alpha), Shift::Value(-alpha)]
            }
            fixed => vec![fixed],
        };
        let mut last_err = None;
        for shift in shifts {
            match z_power(a, &IterOptions { shift, ..*opts }) {
                Ok(pair) => {
                    if let (Some(lambda), Some(x)) = (pair.real_value(), pair.real_vector()) {
                        candidates.push((lambda, x));
                    }
                }
                Err(e) => last_err = Some(e),
            }
        }
        if candidates.is_empty() {
            return Err(last_err.unwrap_or(Error::ZeroTensor));
        }
    }
    let mut best: Option<(f64, Vec<f64>)> = None;
    for cand in candidates {
        best = Some(match best {
            None => cand,
            Some(prev) => {
                if better_pair(&cand, &prev) {
                    cand
                } else {
                    prev
                }
            }
        });
    }
    let (_, x) = best.ok_or(Error::ZeroTensor)?;
    let (lambda, vector) = canonical_z_rep(a, x);
    Ok(RankOneTerm { lambda, vector })
}

/// Successive symmetric best rank-one approximation: deflate by the dominant
/// Z-eigenpair until the residual norm drops below `tol` or `max_terms` is
/// reached. Inner solver failures abort with the partial result attached.
pub fn ssbra(a: &SymTensor, max_terms: usize, tol: f64, opts: &IterOptions) -> Result<SsbraResult> {
    let scale = a.frobenius_norm();
    let drop_threshold = 1e-14 * scale;
    let mut current = a.clone();
    let mut terms: Vec<RankOneTerm> = Vec::new();
    let mut residual_norms: Vec<f64> = Vec::new();
    for _ in 0..max_terms {
        if current.frobenius_norm() <= tol {
            return Ok(SsbraResult { terms, residual_norms, status: SsbraStatus::ResidualTol });
        }
        let term = match best_rank_one(&current, opts) {
            Ok(t) => t,
            Err(source) => {
                let failed = terms.len();
                return Err(Error::SsbraFailed {
                    term: failed,
                    partial: Box::new(SsbraResult {
                        terms,
                        residual_norms,
                        status: SsbraStatus::SolverFailed,
                    }),
                    source: Box::new(source),
                });
            }
        };
        current = current.sub(&term.to_tensor(a.order()))?.prune(drop_threshold);
        residual_norms.push(current.frobenius_norm());
        terms.push(term);
    }
    let status = if current.frobenius_norm() <= tol {
        SsbraStatus::ResidualTol
    } else {
        SsbraStatus::MaxTerms
    };
    Ok(SsbraResult { terms, residual_norms, status })
}

fn compositions(total: usize, slots: usize) -> Vec<Vec<usize>> {
    if slots == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, slots - 1) {
            let mut comp = Vec::with_capacity(slots);
            comp.push(first);
            comp.append(&mut rest);
            out.push(comp);
        }
    }
    out
}

/// The reference tensor of the approximation-ratio bounds: the symmetric
/// tensor with `A xᵐ = (xᵀx)^k` for even `m = 2k`, and
/// `A xᵐ = (xᵀx)^k (Σᵢ xᵢ)` for odd `m = 2k + 1`. Entries come from matching
/// monomial coefficients, which is exact.
pub fn reference_tensor(order: usize, dim: usize) -> Result<SymTensor> {
    let mut t = SymTensor::new(order, dim)?;
    let k = order / 2;
    let m_fact = factorial(order) as f64;
    let k_fact = factorial(k) as f64;
    let mut add = |exponents: &[usize], coef: f64| {
        let mut idx = Vec::with_capacity(order);
        for (i, &e) in exponents.iter().enumerate() {
            idx.extend(std::iter::repeat_n(i, e));
        }
        let fact_prod: f64 = exponents.iter().map(|&e| factorial(e) as f64).product();
        let value = coef * fact_prod / m_fact;
        t.set(&idx, value).expect("valid index");
    };
    if order.is_multiple_of(2) {
        for comp in compositions(k, dim) {
            let coef = k_fact / comp.iter().map(|&c| factorial(c) as f64).product::<f64>();
            let exponents: Vec<usize> = comp.iter().map(|&c| 2 * c).collect();
            add(&exponents, coef);
        }
    } else {
        for comp in compositions(k, dim) {
            let coef = k_fact / comp.iter().map(|&c| factorial(c) as f64).product::<f64>();
            for j in 0..dim {
                let mut exponents: Vec<usize> = comp.iter().map(|&c| 2 * c).collect();
                exponents[j] += 1;
                add(&exponents, coef);
            }
        }
    }
    Ok(t)
}

/// Lower and upper bounds on the best rank-one approximation ratio for the
/// space of order-`m`, dimension-`n` symmetric tensors.
pub fn app_bounds(order: usize, dim: usize) -> Result<AppBounds> {
    let reference = reference_tensor(order, dim)?;
    let fro = reference.frobenius_norm();
    let n = dim as f64;
    let rho_z = if order.is_multiple_of(2) { 1.0 } else { n.sqrt() };
    let upper = rho_z / fro;
    let lower = 1.0 / n.powi((order - 1) as i32).sqrt();
    let closed_form_upper = match order {
        2 => Some(1.0 / n.sqrt()),
        3 => Some((6.0 / (n + 5.0)).sqrt()),
        4 => Some((3.0 / (n * n + 2.0 * n)).sqrt()),
        _ => None,
    };
    Ok(AppBounds { order, dim, lower, upper, closed_form_upper })
}

// ---------------------------------------------------------------------------
// Multilinear maximum
// ---------------------------------------------------------------------------

fn multi_value(a: &SymTensor, xs: &[Vec<f64>]) -> f64 {
    let mut acc = 0.0;
    for (idx, v) in a.entries() {
        let mut permsum = 0.0;
        crate::index::for_each_unique_permutation(idx, |perm| {
            let mut prod = 1.0;
            for (k, &i) in perm.iter().enumerate() {
                prod *= xs[k][i];
            }
            permsum += prod;
        });
        acc += v * permsum;
    }
    acc
}

fn partial_contract(a: &SymTensor, xs: &[Vec<f64>], slot: usize) -> Vec<f64> {
    let mut out = vec![0.0; a.dim()];
    for (idx, v) in a.entries() {
        crate::index::for_each_unique_permutation(idx, |perm| {
            let mut prod = v;
            for (k, &i) in perm.iter().enumerate() {
                if k != slot {
                    prod *= xs[k][i];
                }
            }
            out[perm[slot]] += prod;
        });
    }
    out
}

fn normalize(x: &mut [f64]) -> f64 {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        for v in x.iter_mut() {
            *v /= norm;
        }
    }
    norm
}

const MULTILINEAR_RESTARTS: usize = 32;

/// The multilinear maximum `σ(A) = max |A x⁽¹⁾ ⋯ x⁽ᵐ⁾|` over independent unit
/// vectors, by alternating maximization with seeded random restarts plus a
/// symmetric grid seed for small dimensions. For symmetric tensors this
/// equals `ρ_Z(A)`, the largest Z-eigenvalue magnitude.
pub fn multilinear_max(a: &SymTensor, opts: &IterOptions) -> Result<f64> {
    if a.is_zero() {
        return Ok(0.0);
    }
    let n = a.dim();
    let m = a.order();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut starts: Vec<Vec<f64>> = Vec::new();
    for _ in 0..MULTILINEAR_RESTARTS {
        let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if normalize(&mut x) < 1e-9 {
            x = vec![1.0 / (n as f64).sqrt(); n];
        }
        starts.push(x);
    }
    if let Some(seed) = symmetric_grid_seed(a) {
        starts.push(seed);
    }
    starts.push(vec![1.0 / (n as f64).sqrt(); n]);

    let mut best = 0.0f64;
    for start in starts {
        let mut xs: Vec<Vec<f64>> = vec![start.clone(); m];
        let mut value = multi_value(a, &xs).abs();
        for _ in 0..1000 {
            for slot in 0..m {
                let mut w = partial_contract(a, &xs, slot);
                if normalize(&mut w) < 1e-300 {
                    // stalled on a zero contraction; nudge off it
                    for v in w.iter_mut() {
                        *v = rng.gen_range(-1.0..1.0);
                    }
                    normalize(&mut w);
                }
                xs[slot] = w;
            }
            let next = multi_value(a, &xs).abs();
            if next - value <= 1e-13 * (1.0 + next) {
                value = next;
                break;
            }
            value = next;
        }
        best = best.max(value);
    }
    Ok(best)
}

/// Best `|A xᵐ|` over a coarse sphere grid, as an extra alternating seed;
/// for symmetric tensors the maximum is attained at equal vectors.
fn symmetric_grid_seed(a: &SymTensor) -> Option<Vec<f64>> {
    match a.dim() {
        1 => Some(vec![1.0]),
        2 => {
            let mut best = (f64::NEG_INFINITY, vec![1.0, 0.0]);
            for i in 0..2048 {
                let theta = std::f64::consts::PI * i as f64 / 2048.0;
                let x = vec![theta.cos(), theta.sin()];
                let v = a.eval_unchecked(&x).abs();
                if v > best.0 {
                    best = (v, x);
                }
            }
            Some(best.1)
        }
        3 => {
            let mut best = (f64::NEG_INFINITY, vec![1.0, 0.0, 0.0]);
            for i in 0..64 {
                let phi = std::f64::consts::PI * (i as f64 + 0.5) / 64.0;
                for j in 0..128 {
                    let psi = 2.0 * std::f64::consts::PI * j as f64 / 128.0;
                    let x = vec![phi.sin() * psi.cos(), phi.sin() * psi.sin(), phi.cos()];
                    let v = a.eval_unchecked(&x).abs();
                    if v > best.0 {
                        best = (v, x);
                    }
                }
            }
            Some(best.1)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quartic_sphere_power() -> SymTensor {
        SymTensor::from_entries(
            4,
            2,
            [
                (vec![0, 0, 0, 0], 1.0),
                (vec![1, 1, 1, 1], 1.0),
                (vec![0, 0, 1, 1], 1.0 / 3.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn best_rank_one_of_rank_one_input() {
        let a = SymTensor::rank_one(4, 2.0, &[1.0, 0.0]).unwrap();
        let term = best_rank_one(&a, &IterOptions::default()).unwrap();
        assert!((term.lambda - 2.0).abs() < 1e-10);
        assert!((term.vector[0] - 1.0).abs() < 1e-10);
        let residual = a.sub(&term.to_tensor(4)).unwrap().frobenius_norm();
        assert!(residual < 1e-10);
    }

    #[test]
    fn best_rank_one_diagonal_residual() {
        let a = SymTensor::diagonal(4, &[1.0, 0.5]).unwrap();
        let term = best_rank_one(&a, &IterOptions::default()).unwrap();
        assert!((term.lambda - 1.0).abs() < 1e-10);
        assert!((term.vector[0] - 1.0).abs() < 1e-9);
        let residual = a.sub(&term.to_tensor(4)).unwrap().frobenius_norm();
        assert!((residual - 0.5).abs() < 1e-10);
        let formula = (a.frobenius_norm().powi(2) - term.lambda.powi(2)).sqrt();
        assert!((residual - formula).abs() < 1e-10);
    }

    #[test]
    fn best_rank_one_sphere_power_residual() {
        let a = quartic_sphere_power();
        let term = best_rank_one(&a, &IterOptions::default()).unwrap();
        assert!((term.lambda - 1.0).abs() < 1e-10);
        let residual = a.sub(&term.to_tensor(4)).unwrap().frobenius_norm();
        assert!((residual - (5.0f64 / 3.0).sqrt()).abs() < 1e-10);
    }

    #[test]
    fn best_rank_one_rejects_zero() {
        let a = SymTensor::new(3, 2).unwrap();
        assert!(matches!(best_rank_one(&a, &IterOptions::default()), Err(Error::ZeroTensor)));
    }

    #[test]
    fn ssbra_rank_one_input_single_term() {
        let a = SymTensor::rank_one(3, -1.5, &[0.6, -0.8]).unwrap();
        let result = ssbra(&a, 10, 1e-12, &IterOptions::default()).unwrap();
        assert_eq!(result.terms.len(), 1);
        assert_eq!(result.status, SsbraStatus::ResidualTol);
        assert!(result.residual_norms[0] < 1e-12);
    }

    #[test]
    fn ssbra_quartic_identity_two_terms() {
        let a = SymTensor::diagonal(4, &[1.0, 1.0]).unwrap();
        let result = ssbra(&a, 10, 1e-12, &IterOptions::default()).unwrap();
        assert_eq!(result.terms.len(), 2);
        assert_eq!(result.status, SsbraStatus::ResidualTol);
        // tie broken toward e1, then e2 deflates exactly
        assert!((result.terms[0].vector[0] - 1.0).abs() < 1e-10);
        assert!((result.terms[1].vector[1] - 1.0).abs() < 1e-10);
        assert!(*result.residual_norms.last().unwrap() <= 1e-12);
    }

    #[test]
    fn ssbra_reconstructs_and_decays() {
        let a = SymTensor::from_entries(
            4,
            2,
            [
                (vec![0, 0, 0, 0], 0.9),
                (vec![0, 0, 0, 1], -0.2),
                (vec![0, 0, 1, 1], 0.4),
                (vec![0, 1, 1, 1], 0.1),
                (vec![1, 1, 1, 1], -0.7),
            ],
        )
        .unwrap();
        // worst-case decay is only √(7/8) per step, so the budget is generous
        let result = ssbra(&a, 600, 1e-10, &IterOptions::default()).unwrap();
        assert_eq!(result.status, SsbraStatus::ResidualTol);
        // per-step contraction by 1 − 1/nᵐ⁻¹ = 7/8
        let mut prev = a.frobenius_norm();
        for &r in &result.residual_norms {
            assert!(r * r <= prev * prev * (1.0 - 1.0 / 8.0) + 1e-12);
            prev = r;
        }
        let rebuilt = result.reconstruct(4, 2).unwrap();
        assert!(a.sub(&rebuilt).unwrap().frobenius_norm() <= 1e-9);
    }

    #[test]
    fn reference_tensor_small_cases() {
        let id = reference_tensor(2, 3).unwrap();
        for i in 0..3 {
            assert!((id.get(&[i, i]) - 1.0).abs() < 1e-15);
        }
        assert_eq!(id.nnz(), 3);

        let quartic = reference_tensor(4, 2).unwrap();
        assert!((quartic.get(&[0, 0, 0, 0]) - 1.0).abs() < 1e-15);
        assert!((quartic.get(&[1, 1, 1, 1]) - 1.0).abs() < 1e-15);
        assert!((quartic.get(&[0, 0, 1, 1]) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(quartic.nnz(), 3);

        let cubic = reference_tensor(3, 2).unwrap();
        assert!((cubic.get(&[0, 0, 0]) - 1.0).abs() < 1e-15);
        assert!((cubic.get(&[1, 1, 1]) - 1.0).abs() < 1e-15);
        assert!((cubic.get(&[0, 0, 1]) - 1.0 / 3.0).abs() < 1e-15);
        assert!((cubic.get(&[0, 1, 1]) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn reference_tensor_matches_defining_polynomial() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (order, dim) in [(3, 2), (4, 3), (5, 2), (6, 2), (4, 4)] {
            let t = reference_tensor(order, dim).unwrap();
            let k = order / 2;
            for _ in 0..100 {
                let x: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let xtx: f64 = x.iter().map(|v| v * v).sum();
                let mut expected = xtx.powi(k as i32);
                if order % 2 == 1 {
                    expected *= x.iter().sum::<f64>();
                }
                let got = t.eval(&x).unwrap();
                assert!(
                    (got - expected).abs() <= 1e-10 * (1.0 + expected.abs()),
                    "order {order} dim {dim}: {got} vs {expected}"
                );
            }
        }
    }

    #[test]
    fn app_bounds_matrix_case() {
        for n in 1..=6usize {
            let b = app_bounds(2, n).unwrap();
            let expected = 1.0 / (n as f64).sqrt();
            assert!((b.lower - expected).abs() < 1e-14);
            assert!((b.upper - expected).abs() < 1e-14);
            assert!((b.closed_form_upper.unwrap() - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn app_bounds_quartic_case() {
        let b = app_bounds(4, 2).unwrap();
        assert!((b.lower - 1.0 / 8.0f64.sqrt()).abs() < 1e-14);
        assert!((b.upper - (3.0f64 / 8.0).sqrt()).abs() < 1e-13);
        assert!((b.closed_form_upper.unwrap() - (3.0f64 / 8.0).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn app_bounds_cubic_case_reports_both_uppers() {
        let b = app_bounds(3, 2).unwrap();
        assert!((b.lower - 0.5).abs() < 1e-14);
        assert!((b.upper - 3.0f64.sqrt() / 2.0).abs() < 1e-13);
        assert!((b.closed_form_upper.unwrap() - (6.0f64 / 7.0).sqrt()).abs() < 1e-14);
        assert!(b.lower <= b.upper && b.upper <= 1.0);
    }

    #[test]
    fn multilinear_max_matrix() {
        let a = SymTensor::from_entries(
            2,
            2,
            [(vec![0, 0], 2.0), (vec![0, 1], 1.0), (vec![1, 1], 2.0)],
        )
        .unwrap();
        let sigma = multilinear_max(&a, &IterOptions::default()).unwrap();
        assert!((sigma - 3.0).abs() < 1e-9);
    }

    #[test]
    fn multilinear_max_sphere_power() {
        let sigma = multilinear_max(&quartic_sphere_power(), &IterOptions::default()).unwrap();
        assert!((sigma - 1.0).abs() < 1e-9);
    }

    #[test]
    fn multilinear_max_cubic_identity() {
        let a = SymTensor::diagonal(3, &[1.0, 1.0]).unwrap();
        let sigma = multilinear_max(&a, &IterOptions::default()).unwrap();
        assert!((sigma - 1.0).abs() < 1e-9);
    }
}
