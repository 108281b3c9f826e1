//! Seeded generators for random tensors, orthogonal matrices, and simplex
//! vectors. Everything is driven by an explicit ChaCha stream so fixtures
//! are reproducible across runs and platforms.

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::index::{CartesianIndices, SortedIndices};
use crate::markov::{ProbVec, TransitionTensor};
use crate::tensor::{GenTensor, SymTensor};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Symmetric tensor with every symmetry class drawn uniformly from
/// `[lo, hi]`.
pub fn symmetric_uniform(
    order: usize,
    dim: usize,
    lo: f64,
    hi: f64,
    rng: &mut ChaCha8Rng,
) -> SymTensor {
    let mut t = SymTensor::new(order, dim).expect("valid shape");
    for idx in SortedIndices::new(order, dim) {
        t.set(&idx, rng.gen_range(lo..hi)).expect("valid index");
    }
    t
}

/// Symmetric tensor with entries bounded away from zero, so it is entrywise
/// positive (hence weakly irreducible).
pub fn symmetric_positive(order: usize, dim: usize, rng: &mut ChaCha8Rng) -> SymTensor {
    symmetric_uniform(order, dim, 0.05, 1.0, rng)
}

/// Standard normal via Box–Muller.
fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Uniformly distributed point on the unit sphere.
pub fn unit_vector(dim: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let x: Vec<f64> = (0..dim).map(|_| gaussian(rng)).collect();
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return x.into_iter().map(|v| v / norm).collect();
        }
    }
}

/// Random orthogonal matrix from the QR factorization of a random matrix.
pub fn orthogonal(dim: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    loop {
        let m = DMatrix::from_fn(dim, dim, |_, _| gaussian(rng));
        let qr = m.qr();
        let q = qr.q();
        // reject the (measure-zero) degenerate draws
        if q.iter().all(|v| v.is_finite()) && (q.determinant().abs() - 1.0).abs() < 1e-8 {
            return q;
        }
    }
}

/// Random point of the probability simplex.
pub fn prob_vec(dim: usize, rng: &mut ChaCha8Rng) -> ProbVec {
    let mut x: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.01..1.0)).collect();
    let sum: f64 = x.iter().sum();
    for v in &mut x {
        *v /= sum;
    }
    ProbVec::new(x).expect("normalized positive vector")
}

/// Random entrywise-positive column-stochastic transition tensor.
pub fn stochastic(order: usize, dim: usize, rng: &mut ChaCha8Rng) -> TransitionTensor {
    let mut g = GenTensor::new(order, dim).expect("valid shape");
    for tail in CartesianIndices::new(order - 1, dim) {
        let mut col: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.05..1.0)).collect();
        let sum: f64 = col.iter().sum();
        for v in &mut col {
            *v /= sum;
        }
        for (k1, &v) in col.iter().enumerate() {
            let mut idx = Vec::with_capacity(order);
            idx.push(k1);
            idx.extend_from_slice(&tail);
            g.set(&idx, v).expect("valid index");
        }
    }
    TransitionTensor::new(g).expect("columns normalized by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthogonal_matrices_are_orthogonal() {
        let mut r = rng(11);
        for dim in [2usize, 3, 5] {
            let q = orthogonal(dim, &mut r);
            let prod = &q * q.transpose();
            for i in 0..dim {
                for j in 0..dim {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!((prod[(i, j)] - expected).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn generators_are_reproducible() {
        let a = symmetric_uniform(3, 3, -1.0, 1.0, &mut rng(5));
        let b = symmetric_uniform(3, 3, -1.0, 1.0, &mut rng(5));
        assert_eq!(a, b);
    }

    #[test]
    fn unit_vectors_have_unit_norm() {
        let mut r = rng(3);
        for _ in 0..32 {
            let x = unit_vector(3, &mut r);
            let norm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn stochastic_tensors_validate() {
        let mut r = rng(9);
        let p = stochastic(3, 4, &mut r);
        assert_eq!(p.order(), 3);
        assert_eq!(p.dim(), 4);
    }
}
