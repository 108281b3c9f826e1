//! Tensor storage and the contractions everything else is built on.
//!
//! [`SymTensor`] keeps one value per non-decreasing multi-index and applies
//! multinomial multiplicities during contraction, so memory scales with the
//! number of distinct monomials instead of `nᵐ`. [`GenTensor`] stores
//! positioned indices and is the natural home for transition tensors.
//! Both are immutable after construction as far as the algorithms are
//! concerned; every operation here is a pure function.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::index::{
    distinct_with_counts, for_each_unique_permutation, monomial, multiplicity, remove_one,
    CartesianIndices, SortedIndices,
};

/// Above this many positions (`nᵐ`) an operation must stream the sparse map
/// instead of expanding to a dense array.
pub const DENSE_LIMIT: u128 = 1_000_000;

/// Gershgorin-style localization disk: every eigenvalue lies in the union of
/// the `n` disks returned by [`SymTensor::gershgorin_disks`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    /// Diagonal entry `a_{i,…,i}`.
    pub center: f64,
    /// Sum of `|a_{i,i₂,…,iₘ}|` over every positioned tail other than the
    /// diagonal one.
    pub radius: f64,
}

impl Disk {
    pub fn contains(&self, lambda: Complex64, slack: f64) -> bool {
        (lambda - Complex64::new(self.center, 0.0)).norm() <= self.radius + slack
    }
}

/// Zero-pattern digraph of a tensor: arc `i → j` iff some entry
/// `a_{i,i₂,…,iₘ} ≠ 0` has `j` among `{i₂,…,iₘ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RepDigraph {
    n: usize,
    adj: Vec<bool>,
}

impl RepDigraph {
    fn new(n: usize) -> Self {
        RepDigraph { n, adj: vec![false; n * n] }
    }

    fn add_arc(&mut self, from: usize, to: usize) {
        self.adj[from * self.n + to] = true;
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.adj[from * self.n + to]
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Strong connectivity via one forward and one backward reachability
    /// sweep from vertex 0.
    pub fn strongly_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        self.sweep(false) && self.sweep(true)
    }

    fn sweep(&self, reversed: bool) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for (w, visited) in seen.iter_mut().enumerate() {
                let arc = if reversed { self.has_arc(w, v) } else { self.has_arc(v, w) };
                if arc && !*visited {
                    *visited = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }
}

/// Common surface of symmetric and general tensors, enough for the
/// nonnegative-tensor machinery to be generic over both.
pub trait Tensor {
    fn order(&self) -> usize;
    fn dim(&self) -> usize;
    /// Value at a positioned multi-index (any component order for the
    /// symmetric case).
    fn value_at(&self, idx: &[usize]) -> f64;
    /// The homogeneous form `A xᵐ`.
    fn eval(&self, x: &[f64]) -> Result<f64>;
    /// The contraction `A xᵐ⁻¹`.
    fn apply(&self, x: &[f64]) -> Result<Vec<f64>>;
    fn max_abs_entry(&self) -> f64;
    /// First stored negative entry, if any.
    fn negative_entry(&self) -> Option<(Vec<usize>, f64)>;
    fn rep_digraph(&self) -> RepDigraph;
}

/// Weak irreducibility: the representation digraph is strongly connected.
pub fn is_weakly_irreducible<T: Tensor + ?Sized>(t: &T) -> bool {
    t.rep_digraph().strongly_connected()
}

fn check_vector(dim: usize, x: &[f64]) -> Result<()> {
    if x.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: x.len() });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Symmetric tensors
// ---------------------------------------------------------------------------

/// Order-`m`, dimension-`n` real symmetric tensor with sorted-multi-index
/// storage. The value of any permuted index tuple equals the value of its
/// sorted representative; zeros are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTensor {
    order: usize,
    dim: usize,
    entries: BTreeMap<Vec<usize>, f64>,
}

impl SymTensor {
    pub fn new(order: usize, dim: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::OrderTooSmall { order, min: 2 });
        }
        if dim == 0 {
            return Err(Error::DimTooSmall);
        }
        Ok(SymTensor { order, dim, entries: BTreeMap::new() })
    }

    pub fn from_entries<I>(order: usize, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, f64)>,
    {
        let mut t = SymTensor::new(order, dim)?;
        for (idx, v) in entries {
            t.set(&idx, v)?;
        }
        Ok(t)
    }

    /// Diagonal tensor with `a_{i,…,i} = values[i]`.
    pub fn diagonal(order: usize, values: &[f64]) -> Result<Self> {
        let mut t = SymTensor::new(order, values.len())?;
        for (i, &v) in values.iter().enumerate() {
            t.set(&vec![i; order], v)?;
        }
        Ok(t)
    }

    /// The rank-one symmetric tensor `weight · x ⊗ ⋯ ⊗ x` (`order` factors).
    pub fn rank_one(order: usize, weight: f64, x: &[f64]) -> Result<Self> {
        let mut t = SymTensor::new(order, x.len())?;
        for idx in SortedIndices::new(order, x.len()) {
            let v = weight * monomial(&idx, x);
            if v != 0.0 {
                t.entries.insert(idx, v);
            }
        }
        Ok(t)
    }

    fn sorted_index(&self, idx: &[usize]) -> Result<Vec<usize>> {
        if idx.len() != self.order {
            return Err(Error::IndexLength { expected: self.order, got: idx.len() });
        }
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.dim) {
            let _ = bad;
            return Err(Error::IndexOutOfRange { index: idx.to_vec(), dim: self.dim });
        }
        let mut sorted = idx.to_vec();
        sorted.sort_unstable();
        Ok(sorted)
    }

    /// Set the value of the symmetry class containing `idx` (components in
    /// any order). Setting 0 removes the entry.
    pub fn set(&mut self, idx: &[usize], value: f64) -> Result<()> {
        let sorted = self.sorted_index(idx)?;
        if !value.is_finite() {
            return Err(Error::NonFiniteValue { index: sorted, value });
        }
        if value == 0.0 {
            self.entries.remove(&sorted);
        } else {
            self.entries.insert(sorted, value);
        }
        Ok(())
    }

    /// Value at a positioned multi-index; zero if the class is not stored.
    /// Panics on malformed indices (use [`SymTensor::set`]'s validation for
    /// untrusted input).
    pub fn get(&self, idx: &[usize]) -> f64 {
        let mut sorted = idx.to_vec();
        sorted.sort_unstable();
        assert_eq!(sorted.len(), self.order, "index length");
        assert!(sorted.last().is_none_or(|&i| i < self.dim), "index range");
        self.entries.get(&sorted).copied().unwrap_or(0.0)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Stored (sorted index, value) pairs in lexicographic index order.
    pub fn entries(&self) -> impl Iterator<Item = (&[usize], f64)> {
        self.entries.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// The homogeneous form `A xᵐ = Σ a_{i₁…iₘ} x_{i₁} ⋯ x_{iₘ}`.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        check_vector(self.dim, x)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (idx, v) in &self.entries {
            acc += v * multiplicity(idx) * monomial(idx, x);
        }
        acc
    }

    /// The contraction `A xᵐ⁻¹` with components
    /// `Σ a_{i,i₂,…,iₘ} x_{i₂} ⋯ x_{iₘ}`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_vector(self.dim, x)?;
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for (idx, v) in &self.entries {
            for (i, _) in distinct_with_counts(idx) {
                let rest = remove_one(idx, i);
                out[i] += v * multiplicity(&rest) * monomial(&rest, x);
            }
        }
        out
    }

    /// The matrix `A xᵐ⁻²` with `(i,j)` component
    /// `Σ a_{i,j,i₃,…,iₘ} x_{i₃} ⋯ x_{iₘ}`. One `(m−1)`-th of the Jacobian
    /// of [`SymTensor::apply`].
    pub fn second_contraction(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        check_vector(self.dim, x)?;
        let mut out = DMatrix::zeros(self.dim, self.dim);
        for (idx, v) in &self.entries {
            for (i, _) in distinct_with_counts(idx) {
                let rest = remove_one(idx, i);
                for (j, _) in distinct_with_counts(&rest) {
                    let rest2 = remove_one(&rest, j);
                    out[(i, j)] += v * multiplicity(&rest2) * monomial(&rest2, x);
                }
            }
        }
        Ok(out)
    }

    pub(crate) fn apply_complex(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (idx, v) in &self.entries {
            for (i, _) in distinct_with_counts(idx) {
                let rest = remove_one(idx, i);
                let mono: Complex64 = rest.iter().map(|&k| x[k]).product();
                out[i] += mono * multiplicity(&rest) * *v;
            }
        }
        out
    }

    /// Frobenius norm over all `nᵐ` positions (multiplicity-weighted).
    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|(idx, v)| multiplicity(idx) * v * v)
            .sum::<f64>()
            .sqrt()
    }

    /// Sum of the diagonal entries.
    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.entries.get(&vec![i; self.order]).copied().unwrap_or(0.0)).sum()
    }

    pub fn scale(&self, c: f64) -> SymTensor {
        let mut out = self.clone();
        if c == 0.0 {
            out.entries.clear();
        } else {
            for v in out.entries.values_mut() {
                *v *= c;
            }
        }
        out
    }

    /// Entrywise difference `self − other`.
    pub fn sub(&self, other: &SymTensor) -> Result<SymTensor> {
        if self.order != other.order {
            return Err(Error::IndexLength { expected: self.order, got: other.order });
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let mut out = self.clone();
        for (idx, v) in &other.entries {
            let slot = out.entries.entry(idx.clone()).or_insert(0.0);
            *slot -= v;
            if *slot == 0.0 {
                out.entries.remove(idx);
            }
        }
        Ok(out)
    }

    /// Drop entries with `|value| < threshold`.
    pub fn prune(&self, threshold: f64) -> SymTensor {
        let mut out = self.clone();
        out.entries.retain(|_, v| v.abs() >= threshold);
        out
    }

    /// Largest absolute difference between symmetry-class values of two
    /// tensors of matching shape.
    pub fn max_entry_diff(&self, other: &SymTensor) -> f64 {
        let mut worst = 0.0f64;
        for (idx, v) in &self.entries {
            worst = worst.max((v - other.entries.get(idx).copied().unwrap_or(0.0)).abs());
        }
        for (idx, v) in &other.entries {
            if !self.entries.contains_key(idx) {
                worst = worst.max(v.abs());
            }
        }
        worst
    }

    /// Orthogonal-style transform `B = Pᵐ A` with
    /// `b_{i₁…iₘ} = Σ p_{i₁j₁} ⋯ p_{iₘjₘ} a_{j₁…jₘ}`, so that
    /// `(Pᵐ A) xᵐ = A (Pᵀx)ᵐ`.
    pub fn transform(&self, p: &DMatrix<f64>) -> Result<SymTensor> {
        let n = self.dim;
        if p.nrows() != n || p.ncols() != n {
            return Err(Error::MatrixShape { rows: p.nrows(), cols: p.ncols(), expected: n });
        }
        let positions = (n as u128).checked_pow(self.order as u32);
        match positions {
            Some(count) if count <= DENSE_LIMIT => Ok(self.transform_dense(p)),
            _ => Ok(self.transform_sparse(p)),
        }
    }

    fn transform_dense(&self, p: &DMatrix<f64>) -> SymTensor {
        let n = self.dim;
        let m = self.order;
        let total = n.pow(m as u32);
        let mut data = vec![0.0f64; total];
        for (idx, v) in &self.entries {
            for_each_unique_permutation(idx, |perm| {
                let mut flat = 0usize;
                for &i in perm {
                    flat = flat * n + i;
                }
                data[flat] = *v;
            });
        }
        // m successive mode products, axis 0 is the most significant digit
        for axis in 0..m {
            let stride = n.pow((m - 1 - axis) as u32);
            let block = stride * n;
            let mut next = vec![0.0f64; total];
            let mut scratch = vec![0.0f64; n];
            for outer in 0..total / block {
                for rest in 0..stride {
                    let base = outer * block + rest;
                    for (i, s) in scratch.iter_mut().enumerate() {
                        let mut acc = 0.0;
                        for j in 0..n {
                            acc += p[(i, j)] * data[base + j * stride];
                        }
                        *s = acc;
                    }
                    for (i, &s) in scratch.iter().enumerate() {
                        next[base + i * stride] = s;
                    }
                }
            }
            data = next;
        }
        let mut entries = BTreeMap::new();
        for idx in SortedIndices::new(m, n) {
            let mut flat = 0usize;
            for &i in &idx {
                flat = flat * n + i;
            }
            if data[flat] != 0.0 {
                entries.insert(idx, data[flat]);
            }
        }
        SymTensor { order: m, dim: n, entries }
    }

    fn transform_sparse(&self, p: &DMatrix<f64>) -> SymTensor {
        let n = self.dim;
        let m = self.order;
        let mut entries = BTreeMap::new();
        for beta in SortedIndices::new(m, n) {
            let mut acc = 0.0;
            for (alpha, v) in &self.entries {
                let mut permsum = 0.0;
                for_each_unique_permutation(alpha, |perm| {
                    let mut prod = 1.0;
                    for (k, &j) in perm.iter().enumerate() {
                        prod *= p[(beta[k], j)];
                    }
                    permsum += prod;
                });
                acc += v * permsum;
            }
            if acc != 0.0 {
                entries.insert(beta, acc);
            }
        }
        SymTensor { order: m, dim: n, entries }
    }

    /// The `n` localization disks of Theorem-of-Gershgorin type: disk `i` is
    /// centered at the diagonal entry with radius the absolute off-diagonal
    /// mass of slice `i`, summed over all positioned tails.
    pub fn gershgorin_disks(&self) -> Vec<Disk> {
        let mut disks: Vec<Disk> = (0..self.dim)
            .map(|i| Disk {
                center: self.entries.get(&vec![i; self.order]).copied().unwrap_or(0.0),
                radius: 0.0,
            })
            .collect();
        for (idx, v) in &self.entries {
            let diagonal = idx.iter().all(|&i| i == idx[0]);
            for (i, _) in distinct_with_counts(idx) {
                if diagonal {
                    continue;
                }
                let rest = remove_one(idx, i);
                disks[i].radius += multiplicity(&rest) * v.abs();
            }
        }
        disks
    }
}

impl Tensor for SymTensor {
    fn order(&self) -> usize {
        self.order
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn value_at(&self, idx: &[usize]) -> f64 {
        self.get(idx)
    }

    fn eval(&self, x: &[f64]) -> Result<f64> {
        SymTensor::eval(self, x)
    }

    fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        SymTensor::apply(self, x)
    }

    fn max_abs_entry(&self) -> f64 {
        self.entries.values().fold(0.0f64, |a, v| a.max(v.abs()))
    }

    fn negative_entry(&self) -> Option<(Vec<usize>, f64)> {
        self.entries.iter().find(|(_, &v)| v < 0.0).map(|(k, &v)| (k.clone(), v))
    }

    fn rep_digraph(&self) -> RepDigraph {
        let mut g = RepDigraph::new(self.dim);
        for idx in self.entries.keys() {
            for (i, _) in distinct_with_counts(idx) {
                let rest = remove_one(idx, i);
                for (j, _) in distinct_with_counts(&rest) {
                    g.add_arc(i, j);
                }
            }
        }
        g
    }
}

// ---------------------------------------------------------------------------
// General tensors
// ---------------------------------------------------------------------------

/// Order-`m`, dimension-`n` real tensor with positioned sparse storage and no
/// symmetry assumption (transition tensors are the main use).
#[derive(Debug, Clone, PartialEq)]
pub struct GenTensor {
    order: usize,
    dim: usize,
    entries: BTreeMap<Vec<usize>, f64>,
}

impl GenTensor {
    pub fn new(order: usize, dim: usize) -> Result<Self> {
        if order < 1 {
            return Err(Error::OrderTooSmall { order, min: 1 });
        }
        if dim == 0 {
            return Err(Error::DimTooSmall);
        }
        Ok(GenTensor { order, dim, entries: BTreeMap::new() })
    }

    pub fn from_entries<I>(order: usize, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, f64)>,
    {
        let mut t = GenTensor::new(order, dim)?;
        for (idx, v) in entries {
            t.set(&idx, v)?;
        }
        Ok(t)
    }

    fn check_index(&self, idx: &[usize]) -> Result<()> {
        if idx.len() != self.order {
            return Err(Error::IndexLength { expected: self.order, got: idx.len() });
        }
        if idx.iter().any(|&i| i >= self.dim) {
            return Err(Error::IndexOutOfRange { index: idx.to_vec(), dim: self.dim });
        }
        Ok(())
    }

    pub fn set(&mut self, idx: &[usize], value: f64) -> Result<()> {
        self.check_index(idx)?;
        if !value.is_finite() {
            return Err(Error::NonFiniteValue { index: idx.to_vec(), value });
        }
        if value == 0.0 {
            self.entries.remove(idx);
        } else {
            self.entries.insert(idx.to_vec(), value);
        }
        Ok(())
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.entries.get(idx).copied().unwrap_or(0.0)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[usize], f64)> {
        self.entries.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }
}

impl Tensor for GenTensor {
    fn order(&self) -> usize {
        self.order
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn value_at(&self, idx: &[usize]) -> f64 {
        self.get(idx)
    }

    fn eval(&self, x: &[f64]) -> Result<f64> {
        check_vector(self.dim, x)?;
        Ok(self.entries.iter().map(|(idx, v)| v * monomial(idx, x)).sum())
    }

    fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_vector(self.dim, x)?;
        let mut out = vec![0.0; self.dim];
        for (idx, v) in &self.entries {
            out[idx[0]] += v * monomial(&idx[1..], x);
        }
        Ok(out)
    }

    fn max_abs_entry(&self) -> f64 {
        self.entries.values().fold(0.0f64, |a, v| a.max(v.abs()))
    }

    fn negative_entry(&self) -> Option<(Vec<usize>, f64)> {
        self.entries.iter().find(|(_, &v)| v < 0.0).map(|(k, &v)| (k.clone(), v))
    }

    fn rep_digraph(&self) -> RepDigraph {
        let mut g = RepDigraph::new(self.dim);
        for idx in self.entries.keys() {
            for &j in &idx[1..] {
                g.add_arc(idx[0], j);
            }
        }
        g
    }
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

/// Average each entry of `t` over all permutations of its index tuple.
/// Already-symmetric input comes back with unchanged values.
pub fn symmetrize(t: &GenTensor) -> Result<SymTensor> {
    let mut sums: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
    for (idx, v) in t.entries() {
        let mut sorted = idx.to_vec();
        sorted.sort_unstable();
        *sums.entry(sorted).or_insert(0.0) += v;
    }
    let mut out = SymTensor::new(t.order(), t.dim())?;
    for (idx, sum) in sums {
        let v = sum / multiplicity(&idx);
        out.set(&idx, v)?;
    }
    Ok(out)
}

/// (0,1) adjacency tensor of a `order`-uniform hypergraph on `dim` vertices:
/// the symmetry class of each edge is set to 1, everything else is 0. The
/// tensor is left unnormalized.
pub fn hypergraph_adjacency(order: usize, dim: usize, edges: &[Vec<usize>]) -> Result<SymTensor> {
    let mut t = SymTensor::new(order, dim)?;
    for edge in edges {
        if edge.len() != order {
            return Err(Error::EdgeSize { edge: edge.clone(), expected: order, got: edge.len() });
        }
        if let Some(&bad) = edge.iter().find(|&&v| v >= dim) {
            let _ = bad;
            return Err(Error::IndexOutOfRange { index: edge.clone(), dim });
        }
        let mut sorted = edge.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            let dup = sorted.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
            return Err(Error::RepeatedVertex { edge: edge.clone(), vertex: dup });
        }
        t.set(&sorted, 1.0)?;
    }
    Ok(t)
}

/// Expand a symmetric tensor to a dense general tensor. Test helper and
/// dense-fallback support; gated by [`DENSE_LIMIT`] at call sites.
pub fn densify(t: &SymTensor) -> GenTensor {
    let mut out = GenTensor::new(t.order(), t.dim()).expect("valid shape");
    for idx in CartesianIndices::new(t.order(), t.dim()) {
        let v = t.get(&idx);
        if v != 0.0 {
            out.set(&idx, v).expect("valid index");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_ones(order: usize, dim: usize) -> SymTensor {
        let mut t = SymTensor::new(order, dim).unwrap();
        for idx in SortedIndices::new(order, dim) {
            t.set(&idx, 1.0).unwrap();
        }
        t
    }

    /// `A x⁴ = (xᵀx)²` for n = 2: entries 1, 1, 1/3.
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
    fn eval_identity_matrix() {
        let t = SymTensor::diagonal(2, &[1.0, 1.0]).unwrap();
        assert_eq!(t.eval(&[3.0, 4.0]).unwrap(), 25.0);
    }

    #[test]
    fn eval_all_ones_cubic() {
        let t = all_ones(3, 2);
        assert_eq!(t.eval(&[1.0, 1.0]).unwrap(), 8.0);
    }

    #[test]
    fn eval_quartic_sphere_power_is_one_on_unit_vectors() {
        let t = quartic_sphere_power();
        for theta in [0.0, 0.3, 1.2, 2.9] {
            let x = [f64::cos(theta), f64::sin(theta)];
            assert!((t.eval(&x).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn eval_dimension_mismatch() {
        let t = all_ones(3, 2);
        assert!(matches!(t.eval(&[1.0]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn apply_all_ones() {
        let t = all_ones(3, 2);
        let y = t.apply(&[1.0, 2.0]).unwrap();
        assert_eq!(y, vec![9.0, 9.0]);
    }

    #[test]
    fn apply_diagonal_cubic() {
        let t = SymTensor::diagonal(3, &[2.0, 5.0]).unwrap();
        let y = t.apply(&[3.0, 2.0]).unwrap();
        assert_eq!(y, vec![2.0 * 9.0, 5.0 * 4.0]);
    }

    #[test]
    fn apply_identity_matrix() {
        let t = SymTensor::diagonal(2, &[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(t.apply(&[0.3, -1.5, 2.0]).unwrap(), vec![0.3, -1.5, 2.0]);
    }

    #[test]
    fn euler_identity() {
        // xᵀ (A xᵐ⁻¹) = A xᵐ
        let t = SymTensor::from_entries(
            3,
            3,
            [
                (vec![0, 0, 1], 0.7),
                (vec![0, 1, 2], -1.3),
                (vec![2, 2, 2], 2.0),
                (vec![1, 1, 2], 0.25),
            ],
        )
        .unwrap();
        let x = [0.4, -1.1, 0.9];
        let lhs: f64 = t.apply(&x).unwrap().iter().zip(&x).map(|(a, b)| a * b).sum();
        let rhs = t.eval(&x).unwrap();
        assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
    }

    #[test]
    fn gradient_matches_finite_differences() {
        // ∇(A xᵐ) = m · A xᵐ⁻¹
        let t = SymTensor::from_entries(
            4,
            2,
            [
                (vec![0, 0, 0, 1], 0.8),
                (vec![0, 1, 1, 1], -0.5),
                (vec![0, 0, 1, 1], 1.1),
                (vec![0, 0, 0, 0], 0.3),
            ],
        )
        .unwrap();
        let x = [0.7, -0.4];
        let grad = t.apply(&x).unwrap();
        let h = 1e-5;
        for i in 0..2 {
            let mut xp = x;
            let mut xm = x;
            xp[i] += h;
            xm[i] -= h;
            let fd = (t.eval(&xp).unwrap() - t.eval(&xm).unwrap()) / (2.0 * h);
            let analytic = 4.0 * grad[i];
            assert!(
                (fd - analytic).abs() <= 1e-6 * (1.0 + analytic.abs()),
                "component {i}: fd {fd} vs analytic {analytic}"
            );
        }
    }

    #[test]
    fn frobenius_norms() {
        let e1 = SymTensor::rank_one(4, 1.0, &[1.0, 0.0]).unwrap();
        assert_eq!(e1.frobenius_norm(), 1.0);
        assert!((all_ones(3, 2).frobenius_norm() - 8.0f64.sqrt()).abs() < 1e-15);
        assert!((quartic_sphere_power().frobenius_norm() - (8.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn trace_values() {
        assert_eq!(SymTensor::diagonal(4, &[1.0, 2.0]).unwrap().trace(), 3.0);
        assert_eq!(SymTensor::diagonal(2, &[1.0, 1.0, 1.0]).unwrap().trace(), 3.0);
        assert_eq!(all_ones(3, 2).trace(), 2.0);
    }

    #[test]
    fn transform_identity_is_noop() {
        let t = quartic_sphere_power();
        let p = DMatrix::identity(2, 2);
        let b = t.transform(&p).unwrap();
        assert!(t.max_entry_diff(&b) < 1e-15);
    }

    #[test]
    fn transform_permutation_relabels_diagonal() {
        let t = SymTensor::diagonal(4, &[3.0, 7.0]).unwrap();
        let p = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let b = t.transform(&p).unwrap();
        let expected = SymTensor::diagonal(4, &[7.0, 3.0]).unwrap();
        assert!(b.max_entry_diff(&expected) < 1e-15);
    }

    #[test]
    fn transform_matches_pullback_identity() {
        // (Pᵐ A) xᵐ = A (Pᵀ x)ᵐ
        let t = SymTensor::from_entries(
            3,
            2,
            [(vec![0, 0, 0], 1.0), (vec![0, 0, 1], -0.4), (vec![1, 1, 1], 0.9)],
        )
        .unwrap();
        let c = 0.6f64;
        let s = (1.0 - c * c).sqrt();
        let p = DMatrix::from_row_slice(2, 2, &[c, -s, s, c]);
        let b = t.transform(&p).unwrap();
        for x in [[0.3, -1.0], [1.0, 2.0], [-0.5, 0.25]] {
            let ptx = [p[(0, 0)] * x[0] + p[(1, 0)] * x[1], p[(0, 1)] * x[0] + p[(1, 1)] * x[1]];
            let lhs = b.eval(&x).unwrap();
            let rhs = t.eval(&ptx).unwrap();
            assert!((lhs - rhs).abs() < 1e-12 * (1.0 + rhs.abs()));
        }
    }

    #[test]
    fn transform_orthogonal_round_trip_and_norm() {
        let t = SymTensor::from_entries(
            4,
            3,
            [
                (vec![0, 0, 1, 2], 0.9),
                (vec![1, 1, 1, 1], -1.4),
                (vec![0, 2, 2, 2], 0.3),
            ],
        )
        .unwrap();
        let c = 0.8f64;
        let s = 0.6f64;
        let p = DMatrix::from_row_slice(3, 3, &[c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0]);
        let b = t.transform(&p).unwrap();
        assert!((b.frobenius_norm() - t.frobenius_norm()).abs() < 1e-10 * t.frobenius_norm());
        let back = b.transform(&p.transpose()).unwrap();
        assert!(back.max_entry_diff(&t) < 1e-10);
    }

    #[test]
    fn transform_sparse_path_matches_dense() {
        let t = SymTensor::from_entries(
            3,
            2,
            [(vec![0, 0, 1], 1.5), (vec![1, 1, 1], -0.7), (vec![0, 0, 0], 0.2)],
        )
        .unwrap();
        let p = DMatrix::from_row_slice(2, 2, &[0.6, -0.8, 0.8, 0.6]);
        let dense = t.transform_dense(&p);
        let sparse = t.transform_sparse(&p);
        assert!(dense.max_entry_diff(&sparse) < 1e-13);
    }

    #[test]
    fn gershgorin_diagonal_tensor() {
        let t = SymTensor::diagonal(4, &[2.0, -3.0]).unwrap();
        let disks = t.gershgorin_disks();
        assert_eq!(disks, vec![Disk { center: 2.0, radius: 0.0 }, Disk { center: -3.0, radius: 0.0 }]);
    }

    #[test]
    fn gershgorin_all_ones_cubic() {
        // slice radius counts all 3 off-diagonal tails; ρ = 4 sits on the rim
        let disks = all_ones(3, 2).gershgorin_disks();
        for d in &disks {
            assert_eq!(d.center, 1.0);
            assert_eq!(d.radius, 3.0);
        }
        assert!(disks[0].contains(Complex64::new(4.0, 0.0), 1e-12));
    }

    #[test]
    fn gershgorin_identity_matrix() {
        let t = SymTensor::diagonal(2, &[1.0, 1.0, 1.0]).unwrap();
        for d in t.gershgorin_disks() {
            assert_eq!((d.center, d.radius), (1.0, 0.0));
        }
    }

    #[test]
    fn symmetrize_idempotent_on_symmetric_input() {
        let sym = quartic_sphere_power();
        let gen = densify(&sym);
        let back = symmetrize(&gen).unwrap();
        assert!(back.max_entry_diff(&sym) < 1e-15);
    }

    #[test]
    fn symmetrize_matrix_example() {
        let mut g = GenTensor::new(2, 2).unwrap();
        g.set(&[0, 1], 2.0).unwrap();
        let s = symmetrize(&g).unwrap();
        assert_eq!(s.get(&[0, 1]), 1.0);
        assert_eq!(s.get(&[1, 0]), 1.0);
    }

    #[test]
    fn symmetrize_single_cubic_entry() {
        let mut g = GenTensor::new(3, 3).unwrap();
        g.set(&[0, 1, 2], 6.0).unwrap();
        let s = symmetrize(&g).unwrap();
        assert_eq!(s.get(&[2, 0, 1]), 1.0);
        assert_eq!(s.get(&[1, 2, 0]), 1.0);
    }

    #[test]
    fn hypergraph_single_edge() {
        let t = hypergraph_adjacency(3, 3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(t.get(&[0, 1, 2]), 1.0);
        assert_eq!(t.get(&[2, 1, 0]), 1.0);
        assert_eq!(t.nnz(), 1);
        assert!((t.frobenius_norm() - 6.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn hypergraph_empty_and_two_edges() {
        let empty = hypergraph_adjacency(3, 3, &[]).unwrap();
        assert!(empty.is_zero());
        let two = hypergraph_adjacency(3, 4, &[vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        // 2 edges × 3! positioned unit entries
        assert_eq!(two.frobenius_norm().powi(2).round(), 12.0);
    }

    #[test]
    fn hypergraph_rejects_bad_edges() {
        assert!(matches!(
            hypergraph_adjacency(3, 3, &[vec![0, 1, 1]]),
            Err(Error::RepeatedVertex { .. })
        ));
        assert!(matches!(
            hypergraph_adjacency(3, 3, &[vec![0, 1, 5]]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn weak_irreducibility_cases() {
        assert!(is_weakly_irreducible(&all_ones(3, 3)));
        assert!(!is_weakly_irreducible(&SymTensor::diagonal(3, &[1.0, 2.0]).unwrap()));
        // nonzero pattern confined to {0, 1} leaves vertex 2 isolated
        let confined = SymTensor::from_entries(
            3,
            3,
            [(vec![0, 0, 1], 1.0), (vec![0, 1, 1], 2.0), (vec![0, 0, 0], 0.5)],
        )
        .unwrap();
        assert!(!is_weakly_irreducible(&confined));
    }

    #[test]
    fn permutation_equivariance_of_eval() {
        // relabeling axes of A and inversely permuting x leaves A xᵐ fixed
        let t = SymTensor::from_entries(
            3,
            3,
            [(vec![0, 0, 2], 1.1), (vec![1, 2, 2], -0.6), (vec![0, 1, 2], 0.4)],
        )
        .unwrap();
        let p = DMatrix::from_row_slice(3, 3, &[0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0]);
        let b = t.transform(&p).unwrap();
        let x = [0.2, -0.9, 1.4];
        let ptx = [x[2], x[0], x[1]]; // Pᵀ x
        assert!((b.eval(&x).unwrap() - t.eval(&ptx).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn zero_set_removes_entry() {
        let mut t = SymTensor::new(3, 2).unwrap();
        t.set(&[0, 0, 1], 5.0).unwrap();
        t.set(&[1, 0, 0], 0.0).unwrap();
        assert!(t.is_zero());
    }

    #[test]
    fn rank_one_matches_eval() {
        let x = [0.6, -0.8];
        let t = SymTensor::rank_one(3, 2.0, &x).unwrap();
        let y = [1.3, 0.4];
        let dot: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        assert!((t.eval(&y).unwrap() - 2.0 * dot.powi(3)).abs() < 1e-12);
    }
}
