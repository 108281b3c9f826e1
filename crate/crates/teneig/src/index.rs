//! Multi-index bookkeeping for sorted symmetric storage.
//!
//! A symmetric tensor stores one value per non-decreasing multi-index. Every
//! contraction then has to weight that value by how many positioned index
//! tuples collapse onto the sorted representative, which is the multinomial
//! coefficient of the index multiset.

pub(crate) fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// Number of distinct permutations of the (sorted) multiset `idx`.
pub(crate) fn multiplicity(idx: &[usize]) -> f64 {
    let mut denom: u128 = 1;
    let mut run = 1usize;
    for w in 1..=idx.len() {
        if w < idx.len() && idx[w] == idx[w - 1] {
            run += 1;
        } else {
            denom *= factorial(run);
            run = 1;
        }
    }
    (factorial(idx.len()) / denom) as f64
}

/// Product `x[i1] * … * x[ik]` over the components named by `idx`.
pub(crate) fn monomial(idx: &[usize], x: &[f64]) -> f64 {
    idx.iter().map(|&i| x[i]).product()
}

/// Remove one copy of `v` from the sorted multiset `idx`.
/// Panics if `v` is absent; callers iterate over values known to be present.
pub(crate) fn remove_one(idx: &[usize], v: usize) -> Vec<usize> {
    let pos = idx.iter().position(|&i| i == v).expect("value present");
    let mut out = Vec::with_capacity(idx.len() - 1);
    out.extend_from_slice(&idx[..pos]);
    out.extend_from_slice(&idx[pos + 1..]);
    out
}

/// Distinct values of a sorted multiset, with their repeat counts.
pub(crate) fn distinct_with_counts(idx: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &i in idx {
        match out.last_mut() {
            Some((v, c)) if *v == i => *c += 1,
            _ => out.push((i, 1)),
        }
    }
    out
}

/// Visit every distinct permutation of the sorted multiset `idx`.
pub(crate) fn for_each_unique_permutation<F: FnMut(&[usize])>(idx: &[usize], mut f: F) {
    let mut counts = distinct_with_counts(idx);
    let mut current = vec![0usize; idx.len()];
    fill_permutations(&mut counts, &mut current, 0, &mut f);
}

fn fill_permutations<F: FnMut(&[usize])>(
    counts: &mut Vec<(usize, usize)>,
    current: &mut [usize],
    depth: usize,
    f: &mut F,
) {
    if depth == current.len() {
        f(current);
        return;
    }
    for slot in 0..counts.len() {
        if counts[slot].1 == 0 {
            continue;
        }
        counts[slot].1 -= 1;
        current[depth] = counts[slot].0;
        fill_permutations(counts, current, depth + 1, f);
        counts[slot].1 += 1;
    }
}

/// Iterator over all non-decreasing multi-indices of length `order` with
/// entries in `0..dim`, in lexicographic order.
pub(crate) struct SortedIndices {
    next: Option<Vec<usize>>,
    dim: usize,
}

impl SortedIndices {
    pub(crate) fn new(order: usize, dim: usize) -> Self {
        let next = if dim == 0 { None } else { Some(vec![0; order]) };
        SortedIndices { next, dim }
    }
}

impl Iterator for SortedIndices {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // advance the rightmost component that can still grow, then reset the
        // tail to keep the tuple non-decreasing
        let mut pos = succ.len();
        while pos > 0 {
            if succ[pos - 1] + 1 < self.dim {
                let v = succ[pos - 1] + 1;
                for s in succ.iter_mut().skip(pos - 1) {
                    *s = v;
                }
                self.next = Some(succ);
                return Some(current);
            }
            pos -= 1;
        }
        self.next = None;
        Some(current)
    }
}

/// Iterator over all positioned index tuples of length `order` with entries
/// in `0..dim` (the full Cartesian product), in lexicographic order.
pub(crate) struct CartesianIndices {
    next: Option<Vec<usize>>,
    dim: usize,
}

impl CartesianIndices {
    pub(crate) fn new(order: usize, dim: usize) -> Self {
        let next = if dim == 0 { None } else { Some(vec![0; order]) };
        CartesianIndices { next, dim }
    }
}

impl Iterator for CartesianIndices {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for pos in (0..succ.len()).rev() {
            succ[pos] += 1;
            if succ[pos] < self.dim {
                self.next = Some(succ);
                return Some(current);
            }
            succ[pos] = 0;
        }
        self.next = None;
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicity_counts_permutations() {
        assert_eq!(multiplicity(&[0, 0, 0]), 1.0);
        assert_eq!(multiplicity(&[0, 1]), 2.0);
        assert_eq!(multiplicity(&[0, 1, 2]), 6.0);
        assert_eq!(multiplicity(&[0, 0, 1, 1]), 6.0);
        assert_eq!(multiplicity(&[0, 1, 1, 1]), 4.0);
    }

    #[test]
    fn unique_permutations_match_multiplicity() {
        for idx in [vec![0, 0, 1], vec![0, 1, 2], vec![1, 1, 1], vec![0, 0, 1, 2]] {
            let mut seen = Vec::new();
            for_each_unique_permutation(&idx, |p| seen.push(p.to_vec()));
            assert_eq!(seen.len() as f64, multiplicity(&idx));
            let mut dedup = seen.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), seen.len(), "permutations must be distinct");
        }
    }

    #[test]
    fn sorted_indices_count() {
        // C(n + m - 1, m) non-decreasing tuples
        let count = SortedIndices::new(3, 3).count();
        assert_eq!(count, 10);
        for idx in SortedIndices::new(3, 3) {
            assert!(idx.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn cartesian_indices_count() {
        assert_eq!(CartesianIndices::new(3, 2).count(), 8);
        assert_eq!(CartesianIndices::new(2, 4).count(), 16);
    }
}
