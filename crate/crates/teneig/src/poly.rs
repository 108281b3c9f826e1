//! Real univariate polynomials: evaluation, interpolation, and root finding
//! through the companion matrix. Degrees up to roughly 20 are in scope.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Dense real polynomial, coefficients in ascending degree order.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Build from ascending coefficients; exact trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// Degree after trimming; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }

    /// Interpolate the polynomial of degree `< points.len()` through the
    /// given `(x, y)` samples, by Newton divided differences expanded into
    /// the monomial basis. Nodes must be pairwise distinct.
    pub fn interpolate(points: &[(f64, f64)]) -> Polynomial {
        let n = points.len();
        // divided-difference table, in place
        let mut dd: Vec<f64> = points.iter().map(|&(_, y)| y).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (dd[i] - dd[i - 1]) / (points[i].0 - points[i - level].0);
            }
        }
        // expand Σ dd[k] Π_{j<k} (x − x_j)
        let mut coeffs = vec![0.0f64; n];
        let mut basis = vec![0.0f64; n];
        basis[0] = 1.0;
        let mut basis_len = 1usize;
        for (k, &d) in dd.iter().enumerate() {
            for (c, b) in coeffs.iter_mut().zip(basis.iter()).take(basis_len) {
                *c += d * b;
            }
            if k + 1 < n {
                // basis *= (x − x_k)
                let xk = points[k].0;
                for i in (0..basis_len).rev() {
                    basis[i + 1] += basis[i];
                    basis[i] *= -xk;
                }
                basis_len += 1;
            }
        }
        Polynomial::new(coeffs)
    }

    /// All complex roots, via the eigenvalues of the companion matrix of the
    /// monic normalization, with a Durand–Kerner fallback for companion
    /// matrices the QR iteration refuses to converge on (multiple roots can
    /// do that). The zero polynomial and constants have no roots.
    pub fn roots(&self) -> Vec<Complex64> {
        let d = match self.degree() {
            None | Some(0) => return Vec::new(),
            Some(d) => d,
        };
        let lead = self.coeffs[d];
        let mut companion = DMatrix::zeros(d, d);
        for i in 1..d {
            companion[(i, i - 1)] = 1.0;
        }
        for i in 0..d {
            companion[(i, d - 1)] = -self.coeffs[i] / lead;
        }
        let mut roots: Vec<Complex64> =
            match nalgebra::linalg::Schur::try_new(companion, f64::EPSILON, 200 * d.max(4)) {
                Some(schur) => schur.complex_eigenvalues().iter().copied().collect(),
                None => self.durand_kerner(),
            };
        for z in &mut roots {
            self.polish_root(z);
        }
        roots
    }

    /// A few Newton steps against the polynomial itself, kept only when they
    /// clearly reduce `|p(z)|`. Simple roots shed the eigensolver's backward
    /// error; multiple roots sit at their noise floor already, and moving
    /// them would spoil the symmetric scatter whose mean the companion's
    /// trace identity keeps accurate, so those revert.
    fn polish_root(&self, z: &mut Complex64) {
        let eval2 = |z: Complex64| -> (Complex64, Complex64) {
            let mut f = Complex64::new(0.0, 0.0);
            let mut df = Complex64::new(0.0, 0.0);
            for &c in self.coeffs.iter().rev() {
                df = df * z + f;
                f = f * z + c;
            }
            (f, df)
        };
        let original = *z;
        let (f0, _) = eval2(original);
        let mut best = (f0.norm(), original);
        let mut current = original;
        for _ in 0..6 {
            let (f, df) = eval2(current);
            if f.norm() < best.0 {
                best = (f.norm(), current);
            }
            if df.norm() < 1e-300 {
                break;
            }
            let step = f / df;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            if step.norm() > 0.5 * (1.0 + current.norm()) {
                break;
            }
            current -= step;
            if step.norm() <= 1e-16 * (1.0 + current.norm()) {
                let (f_end, _) = eval2(current);
                if f_end.norm() < best.0 {
                    best = (f_end.norm(), current);
                }
                break;
            }
        }
        if best.0 < 0.25 * f0.norm() {
            *z = best.1;
        }
    }

    /// Durand–Kerner simultaneous iteration; always terminates, converging
    /// linearly near multiple roots.
    fn durand_kerner(&self) -> Vec<Complex64> {
        let d = self.degree().expect("callers check degree >= 1");
        let lead = self.coeffs[d];
        let monic: Vec<f64> = self.coeffs.iter().map(|c| c / lead).collect();
        let radius = 1.0 + monic[..d].iter().map(|c| c.abs()).fold(0.0f64, f64::max);
        let mut z: Vec<Complex64> = (0..d)
            .map(|k| {
                let angle = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.43;
                Complex64::from_polar(radius, angle)
            })
            .collect();
        let eval = |x: Complex64| -> Complex64 {
            monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
        };
        for _ in 0..2000 {
            let mut max_step = 0.0f64;
            for k in 0..d {
                let mut den = Complex64::new(1.0, 0.0);
                for j in 0..d {
                    if j != k {
                        den *= z[k] - z[j];
                    }
                }
                if den.norm() < 1e-300 {
                    z[k] += Complex64::new(1e-8 * radius, 1e-8 * radius);
                    continue;
                }
                let step = eval(z[k]) / den;
                z[k] -= step;
                max_step = max_step.max(step.norm());
            }
            if max_step <= 1e-15 * radius {
                break;
            }
        }
        z
    }
}

/// Group the computed roots of `poly` into (representative, multiplicity)
/// clusters.
///
/// A root of multiplicity `q` is only determined to `O(ε^{1/q})` by any
/// floating-point method, so one absolute radius cannot both merge multiple
/// roots and keep distinct ones apart. Pairs closer than `base_tol` always
/// merge; beyond that, groups are linked at a multiplicity-dependent radius
/// (largest multiplicities first) and accepted only when the polynomial
/// nearly vanishes at the group centroid, which separates a perturbed
/// multiple root from a pair of genuinely close simple roots. Representatives
/// are cluster means (the leading-order scatter of a perturbed multiple root
/// sums to zero); means within `base_tol` of the real axis are snapped onto
/// it.
pub fn cluster_roots(
    roots: &[Complex64],
    base_tol: f64,
    poly: &Polynomial,
) -> Vec<(Complex64, usize)> {
    let mut sorted: Vec<Complex64> = roots.to_vec();
    sorted.sort_by(|a, b| {
        (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    'outer: for &r in &sorted {
        for (rep, count) in clusters.iter_mut() {
            if (r - *rep).norm() <= base_tol {
                *rep = (*rep * *count as f64 + r) / (*count as f64 + 1.0);
                *count += 1;
                continue 'outer;
            }
        }
        clusters.push((r, 1));
    }

    let degree = roots.len();
    let pscale = |z: Complex64| -> f64 {
        let mut scale = 0.0;
        let mut zpow = 1.0;
        for c in poly.coeffs() {
            scale += c.abs() * zpow;
            zpow *= z.norm();
        }
        scale
    };
    for q in (2..=degree).rev() {
        let relative = (1e4 * f64::EPSILON).powf(1.0 / q as f64);
        loop {
            let mut merged = false;
            'pairs: for i in 0..clusters.len() {
                for j in i + 1..clusters.len() {
                    let (a, ca) = clusters[i];
                    let (b, cb) = clusters[j];
                    let radius = base_tol.max(relative * (1.0 + a.norm().min(b.norm())));
                    if (a - b).norm() > radius {
                        continue;
                    }
                    let centroid = (a * ca as f64 + b * cb as f64) / (ca + cb) as f64;
                    if poly.eval_complex(centroid).norm() > 1e-11 * (1.0 + pscale(centroid)) {
                        continue;
                    }
                    clusters[i] = (centroid, ca + cb);
                    clusters.remove(j);
                    merged = true;
                    break 'pairs;
                }
            }
            if !merged {
                break;
            }
        }
    }

    for (rep, _) in clusters.iter_mut() {
        if rep.im.abs() <= base_tol {
            rep.im = 0.0;
        }
    }
    clusters.sort_by(|a, b| {
        (b.0.re, b.0.im).partial_cmp(&(a.0.re, a.0.im)).unwrap_or(std::cmp::Ordering::Equal)
    });
    clusters
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_and_trim() {
        let p = Polynomial::new(vec![1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), Some(1));
        assert!(Polynomial::new(vec![0.0, 0.0]).is_zero());
    }

    #[test]
    fn quadratic_roots() {
        // (x − 1)(x − 3) = 3 − 4x + x²
        let p = Polynomial::new(vec![3.0, -4.0, 1.0]);
        let mut roots: Vec<f64> = p.roots().iter().map(|r| r.re).collect();
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((roots[0] - 1.0).abs() < 1e-10);
        assert!((roots[1] - 3.0).abs() < 1e-10);
    }

    #[test]
    fn complex_roots_come_in_pairs() {
        // x² + 1
        let p = Polynomial::new(vec![1.0, 0.0, 1.0]);
        let roots = p.roots();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| (r.norm() - 1.0).abs() < 1e-10 && r.re.abs() < 1e-10));
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let target = Polynomial::new(vec![2.0, -1.0, 0.5, 3.0]);
        let points: Vec<(f64, f64)> =
            [-2.0, -0.7, 0.3, 1.9].iter().map(|&x| (x, target.eval(x))).collect();
        let p = Polynomial::interpolate(&points);
        for (a, b) in p.coeffs().iter().zip(target.coeffs()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn clustering_merges_multiple_roots() {
        // (x − 1)²(x − 2) with the double root split by noise
        let p = Polynomial::new(vec![-2.0, 5.0, -4.0, 1.0]);
        let roots = vec![
            Complex64::new(1.0 - 2e-8, 0.0),
            Complex64::new(1.0 + 3e-8, 0.0),
            Complex64::new(2.0, 0.0),
        ];
        let clusters = cluster_roots(&roots, 1e-7, &p);
        assert_eq!(clusters.len(), 2);
        assert_eq!(clusters[0].1, 1); // λ = 2 first: descending real part
        assert_eq!(clusters[1].1, 2);
    }

    #[test]
    fn clustering_recovers_high_multiplicity() {
        // (x − 1)⁶ expanded; companion eigenvalues scatter like ε^(1/6)
        let p = Polynomial::new(vec![1.0, -6.0, 15.0, -20.0, 15.0, -6.0, 1.0]);
        let roots = p.roots();
        assert_eq!(roots.len(), 6);
        let clusters = cluster_roots(&roots, 1e-7, &p);
        assert_eq!(clusters.len(), 1, "scattered sextuple root must re-merge: {clusters:?}");
        assert_eq!(clusters[0].1, 6);
        // the companion's trace identity keeps the cluster mean centered
        assert!((clusters[0].0.re - 1.0).abs() < 1e-7);
        assert_eq!(clusters[0].0.im, 0.0);
    }

    #[test]
    fn clustering_keeps_close_simple_roots_apart() {
        // distinct simple roots 1e-3 apart stay distinct
        let p = Polynomial::new(vec![1.0 * 1.001, -(1.0 + 1.001), 1.0]);
        let roots = p.roots();
        let clusters = cluster_roots(&roots, 1e-7, &p);
        assert_eq!(clusters.len(), 2);
    }
}
