//! Elimination-based eigensolvers for small dimensions.
//!
//! For `n = 2` the eigenvalue system `A xᵐ⁻¹ = λ x^{[m−1]}` reduces to two
//! binary forms of degree `m − 1`. Their Sylvester matrix carries `λ` only on
//! the diagonal, so the characteristic polynomial (the resultant in `λ`) is
//! `det(S − λI)` for a fixed real matrix `S`; it always has degree
//! `2(m − 1)`, its roots sum to `(m − 1)·tr(A)` and multiply to the symmetric
//! hyperdeterminant `det(S)`.
//!
//! Z-eigenpairs are computed by eliminating `λ`: for `n = 2` the angle
//! function `g(θ) = x₂(Axᵐ⁻¹)₁ − x₁(Axᵐ⁻¹)₂` is scanned for sign changes on
//! `[0, π)` and bisected; for `n = 3` a spherical grid seeds Newton on the
//! square system `{A xᵐ⁻¹ = λx, xᵀx = 1}`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::index::factorial;
use crate::poly::{cluster_roots, Polynomial};
use crate::tensor::SymTensor;

/// Eigenvalue classification tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenKind {
    /// Eigenvalue of `A xᵐ⁻¹ = λ x^{[m−1]}` with a real eigenvector.
    H,
    /// Eigenvalue of the same system without a real eigenvector.
    N,
    /// Real eigenvalue of `A xᵐ⁻¹ = λ x` with a real unit eigenvector.
    Z,
    /// Complex root of the characteristic polynomial.
    Unclassified,
}

/// One eigenvalue with its recovered eigenvector, classification, and
/// multiplicity as a root cluster of the characteristic polynomial.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: Complex64,
    pub vector: Option<Vec<Complex64>>,
    pub kind: EigenKind,
    pub multiplicity: usize,
}

impl EigenPair {
    /// The eigenvalue as a real number; `None` when it has an imaginary part.
    pub fn real_value(&self) -> Option<f64> {
        (self.value.im == 0.0).then_some(self.value.re)
    }

    /// The eigenvector as a real vector; `None` when absent or complex.
    pub fn real_vector(&self) -> Option<Vec<f64>> {
        let v = self.vector.as_ref()?;
        v.iter().all(|c| c.im == 0.0).then(|| v.iter().map(|c| c.re).collect())
    }
}

/// Z-eigenpairs of a tensor. `degenerate` marks a continuum of solutions
/// (every unit vector solves the system); the pairs are then representatives.
#[derive(Debug, Clone)]
pub struct ZSpectrum {
    pub pairs: Vec<EigenPair>,
    pub degenerate: bool,
}

impl ZSpectrum {
    /// Largest `|λ|` over the returned pairs.
    pub fn max_abs_value(&self) -> Option<f64> {
        self.pairs.iter().map(|p| p.value.re.abs()).fold(None, |acc, v| {
            Some(acc.map_or(v, |a: f64| a.max(v)))
        })
    }

    /// Smallest real eigenvalue over the returned pairs.
    pub fn min_value(&self) -> Option<f64> {
        self.pairs.iter().map(|p| p.value.re).fold(None, |acc, v| {
            Some(acc.map_or(v, |a: f64| a.min(v)))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PdClassification {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
    /// Sufficient Gershgorin certificate (n > 3 path); definiteness holds
    /// but the exact spectrum was not computed.
    CertifiedPositiveDefinite,
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PdMethod {
    ExactSpectrum,
    GershgorinDisks,
}

/// Positive-definiteness verdict for an even-order form.
#[derive(Debug, Clone)]
pub struct PdVerdict {
    pub classification: PdClassification,
    /// A vector with `A xᵐ ≤ 0`, when one was found.
    pub witness: Option<Vec<f64>>,
    pub method: PdMethod,
}

// ---------------------------------------------------------------------------
// Shared reporting conventions
// ---------------------------------------------------------------------------

/// Flip the sign of `x` so its first component above 1e-12 in magnitude is
/// positive.
pub(crate) fn canonicalize_sign(x: &mut [f64]) {
    if let Some(&lead) = x.iter().find(|c| c.abs() > 1e-12) {
        if lead < 0.0 {
            for c in x.iter_mut() {
                *c = -*c;
            }
        }
    }
}

/// Ordering in which the lexicographically larger vector sorts first; used
/// as the deterministic tie-break for equal eigenvalues.
pub(crate) fn desc_lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match y.partial_cmp(x) {
            Some(std::cmp::Ordering::Equal) | None => continue,
            Some(ord) => return ord,
        }
    }
    std::cmp::Ordering::Equal
}

/// Normalize `x` and pick the canonical representative of its antipodal
/// Z-eigenpair class: for odd order the representative with `λ ≥ 0`, for
/// even order (where both signs share `λ`) the sign convention on `x`.
/// Components below 1e-12 are solver noise and get snapped to exact zeros.
pub(crate) fn canonical_z_rep(a: &SymTensor, mut x: Vec<f64>) -> (f64, Vec<f64>) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    for v in &mut x {
        *v /= norm;
        if v.abs() <= 1e-12 {
            *v = 0.0;
        }
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    for v in &mut x {
        *v /= norm;
    }
    let mut lambda = a.eval_unchecked(&x);
    let odd = a.order() % 2 == 1;
    if odd && lambda < 0.0 {
        for v in &mut x {
            *v = -*v;
        }
        lambda = -lambda;
    } else if !odd || lambda == 0.0 {
        canonicalize_sign(&mut x);
    }
    (lambda, x)
}

fn real_pair(a: &SymTensor, x: Vec<f64>) -> EigenPair {
    let (lambda, x) = canonical_z_rep(a, x);
    EigenPair {
        value: Complex64::new(lambda, 0.0),
        vector: Some(x.into_iter().map(|v| Complex64::new(v, 0.0)).collect()),
        kind: EigenKind::Z,
        multiplicity: 1,
    }
}

fn vector_sort_key(v: &Option<Vec<Complex64>>) -> Vec<(f64, f64)> {
    v.as_ref().map_or_else(Vec::new, |v| v.iter().map(|c| (c.re, c.im)).collect())
}

pub(crate) fn sort_pairs(pairs: &mut [EigenPair]) {
    pairs.sort_by(|a, b| {
        b.value
            .re
            .partial_cmp(&a.value.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| b.value.im.partial_cmp(&a.value.im).unwrap_or(std::cmp::Ordering::Equal))
            .then_with(|| {
                let (ka, kb) = (vector_sort_key(&a.vector), vector_sort_key(&b.vector));
                // vectors present sort before absent; larger-lex first
                match (ka.is_empty(), kb.is_empty()) {
                    (true, false) => std::cmp::Ordering::Greater,
                    (false, true) => std::cmp::Ordering::Less,
                    _ => kb.partial_cmp(&ka).unwrap_or(std::cmp::Ordering::Equal),
                }
            })
    });
}

// ---------------------------------------------------------------------------
// n = 2: characteristic polynomial, hyperdeterminant, H/N spectrum
// ---------------------------------------------------------------------------

fn binomial(n: usize, k: usize) -> f64 {
    (factorial(n) / (factorial(k) * factorial(n - k))) as f64
}

fn require_dim(a: &SymTensor, required: usize) -> Result<()> {
    if a.dim() != required {
        return Err(Error::RequiresDim { required, got: a.dim() });
    }
    Ok(())
}

/// Coefficients of the two binary forms `(A xᵐ⁻¹)₁` and `(A xᵐ⁻¹)₂` in the
/// monomial basis `x₁^{d−k} x₂^k`, `k = 0…d`, with `d = m − 1`.
fn contraction_forms_2d(a: &SymTensor) -> (Vec<f64>, Vec<f64>) {
    let d = a.order() - 1;
    let mut u = vec![0.0; d + 1];
    let mut v = vec![0.0; d + 1];
    for k in 0..=d {
        let c = binomial(d, k);
        let mut idx_u = vec![0usize; d + 1 - k];
        idx_u.extend(std::iter::repeat_n(1, k));
        u[k] = c * a.get(&idx_u);
        let mut idx_v = vec![0usize; d - k];
        idx_v.extend(std::iter::repeat_n(1, k + 1));
        v[k] = c * a.get(&idx_v);
    }
    (u, v)
}

/// Sylvester matrix of the two degree-`d` forms at `λ = 0`. The full pencil
/// is exactly `S − λI`, because the `−λ` in form 1 multiplies `x₁ᵈ` (leading
/// slot, rows 0…d−1) and the `−λ` in form 2 multiplies `x₂ᵈ` (trailing slot,
/// rows d…2d−1), both of which land on the diagonal.
fn sylvester_matrix_2d(u: &[f64], v: &[f64]) -> DMatrix<f64> {
    let d = u.len() - 1;
    let mut s = DMatrix::zeros(2 * d, 2 * d);
    for r in 0..d {
        for (c, &coef) in u.iter().enumerate() {
            s[(r, r + c)] = coef;
        }
        for (c, &coef) in v.iter().enumerate() {
            s[(d + r, r + c)] = coef;
        }
    }
    s
}

/// Rough spectral-radius estimate by normalized power iteration; only used
/// to balance interpolation nodes, so a modest over- or undershoot is fine.
fn growth_estimate(s: &DMatrix<f64>) -> f64 {
    let n = s.nrows();
    let mut x = DVector::from_element(n, 1.0 / (n as f64).sqrt());
    let mut estimate = 0.0f64;
    for k in 0..40 {
        let y = s * &x;
        let g = y.norm();
        if g < 1e-300 || g.is_nan() {
            return estimate;
        }
        if k >= 32 {
            estimate = estimate.max(g);
        }
        x = y / g;
    }
    estimate
}

/// Characteristic polynomial of an `n = 2` symmetric tensor: the resultant in
/// `λ` of `(A xᵐ⁻¹)ᵢ − λ xᵢᵐ⁻¹`, of degree `2(m−1)`.
///
/// Computed by evaluating `det(S − λI)` at Chebyshev nodes and
/// interpolating. The nodes are scaled to the estimated root magnitude and
/// the values normalized by the scale's power, so that the extracted
/// coefficients — the trailing ones in particular, which carry the trace and
/// determinant identities — stay balanced instead of drowning under values
/// of size `radiusᵈᵉᵍ`.
pub fn char_poly_2d(a: &SymTensor) -> Result<Polynomial> {
    require_dim(a, 2)?;
    let (u, v) = contraction_forms_2d(a);
    let s = sylvester_matrix_2d(&u, &v);
    let deg = s.nrows();
    let scale = (1.05 * growth_estimate(&s)).max(1.0);
    let nodes = deg + 1;
    let mut samples = Vec::with_capacity(nodes);
    let normalizer = scale.powi(deg as i32);
    for j in 0..nodes {
        let t = (std::f64::consts::PI * (2 * j + 1) as f64 / (2 * nodes) as f64).cos();
        let shifted = {
            let mut m = s.clone();
            for i in 0..deg {
                m[(i, i)] -= scale * t;
            }
            m
        };
        samples.push((t, shifted.lu().determinant() / normalizer));
    }
    let scaled = Polynomial::interpolate(&samples);
    let coeffs: Vec<f64> =
        scaled.coeffs().iter().enumerate().map(|(k, &b)| b * scale.powi(deg as i32 - k as i32)).collect();
    let phi = Polynomial::new(coeffs);
    if phi.is_zero() {
        return Err(Error::Degenerate("characteristic polynomial vanished identically".into()));
    }
    Ok(phi)
}

/// Symmetric hyperdeterminant of an `n = 2` tensor: the resultant of
/// `A xᵐ⁻¹ = 0`, equal to the product of all eigenvalues.
pub fn sym_hyperdet_2d(a: &SymTensor) -> Result<f64> {
    require_dim(a, 2)?;
    let (u, v) = contraction_forms_2d(a);
    Ok(sylvester_matrix_2d(&u, &v).lu().determinant())
}

/// Full eigenvalue list of an `n = 2` symmetric tensor: the `2(m−1)` roots of
/// the characteristic polynomial (clustered into multiplicities at 1e-7),
/// with eigenvector recovery and H/N classification of the real roots.
pub fn h_spectrum_2d(a: &SymTensor, tol: f64) -> Result<Vec<EigenPair>> {
    require_dim(a, 2)?;
    let phi = char_poly_2d(a)?;
    let roots = phi.roots();
    if roots.is_empty() {
        return Err(Error::Degenerate("characteristic polynomial has no roots".into()));
    }
    let clusters = cluster_roots(&roots, 1e-7, &phi);
    let (u, v) = contraction_forms_2d(a);
    let fnorm = a.frobenius_norm();
    let mut pairs = Vec::with_capacity(clusters.len());
    for (value, multiplicity) in clusters {
        let pair = if value.im == 0.0 {
            let (refined, vector, kind) =
                classify_real_root(a, &u, &v, value.re, multiplicity, fnorm, tol);
            EigenPair { value: Complex64::new(refined, 0.0), vector, kind, multiplicity }
        } else {
            EigenPair { value, vector: None, kind: EigenKind::Unclassified, multiplicity }
        };
        pairs.push(pair);
    }
    sort_pairs(&mut pairs);
    Ok(pairs)
}

/// Affine-chart eigenvector search for a real root `λ`: common roots of the
/// two chart polynomials on `x = (1, t)` and `x = (t, 1)` become candidate
/// eigenvectors, which are then verified against the full residual. A real
/// common root within tolerance gives kind H, otherwise N.
///
/// A root of multiplicity `q` is only located to `O(ε^{1/q})`, so both the
/// chart-vanishing threshold and the candidate filter widen with the cluster
/// size; once an eigenvector is in hand, `λ` is re-fit by least squares
/// against the eigen-equation, which restores full accuracy (and exactness
/// on structured inputs). Returns `(refined λ, vector, kind)`.
fn classify_real_root(
    a: &SymTensor,
    u: &[f64],
    v: &[f64],
    lambda: f64,
    multiplicity: usize,
    fnorm: f64,
    tol: f64,
) -> (f64, Option<Vec<Complex64>>, EigenKind) {
    let d = u.len() - 1;
    let scale = fnorm + lambda.abs() + 1.0;
    let cluster_acc = (64.0 * f64::EPSILON).powf(1.0 / multiplicity as f64);
    let zero_tol = 1e-12f64.max(cluster_acc) * scale;

    // chart x = (1, t): p(t) = Σ u_k tᵏ − λ, q(t) = Σ v_k tᵏ − λ tᵈ
    let mut p_a = u.to_vec();
    p_a[0] -= lambda;
    let mut q_a = v.to_vec();
    q_a[d] -= lambda;
    // chart x = (t, 1): coefficients reversed
    let mut p_b: Vec<f64> = u.iter().rev().copied().collect();
    p_b[d] -= lambda;
    let mut q_b: Vec<f64> = v.iter().rev().copied().collect();
    q_b[0] -= lambda;

    let mut candidates: Vec<Vec<Complex64>> = Vec::new();
    chart_candidates(&mut p_a, &mut q_a, zero_tol, |t| vec![Complex64::new(1.0, 0.0), t], &mut candidates);
    chart_candidates(&mut p_b, &mut q_b, zero_tol, |t| vec![t, Complex64::new(1.0, 0.0)], &mut candidates);

    let res_tol = tol.max(cluster_acc) * scale;
    let exp = (a.order() - 1) as u32;
    // Least-squares eigenvalue for a fixed eigenvector. Only worthwhile for
    // multiple roots: their cluster representative is noise-limited while
    // the verified eigenvector is not. Simple roots keep the polished
    // companion value, whose sum obeys the trace identity to machine
    // precision.
    let refit = |x: &[Complex64]| -> f64 {
        if multiplicity < 2 {
            return lambda;
        }
        let w = a.apply_complex(x);
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = 0.0;
        for (wi, xi) in w.iter().zip(x) {
            let target = xi.powu(exp);
            num += target.conj() * wi;
            den += target.norm_sqr();
        }
        if den > 0.0 {
            let fitted = (num / den).re;
            // never move further than the cluster's own uncertainty
            if (fitted - lambda).abs() <= cluster_acc * scale {
                return fitted;
            }
        }
        lambda
    };
    let residual_at = |x: &[Complex64], lam: f64| -> f64 {
        let w = a.apply_complex(x);
        w.iter().zip(x).map(|(wi, xi)| (wi - xi.powu(exp) * lam).norm_sqr()).sum::<f64>().sqrt()
    };

    let mut real_hits: Vec<(f64, Vec<f64>)> = Vec::new();
    let mut complex_hits: Vec<(f64, Vec<Complex64>)> = Vec::new();
    for mut x in candidates {
        let norm = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm <= 0.0 || norm.is_nan() {
            continue;
        }
        for c in &mut x {
            *c /= norm;
        }
        if residual_at(&x, lambda) > res_tol {
            continue;
        }
        let imag = x.iter().map(|c| c.im.abs()).fold(0.0f64, f64::max);
        if imag <= 1e-8 {
            let mut xr: Vec<f64> = x.iter().map(|c| c.re).collect();
            let norm = xr.iter().map(|v| v * v).sum::<f64>().sqrt();
            for c in &mut xr {
                *c /= norm;
            }
            canonicalize_sign(&mut xr);
            let cx: Vec<Complex64> = xr.iter().map(|&v| Complex64::new(v, 0.0)).collect();
            let refined = refit(&cx);
            real_hits.push((refined, xr));
        } else {
            let x = canonical_phase(x);
            let refined = refit(&x);
            complex_hits.push((refined, x));
        }
    }

    if !real_hits.is_empty() {
        real_hits.sort_by(|a, b| desc_lex_cmp(&a.1, &b.1));
        real_hits.dedup_by(|a, b| a.1.iter().zip(b.1.iter()).all(|(x, y)| (x - y).abs() < 1e-9));
        let (refined, best) = real_hits.remove(0);
        let vector = best.into_iter().map(|v| Complex64::new(v, 0.0)).collect();
        return (refined, Some(vector), EigenKind::H);
    }
    if !complex_hits.is_empty() {
        complex_hits.sort_by(|a, b| {
            vector_sort_key(&Some(b.1.clone()))
                .partial_cmp(&vector_sort_key(&Some(a.1.clone())))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let (refined, best) = complex_hits.remove(0);
        return (refined, Some(best), EigenKind::N);
    }
    (lambda, None, EigenKind::N)
}

/// Rotate a complex vector so its first sizable component is real positive.
fn canonical_phase(mut x: Vec<Complex64>) -> Vec<Complex64> {
    if let Some(lead) = x.iter().find(|c| c.norm() > 1e-12).copied() {
        let phase = lead / lead.norm();
        for c in &mut x {
            *c /= phase;
        }
    }
    x
}

/// Collect common-root candidates of the chart pair `(p, q)`. An identically
/// vanishing polynomial puts no constraint; when both vanish the whole chart
/// solves the system and the chart origin stands in as representative.
fn chart_candidates<F: Fn(Complex64) -> Vec<Complex64>>(
    p: &mut Vec<f64>,
    q: &mut Vec<f64>,
    zero_tol: f64,
    embed: F,
    out: &mut Vec<Vec<Complex64>>,
) {
    while p.last().is_some_and(|c| c.abs() <= zero_tol) {
        p.pop();
    }
    while q.last().is_some_and(|c| c.abs() <= zero_tol) {
        q.pop();
    }
    let p_zero = p.iter().all(|c| c.abs() <= zero_tol);
    let q_zero = q.iter().all(|c| c.abs() <= zero_tol);
    match (p_zero, q_zero) {
        (true, true) => out.push(embed(Complex64::new(0.0, 0.0))),
        (true, false) => {
            let poly = Polynomial::new(q.clone());
            out.extend(poly.roots().into_iter().map(&embed));
        }
        (false, true) => {
            let poly = Polynomial::new(p.clone());
            out.extend(poly.roots().into_iter().map(&embed));
        }
        (false, false) => {
            let pp = Polynomial::new(p.clone());
            let qq = Polynomial::new(q.clone());
            for t in pp.roots() {
                let scale: f64 = q.iter().enumerate().map(|(k, c)| c.abs() * t.norm().max(1.0).powi(k as i32)).sum();
                if qq.eval_complex(t).norm() <= 1e-6 * (scale + 1.0) {
                    out.push(embed(t));
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Z-eigenpairs for n ≤ 3
// ---------------------------------------------------------------------------

const THETA_SAMPLES: usize = 4096;
const PHI_STEPS: usize = 128;
const PSI_STEPS: usize = 256;

/// All Z-eigenpairs of a symmetric tensor of dimension at most 3.
///
/// * `n = 2`: sign-change scan of `g(θ)` over `[0, π)` at 4096 samples with
///   bisection to 1e-12.
/// * `n = 3`: 256×128 spherical grid seeding Newton on the square system,
///   duplicates merged at 1e-6 vector distance.
///
/// Antipodal classes are reported once: for even order both signs of `x`
/// share `λ` and `x` follows the sign convention; for odd order the
/// representative with `λ ≥ 0` is kept, so the eigenvalue multiset is
/// invariant under orthogonal similarity for either parity. A continuum of
/// solutions (the angle function vanishing identically) is flagged
/// `degenerate` and representative pairs are returned.
pub fn z_spectrum_small(a: &SymTensor, tol: f64) -> Result<ZSpectrum> {
    match a.dim() {
        1 => z_spectrum_1d(a),
        2 => Ok(z_spectrum_2d(a, tol)),
        3 => Ok(z_spectrum_3d(a, tol)),
        n => Err(Error::UnsupportedDim { dim: n, max: 3 }),
    }
}

fn z_spectrum_1d(a: &SymTensor) -> Result<ZSpectrum> {
    let pair = real_pair(a, vec![1.0]);
    Ok(ZSpectrum { pairs: vec![pair], degenerate: false })
}

fn axis_representatives(a: &SymTensor) -> Vec<EigenPair> {
    let mut pairs = Vec::new();
    for i in 0..a.dim() {
        let mut x = vec![0.0; a.dim()];
        x[i] = 1.0;
        pairs.push(real_pair(a, x));
    }
    sort_pairs(&mut pairs);
    pairs
}

fn z_spectrum_2d(a: &SymTensor, tol: f64) -> ZSpectrum {
    let fnorm = a.frobenius_norm();
    let (u, v) = contraction_forms_2d(a);
    let d = a.order() - 1;
    let g = |theta: f64| -> f64 {
        let (c, s) = (theta.cos(), theta.sin());
        let mut upow = vec![0.0; d + 1];
        // form values Σ u_k c^{d−k} s^k and Σ v_k c^{d−k} s^k
        let mut cv = 1.0;
        for k in 0..=d {
            upow[d - k] = cv; // c^{d−k} placed so index k multiplies c^{d−k}
            cv *= c;
        }
        let mut sv = 1.0;
        let mut uval = 0.0;
        let mut vval = 0.0;
        for k in 0..=d {
            uval += u[k] * upow[k] * sv;
            vval += v[k] * upow[k] * sv;
            sv *= s;
        }
        s * uval - c * vval
    };

    let thetas: Vec<f64> =
        (0..=THETA_SAMPLES).map(|i| std::f64::consts::PI * i as f64 / THETA_SAMPLES as f64).collect();
    let gvals: Vec<f64> = thetas.iter().map(|&t| g(t)).collect();
    let max_g = gvals.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if max_g <= 1e-10 * fnorm {
        return ZSpectrum { pairs: axis_representatives(a), degenerate: true };
    }

    let mut roots: Vec<f64> = Vec::new();
    for i in 0..THETA_SAMPLES {
        let (ga, gb) = (gvals[i], gvals[i + 1]);
        if ga == 0.0 {
            roots.push(thetas[i]);
        } else if ga * gb < 0.0 {
            let (mut lo, mut hi) = (thetas[i], thetas[i + 1]);
            let mut glo = ga;
            while hi - lo > 1e-13 {
                let mid = 0.5 * (lo + hi);
                let gm = g(mid);
                if gm == 0.0 {
                    lo = mid;
                    hi = mid;
                } else if glo * gm < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    glo = gm;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
    }

    let mut pairs: Vec<EigenPair> = Vec::new();
    let res_tol = tol * (1.0 + fnorm);
    for theta in roots {
        let x = vec![theta.cos(), theta.sin()];
        let pair = real_pair(a, x);
        let xr = pair.real_vector().expect("real by construction");
        let w = a.apply_unchecked(&xr);
        let lam = pair.value.re;
        let residual =
            w.iter().zip(&xr).map(|(wi, xi)| (wi - lam * xi).powi(2)).sum::<f64>().sqrt();
        if residual <= res_tol {
            push_dedup(&mut pairs, pair, fnorm);
        }
    }
    sort_pairs(&mut pairs);
    ZSpectrum { pairs, degenerate: false }
}

fn push_dedup(pairs: &mut Vec<EigenPair>, pair: EigenPair, fnorm: f64) {
    let x = pair.real_vector().expect("Z pairs carry real vectors");
    for existing in pairs.iter() {
        let y = existing.real_vector().expect("Z pairs carry real vectors");
        let dist = x.iter().zip(&y).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        if dist <= 1e-6 && (pair.value.re - existing.value.re).abs() <= 1e-6 * (1.0 + fnorm) {
            return;
        }
    }
    pairs.push(pair);
}

fn sph(phi: f64, psi: f64) -> [f64; 3] {
    [phi.sin() * psi.cos(), phi.sin() * psi.sin(), phi.cos()]
}

fn z_spectrum_3d(a: &SymTensor, tol: f64) -> ZSpectrum {
    let fnorm = a.frobenius_norm();
    if a.is_zero() {
        return ZSpectrum { pairs: axis_representatives(a), degenerate: true };
    }

    // flattened contraction plan: (component, coefficient, remaining indices)
    let plan: Vec<(usize, f64, Vec<usize>)> = {
        let mut terms = Vec::new();
        for (idx, v) in a.entries() {
            for (i, _) in crate::index::distinct_with_counts(idx) {
                let rest = crate::index::remove_one(idx, i);
                terms.push((i, v * crate::index::multiplicity(&rest), rest));
            }
        }
        terms
    };
    let apply_fast = |x: &[f64; 3]| -> [f64; 3] {
        let mut out = [0.0; 3];
        for (i, coeff, rest) in &plan {
            let mut prod = *coeff;
            for &k in rest {
                prod *= x[k];
            }
            out[*i] += prod;
        }
        out
    };

    let mut rsq = vec![[0.0f64; PSI_STEPS]; PHI_STEPS];
    let mut lam = vec![[0.0f64; PSI_STEPS]; PHI_STEPS];
    let mut max_rsq = 0.0f64;
    for i in 0..PHI_STEPS {
        let phi = std::f64::consts::PI * (i as f64 + 0.5) / PHI_STEPS as f64;
        for j in 0..PSI_STEPS {
            let psi = 2.0 * std::f64::consts::PI * j as f64 / PSI_STEPS as f64;
            let x = sph(phi, psi);
            let w = apply_fast(&x);
            let l = w[0] * x[0] + w[1] * x[1] + w[2] * x[2];
            let r = (w[0] - l * x[0]).powi(2) + (w[1] - l * x[1]).powi(2) + (w[2] - l * x[2]).powi(2);
            rsq[i][j] = r;
            lam[i][j] = l;
            max_rsq = max_rsq.max(r);
        }
    }
    if max_rsq.sqrt() <= 1e-10 * fnorm {
        return ZSpectrum { pairs: axis_representatives(a), degenerate: true };
    }

    let mut seeds: Vec<[f64; 3]> = Vec::new();
    let mut min_cell = (0usize, 0usize, f64::INFINITY);
    let mut min_lam = (0usize, 0usize, f64::INFINITY);
    let mut max_lam = (0usize, 0usize, f64::NEG_INFINITY);
    for i in 0..PHI_STEPS {
        for j in 0..PSI_STEPS {
            let r = rsq[i][j];
            if r < min_cell.2 {
                min_cell = (i, j, r);
            }
            if lam[i][j] < min_lam.2 {
                min_lam = (i, j, lam[i][j]);
            }
            if lam[i][j] > max_lam.2 {
                max_lam = (i, j, lam[i][j]);
            }
            let mut local_min = true;
            'neigh: for di in -1i32..=1 {
                for dj in -1i32..=1 {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let ni = i as i32 + di;
                    if ni < 0 || ni >= PHI_STEPS as i32 {
                        continue;
                    }
                    let nj = (j as i32 + dj).rem_euclid(PSI_STEPS as i32);
                    if rsq[ni as usize][nj as usize] < r {
                        local_min = false;
                        break 'neigh;
                    }
                }
            }
            if local_min {
                let phi = std::f64::consts::PI * (i as f64 + 0.5) / PHI_STEPS as f64;
                let psi = 2.0 * std::f64::consts::PI * j as f64 / PSI_STEPS as f64;
                seeds.push(sph(phi, psi));
            }
        }
    }
    for (i, j, _) in [min_cell, min_lam, max_lam] {
        let phi = std::f64::consts::PI * (i as f64 + 0.5) / PHI_STEPS as f64;
        let psi = 2.0 * std::f64::consts::PI * j as f64 / PSI_STEPS as f64;
        seeds.push(sph(phi, psi));
    }
    for i in 0..3 {
        let mut e = [0.0; 3];
        e[i] = 1.0;
        seeds.push(e);
        e[i] = -1.0;
        seeds.push(e);
    }
    let inv3 = 1.0 / 3.0f64.sqrt();
    for signs in [[1.0, 1.0, 1.0], [1.0, 1.0, -1.0], [1.0, -1.0, 1.0], [1.0, -1.0, -1.0]] {
        seeds.push([signs[0] * inv3, signs[1] * inv3, signs[2] * inv3]);
    }
    // Fibonacci lattice, for basins whose grid minimum is shadowed by a
    // deeper neighbor
    let golden = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
    for k in 0..256 {
        let z = 1.0 - 2.0 * (k as f64 + 0.5) / 256.0;
        let r = (1.0 - z * z).sqrt();
        let ang = golden * k as f64;
        seeds.push([r * ang.cos(), r * ang.sin(), z]);
    }

    let mut pairs: Vec<EigenPair> = Vec::new();
    let res_tol = tol * (1.0 + fnorm);
    let try_seed = |seed: &[f64; 3], pairs: &mut Vec<EigenPair>| {
        if let Some(x) = newton_z(a, seed, fnorm) {
            let pair = real_pair(a, x);
            let xr = pair.real_vector().expect("real by construction");
            let w = a.apply_unchecked(&xr);
            let lamv = pair.value.re;
            let residual =
                w.iter().zip(&xr).map(|(wi, xi)| (wi - lamv * xi).powi(2)).sum::<f64>().sqrt();
            if residual <= res_tol {
                push_dedup(pairs, pair, fnorm);
            }
        }
    };
    for seed in &seeds {
        try_seed(seed, &mut pairs);
    }
    // second wave around each solution: nearly degenerate twin pairs share a
    // residual valley and hide from the grid, but sit within a small tangent
    // perturbation of each other
    let found: Vec<Vec<f64>> =
        pairs.iter().map(|p| p.real_vector().expect("real by construction")).collect();
    for x in found {
        let axis = if x[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let mut t1 = [
            axis[1] * x[2] - axis[2] * x[1],
            axis[2] * x[0] - axis[0] * x[2],
            axis[0] * x[1] - axis[1] * x[0],
        ];
        let n1 = (t1[0] * t1[0] + t1[1] * t1[1] + t1[2] * t1[2]).sqrt();
        for c in &mut t1 {
            *c /= n1;
        }
        let t2 = [
            x[1] * t1[2] - x[2] * t1[1],
            x[2] * t1[0] - x[0] * t1[2],
            x[0] * t1[1] - x[1] * t1[0],
        ];
        for (alpha, beta) in
            [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (0.7, 0.7), (0.7, -0.7), (-0.7, 0.7), (-0.7, -0.7)]
        {
            let delta = 0.08;
            let mut seed = [
                x[0] + delta * (alpha * t1[0] + beta * t2[0]),
                x[1] + delta * (alpha * t1[1] + beta * t2[1]),
                x[2] + delta * (alpha * t1[2] + beta * t2[2]),
            ];
            let norm = (seed[0] * seed[0] + seed[1] * seed[1] + seed[2] * seed[2]).sqrt();
            for c in &mut seed {
                *c /= norm;
            }
            try_seed(&seed, &mut pairs);
        }
    }
    sort_pairs(&mut pairs);
    ZSpectrum { pairs, degenerate: false }
}

/// Newton iteration on `{A xᵐ⁻¹ − λx = 0, (xᵀx − 1)/2 = 0}` from a unit seed.
/// Returns the converged (unnormalized) eigenvector.
fn newton_z(a: &SymTensor, seed: &[f64], fnorm: f64) -> Option<Vec<f64>> {
    let n = a.dim();
    let m = a.order();
    let mut x: Vec<f64> = seed.to_vec();
    let w = a.apply_unchecked(&x);
    let mut lambda: f64 = w.iter().zip(&x).map(|(a, b)| a * b).sum();
    for _ in 0..60 {
        let w = a.apply_unchecked(&x);
        let mut f = DVector::zeros(n + 1);
        for i in 0..n {
            f[i] = w[i] - lambda * x[i];
        }
        let xn2: f64 = x.iter().map(|v| v * v).sum();
        f[n] = 0.5 * (xn2 - 1.0);
        let scale = fnorm + lambda.abs() + 1.0;
        if f.norm() <= 1e-13 * scale {
            return Some(x);
        }
        let mut jac = DMatrix::zeros(n + 1, n + 1);
        let second = a.second_contraction(&x).ok()?;
        for i in 0..n {
            for j in 0..n {
                jac[(i, j)] = (m - 1) as f64 * second[(i, j)];
            }
            jac[(i, i)] -= lambda;
            jac[(i, n)] = -x[i];
            jac[(n, i)] = x[i];
        }
        let delta = jac.lu().solve(&-f)?;
        for i in 0..n {
            x[i] += delta[i];
        }
        lambda += delta[n];
        let norm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !norm.is_finite() || !(1e-8..=100.0).contains(&norm) {
            return None;
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Positive definiteness
// ---------------------------------------------------------------------------

/// Positive-definiteness verdict for an even-order symmetric tensor.
///
/// Dimensions up to 3 are classified exactly from the sign of the smallest
/// Z-eigenvalue, with a witness vector when the form takes a nonpositive
/// value. Larger dimensions get the sufficient Gershgorin certificate
/// (every disk strictly in the right half line) or `Indeterminate`.
pub fn pd_check(a: &SymTensor) -> Result<PdVerdict> {
    if !a.order().is_multiple_of(2) {
        return Err(Error::OddOrder { order: a.order() });
    }
    if a.dim() <= 3 {
        let spectrum = z_spectrum_small(a, 1e-10)?;
        let min_pair = spectrum
            .pairs
            .iter()
            .min_by(|p, q| {
                p.value.re.partial_cmp(&q.value.re).unwrap_or(std::cmp::Ordering::Equal)
            })
            .ok_or_else(|| Error::Degenerate("empty Z-spectrum".into()))?;
        let lambda_min = min_pair.value.re;
        let x_min = min_pair.real_vector();
        let threshold = 1e-10 * a.frobenius_norm().max(1.0);
        let witness = x_min.filter(|x| a.eval_unchecked(x) <= 0.0);
        let classification = if lambda_min > threshold {
            PdClassification::PositiveDefinite
        } else if lambda_min >= -threshold {
            PdClassification::PositiveSemidefinite
        } else {
            PdClassification::Indefinite
        };
        let witness = match classification {
            PdClassification::PositiveDefinite => None,
            _ => witness,
        };
        Ok(PdVerdict { classification, witness, method: PdMethod::ExactSpectrum })
    } else {
        let certified = a.gershgorin_disks().iter().all(|d| d.center - d.radius > 0.0);
        let classification = if certified {
            PdClassification::CertifiedPositiveDefinite
        } else {
            PdClassification::Indeterminate
        };
        Ok(PdVerdict { classification, witness: None, method: PdMethod::GershgorinDisks })
    }
}
