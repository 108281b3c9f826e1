//! Acceptance suite: every shipped guarantee, one test per criterion, each
//! at its stated tolerance. Run with `cargo test --test acceptance --
//! --nocapture` to see the per-criterion PASS lines.

use std::time::Instant;

use teneig::direct::{
    char_poly_2d, h_spectrum_2d, pd_check, sym_hyperdet_2d, z_spectrum_small, PdClassification,
};
use teneig::markov::ProbVec;
use teneig::power::{nqz, IterOptions};
use teneig::random;
use teneig::rankone::{app_bounds, multilinear_max, reference_tensor, ssbra};
use teneig::tensor::SymTensor;

fn pass(criterion: usize, label: &str, detail: String) {
    println!("criterion {criterion:>2} ({label}): PASS — {detail}");
}

/// The shared n = 2 fixture set of criteria 1–3: 1000 tensors per order.
fn shared_fixtures(order: usize) -> Vec<SymTensor> {
    let mut rng = random::rng(0xC0FFEE + order as u64);
    (0..1000).map(|_| random::symmetric_uniform(order, 2, -1.0, 1.0, &mut rng)).collect()
}

#[test]
fn criterion_01_eigenvalue_count() {
    let start = Instant::now();
    for m in [3usize, 4, 5] {
        let mut good = 0usize;
        let mut flagged = 0usize;
        for tensor in shared_fixtures(m) {
            match char_poly_2d(&tensor) {
                Ok(phi) => {
                    if phi.degree() == Some(2 * (m - 1)) {
                        good += 1;
                    }
                }
                Err(_) => flagged += 1,
            }
        }
        assert!(good >= 999, "order {m}: only {good} of 1000 with the full degree");
        assert!(good + flagged == 1000, "order {m}: miscounted degrees");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}, budget 10 s");
    pass(1, "eigenvalue count", format!("3000 fixtures, degree 2(m−1) everywhere, {elapsed:?}"));
}

#[test]
fn criterion_02_trace_sum_identity() {
    for m in [3usize, 4, 5] {
        for tensor in shared_fixtures(m) {
            let pairs = h_spectrum_2d(&tensor, 1e-8).unwrap();
            let sum_re: f64 = pairs.iter().map(|p| p.value.re * p.multiplicity as f64).sum();
            let sum_im: f64 = pairs.iter().map(|p| p.value.im * p.multiplicity as f64).sum();
            let trace = tensor.trace();
            let expected = (m - 1) as f64 * trace;
            let budget = 1e-8 * (1.0 + trace.abs());
            assert!(
                (sum_re - expected).abs() <= budget && sum_im.abs() <= budget,
                "order {m}: Σλ = {sum_re}+{sum_im}i vs (m−1)·tr = {expected}"
            );
        }
    }
    pass(2, "trace-sum identity", "Σλ = (m−1)·tr(A) on 3000 fixtures at 1e-8".into());
}

#[test]
fn criterion_03_product_determinant_identity() {
    for m in [3usize, 4, 5] {
        for tensor in shared_fixtures(m) {
            let pairs = h_spectrum_2d(&tensor, 1e-8).unwrap();
            let mut product = num_complex::Complex64::new(1.0, 0.0);
            for p in &pairs {
                for _ in 0..p.multiplicity {
                    product *= p.value;
                }
            }
            let det = sym_hyperdet_2d(&tensor).unwrap();
            // relative, with an absolute floor for near-singular draws whose
            // smallest roots are only known to absolute precision
            let budget = 1e-6 * (1.0 + det.abs());
            assert!(
                (product.re - det).abs() <= budget && product.im.abs() <= budget,
                "order {m}: Πλ = {product} vs det = {det}"
            );
        }
    }
    pass(3, "product-determinant identity", "Πλ = det(A) on 3000 fixtures at 1e-6".into());
}

/// Flattened evaluator for the sphere sampling test; one allocation per
/// fixture instead of one per sample.
struct EvalPlan {
    terms: Vec<(f64, Vec<usize>)>,
}

impl EvalPlan {
    fn new(t: &SymTensor) -> Self {
        let mut terms = Vec::new();
        for (idx, v) in t.entries() {
            let mut mult = 1.0f64;
            let mut run = 1usize;
            for w in 1..=idx.len() {
                if w < idx.len() && idx[w] == idx[w - 1] {
                    run += 1;
                } else {
                    mult *= (1..=run as u64).product::<u64>() as f64;
                    run = 1;
                }
            }
            let total: f64 = (1..=idx.len() as u64).product::<u64>() as f64;
            terms.push((v * total / mult, idx.to_vec()));
        }
        EvalPlan { terms }
    }

    fn eval(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (coeff, idx) in &self.terms {
            let mut prod = *coeff;
            for &i in idx {
                prod *= x[i];
            }
            acc += prod;
        }
        acc
    }
}

#[test]
fn criterion_04_pd_criterion() {
    // named fixtures first
    let sphere_power = reference_tensor(4, 2).unwrap();
    assert_eq!(
        pd_check(&sphere_power).unwrap().classification,
        PdClassification::PositiveDefinite
    );
    let indef = SymTensor::diagonal(4, &[1.0, -1.0]).unwrap();
    let verdict = pd_check(&indef).unwrap();
    assert_eq!(verdict.classification, PdClassification::Indefinite);
    let witness = verdict.witness.expect("indefinite verdicts carry a witness");
    assert!(indef.eval(&witness).unwrap() < 0.0, "witness must certify A xᵐ ≤ 0");

    // 100 random fixtures against a 10⁶-sample sign test each; half are
    // shifted onto the positive side so both verdict branches get exercised
    let mut rng = random::rng(0x9D);
    let mut split = [0usize; 2];
    for case in 0..100 {
        let n = 2 + case % 2;
        let mut tensor = random::symmetric_uniform(4, n, -1.0, 1.0, &mut rng);
        if case % 2 == 0 {
            let bump = reference_tensor(4, n).unwrap().scale(1.2 * tensor.frobenius_norm());
            tensor = tensor.sub(&bump.scale(-1.0)).unwrap();
        }
        let verdict = pd_check(&tensor).unwrap();
        let plan = EvalPlan::new(&tensor);
        let mut min_sample = f64::INFINITY;
        for _ in 0..1_000_000 {
            let x = random::unit_vector(n, &mut rng);
            min_sample = min_sample.min(plan.eval(&x));
        }
        match verdict.classification {
            PdClassification::PositiveDefinite => {
                split[0] += 1;
                assert!(min_sample > 0.0, "case {case}: PD verdict but sampled {min_sample}");
            }
            PdClassification::Indefinite => {
                split[1] += 1;
                let w = verdict.witness.expect("witness");
                assert!(tensor.eval(&w).unwrap() < 0.0, "case {case}: witness not certifying");
                assert!(min_sample < 0.0, "case {case}: indefinite but sampling stayed positive");
            }
            PdClassification::PositiveSemidefinite => {
                assert!(min_sample.abs() <= 1e-8, "case {case}: PSD vs sampled {min_sample}");
            }
            other => panic!("case {case}: unexpected exact-path verdict {other:?}"),
        }
    }
    pass(
        4,
        "positive definiteness",
        format!("named fixtures plus 100×10⁶-sample agreement ({} PD / {} indefinite)", split[0], split[1]),
    );
}

#[test]
fn criterion_05_gershgorin_containment() {
    let mut rng = random::rng(0x6E);
    for case in 0..1000 {
        let m = 3 + case % 3;
        let tensor = random::symmetric_uniform(m, 2, -1.0, 1.0, &mut rng);
        let disks = tensor.gershgorin_disks();
        for pair in h_spectrum_2d(&tensor, 1e-8).unwrap() {
            assert!(
                disks.iter().any(|d| d.contains(pair.value, 1e-8)),
                "case {case}: root {} escapes disks {disks:?}",
                pair.value
            );
        }
    }
    pass(5, "Gershgorin containment", "all roots of 1000 fixtures inside the disk union".into());
}

#[test]
fn criterion_06_nqz() {
    let start = Instant::now();
    // exact value on the all-ones tensor
    let mut all_ones = SymTensor::new(3, 2).unwrap();
    for idx in [[0, 0, 0], [0, 0, 1], [0, 1, 1], [1, 1, 1]] {
        all_ones.set(&idx, 1.0).unwrap();
    }
    let trace = nqz(&all_ones, &IterOptions::default()).unwrap();
    assert!(trace.converged);
    assert!((trace.rho - 4.0).abs() <= 1e-10, "ρ(all-ones) = {} vs n^{{m−1}} = 4", trace.rho);

    // bracket monotonicity and geometric width decay on positive tensors
    let mut rng = random::rng(0xA1);
    for case in 0..100 {
        let n = 2 + case % 5;
        let tensor = random::symmetric_positive(3, n, &mut rng);
        let trace = nqz(&tensor, &IterOptions { tol: 1e-13, ..Default::default() }).unwrap();
        let widths: Vec<f64> = trace.iterates.iter().map(|it| it.upper - it.lower).collect();
        for w in trace.iterates.windows(2) {
            assert!(w[1].lower >= w[0].lower && w[1].upper <= w[0].upper, "case {case}");
        }
        let floor = 1e-12 * (1.0 + trace.rho.abs());
        for k in 0..widths.len().saturating_sub(10) {
            if widths[k] > floor {
                assert!(
                    widths[k + 10] < widths[k],
                    "case {case}: width stalled at step {k}: {} vs {}",
                    widths[k + 10],
                    widths[k]
                );
            }
        }
    }

    // agreement with the elimination solver on n = 2
    let mut rng = random::rng(0xA2);
    for case in 0..100 {
        let m = 3 + case % 2;
        let tensor = random::symmetric_positive(m, 2, &mut rng);
        let trace = nqz(&tensor, &IterOptions::default()).unwrap();
        let rho_direct = h_spectrum_2d(&tensor, 1e-8)
            .unwrap()
            .iter()
            .filter(|p| p.value.im == 0.0)
            .map(|p| p.value.re)
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(
            (trace.rho - rho_direct).abs() <= 1e-8 * (1.0 + rho_direct.abs()),
            "case {case}: {} vs {rho_direct}",
            trace.rho
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}, budget 30 s");
    pass(6, "NQZ spectral radius", format!("exact value, monotone decaying brackets, H-root agreement, {elapsed:?}"));
}

#[test]
fn criterion_07_markov_stationarity() {
    // uniform chain: one step
    let mut g = teneig::tensor::GenTensor::new(3, 4).unwrap();
    for k1 in 0..4usize {
        for k2 in 0..4usize {
            for k3 in 0..4usize {
                g.set(&[k1, k2, k3], 0.25).unwrap();
            }
        }
    }
    let p = teneig::markov::TransitionTensor::new(g).unwrap();
    let result = p.stationary_power(&ProbVec::uniform(4), &IterOptions::default()).unwrap();
    assert_eq!(result.iterations, 1);
    for &v in result.x_star.as_slice() {
        assert!((v - 0.25).abs() <= 1e-12);
    }

    // m = 2 agrees with the direct linear solve
    let mut rng = random::rng(0xB1);
    for case in 0..100 {
        let n = 2 + case % 4;
        let p = random::stochastic(2, n, &mut rng);
        let result = p.stationary_power(&ProbVec::uniform(n), &IterOptions::default()).unwrap();
        let x = stationary_linear_solve(&p);
        for (got, want) in result.x_star.as_slice().iter().zip(&x) {
            assert!((got - want).abs() <= 1e-10, "case {case}: {got} vs {want}");
        }
    }

    // the hand-expanded m = 3, n = 2 fixture against its quadratic oracle
    let mut g = teneig::tensor::GenTensor::new(3, 2).unwrap();
    for ((k2, k3), v) in [((0, 0), 0.8), ((0, 1), 0.3), ((1, 0), 0.5), ((1, 1), 0.1)] {
        g.set(&[0, k2, k3], v).unwrap();
        g.set(&[1, k2, k3], 1.0 - v).unwrap();
    }
    let p = teneig::markov::TransitionTensor::new(g).unwrap();
    let result = p.stationary_power(&ProbVec::uniform(2), &IterOptions::default()).unwrap();
    // q(t) = 0.1t² − 0.4t + 0.1 = 0 on [0, 1]
    let t = 2.0 - 3.0f64.sqrt();
    assert!((result.x_star.as_slice()[0] - t).abs() <= 1e-10);

    // evolve outputs stay on the simplex
    use rand::Rng;
    let mut rng = random::rng(0xB2);
    for _ in 0..1000 {
        let order = rng.gen_range(2..5usize);
        let n = rng.gen_range(1..5usize);
        let p = random::stochastic(order, n, &mut rng);
        let history: Vec<ProbVec> = (0..order - 1).map(|_| random::prob_vec(n, &mut rng)).collect();
        let out = p.evolve(&history).unwrap();
        let sum: f64 = out.as_slice().iter().sum();
        assert!((sum - 1.0).abs() <= 1e-12);
        assert!(out.as_slice().iter().all(|&v| v >= 0.0));
    }
    pass(7, "Markov stationarity", "uniform, 100 linear-solve matches, quadratic fixture, simplex invariance".into());
}

fn stationary_linear_solve(p: &teneig::markov::TransitionTensor) -> Vec<f64> {
    let n = p.dim();
    let mut m = nalgebra::DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = p.tensor().get(&[i, j]);
        }
        m[(i, i)] -= 1.0;
    }
    for j in 0..n {
        m[(n - 1, j)] = 1.0;
    }
    let mut rhs = nalgebra::DVector::zeros(n);
    rhs[n - 1] = 1.0;
    m.lu().solve(&rhs).expect("irreducible stochastic matrix").iter().copied().collect()
}

#[test]
fn criterion_08_rank_one_residual_formula() {
    let check = |tensor: &SymTensor, label: &str| {
        let term = teneig::rankone::best_rank_one(tensor, &IterOptions::default()).unwrap();
        let residual = tensor.sub(&term.to_tensor(tensor.order())).unwrap().frobenius_norm();
        let formula = (tensor.frobenius_norm().powi(2) - term.lambda.powi(2)).max(0.0).sqrt();
        assert!((residual - formula).abs() <= 1e-8, "{label}: {residual} vs {formula}");
        residual
    };
    let diag = SymTensor::diagonal(4, &[1.0, 0.5]).unwrap();
    let r = check(&diag, "diag(1, 0.5)");
    assert!((r - 0.5).abs() <= 1e-8, "diag(1, 0.5) residual must be exactly 0.5, got {r}");
    check(&reference_tensor(4, 2).unwrap(), "sphere-power");
    check(&SymTensor::rank_one(4, 2.0, &[1.0, 0.0]).unwrap(), "rank-one");
    let mut rng = random::rng(0xC8);
    for case in 0..75 {
        let (m, n) = if case < 50 { (3 + case % 2, 2) } else { (4, 3) };
        let tensor = random::symmetric_uniform(m, n, -1.0, 1.0, &mut rng);
        check(&tensor, &format!("random case {case}"));
    }
    pass(8, "rank-one residual formula", "‖A − λxᵐ‖ = √(‖A‖² − λ²) on 78 fixtures at 1e-8".into());
}

#[test]
fn criterion_09_ssbra_decay() {
    let mut rng = random::rng(0xD9);
    for case in 0..100 {
        let tensor = random::symmetric_uniform(4, 2, -1.0, 1.0, &mut rng);
        let result = ssbra(&tensor, 25, 1e-10, &IterOptions::default()).unwrap();
        let mut prev = tensor.frobenius_norm().powi(2);
        for (k, &r) in result.residual_norms.iter().enumerate() {
            let bound = prev * (1.0 - 1.0 / 8.0) + 1e-12 * (1.0 + prev);
            assert!(r * r <= bound, "case {case}, step {k}: {} vs {bound}", r * r);
            prev = r * r;
        }
    }
    let id = SymTensor::diagonal(4, &[1.0, 1.0]).unwrap();
    let result = ssbra(&id, 10, 1e-12, &IterOptions::default()).unwrap();
    assert_eq!(result.terms.len(), 2, "diag(1,1) must deflate in exactly two terms");
    assert!(*result.residual_norms.last().unwrap() <= 1e-12);
    pass(9, "SSBRA decay", "per-step contraction ≤ 7/8 on 100 fixtures; exact 2-term deflation".into());
}

#[test]
fn criterion_10_app_bounds() {
    for n in 1..=6usize {
        let nf = n as f64;
        let quad = reference_tensor(2, n).unwrap();
        assert!((quad.frobenius_norm() - nf.sqrt()).abs() <= 1e-12);
        let quart = reference_tensor(4, n).unwrap();
        let expected = ((nf * nf + 2.0 * nf) / 3.0).sqrt();
        assert!((quart.frobenius_norm() - expected).abs() <= 1e-12);

        let b2 = app_bounds(2, n).unwrap();
        assert!((b2.upper - b2.closed_form_upper.unwrap()).abs() <= 1e-12);
        let b4 = app_bounds(4, n).unwrap();
        assert!((b4.upper - b4.closed_form_upper.unwrap()).abs() <= 1e-12);

        let b3 = app_bounds(3, n).unwrap();
        println!(
            "  App(S_3,{n}): lower {:.6}, computed upper {:.6}, closed-form upper {:.6}",
            b3.lower,
            b3.upper,
            b3.closed_form_upper.unwrap()
        );
        assert!(b3.lower <= b3.upper && b3.upper <= 1.0 + 1e-12);
    }
    for m in 2..=5usize {
        for n in 1..=6usize {
            let b = app_bounds(m, n).unwrap();
            assert!(0.0 < b.lower && b.lower <= b.upper + 1e-12 && b.upper <= 1.0 + 1e-12);
        }
    }
    pass(10, "App ratio bounds", "reference norms at 1e-12; even-order uppers match closed forms".into());
}

#[test]
fn criterion_11_rho_z_equals_sigma() {
    let start = Instant::now();
    let mut rng = random::rng(0xE1);
    for case in 0..50 {
        let tensor = random::symmetric_uniform(3, 2, -1.0, 1.0, &mut rng);
        let sigma = multilinear_max(&tensor, &IterOptions::default()).unwrap();
        let rho_z = z_spectrum_small(&tensor, 1e-10)
            .unwrap()
            .max_abs_value()
            .expect("nonzero tensor");
        assert!((sigma - rho_z).abs() <= 1e-6, "case {case}: σ = {sigma} vs ρ_Z = {rho_z}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}, budget 60 s");
    pass(11, "ρ_Z = σ identity", format!("50 fixtures at 1e-6, {elapsed:?}"));
}

#[test]
fn criterion_12_orthogonal_similarity() {
    let mut rng = random::rng(0xF2);
    for case in 0..100 {
        let n = 2 + case % 2;
        let m = 3 + (case / 2) % 2;
        let tensor = random::symmetric_uniform(m, n, -1.0, 1.0, &mut rng);
        let p = random::orthogonal(n, &mut rng);
        let transformed = tensor.transform(&p).unwrap();
        let mut original: Vec<f64> = z_spectrum_small(&tensor, 1e-10)
            .unwrap()
            .pairs
            .iter()
            .map(|q| q.value.re)
            .collect();
        let mut rotated: Vec<f64> = z_spectrum_small(&transformed, 1e-10)
            .unwrap()
            .pairs
            .iter()
            .map(|q| q.value.re)
            .collect();
        original.sort_by(|a, b| a.partial_cmp(b).unwrap());
        rotated.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(
            original.len(),
            rotated.len(),
            "case {case} (m={m}, n={n}): {original:?} vs {rotated:?}"
        );
        for (a, b) in original.iter().zip(&rotated) {
            assert!((a - b).abs() <= 1e-8, "case {case} (m={m}, n={n}): {a} vs {b}");
        }
    }
    pass(12, "orthogonal similarity", "Z-spectra of A and PᵐA agree on 100 pairs at 1e-8".into());
}
