//! `teneig` — spectral computations for higher-order tensors on `.tns` files:
//! eigenvalues and localization, positive definiteness, nonnegative spectral
//! radii, higher-order Markov chains, and rank-one deflation.

mod report;
mod tns;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use serde_json::{json, Value};

use report::{fmt_g6, fmt_vec, DigestAcc, Report, Status};
use teneig::direct::{self, EigenKind, PdClassification, PdMethod};
use teneig::markov::{ProbVec, StationaryStatus};
use teneig::power::{self, IterOptions, Shift};
use teneig::rankone;
use teneig::tensor::SymTensor;
use tns::{TensorFile, TensorKind};

#[derive(Parser)]
#[command(name = "teneig", version, about = "Spectral theory of higher-order tensors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Convergence / residual tolerance
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Iteration budget for iterative solvers
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
    /// Seed for randomized restarts
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit a single JSON document instead of human-readable text
    #[arg(long)]
    json: bool,
}

impl Common {
    fn iter_options(&self) -> IterOptions {
        IterOptions { tol: self.tol, max_iter: self.max_iter, seed: self.seed, shift: Shift::Auto }
    }

    fn options_json(&self, extra: &[(&str, Value)]) -> Value {
        let mut doc = json!({
            "tol": self.tol,
            "max_iter": self.max_iter,
            "seed": self.seed,
        });
        for (key, value) in extra {
            doc[*key] = value.clone();
        }
        doc
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum ZMethod {
    /// Elimination solver, exact for dimension ≤ 3
    Direct,
    /// Shifted symmetric power method (one pair, any dimension)
    Power,
}

#[derive(Subcommand)]
enum Command {
    /// All eigenvalues of an n = 2 symmetric tensor, H/N classified
    EigH {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Z-eigenpairs of a symmetric tensor
    EigZ {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ZMethod::Direct)]
        method: ZMethod,
        #[command(flatten)]
        common: Common,
    },
    /// Positive-definiteness verdict for an even-order symmetric tensor
    Pd {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Spectral radius of a nonnegative tensor by bracketing power iteration
    Specrad {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Eigenvalue localization disks
    Gershgorin {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Higher-order Markov chain operations
    Markov {
        #[command(subcommand)]
        action: MarkovAction,
    },
    /// Successive rank-one deflation of a symmetric tensor
    Rankone {
        #[arg(long)]
        input: PathBuf,
        /// Maximum number of rank-one terms
        #[arg(long, default_value_t = 10)]
        terms: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Bounds on tensor approximation quantities
    Bounds {
        #[command(subcommand)]
        which: BoundsKind,
    },
    /// Change of basis B = Pᵐ A from a matrix file
    Transform {
        #[arg(long)]
        input: PathBuf,
        /// Matrix file (`.tns` with m = 2)
        #[arg(long)]
        matrix: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Adjacency tensor of a uniform hypergraph from an edge list
    Hypergraph {
        /// Edge file: one edge per line, space-separated 1-based vertices
        #[arg(long)]
        edges: PathBuf,
        #[arg(long)]
        dim: usize,
        /// Edge size; inferred from the first edge when omitted
        #[arg(long)]
        order: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum MarkovAction {
    /// Stationary distribution by the fixed-point power iteration
    Stationary {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// One step of the chain from explicit history distributions
    Evolve {
        #[arg(long)]
        input: PathBuf,
        /// Distribution files (m = 1), most recent first; repeat m−1 times
        #[arg(long)]
        history: Vec<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Iterate the sliding-window evolution map and report the trajectory
    Simulate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        history: Vec<PathBuf>,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum BoundsKind {
    /// Best rank-one approximation ratio bounds for S_{m,n}
    App {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are not errors
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let started = Instant::now();
    let (json_mode, report) = run(cli.command);
    ExitCode::from(report.emit(json_mode, started) as u8)
}

struct Fail {
    status: Status,
    message: String,
    results: Value,
    human: Vec<String>,
}

impl Fail {
    fn invalid(message: impl Into<String>) -> Self {
        Fail { status: Status::InvalidInput, message: message.into(), results: Value::Null, human: Vec::new() }
    }

    fn non_convergence(message: impl Into<String>, results: Value, human: Vec<String>) -> Self {
        Fail { status: Status::NonConvergence, message: message.into(), results, human }
    }
}

type CmdResult = Result<(Value, Vec<String>), Fail>;

fn run(command: Command) -> (bool, Report) {
    let mut digest = DigestAcc::default();
    let (name, common, outcome) = dispatch(command, &mut digest);
    let report = match outcome {
        Ok((results, human)) => Report {
            command: name,
            digest: digest.finish(),
            options: common.0,
            status: Status::Ok,
            results,
            human,
            error: None,
        },
        Err(fail) => Report {
            command: name,
            digest: digest.finish(),
            options: common.0,
            status: fail.status,
            results: fail.results,
            human: fail.human,
            error: Some(fail.message),
        },
    };
    (common.1, report)
}

fn dispatch(command: Command, digest: &mut DigestAcc) -> (String, (Value, bool), CmdResult) {
    match command {
        Command::EigH { input, common } => (
            "eig-h".into(),
            (common.options_json(&[]), common.json),
            cmd_eig_h(&input, &common, digest),
        ),
        Command::EigZ { input, method, common } => (
            "eig-z".into(),
            (
                common.options_json(&[(
                    "method",
                    json!(match method {
                        ZMethod::Direct => "direct",
                        ZMethod::Power => "power",
                    }),
                )]),
                common.json,
            ),
            cmd_eig_z(&input, method, &common, digest),
        ),
        Command::Pd { input, common } => (
            "pd".into(),
            (common.options_json(&[]), common.json),
            cmd_pd(&input, &common, digest),
        ),
        Command::Specrad { input, common } => (
            "specrad".into(),
            (common.options_json(&[]), common.json),
            cmd_specrad(&input, &common, digest),
        ),
        Command::Gershgorin { input, common } => (
            "gershgorin".into(),
            (common.options_json(&[]), common.json),
            cmd_gershgorin(&input, &common, digest),
        ),
        Command::Markov { action } => match action {
            MarkovAction::Stationary { input, common } => (
                "markov stationary".into(),
                (common.options_json(&[]), common.json),
                cmd_markov_stationary(&input, &common, digest),
            ),
            MarkovAction::Evolve { input, history, common } => (
                "markov evolve".into(),
                (common.options_json(&[]), common.json),
                cmd_markov_evolve(&input, &history, &common, digest),
            ),
            MarkovAction::Simulate { input, history, steps, common } => (
                "markov simulate".into(),
                (common.options_json(&[("steps", json!(steps))]), common.json),
                cmd_markov_simulate(&input, &history, steps, &common, digest),
            ),
        },
        Command::Rankone { input, terms, common } => (
            "rankone".into(),
            (common.options_json(&[("terms", json!(terms))]), common.json),
            cmd_rankone(&input, terms, &common, digest),
        ),
        Command::Bounds { which } => match which {
            BoundsKind::App { order, dim, common } => (
                "bounds app".into(),
                (common.options_json(&[("order", json!(order)), ("dim", json!(dim))]), common.json),
                cmd_bounds_app(order, dim, digest),
            ),
        },
        Command::Transform { input, matrix, common } => (
            "transform".into(),
            (common.options_json(&[]), common.json),
            cmd_transform(&input, &matrix, &common, digest),
        ),
        Command::Hypergraph { edges, dim, order, common } => (
            "hypergraph".into(),
            (common.options_json(&[("dim", json!(dim))]), common.json),
            cmd_hypergraph(&edges, dim, order, digest),
        ),
    }
}

// ---------------------------------------------------------------------------
// File loading
// ---------------------------------------------------------------------------

fn read_file(path: &Path, digest: &mut DigestAcc) -> Result<String, Fail> {
    let bytes = std::fs::read(path)
        .map_err(|e| Fail::invalid(format!("cannot read {}: {e}", path.display())))?;
    digest.feed(&bytes);
    String::from_utf8(bytes).map_err(|_| Fail::invalid(format!("{} is not UTF-8", path.display())))
}

fn read_tensor_file(path: &Path, digest: &mut DigestAcc) -> Result<TensorFile, Fail> {
    let text = read_file(path, digest)?;
    tns::parse(&text).map_err(|e| Fail::invalid(format!("{}: {e}", path.display())))
}

fn read_symmetric(path: &Path, digest: &mut DigestAcc) -> Result<SymTensor, Fail> {
    let file = read_tensor_file(path, digest)?;
    file.to_symmetric().map_err(|e| Fail::invalid(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path, digest: &mut DigestAcc) -> Result<DMatrix<f64>, Fail> {
    let file = read_tensor_file(path, digest)?;
    if file.order != 2 {
        return Err(Fail::invalid(format!("{}: matrix files need order 2", path.display())));
    }
    let mut m = DMatrix::zeros(file.dim, file.dim);
    for (idx, v) in &file.entries {
        m[(idx[0], idx[1])] = *v;
        if file.kind == TensorKind::Symmetric && idx[0] != idx[1] {
            m[(idx[1], idx[0])] = *v;
        }
    }
    Ok(m)
}

fn read_prob_vec(path: &Path, digest: &mut DigestAcc) -> Result<ProbVec, Fail> {
    let file = read_tensor_file(path, digest)?;
    if file.order != 1 {
        return Err(Fail::invalid(format!(
            "{}: distribution files need order 1 (lines `<i> <value>`)",
            path.display()
        )));
    }
    let mut x = vec![0.0; file.dim];
    for (idx, v) in &file.entries {
        x[idx[0]] = *v;
    }
    ProbVec::new(x).map_err(|e| Fail::invalid(format!("{}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// Shared rendering
// ---------------------------------------------------------------------------

fn kind_str(kind: EigenKind) -> &'static str {
    match kind {
        EigenKind::H => "H",
        EigenKind::N => "N",
        EigenKind::Z => "Z",
        EigenKind::Unclassified => "unclassified",
    }
}

fn complex_vec_json(v: &[teneig::Complex64]) -> Value {
    let re: Vec<f64> = v.iter().map(|c| c.re).collect();
    let im: Vec<f64> = v.iter().map(|c| c.im).collect();
    if im.iter().all(|&x| x == 0.0) {
        json!(re)
    } else {
        json!({ "re": re, "im": im })
    }
}

fn tensor_json(t: &SymTensor) -> Value {
    let entries: Vec<Value> = t
        .entries()
        .map(|(idx, v)| json!({ "index": idx.iter().map(|i| i + 1).collect::<Vec<_>>(), "value": v }))
        .collect();
    json!({ "order": t.order(), "dim": t.dim(), "kind": "symmetric", "entries": entries })
}

fn tensor_human(t: &SymTensor) -> Vec<String> {
    tns::from_symmetric(t).canonical().lines().map(|s| s.to_string()).collect()
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn cmd_eig_h(input: &Path, common: &Common, digest: &mut DigestAcc) -> CmdResult {
    let tensor = read_symmetric(input, digest)?;
    let pairs = direct::h_spectrum_2d(&tensor, common.tol)
        .map_err(|e| Fail::invalid(e.to_string()))?;
    let mut results = Vec::new();
    let mut human = vec![format!(
        "{} eigenvalue cluster(s), {} eigenvalues with multiplicity",
        pairs.len(),
        pairs.iter().map(|p| p.multiplicity).sum::<usize>()
    )];
    for p in &pairs {
        results.push(json!({
            "value_re": p.value.re,
            "value_im": p.value.im,
            "multiplicity": p.multiplicity,
            "kind": kind_str(p.kind),
            "vector": p.vector.as_ref().map(|v| complex_vec_json(v)),
        }));
        let value = if p.value.im == 0.0 {
            fmt_g6(p.value.re)
        } else {
            format!("{} {} {}i", fmt_g6(p.value.re), if p.value.im < 0.0 { "-" } else { "+" }, fmt_g6(p.value.im.abs()))
        };
        let vector = match p.real_vector() {
            Some(x) => format!("  x = {}", fmt_vec(&x)),
            None => String::new(),
        };
        human.push(format!(
            "λ = {value}  ({}, multiplicity {}){vector}",
            kind_str(p.kind),
            p.multiplicity
        ));
    }
    Ok((json!({ "pairs": results }), human))
}

fn cmd_eig_z(input: &Path, method: ZMethod, common: &Common, digest: &mut DigestAcc) -> CmdResult {
    let tensor = read_symmetric(input, digest)?;
    match method {
        ZMethod::Direct => {
            let spectrum = direct::z_spectrum_small(&tensor, common.tol)
                .map_err(|e| Fail::invalid(e.to_string()))?;
            // group pairs sharing an eigenvalue so distinct values are listed once
            let mut groups: Vec<(f64, Vec<Vec<f64>>)> = Vec::new();
            for pair in &spectrum.pairs {
                let lambda = pair.value.re;
                let x = pair.real_vector().expect("Z pairs carry real vectors");
                match groups
                    .iter_mut()
                    .find(|(v, _)| (*v - lambda).abs() <= 1e-9 * (1.0 + lambda.abs()))
                {
                    Some((_, vectors)) => vectors.push(x),
                    None => groups.push((lambda, vec![x])),
                }
            }
            let mut human = vec![if spectrum.degenerate {
                format!(
                    "degenerate: a continuum of Z-eigenvectors; {} representative eigenvalue(s)",
                    groups.len()
                )
            } else {
                format!("{} distinct Z-eigenvalue(s), {} pair(s)", groups.len(), spectrum.pairs.len())
            }];
            for (value, vectors) in &groups {
                human.push(format!("λ = {}  x = {}", fmt_g6(*value), fmt_vec(&vectors[0])));
                for x in &vectors[1..] {
                    human.push(format!("{:width$}x = {}", "", fmt_vec(x), width = 4));
                }
            }
            let eigenvalues: Vec<Value> = groups
                .iter()
                .map(|(v, vecs)| json!({ "value": v, "vectors": vecs }))
                .collect();
            Ok((
                json!({ "degenerate": spectrum.degenerate, "eigenvalues": eigenvalues }),
                human,
            ))
        }
        ZMethod::Power => {
            let pair = power::z_power(&tensor, &common.iter_options()).map_err(|e| match e {
                teneig::Error::NonConvergence { iterations, best_residual } => Fail::non_convergence(
                    e.to_string(),
                    json!({ "iterations": iterations, "best_residual": best_residual }),
                    vec!["power method did not reach the tolerance".into()],
                ),
                other => Fail::invalid(other.to_string()),
            })?;
            let x = pair.real_vector().expect("power pairs are real");
            let human = vec![format!("λ = {}  x = {}", fmt_g6(pair.value.re), fmt_vec(&x))];
            Ok((json!({ "value": pair.value.re, "vector": x }), human))
        }
    }
}

fn cmd_pd(input: &Path, _common: &Common, digest: &mut DigestAcc) -> CmdResult {
    let tensor = read_symmetric(input, digest)?;
    let verdict = direct::pd_check(&tensor).map_err(|e| Fail::invalid(e.to_string()))?;
    let class = match verdict.classification {
        PdClassification::PositiveDefinite => "positive-definite",
        PdClassification::PositiveSemidefinite => "positive-semidefinite",
        PdClassification::Indefinite => "indefinite",
        PdClassification::CertifiedPositiveDefinite => "certified-positive-definite",
        PdClassification::Indeterminate => "indeterminate",
    };
    let method = match verdict.method {
        PdMethod::ExactSpectrum => "exact-spectrum",
        PdMethod::GershgorinDisks => "gershgorin",
    };
    let mut human = vec![format!("classification: {class} (method: {method})")];
    if let Some(w) = &verdict.witness {
        human.push(format!("witness with A xᵐ ≤ 0: x = {}", fmt_vec(w)));
    }
    Ok((
        json!({ "classification": class, "method": method, "witness": verdict.witness }),
        human,
    ))
}

fn nqz_results(trace: &power::NqzTrace) -> Value {
    let (lower, upper) = trace.bracket();
    json!({
        "rho": trace.rho,
        "lower": lower,
        "upper": upper,
        "iterations": trace.iterations(),
        "converged": trace.converged,
        "epsilon_adjusted": trace.epsilon_adjusted,
    })
}

fn cmd_specrad(input: &Path, common: &Common, digest: &mut DigestAcc) -> CmdResult {
    let file = read_tensor_file(input, digest)?;
    let opts = common.iter_options();
    let trace = match file.kind {
        TensorKind::Symmetric => {
            let t = file.to_symmetric().map_err(Fail::invalid)?;
            power::nqz(&t, &opts)
        }
        TensorKind::General | TensorKind::Stochastic => {
            let t = file.to_general().map_err(Fail::invalid)?;
            power::nqz(&t, &opts)
        }
    }
    .map_err(|e| Fail::invalid(e.to_string()))?;
    let (lower, upper) = trace.bracket();
    let mut human = vec![
        format!("ρ ≈ {}  bracket [{}, {}]", fmt_g6(trace.rho), fmt_g6(lower), fmt_g6(upper)),
        format!("iterations: {}", trace.iterations()),
    ];
    if trace.epsilon_adjusted {
        human.push("note: zero components forced an ε-adjustment; bounds are estimates".into());
    }
    if trace.converged {
        Ok((nqz_results(&trace), human))
    } else {
        human.push("bracket did not close; the tensor is likely reducible".into());
        Err(Fail::non_convergence(
            format!("bracket stalled at [{}, {}]", fmt_g6(lower), fmt_g6(upper)),
            nqz_results(&trace),
            human,
        ))
    }
}

fn cmd_gershgorin(input: &Path, _common: &Common, digest: &mut DigestAcc) -> CmdResult {
    let tensor = read_symmetric(input, digest)?;
    let disks = tensor.gershgorin_disks();
    let mut human = Vec::new();
    for (i, d) in disks.iter().enumerate() {
        human.push(format!("disk {}: center {}, radius {}", i + 1, fmt_g6(d.center), fmt_g6(d.radius)));
    }
    let results: Vec<Value> =
        disks.iter().map(|d| json!({ "center": d.center, "radius": d.radius })).collect();
    Ok((json!({ "disks": results }), human))
}

fn cmd_markov_stationary(input: &Path, common: &Common, digest: &mut DigestAcc) -> CmdResult {
    let file = read_tensor_file(input, digest)?;
    let p = file.to_transition().map_err(Fail::invalid)?;
    let result = p
        .stationary_power(&ProbVec::uniform(p.dim()), &common.iter_options())
        .map_err(|e| Fail::invalid(e.to_string()))?;
    let status = match result.status {
        StationaryStatus::Converged => "converged",
        StationaryStatus::Cycling => "cycling",
        StationaryStatus::MaxIter => "max-iter",
    };
    let results = json!({
        "x_star": result.x_star.as_slice(),
        "residual": result.residual,
        "iterations": result.iterations,
        "iteration_status": status,
    });
    let human = vec![
        format!("x* = {}", fmt_vec(result.x_star.as_slice())),
        format!("residual ‖Pxᵐ⁻¹ − x‖₁ = {}  after {} iteration(s) [{status}]", fmt_g6(result.residual), result.iterations),
    ];
    if result.status == StationaryStatus::Converged {
        Ok((results, human))
    } else {
        Err(Fail::non_convergence(format!("iteration ended with status {status}"), results, human))
    }
}

fn load_history(paths: &[PathBuf], expected: usize, digest: &mut DigestAcc) -> Result<Vec<ProbVec>, Fail> {
    if paths.len() != expected {
        return Err(Fail::invalid(format!(
            "chain of this order needs {expected} history distribution(s) (most recent first), got {}",
            paths.len()
        )));
    }
    paths.iter().map(|p| read_prob_vec(p, digest)).collect()
}

fn cmd_markov_evolve(
    input: &Path,
    history: &[PathBuf],
    _common: &Common,
    digest: &mut DigestAcc,
) -> CmdResult {
    let file = read_tensor_file(input, digest)?;
    let p = file.to_transition().map_err(Fail::invalid)?;
    let history = load_history(history, p.order() - 1, digest)?;
    let out = p.evolve(&history).map_err(|e| Fail::invalid(e.to_string()))?;
    let human = vec![format!("x = {}", fmt_vec(out.as_slice()))];
    Ok((json!({ "distribution": out.as_slice() }), human))
}

fn cmd_markov_simulate(
    input: &Path,
    history: &[PathBuf],
    steps: usize,
    _common: &Common,
    digest: &mut DigestAcc,
) -> CmdResult {
    let file = read_tensor_file(input, digest)?;
    let p = file.to_transition().map_err(Fail::invalid)?;
    let history = load_history(history, p.order() - 1, digest)?;
    let track = p.simulate(&history, steps).map_err(|e| Fail::invalid(e.to_string()))?;
    let mut human = Vec::new();
    if let Some(last) = track.last() {
        human.push(format!("x({steps}) = {}", fmt_vec(last.as_slice())));
        if track.len() >= 2 {
            let drift = last.l1_distance(&track[track.len() - 2]);
            human.push(format!("last-step movement ‖Δx‖₁ = {} (observed, not certified)", fmt_g6(drift)));
        }
    }
    let trajectory: Vec<Value> = track.iter().map(|x| json!(x.as_slice())).collect();
    Ok((json!({ "steps": steps, "trajectory": trajectory }), human))
}

fn cmd_rankone(input: &Path, terms: usize, common: &Common, digest: &mut DigestAcc) -> CmdResult {
    let tensor = read_symmetric(input, digest)?;
    match rankone::ssbra(&tensor, terms, common.tol, &common.iter_options()) {
        Ok(result) => Ok(render_ssbra(&result, &tensor)),
        Err(teneig::Error::SsbraFailed { term, partial, source }) => {
            let (results, mut human) = render_ssbra(&partial, &tensor);
            human.push(format!("solver failed at term {term}: {source}"));
            Err(Fail::non_convergence(format!("rank-one solver failed at term {term}: {source}"), results, human))
        }
        Err(other) => Err(Fail::invalid(other.to_string())),
    }
}

fn render_ssbra(result: &rankone::SsbraResult, tensor: &SymTensor) -> (Value, Vec<String>) {
    let status = match result.status {
        rankone::SsbraStatus::ResidualTol => "residual-tol",
        rankone::SsbraStatus::MaxTerms => "max-terms",
        rankone::SsbraStatus::SolverFailed => "solver-failed",
    };
    let mut human = vec![format!(
        "{} term(s), ‖A‖_F = {}, final residual {} [{status}]",
        result.terms.len(),
        fmt_g6(tensor.frobenius_norm()),
        fmt_g6(result.residual_norms.last().copied().unwrap_or(tensor.frobenius_norm())),
    )];
    for (k, term) in result.terms.iter().enumerate() {
        human.push(format!(
            "term {}: λ = {}  x = {}  residual {}",
            k + 1,
            fmt_g6(term.lambda),
            fmt_vec(&term.vector),
            fmt_g6(result.residual_norms[k]),
        ));
    }
    let terms: Vec<Value> = result
        .terms
        .iter()
        .map(|t| json!({ "lambda": t.lambda, "vector": t.vector }))
        .collect();
    (
        json!({ "terms": terms, "residual_norms": result.residual_norms, "deflation_status": status }),
        human,
    )
}

fn cmd_bounds_app(order: usize, dim: usize, digest: &mut DigestAcc) -> CmdResult {
    digest.feed(format!("app {order} {dim}").as_bytes());
    let bounds = rankone::app_bounds(order, dim).map_err(|e| Fail::invalid(e.to_string()))?;
    let mut human = vec![format!(
        "App(S_{},{}) bounds: lower {}  upper {}",
        order,
        dim,
        fmt_g6(bounds.lower),
        fmt_g6(bounds.upper)
    )];
    if let Some(p) = bounds.closed_form_upper {
        human.push(format!("closed-form upper: {}", fmt_g6(p)));
        if order % 2 == 1 {
            human.push("odd order: the computed ratio and the closed form disagree; both are reported".into());
        }
    }
    Ok((
        json!({
            "order": bounds.order,
            "dim": bounds.dim,
            "lower": bounds.lower,
            "upper": bounds.upper,
            "closed_form_upper": bounds.closed_form_upper,
        }),
        human,
    ))
}

fn cmd_transform(input: &Path, matrix: &Path, _common: &Common, digest: &mut DigestAcc) -> CmdResult {
    let tensor = read_symmetric(input, digest)?;
    let p = read_matrix(matrix, digest)?;
    let b = tensor.transform(&p).map_err(|e| Fail::invalid(e.to_string()))?;
    Ok((tensor_json(&b), tensor_human(&b)))
}

fn cmd_hypergraph(
    edges_path: &Path,
    dim: usize,
    order: Option<usize>,
    digest: &mut DigestAcc,
) -> CmdResult {
    let text = read_file(edges_path, digest)?;
    let mut edges: Vec<Vec<usize>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut edge = Vec::new();
        for field in line.split_whitespace() {
            let v: usize = field.parse().map_err(|_| {
                Fail::invalid(format!("{}: line {}: bad vertex `{field}`", edges_path.display(), lineno + 1))
            })?;
            if v == 0 || v > dim {
                return Err(Fail::invalid(format!(
                    "{}: line {}: vertex {v} out of range 1..{dim}",
                    edges_path.display(),
                    lineno + 1
                )));
            }
            edge.push(v - 1);
        }
        edges.push(edge);
    }
    let order = match order.or_else(|| edges.first().map(|e| e.len())) {
        Some(k) => k,
        None => return Err(Fail::invalid("empty edge list; pass --order to fix the tensor order")),
    };
    let adjacency = teneig::tensor::hypergraph_adjacency(order, dim, &edges)
        .map_err(|e| Fail::invalid(e.to_string()))?;
    Ok((tensor_json(&adjacency), tensor_human(&adjacency)))
}
