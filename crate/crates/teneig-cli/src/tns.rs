//! The `.tns` tensor file format.
//!
//! Text, UTF-8, LF. Lines starting with `#` are comments. The first
//! non-comment line is the header `tensor <m> <n> <symmetric|general|stochastic>`;
//! every following non-empty line is `<i1> … <im> <value>` with 1-based
//! indices. Unlisted entries are zero. Symmetric files must keep indices
//! non-decreasing within each line, duplicate index lines are rejected, and
//! stochastic files must validate as transition tensors on load. Matrices
//! use the same format with `m = 2`, probability vectors with `m = 1`.

use teneig::markov::TransitionTensor;
use teneig::tensor::{GenTensor, SymTensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorKind {
    Symmetric,
    General,
    Stochastic,
}

impl TensorKind {
    fn as_str(self) -> &'static str {
        match self {
            TensorKind::Symmetric => "symmetric",
            TensorKind::General => "general",
            TensorKind::Stochastic => "stochastic",
        }
    }
}

/// Parsed tensor file, entries 0-based and in file order.
#[derive(Debug, Clone)]
pub struct TensorFile {
    pub order: usize,
    pub dim: usize,
    pub kind: TensorKind,
    pub entries: Vec<(Vec<usize>, f64)>,
}

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

pub fn parse(text: &str) -> Result<TensorFile, ParseError> {
    let mut header: Option<(usize, usize, TensorKind)> = None;
    let mut entries: Vec<(Vec<usize>, f64)> = Vec::new();
    let mut seen: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match header {
            None => {
                if fields.len() != 4 || fields[0] != "tensor" {
                    return Err(err(lineno, "expected header `tensor <m> <n> <kind>`"));
                }
                let order: usize =
                    fields[1].parse().map_err(|_| err(lineno, "order is not an integer"))?;
                let dim: usize =
                    fields[2].parse().map_err(|_| err(lineno, "dimension is not an integer"))?;
                let kind = match fields[3] {
                    "symmetric" => TensorKind::Symmetric,
                    "general" => TensorKind::General,
                    "stochastic" => TensorKind::Stochastic,
                    other => return Err(err(lineno, format!("unknown kind `{other}`"))),
                };
                if order == 0 || dim == 0 {
                    return Err(err(lineno, "order and dimension must be positive"));
                }
                header = Some((order, dim, kind));
            }
            Some((order, dim, kind)) => {
                if fields.len() != order + 1 {
                    return Err(err(
                        lineno,
                        format!("expected {order} indices and a value, found {} fields", fields.len()),
                    ));
                }
                let mut idx = Vec::with_capacity(order);
                for f in &fields[..order] {
                    let i: usize =
                        f.parse().map_err(|_| err(lineno, format!("bad index `{f}`")))?;
                    if i == 0 || i > dim {
                        return Err(err(lineno, format!("index {i} out of range 1..{dim}")));
                    }
                    idx.push(i - 1);
                }
                let value: f64 = fields[order]
                    .parse()
                    .map_err(|_| err(lineno, format!("bad value `{}`", fields[order])))?;
                if !value.is_finite() {
                    return Err(err(lineno, "value is not finite"));
                }
                if kind == TensorKind::Symmetric && idx.windows(2).any(|w| w[0] > w[1]) {
                    return Err(err(lineno, "symmetric entries need non-decreasing indices"));
                }
                if !seen.insert(idx.clone()) {
                    return Err(err(lineno, format!("duplicate entry line for index {:?}", one_based(&idx))));
                }
                entries.push((idx, value));
            }
        }
    }
    let (order, dim, kind) = header.ok_or_else(|| err(0, "missing tensor header"))?;
    Ok(TensorFile { order, dim, kind, entries })
}

fn one_based(idx: &[usize]) -> Vec<usize> {
    idx.iter().map(|&i| i + 1).collect()
}

impl TensorFile {
    pub fn to_symmetric(&self) -> Result<SymTensor, String> {
        if self.kind != TensorKind::Symmetric {
            return Err(format!("this operation needs a symmetric tensor, file is `{}`", self.kind.as_str()));
        }
        SymTensor::from_entries(self.order, self.dim, self.entries.iter().cloned())
            .map_err(|e| e.to_string())
    }

    pub fn to_general(&self) -> Result<GenTensor, String> {
        GenTensor::from_entries(self.order, self.dim, self.entries.iter().cloned())
            .map_err(|e| e.to_string())
    }

    pub fn to_transition(&self) -> Result<TransitionTensor, String> {
        TransitionTensor::new(self.to_general()?).map_err(|e| e.to_string())
    }

    /// Canonical text form: sorted entry lines, shortest round-trip floats,
    /// LF endings. Parsing and rewriting any file yields a fixed point.
    pub fn canonical(&self) -> String {
        let mut entries = self.entries.clone();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out = format!("tensor {} {} {}\n", self.order, self.dim, self.kind.as_str());
        for (idx, v) in &entries {
            for i in idx {
                out.push_str(&(i + 1).to_string());
                out.push(' ');
            }
            out.push_str(&format!("{v}\n"));
        }
        out
    }
}

pub fn from_symmetric(t: &SymTensor) -> TensorFile {
    TensorFile {
        order: t.order(),
        dim: t.dim(),
        kind: TensorKind::Symmetric,
        entries: t.entries().map(|(idx, v)| (idx.to_vec(), v)).collect(),
    }
}
