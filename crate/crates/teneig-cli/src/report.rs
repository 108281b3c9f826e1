//! Run reports: every invocation ends in one human summary or one JSON
//! document carrying the command echo, input digest, options, status, and
//! results. Exit codes follow the status: 0 ok, 1 invalid input,
//! 2 non-convergence (with partial results still emitted).

use std::time::Instant;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    InvalidInput,
    NonConvergence,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::InvalidInput => "invalid-input",
            Status::NonConvergence => "non-convergence",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InvalidInput => 1,
            Status::NonConvergence => 2,
        }
    }
}

/// Rolling SHA-256 over every input file read, in order.
#[derive(Default)]
pub struct DigestAcc {
    hasher: Sha256,
}

impl DigestAcc {
    pub fn feed(&mut self, bytes: &[u8]) {
        self.hasher.update(bytes);
    }

    pub fn finish(self) -> String {
        let digest = self.hasher.finalize();
        let mut hex = String::with_capacity(7 + digest.len() * 2);
        hex.push_str("sha256:");
        for b in digest {
            hex.push_str(&format!("{b:02x}"));
        }
        hex
    }
}

pub struct Report {
    pub command: String,
    pub digest: String,
    pub options: Value,
    pub status: Status,
    pub results: Value,
    pub human: Vec<String>,
    pub error: Option<String>,
}

impl Report {
    /// Print the report (JSON document or human lines) and return the exit
    /// code implied by the status.
    pub fn emit(self, json_mode: bool, started: Instant) -> i32 {
        let wall_ms = started.elapsed().as_secs_f64() * 1e3;
        if json_mode {
            let mut doc = json!({
                "command": self.command,
                "input_digest": self.digest,
                "options": self.options,
                "status": self.status.as_str(),
                "wall_time_ms": wall_ms,
                "results": self.results,
            });
            if let Some(err) = &self.error {
                doc["error"] = json!(err);
            }
            println!("{doc}");
        } else {
            for line in &self.human {
                println!("{line}");
            }
            if let Some(err) = &self.error {
                eprintln!("error: {err}");
            }
            println!("status: {} ({:.1} ms)", self.status.as_str(), wall_ms);
        }
        self.status.exit_code()
    }
}

/// Six significant digits, plain notation when the exponent allows it.
pub fn fmt_g6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&exp) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - exp).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

pub fn fmt_vec(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|&x| fmt_g6(x)).collect();
    format!("[{}]", parts.join(", "))
}
