//! `invrings`: batch front end for invariant-ring presentations, t-pgg
//! certificates, Veronese charts and semistability reports.

mod commands;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use invariant_rings::{Error, Fp, Q};
use serde_json::{json, Value};

use crate::commands::{Outcome, Params};

pub const SCHEMA_VERSION: &str = "1.0";

/// Primes accepted by `--field pPRIME`.
pub const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 101, 32003];

#[derive(Parser, Debug)]
#[command(name = "invrings", version, about = "Invariant rings, t-pgg certificates and projective embeddings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Fft,
    Sft,
    Present,
    Verify,
    Invariants,
    Molien,
    PggCheck,
    PggMin,
    Embed,
    EmbedSpec,
    Semistable,
    Plucker,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generators of the invariant ring (first fundamental theorem).
    Fft(Opts),
    /// Relations among the generators (second fundamental theorem).
    Sft(Opts),
    /// Graded presentation with realizations.
    Present(Opts),
    /// Check a classical presentation against directly computed invariants.
    Verify(Opts),
    /// Basis of invariants of each degree.
    Invariants(Opts),
    /// Molien series of a finite group.
    Molien(Opts),
    /// Certify or refute the t-pgg property up to a degree.
    PggCheck(Opts),
    /// Smallest certified t up to a degree.
    PggMin(Opts),
    /// Veronese chart and image equations.
    Embed(Opts),
    /// Chart of the affine cone tensored with a degree-1 line.
    EmbedSpec(Opts),
    /// Semistability of an m x n matrix under Sl(m).
    Semistable(Opts),
    /// Plücker point of an m x n matrix.
    Plucker(Opts),
}

#[derive(Args, Debug, Clone, Default)]
pub struct Opts {
    /// Group JSON file, or one of Sl, Sp, O, SO together with --m.
    #[arg(long)]
    pub group: Option<String>,
    /// Presentation JSON file.
    #[arg(long)]
    pub presentation: Option<PathBuf>,
    /// Matrix as a JSON array of rows, or a file holding one.
    #[arg(long)]
    pub matrix: Option<String>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long = "max-degree")]
    pub max_degree: Option<u32>,
    #[arg(long)]
    pub exponent: Option<u32>,
    /// Largest equation degree for `embed`.
    #[arg(long)]
    pub dmax: Option<u32>,
    /// Coefficient field: `q` or `p` followed by a prime.
    #[arg(long, default_value = "q")]
    pub field: String,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Command {
    fn split(self) -> (Kind, Opts) {
        match self {
            Command::Fft(o) => (Kind::Fft, o),
            Command::Sft(o) => (Kind::Sft, o),
            Command::Present(o) => (Kind::Present, o),
            Command::Verify(o) => (Kind::Verify, o),
            Command::Invariants(o) => (Kind::Invariants, o),
            Command::Molien(o) => (Kind::Molien, o),
            Command::PggCheck(o) => (Kind::PggCheck, o),
            Command::PggMin(o) => (Kind::PggMin, o),
            Command::Embed(o) => (Kind::Embed, o),
            Command::EmbedSpec(o) => (Kind::EmbedSpec, o),
            Command::Semistable(o) => (Kind::Semistable, o),
            Command::Plucker(o) => (Kind::Plucker, o),
        }
    }
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Fft => "fft",
            Kind::Sft => "sft",
            Kind::Present => "present",
            Kind::Verify => "verify",
            Kind::Invariants => "invariants",
            Kind::Molien => "molien",
            Kind::PggCheck => "pgg-check",
            Kind::PggMin => "pgg-min",
            Kind::Embed => "embed",
            Kind::EmbedSpec => "embed-spec",
            Kind::Semistable => "semistable",
            Kind::Plucker => "plucker",
        }
    }
}

fn dispatch(kind: Kind, opts: &Opts) -> Result<Outcome, Error> {
    let params = Params::from_opts(kind, opts)?;
    macro_rules! over_primes {
        ($($p:literal),*) => {
            match opts.field.as_str() {
                "q" | "Q" => commands::run::<Q>(kind, &params),
                $(concat!("p", $p) => commands::run::<Fp<$p>>(kind, &params),)*
                other => Err(Error::Invalid(format!(
                    "unknown field `{other}`; use q or one of {}",
                    PRIMES.iter().map(|p| format!("p{p}")).collect::<Vec<_>>().join(", ")
                ))),
            }
        };
    }
    over_primes!(2, 3, 5, 7, 11, 13, 101, 32003)
}

fn emit(kind: Kind, opts: &Opts, mut body: Value) -> Result<(), String> {
    let mut doc = json!({ "schema_version": SCHEMA_VERSION, "command": kind.name(), "field": opts.field });
    if let (Value::Object(d), Value::Object(b)) = (&mut doc, &mut body) {
        d.append(b);
    }
    let mut text = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
    text.push('\n');
    match &opts.out {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let (kind, opts) = Cli::parse().command.split();
    if let Some(threads) = opts.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match dispatch(kind, &opts) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let code = if outcome.refuted { 1 } else { 0 };
    if let Err(e) = emit(kind, &opts, outcome.body) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_subcommand_parses() {
        for name in ["fft", "sft", "present", "verify", "invariants", "molien", "pgg-check", "pgg-min", "embed", "embed-spec", "semistable", "plucker"] {
            let cli = Cli::try_parse_from(["invrings", name, "--m", "2"]).unwrap();
            assert_eq!(cli.command.split().0.name(), name);
        }
    }

    #[test]
    fn prime_list_matches_dispatch() {
        let opts = |f: &str| Opts { field: f.into(), matrix: Some("[[1,0],[0,1]]".into()), ..Default::default() };
        for p in PRIMES {
            assert!(dispatch(Kind::Semistable, &opts(&format!("p{p}"))).is_ok(), "p{p}");
        }
        assert!(dispatch(Kind::Semistable, &opts("p4")).is_err());
    }
}
