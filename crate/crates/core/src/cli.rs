//! The `dyform` command line.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::charsums::{
    alpha_of, beta_of, char_sp, endoscopy_check, kloosterman, kloosterman_fast, twisted_char, CharParams,
};
use crate::conductor::{gamma_report, swan_split, gamma_abs, ParamSpec};
use crate::dring::{RingSpec, DEFAULT_PRECISION};
use crate::error::{Error, Result};
use crate::gf2::FieldSpec;
use crate::matgrp::{make_g, make_h, Mat};
use crate::matrix_io::parse_matrix;
use crate::suites::{self, parse_suites, RunConfig};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "dyform", version, about = "Character sums and Iwahori matrices over dyadic Galois rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run verification suites and write a JSON report.
    Verify(VerifyArgs),
    /// Evaluate a single Kloosterman sum.
    Kl(KlArgs),
    /// Character of the Sp_2n representation at a matrix (default: h_u).
    Char(CharArgs),
    /// Twisted character of the GL_(2n+1) representation at a matrix (default: g_u).
    Twisted(CharArgs),
    /// Compare both characters at (g_u, h_u) for all u, a.
    Endoscopy(EndoscopyArgs),
    /// Conductor and gamma-factor bookkeeping.
    Conductor(ConductorArgs),
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Residue degree: the field has 2^f elements.
    #[arg(long, default_value_t = 2)]
    pub f: u32,
    /// Field modulus as an integer bit pattern (default: least irreducible).
    #[arg(long)]
    pub modulus: Option<u64>,
}

impl FieldArgs {
    fn field(&self) -> Result<Arc<FieldSpec>> {
        Ok(Arc::new(FieldSpec::new(self.f, self.modulus)?))
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// `all` or a comma-separated subset of gf2,dring,matgrp,charsums,conductor,endoscopy.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = 3)]
    pub n_max: usize,
    /// Working precision: computations are modulo 2^m.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub m: u32,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Report path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the checks table as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Append a deliberately broken check.
    #[arg(long)]
    pub negative_control: bool,
}

#[derive(Debug, Args)]
pub struct KlArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Number of factors N.
    #[arg(long)]
    pub big_n: u32,
    /// Point x: `0`, `1`, `g` or `g^k`.
    #[arg(long)]
    pub x: String,
    /// Use direct enumeration instead of the convolution table.
    #[arg(long)]
    pub brute: bool,
}

#[derive(Debug, Args)]
pub struct CharArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub m: u32,
    #[arg(long)]
    pub n: usize,
    /// Representation parameter a.
    #[arg(long, default_value = "1")]
    pub a: String,
    /// Parameter u of the built-in element.
    #[arg(long, default_value = "1")]
    pub u: String,
    /// Matrix JSON file to evaluate instead of the built-in element.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EndoscopyArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub m: u32,
    #[arg(long, default_value_t = 2)]
    pub n_max: usize,
}

#[derive(Debug, Args)]
pub struct ConductorArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = 2)]
    pub q: u64,
    /// Print every invariant, not just the headline three.
    #[arg(long)]
    pub full: bool,
}

/// Runs a parsed command, writing results to `out`; returns the exit code.
pub fn execute(cli: Cli, out: &mut dyn std::io::Write) -> Result<i32> {
    match cli.command {
        Command::Verify(args) => verify(args, out),
        Command::Kl(args) => {
            let field = args.field.field()?;
            let x = field.parse_elem(&args.x)?;
            let v = if args.brute {
                kloosterman(args.big_n, x, &field)?
            } else {
                kloosterman_fast(args.big_n, x, &field)?
            };
            writeln!(out, "{v}").map_err(io)?;
            Ok(EXIT_PASS)
        }
        Command::Char(args) => character(args, false, out),
        Command::Twisted(args) => character(args, true, out),
        Command::Endoscopy(args) => endoscopy(args, out),
        Command::Conductor(args) => {
            let spec = ParamSpec::new(args.n, args.q)?;
            let v = if args.full {
                let r = gamma_report(&spec);
                json!({
                    "artin_rs": r.artin_rs,
                    "swan_ad": r.swan_ad,
                    "artin_ad": r.artin_ad,
                    "gamma": gamma_abs(args.n, args.q).to_string(),
                    "gamma_abs_log_q": r.gamma_abs_log_q.to_string(),
                    "formal_degree_log_q": r.formal_degree_log_q.to_string(),
                    "depth_group": r.depth_group.to_string(),
                    "depth_parameter": r.depth_parameter.to_string(),
                })
            } else {
                json!({
                    "artin_rs": crate::conductor::artin_rankin_selberg(args.n),
                    "swan_ad": swan_split(args.n).swan_wedge,
                    "gamma": gamma_abs(args.n, args.q).to_string(),
                })
            };
            writeln!(out, "{v}").map_err(io)?;
            Ok(EXIT_PASS)
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Usage(format!("write failed: {e}"))
}

fn verify(args: VerifyArgs, out: &mut dyn std::io::Write) -> Result<i32> {
    let config = RunConfig {
        f: args.field.f,
        modulus: args.field.modulus,
        m: args.m,
        n_max: args.n_max,
        samples: args.samples,
        seed: args.seed,
        suites: parse_suites(&args.suite)?,
        negative_control: args.negative_control,
    };
    let report = suites::run(config)?;
    let json = report.to_json();
    match &args.out {
        Some(path) => std::fs::write(path, json + "\n").map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?,
        None => writeln!(out, "{json}").map_err(io)?,
    }
    if let Some(path) = &args.csv {
        std::fs::write(path, report.to_csv()).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
    }
    let s = report.summary;
    eprintln!("pass {} fail {} skip {}", s.pass, s.fail, s.skip);
    Ok(if report.passed() { EXIT_PASS } else { EXIT_FAIL })
}

fn ring(field: Arc<FieldSpec>, m: u32) -> Result<Arc<RingSpec>> {
    Ok(Arc::new(RingSpec::new(field, m)?))
}

fn character(args: CharArgs, twisted: bool, out: &mut dyn std::io::Write) -> Result<i32> {
    let field = args.field.field()?;
    let r = ring(field.clone(), args.m)?;
    let a = field.parse_elem(&args.a)?;
    let params = CharParams::new(args.n, a)?;
    let x: Mat = match &args.matrix {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
            parse_matrix(&text, &r)?
        }
        None => {
            let u = field.parse_elem(&args.u)?;
            if twisted {
                make_g(args.n, u, &r)?
            } else {
                make_h(args.n, u, &r)?
            }
        }
    };
    let (value, point) = if twisted {
        (twisted_char(&x, &params)?, alpha_of(&x, &params)?)
    } else {
        (char_sp(&x, &params)?, beta_of(&x, &params)?)
    };
    let key = if twisted { "alpha" } else { "beta" };
    let v = json!({"value": value.0, key: field.format_elem(point)});
    writeln!(out, "{v}").map_err(io)?;
    Ok(EXIT_PASS)
}

fn endoscopy(args: EndoscopyArgs, out: &mut dyn std::io::Write) -> Result<i32> {
    let field = args.field.field()?;
    let r = ring(field.clone(), args.m)?;
    let mut all = true;
    for n in 1..=args.n_max {
        let mut rows: Vec<Value> = Vec::new();
        for u in field.units() {
            for a in field.units() {
                let rep = endoscopy_check(n, u, a, &r)?;
                all &= rep.holds();
                rows.push(json!({
                    "n": n,
                    "u": field.format_elem(u),
                    "a": field.format_elem(a),
                    "value": rep.kloosterman.0,
                    "holds": rep.holds(),
                }));
            }
        }
        for row in rows {
            writeln!(out, "{row}").map_err(io)?;
        }
    }
    Ok(if all { EXIT_PASS } else { EXIT_FAIL })
}

/// Exit code for an error: all library errors surfacing here stem from
/// invalid input.
pub fn error_code(_: &Error) -> i32 {
    EXIT_USAGE
}
