//! Command execution behind the `constacode` binary.
//!
//! [`run`] never panics on user input and never prints; it returns the text
//! to write and the process exit code.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::ambient::AmbientRing;
use crate::codes::CodeSpec;
use crate::error::{Error, Result};
use crate::export::{self, AmbientRecord, Classification, DualReport};
use crate::gf::{Field, FieldElem};
use crate::oracle::{self, VerificationReport};
use crate::poly::DEFAULT_SEED;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_TOO_LARGE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Factor,
    Codes,
    Dual,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::InvalidParameter(format!("unknown output format '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub p: u32,
    pub m: usize,
    pub s: u32,
    pub n: usize,
    /// Coordinates of α over F_p, lowest first; a single value is an element of F_p.
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub modulus: Option<Vec<u32>>,
    pub output: OutputFormat,
    pub cap: u64,
    pub seed: u64,
    /// `dual` only: restrict the report to this code.
    pub exponents: Option<Vec<u32>>,
}

impl RunConfig {
    pub fn new(command: Command, p: u32, m: usize, s: u32, n: usize, alpha: Vec<u32>, beta: Vec<u32>) -> RunConfig {
        RunConfig {
            command,
            p,
            m,
            s,
            n,
            alpha,
            beta,
            modulus: None,
            output: OutputFormat::Table,
            cap: oracle::DEFAULT_CAP,
            seed: DEFAULT_SEED,
            exponents: None,
        }
    }

    /// Validates every parameter and builds the ambient ring.
    pub fn build_ring(&self) -> Result<Arc<AmbientRing>> {
        let field = Field::new(self.p, self.m, self.modulus.clone())?;
        let alpha = literal(&field, "alpha", &self.alpha)?;
        let beta = literal(&field, "beta", &self.beta)?;
        AmbientRing::build_with_seed(&field, self.s, self.n, &alpha, &beta, self.seed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

/// Parses `"3"` or `"1,0,2"` into coordinates.
pub fn parse_literal(text: &str) -> Result<Vec<u32>> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::InvalidParameter(format!("malformed literal '{text}'")));
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<u32>()
                .map_err(|_| Error::InvalidParameter(format!("'{p}' in literal '{text}' is not a nonnegative integer")))
        })
        .collect()
}

fn literal(field: &Arc<Field>, name: &str, coords: &[u32]) -> Result<FieldElem> {
    let e = field
        .from_coords(coords)
        .map_err(|e| Error::InvalidParameter(format!("{name}: {e}")))?;
    if e.is_zero() {
        return Err(Error::InvalidParameter(format!("{name} must be a nonzero field element")));
    }
    Ok(e)
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::TooLarge(_) => EXIT_TOO_LARGE,
        Error::ConsistencyFailure(_) => EXIT_VERIFY_FAILED,
        _ => EXIT_BAD_INPUT,
    }
}

pub fn run(cfg: &RunConfig) -> CommandOutput {
    match execute(cfg) {
        Ok((stdout, exit_code)) => CommandOutput { stdout, stderr: String::new(), exit_code },
        Err(e) => CommandOutput { stdout: String::new(), stderr: format!("error: {e}\n"), exit_code: exit_code(&e) },
    }
}

fn execute(cfg: &RunConfig) -> Result<(String, i32)> {
    if cfg.output == OutputFormat::Csv && cfg.command != Command::Codes {
        return Err(Error::InvalidParameter("csv output is only available for the codes command".into()));
    }
    if cfg.exponents.is_some() && cfg.command != Command::Dual {
        return Err(Error::InvalidParameter("--exponents only applies to the dual command".into()));
    }
    let ring = cfg.build_ring()?;
    match cfg.command {
        Command::Factor => {
            let rec = export::ambient_record(&ring);
            Ok((render(cfg.output, &rec, factor_table), EXIT_OK))
        }
        Command::Codes => {
            check_code_count(&ring, cfg.cap)?;
            let c = export::classify(&ring, cfg.cap)?;
            let text = match cfg.output {
                OutputFormat::Csv => export::classification_csv(&c),
                f => render(f, &c, codes_table),
            };
            Ok((text, EXIT_OK))
        }
        Command::Dual => {
            let only = match &cfg.exponents {
                Some(e) => Some(CodeSpec::new(&ring, e.clone())?),
                None => {
                    check_code_count(&ring, cfg.cap)?;
                    None
                }
            };
            let rep = export::dual_report(&ring, only.as_ref())?;
            Ok((render(cfg.output, &rep, dual_table), EXIT_OK))
        }
        Command::Verify => {
            let rep = oracle::verify_ring(&ring, cfg.cap)?;
            let code = if rep.passed { EXIT_OK } else { EXIT_VERIFY_FAILED };
            Ok((render(cfg.output, &rep, verify_table), code))
        }
    }
}

fn check_code_count(ring: &AmbientRing, cap: u64) -> Result<()> {
    let per = 2 * ring.p_power() as u64 + 1;
    let count = per.checked_pow(ring.num_factors() as u32);
    match count {
        Some(c) if c <= cap => Ok(()),
        _ => Err(Error::TooLarge(format!(
            "{per}^{} codes exceed the cap of {cap}",
            ring.num_factors()
        ))),
    }
}

fn render<T: serde::Serialize>(format: OutputFormat, value: &T, table: fn(&T) -> String) -> String {
    match format {
        OutputFormat::Json => export::to_json(value),
        _ => table(value),
    }
}

fn ring_header(out: &mut String, r: &AmbientRecord) {
    let _ = writeln!(out, "field      {}", r.field.text);
    let _ = writeln!(out, "length     {} (n = {}, s = {})", r.length, r.n, r.s);
    let _ = writeln!(out, "lambda     {}", r.lambda_text);
    let _ = writeln!(out, "alpha0     {}", r.alpha0_text);
    let case = if r.irreducible_case { "irreducible" } else { "reducible" };
    let _ = writeln!(out, "factors    {} ({case} case)", r.factors.len());
}

fn factor_table(r: &AmbientRecord) -> String {
    let mut out = String::new();
    ring_header(&mut out, r);
    for f in &r.factors {
        let _ = writeln!(out, "  [{}] d = {}", f.index, f.degree);
        let _ = writeln!(out, "      f = {}", f.f_text);
        let _ = writeln!(out, "      g = {}", f.g_text);
        let _ = writeln!(out, "      h = {}", f.h_text);
    }
    out
}

fn codes_table(c: &Classification) -> String {
    let mut out = String::new();
    ring_header(&mut out, &c.ring);
    let _ = writeln!(out, "codes      {}", c.num_codes);
    let _ = writeln!(out);
    let _ = writeln!(out, "{:<14} {:>8} {:<14} {:<20} generator", "exponents", "log_p|C|", "dual", "self_dual");
    for code in &c.codes {
        let _ = writeln!(
            out,
            "{:<14} {:>8} {:<14} {:<20} {}",
            export::exponents_text(&code.exponents),
            code.log_cardinality,
            export::exponents_text(&code.dual_exponents),
            code.self_dual.as_text(),
            code.generator_text
        );
    }
    out
}

fn dual_table(d: &DualReport) -> String {
    let mut out = String::new();
    ring_header(&mut out, &d.ring);
    let _ = writeln!(out, "dual lambda {}", d.dual_ring.lambda_text);
    for (f, g) in d.ring.factors.iter().zip(&d.dual_ring.factors) {
        let _ = writeln!(out, "  [{}] {}  ->  {}", f.index, f.f_text, g.f_text);
    }
    let _ = writeln!(out);
    for pair in &d.pairs {
        let _ = writeln!(
            out,
            "{} -> {}",
            export::exponents_text(&pair.exponents),
            export::exponents_text(&pair.dual_exponents)
        );
    }
    out
}

fn verify_table(r: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "field      {}", r.field);
    let _ = writeln!(out, "length     {} (n = {}, s = {})", r.length, r.n, r.s);
    let _ = writeln!(out, "lambda     {}", r.lambda);
    let _ = writeln!(out, "elements   {}", r.ring_elements);
    let _ = writeln!(out, "ideals     {} found, {} predicted", r.oracle_ideals, r.expected_ideals);
    let sd: Vec<String> = r.self_dual.iter().map(|e| export::exponents_text(e)).collect();
    let _ = writeln!(out, "self-dual  {}", if sd.is_empty() { "none".to_string() } else { sd.join(" ") });
    for c in &r.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{mark} {:<20} {} ({} ms)", c.name, c.detail, c.millis);
    }
    let _ = writeln!(out, "{}", if r.passed { "verification passed" } else { "verification FAILED" });
    out
}
