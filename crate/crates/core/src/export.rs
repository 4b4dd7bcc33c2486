//! Serializable records for rings and their codes.
//!
//! Field elements are coordinate arrays over F_p; an element `a + ub` of R is
//! the pair `[a, b]`; polynomials are coefficient arrays, lowest degree first.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::ambient::AmbientRing;
use crate::codes::{self, CodeSpec};
use crate::error::{Error, Result};
use crate::gf::FieldElem;
use crate::poly::Poly;
use crate::ring_r::{RElem, RPoly};

pub type Coords = Vec<u32>;
pub type RCoords = [Coords; 2];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub p: u32,
    pub m: usize,
    pub modulus: Vec<u32>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub index: usize,
    pub degree: usize,
    pub f: Vec<Coords>,
    pub f_text: String,
    pub g: Vec<Coords>,
    pub g_text: String,
    pub h: Vec<RCoords>,
    pub h_text: String,
    pub eps: Vec<RCoords>,
    pub eps_text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientRecord {
    pub field: FieldRecord,
    pub s: u32,
    pub n: usize,
    pub length: usize,
    pub alpha: Coords,
    pub beta: Coords,
    pub alpha0: Coords,
    pub alpha0_text: String,
    pub lambda: RCoords,
    pub lambda_text: String,
    pub irreducible_case: bool,
    pub factors: Vec<FactorRecord>,
}

/// Self-duality verdict: a boolean, or a note when the ring exceeded the cap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SelfDual {
    Decided(bool),
    Undecided(String),
}

impl SelfDual {
    pub const TOO_LARGE: &'static str = "undecided(too large)";

    pub fn as_text(&self) -> String {
        match self {
            SelfDual::Decided(b) => b.to_string(),
            SelfDual::Undecided(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub exponents: Vec<u32>,
    pub log_cardinality: u64,
    pub cardinality: String,
    pub generator: Vec<RCoords>,
    pub generator_text: String,
    pub dual_exponents: Vec<u32>,
    pub self_dual: SelfDual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub ring: AmbientRecord,
    pub dual_lambda: RCoords,
    pub num_codes: u64,
    pub codes: Vec<CodeRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualPair {
    pub exponents: Vec<u32>,
    pub dual_exponents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualReport {
    pub ring: AmbientRecord,
    pub dual_ring: AmbientRecord,
    pub pairs: Vec<DualPair>,
}

fn elem(e: &FieldElem) -> Coords {
    e.coords().to_vec()
}

fn relem(e: &RElem) -> RCoords {
    [elem(&e.a), elem(&e.b)]
}

fn poly(f: &Poly) -> Vec<Coords> {
    f.coeffs().iter().map(elem).collect()
}

fn rpoly(f: &RPoly) -> Vec<RCoords> {
    f.coeffs().iter().map(relem).collect()
}

pub fn ambient_record(ring: &AmbientRing) -> AmbientRecord {
    let field = ring.field();
    let factors = ring
        .factors()
        .iter()
        .enumerate()
        .map(|(j, fd)| FactorRecord {
            index: j + 1,
            degree: fd.d,
            f: poly(&fd.f),
            f_text: fd.f.to_string(),
            g: poly(&fd.g),
            g_text: fd.g.to_string(),
            h: rpoly(&fd.h),
            h_text: fd.h.to_string(),
            eps: rpoly(&fd.eps),
            eps_text: fd.eps.to_string(),
        })
        .collect();
    AmbientRecord {
        field: FieldRecord {
            p: field.characteristic(),
            m: field.degree(),
            modulus: field.modulus().to_vec(),
            text: field.to_string(),
        },
        s: ring.s(),
        n: ring.n(),
        length: ring.length(),
        alpha: elem(ring.alpha()),
        beta: elem(ring.beta()),
        alpha0: elem(ring.alpha0()),
        alpha0_text: field.format_elem(ring.alpha0()),
        lambda: relem(ring.lambda()),
        lambda_text: ring.chain_ring().format(ring.lambda()),
        irreducible_case: ring.is_irreducible_case(),
        factors,
    }
}

/// `p^k` in decimal.
pub fn cardinality_decimal(p: u32, k: u64) -> String {
    BigUint::from(p).pow(k as u32).to_string()
}

fn self_dual_verdict(code: &CodeSpec, cap: u64) -> Result<SelfDual> {
    match code.is_self_dual(cap) {
        Ok(b) => Ok(SelfDual::Decided(b)),
        Err(Error::TooLarge(_)) => Ok(SelfDual::Undecided(SelfDual::TOO_LARGE.into())),
        Err(e) => Err(e),
    }
}

pub fn code_record(code: &CodeSpec, cap: u64) -> Result<CodeRecord> {
    let gen = code.generator();
    let k = code.log_cardinality();
    Ok(CodeRecord {
        exponents: code.exponents().to_vec(),
        log_cardinality: k,
        cardinality: cardinality_decimal(code.ring().field().characteristic(), k),
        generator: rpoly(&gen),
        generator_text: gen.to_string(),
        dual_exponents: code.dual()?.exponents().to_vec(),
        self_dual: self_dual_verdict(code, cap)?,
    })
}

/// Every code of the ring, in enumeration order.
pub fn classify(ring: &std::sync::Arc<AmbientRing>, cap: u64) -> Result<Classification> {
    let codes: Vec<CodeRecord> =
        codes::enumerate_codes(ring).map(|c| code_record(&c, cap)).collect::<Result<_>>()?;
    let dual = ring.dual()?;
    Ok(Classification {
        ring: ambient_record(ring),
        dual_lambda: relem(dual.lambda()),
        num_codes: codes.len() as u64,
        codes,
    })
}

pub fn dual_report(ring: &std::sync::Arc<AmbientRing>, only: Option<&CodeSpec>) -> Result<DualReport> {
    let dual = ring.dual()?;
    let pair = |c: &CodeSpec| -> Result<DualPair> {
        Ok(DualPair { exponents: c.exponents().to_vec(), dual_exponents: c.dual()?.exponents().to_vec() })
    };
    let pairs = match only {
        Some(c) => vec![pair(c)?],
        None => codes::enumerate_codes(ring).map(|c| pair(&c)).collect::<Result<_>>()?,
    };
    Ok(DualReport { ring: ambient_record(ring), dual_ring: ambient_record(&dual), pairs })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

pub fn exponents_text(e: &[u32]) -> String {
    let parts: Vec<String> = e.iter().map(|i| i.to_string()).collect();
    format!("({})", parts.join(","))
}

/// CSV with columns `exponents,log_card,generator,dual_exponents,self_dual`.
pub fn classification_csv(c: &Classification) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["exponents", "log_card", "generator", "dual_exponents", "self_dual"])
        .expect("in-memory write");
    for code in &c.codes {
        w.write_record([
            exponents_text(&code.exponents),
            code.log_cardinality.to_string(),
            code.generator_text.clone(),
            exponents_text(&code.dual_exponents),
            code.self_dual.as_text(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}
