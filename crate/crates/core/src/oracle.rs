//! Brute-force verification at desk scale.
//!
//! The oracle enumerates every element `g` of `R[x]/(x^N - λ)`, closes it to
//! the principal ideal `⟨g⟩` and deduplicates by canonical F_p-basis. Only
//! principal ideals are produced. That is exhaustive here because the ambient
//! ring is a finite product of chain rings, and [`verify_ring`] guards the
//! assumption by comparing the count against `(2p^s + 1)^r`.

use std::collections::HashSet;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ambient::AmbientRing;
use crate::codes::{self, CodeSpec, CodewordSet};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::Subspace;
use crate::ring_r::{ChainRing, RElem};

/// Default bound on the number of ring elements the oracle will enumerate.
pub const DEFAULT_CAP: u64 = 1_000_000;

/// `R[x]/(x^N - λ)` with every element addressable by index.
#[derive(Clone, Debug)]
pub struct TinyRing {
    ring: ChainRing,
    len: usize,
    lambda: RElem,
    size: u64,
}

impl TinyRing {
    pub fn new(field: &Arc<Field>, len: usize, lambda: RElem, cap: u64) -> Result<TinyRing> {
        if !lambda.is_unit() {
            return Err(Error::NonUnit);
        }
        let p = field.characteristic() as u64;
        let coords = 2 * field.degree() * len;
        let size = u32::try_from(coords)
            .ok()
            .and_then(|e| p.checked_pow(e))
            .filter(|&sz| sz <= cap)
            .ok_or_else(|| Error::TooLarge(format!("p^{coords} ring elements exceed cap {cap}")))?;
        Ok(TinyRing { ring: ChainRing::new(field.clone()), len, lambda, size })
    }

    pub fn chain_ring(&self) -> &ChainRing {
        &self.ring
    }

    /// Word length N.
    pub fn length(&self) -> usize {
        self.len
    }

    pub fn lambda(&self) -> &RElem {
        &self.lambda
    }

    /// Number of elements, `p^{2mN}`.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// Element number `idx`, decoded as base-`p` digits of its F_p coordinates.
    pub fn element(&self, mut idx: u64) -> Vec<RElem> {
        let p = self.ring.field().characteristic() as u64;
        let chunk = 2 * self.ring.field().degree();
        let digits: Vec<u32> = (0..chunk * self.len)
            .map(|_| {
                let d = (idx % p) as u32;
                idx /= p;
                d
            })
            .collect();
        digits.chunks(chunk).map(|c| self.ring.from_fp(c).expect("digits are reduced")).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<RElem>> + '_ {
        (0..self.size).map(|i| self.element(i))
    }

    /// Schoolbook product with wrap-around `x^N = λ`.
    pub fn mul(&self, a: &[RElem], b: &[RElem]) -> Vec<RElem> {
        let r = &self.ring;
        let mut out = vec![r.zero(); self.len];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                let mut t = r.mul(x, y);
                let mut k = i + j;
                while k >= self.len {
                    t = r.mul(&t, &self.lambda);
                    k -= self.len;
                }
                out[k] = r.add(&out[k], &t);
            }
        }
        out
    }

    /// `τ_λ`.
    pub fn shift(&self, w: &[RElem]) -> Vec<RElem> {
        codes::constacyclic_shift(&self.ring, &self.lambda, w)
    }

    /// Canonical basis of `⟨g⟩`.
    pub fn ideal(&self, g: &[RElem]) -> Subspace {
        codes::ideal_basis(&self.ring, &self.lambda, g)
    }

    pub fn to_fp(&self, w: &[RElem]) -> Vec<u32> {
        codes::word_to_fp(&self.ring, w)
    }
}

/// Every distinct principal ideal, sorted by dimension (largest first) then basis.
pub fn enumerate_ideals(ring: &TinyRing) -> Vec<Subspace> {
    let found: HashSet<Subspace> = (0..ring.size())
        .into_par_iter()
        .fold(HashSet::new, |mut acc, i| {
            acc.insert(ring.ideal(&ring.element(i)));
            acc
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let mut out: Vec<Subspace> = found.into_iter().collect();
    out.sort_by(|a, b| b.dim().cmp(&a.dim()).then_with(|| a.cmp(b)));
    out
}

/// `{ b ∈ R^N : a · b = 0 for all a ∈ space }` for the Euclidean inner product over R.
///
/// Each basis vector `c` gives `2m` F_p-linear conditions, one per coordinate
/// of `Σ_i c_i b_i`; the complement is their common kernel.
pub fn orthogonal_complement(ring: &ChainRing, len: usize, space: &Subspace) -> Subspace {
    let field = ring.field();
    let m = field.degree();
    let width = 2 * m;
    let units: Vec<RElem> = (0..width)
        .map(|k| {
            if k < m {
                ring.embed(field.basis_elem(k))
            } else {
                ring.elem(field.zero(), field.basis_elem(k - m))
            }
        })
        .collect();
    let mut constraints = Vec::with_capacity(space.dim() * width);
    let mut prod = Vec::with_capacity(width);
    for row in space.rows() {
        let word = codes::fp_to_word(ring, row).expect("basis vectors are reduced");
        let mut block = vec![vec![0u32; width * len]; width];
        for (i, c) in word.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, e) in units.iter().enumerate() {
                prod.clear();
                ring.to_fp(&ring.mul(c, e), &mut prod);
                for (o, &val) in prod.iter().enumerate() {
                    block[o][i * width + k] = val;
                }
            }
        }
        constraints.extend(block);
    }
    Subspace::kernel(field.characteristic(), width * len, constraints)
}

/// Orthogonal complement of an explicit word list, materialized (at most `cap` words).
pub fn brute_dual(ring: &ChainRing, words: &CodewordSet, cap: u64) -> Result<CodewordSet> {
    let perp = orthogonal_complement(ring, words.length, &words.span(ring));
    codes::materialize(ring, words.length, &perp, cap)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Wall-clock time of the check.
    pub millis: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub field: String,
    pub s: u32,
    pub n: usize,
    pub length: usize,
    pub lambda: String,
    pub ring_elements: u64,
    pub num_factors: usize,
    pub irreducible_case: bool,
    pub expected_ideals: u64,
    pub oracle_ideals: usize,
    /// Exponent vectors of codes equal to their own orthogonal complement.
    pub self_dual: Vec<Vec<u32>>,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Checks(Vec<CheckResult>);

impl Checks {
    fn record(&mut self, name: &str, started: Instant, failures: Vec<String>, ok_detail: String) {
        let passed = failures.is_empty();
        let detail = if passed { ok_detail } else { failures.join("; ") };
        let millis = started.elapsed().as_millis() as u64;
        self.0.push(CheckResult { name: name.to_string(), passed, detail, millis });
    }
}

/// Cross-checks the whole classification of `ring` against exhaustive enumeration.
pub fn verify_ring(ring: &Arc<AmbientRing>, cap: u64) -> Result<VerificationReport> {
    let tiny = TinyRing::new(ring.field(), ring.length(), ring.lambda().clone(), cap)?;
    let chain = ring.chain_ring();
    let len = ring.length();
    let full_log = ring.log_size();
    let mut checks = Checks(Vec::new());

    let t = Instant::now();
    let ideals = enumerate_ideals(&tiny);
    let codes: Vec<CodeSpec> = codes::enumerate_codes(ring).collect();
    let expected = codes.len() as u64;
    let mut fails = Vec::new();
    if ideals.len() as u64 != expected {
        fails.push(format!("oracle found {} ideals, expected {expected}", ideals.len()));
    }
    checks.record("ideal_count", t, fails, format!("{} ideals", ideals.len()));

    let t = Instant::now();
    let bases: Vec<Subspace> = codes.par_iter().map(|c| c.basis()).collect();
    let oracle_set: HashSet<&Subspace> = ideals.iter().collect();
    let mut seen = HashSet::new();
    let mut fails = Vec::new();
    for (code, basis) in codes.iter().zip(&bases) {
        if !oracle_set.contains(basis) {
            fails.push(format!("code {code} is not an oracle ideal"));
        }
        if !seen.insert(basis) {
            fails.push(format!("code {code} duplicates an earlier code"));
        }
    }
    checks.record("ideals_match_codes", t, fails, "every oracle ideal is exactly one code".into());

    let t = Instant::now();
    let mut fails = Vec::new();
    for (code, basis) in codes.iter().zip(&bases) {
        if basis.dim() as u64 != code.log_cardinality() {
            fails.push(format!("code {code}: |C| = p^{}, predicted p^{}", basis.dim(), code.log_cardinality()));
        }
    }
    checks.record("cardinalities", t, fails, "|C| = p^{Σ d_j m (2p^s - i_j)} for all codes".into());

    let t = Instant::now();
    let perps: Vec<Subspace> = bases.par_iter().map(|b| orthogonal_complement(chain, len, b)).collect();
    let mut dual_fails = Vec::new();
    let mut size_fails = Vec::new();
    for ((code, basis), perp) in codes.iter().zip(&bases).zip(&perps) {
        let dual = code.dual()?;
        if dual.basis() != *perp {
            dual_fails.push(format!("code {code}: predicted dual {dual} differs from the complement"));
        }
        if code.log_cardinality() + dual.log_cardinality() != full_log || basis.dim() + perp.dim() != full_log as usize {
            size_fails.push(format!("code {code}: log|C| + log|C^⊥| != {full_log}"));
        }
    }
    checks.record("dual_formula", t, dual_fails, "C^⊥ = code with exponents 2p^s - i_j in the dual ring".into());
    checks.record("size_identity", t, size_fails, format!("log|C| + log|C^⊥| = {full_log}"));

    let self_dual: Vec<Vec<u32>> = codes
        .iter()
        .zip(&bases)
        .zip(&perps)
        .filter(|((_, b), q)| b == q)
        .map(|((c, _), _)| c.exponents().to_vec())
        .collect();

    if ring.is_irreducible_case() {
        let t = Instant::now();
        let mut fails = Vec::new();
        for (i, pair) in bases.windows(2).enumerate() {
            if !(pair[1].is_subspace_of(&pair[0]) && pair[1].dim() < pair[0].dim()) {
                fails.push(format!("⟨f^{}⟩ is not strictly inside ⟨f^{i}⟩", i + 1));
            }
        }
        checks.record("strict_chain", t, fails, format!("{} ideals in a strict chain", bases.len()));

        let t = Instant::now();
        let mut u_word = vec![chain.zero(); len];
        u_word[0] = chain.u();
        let u_ideal = tiny.ideal(&u_word);
        let ps = ring.p_power() as u32;
        let mut fails = Vec::new();
        if self_dual != vec![vec![ps]] {
            fails.push(format!("self-dual codes {self_dual:?}, expected only [{ps}]"));
        }
        if bases[ps as usize] != u_ideal {
            fails.push("⟨(x^n - α₀)^{p^s}⟩ != ⟨u⟩".into());
        }
        for (code, basis) in codes.iter().zip(&bases) {
            if code.is_self_dual(cap)? != (*basis == orthogonal_complement(chain, len, basis)) {
                fails.push(format!("closed-form self-duality disagrees for {code}"));
            }
        }
        checks.record("unique_self_dual", t, fails, "⟨u⟩ is the only self-dual code".into());
    }

    let checks = checks.0;
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerificationReport {
        field: ring.field().to_string(),
        s: ring.s(),
        n: ring.n(),
        length: len,
        lambda: chain.format(ring.lambda()),
        ring_elements: tiny.size(),
        num_factors: ring.num_factors(),
        irreducible_case: ring.is_irreducible_case(),
        expected_ideals: expected,
        oracle_ideals: ideals.len(),
        self_dual,
        checks,
        passed,
    })
}
