//! Constacyclic codes as ideals of the ambient ring.
//!
//! Every ideal is `⊕_j ε_j ⟨f_j^{i_j}⟩` for a unique exponent vector with
//! `0 ≤ i_j ≤ 2p^s`; a [`CodeSpec`] is that vector.

use std::fmt;
use std::sync::Arc;

use crate::ambient::AmbientRing;
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::oracle;
use crate::ring_r::{ChainRing, RElem, RPoly};

#[derive(Clone, Debug)]
pub struct CodeSpec {
    ring: Arc<AmbientRing>,
    exponents: Vec<u32>,
}

impl PartialEq for CodeSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.exponents == other.exponents
    }
}

impl Eq for CodeSpec {}

/// An explicitly materialized code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodewordSet {
    pub length: usize,
    pub words: Vec<Vec<RElem>>,
}

impl CodeSpec {
    pub fn new(ring: &Arc<AmbientRing>, exponents: Vec<u32>) -> Result<CodeSpec> {
        let r = ring.num_factors();
        if exponents.len() != r {
            return Err(Error::InvalidParameter(format!(
                "exponent vector has {} entries, ring has {r} factors",
                exponents.len()
            )));
        }
        let top = 2 * ring.p_power() as u32;
        if let Some(&bad) = exponents.iter().find(|&&i| i > top) {
            return Err(Error::InvalidParameter(format!("exponent {bad} exceeds 2p^s = {top}")));
        }
        Ok(CodeSpec { ring: ring.clone(), exponents })
    }

    pub fn ring(&self) -> &Arc<AmbientRing> {
        &self.ring
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// `k` with `|C| = p^k`: `Σ_j d_j m (2p^s - i_j)`.
    pub fn log_cardinality(&self) -> u64 {
        let m = self.ring.field().degree() as u64;
        let top = 2 * self.ring.p_power() as u64;
        self.ring
            .factors()
            .iter()
            .zip(&self.exponents)
            .map(|(fd, &i)| fd.d as u64 * m * (top - i as u64))
            .sum()
    }

    /// `Σ_j ε_j f_j^{i_j}` reduced in the ambient ring.
    pub fn generator(&self) -> RPoly {
        let amb = &self.ring;
        let zero = RPoly::zero(amb.chain_ring());
        amb.factors().iter().zip(&self.exponents).fold(zero, |acc, (fd, &i)| {
            let power = amb.pow(&RPoly::from_poly(&fd.f), i as u64);
            &acc + &amb.mul(&fd.eps, &power)
        })
    }

    /// The dual code: exponents `2p^s - i_j` in the index-aligned dual ring.
    pub fn dual(&self) -> Result<CodeSpec> {
        let top = 2 * self.ring.p_power() as u32;
        let dual_ring = self.ring.dual()?;
        CodeSpec::new(&dual_ring, self.exponents.iter().map(|&i| top - i).collect())
    }

    /// F_p-basis of the code inside `F_p^{2mN}`.
    ///
    /// Spans `θ^k x^t g` and `θ^k u x^t g` over `0 ≤ t < N`, `0 ≤ k < m`:
    /// the code is an R-module, so field scalars and `u` are adjoined explicitly.
    pub fn basis(&self) -> Subspace {
        ideal_basis(self.ring.chain_ring(), self.ring.lambda(), &self.generator().to_word(self.ring.length()))
    }

    /// Every codeword, provided `|C| ≤ limit`.
    pub fn members(&self, limit: u64) -> Result<CodewordSet> {
        let basis = self.basis();
        materialize(self.ring.chain_ring(), self.ring.length(), &basis, limit)
    }

    pub fn contains(&self, word: &[RElem]) -> Result<bool> {
        let len = self.ring.length();
        if word.len() != len {
            return Err(Error::LengthMismatch { expected: len, actual: word.len() });
        }
        Ok(self.basis().contains(&word_to_fp(self.ring.chain_ring(), word)))
    }

    /// Self-duality as equality of `C` and `C^⊥` inside `R^N`.
    ///
    /// In the irreducible case this is `i = p^s`. Otherwise it is decided by
    /// comparing against the orthogonal complement, only while `|R|^N ≤ cap`.
    pub fn is_self_dual(&self, cap: u64) -> Result<bool> {
        if self.ring.is_irreducible_case() {
            return Ok(self.exponents[0] as usize == self.ring.p_power());
        }
        check_ring_cap(&self.ring, cap)?;
        let basis = self.basis();
        let perp = oracle::orthogonal_complement(self.ring.chain_ring(), self.ring.length(), &basis);
        Ok(basis == perp)
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All `(2p^s + 1)^r` codes, exponent vectors in lexicographic order.
pub fn enumerate_codes(ring: &Arc<AmbientRing>) -> impl Iterator<Item = CodeSpec> + '_ {
    let r = ring.num_factors();
    let top = 2 * ring.p_power() as u32;
    let total = (top as u64 + 1).pow(r as u32);
    (0..total).map(move |mut idx| {
        let mut exps = vec![0u32; r];
        for slot in exps.iter_mut().rev() {
            *slot = (idx % (top as u64 + 1)) as u32;
            idx /= top as u64 + 1;
        }
        CodeSpec { ring: ring.clone(), exponents: exps }
    })
}

/// Errors with `TooLarge` unless `|R|^N = p^{2mN} ≤ cap`.
pub fn check_ring_cap(ring: &AmbientRing, cap: u64) -> Result<()> {
    let p = ring.field().characteristic() as u64;
    let size = u32::try_from(ring.log_size()).ok().and_then(|e| p.checked_pow(e));
    match size {
        Some(sz) if sz <= cap => Ok(()),
        _ => Err(Error::TooLarge(format!("ambient ring has p^{} elements, cap is {cap}", ring.log_size()))),
    }
}

/// Flattens a word of R^N to F_p^{2mN}, coordinate by coordinate.
pub fn word_to_fp(ring: &ChainRing, word: &[RElem]) -> Vec<u32> {
    let mut out = Vec::with_capacity(word.len() * 2 * ring.field().degree());
    for x in word {
        ring.to_fp(x, &mut out);
    }
    out
}

pub fn fp_to_word(ring: &ChainRing, v: &[u32]) -> Result<Vec<RElem>> {
    let chunk = 2 * ring.field().degree();
    v.chunks(chunk).map(|c| ring.from_fp(c)).collect()
}

/// Multiplication by `x` in R[x]/(x^N - λ): `(w_0..w_{N-1}) ↦ (λ w_{N-1}, w_0, .., w_{N-2})`.
pub fn constacyclic_shift(ring: &ChainRing, lambda: &RElem, word: &[RElem]) -> Vec<RElem> {
    let n = word.len();
    let mut out = Vec::with_capacity(n);
    out.push(ring.mul(lambda, &word[n - 1]));
    out.extend_from_slice(&word[..n - 1]);
    out
}

/// F_p-basis of the principal ideal generated by `word` in R[x]/(x^N - λ).
pub fn ideal_basis(ring: &ChainRing, lambda: &RElem, word: &[RElem]) -> Subspace {
    let field = ring.field();
    let m = field.degree();
    let p = field.characteristic();
    let scalars: Vec<_> = (0..m).map(|k| field.basis_elem(k)).collect();
    let mut vectors = Vec::with_capacity(2 * m * word.len());
    let mut cur = word.to_vec();
    for _ in 0..word.len() {
        let with_u: Vec<RElem> = cur.iter().map(|x| ring.mul_u(x)).collect();
        for w in [&cur, &with_u] {
            for c in &scalars {
                let scaled: Vec<RElem> = w.iter().map(|x| ring.mul_field(c, x)).collect();
                vectors.push(word_to_fp(ring, &scaled));
            }
        }
        cur = constacyclic_shift(ring, lambda, &cur);
    }
    Subspace::span(p, 2 * m * word.len(), vectors)
}

/// Lists the words of a subspace, provided it has at most `limit` elements.
pub fn materialize(ring: &ChainRing, len: usize, space: &Subspace, limit: u64) -> Result<CodewordSet> {
    let p = ring.field().characteristic() as u64;
    let size = u32::try_from(space.dim()).ok().and_then(|d| p.checked_pow(d));
    match size {
        Some(sz) if sz <= limit => {}
        _ => return Err(Error::TooLarge(format!("code has p^{} words, limit is {limit}", space.dim()))),
    }
    let words = space.elements().map(|v| fp_to_word(ring, &v)).collect::<Result<Vec<_>>>()?;
    Ok(CodewordSet { length: len, words })
}

impl CodewordSet {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: &[RElem]) -> bool {
        self.words.iter().any(|w| w == word)
    }

    pub fn span(&self, ring: &ChainRing) -> Subspace {
        let dim = 2 * ring.field().degree() * self.length;
        let vectors = self.words.iter().map(|w| word_to_fp(ring, w)).collect();
        Subspace::span(ring.field().characteristic(), dim, vectors)
    }

    /// Same words regardless of order.
    pub fn set_eq(&self, other: &CodewordSet) -> bool {
        use std::collections::HashSet;
        let a: HashSet<&Vec<RElem>> = self.words.iter().collect();
        let b: HashSet<&Vec<RElem>> = other.words.iter().collect();
        self.length == other.length && a == b
    }
}
