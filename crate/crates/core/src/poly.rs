//! Dense univariate polynomials over F_{p^m}.
//!
//! Besides ring arithmetic this module provides extended Euclid with reduced
//! Bézout cofactors, complete factorization into monic irreducibles
//! (squarefree split, distinct-degree split, then Cantor–Zassenhaus), the
//! binomial irreducibility criterion and reciprocal polynomials.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};

/// Seed used by equal-degree splitting unless the caller supplies one.
pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

/// Ring operations accepted by [`Poly::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// A polynomial over a finite field, lowest coefficient first, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Arc<Field>,
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn new(field: Arc<Field>, mut coeffs: Vec<FieldElem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    /// Polynomial with prime-subfield coefficients given as integers.
    pub fn from_ints(field: &Arc<Field>, coeffs: &[i64]) -> Poly {
        Poly::new(field.clone(), coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Arc<Field>) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Arc<Field>) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn x(field: &Arc<Field>) -> Poly {
        Poly::monomial(field, field.one(), 1)
    }

    pub fn constant(field: &Arc<Field>, c: FieldElem) -> Poly {
        Poly::new(field.clone(), vec![c])
    }

    pub fn monomial(field: &Arc<Field>, c: FieldElem, k: usize) -> Poly {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Poly::new(field.clone(), coeffs)
    }

    /// `x^n - a`.
    pub fn binomial(field: &Arc<Field>, n: usize, a: &FieldElem) -> Poly {
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[n] = field.one();
        coeffs[0] = field.sub(&coeffs[0], a);
        Poly::new(field.clone(), coeffs)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| *c == self.field.one())
    }

    pub fn constant_term(&self) -> FieldElem {
        self.coeff(0)
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Checked ring operation.
    pub fn arith(&self, other: &Poly, op: PolyOp) -> Result<Poly> {
        self.check_field(other)?;
        Ok(match op {
            PolyOp::Add => self + other,
            PolyOp::Sub => self - other,
            PolyOp::Mul => self * other,
        })
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|x| f.mul(x, c)).collect())
    }

    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { field: self.field.clone(), coeffs }
    }

    /// Quotient and remainder; `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(divisor)?;
        let f = &self.field;
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(divisor.lead().unwrap())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - db];
        for i in (db..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = f.mul(&rem[i], &lead_inv);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let t = f.mul(&c, d);
                rem[i - db + j] = f.sub(&rem[i - db + j], &t);
            }
            quot[i - db] = c;
        }
        rem.truncate(db);
        Ok((Poly::new(f.clone(), quot), Poly::new(f.clone(), rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(divisor)?;
        if !r.is_zero() {
            return Err(Error::ConsistencyFailure(format!("{divisor} does not divide {self}")));
        }
        Ok(q)
    }

    /// Scales to a monic polynomial, returning the removed leading coefficient.
    pub fn make_monic(&self) -> Result<(FieldElem, Poly)> {
        let lead = self.lead().ok_or(Error::ZeroPolynomial)?.clone();
        let inv = self.field.inv(&lead)?;
        Ok((lead, self.scale(&inv)))
    }

    pub fn pow(&self, mut exp: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^exp mod modulus`.
    pub fn pow_mod(&self, mut exp: u64, modulus: &Poly) -> Result<Poly> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(&self.field).rem(modulus)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = (&acc * &base).rem(modulus)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = (&base * &base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.scale((i as u64 % f.characteristic() as u64) as u32, c))
            .collect();
        Poly::new(f.clone(), coeffs)
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        Ok(self.xgcd(other)?.0)
    }

    /// Extended Euclid: `(g, s, t)` with `g` monic, `s*self + t*other = g`.
    ///
    /// When `other` is non-constant the cofactors are reduced so that
    /// `deg s < deg other`, and then `deg t < deg self` whenever `g = 1`.
    pub fn xgcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.check_field(other)?;
        let f = &self.field;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let (lead, g) = r0.make_monic()?;
        let inv = f.inv(&lead)?;
        let mut s = s0.scale(&inv);
        let mut t = t0.scale(&inv);
        if other.degree().is_some_and(|d| d > 0) {
            let (k, s_red) = s.divmod(other)?;
            t = &t + &(&k * self);
            s = s_red;
        }
        Ok((g, s, t))
    }

    /// Inverse of `self` modulo `modulus`, if they are coprime.
    pub fn inverse_mod(&self, modulus: &Poly) -> Result<Option<Poly>> {
        let (g, s, _) = self.xgcd(modulus)?;
        if g.is_one() {
            Ok(Some(s.rem(modulus)?))
        } else {
            Ok(None)
        }
    }

    /// `x^{deg f} f(1/x)`: the coefficient vector reversed.
    pub fn reciprocal(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Ok(Poly::new(self.field.clone(), coeffs))
    }

    /// `f(0)^{-1}` times the reciprocal; monic when `f` is monic.
    pub fn monic_normalized_reciprocal(&self) -> Result<Poly> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(if self.is_zero() { Error::ZeroPolynomial } else { Error::ZeroConstantTerm });
        }
        Ok(self.reciprocal()?.scale(&self.field.inv(&c0)?))
    }

    /// Canonical order: degree first, then coefficient vectors lexicographically.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = match self.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => return Ok(false),
            Some(1) => return Ok(true),
            Some(d) => d,
        };
        let (_, f) = self.make_monic()?;
        let q = self.field.order();
        let x = Poly::x(&self.field);
        let frob = |k: usize| -> Result<Poly> {
            let mut h = x.clone();
            for _ in 0..k {
                h = h.pow_mod(q, &f)?;
            }
            Ok(h)
        };
        if !(&frob(d)? - &x).rem(&f)?.is_zero() {
            return Ok(false);
        }
        for r in arith::prime_divisors(d as u64) {
            let h = &frob(d / r as usize)? - &x;
            if !f.gcd(&h)?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn pth_root(&self) -> Poly {
        let f = &self.field;
        let p = f.characteristic() as usize;
        let root_exp = f.order() / p as u64;
        let coeffs = self.coeffs.iter().step_by(p).map(|c| f.pow_u(c, root_exp)).collect();
        Poly::new(f.clone(), coeffs)
    }

    /// Squarefree decomposition of a monic polynomial: `(part, multiplicity)` pairs.
    fn squarefree_parts(&self) -> Result<Vec<(Poly, usize)>> {
        let f = &self.field;
        let p = f.characteristic() as usize;
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return Ok(out);
        }
        let d = self.derivative();
        if d.is_zero() {
            for (part, k) in self.pth_root().squarefree_parts()? {
                out.push((part, k * p));
            }
            return Ok(out);
        }
        let mut c = self.gcd(&d)?;
        let mut w = self.exact_div(&c)?;
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c)?;
            let fac = w.exact_div(&y)?;
            if fac.degree().unwrap_or(0) > 0 {
                out.push((fac, i));
            }
            i += 1;
            w = y;
            c = c.exact_div(&w)?;
        }
        if !c.is_one() {
            for (part, k) in c.pth_root().squarefree_parts()? {
                out.push((part, k * p));
            }
        }
        Ok(out)
    }

    /// Distinct-degree split of a monic squarefree polynomial.
    fn distinct_degree_parts(&self) -> Result<Vec<(Poly, usize)>> {
        let q = self.field.order();
        let x = Poly::x(&self.field);
        let mut rest = self.clone();
        let mut h = x.rem(&rest)?;
        let mut out = Vec::new();
        let mut i = 1;
        while rest.degree().unwrap_or(0) >= 2 * i {
            h = h.pow_mod(q, &rest)?;
            let g = rest.gcd(&(&h - &x))?;
            if !g.is_one() {
                rest = rest.exact_div(&g)?;
                h = h.rem(&rest)?;
                out.push((g, i));
            }
            i += 1;
        }
        if let Some(d) = rest.degree().filter(|&d| d > 0) {
            out.push((rest, d));
        }
        Ok(out)
    }

    fn random_below(&self, deg: usize, rng: &mut ChaCha8Rng) -> Poly {
        let f = &self.field;
        let coeffs = (0..deg).map(|_| f.element(rng.gen_range(0..f.order()))).collect();
        Poly::new(f.clone(), coeffs)
    }

    /// Cantor–Zassenhaus split of a monic squarefree product of degree-`d` irreducibles.
    fn equal_degree_parts(&self, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Poly>> {
        let deg = self.degree().unwrap_or(0);
        if deg <= d {
            return Ok(vec![self.clone()]);
        }
        let f = &self.field;
        let q = f.order();
        loop {
            let a = self.random_below(deg, rng);
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let w = if f.characteristic() == 2 {
                // absolute trace of F_{q^d} down to F_2
                let mut acc = a.clone();
                let mut term = a.clone();
                for _ in 1..(f.degree() * d) {
                    term = (&term * &term).rem(self)?;
                    acc = &acc + &term;
                }
                acc
            } else {
                // a^{(q^d - 1)/2} = (a^{1 + q + ... + q^{d-1}})^{(q-1)/2}
                let mut norm = a.clone();
                let mut term = a.clone();
                for _ in 1..d {
                    term = term.pow_mod(q, self)?;
                    norm = (&norm * &term).rem(self)?;
                }
                &norm.pow_mod((q - 1) / 2, self)? - &Poly::one(f)
            };
            let g = self.gcd(&w)?;
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < deg {
                let mut parts = g.equal_degree_parts(d, rng)?;
                parts.extend(self.exact_div(&g)?.equal_degree_parts(d, rng)?);
                return Ok(parts);
            }
        }
    }

    pub fn factorize(&self) -> Result<Factorization> {
        self.factorize_with_seed(DEFAULT_SEED)
    }

    /// Complete factorization into monic irreducibles with a reproducible splitting seed.
    pub fn factorize_with_seed(&self, seed: u64) -> Result<Factorization> {
        let (unit, monic) = self.make_monic()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut factors: Vec<(Poly, usize)> = Vec::new();
        for (part, mult) in monic.squarefree_parts()? {
            for (dd_part, d) in part.distinct_degree_parts()? {
                for irr in dd_part.equal_degree_parts(d, &mut rng)? {
                    factors.push((irr, mult));
                }
            }
        }
        factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        let mut merged: Vec<(Poly, usize)> = Vec::with_capacity(factors.len());
        for (p, k) in factors {
            match merged.last_mut() {
                Some((last, lk)) if *last == p => *lk += k,
                _ => merged.push((p, k)),
            }
        }
        Ok(Factorization { unit, factors: merged })
    }
}

/// `unit * Π factor^multiplicity`, factors monic irreducible in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElem,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn expand(&self, field: &Arc<Field>) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.unit.clone()), |acc, (f, k)| &acc * &f.pow(*k as u64))
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn count_with_multiplicity(&self) -> usize {
        self.factors.iter().map(|(_, k)| k).sum()
    }
}

/// Irreducibility of `x^n - a` over F_q by the order criterion:
/// every prime factor of `n` divides `ord(a)` but not `(q-1)/ord(a)`,
/// and `q ≡ 1 (mod 4)` whenever `4 | n`.
pub fn binomial_irreducible(field: &Field, n: usize, a: &FieldElem) -> Result<bool> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("binomial degree must be >= 2, got {n}")));
    }
    let e = field.mult_order(a)?;
    let q = field.order();
    let cofactor = (q - 1) / e;
    let primes_ok =
        arith::prime_divisors(n as u64).into_iter().all(|r| e % r == 0 && !cofactor.is_multiple_of(r));
    let four_ok = !n.is_multiple_of(4) || q % 4 == 1;
    Ok(primes_ok && four_ok)
}

fn same_field(a: &Poly, b: &Poly) {
    assert!(
        Arc::ptr_eq(&a.field, &b.field) || a.field == b.field,
        "polynomial operands over different fields"
    );
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        same_field(self, rhs);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(f.clone(), (0..n).map(|i| f.add(&self.coeff(i), &rhs.coeff(i))).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        same_field(self, rhs);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(f.clone(), (0..n).map(|i| f.sub(&self.coeff(i), &rhs.coeff(i))).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        same_field(self, rhs);
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f.clone(), out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|c| f.neg(c)).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let c = self.field.format_elem(c);
                match i {
                    0 => c,
                    1 => format!("{c}*x"),
                    _ => format!("{c}*x^{i}"),
                }
            })
            .collect();
        write!(out, "{}", terms.join(" + "))
    }
}
