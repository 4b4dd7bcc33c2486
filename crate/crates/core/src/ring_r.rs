//! The chain ring R = F_q + u F_q with u^2 = 0 and polynomials over it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::poly::{Poly, PolyOp};

/// `a + u*b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RElem {
    pub a: FieldElem,
    pub b: FieldElem,
}

impl RElem {
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Units of R are exactly the elements with nonzero field part.
    pub fn is_unit(&self) -> bool {
        !self.a.is_zero()
    }
}

/// Arithmetic context for R over a fixed residue field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainRing {
    field: Arc<Field>,
}

impl ChainRing {
    pub fn new(field: Arc<Field>) -> ChainRing {
        ChainRing { field }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn zero(&self) -> RElem {
        RElem { a: self.field.zero(), b: self.field.zero() }
    }

    pub fn one(&self) -> RElem {
        self.embed(self.field.one())
    }

    pub fn u(&self) -> RElem {
        RElem { a: self.field.zero(), b: self.field.one() }
    }

    pub fn embed(&self, a: FieldElem) -> RElem {
        RElem { a, b: self.field.zero() }
    }

    pub fn elem(&self, a: FieldElem, b: FieldElem) -> RElem {
        RElem { a, b }
    }

    /// Number of elements, `q^2`.
    pub fn order(&self) -> u64 {
        self.field.order() * self.field.order()
    }

    pub fn elements(&self) -> impl Iterator<Item = RElem> + '_ {
        let q = self.field.order();
        (0..q * q).map(move |i| RElem { a: self.field.element(i % q), b: self.field.element(i / q) })
    }

    pub fn add(&self, x: &RElem, y: &RElem) -> RElem {
        RElem { a: self.field.add(&x.a, &y.a), b: self.field.add(&x.b, &y.b) }
    }

    pub fn sub(&self, x: &RElem, y: &RElem) -> RElem {
        RElem { a: self.field.sub(&x.a, &y.a), b: self.field.sub(&x.b, &y.b) }
    }

    pub fn neg(&self, x: &RElem) -> RElem {
        RElem { a: self.field.neg(&x.a), b: self.field.neg(&x.b) }
    }

    /// `(a + ub)(c + ud) = ac + u(ad + bc)`.
    pub fn mul(&self, x: &RElem, y: &RElem) -> RElem {
        let f = &self.field;
        RElem { a: f.mul(&x.a, &y.a), b: f.add(&f.mul(&x.a, &y.b), &f.mul(&x.b, &y.a)) }
    }

    pub fn mul_field(&self, c: &FieldElem, x: &RElem) -> RElem {
        RElem { a: self.field.mul(c, &x.a), b: self.field.mul(c, &x.b) }
    }

    /// Multiplication by `u`: `a + ub ↦ ua`.
    pub fn mul_u(&self, x: &RElem) -> RElem {
        RElem { a: self.field.zero(), b: x.a.clone() }
    }

    /// `(a + ub)^{-1} = a^{-1} - u a^{-2} b`.
    pub fn inverse(&self, x: &RElem) -> Result<RElem> {
        if !x.is_unit() {
            return Err(Error::NonUnit);
        }
        let f = &self.field;
        let ainv = f.inv(&x.a)?;
        let b = f.neg(&f.mul(&f.mul(&ainv, &ainv), &x.b));
        Ok(RElem { a: ainv, b })
    }

    pub fn pow(&self, x: &RElem, mut exp: u64) -> RElem {
        let mut base = x.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// F_p coordinates: the `m` coordinates of `a` followed by those of `b`.
    pub fn to_fp(&self, x: &RElem, out: &mut Vec<u32>) {
        out.extend_from_slice(x.a.coords());
        out.extend_from_slice(x.b.coords());
    }

    pub fn from_fp(&self, coords: &[u32]) -> Result<RElem> {
        let m = self.field.degree();
        if coords.len() != 2 * m {
            return Err(Error::InvalidParameter(format!("expected {} coordinates", 2 * m)));
        }
        Ok(RElem { a: self.field.from_coords(&coords[..m])?, b: self.field.from_coords(&coords[m..])? })
    }

    pub fn format(&self, x: &RElem) -> String {
        format!("({} + u*{})", self.field.format_elem(&x.a), self.field.format_elem(&x.b))
    }
}

/// A polynomial over R, lowest coefficient first, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RPoly {
    ring: ChainRing,
    coeffs: Vec<RElem>,
}

impl RPoly {
    pub fn new(ring: ChainRing, mut coeffs: Vec<RElem>) -> RPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RPoly { ring, coeffs }
    }

    pub fn zero(ring: &ChainRing) -> RPoly {
        RPoly { ring: ring.clone(), coeffs: Vec::new() }
    }

    pub fn one(ring: &ChainRing) -> RPoly {
        RPoly::constant(ring, ring.one())
    }

    pub fn x(ring: &ChainRing) -> RPoly {
        RPoly::monomial(ring, ring.one(), 1)
    }

    pub fn constant(ring: &ChainRing, c: RElem) -> RPoly {
        RPoly::new(ring.clone(), vec![c])
    }

    pub fn monomial(ring: &ChainRing, c: RElem, k: usize) -> RPoly {
        let mut coeffs = vec![ring.zero(); k + 1];
        coeffs[k] = c;
        RPoly::new(ring.clone(), coeffs)
    }

    /// `f1 + u*f2`.
    pub fn from_parts(f1: &Poly, f2: &Poly) -> RPoly {
        let ring = ChainRing::new(f1.field().clone());
        let n = f1.coeffs().len().max(f2.coeffs().len());
        let coeffs = (0..n).map(|i| RElem { a: f1.coeff(i), b: f2.coeff(i) }).collect();
        RPoly::new(ring, coeffs)
    }

    pub fn from_poly(f: &Poly) -> RPoly {
        RPoly::from_parts(f, &Poly::zero(f.field()))
    }

    /// The decomposition `f = f1 + u*f2` over the residue field.
    pub fn parts(&self) -> (Poly, Poly) {
        let f = self.ring.field();
        (
            Poly::new(f.clone(), self.coeffs.iter().map(|c| c.a.clone()).collect()),
            Poly::new(f.clone(), self.coeffs.iter().map(|c| c.b.clone()).collect()),
        )
    }

    /// Image in F_q[x] (reduction mod u).
    pub fn residue(&self) -> Poly {
        self.parts().0
    }

    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &[RElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&RElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| *c == self.ring.one())
    }

    /// Coefficients padded with zeros to exactly `len` entries.
    pub fn to_word(&self, len: usize) -> Vec<RElem> {
        (0..len).map(|i| self.coeff(i)).collect()
    }

    pub fn scale(&self, c: &RElem) -> RPoly {
        RPoly::new(self.ring.clone(), self.coeffs.iter().map(|x| self.ring.mul(c, x)).collect())
    }

    pub fn mul_u(&self) -> RPoly {
        RPoly::new(self.ring.clone(), self.coeffs.iter().map(|x| self.ring.mul_u(x)).collect())
    }

    fn check_ring(&self, other: &RPoly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn arith(&self, other: &RPoly, op: PolyOp) -> Result<RPoly> {
        self.check_ring(other)?;
        Ok(match op {
            PolyOp::Add => self + other,
            PolyOp::Sub => self - other,
            PolyOp::Mul => self * other,
        })
    }

    pub fn pow(&self, mut exp: u64) -> RPoly {
        let mut base = self.clone();
        let mut acc = RPoly::one(&self.ring);
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

    /// Division by a polynomial whose leading coefficient is a unit of R.
    pub fn divmod(&self, divisor: &RPoly) -> Result<(RPoly, RPoly)> {
        self.check_ring(divisor)?;
        let r = &self.ring;
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = divisor.lead().unwrap();
        if !lead.is_unit() {
            return Err(Error::NonUnitLeadingCoefficient);
        }
        let lead_inv = r.inverse(lead)?;
        if self.coeffs.len() <= db {
            return Ok((RPoly::zero(r), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![r.zero(); rem.len() - db];
        for i in (db..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = r.mul(&rem[i], &lead_inv);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i - db + j] = r.sub(&rem[i - db + j], &r.mul(&c, d));
            }
            quot[i - db] = c;
        }
        rem.truncate(db);
        Ok((RPoly::new(r.clone(), quot), RPoly::new(r.clone(), rem)))
    }

    pub fn rem(&self, divisor: &RPoly) -> Result<RPoly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Canonical representative in R[x]/(x^n - λ), degree < n.
    pub fn reduce_mod_ambient(&self, n: usize, lambda: &RElem) -> Result<RPoly> {
        if !lambda.is_unit() {
            return Err(Error::NonUnit);
        }
        if n == 0 {
            return Err(Error::InvalidParameter("ambient length must be positive".into()));
        }
        let r = &self.ring;
        let mut c = self.coeffs.clone();
        for d in (n..c.len()).rev() {
            if c[d].is_zero() {
                continue;
            }
            let carry = r.mul(lambda, &c[d]);
            c[d - n] = r.add(&c[d - n], &carry);
        }
        c.truncate(n);
        Ok(RPoly::new(r.clone(), c))
    }
}

/// Free-function form of [`RPoly::reduce_mod_ambient`].
pub fn reduce_mod_ambient(f: &RPoly, n: usize, lambda: &RElem) -> Result<RPoly> {
    f.reduce_mod_ambient(n, lambda)
}

fn same_ring(a: &RPoly, b: &RPoly) {
    assert!(a.ring == b.ring, "R-polynomial operands over different fields");
}

impl Add for &RPoly {
    type Output = RPoly;
    fn add(self, rhs: &RPoly) -> RPoly {
        same_ring(self, rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RPoly::new(self.ring.clone(), (0..n).map(|i| self.ring.add(&self.coeff(i), &rhs.coeff(i))).collect())
    }
}

impl Sub for &RPoly {
    type Output = RPoly;
    fn sub(self, rhs: &RPoly) -> RPoly {
        same_ring(self, rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RPoly::new(self.ring.clone(), (0..n).map(|i| self.ring.sub(&self.coeff(i), &rhs.coeff(i))).collect())
    }
}

impl Mul for &RPoly {
    type Output = RPoly;
    fn mul(self, rhs: &RPoly) -> RPoly {
        same_ring(self, rhs);
        let r = &self.ring;
        if self.is_zero() || rhs.is_zero() {
            return RPoly::zero(r);
        }
        let mut out = vec![r.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = r.add(&out[i + j], &r.mul(a, b));
            }
        }
        RPoly::new(r.clone(), out)
    }
}

impl Neg for &RPoly {
    type Output = RPoly;
    fn neg(self) -> RPoly {
        RPoly::new(self.ring.clone(), self.coeffs.iter().map(|c| self.ring.neg(c)).collect())
    }
}

impl fmt::Display for RPoly {
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
                let c = self.ring.format(c);
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

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32, m: usize) -> ChainRing {
        ChainRing::new(Field::new(p, m, None).unwrap())
    }

    fn re(r: &ChainRing, a: i64, b: i64) -> RElem {
        let f = r.field();
        r.elem(f.from_int(a), f.from_int(b))
    }

    fn rp(r: &ChainRing, c: &[(i64, i64)]) -> RPoly {
        RPoly::new(r.clone(), c.iter().map(|&(a, b)| re(r, a, b)).collect())
    }

    #[test]
    fn inverse_examples() {
        let r2 = ring(2, 1);
        assert_eq!(r2.inverse(&r2.one()).unwrap(), r2.one());
        assert_eq!(r2.inverse(&re(&r2, 1, 1)).unwrap(), re(&r2, 1, 1));
        let r3 = ring(3, 1);
        assert_eq!(r3.inverse(&re(&r3, 2, 1)).unwrap(), re(&r3, 2, 2));
        assert_eq!(r3.inverse(&r3.u()), Err(Error::NonUnit));
    }

    #[test]
    fn inverse_exhaustive() {
        for (p, m) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)] {
            let r = ring(p, m);
            for e in r.elements().filter(|e| e.is_unit()) {
                assert_eq!(r.mul(&e, &r.inverse(&e).unwrap()), r.one());
            }
        }
    }

    #[test]
    fn non_units_are_the_maximal_ideal() {
        for (p, m) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
            let r = ring(p, m);
            let all: Vec<RElem> = r.elements().collect();
            let non_units: Vec<&RElem> = all.iter().filter(|e| !e.is_unit()).collect();
            assert_eq!(non_units.len() as u64, r.field().order());
            // each non-unit is u * (something) and has no inverse
            for x in &non_units {
                assert!(x.a.is_zero());
                assert!(all.iter().all(|y| r.mul(x, y) != r.one()));
                for y in &all {
                    assert!(!r.mul(x, y).is_unit());
                }
                for y in &non_units {
                    assert!(!r.add(x, y).is_unit());
                }
            }
            for x in all.iter().filter(|e| e.is_unit()) {
                assert!(all.iter().any(|y| r.mul(x, y) == r.one()));
            }
        }
    }

    #[test]
    fn polynomial_examples() {
        let r3 = ring(3, 1);
        let u = RPoly::constant(&r3, r3.u());
        assert!((&u * &u).is_zero());
        let a = rp(&r3, &[(0, 1), (1, 0)]);
        let b = rp(&r3, &[(0, -1), (1, 0)]);
        assert_eq!(&a * &b, rp(&r3, &[(0, 0), (0, 0), (1, 0)]));

        let r2 = ring(2, 1);
        let (q, rem) = rp(&r2, &[(0, 1), (0, 0), (1, 0)]).divmod(&rp(&r2, &[(1, 0), (1, 0)])).unwrap();
        assert_eq!(q, rp(&r2, &[(1, 0), (1, 0)]));
        assert_eq!(rem, rp(&r2, &[(1, 1)]));

        assert_eq!(
            rp(&r2, &[(1, 0)]).divmod(&rp(&r2, &[(1, 0), (0, 1)])),
            Err(Error::NonUnitLeadingCoefficient)
        );
    }

    #[test]
    fn ambient_reduction_examples() {
        let r3 = ring(3, 1);
        let lambda = re(&r3, 2, 1);
        let n = 4;
        let xn = RPoly::monomial(&r3, r3.one(), n);
        assert_eq!(xn.reduce_mod_ambient(n, &lambda).unwrap(), RPoly::constant(&r3, lambda.clone()));
        let xn1 = RPoly::monomial(&r3, r3.one(), n + 1);
        assert_eq!(xn1.reduce_mod_ambient(n, &lambda).unwrap(), RPoly::monomial(&r3, lambda.clone(), 1));
        let x2n = RPoly::monomial(&r3, r3.one(), 2 * n);
        assert_eq!(
            x2n.reduce_mod_ambient(n, &lambda).unwrap(),
            RPoly::constant(&r3, r3.mul(&lambda, &lambda))
        );
        assert_eq!(xn.reduce_mod_ambient(n, &r3.u()), Err(Error::NonUnit));
    }

    #[test]
    fn parts_round_trip() {
        let r3 = ring(3, 1);
        let f = rp(&r3, &[(1, 2), (0, 1), (2, 0)]);
        let (f1, f2) = f.parts();
        assert_eq!(RPoly::from_parts(&f1, &f2), f);
        assert_eq!(f.to_string(), "(1 + u*2) + (0 + u*1)*x + (2 + u*0)*x^2");
    }
}
