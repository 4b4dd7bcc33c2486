//! Finite fields F_{p^m} in the power basis of an irreducible modulus.
//!
//! Elements are coordinate vectors over F_p. A [`Field`] carries no tables, so
//! every operation works for any `q` that fits in a `u64`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::arith;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// An element of F_{p^m}: `m` residues mod `p`, lowest power first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElem(SmallVec<[u32; 4]>);

impl FieldElem {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// The field F_{p^m} = F_p[x]/(modulus).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Field {
    p: u32,
    m: usize,
    /// Monic, degree `m`, lowest coefficient first.
    modulus: Vec<u32>,
    q: u64,
}

impl Field {
    /// Builds F_{p^m}. Without an explicit modulus the lexicographically smallest
    /// monic irreducible polynomial (comparing `c_0` first) is chosen.
    pub fn new(p: u32, m: usize, modulus: Option<Vec<u32>>) -> Result<Arc<Field>> {
        if !arith::is_prime(p as u64) {
            return Err(Error::NonPrimeCharacteristic(p as u64));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("extension degree m must be >= 1".into()));
        }
        let q = (p as u64)
            .checked_pow(m as u32)
            .ok_or_else(|| Error::InvalidParameter(format!("{p}^{m} does not fit in 64 bits")))?;
        if m == 1 && modulus.is_none() {
            return Ok(Arc::new(Field { p, m, modulus: vec![0, 1], q }));
        }
        let prime = Arc::new(Field { p, m: 1, modulus: vec![0, 1], q: p as u64 });
        let modulus = match modulus {
            Some(c) => {
                if c.len() != m + 1 || c[m] != 1 {
                    return Err(Error::InvalidParameter(format!(
                        "modulus must be monic of degree {m}, got coefficients {c:?}"
                    )));
                }
                if let Some(&bad) = c.iter().find(|&&x| x >= p) {
                    return Err(Error::InvalidParameter(format!(
                        "modulus coefficient {bad} is not reduced mod {p}"
                    )));
                }
                let poly = prime_poly(&prime, &c);
                if !poly.is_irreducible()? {
                    return Err(Error::ReducibleModulus(poly.to_string(), p));
                }
                c
            }
            None => smallest_irreducible(&prime, m)?,
        };
        Ok(Arc::new(Field { p, m, modulus, q }))
    }

    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Arc<Field>> {
        Field::new(p, 1, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(SmallVec::from_elem(0, self.m))
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, k: i64) -> FieldElem {
        let mut c = self.zero();
        c.0[0] = k.rem_euclid(self.p as i64) as u32;
        c
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FieldElem> {
        if coords.len() > self.m {
            return Err(Error::InvalidParameter(format!(
                "field element has {} coordinates, field degree is {}",
                coords.len(),
                self.m
            )));
        }
        if let Some(&bad) = coords.iter().find(|&&c| c >= self.p) {
            return Err(Error::InvalidParameter(format!(
                "coordinate {bad} is not reduced mod {}",
                self.p
            )));
        }
        let mut c = self.zero();
        c.0[..coords.len()].copy_from_slice(coords);
        Ok(c)
    }

    /// The power-basis element `θ^k` (the class of `x^k`), `k < m`.
    pub fn basis_elem(&self, k: usize) -> FieldElem {
        let mut c = self.zero();
        c.0[k] = 1;
        c
    }

    /// Element with index `idx` in base-`p` digit order (`c_0` least significant).
    pub fn element(&self, mut idx: u64) -> FieldElem {
        let mut c = self.zero();
        for slot in c.0.iter_mut() {
            *slot = (idx % self.p as u64) as u32;
            idx /= self.p as u64;
        }
        c
    }

    pub fn index_of(&self, a: &FieldElem) -> u64 {
        a.0.iter().rev().fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    /// All `q` elements, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(move |i| self.element(i))
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let p = self.p;
        FieldElem(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + y) % p).collect())
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let p = self.p;
        FieldElem(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + p - y) % p).collect())
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        let p = self.p;
        FieldElem(a.0.iter().map(|&x| (p - x) % p).collect())
    }

    /// Multiplication by an F_p scalar.
    pub fn scale(&self, k: u32, a: &FieldElem) -> FieldElem {
        let p = self.p as u64;
        FieldElem(a.0.iter().map(|&x| ((x as u64 * k as u64) % p) as u32).collect())
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let p = self.p as u64;
        if self.m == 1 {
            return FieldElem(SmallVec::from_elem(((a.0[0] as u64 * b.0[0] as u64) % p) as u32, 1));
        }
        let m = self.m;
        let mut t = vec![0u64; 2 * m - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                t[i + j] = (t[i + j] + x as u64 * y as u64) % p;
            }
        }
        for d in (m..2 * m - 1).rev() {
            let c = t[d];
            if c == 0 {
                continue;
            }
            for k in 0..m {
                let sub = c * self.modulus[k] as u64 % p;
                t[d - m + k] = (t[d - m + k] + p - sub) % p;
            }
        }
        FieldElem(t[..m].iter().map(|&x| x as u32).collect())
    }

    /// Exponentiation by a non-negative exponent.
    pub fn pow_u(&self, a: &FieldElem, mut exp: u64) -> FieldElem {
        let mut base = a.clone();
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

    /// Exponentiation by any integer; a negative exponent inverts the base first.
    pub fn pow(&self, a: &FieldElem, exp: i64) -> Result<FieldElem> {
        if exp >= 0 {
            Ok(self.pow_u(a, exp as u64))
        } else {
            Ok(self.pow_u(&self.inv(a)?, exp.unsigned_abs()))
        }
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow_u(a, self.q - 2))
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Smallest `e >= 1` with `a^e = 1`.
    pub fn mult_order(&self, a: &FieldElem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let one = self.one();
        let mut e = self.q - 1;
        for r in arith::prime_divisors(self.q - 1) {
            while e.is_multiple_of(r) && self.pow_u(a, e / r) == one {
                e /= r;
            }
        }
        Ok(e)
    }

    /// The unique `b` with `b^(p^s) = a`, as `a^t` with `t = (p^s)^{-1} mod (q - 1)`.
    pub fn ps_root(&self, a: &FieldElem, s: u32) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let group = self.q - 1;
        let ps = arith::pow_mod(self.p as u64, s as u64, group);
        let t = arith::inv_mod(ps, group)
            .ok_or_else(|| Error::ConsistencyFailure("p^s not invertible mod q-1".into()))?;
        Ok(self.pow_u(a, t))
    }

    /// `p^s`-th power, via `s` Frobenius applications.
    pub fn pow_ps(&self, a: &FieldElem, s: u32) -> FieldElem {
        (0..s).fold(a.clone(), |acc, _| self.pow_u(&acc, self.p as u64))
    }

    /// Textual form of an element: a bare residue for prime fields, a coordinate tuple otherwise.
    pub fn format_elem(&self, a: &FieldElem) -> String {
        if self.m == 1 {
            a.0[0].to_string()
        } else {
            let inner: Vec<String> = a.0.iter().map(|c| c.to_string()).collect();
            format!("({})", inner.join(","))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .modulus
            .iter()
            .enumerate()
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        write!(f, "GF({}^{}; modulus={})", self.p, self.m, terms.join("+"))
    }
}

fn prime_poly(prime: &Arc<Field>, coeffs: &[u32]) -> Poly {
    Poly::new(prime.clone(), coeffs.iter().map(|&c| prime.from_int(c as i64)).collect())
}

fn smallest_irreducible(prime: &Arc<Field>, m: usize) -> Result<Vec<u32>> {
    let p = prime.p;
    // odometer over (c_0, ..., c_{m-1}) with c_0 most significant
    let mut c = vec![0u32; m];
    loop {
        if c[0] != 0 {
            let mut full = c.clone();
            full.push(1);
            if prime_poly(prime, &full).is_irreducible()? {
                return Ok(full);
            }
        }
        let mut k = m;
        loop {
            if k == 0 {
                return Err(Error::ConsistencyFailure(format!(
                    "no irreducible polynomial of degree {m} over F_{p}"
                )));
            }
            k -= 1;
            c[k] += 1;
            if c[k] < p {
                break;
            }
            c[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_defaults() {
        let f2 = Field::new(2, 1, None).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]);
        assert_eq!(f2.to_string(), "GF(2^1; modulus=0+1*x)");
        let f3 = Field::new(3, 1, None).unwrap();
        assert_eq!(f3.order(), 3);
        let f4 = Field::new(2, 2, None).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(f4.to_string(), "GF(2^2; modulus=1+1*x+1*x^2)");
        let f9 = Field::new(3, 2, None).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1, None).unwrap_err(), Error::NonPrimeCharacteristic(4));
        assert!(matches!(Field::new(2, 2, Some(vec![1, 0, 1])), Err(Error::ReducibleModulus(..))));
        assert!(matches!(Field::new(2, 2, Some(vec![1, 1])), Err(Error::InvalidParameter(_))));
        assert!(matches!(Field::new(2, 0, None), Err(Error::InvalidParameter(_))));
        let f8 = Field::new(2, 3, Some(vec![1, 0, 1, 1])).unwrap();
        assert_eq!(f8.order(), 8);
    }

    #[test]
    fn small_arithmetic() {
        let f3 = Field::prime(3).unwrap();
        let two = f3.from_int(2);
        assert_eq!(f3.mul(&two, &two), f3.one());
        assert_eq!(f3.inv(&two).unwrap(), two);
        assert_eq!(f3.inv(&f3.zero()), Err(Error::DivisionByZero));
        assert_eq!(f3.pow(&two, -3).unwrap(), two);

        let f4 = Field::new(2, 2, None).unwrap();
        let x = f4.basis_elem(1);
        assert_eq!(f4.mul(&x, &x), f4.from_coords(&[1, 1]).unwrap());
    }

    #[test]
    fn orders() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.mult_order(&f3.one()).unwrap(), 1);
        assert_eq!(f3.mult_order(&f3.from_int(2)).unwrap(), 2);
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.mult_order(&f5.from_int(2)).unwrap(), 4);
        assert_eq!(f5.mult_order(&f5.zero()), Err(Error::ZeroElement));
    }

    #[test]
    fn roots() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.ps_root(&f3.from_int(2), 1).unwrap(), f3.from_int(2));
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.ps_root(&f5.from_int(2), 1).unwrap(), f5.from_int(2));
        assert_eq!(f5.ps_root(&f5.one(), 3).unwrap(), f5.one());
        assert_eq!(f5.ps_root(&f5.zero(), 1), Err(Error::ZeroElement));
    }

    fn small_fields() -> Vec<Arc<Field>> {
        [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (3, 3), (3, 4)]
            .into_iter()
            .map(|(p, m)| Field::new(p, m, None).unwrap())
            .collect()
    }

    #[test]
    fn group_exponent_and_order_divides() {
        for f in small_fields() {
            for a in f.elements().skip(1) {
                assert_eq!(f.pow_u(&a, f.order() - 1), f.one(), "{f}");
                let e = f.mult_order(&a).unwrap();
                assert_eq!((f.order() - 1) % e, 0);
                assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            }
        }
    }

    #[test]
    fn ps_root_inverts_frobenius() {
        for f in small_fields() {
            for s in 1..=3 {
                for a in f.elements().skip(1) {
                    let r = f.ps_root(&a, s).unwrap();
                    assert_eq!(f.pow_ps(&r, s), a);
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for f in small_fields() {
            let p = f.characteristic() as u64;
            for a in f.elements() {
                for b in f.elements() {
                    let lhs = f.pow_u(&f.add(&a, &b), p);
                    let rhs = f.add(&f.pow_u(&a, p), &f.pow_u(&b, p));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn index_round_trip() {
        let f9 = Field::new(3, 2, None).unwrap();
        for i in 0..9 {
            assert_eq!(f9.index_of(&f9.element(i)), i);
        }
    }
}
