//! The ambient ring R[x]/(x^{np^s} - α - uβ) and its CRT decomposition.
//!
//! Construction: take the unique `p^s`-th root `α₀` of `α`, factor
//! `x^n - α₀ = f_1 ⋯ f_r` over the residue field, lift each factor to
//! `h_j = f_j^{p^s} + u g_j` so that `Π h_j = x^{np^s} - α - uβ`, and build
//! orthogonal idempotents `ε_j` with `ε_j ≡ 1 (mod h_j)`, `ε_j ≡ 0 (mod h_l)`.
//!
//! Each `g_j` solves `g_j · Π_{l≠j} f_l^{p^s} ≡ -β (mod f_j^{p^s})` with
//! `deg g_j < deg f_j^{p^s}`. Expanding `Π h_j` shows the `u`-part is
//! `Σ_j g_j Π_{l≠j} f_l^{p^s}`, which is then `≡ -β` modulo every
//! `f_j^{p^s}` and has degree below `np^s`, so it equals `-β` exactly.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::poly::{Poly, DEFAULT_SEED};
use crate::ring_r::{ChainRing, RElem, RPoly};

/// One CRT component of the ambient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorData {
    /// Monic irreducible factor of `x^n - α₀`.
    pub f: Poly,
    /// `u`-part of the lifted factor, `deg g < d p^s`.
    pub g: Poly,
    /// `f^{p^s} + u g`.
    pub h: RPoly,
    /// Idempotent selecting this component.
    pub eps: RPoly,
    /// `deg f`.
    pub d: usize,
}

#[derive(Debug)]
pub struct AmbientRing {
    field: Arc<Field>,
    ring: ChainRing,
    s: u32,
    n: usize,
    ps: usize,
    alpha: FieldElem,
    beta: FieldElem,
    alpha0: FieldElem,
    lambda: RElem,
    factors: Vec<FactorData>,
    seed: u64,
    dual: OnceLock<Result<Arc<AmbientRing>>>,
}

fn fail(msg: impl Into<String>) -> Error {
    Error::ConsistencyFailure(msg.into())
}

impl AmbientRing {
    pub fn build(field: &Arc<Field>, s: u32, n: usize, alpha: &FieldElem, beta: &FieldElem) -> Result<Arc<AmbientRing>> {
        AmbientRing::build_with_seed(field, s, n, alpha, beta, DEFAULT_SEED)
    }

    pub fn build_with_seed(
        field: &Arc<Field>,
        s: u32,
        n: usize,
        alpha: &FieldElem,
        beta: &FieldElem,
        seed: u64,
    ) -> Result<Arc<AmbientRing>> {
        check_params(field, s, n, alpha, beta)?;
        let alpha0 = field.ps_root(alpha, s)?;
        let fac = Poly::binomial(field, n, &alpha0).factorize_with_seed(seed)?;
        if fac.factors.iter().any(|(_, k)| *k != 1) {
            return Err(fail("x^n - α₀ has a repeated factor although gcd(n, p) = 1"));
        }
        let factors = fac.factors.into_iter().map(|(f, _)| f).collect();
        Ok(Arc::new(AmbientRing::from_factors(field, s, n, alpha, beta, factors, seed)?))
    }

    /// Builds the ring from a given ordering of the factors of `x^n - α₀`.
    fn from_factors(
        field: &Arc<Field>,
        s: u32,
        n: usize,
        alpha: &FieldElem,
        beta: &FieldElem,
        fs: Vec<Poly>,
        seed: u64,
    ) -> Result<AmbientRing> {
        let ps = p_power(field, s)?;
        let alpha0 = field.ps_root(alpha, s)?;
        let ring = ChainRing::new(field.clone());
        let lambda = ring.elem(alpha.clone(), beta.clone());
        let big: Vec<Poly> = fs.iter().map(|f| f.pow(ps as u64)).collect();
        let minus_beta = field.neg(beta);

        let mut hs = Vec::with_capacity(fs.len());
        let mut gs = Vec::with_capacity(fs.len());
        for (j, fj_ps) in big.iter().enumerate() {
            let cofactor = complement_product(field, &big, j);
            let inv = cofactor
                .inverse_mod(fj_ps)?
                .ok_or_else(|| fail(format!("factor {j} is not coprime to the others")))?;
            let g = inv.scale(&minus_beta).rem(fj_ps)?;
            hs.push(RPoly::from_parts(fj_ps, &g));
            gs.push(g);
        }
        let len = n * ps;
        let eps = idempotents(&hs, len, &lambda)?;

        let factors = fs
            .into_iter()
            .zip(gs)
            .zip(hs)
            .zip(eps)
            .map(|(((f, g), h), eps)| {
                let d = f.degree().unwrap_or(0);
                FactorData { f, g, h, eps, d }
            })
            .collect();
        let amb = AmbientRing {
            field: field.clone(),
            ring,
            s,
            n,
            ps,
            alpha: alpha.clone(),
            beta: beta.clone(),
            alpha0,
            lambda,
            factors,
            seed,
            dual: OnceLock::new(),
        };
        amb.verify_invariants()?;
        Ok(amb)
    }

    /// Re-checks every structural identity of the construction exactly.
    pub fn verify_invariants(&self) -> Result<()> {
        let f = &self.field;
        if f.pow_ps(&self.alpha0, self.s) != self.alpha {
            return Err(fail("α₀^{p^s} != α"));
        }
        let prod_f = self.factors.iter().fold(Poly::one(f), |acc, fd| &acc * &fd.f);
        if prod_f != self.residue_modulus() {
            return Err(fail(format!("Π f_j = {prod_f} differs from x^n - α₀")));
        }
        for (j, fd) in self.factors.iter().enumerate() {
            if !fd.f.is_monic() || !fd.f.is_irreducible()? {
                return Err(fail(format!("f_{j} = {} is not monic irreducible", fd.f)));
            }
            for other in &self.factors[j + 1..] {
                if !fd.f.gcd(&other.f)?.is_one() {
                    return Err(fail(format!("f_{j} shares a factor with another f_l")));
                }
            }
            let fps = fd.f.pow(self.ps as u64);
            if fd.h.residue() != fps || !fd.h.is_monic() || fd.h.degree() != Some(fd.d * self.ps) {
                return Err(fail(format!("h_{j} is not a monic lift of f_{j}^(p^s)")));
            }
            if fd.g.degree().is_some_and(|dg| dg >= fd.d * self.ps) {
                return Err(fail(format!("deg g_{j} >= d_j p^s")));
            }
            if !fd.f.gcd(&fd.g)?.is_one() {
                return Err(fail(format!("gcd(f_{j}, g_{j}) != 1")));
            }
        }
        let prod_h = self.factors.iter().fold(RPoly::one(&self.ring), |acc, fd| &acc * &fd.h);
        if prod_h != self.defining_polynomial() {
            return Err(fail(format!("Π h_j = {prod_h} differs from x^N - λ")));
        }

        let sum = self.factors.iter().fold(RPoly::zero(&self.ring), |acc, fd| &acc + &fd.eps);
        if sum != RPoly::one(&self.ring) {
            return Err(fail("Σ ε_j != 1"));
        }
        for (j, a) in self.factors.iter().enumerate() {
            if self.mul(&a.eps, &a.eps) != a.eps {
                return Err(fail(format!("ε_{j} is not idempotent")));
            }
            if !self.mul(&a.eps, &a.h).is_zero() {
                return Err(fail(format!("ε_{j} h_{j} != 0")));
            }
            for (l, b) in self.factors.iter().enumerate().skip(j + 1) {
                if !self.mul(&a.eps, &b.eps).is_zero() {
                    return Err(fail(format!("ε_{j} ε_{l} != 0")));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn chain_ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `p^s`.
    pub fn p_power(&self) -> usize {
        self.ps
    }

    /// Code length `N = n p^s`.
    pub fn length(&self) -> usize {
        self.n * self.ps
    }

    pub fn alpha(&self) -> &FieldElem {
        &self.alpha
    }

    pub fn beta(&self) -> &FieldElem {
        &self.beta
    }

    pub fn alpha0(&self) -> &FieldElem {
        &self.alpha0
    }

    /// The shift constant `λ = α + uβ`.
    pub fn lambda(&self) -> &RElem {
        &self.lambda
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn factors(&self) -> &[FactorData] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn is_irreducible_case(&self) -> bool {
        self.factors.len() == 1
    }

    /// `x^n - α₀` over the residue field.
    pub fn residue_modulus(&self) -> Poly {
        Poly::binomial(&self.field, self.n, &self.alpha0)
    }

    /// `x^N - λ` in R[x].
    pub fn defining_polynomial(&self) -> RPoly {
        let r = &self.ring;
        let lead = RPoly::monomial(r, r.one(), self.length());
        &lead - &RPoly::constant(r, self.lambda.clone())
    }

    /// `|R|^N = p^{2mN}`, as the exponent of `p`.
    pub fn log_size(&self) -> u64 {
        2 * self.field.degree() as u64 * self.length() as u64
    }

    pub fn reduce(&self, f: &RPoly) -> RPoly {
        f.reduce_mod_ambient(self.length(), &self.lambda).expect("λ is a unit by construction")
    }

    pub fn mul(&self, a: &RPoly, b: &RPoly) -> RPoly {
        self.reduce(&(a * b))
    }

    pub fn pow(&self, a: &RPoly, mut exp: u64) -> RPoly {
        let mut base = self.reduce(a);
        let mut acc = RPoly::one(&self.ring);
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

    /// Ambient ring of the dual codes, with factors index-aligned to `self`.
    pub fn dual(&self) -> Result<Arc<AmbientRing>> {
        self.dual.get_or_init(|| dual_ambient(self).map(Arc::new)).clone()
    }
}

fn check_params(field: &Field, s: u32, n: usize, alpha: &FieldElem, beta: &FieldElem) -> Result<()> {
    let p = field.characteristic();
    if s == 0 {
        return Err(Error::InvalidParameter("s must be >= 1".into()));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    if n.is_multiple_of(p as usize) {
        return Err(Error::NotCoprime { n, p });
    }
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(())
}

fn p_power(field: &Field, s: u32) -> Result<usize> {
    (field.characteristic() as usize)
        .checked_pow(s)
        .ok_or_else(|| Error::InvalidParameter(format!("p^{s} overflows")))
}

fn complement_product(field: &Arc<Field>, polys: &[Poly], skip: usize) -> Poly {
    polys
        .iter()
        .enumerate()
        .filter(|&(l, _)| l != skip)
        .fold(Poly::one(field), |acc, (_, p)| &acc * p)
}

fn complement_product_r(ring: &ChainRing, polys: &[RPoly], skip: usize) -> RPoly {
    polys
        .iter()
        .enumerate()
        .filter(|&(l, _)| l != skip)
        .fold(RPoly::one(ring), |acc, (_, p)| &acc * p)
}

/// Orthogonal idempotents for pairwise coprime monic `hs` with `Π hs = x^len - λ`.
///
/// A Bézout identity `s̄ H̄ + t̄ h̄ = 1` over the residue field gives
/// `e = s̄ H ≡ 1 + u w (mod h)` and `e ≡ 0 (mod H)`; one step of
/// `e ↦ 3e² - 2e³` removes the `u`-error because `u² = 0`.
pub fn idempotents(hs: &[RPoly], len: usize, lambda: &RElem) -> Result<Vec<RPoly>> {
    let Some(first) = hs.first() else {
        return Err(Error::InvalidParameter("no factors".into()));
    };
    let ring = first.ring().clone();
    let reduce = |f: &RPoly| f.reduce_mod_ambient(len, lambda);
    let three = RPoly::constant(&ring, ring.embed(ring.field().from_int(3)));
    let two = RPoly::constant(&ring, ring.embed(ring.field().from_int(2)));
    let mut out = Vec::with_capacity(hs.len());
    for (j, h) in hs.iter().enumerate() {
        let big_h = complement_product_r(&ring, hs, j);
        let (g, s_bar, _) = big_h.residue().xgcd(&h.residue())?;
        if !g.is_one() {
            return Err(fail(format!("h_{j} is not coprime to its complement")));
        }
        let e = reduce(&(&RPoly::from_poly(&s_bar) * &big_h))?;
        let e2 = reduce(&(&e * &e))?;
        let e3 = reduce(&(&e2 * &e))?;
        out.push(reduce(&(&(&three * &e2) - &(&two * &e3)))?);
    }
    Ok(out)
}

/// The ring `R[x]/(x^{np^s} - λ^{-1})` whose ideals are the duals of the
/// ideals of `ring`. Factor `j` is the monic normalized reciprocal of `f_j`.
pub fn dual_ambient(ring: &AmbientRing) -> Result<AmbientRing> {
    let field = &ring.field;
    let inv = ring.ring.inverse(&ring.lambda)?;
    let dual_alpha0 = field.ps_root(&inv.a, ring.s)?;
    let mut paired = Vec::with_capacity(ring.factors.len());
    for fd in &ring.factors {
        paired.push(fd.f.monic_normalized_reciprocal()?);
    }
    // the pairing must be a permutation of the canonical factorization
    let mut sorted = paired.clone();
    sorted.sort_by(|a, b| a.canonical_cmp(b));
    let canonical: Vec<Poly> = Poly::binomial(field, ring.n, &dual_alpha0)
        .factorize_with_seed(ring.seed)?
        .factors
        .into_iter()
        .map(|(f, _)| f)
        .collect();
    if sorted != canonical {
        return Err(fail("reciprocal factors do not match the factorization of x^n - α₀^{-1}"));
    }
    AmbientRing::from_factors(field, ring.s, ring.n, &inv.a, &inv.b, paired, ring.seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(p: u32, m: usize, s: u32, n: usize, alpha: i64, beta: i64) -> Arc<AmbientRing> {
        let f = Field::new(p, m, None).unwrap();
        AmbientRing::build(&f, s, n, &f.from_int(alpha), &f.from_int(beta)).unwrap()
    }

    #[test]
    fn irreducible_quadratic_example() {
        let amb = build(3, 1, 1, 2, 2, 1);
        let f = amb.field().clone();
        assert_eq!(amb.alpha0(), &f.from_int(2));
        assert!(amb.is_irreducible_case());
        let fd = &amb.factors()[0];
        assert_eq!(fd.f, Poly::from_ints(&f, &[-2, 0, 1]));
        assert_eq!(fd.g, Poly::from_ints(&f, &[2]));
        assert_eq!(fd.eps, RPoly::one(amb.chain_ring()));
    }

    #[test]
    fn cyclic_length_six_example() {
        let amb = build(2, 1, 1, 3, 1, 1);
        assert_eq!(amb.num_factors(), 2);
        assert_eq!(amb.factors().iter().map(|fd| fd.d).collect::<Vec<_>>(), vec![1, 2]);
        let prod = amb.factors().iter().fold(RPoly::one(amb.chain_ring()), |acc, fd| &acc * &fd.h);
        assert_eq!(prod, amb.defining_polynomial());
        let e: Vec<&RPoly> = amb.factors().iter().map(|fd| &fd.eps).collect();
        assert_eq!(e[0] + e[1], RPoly::one(amb.chain_ring()));
        assert!(amb.mul(e[0], e[1]).is_zero());
    }

    #[test]
    fn degree_one_binomial_is_irreducible_case() {
        for (p, m, s, a, b) in [(2, 1, 2, 1, 1), (3, 1, 1, 2, 1), (5, 1, 1, 3, 4), (2, 2, 1, 1, 1)] {
            assert!(build(p, m, s, 1, a, b).is_irreducible_case());
        }
    }

    #[test]
    fn parameter_errors() {
        let f = Field::prime(3).unwrap();
        let one = f.one();
        assert_eq!(
            AmbientRing::build(&f, 1, 3, &one, &one).unwrap_err(),
            Error::NotCoprime { n: 3, p: 3 }
        );
        assert_eq!(AmbientRing::build(&f, 1, 2, &f.zero(), &one).unwrap_err(), Error::ZeroElement);
        assert_eq!(AmbientRing::build(&f, 1, 2, &one, &f.zero()).unwrap_err(), Error::ZeroElement);
        assert!(matches!(AmbientRing::build(&f, 0, 2, &one, &one), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn dual_ring_parameters() {
        let amb = build(2, 1, 1, 3, 1, 1);
        let dual = amb.dual().unwrap();
        assert_eq!(dual.lambda(), amb.lambda());
        for (a, b) in amb.factors().iter().zip(dual.factors()) {
            assert_eq!(b.f, a.f.monic_normalized_reciprocal().unwrap());
        }

        let amb = build(3, 1, 1, 2, 2, 1);
        let dual = amb.dual().unwrap();
        let f = amb.field().clone();
        let r = amb.chain_ring();
        assert_eq!(r.mul(dual.lambda(), amb.lambda()), r.one());
        let df = &dual.factors()[0].f;
        assert_eq!(df, &Poly::from_ints(&f, &[-2, 0, 1]));
        let target = Poly::binomial(&f, 2, &f.inv(amb.alpha0()).unwrap());
        assert!(target.rem(df).unwrap().is_zero());
    }

    #[test]
    fn dual_of_dual_restores_lambda() {
        let amb = build(5, 1, 1, 4, 2, 3);
        let back = amb.dual().unwrap().dual().unwrap();
        assert_eq!(back.lambda(), amb.lambda());
        for (a, b) in amb.factors().iter().zip(back.factors()) {
            assert_eq!(a.f, b.f);
            assert_eq!(a.h, b.h);
        }
    }
}
