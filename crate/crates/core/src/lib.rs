//! Classification of `(α + uβ)`-constacyclic codes of length `np^s` over
//! the chain ring `F_{p^m} + uF_{p^m}`, `u² = 0`.
//!
//! The ambient ring `R[x]/(x^{np^s} - α - uβ)` splits into chain rings, one
//! per irreducible factor of `x^n - α₀`; codes are named by their exponent
//! vectors and every claim can be cross-checked by the brute-force [`oracle`].

pub mod ambient;
pub mod arith;
pub mod cli;
pub mod codes;
pub mod error;
pub mod export;
pub mod gf;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod ring_r;

pub use ambient::{AmbientRing, FactorData};
pub use codes::{enumerate_codes, CodeSpec, CodewordSet};
pub use error::{Error, Result};
pub use gf::{Field, FieldElem};
pub use poly::{binomial_irreducible, Factorization, Poly};
pub use ring_r::{ChainRing, RElem, RPoly};
