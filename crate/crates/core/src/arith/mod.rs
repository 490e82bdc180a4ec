//! Exact substrate: rationals with p-adic valuation, dense polynomials,
//! resultants, shifted cyclotomic polynomials and generic 2x2 matrices.

mod poly;
mod rational;
mod ring;

pub use poly::{cyclotomic_phi, mercator_coeffs, resultant, UniPoly, Var};
pub(crate) use poly::integral_parts;
pub use rational::{
    is_prime, parse_rational, require_odd_prime, require_prime, vp_int, vp_rat, ExtRational,
};
pub use ring::{Mat2, QuadElem, QuadRing, Ring};

pub use num::{BigInt, BigRational};

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den`.
pub fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
