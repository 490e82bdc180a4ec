use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};

/// A rational number or `+inf`, the value set of a p-adic valuation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(BigRational),
    Infinity,
}

impl ExtRational {
    pub fn finite(q: BigRational) -> Self {
        ExtRational::Finite(q)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRational::Infinity)
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            ExtRational::Finite(q) => Some(q),
            ExtRational::Infinity => None,
        }
    }

    pub fn min_of(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        match self {
            ExtRational::Finite(q) => ExtRational::Finite(q * k),
            ExtRational::Infinity => {
                assert!(k.is_positive(), "infinity scaled by a non-positive factor");
                ExtRational::Infinity
            }
        }
    }
}

impl From<BigRational> for ExtRational {
    fn from(q: BigRational) -> Self {
        ExtRational::Finite(q)
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Infinity, ExtRational::Infinity) => Ordering::Equal,
            (ExtRational::Infinity, _) => Ordering::Greater,
            (_, ExtRational::Infinity) => Ordering::Less,
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for &ExtRational {
    type Output = ExtRational;
    fn add(self, rhs: &ExtRational) -> ExtRational {
        match (self, rhs) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => ExtRational::Finite(a + b),
            _ => ExtRational::Infinity,
        }
    }
}

impl Add for ExtRational {
    type Output = ExtRational;
    fn add(self, rhs: ExtRational) -> ExtRational {
        &self + &rhs
    }
}

impl Add<&BigRational> for &ExtRational {
    type Output = ExtRational;
    fn add(self, rhs: &BigRational) -> ExtRational {
        match self {
            ExtRational::Finite(a) => ExtRational::Finite(a + rhs),
            ExtRational::Infinity => ExtRational::Infinity,
        }
    }
}

/// Serialized as `"p/q"`, `"n"` or `"inf"`.
impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(q) => write!(f, "{}", q),
            ExtRational::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for ExtRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" => Ok(ExtRational::Infinity),
            other => parse_rational(other).map(ExtRational::Finite),
        }
    }
}

/// Parses `"n"` or `"num/den"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(n, d))
        }
        None => BigInt::from_str(s)
            .map(BigRational::from_integer)
            .map_err(|_| bad()),
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

pub fn require_odd_prime(p: u64) -> Result<()> {
    require_prime(p)?;
    if p == 2 {
        return Err(Error::InvalidInput("p must be an odd prime".into()));
    }
    Ok(())
}

/// Exponent of `p` in a non-zero integer.
pub fn vp_int(n: &BigInt, p: u64) -> u64 {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// p-adic valuation of a rational, normalized by `v_p(p) = 1`.
pub fn vp_rat(q: &BigRational, p: u64) -> Result<ExtRational> {
    require_prime(p)?;
    if q.is_zero() {
        return Ok(ExtRational::Infinity);
    }
    let num = vp_int(q.numer(), p) as i64;
    let den = if q.denom().is_one() {
        0
    } else {
        vp_int(q.denom(), p) as i64
    };
    Ok(ExtRational::Finite(BigRational::from_integer(BigInt::from(
        num - den,
    ))))
}
