use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};

/// Variable tag of a univariate polynomial.
///
/// `X` is the Iwasawa variable `gamma - 1`; `Y` is the variable of the
/// cyclotomic presentation, whose class modulo the modulus is `zeta - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn symbol(self) -> char {
        match self {
            Var::X => 'X',
            Var::Y => 'Y',
        }
    }
}

/// Dense polynomial over the rationals, low degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    var: Var,
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(var: Var, mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { var, coeffs }
    }

    pub fn from_ints(var: Var, coeffs: &[i64]) -> Self {
        Self::new(
            var,
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero(var: Var) -> Self {
        UniPoly { var, coeffs: Vec::new() }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, BigRational::one())
    }

    pub fn constant(var: Var, c: BigRational) -> Self {
        Self::new(var, vec![c])
    }

    pub fn monomial(var: Var, c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(var, coeffs)
    }

    /// The polynomial `var`.
    pub fn gen(var: Var) -> Self {
        Self::monomial(var, BigRational::one(), 1)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(&self, var: Var) -> Self {
        UniPoly { var, coeffs: self.coeffs.clone() }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    /// Coefficient of `var^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.var);
        }
        UniPoly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut result = Self::one(self.var);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            return Err(Error::VarMismatch(self.var.symbol(), other.var.symbol()));
        }
        Ok(())
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn divmod(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        self.check_var(d)?;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(self.var), self.clone()));
        }
        let (dnums, dden) = integral_parts(&d.coeffs);
        if dden.is_one() && dnums[dd].abs().is_one() {
            return Ok(self.divmod_unit_lead(&dnums));
        }
        let lead_inv = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(self.var), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * di;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(self.var, quot), Self::new(self.var, rem)))
    }

    /// Long division by an integral divisor with leading coefficient +-1,
    /// carried out on numerators over a common denominator.
    fn divmod_unit_lead(&self, d: &[BigInt]) -> (UniPoly, UniPoly) {
        let dd = d.len() - 1;
        let lead = &d[dd];
        let (mut rem, den) = integral_parts(&self.coeffs);
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * lead;
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.iter().enumerate() {
                rem[k + i] -= &c * di;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        let lift = |v: Vec<BigInt>| {
            UniPoly::new(self.var, v.into_iter().map(|c| BigRational::new(c, den.clone())).collect())
        };
        (lift(quot), lift(rem))
    }

    /// Remainder modulo a monic integral polynomial.
    pub fn rem_monic(&self, m: &UniPoly) -> UniPoly {
        assert!(m.is_monic(), "modulus must be monic");
        let dm = m.coeffs.len() - 1;
        if self.coeffs.len() <= dm {
            return self.clone();
        }
        let (mods, mden) = integral_parts(&m.coeffs);
        assert!(mden.is_one(), "modulus must have integer coefficients");
        let (mut rem, den) = integral_parts(&self.coeffs);
        while rem.len() > dm {
            let c = rem.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let k = rem.len() - dm;
            for i in 0..dm {
                rem[k + i] -= &c * &mods[i];
            }
        }
        UniPoly::new(
            self.var,
            rem.into_iter().map(|c| BigRational::new(c, den.clone())).collect(),
        )
    }

    /// X-adic order: index of the lowest non-zero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        self.check_var(rhs).expect("polynomial addition");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        UniPoly::new(self.var, coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self.check_var(rhs).expect("polynomial subtraction");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        UniPoly::new(self.var, coeffs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        self.check_var(rhs).expect("polynomial multiplication");
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.var);
        }
        let (a, da) = integral_parts(&self.coeffs);
        let (b, db) = integral_parts(&rhs.coeffs);
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        UniPoly::new(
            self.var,
            out.into_iter().map(|c| BigRational::new(c, den.clone())).collect(),
        )
    }
}

/// Splits rational coefficients into integer numerators over a common denominator.
pub(crate) fn integral_parts(coeffs: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = coeffs
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    (nums, den)
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let v = self.var.symbol();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "{}", v)?,
                (1, false) => write!(f, "{}*{}", mag, v)?,
                (_, true) => write!(f, "{}^{}", v, i)?,
                (_, false) => write!(f, "{}*{}^{}", mag, v, i)?,
            }
        }
        Ok(())
    }
}

/// Resultant of `a` and `b` by the Euclidean remainder sequence over the rationals.
///
/// For monic `a` this is the product of `b` over the roots of `a`.
pub fn resultant(a: &UniPoly, b: &UniPoly) -> Result<BigRational> {
    a.check_var(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidInput("resultant of two zero polynomials".into()));
    }
    if a.is_zero() || b.is_zero() {
        return Ok(BigRational::zero());
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = BigRational::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        if db == 0 {
            return Ok(acc * pow_rat(&b.coeffs[0], da));
        }
        if da < db {
            if (da * db) % 2 == 1 {
                acc = -acc;
            }
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        // res(a, b) = (-1)^{da db} lc(b)^{da - deg r} res(b, r)
        let (_, r) = a.divmod(&b)?;
        let Some(dr) = r.degree() else {
            return Ok(BigRational::zero());
        };
        if (da * db) % 2 == 1 {
            acc = -acc;
        }
        acc *= pow_rat(b.leading().unwrap(), da - dr);
        a = b;
        b = r;
    }
}

fn pow_rat(x: &BigRational, k: usize) -> BigRational {
    num::pow::pow(x.clone(), k)
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `Phi_{p^j}(1 + Y) = sum_{i<p} (1 + Y)^{i p^{j-1}}`, monic of degree `p^{j-1}(p-1)`.
pub fn cyclotomic_phi(p: u64, j: u32) -> Result<UniPoly> {
    super::require_prime(p)?;
    if j == 0 {
        return Err(Error::InvalidInput("cyclotomic index must be >= 1".into()));
    }
    let m = p.pow(j - 1);
    let deg = (m * (p - 1)) as usize;
    let coeffs = (0..=deg as u64)
        .map(|k| {
            let c: BigInt = (0..p).map(|i| binomial(i * m, k)).sum();
            BigRational::from_integer(c)
        })
        .collect();
    Ok(UniPoly::new(Var::Y, coeffs))
}

/// First `d` coefficients of `log(1 + X) / X`, i.e. `(-1)^k / (k + 1)`.
pub fn mercator_coeffs(d: usize) -> Vec<BigRational> {
    (0..d)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            BigRational::new(BigInt::from(sign), BigInt::from(k as u64 + 1))
        })
        .collect()
}
