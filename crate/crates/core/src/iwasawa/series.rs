//! Truncated power series in one variable `X` and two variables `(X_p, X_q)`.

use std::fmt;

use num::{BigInt, BigRational, One, Zero};

use crate::arith::{integral_parts, vp_rat, Mat2, Ring, UniPoly, Var};
use crate::error::{Error, Result};

/// Power series in `X` known modulo `X^prec`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries1 {
    coeffs: Vec<BigRational>,
}

impl TruncSeries1 {
    /// Pads or truncates `coeffs` to length `prec`.
    pub fn new(prec: usize, mut coeffs: Vec<BigRational>) -> Self {
        coeffs.resize(prec, BigRational::zero());
        TruncSeries1 { coeffs }
    }

    pub fn from_ints(prec: usize, coeffs: &[i64]) -> Self {
        Self::new(prec, coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero(prec: usize) -> Self {
        Self::new(prec, Vec::new())
    }

    pub fn constant(prec: usize, c: BigRational) -> Self {
        Self::new(prec, vec![c])
    }

    pub fn one(prec: usize) -> Self {
        Self::constant(prec, BigRational::one())
    }

    pub fn x(prec: usize) -> Self {
        Self::from_ints(prec, &[0, 1])
    }

    pub fn from_poly(prec: usize, f: &UniPoly) -> Self {
        Self::new(prec, f.coeffs().iter().take(prec).cloned().collect())
    }

    pub fn to_poly(&self) -> UniPoly {
        UniPoly::new(Var::X, self.coeffs.clone())
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn truncated(&self, prec: usize) -> Self {
        Self::new(prec.min(self.prec()), self.coeffs[..prec.min(self.prec())].to_vec())
    }

    /// Index of the first nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.order().is_none()
    }

    /// First index below the common precision where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let prec = self.prec().min(other.prec());
        (0..prec).find(|&i| self.coeffs[i] != other.coeffs[i])
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }

    fn zip(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        let prec = self.prec().min(other.prec());
        Self::new(prec, (0..prec).map(|i| f(&self.coeffs[i], &other.coeffs[i])).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.prec(), self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.prec(), self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec().min(other.prec());
        let (a, da) = integral_parts(&self.coeffs[..prec]);
        let (b, db) = integral_parts(&other.coeffs[..prec]);
        let mut out = vec![BigInt::zero(); prec];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[..prec - i].iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        Self::new(prec, out.into_iter().map(|c| BigRational::new(c, den.clone())).collect())
    }

    /// Quotient by a series whose constant term is a p-adic unit.
    pub fn divide_by_unit(&self, g: &Self, p: u64) -> Result<Self> {
        let g0 = g.coeff(0);
        let v = vp_rat(&g0, p)?;
        if !v.as_finite().is_some_and(|x| x.is_zero()) {
            return Err(Error::NonUnit(format!("constant term {g0} has valuation {v}")));
        }
        Ok(self.div_nonzero_constant(g))
    }

    fn div_nonzero_constant(&self, g: &Self) -> Self {
        let prec = self.prec().min(g.prec());
        let g0_inv = g.coeffs[0].recip();
        let mut q: Vec<BigRational> = Vec::with_capacity(prec);
        for k in 0..prec {
            let mut acc = self.coeffs[k].clone();
            for i in 1..=k {
                if !g.coeffs[i].is_zero() {
                    acc -= &g.coeffs[i] * &q[k - i];
                }
            }
            q.push(acc * &g0_inv);
        }
        Self::new(prec, q)
    }

    /// Exact quotient over the rationals, dropping precision by the X-order of `g`.
    ///
    /// Fails unless `self` vanishes to at least that order.
    pub fn divide(&self, g: &Self) -> Result<Self> {
        let k = g.order().ok_or(Error::DivisionByZero)?;
        if let Some(j) = self.order().filter(|&j| j < k) {
            return Err(Error::InvalidInput(format!(
                "dividend has order {j} below divisor order {k}"
            )));
        }
        let shift = |s: &Self| Self::new(s.prec() - k, s.coeffs[k..].to_vec());
        Ok(shift(self).div_nonzero_constant(&shift(g)))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl Ring for TruncSeries1 {
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn scaled(&self, c: &BigRational) -> Self {
        self.scale(c)
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        Self::zero(self.prec())
    }
    fn one_like(&self) -> Self {
        Self::one(self.prec())
    }
}

impl fmt::Display for TruncSeries1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(X^{})", self.to_poly(), self.prec())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoVar {
    Xp,
    Xq,
}

/// Power series in `(X_p, X_q)` known modulo `(X_p^d, X_q^d)`.
///
/// `grid[i * d + j]` is the coefficient of `X_p^i X_q^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries2 {
    d: usize,
    grid: Vec<BigRational>,
}

impl TruncSeries2 {
    pub fn zero(d: usize) -> Self {
        TruncSeries2 { d, grid: vec![BigRational::zero(); d * d] }
    }

    pub fn from_fn(d: usize, f: impl Fn(usize, usize) -> BigRational) -> Self {
        let grid = (0..d * d).map(|k| f(k / d, k % d)).collect();
        TruncSeries2 { d, grid }
    }

    pub fn one(d: usize) -> Self {
        Self::from_fn(d, |i, j| if i == 0 && j == 0 { BigRational::one() } else { BigRational::zero() })
    }

    pub fn gen(d: usize, var: TwoVar) -> Self {
        lift(&TruncSeries1::x(d), var)
    }

    pub fn bound(&self) -> usize {
        self.d
    }

    pub fn coeff(&self, i: usize, j: usize) -> &BigRational {
        &self.grid[i * self.d + j]
    }

    pub fn is_zero(&self) -> bool {
        self.grid.iter().all(|c| c.is_zero())
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.d, other.d, "two-variable series with different bounds");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let grid = self.grid.iter().zip(&other.grid).map(|(a, b)| a + b).collect();
        TruncSeries2 { d: self.d, grid }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let grid = self.grid.iter().zip(&other.grid).map(|(a, b)| a - b).collect();
        TruncSeries2 { d: self.d, grid }
    }

    pub fn neg(&self) -> Self {
        TruncSeries2 { d: self.d, grid: self.grid.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncSeries2 { d: self.d, grid: self.grid.iter().map(|x| x * c).collect() }
    }

    /// Cost is the product of the supports, so multiplying by a lifted
    /// one-variable series is cubic in `d`.
    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let d = self.d;
        let (a, da) = integral_parts(&self.grid);
        let (b, db) = integral_parts(&other.grid);
        let support = |v: &[BigInt]| -> Vec<(usize, usize, BigInt)> {
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k / d, k % d, c.clone()))
                .collect()
        };
        let (sa, sb) = (support(&a), support(&b));
        let mut out = vec![BigInt::zero(); d * d];
        for (i1, j1, x) in &sa {
            for (i2, j2, y) in &sb {
                if i1 + i2 < d && j1 + j2 < d {
                    out[(i1 + i2) * d + j1 + j2] += x * y;
                }
            }
        }
        let den = da * db;
        TruncSeries2 {
            d,
            grid: out.into_iter().map(|c| BigRational::new(c, den.clone())).collect(),
        }
    }

    /// Multiplies by `X_p - X_q`.
    pub fn times_diagonal_vanisher(&self) -> Self {
        let d = self.d;
        Self::from_fn(d, |i, j| {
            let mut acc = BigRational::zero();
            if i > 0 {
                acc += self.coeff(i - 1, j);
            }
            if j > 0 {
                acc -= self.coeff(i, j - 1);
            }
            acc
        })
    }
}

impl Ring for TruncSeries2 {
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn scaled(&self, c: &BigRational) -> Self {
        self.scale(c)
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        Self::zero(self.d)
    }
    fn one_like(&self) -> Self {
        Self::one(self.d)
    }
}

/// Substitutes `X -> var`.
pub fn lift(f: &TruncSeries1, var: TwoVar) -> TruncSeries2 {
    TruncSeries2::from_fn(f.prec(), |i, j| match var {
        TwoVar::Xp if j == 0 => f.coeff(i),
        TwoVar::Xq if i == 0 => f.coeff(j),
        _ => BigRational::zero(),
    })
}

/// `f(X_p) g(X_q)`.
pub fn outer(f: &TruncSeries1, g: &TruncSeries1) -> TruncSeries2 {
    let d = f.prec().min(g.prec());
    TruncSeries2::from_fn(d, |i, j| f.coeff(i) * g.coeff(j))
}

pub fn lift_matrix(m: &Mat2<TruncSeries1>, var: TwoVar) -> Mat2<TruncSeries2> {
    m.map(|f| lift(f, var))
}

/// Substitutes `X_p -> X`, `X_q -> X`.
pub fn cyc_specialize(f: &TruncSeries2) -> TruncSeries1 {
    let d = f.d;
    let mut out = vec![BigRational::zero(); d];
    for i in 0..d {
        for j in 0..d - i {
            let c = f.coeff(i, j);
            if !c.is_zero() {
                out[i + j] += c;
            }
        }
    }
    TruncSeries1::new(d, out)
}
