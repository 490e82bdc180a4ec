use std::fmt;
use std::sync::Arc;

use num::{BigRational, One, Zero};

use super::UniPoly;
use crate::error::{Error, Result};

/// Commutative ring with a rational scalar action.
///
/// Elements carry whatever context they need (variable tag, cyclotomic level,
/// quadratic relation), so `zero_like`/`one_like` build constants from a sample.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, c: &BigRational) -> Self;
    fn vanishes(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
}

impl Ring for BigRational {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &BigRational) -> Self {
        self * c
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
}

impl Ring for UniPoly {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &BigRational) -> Self {
        self.scale(c)
    }
    fn vanishes(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        UniPoly::zero(self.var())
    }
    fn one_like(&self) -> Self {
        UniPoly::one(self.var())
    }
}

/// 2x2 matrix over a [`Ring`], indexed `(row, col)` from zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat2<T> {
    e: [[T; 2]; 2],
}

impl<T: Ring> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { e: [[a, b], [c, d]] }
    }

    pub fn identity_like(sample: &T) -> Self {
        let (z, o) = (sample.zero_like(), sample.one_like());
        Mat2::new(o.clone(), z.clone(), z, o)
    }

    pub fn mul(&self, rhs: &Mat2<T>) -> Mat2<T> {
        let m = |i: usize, j: usize| {
            self.e[i][0]
                .times(&rhs.e[0][j])
                .plus(&self.e[i][1].times(&rhs.e[1][j]))
        };
        Mat2::new(m(0, 0), m(0, 1), m(1, 0), m(1, 1))
    }

    pub fn det(&self) -> T {
        self.e[0][0]
            .times(&self.e[1][1])
            .minus(&self.e[0][1].times(&self.e[1][0]))
    }

    /// `[[d, -b], [-c, a]]`, so that `M * adj(M) = det(M) * I`.
    pub fn adjugate(&self) -> Mat2<T> {
        Mat2::new(
            self.e[1][1].clone(),
            self.e[0][1].negated(),
            self.e[1][0].negated(),
            self.e[0][0].clone(),
        )
    }

    pub fn transpose(&self) -> Mat2<T> {
        Mat2::new(
            self.e[0][0].clone(),
            self.e[1][0].clone(),
            self.e[0][1].clone(),
            self.e[1][1].clone(),
        )
    }

    pub fn scaled(&self, c: &BigRational) -> Mat2<T> {
        self.map(|x| x.scaled(c))
    }

    pub fn pow(&self, mut k: u64) -> Mat2<T> {
        let mut result = Mat2::identity_like(&self.e[0][0]);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }
}

impl<T> Mat2<T> {
    /// Builds a matrix without requiring a ring structure on `T`.
    pub fn from_rows(rows: [[T; 2]; 2]) -> Self {
        Mat2 { e: rows }
    }

    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.e[row][col]
    }

    pub fn entries(&self) -> [&T; 4] {
        [&self.e[0][0], &self.e[0][1], &self.e[1][0], &self.e[1][1]]
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Mat2<U> {
        Mat2 {
            e: [
                [f(&self.e[0][0]), f(&self.e[0][1])],
                [f(&self.e[1][0]), f(&self.e[1][1])],
            ],
        }
    }

    pub fn try_map<U, F: Fn(&T) -> Result<U>>(&self, f: F) -> Result<Mat2<U>> {
        Ok(Mat2 {
            e: [
                [f(&self.e[0][0])?, f(&self.e[0][1])?],
                [f(&self.e[1][0])?, f(&self.e[1][1])?],
            ],
        })
    }

    pub fn rows(&self) -> &[[T; 2]; 2] {
        &self.e
    }
}

/// The quadratic relation `T^2 = a_p T - c` of the Hecke polynomial
/// `T^2 - a_p T + c`, with `T` standing for the root `alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadRing {
    pub a_p: BigRational,
    pub c: BigRational,
}

impl QuadRing {
    pub fn new(a_p: BigRational, c: BigRational) -> Arc<Self> {
        Arc::new(QuadRing { a_p, c })
    }

    /// `a_p^2 - 4c`, the square of `beta - alpha`.
    pub fn discriminant(&self) -> BigRational {
        &self.a_p * &self.a_p - BigRational::from_integer(4.into()) * &self.c
    }
}

/// `u + v * alpha` in `R[T] / (T^2 - a_p T + c)`.
#[derive(Debug, Clone)]
pub struct QuadElem<R> {
    ring: Arc<QuadRing>,
    pub u: R,
    pub v: R,
}

impl<R: PartialEq> PartialEq for QuadElem<R> {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.u == other.u && self.v == other.v
    }
}

impl<R: Ring> QuadElem<R> {
    pub fn new(ring: &Arc<QuadRing>, u: R, v: R) -> Self {
        QuadElem { ring: Arc::clone(ring), u, v }
    }

    /// Embeds `x` as `x + 0 * alpha`.
    pub fn embed(ring: &Arc<QuadRing>, x: R) -> Self {
        let v = x.zero_like();
        QuadElem::new(ring, x, v)
    }

    /// `alpha`, with base-ring constants taken from `sample`.
    pub fn alpha(ring: &Arc<QuadRing>, sample: &R) -> Self {
        QuadElem::new(ring, sample.zero_like(), sample.one_like())
    }

    /// `beta = a_p - alpha`.
    pub fn beta(ring: &Arc<QuadRing>, sample: &R) -> Self {
        QuadElem::new(ring, sample.one_like().scaled(&ring.a_p), sample.one_like().negated())
    }

    pub fn ring(&self) -> &Arc<QuadRing> {
        &self.ring
    }

    /// Image under `alpha <-> beta`.
    pub fn conjugate(&self) -> Self {
        QuadElem::new(&self.ring, self.u.plus(&self.v.scaled(&self.ring.a_p)), self.v.negated())
    }

    /// `x * conj(x) = u^2 + a_p u v + c v^2`.
    pub fn norm(&self) -> R {
        let q = &self.ring;
        self.u
            .times(&self.u)
            .plus(&self.u.times(&self.v).scaled(&q.a_p))
            .plus(&self.v.times(&self.v).scaled(&q.c))
    }

    fn check_ring(&self, other: &Self) {
        assert!(*self.ring == *other.ring, "quadratic ring mismatch");
    }
}

impl QuadElem<BigRational> {
    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = n.recip();
        Ok(self.conjugate().scaled(&inv))
    }
}

impl<R: Ring> Ring for QuadElem<R> {
    fn plus(&self, other: &Self) -> Self {
        self.check_ring(other);
        QuadElem::new(&self.ring, self.u.plus(&other.u), self.v.plus(&other.v))
    }
    fn minus(&self, other: &Self) -> Self {
        self.check_ring(other);
        QuadElem::new(&self.ring, self.u.minus(&other.u), self.v.minus(&other.v))
    }
    fn times(&self, other: &Self) -> Self {
        self.check_ring(other);
        let q = &self.ring;
        let vv = self.v.times(&other.v);
        let u = self.u.times(&other.u).minus(&vv.scaled(&q.c));
        let v = self
            .u
            .times(&other.v)
            .plus(&self.v.times(&other.u))
            .plus(&vv.scaled(&q.a_p));
        QuadElem::new(&self.ring, u, v)
    }
    fn negated(&self) -> Self {
        QuadElem::new(&self.ring, self.u.negated(), self.v.negated())
    }
    fn scaled(&self, c: &BigRational) -> Self {
        QuadElem::new(&self.ring, self.u.scaled(c), self.v.scaled(c))
    }
    fn vanishes(&self) -> bool {
        self.u.vanishes() && self.v.vanishes()
    }
    fn zero_like(&self) -> Self {
        QuadElem::new(&self.ring, self.u.zero_like(), self.u.zero_like())
    }
    fn one_like(&self) -> Self {
        QuadElem::new(&self.ring, self.u.one_like(), self.u.zero_like())
    }
}

impl<R: fmt::Display + Ring> fmt::Display for QuadElem<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.vanishes() {
            write!(f, "{}", self.u)
        } else if self.u.vanishes() {
            write!(f, "({})*alpha", self.v)
        } else {
            write!(f, "{} + ({})*alpha", self.u, self.v)
        }
    }
}
