//! Local data of a weight-2 eigenform at a non-ordinary prime.

use std::sync::Arc;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::arith::{require_odd_prime, vp_rat, ExtRational, QuadRing};
use crate::error::{Error, Result};

/// `(p, a_p, eps(p))` with the derived slopes of the Hecke polynomial
/// `X^2 - a_p X + eps(p) p`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeckeData {
    pub p: u64,
    pub a_p: BigRational,
    pub eps_p: BigRational,
    /// `eps(p) * p`
    pub c: BigRational,
    /// `v_p(a_p)`, infinite when `a_p = 0`
    pub r: ExtRational,
    /// Root slopes, `v_alpha <= v_beta`.
    pub v_alpha: BigRational,
    pub v_beta: BigRational,
    /// Ramification index used to convert valuations to uniformizer units.
    pub e_f: u64,
}

impl HeckeData {
    pub fn new(p: u64, a_p: BigRational, eps_p: BigRational) -> Result<Self> {
        require_odd_prime(p)?;
        if vp_rat(&eps_p, p)? != ExtRational::Finite(BigRational::zero()) {
            return Err(Error::InvalidInput(format!("eps(p) = {eps_p} is not a p-adic unit")));
        }
        let (v_alpha, v_beta) = hecke_root_vals(p, &a_p, &eps_p)?;
        let e_f = v_alpha.denom().lcm(v_beta.denom());
        let e_f = u64::try_from(e_f).map_err(|_| Error::InvalidInput("slope denominator".into()))?;
        Ok(HeckeData {
            p,
            c: &eps_p * BigRational::from_integer(BigInt::from(p)),
            r: vp_rat(&a_p, p)?,
            a_p,
            eps_p,
            v_alpha,
            v_beta,
            e_f,
        })
    }

    pub fn from_ints(p: u64, a_p: i64, eps_p: i64) -> Result<Self> {
        Self::new(p, BigRational::from_integer(a_p.into()), BigRational::from_integer(eps_p.into()))
    }

    /// Overrides the ramification index `e_F`.
    pub fn with_ramification(mut self, e_f: u64) -> Result<Self> {
        if e_f == 0 {
            return Err(Error::InvalidInput("ramification index must be positive".into()));
        }
        self.e_f = e_f;
        Ok(self)
    }

    pub fn quad_ring(&self) -> Arc<QuadRing> {
        QuadRing::new(self.a_p.clone(), self.c.clone())
    }

    pub fn p_rat(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.p))
    }

    /// Slope of the root in column `col` (0 for alpha, 1 for beta).
    pub fn root_val(&self, col: usize) -> &BigRational {
        if col == 0 {
            &self.v_alpha
        } else {
            &self.v_beta
        }
    }
}

/// Root valuations from the lower convex hull of `(i, v_p(coeff_i))`.
///
/// `vals[i]` is the valuation of the coefficient of `X^i`; returns the root
/// valuations with multiplicity, sorted ascending. Infinite points are skipped.
pub fn newton_slopes(vals: &[ExtRational]) -> Vec<BigRational> {
    let pts: Vec<(i64, BigRational)> = vals
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.as_finite().map(|q| (i as i64, q.clone())))
        .collect();
    let mut hull: Vec<(i64, BigRational)> = Vec::new();
    for pt in pts {
        while hull.len() >= 2 {
            let (x1, y1) = &hull[hull.len() - 2];
            let (x2, y2) = &hull[hull.len() - 1];
            // drop the middle point when it lies on or above the chord
            let lhs = (y2 - y1) * BigRational::from_integer((pt.0 - x1).into());
            let rhs = (&pt.1 - y1) * BigRational::from_integer((x2 - x1).into());
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut roots = Vec::new();
    for w in hull.windows(2) {
        let width = w[1].0 - w[0].0;
        let slope = (&w[1].1 - &w[0].1) / BigRational::from_integer(width.into());
        for _ in 0..width {
            roots.push(-slope.clone());
        }
    }
    roots.sort();
    roots
}

/// Slopes `(v_alpha, v_beta)` of `X^2 - a_p X + eps p`, ascending.
pub fn hecke_root_vals(
    p: u64,
    a_p: &BigRational,
    eps_p: &BigRational,
) -> Result<(BigRational, BigRational)> {
    let r = vp_rat(a_p, p)?;
    match r.as_finite() {
        Some(q) if q.is_zero() => return Err(Error::OrdinaryForm),
        Some(q) if q.is_negative() => {
            return Err(Error::InvalidInput(format!("v_p(a_p) = {q} is negative")))
        }
        _ => {}
    }
    let c = eps_p * BigRational::from_integer(BigInt::from(p));
    let vals = [vp_rat(&c, p)?, r, ExtRational::Finite(BigRational::zero())];
    let slopes = newton_slopes(&vals);
    debug_assert_eq!(&slopes[0] + &slopes[1], BigRational::one());
    Ok((slopes[0].clone(), slopes[1].clone()))
}
