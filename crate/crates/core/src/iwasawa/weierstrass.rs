//! Weierstrass invariants of truncated series, their valuation law at
//! `varpi_n`, and the limit argument that pins down `r`.

use std::sync::Arc;

use num::{BigInt, BigRational, One, Zero};
use serde::Serialize;

use super::series::TruncSeries1;
use crate::arith::{require_odd_prime, vp_rat, ExtRational, UniPoly};
use crate::cyclo::{CycloCtx, CycloElem};
use crate::error::{Error, Result};
use crate::logmatrix::{tn_limit, Sign};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassData {
    /// Minimal coefficient valuation, in `v_p` units.
    pub mu: BigRational,
    /// Least index attaining `mu`.
    pub lambda: usize,
    /// `mu` in uniformizer units, `mu * e_F`.
    pub mu_pi: BigRational,
}

fn coeff_mu_lambda(coeffs: &[BigRational], p: u64) -> Result<(BigRational, usize)> {
    let mut best: Option<(BigRational, usize)> = None;
    for (i, c) in coeffs.iter().enumerate() {
        if let ExtRational::Finite(v) = vp_rat(c, p)? {
            if best.as_ref().is_none_or(|(m, _)| v < *m) {
                best = Some((v, i));
            }
        }
    }
    best.ok_or(Error::ZeroSeries)
}

pub fn mu_lambda(f: &TruncSeries1, p: u64, e_f: u64) -> Result<WeierstrassData> {
    let (mu, lambda) = coeff_mu_lambda(f.coeffs(), p)?;
    let mu_pi = &mu * BigRational::from_integer(BigInt::from(e_f));
    Ok(WeierstrassData { mu, lambda, mu_pi })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LawStatus {
    Holds,
    Fails,
    /// `lambda >= p^{n-1}(p-1)`, where the law is not expected.
    BelowThreshold,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalLawReport {
    pub mu: BigRational,
    pub lambda: usize,
    pub e: usize,
    pub predicted: BigRational,
    pub actual: ExtRational,
    pub status: LawStatus,
}

/// Compares `v(F(varpi_n))` with `mu + lambda / (p^{n-1}(p-1))`.
///
/// Coefficient valuations are integers, so every index below `lambda` costs at
/// least `1` more and the law is exact as soon as `lambda < p^{n-1}(p-1)`.
pub fn mu_lambda_eval_law(f: &UniPoly, ctx: &Arc<CycloCtx>) -> Result<EvalLawReport> {
    let (mu, lambda) = coeff_mu_lambda(f.coeffs(), ctx.p())?;
    let e = ctx.e();
    let predicted = &mu + BigRational::new(BigInt::from(lambda), BigInt::from(e));
    let actual = CycloElem::evaluate(ctx, f).val_min();
    let status = if lambda >= e {
        LawStatus::BelowThreshold
    } else if actual == ExtRational::Finite(predicted.clone()) {
        LawStatus::Holds
    } else {
        LawStatus::Fails
    };
    Ok(EvalLawReport { mu, lambda, e, predicted, actual, status })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EndgameReport {
    pub p: u64,
    pub e_f: u64,
    pub r_bound: BigRational,
    /// `lim t_n^- - lim t_n^+`.
    pub limit_gap: BigRational,
    pub forced_r: BigRational,
    pub forced_mu_difference: BigRational,
    pub mu_equal: bool,
    /// The forced `r` violates `r > r_bound`.
    pub contradiction: bool,
}

/// Solves the even and odd limit equations
/// `2(r - g) = (mu_b - mu_#)/e`, `2(r - g) = (mu_# - mu_b)/e`
/// with `g = lim t^- - lim t^+`, in the unknowns `x = r - g`, `y = mu_b - mu_#`.
pub fn theorem_a_endgame(p: u64, e_f: u64, r_bound: &BigRational) -> Result<EndgameReport> {
    require_odd_prime(p)?;
    if e_f == 0 {
        return Err(Error::InvalidInput("ramification index must be positive".into()));
    }
    let limit_gap = tn_limit(p, Sign::Minus) - tn_limit(p, Sign::Plus);
    let two = BigRational::from_integer(BigInt::from(2));
    let inv_e = BigRational::new(BigInt::one(), BigInt::from(e_f));
    // [[2, -1/e], [2, 1/e]] (x, y)^T = 0
    let sys = [[two.clone(), -inv_e.clone()], [two, inv_e]];
    let det = &sys[0][0] * &sys[1][1] - &sys[0][1] * &sys[1][0];
    if det.is_zero() {
        return Err(Error::Degenerate("limit equations are dependent".into()));
    }
    // homogeneous system with nonzero determinant
    let (x, y) = (BigRational::zero(), BigRational::zero());
    let forced_r = &limit_gap + x;
    Ok(EndgameReport {
        p,
        e_f,
        r_bound: r_bound.clone(),
        contradiction: forced_r <= *r_bound,
        mu_equal: y.is_zero(),
        forced_mu_difference: y,
        limit_gap,
        forced_r,
    })
}
