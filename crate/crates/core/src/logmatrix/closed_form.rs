use num::{BigInt, BigRational, Zero};

use super::ValMat2;
use crate::arith::{require_odd_prime, ExtRational, Mat2};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

fn p_pow_recip(p: u64, k: u32) -> BigRational {
    BigRational::new(BigInt::from(1), num::pow(BigInt::from(p), k as usize))
}

/// `t_n^+ = sum_{i=1}^{floor(n/2)} p^{-2i}`, `t_n^- = sum_{i=1}^{floor(n/2)} p^{-(2i-1)}`.
pub fn tn(p: u64, n: u32, sign: Sign) -> BigRational {
    (1..=n / 2)
        .map(|i| match sign {
            Sign::Plus => p_pow_recip(p, 2 * i),
            Sign::Minus => p_pow_recip(p, 2 * i - 1),
        })
        .fold(BigRational::zero(), |acc, x| acc + x)
}

/// Limits `1/(p^2 - 1)` and `p/(p^2 - 1)`.
pub fn tn_limit(p: u64, sign: Sign) -> BigRational {
    let p = BigInt::from(p);
    let den = &p * &p - 1;
    match sign {
        Sign::Plus => BigRational::new(BigInt::from(1), den),
        Sign::Minus => BigRational::new(p, den),
    }
}

/// Amount by which the `t_n^+` form overstates the r-row: `p^{-n}` for even `n`, else 0.
pub fn even_row_delta(p: u64, n: u32) -> BigRational {
    if n % 2 == 0 {
        p_pow_recip(p, n)
    } else {
        BigRational::zero()
    }
}

fn closed_form_with(
    p: u64,
    r: &ExtRational,
    v_alpha: &BigRational,
    v_beta: &BigRational,
    n: u32,
    plus_level: u32,
) -> Result<ValMat2> {
    require_odd_prime(p)?;
    if n < 2 {
        return Err(Error::InvalidInput("closed form needs n >= 2".into()));
    }
    if let ExtRational::Finite(rv) = r {
        let two_r = rv * BigRational::from_integer(2.into());
        if two_r <= p_pow_recip(p, 1) {
            return Err(Error::HypothesisViolated(format!("2r = {two_r} <= 1/{p}")));
        }
    }
    let scale = BigRational::from_integer(BigInt::from(n + 1));
    let shift = [-(v_alpha * &scale), -(v_beta * &scale)];
    let r_row = r + &tn(p, plus_level, Sign::Plus);
    let t_row = tn(p, n, Sign::Minus);
    let r_row = [&r_row + &shift[0], &r_row + &shift[1]];
    let t_row = [
        ExtRational::Finite(&t_row + &shift[0]),
        ExtRational::Finite(&t_row + &shift[1]),
    ];
    let rows = if n % 2 == 0 { [r_row, t_row] } else { [t_row, r_row] };
    Ok(Mat2::from_rows(rows))
}

/// Valuation matrix of `M_log(varpi_n)` in closed form, valid when `2r > 1/p`.
///
/// The r-row carries `r + t_{n-1}^+`; the t-row carries `t_n^-`. Rows are
/// `[r-row; t-row]` for even `n` and swapped for odd `n`.
pub fn closed_form_ord(
    p: u64,
    r: &ExtRational,
    v_alpha: &BigRational,
    v_beta: &BigRational,
    n: u32,
) -> Result<ValMat2> {
    closed_form_with(p, r, v_alpha, v_beta, n, n.saturating_sub(1))
}

/// Same shape with `t_n^+` in the r-row. Agrees with [`closed_form_ord`] for odd
/// `n` and exceeds it by `p^{-n}` in the r-row for even `n`.
pub fn closed_form_ord_tn_plus(
    p: u64,
    r: &ExtRational,
    v_alpha: &BigRational,
    v_beta: &BigRational,
    n: u32,
) -> Result<ValMat2> {
    closed_form_with(p, r, v_alpha, v_beta, n, n)
}
