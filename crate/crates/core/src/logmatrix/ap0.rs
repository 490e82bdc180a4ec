use num::{BigRational, Zero};

use super::build::{build_cn, build_mn};
use super::closed_form::Sign;
use super::eval::eval_mlog;
use crate::arith::{cyclotomic_phi, ExtRational, Mat2, QuadElem, Ring, UniPoly, Var};
use crate::cyclo::{phi_at_varpi, CycloCtx, CycloElem};
use crate::error::{Error, Result};
use crate::hecke::HeckeData;

fn factor_index(sign: Sign, i: u32) -> u32 {
    match sign {
        Sign::Plus => 2 * i,
        Sign::Minus => 2 * i - 1,
    }
}

/// Partial product `(1/p) prod_{i=1}^{m} Phi_{p^{k_i}}(1 + X) / p` with
/// `k_i = 2i` for `log^+` and `k_i = 2i - 1` for `log^-`.
pub fn pollack_log_trunc(p: u64, sign: Sign, m: u32) -> Result<UniPoly> {
    if m == 0 {
        return Err(Error::InvalidInput("factor count must be >= 1".into()));
    }
    let p_inv = BigRational::from_integer(p.into()).recip();
    let mut acc = UniPoly::constant(Var::Y, p_inv.clone());
    for i in 1..=m {
        acc = &acc * &cyclotomic_phi(p, factor_index(sign, i))?.scale(&p_inv);
    }
    Ok(acc.with_var(Var::X))
}

/// Valuations of the `m`-factor truncations of `log^+` and `log^-` at `varpi_n`.
pub fn pollack_eval_vals(p: u64, m: u32, n: u32) -> Result<(ExtRational, ExtRational)> {
    let ctx = CycloCtx::new(p, n)?;
    let p_inv = BigRational::from_integer(p.into()).recip();
    let eval = |sign: Sign| -> Result<ExtRational> {
        let mut acc = CycloElem::constant(&ctx, p_inv.clone());
        for i in 1..=m {
            acc = acc.times(&phi_at_varpi(&ctx, factor_index(sign, i))?.scaled(&p_inv));
        }
        Ok(acc.val_min())
    };
    Ok((eval(Sign::Plus)?, eval(Sign::Minus)?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ap0LevelReport {
    pub n: u32,
    /// `C_1 ... C_n` is diagonal `(prod -eps Phi_even, prod -eps Phi_odd)` for even
    /// `n` and antidiagonal for odd `n`.
    pub checkerboard: bool,
    /// Top row of `M_log(varpi_n)` vanishes for even `n`, bottom row for odd `n`.
    /// `None` at `n = 1`, where the evaluation is not defined.
    pub row_vanishing: Option<bool>,
    /// `a_n b_n / (prod Phi_even)^2` as a constant of `Q[alpha]`.
    pub ab_constant: Option<QuadElem<BigRational>>,
    /// `c_n d_n / (prod Phi_odd)^2` as a constant of `Q[alpha]`.
    pub cd_constant: Option<QuadElem<BigRational>>,
    /// `ab_constant / cd_constant`
    pub eta: Option<QuadElem<BigRational>>,
    pub log_plus_val: ExtRational,
    pub log_minus_val: ExtRational,
    /// `log^+` vanishes at even levels and `log^-` at odd levels, the other not.
    pub log_parity: bool,
}

impl Ap0LevelReport {
    pub fn passed(&self) -> bool {
        self.checkerboard
            && self.row_vanishing.unwrap_or(true)
            && self.ab_constant.is_some()
            && self.cd_constant.is_some()
            && self.log_parity
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ap0Report {
    pub p: u64,
    pub levels: Vec<Ap0LevelReport>,
}

impl Ap0Report {
    pub fn passed(&self) -> bool {
        self.levels.iter().all(Ap0LevelReport::passed)
    }
}

fn constant_quotient(f: &QuadElem<UniPoly>, d: &UniPoly) -> Result<Option<QuadElem<BigRational>>> {
    let mut parts = Vec::with_capacity(2);
    for g in [&f.u, &f.v] {
        let (quot, rem) = g.divmod(d)?;
        if !rem.is_zero() || quot.degree().unwrap_or(0) > 0 {
            return Ok(None);
        }
        parts.push(quot.coeff(0));
    }
    let v = parts.pop().unwrap();
    let u = parts.pop().unwrap();
    Ok(Some(QuadElem::new(f.ring(), u, v)))
}

/// Structure of `M_n` and `M_log(varpi_n)` when `a_p = 0`, for levels `1..=n`.
pub fn ap0_structure_check(h: &HeckeData, n: u32) -> Result<Ap0Report> {
    if !h.a_p.is_zero() {
        return Err(Error::InvalidInput("a_p = 0 required".into()));
    }
    if n == 0 {
        return Err(Error::InvalidInput("n must be >= 1".into()));
    }
    let mut levels = Vec::new();
    let mut prefix: Option<Mat2<UniPoly>> = None;
    let mut even_phi = UniPoly::one(Var::X);
    let mut odd_phi = UniPoly::one(Var::X);
    let mut even_signed = UniPoly::one(Var::X);
    let mut odd_signed = UniPoly::one(Var::X);
    for level in 1..=n {
        let cj = build_cn(h, level)?;
        let prod = match prefix.take() {
            Some(pm) => pm.mul(&cj),
            None => cj,
        };
        let phi = cyclotomic_phi(h.p, level)?.with_var(Var::X);
        let signed = phi.scale(&-&h.eps_p);
        if level % 2 == 0 {
            even_phi = &even_phi * &phi;
            even_signed = &even_signed * &signed;
        } else {
            odd_phi = &odd_phi * &phi;
            odd_signed = &odd_signed * &signed;
        }
        let checkerboard = if level % 2 == 0 {
            prod.get(0, 1).is_zero()
                && prod.get(1, 0).is_zero()
                && *prod.get(0, 0) == even_signed
                && *prod.get(1, 1) == odd_signed
        } else {
            prod.get(0, 0).is_zero() && prod.get(1, 1).is_zero()
        };

        let row_vanishing = if level >= 2 {
            let ev = eval_mlog(h, level)?;
            let (zero_row, other) = if level % 2 == 0 { (0, 1) } else { (1, 0) };
            Some(ev.p_mat.get(zero_row, 0).is_zero() && !ev.p_mat.get(other, 0).is_zero())
        } else {
            None
        };

        let mn = build_mn(h, level)?;
        let ab = mn.get(0, 0).times(mn.get(0, 1));
        let cd = mn.get(1, 0).times(mn.get(1, 1));
        let ab_constant = constant_quotient(&ab, &(&even_phi * &even_phi))?;
        let cd_constant = constant_quotient(&cd, &(&odd_phi * &odd_phi))?;
        let eta = match (&ab_constant, &cd_constant) {
            (Some(x), Some(y)) => y.inverse().ok().map(|inv| x.times(&inv)),
            _ => None,
        };

        let (log_plus_val, log_minus_val) = pollack_eval_vals(h.p, level.div_ceil(2), level)?;
        let log_parity = if level % 2 == 0 {
            log_plus_val.is_infinite() && !log_minus_val.is_infinite()
        } else {
            log_minus_val.is_infinite() && !log_plus_val.is_infinite()
        };

        levels.push(Ap0LevelReport {
            n: level,
            checkerboard,
            row_vanishing,
            ab_constant,
            cd_constant,
            eta,
            log_plus_val,
            log_minus_val,
            log_parity,
        });
        prefix = Some(prod);
    }
    Ok(Ap0Report { p: h.p, levels })
}
