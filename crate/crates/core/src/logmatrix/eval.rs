use std::sync::Arc;

use num::{BigInt, BigRational};

use super::ValMat2;
use crate::arith::{Mat2, QuadElem, Ring};
use crate::cyclo::{phi_at_varpi, CycloCtx, CycloElem};
use crate::error::{Error, Result};
use crate::hecke::HeckeData;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Root {
    Alpha,
    Beta,
}

/// `sign * cyclo_part * root^exponent`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredEntry {
    pub cyclo_part: CycloElem,
    pub root: Root,
    pub exponent: i64,
    pub sign: i8,
}

/// `M_log(varpi_n)` with entries `-P_{i1} * lambda_j^{-(n+1)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredEvalMat {
    pub n: u32,
    pub ctx: Arc<CycloCtx>,
    /// `P = C_1(varpi_n) ... C_{n-1}(varpi_n)`
    pub p_mat: Mat2<CycloElem>,
    pub entries: Mat2<FactoredEntry>,
}

fn c_at_varpi(h: &HeckeData, ctx: &Arc<CycloCtx>, j: u32) -> Result<Mat2<CycloElem>> {
    let phi = phi_at_varpi(ctx, j)?;
    Ok(Mat2::new(
        CycloElem::constant(ctx, h.a_p.clone()),
        CycloElem::one(ctx),
        phi.scaled(&-&h.eps_p),
        CycloElem::zero(ctx),
    ))
}

/// Exact `M_log(varpi_n)` in factored form.
///
/// `C_n(varpi_n)` has a zero bottom row and `C_n(varpi_n) C^{-n-2} A` collapses to
/// `[[-alpha^{-n-1}, -beta^{-n-1}], [0, 0]]`; factors `C_m` with `m > n` cancel
/// against `C^{-1}` because `Phi_{p^m}(varpi_n) = p`.
pub fn eval_mlog(h: &HeckeData, n: u32) -> Result<FactoredEvalMat> {
    if n < 2 {
        return Err(Error::InvalidInput("evaluation at varpi_n needs n >= 2".into()));
    }
    let ctx = CycloCtx::new(h.p, n)?;
    let mut p_mat = c_at_varpi(h, &ctx, 1)?;
    for j in 2..n {
        p_mat = p_mat.mul(&c_at_varpi(h, &ctx, j)?);
    }
    let exponent = -(n as i64 + 1);
    let entry = |i: usize, root: Root| FactoredEntry {
        cyclo_part: p_mat.get(i, 0).clone(),
        root,
        exponent,
        sign: -1,
    };
    let entries = Mat2::from_rows([
        [entry(0, Root::Alpha), entry(0, Root::Beta)],
        [entry(1, Root::Alpha), entry(1, Root::Beta)],
    ]);
    Ok(FactoredEvalMat { n, ctx, p_mat, entries })
}

/// `v(cyclo_part) + exponent * v(lambda_j)`, infinite for zero entries.
pub fn ord_of_eval(m: &FactoredEvalMat, h: &HeckeData) -> ValMat2 {
    m.entries.map(|f| {
        let slope = match f.root {
            Root::Alpha => &h.v_alpha,
            Root::Beta => &h.v_beta,
        };
        let shift = slope * BigRational::from_integer(BigInt::from(f.exponent));
        &f.cyclo_part.val_min() + &shift
    })
}

/// Multiplies out the factored form inside `Q(zeta_{p^n})[alpha]`.
///
/// Uses `alpha^{-1} = beta / c` and `beta^{-1} = alpha / c`.
pub fn expand_factored(m: &FactoredEvalMat, h: &HeckeData) -> Mat2<QuadElem<CycloElem>> {
    let q = h.quad_ring();
    let one = CycloElem::one(&m.ctx);
    let c_inv = h.c.recip();
    let inv = |root: Root| match root {
        Root::Alpha => QuadElem::beta(&q, &one).scaled(&c_inv),
        Root::Beta => QuadElem::alpha(&q, &one).scaled(&c_inv),
    };
    m.entries.map(|f| {
        assert!(f.exponent <= 0);
        let base = inv(f.root);
        let mut power = QuadElem::embed(&q, one.clone());
        for _ in 0..(-f.exponent) {
            power = power.times(&base);
        }
        let value = QuadElem::embed(&q, f.cyclo_part.clone()).times(&power);
        if f.sign < 0 {
            value.negated()
        } else {
            value
        }
    })
}

/// `M_m(varpi_n) = C_1 ... C_m (varpi_n) C^{-m-2} A`, every factor evaluated directly.
pub fn eval_mn_direct(
    h: &HeckeData,
    m: u32,
    ctx: &Arc<CycloCtx>,
) -> Result<Mat2<QuadElem<CycloElem>>> {
    if m == 0 {
        return Err(Error::InvalidInput("M_m needs m >= 1".into()));
    }
    let q = h.quad_ring();
    let mut prod = c_at_varpi(h, ctx, 1)?;
    for j in 2..=m {
        prod = prod.mul(&c_at_varpi(h, ctx, j)?);
    }
    let c = Mat2::new(
        CycloElem::constant(ctx, h.a_p.clone()),
        CycloElem::one(ctx),
        CycloElem::constant(ctx, -&h.c),
        CycloElem::zero(ctx),
    );
    let c_inv = c.adjugate().scaled(&h.c.recip());
    let tail = prod.mul(&c_inv.pow(m as u64 + 2));
    let one = CycloElem::one(ctx);
    let a = Mat2::new(
        QuadElem::embed(&q, one.negated()),
        QuadElem::embed(&q, one.negated()),
        QuadElem::beta(&q, &one),
        QuadElem::alpha(&q, &one),
    );
    Ok(tail.map(|x| QuadElem::embed(&q, x.clone())).mul(&a))
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabReport {
    pub n: u32,
    pub m: u32,
    pub passed: bool,
    /// First entry where `M_m(varpi_n)` and `M_n(varpi_n)` differ.
    pub mismatch: Option<(usize, usize)>,
    /// Whether the factored form of `M_log(varpi_n)` expands to `M_n(varpi_n)`.
    pub factored_agrees: bool,
}

/// Checks `M_m(varpi_n) = M_n(varpi_n)` entrywise for `2 <= n < m`.
pub fn stabilization_check(h: &HeckeData, n: u32, m: u32) -> Result<StabReport> {
    if n < 2 || m <= n {
        return Err(Error::InvalidInput(format!("need 2 <= n < m, got n={n}, m={m}")));
    }
    let ctx = CycloCtx::new(h.p, n)?;
    let at_n = eval_mn_direct(h, n, &ctx)?;
    let at_m = eval_mn_direct(h, m, &ctx)?;
    let mismatch = [(0, 0), (0, 1), (1, 0), (1, 1)]
        .into_iter()
        .find(|&(i, j)| at_n.get(i, j) != at_m.get(i, j));
    let factored_agrees = expand_factored(&eval_mlog(h, n)?, h) == at_n;
    Ok(StabReport { n, m, passed: mismatch.is_none() && factored_agrees, mismatch, factored_agrees })
}
