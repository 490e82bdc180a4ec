//! Arithmetic and valuations in `Q(zeta_{p^n})`, presented on the basis of
//! powers of the uniformizer `varpi_n = zeta_{p^n} - 1`.

use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Zero};

use crate::arith::{
    cyclotomic_phi, require_prime, resultant, vp_rat, ExtRational, Ring, UniPoly, Var,
};
use crate::error::{Error, Result};

/// Level-`n` context: the modulus `Phi_{p^n}(1 + Y)` and its degree `e = p^{n-1}(p-1)`.
#[derive(Debug)]
pub struct CycloCtx {
    p: u64,
    n: u32,
    modulus: UniPoly,
    e: usize,
}

impl PartialEq for CycloCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n
    }
}

impl CycloCtx {
    pub fn new(p: u64, n: u32) -> Result<Arc<Self>> {
        require_prime(p)?;
        if n == 0 {
            return Err(Error::InvalidInput("cyclotomic level must be >= 1".into()));
        }
        let modulus = cyclotomic_phi(p, n)?;
        let e = modulus.degree().unwrap();
        Ok(Arc::new(CycloCtx { p, n, modulus, e }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }
}

/// `sum coeffs[i] * varpi^i` with exactly `e` coefficients.
#[derive(Debug, Clone)]
pub struct CycloElem {
    ctx: Arc<CycloCtx>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.coeffs == other.coeffs
    }
}

impl CycloElem {
    fn from_reduced(ctx: &Arc<CycloCtx>, poly: UniPoly) -> Self {
        let mut coeffs = poly.into_coeffs();
        coeffs.resize(ctx.e, BigRational::zero());
        CycloElem { ctx: Arc::clone(ctx), coeffs }
    }

    pub fn zero(ctx: &Arc<CycloCtx>) -> Self {
        CycloElem { ctx: Arc::clone(ctx), coeffs: vec![BigRational::zero(); ctx.e] }
    }

    pub fn constant(ctx: &Arc<CycloCtx>, q: BigRational) -> Self {
        let mut x = Self::zero(ctx);
        x.coeffs[0] = q;
        x
    }

    pub fn one(ctx: &Arc<CycloCtx>) -> Self {
        Self::constant(ctx, BigRational::one())
    }

    /// The uniformizer `zeta - 1`.
    pub fn varpi(ctx: &Arc<CycloCtx>) -> Self {
        Self::reduce(ctx, &UniPoly::gen(Var::Y)).unwrap()
    }

    /// Coefficients on the `varpi^i` basis, padded to length `e`.
    pub fn from_coeffs(ctx: &Arc<CycloCtx>, coeffs: Vec<BigRational>) -> Self {
        Self::reduce(ctx, &UniPoly::new(Var::Y, coeffs)).unwrap()
    }

    /// Remainder of a `Y`-polynomial modulo `Phi_{p^n}(1 + Y)`.
    pub fn reduce(ctx: &Arc<CycloCtx>, f: &UniPoly) -> Result<Self> {
        if f.var() != Var::Y {
            return Err(Error::VarMismatch(f.var().symbol(), 'Y'));
        }
        Ok(Self::from_reduced(ctx, f.rem_monic(&ctx.modulus)))
    }

    /// Substitutes `varpi` for the variable of `f`, whatever its tag.
    pub fn evaluate(ctx: &Arc<CycloCtx>, f: &UniPoly) -> Self {
        Self::reduce(ctx, &f.with_var(Var::Y)).unwrap()
    }

    pub fn ctx(&self) -> &Arc<CycloCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn as_poly(&self) -> UniPoly {
        UniPoly::new(Var::Y, self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if *self.ctx != *other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycloElem { ctx: Arc::clone(&self.ctx), coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ctx));
        }
        let prod = &self.as_poly() * &other.as_poly();
        Ok(Self::from_reduced(&self.ctx, prod.rem_monic(&self.ctx.modulus)))
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut result = Self::one(&self.ctx);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.times(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.times(&base);
            }
        }
        result
    }

    /// Valuation by the basis rule `min_i v_p(coeffs[i]) + i/e`.
    ///
    /// The candidates have pairwise distinct fractional parts, so the minimum is
    /// attained once and equals the valuation.
    pub fn val_min(&self) -> ExtRational {
        let e = BigInt::from(self.ctx.e as u64);
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .map(|(i, c)| {
                let v = vp_rat(c, self.ctx.p).unwrap();
                &v + &BigRational::new(BigInt::from(i as u64), e.clone())
            })
            .min()
            .unwrap_or(ExtRational::Infinity)
    }

    /// Valuation through the norm: `v_p(Res(modulus, x)) / e`.
    ///
    /// Independent of [`CycloElem::val_min`]; valid because `p` is totally
    /// ramified with a single prime above it.
    pub fn val_norm_oracle(&self) -> ExtRational {
        if self.is_zero() {
            return ExtRational::Infinity;
        }
        let norm = resultant(&self.ctx.modulus, &self.as_poly()).unwrap();
        let e = BigRational::from_integer(BigInt::from(self.ctx.e as u64));
        vp_rat(&norm, self.ctx.p).unwrap().scale(&e.recip())
    }
}

impl Ring for CycloElem {
    fn plus(&self, other: &Self) -> Self {
        self.try_add(other).expect("cyclotomic addition")
    }
    fn minus(&self, other: &Self) -> Self {
        self.try_add(&other.negated()).expect("cyclotomic subtraction")
    }
    fn times(&self, other: &Self) -> Self {
        self.try_mul(other).expect("cyclotomic multiplication")
    }
    fn negated(&self) -> Self {
        CycloElem { ctx: Arc::clone(&self.ctx), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn scaled(&self, c: &BigRational) -> Self {
        CycloElem {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
    fn vanishes(&self) -> bool {
        CycloElem::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        CycloElem::zero(&self.ctx)
    }
    fn one_like(&self) -> Self {
        CycloElem::one(&self.ctx)
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.as_poly().to_string().replace('Y', "w");
        write!(f, "{}", s)
    }
}

/// `Phi_{p^j}(1 + Y)` evaluated at `varpi_n`.
///
/// Computed by repeated `p`-th powering of `zeta = 1 + varpi`; once `zeta^{p^{j-1}}`
/// reaches 1 the sum collapses to the constant `p`.
pub fn phi_at_varpi(ctx: &Arc<CycloCtx>, j: u32) -> Result<CycloElem> {
    if j == 0 {
        return Err(Error::InvalidInput("cyclotomic index must be >= 1".into()));
    }
    let one = CycloElem::one(ctx);
    let mut w = one.plus(&CycloElem::varpi(ctx));
    for _ in 1..j {
        if w == one {
            break;
        }
        w = w.pow(ctx.p);
    }
    let mut sum = CycloElem::zero(ctx);
    let mut term = one;
    for _ in 0..ctx.p {
        sum = sum.plus(&term);
        term = term.times(&w);
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, rat};

    fn fin(q: BigRational) -> ExtRational {
        ExtRational::Finite(q)
    }

    #[test]
    fn reduce_examples() {
        let c31 = CycloCtx::new(3, 1).unwrap();
        let phi = UniPoly::from_ints(Var::Y, &[3, 3, 1]);
        assert!(CycloElem::reduce(&c31, &phi).unwrap().is_zero());
        let y3 = UniPoly::from_ints(Var::Y, &[0, 0, 0, 1]);
        assert_eq!(CycloElem::reduce(&c31, &y3).unwrap().coeffs(), &[rat(9), rat(6)]);
        let c32 = CycloCtx::new(3, 2).unwrap();
        let y = CycloElem::reduce(&c32, &UniPoly::gen(Var::Y)).unwrap();
        assert_eq!(y.coeffs().len(), 6);
        assert_eq!(y.coeffs()[1], rat(1));
        assert!(CycloElem::reduce(&c32, &UniPoly::gen(Var::X)).is_err());
    }

    #[test]
    fn mul_examples() {
        let c31 = CycloCtx::new(3, 1).unwrap();
        let w = CycloElem::varpi(&c31);
        assert_eq!(w.times(&w).coeffs(), &[rat(-3), rat(-3)]);
        assert_eq!(w.times(&CycloElem::one(&c31)), w);
        assert!(w.times(&CycloElem::zero(&c31)).is_zero());
        let c32 = CycloCtx::new(3, 2).unwrap();
        assert_eq!(w.try_mul(&CycloElem::varpi(&c32)), Err(Error::ContextMismatch));
    }

    #[test]
    fn phi_at_varpi_examples() {
        let c32 = CycloCtx::new(3, 2).unwrap();
        let phi1 = phi_at_varpi(&c32, 1).unwrap();
        assert_eq!(phi1, CycloElem::evaluate(&c32, &UniPoly::from_ints(Var::Y, &[3, 3, 1])));
        assert_eq!(phi1.val_min(), fin(frac(1, 3)));
        assert!(phi_at_varpi(&c32, 2).unwrap().is_zero());
        let c31 = CycloCtx::new(3, 1).unwrap();
        assert_eq!(phi_at_varpi(&c31, 2).unwrap(), CycloElem::constant(&c31, rat(3)));
    }

    #[test]
    fn phi_at_varpi_matches_direct_reduction() {
        for (p, n) in [(3u64, 1u32), (3, 2), (5, 1), (5, 2)] {
            let ctx = CycloCtx::new(p, n).unwrap();
            for j in 1..=3 {
                let direct = CycloElem::reduce(&ctx, &cyclotomic_phi(p, j).unwrap()).unwrap();
                assert_eq!(phi_at_varpi(&ctx, j).unwrap(), direct, "p={p} n={n} j={j}");
            }
        }
    }

    #[test]
    fn valuation_examples() {
        let c32 = CycloCtx::new(3, 2).unwrap();
        let w = CycloElem::varpi(&c32);
        assert_eq!(w.val_min(), fin(frac(1, 6)));
        assert_eq!(w.val_norm_oracle(), fin(frac(1, 6)));
        let x = CycloElem::from_coeffs(&c32, vec![rat(3), rat(3), rat(1)]);
        assert_eq!(x.val_min(), fin(frac(1, 3)));
        assert_eq!(x.val_norm_oracle(), fin(frac(1, 3)));
        let three = CycloElem::constant(&c32, rat(3));
        assert_eq!(three.val_norm_oracle(), fin(rat(1)));
        assert_eq!(three.val_min(), fin(rat(1)));
        assert_eq!(CycloElem::zero(&c32).val_min(), ExtRational::Infinity);
        assert_eq!(CycloElem::zero(&c32).val_norm_oracle(), ExtRational::Infinity);
    }

    #[test]
    fn phi_trichotomy() {
        for (p, n) in [(3u64, 2u32), (3, 3), (5, 2)] {
            let ctx = CycloCtx::new(p, n).unwrap();
            for j in 1..=n + 2 {
                let x = phi_at_varpi(&ctx, j).unwrap();
                if j < n {
                    let expected = BigRational::new(1.into(), BigInt::from(p.pow(n - j)));
                    assert_eq!(x.val_min(), fin(expected));
                } else if j == n {
                    assert!(x.is_zero());
                } else {
                    assert_eq!(x, CycloElem::constant(&ctx, rat(p as i64)));
                }
            }
        }
    }
}
