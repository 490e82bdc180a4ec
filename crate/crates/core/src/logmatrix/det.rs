use num::{BigInt, BigRational, One};

use super::build::build_mn;
use crate::arith::{
    cyclotomic_phi, mercator_coeffs, vp_rat, ExtRational, QuadElem, Ring, UniPoly, Var,
};
use crate::error::Result;
use crate::hecke::HeckeData;

#[derive(Debug, Clone, PartialEq)]
pub struct DetReport {
    pub n: u32,
    pub passed: bool,
    /// `kappa_n = eps^{-2} p^{-n-2} (beta - alpha)`
    pub kappa: QuadElem<BigRational>,
    /// `det(M_n) / prod Phi_j` reduces to a constant.
    pub quotient_is_constant: bool,
    pub mismatch: Option<String>,
    /// `v_p` of `coeff_k(prod_{j<=n} Phi_j / p^n) - (-1)^k/(k+1)` for `k = 0..=10`.
    pub diagnostic: Vec<ExtRational>,
}

/// `prod_{j=1}^{n} Phi_{p^j}(1 + X)`.
fn phi_product(p: u64, n: u32) -> Result<UniPoly> {
    let mut prod = UniPoly::one(Var::Y);
    for j in 1..=n {
        prod = &prod * &cyclotomic_phi(p, j)?;
    }
    Ok(prod.with_var(Var::X))
}

/// Valuations of the gap between `prod_{j<=n} Phi_j / p^n` and `log(1+X)/X`,
/// coefficientwise for `k = 0..=k_max`.
pub fn mercator_diagnostic(p: u64, n: u32, k_max: usize) -> Result<Vec<ExtRational>> {
    let prod = phi_product(p, n)?;
    let scale = BigRational::new(BigInt::one(), num::pow(BigInt::from(p), n as usize));
    mercator_coeffs(k_max + 1)
        .iter()
        .enumerate()
        .map(|(k, c)| vp_rat(&(prod.coeff(k) * &scale - c), p))
        .collect()
}

/// Checks `det(M_n) = kappa_n * prod_{j<=n} Phi_{p^j}(1 + X)` exactly.
pub fn det_identity_check(h: &HeckeData, n: u32) -> Result<DetReport> {
    let mn = build_mn(h, n)?;
    let det = mn.det();
    let prod = phi_product(h.p, n)?;
    let q = h.quad_ring();
    let one = BigRational::one();
    let p_pow = num::pow(h.p_rat(), n as usize + 2);
    let kappa = QuadElem::beta(&q, &one)
        .minus(&QuadElem::alpha(&q, &one))
        .scaled(&(&h.eps_p * &h.eps_p * p_pow).recip());
    let expected = QuadElem::new(&q, prod.scale(&kappa.u), prod.scale(&kappa.v));

    let mut mismatch = None;
    for (part, got, want) in [("1", &det.u, &expected.u), ("alpha", &det.v, &expected.v)] {
        if got != want {
            let len = got.coeffs().len().max(want.coeffs().len());
            let k = (0..len).find(|&k| got.coeff(k) != want.coeff(k)).unwrap();
            mismatch = Some(format!(
                "coefficient of {part}*X^{k}: got {}, expected {}",
                got.coeff(k),
                want.coeff(k)
            ));
            break;
        }
    }
    let is_const = |f: &UniPoly| -> Result<bool> {
        let (quot, rem) = f.divmod(&prod)?;
        Ok(rem.is_zero() && quot.degree().unwrap_or(0) == 0)
    };
    let quotient_is_constant = is_const(&det.u)? && is_const(&det.v)?;
    Ok(DetReport {
        n,
        passed: mismatch.is_none() && quotient_is_constant,
        kappa,
        quotient_is_constant,
        mismatch,
        diagnostic: mercator_diagnostic(h.p, n, 10)?,
    })
}
