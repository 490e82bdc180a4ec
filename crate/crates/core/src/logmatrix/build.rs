use num::BigRational;

use crate::arith::{cyclotomic_phi, Mat2, QuadElem, Ring, UniPoly, Var};
use crate::error::{Error, Result};
use crate::hecke::HeckeData;

/// 2x2 matrix of `X`-polynomials with coefficients in `Q[alpha]`.
pub type PolyMat2 = Mat2<QuadElem<UniPoly>>;

fn cx(q: &BigRational) -> UniPoly {
    UniPoly::constant(Var::X, q.clone())
}

/// `C = [[a_p, 1], [-eps p, 0]]`.
pub fn build_c(h: &HeckeData) -> Mat2<UniPoly> {
    Mat2::new(
        cx(&h.a_p),
        UniPoly::one(Var::X),
        cx(&-&h.c),
        UniPoly::zero(Var::X),
    )
}

/// `C^{-1} = adj(C) / (eps p)`.
pub fn build_c_inverse(h: &HeckeData) -> Mat2<UniPoly> {
    build_c(h).adjugate().scaled(&h.c.recip())
}

/// `C_j = [[a_p, 1], [-eps Phi_{p^j}(1 + X), 0]]`.
pub fn build_cn(h: &HeckeData, j: u32) -> Result<Mat2<UniPoly>> {
    let phi = cyclotomic_phi(h.p, j)?.with_var(Var::X);
    Ok(Mat2::new(
        cx(&h.a_p),
        UniPoly::one(Var::X),
        phi.scale(&-&h.eps_p),
        UniPoly::zero(Var::X),
    ))
}

/// `A = [[-1, -1], [beta, alpha]]` over `Q[alpha]`.
pub fn build_a_quotient(h: &HeckeData) -> PolyMat2 {
    let q = h.quad_ring();
    let one = UniPoly::one(Var::X);
    let m1 = QuadElem::embed(&q, one.negated());
    Mat2::new(
        m1.clone(),
        m1,
        QuadElem::beta(&q, &one),
        QuadElem::alpha(&q, &one),
    )
}

fn lift(h: &HeckeData, m: &Mat2<UniPoly>) -> PolyMat2 {
    let q = h.quad_ring();
    m.map(|x| QuadElem::embed(&q, x.clone()))
}

/// `M_n = C_1 ... C_n C^{-n-2} A`.
pub fn build_mn(h: &HeckeData, n: u32) -> Result<PolyMat2> {
    if n == 0 {
        return Err(Error::InvalidInput("M_n needs n >= 1".into()));
    }
    let mut prod = build_cn(h, 1)?;
    for j in 2..=n {
        prod = prod.mul(&build_cn(h, j)?);
    }
    let tail = prod.mul(&build_c_inverse(h).pow(n as u64 + 2));
    Ok(lift(h, &tail).mul(&build_a_quotient(h)))
}
