//! Replays the algebra relating the signed and unbounded data on a
//! [`SynthInstance`]: the specialized two-variable decomposition, the key
//! identity after dividing by `det M`, and the mixed-term identities.

use serde::Serialize;

use super::instance::SynthInstance;
use super::series::TruncSeries1;
use crate::arith::{rat, Mat2};
use crate::error::{Error, Result};

/// First coefficient where an identity fails; `row`, `col` are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub row: usize,
    pub col: usize,
    pub index: usize,
}

struct Parts {
    a: TruncSeries1,
    b: TruncSeries1,
    c: TruncSeries1,
    d: TruncSeries1,
    /// Specialized signed matrix.
    s: Mat2<TruncSeries1>,
    /// Specialized unbounded matrix.
    u: Mat2<TruncSeries1>,
    /// `L_i * twisted L_j` for the signed pair.
    prod: Mat2<TruncSeries1>,
    /// `L_lambda * twisted L_mu` for the unbounded pair.
    uprod: Mat2<TruncSeries1>,
}

impl Parts {
    fn of(inst: &SynthInstance) -> Self {
        let m = inst.m();
        let pair_products = |l: &[TruncSeries1; 2], tl: &[TruncSeries1; 2]| {
            Mat2::new(l[0].mul(&tl[0]), l[0].mul(&tl[1]), l[1].mul(&tl[0]), l[1].mul(&tl[1]))
        };
        Parts {
            a: m.get(0, 0).clone(),
            b: m.get(0, 1).clone(),
            c: m.get(1, 0).clone(),
            d: m.get(1, 1).clone(),
            s: inst.signed_cyc(),
            u: inst.unbounded_cyc(),
            prod: pair_products(&inst.signed().l, &inst.signed().tl),
            uprod: pair_products(&inst.unbounded().l, &inst.unbounded().tl),
        }
    }

    fn s(&self, i: usize, j: usize) -> &TruncSeries1 {
        self.s.get(i, j)
    }

    fn s_mixed(&self) -> TruncSeries1 {
        self.s(0, 1).add(self.s(1, 0))
    }

    fn prod_mixed(&self) -> TruncSeries1 {
        self.prod.get(0, 1).add(self.prod.get(1, 0))
    }
}

fn sum(terms: &[TruncSeries1]) -> TruncSeries1 {
    terms[1..].iter().fold(terms[0].clone(), |acc, t| acc.add(t))
}

fn mismatch(row: usize, col: usize, x: &TruncSeries1, y: &TruncSeries1) -> Option<Mismatch> {
    x.first_difference(y).map(|index| Mismatch { row: row + 1, col: col + 1, index })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaReport {
    pub passed: bool,
    /// Specialized unbounded matrix against `M^T S M`.
    pub matrix_mismatch: Option<Mismatch>,
    /// Specialized unbounded matrix against the four scalar expansions.
    pub expansion_mismatch: Option<Mismatch>,
    /// Whether the diagonal specializes to products of one-variable data.
    pub diagonal_artin: [bool; 2],
}

pub fn lemma_expansion_check(inst: &SynthInstance) -> LemmaReport {
    let p = Parts::of(inst);
    let (a, b, c, d) = (&p.a, &p.b, &p.c, &p.d);
    let product = inst.m().transpose().mul(&p.s).mul(inst.m());
    let mixed = p.s_mixed();
    let expansions = [
        [
            sum(&[a.mul(a).mul(p.s(0, 0)), a.mul(c).mul(&mixed), c.mul(c).mul(p.s(1, 1))]),
            sum(&[
                a.mul(b).mul(p.s(0, 0)),
                b.mul(c).mul(p.s(1, 0)),
                a.mul(d).mul(p.s(0, 1)),
                c.mul(d).mul(p.s(1, 1)),
            ]),
        ],
        [
            sum(&[
                a.mul(b).mul(p.s(0, 0)),
                a.mul(d).mul(p.s(1, 0)),
                b.mul(c).mul(p.s(0, 1)),
                c.mul(d).mul(p.s(1, 1)),
            ]),
            sum(&[b.mul(b).mul(p.s(0, 0)), b.mul(d).mul(&mixed), d.mul(d).mul(p.s(1, 1))]),
        ],
    ];
    let cells = [(0, 0), (0, 1), (1, 0), (1, 1)];
    let matrix_mismatch = cells.iter().find_map(|&(i, j)| mismatch(i, j, p.u.get(i, j), product.get(i, j)));
    let expansion_mismatch =
        cells.iter().find_map(|&(i, j)| mismatch(i, j, p.u.get(i, j), &expansions[i][j]));
    let diagonal_artin = [0, 1].map(|k| p.u.get(k, k).agrees_with(p.uprod.get(k, k)));
    LemmaReport {
        passed: matrix_mismatch.is_none() && expansion_mismatch.is_none(),
        matrix_mismatch,
        expansion_mismatch,
        diagonal_artin,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KeyReport {
    pub passed: bool,
    /// Precision after dividing by `det M`.
    pub d_prime: usize,
    /// `bd L_a tL_a - ac L_b tL_b` rewritten through the signed pair.
    pub cross_terms_cancel: bool,
    /// Both coefficients of the key identity are `det M` times `ab`, `-cd`.
    pub divisible_by_det: bool,
    /// First nonzero coefficient of the key identity residual.
    pub key_residual: Option<usize>,
    /// First nonzero coefficient of the residual after division.
    pub key2_residual: Option<usize>,
    /// The divided residual equals `ab(S_## - L_# tL_#) - cd(S_bb - L_b tL_b)`.
    pub division_consistent: bool,
    pub key2_sides_zero: bool,
}

pub fn key_identity_check(inst: &SynthInstance) -> Result<KeyReport> {
    let p = Parts::of(inst);
    let prime = inst.hecke().p;
    let (a, b, c, d) = (&p.a, &p.b, &p.c, &p.d);
    let (ab, cd, ac, bd) = (a.mul(b), c.mul(d), a.mul(c), b.mul(d));
    let det = a.mul(d).sub(&b.mul(c));
    let coef_s = a.mul(a).mul(&bd).sub(&b.mul(b).mul(&ac));
    let coef_f = c.mul(c).mul(&bd).sub(&d.mul(d).mul(&ac));

    let lhs = bd.mul(p.uprod.get(0, 0)).sub(&ac.mul(p.uprod.get(1, 1)));
    let rewritten = coef_s.mul(p.prod.get(0, 0)).add(&coef_f.mul(p.prod.get(1, 1)));
    let rhs = coef_s.mul(p.s(0, 0)).add(&coef_f.mul(p.s(1, 1)));

    let divisible_by_det = coef_s.divide_by_unit(&det, prime)?.agrees_with(&ab)
        && coef_f.divide_by_unit(&det, prime)?.agrees_with(&cd.neg());

    let quotient = rhs.sub(&rewritten).divide_by_unit(&det, prime)?;
    let left = ab.mul(&p.s(0, 0).sub(p.prod.get(0, 0)));
    let right = cd.mul(&p.s(1, 1).sub(p.prod.get(1, 1)));
    let direct = left.sub(&right);

    let cross_terms_cancel = lhs.agrees_with(&rewritten);
    let key_residual = rhs.sub(&lhs).order();
    let key2_residual = quotient.order();
    let division_consistent = quotient.agrees_with(&direct);
    Ok(KeyReport {
        passed: cross_terms_cancel
            && divisible_by_det
            && key_residual.is_none()
            && key2_residual.is_none()
            && division_consistent,
        d_prime: quotient.prec(),
        cross_terms_cancel,
        divisible_by_det,
        key_residual,
        key2_residual,
        division_consistent,
        key2_sides_zero: left.is_zero() && right.is_zero(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremBReport {
    pub passed: bool,
    /// Diagonal signed entries specialize to one-variable products.
    pub signed_diagonal: [bool; 2],
    /// Diagonal unbounded entries specialize to one-variable products.
    pub unbounded_diagonal: [bool; 2],
    /// Precision left after cancelling `ac`.
    pub d_prime: usize,
    /// Mixed signed sum recovered by cancelling `ac` matches `L_# tL_b + L_b tL_#`.
    pub sharp_flat_derived: bool,
    /// `L_# tL_b + L_b tL_# = S_#b + S_b#` modulo `X^D`.
    pub second_assertion: bool,
    /// Sum of the off-diagonal expansions.
    pub mixed_expansion: bool,
    /// Substituted right side regroups to `L_a tL_b + L_b tL_a`.
    pub regrouped: bool,
    /// `U_ab + U_ba = L_a tL_b + L_b tL_a` modulo `X^D`.
    pub first_assertion: bool,
    /// `ac` vanished and every mixed term was zero.
    pub cancellation_skipped: bool,
}

pub fn theorem_b_check(inst: &SynthInstance) -> Result<TheoremBReport> {
    let p = Parts::of(inst);
    let (a, b, c, d) = (&p.a, &p.b, &p.c, &p.d);
    let ac = a.mul(c);
    let x = p.prod_mixed();
    let y = p.s_mixed();
    let u_mixed = p.u.get(0, 1).add(p.u.get(1, 0));
    let uprod_mixed = p.uprod.get(0, 1).add(p.uprod.get(1, 0));
    let signed_diagonal = [0, 1].map(|k| p.s(k, k).agrees_with(p.prod.get(k, k)));
    let unbounded_diagonal = [0, 1].map(|k| p.u.get(k, k).agrees_with(p.uprod.get(k, k)));

    let second_assertion = x.agrees_with(&y);
    let first_assertion = u_mixed.agrees_with(&uprod_mixed);

    let (d_prime, sharp_flat_derived, cancellation_skipped) = if ac.is_zero() {
        let all_zero = [&x, &y, &u_mixed, &uprod_mixed].iter().all(|t| t.is_zero());
        if !all_zero {
            return Err(Error::Degenerate("ac vanishes modulo X^D".into()));
        }
        (inst.bound(), true, true)
    } else {
        // eq. (1,1) with the unbounded diagonal replaced by L_a tL_a, solved for the mixed sum
        let isolated = p
            .uprod
            .get(0, 0)
            .sub(&a.mul(a).mul(p.s(0, 0)))
            .sub(&c.mul(c).mul(p.s(1, 1)));
        match isolated.divide(&ac) {
            Ok(q) => (q.prec(), q.agrees_with(&x), false),
            Err(_) => (inst.bound() - ac.order().unwrap_or(0), false, false),
        }
    };

    let two = rat(2);
    let ab2 = a.mul(b).scale(&two);
    let cd2 = c.mul(d).scale(&two);
    let adbc = a.mul(d).add(&b.mul(c));
    let mixed_rhs = sum(&[ab2.mul(p.s(0, 0)), adbc.mul(&y), cd2.mul(p.s(1, 1))]);
    let mixed_expansion = u_mixed.agrees_with(&mixed_rhs);
    let substituted = sum(&[ab2.mul(p.prod.get(0, 0)), adbc.mul(&x), cd2.mul(p.prod.get(1, 1))]);
    let regrouped = substituted.agrees_with(&uprod_mixed);

    Ok(TheoremBReport {
        passed: signed_diagonal.iter().all(|&t| t)
            && unbounded_diagonal.iter().all(|&t| t)
            && sharp_flat_derived
            && second_assertion
            && mixed_expansion
            && regrouped
            && first_assertion,
        signed_diagonal,
        unbounded_diagonal,
        d_prime,
        sharp_flat_derived,
        second_assertion,
        mixed_expansion,
        regrouped,
        first_assertion,
        cancellation_skipped,
    })
}
