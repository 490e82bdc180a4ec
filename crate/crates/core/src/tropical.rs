//! Min-plus calculus on 2x2 valuation matrices.
//!
//! `ord(M M') = ord(M) (min,+) ord(M')` holds whenever no entry of the product
//! has two equal finite candidates. A finite tie allows cancellation, so the
//! checked product refuses it and the lower-bound product flags it.

use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, BigRational, Signed, Zero};

use crate::arith::{require_odd_prime, ExtRational, Mat2};
use crate::cyclo::CycloElem;
use crate::error::{Error, Result};
use crate::logmatrix::{tn, Sign};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropEntry {
    pub value: ExtRational,
    /// False when the value is only a lower bound.
    pub exact: bool,
}

impl TropEntry {
    pub fn exact(value: ExtRational) -> Self {
        TropEntry { value, exact: true }
    }
}

pub type TropMat = Mat2<TropEntry>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TropMode {
    Checked,
    LowerBound,
}

/// Valuation matrix of a matrix over `Q(zeta_{p^n})`.
pub fn ord_matrix(m: &Mat2<CycloElem>) -> TropMat {
    m.map(|x| TropEntry::exact(x.val_min()))
}

pub fn trop_mul(m: &TropMat, n: &TropMat, mode: TropMode) -> Result<TropMat> {
    let entry = |i: usize, j: usize| -> Result<TropEntry> {
        let (x1, y1) = (m.get(i, 0), n.get(0, j));
        let (x2, y2) = (m.get(i, 1), n.get(1, j));
        let c1 = &x1.value + &y1.value;
        let c2 = &x2.value + &y2.value;
        let ex1 = x1.exact && y1.exact;
        let ex2 = x2.exact && y2.exact;
        match c1.cmp(&c2) {
            Ordering::Less => Ok(TropEntry { value: c1, exact: ex1 }),
            Ordering::Greater => Ok(TropEntry { value: c2, exact: ex2 }),
            Ordering::Equal if c1.is_infinite() => Ok(TropEntry { value: c1, exact: ex1 && ex2 }),
            Ordering::Equal => match mode {
                TropMode::Checked => Err(Error::Tie { row: i + 1, col: j + 1 }),
                TropMode::LowerBound => Ok(TropEntry { value: c1, exact: false }),
            },
        }
    };
    Ok(Mat2::from_rows([[entry(0, 0)?, entry(0, 1)?], [entry(1, 0)?, entry(1, 1)?]]))
}

/// `constant + r_coeff * r + a_coeff * a + b_coeff * b`, or `+inf`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolicVal {
    Affine {
        constant: BigRational,
        r: BigRational,
        a: BigRational,
        b: BigRational,
    },
    Infinity,
}

impl SymbolicVal {
    pub fn constant(q: BigRational) -> Self {
        SymbolicVal::Affine {
            constant: q,
            r: BigRational::zero(),
            a: BigRational::zero(),
            b: BigRational::zero(),
        }
    }

    fn unit(which: usize) -> Self {
        let one = BigRational::from_integer(BigInt::from(1));
        let z = BigRational::zero;
        let mut coeffs = [z(), z(), z()];
        coeffs[which] = one;
        let [r, a, b] = coeffs;
        SymbolicVal::Affine { constant: z(), r, a, b }
    }

    pub fn sym_r() -> Self {
        Self::unit(0)
    }

    pub fn sym_a() -> Self {
        Self::unit(1)
    }

    pub fn sym_b() -> Self {
        Self::unit(2)
    }

    pub fn plus(&self, other: &Self) -> Self {
        match (self, other) {
            (
                SymbolicVal::Affine { constant: c1, r: r1, a: a1, b: b1 },
                SymbolicVal::Affine { constant: c2, r: r2, a: a2, b: b2 },
            ) => SymbolicVal::Affine {
                constant: c1 + c2,
                r: r1 + r2,
                a: a1 + a2,
                b: b1 + b2,
            },
            _ => SymbolicVal::Infinity,
        }
    }

    fn minus(&self, other: &Self) -> Option<(BigRational, BigRational, BigRational, BigRational)> {
        match (self, other) {
            (
                SymbolicVal::Affine { constant: c1, r: r1, a: a1, b: b1 },
                SymbolicVal::Affine { constant: c2, r: r2, a: a2, b: b2 },
            ) => Some((c1 - c2, r1 - r2, a1 - a2, b1 - b2)),
            _ => None,
        }
    }

    /// Order of `self` and `other` for every `r > 1/(2p)` and every `a`, `b`.
    ///
    /// `None` when the sign of the difference is not determined by the hypothesis.
    pub fn compare(&self, other: &Self, p: u64) -> Option<Ordering> {
        match (self, other) {
            (SymbolicVal::Infinity, SymbolicVal::Infinity) => return Some(Ordering::Equal),
            (SymbolicVal::Infinity, _) => return Some(Ordering::Greater),
            (_, SymbolicVal::Infinity) => return Some(Ordering::Less),
            _ => {}
        }
        let (q, k, da, db) = self.minus(other)?;
        if !da.is_zero() || !db.is_zero() {
            return None;
        }
        if k.is_zero() {
            return Some(q.cmp(&BigRational::zero()));
        }
        // k r + q = k (r - 1/(2p)) + (q + k/(2p)), first term has the sign of k
        let bound = &q + &k / BigRational::from_integer(BigInt::from(2 * p));
        if k.is_positive() && !bound.is_negative() {
            Some(Ordering::Greater)
        } else if k.is_negative() && !bound.is_positive() {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    /// Substitutes a value for the symbol `r`.
    pub fn with_r(&self, value: &BigRational) -> Self {
        match self {
            SymbolicVal::Affine { constant, r, a, b } => SymbolicVal::Affine {
                constant: constant + r * value,
                r: BigRational::zero(),
                a: a.clone(),
                b: b.clone(),
            },
            SymbolicVal::Infinity => SymbolicVal::Infinity,
        }
    }
}

impl fmt::Display for SymbolicVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let SymbolicVal::Affine { constant, r, a, b } = self else {
            return write!(f, "inf");
        };
        let mut terms: Vec<(BigRational, &str)> = Vec::new();
        for (coef, name) in [(r, "r"), (constant, ""), (a, "a"), (b, "b")] {
            if !coef.is_zero() {
                terms.push((coef.clone(), name));
            }
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (coef, name)) in terms.iter().enumerate() {
            let neg = coef.is_negative();
            let mag = coef.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = mag == BigRational::from_integer(BigInt::from(1));
            match (name.is_empty(), unit) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{name}")?,
                (false, false) => write!(f, "{mag}*{name}")?,
            }
        }
        Ok(())
    }
}

pub type SymMat = Mat2<SymbolicVal>;

/// Symbolic min-plus product with every comparison resolved under `2r > 1/p`.
pub fn sym_mul(m: &SymMat, n: &SymMat, p: u64) -> Result<SymMat> {
    let entry = |i: usize, j: usize| -> Result<SymbolicVal> {
        let c1 = m.get(i, 0).plus(n.get(0, j));
        let c2 = m.get(i, 1).plus(n.get(1, j));
        match c1.compare(&c2, p) {
            Some(Ordering::Less) => Ok(c1),
            Some(Ordering::Greater) => Ok(c2),
            Some(Ordering::Equal) if c1 == SymbolicVal::Infinity => Ok(c1),
            Some(Ordering::Equal) => Err(Error::Tie { row: i + 1, col: j + 1 }),
            None => Err(Error::Undecidable(format!(
                "entry ({},{}): {c1} vs {c2} under 2r > 1/{p}",
                i + 1,
                j + 1
            ))),
        }
    };
    Ok(Mat2::from_rows([[entry(0, 0)?, entry(0, 1)?], [entry(1, 0)?, entry(1, 1)?]]))
}

/// The slope `r = v_p(a_p)`: kept as a symbol or fixed to a value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RParam {
    Symbolic,
    Value(BigRational),
}

impl RParam {
    fn as_sym(&self) -> SymbolicVal {
        match self {
            RParam::Symbolic => SymbolicVal::sym_r(),
            RParam::Value(q) => SymbolicVal::constant(q.clone()),
        }
    }

    fn check_hypothesis(&self, p: u64) -> Result<()> {
        if let RParam::Value(r) = self {
            let two_r = r * BigRational::from_integer(BigInt::from(2));
            if two_r <= BigRational::new(1.into(), BigInt::from(p)) {
                return Err(Error::HypothesisViolated(format!("2r = {two_r} <= 1/{p}")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for RParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RParam::Symbolic => write!(f, "r"),
            RParam::Value(q) => write!(f, "{q}"),
        }
    }
}

/// `ord(C_m(varpi_n)) = [[r, 0], [p^{-(n-m)}, inf]]`.
fn c_factor(p: u64, r: &RParam, n: u32, m: u32) -> SymMat {
    let unit = BigRational::new(1.into(), num::pow(BigInt::from(p), (n - m) as usize));
    Mat2::from_rows([
        [r.as_sym(), SymbolicVal::constant(BigRational::zero())],
        [SymbolicVal::constant(unit), SymbolicVal::Infinity],
    ])
}

/// `ord(C_1) ... ord(C_{n-1}) [[a, b], [inf, inf]]` at `varpi_n`, multiplied onto
/// the column block from the right-most factor outward.
pub fn claim_chain(p: u64, r: &RParam, n: u32, a: &SymbolicVal, b: &SymbolicVal) -> Result<SymMat> {
    require_odd_prime(p)?;
    if n < 2 {
        return Err(Error::InvalidInput("claim chain needs n >= 2".into()));
    }
    r.check_hypothesis(p)?;
    let mut acc = Mat2::from_rows([
        [a.clone(), b.clone()],
        [SymbolicVal::Infinity, SymbolicVal::Infinity],
    ]);
    for m in (1..n).rev() {
        acc = sym_mul(&c_factor(p, r, n, m), &acc, p)?;
    }
    Ok(acc)
}

fn closed_claim_with(p: u64, r: &RParam, n: u32, a: &SymbolicVal, b: &SymbolicVal, plus_level: u32) -> SymMat {
    let r_part = r.as_sym().plus(&SymbolicVal::constant(tn(p, plus_level, Sign::Plus)));
    let t_part = SymbolicVal::constant(tn(p, n, Sign::Minus));
    let r_row = [r_part.plus(a), r_part.plus(b)];
    let t_row = [t_part.plus(a), t_part.plus(b)];
    Mat2::from_rows(if n % 2 == 0 { [r_row, t_row] } else { [t_row, r_row] })
}

/// Closed form of the chain: r-row `r + t_{n-1}^+`, t-row `t_n^-`.
pub fn closed_form_claim(p: u64, r: &RParam, n: u32, a: &SymbolicVal, b: &SymbolicVal) -> SymMat {
    closed_claim_with(p, r, n, a, b, n - 1)
}

/// Closed form with `t_n^+` in the r-row.
pub fn closed_form_claim_tn_plus(p: u64, r: &RParam, n: u32, a: &SymbolicVal, b: &SymbolicVal) -> SymMat {
    closed_claim_with(p, r, n, a, b, n)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClaimItem {
    pub n: u32,
    pub passed: bool,
    pub chain: SymMat,
    /// r-row excess of the `t_n^+` form over the chain.
    pub tn_plus_delta: BigRational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClaimReport {
    pub p: u64,
    pub r: RParam,
    pub items: Vec<ClaimItem>,
}

impl ClaimReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }
}

/// Runs [`claim_chain`] with symbolic `a`, `b` for `n = 2..=n_max` and compares it
/// with [`closed_form_claim`].
pub fn verify_claim(p: u64, r: &RParam, n_max: u32) -> Result<ClaimReport> {
    require_odd_prime(p)?;
    r.check_hypothesis(p)?;
    let (a, b) = (SymbolicVal::sym_a(), SymbolicVal::sym_b());
    let mut items = Vec::new();
    for n in 2..=n_max {
        let chain = claim_chain(p, r, n, &a, &b)?;
        let passed = chain == closed_form_claim(p, r, n, &a, &b);
        let literal = closed_form_claim_tn_plus(p, r, n, &a, &b);
        let row = if n % 2 == 0 { 0 } else { 1 };
        let delta = match literal.get(row, 0).minus(chain.get(row, 0)) {
            Some((q, k, da, db)) if k.is_zero() && da.is_zero() && db.is_zero() => q,
            _ => return Err(Error::InvalidInput(format!("non-constant delta at n={n}"))),
        };
        items.push(ClaimItem { n, passed, chain, tn_plus_delta: delta });
    }
    Ok(ClaimReport { p, r: r.clone(), items })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, rat};
    use crate::logmatrix::even_row_delta;

    fn te(q: BigRational) -> TropEntry {
        TropEntry::exact(ExtRational::Finite(q))
    }

    fn inf() -> TropEntry {
        TropEntry::exact(ExtRational::Infinity)
    }

    fn vals(m: &TropMat) -> Vec<String> {
        m.entries().iter().map(|e| e.value.to_string()).collect()
    }

    #[test]
    fn trop_mul_examples() {
        let m = Mat2::from_rows([[te(rat(1)), te(rat(0))], [te(frac(1, 3)), inf()]]);
        let n = Mat2::from_rows([[te(frac(-3, 2)), te(frac(-3, 2))], [inf(), inf()]]);
        let prod = trop_mul(&m, &n, TropMode::Checked).unwrap();
        assert_eq!(vals(&prod), ["-1/2", "-1/2", "-7/6", "-7/6"]);

        let m = Mat2::from_rows([[te(rat(0)), te(rat(0))], [inf(), inf()]]);
        let n = Mat2::from_rows([[te(rat(0)), inf()], [te(rat(0)), inf()]]);
        assert_eq!(trop_mul(&m, &n, TropMode::Checked), Err(Error::Tie { row: 1, col: 1 }));
        let lb = trop_mul(&m, &n, TropMode::LowerBound).unwrap();
        assert!(!lb.get(0, 0).exact);
        assert!(lb.get(0, 1).exact && lb.get(0, 1).value.is_infinite());

        let id = Mat2::from_rows([[te(rat(0)), inf()], [inf(), te(rat(0))]]);
        let n = Mat2::from_rows([[te(rat(2)), te(frac(1, 5))], [inf(), te(rat(-1))]]);
        assert_eq!(trop_mul(&id, &n, TropMode::Checked).unwrap(), n);
    }

    fn strs(m: &SymMat) -> Vec<String> {
        m.entries().iter().map(|e| e.to_string()).collect()
    }

    #[test]
    fn claim_chain_examples() {
        let (a, b) = (SymbolicVal::sym_a(), SymbolicVal::sym_b());
        let r = RParam::Symbolic;
        let c2 = claim_chain(3, &r, 2, &a, &b).unwrap();
        assert_eq!(strs(&c2), ["r + a", "r + b", "1/3 + a", "1/3 + b"]);
        let c3 = claim_chain(3, &r, 3, &a, &b).unwrap();
        assert_eq!(strs(&c3), ["1/3 + a", "1/3 + b", "r + 1/9 + a", "r + 1/9 + b"]);
        let c5 = claim_chain(3, &r, 5, &a, &b).unwrap();
        assert_eq!(c5, closed_form_claim(3, &r, 5, &a, &b));
        assert_eq!(strs(&c5)[0], "10/27 + a");
        assert_eq!(strs(&c5)[2], "r + 10/81 + a");
    }

    #[test]
    fn odd_levels_match_tn_plus_form() {
        let (a, b) = (SymbolicVal::sym_a(), SymbolicVal::sym_b());
        let r = RParam::Symbolic;
        for n in 2..=9 {
            let chain = claim_chain(5, &r, n, &a, &b).unwrap();
            let literal = closed_form_claim_tn_plus(5, &r, n, &a, &b);
            if n % 2 == 1 {
                assert_eq!(chain, literal);
            } else {
                assert_ne!(chain, literal);
                assert_eq!(chain.get(1, 0), literal.get(1, 0));
            }
        }
    }

    #[test]
    fn verify_claim_examples() {
        let rep = verify_claim(3, &RParam::Value(rat(1)), 6).unwrap();
        assert!(rep.passed());
        let nonzero: Vec<u32> =
            rep.items.iter().filter(|i| !i.tn_plus_delta.is_zero()).map(|i| i.n).collect();
        assert_eq!(nonzero, vec![2, 4, 6]);
        for item in &rep.items {
            assert_eq!(item.tn_plus_delta, even_row_delta(3, item.n));
        }
        assert!(verify_claim(3, &RParam::Value(frac(1, 2)), 8).unwrap().passed());
        assert!(matches!(
            verify_claim(3, &RParam::Value(frac(1, 7)), 4),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn undecidable_without_hypothesis_margin() {
        // r vs 1/2 is not settled by r > 1/6
        let x = SymbolicVal::sym_r();
        let y = SymbolicVal::constant(frac(1, 2));
        assert_eq!(x.compare(&y, 3), None);
        // 2r vs 1/3 is settled
        let two_r = x.plus(&x);
        assert_eq!(two_r.compare(&SymbolicVal::constant(frac(1, 3)), 3), Some(Ordering::Greater));
        // different a-coefficients never compare
        assert_eq!(SymbolicVal::sym_a().compare(&SymbolicVal::sym_b(), 3), None);
    }
}
