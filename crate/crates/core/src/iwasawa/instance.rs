//! Synthetic signed and unbounded L-function data.
//!
//! Draws use `ChaCha8Rng::seed_from_u64(seed)` in a fixed order: the four
//! entries of `M` (redrawn as a block while `det M(0)` is not a p-adic unit),
//! then `L_#`, `L_b`, twisted `L_#`, twisted `L_b`, then the two-variable data.
//! Coefficients are integers in `[-COEFF_BOUND, COEFF_BOUND]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num::{BigInt, BigRational, Zero};

use super::series::{cyc_specialize, lift_matrix, outer, TruncSeries1, TruncSeries2, TwoVar};
use crate::arith::{vp_rat, Mat2};
use crate::error::{Error, Result};
use crate::hecke::HeckeData;

pub const COEFF_BOUND: i64 = 4;
pub const MAX_REDRAWS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    None,
    /// Diagonal Artin formalism for the signed and the unbounded functions.
    ThmABsw,
}

/// One-variable pair for the form (`l`) and its quadratic twist (`tl`),
/// indexed `[sharp, flat]` or `[alpha, beta]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairData {
    pub l: [TruncSeries1; 2],
    pub tl: [TruncSeries1; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthInstance {
    h: HeckeData,
    d: usize,
    hypothesis: Hypothesis,
    m: Mat2<TruncSeries1>,
    signed: PairData,
    signed2: Mat2<TruncSeries2>,
    unbounded: PairData,
    unbounded2: Mat2<TruncSeries2>,
}

impl SynthInstance {
    /// Validates `det M(0)` and derives the unbounded data from the signed data.
    pub fn from_parts(
        h: HeckeData,
        m: Mat2<TruncSeries1>,
        signed: PairData,
        signed2: Mat2<TruncSeries2>,
        hypothesis: Hypothesis,
    ) -> Result<Self> {
        let d = m.get(0, 0).prec();
        let det0 = m.det().coeff(0);
        if !is_unit(&det0, h.p)? {
            return Err(Error::NonUnit(format!("det M(0) = {det0}")));
        }
        let (unbounded, unbounded2) = derive(&m, &signed, &signed2);
        Ok(SynthInstance { h, d, hypothesis, m, signed, signed2, unbounded, unbounded2 })
    }

    /// `M` the identity, `L_# = twisted L_# = L_## = 1`, every other series zero.
    /// This is the hypothesis construction with all random draws zero.
    pub fn identity_skeleton(h: HeckeData, d: usize) -> Result<Self> {
        let m = Mat2::identity_like(&TruncSeries1::one(d));
        let one = TruncSeries1::one(d);
        let zero = TruncSeries1::zero(d);
        let signed = PairData { l: [one.clone(), zero.clone()], tl: [one, zero] };
        let z2 = TruncSeries2::zero(d);
        let signed2 = Mat2::from_rows([[TruncSeries2::one(d), z2.clone()], [z2.clone(), z2]]);
        Self::from_parts(h, m, signed, signed2, Hypothesis::ThmABsw)
    }

    /// Same `M` and one-variable data, new two-variable signed matrix.
    pub fn with_signed2(&self, signed2: Mat2<TruncSeries2>) -> Result<Self> {
        Self::from_parts(self.h.clone(), self.m.clone(), self.signed.clone(), signed2, self.hypothesis)
    }

    /// Negative control: adds `delta` to one unbounded two-variable entry
    /// without touching its sources.
    pub fn with_corrupted_unbounded(&self, row: usize, col: usize, delta: &TruncSeries2) -> Self {
        let mut out = self.clone();
        let mut rows = out.unbounded2.rows().clone();
        rows[row][col] = rows[row][col].add(delta);
        out.unbounded2 = Mat2::from_rows(rows);
        out
    }

    pub fn hecke(&self) -> &HeckeData {
        &self.h
    }

    pub fn bound(&self) -> usize {
        self.d
    }

    pub fn hypothesis(&self) -> Hypothesis {
        self.hypothesis
    }

    /// The matrix playing `M_log`, entries `[[a, b], [c, d]]`.
    pub fn m(&self) -> &Mat2<TruncSeries1> {
        &self.m
    }

    pub fn signed(&self) -> &PairData {
        &self.signed
    }

    pub fn signed2(&self) -> &Mat2<TruncSeries2> {
        &self.signed2
    }

    pub fn unbounded(&self) -> &PairData {
        &self.unbounded
    }

    pub fn unbounded2(&self) -> &Mat2<TruncSeries2> {
        &self.unbounded2
    }

    pub fn signed_cyc(&self) -> Mat2<TruncSeries1> {
        self.signed2.map(cyc_specialize)
    }

    pub fn unbounded_cyc(&self) -> Mat2<TruncSeries1> {
        self.unbounded2.map(cyc_specialize)
    }
}

fn is_unit(c: &BigRational, p: u64) -> Result<bool> {
    Ok(vp_rat(c, p)?.as_finite().is_some_and(|v| v.is_zero()))
}

/// `[L_alpha L_beta] = [L_# L_b] M` for both pairs, and
/// `L_{lambda mu} = M(X_p)^T [L_{..}] M(X_q)`.
fn derive(
    m: &Mat2<TruncSeries1>,
    signed: &PairData,
    signed2: &Mat2<TruncSeries2>,
) -> (PairData, Mat2<TruncSeries2>) {
    let row_times_m = |v: &[TruncSeries1; 2]| -> [TruncSeries1; 2] {
        [0, 1].map(|j| v[0].mul(m.get(0, j)).add(&v[1].mul(m.get(1, j))))
    };
    let unbounded = PairData { l: row_times_m(&signed.l), tl: row_times_m(&signed.tl) };
    let mp = lift_matrix(m, TwoVar::Xp).transpose();
    let mq = lift_matrix(m, TwoVar::Xq);
    (unbounded, mp.mul(signed2).mul(&mq))
}

fn draw_series(rng: &mut ChaCha8Rng, d: usize) -> TruncSeries1 {
    TruncSeries1::new(
        d,
        (0..d)
            .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-COEFF_BOUND..=COEFF_BOUND))))
            .collect(),
    )
}

fn draw_series2(rng: &mut ChaCha8Rng, d: usize) -> TruncSeries2 {
    let vals: Vec<i64> = (0..d * d).map(|_| rng.gen_range(-COEFF_BOUND..=COEFF_BOUND)).collect();
    TruncSeries2::from_fn(d, |i, j| BigRational::from_integer(BigInt::from(vals[i * d + j])))
}

pub fn make_instance(h: &HeckeData, d: usize, seed: u64, hypothesis: Hypothesis) -> Result<SynthInstance> {
    if d < 8 {
        return Err(Error::InvalidInput(format!("truncation bound {d} < 8")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = None;
    for _ in 0..MAX_REDRAWS {
        let e: Vec<TruncSeries1> = (0..4).map(|_| draw_series(&mut rng, d)).collect();
        let cand = Mat2::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone());
        if is_unit(&cand.det().coeff(0), h.p)? {
            m = Some(cand);
            break;
        }
    }
    let m = m.ok_or_else(|| {
        Error::NonUnit(format!("no unit determinant after {MAX_REDRAWS} draws (seed {seed})"))
    })?;
    let l = [draw_series(&mut rng, d), draw_series(&mut rng, d)];
    let tl = [draw_series(&mut rng, d), draw_series(&mut rng, d)];
    let signed2 = match hypothesis {
        Hypothesis::None => {
            let e: Vec<TruncSeries2> = (0..4).map(|_| draw_series2(&mut rng, d)).collect();
            Mat2::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone())
        }
        Hypothesis::ThmABsw => {
            // L_{ij} = L_i(X_p) tL_j(X_q) + (X_p - X_q) R_{ij}, and the mixed
            // entries also carry +-delta(X_p) so only their sum specializes to
            // L_# tL_b + L_b tL_#.
            let delta = super::series::lift(&draw_series(&mut rng, d), TwoVar::Xp);
            let entry = |rng: &mut ChaCha8Rng, i: usize, j: usize| {
                outer(&l[i], &tl[j]).add(&draw_series2(rng, d).times_diagonal_vanisher())
            };
            let ss = entry(&mut rng, 0, 0);
            let sf = entry(&mut rng, 0, 1).add(&delta);
            let fs = entry(&mut rng, 1, 0).sub(&delta);
            let ff = entry(&mut rng, 1, 1);
            Mat2::new(ss, sf, fs, ff)
        }
    };
    SynthInstance::from_parts(h.clone(), m, PairData { l, tl }, signed2, hypothesis)
}
