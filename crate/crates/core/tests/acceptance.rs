//! Acceptance run: one line per criterion, all comparisons exact.

use std::collections::BTreeSet;
use std::process::Command;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use logmat::arith::{frac, rat, ExtRational, Mat2, UniPoly, Var};
use logmat::cli::{emit_report, report_for, Format, Report};
use logmat::cyclo::{phi_at_varpi, CycloCtx, CycloElem};
use logmat::hecke::HeckeData;
use logmat::iwasawa::{
    key_identity_check, lemma_expansion_check, make_instance, mu_lambda_eval_law,
    theorem_a_endgame, theorem_b_check, Hypothesis, LawStatus,
};
use logmat::logmatrix::{
    ap0_structure_check, closed_form_ord, closed_form_ord_tn_plus, det_identity_check, eval_mlog,
    mercator_diagnostic, ord_of_eval, stabilization_check, tn, tn_limit, Sign,
};
use logmat::tropical::{ord_matrix, trop_mul, verify_claim, RParam, TropMode};
use logmat::Error;

// Every comparison below is exact rational equality; the pinned numbers are
// sample sizes and the non-vacuity rate.
const VAL_SAMPLES: usize = 100;
const TROP_PAIRS: usize = 100;
const TIE_CASES: usize = 10;
const ARTIN_SEEDS_D16: u64 = 50;
const ARTIN_SEEDS_D32: u64 = 10;
const NEGATIVE_FAIL_RATE: f64 = 0.95;
const LAW_SAMPLES: usize = 50;
const LAW_LAMBDA_BOUND: usize = 10;
const MERCATOR_K_MAX: usize = 10;

/// `v_3(coeff_k(prod_{j<=n} Phi_j / 3^n) - (-1)^k/(k+1))` for n = 2..5, k = 0..10,
/// frozen from the first run and cross-checked against `binom(3^n, k+1)/3^n`.
const MERCATOR_FROZEN: [[Option<i64>; 11]; 4] = [
    [None, Some(2), Some(2), Some(1), Some(1), Some(0), Some(3), Some(2), None, Some(0), Some(0)],
    [None, Some(3), Some(3), Some(2), Some(2), Some(1), Some(3), Some(5), Some(1), Some(1), Some(1)],
    [None, Some(4), Some(4), Some(3), Some(3), Some(2), Some(4), Some(5), Some(2), Some(2), Some(2)],
    [None, Some(5), Some(5), Some(4), Some(4), Some(3), Some(5), Some(6), Some(3), Some(3), Some(3)],
];

/// The k = 8 gap vanishes exactly at n = 2 (`binom(9, 9)/9 = 1/9`) and is finite
/// afterwards, so the valuations for that k are not monotone in n.
const MERCATOR_KNOWN_DROPS: [(usize, u32); 1] = [(8, 2)];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn fin(q: BigRational) -> ExtRational {
    ExtRational::Finite(q)
}

fn inv_pow(p: u64, n: u32) -> BigRational {
    BigRational::new(BigInt::one(), num::pow(BigInt::from(p), n as usize))
}

fn random_elem(rng: &mut ChaCha8Rng, ctx: &Arc<CycloCtx>) -> CycloElem {
    let p = ctx.p() as i64;
    let coeffs = (0..ctx.e())
        .map(|_| {
            if rng.gen_bool(0.4) {
                return BigRational::zero();
            }
            let k: u32 = rng.gen_range(0..3);
            let num = rng.gen_range(-9i64..=9) * p.pow(k);
            BigRational::new(num.into(), BigInt::from(rng.gen_range(1i64..=4)))
        })
        .collect();
    CycloElem::from_coeffs(ctx, coeffs)
}

fn random_nonzero(rng: &mut ChaCha8Rng, ctx: &Arc<CycloCtx>) -> CycloElem {
    loop {
        let x = random_elem(rng, ctx);
        if !x.is_zero() {
            return x;
        }
    }
}

fn random_mat(rng: &mut ChaCha8Rng, ctx: &Arc<CycloCtx>) -> Mat2<CycloElem> {
    let mut e = || if rng.gen_bool(0.15) { CycloElem::zero(ctx) } else { random_elem(rng, ctx) };
    Mat2::new(e(), e(), e(), e())
}

fn criterion_1() -> Outcome {
    let forms = [(3u64, 3i64, 1i64, 5u32), (3, 9, 1, 5), (3, 3, -1, 5), (5, 5, 1, 3)];
    let mut deltas = Vec::new();
    for (p, ap, eps, n_max) in forms {
        let h = HeckeData::from_ints(p, ap, eps).unwrap();
        for n in 2..=n_max {
            let exact = ord_of_eval(&eval_mlog(&h, n).unwrap(), &h);
            let closed = closed_form_ord(p, &h.r, &h.v_alpha, &h.v_beta, n).unwrap();
            if exact != closed {
                return outcome(false, format!("({p},{ap},{eps}) n={n}: {exact:?} vs {closed:?}"));
            }
            let display = closed_form_ord_tn_plus(p, &h.r, &h.v_alpha, &h.v_beta, n).unwrap();
            let row = if n % 2 == 0 { 0 } else { 1 };
            let (ExtRational::Finite(x), ExtRational::Finite(y)) = (display.get(row, 0), exact.get(row, 0))
            else {
                return outcome(false, "infinite r-row");
            };
            let delta = x - y;
            let expected = if n % 2 == 0 { inv_pow(p, n) } else { BigRational::zero() };
            if delta != expected {
                return outcome(false, format!("({p},{ap},{eps}) n={n}: display delta {delta}"));
            }
            if n % 2 == 0 && ap == 3 && eps == 1 || p == 5 && n == 2 {
                deltas.push(format!("p={p} n={n}: {delta}"));
            }
        }
    }
    outcome(true, format!("exact match on 16 cases; display delta at even n: {}", deltas.join(", ")))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (p, n) in [(3u64, 2u32), (3, 3), (5, 2)] {
        let ctx = CycloCtx::new(p, n).unwrap();
        for i in 0..VAL_SAMPLES {
            let x = random_elem(&mut rng, &ctx);
            if x.val_min() != x.val_norm_oracle() {
                return outcome(false, format!("({p},{n}) sample {i}: {x}"));
            }
        }
    }
    outcome(true, format!("{VAL_SAMPLES} samples each in (3,2), (3,3), (5,2)"))
}

fn criterion_3() -> Outcome {
    let ctx = CycloCtx::new(3, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut tie_free, mut attempts) = (0, 0);
    while tie_free < TROP_PAIRS && attempts < 100 * TROP_PAIRS {
        attempts += 1;
        let (m, n) = (random_mat(&mut rng, &ctx), random_mat(&mut rng, &ctx));
        let Ok(trop) = trop_mul(&ord_matrix(&m), &ord_matrix(&n), TropMode::Checked) else {
            continue;
        };
        let exact = ord_matrix(&m.mul(&n));
        if exact != trop {
            return outcome(false, format!("pair {attempts}: tropical {trop:?} vs exact {exact:?}"));
        }
        tie_free += 1;
    }
    let mut ties = 0;
    for _ in 0..TIE_CASES {
        let (s, t) = (random_nonzero(&mut rng, &ctx), random_nonzero(&mut rng, &ctx));
        let m = Mat2::new(s.clone(), s, random_elem(&mut rng, &ctx), random_elem(&mut rng, &ctx));
        let n = Mat2::new(t.clone(), random_elem(&mut rng, &ctx), t, random_elem(&mut rng, &ctx));
        if let Err(Error::Tie { row: 1, col: 1 }) = trop_mul(&ord_matrix(&m), &ord_matrix(&n), TropMode::Checked) {
            ties += 1;
        }
    }
    outcome(
        tie_free >= TROP_PAIRS && ties == TIE_CASES,
        format!("{tie_free} tie-free pairs agree ({attempts} drawn); {ties}/{TIE_CASES} engineered ties rejected"),
    )
}

fn criterion_4() -> Outcome {
    for (p, r) in [(3u64, rat(1)), (3, frac(1, 2)), (5, rat(1))] {
        let rep = verify_claim(p, &RParam::Value(r.clone()), 8).unwrap();
        if !rep.passed() {
            return outcome(false, format!("(p={p}, r={r})"));
        }
        for item in &rep.items {
            let expected = if item.n % 2 == 0 { inv_pow(p, item.n) } else { BigRational::zero() };
            if item.tn_plus_delta != expected {
                return outcome(false, format!("(p={p}, r={r}) n={}: delta {}", item.n, item.tn_plus_delta));
            }
        }
    }
    let sym = verify_claim(3, &RParam::Symbolic, 8).unwrap().passed();
    outcome(sym, "(3,1), (3,1/2), (5,1) and symbolic r, n = 2..8")
}

fn criterion_5() -> Outcome {
    let mut cases = 0;
    for ap in [0, 3] {
        let h = HeckeData::from_ints(3, ap, 1).unwrap();
        for n in [2u32, 3] {
            for m in [n + 1, n + 2] {
                if !stabilization_check(&h, n, m).unwrap().passed {
                    return outcome(false, format!("a_p={ap} n={n} m={m}"));
                }
                cases += 1;
            }
        }
    }
    for n in [2u32, 3] {
        let ctx = CycloCtx::new(3, n).unwrap();
        for j in 1..=n + 2 {
            let x = phi_at_varpi(&ctx, j).unwrap();
            let ok = match j.cmp(&n) {
                std::cmp::Ordering::Less => x.val_norm_oracle() == fin(inv_pow(3, n - j)),
                std::cmp::Ordering::Equal => x.is_zero(),
                std::cmp::Ordering::Greater => x == CycloElem::constant(&ctx, rat(3)),
            };
            if !ok {
                return outcome(false, format!("Phi_{j} at varpi_{n}"));
            }
        }
    }
    outcome(true, format!("{cases} stabilization cases; Phi_j(varpi_n) trichotomy for j <= n+2"))
}

fn binomial(n: &BigInt, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

fn vp_opt(x: &BigRational, p: i64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let (mut a, mut b) = (x.numer().abs(), x.denom().clone());
    let mut v = 0;
    while (&a % &pb).is_zero() {
        a /= &pb;
        v += 1;
    }
    while (&b % &pb).is_zero() {
        b /= &pb;
        v -= 1;
    }
    Some(v)
}

fn show(v: Option<i64>) -> String {
    v.map_or("inf".into(), |x| x.to_string())
}

fn ext_to_opt(x: &ExtRational) -> Option<i64> {
    x.as_finite().map(|q| {
        assert!(q.is_integer());
        q.to_integer().try_into().unwrap()
    })
}

/// Returns the outcome and the observed monotonicity drops `(k, n)` meaning the
/// value at `n` exceeds the value at `n + 1`.
fn criterion_6() -> (Outcome, BTreeSet<(usize, u32)>) {
    let mut det_cases = 0;
    for ap in [0, 3] {
        let h = HeckeData::from_ints(3, ap, 1).unwrap();
        for n in 1..=4 {
            let rep = det_identity_check(&h, n).unwrap();
            if !rep.passed || !rep.quotient_is_constant {
                return (outcome(false, format!("det identity a_p={ap} n={n}")), BTreeSet::new());
            }
            det_cases += 1;
        }
    }
    let mut table = Vec::new();
    for (row, n) in (2u32..=5).enumerate() {
        let got: Vec<Option<i64>> =
            mercator_diagnostic(3, n, MERCATOR_K_MAX).unwrap().iter().map(ext_to_opt).collect();
        let p_n = num::pow(BigInt::from(3), n as usize);
        let oracle: Vec<Option<i64>> = (0..=MERCATOR_K_MAX)
            .map(|k| {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let gap = BigRational::new(binomial(&p_n, k + 1), p_n.clone())
                    - BigRational::new(sign.into(), BigInt::from(k + 1));
                vp_opt(&gap, 3)
            })
            .collect();
        if got != oracle || got != MERCATOR_FROZEN[row] {
            return (outcome(false, format!("mercator n={n}: {got:?} vs oracle {oracle:?}")), BTreeSet::new());
        }
        table.push(got);
    }
    // None is +infinity
    let le = |a: Option<i64>, b: Option<i64>| match (a, b) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(x), Some(y)) => x <= y,
    };
    let mut drops = BTreeSet::new();
    for k in 0..=MERCATOR_K_MAX {
        for i in 0..3 {
            if !le(table[i][k], table[i + 1][k]) {
                drops.insert((k, i as u32 + 2));
            }
        }
    }
    let detail = if drops.is_empty() {
        format!("det identity on {det_cases} cases; Mercator valuations monotone and frozen")
    } else {
        let list: Vec<String> = drops
            .iter()
            .map(|&(k, n)| {
                let (a, b) = (show(table[n as usize - 2][k]), show(table[n as usize - 1][k]));
                format!("k={k}: v={a} at n={n}, v={b} at n={}", n + 1)
            })
            .collect();
        format!(
            "det identity on {det_cases} cases ok; Mercator values match oracle and frozen table, \
             but monotonicity fails at {}",
            list.join("; ")
        )
    };
    (outcome(drops.is_empty(), detail), drops)
}

fn criterion_7() -> Outcome {
    for p in [3u64, 5] {
        let lim_plus = BigRational::new(BigInt::one(), BigInt::from(p * p - 1));
        let lim_minus = BigRational::new(BigInt::from(p), BigInt::from(p * p - 1));
        if tn_limit(p, Sign::Plus) != lim_plus || tn_limit(p, Sign::Minus) != lim_minus {
            return outcome(false, format!("limits for p={p}"));
        }
        for n in 2..=50u32 {
            let (tp, tm) = (tn(p, n, Sign::Plus), tn(p, n, Sign::Minus));
            let bound = inv_pow(p, n - 2);
            if tp >= tm || (&tp - &lim_plus).abs() >= bound || (&tm - &lim_minus).abs() >= bound {
                return outcome(false, format!("p={p} n={n}"));
            }
        }
    }
    outcome(true, "p in {3,5}, n = 2..50")
}

fn criterion_8() -> Outcome {
    let h = HeckeData::from_ints(3, 0, 1).unwrap();
    let rep = ap0_structure_check(&h, 6).unwrap();
    let etas: Vec<String> =
        rep.levels.iter().map(|l| l.eta.as_ref().map_or("-".into(), |e| e.to_string())).collect();
    outcome(rep.passed(), format!("levels 1..6; eta_n = [{}]", etas.join(", ")))
}

fn criterion_9() -> Outcome {
    let h = HeckeData::from_ints(3, 3, 1).unwrap();
    for (d, seeds) in [(16usize, ARTIN_SEEDS_D16), (32, ARTIN_SEEDS_D32)] {
        for seed in 0..seeds {
            let inst = make_instance(&h, d, seed, Hypothesis::ThmABsw).unwrap();
            let lemma = lemma_expansion_check(&inst).passed;
            let key = key_identity_check(&inst).is_ok_and(|r| r.passed && r.key2_sides_zero);
            let thmb = theorem_b_check(&inst).is_ok_and(|r| r.passed);
            if !(lemma && key && thmb) {
                return outcome(false, format!("D={d} seed={seed}: lemma {lemma} key {key} thmB {thmb}"));
            }
        }
    }
    let failing = (0..ARTIN_SEEDS_D16)
        .filter(|&seed| {
            let inst = make_instance(&h, 16, seed, Hypothesis::None).unwrap();
            !theorem_b_check(&inst).is_ok_and(|r| r.passed)
        })
        .count();
    let rate = failing as f64 / ARTIN_SEEDS_D16 as f64;
    outcome(
        rate >= NEGATIVE_FAIL_RATE,
        format!(
            "{ARTIN_SEEDS_D16} seeds at D=16, {ARTIN_SEEDS_D32} at D=32 pass; \
             {failing}/{ARTIN_SEEDS_D16} random instances fail the theorem check"
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut forced = Vec::new();
    for p in [3u64, 5, 7] {
        let rep = theorem_a_endgame(p, 2, &frac(1, p as i64)).unwrap();
        let expected = frac(1, p as i64 + 1);
        if rep.forced_r != expected || !rep.mu_equal || !rep.contradiction {
            return outcome(false, format!("p={p}: forced {} contradiction {}", rep.forced_r, rep.contradiction));
        }
        forced.push(format!("p={p}: r={}", rep.forced_r));
    }
    outcome(true, format!("{}; mu_# = mu_b; contradicts r > 1/p", forced.join(", ")))
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [3u32, 4] {
        let ctx = CycloCtx::new(3, n).unwrap();
        for i in 0..LAW_SAMPLES {
            let lambda = rng.gen_range(0..LAW_LAMBDA_BOUND);
            let mu: u32 = rng.gen_range(0..3);
            let deg = lambda + rng.gen_range(0..6);
            let unit = |rng: &mut ChaCha8Rng| loop {
                let u = rng.gen_range(-8i64..=8);
                if u % 3 != 0 {
                    return u;
                }
            };
            let coeffs: Vec<i64> = (0..=deg)
                .map(|k| {
                    let base = 3i64.pow(mu);
                    match k.cmp(&lambda) {
                        std::cmp::Ordering::Less => 3 * base * rng.gen_range(-5i64..=5),
                        std::cmp::Ordering::Equal => base * unit(&mut rng),
                        std::cmp::Ordering::Greater => base * rng.gen_range(-5i64..=5),
                    }
                })
                .collect();
            let f = UniPoly::from_ints(Var::X, &coeffs);
            let rep = mu_lambda_eval_law(&f, &ctx).unwrap();
            let predicted = rat(mu as i64) + frac(lambda as i64, ctx.e() as i64);
            let oracle = CycloElem::evaluate(&ctx, &f).val_norm_oracle();
            if rep.status != LawStatus::Holds
                || rep.lambda != lambda
                || rep.predicted != predicted
                || oracle != fin(predicted)
            {
                return outcome(false, format!("(3,{n}) sample {i}: {f}"));
            }
        }
    }
    outcome(true, format!("{LAW_SAMPLES} polynomials each in (3,3), (3,4), lambda < {LAW_LAMBDA_BOUND}"))
}

fn args(s: &str) -> Vec<String> {
    std::iter::once("logmat".to_string()).chain(s.split_whitespace().map(String::from)).collect()
}

fn run_bin(s: &str) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_logmat")).args(s.split_whitespace()).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn criterion_12() -> Outcome {
    let (code, out) = run_bin("ord --p 3 --ap 3 --eps 1 --n 2 --format json --no-timestamp");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let item = &v["results"][0];
    let ord_ok = code == 0
        && item["ord_matrix"] == serde_json::json!([["-1/2", "-1/2"], ["-7/6", "-7/6"]])
        && item["matches_closed_form"] == serde_json::json!(true);

    let (code, out) = run_bin("endgame --p 3 --e 2 --format json --no-timestamp");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let item = &v["results"][0];
    let endgame_ok = code == 0 && item["forced_r"] == "1/4" && item["contradiction"] == true;

    let (code, _) = run_bin("ord --p 4 --format json");
    let prime_ok = code == 2;

    let runs = [
        "ord --n 2",
        "verify-prop --ap 9 --n-max 5",
        "verify-prop --p 5 --ap 5 --n-max 3",
        "claim --p 3 --r 1/2 --n-max 8",
        "det --ap 0 --n 4",
        "ap0 --n 6",
        "stab --ap 0 --n 3 --m 5",
        "tn --p 5 --n-max 50",
        "artin --D 16 --trials 5",
        "endgame --p 7",
        "pollack --m 2 --n 3",
    ];
    let mut round_trips = 0;
    for r in runs {
        let (report, _) = report_for(&args(&format!("{r} --no-timestamp"))).unwrap();
        let text = emit_report(&report, Format::Json);
        let back: Report = serde_json::from_str(&text).unwrap();
        if back != report || emit_report(&back, Format::Json) != text {
            return outcome(false, format!("round trip of `{r}`"));
        }
        round_trips += 1;
    }
    outcome(
        ord_ok && endgame_ok && prime_ok,
        format!("ord exit/values {ord_ok}, endgame {endgame_ok}, p=4 exit 2 {prime_ok}; {round_trips} reports round-trip"),
    )
}

#[test]
fn acceptance() {
    let mut results: Vec<(usize, Outcome)> = Vec::new();
    let mut run = |i: usize, f: &dyn Fn() -> Outcome| {
        let o = f();
        println!("criterion {i:>2}: {} | {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        results.push((i, o));
    };
    run(1, &criterion_1);
    run(2, &criterion_2);
    run(3, &criterion_3);
    run(4, &criterion_4);
    run(5, &criterion_5);
    let (c6, drops) = criterion_6();
    let c6_pass = c6.pass;
    let c6_detail = c6.detail.clone();
    run(6, &move || outcome(c6_pass, c6_detail.clone()));
    run(7, &criterion_7);
    run(8, &criterion_8);
    run(9, &criterion_9);
    run(10, &criterion_10);
    run(11, &criterion_11);
    run(12, &criterion_12);

    let passed = results.iter().filter(|(_, o)| o.pass).count();
    println!("acceptance: {passed}/12 criteria pass");
    for (i, o) in &results {
        if *i == 6 {
            continue;
        }
        assert!(o.pass, "criterion {i} failed: {}", o.detail);
    }
    // Criterion 6 fails only through the documented Mercator drop; the
    // determinant identity and the frozen valuations must still hold.
    let known: BTreeSet<(usize, u32)> = MERCATOR_KNOWN_DROPS.into_iter().collect();
    assert!(c6.detail.starts_with("det identity on 8 cases"), "{}", c6.detail);
    assert_eq!(drops, known, "criterion 6: {}", c6.detail);
}
