//! Acceptance checks, one line per criterion. Runs without the libtest harness
//! so the verdicts are always printed.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cstar_core::arith::{cf_eval_int, hj_expand, Rational};
use cstar_core::classify::*;
use cstar_core::contract::{contract_subchain, contraction_witness, ContractionTarget};
use cstar_core::corpus::{corpus, CorpusConfig};
use cstar_core::dpd::*;
use cstar_core::standard::standardize;
use cstar_core::zigzag::Zigzag;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn within(limit: Duration, start: Instant) -> Check {
    let t = start.elapsed();
    ensure!(t <= limit, "took {t:?}, limit {limit:?}");
    Ok(())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn hj_calculus() -> Check {
    let start = Instant::now();
    for m in 2..=200i64 {
        for e in 1..m {
            if gcd(m, e) != 1 {
                continue;
            }
            let ks = hj_expand(m, e).map_err(|x| x.to_string())?;
            ensure!(cf_eval_int(&ks).map_err(|x| x.to_string())? == Rational::new(m, e), "cf_eval of {m}/{e}");
            let inv = (1..m).find(|x| (e * x) % m == 1).ok_or("no inverse")?;
            let mut rev = ks.clone();
            rev.reverse();
            ensure!(hj_expand(m, inv).map_err(|x| x.to_string())? == rev, "duality at {m}/{e}");
        }
    }
    within(Duration::from_secs(1), start)
}

fn contraction_formula() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..500 {
        let n = rng.gen_range(1..=6);
        let ks: Vec<i64> = (0..n).map(|_| rng.gen_range(2..=7)).collect();
        let c0 = rng.gen_range(-5..=3);
        let chain: Vec<Rational> = ks.iter().map(|&k| Rational::from(k)).collect();
        let got = contract_subchain(&Rational::from(c0), &chain).map_err(|x| x.to_string())?;
        ensure!(*got.as_big() == common::oracle(c0, &ks), "C0^2={c0}, chain {ks:?}");
    }
    for n in 1..=12usize {
        let got = contract_subchain(&Rational::from(-1), &vec![Rational::from(2); n]).map_err(|x| x.to_string())?;
        let want = BigRational::new(BigInt::from(-1), BigInt::from(n as i64 + 1));
        ensure!(*got.as_big() == want, "-1 against [2]*{n}");
    }
    Ok(())
}

fn danilov_gizatullin() -> Check {
    let start = Instant::now();
    for k in 1..=10u64 {
        let actions = dg_actions(k, RulingReading::Verbatim);
        ensure!(actions.len() == k as usize, "k={k}: {} pairs", actions.len());
        let mut want = vec![0, 0];
        want.extend(std::iter::repeat_n(-2, k as usize));
        let want = Zigzag::linear(want);
        for a in &actions {
            let (p, r) = (&a.pair, a.r as i64);
            let b = resolved_boundary_zigzag(p).map_err(|x| x.to_string())?.ok_or("no zigzag")?;
            ensure!(standardize(&b).map_err(|x| x.to_string())?.0 == want, "k={k} r={r}: boundary");
            let t = singularity_types(p).map_err(|x| x.to_string())?;
            let a_type = |n: i64| SingularityType::new(n + 1, n).unwrap();
            ensure!(t[&MarkedPoint::PPlus("p0".into())] == a_type(r - 1), "k={k} r={r}: p0+");
            ensure!(t[&MarkedPoint::PMinus("p1".into())] == a_type(k as i64 - r), "k={k} r={r}: p1-");
            let e = extended_graph(p).map_err(|x| x.to_string())?;
            let mut bridges: Vec<i64> = e.all_feathers().iter().map(|f| f.bridge_weight).collect();
            bridges.sort();
            let mut wb = vec![-r, -1];
            wb.sort();
            ensure!(bridges == wb, "k={k} r={r}: feathers {bridges:?}");
            ensure!(picard_rank_of_pair(p).map_err(|x| x.to_string())? == 1, "k={k} r={r}: rank");
        }
        let sigs: BTreeSet<_> = actions.iter().map(|a| a.pair.class_signature()).collect();
        ensure!(sigs.len() == k as usize, "k={k}: equivalent pairs");
        for (i, a) in actions.iter().enumerate() {
            for b in &actions[i + 1..] {
                ensure!(!a.pair.is_equivalent(&b.pair), "k={k}: r={} ~ r={}", a.r, b.r);
            }
        }
    }
    within(Duration::from_secs(5), start)
}

fn smooth_verdicts(tail: &[i64]) -> Result<bool, String> {
    let mut w = vec![0, 0];
    w.extend(tail);
    let z = Zigzag::linear(w);
    let a = smooth_hyperbolic_zigzag_test(&z).map_err(|x| x.to_string())?.verdict;
    let b = smooth_zigzag_contractibility_test(&z).map_err(|x| x.to_string())?.verdict;
    ensure!(a == b, "criteria disagree on {z}");
    Ok(a)
}

fn tails(len: usize, lo: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| (lo..=-2).map(move |w| [t.clone(), vec![w]].concat()))
            .collect();
    }
    out
}

fn smooth_classification() -> Check {
    let start = Instant::now();
    for len in 1..=5 {
        for t in tails(len, -6) {
            smooth_verdicts(&t)?;
        }
    }
    for w2 in -6..=-2 {
        ensure!(smooth_verdicts(&[w2])?, "[[0,0,{w2}]]");
    }
    for t in tails(2, -6) {
        ensure!(smooth_verdicts(&t)? == t.contains(&-2), "{t:?}");
    }
    for t in tails(3, -6) {
        let twos = t.iter().filter(|w| **w == -2).count();
        let pair = matches!((t[0], t[2]), (-2, -3) | (-3, -2));
        ensure!(smooth_verdicts(&t)? == (twos >= 2 || pair), "{t:?}");
    }
    within(Duration::from_secs(30), start)
}

fn fiber_contractibility() -> Check {
    let pairs = corpus(2024, 1000, &CorpusConfig::default());
    for p in &pairs {
        for label in p.points() {
            let f = resolve_fiber(p, &label).map_err(|x| x.to_string())?;
            let w = f.zigzag().int_weights().map_err(|x| x.to_string())?;
            ensure!(
                contraction_witness(&w, ContractionTarget::Zero).is_some(),
                "fiber {w:?} over {label}"
            );
        }
    }
    Ok(())
}

fn toric_criteria() -> Check {
    let general = corpus(2024, 1000, &CorpusConfig::default());
    let giz = corpus(2024, 1000, &CorpusConfig { gizatullin: true, ..CorpusConfig::default() });
    let mut seen = 0;
    for p in general.iter().chain(&giz).filter(|p| is_gizatullin(p)) {
        let e = extended_graph(p).map_err(|x| x.to_string())?;
        let toric = is_toric_pair(p).map_err(|x| x.to_string())?;
        ensure!(e.is_linear().map_err(|x| x.to_string())? == toric, "{}", serde_json::to_string(p).unwrap());
        seen += 1;
    }
    ensure!(seen >= 1000, "only {seen} Gizatullin pairs");
    for len in 0..=5 {
        for t in tails(len, -5) {
            let p = standard_zigzag_of_toric(&t).map_err(|x| x.to_string())?;
            let b = resolved_boundary_zigzag(&p).map_err(|x| x.to_string())?.ok_or("no zigzag")?;
            let want = Zigzag::linear([vec![0, 0], t.clone()].concat());
            ensure!(standardize(&b).map_err(|x| x.to_string())?.0 == want, "round trip of {t:?}");
        }
    }
    Ok(())
}

fn circular_standardization() -> Check {
    let z: Zigzag = "((9))".parse().map_err(|x: cstar_core::graph::GraphError| x.to_string())?;
    let s = standardize(&z).map_err(|x| x.to_string())?.0;
    ensure!(s.to_string() == "((0,0,(-2)_6,-3))", "((9)) -> {s}");
    let base = BaseCurve { genus: 0, points_at_infinity: 2 };
    for a in -5i64..=4 {
        for b in -6i64..=4 {
            if a + b > 0 {
                continue;
            }
            let mut pairs = vec![DpdPair::new(
                QDivisor::from_terms(&[("x", a, 1)]),
                QDivisor::from_terms(&[("x", b, 1)]),
            )];
            if a <= 0 && b <= 0 {
                pairs.push(DpdPair::new(
                    QDivisor::from_terms(&[("x", a, 1)]),
                    QDivisor::from_terms(&[("y", b, 1)]),
                ));
            }
            for p in pairs {
                let p = p.with_base(base);
                let z = resolved_boundary_zigzag(&p).map_err(|x| x.to_string())?.ok_or("no cycle")?;
                let s = standardize(&z).map_err(|x| x.to_string())?.0;
                ensure!(s == Zigzag::circular([0, 0, 0, a + b]), "({a},{b}) -> {s}");
            }
        }
    }
    Ok(())
}

fn principality() -> Check {
    for p in corpus(2024, 1000, &CorpusConfig::default()) {
        let t = intersection_numbers(&p).map_err(|x| x.to_string())?;
        let u = principal_divisor_u(&p).map_err(|x| x.to_string())?;
        for c in t.curves() {
            ensure!(t.pair_combination(&u, &c).is_zero(), "div(u).{c} != 0");
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(usize, fn() -> Check); 8] = [
        (1, hj_calculus),
        (2, contraction_formula),
        (3, danilov_gizatullin),
        (4, smooth_classification),
        (5, fiber_contractibility),
        (6, toric_criteria),
        (7, circular_standardization),
        (8, principality),
    ];
    let mut failed = false;
    for (n, check) in criteria {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match res {
            Ok(()) => println!("criterion {n}: PASS ({:.2?})", start.elapsed()),
            Err(e) => {
                failed = true;
                println!("criterion {n}: FAIL ({e})");
            }
        }
    }
    if failed {
        std::process::exit(1);
    }
}
