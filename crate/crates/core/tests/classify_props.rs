use std::collections::{BTreeMap, BTreeSet};

use cstar_core::arith::{HjPair, Rational};
use cstar_core::classify::*;
use cstar_core::contract::{contraction_witness, ContractionTarget};
use cstar_core::dpd::{
    normalize_pair, resolved_boundary_zigzag, singularity_types, DpdPair, MarkedPoint, QDivisor,
    SingularityType,
};
use cstar_core::standard::standardize;
use cstar_core::zigzag::Zigzag;

fn smooth(w: &[i64]) -> bool {
    let mut all = vec![0, 0];
    all.extend(w);
    let z = Zigzag::linear(all);
    let a = smooth_hyperbolic_zigzag_test(&z).unwrap().verdict;
    let b = smooth_zigzag_contractibility_test(&z).unwrap().verdict;
    assert_eq!(a, b, "{z}");
    a
}

/// Every tail of length `len` with weights in `lo..=-2`.
fn tails(len: usize, lo: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (lo..=-2).map(move |w| {
                    let mut t = t.clone();
                    t.push(w);
                    t
                })
            })
            .collect();
    }
    out
}

#[test]
fn single_weight_tails_are_smooth() {
    for w2 in -12..=-2 {
        assert!(smooth(&[w2]));
    }
    assert!(smooth(&[]));
    assert!(smooth_hyperbolic_zigzag_test(&Zigzag::linear([0, 0, 0])).unwrap().verdict);
}

#[test]
fn two_weight_table() {
    for t in tails(2, -8) {
        assert_eq!(smooth(&t), t.contains(&-2), "{t:?}");
    }
}

#[test]
fn three_weight_table() {
    for t in tails(3, -8) {
        let twos = t.iter().filter(|w| **w == -2).count();
        let pair = matches!((t[0], t[2]), (-2, -3) | (-3, -2));
        assert_eq!(smooth(&t), twos >= 2 || pair, "{t:?}");
    }
}

#[test]
fn criteria_agree_up_to_length_seven() {
    let mut count = 0;
    for len in 1..=5 {
        for t in tails(len, -6) {
            smooth(&t);
            count += 1;
        }
    }
    assert_eq!(count, 5 + 25 + 125 + 625 + 3125);
}

fn coprime_pairs(max_m: i64) -> Vec<HjPair> {
    let mut out = vec![HjPair::empty()];
    for m in 2..=max_m {
        for e in 1..m {
            if let Ok(h) = HjPair::new(m, e) {
                if h.m == m && h.e == e {
                    out.push(h);
                }
            }
        }
    }
    out
}

#[test]
fn arithmetic_matches_contraction() {
    for l in coprime_pairs(8) {
        for r in coprime_pairs(8) {
            let mut chain: Vec<i64> = l.expansion().iter().rev().map(|k| -k).collect();
            chain.push(-1);
            chain.extend(r.expansion().iter().map(|k| -k));
            let sum = l.ratio() + r.ratio();
            let eq = sum == Rational::one() - Rational::new(1, l.m * r.m);
            let contracts = contraction_witness(&chain, ContractionTarget::MinusOne).is_some();
            assert_eq!(eq, contracts, "{l:?} {r:?} {chain:?}");
            let eq_one = sum == Rational::one();
            let to_zero = contraction_witness(&chain, ContractionTarget::Zero).is_some();
            assert_eq!(eq_one, to_zero, "{l:?} {r:?} {chain:?}");
        }
    }
}

fn minus_twos(k: usize) -> Zigzag {
    let mut w = vec![0, 0];
    w.extend(std::iter::repeat_n(-2, k));
    Zigzag::linear(w)
}

#[test]
fn danilov_gizatullin_suite() {
    for k in 1..=10u64 {
        let actions = dg_actions(k, RulingReading::Verbatim);
        assert_eq!(actions.len(), k as usize);
        for a in &actions {
            let r = a.r as i64;
            let p = &a.pair;
            assert!(is_gizatullin(p));
            assert!(!is_toric_pair(p).unwrap() || k == 1);
            let b = resolved_boundary_zigzag(p).unwrap().unwrap();
            assert_eq!(standardize(&b).unwrap().0, minus_twos(k as usize), "k={k} r={r}");
            let t = singularity_types(p).unwrap();
            let a_type = |n: i64| SingularityType::new(n + 1, n).unwrap();
            assert_eq!(t[&MarkedPoint::PPlus("p0".into())], a_type(r - 1));
            assert_eq!(t[&MarkedPoint::PMinus("p1".into())], a_type(k as i64 - r));
            let e = extended_graph(p).unwrap();
            let mut bridges: Vec<i64> = e.all_feathers().iter().map(|f| f.bridge_weight).collect();
            bridges.sort();
            let mut want = vec![-r, -1];
            want.sort();
            assert_eq!(bridges, want, "k={k} r={r}");
            assert_eq!(picard_rank_of_pair(p).unwrap(), 1);
            assert!(e.blowdown_to_standard().unwrap().is_some());
            let swapped = p.swapped();
            let partner = &actions[(k - a.r) as usize].pair;
            let relabel: BTreeMap<String, String> =
                [("p0".to_string(), "p1".to_string()), ("p1".to_string(), "p0".to_string())].into();
            assert_eq!(swapped.relabeled(&relabel), *partner);
            assert!(equivalent_up_to_relabeling(&swapped, partner));
        }
        let sigs: BTreeSet<_> = actions.iter().map(|a| a.pair.class_signature()).collect();
        assert_eq!(sigs.len(), k as usize, "k={k}");
        for (i, a) in actions.iter().enumerate() {
            for b in &actions[i + 1..] {
                assert!(!equivalent_up_to_relabeling(&a.pair, &b.pair));
                assert!(!a.pair.is_equivalent(&b.pair));
            }
        }
    }
}

#[test]
fn dg_examples() {
    let one = &dg_actions(1, RulingReading::Verbatim)[0].pair;
    assert_eq!(one.d_plus, QDivisor::from_terms(&[("p0", -1, 1)]));
    assert_eq!(one.d_minus, QDivisor::from_terms(&[("p1", -1, 1)]));
    let p = &dg_actions(3, RulingReading::Verbatim)[1].pair;
    assert_eq!(p.d_plus, QDivisor::from_terms(&[("p0", -1, 2)]));
    assert_eq!(p.d_minus, QDivisor::from_terms(&[("p1", -1, 2)]));
    let b = resolved_boundary_zigzag(p).unwrap().unwrap();
    assert_eq!(standardize(&b).unwrap().0.to_string(), "[[0,0,(-2)_3]]");
    let sym = dg_actions(5, RulingReading::Symmetric);
    assert_eq!(sym[1].rulings.v_minus, [4, 1]);
    assert_eq!(dg_actions(5, RulingReading::Verbatim)[1].rulings.v_minus, [6, 1]);
}

#[test]
fn toric_round_trip() {
    let mut checked = 0;
    for len in 0..=5 {
        for t in tails(len, -5) {
            let p = standard_zigzag_of_toric(&t).unwrap();
            assert!(is_toric_pair(&p).unwrap());
            let b = resolved_boundary_zigzag(&p).unwrap().unwrap();
            let mut want = vec![0, 0];
            want.extend(&t);
            assert_eq!(standardize(&b).unwrap().0, Zigzag::linear(want), "{t:?}");
            let e = extended_graph(&p).unwrap();
            assert!(e.is_linear().unwrap(), "{t:?}");
            assert_eq!(picard_rank_of_pair(&p).unwrap(), 0);
            checked += 1;
        }
    }
    assert_eq!(checked, 1 + 4 + 16 + 64 + 256 + 1024);
    let a1c = standard_zigzag_of_toric(&[0]).unwrap();
    let b = resolved_boundary_zigzag(&a1c).unwrap().unwrap();
    assert_eq!(standardize(&b).unwrap().0.to_string(), "[[0,0,0]]");
}

#[test]
fn toric_pair_examples() {
    let p = standard_zigzag_of_toric(&[-2, -3]).unwrap();
    assert_eq!(p.d_plus, QDivisor::from_terms(&[("0", -5, 8)]));
    assert!(p.d_minus.is_integral() && p.d_minus.degree() == 0);
    let p = standard_zigzag_of_toric(&[]).unwrap();
    assert_eq!(normalize_pair(&p).unwrap().points().len(), 1);
    assert!(matches!(standard_zigzag_of_toric(&[-2, 1]), Err(ClassifyError::NotStandard(_))));
    let zero = DpdPair::new(QDivisor::new(), QDivisor::new());
    assert!(is_toric_pair(&zero).unwrap() && is_gizatullin(&zero));
    let two = DpdPair::new(QDivisor::from_terms(&[("a", -1, 2), ("b", -1, 3)]), QDivisor::new());
    assert!(!is_gizatullin(&two));
    assert!(matches!(extended_graph(&two), Err(ClassifyError::NotGizatullin(_))));
}

#[test]
fn smooth_witnesses() {
    let z: Zigzag = "[[0,0,-3,-4,-2]]".parse().unwrap();
    let v = smooth_hyperbolic_zigzag_test(&z).unwrap();
    assert!(v.verdict);
    let d = &v.matches[0];
    assert_eq!((d.s, d.k), (3, 2));
    let c = smooth_zigzag_contractibility_test(&z).unwrap();
    assert_eq!(c.condition.as_deref(), Some("i'"));
    assert_eq!(c.position, Some(3));
    assert_eq!(c.target, Some(ContractionTarget::MinusOne));
    let z: Zigzag = "[[0,0,-2,-2,-5,-2]]".parse().unwrap();
    let v = smooth_hyperbolic_zigzag_test(&z).unwrap();
    assert_eq!(v.form, Some(SmoothForm::II));
    assert!(v.matches.iter().any(|d| d.form == SmoothForm::II && d.k == 3));
    let v = smooth_hyperbolic_zigzag_test(&"[[0,0,-3,-3]]".parse().unwrap()).unwrap();
    assert!(!v.verdict && v.reason.is_some());
}
