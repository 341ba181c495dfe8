use cstar_core::arith::{cf_eval, cf_eval_int, dual_residue, floor_frac, hj_expand, HjPair, Rational};
use num_integer::Integer;
use proptest::prelude::*;

fn coprime() -> impl Strategy<Value = (i64, i64)> {
    (2i64..=400).prop_flat_map(|m| (Just(m), 1..m)).prop_filter("coprime", |(m, e)| m.gcd(e) == 1)
}

proptest! {
    #[test]
    fn expansion_evaluates_back((m, e) in coprime()) {
        let ks = hj_expand(m, e).unwrap();
        prop_assert!(ks.iter().all(|k| *k >= 2));
        prop_assert_eq!(cf_eval_int(&ks).unwrap(), Rational::new(m, e));
    }

    #[test]
    fn dual_is_reversal((m, e) in coprime()) {
        let d = dual_residue(m, e).unwrap();
        prop_assert_eq!((e * d).rem_euclid(m), 1);
        let mut rev = hj_expand(m, e).unwrap();
        rev.reverse();
        prop_assert_eq!(hj_expand(m, d).unwrap(), rev);
        prop_assert_eq!(HjPair::new(m, e).unwrap().dual().dual(), HjPair::new(m, e).unwrap());
    }

    #[test]
    fn from_chain_inverts_expansion((m, e) in coprime()) {
        let h = HjPair::new(m, e).unwrap();
        prop_assert_eq!(HjPair::from_chain(&h.expansion()).unwrap(), h);
    }

    #[test]
    fn chain_length_bounds((m, e) in coprime()) {
        // every k >= 2 gives length <= m - 1, with equality only for A-chains
        let n = hj_expand(m, e).unwrap().len() as i64;
        prop_assert!(n < m);
        prop_assert_eq!(n == m - 1, e == m - 1);
    }

    #[test]
    fn rational_text_round_trip(n in -10_000i64..10_000, d in 1i64..500) {
        let q = Rational::new(n, d);
        prop_assert_eq!(q.to_string().parse::<Rational>().unwrap(), q.clone());
        let (fl, fr) = floor_frac(&q);
        prop_assert!(!fr.is_negative() && fr < 1);
        prop_assert_eq!(Rational::from(fl) + fr, q);
    }
}

#[test]
fn known_expansions() {
    assert_eq!(hj_expand(5, 2).unwrap(), vec![3, 2]);
    assert_eq!(hj_expand(7, 3).unwrap(), vec![3, 2, 2]);
    assert_eq!(hj_expand(1, 0).unwrap(), Vec::<i64>::new());
    assert_eq!(dual_residue(7, 3).unwrap(), 5);
    let ks: Vec<Rational> = [3, 3].iter().map(|k| Rational::from(*k)).collect();
    assert_eq!(cf_eval(&ks).unwrap(), Rational::new(8, 3));
}

#[test]
fn invalid_pairs_are_rejected() {
    assert!(hj_expand(6, 4).is_err());
    assert!(hj_expand(0, 0).is_err());
    assert!(HjPair::new(4, 2).is_err());
}
