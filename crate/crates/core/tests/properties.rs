use proptest::prelude::*;

use ordbound::families::{is_aas, sample_aas};
use ordbound::nu::{nu, nu_direct, oracle_sm, NuTable};
use ordbound::predict::{applicable_rules, predict_sm};
use ordbound::{InvariantRecord, Semigroup};

fn gens() -> impl Strategy<Value = Vec<u64>> {
    (3u64..14)
        .prop_flat_map(|e| (Just(e), prop::collection::vec(e + 1..4 * e, 1..4)))
        .prop_map(|(e, mut rest)| {
            rest.push(e);
            rest.sort_unstable();
            rest.dedup();
            rest
        })
}

fn semigroup() -> impl Strategy<Value = Semigroup> {
    gens()
        .prop_filter_map("gcd must be 1", |g| Semigroup::from_generators(&g).ok())
        .prop_filter("bounded", |s| s.genus() <= 40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn nu_matches_direct_count(s in semigroup()) {
        for x in s.members_upto(2 * s.conductor()) {
            prop_assert_eq!(nu(&s, x).unwrap(), nu_direct(&s, x));
        }
    }

    #[test]
    fn tail_formula_past_2c_minus_1(s in semigroup()) {
        let t = NuTable::compute(&s);
        for e in t.entries.iter().filter(|e| e.element + 1 >= 2 * s.conductor()) {
            prop_assert_eq!(e.nu + s.genus(), e.index + 1);
        }
    }

    #[test]
    fn every_rule_admits_the_oracle(s in semigroup()) {
        let rec = InvariantRecord::compute(&s);
        let sm = oracle_sm(&s) as i64;
        for h in applicable_rules(&s, &rec).unwrap() {
            prop_assert!(h.conclusion.admits(sm), "{} {} on {}", h.rule, h.conclusion, s);
        }
        prop_assert!(predict_sm(&s, &rec).unwrap().admits(sm));
    }

    #[test]
    fn invariant_ranges(s in semigroup()) {
        let r = InvariantRecord::compute(&s);
        prop_assume!(!r.flags.ordinary);
        prop_assert!(r.c_sub <= r.d && r.d < r.c);
        prop_assert!(r.s_tilde <= r.d);
        prop_assert_eq!(r.t, r.d - r.s_tilde);
        prop_assert_eq!(r.ell, r.c - 1 - r.d);
        prop_assert!(r.tau >= 1 && r.tau < r.e);
        prop_assert_eq!(r.flags.symmetric, r.tau == 1);
    }

    #[test]
    fn spec_round_trip(s in semigroup()) {
        let j = serde_json::to_string(&s.spec()).unwrap();
        let back: ordbound::SemigroupSpec = serde_json::from_str(&j).unwrap();
        prop_assert_eq!(back.build().unwrap(), s);
    }
}

#[test]
fn aas_type_bound_on_200_instances() {
    let sample = sample_aas(7, 200, 3, 6);
    assert_eq!(sample.len(), 200);
    for a in &sample {
        assert!(is_aas(&a.semigroup));
        let tau = InvariantRecord::compute(&a.semigroup).tau as usize;
        assert!(
            tau <= 2 * (a.mu - 2),
            "{} tau {} mu {}",
            a.semigroup,
            tau,
            a.mu
        );
    }
}

#[test]
fn aas_sample_is_reproducible() {
    let a: Vec<String> = sample_aas(11, 20, 3, 6)
        .iter()
        .map(|x| x.semigroup.to_string())
        .collect();
    let b: Vec<String> = sample_aas(11, 20, 3, 6)
        .iter()
        .map(|x| x.semigroup.to_string())
        .collect();
    assert_eq!(a, b);
}
