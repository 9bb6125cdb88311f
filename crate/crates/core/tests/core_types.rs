use predict_core::prefix::sigma;
use predict_core::{BitStr, Dyadic, PrefixFreeSet, Ratio};
use proptest::prelude::*;

fn bitstr(max_len: usize) -> impl Strategy<Value = BitStr> {
    prop::collection::vec(0u8..2, 0..=max_len).prop_map(BitStr::from_digits)
}

fn ratio() -> impl Strategy<Value = Ratio> {
    (0u64..10_000, 1u64..10_000).prop_map(|(n, d)| Ratio::new(n, d))
}

proptest! {
    #[test]
    fn full_levels_have_unit_measure(n in 0usize..12) {
        let level: Vec<BitStr> = BitStr::all_of_len(n).collect();
        prop_assert_eq!(sigma(&level).unwrap(), Ratio::one());
    }

    #[test]
    fn splitting_a_member_keeps_the_measure(
        members in prop::collection::btree_set(bitstr(8), 1..12),
        pick in any::<prop::sample::Index>(),
    ) {
        // Keep only the minimal elements to get a prefix-free set.
        let minimal: Vec<BitStr> = members
            .iter()
            .filter(|x| !members.iter().any(|y| y.is_proper_prefix_of(x)))
            .cloned()
            .collect();
        let set = PrefixFreeSet::new(minimal.clone()).unwrap();
        let x = pick.get(&minimal).clone();
        let mut split: Vec<BitStr> = minimal.into_iter().filter(|y| *y != x).collect();
        split.extend(x.children());
        prop_assert_eq!(PrefixFreeSet::new(split).unwrap().sigma(), set.sigma());
    }

    #[test]
    fn ratio_round_trips(a in ratio(), b in ratio()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) / &b, a.clone());
        }
        prop_assert_eq!(a.to_string().parse::<Ratio>().unwrap(), a);
    }

    #[test]
    fn bitstr_text_round_trips(x in bitstr(40)) {
        prop_assert_eq!(x.to_string().parse::<BitStr>().unwrap(), x);
    }

    #[test]
    fn dyadic_digits_rebuild_the_value(m in 0u64..1_000_000, e in 0u64..30) {
        let r = Ratio::new(m, 1 << e);
        let d = Dyadic::try_from(&r).unwrap();
        prop_assert_eq!(d.to_ratio(), r.clone());
        if r < Ratio::from_integer(2) {
            let rebuilt: Ratio = d.set_digits().into_iter().map(Ratio::pow2_neg).sum();
            prop_assert_eq!(rebuilt, r);
        }
    }
}

#[test]
fn empty_string_prints_as_dot() {
    assert_eq!(BitStr::empty().to_string(), ".");
    assert_eq!(".".parse::<BitStr>().unwrap(), BitStr::empty());
    assert!("012".parse::<BitStr>().is_err());
}
