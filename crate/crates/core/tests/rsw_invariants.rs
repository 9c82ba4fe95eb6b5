use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rswan_core::logdiff::{parse_form, WindowedForm};
use rswan_core::rsw::{is_closed, rsw_char_p, rsw_representative, sw_from_rsw};
use rswan_core::sample;
use rswan_core::witt::{swan_conductor, Character};
use rswan_core::FieldTower;

fn tower(p: u32, s: u32, depth: usize) -> FieldTower {
    let vars: &[&str] = if depth == 1 { &["t"] } else { &["u", "t"] };
    FieldTower::new(p, 1, s, vars, 48).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn independent_of_representative(seed in any::<u64>(), shape in 0usize..8) {
        let (p, s, depth) = [(2, 1, 1), (2, 2, 1), (3, 1, 1), (3, 2, 1), (2, 1, 2), (2, 2, 2), (3, 1, 2), (3, 2, 2)][shape];
        let tw = tower(p, s, depth);
        let ring = tw.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chi = sample::ramified_character(&mut rng, &tw, 6, 3).unwrap();
        let v = rsw_char_p(&chi).unwrap();
        let b = sample::coboundary_source(&mut rng, &tw, v.n(), 3).unwrap();
        let other = Character::unreduced(chi.vector().add_coboundary(&b).unwrap());
        prop_assert!(-other.vector().witt_ord().unwrap() <= v.n());
        let w = WindowedForm::new(rsw_representative(&other).unwrap(), v.n(), v.m(), &ring).unwrap();
        prop_assert_eq!(w.form(), v.value().form());
    }

    #[test]
    fn closed_and_recovers_sw(seed in any::<u64>(), shape in 0usize..4) {
        let (p, s) = [(2, 1), (2, 2), (3, 1), (5, 1)][shape];
        let tw = tower(p, s, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chi = sample::ramified_character(&mut rng, &tw, 6, 3).unwrap();
        let v = rsw_char_p(&chi).unwrap();
        prop_assert!(is_closed(&v).unwrap());
        prop_assert_eq!(sw_from_rsw(&v).unwrap(), swan_conductor(&chi).unwrap());
    }
}

// for s = 1 the value is -da: -d(t^-2) = 2 t^-2 dlog t
#[test]
fn hand_computed_values() {
    let tw = tower(3, 1, 1);
    let chi = Character::parse(&tw, &["t^-2"]).unwrap();
    let v = rsw_char_p(&chi).unwrap();
    let (expect, _) = parse_form("2*t^-2 dlog(t)", &tw).unwrap();
    assert_eq!(v.value().form(), &expect);

    let tw = tower(2, 1, 2);
    let chi = Character::parse(&tw, &["u*t^-2"]).unwrap();
    let v = rsw_char_p(&chi).unwrap();
    // d(u t^-2) = u t^-2 dlog u - 2 u t^-2 dlog t = u t^-2 dlog u in char 2
    let (expect, _) = parse_form("u*t^-2 dlog(u)", &tw).unwrap();
    assert_eq!(v.value().form(), &expect);
}
