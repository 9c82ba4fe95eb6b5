use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rswan_core::reciprocity::{
    eval_symbol, residue_symbol, symbol_from_lifts, theta_from_lifts, theta_lift, truncated_exp,
    verify_rsw_characterization,
};
use rswan_core::sample;
use rswan_core::witt::Character;
use rswan_core::FieldTower;

fn tower(p: u32, s: u32, depth: usize) -> FieldTower {
    let vars: &[&str] = if depth == 1 { &["t"] } else { &["u", "t"] };
    FieldTower::new(p, 1, s, vars, 40).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn symbol_ignores_choice_of_lifts(seed in any::<u64>(), shape in 0usize..4) {
        let (p, s) = [(2, 2), (2, 3), (3, 2), (5, 2)][shape];
        let tw = tower(p, s, 1);
        let (field, lift) = (tw.field(), tw.lift());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chi = sample::ramified_character(&mut rng, &tw, 4, 2).unwrap();
        let y = sample::series(&mut rng, &field, -2, 3, 3);
        prop_assume!(!y.is_zero());
        let plain = eval_symbol(&chi, std::slice::from_ref(&y)).unwrap();

        let pz = |rng: &mut ChaCha8Rng, lo: i64| {
            let z = sample::series(rng, &lift, lo, lo + 4, 3);
            lift.mul_int(&z, p as i64)
        };
        let comps: Vec<_> = chi
            .vector()
            .components()
            .iter()
            .map(|c| {
                let lo = c.ord().unwrap_or(0);
                lift.add(&field.convert(c, &lift), &pz(&mut rng, lo))
            })
            .collect();
        let theta = theta_from_lifts(&comps, &lift).unwrap();
        let y_lift = lift.add(&field.convert(&y, &lift), &pz(&mut rng, y.ord().unwrap()));
        prop_assert_eq!(symbol_from_lifts(&theta, &[y_lift], &lift).unwrap(), plain);
    }

    #[test]
    fn symbol_is_additive_in_the_character(seed in any::<u64>(), shape in 0usize..3) {
        let (p, s, depth) = [(2, 2, 1), (3, 1, 1), (2, 1, 2)][shape];
        let tw = tower(p, s, depth);
        let field = tw.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sample::ramified_character(&mut rng, &tw, 3, 2).unwrap();
        let b = sample::ramified_character(&mut rng, &tw, 3, 2).unwrap();
        let ys: Vec<_> = (0..depth)
            .map(|_| field.add(&field.one(depth), &sample::series(&mut rng, &field, 1, 3, 2)))
            .collect();
        let ys = if depth == 2 { vec![ys[0].clone(), field.var(2, 2)] } else { ys };
        let q = p.pow(s);
        let sum = eval_symbol(&a.add(&b).unwrap(), &ys).unwrap();
        prop_assert_eq!(sum, (eval_symbol(&a, &ys).unwrap() + eval_symbol(&b, &ys).unwrap()) % q);
    }

    #[test]
    fn matches_the_local_symbol_in_length_one(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3, 5])) {
        let tw = tower(p, 1, 1);
        let field = tw.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chi = sample::ramified_character(&mut rng, &tw, 5, 3).unwrap();
        let y = sample::series(&mut rng, &field, -3, 3, 4);
        prop_assume!(!y.is_zero());
        prop_assert_eq!(
            eval_symbol(&chi, std::slice::from_ref(&y)).unwrap(),
            residue_symbol(chi.vector().a(0), &y, &field).unwrap()
        );
    }
}

#[test]
fn theta_of_a_hand_vector() {
    // (t^-1, t^-1) at p = 2: p^0 (t^-1)^2 + p^1 t^-1 = t^-2 + 2 t^-1
    let tw = tower(2, 2, 1);
    let chi = Character::parse(&tw, &["t^-1", "t^-1"]).unwrap();
    assert_eq!(theta_lift(chi.vector()).unwrap(), tw.parse_lift("t^-2 + 2*t^-1").unwrap());
}

#[test]
fn characterization_holds_in_low_dimension() {
    for (p, s, depth, comps) in [
        (2, 1, 1, vec!["t^-5"]),
        (3, 1, 1, vec!["t^-4 + t^-1"]),
        (3, 2, 1, vec!["t^-1", "t^-2"]),
        (2, 1, 2, vec!["u*t^-3 + t^-1"]),
        (3, 1, 2, vec!["u*t^-2"]),
    ] {
        let tw = tower(p, s, depth);
        let chi = Character::parse(&tw, &comps).unwrap();
        let rep = verify_rsw_characterization(&chi, 25, 11).unwrap();
        assert!(rep.all_pass(), "{comps:?}: {rep:?}");
    }
}

#[test]
fn exponential_of_a_unit_is_refused() {
    let tw = tower(3, 1, 1);
    assert!(truncated_exp(&tw.parse("2 + t").unwrap(), &tw.field()).is_err());
}
