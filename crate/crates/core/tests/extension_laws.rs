use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rswan_core::extensions::{
    conductor_change, delta_tor, pullback_character, ramification_index, ExtensionMap, Status,
};
use rswan_core::logdiff::{pullback_form, WindowedForm};
use rswan_core::rsw::{lower_index, rsw_char_p, rsw_representative};
use rswan_core::sample;
use rswan_core::witt::swan_conductor;
use rswan_core::FieldTower;

fn pair(p: u32) -> (FieldTower, FieldTower) {
    (
        FieldTower::new(p, 1, 1, &["t"], 64).unwrap(),
        FieldTower::new(p, 1, 1, &["u"], 64).unwrap(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn conductor_never_exceeds_e_times_sw(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3])) {
        let (k, l) = pair(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chi = sample::ramified_character(&mut rng, &k, 5, 3).unwrap();
        let phi = sample::extension(&mut rng, &k, &l, 4).unwrap();
        let e = ramification_index(&phi).unwrap();
        let sw_l = swan_conductor(&pullback_character(&chi, &phi).unwrap()).unwrap();
        prop_assert!(sw_l <= e * swan_conductor(&chi).unwrap());
        let rep = conductor_change(&chi, &phi).unwrap();
        prop_assert_ne!(rep.status, Status::Fail, "{:?}", rep);
    }

    // delta_tor by the ordinary derivative: ord(u f'(u) / f(u))
    #[test]
    fn torsion_length_oracle(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3, 5])) {
        let (k, l) = pair(p);
        let r = l.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = sample::extension(&mut rng, &k, &l, 6).unwrap();
        let f = &phi.images()[0];
        let mut deriv = Vec::new();
        f.for_each_monomial(|c, e| deriv.push((r.scalars().mul_int(c, e[0]), e.to_vec())));
        let uf = r.from_monomials(1, deriv.iter().map(|(c, e)| (*c, e.as_slice())));
        let expect = r.mul(&uf, &r.inv(f).unwrap()).ord();
        match expect {
            Some(v) => prop_assert_eq!(delta_tor(&phi).unwrap().delta, v),
            None => prop_assert!(delta_tor(&phi).is_err()),
        }
    }

    // along tame maps with Sw(chi_L) = e Sw(chi), Rsw commutes with pullback
    #[test]
    fn rsw_commutes_with_tame_pullback(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3])) {
        let (k, l) = pair(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chi = sample::ramified_character(&mut rng, &k, 5, 3).unwrap();
        let e = loop {
            let e: i64 = rng.gen_range(1..=5);
            if e % p as i64 != 0 {
                break e;
            }
        };
        let unit = sample::series(&mut rng, &l.field(), 1, 3, 2);
        let img = l.field().shift(&l.field().add(&l.field().one(1), &unit), e);
        let phi = ExtensionMap::new(&k, &l, vec![img.clone()]).unwrap();
        let chi_l = pullback_character(&chi, &phi).unwrap();
        let n = swan_conductor(&chi).unwrap();
        prop_assert_eq!(swan_conductor(&chi_l).unwrap(), e * n);
        let rsw_l = rsw_char_p(&chi_l).unwrap();
        let pulled = pullback_form(&rsw_representative(&chi).unwrap(), &[img], &l.field()).unwrap();
        let w = WindowedForm::new(pulled, e * n, lower_index(e * n, p, None), &l.field()).unwrap();
        prop_assert_eq!(w.form(), rsw_l.value().form());
    }
}

#[test]
fn catalog_case() {
    let (k, l) = pair(2);
    let phi = ExtensionMap::parse(&k, &l, &["u^2 + u^3"]).unwrap();
    let chi = rswan_core::witt::Character::parse(&k, &["t^-3"]).unwrap();
    let rep = conductor_change(&chi, &phi).unwrap();
    assert_eq!((rep.delta, rep.predicted, rep.direct, rep.status), (1, 5, 5, Status::Pass));
}
