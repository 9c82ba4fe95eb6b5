//! Seeded random inputs for property checks.

use rand::Rng;

use crate::algebra::galois::Scalar;
use crate::algebra::series::{Nested, SeriesRing};
use crate::algebra::tower::FieldTower;
use crate::error::Result;
use crate::extensions::ExtensionMap;
use crate::witt::{Character, WittVector};

/// A uniformly random element of `F_q`.
pub fn scalar<R: Rng>(rng: &mut R, ring: &SeriesRing) -> Scalar {
    let r = ring.scalars();
    let q = (r.p() as usize).pow(r.degree() as u32);
    r.elements()[rng.gen_range(0..q)]
}

/// Random polynomial-type element with top exponents in `[lo, hi]` and
/// inner exponents in `[-2, 2]`, about `terms` monomials.
pub fn series<R: Rng>(rng: &mut R, ring: &SeriesRing, lo: i64, hi: i64, terms: usize) -> Nested {
    let depth = ring.depth();
    let mut monos = Vec::with_capacity(terms);
    for _ in 0..terms {
        let mut e: Vec<i64> = (0..depth - 1).map(|_| rng.gen_range(-2..=2)).collect();
        e.push(rng.gen_range(lo..=hi));
        monos.push((scalar(rng, ring), e));
    }
    ring.from_monomials(depth, monos.iter().map(|(c, e)| (*c, e.as_slice())))
}

/// Random Witt vector whose components have poles of order at most `pole`.
pub fn witt_vector<R: Rng>(rng: &mut R, tower: &FieldTower, pole: i64, terms: usize) -> Result<WittVector> {
    let ring = tower.field();
    let comps = (0..tower.s()).map(|_| series(rng, &ring, -pole, 2, terms)).collect();
    WittVector::new(tower, comps)
}

/// Random reduced character with positive Swan conductor.
pub fn ramified_character<R: Rng>(rng: &mut R, tower: &FieldTower, pole: i64, terms: usize) -> Result<Character> {
    loop {
        let chi = witt_vector(rng, tower, pole, terms)?.asw_reduce()?;
        if crate::witt::swan_conductor(&chi)? > 0 {
            return Ok(chi);
        }
    }
}

/// Random separable `t -> u^e (1 + c_1 u + ... )` between one-variable
/// towers, with `e` in `[1, max_e]`.
pub fn extension<R: Rng>(rng: &mut R, source: &FieldTower, target: &FieldTower, max_e: i64) -> Result<ExtensionMap> {
    let ring = target.field();
    loop {
        let e = rng.gen_range(1..=max_e);
        let tail = series(rng, &ring, 1, 4, 3);
        let unit = ring.add(&ring.one(1), &tail);
        let phi = ExtensionMap::new(source, target, vec![ring.shift(&unit, e)])?;
        if crate::extensions::delta_tor(&phi).is_ok() {
            return Ok(phi);
        }
    }
}

/// Random `b` with `F(b) - b` in `F_n W_s(K)`.
pub fn coboundary_source<R: Rng>(rng: &mut R, tower: &FieldTower, n: i64, terms: usize) -> Result<WittVector> {
    let ring = tower.field();
    let p = tower.p() as i64;
    let s = tower.s();
    let comps = (0..s)
        .map(|j| {
            // x_j has weight p^{s-1-j}; its Frobenius must stay in F_n
            let pole = n / p.pow(s - j);
            series(rng, &ring, -pole, 3, terms)
        })
        .collect();
    WittVector::new(tower, comps)
}
