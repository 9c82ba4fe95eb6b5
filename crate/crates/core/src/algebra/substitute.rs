//! Substitution of series images for the tower variables, and reversion.

use super::series::{Nested, SeriesRing, EXACT};
use crate::error::{Error, Result};

/// Replaces `T_i` by `images[i - 1]` (elements of `target` at its top level).
///
/// The image of the uniformizer must have positive valuation and the other
/// images nonnegative valuation. Inexact tails at the top level become
/// `O(T^{c e})` with `e` the valuation of the uniformizer image; inexact
/// inner coefficients are only accepted when their variable's image has
/// positive valuation.
pub fn substitute(a: &Nested, images: &[Nested], target: &SeriesRing) -> Result<Nested> {
    let d = a.level();
    if images.len() != d {
        return Err(Error::TowerMismatch(format!(
            "{} images for {} variables",
            images.len(),
            d
        )));
    }
    let level = target.depth();
    for (i, img) in images.iter().enumerate() {
        if img.level() != level {
            return Err(Error::TowerMismatch(format!(
                "image {} lives at level {}, target has {}",
                i + 1,
                img.level(),
                level
            )));
        }
        let Some(v) = img.ord() else {
            return Err(Error::NonEmbedding(format!("image of variable {} is zero", i + 1)));
        };
        if i + 1 == d && v < 1 {
            return Err(Error::NonEmbedding(format!(
                "uniformizer image has valuation {v} < 1"
            )));
        }
        if v < 0 {
            return Err(Error::NonEmbedding(format!(
                "image of variable {} has negative valuation {v}",
                i + 1
            )));
        }
    }
    sub(a, images, target)
}

fn sub(x: &Nested, images: &[Nested], tgt: &SeriesRing) -> Result<Nested> {
    let level = tgt.depth();
    let s = match x {
        Nested::Scalar(c) => return Ok(tgt.constant(level, tgt.scalars().coerce(c))),
        Nested::Series(s) => s,
    };
    let img = &images[s.level() - 1];
    let v = img.ord().expect("checked nonzero");
    let mut acc = tgt.zero(level);
    if s.ceiling() != EXACT {
        if v < 1 {
            return Err(Error::PrecisionExhausted(format!(
                "coefficient of variable {} is only known below exponent {}",
                s.level(),
                s.ceiling()
            )));
        }
        acc = tgt.big_o(level, s.ceiling().saturating_mul(v));
    }
    let mut cur: Option<(i64, Nested)> = None;
    for (e, c) in s.terms() {
        let pow = match &cur {
            None => tgt.pow(img, *e)?,
            Some((e0, p0)) => tgt.mul(p0, &tgt.pow(img, e - e0)?),
        };
        let term = tgt.mul(&sub(c, images, tgt)?, &pow);
        acc = tgt.add(&acc, &term);
        cur = Some((*e, pow));
    }
    Ok(acc)
}

/// Given `phi = c T + ...` in the uniformizer `T` (coefficients may involve
/// the inner variables), returns `psi` with `phi(psi) = T` to the working
/// precision.
pub fn revert(phi: &Nested, ring: &SeriesRing) -> Result<Nested> {
    let level = ring.depth();
    if phi.level() != level {
        return Err(Error::TowerMismatch("reversion outside the top level".into()));
    }
    if phi.ord() != Some(1) {
        return Err(Error::NonEmbedding(format!(
            "reversion needs valuation 1, found {:?}",
            phi.ord()
        )));
    }
    let t = ring.var(level, level);
    let h = ring.shift(phi, -1);
    let mut images: Vec<Nested> = (1..=level).map(|i| ring.var(level, i)).collect();
    let mut psi = ring.mul(&t, &ring.inv(&h)?);
    for _ in 0..=ring.precision() + 1 {
        images[level - 1] = psi.clone();
        let next = ring.mul(&t, &ring.inv(&substitute(&h, &images, ring)?)?);
        if next == psi {
            break;
        }
        psi = next;
    }
    Ok(psi)
}
