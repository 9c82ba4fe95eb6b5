//! Iterated truncated Laurent series `R((T_1))...((T_d))` over a Galois ring.
//!
//! An element at level `l` is a Laurent series in `T_l` whose coefficients are
//! elements at level `l - 1`; level 0 is a scalar. Every series carries a
//! precision ceiling: exponents at or above it are unknown. Exact Laurent
//! polynomials use the ceiling [`EXACT`]. Binary operations intersect the
//! windows they can guarantee, and every result is capped to `precision`
//! exponents above its lowest term.

use std::cmp::min;
use std::collections::BTreeMap;

use super::galois::{GaloisRing, Scalar};
use crate::error::{Error, Result};

/// Ceiling of a series with no unknown terms.
pub const EXACT: i64 = i64::MAX;

/// Default number of retained exponents per variable.
pub const DEFAULT_PRECISION: i64 = 64;

/// Inputs with a valuation below this bound are rejected.
pub const MIN_ORD: i64 = -10_000;

fn sat_add(a: i64, b: i64) -> i64 {
    if a == EXACT || b == EXACT {
        EXACT
    } else {
        a.saturating_add(b)
    }
}

/// An element of some level of the tower.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Nested {
    Scalar(Scalar),
    Series(Series),
}

/// A truncated Laurent series in the variable of its level.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Series {
    level: usize,
    terms: Vec<(i64, Nested)>,
    ceil: i64,
}

impl Series {
    pub fn level(&self) -> usize {
        self.level
    }

    /// Known nonzero terms, ascending exponent.
    pub fn terms(&self) -> &[(i64, Nested)] {
        &self.terms
    }

    pub fn ceiling(&self) -> i64 {
        self.ceil
    }

    fn lower_bound(&self) -> i64 {
        self.terms.first().map_or(self.ceil, |t| t.0)
    }
}

impl Nested {
    pub fn level(&self) -> usize {
        match self {
            Nested::Scalar(_) => 0,
            Nested::Series(s) => s.level,
        }
    }

    /// True when no nonzero term is known.
    pub fn is_zero(&self) -> bool {
        match self {
            Nested::Scalar(c) => c.is_zero(),
            Nested::Series(s) => s.terms.is_empty(),
        }
    }

    /// Valuation in the variable of the element's own level. Scalars have
    /// valuation 0 when nonzero.
    pub fn ord(&self) -> Option<i64> {
        match self {
            Nested::Scalar(c) => (!c.is_zero()).then_some(0),
            Nested::Series(s) => s.terms.first().map(|t| t.0),
        }
    }

    pub fn ceiling(&self) -> i64 {
        match self {
            Nested::Scalar(_) => EXACT,
            Nested::Series(s) => s.ceil,
        }
    }

    pub fn terms(&self) -> &[(i64, Nested)] {
        match self {
            Nested::Scalar(_) => &[],
            Nested::Series(s) => &s.terms,
        }
    }

    pub fn as_scalar(&self) -> Option<&Scalar> {
        match self {
            Nested::Scalar(c) => Some(c),
            Nested::Series(_) => None,
        }
    }

    /// Exact at every level.
    pub fn is_exact(&self) -> bool {
        match self {
            Nested::Scalar(_) => true,
            Nested::Series(s) => s.ceil == EXACT && s.terms.iter().all(|(_, c)| c.is_exact()),
        }
    }

    /// Top-level coefficient of `T^j` if it is known.
    pub fn coeff(&self, j: i64) -> Result<Option<&Nested>> {
        match self {
            Nested::Scalar(_) => Err(Error::TowerMismatch("scalar has no coefficients".into())),
            Nested::Series(s) => {
                if j >= s.ceil {
                    return Err(Error::PrecisionExhausted(format!(
                        "coefficient of exponent {j} requested, known below {}",
                        s.ceil
                    )));
                }
                Ok(s
                    .terms
                    .binary_search_by_key(&j, |t| t.0)
                    .ok()
                    .map(|i| &s.terms[i].1))
            }
        }
    }

    /// Visits every known monomial as `(coefficient, exponents)` with
    /// `exponents[i]` the exponent of `T_{i+1}`.
    pub fn for_each_monomial(&self, mut f: impl FnMut(&Scalar, &[i64])) {
        let mut exps = vec![0; self.level()];
        fn walk(x: &Nested, exps: &mut Vec<i64>, f: &mut dyn FnMut(&Scalar, &[i64])) {
            match x {
                Nested::Scalar(c) => {
                    if !c.is_zero() {
                        f(c, exps)
                    }
                }
                Nested::Series(s) => {
                    for (e, c) in &s.terms {
                        exps[s.level - 1] = *e;
                        walk(c, exps, f);
                    }
                }
            }
        }
        walk(self, &mut exps, &mut f);
    }

    pub fn monomials(&self) -> Vec<(Scalar, Vec<i64>)> {
        let mut out = Vec::new();
        self.for_each_monomial(|c, e| out.push((*c, e.to_vec())));
        out
    }

    /// Smallest ceiling found anywhere in the element.
    pub fn min_ceiling(&self) -> i64 {
        match self {
            Nested::Scalar(_) => EXACT,
            Nested::Series(s) => s
                .terms
                .iter()
                .map(|(_, c)| c.min_ceiling())
                .fold(s.ceil, min),
        }
    }
}

/// Operation selector for [`SeriesRing::series_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Mul,
}

/// Arithmetic context: scalar ring, number of variables and precision budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesRing {
    scalars: GaloisRing,
    depth: usize,
    precision: i64,
}

impl SeriesRing {
    pub fn new(scalars: GaloisRing, depth: usize, precision: i64) -> Result<Self> {
        if precision < 1 {
            return Err(Error::InvalidTower(format!("precision {precision} < 1")));
        }
        Ok(SeriesRing {
            scalars,
            depth,
            precision,
        })
    }

    pub fn scalars(&self) -> &GaloisRing {
        &self.scalars
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn p(&self) -> u32 {
        self.scalars.p()
    }

    /// Same variables over another scalar ring.
    pub fn with_scalars(&self, scalars: GaloisRing) -> SeriesRing {
        SeriesRing {
            scalars,
            depth: self.depth,
            precision: self.precision,
        }
    }

    pub fn with_depth(&self, depth: usize) -> SeriesRing {
        SeriesRing {
            scalars: self.scalars.clone(),
            depth,
            precision: self.precision,
        }
    }

    pub fn with_precision(&self, precision: i64) -> SeriesRing {
        SeriesRing {
            scalars: self.scalars.clone(),
            depth: self.depth,
            precision,
        }
    }

    // ----- constructors -----

    pub fn zero(&self, level: usize) -> Nested {
        if level == 0 {
            Nested::Scalar(Scalar::ZERO)
        } else {
            Nested::Series(Series {
                level,
                terms: Vec::new(),
                ceil: EXACT,
            })
        }
    }

    /// `O(T_level^c)`.
    pub fn big_o(&self, level: usize, c: i64) -> Nested {
        assert!(level > 0);
        Nested::Series(Series {
            level,
            terms: Vec::new(),
            ceil: c,
        })
    }

    pub fn one(&self, level: usize) -> Nested {
        self.constant(level, self.scalars.one())
    }

    pub fn constant(&self, level: usize, c: Scalar) -> Nested {
        self.embed(level, Nested::Scalar(c))
    }

    pub fn int(&self, level: usize, n: i64) -> Nested {
        self.constant(level, self.scalars.from_int(n))
    }

    /// Embeds an element of a lower level as a constant of `level`.
    pub fn embed(&self, level: usize, x: Nested) -> Nested {
        let mut cur = x;
        for l in cur.level() + 1..=level {
            let terms = if cur.is_zero() { vec![] } else { vec![(0, cur)] };
            cur = Nested::Series(Series {
                level: l,
                terms,
                ceil: EXACT,
            });
        }
        cur
    }

    /// `c * T_1^{e_1} ... T_l^{e_l}` at level `l = exps.len()`.
    pub fn monomial(&self, c: Scalar, exps: &[i64]) -> Nested {
        let mut cur = Nested::Scalar(c);
        if c.is_zero() {
            return self.zero(exps.len());
        }
        for (i, &e) in exps.iter().enumerate() {
            cur = Nested::Series(Series {
                level: i + 1,
                terms: vec![(e, cur)],
                ceil: EXACT,
            });
        }
        cur
    }

    /// The variable `T_var` as an element of `level`.
    pub fn var(&self, level: usize, var: usize) -> Nested {
        assert!(var >= 1 && var <= level);
        let mut exps = vec![0; level];
        exps[var - 1] = 1;
        self.monomial(self.scalars.one(), &exps)
    }

    /// Builds an exact element from monomials, summing repeats.
    pub fn from_monomials<'a>(
        &self,
        level: usize,
        monos: impl IntoIterator<Item = (Scalar, &'a [i64])>,
    ) -> Nested {
        let mut acc: BTreeMap<Vec<i64>, Scalar> = BTreeMap::new();
        for (c, e) in monos {
            assert_eq!(e.len(), level);
            let key: Vec<i64> = e.iter().rev().copied().collect();
            let slot = acc.entry(key).or_insert(Scalar::ZERO);
            *slot = self.scalars.add(slot, &c);
        }
        self.build_from_sorted(level, &acc.into_iter().filter(|(_, c)| !c.is_zero()).collect::<Vec<_>>())
    }

    // keys are exponents ordered top variable first
    fn build_from_sorted(&self, level: usize, monos: &[(Vec<i64>, Scalar)]) -> Nested {
        if level == 0 {
            return Nested::Scalar(monos.first().map_or(Scalar::ZERO, |m| m.1));
        }
        let mut terms = Vec::new();
        let mut i = 0;
        while i < monos.len() {
            let e = monos[i].0[0];
            let mut j = i;
            while j < monos.len() && monos[j].0[0] == e {
                j += 1;
            }
            let inner: Vec<(Vec<i64>, Scalar)> = monos[i..j]
                .iter()
                .map(|(k, c)| (k[1..].to_vec(), *c))
                .collect();
            let c = self.build_from_sorted(level - 1, &inner);
            if !c.is_zero() {
                terms.push((e, c));
            }
            i = j;
        }
        self.make(level, terms, EXACT)
    }

    /// Normalizes: drops zero coefficients and terms at or above the ceiling,
    /// then applies the precision budget.
    fn make(&self, level: usize, mut terms: Vec<(i64, Nested)>, mut ceil: i64) -> Nested {
        terms.retain(|(e, c)| *e < ceil && !c.is_zero());
        if let (Some(&(lo, _)), Some(&(hi, _))) = (terms.first(), terms.last()) {
            let cap = lo.saturating_add(self.precision);
            if hi >= cap {
                ceil = min(ceil, cap);
                terms.retain(|(e, _)| *e < ceil);
            }
        }
        Nested::Series(Series { level, terms, ceil })
    }

    /// Builds a series from explicit top-level terms (any order, repeats summed).
    pub fn from_terms(&self, level: usize, terms: Vec<(i64, Nested)>, ceil: i64) -> Nested {
        let mut acc: BTreeMap<i64, Nested> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(c.level() + 1, level, "coefficient level mismatch");
            match acc.remove(&e) {
                Some(prev) => {
                    acc.insert(e, self.add(&prev, &c));
                }
                None => {
                    acc.insert(e, c);
                }
            }
        }
        self.make(level, acc.into_iter().collect(), ceil)
    }

    // ----- arithmetic -----

    fn same_level(a: &Nested, b: &Nested) {
        assert_eq!(
            a.level(),
            b.level(),
            "operands live at different tower levels"
        );
    }

    pub fn add(&self, a: &Nested, b: &Nested) -> Nested {
        Self::same_level(a, b);
        match (a, b) {
            (Nested::Scalar(x), Nested::Scalar(y)) => Nested::Scalar(self.scalars.add(x, y)),
            (Nested::Series(x), Nested::Series(y)) => {
                let ceil = min(x.ceil, y.ceil);
                let mut out = Vec::with_capacity(x.terms.len() + y.terms.len());
                let (mut i, mut j) = (0, 0);
                while i < x.terms.len() || j < y.terms.len() {
                    let ei = x.terms.get(i).map_or(i64::MAX, |t| t.0);
                    let ej = y.terms.get(j).map_or(i64::MAX, |t| t.0);
                    if ei.min(ej) >= ceil {
                        break;
                    }
                    if ei < ej {
                        out.push(x.terms[i].clone());
                        i += 1;
                    } else if ej < ei {
                        out.push(y.terms[j].clone());
                        j += 1;
                    } else {
                        out.push((ei, self.add(&x.terms[i].1, &y.terms[j].1)));
                        i += 1;
                        j += 1;
                    }
                }
                self.make(x.level, out, ceil)
            }
            _ => unreachable!(),
        }
    }

    pub fn neg(&self, a: &Nested) -> Nested {
        match a {
            Nested::Scalar(x) => Nested::Scalar(self.scalars.neg(x)),
            Nested::Series(s) => Nested::Series(Series {
                level: s.level,
                terms: s.terms.iter().map(|(e, c)| (*e, self.neg(c))).collect(),
                ceil: s.ceil,
            }),
        }
    }

    pub fn sub(&self, a: &Nested, b: &Nested) -> Nested {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Nested, b: &Nested) -> Nested {
        Self::same_level(a, b);
        match (a, b) {
            (Nested::Scalar(x), Nested::Scalar(y)) => Nested::Scalar(self.scalars.mul(x, y)),
            (Nested::Series(x), Nested::Series(y)) => self.mul_series(x, y),
            _ => unreachable!(),
        }
    }

    fn mul_series(&self, x: &Series, y: &Series) -> Nested {
        let ceil = min(
            sat_add(x.ceil, y.lower_bound()),
            sat_add(y.ceil, x.lower_bound()),
        );
        if x.terms.is_empty() || y.terms.is_empty() {
            return self.make(x.level, Vec::new(), ceil);
        }
        let lo = x.terms[0].0 + y.terms[0].0;
        let hi = x.terms.last().expect("nonempty").0 + y.terms.last().expect("nonempty").0;
        let budget = lo.saturating_add(self.precision);
        let ceil = if hi >= budget { min(ceil, budget) } else { ceil };
        let cap = min(ceil, hi + 1);
        let width = (cap - lo).max(0) as usize;
        let mut acc: Vec<Option<Nested>> = vec![None; width];
        for (i, u) in &x.terms {
            if i + y.terms[0].0 >= cap {
                break;
            }
            for (j, v) in &y.terms {
                let e = i + j;
                if e >= cap {
                    break;
                }
                let prod = self.mul(u, v);
                let slot = &mut acc[(e - lo) as usize];
                *slot = Some(match slot.take() {
                    Some(prev) => self.add(&prev, &prod),
                    None => prod,
                });
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter_map(|(k, c)| c.map(|c| (lo + k as i64, c)))
            .collect();
        self.make(x.level, terms, ceil)
    }

    pub fn mul_scalar(&self, a: &Nested, c: &Scalar) -> Nested {
        match a {
            Nested::Scalar(x) => Nested::Scalar(self.scalars.mul(x, c)),
            Nested::Series(s) => {
                let terms = s.terms.iter().map(|(e, x)| (*e, self.mul_scalar(x, c))).collect();
                self.make(s.level, terms, s.ceil)
            }
        }
    }

    pub fn mul_int(&self, a: &Nested, n: i64) -> Nested {
        self.mul_scalar(a, &self.scalars.from_int(n))
    }

    /// Multiplies by `T_level^k`.
    pub fn shift(&self, a: &Nested, k: i64) -> Nested {
        match a {
            Nested::Scalar(_) => panic!("cannot shift a scalar"),
            Nested::Series(s) => Nested::Series(Series {
                level: s.level,
                terms: s.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
                ceil: sat_add(s.ceil, k),
            }),
        }
    }

    pub fn is_unit(&self, a: &Nested) -> bool {
        match a {
            Nested::Scalar(c) => self.scalars.is_unit(c),
            Nested::Series(s) => s.terms.first().is_some_and(|(_, c)| self.is_unit(c)),
        }
    }

    /// Multiplicative inverse. The leading coefficient must be invertible at
    /// every level.
    pub fn inv(&self, a: &Nested) -> Result<Nested> {
        match a {
            Nested::Scalar(c) => Ok(Nested::Scalar(self.scalars.inv(c)?)),
            Nested::Series(s) => {
                let Some((v, c0)) = s.terms.first() else {
                    return Err(if s.ceil == EXACT {
                        Error::ZeroInput
                    } else {
                        Error::PrecisionExhausted(format!(
                            "inverting O(T^{}) with no known terms",
                            s.ceil
                        ))
                    });
                };
                let v = *v;
                let c0_inv = self.inv(c0)?;
                if s.terms.len() == 1 && s.ceil == EXACT {
                    return Ok(self.make(s.level, vec![(-v, c0_inv)], EXACT));
                }
                let rel = if s.ceil == EXACT {
                    self.precision
                } else {
                    min(s.ceil - v, self.precision)
                };
                // b_0 = c0^{-1}, b_k = -c0^{-1} * sum_{j=1..k} c_j b_{k-j}
                let mut b: Vec<Nested> = Vec::with_capacity(rel as usize);
                let rest: Vec<(i64, &Nested)> =
                    s.terms[1..].iter().map(|(e, c)| (e - v, c)).collect();
                for k in 0..rel {
                    if k == 0 {
                        b.push(c0_inv.clone());
                        continue;
                    }
                    let mut sum = self.zero(s.level - 1);
                    for &(j, c) in &rest {
                        if j > k {
                            break;
                        }
                        sum = self.add(&sum, &self.mul(c, &b[(k - j) as usize]));
                    }
                    b.push(self.neg(&self.mul(&c0_inv, &sum)));
                }
                let terms = b.into_iter().enumerate().map(|(k, c)| (k as i64 - v, c)).collect();
                Ok(self.make(s.level, terms, rel - v))
            }
        }
    }

    pub fn pow(&self, a: &Nested, e: i64) -> Result<Nested> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = self.one(a.level());
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            n >>= 1;
            if n > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        Ok(acc)
    }

    /// `a^p`; over a field this acts termwise.
    pub fn frobenius(&self, a: &Nested) -> Nested {
        if !self.scalars.is_field() {
            return self.pow(a, self.p() as i64).expect("nonnegative power");
        }
        let p = self.p() as i64;
        match a {
            Nested::Scalar(c) => Nested::Scalar(self.scalars.frobenius(c)),
            Nested::Series(s) => {
                let terms = s.terms.iter().map(|(e, c)| (e * p, self.frobenius(c))).collect();
                let ceil = if s.ceil == EXACT { EXACT } else { s.ceil * p };
                self.make(s.level, terms, ceil)
            }
        }
    }

    /// Termwise `p`-th root over a field: `None` unless every known exponent is
    /// divisible by `p` at every level.
    pub fn pth_root(&self, a: &Nested) -> Option<Nested> {
        if !self.scalars.is_field() {
            return None;
        }
        let p = self.p() as i64;
        match a {
            Nested::Scalar(c) => self.scalars.pth_root(c).ok().map(Nested::Scalar),
            Nested::Series(s) => {
                let mut terms = Vec::with_capacity(s.terms.len());
                for (e, c) in &s.terms {
                    if e.rem_euclid(p) != 0 {
                        return None;
                    }
                    terms.push((e / p, self.pth_root(c)?));
                }
                let ceil = if s.ceil == EXACT {
                    EXACT
                } else {
                    s.ceil.div_euclid(p) + i64::from(s.ceil.rem_euclid(p) != 0)
                };
                Some(self.make(s.level, terms, ceil))
            }
        }
    }

    /// `T_var d/dT_var`: multiplies every term by its exponent in `T_var`.
    pub fn euler(&self, a: &Nested, var: usize) -> Nested {
        match a {
            Nested::Scalar(_) => self.zero(0),
            Nested::Series(s) => {
                assert!(var >= 1 && var <= s.level);
                let terms = s
                    .terms
                    .iter()
                    .map(|(e, c)| {
                        let c = if var == s.level {
                            self.mul_int(c, *e)
                        } else {
                            self.euler(c, var)
                        };
                        (*e, c)
                    })
                    .collect();
                self.make(s.level, terms, s.ceil)
            }
        }
    }

    /// Lowers the ceiling to `c`.
    pub fn truncate(&self, a: &Nested, c: i64) -> Nested {
        match a {
            Nested::Scalar(_) => a.clone(),
            Nested::Series(s) => self.make(s.level, s.terms.clone(), min(s.ceil, c)),
        }
    }

    /// Keeps only the terms with top exponent in `[lo, hi)`; the result is
    /// exact in that range (the caller vouches for what is dropped).
    pub fn window(&self, a: &Nested, lo: i64, hi: i64) -> Nested {
        match a {
            Nested::Scalar(_) => a.clone(),
            Nested::Series(s) => {
                let terms = s
                    .terms
                    .iter()
                    .filter(|(e, _)| *e >= lo && *e < hi)
                    .cloned()
                    .collect();
                self.make(s.level, terms, EXACT)
            }
        }
    }

    /// Equality on the common window of known terms, at every level.
    pub fn eq_within(&self, a: &Nested, b: &Nested) -> bool {
        a.level() == b.level() && self.sub(a, b).is_zero()
    }

    /// Moves the element into another ring with the same `(p, k)` and depth,
    /// reducing or lifting every scalar coefficient.
    pub fn convert(&self, a: &Nested, target: &SeriesRing) -> Nested {
        match a {
            Nested::Scalar(c) => Nested::Scalar(target.scalars.coerce(c)),
            Nested::Series(s) => {
                let terms = s.terms.iter().map(|(e, c)| (*e, self.convert(c, target))).collect();
                target.make(s.level, terms, s.ceil)
            }
        }
    }

    /// Checked entry point for sums and products.
    pub fn series_arith(&self, a: &Nested, b: &Nested, kind: ArithKind) -> Result<Nested> {
        if a.level() != b.level() {
            return Err(Error::TowerMismatch(format!(
                "levels {} and {}",
                a.level(),
                b.level()
            )));
        }
        let out = match kind {
            ArithKind::Add => self.add(a, b),
            ArithKind::Mul => self.mul(a, b),
        };
        if out.is_zero() && out.ceiling() != EXACT && !(a.is_zero() && b.is_zero()) {
            return Err(Error::PrecisionExhausted(format!(
                "result has no known terms below {}",
                out.ceiling()
            )));
        }
        Ok(out)
    }

    /// Rejects elements whose valuation at some level is below [`MIN_ORD`].
    pub fn check_ord_bound(&self, a: &Nested) -> Result<()> {
        let mut bad = None;
        a.for_each_monomial(|_, e| {
            if let Some(&x) = e.iter().find(|&&x| x < MIN_ORD) {
                bad = Some(x);
            }
        });
        match bad {
            Some(x) => Err(Error::OrdOutOfRange(x)),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32, depth: usize) -> SeriesRing {
        SeriesRing::new(GaloisRing::field(p, 1).unwrap(), depth, DEFAULT_PRECISION).unwrap()
    }

    fn mono(r: &SeriesRing, c: i64, e: &[i64]) -> Nested {
        r.monomial(r.scalars().from_int(c), e)
    }

    #[test]
    fn char_two_cancellation() {
        let r = ring(2, 1);
        let a = r.add(&mono(&r, 1, &[-1]), &mono(&r, 1, &[0]));
        let b = r.add(&mono(&r, 1, &[0]), &mono(&r, 1, &[1]));
        let expect = r.add(&mono(&r, 1, &[-1]), &mono(&r, 1, &[1]));
        assert_eq!(r.add(&a, &b), expect);
    }

    #[test]
    fn frobenius_on_binomial() {
        let r = ring(2, 1);
        let a = r.add(&r.one(1), &mono(&r, 1, &[1]));
        let sq = r.mul(&a, &a);
        assert_eq!(sq, r.add(&r.one(1), &mono(&r, 1, &[2])));
        assert_eq!(r.frobenius(&a), sq);
    }

    #[test]
    fn nested_monomial_product() {
        let r = ring(3, 2);
        let a = mono(&r, 1, &[1, -1]);
        assert_eq!(r.mul(&a, &a), mono(&r, 1, &[2, -2]));
    }

    #[test]
    fn geometric_inverse() {
        let r = ring(2, 1);
        let a = r.add(&r.one(1), &mono(&r, 1, &[1]));
        let inv = r.inv(&a).unwrap();
        assert_eq!(inv.ceiling(), DEFAULT_PRECISION);
        assert_eq!(inv.terms().len() as i64, DEFAULT_PRECISION);
        assert!(inv.terms().iter().enumerate().all(|(i, (e, _))| *e == i as i64));
        let prod = r.mul(&a, &inv);
        assert!(r.eq_within(&prod, &r.one(1)));
    }

    #[test]
    fn monomial_inverse_is_exact() {
        let r = ring(2, 1);
        let inv = r.inv(&mono(&r, 1, &[1])).unwrap();
        assert_eq!(inv, mono(&r, 1, &[-1]));
        assert_eq!(inv.ceiling(), EXACT);
    }

    #[test]
    fn nested_inverse_of_monomial_times_geometric() {
        // u(1 + t) over F_2((u))((t))
        let r = ring(2, 2);
        let a = r.add(&mono(&r, 1, &[1, 0]), &mono(&r, 1, &[1, 1]));
        let inv = r.inv(&a).unwrap();
        for (k, (e, c)) in inv.terms().iter().enumerate() {
            assert_eq!(*e, k as i64);
            assert_eq!(c, &mono(&r.with_depth(1), 1, &[-1]));
        }
    }

    #[test]
    fn zero_inverse_errors() {
        let r = ring(2, 1);
        assert_eq!(r.inv(&r.zero(1)), Err(Error::ZeroInput));
        assert!(matches!(r.inv(&r.big_o(1, 3)), Err(Error::PrecisionExhausted(_))));
    }

    #[test]
    fn product_window_propagates() {
        let r = ring(3, 1);
        let a = r.add(&mono(&r, 1, &[-2]), &r.big_o(1, 5));
        let b = r.add(&mono(&r, 2, &[1]), &r.big_o(1, 4));
        let prod = r.mul(&a, &b);
        // min(5 + 1, 4 - 2)
        assert_eq!(prod.ceiling(), 2);
        assert_eq!(prod.ord(), Some(-1));
    }

    #[test]
    fn budget_truncates_wide_exact_products() {
        let r = ring(2, 1).with_precision(8);
        let a = r.add(&r.one(1), &mono(&r, 1, &[3]));
        let sq = r.mul(&a, &a);
        assert_eq!(sq.ceiling(), EXACT);
        let cube = r.mul(&sq, &r.add(&r.one(1), &mono(&r, 1, &[9])));
        assert_eq!(cube.ceiling(), 8);
    }

    #[test]
    fn pth_root_requires_divisible_exponents() {
        let r = ring(3, 2);
        let a = mono(&r, 1, &[3, -6]);
        assert_eq!(r.pth_root(&a), Some(mono(&r, 1, &[1, -2])));
        assert_eq!(r.pth_root(&mono(&r, 1, &[1, -6])), None);
    }

    #[test]
    fn series_arith_reports_mismatch_and_empty_windows() {
        let r = ring(2, 2);
        let a = mono(&r, 1, &[0, 1]);
        let b = mono(&r.with_depth(1), 1, &[1]);
        assert!(matches!(r.series_arith(&a, &b, ArithKind::Add), Err(Error::TowerMismatch(_))));
        let c = r.add(&a, &r.big_o(2, 2));
        assert!(matches!(
            r.series_arith(&c, &r.neg(&c), ArithKind::Add),
            Err(Error::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn euler_operator_multiplies_by_exponent() {
        let r = ring(3, 2);
        let a = mono(&r, 1, &[1, -2]);
        assert_eq!(r.euler(&a, 2), mono(&r, 1, &[1, -2]));
        assert_eq!(r.euler(&a, 1), a);
        assert!(r.euler(&mono(&r, 1, &[3, 0]), 1).is_zero());
    }
}
