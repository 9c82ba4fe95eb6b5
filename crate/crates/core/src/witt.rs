//! Witt vectors over `K`, Artin–Schreier–Witt characters and the Swan
//! conductor.
//!
//! Components are stored in the standard order `(x_0, ..., x_{s-1})`, with
//! ghost components `w_n = sum_{i <= n} p^i x_i^{p^{n-i}}`. This is also the
//! print order `(a_{s-1}, ..., a_0)`: the component with weight `p^i` in the
//! Brylinski filtration is `a_i = x_{s-1-i}`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::series::{Nested, SeriesRing, EXACT, MIN_ORD};
use crate::algebra::tower::FieldTower;
use crate::error::{Error, Result};

/// Human-readable statement of the component order used in reports.
pub const ORDER_CONVENTION: &str =
    "components listed as (a_{s-1}, ..., a_0); a_i has filtration weight p^i";

const MAX_VARS: usize = 8;

type Exps = [u8; MAX_VARS];

/// Polynomial over `Z/m` in at most eight variables.
#[derive(Clone, Debug, Default)]
struct IntPoly {
    terms: HashMap<Exps, u64>,
}

impl IntPoly {
    fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        IntPoly {
            terms: HashMap::from([(e, 1)]),
        }
    }

    fn add_scaled(&mut self, other: &IntPoly, c: u64, m: u64) {
        for (e, v) in &other.terms {
            let slot = self.terms.entry(*e).or_insert(0);
            *slot = (*slot + v * c) % m;
        }
        self.terms.retain(|_, v| *v != 0);
    }

    fn mul(&self, other: &IntPoly, m: u64) -> IntPoly {
        let mut out: HashMap<Exps, u64> = HashMap::with_capacity(self.terms.len() * 2);
        for (ea, va) in &self.terms {
            for (eb, vb) in &other.terms {
                let mut e = *ea;
                for k in 0..MAX_VARS {
                    e[k] += eb[k];
                }
                let slot = out.entry(e).or_insert(0);
                *slot = (*slot + va * vb) % m;
            }
        }
        out.retain(|_, v| *v != 0);
        IntPoly { terms: out }
    }

    fn pow(&self, mut n: u64, m: u64) -> IntPoly {
        let mut acc = IntPoly {
            terms: HashMap::from([([0; MAX_VARS], 1)]),
        };
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, m);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base, m);
            }
        }
        acc
    }

    /// Exact division by `d`, which must divide every coefficient.
    fn div_exact(&self, d: u64) -> IntPoly {
        IntPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| {
                    assert!(v % d == 0, "ghost recursion produced a non-divisible coefficient");
                    (*e, v / d)
                })
                .collect(),
        }
    }
}

/// Universal polynomials of one `(p, s)` reduced mod `p`, as monomial lists.
#[derive(Debug)]
pub struct WittPolynomials {
    p: u32,
    s: usize,
    sum: Vec<Vec<(u32, Exps)>>,
    neg: Vec<Vec<(u32, Exps)>>,
}

impl WittPolynomials {
    fn compute(p: u32, s: usize) -> Self {
        let pp = p as u64;
        let m = pp.pow(s as u32);
        let ghost = |vars: &[usize], n: usize| {
            let mut w = IntPoly::default();
            for (i, &v) in vars.iter().enumerate().take(n + 1) {
                w.add_scaled(&IntPoly::var(v).pow(pp.pow((n - i) as u32), m), pp.pow(i as u32), m);
            }
            w
        };
        let xs: Vec<usize> = (0..s).collect();
        let ys: Vec<usize> = (s..2 * s).collect();
        // lifts of the sum and negation polynomials, valid mod p^{s-n}
        let mut sum_lifts: Vec<IntPoly> = Vec::new();
        let mut neg_lifts: Vec<IntPoly> = Vec::new();
        for n in 0..s {
            let mut num = ghost(&xs, n);
            num.add_scaled(&ghost(&ys, n), 1, m);
            let mut neg = IntPoly::default();
            neg.add_scaled(&ghost(&xs, n), m - 1, m);
            for i in 0..n {
                let e = pp.pow((n - i) as u32);
                let c = m - pp.pow(i as u32);
                num.add_scaled(&sum_lifts[i].pow(e, m), c, m);
                neg.add_scaled(&neg_lifts[i].pow(e, m), c, m);
            }
            let d = pp.pow(n as u32);
            sum_lifts.push(num.div_exact(d));
            neg_lifts.push(neg.div_exact(d));
        }
        let reduce = |polys: Vec<IntPoly>| {
            polys
                .into_iter()
                .map(|q| {
                    let mut v: Vec<(u32, Exps)> = q
                        .terms
                        .into_iter()
                        .filter_map(|(e, c)| {
                            let c = (c % pp) as u32;
                            (c != 0).then_some((c, e))
                        })
                        .collect();
                    v.sort_by_key(|a| a.1);
                    v
                })
                .collect()
        };
        WittPolynomials {
            p,
            s,
            sum: reduce(sum_lifts),
            neg: reduce(neg_lifts),
        }
    }

    /// Cached polynomials for `(p, s)`.
    pub fn get(p: u32, s: usize) -> Arc<WittPolynomials> {
        static CACHE: OnceLock<Mutex<HashMap<(u32, usize), Arc<WittPolynomials>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(w) = cache.lock().expect("cache lock").get(&(p, s)) {
            return w.clone();
        }
        let w = Arc::new(WittPolynomials::compute(p, s));
        cache.lock().expect("cache lock").entry((p, s)).or_insert(w).clone()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn length(&self) -> usize {
        self.s
    }

    /// Number of monomials of the `n`-th sum polynomial.
    pub fn sum_size(&self, n: usize) -> usize {
        self.sum[n].len()
    }

    /// Evaluates the `n`-th sum polynomial at integers mod `p`.
    pub fn eval_sum_mod_p(&self, n: usize, x: &[u32], y: &[u32]) -> u32 {
        let vals: Vec<u32> = x.iter().chain(y).copied().collect();
        eval_int(&self.sum[n], &vals, self.p)
    }
}

fn eval_int(poly: &[(u32, Exps)], vals: &[u32], p: u32) -> u32 {
    let mut acc = 0u64;
    for (c, e) in poly {
        let mut t = *c as u64;
        for (k, &ek) in e.iter().enumerate().take(vals.len()) {
            for _ in 0..ek {
                t = t * vals[k] as u64 % p as u64;
            }
        }
        acc = (acc + t) % p as u64;
    }
    acc as u32
}

/// Evaluates a monomial list at series values, caching powers.
fn eval_poly(ring: &SeriesRing, poly: &[(u32, Exps)], vals: &[&Nested], level: usize) -> Nested {
    let mut powers: HashMap<(usize, u8), Nested> = HashMap::new();
    let mut acc = ring.zero(level);
    for (c, e) in poly {
        let mut term: Option<Nested> = None;
        for (k, &ek) in e.iter().enumerate() {
            if ek == 0 {
                continue;
            }
            if vals[k].is_zero() && vals[k].ceiling() == EXACT {
                term = Some(ring.zero(level));
                break;
            }
            let pw = powers
                .entry((k, ek))
                .or_insert_with(|| ring.pow(vals[k], ek as i64).expect("nonnegative power"))
                .clone();
            term = Some(match term {
                None => pw,
                Some(t) => ring.mul(&t, &pw),
            });
        }
        let term = term.unwrap_or_else(|| ring.one(level));
        acc = ring.add(&acc, &ring.mul_int(&term, *c as i64));
    }
    acc
}

/// An element of `W_s(K)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WittVector {
    tower: FieldTower,
    comps: Vec<Nested>,
}

impl WittVector {
    /// Builds a vector from components in standard (print) order.
    pub fn new(tower: &FieldTower, comps: Vec<Nested>) -> Result<Self> {
        if comps.len() != tower.s() as usize {
            return Err(Error::TowerMismatch(format!(
                "{} components for Witt length {}",
                comps.len(),
                tower.s()
            )));
        }
        if let Some(c) = comps.iter().find(|c| c.level() != tower.depth()) {
            return Err(Error::TowerMismatch(format!(
                "component at level {} in a tower of depth {}",
                c.level(),
                tower.depth()
            )));
        }
        Ok(WittVector {
            tower: tower.clone(),
            comps,
        })
    }

    /// Parses literals given in print order `(a_{s-1}, ..., a_0)`.
    pub fn parse(tower: &FieldTower, literals: &[&str]) -> Result<Self> {
        let comps = literals.iter().map(|l| tower.parse(l)).collect::<Result<Vec<_>>>()?;
        Self::new(tower, comps)
    }

    pub fn zero(tower: &FieldTower) -> Self {
        let r = tower.field();
        WittVector {
            tower: tower.clone(),
            comps: vec![r.zero(tower.depth()); tower.s() as usize],
        }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    /// Components in standard order `x_0, ..., x_{s-1}`.
    pub fn components(&self) -> &[Nested] {
        &self.comps
    }

    /// The component `a_i` of print order, of filtration weight `p^i`.
    pub fn a(&self, i: usize) -> &Nested {
        &self.comps[self.comps.len() - 1 - i]
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    fn check(&self, other: &WittVector) -> Result<()> {
        if self.tower != other.tower {
            return Err(Error::TowerMismatch("Witt vectors over different towers".into()));
        }
        Ok(())
    }

    fn polys(&self) -> Arc<WittPolynomials> {
        WittPolynomials::get(self.tower.p(), self.comps.len())
    }

    pub fn add(&self, other: &WittVector) -> Result<WittVector> {
        self.check(other)?;
        let ring = self.tower.field();
        let polys = self.polys();
        let vals: Vec<&Nested> = self.comps.iter().chain(&other.comps).collect();
        let level = self.tower.depth();
        let comps = (0..self.comps.len())
            .map(|n| eval_poly(&ring, &polys.sum[n], &vals, level))
            .collect();
        Ok(WittVector {
            tower: self.tower.clone(),
            comps,
        })
    }

    pub fn neg(&self) -> WittVector {
        let ring = self.tower.field();
        let comps = if self.tower.p() != 2 {
            self.comps.iter().map(|c| ring.neg(c)).collect()
        } else {
            let polys = self.polys();
            let vals: Vec<&Nested> = self.comps.iter().collect();
            (0..self.comps.len())
                .map(|n| eval_poly(&ring, &polys.neg[n], &vals, self.tower.depth()))
                .collect()
        };
        WittVector {
            tower: self.tower.clone(),
            comps,
        }
    }

    pub fn sub(&self, other: &WittVector) -> Result<WittVector> {
        self.add(&other.neg())
    }

    /// `F`: componentwise `p`-th power.
    pub fn frobenius(&self) -> WittVector {
        let ring = self.tower.field();
        WittVector {
            tower: self.tower.clone(),
            comps: self.comps.iter().map(|c| ring.frobenius(c)).collect(),
        }
    }

    /// `V`: shifts components one step, inserting zero in front.
    pub fn verschiebung(&self) -> WittVector {
        let ring = self.tower.field();
        let mut comps = vec![ring.zero(self.tower.depth())];
        comps.extend(self.comps[..self.comps.len() - 1].iter().cloned());
        WittVector {
            tower: self.tower.clone(),
            comps,
        }
    }

    /// The Teichmüller representative `[x] = (x, 0, ..., 0)`.
    pub fn teichmuller(tower: &FieldTower, x: Nested) -> Result<WittVector> {
        let mut v = WittVector::zero(tower);
        if x.level() != tower.depth() {
            return Err(Error::TowerMismatch("Teichmüller input at the wrong level".into()));
        }
        v.comps[0] = x;
        Ok(v)
    }

    /// `min_i p^i ord(a_i)` over nonzero components.
    pub fn witt_ord(&self) -> Result<i64> {
        let p = self.tower.p() as i64;
        let s = self.comps.len();
        self.comps
            .iter()
            .enumerate()
            .filter_map(|(j, c)| c.ord().map(|v| p.pow((s - 1 - j) as u32) * v))
            .min()
            .ok_or(Error::ZeroInput)
    }

    /// `(F - 1)(b)` added to `self`, i.e. another representative of the same
    /// class.
    pub fn add_coboundary(&self, b: &WittVector) -> Result<WittVector> {
        self.add(&b.frobenius())?.sub(b)
    }

    /// Brylinski-minimal representative of `self + (F - 1) W_s(K)`.
    pub fn asw_reduce(&self) -> Result<Character> {
        for c in &self.comps {
            if c.ceiling() < 1 {
                return Err(Error::NonPolynomialTail);
            }
            if c.ord().is_some_and(|v| v < MIN_ORD) {
                return Err(Error::OrdOutOfRange(c.ord().unwrap_or_default()));
            }
        }
        let ring = self.tower.field();
        let p = self.tower.p() as i64;
        let level = self.tower.depth();
        let mut a = self.clone();
        for j in 0..a.comps.len() {
            loop {
                let mut roots = Vec::new();
                a.comps[j].for_each_monomial(|c, e| {
                    if e[level - 1] < 0 && e.iter().all(|x| x % p == 0) {
                        let root = ring.scalars().pth_root(c).expect("field coefficients");
                        let ex: Vec<i64> = e.iter().map(|x| x / p).collect();
                        roots.push(ring.monomial(root, &ex));
                    }
                });
                if roots.is_empty() {
                    break;
                }
                let y = roots.iter().fold(ring.zero(level), |acc, r| ring.add(&acc, r));
                let mut b = WittVector::zero(&self.tower);
                b.comps[j] = y;
                // a - (F - 1) b
                a = a.sub(&b.frobenius())?.add(&b)?;
            }
        }
        for c in &a.comps {
            if c.ceiling() < 1 {
                return Err(Error::PrecisionExhausted(format!(
                    "reduction left a component known only below exponent {}",
                    c.ceiling()
                )));
            }
        }
        Ok(Character {
            vector: a,
            reduced: true,
        })
    }

    /// Componentwise map through another series ring (same `(p, k)`).
    pub fn map_components(&self, f: impl FnMut(&Nested) -> Result<Nested>) -> Result<Vec<Nested>> {
        self.comps.iter().map(f).collect()
    }

    /// Print order rendering `(a_{s-1}, ..., a_0)`.
    pub fn render(&self) -> Vec<String> {
        self.comps.iter().map(|c| self.tower.render(c)).collect()
    }
}

/// A character `chi` in `H^1(K, Z/p^s)`, presented by a Witt vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    vector: WittVector,
    reduced: bool,
}

impl Character {
    /// Wraps a representative without reducing it.
    pub fn unreduced(vector: WittVector) -> Self {
        Character {
            vector,
            reduced: false,
        }
    }

    /// Parses and reduces.
    pub fn parse(tower: &FieldTower, literals: &[&str]) -> Result<Self> {
        WittVector::parse(tower, literals)?.asw_reduce()
    }

    pub fn vector(&self) -> &WittVector {
        &self.vector
    }

    pub fn tower(&self) -> &FieldTower {
        &self.vector.tower
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// `chi_1 + chi_2`, reduced.
    pub fn add(&self, other: &Character) -> Result<Character> {
        self.vector.add(&other.vector)?.asw_reduce()
    }
}

/// `Sw(chi)`: minus the Brylinski order of a reduced representative,
/// clamped at zero.
pub fn swan_conductor(chi: &Character) -> Result<i64> {
    if !chi.reduced {
        return Err(Error::NotReduced);
    }
    match chi.vector.witt_ord() {
        Ok(v) => Ok((-v).max(0)),
        Err(Error::ZeroInput) => Ok(0),
        Err(e) => Err(e),
    }
}
