//! Explicit local reciprocity in characteristic `p`.
//!
//! Characters are evaluated on symbols `{y_1, ..., y_d}` through the lift ring
//! `P = W_s(F_q)((T_1))...((T_d))`:
//! `chi({y}) = Res_P(theta(f) dlog y~_1 ∧ ... ∧ dlog y~_d)` with
//! `theta(a_{s-1}, ..., a_0) = sum_i p^{s-1-i} a~_i^{p^i}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::series::{Nested, SeriesRing};
use crate::algebra::tower::FieldTower;
use crate::error::{Error, Result};
use crate::logdiff::{minimal_b, r_b, res_p, residue_to_prime_field, wedge, LogForm, WindowedForm};
use crate::rsw::{lower_index, rsw_char_p};
use crate::witt::{swan_conductor, Character, WittVector};

/// Statement of the embedding `F_p -> Z/p^s` used when comparing values.
pub const FP_EMBEDDING: &str = "F_p -> Z/p^s sends 1 to p^(s-1)";

fn factorial(n: u64) -> i64 {
    (1..=n as i64).product()
}

/// `E(T) = sum_{i<p} T^i / i!` as exact rationals.
pub fn truncated_exp_coefficients(p: u32) -> Vec<BigRational> {
    (0..p as u64)
        .map(|i| BigRational::new(BigInt::one(), BigInt::from(factorial(i))))
        .collect()
}

/// `E(x)` for `x` of positive valuation, over `K` or over the lift ring.
pub fn truncated_exp(x: &Nested, ring: &SeriesRing) -> Result<Nested> {
    let level = x.level();
    if level == 0 || !x.is_zero() && x.ord().is_some_and(|v| v < 1) {
        return Err(Error::NotTopological);
    }
    if x.is_zero() && x.ceiling() < 1 {
        return Err(Error::NotTopological);
    }
    let r = ring.scalars();
    let mut acc = ring.one(level);
    let mut pw = ring.one(level);
    for i in 1..ring.p() as u64 {
        pw = ring.mul(&pw, x);
        let c = r.inv(&r.from_int(factorial(i)))?;
        acc = ring.add(&acc, &ring.mul_scalar(&pw, &c));
    }
    Ok(acc)
}

type Poly2 = std::collections::BTreeMap<(usize, usize), BigRational>;

fn poly2_mul(a: &Poly2, b: &Poly2, deg: usize) -> Poly2 {
    let mut out = Poly2::new();
    for ((i, j), x) in a {
        for ((k, l), y) in b {
            if i + j + k + l < deg {
                let e = out.entry((i + k, j + l)).or_insert_with(BigRational::zero);
                *e += x * y;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn series_mul(a: &[BigRational], b: &[BigRational], deg: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); deg];
    for (i, x) in a.iter().enumerate().take(deg) {
        for (j, y) in b.iter().enumerate().take(deg - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn series_inv(a: &[BigRational], deg: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); deg];
    let a0 = a[0].recip();
    for k in 0..deg {
        let mut s = if k == 0 { BigRational::one() } else { BigRational::zero() };
        for j in 1..=k.min(a.len() - 1) {
            s -= &a[j] * &out[k - j];
        }
        out[k] = s * &a0;
    }
    out
}

fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `(1 - T^i)^alpha` to degree `deg`.
fn binomial_power(i: usize, alpha: &BigRational, deg: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); deg];
    let mut coeff = BigRational::one();
    let mut k = 0usize;
    while i * k < deg {
        let sign = if k.is_multiple_of(2) { BigRational::one() } else { -BigRational::one() };
        out[i * k] = &coeff * sign;
        coeff = coeff * (alpha - BigRational::from_integer(BigInt::from(k))) / BigRational::from_integer(BigInt::from(k + 1));
        k += 1;
    }
    out
}

fn p_integral(x: &BigRational, p: u32) -> bool {
    !(x.denom() % BigInt::from(p)).is_zero()
}

/// Outcome of the three congruences for `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpCongruences {
    pub p: u32,
    /// `E(T_1 + T_2) = E(T_1) E(T_2) mod (T_1, T_2)^p`.
    pub additive: bool,
    /// `E(T) = prod_{i<p, (i,p)=1} (1 - T^i)^{-mu(i)/i} mod T^p`.
    pub product: bool,
    /// `T E'(T) / E(T) = T mod T^p`, i.e. `dE/E = dT` to that order.
    pub logarithmic: bool,
}

impl ExpCongruences {
    pub fn all_pass(&self) -> bool {
        self.additive && self.product && self.logarithmic
    }
}

/// Checks the congruences by exact rational arithmetic, expanding to total
/// degree `max(m, p)`; `E` itself must be `p`-integral.
pub fn check_exp_congruences(p: u32, m: usize) -> ExpCongruences {
    let deg = m.max(p as usize);
    let pu = p as usize;
    let e = truncated_exp_coefficients(p);
    let integral = e.iter().all(|c| p_integral(c, p));

    // (1)
    let mut lhs = Poly2::new();
    for (i, c) in e.iter().enumerate() {
        // (T1 + T2)^i
        for a in 0..=i {
            let binom = BigRational::from_integer(BigInt::from(factorial(i as u64) / factorial(a as u64) / factorial((i - a) as u64)));
            let v = lhs.entry((a, i - a)).or_insert_with(BigRational::zero);
            *v += c * binom;
        }
    }
    let e1: Poly2 = e.iter().enumerate().map(|(i, c)| ((i, 0), c.clone())).collect();
    let e2: Poly2 = e.iter().enumerate().map(|(i, c)| ((0, i), c.clone())).collect();
    let rhs = poly2_mul(&e1, &e2, deg + 1);
    let additive = (0..pu).all(|total| {
        (0..=total).all(|a| {
            let key = (a, total - a);
            lhs.get(&key).cloned().unwrap_or_default() == rhs.get(&key).cloned().unwrap_or_default()
        })
    });

    // (2)
    let mut prod = vec![BigRational::zero(); deg];
    prod[0] = BigRational::one();
    for i in 1..pu {
        if i % pu == 0 {
            continue;
        }
        let alpha = BigRational::new(BigInt::from(-mobius(i as u64)), BigInt::from(i));
        prod = series_mul(&prod, &binomial_power(i, &alpha, deg), deg);
    }
    let product = (0..pu).all(|k| prod[k] == e.get(k).cloned().unwrap_or_default());

    // (3)
    let mut ep = vec![BigRational::zero(); deg];
    for (i, c) in e.iter().enumerate().skip(1) {
        if i < deg {
            ep[i] = c * BigRational::from_integer(BigInt::from(i));
        }
    }
    let ratio = series_mul(&ep, &series_inv(&e, deg), deg);
    let logarithmic = (0..pu).all(|k| {
        let want = if k == 1 { BigRational::one() } else { BigRational::zero() };
        ratio[k] == want
    });

    ExpCongruences {
        p,
        additive: additive && integral,
        product: product && integral,
        logarithmic: logarithmic && integral,
    }
}

/// `theta` applied to explicit lifts of the components (standard order).
pub fn theta_from_lifts(lifts: &[Nested], lift: &SeriesRing) -> Result<Nested> {
    let p = lift.p() as i64;
    let s = lifts.len();
    let level = lift.depth();
    let mut acc = lift.zero(level);
    for (j, x) in lifts.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let term = lift.pow(x, p.pow((s - 1 - j) as u32))?;
        acc = lift.add(&acc, &lift.mul_int(&term, p.pow(j as u32)));
    }
    Ok(acc)
}

/// `theta(a)` with coefficientwise lifts of the components.
pub fn theta_lift(a: &WittVector) -> Result<Nested> {
    let tower = a.tower();
    let field = tower.field();
    let lift = tower.lift();
    let lifts: Vec<Nested> = a.components().iter().map(|c| field.convert(c, &lift)).collect();
    theta_from_lifts(&lifts, &lift)
}

/// `dlog y = sum_j (T_j d/dT_j y / y) dlog T_j`.
pub fn dlog(y: &Nested, ring: &SeriesRing) -> Result<LogForm> {
    let depth = ring.depth();
    let inv = ring.inv(y)?;
    let mut f = LogForm::zero(depth, 1);
    for j in 1..=depth {
        let c = ring.mul(&ring.euler(y, j), &inv);
        f = f.add(&LogForm::basis(depth, &[j], c, ring)?, ring)?;
    }
    Ok(f)
}

/// `Res_P(theta dlog y~_1 ∧ ... ∧ dlog y~_d)` from lifted data.
pub fn symbol_from_lifts(theta: &Nested, ys: &[Nested], lift: &SeriesRing) -> Result<u32> {
    let depth = lift.depth();
    if ys.len() != depth {
        return Err(Error::DegreeMismatch(format!("{} entries for depth {depth}", ys.len())));
    }
    let mut form = LogForm::function(theta.clone());
    for y in ys {
        if y.is_zero() {
            return Err(Error::ZeroEntry);
        }
        form = wedge(&form, &dlog(y, lift)?, lift)?;
    }
    res_p(&form, lift)
}

/// `chi({y_1, ..., y_d})` in `Z/p^s`.
pub fn eval_symbol(chi: &Character, ys: &[Nested]) -> Result<u32> {
    let tower = chi.tower();
    let field = tower.field();
    let lift = tower.lift();
    if ys.iter().any(|y| y.is_zero()) {
        return Err(Error::ZeroEntry);
    }
    let theta = theta_lift(chi.vector())?;
    let lifted: Vec<Nested> = ys.iter().map(|y| field.convert(y, &lift)).collect();
    symbol_from_lifts(&theta, &lifted, &lift)
}

/// The classical local symbol `trace Res(f dy / y)` on `F_q((t))`, computed
/// with the ordinary derivative.
pub fn residue_symbol(f: &Nested, y: &Nested, ring: &SeriesRing) -> Result<u32> {
    if ring.depth() != 1 {
        return Err(Error::Unsupported("the local symbol oracle is one-dimensional".into()));
    }
    let r = ring.scalars();
    let terms: Vec<(i64, Nested)> = y
        .terms()
        .iter()
        .filter(|(e, _)| *e != 0)
        .map(|(e, c)| (e - 1, Nested::Scalar(r.mul_int(c.as_scalar().expect("scalar"), *e))))
        .collect();
    let ceil = y.ceiling().saturating_sub(1);
    let dy = ring.from_terms(1, terms, ceil);
    let prod = ring.mul(&ring.mul(f, &dy), &ring.inv(y)?);
    let c = prod.coeff(-1)?.and_then(|c| c.as_scalar().copied()).unwrap_or_default();
    Ok(r.trace(&c))
}

/// One sample of the characterization check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterizationSample {
    /// `alpha` as a form literal.
    pub alpha: String,
    /// `chi(E(alpha))` in `Z/p^s`.
    pub lhs: u32,
    /// `Res_F(R_b(alpha ∧ Rsw(chi)))` in `F_p`.
    pub rhs: u32,
    /// Local symbol oracle value, for `s = 1`, `d = 1`.
    pub oracle: Option<u32>,
    pub pass: bool,
}

/// Result of checking `chi(E(alpha)) = Res_F(R_b(alpha ∧ Rsw(chi)))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterizationReport {
    pub n: i64,
    pub m: i64,
    pub b: u32,
    /// Sign applied to the right side: `(-1)^r` for odd `p`, where `r = d - 1`.
    pub orientation: i64,
    pub samples: Vec<CharacterizationSample>,
}

impl CharacterizationReport {
    pub fn all_pass(&self) -> bool {
        self.samples.iter().all(|s| s.pass)
    }
}

fn random_unit_coeff(rng: &mut ChaCha8Rng, ring: &SeriesRing) -> crate::algebra::galois::Scalar {
    let q = (ring.p() as usize).pow(ring.scalars().degree() as u32);
    let r = ring.scalars();
    let g = r.generator();
    let e = rng.gen_range(0..q - 1) as u64;
    r.pow(&g, e)
}

/// Random element of `m^{lo} / m^{hi+1}` with residue-field monomials of
/// inner exponents in `[-2, 2]`.
fn random_window_element(
    rng: &mut ChaCha8Rng,
    ring: &SeriesRing,
    lo: i64,
    hi: i64,
) -> Nested {
    let depth = ring.depth();
    let mut monos = Vec::new();
    for j in lo..=hi {
        let count = if depth == 1 { 1 } else { rng.gen_range(0..3) };
        for _ in 0..count {
            if depth == 1 && rng.gen_bool(0.3) {
                continue;
            }
            let mut e: Vec<i64> = (0..depth - 1).map(|_| rng.gen_range(-2..=2)).collect();
            e.push(j);
            monos.push((random_unit_coeff(rng, ring), e));
        }
    }
    ring.from_monomials(depth, monos.iter().map(|(c, e)| (*c, e.as_slice())))
}

/// Checks the characterizing identity of `Rsw` on `samples` random `alpha`
/// in `m^{m+1}/m^{n+1} ⊗ Omega^{d-1}(log)`, for `d` in `{1, 2}`.
///
/// `alpha = sum_k x_k dlog T_k` is evaluated as the symbol sum
/// `sum_k chi({E(x_k), T_k})`. The right side lands in `F_p` and is compared
/// through `1 -> p^{s-1}`.
pub fn verify_rsw_characterization(chi: &Character, samples: usize, seed: u64) -> Result<CharacterizationReport> {
    let tower = chi.tower();
    let depth = tower.depth();
    if !(1..=2).contains(&depth) {
        return Err(Error::Unsupported(format!("characterization check for depth {depth}")));
    }
    let n = swan_conductor(chi)?;
    if n == 0 {
        return Err(Error::UnramifiedCharacter);
    }
    let p = tower.p();
    let s = tower.s();
    let m = lower_index(n, p, None);
    let b = minimal_b(p, n - m);
    let ring = tower.field();
    let rsw = rsw_char_p(chi)?;
    let modulus = p.pow(s);
    let unit = p.pow(s - 1);
    let orientation = if p != 2 && depth.is_multiple_of(2) { -1 } else { 1 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    let inner_ring = ring.with_depth(depth - 1);
    for _ in 0..samples {
        // x_k for the slots of alpha: one slot per basis element of degree d - 1
        let slots: Vec<Option<usize>> = if depth == 1 { vec![None] } else { vec![Some(1), Some(2)] };
        let mut alpha = LogForm::zero(depth, depth - 1);
        let mut lhs = 0u32;
        let mut oracle = None;
        for slot in slots {
            let x = random_window_element(&mut rng, &ring, m + 1, n);
            if x.is_zero() {
                continue;
            }
            let ex = truncated_exp(&x, &ring)?;
            let (piece, symbol) = match slot {
                None => (LogForm::function(x.clone()), vec![ex]),
                Some(k) => (
                    LogForm::basis(depth, &[k], x.clone(), &ring)?,
                    vec![ex, ring.var(depth, k)],
                ),
            };
            alpha = alpha.add(&piece, &ring)?;
            lhs = (lhs + eval_symbol(chi, &symbol)?) % modulus;
            if s == 1 && depth == 1 {
                oracle = Some(residue_symbol(chi.vector().a(0), &symbol[0], &ring)?);
            }
        }
        let aw = WindowedForm::new(alpha.clone(), -(m + 1), -(n + 1), &ring)?;
        let prod = aw.wedge(rsw.value(), &ring)?;
        let top = r_b(&prod, b, &ring)?;
        let rhs = residue_to_prime_field(&top, &inner_ring)?;
        let signed = if orientation == 1 { rhs } else { (p - rhs) % p };
        let pass = lhs == signed * unit % modulus && oracle.is_none_or(|o| o == lhs);
        out.push(CharacterizationSample {
            alpha: crate::logdiff::render_form(&alpha, tower),
            lhs,
            rhs,
            oracle,
            pass,
        });
    }
    Ok(CharacterizationReport {
        n,
        m,
        b,
        orientation,
        samples: out,
    })
}

/// Convenience: `chi({E(x), y_1, ...})` for a tower over `F_q`.
pub fn eval_exp_symbol(chi: &Character, x: &Nested, rest: &[Nested]) -> Result<u32> {
    let ring = chi.tower().field();
    let mut ys = vec![truncated_exp(x, &ring)?];
    ys.extend(rest.iter().cloned());
    eval_symbol(chi, &ys)
}

/// The lift ring descriptor of a tower.
pub fn lift_ring(tower: &FieldTower) -> SeriesRing {
    tower.lift()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_examples() {
        let k = FieldTower::laurent(2, 1, 1, "t").unwrap();
        assert_eq!(truncated_exp(&k.parse("t").unwrap(), &k.field()).unwrap(), k.parse("1 + t").unwrap());
        let k3 = FieldTower::laurent(3, 1, 1, "t").unwrap();
        assert_eq!(
            truncated_exp(&k3.parse("t^2").unwrap(), &k3.field()).unwrap(),
            k3.parse("1 + t^2 + 2*t^4").unwrap()
        );
        let k5 = FieldTower::laurent(5, 1, 1, "t").unwrap();
        assert_eq!(
            truncated_exp(&k5.parse("t").unwrap(), &k5.field()).unwrap(),
            k5.parse("1 + t + 3*t^2 + t^3 + 4*t^4").unwrap()
        );
        assert_eq!(truncated_exp(&k.parse("1 + t").unwrap(), &k.field()), Err(Error::NotTopological));
    }

    #[test]
    fn congruences_hold() {
        for p in [2, 3, 5] {
            assert!(check_exp_congruences(p, 8).all_pass(), "p = {p}");
        }
    }

    #[test]
    fn theta_examples() {
        let k = FieldTower::laurent(2, 1, 2, "t").unwrap();
        let lift = k.lift();
        let a = WittVector::parse(&k, &["0", "t^-1"]).unwrap();
        assert_eq!(theta_lift(&a).unwrap(), k.parse_lift("2*t^-1").unwrap());
        let a = WittVector::parse(&k, &["t^-1", "0"]).unwrap();
        assert_eq!(theta_lift(&a).unwrap(), k.parse_lift("t^-2").unwrap());
        let k1 = FieldTower::laurent(3, 1, 1, "t").unwrap();
        let a = WittVector::parse(&k1, &["2*t^-1 + 1"]).unwrap();
        assert_eq!(theta_lift(&a).unwrap(), k1.parse_lift("2*t^-1 + 1").unwrap());
        assert_eq!(lift.scalars().characteristic(), 4);
    }

    #[test]
    fn res_p_examples() {
        let k = FieldTower::laurent(2, 1, 2, "t").unwrap();
        let lift = k.lift();
        let w = LogForm::top(k.parse_lift("3 + 2*t").unwrap());
        assert_eq!(res_p(&w, &lift), Ok(3));
        let f = LogForm::function(k.parse_lift("t^-3 + 3*t^-1 + t^2").unwrap());
        assert_eq!(res_p(&crate::logdiff::d(&f, &lift).unwrap(), &lift), Ok(0));
        let k2 = FieldTower::new(2, 1, 1, &["u", "t"], 64).unwrap();
        assert_eq!(res_p(&LogForm::top(k2.parse_lift("1").unwrap()), &k2.lift()), Ok(1));
    }

    #[test]
    fn symbol_examples() {
        let k = FieldTower::laurent(2, 1, 1, "t").unwrap();
        let chi = Character::parse(&k, &["t^-1"]).unwrap();
        let y = k.parse("1 + t").unwrap();
        assert_eq!(eval_symbol(&chi, std::slice::from_ref(&y)), Ok(1));
        assert_eq!(residue_symbol(chi.vector().a(0), &y, &k.field()), Ok(1));
        let deep = k.parse("1 + t^5").unwrap();
        assert_eq!(eval_symbol(&chi, &[deep]), Ok(0));
        assert_eq!(eval_symbol(&chi, &[k.parse("1").unwrap()]), Ok(0));
        assert_eq!(eval_symbol(&chi, &[k.parse("0").unwrap()]), Err(Error::ZeroEntry));
    }

    #[test]
    fn characterization_examples() {
        let k = FieldTower::laurent(2, 1, 1, "t").unwrap();
        let chi = Character::parse(&k, &["t^-3"]).unwrap();
        let rep = verify_rsw_characterization(&chi, 20, 1).unwrap();
        assert_eq!((rep.n, rep.m), (3, 1));
        assert!(rep.all_pass(), "{rep:?}");

        let k2 = FieldTower::new(2, 1, 1, &["u", "t"], 64).unwrap();
        let chi = Character::parse(&k2, &["u*t^-2"]).unwrap();
        let rep = verify_rsw_characterization(&chi, 20, 2).unwrap();
        assert!(rep.all_pass(), "{rep:?}");

        let unram = Character::parse(&k, &["1 + t"]).unwrap();
        assert_eq!(verify_rsw_characterization(&unram, 1, 0), Err(Error::UnramifiedCharacter));
    }
}
