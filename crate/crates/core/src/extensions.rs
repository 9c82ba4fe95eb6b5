//! Extensions `L/K` of iterated Laurent series fields and how conductors
//! change along them.

use std::fmt;

use num_rational::Rational64;

use crate::algebra::series::Nested;
use crate::algebra::substitute::substitute;
use crate::algebra::tower::FieldTower;
use crate::error::{Error, Result};
use crate::rsw::rsw_decompose;
use crate::witt::{swan_conductor, Character, WittVector};

/// A map `K -> L` given by the images of the variables of `K`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionMap {
    source: FieldTower,
    target: FieldTower,
    images: Vec<Nested>,
}

impl ExtensionMap {
    pub fn new(source: &FieldTower, target: &FieldTower, images: Vec<Nested>) -> Result<Self> {
        if (source.p(), source.k()) != (target.p(), target.k()) {
            return Err(Error::TowerMismatch(format!(
                "F_{}^{} and F_{}^{} differ",
                source.p(),
                source.k(),
                target.p(),
                target.k()
            )));
        }
        if images.len() != source.depth() {
            return Err(Error::TowerMismatch(format!(
                "{} images for {} variables",
                images.len(),
                source.depth()
            )));
        }
        let d = source.depth();
        for (i, img) in images.iter().enumerate() {
            if img.level() != target.depth() {
                return Err(Error::TowerMismatch(format!("image of {} is not in L", source.variables()[i])));
            }
            let v = img.ord();
            let ok = match v {
                None => false,
                Some(v) if i + 1 == d => v >= 1,
                Some(v) => v >= 0,
            };
            if !ok {
                return Err(Error::NonEmbedding(format!(
                    "{} maps to an element of valuation {v:?}",
                    source.variables()[i]
                )));
            }
        }
        Ok(ExtensionMap {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    /// Parses `variable -> literal` images over `target`, in source variable order.
    pub fn parse(source: &FieldTower, target: &FieldTower, images: &[&str]) -> Result<Self> {
        let imgs = images.iter().map(|s| target.parse(s)).collect::<Result<Vec<_>>>()?;
        Self::new(source, target, imgs)
    }

    pub fn source(&self) -> &FieldTower {
        &self.source
    }

    pub fn target(&self) -> &FieldTower {
        &self.target
    }

    pub fn images(&self) -> &[Nested] {
        &self.images
    }

    pub fn apply(&self, x: &Nested) -> Result<Nested> {
        substitute(x, &self.images, &self.target.field())
    }
}

/// `e(L/K)`: the valuation of the image of the uniformizer of `K`.
pub fn ramification_index(phi: &ExtensionMap) -> Result<i64> {
    phi.images
        .last()
        .and_then(|x| x.ord())
        .filter(|&v| v >= 1)
        .ok_or_else(|| Error::NonEmbedding("uniformizer image".into()))
}

/// `chi_L`: componentwise substitution followed by reduction.
pub fn pullback_character(chi: &Character, phi: &ExtensionMap) -> Result<Character> {
    if chi.tower() != &phi.source {
        return Err(Error::TowerMismatch("character does not live on the source".into()));
    }
    let target = phi.target.with_length(chi.tower().s())?;
    let comps = chi.vector().map_components(|c| phi.apply(c))?;
    WittVector::new(&target, comps)?.asw_reduce()
}

/// `dlog` of the image of `pi_K` in the basis `{db_lambda, dlog pi_L}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionReport {
    pub delta: i64,
    /// `(basis element, coefficient)`; `db_lambda` is written `d(v)`.
    pub coefficients: Vec<(String, Nested)>,
}

pub fn delta_tor(phi: &ExtensionMap) -> Result<TorsionReport> {
    if phi.source.depth() != 1 {
        return Err(Error::NonPerfectBase);
    }
    let target = &phi.target;
    let ring = target.field();
    let dl = target.depth();
    let img = &phi.images[0];
    let inv = ring.inv(img)?;
    let mut coefficients = Vec::with_capacity(dl);
    for j in 1..=dl {
        let mut c = ring.mul(&ring.euler(img, j), &inv);
        let name = &target.variables()[j - 1];
        let label = if j < dl {
            // T_j dlog T_j = dT_j
            c = ring.mul(&c, &ring.inv(&ring.var(dl, j))?);
            format!("d({name})")
        } else {
            format!("dlog({name})")
        };
        coefficients.push((label, c));
    }
    let mut delta: Option<i64> = None;
    for (_, c) in &coefficients {
        if let Some(v) = c.ord() {
            delta = Some(delta.map_or(v, |d| d.min(v)));
        }
    }
    let Some(delta) = delta else {
        if coefficients.iter().all(|(_, c)| c.ceiling() == crate::EXACT) {
            return Err(Error::Unsupported("inseparable extension".into()));
        }
        let known = coefficients.iter().map(|(_, c)| c.ceiling()).min().unwrap_or(0);
        return Err(Error::PrecisionExhausted(format!(
            "dlog of the uniformizer vanishes below exponent {known}"
        )));
    };
    if coefficients.iter().any(|(_, c)| c.is_zero() && c.ceiling() <= delta) {
        return Err(Error::PrecisionExhausted("torsion length not determined".into()));
    }
    Ok(TorsionReport { delta, coefficients })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotApplicable => "NOT_APPLICABLE",
        })
    }
}

impl From<bool> for Status {
    fn from(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConductorChange {
    pub sw_k: i64,
    pub e: i64,
    pub delta: i64,
    /// `Sw(chi) (p - 1) e > p delta`.
    pub hypothesis: bool,
    pub predicted: i64,
    pub direct: i64,
    pub status: Status,
}

/// Compares `Sw(chi_L)` with `e Sw(chi) - delta_tor`. The character is
/// reduced first.
pub fn conductor_change(chi: &Character, phi: &ExtensionMap) -> Result<ConductorChange> {
    let chi = if chi.is_reduced() { chi.clone() } else { chi.vector().asw_reduce()? };
    let tor = delta_tor(phi)?;
    let e = ramification_index(phi)?;
    let sw_k = swan_conductor(&chi)?;
    let p = phi.source.p() as i64;
    let hypothesis = sw_k * (p - 1) * e > p * tor.delta;
    let predicted = e * sw_k - tor.delta;
    let direct = swan_conductor(&pullback_character(&chi, phi)?)?;
    let status = if hypothesis { Status::from(predicted == direct) } else { Status::NotApplicable };
    Ok(ConductorChange {
        sw_k,
        e,
        delta: tor.delta,
        hypothesis,
        predicted,
        direct,
        status,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioSample {
    /// Family parameter, when the member comes from a canned family.
    pub param: Option<i64>,
    pub e: i64,
    pub sw: i64,
    pub ratio: Rational64,
    pub expected: Option<Rational64>,
}

impl RatioSample {
    fn new(param: Option<i64>, e: i64, sw: i64) -> Self {
        RatioSample {
            param,
            e,
            sw,
            ratio: Rational64::new(sw, e),
            expected: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioReport {
    pub sw: i64,
    pub samples: Vec<RatioSample>,
    pub max_ratio: Option<Rational64>,
    /// Every ratio is at most `sw` and every expected ratio is met.
    pub status: Status,
}

impl RatioReport {
    fn finish(sw: i64, samples: Vec<RatioSample>) -> Self {
        let bound = Rational64::from_integer(sw);
        let ok = samples
            .iter()
            .all(|s| s.ratio <= bound && s.expected.is_none_or(|x| x == s.ratio));
        RatioReport {
            sw,
            max_ratio: samples.iter().map(|s| s.ratio).max(),
            samples,
            status: Status::from(ok),
        }
    }

    /// Ratios are nondecreasing along the samples.
    pub fn monotone(&self) -> bool {
        self.samples.windows(2).all(|w| w[0].ratio <= w[1].ratio)
    }
}

/// `Sw(chi_L) / e(L/K)` along a family of extensions.
pub fn thmb_ratio_experiment(chi: &Character, family: &[ExtensionMap]) -> Result<RatioReport> {
    let sw = swan_conductor(chi)?;
    if sw == 0 {
        return Err(Error::UnramifiedCharacter);
    }
    let mut samples = Vec::with_capacity(family.len());
    for phi in family {
        let e = ramification_index(phi)?;
        let sw_l = swan_conductor(&pullback_character(chi, phi)?)?;
        samples.push(RatioSample::new(None, e, sw_l));
    }
    Ok(RatioReport::finish(sw, samples))
}

/// The family `u -> v^p + w, t -> w^t` from `F_q((u))((t))` to
/// `F_q((v))((w))`.
pub fn thmb_family(source: &FieldTower, params: &[i64]) -> Result<Vec<ExtensionMap>> {
    if source.depth() != 2 {
        return Err(Error::Unsupported("the canned family needs two variables".into()));
    }
    let target = source.with_variables(vec!["v".into(), "w".into()])?;
    params
        .iter()
        .map(|&t| {
            if t < 1 || t % source.p() as i64 == 0 {
                return Err(Error::Unsupported(format!("family parameter {t} must be prime to p")));
            }
            let u = format!("v^{} + w", source.p());
            ExtensionMap::parse(source, &target, &[&u, &format!("w^{t}")])
        })
        .collect()
}

/// Runs the canned family; when `c` is not a unit and some residual
/// coefficient is, each ratio must equal `Sw - 1/t`.
pub fn thmb_canned(chi: &Character, params: &[i64]) -> Result<RatioReport> {
    let family = thmb_family(chi.tower(), params)?;
    let mut rep = thmb_ratio_experiment(chi, &family)?;
    let dec = rsw_decompose(&crate::rsw::rsw_char_p(chi)?)?;
    let predicts = !dec.c_is_unit && dec.residual_has_unit();
    for (s, &t) in rep.samples.iter_mut().zip(params) {
        s.param = Some(t);
        if predicts {
            s.expected = Some(Rational64::from_integer(rep.sw) - Rational64::new(1, t));
        }
    }
    Ok(RatioReport::finish(rep.sw, rep.samples))
}

/// Restricts `f` on the plane `(x, t)` to the curves `t = u^e, x = x0 + u`
/// and compares `Sw_x / e` with `Sw_D(f)`.
///
/// `f` lives on a tower with variables `(x, t)`; its `x`-coefficients must
/// be polynomials.
pub fn curve_ratio_experiment(tower: &FieldTower, f: &Nested, x0: u32, e_list: &[i64]) -> Result<RatioReport> {
    if tower.depth() != 2 || tower.s() != 1 {
        return Err(Error::Unsupported("curve families need s = 1 over a plane".into()));
    }
    let mut negative = false;
    f.for_each_monomial(|_, e| negative |= e[0] < 0);
    if negative {
        return Err(Error::Unsupported("x-coefficients must be polynomials".into()));
    }
    let chi = WittVector::new(tower, vec![f.clone()])?.asw_reduce()?;
    let sw = swan_conductor(&chi)?;
    let curve = FieldTower::new(tower.p(), tower.k(), 1, &["u"], tower.precision())?;
    let mut samples = Vec::with_capacity(e_list.len());
    for &e in e_list {
        let x = if x0.is_multiple_of(tower.p()) { "u".to_string() } else { format!("{x0} + u") };
        let phi = ExtensionMap::parse(tower, &curve, &[&x, &format!("u^{e}")])?;
        let sw_c = swan_conductor(&pullback_character(&chi, &phi)?)?;
        samples.push(RatioSample::new(Some(e), e, sw_c));
    }
    Ok(RatioReport::finish(sw, samples))
}
