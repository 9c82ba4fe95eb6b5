//! Refined Swan conductor in characteristic `p`.
//!
//! For a reduced representative `(a_{s-1}, ..., a_0)` of `chi` with
//! `Sw(chi) = n`, `Rsw(chi)` is the class of `-sum_i a_i^{p^i - 1} da_i` in
//! `m_K^{-n}/m_K^{-m} ⊗ Omega^1(log)` with `m = [n/p]`.

use crate::algebra::series::Nested;
use crate::error::{Error, Result};
use crate::logdiff::{d, LogForm, WindowedForm};
use crate::witt::{swan_conductor, Character};

/// Lower end `m = max(n - e_K, [n/p])` of the window; `e_K = None` is the
/// characteristic-`p` case `e_K = ∞`.
pub fn lower_index(n: i64, p: u32, e_k: Option<i64>) -> i64 {
    let q = n.div_euclid(p as i64);
    match e_k {
        Some(e) => (n - e).max(q),
        None => q,
    }
}

/// `Rsw(chi)` with its source character.
#[derive(Clone, Debug, PartialEq)]
pub struct RswValue {
    chi: Character,
    value: WindowedForm,
}

impl RswValue {
    pub fn character(&self) -> &Character {
        &self.chi
    }

    pub fn value(&self) -> &WindowedForm {
        &self.value
    }

    pub fn n(&self) -> i64 {
        self.value.n()
    }

    pub fn m(&self) -> i64 {
        self.value.m()
    }
}

/// `-sum_i a_i^{p^i - 1} da_i` before windowing.
pub fn rsw_representative(chi: &Character) -> Result<LogForm> {
    let tower = chi.tower();
    let ring = tower.field();
    let depth = tower.depth();
    let p = tower.p() as i64;
    let s = chi.vector().len();
    let mut acc = LogForm::zero(depth, 1);
    for i in 0..s {
        let a = chi.vector().a(i);
        if a.is_zero() {
            continue;
        }
        let da = d(&LogForm::function(a.clone()), &ring)?;
        let w = ring.pow(a, p.pow(i as u32) - 1)?;
        acc = acc.add(&da.scale(&w, &ring), &ring)?;
    }
    Ok(acc.neg(&ring))
}

pub fn rsw_char_p(chi: &Character) -> Result<RswValue> {
    if !chi.is_reduced() {
        return Err(Error::NotReduced);
    }
    let n = swan_conductor(chi)?;
    if n == 0 {
        return Err(Error::UnramifiedCharacter);
    }
    let tower = chi.tower();
    let m = lower_index(n, tower.p(), None);
    let rep = rsw_representative(chi)?;
    let value = WindowedForm::new(rep, n, m, &tower.field())?;
    Ok(RswValue {
        chi: chi.clone(),
        value,
    })
}

/// The image in `m^{-n}/m^{-(n-1)} ⊗ Omega^1(log)`.
pub fn rsw_leading_term(v: &RswValue) -> Result<WindowedForm> {
    v.value.restrict(v.n() - 1, &v.chi.tower().field())
}

/// The unique `i` in `(m, n]` with the value in `m^{-i}` but not `m^{-i+1}`.
pub fn sw_from_rsw(v: &RswValue) -> Result<i64> {
    let Some(o) = v.value.form().ord() else {
        return Err(Error::InconsistentValue("refined Swan conductor vanishes".into()));
    };
    let i = -o;
    if i <= v.m() || i > v.n() {
        return Err(Error::InconsistentValue(format!(
            "pole order {i} outside ({}, {}]",
            v.m(),
            v.n()
        )));
    }
    Ok(i)
}

/// `d` of the representative vanishes in the degree-2 window.
pub fn is_closed(v: &RswValue) -> Result<bool> {
    let tower = v.chi.tower();
    if tower.depth() < 2 {
        return Ok(true);
    }
    let ring = tower.field();
    let dw = d(v.value.form(), &ring)?;
    Ok(WindowedForm::new(dw, v.n(), v.m(), &ring)?.form().is_zero())
}

/// `pi^n Rsw(chi) = sum_lambda a_lambda db_lambda + c dlog(pi)` within the
/// window, with `db_lambda = T_lambda dlog T_lambda`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    /// `(variable, a_lambda)` for the residue-tower variables.
    pub residual: Vec<(String, Nested)>,
    pub c: Nested,
    pub c_is_unit: bool,
}

impl Decomposition {
    /// Some `a_lambda` has valuation zero.
    pub fn residual_has_unit(&self) -> bool {
        self.residual.iter().any(|(_, a)| a.ord() == Some(0))
    }
}

pub fn rsw_decompose(v: &RswValue) -> Result<Decomposition> {
    let tower = v.chi.tower();
    let ring = tower.field();
    let depth = tower.depth();
    let n = v.n();
    let form = v.value.form();
    let mut residual = Vec::new();
    for lambda in 1..depth {
        let a = form.coeff(1 << (lambda - 1), &ring);
        let mut exps = vec![0; depth];
        exps[lambda - 1] = -1;
        exps[depth - 1] = n;
        let scaled = ring.mul(&a, &ring.monomial(ring.scalars().one(), &exps));
        if !scaled.is_zero() {
            residual.push((tower.variables()[lambda - 1].clone(), scaled));
        }
    }
    let c = ring.shift(&form.coeff(1 << (depth - 1), &ring), n);
    let c_is_unit = c.ord() == Some(0);
    Ok(Decomposition {
        residual,
        c,
        c_is_unit,
    })
}
