//! Logarithmic differential forms over iterated Laurent series.
//!
//! A form of degree `r` is `sum_S c_S dlog T_S` over sorted `r`-subsets `S`
//! of the tower variables, stored as bitmasks (bit `i - 1` for `T_i`).

use std::collections::BTreeMap;

use crate::algebra::literal;
use crate::algebra::series::{Nested, SeriesRing, EXACT};
use crate::algebra::substitute::substitute;
use crate::algebra::tower::FieldTower;
use crate::error::{Error, Result};

/// Variables of a subset mask, ascending, 1-based.
pub fn mask_vars(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

fn full_mask(depth: usize) -> u32 {
    (1u32 << depth) - 1
}

/// Sign of `dlog T_A ∧ dlog T_B` relative to `dlog T_{A ∪ B}`, or `None`
/// when the sets overlap.
fn wedge_sign(a: u32, b: u32) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0;
    for i in mask_vars(a) {
        inversions += mask_vars(b).iter().filter(|&&j| j < i).count();
    }
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// Canonical mask and sign for a written sequence of `dlog` variables.
pub fn canonical_basis(vars: &[usize]) -> Option<(u32, i64)> {
    let mut mask = 0u32;
    let mut sign = 1;
    for &v in vars {
        let bit = 1u32 << (v - 1);
        let (m, s) = (mask, wedge_sign(mask, bit)?);
        mask = m | bit;
        sign *= s;
    }
    Some((mask, sign))
}

/// A degree-`r` logarithmic form over a tower of the given depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogForm {
    depth: usize,
    degree: usize,
    coeffs: BTreeMap<u32, Nested>,
}

impl LogForm {
    pub fn zero(depth: usize, degree: usize) -> Self {
        LogForm {
            depth,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// A degree-0 form.
    pub fn function(x: Nested) -> Self {
        let depth = x.level();
        let mut f = LogForm::zero(depth, 0);
        if !x.is_zero() || x.ceiling() != EXACT {
            f.coeffs.insert(0, x);
        }
        f
    }

    /// `c dlog T_{vars}`, with the variables in any order.
    pub fn basis(depth: usize, vars: &[usize], c: Nested, ring: &SeriesRing) -> Result<Self> {
        if vars.iter().any(|&v| v == 0 || v > depth) {
            return Err(Error::DegreeOverflow);
        }
        let mut f = LogForm::zero(depth, vars.len());
        if let Some((mask, sign)) = canonical_basis(vars) {
            f.insert(mask, if sign == 1 { c } else { ring.neg(&c) }, ring);
        }
        Ok(f)
    }

    /// `c dlog T_1 ∧ ... ∧ dlog T_d`.
    pub fn top(c: Nested) -> Self {
        let depth = c.level();
        let mut f = LogForm::zero(depth, depth);
        if !c.is_zero() || c.ceiling() != EXACT {
            f.coeffs.insert(full_mask(depth), c);
        }
        f
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Nonzero coefficients keyed by basis mask.
    pub fn coefficients(&self) -> &BTreeMap<u32, Nested> {
        &self.coeffs
    }

    /// Coefficient of `dlog T_S` (zero when absent).
    pub fn coeff(&self, mask: u32, ring: &SeriesRing) -> Nested {
        self.coeffs.get(&mask).cloned().unwrap_or_else(|| ring.zero(self.depth))
    }

    /// Coefficient of the top basis element.
    pub fn top_coeff(&self, ring: &SeriesRing) -> Result<Nested> {
        if self.degree != self.depth {
            return Err(Error::NotTopDegree);
        }
        Ok(self.coeff(full_mask(self.depth), ring))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| c.is_zero())
    }

    fn insert(&mut self, mask: u32, c: Nested, ring: &SeriesRing) {
        let c = match self.coeffs.remove(&mask) {
            Some(prev) => ring.add(&prev, &c),
            None => c,
        };
        if !c.is_zero() || c.ceiling() != EXACT {
            self.coeffs.insert(mask, c);
        }
    }

    fn same_shape(&self, other: &LogForm) -> Result<()> {
        if self.depth != other.depth || self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!(
                "forms of degree {} and {} over depths {} and {}",
                self.degree, other.degree, self.depth, other.depth
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &LogForm, ring: &SeriesRing) -> Result<LogForm> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.insert(*m, c.clone(), ring);
        }
        Ok(out)
    }

    pub fn neg(&self, ring: &SeriesRing) -> LogForm {
        self.map(|c| ring.neg(c))
    }

    pub fn sub(&self, other: &LogForm, ring: &SeriesRing) -> Result<LogForm> {
        self.add(&other.neg(ring), ring)
    }

    /// Multiplies every coefficient by a function.
    pub fn scale(&self, x: &Nested, ring: &SeriesRing) -> LogForm {
        self.map(|c| ring.mul(c, x))
    }

    /// Applies `f` to every coefficient.
    pub fn map(&self, mut f: impl FnMut(&Nested) -> Nested) -> LogForm {
        let mut out = LogForm::zero(self.depth, self.degree);
        for (m, c) in &self.coeffs {
            let c = f(c);
            if !c.is_zero() || c.ceiling() != EXACT {
                out.coeffs.insert(*m, c);
            }
        }
        out
    }

    /// Equality on the common window of every coefficient.
    pub fn eq_within(&self, other: &LogForm, ring: &SeriesRing) -> bool {
        self.sub(other, ring).is_ok_and(|d| d.is_zero())
    }

    /// Smallest top-level valuation among the coefficients.
    pub fn ord(&self) -> Option<i64> {
        self.coeffs.values().filter_map(|c| c.ord()).min()
    }

    /// Smallest top-level ceiling among the coefficients.
    pub fn ceiling(&self) -> i64 {
        self.coeffs.values().map(|c| c.ceiling()).min().unwrap_or(EXACT)
    }
}

/// Exterior derivative.
pub fn d(omega: &LogForm, ring: &SeriesRing) -> Result<LogForm> {
    if omega.degree >= omega.depth {
        return Err(Error::DegreeOverflow);
    }
    let mut out = LogForm::zero(omega.depth, omega.degree + 1);
    for (mask, c) in &omega.coeffs {
        for i in 1..=omega.depth {
            let bit = 1u32 << (i - 1);
            let Some(sign) = wedge_sign(bit, *mask) else {
                continue;
            };
            let e = ring.euler(c, i);
            out.insert(mask | bit, if sign == 1 { e } else { ring.neg(&e) }, ring);
        }
    }
    Ok(out)
}

pub fn wedge(alpha: &LogForm, beta: &LogForm, ring: &SeriesRing) -> Result<LogForm> {
    if alpha.depth != beta.depth {
        return Err(Error::TowerMismatch("forms over different towers".into()));
    }
    if alpha.degree + beta.degree > alpha.depth {
        return Err(Error::DegreeOverflow);
    }
    let mut out = LogForm::zero(alpha.depth, alpha.degree + beta.degree);
    for (ma, ca) in &alpha.coeffs {
        for (mb, cb) in &beta.coeffs {
            if let Some(sign) = wedge_sign(*ma, *mb) {
                let c = ring.mul(ca, cb);
                out.insert(ma | mb, if sign == 1 { c } else { ring.neg(&c) }, ring);
            }
        }
    }
    Ok(out)
}

/// `sum_e c_e T^e  ->  sum_{p | e} c_e^{1/p} T^{e/p}`, monomialwise.
fn cartier_coeff(x: &Nested, ring: &SeriesRing) -> Result<Nested> {
    let p = ring.p() as i64;
    match x {
        Nested::Scalar(c) => Ok(Nested::Scalar(ring.scalars().pth_root(c).map_err(|_| Error::NoPthRoot)?)),
        Nested::Series(s) => {
            let mut terms = Vec::new();
            for (e, c) in s.terms() {
                if e.rem_euclid(p) == 0 {
                    terms.push((e / p, cartier_coeff(c, ring)?));
                }
            }
            let ceil = if s.ceiling() == EXACT {
                EXACT
            } else {
                s.ceiling().div_euclid(p) + i64::from(s.ceiling().rem_euclid(p) != 0)
            };
            Ok(ring.from_terms(s.level(), terms, ceil))
        }
    }
}

/// Cartier operator on top-degree forms over a field of characteristic `p`.
pub fn cartier(omega: &LogForm, ring: &SeriesRing) -> Result<LogForm> {
    if omega.degree != omega.depth {
        return Err(Error::NotTopDegree);
    }
    if !ring.scalars().is_field() {
        return Err(Error::NoPthRoot);
    }
    let mut out = LogForm::zero(omega.depth, omega.degree);
    for (m, c) in &omega.coeffs {
        out.insert(*m, cartier_coeff(c, ring)?, ring);
    }
    Ok(out)
}

/// `sum T^i w_i ∧ dlog T  ->  w_0`: the coefficient form of `T^0 dlog T` for
/// the uniformizer `T = T_d`.
pub fn residue_step(omega: &LogForm, ring: &SeriesRing) -> Result<LogForm> {
    if omega.degree != omega.depth || omega.depth == 0 {
        return Err(Error::NotTopDegree);
    }
    let c = omega.top_coeff(ring)?;
    let c0 = match c.coeff(0)? {
        Some(x) => x.clone(),
        None => ring.zero(omega.depth - 1),
    };
    Ok(LogForm::top(c0))
}

fn trace_down(omega: &LogForm, ring: &SeriesRing) -> Result<u32> {
    if omega.degree != omega.depth {
        return Err(Error::NotTopDegree);
    }
    let mut form = omega.clone();
    let mut r = ring.clone();
    while form.depth > 0 {
        form = residue_step(&form, &r)?;
        r = r.with_depth(form.depth);
    }
    let c = form.top_coeff(&r)?;
    let c = c.as_scalar().copied().unwrap_or_default();
    Ok(r.scalars().trace(&c))
}

/// Iterated residue followed by the trace `F_q -> F_p`.
pub fn residue_to_prime_field(omega: &LogForm, ring: &SeriesRing) -> Result<u32> {
    trace_down(omega, ring)
}

/// Iterated residue over the lift ring followed by the trace to `Z/p^s`.
pub fn res_p(omega: &LogForm, lift: &SeriesRing) -> Result<u32> {
    trace_down(omega, lift)
}

/// A form modulo `m_K^{-m}`, with coefficients in `m_K^{-n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowedForm {
    form: LogForm,
    n: i64,
    m: i64,
}

impl WindowedForm {
    /// Keeps the top-level exponents in `[-n, -m)`. Fails when a coefficient
    /// has a pole of order more than `n` or is not known below `-m`.
    pub fn new(form: LogForm, n: i64, m: i64, ring: &SeriesRing) -> Result<Self> {
        if n <= m {
            return Err(Error::InconsistentValue(format!("window ({n},{m}) is empty")));
        }
        if form.depth == 0 {
            return Err(Error::TowerMismatch("windows need a uniformizer".into()));
        }
        if let Some(v) = form.ord() {
            if v < -n {
                return Err(Error::InconsistentValue(format!(
                    "valuation {v} lies below the window ({n},{m})"
                )));
            }
        }
        if form.ceiling() < -m {
            return Err(Error::PrecisionExhausted(format!(
                "form known below exponent {}, window needs {}",
                form.ceiling(),
                -m
            )));
        }
        let form = form.map(|c| ring.window(c, -n, -m));
        Ok(WindowedForm { form, n, m })
    }

    pub fn form(&self) -> &LogForm {
        &self.form
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    /// Coarser window `(n, m')` with `m' >= m`.
    pub fn restrict(&self, m: i64, ring: &SeriesRing) -> Result<WindowedForm> {
        if m < self.m {
            return Err(Error::InconsistentValue(format!("cannot refine window to m = {m}")));
        }
        WindowedForm::new(self.form.clone(), self.n, m, ring)
    }

    /// Wedge product; the window is the largest one both factors determine.
    pub fn wedge(&self, other: &WindowedForm, ring: &SeriesRing) -> Result<WindowedForm> {
        let f = wedge(&self.form, &other.form, ring)?;
        let n = self.n + other.n;
        let m = (self.m + other.n).max(self.n + other.m);
        WindowedForm::new(f, n, m, ring)
    }

    pub fn render(&self, tower: &FieldTower) -> String {
        format!("{} | window({},{})", render_form(&self.form, tower), self.n, self.m)
    }
}

/// `R_b`: `C^b` of the `T^0`-slot `w_0` of a top form
/// `x = sum_i T^{-i} w_i ∧ dlog T`.
pub fn r_b(x: &WindowedForm, b: u32, ring: &SeriesRing) -> Result<LogForm> {
    if x.form.degree != x.form.depth {
        return Err(Error::NotTopDegree);
    }
    let a = x.n + 1;
    let p = ring.p() as i64;
    if a > 0 && p.checked_pow(b).is_some_and(|q| q < a) {
        return Err(Error::WindowTooWide { width: a, b });
    }
    if x.m > -1 {
        return Err(Error::PrecisionExhausted(format!(
            "window ({},{}) does not determine the T^0 slot",
            x.n, x.m
        )));
    }
    let mut w = residue_step(&x.form, ring)?;
    let inner = ring.with_depth(w.depth);
    for _ in 0..b {
        w = cartier(&w, &inner)?;
    }
    Ok(w)
}

/// Smallest `b` with `p^b >= a`.
pub fn minimal_b(p: u32, a: i64) -> u32 {
    let mut b = 0;
    let mut q = 1i64;
    while q < a {
        q *= p as i64;
        b += 1;
    }
    b
}

/// Gram matrix of `(x, y) -> R_b(x ∧ y)` between
/// `m^{-n}/m^{-m} ⊗ Omega^j(log)` and `m^{m+1}/m^{n+1} ⊗ Omega^i(log)`.
///
/// Both sides are vector spaces over the residue field `F` through
/// `c -> c^{p^b}`, so their monomial bases run over residue exponents in
/// `[0, p^b)` for each residue variable. Entries are top-form coefficients
/// over `F`. Returns the matrix with its row and column labels.
pub fn duality_matrix(
    tower: &FieldTower,
    n: i64,
    m: i64,
    b: u32,
    i: usize,
    j: usize,
) -> Result<(Vec<Vec<Nested>>, Vec<String>, Vec<String>)> {
    let depth = tower.depth();
    if i + j != depth {
        return Err(Error::DegreeMismatch(format!(
            "degrees {i} + {j} differ from {depth}"
        )));
    }
    let a = n - m;
    if a < 1 {
        return Err(Error::InconsistentValue(format!("window ({n},{m}) is empty")));
    }
    let p = tower.p() as i64;
    let q = p.pow(b);
    if q < a {
        return Err(Error::WindowTooWide { width: a, b });
    }
    let ring = tower.field();
    let one = ring.scalars().one();
    let residue_exps = residue_exponent_grid(depth - 1, q);
    let subsets = |r: usize| -> Vec<u32> {
        (0..1u32 << depth).filter(|mk| mk.count_ones() as usize == r).collect()
    };
    let build = |tops: Vec<i64>, r: usize| {
        let mut basis = Vec::new();
        for &k in &tops {
            for e in &residue_exps {
                for &mk in &subsets(r) {
                    let mut exps = e.clone();
                    exps.push(k);
                    let c = ring.monomial(one, &exps);
                    let mut f = LogForm::zero(depth, r);
                    f.insert(mk, c.clone(), &ring);
                    basis.push((f, c, mk));
                }
            }
        }
        basis
    };
    let left = build((-n..-m).collect(), j);
    let right = build((m + 1..=n).collect(), i);
    let label = |c: &Nested, mk: u32| {
        let dl: Vec<String> = mask_vars(mk)
            .iter()
            .map(|v| format!("dlog({})", tower.variables()[v - 1]))
            .collect();
        let mut s = tower.render(c);
        if !dl.is_empty() {
            s = format!("{s} {}", dl.join("^"));
        }
        s
    };
    let mut matrix = Vec::with_capacity(left.len());
    for (x, _, _) in &left {
        let mut row = Vec::with_capacity(right.len());
        for (y, _, _) in &right {
            let prod = wedge(x, y, &ring)?;
            let w = WindowedForm::new(prod, a - 1, -1, &ring)?;
            let rb = r_b(&w, b, &ring)?;
            row.push(rb.top_coeff(&ring.with_depth(depth - 1))?);
        }
        matrix.push(row);
    }
    Ok((
        matrix,
        left.iter().map(|(_, c, mk)| label(c, *mk)).collect(),
        right.iter().map(|(_, c, mk)| label(c, *mk)).collect(),
    ))
}

fn residue_exponent_grid(vars: usize, q: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..vars {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..q).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

/// Rank of a square matrix over the field of the given ring by exact
/// elimination. Pivots must be known to be nonzero; a column whose
/// candidates are all unknown raises `PrecisionExhausted`.
pub fn matrix_rank(matrix: &[Vec<Nested>], ring: &SeriesRing) -> Result<usize> {
    let mut rows: Vec<Vec<Nested>> = matrix.to_vec();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..rows.len()).find(|&r| !rows[r][col].is_zero());
        let Some(pr) = pivot else {
            if (rank..rows.len()).any(|r| rows[r][col].ceiling() != EXACT) {
                return Err(Error::PrecisionExhausted(format!(
                    "pivot in column {col} is not determined"
                )));
            }
            continue;
        };
        rows.swap(rank, pr);
        let inv = ring.inv(&rows[rank][col])?;
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = ring.mul(&rows[r][col], &inv);
            for c in col..ncols {
                let v = ring.sub(&rows[r][c], &ring.mul(&f, &rows[rank][c]));
                rows[r][c] = v;
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// Pulls a form back along `T_i -> images[i - 1]`:
/// `dlog T_i -> sum_j (T'_j d/dT'_j img_i / img_i) dlog T'_j`.
pub fn pullback_form(
    omega: &LogForm,
    images: &[Nested],
    target: &SeriesRing,
) -> Result<LogForm> {
    let depth = target.depth();
    let mut dlogs = Vec::with_capacity(images.len());
    for img in images {
        let inv = target.inv(img)?;
        let mut f = LogForm::zero(depth, 1);
        for j in 1..=depth {
            let c = target.mul(&target.euler(img, j), &inv);
            f.insert(1 << (j - 1), c, target);
        }
        dlogs.push(f);
    }
    let mut out = LogForm::zero(depth, omega.degree);
    for (mask, c) in &omega.coeffs {
        let mut term = LogForm::function(substitute(c, images, target)?);
        for v in mask_vars(*mask) {
            term = wedge(&term, &dlogs[v - 1], target)?;
        }
        out = out.add(&term, target)?;
    }
    Ok(out)
}

/// Canonical text: basis elements in tower order, each coefficient
/// parenthesized when it has several terms.
pub fn render_form(form: &LogForm, tower: &FieldTower) -> String {
    render_form_with(form, tower, &tower.field())
}

pub fn render_form_with(form: &LogForm, tower: &FieldTower, ring: &SeriesRing) -> String {
    let vars = &tower.variables()[..form.depth];
    let mut parts = Vec::new();
    for (mask, c) in &form.coeffs {
        if c.is_zero() {
            continue;
        }
        let text = literal::render_series(c, vars, ring);
        let dl: Vec<String> = mask_vars(*mask)
            .iter()
            .map(|v| format!("dlog({})", vars[v - 1]))
            .collect();
        let dl = dl.join("^");
        let piece = if dl.is_empty() {
            text
        } else if text == "1" {
            dl
        } else if literal::rendered_terms(c, ring) > 1 {
            format!("({text}) {dl}")
        } else {
            format!("{text} {dl}")
        };
        parts.push(piece);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Parses a form literal; returns the form and its window if present.
pub fn parse_form(text: &str, tower: &FieldTower) -> Result<(LogForm, Option<(i64, i64)>)> {
    let ring = tower.field();
    let parsed = literal::parse_form(text, tower.variables(), &ring)?;
    let depth = tower.depth();
    let mut degree = None;
    let mut form: Option<LogForm> = None;
    for (vars, c) in parsed.terms {
        if c.is_zero() && vars.is_empty() {
            continue;
        }
        if *degree.get_or_insert(vars.len()) != vars.len() {
            return Err(Error::DegreeMismatch("mixed degrees in a form literal".into()));
        }
        let piece = LogForm::basis(depth, &vars, c, &ring)?;
        form = Some(match form {
            None => piece,
            Some(f) => f.add(&piece, &ring)?,
        });
    }
    Ok((form.unwrap_or_else(|| LogForm::zero(depth, 0)), parsed.window))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower(p: u32, k: usize, vars: &[&str]) -> FieldTower {
        FieldTower::new(p, k, 1, vars, 64).unwrap()
    }

    fn form(t: &FieldTower, text: &str) -> LogForm {
        parse_form(text, t).unwrap().0
    }

    #[test]
    fn d_of_monomials() {
        let k = tower(2, 1, &["t"]);
        let r = k.field();
        let f = LogForm::function(k.parse("t^-3").unwrap());
        assert_eq!(d(&f, &r).unwrap(), form(&k, "t^-3 dlog(t)"));

        let k2 = tower(3, 1, &["u", "t"]);
        let r2 = k2.field();
        let f = LogForm::function(k2.parse("u*t^-2").unwrap());
        assert_eq!(d(&f, &r2).unwrap(), form(&k2, "u*t^-2 dlog(u) + u*t^-2 dlog(t)"));
        let df = d(&f, &r2).unwrap();
        assert!(d(&df, &r2).unwrap().is_zero());
        assert_eq!(d(&d(&df, &r2).unwrap(), &r2), Err(Error::DegreeOverflow));
    }

    #[test]
    fn wedge_signs() {
        let k = tower(3, 1, &["u", "t"]);
        let r = k.field();
        let du = form(&k, "dlog(u)");
        let dt = form(&k, "dlog(t)");
        assert_eq!(wedge(&du, &dt, &r).unwrap(), form(&k, "dlog(u)^dlog(t)"));
        assert_eq!(wedge(&dt, &du, &r).unwrap(), form(&k, "2 dlog(u)^dlog(t)"));
        assert!(wedge(&dt, &dt, &r).unwrap().is_zero());
        let a = form(&k, "u dlog(u)");
        let b = form(&k, "t^2 dlog(t)");
        assert_eq!(wedge(&a, &b, &r).unwrap(), form(&k, "u*t^2 dlog(u)^dlog(t)"));
    }

    #[test]
    fn cartier_examples() {
        let k = tower(2, 1, &["u"]);
        let r = k.field();
        let c1 = cartier(&form(&k, "u^4 dlog(u)"), &r).unwrap();
        assert_eq!(c1, form(&k, "u^2 dlog(u)"));
        assert_eq!(cartier(&c1, &r).unwrap(), form(&k, "u dlog(u)"));
        assert!(cartier(&form(&k, "u^3 dlog(u)"), &r).unwrap().is_zero());
        let k4 = tower(2, 2, &["u"]);
        assert_eq!(
            cartier(&form(&k4, "g^2*u^2 dlog(u)"), &k4.field()).unwrap(),
            form(&k4, "g*u dlog(u)")
        );
        let k2 = tower(2, 1, &["u", "t"]);
        assert_eq!(cartier(&form(&k2, "dlog(u)"), &k2.field()), Err(Error::NotTopDegree));
    }

    #[test]
    fn residues() {
        let k = tower(2, 1, &["u", "t"]);
        let r = k.field();
        let ku = tower(2, 1, &["u"]);
        let w = form(&k, "(u + u*t^-1 + t) dlog(u)^dlog(t)");
        assert_eq!(residue_step(&w, &r).unwrap(), form(&ku, "u dlog(u)"));
        assert!(residue_step(&form(&k, "t^-1 dlog(u)^dlog(t)"), &r).unwrap().is_zero());
        let k5 = tower(5, 1, &["t"]);
        let w5 = form(&k5, "(3 + 2*t + t^-1) dlog(t)");
        let res = residue_step(&w5, &k5.field()).unwrap();
        assert_eq!(res.top_coeff(&k5.field().with_depth(0)).unwrap(), Nested::Scalar(k5.field().scalars().from_int(3)));
        assert_eq!(residue_to_prime_field(&w5, &k5.field()), Ok(3));
    }

    #[test]
    fn residue_to_prime_field_examples() {
        let f2 = FieldTower::laurent(2, 1, 1, "u").unwrap().field().with_depth(0);
        assert_eq!(residue_to_prime_field(&LogForm::top(Nested::Scalar(f2.scalars().one())), &f2), Ok(1));
        let f4 = FieldTower::laurent(2, 2, 1, "u").unwrap().field().with_depth(0);
        let g = f4.scalars().generator();
        assert_eq!(residue_to_prime_field(&LogForm::top(Nested::Scalar(g)), &f4), Ok(1));
        let k = tower(2, 1, &["u"]);
        assert_eq!(residue_to_prime_field(&form(&k, "(u^-1 + 1 + u) dlog(u)"), &k.field()), Ok(1));
    }

    #[test]
    fn r_b_examples() {
        let k = tower(2, 1, &["u", "t"]);
        let r = k.field();
        let ku = tower(2, 1, &["u"]);
        let x = WindowedForm::new(form(&k, "u dlog(u)^dlog(t)"), 0, -1, &r).unwrap();
        assert_eq!(r_b(&x, 0, &r).unwrap(), form(&ku, "u dlog(u)"));
        let x = WindowedForm::new(form(&k, "(u^2 + u*t^-1) dlog(u)^dlog(t)"), 1, -1, &r).unwrap();
        assert_eq!(r_b(&x, 1, &r).unwrap(), form(&ku, "u dlog(u)"));
        assert_eq!(r_b(&x, 0, &r), Err(Error::WindowTooWide { width: 2, b: 0 }));
        let x = WindowedForm::new(form(&k, "u*t^-1 dlog(u)^dlog(t)"), 1, -1, &r).unwrap();
        assert!(r_b(&x, 1, &r).unwrap().is_zero());
    }

    #[test]
    fn duality_small_case() {
        let k = tower(2, 1, &["u", "t"]);
        let (mat, rows, cols) = duality_matrix(&k, 2, 1, 0, 1, 1).unwrap();
        assert_eq!(mat.len(), 2);
        assert_eq!(rows, vec!["t^-2 dlog(u)", "t^-2 dlog(t)"]);
        assert_eq!(cols, vec!["t^2 dlog(u)", "t^2 dlog(t)"]);
        let f = k.field().with_depth(1);
        assert_eq!(matrix_rank(&mat, &f), Ok(2));
        assert!(matches!(duality_matrix(&k, 2, 1, 0, 1, 0), Err(Error::DegreeMismatch(_))));
        assert!(matches!(duality_matrix(&k, 3, 1, 0, 1, 1), Err(Error::WindowTooWide { .. })));
    }

    #[test]
    fn render_round_trip() {
        let k = tower(3, 1, &["t"]);
        let r = k.field();
        let w = WindowedForm::new(form(&k, "2*t^-2 dlog(t)"), 2, 0, &r).unwrap();
        assert_eq!(w.render(&k), "2*t^-2 dlog(t) | window(2,0)");
        let k2 = tower(2, 1, &["u", "t"]);
        let w = WindowedForm::new(form(&k2, "u*t^-2 dlog(u)"), 2, 1, &k2.field()).unwrap();
        assert_eq!(w.render(&k2), "u*t^-2 dlog(u) | window(2,1)");
        let z = WindowedForm::new(LogForm::zero(2, 1), 3, 1, &k2.field()).unwrap();
        assert_eq!(z.render(&k2), "0 | window(3,1)");
        let text = "(t^-3 + t^-2) dlog(t) | window(3,1)";
        let k1 = tower(2, 1, &["t"]);
        let (f, win) = parse_form(text, &k1).unwrap();
        assert_eq!(win, Some((3, 1)));
        assert_eq!(WindowedForm::new(f, 3, 1, &k1.field()).unwrap().render(&k1), text);
    }
}
