//! Finite fields `F_q` and Galois rings `W_s(F_q)`.
//!
//! Both are `(Z/p^s)[x]/(f)` for a fixed monic `f` of degree `k`; the finite
//! field is the `s = 1` case. Elements are plain coefficient arrays and all
//! arithmetic goes through the [`GaloisRing`] that owns the modulus.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported extension degree `k`.
pub const MAX_DEGREE: usize = 4;

/// Defining polynomials, ascending coefficients, monic. These are the Conway
/// polynomials for the supported `(p, k)`.
const DEFINING_POLYNOMIALS: &[(u32, usize, &[u32])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
];

/// Looks up the fixed defining polynomial for `F_{p^k}`.
pub fn defining_polynomial(p: u32, k: usize) -> Option<&'static [u32]> {
    DEFINING_POLYNOMIALS
        .iter()
        .find(|(q, d, _)| *q == p && *d == k)
        .map(|(_, _, f)| *f)
}

/// An element of a Galois ring: polynomial coefficients of degree `< k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar(pub(crate) [u32; MAX_DEGREE]);

impl Scalar {
    pub const ZERO: Scalar = Scalar([0; MAX_DEGREE]);

    pub fn coefficients(&self) -> &[u32; MAX_DEGREE] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `(Z/p^s)[x]/(f)` with `f` the table polynomial for `(p, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaloisRing {
    p: u32,
    k: usize,
    s: u32,
    modulus: u32,
    poly: [u32; MAX_DEGREE + 1],
}

impl GaloisRing {
    pub fn new(p: u32, k: usize, s: u32) -> Result<Self> {
        let f = defining_polynomial(p, k).ok_or_else(|| {
            Error::InvalidTower(format!("no defining polynomial for p = {p}, k = {k}"))
        })?;
        if s == 0 || s > 6 {
            return Err(Error::InvalidTower(format!("length s = {s} out of range")));
        }
        let mut poly = [0; MAX_DEGREE + 1];
        poly[..f.len()].copy_from_slice(f);
        Ok(GaloisRing {
            p,
            k,
            s,
            modulus: p.pow(s),
            poly,
        })
    }

    /// The finite field `F_{p^k}`.
    pub fn field(p: u32, k: usize) -> Result<Self> {
        Self::new(p, k, 1)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Witt length `s`; the ring has characteristic `p^s`.
    pub fn length(&self) -> u32 {
        self.s
    }

    pub fn characteristic(&self) -> u32 {
        self.modulus
    }

    pub fn is_field(&self) -> bool {
        self.s == 1
    }

    /// Same `(p, k)` with a different length.
    pub fn with_length(&self, s: u32) -> GaloisRing {
        GaloisRing::new(self.p, self.k, s).expect("table entry already validated")
    }

    pub fn zero(&self) -> Scalar {
        Scalar::ZERO
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    /// The class of `x`, i.e. the literal `g`.
    pub fn generator(&self) -> Scalar {
        if self.k == 1 {
            // x + c = 0
            self.from_int(-(self.poly[0] as i64))
        } else {
            let mut c = [0; MAX_DEGREE];
            c[1] = 1;
            Scalar(c)
        }
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        let mut c = [0; MAX_DEGREE];
        c[0] = n.rem_euclid(self.modulus as i64) as u32;
        Scalar(c)
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let mut c = [0; MAX_DEGREE];
        for i in 0..self.k {
            c[i] = (a.0[i] + b.0[i]) % self.modulus;
        }
        Scalar(c)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        let mut c = [0; MAX_DEGREE];
        for i in 0..self.k {
            c[i] = (self.modulus - a.0[i]) % self.modulus;
        }
        Scalar(c)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let m = self.modulus as u64;
        let k = self.k;
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..k {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + a.0[i] as u64 * b.0[j] as u64) % m;
            }
        }
        // x^k = -(f_0 + ... + f_{k-1} x^{k-1})
        for d in (k..2 * k).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..k {
                let sub = c * self.poly[i] as u64 % m;
                prod[d - k + i] = (prod[d - k + i] + m - sub) % m;
            }
        }
        let mut out = [0; MAX_DEGREE];
        for i in 0..k {
            out[i] = prod[i] as u32;
        }
        Scalar(out)
    }

    pub fn mul_int(&self, a: &Scalar, n: i64) -> Scalar {
        self.mul(a, &self.from_int(n))
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Order of the unit group of the residue field, `q - 1`.
    fn residue_units(&self) -> u64 {
        (self.p as u64).pow(self.k as u32) - 1
    }

    /// Reduction modulo `p`, as an element of the residue field.
    pub fn residue(&self, a: &Scalar) -> Scalar {
        let mut c = a.0;
        for x in c.iter_mut() {
            *x %= self.p;
        }
        Scalar(c)
    }

    /// Reinterprets an element of another ring with the same `(p, k)` by
    /// reducing its coefficients; used for reduction `W_s(F_q) -> F_q` and for
    /// coefficientwise lifts in the other direction.
    pub fn coerce(&self, a: &Scalar) -> Scalar {
        let mut c = a.0;
        for x in c.iter_mut() {
            *x %= self.modulus;
        }
        Scalar(c)
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        !self.residue(a).is_zero()
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if !self.is_unit(a) {
            return Err(if a.is_zero() {
                Error::ZeroInput
            } else {
                Error::NotInvertible(format!("{a:?} is divisible by p"))
            });
        }
        // inverse mod p via Fermat in the residue field, then Newton lifting
        let field = self.with_length(1);
        let mut y = self.coerce(&field.pow(&field.residue(a), self.residue_units() - 1));
        let two = self.from_int(2);
        for _ in 0..self.s {
            let ay = self.mul(a, &y);
            y = self.mul(&y, &self.sub(&two, &ay));
        }
        debug_assert_eq!(self.mul(a, &y), self.one());
        Ok(y)
    }

    /// `a^p`. In the field this is the Frobenius automorphism.
    pub fn frobenius(&self, a: &Scalar) -> Scalar {
        self.pow(a, self.p as u64)
    }

    /// The unique `p`-th root in `F_q`; only meaningful for `s = 1`.
    pub fn pth_root(&self, a: &Scalar) -> Result<Scalar> {
        if !self.is_field() {
            return Err(Error::NoPthRoot);
        }
        Ok(self.pow(a, (self.p as u64).pow(self.k as u32 - 1)))
    }

    /// Trace down to `Z/p^s`, returned as an integer in `[0, p^s)`.
    pub fn trace(&self, a: &Scalar) -> u32 {
        // trace of multiplication by a on the basis 1, x, ..., x^{k-1}
        let m = self.modulus;
        let mut t = 0u32;
        for i in 0..self.k {
            let mut basis = [0; MAX_DEGREE];
            basis[i] = 1;
            let col = self.mul(a, &Scalar(basis));
            t = (t + col.0[i]) % m;
        }
        t
    }

    /// Integer value of an element of the prime subring, if it lies there.
    pub fn as_int(&self, a: &Scalar) -> Option<u32> {
        if a.0[1..].iter().all(|&c| c == 0) {
            Some(a.0[0])
        } else {
            None
        }
    }

    /// All elements of the ring, in lexicographic coefficient order.
    pub fn elements(&self) -> Vec<Scalar> {
        let total = (self.modulus as usize).pow(self.k as u32);
        (0..total)
            .map(|mut idx| {
                let mut c = [0; MAX_DEGREE];
                for slot in c.iter_mut().take(self.k) {
                    *slot = (idx % self.modulus as usize) as u32;
                    idx /= self.modulus as usize;
                }
                Scalar(c)
            })
            .collect()
    }

    /// Builds an element from explicit coefficients (reduced).
    pub fn from_coefficients(&self, coeffs: &[i64]) -> Scalar {
        let mut c = [0; MAX_DEGREE];
        for (i, &v) in coeffs.iter().enumerate().take(self.k) {
            c[i] = v.rem_euclid(self.modulus as i64) as u32;
        }
        Scalar(c)
    }

    /// Multiplicative order of a unit of the residue field.
    pub fn multiplicative_order(&self, a: &Scalar) -> Option<u64> {
        let field = self.with_length(1);
        let a = field.residue(a);
        if a.is_zero() {
            return None;
        }
        let one = field.one();
        let mut x = a;
        for n in 1..=self.residue_units() {
            if x == one {
                return Some(n);
            }
            x = field.mul(&x, &a);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_rings() -> Vec<GaloisRing> {
        DEFINING_POLYNOMIALS
            .iter()
            .map(|&(p, k, _)| GaloisRing::field(p, k).unwrap())
            .collect()
    }

    #[test]
    fn table_polynomials_are_primitive() {
        // x of order q - 1 forces the quotient ring to be a field
        for f in all_rings() {
            let q = (f.p() as u64).pow(f.degree() as u32);
            assert_eq!(
                f.multiplicative_order(&f.generator()),
                Some(q - 1),
                "p={} k={}",
                f.p(),
                f.degree()
            );
        }
    }

    #[test]
    fn inverses_in_fields_and_rings() {
        for (p, k) in [(2, 2), (3, 2), (5, 1), (2, 3)] {
            for s in 1..=3 {
                let r = GaloisRing::new(p, k, s).unwrap();
                for a in r.elements() {
                    if r.is_unit(&a) {
                        assert_eq!(r.mul(&a, &r.inv(&a).unwrap()), r.one());
                    } else {
                        assert!(r.inv(&a).is_err());
                    }
                }
            }
        }
    }

    #[test]
    fn f4_generator_trace_is_one() {
        let f4 = GaloisRing::field(2, 2).unwrap();
        let g = f4.generator();
        // direct: g + g^2 = g + (g + 1) = 1
        let direct = f4.add(&g, &f4.mul(&g, &g));
        assert_eq!(direct, f4.one());
        assert_eq!(f4.trace(&g), 1);
    }

    #[test]
    fn trace_matches_frobenius_sum() {
        for f in all_rings() {
            for a in f.elements() {
                let mut sum = f.zero();
                let mut x = a;
                for _ in 0..f.degree() {
                    sum = f.add(&sum, &x);
                    x = f.frobenius(&x);
                }
                assert_eq!(f.as_int(&sum), Some(f.trace(&a)));
            }
        }
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        for f in all_rings() {
            for a in f.elements() {
                assert_eq!(f.frobenius(&f.pth_root(&a).unwrap()), a);
            }
        }
    }

    #[test]
    fn reduction_commutes_with_ring_operations() {
        let r = GaloisRing::new(3, 2, 3).unwrap();
        let f = r.with_length(1);
        let elems: Vec<_> = r.elements().into_iter().step_by(37).collect();
        for a in &elems {
            for b in &elems {
                assert_eq!(f.coerce(&r.add(a, b)), f.add(&f.coerce(a), &f.coerce(b)));
                assert_eq!(f.coerce(&r.mul(a, b)), f.mul(&f.coerce(a), &f.coerce(b)));
            }
        }
    }

    #[test]
    fn galois_ring_trace_reduces_to_field_trace() {
        let r = GaloisRing::new(2, 2, 2).unwrap();
        let f = r.with_length(1);
        for a in r.elements() {
            assert_eq!(r.trace(&a) % 2, f.trace(&f.coerce(&a)));
        }
    }
}
