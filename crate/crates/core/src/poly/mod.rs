//! Univariate polynomials and rational functions over a [`FieldSpec`],
//! places of the projective line, residue fields and factorization.

mod factor;
mod place;
mod rational;
mod residue;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::gf::{render_raw, FieldElement, FieldSpec, Raw};

pub use factor::{
    default_seed, distinct_degree_factorization, factor, is_irreducible, set_default_seed, squarefree_factorization,
    squarefree_part, Factorization,
};
pub use place::{rational_places, Place, ResidueElement};
pub use rational::RationalFunction;
pub use residue::ResidueField;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("valuation of the zero function is undefined")]
    ZeroValuation,
    #[error("function has a pole at {0}")]
    Pole(String),
    #[error("place {0} is not rational")]
    NotRational(String),
    #[error("{0} is not a monic irreducible polynomial")]
    NotIrreducible(String),
    #[error("{0} is not invertible in the residue field")]
    NotInvertible(String),
    #[error("{0} is not a square in the residue field")]
    NotASquare(String),
    #[error("residue field too large for exact exponentiation")]
    ResidueFieldTooLarge,
}

/// Polynomial over a finite field, coefficients lowest degree first with no
/// trailing zeros. The zero polynomial has an empty coefficient vector and
/// degree `None`.
#[derive(Clone)]
pub struct Polynomial {
    field: FieldSpec,
    c: Vec<Raw>,
}

impl Polynomial {
    pub(crate) fn from_raw(field: &FieldSpec, mut c: Vec<Raw>) -> Polynomial {
        while c.last() == Some(&0) {
            c.pop();
        }
        Polynomial { field: field.clone(), c }
    }

    pub fn zero(field: &FieldSpec) -> Polynomial {
        Polynomial { field: field.clone(), c: Vec::new() }
    }

    pub fn one(field: &FieldSpec) -> Polynomial {
        Polynomial { field: field.clone(), c: vec![1] }
    }

    pub fn x(field: &FieldSpec) -> Polynomial {
        Polynomial { field: field.clone(), c: vec![0, 1] }
    }

    pub fn constant(a: &FieldElement) -> Polynomial {
        Self::from_raw(a.field(), vec![a.raw()])
    }

    /// `a * x^k`.
    pub fn monomial(a: &FieldElement, k: usize) -> Polynomial {
        let mut c = vec![0; k + 1];
        c[k] = a.raw();
        Self::from_raw(a.field(), c)
    }

    /// From ascending coefficients.
    pub fn from_elements(field: &FieldSpec, coeffs: &[FieldElement]) -> Polynomial {
        Self::from_raw(field, coeffs.iter().map(|a| a.raw()).collect())
    }

    /// From ascending integer coefficients, read in the prime subfield.
    pub fn from_ints(field: &FieldSpec, coeffs: &[i64]) -> Polynomial {
        Self::from_raw(field, coeffs.iter().map(|&n| field.int_raw(n)).collect())
    }

    /// `x - a`.
    pub fn linear(a: &FieldElement) -> Polynomial {
        let f = a.field();
        Self::from_raw(f, vec![f.neg(a.raw()), 1])
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub(crate) fn raw_coeffs(&self) -> &[Raw] {
        &self.c
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with -1 standing in for the zero polynomial.
    pub(crate) fn deg_i(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.c.last() == Some(&1)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.field.element_raw(self.c.get(i).copied().unwrap_or(0))
    }

    pub(crate) fn coeff_raw(&self, i: usize) -> Raw {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn coefficients(&self) -> Vec<FieldElement> {
        self.c.iter().map(|&a| self.field.element_raw(a)).collect()
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading_coeff(&self) -> FieldElement {
        self.field.element_raw(self.lc_raw())
    }

    pub(crate) fn lc_raw(&self) -> Raw {
        self.c.last().copied().unwrap_or(0)
    }

    fn same(&self, other: &Polynomial) {
        assert!(self.field.same_field(&other.field), "polynomials over different fields");
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.same(other);
        let f = &self.field;
        let n = self.c.len().max(other.c.len());
        let c = (0..n).map(|i| f.add(self.coeff_raw(i), other.coeff_raw(i))).collect();
        Self::from_raw(f, c)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.same(other);
        let f = &self.field;
        let n = self.c.len().max(other.c.len());
        let c = (0..n).map(|i| f.sub(self.coeff_raw(i), other.coeff_raw(i))).collect();
        Self::from_raw(f, c)
    }

    pub fn neg(&self) -> Polynomial {
        let c = self.c.iter().map(|&a| self.field.neg(a)).collect();
        Self::from_raw(&self.field, c)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.same(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut c = vec![0 as Raw; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                if b != 0 {
                    c[i + j] = f.add(c[i + j], f.mul(a, b));
                }
            }
        }
        Self::from_raw(f, c)
    }

    pub(crate) fn scale_raw(&self, a: Raw) -> Polynomial {
        let c = self.c.iter().map(|&b| self.field.mul(a, b)).collect();
        Self::from_raw(&self.field, c)
    }

    pub fn scale(&self, a: &FieldElement) -> Polynomial {
        self.scale_raw(a.raw())
    }

    /// Multiplication by x^k.
    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.c);
        Polynomial { field: self.field.clone(), c }
    }

    pub fn pow(&self, mut k: u64) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn div_rem(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial), PolyError> {
        self.same(d);
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let f = &self.field;
        if self.c.len() < d.c.len() {
            return Ok((Self::zero(f), self.clone()));
        }
        let inv_lc = f.inv(d.lc_raw()).expect("nonzero leading coefficient");
        let dd = d.c.len() - 1;
        let mut r = self.c.clone();
        let mut qc = vec![0 as Raw; r.len() - dd];
        for k in (0..qc.len()).rev() {
            let top = r[k + dd];
            if top == 0 {
                continue;
            }
            let t = f.mul(top, inv_lc);
            qc[k] = t;
            for (i, &di) in d.c.iter().enumerate() {
                if di != 0 {
                    r[k + i] = f.sub(r[k + i], f.mul(t, di));
                }
            }
        }
        r.truncate(dd);
        Ok((Self::from_raw(f, qc), Self::from_raw(f, r)))
    }

    /// Remainder modulo a nonzero polynomial.
    pub fn rem(&self, d: &Polynomial) -> Polynomial {
        self.div_rem(d).expect("nonzero divisor").1
    }

    /// Exact quotient; panics if `d` is zero. The remainder is discarded.
    pub fn div_exact(&self, d: &Polynomial) -> Polynomial {
        self.div_rem(d).expect("nonzero divisor").0
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.field.inv(self.lc_raw()) {
            Some(i) if self.lc_raw() != 1 => self.scale_raw(i),
            _ => self.clone(),
        }
    }

    pub fn derivative(&self) -> Polynomial {
        let f = &self.field;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(f.int_raw(i as i64), a))
            .collect();
        Self::from_raw(f, c)
    }

    /// Value at a field element (Horner).
    pub fn eval(&self, a: &FieldElement) -> FieldElement {
        self.field.element_raw(self.eval_raw(a.raw()))
    }

    pub(crate) fn eval_raw(&self, a: Raw) -> Raw {
        let f = &self.field;
        self.c.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, a), c))
    }

    /// `self(a*x + b)`.
    pub fn compose_affine(&self, a: &FieldElement, b: &FieldElement) -> Polynomial {
        let lin = Self::from_raw(&self.field, vec![b.raw(), a.raw()]);
        let mut acc = Self::zero(&self.field);
        for &c in self.c.iter().rev() {
            acc = acc.mul(&lin).add(&Self::from_raw(&self.field, vec![c]));
        }
        acc
    }

    /// `g` with `g(x)^p = self` when the derivative vanishes identically.
    pub(crate) fn pth_root(&self) -> Polynomial {
        let f = &self.field;
        let p = f.p() as usize;
        let c = self.c.iter().step_by(p).map(|&a| f.proot_raw(a)).collect();
        Self::from_raw(f, c)
    }

    /// Number of times `pi` divides `self` (`self` nonzero).
    pub fn multiplicity(&self, pi: &Polynomial) -> u32 {
        let mut k = 0;
        let mut g = self.clone();
        loop {
            let (qq, r) = g.div_rem(pi).expect("nonzero");
            if !r.is_zero() || g.is_zero() {
                return k;
            }
            g = qq;
            k += 1;
        }
    }

    /// `self^k mod m`.
    pub fn pow_mod(&self, mut k: u64, m: &Polynomial) -> Polynomial {
        let mut base = self.rem(m);
        let mut acc = Self::one(&self.field).rem(m);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }
}

/// Monic gcd. Errors when both inputs are zero.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, PolyError> {
    if a.is_zero() && b.is_zero() {
        return Err(PolyError::GcdOfZeros);
    }
    Ok(gcd_monic(a, b))
}

pub(crate) fn gcd_monic(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    a.monic()
}

/// `(g, s, t)` with `s*a + t*b = g` monic (or zero when both are zero).
pub fn extended_gcd(a: &Polynomial, b: &Polynomial) -> (Polynomial, Polynomial, Polynomial) {
    let field = a.field().clone();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Polynomial::one(&field), Polynomial::zero(&field));
    let (mut t0, mut t1) = (Polynomial::zero(&field), Polynomial::one(&field));
    while !r1.is_zero() {
        let (qq, r) = r0.div_rem(&r1).expect("nonzero");
        r0 = std::mem::replace(&mut r1, r);
        let s = s0.sub(&qq.mul(&s1));
        s0 = std::mem::replace(&mut s1, s);
        let t = t0.sub(&qq.mul(&t1));
        t0 = std::mem::replace(&mut t1, t);
    }
    match field.inv(r0.lc_raw()) {
        Some(i) => (r0.scale_raw(i), s0.scale_raw(i), t0.scale_raw(i)),
        None => (r0, s0, t0),
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inverse_mod(a: &Polynomial, m: &Polynomial) -> Option<Polynomial> {
    let (g, s, _) = extended_gcd(&a.rem(m), m);
    g.is_one().then(|| s.rem(m))
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.field.same_field(&other.field)
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients compared from the top down.
impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.len().cmp(&other.c.len()).then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

/// Renders `c*x^k` terms in decreasing degree, e.g. `x^3 + 2*x + 1` or `w^3*x^2 + w`.
pub(crate) fn render_terms(field: &FieldSpec, c: &[Raw], var: &str) -> String {
    let mut parts = Vec::new();
    for (k, &a) in c.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        let coeff = render_raw(field, a);
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        parts.push(match (k, a) {
            (0, _) => coeff,
            (_, 1) => mono,
            _ => format!("{coeff}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

impl Polynomial {
    /// Number of nonzero terms.
    pub(crate) fn term_count(&self) -> usize {
        self.c.iter().filter(|&&a| a != 0).count()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(&self.field, &self.c, "x"))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u32) -> FieldSpec {
        FieldSpec::of_order(q).unwrap()
    }

    #[test]
    fn gcd_examples() {
        let f3 = f(3);
        let a = Polynomial::from_ints(&f3, &[-1, 0, 1]);
        let b = Polynomial::from_ints(&f3, &[0, 1, 1]);
        assert_eq!(poly_gcd(&a, &b).unwrap(), Polynomial::from_ints(&f3, &[1, 1]));
        let g = Polynomial::from_ints(&f3, &[2, 0, 2]);
        assert_eq!(poly_gcd(&g, &Polynomial::zero(&f3)).unwrap(), g.monic());
        let f2 = f(2);
        let a = Polynomial::from_ints(&f2, &[0, 1, 0, 1]);
        let b = Polynomial::from_ints(&f2, &[1, 0, 1]);
        assert_eq!(poly_gcd(&a, &b).unwrap(), b);
        assert_eq!(poly_gcd(&Polynomial::zero(&f2), &Polynomial::zero(&f2)), Err(PolyError::GcdOfZeros));
    }

    #[test]
    fn division_and_rendering() {
        let f3 = f(3);
        let a = Polynomial::from_ints(&f3, &[1, 2, 0, 1]);
        assert_eq!(a.to_string(), "x^3 + 2*x + 1");
        let d = Polynomial::from_ints(&f3, &[1, 1]);
        let (qq, r) = a.div_rem(&d).unwrap();
        assert_eq!(qq.mul(&d).add(&r), a);
        assert!(r.degree().is_none() || r.degree() < d.degree());
        assert_eq!(Polynomial::zero(&f3).to_string(), "0");
        let f8 = f(8);
        let w = f8.generator();
        let p = Polynomial::monomial(&w.pow(3), 2).add(&Polynomial::constant(&w));
        assert_eq!(p.to_string(), "w^3*x^2 + w");
    }

    #[test]
    fn ordering_by_degree_then_top_coefficients() {
        let f3 = f(3);
        let mut v = [
            Polynomial::from_ints(&f3, &[1, 0, 1]),
            Polynomial::from_ints(&f3, &[2, 1]),
            Polynomial::from_ints(&f3, &[0, 1]),
            Polynomial::from_ints(&f3, &[2, 1, 1]),
        ];
        v.sort();
        let s: Vec<String> = v.iter().map(|p| p.to_string()).collect();
        assert_eq!(s, ["x", "x + 2", "x^2 + 1", "x^2 + x + 2"]);
    }

    #[test]
    fn extended_gcd_identity() {
        let f4 = f(4);
        let w = f4.generator();
        let a = Polynomial::from_elements(&f4, &[w.clone(), f4.one(), f4.zero(), w.pow(2)]);
        let b = Polynomial::from_elements(&f4, &[f4.one(), w.clone(), f4.one()]);
        let (g, s, t) = extended_gcd(&a, &b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(g, poly_gcd(&a, &b).unwrap());
    }

    #[test]
    fn affine_composition() {
        let f3 = f(3);
        let p = Polynomial::from_ints(&f3, &[0, 0, 1]);
        let r = p.compose_affine(&f3.from_int(2), &f3.from_int(1));
        // (2x+1)^2 = 4x^2 + 4x + 1 = x^2 + x + 1
        assert_eq!(r, Polynomial::from_ints(&f3, &[1, 1, 1]));
    }
}
