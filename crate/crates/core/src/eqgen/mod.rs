//! Defining equations of the compositum from the primitive element
//! `y = Σ y_i` (odd characteristic) or `y = Π y_i` (characteristic 2).
//!
//! The algebra `k[y_1..y_n] / (y_i^2 - f_i)` (resp. `y_i^2 - y_i - f_i`) is
//! represented by coefficient vectors over the 2^n square-free monomials,
//! indexed by bitmask. The coefficient ring is abstract so the same
//! expansion runs on concrete rational functions and on indeterminates.

pub mod generic;

use std::fmt;

use thiserror::Error;

use crate::compositum::CompositumSpec;
use crate::poly::{Polynomial, RationalFunction};
use crate::quad::Mode;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EqGenError {
    #[error("coefficient of Y^{degree} keeps the monomial y-mask {mask:#b} after expansion")]
    ResidualMonomial { degree: usize, mask: usize },
    #[error("n = {0} is outside the supported range 1..=4")]
    BadArity(usize),
}

/// Commutative ring operations needed by the expansion.
pub trait Coefficient: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self {
        self.zero_like().sub(self)
    }
}

impl Coefficient for RationalFunction {
    fn zero_like(&self) -> Self {
        RationalFunction::zero(self.field())
    }
    fn one_like(&self) -> Self {
        RationalFunction::one(self.field())
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RationalFunction::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RationalFunction::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RationalFunction::mul(self, other)
    }
    fn neg(&self) -> Self {
        RationalFunction::neg(self)
    }
}

/// Multiplication context: the relations `y_i^2 = f_i` or `y_i^2 = y_i + f_i`.
#[derive(Clone, Debug)]
pub struct Algebra<C: Coefficient> {
    n: usize,
    mode: Mode,
    /// `fprod[S] = Π_{i ∈ S} f_i`.
    fprod: Vec<C>,
}

/// Element `Σ_m c_m y^m` of the algebra, `m` a bitmask.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<C: Coefficient> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> Algebra<C> {
    pub fn new(mode: Mode, f: &[C]) -> Result<Algebra<C>, EqGenError> {
        let n = f.len();
        if n == 0 || n > 4 {
            return Err(EqGenError::BadArity(n));
        }
        let one = f[0].one_like();
        let mut fprod = vec![one; 1 << n];
        for s in 1usize..(1 << n) {
            let low = s.trailing_zeros() as usize;
            fprod[s] = fprod[s & (s - 1)].mul(&f[low]);
        }
        Ok(Algebra { n, mode, fprod })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> AlgebraElement<C> {
        AlgebraElement { coeffs: vec![self.fprod[0].zero_like(); 1 << self.n] }
    }

    pub fn scalar(&self, c: C) -> AlgebraElement<C> {
        let mut e = self.zero();
        e.coeffs[0] = c;
        e
    }

    pub fn one(&self) -> AlgebraElement<C> {
        self.scalar(self.fprod[0].clone())
    }

    /// The generator `y_i` (0-based index).
    pub fn y(&self, i: usize) -> AlgebraElement<C> {
        let mut e = self.zero();
        e.coeffs[1 << i] = self.fprod[0].clone();
        e
    }

    pub fn add(&self, a: &AlgebraElement<C>, b: &AlgebraElement<C>) -> AlgebraElement<C> {
        AlgebraElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.add(y)).collect() }
    }

    pub fn sub(&self, a: &AlgebraElement<C>, b: &AlgebraElement<C>) -> AlgebraElement<C> {
        AlgebraElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.sub(y)).collect() }
    }

    pub fn neg(&self, a: &AlgebraElement<C>) -> AlgebraElement<C> {
        AlgebraElement { coeffs: a.coeffs.iter().map(|x| x.neg()).collect() }
    }

    /// Product with eager reduction of squares.
    pub fn mul(&self, a: &AlgebraElement<C>, b: &AlgebraElement<C>) -> AlgebraElement<C> {
        let mut out = self.zero();
        for (m1, c1) in a.coeffs.iter().enumerate() {
            if c1.is_zero() {
                continue;
            }
            for (m2, c2) in b.coeffs.iter().enumerate() {
                if c2.is_zero() {
                    continue;
                }
                let c = c1.mul(c2);
                let common = m1 & m2;
                let base = m1 ^ m2;
                match self.mode {
                    Mode::Kummer => {
                        let t = c.mul(&self.fprod[common]);
                        out.coeffs[base] = out.coeffs[base].add(&t);
                    }
                    Mode::ArtinSchreier => {
                        // Π_{i ∈ common} (y_i + f_i) = Σ_{T ⊆ common} f_{common \ T} y^T.
                        let mut t = common;
                        loop {
                            let term = c.mul(&self.fprod[common & !t]);
                            out.coeffs[base | t] = out.coeffs[base | t].add(&term);
                            if t == 0 {
                                break;
                            }
                            t = (t - 1) & common;
                        }
                    }
                }
            }
        }
        out
    }

    /// The primitive element `Σ y_i` or `Π y_i`.
    pub fn primitive_element(&self) -> AlgebraElement<C> {
        match self.mode {
            Mode::Kummer => (0..self.n).fold(self.zero(), |acc, i| self.add(&acc, &self.y(i))),
            Mode::ArtinSchreier => (0..self.n).fold(self.one(), |acc, i| self.mul(&acc, &self.y(i))),
        }
    }

    /// Conjugates `σ_I(y)`, indexed by the bitmask `I` of generators moved:
    /// `y_i ↦ -y_i` (odd) or `y_i ↦ y_i + 1` (even) for `i ∈ I`.
    pub fn conjugates(&self) -> Vec<AlgebraElement<C>> {
        (0usize..(1 << self.n))
            .map(|mask| match self.mode {
                Mode::Kummer => (0..self.n).fold(self.zero(), |acc, i| {
                    let yi = self.y(i);
                    if mask >> i & 1 == 1 {
                        self.sub(&acc, &yi)
                    } else {
                        self.add(&acc, &yi)
                    }
                }),
                Mode::ArtinSchreier => (0..self.n).fold(self.one(), |acc, i| {
                    let yi = self.y(i);
                    let factor = if mask >> i & 1 == 1 { self.add(&yi, &self.one()) } else { yi };
                    self.mul(&acc, &factor)
                }),
            })
            .collect()
    }

    /// `Π_I (Y - σ_I(y))`, ascending in Y, checked to have scalar coefficients.
    pub fn minimal_polynomial(&self) -> Result<Vec<C>, EqGenError> {
        let mut poly: Vec<AlgebraElement<C>> = vec![self.one()];
        for c in self.conjugates() {
            let mut next = vec![self.zero(); poly.len() + 1];
            for (k, a) in poly.iter().enumerate() {
                next[k + 1] = self.add(&next[k + 1], a);
                next[k] = self.sub(&next[k], &self.mul(&c, a));
            }
            poly = next;
        }
        poly.into_iter()
            .enumerate()
            .map(|(degree, e)| {
                if let Some(mask) = (1..e.coeffs.len()).find(|&m| !e.coeffs[m].is_zero()) {
                    return Err(EqGenError::ResidualMonomial { degree, mask });
                }
                Ok(e.coeffs.into_iter().next().expect("nonempty"))
            })
            .collect()
    }

    /// `P(y)` evaluated in the algebra by Horner's rule.
    pub fn evaluate_at_primitive(&self, coeffs: &[C]) -> AlgebraElement<C> {
        let y = self.primitive_element();
        let mut acc = self.zero();
        for c in coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, &y), &self.scalar(c.clone()));
        }
        acc
    }
}

impl<C: Coefficient> AlgebraElement<C> {
    pub fn coefficient(&self, mask: usize) -> &C {
        &self.coeffs[mask]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// Monic `P(Y) ∈ k[Y]` of degree 2^n with `P(y) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct DefiningEquation {
    /// Ascending in Y; the last entry is 1.
    pub coeffs: Vec<RationalFunction>,
}

impl DefiningEquation {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Bivariate export: `P` multiplied by the lcm of the coefficient
    /// denominators, as `(Y-degree, x-degree, coefficient)` triples.
    pub fn bivariate(&self) -> (Polynomial, Vec<(usize, usize, String)>) {
        let field = self.coeffs[0].field().clone();
        let mut lcm = Polynomial::one(&field);
        for c in &self.coeffs {
            let d = c.denominator();
            let g = crate::poly::gcd_monic(&lcm, d);
            lcm = lcm.mul(&d.div_exact(&g));
        }
        let mut table = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            let scaled = c.numerator().mul(&lcm.div_exact(c.denominator()));
            for (j, a) in scaled.coefficients().iter().enumerate() {
                if !a.is_zero() {
                    table.push((i, j, a.to_string()));
                }
            }
        }
        (lcm, table)
    }
}

impl fmt::Display for DefiningEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "Y".to_string(),
                _ => format!("Y^{k}"),
            };
            let cs = c.to_string();
            parts.push(if k == 0 {
                cs
            } else if c.is_one() {
                mono
            } else if cs.contains(' ') || cs.contains('/') {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            });
        }
        f.write_str(&parts.join(" + "))
    }
}

fn algebra(spec: &CompositumSpec) -> Algebra<RationalFunction> {
    Algebra::new(spec.mode(), spec.generators()).expect("spec arity is 1..=4")
}

/// The 2^n conjugates of the primitive element.
pub fn primitive_conjugates(spec: &CompositumSpec) -> Vec<AlgebraElement<RationalFunction>> {
    algebra(spec).conjugates()
}

pub fn minimal_polynomial(spec: &CompositumSpec) -> Result<DefiningEquation, EqGenError> {
    Ok(DefiningEquation { coeffs: algebra(spec).minimal_polynomial()? })
}

/// True iff `P(y) = 0` for the primitive element of `spec`.
pub fn verify_membership(eq: &DefiningEquation, spec: &CompositumSpec) -> bool {
    algebra(spec).evaluate_at_primitive(&eq.coeffs).is_zero()
}
