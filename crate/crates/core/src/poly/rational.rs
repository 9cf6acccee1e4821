use std::fmt;
use std::hash::{Hash, Hasher};

use super::{gcd_monic, Place, PolyError, Polynomial, ResidueElement};
use crate::gf::{FieldElement, FieldSpec};

/// Element of F_q(x) kept reduced: numerator and denominator coprime,
/// denominator monic. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl Hash for RationalFunction {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<RationalFunction, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Polynomial, den: Polynomial) -> RationalFunction {
        let field = num.field().clone();
        if num.is_zero() {
            return RationalFunction { num, den: Polynomial::one(&field) };
        }
        let g = gcd_monic(&num, &den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        let lc = den.lc_raw();
        if lc == 1 {
            RationalFunction { num, den }
        } else {
            let inv = field.inv(lc).expect("nonzero");
            RationalFunction { num: num.scale_raw(inv), den: den.scale_raw(inv) }
        }
    }

    pub fn from_poly(p: Polynomial) -> RationalFunction {
        let one = Polynomial::one(p.field());
        RationalFunction { num: p, den: one }
    }

    pub fn zero(field: &FieldSpec) -> RationalFunction {
        Self::from_poly(Polynomial::zero(field))
    }

    pub fn one(field: &FieldSpec) -> RationalFunction {
        Self::from_poly(Polynomial::one(field))
    }

    pub fn x(field: &FieldSpec) -> RationalFunction {
        Self::from_poly(Polynomial::x(field))
    }

    pub fn constant(a: &FieldElement) -> RationalFunction {
        Self::from_poly(Polynomial::constant(a))
    }

    pub fn field(&self) -> &FieldSpec {
        self.num.field()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    /// The value when the function is constant.
    pub fn constant_value(&self) -> Option<FieldElement> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        if self.den == other.den {
            return Self::reduce(self.num.add(&other.num), self.den.clone());
        }
        let n = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::reduce(n, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field());
        }
        // Cross-cancel first to keep intermediate degrees small.
        let g1 = gcd_monic(&self.num, &other.den);
        let g2 = gcd_monic(&other.num, &self.den);
        let n = self.num.div_exact(&g1).mul(&other.num.div_exact(&g2));
        let d = self.den.div_exact(&g2).mul(&other.den.div_exact(&g1));
        let lc = d.lc_raw();
        let inv = self.field().inv(lc).expect("nonzero");
        RationalFunction { num: n.scale_raw(inv), den: d.scale_raw(inv) }
    }

    pub fn scale(&self, a: &FieldElement) -> RationalFunction {
        if a.is_zero() {
            return Self::zero(self.field());
        }
        RationalFunction { num: self.num.scale(a), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<RationalFunction, PolyError> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction, PolyError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, k: i64) -> Result<RationalFunction, PolyError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs();
        Ok(RationalFunction { num: base.num.pow(e), den: base.den.pow(e) })
    }

    /// Valuation at a place. Errors on the zero function.
    pub fn valuation(&self, place: &Place) -> Result<i64, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroValuation);
        }
        Ok(match place {
            Place::Infinity => self.den.deg_i() - self.num.deg_i(),
            Place::Finite(pi) => self.num.multiplicity(pi) as i64 - self.den.multiplicity(pi) as i64,
        })
    }

    /// Image in the residue field of `place`.
    pub fn evaluate(&self, place: &Place) -> Result<ResidueElement, PolyError> {
        let field = self.field();
        match place {
            Place::Infinity => {
                let (dn, dd) = (self.num.deg_i(), self.den.deg_i());
                if dn > dd {
                    return Err(PolyError::Pole(place.to_string()));
                }
                let v = if dn < dd { field.zero() } else { self.num.leading_coeff() };
                Ok(ResidueElement::Infinity(v))
            }
            Place::Finite(pi) => {
                let d = self.den.rem(pi);
                let n = self.num.rem(pi);
                if d.is_zero() {
                    return Err(PolyError::Pole(place.to_string()));
                }
                let inv = super::inverse_mod(&d, pi).expect("pi irreducible");
                Ok(ResidueElement::Finite { modulus: pi.clone(), value: n.mul(&inv).rem(pi) })
            }
        }
    }

    /// Value at `x = a`, or `None` at a pole.
    pub fn value_at(&self, a: &FieldElement) -> Option<FieldElement> {
        let f = self.field();
        let d = self.den.eval_raw(a.raw());
        f.div(self.num.eval_raw(a.raw()), d).map(|r| f.element_raw(r))
    }

    /// `self(a*x + b)`.
    pub fn compose_affine(&self, a: &FieldElement, b: &FieldElement) -> RationalFunction {
        Self::reduce(self.num.compose_affine(a, b), self.den.compose_affine(a, b))
    }

    /// Image under a field automorphism acting on coefficients (a ↦ a^(p^k)).
    pub fn frobenius_coeffs(&self, k: u32) -> RationalFunction {
        let field = self.field();
        let e = field.p().pow(k) as u64;
        let map = |p: &Polynomial| {
            Polynomial::from_raw(field, p.raw_coeffs().iter().map(|&c| field.pow_raw(c, e)).collect())
        };
        Self::reduce(map(&self.num), map(&self.den))
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction::from_poly(p)
    }
}

fn wrap(p: &Polynomial) -> String {
    let s = p.to_string();
    if p.term_count() > 1 {
        format!("({s})")
    } else {
        s
    }
}

/// Canonical rendering: `num`, or `num/den` with parentheses around
/// multi-term parts, e.g. `(x^2 + 2*x + 1)/x` or `1/(x^2 + x)`.
impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return f.write_str(&self.num.to_string());
        }
        let den = self.den.to_string();
        let den = if self.den.term_count() > 1 || den.contains('*') { format!("({den})") } else { den };
        write!(f, "{}/{}", wrap(&self.num), den)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}
