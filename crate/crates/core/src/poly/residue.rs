use super::{inverse_mod, is_irreducible, PolyError, Polynomial};

/// Arithmetic in F_q[x]/(π) for a monic irreducible π.
#[derive(Clone, Debug)]
pub struct ResidueField {
    modulus: Polynomial,
    /// log_2 of the field size in characteristic 2.
    bits: u32,
    /// Field size, when it fits.
    size: Option<u128>,
}

impl ResidueField {
    pub fn new(pi: &Polynomial) -> Result<ResidueField, PolyError> {
        if !pi.is_monic() || pi.degree().unwrap_or(0) == 0 || !is_irreducible(pi) {
            return Err(PolyError::NotIrreducible(pi.to_string()));
        }
        Ok(Self::new_unchecked(pi))
    }

    pub(crate) fn new_unchecked(pi: &Polynomial) -> ResidueField {
        let f = pi.field();
        let d = pi.degree().expect("nonzero") as u32;
        let size = (f.q() as u128).checked_pow(d);
        ResidueField { modulus: pi.clone(), bits: f.e() * d, size }
    }

    pub fn modulus(&self) -> &Polynomial {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn reduce(&self, a: &Polynomial) -> Polynomial {
        a.rem(&self.modulus)
    }

    pub fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.add(b).rem(&self.modulus)
    }

    pub fn sub(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.sub(b).rem(&self.modulus)
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.mul(b).rem(&self.modulus)
    }

    pub fn inv(&self, a: &Polynomial) -> Result<Polynomial, PolyError> {
        inverse_mod(a, &self.modulus).ok_or_else(|| PolyError::NotInvertible(a.to_string()))
    }

    pub fn pow(&self, a: &Polynomial, mut k: u128) -> Polynomial {
        let mut base = self.reduce(a);
        let mut acc = Polynomial::one(a.field());
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_square(&self, a: &Polynomial) -> Result<bool, PolyError> {
        let a = self.reduce(a);
        if a.is_zero() || a.field().p() == 2 {
            return Ok(true);
        }
        let size = self.size.ok_or(PolyError::ResidueFieldTooLarge)?;
        Ok(self.pow(&a, (size - 1) / 2).is_one())
    }

    /// A square root. Characteristic 2: the unique root a^(Q/2), computed by
    /// repeated squaring. Odd characteristic: Tonelli-Shanks.
    pub fn sqrt(&self, a: &Polynomial) -> Result<Polynomial, PolyError> {
        let a = self.reduce(a);
        if a.is_zero() {
            return Ok(a);
        }
        if a.field().p() == 2 {
            let mut s = a;
            for _ in 1..self.bits {
                s = self.mul(&s, &s);
            }
            return Ok(s);
        }
        let size = self.size.ok_or(PolyError::ResidueFieldTooLarge)?;
        if !self.pow(&a, (size - 1) / 2).is_one() {
            return Err(PolyError::NotASquare(a.to_string()));
        }
        let mut t = size - 1;
        let mut s = 0u32;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        // A non-residue: scan small polynomials in a fixed order.
        let field = a.field().clone();
        let z = (1..)
            .map(|n: u64| {
                let mut digits = Vec::new();
                let mut m = n;
                while m > 0 {
                    digits.push((m % field.q() as u64) as u16);
                    m /= field.q() as u64;
                }
                Polynomial::from_raw(&field, digits).rem(&self.modulus)
            })
            .find(|z| !z.is_zero() && !self.pow(z, (size - 1) / 2).is_one())
            .expect("non-residues exist");
        let mut m = s;
        let mut c = self.pow(&z, t);
        let mut tt = self.pow(&a, t);
        let mut r = self.pow(&a, t.div_ceil(2));
        while !tt.is_one() {
            let mut i = 0;
            let mut t2 = tt.clone();
            while !t2.is_one() {
                t2 = self.mul(&t2, &t2);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = self.mul(&b, &b);
            }
            m = i;
            c = self.mul(&b, &b);
            tt = self.mul(&tt, &c);
            r = self.mul(&r, &b);
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    #[test]
    fn char2_sqrt() {
        let f2 = FieldSpec::of_order(2).unwrap();
        let rf = ResidueField::new(&Polynomial::from_ints(&f2, &[1, 1, 1])).unwrap();
        let x = Polynomial::x(&f2);
        assert_eq!(rf.sqrt(&x).unwrap(), Polynomial::from_ints(&f2, &[1, 1]));
        let one = Polynomial::one(&f2);
        assert_eq!(rf.sqrt(&one).unwrap(), one);
    }

    #[test]
    fn odd_char_arithmetic() {
        let f3 = FieldSpec::of_order(3).unwrap();
        let rf = ResidueField::new(&Polynomial::from_ints(&f3, &[1, 0, 1])).unwrap();
        let x = Polynomial::x(&f3);
        assert_eq!(rf.mul(&x, &x), Polynomial::from_ints(&f3, &[2]));
        let one = Polynomial::one(&f3);
        assert_eq!(rf.sqrt(&one).unwrap().pow(2).rem(rf.modulus()), one);
        // Every element of F_9 = F_3[x]/(x^2+1) squares back.
        for a in 0..3 {
            for b in 0..3 {
                let e = Polynomial::from_ints(&f3, &[a, b]);
                let sq = rf.mul(&e, &e);
                let r = rf.sqrt(&sq).unwrap();
                assert_eq!(rf.mul(&r, &r), sq);
            }
        }
        assert!(rf.inv(&Polynomial::zero(&f3)).is_err());
    }

    #[test]
    fn rejects_reducible() {
        let f2 = FieldSpec::of_order(2).unwrap();
        assert!(ResidueField::new(&Polynomial::from_ints(&f2, &[1, 0, 1])).is_err());
    }
}
