use std::cmp::Ordering;
use std::fmt;

use super::{is_irreducible, PolyError, Polynomial};
use crate::gf::{FieldElement, FieldSpec};

/// A closed point of the projective line over F_q.
///
/// Ordered by degree, then by the coefficients of π from the top; the
/// infinite place sorts last.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(Polynomial),
    Infinity,
}

impl Place {
    /// Checked constructor for a finite place.
    pub fn finite(pi: Polynomial) -> Result<Place, PolyError> {
        if pi.is_monic() && pi.degree().unwrap_or(0) >= 1 && is_irreducible(&pi) {
            Ok(Place::Finite(pi))
        } else {
            Err(PolyError::NotIrreducible(pi.to_string()))
        }
    }

    /// The rational place `x - a`.
    pub fn linear(a: &FieldElement) -> Place {
        Place::Finite(Polynomial::linear(a))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Infinity => 1,
            Place::Finite(pi) => pi.degree().unwrap_or(0),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    /// The point `a` of a finite rational place `x - a`.
    pub fn root(&self) -> Option<FieldElement> {
        match self {
            Place::Finite(pi) if pi.degree() == Some(1) => Some(pi.coeff(0).neg()),
            _ => None,
        }
    }

    pub fn polynomial(&self) -> Option<&Polynomial> {
        match self {
            Place::Finite(pi) => Some(pi),
            Place::Infinity => None,
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
            (Place::Infinity, _) => Ordering::Greater,
            (_, Place::Infinity) => Ordering::Less,
            (Place::Finite(a), Place::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => f.write_str("inf"),
            Place::Finite(pi) => write!(f, "{pi}"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Place({self})")
    }
}

/// Element of the residue field at a place: a reduced polynomial modulo π
/// for finite places, a constant at infinity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ResidueElement {
    Finite { modulus: Polynomial, value: Polynomial },
    Infinity(FieldElement),
}

impl ResidueElement {
    /// The value as an element of F_q when it lies there (always the case at
    /// rational places).
    pub fn as_field_element(&self) -> Option<FieldElement> {
        match self {
            ResidueElement::Infinity(a) => Some(a.clone()),
            ResidueElement::Finite { value, .. } => value.is_constant().then(|| value.coeff(0)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ResidueElement::Infinity(a) => a.is_zero(),
            ResidueElement::Finite { value, .. } => value.is_zero(),
        }
    }
}

/// The q + 1 rational places: `x + c` for every c in encoding order, then infinity.
pub fn rational_places(field: &FieldSpec) -> Vec<Place> {
    let mut v: Vec<Place> = field
        .elements()
        .map(|c| Place::Finite(Polynomial::from_raw(field, vec![c.raw(), 1])))
        .collect();
    v.push(Place::Infinity);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_place_lists() {
        let f3 = FieldSpec::of_order(3).unwrap();
        let names: Vec<String> = rational_places(&f3).iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["x", "x + 1", "x + 2", "inf"]);
        assert_eq!(rational_places(&FieldSpec::of_order(2).unwrap()).len(), 3);
        assert_eq!(rational_places(&FieldSpec::of_order(8).unwrap()).len(), 9);
        let mut sorted = rational_places(&f3);
        sorted.reverse();
        sorted.sort();
        assert_eq!(sorted, rational_places(&f3));
    }

    #[test]
    fn checked_constructor() {
        let f2 = FieldSpec::of_order(2).unwrap();
        assert!(Place::finite(Polynomial::from_ints(&f2, &[1, 1, 1])).is_ok());
        assert!(Place::finite(Polynomial::from_ints(&f2, &[1, 0, 1])).is_err());
        let p = Place::linear(&f2.one());
        assert_eq!(p.root(), Some(f2.one()));
    }
}
