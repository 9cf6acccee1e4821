//! One quadratic extension of F_q(x): Kummer `y^2 = f` in odd
//! characteristic, Artin-Schreier `y^2 + y = f` in characteristic 2.
//!
//! Each extension is summarized by a [`ReducedForm`] that depends only on
//! the class of `f` (modulo squares, resp. modulo `z^2 + z`). Forms of
//! products (resp. sums) are computed directly from the forms of the
//! factors, which is what the compositum and search code rely on.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::gf::{FieldElement, FieldSpec, Raw};
use crate::poly::{factor, Place, PolyError, Polynomial, RationalFunction, ResidueField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Mode {
    Kummer,
    ArtinSchreier,
}

impl Mode {
    pub fn of(field: &FieldSpec) -> Mode {
        if field.p() == 2 {
            Mode::ArtinSchreier
        } else {
            Mode::Kummer
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SplitStatus {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for SplitStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitStatus::Split => "S",
            SplitStatus::Inert => "I",
            SplitStatus::Ramified => "R",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Degeneracy {
    /// `f` is a square (resp. of the form `z^2 + z`).
    TrivialExtension,
    /// The extension only enlarges the constant field.
    ConstantFieldExtension,
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Degeneracy::TrivialExtension => "trivial extension",
            Degeneracy::ConstantFieldExtension => "constant field extension",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadError {
    #[error("degenerate quadratic extension: {0}")]
    Degenerate(Degeneracy),
    #[error("{0} mode requested over a field of characteristic {1}")]
    WrongCharacteristic(&'static str, u32),
    #[error("the zero function does not define a quadratic extension")]
    ZeroFunction,
    #[error("place {0} is not rational")]
    NotRational(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Class data of `y^2 = f`: `f = c * Π π^v` with `π` monic irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerForm {
    constant: FieldElement,
    valuations: BTreeMap<Polynomial, i64>,
}

/// Artin-Schreier normal form of `f`: the unique representative of
/// `f + {z^2 + z}` of the shape
/// `Q(x) + c + Σ_π Σ_j a_{π,j} / π^j` with `deg a_{π,j} < deg π`, nonzero
/// digits only at odd `j`, only odd-degree terms in `Q` (no constant term)
/// and `c ∈ {0, c1}` for a fixed element `c1` of trace 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinSchreierForm {
    /// `digits[π][j - 1] = a_{π,j}`; the last entry is nonzero.
    poles: BTreeMap<Polynomial, Vec<Polynomial>>,
    poly: Polynomial,
    constant: Raw,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReducedForm {
    Kummer(KummerForm),
    ArtinSchreier(ArtinSchreierForm),
}

/// A ramified place with its local datum: the reduced pole order `m_P`
/// (Artin-Schreier) or `None` (Kummer, tame).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamifiedPlace {
    pub place: Place,
    pub pole_order: Option<u32>,
}

/// A non-degenerate quadratic subfield.
#[derive(Clone, Debug)]
pub struct QuadraticCharacter {
    f: RationalFunction,
    form: ReducedForm,
    ramified: Vec<RamifiedPlace>,
    genus: u64,
}

impl KummerForm {
    pub fn of(f: &RationalFunction) -> Result<KummerForm, QuadError> {
        if f.is_zero() {
            return Err(QuadError::ZeroFunction);
        }
        let mut valuations = BTreeMap::new();
        for (p, k) in factor(f.numerator())?.factors {
            valuations.insert(p, k as i64);
        }
        if !f.denominator().is_one() {
            for (p, k) in factor(f.denominator())?.factors {
                *valuations.entry(p).or_insert(0) -= k as i64;
            }
        }
        Ok(KummerForm { constant: f.numerator().leading_coeff(), valuations })
    }

    pub fn combine(&self, other: &KummerForm) -> KummerForm {
        let mut valuations = self.valuations.clone();
        for (p, v) in &other.valuations {
            let e = valuations.entry(p.clone()).or_insert(0);
            *e += v;
            if *e == 0 {
                valuations.remove(p);
            }
        }
        KummerForm { constant: &self.constant * &other.constant, valuations }
    }

    pub fn constant(&self) -> &FieldElement {
        &self.constant
    }

    pub fn valuations(&self) -> &BTreeMap<Polynomial, i64> {
        &self.valuations
    }

    fn odd_places(&self) -> impl Iterator<Item = &Polynomial> {
        self.valuations.iter().filter(|(_, v)| *v % 2 != 0).map(|(p, _)| p)
    }

    fn infinity_odd(&self) -> bool {
        self.odd_places().map(|p| p.degree().unwrap_or(0)).sum::<usize>() % 2 == 1
    }
}

fn base_pi_digits(u: &Polynomial, pi: &Polynomial, k: usize) -> Vec<Polynomial> {
    // u = Σ_{i<k} b_i π^i; returns a with a[j-1] = b_{k-j}.
    let mut b = Vec::with_capacity(k);
    let mut rest = u.clone();
    for _ in 0..k {
        let (q, r) = rest.div_rem(pi).expect("nonzero");
        b.push(r);
        rest = q;
    }
    debug_assert!(rest.is_zero());
    (1..=k).map(|j| b[k - j].clone()).collect()
}

fn trim_digits(d: &mut Vec<Polynomial>) {
    while d.last().is_some_and(|a| a.is_zero()) {
        d.pop();
    }
}

impl ArtinSchreierForm {
    pub fn of(f: &RationalFunction) -> Result<ArtinSchreierForm, QuadError> {
        let field = f.field().clone();
        if field.p() != 2 {
            return Err(QuadError::WrongCharacteristic("Artin-Schreier", field.p()));
        }
        let den = f.denominator();
        let (q, r) = f.numerator().div_rem(den)?;
        let mut poles = BTreeMap::new();
        if !den.is_one() {
            for (pi, k) in factor(den)?.factors {
                let k = k as usize;
                let pik = pi.pow(k as u64);
                let cofactor = den.div_exact(&pik);
                let inv = crate::poly::inverse_mod(&cofactor, &pik).expect("coprime");
                let u = r.mul(&inv).rem(&pik);
                let mut digits = base_pi_digits(&u, &pi, k);
                reduce_pole(&pi, &mut digits);
                if !digits.is_empty() {
                    poles.insert(pi, digits);
                }
            }
        }
        let mut c: Vec<Raw> = q.raw_coeffs().to_vec();
        for d in (2..c.len()).rev() {
            if d % 2 == 0 && c[d] != 0 {
                let s = field.sqrt_raw(c[d]).expect("every element is a square");
                c[d] = 0;
                c[d / 2] = field.add(c[d / 2], s);
            }
        }
        let c0 = c.first().copied().unwrap_or(0);
        if let Some(first) = c.first_mut() {
            *first = 0;
        }
        let constant = if field.trace_raw(c0) == 0 { 0 } else { field.trace_one_raw() };
        Ok(ArtinSchreierForm { poles, poly: Polynomial::from_raw(&field, c), constant })
    }

    pub fn combine(&self, other: &ArtinSchreierForm) -> ArtinSchreierForm {
        let mut poles = self.poles.clone();
        for (pi, d) in &other.poles {
            let e = poles.entry(pi.clone()).or_default();
            if e.len() < d.len() {
                e.resize(d.len(), Polynomial::zero(pi.field()));
            }
            for (i, a) in d.iter().enumerate() {
                e[i] = e[i].add(a);
            }
            trim_digits(e);
            if e.is_empty() {
                poles.remove(pi);
            }
        }
        let field = self.poly.field();
        ArtinSchreierForm {
            poles,
            poly: self.poly.add(&other.poly),
            constant: field.add(self.constant, other.constant),
        }
    }

    /// Finite poles with their digit vectors.
    pub fn poles(&self) -> &BTreeMap<Polynomial, Vec<Polynomial>> {
        &self.poles
    }

    pub fn polynomial_part(&self) -> &Polynomial {
        &self.poly
    }

    pub fn constant(&self) -> FieldElement {
        self.poly.field().element_raw(self.constant)
    }

    /// The normal form as a rational function.
    pub fn to_rational(&self) -> RationalFunction {
        let field = self.poly.field();
        let mut acc = RationalFunction::from_poly(self.poly.add(&Polynomial::from_raw(field, vec![self.constant])));
        for (pi, digits) in &self.poles {
            for (i, a) in digits.iter().enumerate() {
                if !a.is_zero() {
                    let t = RationalFunction::new(a.clone(), pi.pow(i as u64 + 1)).expect("nonzero");
                    acc = acc.add(&t);
                }
            }
        }
        acc
    }
}

/// Removes the even-order digits of one pole, top down.
fn reduce_pole(pi: &Polynomial, digits: &mut Vec<Polynomial>) {
    let rf = ResidueField::new_unchecked(pi);
    let mut j = digits.len();
    while j >= 2 {
        if j.is_multiple_of(2) && !digits[j - 1].is_zero() {
            let s = rf.sqrt(&digits[j - 1]).expect("characteristic 2");
            let (b1, b0) = s.mul(&s).div_rem(pi).expect("nonzero");
            debug_assert_eq!(b0, digits[j - 1]);
            digits[j - 1] = Polynomial::zero(pi.field());
            digits[j - 2] = digits[j - 2].add(&b1);
            digits[j / 2 - 1] = digits[j / 2 - 1].add(&s);
        }
        j -= 1;
    }
    trim_digits(digits);
}

impl ReducedForm {
    /// Form of `f` for the characteristic of its field.
    pub fn of(f: &RationalFunction) -> Result<ReducedForm, QuadError> {
        if f.is_zero() && f.field().p() != 2 {
            return Err(QuadError::ZeroFunction);
        }
        Ok(match Mode::of(f.field()) {
            Mode::Kummer => ReducedForm::Kummer(KummerForm::of(f)?),
            Mode::ArtinSchreier => ReducedForm::ArtinSchreier(ArtinSchreierForm::of(f)?),
        })
    }

    pub fn mode(&self) -> Mode {
        match self {
            ReducedForm::Kummer(_) => Mode::Kummer,
            ReducedForm::ArtinSchreier(_) => Mode::ArtinSchreier,
        }
    }

    /// Form of the product (Kummer) or sum (Artin-Schreier) of the two functions.
    pub fn combine(&self, other: &ReducedForm) -> ReducedForm {
        match (self, other) {
            (ReducedForm::Kummer(a), ReducedForm::Kummer(b)) => ReducedForm::Kummer(a.combine(b)),
            (ReducedForm::ArtinSchreier(a), ReducedForm::ArtinSchreier(b)) => ReducedForm::ArtinSchreier(a.combine(b)),
            _ => panic!("combining forms of different characteristic"),
        }
    }

    pub fn degeneracy(&self) -> Option<Degeneracy> {
        match self {
            ReducedForm::Kummer(k) => {
                if k.odd_places().next().is_some() {
                    None
                } else if k.constant.is_square() {
                    Some(Degeneracy::TrivialExtension)
                } else {
                    Some(Degeneracy::ConstantFieldExtension)
                }
            }
            ReducedForm::ArtinSchreier(a) => {
                if !a.poles.is_empty() || !a.poly.is_zero() {
                    None
                } else if a.constant == 0 {
                    Some(Degeneracy::TrivialExtension)
                } else {
                    Some(Degeneracy::ConstantFieldExtension)
                }
            }
        }
    }

    /// Text identifying the extension: equal keys iff equal quadratic extensions.
    pub fn class_key(&self) -> String {
        match self {
            ReducedForm::Kummer(k) => {
                let odd: Vec<String> = k.odd_places().map(|p| p.to_string()).collect();
                format!("{}|{}", if k.constant.is_square() { "1" } else { "n" }, odd.join(";"))
            }
            ReducedForm::ArtinSchreier(a) => a.to_rational().to_string(),
        }
    }

    /// Ramified places in canonical order with their local data.
    pub fn ramified(&self) -> Vec<RamifiedPlace> {
        let mut out = Vec::new();
        match self {
            ReducedForm::Kummer(k) => {
                for p in k.odd_places() {
                    out.push(RamifiedPlace { place: Place::Finite(p.clone()), pole_order: None });
                }
                if k.infinity_odd() {
                    out.push(RamifiedPlace { place: Place::Infinity, pole_order: None });
                }
            }
            ReducedForm::ArtinSchreier(a) => {
                for (pi, d) in &a.poles {
                    out.push(RamifiedPlace { place: Place::Finite(pi.clone()), pole_order: Some(d.len() as u32) });
                }
                if let Some(m) = a.poly.degree().filter(|&m| m > 0) {
                    out.push(RamifiedPlace { place: Place::Infinity, pole_order: Some(m as u32) });
                }
            }
        }
        out
    }

    /// Genus of the quadratic extension (meaningful when non-degenerate).
    pub fn genus(&self) -> u64 {
        match self {
            ReducedForm::Kummer(k) => {
                let mut s: usize = k.odd_places().map(|p| p.degree().unwrap_or(0)).sum();
                if k.infinity_odd() {
                    s += 1;
                }
                (s / 2).saturating_sub(1) as u64
            }
            ReducedForm::ArtinSchreier(a) => {
                let mut s: usize = a.poles.iter().map(|(pi, d)| (d.len() + 1) * pi.degree().unwrap_or(0)).sum();
                if let Some(m) = a.poly.degree().filter(|&m| m > 0) {
                    s += m + 1;
                }
                (s / 2).saturating_sub(1) as u64
            }
        }
    }

    /// Status at the rational place `x = a` (`None` for infinity).
    pub(crate) fn status_raw(&self, field: &FieldSpec, a: Option<Raw>) -> SplitStatus {
        match (self, a) {
            (ReducedForm::Kummer(k), None) => {
                if k.infinity_odd() {
                    SplitStatus::Ramified
                } else if k.constant.is_square() {
                    SplitStatus::Split
                } else {
                    SplitStatus::Inert
                }
            }
            (ReducedForm::Kummer(k), Some(a)) => {
                let mut u = k.constant.raw();
                for p in k.odd_places() {
                    let v = p.eval_raw(a);
                    if v == 0 {
                        return SplitStatus::Ramified;
                    }
                    u = field.mul(u, v);
                }
                if field.is_square_raw(u) {
                    SplitStatus::Split
                } else {
                    SplitStatus::Inert
                }
            }
            (ReducedForm::ArtinSchreier(s), None) => {
                if s.poly.degree().unwrap_or(0) > 0 {
                    SplitStatus::Ramified
                } else if field.trace_raw(s.constant) == 0 {
                    SplitStatus::Split
                } else {
                    SplitStatus::Inert
                }
            }
            (ReducedForm::ArtinSchreier(s), Some(a)) => {
                let mut v = field.add(s.poly.eval_raw(a), s.constant);
                for (pi, digits) in &s.poles {
                    let pv = pi.eval_raw(a);
                    if pv == 0 {
                        return SplitStatus::Ramified;
                    }
                    let ip = field.inv(pv).expect("nonzero");
                    let mut pw = ip;
                    for d in digits {
                        v = field.add(v, field.mul(d.eval_raw(a), pw));
                        pw = field.mul(pw, ip);
                    }
                }
                if field.trace_raw(v) == 0 {
                    SplitStatus::Split
                } else {
                    SplitStatus::Inert
                }
            }
        }
    }
}

impl QuadraticCharacter {
    /// Analyzes `y^2 = f` or `y^2 + y = f` according to the characteristic.
    pub fn new(f: &RationalFunction) -> Result<QuadraticCharacter, QuadError> {
        let form = ReducedForm::of(f)?;
        Self::from_form(f.clone(), form)
    }

    pub fn from_form(f: RationalFunction, form: ReducedForm) -> Result<QuadraticCharacter, QuadError> {
        if let Some(d) = form.degeneracy() {
            return Err(QuadError::Degenerate(d));
        }
        let ramified = form.ramified();
        let genus = form.genus();
        Ok(QuadraticCharacter { f, form, ramified, genus })
    }

    pub fn f(&self) -> &RationalFunction {
        &self.f
    }

    pub fn field(&self) -> &FieldSpec {
        self.f.field()
    }

    pub fn mode(&self) -> Mode {
        self.form.mode()
    }

    pub fn form(&self) -> &ReducedForm {
        &self.form
    }

    pub fn ramified(&self) -> &[RamifiedPlace] {
        &self.ramified
    }

    /// Σ deg P over ramified places.
    pub fn ramified_degree(&self) -> usize {
        self.ramified.iter().map(|r| r.place.degree()).sum()
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// Reduced representative: the odd-valuation part `c * Π_{v odd} π` in
    /// odd characteristic, the normal form in characteristic 2.
    pub fn reduced_function(&self) -> RationalFunction {
        match &self.form {
            ReducedForm::Kummer(k) => {
                let p = k.odd_places().fold(Polynomial::constant(&k.constant), |acc, p| acc.mul(p));
                RationalFunction::from_poly(p)
            }
            ReducedForm::ArtinSchreier(a) => a.to_rational(),
        }
    }

    pub fn status_at(&self, place: &Place) -> Result<SplitStatus, QuadError> {
        if !place.is_rational() {
            return Err(QuadError::NotRational(place.to_string()));
        }
        let a = place.root().map(|r| r.raw());
        Ok(self.form.status_raw(self.field(), a))
    }

    /// Character of the product (resp. sum) with another character's function.
    pub fn combine(&self, other: &QuadraticCharacter) -> Result<QuadraticCharacter, QuadError> {
        let f = match self.mode() {
            Mode::Kummer => self.f.mul(&other.f),
            Mode::ArtinSchreier => self.f.add(&other.f),
        };
        Self::from_form(f, self.form.combine(&other.form))
    }

    /// One-line summary: function, ramified places with degrees (and m_P), genus.
    pub fn summary(&self) -> String {
        let places: Vec<String> = self
            .ramified
            .iter()
            .map(|r| match r.pole_order {
                Some(m) => format!("{} (deg {}, m={})", r.place, r.place.degree(), m),
                None => format!("{} (deg {})", r.place, r.place.degree()),
            })
            .collect();
        format!("f = {}; ramified: [{}]; genus {}", self.f, places.join(", "), self.genus)
    }
}

/// Kummer analysis; errors outside odd characteristic.
pub fn kummer_reduce(f: &RationalFunction) -> Result<QuadraticCharacter, QuadError> {
    if f.field().p() == 2 {
        return Err(QuadError::WrongCharacteristic("Kummer", 2));
    }
    QuadraticCharacter::new(f)
}

/// Artin-Schreier analysis; errors outside characteristic 2.
pub fn as_reduce(f: &RationalFunction) -> Result<QuadraticCharacter, QuadError> {
    if f.field().p() != 2 {
        return Err(QuadError::WrongCharacteristic("Artin-Schreier", f.field().p()));
    }
    QuadraticCharacter::new(f)
}

pub fn quad_genus(c: &QuadraticCharacter) -> u64 {
    c.genus()
}

pub fn status_at(c: &QuadraticCharacter, place: &Place) -> Result<SplitStatus, QuadError> {
    c.status_at(place)
}
