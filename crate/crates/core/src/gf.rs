//! Exact arithmetic in the small fields F_{p^e}, p ∈ {2, 3}, e ≤ 7.
//!
//! Elements are stored as their coefficient vector over F_p packed into an
//! integer: `c_0 + c_1 p + ... + c_{e-1} p^{e-1}` (ascending coefficients of
//! the residue class modulo the field's modulus). Ordering and equality of
//! elements are those of this encoding. All operations go through
//! precomputed log/exp tables built once per modulus and shared by every
//! [`FieldSpec`] with that modulus, whatever generator it designates as `w`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Packed coefficient vector of an element.
pub(crate) type Raw = u16;

const NO_SQRT: Raw = Raw::MAX;
const MAX_DEGREE: u32 = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("unsupported characteristic {0}: only 2 and 3 are supported")]
    UnsupportedCharacteristic(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("extension degree {0} exceeds the supported maximum of 7")]
    DegreeTooLarge(u32),
    #[error("{0} is not a power of 2 or 3 within the supported range")]
    UnsupportedOrder(u32),
    #[error("modulus must be a monic polynomial of degree {degree} over F_{p}: got {coeffs:?}")]
    MalformedModulus { p: u32, degree: u32, coeffs: Vec<u32> },
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u32>),
    #[error("coefficient vector {0:?} does not describe an element of this field")]
    BadElement(Vec<u32>),
    #[error("element {0} is not a generator of the multiplicative group")]
    NotPrimitive(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("{0} is not a square")]
    NotASquare(String),
}

/// Tables shared by every generator choice over one modulus.
#[derive(Debug)]
struct Tables {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    root: Raw,
    root_primitive: bool,
    /// `exp[i] = base^i` for `0 ≤ i < 2(q-1)`.
    exp: Vec<Raw>,
    log: Vec<u32>,
    neg: Vec<Raw>,
    /// Full addition table for p = 3; empty for p = 2 (xor).
    add: Vec<Raw>,
    sqrt: Vec<Raw>,
    trace: Vec<u8>,
    /// Inverse Frobenius a ↦ a^(q/p).
    proot: Vec<Raw>,
    /// Smallest element of absolute trace 1 (characteristic 2 only).
    trace_one: Raw,
}

/// Description of a finite field F_{p^e}: modulus plus the distinguished
/// generator `w` of the multiplicative group.
///
/// Cloning is cheap; the arithmetic tables are shared.
#[derive(Clone)]
pub struct FieldSpec {
    tables: Arc<Tables>,
    generator: Raw,
    /// `generator = base^gen_log`.
    gen_log: u32,
    /// Inverse of `gen_log` modulo q - 1.
    gen_log_inv: u32,
}

/// An element of a [`FieldSpec`].
#[derive(Clone)]
pub struct FieldElement {
    field: FieldSpec,
    raw: Raw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow(u64),
}

fn to_digits(mut a: u32, p: u32, e: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(e as usize);
    for _ in 0..e {
        d.push(a % p);
        a /= p;
    }
    d
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Product of two residues modulo a monic modulus over F_p (digit vectors of length e).
fn mulmod_digits(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (e..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (i, &m) in modulus[..e].iter().enumerate() {
            prod[k - e + i] = (prod[k - e + i] + (p - c) * m) % p;
        }
    }
    prod.truncate(e);
    prod
}

/// Remainder of `a` modulo `b` over F_p; both ascending, `b` monic.
fn rem_digits(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - c) * bi) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// Irreducibility over F_p by trial division with every monic polynomial of
/// degree at most half the degree. Only used on moduli of degree ≤ 7.
fn is_irreducible_fp(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut cand = to_digits(low, p, d as u32);
            cand.push(1);
            if rem_digits(m, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

fn inverse_mod(a: u32, m: u32) -> u32 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    old_s.rem_euclid(m as i64) as u32
}

impl Tables {
    fn build(p: u32, e: u32, modulus: Vec<u32>) -> Tables {
        let q = p.pow(e);
        let slow_mul = |a: u32, b: u32| -> u32 {
            let r = mulmod_digits(&to_digits(a, p, e), &to_digits(b, p, e), &modulus, p);
            from_digits(&r, p)
        };
        let order = |g: u32| -> u32 {
            let mut x = g;
            let mut k = 1;
            while x != 1 {
                x = slow_mul(x, g);
                k += 1;
                if k > q {
                    return 0;
                }
            }
            k
        };
        let root = if e == 1 { (p - modulus[0]) % p } else { p };
        let root_primitive = root != 0 && order(root) == q - 1;
        let base = if root_primitive {
            root
        } else {
            (1..q).find(|&g| order(g) == q - 1).expect("cyclic group has a generator")
        };

        let n = (q - 1) as usize;
        let mut exp = vec![0 as Raw; 2 * n];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp[i] = x as Raw;
            exp[i + n] = x as Raw;
            log[x as usize] = i as u32;
            x = slow_mul(x, base);
        }

        let neg: Vec<Raw> = (0..q)
            .map(|a| {
                let d: Vec<u32> = to_digits(a, p, e).iter().map(|&c| (p - c) % p).collect();
                from_digits(&d, p) as Raw
            })
            .collect();
        let add = if p == 2 || q > 729 {
            Vec::new()
        } else {
            let mut t = vec![0 as Raw; (q * q) as usize];
            for a in 0..q {
                let da = to_digits(a, p, e);
                for b in 0..q {
                    let db = to_digits(b, p, e);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[(a * q + b) as usize] = from_digits(&s, p) as Raw;
                }
            }
            t
        };

        let mut t = Tables {
            p,
            e,
            q,
            modulus,
            root: root as Raw,
            root_primitive,
            exp,
            log,
            neg,
            add,
            sqrt: Vec::new(),
            trace: Vec::new(),
            proot: Vec::new(),
            trace_one: 0,
        };

        let mut sqrt = vec![NO_SQRT; q as usize];
        let mut trace = vec![0u8; q as usize];
        let mut proot = vec![0 as Raw; q as usize];
        for a in 0..q as Raw {
            let ap = t.pow(a, p as u64);
            proot[ap as usize] = a;
            let sq = t.mul(a, a);
            if sqrt[sq as usize] == NO_SQRT || a < sqrt[sq as usize] {
                sqrt[sq as usize] = a;
            }
            let mut acc = 0;
            let mut y = a;
            for _ in 0..e {
                acc = t.add(acc, y);
                y = t.pow(y, p as u64);
            }
            debug_assert!((acc as u32) < p);
            trace[a as usize] = acc as u8;
        }
        t.trace_one = (0..q as Raw).find(|&a| trace[a as usize] == 1).unwrap_or(0);
        t.sqrt = sqrt;
        t.trace = trace;
        t.proot = proot;
        t
    }

    #[inline]
    fn add(&self, a: Raw, b: Raw) -> Raw {
        if self.p == 2 {
            a ^ b
        } else if !self.add.is_empty() {
            self.add[a as usize * self.q as usize + b as usize]
        } else {
            let (da, db) = (to_digits(a as u32, 3, self.e), to_digits(b as u32, 3, self.e));
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % 3).collect();
            from_digits(&s, 3) as Raw
        }
    }

    #[inline]
    fn mul(&self, a: Raw, b: Raw) -> Raw {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    fn pow(&self, a: Raw, k: u64) -> Raw {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        let l = (self.log[a as usize] as u64 * (k % n)) % n;
        self.exp[l as usize]
    }
}

impl FieldSpec {
    /// Builds F_{p^e}. Without an explicit modulus the lexicographically least
    /// monic irreducible polynomial with a primitive root is used (least by the
    /// packed encoding of its non-leading coefficients).
    ///
    /// When a supplied modulus has a non-primitive root, the generator is the
    /// least primitive element instead and [`FieldSpec::generator_flagged`]
    /// reports it.
    pub fn new(p: u32, e: u32, modulus: Option<&[u32]>) -> Result<FieldSpec, FieldError> {
        if p != 2 && p != 3 {
            return Err(FieldError::UnsupportedCharacteristic(p));
        }
        if e == 0 {
            return Err(FieldError::ZeroDegree);
        }
        if e > MAX_DEGREE {
            return Err(FieldError::DegreeTooLarge(e));
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 || m[e as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(FieldError::MalformedModulus { p, degree: e, coeffs: m.to_vec() });
                }
                if !is_irreducible_fp(m, p) {
                    return Err(FieldError::ReducibleModulus(m.to_vec()));
                }
                m.to_vec()
            }
            None => Self::default_modulus(p, e),
        };
        let tables = Arc::new(Tables::build(p, e, modulus));
        let base = tables.exp[1];
        let generator = if tables.root_primitive { tables.root } else { base };
        Ok(Self::from_tables(tables, generator))
    }

    /// The default field of order `q`.
    pub fn of_order(q: u32) -> Result<FieldSpec, FieldError> {
        for p in [2u32, 3] {
            let mut e = 0;
            let mut x = 1u32;
            while x < q {
                x = x.saturating_mul(p);
                e += 1;
            }
            if x == q && e >= 1 {
                return Self::new(p, e, None).map_err(|_| FieldError::UnsupportedOrder(q));
            }
        }
        Err(FieldError::UnsupportedOrder(q))
    }

    fn default_modulus(p: u32, e: u32) -> Vec<u32> {
        let q = p.pow(e);
        for low in 0..q {
            let mut m = to_digits(low, p, e);
            m.push(1);
            if m[0] == 0 || !is_irreducible_fp(&m, p) {
                continue;
            }
            let t = Tables::build(p, e, m.clone());
            if t.root_primitive {
                return m;
            }
        }
        unreachable!("a primitive polynomial of every degree exists")
    }

    fn from_tables(tables: Arc<Tables>, generator: Raw) -> FieldSpec {
        let n = tables.q - 1;
        let gen_log = if n == 0 { 0 } else { tables.log[generator as usize] % n };
        let gen_log_inv = inverse_mod(gen_log, n.max(1));
        FieldSpec { tables, generator, gen_log, gen_log_inv }
    }

    /// Same modulus, different distinguished generator.
    pub fn with_generator(&self, w: &FieldElement) -> Result<FieldSpec, FieldError> {
        if !self.same_field(&w.field) {
            return Err(FieldError::FieldMismatch);
        }
        if !self.is_primitive_raw(w.raw) {
            return Err(FieldError::NotPrimitive(w.to_string()));
        }
        Ok(Self::from_tables(self.tables.clone(), w.raw))
    }

    pub fn p(&self) -> u32 {
        self.tables.p
    }

    pub fn e(&self) -> u32 {
        self.tables.e
    }

    pub fn q(&self) -> u32 {
        self.tables.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.tables.e == 1
    }

    /// Monic modulus, ascending coefficients.
    pub fn modulus(&self) -> &[u32] {
        &self.tables.modulus
    }

    pub fn generator(&self) -> FieldElement {
        self.element_raw(self.generator)
    }

    /// True when the modulus root is not primitive, so `w` is some other element.
    pub fn generator_flagged(&self) -> bool {
        !self.tables.root_primitive
    }

    /// Arithmetic compatibility: same characteristic, degree and modulus.
    pub fn same_field(&self, other: &FieldSpec) -> bool {
        Arc::ptr_eq(&self.tables, &other.tables)
            || (self.tables.p == other.tables.p && self.tables.modulus == other.tables.modulus)
    }

    pub fn zero(&self) -> FieldElement {
        self.element_raw(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element_raw(1)
    }

    /// Element from its ascending coefficient vector over F_p (missing
    /// trailing coefficients are zero).
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        let (p, e) = (self.p(), self.e());
        if coeffs.len() > e as usize || coeffs.iter().any(|&c| c >= p) {
            return Err(FieldError::BadElement(coeffs.to_vec()));
        }
        Ok(self.element_raw(from_digits(coeffs, p) as Raw))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        self.element_raw(self.int_raw(n))
    }

    /// `w^k`.
    pub fn w_pow(&self, k: u64) -> FieldElement {
        let n = (self.q() - 1) as u64;
        if n <= 1 {
            return self.one();
        }
        let e = (self.gen_log as u64 * (k % n)) % n;
        self.element_raw(self.tables.exp[e as usize])
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q()).map(move |a| self.element_raw(a as Raw))
    }

    /// All elements of multiplicative order q - 1, in increasing encoding order.
    pub fn primitive_elements(&self) -> Vec<FieldElement> {
        (1..self.q())
            .map(|a| a as Raw)
            .filter(|&a| self.is_primitive_raw(a))
            .map(|a| self.element_raw(a))
            .collect()
    }

    /// `GF(p^e; modulus=[..]; w=[..])` with ascending coefficient lists.
    pub fn describe(&self) -> String {
        let list = |v: &[u32]| {
            let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
            format!("[{}]", parts.join(","))
        };
        format!(
            "GF({}^{}; modulus={}; w={})",
            self.p(),
            self.e(),
            list(self.modulus()),
            list(&self.generator().coeffs())
        )
    }

    // Raw arithmetic used by the polynomial layer.

    pub(crate) fn element_raw(&self, raw: Raw) -> FieldElement {
        debug_assert!((raw as u32) < self.q());
        FieldElement { field: self.clone(), raw }
    }

    #[inline]
    pub(crate) fn add(&self, a: Raw, b: Raw) -> Raw {
        self.tables.add(a, b)
    }

    #[inline]
    pub(crate) fn neg(&self, a: Raw) -> Raw {
        self.tables.neg[a as usize]
    }

    #[inline]
    pub(crate) fn sub(&self, a: Raw, b: Raw) -> Raw {
        self.tables.add(a, self.tables.neg[b as usize])
    }

    #[inline]
    pub(crate) fn mul(&self, a: Raw, b: Raw) -> Raw {
        self.tables.mul(a, b)
    }

    pub(crate) fn inv(&self, a: Raw) -> Option<Raw> {
        if a == 0 {
            return None;
        }
        let n = self.q() - 1;
        let l = self.tables.log[a as usize];
        Some(self.tables.exp[((n - l) % n.max(1)) as usize])
    }

    pub(crate) fn div(&self, a: Raw, b: Raw) -> Option<Raw> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub(crate) fn pow_raw(&self, a: Raw, k: u64) -> Raw {
        self.tables.pow(a, k)
    }

    pub(crate) fn trace_raw(&self, a: Raw) -> u32 {
        self.tables.trace[a as usize] as u32
    }

    pub(crate) fn is_square_raw(&self, a: Raw) -> bool {
        self.tables.sqrt[a as usize] != NO_SQRT
    }

    pub(crate) fn sqrt_raw(&self, a: Raw) -> Option<Raw> {
        let s = self.tables.sqrt[a as usize];
        (s != NO_SQRT).then_some(s)
    }

    /// a ↦ a^(q/p), the inverse of Frobenius.
    pub(crate) fn proot_raw(&self, a: Raw) -> Raw {
        self.tables.proot[a as usize]
    }

    pub(crate) fn trace_one_raw(&self) -> Raw {
        self.tables.trace_one
    }

    pub(crate) fn int_raw(&self, n: i64) -> Raw {
        n.rem_euclid(self.p() as i64) as Raw
    }

    /// Exponent k with w^k = a, for nonzero a.
    pub(crate) fn log_w(&self, a: Raw) -> u32 {
        let n = self.q() - 1;
        if n <= 1 {
            return 0;
        }
        ((self.tables.log[a as usize] as u64 * self.gen_log_inv as u64) % n as u64) as u32
    }

    pub(crate) fn is_primitive_raw(&self, a: Raw) -> bool {
        if a == 0 {
            return false;
        }
        let n = self.q() - 1;
        if n == 1 {
            return a == 1;
        }
        gcd_u32(self.tables.log[a as usize], n) == 1
    }

    /// Multiplicative order of a nonzero element.
    pub(crate) fn order_raw(&self, a: Raw) -> u32 {
        let n = self.q() - 1;
        n / gcd_u32(self.tables.log[a as usize], n)
    }

    /// Generator exponent relative to the internal table base, for tests.
    #[cfg(test)]
    fn gen_log(&self) -> u32 {
        self.gen_log
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.generator == other.generator
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub(crate) fn raw(&self) -> Raw {
        self.raw
    }

    /// Packed encoding (ascending coefficients read as a base-p integer).
    pub fn encoding(&self) -> u32 {
        self.raw as u32
    }

    pub fn coeffs(&self) -> Vec<u32> {
        to_digits(self.raw as u32, self.field.p(), self.field.e())
    }

    pub fn is_zero(&self) -> bool {
        self.raw == 0
    }

    pub fn is_one(&self) -> bool {
        self.raw == 1
    }

    fn check(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field.same_field(&other.field) {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.field.element_raw(self.field.add(self.raw, other.raw)))
    }

    pub fn try_sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.field.element_raw(self.field.sub(self.raw, other.raw)))
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.field.element_raw(self.field.mul(self.raw, other.raw)))
    }

    pub fn try_div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        let r = self.field.div(self.raw, other.raw).ok_or(FieldError::DivisionByZero)?;
        Ok(self.field.element_raw(r))
    }

    pub fn pow(&self, k: u64) -> FieldElement {
        self.field.element_raw(self.field.pow_raw(self.raw, k))
    }

    pub fn neg(&self) -> FieldElement {
        self.field.element_raw(self.field.neg(self.raw))
    }

    pub fn inverse(&self) -> Result<FieldElement, FieldError> {
        self.field.inv(self.raw).map(|r| self.field.element_raw(r)).ok_or(FieldError::DivisionByZero)
    }

    /// Σ_{j<e} a^{p^j}, returned as an integer in [0, p).
    pub fn absolute_trace(&self) -> u32 {
        self.field.trace_raw(self.raw)
    }

    pub fn is_square(&self) -> bool {
        self.field.is_square_raw(self.raw)
    }

    /// Square root: the least one by encoding in odd characteristic, the
    /// unique one a^(q/2) in characteristic 2.
    pub fn sqrt(&self) -> Result<FieldElement, FieldError> {
        self.field
            .sqrt_raw(self.raw)
            .map(|r| self.field.element_raw(r))
            .ok_or_else(|| FieldError::NotASquare(self.to_string()))
    }

    pub fn frobenius(&self) -> FieldElement {
        self.pow(self.field.p() as u64)
    }

    /// Multiplicative order; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        (self.raw != 0).then(|| self.field.order_raw(self.raw))
    }

    /// `k` with `w^k == self`, for nonzero elements.
    pub fn log_w(&self) -> Option<u32> {
        (self.raw != 0).then(|| self.field.log_w(self.raw))
    }
}

/// `a op b` with field checks.
pub fn field_arithmetic(a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement, FieldError> {
    match op {
        FieldOp::Add => a.try_add(b),
        FieldOp::Sub => a.try_sub(b),
        FieldOp::Mul => a.try_mul(b),
        FieldOp::Div => a.try_div(b),
        FieldOp::Pow(k) => Ok(a.pow(k)),
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.raw == other.raw && self.field.same_field(&other.field)
    }
}

impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.raw.cmp(&other.raw)
    }
}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.raw.hash(state);
    }
}

/// Renders prime-subfield elements as integers and everything else as `w^k`.
pub(crate) fn render_raw(field: &FieldSpec, a: Raw) -> String {
    if (a as u32) < field.p() {
        return a.to_string();
    }
    match field.log_w(a) {
        1 => "w".to_string(),
        k => format!("w^{k}"),
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_raw(&self.field, self.raw))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self, self.coeffs())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl std::ops::$tr for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                self.$try(rhs).expect("arithmetic on elements of different fields")
            }
        }
        impl std::ops::$tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
