//! Square-free, distinct-degree and equal-degree factorization.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{gcd_monic, PolyError, Polynomial};
use crate::gf::{FieldElement, Raw};

static DEFAULT_SEED: AtomicU64 = AtomicU64::new(0x6d61_6e79_706f_696e);

/// Seed for the randomized equal-degree splitting. Every split is seeded
/// from this value and the polynomial being split, so results never depend
/// on call order or thread scheduling.
pub fn default_seed() -> u64 {
    DEFAULT_SEED.load(Ordering::Relaxed)
}

pub fn set_default_seed(seed: u64) {
    DEFAULT_SEED.store(seed, Ordering::Relaxed);
}

/// `unit * Π factor^multiplicity`, factors monic irreducible in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Polynomial, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::constant(&self.unit), |acc, (p, k)| acc.mul(&p.pow(*k as u64)))
    }
}

/// Pairs `(s_i, i)` with `f = lc * Π s_i^i`, each `s_i` square-free, monic and
/// pairwise coprime. Handles the vanishing-derivative case by taking p-th roots.
pub fn squarefree_factorization(f: &Polynomial) -> Result<Vec<(Polynomial, u32)>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    sff(&f.monic(), 1, &mut out);
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

fn sff(f: &Polynomial, scale: u32, out: &mut Vec<(Polynomial, u32)>) {
    if f.is_constant() {
        return;
    }
    let p = f.field().p();
    let d = f.derivative();
    if d.is_zero() {
        sff(&f.pth_root(), scale * p, out);
        return;
    }
    let mut c = gcd_monic(f, &d);
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = gcd_monic(&w, &c);
        let fac = w.div_exact(&y);
        if !fac.is_one() {
            out.push((fac, i * scale));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if !c.is_one() {
        sff(&c.pth_root(), scale * p, out);
    }
}

/// Product of the distinct monic irreducible factors of `f`.
pub fn squarefree_part(f: &Polynomial) -> Result<Polynomial, PolyError> {
    let parts = squarefree_factorization(f)?;
    Ok(parts.iter().fold(Polynomial::one(f.field()), |acc, (s, _)| acc.mul(s)))
}

/// For a monic square-free `f`: pairs `(g_d, d)` where `g_d` is the product
/// of all irreducible factors of degree `d`.
pub fn distinct_degree_factorization(f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let field = f.field().clone();
    let q = field.q() as u64;
    let x = Polynomial::x(&field);
    let mut out = Vec::new();
    let mut f = f.monic();
    let mut h = x.rem(&f);
    let mut d = 1;
    while f.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(q, &f);
        let g = gcd_monic(&h.sub(&x), &f);
        if !g.is_one() {
            f = f.div_exact(&g);
            h = h.rem(&f);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(k) = f.degree().filter(|&k| k > 0) {
        out.push((f, k));
    }
    out
}

fn fingerprint(g: &Polynomial) -> u64 {
    g.raw_coeffs()
        .iter()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, &c| (h ^ c as u64).wrapping_mul(0x100_0000_01b3))
}

/// Splits a monic square-free product of irreducibles of degree `d`.
fn equal_degree_split(g: &Polynomial, d: usize, out: &mut Vec<Polynomial>) {
    let n = g.degree().unwrap_or(0);
    if n == 0 {
        return;
    }
    if n == d {
        out.push(g.clone());
        return;
    }
    let field = g.field().clone();
    let q = field.q();
    let mut rng = ChaCha8Rng::seed_from_u64(default_seed() ^ fingerprint(g));
    loop {
        let a = Polynomial::from_raw(&field, (0..n).map(|_| rng.gen_range(0..q) as Raw).collect());
        if a.is_constant() {
            continue;
        }
        let b = if field.p() == 2 {
            // Trace from F_{2^(e d)} down to F_2.
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..(field.e() as usize * d) {
                t = t.mul(&t).rem(g);
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^((q^d - 1)/2) as (Π_{i<d} a^{q^i})^((q - 1)/2).
            let mut t = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                t = t.pow_mod(q as u64, g);
                norm = norm.mul(&t).rem(g);
            }
            norm.pow_mod((q as u64 - 1) / 2, g).sub(&Polynomial::one(&field))
        };
        let h = gcd_monic(&b, g);
        if !h.is_one() && h.degree() != g.degree() {
            equal_degree_split(&h, d, out);
            equal_degree_split(&g.div_exact(&h), d, out);
            return;
        }
    }
}

/// Complete factorization into monic irreducibles.
pub fn factor(f: &Polynomial) -> Result<Factorization, PolyError> {
    let parts = squarefree_factorization(f)?;
    let mut factors = Vec::new();
    for (s, mult) in parts {
        for (g, d) in distinct_degree_factorization(&s) {
            let mut irr = Vec::new();
            equal_degree_split(&g, d, &mut irr);
            factors.extend(irr.into_iter().map(|p| (p, mult)));
        }
    }
    factors.sort();
    let mut merged: Vec<(Polynomial, u32)> = Vec::new();
    for (p, k) in factors {
        match merged.last_mut() {
            Some((last, m)) if *last == p => *m += k,
            _ => merged.push((p, k)),
        }
    }
    Ok(Factorization { unit: f.leading_coeff(), factors: merged })
}

/// Rabin's test.
pub fn is_irreducible(f: &Polynomial) -> bool {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let f = f.monic();
    let field = f.field().clone();
    let q = field.q() as u64;
    let x = Polynomial::x(&field);
    // x^(q^k) mod f for k = 0..=n.
    let mut powers = vec![x.rem(&f)];
    for k in 1..=n {
        let next = powers[k - 1].pow_mod(q, &f);
        powers.push(next);
    }
    if !powers[n].sub(&x).rem(&f).is_zero() {
        return false;
    }
    let mut m = n;
    let mut r = 2;
    let mut primes = Vec::new();
    while r * r <= m {
        if m % r == 0 {
            primes.push(r);
            while m % r == 0 {
                m /= r;
            }
        }
        r += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    primes.iter().all(|&r| gcd_monic(&powers[n / r].sub(&x), &f).is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    #[test]
    fn squarefree_examples() {
        let f3 = FieldSpec::of_order(3).unwrap();
        let f2 = FieldSpec::of_order(2).unwrap();
        let x2 = Polynomial::from_ints(&f3, &[0, 0, 1]);
        assert_eq!(squarefree_part(&x2).unwrap(), Polynomial::from_ints(&f3, &[0, 1]));
        let a = Polynomial::from_ints(&f2, &[0, 1, 0, 1]);
        assert_eq!(squarefree_part(&a).unwrap(), Polynomial::from_ints(&f2, &[0, 1, 1]));
        let x3 = Polynomial::from_ints(&f3, &[0, 0, 0, 1]);
        assert_eq!(squarefree_part(&x3).unwrap(), Polynomial::from_ints(&f3, &[0, 1]));
        assert_eq!(squarefree_part(&Polynomial::zero(&f3)), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn factor_examples() {
        let f3 = FieldSpec::of_order(3).unwrap();
        let c = Polynomial::from_ints(&f3, &[1, 2, 0, 1]);
        assert!(is_irreducible(&c));
        assert_eq!(factor(&c).unwrap().factors, vec![(c.clone(), 1)]);
        let f2 = FieldSpec::of_order(2).unwrap();
        let g = Polynomial::from_ints(&f2, &[0, 1, 0, 0, 1]);
        let fz = factor(&g).unwrap();
        let names: Vec<String> = fz.factors.iter().map(|(p, _)| p.to_string()).collect();
        assert_eq!(names, ["x", "x + 1", "x^2 + x + 1"]);
        let x2 = Polynomial::from_ints(&f3, &[0, 0, 1]);
        assert_eq!(factor(&x2).unwrap().factors, vec![(Polynomial::from_ints(&f3, &[0, 1]), 2)]);
    }

    #[test]
    fn irreducible_counts() {
        // Number of monic irreducibles of degree n over F_q: (1/n) Σ_{d|n} μ(d) q^(n/d).
        for (q, n, expect) in [(2u32, 4usize, 3usize), (3, 3, 8), (4, 2, 6), (2, 5, 6)] {
            let f = FieldSpec::of_order(q).unwrap();
            let mut count = 0;
            for low in 0..q.pow(n as u32) {
                let mut c = Vec::new();
                let mut m = low;
                for _ in 0..n {
                    c.push((m % q) as u16);
                    m /= q;
                }
                c.push(1);
                let p = Polynomial::from_raw(&f, c);
                let irr = is_irreducible(&p);
                let fz = factor(&p).unwrap();
                assert_eq!(irr, fz.factors.len() == 1 && fz.factors[0].1 == 1);
                assert_eq!(fz.expand(), p);
                count += irr as usize;
            }
            assert_eq!(count, expect, "q={q} n={n}");
        }
    }
}
