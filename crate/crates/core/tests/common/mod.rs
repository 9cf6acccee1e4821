//! Random instances for the property suites. Everything is driven by a
//! ChaCha stream seeded from a proptest-chosen `u64`, so failures shrink
//! to a seed and replay exactly.
#![allow(dead_code)]

use manypoints::compositum::{build_lattice, CharacterLattice, CompositumSpec};
use manypoints::gf::{FieldElement, FieldSpec};
use manypoints::poly::{squarefree_part, Polynomial, RationalFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ODD_ORDERS: [u32; 4] = [3, 9, 27, 81];
pub const EVEN_ORDERS: [u32; 7] = [2, 4, 8, 16, 32, 64, 128];
pub const ALL_ORDERS: [u32; 11] = [2, 4, 8, 16, 32, 64, 128, 3, 9, 27, 81];

pub fn field(q: u32) -> FieldSpec {
    FieldSpec::of_order(q).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn elem(f: &FieldSpec, r: &mut ChaCha8Rng) -> FieldElement {
    f.elements().nth(r.gen_range(0..f.q()) as usize).unwrap()
}

pub fn nonzero(f: &FieldSpec, r: &mut ChaCha8Rng) -> FieldElement {
    f.elements().nth(r.gen_range(1..f.q()) as usize).unwrap()
}

/// Random polynomial of degree exactly `d`.
pub fn poly(f: &FieldSpec, d: usize, r: &mut ChaCha8Rng) -> Polynomial {
    let mut c: Vec<FieldElement> = (0..d).map(|_| elem(f, r)).collect();
    c.push(nonzero(f, r));
    Polynomial::from_elements(f, &c)
}

pub fn monic(f: &FieldSpec, d: usize, r: &mut ChaCha8Rng) -> Polynomial {
    poly(f, d, r).monic()
}

/// Nonzero rational function with numerator and denominator degree at most `d`.
pub fn rational(f: &FieldSpec, d: usize, r: &mut ChaCha8Rng) -> RationalFunction {
    let num = poly(f, r.gen_range(0..=d), r);
    let den = monic(f, r.gen_range(0..=d), r);
    RationalFunction::new(num, den).unwrap()
}

/// `c * s` with `s` monic square-free of degree in `1..=d`.
pub fn squarefree(f: &FieldSpec, d: usize, r: &mut ChaCha8Rng) -> RationalFunction {
    loop {
        let s = squarefree_part(&monic(f, r.gen_range(1..=d), r)).unwrap();
        if s.degree().unwrap_or(0) >= 1 {
            return RationalFunction::from_poly(s.scale(&nonzero(f, r)));
        }
    }
}

/// Random generator for characteristic 2: a polynomial part plus a few
/// poles of small degree and order.
pub fn as_generator(f: &FieldSpec, d: usize, r: &mut ChaCha8Rng) -> RationalFunction {
    let mut acc = RationalFunction::from_poly(poly(f, r.gen_range(0..=d), r));
    for _ in 0..r.gen_range(0..=2) {
        let pi = monic(f, r.gen_range(1..=2), r);
        let k = r.gen_range(1..=3u64);
        let num = poly(f, r.gen_range(0..=d), r);
        acc = acc.add(&RationalFunction::new(num, pi.pow(k)).unwrap());
    }
    acc
}

/// A disjoint compositum of `n` random generators over F_q.
pub fn instance(q: u32, n: usize, d: usize, r: &mut ChaCha8Rng) -> CharacterLattice {
    let f = field(q);
    for _ in 0..1000 {
        let gens: Vec<RationalFunction> = (0..n)
            .map(|_| if f.p() == 2 { as_generator(&f, d, r) } else { squarefree(&f, d, r) })
            .collect();
        if let Ok(l) = build_lattice(&CompositumSpec::new(&f, gens).unwrap()) {
            return l;
        }
    }
    panic!("no disjoint instance found for q={q} n={n}");
}

/// `(g, N)` of the compositum of `gens`.
pub fn invariants(f: &FieldSpec, gens: Vec<RationalFunction>) -> (u64, u64) {
    let l = build_lattice(&CompositumSpec::new(f, gens).unwrap()).unwrap();
    (l.genus(), manypoints::compositum::rational_place_count(&l))
}
