//! Exhaustive record search over tuples of quadratic generators.
//!
//! A [`SearchSpace`] fixes a finite, ordered list of candidate generators
//! `f`. Candidates are the n-element subsets of that list in
//! lexicographic index order. Each candidate is evaluated genus first, and
//! only counted when the genus is within the cap.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::compositum::{
    build_lattice, count_rational_places, count_with_forms, lattice_forms, CompositumSpec,
};
use crate::gf::{FieldElement, FieldSpec};
use crate::poly::{is_irreducible, Polynomial, RationalFunction};
use crate::quad::{Mode, ReducedForm};
use crate::tables::serre_bound;

/// Candidates are handed to the worker pool in blocks of this size.
const BLOCK: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("odd-mode family over a field of characteristic 2, or the reverse")]
    WrongMode,
    #[error("n must be between 1 and 6, got {0}")]
    BadArity(usize),
    #[error("degree bounds must be at least 1")]
    BadDegree,
    #[error("pole orders must be odd and at least 1, got {0}")]
    BadOrder(u32),
}

/// Which generators are enumerated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum Family {
    /// `f = c * P` with `c` in {1, a fixed non-square} and `P` a product of
    /// distinct monic irreducibles of degree at most `pool_degree`, of total
    /// degree at most `max_degree`.
    Odd { pool_degree: usize, max_degree: usize },
    /// Artin-Schreier normal forms with poles at a nonempty set of places
    /// of degree at most `place_degree` (infinity included), odd pole
    /// orders at most `max_order`, and constant 0 or a fixed trace-one
    /// element.
    Even { place_degree: usize, max_order: u32 },
}

#[derive(Clone, Debug)]
pub struct SearchSpace {
    pub field: FieldSpec,
    pub n: usize,
    pub family: Family,
    pub genus_cap: u64,
    /// Skip candidates that are not the least member of their orbit under
    /// `x -> a*x + b`.
    pub symmetry: bool,
    /// Ties kept per genus besides the witness.
    pub max_ties: usize,
}

impl SearchSpace {
    pub fn new(field: &FieldSpec, n: usize, family: Family, genus_cap: u64) -> Result<SearchSpace, SearchError> {
        if n == 0 || n > 6 {
            return Err(SearchError::BadArity(n));
        }
        match (&family, Mode::of(field)) {
            (Family::Odd { pool_degree, max_degree }, Mode::Kummer) => {
                if *pool_degree == 0 || *max_degree == 0 {
                    return Err(SearchError::BadDegree);
                }
            }
            (Family::Even { place_degree, max_order }, Mode::ArtinSchreier) => {
                if *place_degree == 0 {
                    return Err(SearchError::BadDegree);
                }
                if max_order % 2 == 0 {
                    return Err(SearchError::BadOrder(*max_order));
                }
            }
            _ => return Err(SearchError::WrongMode),
        }
        Ok(SearchSpace { field: field.clone(), n, family, genus_cap, symmetry: false, max_ties: 8 })
    }

    pub fn with_symmetry(mut self, on: bool) -> Self {
        self.symmetry = on;
        self
    }

    /// The candidate generators in enumeration order.
    pub fn generators(&self) -> Vec<RationalFunction> {
        match self.family {
            Family::Odd { pool_degree, max_degree } => odd_generators(&self.field, pool_degree, max_degree),
            Family::Even { place_degree, max_order } => even_generators(&self.field, place_degree, max_order),
        }
    }
}

/// Monic polynomials of degree `d` in a fixed order: coefficient vectors
/// read as base-q numbers, low coefficient first.
fn monic_of_degree(field: &FieldSpec, d: usize) -> impl Iterator<Item = Polynomial> + '_ {
    let q = field.q() as u64;
    (0..q.pow(d as u32)).map(move |mut k| {
        let mut c: Vec<FieldElement> = (0..d)
            .map(|_| {
                let e = field.elements().nth((k % q) as usize).expect("in range");
                k /= q;
                e
            })
            .collect();
        c.push(field.one());
        Polynomial::from_elements(field, &c)
    })
}

/// Monic irreducibles ordered by degree, then by [`monic_of_degree`].
pub fn monic_irreducibles(field: &FieldSpec, max_degree: usize) -> Vec<Polynomial> {
    (1..=max_degree).flat_map(|d| monic_of_degree(field, d).filter(is_irreducible).collect::<Vec<_>>()).collect()
}

fn odd_generators(field: &FieldSpec, pool_degree: usize, max_degree: usize) -> Vec<RationalFunction> {
    let pool = monic_irreducibles(field, pool_degree);
    let nonsquare = field.elements().find(|e| !e.is_zero() && !e.is_square()).expect("odd field");
    let mut products: Vec<Polynomial> = Vec::new();
    // Subsets of the pool by increasing size, each in lexicographic order.
    for k in 1..=max_degree.min(pool.len()) {
        for set in (0..pool.len()).combinations(k) {
            let deg: usize = set.iter().map(|&i| pool[i].degree().unwrap_or(0)).sum();
            if deg <= max_degree {
                products.push(set.iter().fold(Polynomial::one(field), |acc, &i| acc.mul(&pool[i])));
            }
        }
    }
    let mut out: Vec<RationalFunction> = products.iter().map(|p| RationalFunction::from_poly(p.clone())).collect();
    out.extend(products.iter().map(|p| RationalFunction::from_poly(p.scale(&nonsquare))));
    out
}

/// Nonzero polynomials of degree below `d`.
fn residues(field: &FieldSpec, d: usize) -> Vec<Polynomial> {
    let mut v = vec![];
    for k in 0..d {
        for c in field.elements().filter(|e| !e.is_zero()) {
            for low in monic_of_degree(field, k) {
                v.push(low.scale(&c));
            }
        }
    }
    v
}

/// Polar parts of odd orders up to `max_order`: `Σ a_j / π^j` over odd j
/// with the top digit nonzero, or `Σ a_j x^j` at infinity.
fn polar_parts(field: &FieldSpec, pi: Option<&Polynomial>, max_order: u32) -> Vec<RationalFunction> {
    let d = pi.map_or(1, |p| p.degree().unwrap_or(1));
    let nonzero = residues(field, d);
    let mut all = nonzero.clone();
    all.insert(0, Polynomial::zero(field));
    let term = |a: &Polynomial, j: u32| -> RationalFunction {
        match pi {
            Some(p) => RationalFunction::new(a.clone(), p.pow(j as u64)).expect("nonzero"),
            None => RationalFunction::from_poly(a.shift(j as usize)),
        }
    };
    let mut out = vec![];
    for m in (1..=max_order).step_by(2) {
        let lower: Vec<u32> = (1..m).step_by(2).collect();
        for top in &nonzero {
            let base = term(top, m);
            if lower.is_empty() {
                out.push(base);
                continue;
            }
            for digits in lower.iter().map(|_| all.iter()).multi_cartesian_product() {
                let mut f = base.clone();
                for (a, &j) in digits.iter().zip(&lower) {
                    if !a.is_zero() {
                        f = f.add(&term(a, j));
                    }
                }
                out.push(f);
            }
        }
    }
    out
}

fn even_generators(field: &FieldSpec, place_degree: usize, max_order: u32) -> Vec<RationalFunction> {
    let places = monic_irreducibles(field, place_degree);
    let mut parts: Vec<Vec<RationalFunction>> = places.iter().map(|p| polar_parts(field, Some(p), max_order)).collect();
    parts.push(polar_parts(field, None, max_order));
    let c1 = field.elements().find(|e| e.absolute_trace() == 1).expect("trace map is onto");
    let constants = [RationalFunction::zero(field), RationalFunction::constant(&c1)];
    let mut out = vec![];
    for k in 1..=parts.len() {
        for set in (0..parts.len()).combinations(k) {
            for choice in set.iter().map(|&i| parts[i].iter()).multi_cartesian_product() {
                let sum = choice.iter().fold(RationalFunction::zero(field), |acc, f| acc.add(f));
                for c in &constants {
                    out.push(sum.add(c));
                }
            }
        }
    }
    out
}

/// Enumeration counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Generators in the space, and those surviving the single-generator
    /// genus filter.
    pub generators: usize,
    pub generators_kept: usize,
    pub candidates: u64,
    /// Skipped as a non-canonical affine image of an earlier candidate.
    pub symmetric: u64,
    pub not_disjoint: u64,
    pub pruned: u64,
    pub evaluated: u64,
}

impl SearchStats {
    fn merge(&mut self, o: &SearchStats) {
        self.candidates += o.candidates;
        self.symmetric += o.symmetric;
        self.not_disjoint += o.not_disjoint;
        self.pruned += o.pruned;
        self.evaluated += o.evaluated;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub genus: u64,
    #[serde(rename = "N")]
    pub n: u64,
    /// Generator indices of the witness.
    pub indices: Vec<usize>,
    pub witness: Vec<String>,
    /// Later candidates with the same (g, N), at most `max_ties`.
    pub ties: Vec<Vec<usize>>,
    pub tie_count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecordBook {
    pub q: u32,
    pub n: usize,
    pub genus_cap: u64,
    pub records: BTreeMap<u64, Record>,
    pub stats: SearchStats,
    #[serde(skip)]
    max_ties: usize,
}

impl RecordBook {
    fn empty(space: &SearchSpace) -> RecordBook {
        RecordBook {
            q: space.field.q(),
            n: space.n,
            genus_cap: space.genus_cap,
            records: BTreeMap::new(),
            stats: SearchStats::default(),
            max_ties: space.max_ties,
        }
    }

    pub fn best(&self, genus: u64) -> Option<u64> {
        self.records.get(&genus).map(|r| r.n)
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    fn offer(&mut self, genus: u64, n: u64, indices: &[usize], fs: &[RationalFunction]) {
        match self.records.get_mut(&genus) {
            Some(r) if r.n > n => {}
            Some(r) if r.n == n => {
                r.tie_count += 1;
                if r.ties.len() < self.max_ties {
                    r.ties.push(indices.to_vec());
                }
            }
            _ => {
                let witness = indices.iter().map(|&i| fs[i].to_string()).collect();
                self.records.insert(
                    genus,
                    Record { genus, n, indices: indices.to_vec(), witness, ties: vec![], tie_count: 0 },
                );
            }
        }
    }

    /// Appends a book built from later candidates.
    fn merge(mut self, later: RecordBook) -> RecordBook {
        self.stats.merge(&later.stats);
        for (g, r) in later.records {
            match self.records.get_mut(&g) {
                None => {
                    self.records.insert(g, r);
                }
                Some(mine) if r.n > mine.n => *mine = r,
                Some(mine) if r.n == mine.n => {
                    mine.tie_count += 1 + r.tie_count;
                    let room = self.max_ties.saturating_sub(mine.ties.len());
                    mine.ties.extend(std::iter::once(r.indices).chain(r.ties).take(room));
                }
                Some(_) => {}
            }
        }
        self
    }

    /// Recomputes every record from its witness text through the full
    /// lattice pipeline.
    pub fn reverify(&self) -> Result<(), String> {
        let field = FieldSpec::of_order(self.q).map_err(|e| e.to_string())?;
        for r in self.records.values() {
            let exprs: Vec<&str> = r.witness.iter().map(String::as_str).collect();
            let spec = CompositumSpec::parse(&field, &exprs).map_err(|e| e.to_string())?;
            let lattice = build_lattice(&spec).map_err(|e| e.to_string())?;
            let (n, _) = count_rational_places(&lattice);
            if (lattice.genus(), n) != (r.genus, r.n) {
                return Err(format!(
                    "record g={} N={} recomputes to g={} N={}",
                    r.genus,
                    r.n,
                    lattice.genus(),
                    n
                ));
            }
            if n > serre_bound(self.q as u64, r.genus) {
                return Err(format!("record g={} N={} exceeds the Serre bound", r.genus, r.n));
            }
        }
        Ok(())
    }

    /// Records as dataset lines.
    pub fn to_dataset(&self) -> String {
        let mut s = format!("# search q={} n={} genus cap {}\n", self.q, self.n, self.genus_cap);
        for r in self.records.values() {
            s.push_str(&format!("q={} g={} N={} flags=clean f={}\n", self.q, r.genus, r.n, r.witness.join(";")));
        }
        s
    }
}

impl fmt::Display for RecordBook {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.stats;
        writeln!(
            f,
            "q={} n={} cap={}: {} generators ({} kept), {} candidates, {} symmetric, {} not disjoint, {} pruned, {} evaluated",
            self.q,
            self.n,
            self.genus_cap,
            s.generators,
            s.generators_kept,
            s.candidates,
            s.symmetric,
            s.not_disjoint,
            s.pruned,
            s.evaluated
        )?;
        for r in self.records.values() {
            write!(f, "g={} N={} f={}", r.genus, r.n, r.witness.join("; "))?;
            if r.tie_count > 0 {
                write!(f, " (+{} ties)", r.tie_count)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Genus, then N when the genus is within `cap`. `None` for degenerate,
/// non-disjoint or pruned candidates.
pub fn evaluate_candidate(spec: &CompositumSpec, cap: u64) -> Option<(u64, u64)> {
    let forms = spec.generators().iter().map(ReducedForm::of).collect::<Result<Vec<_>, _>>().ok()?;
    match evaluate_forms(spec.field(), &forms, cap) {
        Outcome::Counted(g, n) => Some((g, n)),
        _ => None,
    }
}

enum Outcome {
    NotDisjoint,
    Pruned,
    Counted(u64, u64),
}

fn evaluate_forms(field: &FieldSpec, forms: &[ReducedForm], cap: u64) -> Outcome {
    let Ok(all) = lattice_forms(forms) else {
        return Outcome::NotDisjoint;
    };
    let genus: u64 = all.iter().map(ReducedForm::genus).sum();
    if genus > cap {
        return Outcome::Pruned;
    }
    let refs: Vec<&ReducedForm> = all.iter().collect();
    Outcome::Counted(genus, count_with_forms(field, &refs))
}

/// Disjoint candidates in enumeration order, with the number skipped.
pub fn enumerate_candidates(space: &SearchSpace) -> (Vec<CompositumSpec>, u64) {
    let fs = space.generators();
    let forms: Vec<Option<ReducedForm>> = fs.iter().map(|f| ReducedForm::of(f).ok()).collect();
    let mut out = vec![];
    let mut skipped = 0;
    for idx in (0..fs.len()).combinations(space.n) {
        let sel: Option<Vec<ReducedForm>> = idx.iter().map(|&i| forms[i].clone()).collect();
        match sel.map(|s| lattice_forms(&s)) {
            Some(Ok(_)) => {
                out.push(CompositumSpec::new(&space.field, idx.iter().map(|&i| fs[i].clone()).collect()).expect("arity"))
            }
            _ => skipped += 1,
        }
    }
    (out, skipped)
}

/// For each affine map `x -> a*x + b`, the induced map on generator
/// indices (`None` where the image is not in the list).
fn affine_actions(
    field: &FieldSpec,
    forms: &[Option<ReducedForm>],
    fs: &[RationalFunction],
) -> Vec<Vec<Option<usize>>> {
    let index: HashMap<String, usize> =
        forms.iter().enumerate().rev().filter_map(|(i, f)| Some((f.as_ref()?.class_key(), i))).collect();
    let mut maps = vec![];
    for a in field.elements().filter(|e| !e.is_zero()) {
        for b in field.elements() {
            if a.is_one() && b.is_zero() {
                continue;
            }
            let map: Vec<Option<usize>> = fs
                .par_iter()
                .map(|f| {
                    let g = f.compose_affine(&a, &b);
                    ReducedForm::of(&g).ok().and_then(|r| index.get(&r.class_key()).copied())
                })
                .collect();
            maps.push(map);
        }
    }
    maps
}

fn is_canonical(idx: &[usize], maps: &[Vec<Option<usize>>]) -> bool {
    let mut image = Vec::with_capacity(idx.len());
    maps.iter().all(|m| {
        image.clear();
        for &i in idx {
            match m[i] {
                Some(j) => image.push(j),
                None => return true,
            }
        }
        image.sort_unstable();
        idx <= image.as_slice()
    })
}

pub fn run_search(space: &SearchSpace) -> RecordBook {
    let fs = space.generators();
    let mut book = RecordBook::empty(space);
    book.stats.generators = fs.len();
    // A subfield's genus bounds the compositum's from below, so generators
    // above the cap never occur in a record.
    let forms: Vec<Option<ReducedForm>> = fs.par_iter().map(|f| ReducedForm::of(f).ok()).collect();
    let keep: Vec<usize> = (0..fs.len())
        .filter(|&i| forms[i].as_ref().is_some_and(|r| r.degeneracy().is_none() && r.genus() <= space.genus_cap))
        .collect();
    book.stats.generators_kept = keep.len();
    let maps = if space.symmetry { affine_actions(&space.field, &forms, &fs) } else { vec![] };

    for block in &keep.iter().copied().combinations(space.n).chunks(BLOCK) {
        let block: Vec<Vec<usize>> = block.collect();
        let partial: Vec<RecordBook> = block
            .par_chunks(64)
            .map(|chunk| {
                let mut b = RecordBook::empty(space);
                for idx in chunk {
                    b.stats.candidates += 1;
                    if space.symmetry && !is_canonical(idx, &maps) {
                        b.stats.symmetric += 1;
                        continue;
                    }
                    let sel: Vec<ReducedForm> = idx.iter().map(|&i| forms[i].clone().expect("kept")).collect();
                    match evaluate_forms(&space.field, &sel, space.genus_cap) {
                        Outcome::NotDisjoint => b.stats.not_disjoint += 1,
                        Outcome::Pruned => b.stats.pruned += 1,
                        Outcome::Counted(g, n) => {
                            b.stats.evaluated += 1;
                            b.offer(g, n, idx, &fs);
                        }
                    }
                }
                b
            })
            .collect();
        book = partial.into_iter().fold(book, RecordBook::merge);
    }
    book
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2_rational() -> SearchSpace {
        let f = FieldSpec::of_order(2).unwrap();
        SearchSpace::new(&f, 2, Family::Even { place_degree: 1, max_order: 1 }, 2).unwrap()
    }

    fn q3_pool3() -> SearchSpace {
        let f = FieldSpec::of_order(3).unwrap();
        SearchSpace::new(&f, 2, Family::Odd { pool_degree: 3, max_degree: 3 }, 4).unwrap()
    }

    #[test]
    fn irreducible_counts() {
        let f2 = FieldSpec::of_order(2).unwrap();
        assert_eq!(monic_irreducibles(&f2, 4).len(), 2 + 1 + 2 + 3);
        let f3 = FieldSpec::of_order(3).unwrap();
        assert_eq!(monic_irreducibles(&f3, 3).len(), 3 + 3 + 8);
    }

    #[test]
    fn q2_generators() {
        let space = q2_rational();
        let fs: Vec<String> = space.generators().iter().map(|f| f.to_string()).collect();
        assert_eq!(fs.len(), 14);
        assert!(fs.contains(&"1/x".to_string()));
        assert!(fs.contains(&"1/(x + 1)".to_string()));
        let (cands, skipped) = enumerate_candidates(&space);
        assert_eq!(cands.len() as u64 + skipped, 91);
    }

    #[test]
    fn odd_generators_degree_one() {
        let f = FieldSpec::of_order(3).unwrap();
        let space = SearchSpace::new(&f, 1, Family::Odd { pool_degree: 1, max_degree: 1 }, 10).unwrap();
        let fs: Vec<String> = space.generators().iter().map(|f| f.to_string()).collect();
        assert_eq!(fs, ["x", "x + 1", "x + 2", "2*x", "2*x + 2", "2*x + 1"]);
    }

    #[test]
    fn evaluate_examples() {
        let f3 = FieldSpec::of_order(3).unwrap();
        let ex = CompositumSpec::parse(&f3, &["2*(x^3+2*x+2)", "x^3+2*x+1"]).unwrap();
        assert_eq!(evaluate_candidate(&ex, 10), Some((4, 12)));
        assert_eq!(evaluate_candidate(&ex, 3), None);
        let f2 = FieldSpec::of_order(2).unwrap();
        let s = CompositumSpec::parse(&f2, &["x", "x^3"]).unwrap();
        assert_eq!(evaluate_candidate(&s, 5), Some((2, 5)));
    }

    #[test]
    fn q2_record() {
        let book = run_search(&q2_rational());
        assert_eq!(book.best(1), Some(4));
        assert_eq!(book.stats.candidates, 91);
        book.reverify().unwrap();
    }

    #[test]
    fn q3_record_with_example_tied() {
        let book = run_search(&q3_pool3());
        assert_eq!(book.best(4), Some(12));
        book.reverify().unwrap();
        // The worked example's pair lies in the space and ties the record.
        let fs: Vec<String> = q3_pool3().generators().iter().map(|f| f.to_string()).collect();
        let ex = CompositumSpec::parse(&FieldSpec::of_order(3).unwrap(), &["2*(x^3+2*x+2)", "x^3+2*x+1"]).unwrap();
        for g in ex.generators() {
            assert!(fs.contains(&g.to_string()), "{g}");
        }
        assert_eq!(evaluate_candidate(&ex, 4), Some((4, 12)));
        assert!(book.records.values().all(|r| r.genus <= 4));
    }

    #[test]
    fn deterministic_across_pools() {
        let space = q3_pool3();
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| run_search(&space));
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(|| run_search(&space));
        assert_eq!(one, four);
    }

    #[test]
    fn pruning_matches_post_filter() {
        let mut space = q3_pool3();
        let pruned = run_search(&space);
        space.genus_cap = u64::MAX;
        let full = run_search(&space);
        let filtered: BTreeMap<u64, Record> = full.records.into_iter().filter(|(g, _)| *g <= 4).collect();
        assert_eq!(pruned.records, filtered);
    }

    #[test]
    fn symmetry_keeps_records() {
        let plain = run_search(&q3_pool3());
        let sym = run_search(&q3_pool3().with_symmetry(true));
        assert!(sym.stats.symmetric > 0);
        for (g, r) in &plain.records {
            let s = &sym.records[g];
            assert_eq!((s.n, &s.indices), (r.n, &r.indices));
        }
        sym.reverify().unwrap();
    }

    #[test]
    fn empty_space() {
        let f = FieldSpec::of_order(3).unwrap();
        assert!(monic_irreducibles(&f, 0).is_empty());
        // Six generators, one candidate, and it contains both x and 2x.
        let space = SearchSpace::new(&f, 6, Family::Odd { pool_degree: 1, max_degree: 1 }, 10).unwrap();
        let book = run_search(&space);
        assert_eq!(book.stats.candidates, 1);
        assert_eq!(book.stats.not_disjoint, 1);
        assert!(book.is_empty());
        assert_eq!(book.to_dataset().lines().count(), 1);
    }

    #[test]
    fn export_reparses() {
        let book = run_search(&q2_rational());
        let rows = crate::tables::parse_dataset(&book.to_dataset()).unwrap();
        assert_eq!(rows.len(), book.records.len());
        let r = crate::tables::verify_row(&rows[0], Default::default());
        assert!(r.is_match(), "{:?}", r.verdict);
    }

    #[test]
    fn wrong_mode_rejected() {
        let f = FieldSpec::of_order(3).unwrap();
        assert_eq!(
            SearchSpace::new(&f, 2, Family::Even { place_degree: 1, max_order: 1 }, 3).unwrap_err(),
            SearchError::WrongMode
        );
    }
}
