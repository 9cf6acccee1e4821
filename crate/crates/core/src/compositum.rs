//! The (Z/2Z)^n compositum `L = K_1 ... K_n` of quadratic extensions of F_q(x).
//!
//! Subfields are indexed by nonzero bitmasks `I ⊆ {1..n}`: bit `i - 1` set
//! means `i ∈ I`. Everything below is computed from the 2^n - 1 quadratic
//! subfields; places of `L` are never materialized.

use serde::Serialize;
use thiserror::Error;

use crate::eqgen;
use crate::expr::{parse_expr, ExprError};
use crate::gf::{FieldElement, FieldSpec};
use crate::poly::{rational_places, Place, RationalFunction};
use crate::quad::{Degeneracy, Mode, QuadError, QuadraticCharacter, ReducedForm, SplitStatus};
use crate::tables::bounds::{hasse_weil_bound, serre_bound};

/// Largest supported number of generators.
pub const MAX_GENERATORS: usize = 4;

/// Guard for the brute-force oracle: q^(n+1) must not exceed this.
pub const BRUTE_FORCE_LIMIT: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompositumError {
    #[error("number of generators must be between 1 and {MAX_GENERATORS}, got {0}")]
    BadArity(usize),
    #[error("generators live over different fields")]
    FieldMismatch,
    #[error("f_{index} defines a degenerate extension: {kind}")]
    Degenerate { index: usize, kind: Degeneracy },
    #[error("extensions are not disjoint: subset {{{}}} gives a {kind}", fmt_subset(.subset))]
    NotDisjoint { subset: Vec<usize>, kind: Degeneracy },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("operation requires odd characteristic")]
    NotOddCharacteristic,
    #[error("brute force over q^(n+1) = {0} tuples exceeds the guard of {BRUTE_FORCE_LIMIT}")]
    TooLarge(u64),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("cannot parse f_{index}: {source}")]
    Parse { index: usize, source: ExprError },
}

fn fmt_subset(s: &[usize]) -> String {
    s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

/// Members of the subset encoded by `mask`, 1-based.
pub fn subset_of(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Generators f_1..f_n over one field.
#[derive(Clone, Debug)]
pub struct CompositumSpec {
    field: FieldSpec,
    f: Vec<RationalFunction>,
}

impl CompositumSpec {
    pub fn new(field: &FieldSpec, f: Vec<RationalFunction>) -> Result<CompositumSpec, CompositumError> {
        if f.is_empty() || f.len() > MAX_GENERATORS {
            return Err(CompositumError::BadArity(f.len()));
        }
        if f.iter().any(|g| !g.field().same_field(field)) {
            return Err(CompositumError::FieldMismatch);
        }
        Ok(CompositumSpec { field: field.clone(), f })
    }

    /// Parses each generator with [`parse_expr`].
    pub fn parse(field: &FieldSpec, exprs: &[&str]) -> Result<CompositumSpec, CompositumError> {
        let f = exprs
            .iter()
            .enumerate()
            .map(|(i, s)| parse_expr(s, field).map_err(|source| CompositumError::Parse { index: i + 1, source }))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(field, f)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.f.len()
    }

    pub fn generators(&self) -> &[RationalFunction] {
        &self.f
    }

    pub fn mode(&self) -> Mode {
        Mode::of(&self.field)
    }
}

/// The 2^n - 1 quadratic subfields `K_I`, entry `mask - 1` for subset `mask`.
#[derive(Clone, Debug)]
pub struct CharacterLattice {
    spec: CompositumSpec,
    chars: Vec<QuadraticCharacter>,
}

/// Combines generator forms into all subset forms; checks singletons first.
pub(crate) fn lattice_forms(forms: &[ReducedForm]) -> Result<Vec<ReducedForm>, CompositumError> {
    let n = forms.len();
    for (i, f) in forms.iter().enumerate() {
        if let Some(kind) = f.degeneracy() {
            return Err(CompositumError::Degenerate { index: i + 1, kind });
        }
    }
    let mut out: Vec<ReducedForm> = Vec::with_capacity((1 << n) - 1);
    for mask in 1usize..(1 << n) {
        let low = mask & mask.wrapping_neg();
        let form = if low == mask {
            forms[low.trailing_zeros() as usize].clone()
        } else {
            let f = out[(mask ^ low) - 1].combine(&forms[low.trailing_zeros() as usize]);
            if let Some(kind) = f.degeneracy() {
                return Err(CompositumError::NotDisjoint { subset: subset_of(mask), kind });
            }
            f
        };
        out.push(form);
    }
    Ok(out)
}

pub fn build_lattice(spec: &CompositumSpec) -> Result<CharacterLattice, CompositumError> {
    let forms = spec.f.iter().map(ReducedForm::of).collect::<Result<Vec<_>, _>>()?;
    let combined = lattice_forms(&forms)?;
    let mode = spec.mode();
    let mut fs: Vec<RationalFunction> = Vec::with_capacity(combined.len());
    for mask in 1usize..(1 << spec.n()) {
        let low = mask & mask.wrapping_neg();
        let gi = &spec.f[low.trailing_zeros() as usize];
        let f = if low == mask {
            gi.clone()
        } else {
            let rest = &fs[(mask ^ low) - 1];
            match mode {
                Mode::Kummer => rest.mul(gi),
                Mode::ArtinSchreier => rest.add(gi),
            }
        };
        fs.push(f);
    }
    let chars = fs
        .into_iter()
        .zip(combined)
        .map(|(f, form)| QuadraticCharacter::from_form(f, form))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CharacterLattice { spec: spec.clone(), chars })
}

/// Status of one rational place under every subfield, with its contribution to N(L).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceLog {
    pub place: Place,
    pub statuses: Vec<SplitStatus>,
    pub contribution: u64,
}

impl PlaceLog {
    pub fn status_string(&self) -> String {
        self.statuses.iter().map(|s| s.to_string()).collect()
    }
}

/// Contribution of a place from its status vector: zero if some subfield is
/// inert, otherwise 1 + #split (= 2^n / |inertia group|).
pub fn contribution(statuses: &[SplitStatus]) -> u64 {
    if statuses.contains(&SplitStatus::Inert) {
        0
    } else {
        1 + statuses.iter().filter(|s| **s == SplitStatus::Split).count() as u64
    }
}

impl CharacterLattice {
    pub fn spec(&self) -> &CompositumSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn characters(&self) -> &[QuadraticCharacter] {
        &self.chars
    }

    /// Character of the subset `mask` (nonzero, below 2^n).
    pub fn character(&self, mask: usize) -> &QuadraticCharacter {
        &self.chars[mask - 1]
    }

    pub fn subfield_genera(&self) -> Vec<u64> {
        self.chars.iter().map(|c| c.genus()).collect()
    }

    /// g_L as the sum of the subfield genera.
    pub fn genus(&self) -> u64 {
        self.chars.iter().map(|c| c.genus()).sum()
    }

    /// Places ramified in some subfield, in canonical order.
    pub fn ramified_places(&self) -> Vec<Place> {
        let mut v: Vec<Place> = self.chars.iter().flat_map(|c| c.ramified().iter().map(|r| r.place.clone())).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn place_log(&self) -> Vec<PlaceLog> {
        let field = self.spec.field();
        rational_places(field)
            .into_iter()
            .map(|place| {
                let a = place.root().map(|r| r.raw());
                let statuses: Vec<SplitStatus> = self.chars.iter().map(|c| c.form().status_raw(field, a)).collect();
                let contribution = contribution(&statuses);
                PlaceLog { place, statuses, contribution }
            })
            .collect()
    }
}

pub fn genus(lattice: &CharacterLattice) -> u64 {
    lattice.genus()
}

/// `2^(n-2) (Σ_{P ramified} deg P - 4) + 1`, which must agree with [`genus`].
pub fn genus_hurwitz_crosscheck(lattice: &CharacterLattice) -> Result<u64, CompositumError> {
    if lattice.spec.mode() != Mode::Kummer {
        return Err(CompositumError::NotOddCharacteristic);
    }
    let s: i64 = lattice.ramified_places().iter().map(|p| p.degree() as i64).sum();
    let n = lattice.n() as u32;
    let g = if n >= 2 { (1i64 << (n - 2)) * (s - 4) + 1 } else { (s - 4) / 2 + 1 };
    let sum = lattice.genus() as i64;
    if g != sum {
        return Err(CompositumError::InternalInconsistency(format!(
            "Hurwitz formula gives {g}, subfield sum gives {sum} (ramified degree {s}, n = {n})"
        )));
    }
    Ok(g as u64)
}

/// N(L) and the per-place log.
pub fn count_rational_places(lattice: &CharacterLattice) -> (u64, Vec<PlaceLog>) {
    let log = lattice.place_log();
    (log.iter().map(|p| p.contribution).sum(), log)
}

/// Number of rational places of L without building the log.
pub fn rational_place_count(lattice: &CharacterLattice) -> u64 {
    let forms: Vec<&ReducedForm> = lattice.chars.iter().map(|c| c.form()).collect();
    count_with_forms(lattice.spec.field(), &forms)
}

/// N(L) from the 2^n - 1 subset forms.
pub(crate) fn count_with_forms(field: &FieldSpec, forms: &[&ReducedForm]) -> u64 {
    let mut total = 0;
    let mut statuses = Vec::with_capacity(forms.len());
    for a in field.elements().map(|e| Some(e.raw())).chain(std::iter::once(None)) {
        statuses.clear();
        for f in forms {
            let s = f.status_raw(field, a);
            if s == SplitStatus::Inert {
                break;
            }
            statuses.push(s);
        }
        if statuses.len() == forms.len() {
            total += contribution(&statuses);
        }
    }
    total
}

/// Number of affine solutions by exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteCount {
    pub total: u64,
    /// Solutions above each `x = a`, `None` where some f_i has a pole.
    pub per_point: Vec<(FieldElement, Option<u64>)>,
}

/// Counts `(a, b_1..b_n) ∈ F_q^(n+1)` with every f_i regular at `a` and
/// `b_i^2 = f_i(a)` (odd) or `b_i^2 + b_i = f_i(a)` (even).
pub fn brute_force_affine_count(spec: &CompositumSpec) -> Result<BruteCount, CompositumError> {
    let field = spec.field();
    let q = field.q() as u64;
    let size = q.checked_pow(spec.n() as u32 + 1).unwrap_or(u64::MAX);
    if size > BRUTE_FORCE_LIMIT {
        return Err(CompositumError::TooLarge(size));
    }
    let even = field.p() == 2;
    let elems: Vec<FieldElement> = field.elements().collect();
    let mut per_point = Vec::with_capacity(elems.len());
    let mut total = 0;
    for a in &elems {
        let values: Option<Vec<FieldElement>> = spec.f.iter().map(|f| f.value_at(a)).collect();
        let Some(values) = values else {
            per_point.push((a.clone(), None));
            continue;
        };
        // The constraints on different b_i are independent, so the number of
        // tuples is the product of the per-coordinate counts.
        let mut count = 1u64;
        for v in &values {
            let solutions = elems
                .iter()
                .filter(|b| {
                    let lhs = if even { &(*b * *b) + *b } else { *b * *b };
                    lhs == *v
                })
                .count() as u64;
            count *= solutions;
        }
        total += count;
        per_point.push((a.clone(), Some(count)));
    }
    Ok(BruteCount { total, per_point })
}

/// One rational place in the comparison between the brute-force count and N(L).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconciliationEntry {
    pub place: Place,
    /// All f_i regular at the place and (odd characteristic) at most one of
    /// them vanishing there, to order 1. On such fibres the affine count
    /// equals the place contribution.
    pub smooth: bool,
    pub brute_local: Option<u64>,
    pub contribution: u64,
    /// `contribution - brute_local` (the whole contribution at poles and infinity).
    pub correction: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconciliation {
    pub brute_total: u64,
    pub rational_places: u64,
    pub entries: Vec<ReconciliationEntry>,
}

impl Reconciliation {
    pub fn corrections(&self) -> i64 {
        self.entries.iter().map(|e| e.correction).sum()
    }

    /// Exact agreement: smooth fibres match and the corrections close the gap.
    pub fn is_exact(&self) -> bool {
        self.entries.iter().filter(|e| e.smooth).all(|e| e.correction == 0)
            && self.brute_total as i64 + self.corrections() == self.rational_places as i64
    }
}

/// Itemizes `N(L) = brute_total + Σ corrections` place by place.
pub fn reconcile(lattice: &CharacterLattice) -> Result<Reconciliation, CompositumError> {
    let spec = lattice.spec();
    let brute = brute_force_affine_count(spec)?;
    let (n_total, log) = count_rational_places(lattice);
    let odd = spec.mode() == Mode::Kummer;
    let mut entries = Vec::with_capacity(log.len());
    for pl in log {
        let entry = match pl.place.root() {
            None => ReconciliationEntry {
                place: pl.place,
                smooth: false,
                brute_local: None,
                contribution: pl.contribution,
                correction: pl.contribution as i64,
            },
            Some(a) => {
                let local = brute.per_point.iter().find(|(b, _)| *b == a).and_then(|(_, c)| *c);
                let smooth = local.is_some() && {
                    if odd {
                        let vals: Vec<i64> =
                            spec.f.iter().map(|f| f.valuation(&pl.place).expect("nonzero")).collect();
                        let vanishing: Vec<i64> = vals.into_iter().filter(|&v| v > 0).collect();
                        vanishing.is_empty() || vanishing == [1]
                    } else {
                        true
                    }
                };
                ReconciliationEntry {
                    place: pl.place,
                    smooth,
                    brute_local: local,
                    contribution: pl.contribution,
                    correction: pl.contribution as i64 - local.unwrap_or(0) as i64,
                }
            }
        };
        entries.push(entry);
    }
    Ok(Reconciliation { brute_total: brute.total, rational_places: n_total, entries })
}

#[derive(Clone, Debug, Serialize)]
pub struct SubfieldReport {
    pub subset: Vec<usize>,
    pub f: String,
    pub reduced: String,
    pub ramified: Vec<String>,
    pub genus: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaceReport {
    pub place: String,
    pub statuses: String,
    pub contribution: u64,
}

/// Everything computed for one compositum.
#[derive(Clone, Debug, Serialize)]
pub struct CurveReport {
    pub q: u32,
    pub field: String,
    pub modulus: Vec<u32>,
    pub w: Vec<u32>,
    pub w_flagged: bool,
    pub n: usize,
    pub f: Vec<String>,
    pub genus: u64,
    #[serde(rename = "N")]
    pub rational_places: u64,
    pub subfield_genera: Vec<u64>,
    pub subfields: Vec<SubfieldReport>,
    pub place_log: Vec<PlaceReport>,
    pub equation: Option<String>,
    pub serre_bound: u64,
    pub hasse_weil_bound: u64,
}

impl CurveReport {
    pub fn build(lattice: &CharacterLattice, with_equation: bool) -> Result<CurveReport, CompositumError> {
        let spec = lattice.spec();
        let field = spec.field();
        let (count, log) = count_rational_places(lattice);
        let genus = lattice.genus();
        let equation = if with_equation {
            let eq = eqgen::minimal_polynomial(spec).map_err(|e| CompositumError::InternalInconsistency(e.to_string()))?;
            Some(eq.to_string())
        } else {
            None
        };
        let subfields = lattice
            .characters()
            .iter()
            .enumerate()
            .map(|(i, c)| SubfieldReport {
                subset: subset_of(i + 1),
                f: c.f().to_string(),
                reduced: c.reduced_function().to_string(),
                ramified: c
                    .ramified()
                    .iter()
                    .map(|r| match r.pole_order {
                        Some(m) => format!("{} (deg {}, m={})", r.place, r.place.degree(), m),
                        None => format!("{} (deg {})", r.place, r.place.degree()),
                    })
                    .collect(),
                genus: c.genus(),
            })
            .collect();
        Ok(CurveReport {
            q: field.q(),
            field: field.describe(),
            modulus: field.modulus().to_vec(),
            w: field.generator().coeffs(),
            w_flagged: field.generator_flagged(),
            n: spec.n(),
            f: spec.generators().iter().map(|f| f.to_string()).collect(),
            genus,
            rational_places: count,
            subfield_genera: lattice.subfield_genera(),
            subfields,
            place_log: log
                .iter()
                .map(|p| PlaceReport {
                    place: p.place.to_string(),
                    statuses: p.status_string(),
                    contribution: p.contribution,
                })
                .collect(),
            equation,
            serre_bound: serre_bound(field.q() as u64, genus),
            hasse_weil_bound: hasse_weil_bound(field.q() as u64, genus),
        })
    }
}
