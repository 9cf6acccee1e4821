//! Expansion with indeterminate `f_i`, for comparison against printed
//! closed forms.
//!
//! Coefficients live in `Z[f_1..f_n]` (odd case) or `F_2[f_1..f_n]`
//! (even case). A printed sum such as `Σ_{i≠j} f_i^2 f_j` admits two
//! readings: one term per distinct monomial, or one term per ordered tuple
//! of distinct indices. Both are expanded so the caller can see which one
//! the generated polynomial agrees with.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Algebra, Coefficient, EqGenError};
use crate::quad::Mode;

/// Sparse multivariate polynomial with `i64` coefficients, optionally
/// reduced modulo a small integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    modulus: Option<i64>,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl MultiPoly {
    pub fn zero(nvars: usize, modulus: Option<i64>) -> MultiPoly {
        MultiPoly { nvars, modulus, terms: BTreeMap::new() }
    }

    pub fn monomial(nvars: usize, modulus: Option<i64>, coeff: i64, exps: &[u32]) -> MultiPoly {
        assert_eq!(exps.len(), nvars);
        let mut p = MultiPoly::zero(nvars, modulus);
        p.add_term(exps.to_vec(), coeff);
        p
    }

    /// The indeterminate `f_{i+1}`.
    pub fn var(nvars: usize, modulus: Option<i64>, i: usize) -> MultiPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MultiPoly::monomial(nvars, modulus, 1, &e)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, i64)> {
        self.terms.iter().map(|(e, c)| (e, *c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> i64 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: i64) {
        let entry = self.terms.entry(exps).or_insert(0);
        *entry += coeff;
        if let Some(m) = self.modulus {
            *entry = entry.rem_euclid(m);
        }
        if *entry == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    fn scaled(&self, k: i64) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars, self.modulus);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }
}

impl Coefficient for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.nvars, self.modulus)
    }
    fn one_like(&self) -> Self {
        MultiPoly::monomial(self.nvars, self.modulus, 1, &vec![0; self.nvars])
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(-1))
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = self.zero_like();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, &c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("f{}", i + 1) } else { format!("f{}^{k}", i + 1) })
                .collect();
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (mono.is_empty(), mag) {
                (true, _) => write!(f, "{mag}")?,
                (false, 1) => f.write_str(&mono.join("*"))?,
                (false, _) => write!(f, "{mag}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Ascending-in-Y coefficients of `Π_I (Y - σ_I(y))` with indeterminate `f_i`.
pub fn generic_minimal_polynomial(mode: Mode, n: usize) -> Result<Vec<MultiPoly>, EqGenError> {
    let modulus = match mode {
        Mode::Kummer => None,
        Mode::ArtinSchreier => Some(2),
    };
    let f: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(n, modulus, i)).collect();
    Algebra::new(mode, &f)?.minimal_polynomial()
}

/// One printed summand shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    /// A single monomial with the given exponent vector.
    Fixed(Vec<u32>),
    /// `Σ Π_k f_{i_k}^{λ_k}` over pairwise distinct indices.
    Sum(Vec<u32>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumReading {
    DistinctMonomial,
    OrderedTuple,
}

/// A closed form as `(Y-degree, [(coefficient, shape)])` entries.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    pub mode: Mode,
    pub n: usize,
    pub rows: Vec<(usize, Vec<(i64, Shape)>)>,
}

fn injections(k: usize, n: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for prefix in injections(k - 1, n) {
        for i in 0..n {
            if !prefix.contains(&i) {
                let mut t = prefix.clone();
                t.push(i);
                out.push(t);
            }
        }
    }
    out
}

impl ClosedForm {
    fn modulus(&self) -> Option<i64> {
        match self.mode {
            Mode::Kummer => None,
            Mode::ArtinSchreier => Some(2),
        }
    }

    fn shape_poly(&self, shape: &Shape, reading: SumReading) -> MultiPoly {
        let m = self.modulus();
        match shape {
            Shape::Fixed(e) => MultiPoly::monomial(self.n, m, 1, e),
            Shape::Sum(parts) => {
                let exps: Vec<Vec<u32>> = injections(parts.len(), self.n)
                    .into_iter()
                    .map(|idx| {
                        let mut e = vec![0; self.n];
                        for (k, &i) in idx.iter().enumerate() {
                            e[i] = parts[k];
                        }
                        e
                    })
                    .collect();
                let mut out = MultiPoly::zero(self.n, m);
                match reading {
                    SumReading::OrderedTuple => {
                        for e in exps {
                            out.add_term(e, 1);
                        }
                    }
                    SumReading::DistinctMonomial => {
                        for e in exps.into_iter().collect::<BTreeSet<_>>() {
                            out.add_term(e, 1);
                        }
                    }
                }
                out
            }
        }
    }

    /// Ascending coefficient list under the given reading.
    pub fn expand(&self, reading: SumReading) -> Vec<MultiPoly> {
        let m = self.modulus();
        let top = 1usize << self.n;
        let mut out = vec![MultiPoly::zero(self.n, m); top + 1];
        for (deg, summands) in &self.rows {
            for (c, shape) in summands {
                out[*deg] = out[*deg].add(&self.shape_poly(shape, reading).scaled(*c));
            }
        }
        out
    }
}

/// `generated - printed` at one Y-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermMismatch {
    pub degree: usize,
    pub difference: MultiPoly,
}

impl fmt::Display for TermMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y^{}: generated - printed = {}", self.degree, self.difference)
    }
}

pub fn compare(generated: &[MultiPoly], printed: &[MultiPoly]) -> Vec<TermMismatch> {
    generated
        .iter()
        .zip(printed)
        .enumerate()
        .filter_map(|(degree, (g, p))| {
            let difference = g.sub(p);
            (!difference.is_zero()).then_some(TermMismatch { degree, difference })
        })
        .collect()
}

fn s(parts: &[u32]) -> Shape {
    Shape::Sum(parts.to_vec())
}

fn fx(e: &[u32]) -> Shape {
    Shape::Fixed(e.to_vec())
}

/// The printed closed forms for n = 2 and n = 3 in both characteristics.
pub fn printed_closed_form(mode: Mode, n: usize) -> Option<ClosedForm> {
    let rows = match (mode, n) {
        (Mode::Kummer, 2) => vec![
            (4, vec![(1, fx(&[0, 0]))]),
            (2, vec![(-2, s(&[1]))]),
            (0, vec![(1, s(&[2])), (-2, fx(&[1, 1]))]),
        ],
        (Mode::ArtinSchreier, 2) => vec![
            (4, vec![(1, fx(&[0, 0]))]),
            (3, vec![(1, fx(&[0, 0]))]),
            (2, vec![(1, s(&[1]))]),
            (1, vec![(1, fx(&[1, 1]))]),
            (0, vec![(1, fx(&[2, 2]))]),
        ],
        (Mode::Kummer, 3) => vec![
            (8, vec![(1, fx(&[0, 0, 0]))]),
            (6, vec![(-4, s(&[1]))]),
            (4, vec![(6, s(&[2])), (4, s(&[1, 1]))]),
            (2, vec![(-4, s(&[3])), (4, s(&[2, 1])), (-40, fx(&[1, 1, 1]))]),
            (0, vec![(1, s(&[4])), (-4, s(&[3, 1])), (6, s(&[2, 2])), (4, s(&[2, 1, 1]))]),
        ],
        (Mode::ArtinSchreier, 3) => vec![
            (8, vec![(1, fx(&[0, 0, 0]))]),
            (7, vec![(1, fx(&[0, 0, 0]))]),
            (6, vec![(1, s(&[1]))]),
            (5, vec![(1, fx(&[1, 1, 1])), (1, s(&[1, 1]))]),
            (4, vec![(1, fx(&[1, 1, 1])), (1, s(&[2, 2]))]),
            (3, vec![(1, fx(&[2, 2, 2])), (1, s(&[1, 2, 2]))]),
            (2, vec![(1, s(&[3, 2, 2]))]),
            (1, vec![(1, fx(&[3, 3, 3]))]),
            (0, vec![(1, fx(&[4, 4, 4]))]),
        ],
        _ => return None,
    };
    Some(ClosedForm { mode, n, rows })
}

/// Outcome of comparing the generic expansion against a printed form.
#[derive(Clone, Debug)]
pub struct ClosedFormCheck {
    pub mode: Mode,
    pub n: usize,
    pub generated: Vec<MultiPoly>,
    pub distinct_monomial: Vec<TermMismatch>,
    pub ordered_tuple: Vec<TermMismatch>,
}

impl ClosedFormCheck {
    pub fn matches_some_reading(&self) -> bool {
        self.distinct_monomial.is_empty() || self.ordered_tuple.is_empty()
    }
}

pub fn check_closed_form(mode: Mode, n: usize) -> Option<ClosedFormCheck> {
    let printed = printed_closed_form(mode, n)?;
    let generated = generic_minimal_polynomial(mode, n).ok()?;
    let distinct_monomial = compare(&generated, &printed.expand(SumReading::DistinctMonomial));
    let ordered_tuple = compare(&generated, &printed.expand(SumReading::OrderedTuple));
    Some(ClosedFormCheck { mode, n, generated, distinct_monomial, ordered_tuple })
}
