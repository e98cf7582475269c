//! Occupation-number states and creation-operator monomials.
//!
//! A multi-particle basis ket is a product of creation operators applied to
//! the vacuum. Bosonic operators commute, fermionic ones anticommute, so the
//! same product can carry a sign depending on the order of its factors. The
//! canonical order used everywhere in this crate is lexicographic on
//! `(path, label)`:
//!
//! ```text
//! |n⟩ = ∏_m (a†_m)^{n_m} / √(n_m!) |0⟩      (m ascending)
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Amplitudes with modulus below this are dropped from a state.
pub const DROP_THRESHOLD: f64 = 1e-12;

/// Absolute tolerance for comparing amplitudes, norms and probabilities.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    Boson,
    Fermion,
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistics::Boson => f.write_str("boson"),
            Statistics::Fermion => f.write_str("fermion"),
        }
    }
}

/// A spatial path together with an internal label (polarisation, arrival
/// time, ...). Particles on the same path with different labels are
/// distinguishable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mode {
    pub path: usize,
    pub label: usize,
}

impl Mode {
    pub const fn new(path: usize, label: usize) -> Self {
        Mode { path, label }
    }

    /// Label-0 mode on `path`.
    pub const fn on_path(path: usize) -> Self {
        Mode { path, label: 0 }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.label == 0 {
            write!(f, "{}", self.path)
        } else {
            write!(f, "{}.{}", self.path, self.label)
        }
    }
}

/// Particle count per composite mode. Zero counts are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occupation(BTreeMap<Mode, u32>);

impl Occupation {
    pub fn vacuum() -> Self {
        Occupation::default()
    }

    /// Builds an occupation from `(mode, count)` pairs; repeated modes add up.
    pub fn from_counts<I: IntoIterator<Item = (Mode, u32)>>(counts: I) -> Self {
        let mut map = BTreeMap::new();
        for (mode, n) in counts {
            if n > 0 {
                *map.entry(mode).or_insert(0) += n;
            }
        }
        Occupation(map)
    }

    /// Label-0 occupation with `counts[p]` particles on path `p`.
    pub fn from_path_counts(counts: &[u32]) -> Self {
        Self::from_counts(
            counts
                .iter()
                .enumerate()
                .map(|(p, &n)| (Mode::on_path(p), n)),
        )
    }

    pub fn count(&self, mode: Mode) -> u32 {
        self.0.get(&mode).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Mode, u32)> + '_ {
        self.0.iter().map(|(&m, &n)| (m, n))
    }

    pub fn total(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_path(&self) -> Option<usize> {
        self.0.keys().map(|m| m.path).max()
    }

    pub fn max_label(&self) -> Option<usize> {
        self.0.keys().map(|m| m.label).max()
    }

    /// Particle count per path, summed over labels.
    pub fn path_counts(&self, n_paths: usize) -> Vec<u32> {
        let mut counts = vec![0; n_paths];
        for (mode, n) in self.iter() {
            counts[mode.path] += n;
        }
        counts
    }

    /// Creation-operator factors in canonical order, one entry per particle.
    pub fn factors(&self) -> Vec<Mode> {
        self.iter()
            .flat_map(|(m, n)| std::iter::repeat_n(m, n as usize))
            .collect()
    }

    fn validate(&self, stats: Statistics, n_paths: usize) -> Result<()> {
        for (mode, n) in self.iter() {
            if mode.path >= n_paths {
                return Err(Error::PathOutOfRange {
                    path: mode.path,
                    n_paths,
                });
            }
            if stats == Statistics::Fermion && n > 1 {
                return Err(Error::PauliExclusion { mode });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Occupation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("|")?;
        for (i, (mode, n)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}_{}", n, mode)?;
        }
        f.write_str("⟩")
    }
}

/// A coefficient times an ordered product of creation operators.
#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    factors: Vec<Mode>,
    coefficient: Complex64,
}

impl Monomial {
    pub fn new(factors: Vec<Mode>, coefficient: Complex64) -> Self {
        Monomial {
            factors,
            coefficient,
        }
    }

    /// The annihilated monomial: no factors, coefficient 0.
    pub fn zero() -> Self {
        Monomial {
            factors: Vec::new(),
            coefficient: Complex64::new(0.0, 0.0),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient == Complex64::new(0.0, 0.0)
    }

    pub fn factors(&self) -> &[Mode] {
        &self.factors
    }

    pub fn coefficient(&self) -> Complex64 {
        self.coefficient
    }

    pub fn is_canonical(&self) -> bool {
        self.factors.windows(2).all(|w| w[0] <= w[1])
    }
}

/// Sorts `items` stably and returns the number of inversions removed.
fn merge_sort_inversions(items: &mut Vec<Mode>) -> usize {
    let n = items.len();
    if n < 2 {
        return 0;
    }
    let mut right = items.split_off(n / 2);
    let mut left = std::mem::take(items);
    let mut inversions = merge_sort_inversions(&mut left) + merge_sort_inversions(&mut right);

    items.reserve(n);
    let (mut i, mut j) = (0, 0);
    while i < left.len() && j < right.len() {
        // `<=` keeps equal elements in place, which makes the sort stable.
        if left[i] <= right[j] {
            items.push(left[i]);
            i += 1;
        } else {
            items.push(right[j]);
            inversions += left.len() - i;
            j += 1;
        }
    }
    items.extend_from_slice(&left[i..]);
    items.extend_from_slice(&right[j..]);
    inversions
}

/// Reorders the factors of `monomial` into canonical order.
///
/// Bosonic coefficients are unchanged. Fermionic coefficients pick up
/// `(-1)^k` where `k` is the number of transpositions of the sort, and any
/// fermionic monomial with a repeated mode is annihilated.
pub fn normal_order(monomial: &Monomial, stats: Statistics) -> Monomial {
    if monomial.is_zero() {
        return Monomial::zero();
    }
    let mut factors = monomial.factors.clone();
    let inversions = merge_sort_inversions(&mut factors);
    let coefficient = match stats {
        Statistics::Boson => monomial.coefficient,
        Statistics::Fermion => {
            if factors.windows(2).any(|w| w[0] == w[1]) {
                return Monomial::zero();
            }
            if inversions % 2 == 1 {
                -monomial.coefficient
            } else {
                monomial.coefficient
            }
        }
    };
    Monomial {
        factors,
        coefficient,
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Occupation and amplitude of a normal-ordered monomial acting on vacuum.
fn monomial_term(monomial: &Monomial, stats: Statistics) -> Result<(Occupation, Complex64)> {
    if stats == Statistics::Fermion && !monomial.is_canonical() {
        return Err(Error::NotNormalOrdered);
    }
    let occupation = Occupation::from_counts(monomial.factors.iter().map(|&m| (m, 1)));
    let mut weight = 1.0;
    for (mode, n) in occupation.iter() {
        if stats == Statistics::Fermion && n > 1 {
            return Err(Error::PauliExclusion { mode });
        }
        // (a†)^n |0⟩ = √(n!) |n⟩
        weight *= factorial(n).sqrt();
    }
    Ok((occupation, monomial.coefficient * weight))
}

/// Converts a normal-ordered monomial applied to vacuum into a single-term
/// state. The result is not normalized: its one amplitude is the monomial's
/// coefficient times `∏ √(n_m!)`.
pub fn monomial_to_state(monomial: &Monomial, stats: Statistics, n_paths: usize) -> Result<State> {
    let mut state = State::zero(stats, n_paths);
    if monomial.is_zero() {
        return Ok(state);
    }
    let (occupation, amplitude) = monomial_term(monomial, stats)?;
    occupation.validate(stats, n_paths)?;
    if amplitude.norm() >= DROP_THRESHOLD {
        state.terms.insert(occupation, amplitude);
    }
    Ok(state)
}

/// Sums normal-ordered monomials into occupation-basis amplitudes.
#[derive(Debug)]
pub(crate) struct TermAccumulator {
    stats: Statistics,
    terms: BTreeMap<Occupation, Complex64>,
}

impl TermAccumulator {
    pub(crate) fn new(stats: Statistics) -> Self {
        TermAccumulator {
            stats,
            terms: BTreeMap::new(),
        }
    }

    pub(crate) fn add(&mut self, monomial: &Monomial) -> Result<()> {
        let ordered = normal_order(monomial, self.stats);
        if ordered.is_zero() {
            return Ok(());
        }
        let (occupation, amplitude) = monomial_term(&ordered, self.stats)?;
        *self
            .terms
            .entry(occupation)
            .or_insert(Complex64::new(0.0, 0.0)) += amplitude;
        Ok(())
    }

    pub(crate) fn finish(self, n_paths: usize) -> State {
        State::from_map(self.stats, n_paths, self.terms)
    }
}

/// A superposition of occupation states over a fixed number of paths.
///
/// States built through the public constructors are normalized (or are the
/// zero state, which encodes an annihilated fermionic construction).
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    stats: Statistics,
    n_paths: usize,
    terms: BTreeMap<Occupation, Complex64>,
}

impl State {
    pub fn zero(stats: Statistics, n_paths: usize) -> Self {
        State {
            stats,
            n_paths,
            terms: BTreeMap::new(),
        }
    }

    /// Label-0 Fock state `|counts[0], counts[1], ...⟩`.
    pub fn fock(stats: Statistics, counts: &[u32]) -> Result<Self> {
        Self::basis(stats, counts.len(), Occupation::from_path_counts(counts))
    }

    pub fn basis(stats: Statistics, n_paths: usize, occupation: Occupation) -> Result<Self> {
        occupation.validate(stats, n_paths)?;
        let mut terms = BTreeMap::new();
        terms.insert(occupation, Complex64::new(1.0, 0.0));
        Ok(State {
            stats,
            n_paths,
            terms,
        })
    }

    /// Builds a normalized state from amplitudes. Repeated occupations add.
    pub fn from_terms<I>(stats: Statistics, n_paths: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Occupation, Complex64)>,
    {
        let mut map = BTreeMap::new();
        for (occupation, amplitude) in terms {
            occupation.validate(stats, n_paths)?;
            *map.entry(occupation).or_insert(Complex64::new(0.0, 0.0)) += amplitude;
        }
        Ok(Self::from_map(stats, n_paths, map).normalized())
    }

    pub(crate) fn from_map(
        stats: Statistics,
        n_paths: usize,
        mut terms: BTreeMap<Occupation, Complex64>,
    ) -> Self {
        terms.retain(|_, a| a.norm() >= DROP_THRESHOLD);
        State {
            stats,
            n_paths,
            terms,
        }
    }

    /// Rescales to unit norm; the zero state is returned unchanged.
    pub fn normalized(self) -> Self {
        let norm = self.norm();
        if norm == 0.0 {
            return self;
        }
        let terms = self.terms.into_iter().map(|(o, a)| (o, a / norm)).collect();
        Self::from_map(self.stats, self.n_paths, terms)
    }

    pub fn norm(&self) -> f64 {
        state_norm(self)
    }

    pub fn statistics(&self) -> Statistics {
        self.stats
    }

    pub fn n_paths(&self) -> usize {
        self.n_paths
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Occupation, Complex64)> + '_ {
        self.terms.iter().map(|(o, &a)| (o, a))
    }

    pub fn amplitude(&self, occupation: &Occupation) -> Complex64 {
        self.terms
            .get(occupation)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The zero vector, e.g. after Pauli exclusion.
    pub fn is_zero(&self) -> bool {
        self.is_empty()
    }

    /// Largest particle number over all terms.
    pub fn max_particles(&self) -> u32 {
        self.terms.keys().map(Occupation::total).max().unwrap_or(0)
    }

    /// Largest internal label used by any term.
    pub fn max_label(&self) -> usize {
        self.terms
            .keys()
            .filter_map(Occupation::max_label)
            .max()
            .unwrap_or(0)
    }

    /// Component-wise comparison with absolute tolerance `tol`.
    pub fn approx_eq(&self, other: &State, tol: f64) -> bool {
        self.stats == other.stats
            && self.n_paths == other.n_paths
            && self
                .terms
                .keys()
                .chain(other.terms.keys())
                .all(|o| (self.amplitude(o) - other.amplitude(o)).norm() <= tol)
    }

    /// Comparison modulo a single global phase factor.
    pub fn approx_eq_up_to_phase(&self, other: &State, tol: f64) -> bool {
        let reference = self
            .terms
            .iter()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()));
        let Some((occupation, &amplitude)) = reference else {
            return other.norm() <= tol;
        };
        let theirs = other.amplitude(occupation);
        if theirs.norm() <= tol {
            return false;
        }
        let phase = amplitude / theirs;
        let phase = phase / phase.norm();
        let rotated = State {
            terms: other.terms.iter().map(|(o, &a)| (o.clone(), a * phase)).collect(),
            ..other.clone()
        };
        self.approx_eq(&rotated, tol)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (occupation, a)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({:.6}{:+.6}i){}", a.re, a.im, occupation)?;
        }
        Ok(())
    }
}

/// `√(Σ |amplitude|²)`.
pub fn state_norm(state: &State) -> f64 {
    state.terms.values().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}
