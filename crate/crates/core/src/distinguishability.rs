//! Partially distinguishable particle pairs and label-blind detection.
//!
//! The second particle of a pair is written on the first particle's label
//! plus one orthogonal label:
//!
//! ```text
//! x†₂ = √r · x†(label 0) + √(1 - r) · x†(label 1)
//! ```
//!
//! Detectors resolve paths only, so outcomes that differ only in labels are
//! added in probability.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{Mode, Monomial, State, Statistics, TermAccumulator, TOLERANCE};

/// Overlap parameter `r ∈ [0, 1]`; 1 means indistinguishable.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Overlap(f64);

impl Overlap {
    pub const INDISTINGUISHABLE: Overlap = Overlap(1.0);
    pub const DISTINGUISHABLE: Overlap = Overlap(0.0);

    pub fn new(r: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&r) {
            Ok(Overlap(r))
        } else {
            Err(Error::InvalidOverlap(r))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A two-particle input state plus the norm it had before renormalisation.
#[derive(Debug, Clone, PartialEq)]
pub struct Injection {
    pub state: State,
    /// Norm of `a†₁ x†₂ |0⟩` as written, before normalising. It differs from 1
    /// when both particles share a path: bosons gain `√(1 + r)` from
    /// bunching and fermions lose to `√(1 - r)` because only the orthogonal
    /// component survives antisymmetrisation.
    pub raw_norm: f64,
}

impl Injection {
    /// True when the returned state had to be rescaled.
    pub fn renormalized(&self) -> bool {
        (self.raw_norm - 1.0).abs() > TOLERANCE
    }

    pub fn into_state(self) -> State {
        self.state
    }
}

/// Two particles: one on `(path_1, label 0)`, and one on `path_2` with
/// overlap `r` against the first.
pub fn inject_pair(
    path_1: usize,
    path_2: usize,
    overlap: Overlap,
    stats: Statistics,
    n_paths: usize,
) -> Result<Injection> {
    for path in [path_1, path_2] {
        if path >= n_paths {
            return Err(Error::PathOutOfRange { path, n_paths });
        }
    }
    let r = overlap.value();
    let first = Mode::new(path_1, 0);
    let mut acc = TermAccumulator::new(stats);
    acc.add(&Monomial::new(
        vec![first, Mode::new(path_2, 0)],
        Complex64::new(r.sqrt(), 0.0),
    ))?;
    acc.add(&Monomial::new(
        vec![first, Mode::new(path_2, 1)],
        Complex64::new((1.0 - r).sqrt(), 0.0),
    ))?;
    let raw = acc.finish(n_paths);
    let raw_norm = raw.norm();
    if raw.is_zero() {
        return Err(Error::PauliExclusion { mode: first });
    }
    Ok(Injection {
        state: raw.normalized(),
        raw_norm,
    })
}

/// Particle count per path, labels summed out. Displays as `n0|n1|...`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathPattern(pub Vec<u32>);

impl PathPattern {
    pub fn counts(&self) -> &[u32] {
        &self.0
    }
}

impl From<&[u32]> for PathPattern {
    fn from(counts: &[u32]) -> Self {
        PathPattern(counts.to_vec())
    }
}

impl fmt::Display for PathPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for PathPattern {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        s.split('|')
            .map(str::parse)
            .collect::<std::result::Result<Vec<u32>, _>>()
            .map(PathPattern)
    }
}

/// Probability of each path-occupation pattern.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DetectionDistribution {
    outcomes: BTreeMap<PathPattern, f64>,
    total: f64,
}

impl DetectionDistribution {
    pub fn from_probabilities<I: IntoIterator<Item = (PathPattern, f64)>>(outcomes: I) -> Self {
        let mut map = BTreeMap::new();
        for (pattern, p) in outcomes {
            *map.entry(pattern).or_insert(0.0) += p;
        }
        let total = map.values().sum();
        DetectionDistribution {
            outcomes: map,
            total,
        }
    }

    pub fn probability(&self, counts: &[u32]) -> f64 {
        self.outcomes
            .get(&PathPattern::from(counts))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PathPattern, f64)> + '_ {
        self.outcomes.iter().map(|(k, &p)| (k, p))
    }

    pub fn patterns(&self) -> impl Iterator<Item = &PathPattern> + '_ {
        self.outcomes.keys()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    /// Largest absolute probability difference over the union of patterns.
    pub fn max_deviation(&self, other: &DetectionDistribution) -> f64 {
        self.outcomes
            .keys()
            .chain(other.outcomes.keys())
            .map(|k| (self.probability(&k.0) - other.probability(&k.0)).abs())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &DetectionDistribution, tol: f64) -> bool {
        self.max_deviation(other) <= tol
    }
}

impl fmt::Display for DetectionDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (pattern, p) in self.iter() {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "P({pattern}) = {p:.6}")?;
        }
        if first {
            f.write_str("(empty)")?;
        }
        Ok(())
    }
}

/// Label-blind detection: sums `|amplitude|²` over terms that agree on every
/// path count.
pub fn trace_labels(state: &State) -> DetectionDistribution {
    let n_paths = state.n_paths();
    DetectionDistribution::from_probabilities(
        state
            .terms()
            .map(|(occ, a)| (PathPattern(occ.path_counts(n_paths)), a.norm_sqr())),
    )
}
