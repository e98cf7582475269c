//! Element sequences over paths and their evaluation.

use crate::distinguishability::{trace_labels, DetectionDistribution};
use crate::error::{Error, Result};
use crate::fock::{State, Statistics};
use crate::transform::{apply, beamsplitter, compose, phase_shift, ModeMap, FIFTY_FIFTY};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Element {
    Beamsplitter {
        theta: f64,
        path_a: usize,
        path_b: usize,
    },
    PhaseShift {
        phi: f64,
        path: usize,
    },
}

impl Element {
    pub fn mode_map(&self, n_paths: usize) -> Result<ModeMap> {
        match *self {
            Element::Beamsplitter {
                theta,
                path_a,
                path_b,
            } => beamsplitter(theta, path_a, path_b, n_paths),
            Element::PhaseShift { phi, path } => phase_shift(phi, path, n_paths),
        }
    }
}

/// Elements applied in sequence order to particles of one statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_paths: usize,
    elements: Vec<Element>,
    stats: Statistics,
}

impl Circuit {
    pub fn new(stats: Statistics, n_paths: usize) -> Self {
        Circuit {
            n_paths,
            elements: Vec::new(),
            stats,
        }
    }

    pub fn push(&mut self, element: Element) -> Result<()> {
        element.mode_map(self.n_paths)?;
        self.elements.push(element);
        Ok(())
    }

    pub fn beamsplitter(mut self, theta: f64, path_a: usize, path_b: usize) -> Result<Self> {
        self.push(Element::Beamsplitter {
            theta,
            path_a,
            path_b,
        })?;
        Ok(self)
    }

    pub fn phase(mut self, phi: f64, path: usize) -> Result<Self> {
        self.push(Element::PhaseShift { phi, path })?;
        Ok(self)
    }

    /// A single balanced beamsplitter on paths 0 and 1.
    pub fn fifty_fifty(stats: Statistics) -> Self {
        Circuit {
            n_paths: 2,
            elements: vec![Element::Beamsplitter {
                theta: FIFTY_FIFTY,
                path_a: 0,
                path_b: 1,
            }],
            stats,
        }
    }

    /// Mach-Zehnder interferometer: balanced splitter, phase `phi` on path 1,
    /// balanced splitter. The mirrors between the splitters act as identity,
    /// so the first splitter's outputs feed the second splitter's inputs on
    /// the same path indices.
    pub fn mzi(phi: f64, stats: Statistics) -> Self {
        let bs = Element::Beamsplitter {
            theta: FIFTY_FIFTY,
            path_a: 0,
            path_b: 1,
        };
        Circuit {
            n_paths: 2,
            elements: vec![bs, Element::PhaseShift { phi, path: 1 }, bs],
            stats,
        }
    }

    pub fn n_paths(&self) -> usize {
        self.n_paths
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn statistics(&self) -> Statistics {
        self.stats
    }

    /// Product of all element maps, latest on the left.
    pub fn mode_map(&self) -> Result<ModeMap> {
        self.elements
            .iter()
            .try_fold(ModeMap::identity(self.n_paths), |acc, e| {
                compose(&e.mode_map(self.n_paths)?, &acc)
            })
    }
}

/// Runs `input` through every element of `circuit` in order.
pub fn evaluate(circuit: &Circuit, input: &State) -> Result<State> {
    if input.statistics() != circuit.stats {
        return Err(Error::StatisticsMismatch {
            circuit: circuit.stats,
            input: input.statistics(),
        });
    }
    circuit
        .elements
        .iter()
        .try_fold(input.clone(), |state, element| {
            apply(&element.mode_map(circuit.n_paths)?, &state)
        })
}

/// Path-resolved, label-blind detection probabilities.
pub fn detect(state: &State) -> DetectionDistribution {
    trace_labels(state)
}
