//! Named two-particle scenarios with closed-form expected detection
//! statistics.

use std::f64::consts::PI;

use crate::circuit::{detect, evaluate, Circuit};
use crate::distinguishability::{inject_pair, DetectionDistribution, Overlap, PathPattern};
use crate::error::{Error, Result};
use crate::fock::{State, Statistics, TOLERANCE};

#[derive(Debug, Clone, PartialEq)]
pub enum Expected {
    Distribution(DetectionDistribution),
    /// Building the input must fail with a Pauli-exclusion error.
    PauliExclusion,
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub circuit: Circuit,
    pub input: Result<State>,
    pub expected: Expected,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioReport {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Scenario {
    pub fn run(&self) -> ScenarioReport {
        let (passed, detail) = match (&self.input, &self.expected) {
            (Err(Error::PauliExclusion { .. }), Expected::PauliExclusion) => {
                (true, "input rejected by Pauli exclusion".to_string())
            }
            (Err(e), _) => (false, format!("input construction failed: {e}")),
            (Ok(_), Expected::PauliExclusion) => {
                (false, "input was accepted, expected Pauli exclusion".to_string())
            }
            (Ok(input), Expected::Distribution(expected)) => match evaluate(&self.circuit, input) {
                Err(e) => (false, format!("evaluation failed: {e}")),
                Ok(output) => {
                    let got = detect(&output);
                    let deviation = got.max_deviation(expected);
                    (
                        deviation <= TOLERANCE,
                        format!("{got} (max deviation {deviation:.1e})"),
                    )
                }
            },
        };
        ScenarioReport {
            name: self.name.clone(),
            passed,
            detail,
        }
    }
}

fn distribution(entries: &[([u32; 2], f64)]) -> Expected {
    Expected::Distribution(DetectionDistribution::from_probabilities(
        entries
            .iter()
            .map(|(k, p)| (PathPattern(k.to_vec()), *p)),
    ))
}

fn fock(stats: Statistics, counts: &[u32]) -> Result<State> {
    State::fock(stats, counts)
}

fn pair(path_1: usize, path_2: usize, r: f64, stats: Statistics) -> Result<State> {
    inject_pair(path_1, path_2, Overlap::new(r)?, stats, 2).map(|i| i.state)
}

fn scenario(name: impl Into<String>, circuit: Circuit, input: Result<State>, expected: Expected) -> Scenario {
    Scenario {
        name: name.into(),
        circuit,
        input,
        expected,
    }
}

/// Every two-particle beamsplitter and interferometer scenario with its
/// expected label-blind detection statistics.
pub fn scenario_catalog() -> Vec<Scenario> {
    use Statistics::{Boson, Fermion};
    let bs = Circuit::fifty_fifty;
    let mut out = vec![
        scenario(
            "HOM-boson",
            bs(Boson),
            fock(Boson, &[1, 1]),
            distribution(&[([2, 0], 0.5), ([0, 2], 0.5)]),
        ),
        scenario(
            "HOM-fermion",
            bs(Fermion),
            fock(Fermion, &[1, 1]),
            distribution(&[([1, 1], 1.0)]),
        ),
        scenario(
            "same-port-boson",
            bs(Boson),
            fock(Boson, &[2, 0]),
            distribution(&[([2, 0], 0.25), ([1, 1], 0.5), ([0, 2], 0.25)]),
        ),
        scenario(
            "same-port-fermion-excluded",
            bs(Fermion),
            fock(Fermion, &[2, 0]),
            Expected::PauliExclusion,
        ),
        scenario(
            "same-port-partial-boson r=0.5",
            bs(Boson),
            pair(0, 0, 0.5, Boson),
            distribution(&[([2, 0], 0.25), ([1, 1], 0.5), ([0, 2], 0.25)]),
        ),
    ];

    for r in [0.25, 0.5, 0.75] {
        out.push(scenario(
            format!("HOM-partial-r boson r={r}"),
            bs(Boson),
            pair(0, 1, r, Boson),
            distribution(&[
                ([1, 1], (1.0 - r) / 2.0),
                ([2, 0], (1.0 + r) / 4.0),
                ([0, 2], (1.0 + r) / 4.0),
            ]),
        ));
        out.push(scenario(
            format!("HOM-partial-r fermion r={r}"),
            bs(Fermion),
            pair(0, 1, r, Fermion),
            distribution(&[
                ([1, 1], (1.0 + r) / 2.0),
                ([2, 0], (1.0 - r) / 4.0),
                ([0, 2], (1.0 - r) / 4.0),
            ]),
        ));
    }

    for stats in [Boson, Fermion] {
        out.push(scenario(
            format!("MZI-balanced-{stats}"),
            Circuit::mzi(0.0, stats),
            fock(stats, &[1, 1]),
            distribution(&[([1, 1], 1.0)]),
        ));
    }

    let phi = PI / 3.0;
    let bunched = phi.sin().powi(2) / 2.0;
    out.push(scenario(
        "MZI-phase-boson phi=pi/3",
        Circuit::mzi(phi, Boson),
        fock(Boson, &[1, 1]),
        distribution(&[
            ([1, 1], phi.cos().powi(2)),
            ([2, 0], bunched),
            ([0, 2], bunched),
        ]),
    ));
    out.push(scenario(
        "MZI-phase-fermion phi=pi/3",
        Circuit::mzi(phi, Fermion),
        fock(Fermion, &[1, 1]),
        distribution(&[([1, 1], 1.0)]),
    ));

    for stats in [Boson, Fermion] {
        for r in [0.0, 0.5] {
            out.push(scenario(
                format!("MZI-partial-r {stats} r={r} phi=0"),
                Circuit::mzi(0.0, stats),
                pair(0, 1, r, stats),
                distribution(&[([1, 1], 1.0)]),
            ));
        }
    }

    for (label, phi) in [("0", 0.0), ("pi/2", PI / 2.0), ("pi", PI)] {
        out.push(scenario(
            format!("MZI-same-port-boson phi={label}"),
            Circuit::mzi(phi, Boson),
            fock(Boson, &[2, 0]),
            same_port_mzi(phi),
        ));
    }
    out.push(scenario(
        "MZI-same-port-partial-boson r=0.5 phi=pi/2",
        Circuit::mzi(PI / 2.0, Boson),
        pair(0, 0, 0.5, Boson),
        same_port_mzi(PI / 2.0),
    ));
    out
}

/// `|(1 - e^{iφ})²/4|²`, `|(1 - e^{2iφ})/(2√2)|²`, `|(1 + e^{iφ})²/4|²`.
fn same_port_mzi(phi: f64) -> Expected {
    let half = phi / 2.0;
    distribution(&[
        ([2, 0], half.sin().powi(4)),
        ([1, 1], phi.sin().powi(2) / 2.0),
        ([0, 2], half.cos().powi(4)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_covers_required_names() {
        let names: Vec<String> = scenario_catalog().into_iter().map(|s| s.name).collect();
        for prefix in [
            "HOM-boson",
            "HOM-fermion",
            "same-port-boson",
            "same-port-fermion-excluded",
            "HOM-partial-r",
            "MZI-balanced-boson",
            "MZI-balanced-fermion",
            "MZI-phase-boson",
            "MZI-phase-fermion",
            "MZI-partial-r",
            "MZI-same-port-boson phi=0",
            "MZI-same-port-boson phi=pi/2",
            "MZI-same-port-boson phi=pi",
        ] {
            assert!(names.iter().any(|n| n.starts_with(prefix)), "missing {prefix}");
        }
    }

    #[test]
    fn every_scenario_passes() {
        for s in scenario_catalog() {
            let report = s.run();
            assert!(report.passed, "{}: {}", report.name, report.detail);
        }
    }

    #[test]
    fn mismatched_expectation_fails() {
        let s = scenario(
            "wrong",
            Circuit::fifty_fifty(Statistics::Boson),
            State::fock(Statistics::Boson, &[1, 1]),
            distribution(&[([1, 1], 1.0)]),
        );
        assert!(!s.run().passed);
    }
}
