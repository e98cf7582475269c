//! Evaluates documents into probability tables.

use std::collections::BTreeSet;

use pairsim_core::{
    detect, evaluate, inject_pair, Circuit, Element, Occupation, Overlap, PathPattern, State,
    FIFTY_FIFTY,
};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::document::{CircuitDocument, ElementStmt, InputStmt};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("evaluation failed{}: {source}", .param.map(|p| format!(" at {p}")).unwrap_or_default())]
pub struct RunError {
    /// Sweep value being evaluated, if any.
    pub param: Option<f64>,
    pub source: pairsim_core::Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub param: Option<f64>,
    pub probabilities: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub param_name: Option<String>,
    pub columns: Vec<PathPattern>,
    pub rows: Vec<ResultRow>,
}

/// Rounds to 12 significant digits.
pub fn round_significant(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// Circuit and input state with the sweep variable bound to `value`.
pub fn instantiate(doc: &CircuitDocument, value: Option<f64>) -> pairsim_core::Result<(Circuit, State)> {
    let mut circuit = Circuit::new(doc.stats, doc.n_paths);
    for element in &doc.elements {
        circuit.push(match element {
            ElementStmt::Beamsplitter {
                path_a,
                path_b,
                theta,
            } => Element::Beamsplitter {
                theta: theta.as_ref().map_or(FIFTY_FIFTY, |t| t.eval(value)),
                path_a: *path_a,
                path_b: *path_b,
            },
            ElementStmt::Phase { path, phi } => Element::PhaseShift {
                phi: phi.eval(value),
                path: *path,
            },
        })?;
    }
    let input = match &doc.input {
        InputStmt::Fock(counts) => State::fock(doc.stats, counts)?,
        InputStmt::Pair { path_1, path_2, r } => {
            inject_pair(*path_1, *path_2, Overlap::new(r.eval(value))?, doc.stats, doc.n_paths)?.state
        }
    };
    Ok((circuit, input))
}

fn declared_patterns(doc: &CircuitDocument) -> Vec<PathPattern> {
    match &doc.input {
        InputStmt::Fock(counts) => {
            vec![PathPattern(Occupation::from_path_counts(counts).path_counts(doc.n_paths))]
        }
        InputStmt::Pair { .. } => Vec::new(),
    }
}

/// Evaluates every sweep point (in parallel) and tabulates the label-blind
/// detection probabilities, rows in sweep order.
pub fn run(doc: &CircuitDocument) -> Result<ResultTable, RunError> {
    let points: Vec<Option<f64>> = match &doc.sweep {
        Some(sweep) => sweep.values().into_iter().map(Some).collect(),
        None => vec![None],
    };
    let evaluated: Vec<_> = points
        .par_iter()
        .map(|&param| {
            let wrap = |source| RunError { param, source };
            let (circuit, input) = instantiate(doc, param).map_err(wrap)?;
            let output = evaluate(&circuit, &input).map_err(wrap)?;
            Ok((param, detect(&output)))
        })
        .collect();
    let evaluated = evaluated.into_iter().collect::<Result<Vec<_>, RunError>>()?;

    let mut columns: BTreeSet<PathPattern> = declared_patterns(doc).into_iter().collect();
    for (_, dist) in &evaluated {
        columns.extend(dist.iter().filter(|(_, p)| *p > 0.0).map(|(k, _)| k.clone()));
    }
    let columns: Vec<PathPattern> = columns.into_iter().collect();

    let rows = evaluated
        .into_iter()
        .map(|(param, dist)| ResultRow {
            param,
            probabilities: columns
                .iter()
                .map(|k| round_significant(dist.probability(k.counts())))
                .collect(),
        })
        .collect();

    Ok(ResultTable {
        param_name: doc.sweep.as_ref().map(|s| s.name.clone()),
        columns,
        rows,
    })
}

#[derive(Serialize)]
struct JsonTable<'a> {
    param: Option<&'a str>,
    columns: Vec<String>,
    rows: &'a [ResultRow],
}

impl ResultTable {
    pub fn column(&self, pattern: &[u32]) -> Option<usize> {
        self.columns.iter().position(|c| c.counts() == pattern)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("param");
        for c in &self.columns {
            out.push(',');
            out.push_str(&c.to_string());
        }
        out.push('\n');
        for row in &self.rows {
            if let Some(p) = row.param {
                out.push_str(&p.to_string());
            }
            for p in &row.probabilities {
                out.push(',');
                out.push_str(&p.to_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let table = JsonTable {
            param: self.param_name.as_deref(),
            columns: self.columns.iter().map(ToString::to_string).collect(),
            rows: &self.rows,
        };
        serde_json::to_string_pretty(&table).expect("table serializes") + "\n"
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}
