//! Transition amplitudes from matrix permanents and determinants.
//!
//! This path never expands operator products. For an input pattern `S` and
//! output pattern `T`, it takes the submatrix of the mode map with one column
//! per input particle and one row per output particle (both in canonical mode
//! order, repeated by occupation) and returns
//!
//! ```text
//! boson:   perm(U[T, S]) / √(∏ s_i! ∏ t_j!)
//! fermion: det(U[T, S])
//! ```

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{Mode, Occupation, State, Statistics};
use crate::transform::ModeMap;

/// Largest matrix [`permanent`] accepts.
pub const MAX_PERMANENT_DIM: usize = 12;

/// One input/output pattern pair under a composite `(path, label)` map.
///
/// Composite mode `(p, l)` is matrix index `p * n_labels + l`, which keeps
/// the matrix order equal to the canonical mode order.
#[derive(Debug, Clone)]
pub struct TransitionQuery {
    pub map: ModeMap,
    pub n_labels: usize,
    pub input: Occupation,
    pub output: Occupation,
}

/// Extends a path map to act identically on `n_labels` internal labels.
pub fn lift(map: &ModeMap, n_labels: usize) -> ModeMap {
    let n = map.dim() * n_labels;
    let matrix = DMatrix::from_fn(n, n, |row, col| {
        if row % n_labels == col % n_labels {
            map.entry(row / n_labels, col / n_labels)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    ModeMap::from_matrix(matrix).expect("Kronecker product with identity stays unitary")
}

fn composite_indices(occupation: &Occupation, n_labels: usize, dim: usize) -> Result<Vec<usize>> {
    occupation
        .factors()
        .into_iter()
        .map(|m| {
            let index = m.path * n_labels + m.label;
            if m.label >= n_labels || index >= dim {
                Err(Error::PathOutOfRange {
                    path: index,
                    n_paths: dim,
                })
            } else {
                Ok(index)
            }
        })
        .collect()
}

fn factorial_product(occupation: &Occupation) -> f64 {
    occupation
        .iter()
        .map(|(_, n)| (1..=n).map(f64::from).product::<f64>())
        .product()
}

/// Amplitude `⟨output| U |input⟩`.
pub fn amplitude(query: &TransitionQuery, stats: Statistics) -> Result<Complex64> {
    let (n_in, n_out) = (query.input.total(), query.output.total());
    if n_in != n_out {
        return Err(Error::ParticleNumberMismatch {
            input: n_in,
            output: n_out,
        });
    }
    if stats == Statistics::Fermion {
        for occupation in [&query.input, &query.output] {
            if let Some((mode, _)) = occupation.iter().find(|&(_, n)| n > 1) {
                return Err(Error::PauliExclusion { mode });
            }
        }
    }
    let dim = query.map.dim();
    let cols = composite_indices(&query.input, query.n_labels, dim)?;
    let rows = composite_indices(&query.output, query.n_labels, dim)?;
    let sub = DMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        query.map.entry(rows[i], cols[j])
    });
    match stats {
        Statistics::Boson => {
            let norm = (factorial_product(&query.input) * factorial_product(&query.output)).sqrt();
            Ok(permanent(&sub)? / norm)
        }
        Statistics::Fermion => determinant(&sub),
    }
}

/// Ryser's formula with Gray-code subset enumeration, `O(2^n · n)`.
pub fn permanent(m: &DMatrix<Complex64>) -> Result<Complex64> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let n = m.nrows();
    if n > MAX_PERMANENT_DIM {
        return Err(Error::MatrixTooLarge(n));
    }
    match n {
        0 => return Ok(Complex64::new(1.0, 0.0)),
        1 => return Ok(m[(0, 0)]),
        _ => {}
    }

    // perm(A) = (-1)^n Σ_{S ⊆ cols} (-1)^{|S|} ∏_i Σ_{j ∈ S} a_ij
    let mut row_sums = vec![Complex64::new(0.0, 0.0); n];
    let mut total = Complex64::new(0.0, 0.0);
    let mut gray: u64 = 0;
    for k in 1u64..(1 << n) {
        let next = k ^ (k >> 1);
        let flipped = (gray ^ next).trailing_zeros() as usize;
        let added = next & (1 << flipped) != 0;
        for (i, sum) in row_sums.iter_mut().enumerate() {
            if added {
                *sum += m[(i, flipped)];
            } else {
                *sum -= m[(i, flipped)];
            }
        }
        gray = next;
        let product: Complex64 = row_sums.iter().product();
        if gray.count_ones().is_multiple_of(2) {
            total += product;
        } else {
            total -= product;
        }
    }
    if n % 2 == 1 {
        total = -total;
    }
    Ok(total)
}

/// Gaussian elimination with partial pivoting.
pub fn determinant(m: &DMatrix<Complex64>) -> Result<Complex64> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let n = m.nrows();
    let mut a = m.clone();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[(x, col)].norm().total_cmp(&a[(y, col)].norm()))
            .expect("non-empty range");
        if a[(pivot, col)].norm() == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if pivot != col {
            a.swap_rows(pivot, col);
            det = -det;
        }
        let p = a[(col, col)];
        det *= p;
        for row in col + 1..n {
            let factor = a[(row, col)] / p;
            if factor.norm() == 0.0 {
                continue;
            }
            for k in col..n {
                let v = a[(col, k)];
                a[(row, k)] -= factor * v;
            }
        }
    }
    Ok(det)
}

/// Every occupation of `n` particles over `modes` (multisets for bosons,
/// subsets for fermions).
pub fn output_patterns(modes: &[Mode], n: u32, stats: Statistics) -> Vec<Occupation> {
    fn recurse(
        modes: &[Mode],
        remaining: u32,
        cap: u32,
        current: &mut Vec<(Mode, u32)>,
        out: &mut Vec<Occupation>,
    ) {
        let Some((&first, rest)) = modes.split_first() else {
            if remaining == 0 {
                out.push(Occupation::from_counts(current.iter().copied()));
            }
            return;
        };
        for k in 0..=remaining.min(cap) {
            current.push((first, k));
            recurse(rest, remaining - k, cap, current, out);
            current.pop();
        }
    }
    let cap = match stats {
        Statistics::Boson => n,
        Statistics::Fermion => 1,
    };
    let mut out = Vec::new();
    recurse(modes, n, cap, &mut Vec::new(), &mut out);
    out
}

/// Evolves `state` under `map` by summing oracle amplitudes over every
/// output pattern.
pub fn evolve(map: &ModeMap, state: &State) -> Result<State> {
    if map.dim() != state.n_paths() {
        return Err(Error::DimensionMismatch {
            expected: map.dim(),
            found: state.n_paths(),
        });
    }
    let stats = state.statistics();
    let n_labels = state.max_label() + 1;
    let lifted = lift(map, n_labels);
    let modes: Vec<Mode> = (0..map.dim())
        .flat_map(|p| (0..n_labels).map(move |l| Mode::new(p, l)))
        .collect();

    let mut terms: BTreeMap<Occupation, Complex64> = BTreeMap::new();
    for (input, weight) in state.terms() {
        for output in output_patterns(&modes, input.total(), stats) {
            let query = TransitionQuery {
                map: lifted.clone(),
                n_labels,
                input: input.clone(),
                output: output.clone(),
            };
            let a = amplitude(&query, stats)?;
            *terms.entry(output).or_insert(Complex64::new(0.0, 0.0)) += weight * a;
        }
    }
    Ok(State::from_map(stats, state.n_paths(), terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::{beamsplitter, FIFTY_FIFTY};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// Σ_σ ∏ a_{i σ(i)} over all permutations, by Heap's algorithm.
    fn naive_permanent(m: &DMatrix<Complex64>) -> Complex64 {
        let n = m.nrows();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut counters = vec![0; n];
        let term = |p: &[usize]| (0..n).map(|i| m[(i, p[i])]).product::<Complex64>();
        let mut total = term(&perm);
        let mut i = 0;
        while i < n {
            if counters[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(counters[i], i);
                }
                total += term(&perm);
                counters[i] += 1;
                i = 0;
            } else {
                counters[i] = 0;
                i += 1;
            }
        }
        total
    }

    fn pseudo_random_matrix(n: usize, seed: u64) -> DMatrix<Complex64> {
        let mut x = seed;
        let mut next = move || {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((x >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        DMatrix::from_fn(n, n, |_, _| Complex64::new(next(), next()))
    }

    #[test]
    fn small_permanents() {
        let one = DMatrix::from_element(1, 1, Complex64::new(0.3, -2.0));
        assert_eq!(permanent(&one).unwrap(), Complex64::new(0.3, -2.0));
        let ones = DMatrix::from_element(2, 2, c(1.0));
        assert!((permanent(&ones).unwrap() - c(2.0)).norm() < 1e-15);
        assert_eq!(permanent(&DMatrix::zeros(0, 0)).unwrap(), c(1.0));
    }

    #[test]
    fn permanent_matches_permutation_sum() {
        for n in 2..=6 {
            let m = pseudo_random_matrix(n, n as u64 * 97 + 13);
            let fast = permanent(&m).unwrap();
            let slow = naive_permanent(&m);
            assert!((fast - slow).norm() < 1e-10 * (1.0 + slow.norm()), "n={n}");
        }
    }

    #[test]
    fn permanent_shape_errors() {
        assert!(matches!(
            permanent(&DMatrix::zeros(2, 3)),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
        assert!(matches!(
            permanent(&DMatrix::zeros(13, 13)),
            Err(Error::MatrixTooLarge(13))
        ));
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = pseudo_random_matrix(3, 5);
        let cof = m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
            - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
            + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)]);
        assert!((determinant(&m).unwrap() - cof).norm() < 1e-12);
    }

    fn query(input: &[u32], output: &[u32]) -> TransitionQuery {
        TransitionQuery {
            map: beamsplitter(FIFTY_FIFTY, 0, 1, 2).unwrap(),
            n_labels: 1,
            input: Occupation::from_path_counts(input),
            output: Occupation::from_path_counts(output),
        }
    }

    #[test]
    fn hom_coincidence_vanishes_for_bosons() {
        let a = amplitude(&query(&[1, 1], &[1, 1]), Statistics::Boson).unwrap();
        assert!(a.norm() < 1e-15);
    }

    #[test]
    fn hom_coincidence_is_certain_for_fermions() {
        let a = amplitude(&query(&[1, 1], &[1, 1]), Statistics::Fermion).unwrap();
        assert!((a - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn identity_map_amplitudes() {
        let id = ModeMap::identity(3);
        let patterns = output_patterns(
            &[Mode::on_path(0), Mode::on_path(1), Mode::on_path(2)],
            2,
            Statistics::Boson,
        );
        assert_eq!(patterns.len(), 6);
        for a in &patterns {
            for b in &patterns {
                let q = TransitionQuery {
                    map: id.clone(),
                    n_labels: 1,
                    input: a.clone(),
                    output: b.clone(),
                };
                let amp = amplitude(&q, Statistics::Boson).unwrap();
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((amp - c(expected)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn amplitude_errors() {
        assert!(matches!(
            amplitude(&query(&[1, 1], &[1, 0]), Statistics::Boson),
            Err(Error::ParticleNumberMismatch { input: 2, output: 1 })
        ));
        assert!(matches!(
            amplitude(&query(&[2, 0], &[1, 1]), Statistics::Fermion),
            Err(Error::PauliExclusion { .. })
        ));
    }

    #[test]
    fn lifted_map_is_block_diagonal_in_labels() {
        let bs = beamsplitter(0.3, 0, 1, 2).unwrap();
        let l = lift(&bs, 2);
        assert_eq!(l.dim(), 4);
        assert_eq!(l.entry(2, 0), bs.entry(1, 0));
        assert_eq!(l.entry(3, 1), bs.entry(1, 0));
        assert_eq!(l.entry(1, 0), c(0.0));
    }
}
