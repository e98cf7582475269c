//! Linear maps on creation operators.
//!
//! A [`ModeMap`] `U` sends the input creation operator on path `p` to
//! `Σ_q U[q][p] · (output operator on path q)`. Internal labels are
//! spectators: the same map acts on every label.

use std::f64::consts::FRAC_PI_4;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{Mode, Monomial, State, TermAccumulator, TOLERANCE};

/// Beamsplitter angle giving the balanced `(1 -1; 1 1)/√2` splitter.
pub const FIFTY_FIFTY: f64 = FRAC_PI_4;

/// Largest particle number [`apply`] will expand.
pub const MAX_PARTICLES: u32 = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct ModeMap {
    matrix: DMatrix<Complex64>,
}

impl ModeMap {
    pub fn identity(n_paths: usize) -> Self {
        ModeMap {
            matrix: DMatrix::identity(n_paths, n_paths),
        }
    }

    /// Wraps a matrix, checking that it is square and unitary to `1e-9`.
    pub fn from_matrix(matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        let map = ModeMap { matrix };
        let deviation = map.unitarity_deviation();
        if deviation > TOLERANCE {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(map)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// Coefficient of output path `output` in the image of input path `input`.
    pub fn entry(&self, output: usize, input: usize) -> Complex64 {
        self.matrix[(output, input)]
    }

    /// Largest entry of `|U·U† - 1|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let n = self.dim();
        let product = &self.matrix * self.matrix.adjoint();
        (&product - DMatrix::<Complex64>::identity(n, n))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &ModeMap, tol: f64) -> bool {
        self.dim() == other.dim()
            && self
                .matrix
                .iter()
                .zip(other.matrix.iter())
                .all(|(a, b)| (a - b).norm() <= tol)
    }
}

fn check_path(path: usize, n_paths: usize) -> Result<()> {
    if path >= n_paths {
        Err(Error::PathOutOfRange { path, n_paths })
    } else {
        Ok(())
    }
}

/// Real rotation on `(path_a, path_b)`:
///
/// ```text
/// (c†)   (cos θ  -sin θ) (a†)
/// (d†) = (sin θ   cos θ) (b†)
/// ```
///
/// so that `θ = FIFTY_FIFTY` gives `a† → (c† + d†)/√2`, `b† → (-c† + d†)/√2`.
pub fn beamsplitter(theta: f64, path_a: usize, path_b: usize, n_paths: usize) -> Result<ModeMap> {
    check_path(path_a, n_paths)?;
    check_path(path_b, n_paths)?;
    if path_a == path_b {
        return Err(Error::EqualPaths(path_a));
    }
    let (sin, cos) = theta.sin_cos();
    let mut matrix = DMatrix::identity(n_paths, n_paths);
    matrix[(path_a, path_a)] = Complex64::new(cos, 0.0);
    matrix[(path_a, path_b)] = Complex64::new(-sin, 0.0);
    matrix[(path_b, path_a)] = Complex64::new(sin, 0.0);
    matrix[(path_b, path_b)] = Complex64::new(cos, 0.0);
    Ok(ModeMap { matrix })
}

/// Multiplies the operator on `path` by `e^{iφ}`.
pub fn phase_shift(phi: f64, path: usize, n_paths: usize) -> Result<ModeMap> {
    check_path(path, n_paths)?;
    let mut matrix = DMatrix::identity(n_paths, n_paths);
    matrix[(path, path)] = Complex64::from_polar(1.0, phi);
    Ok(ModeMap { matrix })
}

/// The map that applies `earlier` first and then `later`.
pub fn compose(later: &ModeMap, earlier: &ModeMap) -> Result<ModeMap> {
    if later.dim() != earlier.dim() {
        return Err(Error::DimensionMismatch {
            expected: later.dim(),
            found: earlier.dim(),
        });
    }
    Ok(ModeMap {
        matrix: &later.matrix * &earlier.matrix,
    })
}

/// Images of a single creation operator: `(output mode, coefficient)` pairs.
fn substitute(map: &ModeMap, mode: Mode) -> Vec<(Mode, Complex64)> {
    (0..map.dim())
        .map(|q| (Mode::new(q, mode.label), map.entry(q, mode.path)))
        .filter(|(_, c)| c.norm() > 0.0)
        .collect()
}

/// Sends `state` through `map` by substituting every creation operator and
/// expanding the product distributively.
pub fn apply(map: &ModeMap, state: &State) -> Result<State> {
    if map.dim() != state.n_paths() {
        return Err(Error::DimensionMismatch {
            expected: map.dim(),
            found: state.n_paths(),
        });
    }
    let count = state.max_particles();
    if count > MAX_PARTICLES {
        return Err(Error::TooManyParticles {
            count,
            limit: MAX_PARTICLES,
        });
    }

    let stats = state.statistics();
    let mut out = TermAccumulator::new(stats);
    for (occupation, amplitude) in state.terms() {
        // |n⟩ = ∏ (a†)^n / √(n!) |0⟩
        let norm: f64 = occupation
            .iter()
            .map(|(_, n)| (1..=n).map(f64::from).product::<f64>())
            .product::<f64>()
            .sqrt();

        let mut products: Vec<(Vec<Mode>, Complex64)> = vec![(Vec::new(), amplitude / norm)];
        for factor in occupation.factors() {
            let images = substitute(map, factor);
            products = products
                .into_iter()
                .flat_map(|(factors, coefficient)| {
                    images.iter().map(move |&(mode, c)| {
                        let mut next = factors.clone();
                        next.push(mode);
                        (next, coefficient * c)
                    })
                })
                .collect();
        }
        for (factors, coefficient) in products {
            out.add(&Monomial::new(factors, coefficient))?;
        }
    }
    Ok(out.finish(state.n_paths()))
}
