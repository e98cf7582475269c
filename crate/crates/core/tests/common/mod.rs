//! Test-only helpers shared by the integration suites.

#![allow(dead_code)]

use std::collections::HashMap;

use pairsim_core::{Circuit, Complex64, Mode, Statistics};
use rand::Rng;

/// Applies creation operators right-to-left to the vacuum using explicit
/// ladder rules (`√(n+1)` for bosons, Jordan-Wigner sign for fermions) and
/// returns the amplitude of every resulting basis vector, keyed by the
/// occupation of each mode in `modes` (sorted ascending).
pub fn ladder_apply(
    factors: &[Mode],
    coefficient: Complex64,
    modes: &[Mode],
    stats: Statistics,
) -> HashMap<Vec<u32>, Complex64> {
    let mut state: HashMap<Vec<u32>, Complex64> = HashMap::new();
    state.insert(vec![0; modes.len()], coefficient);
    for factor in factors.iter().rev() {
        let k = modes.iter().position(|m| m == factor).expect("mode listed");
        let mut next = HashMap::new();
        for (occ, amp) in state {
            let mut occ = occ;
            let factor = match stats {
                Statistics::Boson => ((occ[k] + 1) as f64).sqrt(),
                Statistics::Fermion => {
                    if occ[k] == 1 {
                        continue;
                    }
                    let before: u32 = occ[..k].iter().sum();
                    if before % 2 == 1 {
                        -1.0
                    } else {
                        1.0
                    }
                }
            };
            occ[k] += 1;
            *next.entry(occ).or_insert(Complex64::new(0.0, 0.0)) += amp * factor;
        }
        state = next;
    }
    state
}

/// Random circuit on two paths: 1-3 layers of (phase, splitter, phase).
pub fn random_circuit<R: Rng>(rng: &mut R, stats: Statistics) -> Circuit {
    let layers = rng.gen_range(1..=3);
    let mut c = Circuit::new(stats, 2);
    for _ in 0..layers {
        let tau = std::f64::consts::TAU;
        c = c
            .phase(rng.gen_range(0.0..tau), rng.gen_range(0..2))
            .unwrap()
            .beamsplitter(rng.gen_range(0.0..tau), 0, 1)
            .unwrap()
            .phase(rng.gen_range(0.0..tau), rng.gen_range(0..2))
            .unwrap();
    }
    c
}
