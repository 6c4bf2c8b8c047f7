//! Shared fixtures for the benchmarks: deterministic weights of a given
//! size, built through the same generators the campaigns use.

use a1kit_cli::gen::{gen_weight, GeneratorKind, GeneratorSpec};
use a1kit_core::StepWeight;

/// A reproducible uniform-value weight with exactly `pieces` pieces.
pub fn uniform_weight(pieces: usize, seed: u64) -> StepWeight {
    gen_weight(&GeneratorSpec::new(GeneratorKind::Uniform, pieces, seed))
        .expect("benchmark spec is valid")
}

/// A reproducible shuffled power-weight discretization.
pub fn shuffled_power_weight(pieces: usize, seed: u64) -> StepWeight {
    gen_weight(&GeneratorSpec::new(
        GeneratorKind::ShuffledPower,
        pieces,
        seed,
    ))
    .expect("benchmark spec is valid")
}
