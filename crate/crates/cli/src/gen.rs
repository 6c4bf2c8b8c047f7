//! Seeded weight and interval-set generators.
//!
//! Everything here is a pure function of its spec: the same seed always
//! yields the same object, bit for bit, which is what makes recorded
//! counterexample seeds replayable.

use std::str::FromStr;

use a1kit_core::rng::{mix, SplitMix64};
use a1kit_core::{
    discretize_power, rat, rat_int, DiscretizeScheme, Interval, IntervalSet, PowerWeight,
    Rational, StepWeight,
};

use crate::error::{HarnessError, Result};

/// Value-grid resolution: generated values are multiples of 1/1024, which
/// keeps exact-arithmetic denominators small across campaign-sized runs.
const VALUE_GRID: i64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Independent values uniform on the grid in `[1, M]`.
    Uniform,
    /// The step discretization of a power weight (already non-increasing).
    PowerDiscretized,
    /// The same discretization with its pieces randomly permuted, so the
    /// rearrangement is known in closed form.
    ShuffledPower,
    /// A multiplicative random walk clamped to `[1/M, M]`, producing long
    /// monotone runs.
    MultiplicativeWalk,
}

impl GeneratorKind {
    pub fn token(&self) -> &'static str {
        match self {
            GeneratorKind::Uniform => "uniform",
            GeneratorKind::PowerDiscretized => "power-discretized",
            GeneratorKind::ShuffledPower => "shuffled-power",
            GeneratorKind::MultiplicativeWalk => "multiplicative-walk",
        }
    }
}

impl FromStr for GeneratorKind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(GeneratorKind::Uniform),
            "power-discretized" => Ok(GeneratorKind::PowerDiscretized),
            "shuffled-power" => Ok(GeneratorKind::ShuffledPower),
            "multiplicative-walk" => Ok(GeneratorKind::MultiplicativeWalk),
            other => Err(HarnessError::UnknownKind(other.to_string())),
        }
    }
}

/// Full description of one generated weight.
#[derive(Debug, Clone)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub pieces: usize,
    /// Value cap `M > 1`; uniform values land in `[1, M]`.
    pub value_cap: Rational,
    /// Power-weight parameter for the power kinds.
    pub tau: f64,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, pieces: usize, seed: u64) -> Self {
        Self {
            kind,
            pieces,
            value_cap: rat_int(10),
            tau: 2.0,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.pieces == 0 {
            return Err(HarnessError::InvalidSpec("pieces must be >= 1".into()));
        }
        if self.value_cap <= rat_int(1) {
            return Err(HarnessError::InvalidSpec(format!(
                "value cap must exceed 1, got {}",
                self.value_cap
            )));
        }
        if !self.tau.is_finite() || self.tau < 1.0 {
            return Err(HarnessError::InvalidSpec(format!(
                "tau must be >= 1, got {}",
                self.tau
            )));
        }
        Ok(())
    }
}

/// Derives the seed for trial `index` from a campaign master seed.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    mix(master ^ mix(index.wrapping_add(0x9E37_79B9_7F4A_7C15)))
}

/// Strictly increasing breakpoints `0 = t_0 < ... < t_n = 1` with interior
/// cuts on a grid fine enough for `pieces` distinct cells.
fn gen_breakpoints(rng: &mut SplitMix64, pieces: usize) -> Vec<Rational> {
    let grid = (8 * pieces as i64).max(4096);
    let mut cuts = std::collections::BTreeSet::new();
    while cuts.len() < pieces - 1 {
        cuts.insert(1 + rng.next_below(grid as u64 - 1) as i64);
    }
    let mut breakpoints = Vec::with_capacity(pieces + 1);
    breakpoints.push(rat_int(0));
    breakpoints.extend(cuts.into_iter().map(|k| rat(k, grid)));
    breakpoints.push(rat_int(1));
    breakpoints
}

/// Uniform grid value in `[1, M]`.
fn gen_value(rng: &mut SplitMix64, cap: &Rational) -> Rational {
    let step = rng.next_below(VALUE_GRID as u64 + 1) as i64;
    rat_int(1) + (cap - rat_int(1)) * rat(step, VALUE_GRID)
}

fn walk_values(rng: &mut SplitMix64, pieces: usize, cap: &Rational) -> Vec<Rational> {
    // factor menu around 1; numerators/denominators stay tiny
    const FACTORS: [(i64, i64); 9] = [
        (1, 2),
        (2, 3),
        (3, 4),
        (5, 6),
        (1, 1),
        (6, 5),
        (4, 3),
        (3, 2),
        (2, 1),
    ];
    let hi = cap.clone();
    let lo = rat_int(1) / cap;
    let quantize = |v: Rational| -> Rational {
        // round to the value grid, then clamp; keeps denominators bounded
        let scaled = &v * rat_int(VALUE_GRID);
        let rounded = scaled.round();
        let q = rounded / rat_int(VALUE_GRID);
        q.max(lo.clone()).min(hi.clone())
    };
    let mut values = Vec::with_capacity(pieces);
    let mut current = quantize(gen_value(rng, cap));
    values.push(current.clone());
    for _ in 1..pieces {
        let (n, d) = FACTORS[rng.next_below(FACTORS.len() as u64) as usize];
        current = quantize(&current * rat(n, d));
        values.push(current.clone());
    }
    values
}

fn power_base(spec: &GeneratorSpec) -> Result<StepWeight> {
    let pw = PowerWeight::new(1.0, spec.tau)?;
    Ok(discretize_power(&pw, spec.pieces, DiscretizeScheme::Uniform)?)
}

/// Deterministically generates a weight from a spec.
pub fn gen_weight(spec: &GeneratorSpec) -> Result<StepWeight> {
    spec.validate()?;
    let mut rng = SplitMix64::new(spec.seed);
    match spec.kind {
        GeneratorKind::Uniform => {
            let breakpoints = gen_breakpoints(&mut rng, spec.pieces);
            let values = (0..spec.pieces)
                .map(|_| gen_value(&mut rng, &spec.value_cap))
                .collect();
            Ok(StepWeight::new(breakpoints, values)?)
        }
        GeneratorKind::PowerDiscretized => power_base(spec),
        GeneratorKind::ShuffledPower => {
            let base = power_base(spec)?;
            let mut pieces: Vec<(Rational, Rational)> =
                base.pieces().map(|(len, v)| (len, v.clone())).collect();
            // Fisher-Yates
            for i in (1..pieces.len()).rev() {
                let j = rng.next_below(i as u64 + 1) as usize;
                pieces.swap(i, j);
            }
            Ok(StepWeight::from_lengths(rat_int(0), pieces)?)
        }
        GeneratorKind::MultiplicativeWalk => {
            let breakpoints = gen_breakpoints(&mut rng, spec.pieces);
            let values = walk_values(&mut rng, spec.pieces, &spec.value_cap);
            Ok(StepWeight::new(breakpoints, values)?)
        }
    }
}

/// Random subinterval of the weight's domain with endpoints on a fine grid.
pub fn random_subinterval(rng: &mut SplitMix64, w: &StepWeight) -> Interval {
    let grid: u64 = 1 << 20;
    loop {
        let a = rng.next_below(grid + 1);
        let b = rng.next_below(grid + 1);
        if a == b {
            continue;
        }
        let (a, b) = (a.min(b), a.max(b));
        let lo = &w.breakpoints()[0] + w.domain_length() * rat(a as i64, grid as i64);
        let hi = &w.breakpoints()[0] + w.domain_length() * rat(b as i64, grid as i64);
        return Interval::new(lo, hi).expect("a < b on the grid");
    }
}

/// Random interval set in the unit host with at most `max_components`
/// components (after merging), never of full measure.
pub fn gen_interval_set(seed: u64, max_components: usize) -> IntervalSet {
    let mut rng = SplitMix64::new(seed);
    let grid: u64 = 400;
    let host = Interval::new(rat_int(0), rat_int(1)).expect("unit host");
    loop {
        let n = 1 + rng.next_below(max_components.max(1) as u64) as usize;
        let mut points = std::collections::BTreeSet::new();
        while points.len() < 2 * n {
            points.insert(rng.next_below(grid + 1));
        }
        let pts: Vec<u64> = points.into_iter().collect();
        let components: Vec<(Rational, Rational)> = pts
            .chunks_exact(2)
            .map(|pair| (rat(pair[0] as i64, grid as i64), rat(pair[1] as i64, grid as i64)))
            .collect();
        // paired distinct points always leave gaps unless a single component
        // spans the whole host; retry that degenerate draw
        if let Ok(set) = IntervalSet::new(host.clone(), components) {
            return set;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use a1kit_core::{a1_constant, to_f64};

    #[test]
    fn generation_is_deterministic() {
        for kind in [
            GeneratorKind::Uniform,
            GeneratorKind::PowerDiscretized,
            GeneratorKind::ShuffledPower,
            GeneratorKind::MultiplicativeWalk,
        ] {
            let spec = GeneratorSpec::new(kind, 9, 0xFEED);
            assert_eq!(gen_weight(&spec).unwrap(), gen_weight(&spec).unwrap());
        }
    }

    #[test]
    fn uniform_values_respect_the_cap() {
        let spec = GeneratorSpec::new(GeneratorKind::Uniform, 12, 7);
        let w = gen_weight(&spec).unwrap();
        for v in w.values() {
            assert!(*v >= rat_int(1) && *v <= rat_int(10));
        }
        // average/essinf ratios are bounded by max/min <= M
        assert!(to_f64(&a1_constant(&w).constant) <= 10.0);
    }

    #[test]
    fn shuffled_power_rearranges_to_the_discretization() {
        let spec = GeneratorSpec::new(GeneratorKind::ShuffledPower, 8, 3);
        let shuffled = gen_weight(&spec).unwrap();
        let base = gen_weight(&GeneratorSpec::new(GeneratorKind::PowerDiscretized, 8, 3)).unwrap();
        assert_eq!(shuffled.rearrange(), base.rearrange());
    }

    #[test]
    fn walk_values_stay_in_band() {
        let spec = GeneratorSpec::new(GeneratorKind::MultiplicativeWalk, 20, 11);
        let w = gen_weight(&spec).unwrap();
        for v in w.values() {
            assert!(*v >= rat(1, 10) && *v <= rat_int(10));
        }
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let mut spec = GeneratorSpec::new(GeneratorKind::Uniform, 0, 1);
        assert!(gen_weight(&spec).is_err());
        spec.pieces = 3;
        spec.value_cap = rat_int(1);
        assert!(gen_weight(&spec).is_err());
        spec.value_cap = rat_int(10);
        spec.tau = 0.5;
        assert!(gen_weight(&spec).is_err());
    }

    #[test]
    fn interval_sets_are_deterministic_and_partial() {
        let a = gen_interval_set(42, 10);
        let b = gen_interval_set(42, 10);
        assert_eq!(a, b);
        assert!(a.measure() < rat_int(1));
        assert!(!a.components().is_empty());
    }

    #[test]
    fn derived_seeds_spread() {
        let s: Vec<u64> = (0..100).map(|i| derive_seed(99, i)).collect();
        let mut uniq = s.clone();
        uniq.sort();
        uniq.dedup();
        assert_eq!(uniq.len(), s.len());
    }
}
