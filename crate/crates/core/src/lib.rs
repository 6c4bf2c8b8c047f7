//! Exact computation with piecewise-constant weights in the Muckenhoupt A₁
//! class: rearrangement, exact A₁ constants, sharp reverse power-mean
//! (reverse Hölder) bounds with their extremal profiles, majorization
//! orders, and density-controlled interval covers.
//!
//! The crate splits cleanly along one line: anything expressible in rational
//! arithmetic (step weights and every integral, average, infimum, or ratio
//! of them) is exact, and anything involving a real exponent (power weights,
//! `c^(p-1)`, p-th moments for non-integer p) is binary64 with explicit
//! tolerances.
//!
//! ```
//! use a1kit_core::{a1_constant, rat, StepWeight};
//!
//! let w = StepWeight::new(
//!     vec![rat(0, 1), rat(1, 2), rat(1, 1)],
//!     vec![rat(2, 1), rat(1, 1)],
//! )
//! .unwrap();
//! let report = a1_constant(&w);
//! assert_eq!(report.constant, rat(2, 1));
//! ```

pub mod a1;
pub mod covering;
pub mod error;
pub mod interval;
pub mod json;
pub mod majorization;
pub mod power;
pub mod rational;
pub mod rng;
pub mod sharp;
pub mod weight;

pub use a1::{a1_constant, check_rearranged_bound, hardy_constant, A1Report, RearrangedBoundReport};
pub use covering::{cover, verify_cover, CoverDefect, CoverResult, CoverVerification, IntervalSet};
pub use error::{Error, Result};
pub use interval::Interval;
pub use majorization::{
    convex_dominates, hinge_integral, majorizes, two_level_flatten, FlattenSpec, HingeFunction,
};
pub use power::{discretize_power, DiscretizeScheme, PowerWeight};
pub use rational::{as_i128_pair, format_rational, parse_rational, rat, rat_int, to_f64, Rational};
pub use rng::SplitMix64;
pub use sharp::{
    check_reverse_holder, critical_exponent, default_candidates, extremal_weight, moment_ratio,
    moment_ratio_inverse, power_moment, sharp_bound, sharp_constant, sharpness_gap, Moment,
    MomentPair, ReverseHolderReport, SharpBound,
};
pub use weight::{DistributionPoint, StepWeight};
