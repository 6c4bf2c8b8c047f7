//! Majorization of step weights and the two-level flattening construction.
//!
//! Two equivalent orders are implemented side by side as mutual oracles:
//! prefix-integral domination of the rearrangements, and domination of every
//! hinge integral `∫ max(w − λ, 0)`.  Hinges suffice for the full cone of
//! convex, non-negative, increasing, left-continuous test functions: every
//! such function is a constant plus a positive mixture of hinges, and both
//! sides of the comparison are linear in the test function.  Since the hinge
//! integral of a step weight is piecewise linear in λ, checking the merged
//! value levels (plus 0) decides all λ exactly.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::weight::{merge_equal_pieces, StepWeight};

/// The convex test function `t ↦ max(t − threshold, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HingeFunction {
    threshold: Rational,
}

impl HingeFunction {
    pub fn new(threshold: Rational) -> Result<Self> {
        if threshold < Rational::zero() {
            return Err(Error::NegativeThreshold {
                threshold: format_rational(&threshold),
            });
        }
        Ok(Self { threshold })
    }

    pub fn threshold(&self) -> &Rational {
        &self.threshold
    }
}

/// Averaging window for [`two_level_flatten`]: `(t0 − delta, t0 + delta)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlattenSpec {
    t0: Rational,
    delta: Rational,
}

impl FlattenSpec {
    pub fn new(t0: Rational, delta: Rational) -> Result<Self> {
        if delta <= Rational::zero() {
            return Err(Error::NonPositiveDelta {
                delta: format_rational(&delta),
            });
        }
        Ok(Self { t0, delta })
    }

    pub fn center(&self) -> &Rational {
        &self.t0
    }

    pub fn half_width(&self) -> &Rational {
        &self.delta
    }
}

fn check_same_length(w1: &StepWeight, w2: &StepWeight) -> Result<()> {
    let (l1, l2) = (w1.domain_length(), w2.domain_length());
    if l1 != l2 {
        return Err(Error::MismatchedDomains {
            left: format_rational(&l1),
            right: format_rational(&l2),
        });
    }
    Ok(())
}

/// Whether every prefix integral of `w1`'s rearrangement is dominated by the
/// corresponding prefix integral of `w2`'s, exactly.
///
/// Both prefix integrals are piecewise affine, so their difference is affine
/// between consecutive breakpoints of the two rearrangements; a function
/// affine between checkpoints and `≤ 0` at all of them is `≤ 0` everywhere.
/// Checking the union of breakpoints is therefore exact.
pub fn majorizes(w1: &StepWeight, w2: &StepWeight) -> Result<bool> {
    check_same_length(w1, w2)?;
    let r1 = w1.rearrange();
    let r2 = w2.rearrange();

    let mut checkpoints: Vec<&Rational> = r1.breakpoints()[1..]
        .iter()
        .chain(r2.breakpoints()[1..].iter())
        .collect();
    checkpoints.sort();
    checkpoints.dedup();

    let prefix = |w: &StepWeight, t: &Rational| -> Rational {
        // prefix integral of a weight on (0, L] at t ∈ (0, L]
        let iv = crate::interval::Interval::new(Rational::zero(), t.clone())
            .expect("checkpoints are positive");
        w.integrate(&iv).expect("checkpoint inside domain")
    };

    for t in checkpoints {
        if prefix(&r1, t) > prefix(&r2, t) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact `∫ max(w − λ, 0) = Σ_k max(v_k − λ, 0) · len_k`.
pub fn hinge_integral(w: &StepWeight, hinge: &HingeFunction) -> Rational {
    hinge_at(w, &hinge.threshold)
}

fn hinge_at(w: &StepWeight, level: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for (len, v) in w.pieces() {
        if v > level {
            acc += (v - level) * len;
        }
    }
    acc
}

/// Whether every hinge integral of `w1` is dominated by that of `w2` —
/// equivalently (and verified against [`majorizes`] as an oracle pair),
/// whether `∫ G(w1) ≤ ∫ G(w2)` for every convex, non-negative, increasing,
/// left-continuous `G`.
pub fn convex_dominates(w1: &StepWeight, w2: &StepWeight) -> Result<bool> {
    check_same_length(w1, w2)?;
    let mut levels: Vec<Rational> = w1
        .values()
        .iter()
        .chain(w2.values().iter())
        .cloned()
        .collect();
    levels.push(Rational::zero());
    levels.sort();
    levels.dedup();
    for level in &levels {
        if hinge_at(w1, level) > hinge_at(w2, level) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Replaces a non-increasing weight on `[t0 − δ, t0)` by its average `d1`
/// there and on `[t0, t0 + δ]` by its average `d2` there.
///
/// The result is still non-increasing (`d2 ≤ d1`, squeezed by the
/// neighboring values), has exactly the same total integral — half-window by
/// half-window — and is majorized by the input: averaging can only lower
/// prefix integrals inside the window while the ends stay pinned.
pub fn two_level_flatten(w: &StepWeight, spec: &FlattenSpec) -> Result<StepWeight> {
    if !w.is_nonincreasing() {
        return Err(Error::NotNonIncreasing);
    }
    let lo = spec.center() - spec.half_width();
    let hi = spec.center() + spec.half_width();
    let domain = w.domain();
    if lo < *domain.lo() || hi > *domain.hi() {
        return Err(Error::WindowOutOfBounds {
            window: format!(
                "({}, {})",
                format_rational(&lo),
                format_rational(&hi)
            ),
            domain: domain.to_string(),
        });
    }

    let left = crate::interval::Interval::new(lo.clone(), spec.center().clone())?;
    let right = crate::interval::Interval::new(spec.center().clone(), hi.clone())?;
    let d1 = w.average(&left)?;
    let d2 = w.average(&right)?;

    let mut pieces: Vec<(Rational, Rational)> = Vec::new();
    for (k, v) in w.values().iter().enumerate() {
        let cell_lo = &w.breakpoints()[k];
        let cell_hi = &w.breakpoints()[k + 1];
        // part of the cell left of the window
        let keep_lo = cell_lo.clone().min(lo.clone());
        let keep_hi = cell_hi.clone().min(lo.clone());
        if keep_hi > keep_lo {
            pieces.push((keep_hi - keep_lo, v.clone()));
        }
        // window pieces inserted once, when first reached
        if *cell_lo <= lo && lo < *cell_hi {
            pieces.push((spec.half_width().clone(), d1.clone()));
            pieces.push((spec.half_width().clone(), d2.clone()));
        }
        // part of the cell right of the window
        let keep_lo = cell_lo.clone().max(hi.clone());
        let keep_hi = cell_hi.clone().max(hi.clone());
        if keep_hi > keep_lo {
            pieces.push((keep_hi - keep_lo, v.clone()));
        }
    }
    let merged = merge_equal_pieces(pieces);
    let out = StepWeight::from_lengths(w.breakpoints()[0].clone(), merged)
        .expect("assembled pieces are positive with positive lengths");
    debug_assert!(out.is_nonincreasing());
    debug_assert_eq!(out.total_integral(), w.total_integral());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn halves(v1: i64, v2: i64) -> StepWeight {
        StepWeight::new(
            vec![rat_int(0), rat(1, 2), rat_int(1)],
            vec![rat_int(v1), rat_int(v2)],
        )
        .unwrap()
    }

    #[test]
    fn majorizes_examples() {
        assert!(majorizes(&halves(2, 1), &halves(3, 1)).unwrap());
        let w = halves(2, 1);
        assert!(majorizes(&w, &w).unwrap());
        assert!(!majorizes(&halves(3, 1), &halves(2, 1)).unwrap());
    }

    #[test]
    fn majorizes_rearranges_first() {
        // same multiset of pieces in different order: mutual majorization
        let a = halves(1, 3);
        let b = halves(3, 1);
        assert!(majorizes(&a, &b).unwrap());
        assert!(majorizes(&b, &a).unwrap());
    }

    #[test]
    fn majorizes_rejects_mismatched_domains() {
        let short = StepWeight::new(vec![rat_int(0), rat(1, 2)], vec![rat_int(1)]).unwrap();
        assert!(matches!(
            majorizes(&short, &halves(1, 1)),
            Err(Error::MismatchedDomains { .. })
        ));
    }

    #[test]
    fn hinge_integral_examples() {
        let w = halves(2, 1);
        let at = |n: i64| hinge_integral(&w, &HingeFunction::new(rat_int(n)).unwrap());
        assert_eq!(at(1), rat(1, 2));
        assert_eq!(at(0), rat(3, 2));
        assert_eq!(at(2), rat_int(0));
        assert!(HingeFunction::new(rat_int(-1)).is_err());
    }

    #[test]
    fn convex_dominates_examples() {
        assert!(convex_dominates(&halves(2, 1), &halves(3, 1)).unwrap());
        let w = halves(2, 1);
        assert!(convex_dominates(&w, &w).unwrap());
        assert!(!convex_dominates(&halves(3, 1), &halves(2, 1)).unwrap());
    }

    #[test]
    fn flatten_worked_example() {
        // [4,2] on halves, window (0, 3/4): averages 4 and 8/3
        let w = halves(4, 2);
        let spec = FlattenSpec::new(rat(3, 8), rat(3, 8)).unwrap();
        let out = two_level_flatten(&w, &spec).unwrap();
        assert_eq!(
            out.breakpoints(),
            &[rat_int(0), rat(3, 8), rat(3, 4), rat_int(1)]
        );
        assert_eq!(out.values(), &[rat_int(4), rat(8, 3), rat_int(2)]);
        assert_eq!(out.total_integral(), rat_int(3));
        // p = 2 moment drops from 10 to 29/3
        assert_eq!(w.power_integral_exact(2), rat_int(10));
        assert_eq!(out.power_integral_exact(2), rat(29, 3));
        assert!(majorizes(&out, &w).unwrap());
    }

    #[test]
    fn flatten_constant_window_is_identity() {
        let w = halves(4, 2);
        // window entirely inside piece 1
        let spec = FlattenSpec::new(rat(1, 4), rat(1, 8)).unwrap();
        let out = two_level_flatten(&w, &spec).unwrap();
        assert_eq!(out, w);
    }

    #[test]
    fn flatten_validates_inputs() {
        let increasing = halves(1, 2);
        let spec = FlattenSpec::new(rat(1, 2), rat(1, 4)).unwrap();
        assert!(matches!(
            two_level_flatten(&increasing, &spec),
            Err(Error::NotNonIncreasing)
        ));
        let w = halves(2, 1);
        let wide = FlattenSpec::new(rat(1, 2), rat_int(1)).unwrap();
        assert!(matches!(
            two_level_flatten(&w, &wide),
            Err(Error::WindowOutOfBounds { .. })
        ));
        assert!(FlattenSpec::new(rat(1, 2), rat_int(0)).is_err());
    }

    #[test]
    fn flatten_window_at_domain_edges() {
        let w = halves(4, 2);
        let spec = FlattenSpec::new(rat(1, 2), rat(1, 2)).unwrap();
        let out = two_level_flatten(&w, &spec).unwrap();
        assert_eq!(out.total_integral(), w.total_integral());
        assert!(out.is_nonincreasing());
        // whole domain averaged in halves: unchanged here since each half is constant
        assert_eq!(out, w);
    }

    #[test]
    fn flatten_levels_are_ordered() {
        let w = StepWeight::new(
            vec![rat_int(0), rat(1, 4), rat(1, 2), rat(3, 4), rat_int(1)],
            vec![rat_int(8), rat_int(5), rat_int(3), rat_int(1)],
        )
        .unwrap();
        let spec = FlattenSpec::new(rat(1, 2), rat(3, 8)).unwrap();
        let out = two_level_flatten(&w, &spec).unwrap();
        let left = crate::interval::Interval::new(rat(1, 8), rat(1, 2)).unwrap();
        let right = crate::interval::Interval::new(rat(1, 2), rat(7, 8)).unwrap();
        let d1 = w.average(&left).unwrap();
        let d2 = w.average(&right).unwrap();
        assert!(d2 <= d1);
        assert_eq!(out.integrate(&left).unwrap(), w.integrate(&left).unwrap());
        assert_eq!(out.integrate(&right).unwrap(), w.integrate(&right).unwrap());
        assert!(out.is_nonincreasing());
        assert!(majorizes(&out, &w).unwrap());
        // strictly varying window halves: p = 2 moment strictly decreases
        assert!(out.power_integral_exact(2) < w.power_integral_exact(2));
    }
}
