//! Sharp integrability bounds: the critical exponent, the best reverse
//! power-mean constant, the moment-ratio function and its inverse, extremal
//! power weights and their moments, and the subinterval verifier.
//!
//! Everything here runs in binary64: exponents like `c^(p-1)` leave the
//! rationals immediately.  Closed forms carry a 1e-12 tolerance and ratio
//! checks over step weights a 1e-9 tolerance.  Near the critical exponent
//! the constant's denominator vanishes, so exponents within 1e-9 of it are
//! rejected outright instead of producing astronomically inflated output.

use crate::a1::a1_constant;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::power::PowerWeight;
use crate::rational::{to_f64, Rational};
use crate::rng::SplitMix64;
use crate::weight::StepWeight;

/// Tolerance for ratio checks over step weights (float moments).
pub const RATIO_TOL: f64 = 1e-9;
/// Exponents closer than this to the critical exponent are rejected.
pub const POLE_GUARD: f64 = 1e-9;

/// The sharp bound package for a fixed `(c, p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharpBound {
    pub c: f64,
    pub p: f64,
    /// `c/(c-1)`, the supremum of admissible exponents.
    pub p_crit: f64,
    /// `1 / (c^(p-1) · (c + p − p·c))`, the best constant; `≥ 1`.
    pub constant: f64,
}

/// Moments of a weight normalized to its domain: `mean = avg(w)`,
/// `p_mean = avg(w^p)`.  Power-mean monotonicity gives `mean^p ≤ p_mean`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentPair {
    pub p: f64,
    pub mean: f64,
    pub p_mean: f64,
}

impl MomentPair {
    pub fn from_step_weight(w: &StepWeight, p: f64) -> Self {
        let len = to_f64(&w.domain_length());
        MomentPair {
            p,
            mean: to_f64(&w.total_integral()) / len,
            p_mean: w.power_integral_f64(p) / len,
        }
    }

    /// For a power weight on the unit domain; `None` when the p-th moment
    /// diverges.
    pub fn from_power_weight(pw: &PowerWeight, p: f64) -> Result<Option<Self>> {
        match power_moment(pw, p, 0.0)? {
            Moment::Divergent => Ok(None),
            Moment::Finite(p_mean) => Ok(Some(MomentPair {
                p,
                mean: pw.mass(),
                p_mean,
            })),
        }
    }
}

/// Result of a subinterval reverse power-mean check.
#[derive(Debug, Clone, PartialEq)]
pub struct ReverseHolderReport {
    pub c: f64,
    pub p: f64,
    /// Maximum over candidates of `avg(w^p, I) / (B(c,p) · avg(w, I)^p)`.
    pub worst_ratio: f64,
    pub worst_interval: Interval,
    /// `worst_ratio ≤ 1 + RATIO_TOL`.
    pub pass: bool,
}

/// A possibly divergent truncated moment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Moment {
    Finite(f64),
    Divergent,
}

impl Moment {
    pub fn finite(self) -> Option<f64> {
        match self {
            Moment::Finite(x) => Some(x),
            Moment::Divergent => None,
        }
    }
}

/// `c/(c-1)` for `c > 1`; `+∞` at `c = 1` (every exponent is admissible).
pub fn critical_exponent(c: f64) -> Result<f64> {
    if !c.is_finite() || c < 1.0 {
        return Err(Error::InvalidC {
            c,
            requirement: "a finite value >= 1",
        });
    }
    if c == 1.0 {
        return Ok(f64::INFINITY);
    }
    Ok(c / (c - 1.0))
}

fn validate_exponent(c: f64, p: f64) -> Result<f64> {
    let p_crit = critical_exponent(c)?;
    if !p.is_finite() || p < 1.0 || p >= p_crit {
        return Err(Error::POutOfRange { p, p_crit });
    }
    if p_crit.is_finite() && p_crit - p < POLE_GUARD {
        return Err(Error::PTooCloseToCritical {
            p,
            p_crit,
            guard: POLE_GUARD,
        });
    }
    Ok(p_crit)
}

/// The best constant `1/(c^(p-1)·(c+p−pc))` for `1 ≤ p < c/(c-1)`.
pub fn sharp_constant(c: f64, p: f64) -> Result<f64> {
    validate_exponent(c, p)?;
    if p == 1.0 {
        return Ok(1.0);
    }
    Ok(1.0 / (c.powf(p - 1.0) * (c + p - p * c)))
}

/// Bundles `critical_exponent` and `sharp_constant`.
pub fn sharp_bound(c: f64, p: f64) -> Result<SharpBound> {
    let p_crit = validate_exponent(c, p)?;
    let constant = sharp_constant(c, p)?;
    Ok(SharpBound {
        c,
        p,
        p_crit,
        constant,
    })
}

fn moment_ratio_unchecked(p: f64, z: f64) -> f64 {
    p * z.powf(p - 1.0) - (p - 1.0) * z.powf(p)
}

fn moment_ratio_slope(p: f64, z: f64) -> f64 {
    p * (p - 1.0) * z.powf(p - 2.0) * (1.0 - z)
}

/// The moment-ratio function `z ↦ p·z^(p-1) − (p-1)·z^p`, a decreasing
/// bijection from `[1, p/(p-1)]` onto `[0, 1]`.  Its inverse recovers the
/// anchored averaging constant of an extremal weight from the moment ratio
/// `mean^p / p_mean`.
pub fn moment_ratio(p: f64, z: f64) -> Result<f64> {
    if !p.is_finite() || p <= 1.0 {
        return Err(Error::PNotAboveOne { p });
    }
    let z_max = p / (p - 1.0);
    if !z.is_finite() || z < 1.0 || z > z_max {
        return Err(Error::ZOutOfRange {
            z,
            lo: 1.0,
            hi: z_max,
        });
    }
    Ok(moment_ratio_unchecked(p, z))
}

/// Inverse of [`moment_ratio`] on `[0, 1]`: the unique `z ∈ [1, p/(p-1)]`
/// with `moment_ratio(p, z) = y`, to a residual of at most about 1e-12.
///
/// Bisection narrows the bracket to 1e-8, then two Newton steps polish,
/// clamped to the bracket and accepted only when the residual improves; the
/// slope vanishes at `z = 1`, where pure Newton would crawl.
pub fn moment_ratio_inverse(p: f64, y: f64) -> Result<f64> {
    if !p.is_finite() || p <= 1.0 {
        return Err(Error::PNotAboveOne { p });
    }
    if !y.is_finite() || !(0.0..=1.0).contains(&y) {
        return Err(Error::YOutOfRange { y });
    }
    let z_max = p / (p - 1.0);
    if y == 1.0 {
        return Ok(1.0);
    }
    if y == 0.0 {
        return Ok(z_max);
    }

    let (mut lo, mut hi) = (1.0_f64, z_max);
    while hi - lo > 1e-8 {
        let mid = 0.5 * (lo + hi);
        if moment_ratio_unchecked(p, mid) >= y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut z = 0.5 * (lo + hi);
    let mut residual = (moment_ratio_unchecked(p, z) - y).abs();
    for _ in 0..2 {
        let slope = moment_ratio_slope(p, z);
        if slope == 0.0 {
            break;
        }
        let candidate =
            (z - (moment_ratio_unchecked(p, z) - y) / slope).clamp(lo, hi);
        let cand_residual = (moment_ratio_unchecked(p, candidate) - y).abs();
        if cand_residual < residual {
            z = candidate;
            residual = cand_residual;
        } else {
            break;
        }
    }
    Ok(z)
}

/// The power weight with prescribed mass whose anchored average is exactly
/// `tau` times its value everywhere — the extremal profile for the sharp
/// bound at `c = tau`.
pub fn extremal_weight(mass: f64, tau: f64) -> Result<PowerWeight> {
    PowerWeight::new(mass, tau)
}

/// Truncated moment `∫_eps^1 g^p` of a power weight, by closed-form
/// antiderivative.  At `eps = 0` the moment is finite exactly when
/// `p < tau/(tau-1)`; otherwise the divergent flag is returned.
pub fn power_moment(pw: &PowerWeight, p: f64, eps: f64) -> Result<Moment> {
    if !p.is_finite() || p < 1.0 {
        return Err(Error::POutOfRange {
            p,
            p_crit: f64::INFINITY,
        });
    }
    if !eps.is_finite() || !(0.0..1.0).contains(&eps) {
        return Err(Error::EpsOutOfRange { eps });
    }
    let (f, tau) = (pw.mass(), pw.tau());
    if p == 1.0 {
        // plain mass: f · (1 − eps^(1/tau)), exactly f at eps = 0
        let value = if eps == 0.0 {
            f
        } else {
            f * (1.0 - eps.powf(1.0 / tau))
        };
        return Ok(Moment::Finite(value));
    }
    if tau == 1.0 {
        return Ok(Moment::Finite(f.powf(p) * (1.0 - eps)));
    }
    // ∫ t^(q-1) with q = 1 + p/tau − p; q ≤ 0 means divergence at 0.
    let q = 1.0 + p / tau - p;
    let amplitude = (f / tau).powf(p);
    if eps == 0.0 {
        if q > 0.0 {
            Ok(Moment::Finite(amplitude / q))
        } else {
            Ok(Moment::Divergent)
        }
    } else if q == 0.0 {
        Ok(Moment::Finite(amplitude * (-eps.ln())))
    } else {
        // (1 − eps^q)/q, stable for small q via expm1
        Ok(Moment::Finite(amplitude * (-f64::exp_m1(q * eps.ln())) / q))
    }
}

/// `|∫_0^1 g^p − B(c,p)|` for the extremal weight of unit mass with
/// `tau = c`: the two closed forms agree exactly in exact arithmetic, so the
/// gap is pure float round-off.  A strictly positive lower bound here would
/// mean the constant could be decreased; its vanishing witnesses sharpness.
pub fn sharpness_gap(c: f64, p: f64) -> Result<f64> {
    if !c.is_finite() || c <= 1.0 {
        return Err(Error::InvalidC {
            c,
            requirement: "a finite value > 1",
        });
    }
    validate_exponent(c, p)?;
    let extremal = extremal_weight(1.0, c)?;
    let moment = power_moment(&extremal, p, 0.0)?
        .finite()
        .expect("p below the critical exponent has a finite moment");
    let bound = sharp_constant(c, p)?;
    Ok((moment - bound).abs())
}

/// Breakpoint-aligned subintervals plus `n_random` seeded random
/// subintervals — the default candidate set for [`check_reverse_holder`].
pub fn default_candidates(w: &StepWeight, n_random: usize, seed: u64) -> Vec<Interval> {
    let bp = w.breakpoints();
    let mut out = Vec::new();
    for i in 0..bp.len() {
        for j in (i + 1)..bp.len() {
            out.push(Interval::new(bp[i].clone(), bp[j].clone()).unwrap());
        }
    }
    let mut rng = SplitMix64::new(seed);
    let grid: u64 = 1 << 20;
    let lo = &bp[0];
    let len = w.domain_length();
    while out.len() < bp.len() * (bp.len() - 1) / 2 + n_random {
        let a = rng.next_below(grid + 1);
        let b = rng.next_below(grid + 1);
        if a == b {
            continue;
        }
        let (a, b) = (a.min(b), a.max(b));
        let scale = |k: u64| lo + &len * Rational::new(k.into(), grid.into());
        out.push(Interval::new(scale(a), scale(b)).unwrap());
    }
    out
}

/// Evaluates both sides of the sharp bound on every candidate interval and
/// reports the worst ratio, using the weight's exact A₁ constant for `c`.
///
/// Interval integrals are positive per-piece sums (no prefix cancellation),
/// so the ratio is accurate to ~1e-14 even on very short intervals.  Both
/// sides are homogeneous of degree `p` in the weight, so values are
/// normalized by their maximum first; the value spread of an A₁(c) weight is
/// at most `c` per piece transition, which keeps `v^p` inside f64 range for
/// every admissible exponent — even when `c` is close to 1 and the critical
/// exponent is enormous.
pub fn check_reverse_holder(
    w: &StepWeight,
    p: f64,
    candidates: &[Interval],
) -> Result<ReverseHolderReport> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidateSet);
    }
    let c = to_f64(&a1_constant(w).constant).max(1.0);
    validate_exponent(c, p)?;
    let bound = sharp_constant(c, p)?;

    let bp: Vec<f64> = w.breakpoints().iter().map(to_f64).collect();
    let v_max = w
        .values()
        .iter()
        .max()
        .map(to_f64)
        .expect("a weight has at least one piece");
    let vals: Vec<f64> = w.values().iter().map(|v| to_f64(v) / v_max).collect();
    let vals_p: Vec<f64> = vals.iter().map(|v| v.powf(p)).collect();

    let mut worst: Option<(f64, &Interval)> = None;
    for interval in candidates {
        if !w.domain().contains(interval) {
            return Err(Error::OutOfDomain {
                interval: interval.to_string(),
                domain: w.domain().to_string(),
            });
        }
        let (first, last) = w.piece_range(interval);
        let (a, b) = (to_f64(interval.lo()), to_f64(interval.hi()));
        let mut sum1 = 0.0;
        let mut sump = 0.0;
        for k in first..=last {
            let overlap = (b.min(bp[k + 1]) - a.max(bp[k])).max(0.0);
            sum1 += vals[k] * overlap;
            sump += vals_p[k] * overlap;
        }
        let len = b - a;
        let lhs = sump / len;
        let rhs = bound * (sum1 / len).powf(p);
        let ratio = lhs / rhs;
        if worst.as_ref().is_none_or(|(r, _)| ratio > *r) {
            worst = Some((ratio, interval));
        }
    }
    let (worst_ratio, worst_interval) = worst.expect("candidates is non-empty");
    Ok(ReverseHolderReport {
        c,
        p,
        worst_ratio,
        worst_interval: worst_interval.clone(),
        pass: worst_ratio <= 1.0 + RATIO_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn w1() -> StepWeight {
        StepWeight::new(
            vec![rat_int(0), rat(1, 2), rat_int(1)],
            vec![rat_int(2), rat_int(1)],
        )
        .unwrap()
    }

    #[test]
    fn critical_exponent_values() {
        assert_eq!(critical_exponent(2.0).unwrap(), 2.0);
        assert_eq!(critical_exponent(1.5).unwrap(), 3.0);
        assert!(critical_exponent(1.0).unwrap().is_infinite());
        assert!(critical_exponent(0.9).is_err());
    }

    #[test]
    fn sharp_constant_values() {
        assert_eq!(sharp_constant(3.0, 1.0).unwrap(), 1.0);
        let b = sharp_constant(2.0, 1.5).unwrap();
        assert!((b - 2.0f64.sqrt()).abs() < 1e-12);
        assert!(matches!(
            sharp_constant(2.0, 2.0),
            Err(Error::POutOfRange { .. })
        ));
        assert!(matches!(
            sharp_constant(2.0, 2.0 - 1e-12),
            Err(Error::PTooCloseToCritical { .. })
        ));
        // c = 1: all exponents admissible, constant 1
        assert_eq!(sharp_constant(1.0, 7.0).unwrap(), 1.0);
    }

    #[test]
    fn sharp_bound_invariants() {
        let sb = sharp_bound(2.0, 1.5).unwrap();
        assert_eq!(sb.p_crit, 2.0);
        assert!(sb.constant >= 1.0);
        // identity constant = 1/moment_ratio(p, c)
        let h = moment_ratio(1.5, 2.0).unwrap();
        assert!((sb.constant * h - 1.0).abs() < 1e-12);
    }

    #[test]
    fn moment_ratio_values() {
        assert!((moment_ratio(3.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(moment_ratio(3.0, 1.5).unwrap().abs() < 1e-15);
        assert_eq!(moment_ratio(2.0, 1.5).unwrap(), 0.75);
        assert!(moment_ratio(1.0, 1.0).is_err());
        assert!(moment_ratio(2.0, 2.5).is_err());
        assert!(moment_ratio(2.0, 0.5).is_err());
    }

    #[test]
    fn inverse_endpoints_and_known_value() {
        assert_eq!(moment_ratio_inverse(3.0, 1.0).unwrap(), 1.0);
        assert_eq!(moment_ratio_inverse(3.0, 0.0).unwrap(), 1.5);
        let z = moment_ratio_inverse(2.0, 0.75).unwrap();
        assert!((z - 1.5).abs() < 1e-12);
        assert!(moment_ratio_inverse(2.0, -0.1).is_err());
        assert!(moment_ratio_inverse(2.0, 1.1).is_err());
        assert!(moment_ratio_inverse(1.0, 0.5).is_err());
    }

    #[test]
    fn inverse_round_trip_residuals() {
        for p in [1.5, 2.0, 3.0, 10.0] {
            for k in 0..=20 {
                let y = k as f64 / 20.0;
                let z = moment_ratio_inverse(p, y).unwrap();
                let back = moment_ratio_unchecked(p, z);
                assert!(
                    (back - y).abs() <= 1e-12,
                    "p={p}, y={y}: residual {}",
                    (back - y).abs()
                );
            }
        }
    }

    #[test]
    fn inverse_is_decreasing() {
        let p = 2.7;
        let mut prev = f64::INFINITY;
        for k in 0..=40 {
            let y = k as f64 / 40.0;
            let z = moment_ratio_inverse(p, y).unwrap();
            assert!(z <= prev);
            prev = z;
        }
    }

    #[test]
    fn extremal_weight_examples() {
        let g = extremal_weight(1.0, 2.0).unwrap();
        assert!((g.eval(0.25) - 1.0).abs() < 1e-15);
        let c = extremal_weight(2.0, 1.0).unwrap();
        assert_eq!(c.eval(0.3), 2.0);
        assert!(extremal_weight(0.0, 2.0).is_err());
        assert!(extremal_weight(1.0, 0.9).is_err());
    }

    #[test]
    fn power_moment_closed_forms() {
        let g = extremal_weight(1.0, 2.0).unwrap();
        let m = power_moment(&g, 1.5, 0.0).unwrap().finite().unwrap();
        assert!((m - 2.0f64.sqrt()).abs() < 1e-12);
        let m = power_moment(&g, 2.0, 1e-4).unwrap().finite().unwrap();
        assert!((m - 0.25 * 1e4f64.ln()).abs() < 1e-12);
        assert_eq!(power_moment(&g, 2.0, 0.0).unwrap(), Moment::Divergent);
        // above the critical exponent the truncated moment stays finite
        assert!(power_moment(&g, 3.0, 1e-3).unwrap().finite().is_some());
        // p = 1 is the exact mass
        assert_eq!(power_moment(&g, 1.0, 0.0).unwrap(), Moment::Finite(1.0));
        assert!(power_moment(&g, 0.5, 0.0).is_err());
        assert!(power_moment(&g, 2.0, 1.0).is_err());
    }

    #[test]
    fn moment_pair_holder() {
        let g = extremal_weight(1.0, 2.0).unwrap();
        let mp = MomentPair::from_power_weight(&g, 1.5).unwrap().unwrap();
        assert!(mp.mean.powf(mp.p) <= mp.p_mean + 1e-15);
        assert!(MomentPair::from_power_weight(&g, 2.0).unwrap().is_none());
        let mp = MomentPair::from_step_weight(&w1(), 2.0);
        assert!(mp.mean.powf(2.0) <= mp.p_mean);
    }

    #[test]
    fn moment_identity_links_ratio_and_moments() {
        // mean^p / p_mean = moment_ratio(p, tau) for the extremal family
        for (tau, p) in [(2.0, 1.5), (3.0, 1.2), (1.5, 2.0)] {
            let g = extremal_weight(1.0, tau).unwrap();
            let mp = MomentPair::from_power_weight(&g, p).unwrap().unwrap();
            let lhs = mp.mean.powf(p) / mp.p_mean;
            let rhs = moment_ratio(p, tau).unwrap();
            assert!(
                (lhs - rhs).abs() <= 1e-10 * rhs.abs(),
                "tau={tau}, p={p}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn sharpness_gap_vanishes() {
        assert!(sharpness_gap(2.0, 1.5).unwrap() < 1e-10);
        assert_eq!(sharpness_gap(3.0, 1.0).unwrap(), 0.0);
        assert!(sharpness_gap(4.0, 1.2).unwrap() < 1e-10);
        assert!(sharpness_gap(1.0, 1.0).is_err());
    }

    #[test]
    fn reverse_holder_identity_at_p_one() {
        let candidates = default_candidates(&w1(), 100, 7);
        let rep = check_reverse_holder(&w1(), 1.0, &candidates).unwrap();
        assert!(rep.pass);
        assert!((rep.worst_ratio - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reverse_holder_whole_interval_example() {
        let domain = [Interval::new(rat_int(0), rat_int(1)).unwrap()];
        let rep = check_reverse_holder(&w1(), 1.2, &domain).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.c, 2.0);
        // LHS = 2^1.2/2 + 1/2, RHS = 1.5^1.2 / (2^0.2 · 0.8)
        let lhs = 0.5 * 2.0f64.powf(1.2) + 0.5;
        let rhs = 1.5f64.powf(1.2) / (2.0f64.powf(0.2) * 0.8);
        assert!((rep.worst_ratio - lhs / rhs).abs() < 1e-12);
        assert!(lhs < rhs);
    }

    #[test]
    fn reverse_holder_constant_weight() {
        let c = StepWeight::new(vec![rat_int(0), rat_int(1)], vec![rat_int(5)]).unwrap();
        let candidates = default_candidates(&c, 50, 3);
        let rep = check_reverse_holder(&c, 3.0, &candidates).unwrap();
        assert!(rep.pass);
        assert!(rep.worst_ratio <= 1.0);
    }

    #[test]
    fn reverse_holder_rejects_out_of_range_p() {
        let candidates = default_candidates(&w1(), 10, 1);
        // c = 2 so p_crit = 2
        assert!(check_reverse_holder(&w1(), 2.5, &candidates).is_err());
        assert!(check_reverse_holder(&w1(), 1.5, &[]).is_err());
    }

    #[test]
    fn default_candidates_deterministic() {
        let a = default_candidates(&w1(), 25, 42);
        let b = default_candidates(&w1(), 25, 42);
        assert_eq!(a, b);
        assert_eq!(a.len(), 3 + 25);
    }
}
