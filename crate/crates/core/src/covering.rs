//! Constructive covers of finite interval unions at prescribed density.
//!
//! Given a finite union `E` of closed intervals inside a host interval and a
//! density defect `ε ∈ (0, 1)`, [`cover`] produces finitely many intervals
//! with pairwise disjoint interiors whose union contains `E` and which each
//! meet `E` in measure at least `(1−ε)` of their length but strictly less
//! than all of it.  Each merged component is enlarged one-sidedly into the
//! adjacent gap, capped at half the gap so neighboring covers stay
//! interior-disjoint.  All certificates are exact rational statements and
//! re-checkable by [`verify_cover`].

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rational::{format_rational, Rational};

/// A finite union of disjoint closed intervals inside a host interval.
///
/// Construction sorts the components, merges touching or overlapping ones,
/// and drops zero-length components; the stored form is canonical.  The
/// union must leave the host a set of positive measure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalSet {
    host: Interval,
    components: Vec<(Rational, Rational)>,
}

impl IntervalSet {
    pub fn new(host: Interval, components: Vec<(Rational, Rational)>) -> Result<Self> {
        let mut cleaned: Vec<(Rational, Rational)> = Vec::with_capacity(components.len());
        for (lo, hi) in components {
            if lo > hi {
                return Err(Error::InvalidComponent {
                    lo: format_rational(&lo),
                    hi: format_rational(&hi),
                });
            }
            if lo == hi {
                continue; // null components carry no mass
            }
            if lo < *host.lo() || hi > *host.hi() {
                return Err(Error::ComponentOutsideHost {
                    lo: format_rational(&lo),
                    hi: format_rational(&hi),
                    host: host.to_string(),
                });
            }
            cleaned.push((lo, hi));
        }
        cleaned.sort();
        let mut merged: Vec<(Rational, Rational)> = Vec::with_capacity(cleaned.len());
        for (lo, hi) in cleaned {
            match merged.last_mut() {
                Some((_, last_hi)) if lo <= *last_hi => {
                    if hi > *last_hi {
                        *last_hi = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        let total: Rational = merged
            .iter()
            .map(|(lo, hi)| hi - lo)
            .fold(Rational::zero(), |acc, len| acc + len);
        if total >= host.length() {
            return Err(Error::SetFillsHost);
        }
        Ok(Self {
            host,
            components: merged,
        })
    }

    pub fn host(&self) -> &Interval {
        &self.host
    }

    /// Merged components, sorted and pairwise non-touching.
    pub fn components(&self) -> &[(Rational, Rational)] {
        &self.components
    }

    pub fn measure(&self) -> Rational {
        self.components
            .iter()
            .map(|(lo, hi)| hi - lo)
            .fold(Rational::zero(), |acc, len| acc + len)
    }

    /// Exact measure of the overlap with `[lo, hi]`.
    fn overlap(&self, lo: &Rational, hi: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (clo, chi) in &self.components {
            let a = clo.max(lo);
            let b = chi.min(hi);
            if b > a {
                acc += b - a;
            }
        }
        acc
    }
}

/// A cover together with the density defect it certifies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverResult {
    /// Closed intervals with pairwise disjoint interiors.
    pub intervals: Vec<Interval>,
    pub epsilon: Rational,
}

/// What [`verify_cover`] found wrong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverDefect {
    DegenerateEpsilon,
    /// Two cover intervals overlap in positive measure.
    OverlappingInteriors(usize, usize),
    /// Component `index` of the set is not contained in the cover's union.
    Uncovered { component: usize },
    /// Interval `index` meets the set in measure below `(1−ε)` of its length.
    DensityTooLow { interval: usize },
    /// Interval `index` is entirely inside the set (density 1 not allowed).
    NotStrictlyPartial { interval: usize },
}

/// Verdict of [`verify_cover`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverVerification {
    pub pass: bool,
    pub defects: Vec<CoverDefect>,
}

/// Builds the one-sided enlargement cover for `ε ∈ (0, 1)`.
///
/// For a merged component `[α, β]` the enlargement is
/// `η = min(ε(β−α)/(1−ε), gap/2)` into the right gap — or into the left gap
/// when `β` is the host's right end.  The lower density bound is equivalent
/// to `(1−ε)·η ≤ ε·(β−α)`, which the first argument of the min guarantees;
/// the cap at half the gap keeps neighboring covers interior-disjoint and
/// `η > 0` strict, so each interval keeps a piece of the complement.
pub fn cover(set: &IntervalSet, epsilon: &Rational) -> Result<CoverResult> {
    if *epsilon <= Rational::zero() || *epsilon >= Rational::one() {
        return Err(Error::DegenerateEpsilon {
            eps: format_rational(epsilon),
        });
    }
    let host = set.host();
    let comps = set.components();
    let mut intervals = Vec::with_capacity(comps.len());
    for (k, (lo, hi)) in comps.iter().enumerate() {
        let len = hi - lo;
        let allowed = epsilon * &len / (Rational::one() - epsilon);
        if hi < host.hi() {
            let gap_end = comps.get(k + 1).map(|(next, _)| next).unwrap_or(host.hi());
            let eta = allowed.min((gap_end - hi) / Rational::from_integer(2.into()));
            intervals.push(Interval::new(lo.clone(), hi + eta)?);
        } else {
            // component touches the right end of the host: enlarge leftward
            let gap_start = if k > 0 { &comps[k - 1].1 } else { host.lo() };
            let eta = allowed.min((lo - gap_start) / Rational::from_integer(2.into()));
            intervals.push(Interval::new(lo - eta, hi.clone())?);
        }
    }
    Ok(CoverResult {
        intervals,
        epsilon: epsilon.clone(),
    })
}

/// Exact re-check of a cover: disjoint interiors, coverage of the whole set,
/// and both density inequalities for every interval.  Never errors; a bad
/// cover yields `pass = false` with the defects listed.
pub fn verify_cover(set: &IntervalSet, result: &CoverResult) -> CoverVerification {
    let mut defects = Vec::new();
    if result.epsilon <= Rational::zero() || result.epsilon >= Rational::one() {
        defects.push(CoverDefect::DegenerateEpsilon);
    }

    // disjoint interiors: sort index order by left endpoint, check neighbors
    let mut order: Vec<usize> = (0..result.intervals.len()).collect();
    order.sort_by(|&a, &b| result.intervals[a].lo().cmp(result.intervals[b].lo()));
    for pair in order.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if result.intervals[a].hi() > result.intervals[b].lo() {
            defects.push(CoverDefect::OverlappingInteriors(a, b));
        }
    }

    // coverage: each component must sit inside one contiguous block of the union
    let mut blocks: Vec<(Rational, Rational)> = Vec::new();
    for &k in &order {
        let iv = &result.intervals[k];
        match blocks.last_mut() {
            Some((_, hi)) if *iv.lo() <= *hi => {
                if iv.hi() > hi {
                    *hi = iv.hi().clone();
                }
            }
            _ => blocks.push((iv.lo().clone(), iv.hi().clone())),
        }
    }
    for (c, (lo, hi)) in set.components().iter().enumerate() {
        let covered = blocks.iter().any(|(blo, bhi)| blo <= lo && hi <= bhi);
        if !covered {
            defects.push(CoverDefect::Uncovered { component: c });
        }
    }

    // density certificates
    let one_minus_eps = Rational::one() - &result.epsilon;
    for (k, iv) in result.intervals.iter().enumerate() {
        let len = iv.length();
        let inter = set.overlap(iv.lo(), iv.hi());
        if inter < &one_minus_eps * &len {
            defects.push(CoverDefect::DensityTooLow { interval: k });
        }
        if inter >= len {
            defects.push(CoverDefect::NotStrictlyPartial { interval: k });
        }
    }

    CoverVerification {
        pass: defects.is_empty(),
        defects,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn unit_host() -> Interval {
        Interval::new(rat_int(0), rat_int(1)).unwrap()
    }

    fn two_component_set() -> IntervalSet {
        IntervalSet::new(
            unit_host(),
            vec![(rat(1, 10), rat(3, 10)), (rat(6, 10), rat(7, 10))],
        )
        .unwrap()
    }

    #[test]
    fn construction_merges_and_validates() {
        let s = IntervalSet::new(
            unit_host(),
            vec![
                (rat(1, 2), rat(6, 10)),
                (rat(1, 10), rat(3, 10)),
                (rat(3, 10), rat(4, 10)),
                (rat(1, 5), rat(1, 5)), // null, dropped
            ],
        )
        .unwrap();
        assert_eq!(
            s.components(),
            &[(rat(1, 10), rat(2, 5)), (rat(1, 2), rat(3, 5))]
        );
        assert_eq!(s.measure(), rat(2, 5));

        assert!(matches!(
            IntervalSet::new(unit_host(), vec![(rat(1, 2), rat(3, 2))]),
            Err(Error::ComponentOutsideHost { .. })
        ));
        assert!(matches!(
            IntervalSet::new(unit_host(), vec![(rat(1, 2), rat(1, 4))]),
            Err(Error::InvalidComponent { .. })
        ));
        assert!(matches!(
            IntervalSet::new(unit_host(), vec![(rat_int(0), rat_int(1))]),
            Err(Error::SetFillsHost)
        ));
    }

    #[test]
    fn worked_cover_example() {
        // eta_1 = min(0.1·0.2/0.9, 0.15) = 1/45, eta_2 = min(0.1·0.1/0.9, 0.15) = 1/90
        let set = two_component_set();
        let result = cover(&set, &rat(1, 10)).unwrap();
        assert_eq!(result.intervals.len(), 2);
        assert_eq!(*result.intervals[0].hi(), rat(3, 10) + rat(1, 45));
        assert_eq!(*result.intervals[1].hi(), rat(7, 10) + rat(1, 90));
        let check = verify_cover(&set, &result);
        assert!(check.pass, "defects: {:?}", check.defects);
    }

    #[test]
    fn single_component_cover() {
        let set =
            IntervalSet::new(unit_host(), vec![(rat(2, 5), rat(3, 5))]).unwrap();
        for eps in [rat(1, 2), rat(1, 10), rat(1, 100)] {
            let result = cover(&set, &eps).unwrap();
            assert_eq!(result.intervals.len(), 1);
            assert!(verify_cover(&set, &result).pass);
        }
    }

    #[test]
    fn component_touching_right_end_extends_left() {
        let set = IntervalSet::new(
            unit_host(),
            vec![(rat(1, 10), rat(2, 10)), (rat(8, 10), rat_int(1))],
        )
        .unwrap();
        let result = cover(&set, &rat(1, 10)).unwrap();
        assert!(*result.intervals[1].lo() < rat(8, 10));
        assert_eq!(*result.intervals[1].hi(), rat_int(1));
        assert!(verify_cover(&set, &result).pass);
    }

    #[test]
    fn empty_set_covers_trivially() {
        let set = IntervalSet::new(unit_host(), vec![]).unwrap();
        let result = cover(&set, &rat(1, 2)).unwrap();
        assert!(result.intervals.is_empty());
        assert!(verify_cover(&set, &result).pass);
    }

    #[test]
    fn rejects_degenerate_epsilon() {
        let set = two_component_set();
        for eps in [rat_int(0), rat_int(1), rat(3, 2), rat(-1, 2)] {
            assert!(matches!(
                cover(&set, &eps),
                Err(Error::DegenerateEpsilon { .. })
            ));
        }
    }

    #[test]
    fn verify_rejects_perturbed_covers() {
        let set = two_component_set();
        let eps = rat(1, 10);
        let good = cover(&set, &eps).unwrap();

        // over-extend the first interval: density drops below 1 − ε
        let mut too_long = good.clone();
        too_long.intervals[0] =
            Interval::new(rat(1, 10), rat(3, 10) + rat(1, 4)).unwrap();
        let check = verify_cover(&set, &too_long);
        assert!(!check.pass);
        assert!(check
            .defects
            .contains(&CoverDefect::DensityTooLow { interval: 0 }));

        // shrink inside the component: density 1, not strictly partial
        let mut saturated = good.clone();
        saturated.intervals[0] = Interval::new(rat(1, 10), rat(2, 10)).unwrap();
        let check = verify_cover(&set, &saturated);
        assert!(!check.pass);
        assert!(check
            .defects
            .contains(&CoverDefect::NotStrictlyPartial { interval: 0 }));

        // overlapping interiors
        let mut overlapping = good.clone();
        overlapping.intervals[1] = Interval::new(rat(2, 10), rat(8, 10)).unwrap();
        let check = verify_cover(&set, &overlapping);
        assert!(!check.pass);
        assert!(matches!(
            check.defects[0],
            CoverDefect::OverlappingInteriors(..)
        ));

        // drop an interval: the second component is uncovered
        let partial = CoverResult {
            intervals: vec![good.intervals[0].clone()],
            epsilon: eps.clone(),
        };
        let check = verify_cover(&set, &partial);
        assert!(!check.pass);
        assert!(check
            .defects
            .contains(&CoverDefect::Uncovered { component: 1 }));
    }

    #[test]
    fn smaller_epsilon_never_enlarges_eta() {
        let set = two_component_set();
        let wide = cover(&set, &rat(1, 2)).unwrap();
        let narrow = cover(&set, &rat(1, 100)).unwrap();
        for (w, n) in wide.intervals.iter().zip(narrow.intervals.iter()) {
            assert!(n.length() <= w.length());
        }
    }
}
