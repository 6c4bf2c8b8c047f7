//! Power weights `(f/τ)·t^(−1+1/τ)` on `(0, 1]`.
//!
//! This family saturates the anchored averaging condition with constant τ:
//! the running average up to `t` equals `τ` times the value at `t`, for every
//! `t`.  Real exponents force binary64 here; the closed-form antiderivative
//! `f·t^(1/τ)` keeps everything well away from quadrature trouble at the
//! origin.  Exact rational work happens after [`discretize_power`] bridges a
//! power weight into a [`StepWeight`].

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{from_f64_exact, to_f64, Rational};
use crate::weight::StepWeight;

/// The weight `g(t) = (mass/tau) · t^(−1+1/tau)` on `(0, 1]`, with
/// `∫_0^1 g = mass`.  `tau = 1` degenerates to the constant weight `mass`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerWeight {
    mass: f64,
    tau: f64,
}

impl PowerWeight {
    pub fn new(mass: f64, tau: f64) -> Result<Self> {
        if !mass.is_finite() || mass <= 0.0 {
            return Err(Error::InvalidMass { mass });
        }
        if !tau.is_finite() || tau < 1.0 {
            return Err(Error::InvalidTau { tau });
        }
        Ok(Self { mass, tau })
    }

    /// Total integral over `(0, 1]`.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Pointwise value at `t ∈ (0, 1]`.
    pub fn eval(&self, t: f64) -> f64 {
        (self.mass / self.tau) * t.powf(-1.0 + 1.0 / self.tau)
    }

    /// Closed-form prefix integral `∫_0^t g = mass · t^(1/tau)`.
    pub fn prefix_integral(&self, t: f64) -> f64 {
        self.mass * t.powf(1.0 / self.tau)
    }

    /// The running average `(1/t)·∫_0^t g`; equals `tau · eval(t)` everywhere.
    pub fn anchored_average(&self, t: f64) -> f64 {
        self.prefix_integral(t) / t
    }
}

/// Cell layout for [`discretize_power`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscretizeScheme {
    /// `n` cells of equal width.
    Uniform,
    /// Dyadic cells `(2^(k-1)/2^(n-1), 2^k/2^(n-1)]` refining toward 0,
    /// where the weight varies fastest.
    Geometric,
}

fn pow2(k: usize) -> BigInt {
    BigInt::one() << k
}

/// Replaces a power weight by the step weight taking each cell's exact
/// average (from the closed-form antiderivative) on that cell.  Prefix
/// integrals at cell boundaries then telescope to `mass · t^(1/tau)` up to
/// float rounding in the averages themselves.
pub fn discretize_power(
    pw: &PowerWeight,
    cells: usize,
    scheme: DiscretizeScheme,
) -> Result<StepWeight> {
    if cells == 0 {
        return Err(Error::ZeroCells);
    }
    let mass = from_f64_exact(pw.mass())?;
    if pw.tau() == 1.0 {
        // Constant weight: one canonical piece regardless of cell count.
        return StepWeight::new(vec![Rational::zero(), Rational::one()], vec![mass]);
    }

    let mut breakpoints = Vec::with_capacity(cells + 1);
    breakpoints.push(Rational::zero());
    match scheme {
        DiscretizeScheme::Uniform => {
            for k in 1..=cells {
                breakpoints.push(Rational::new(BigInt::from(k), BigInt::from(cells)));
            }
        }
        DiscretizeScheme::Geometric => {
            for k in 1..=cells {
                breakpoints.push(Rational::new(BigInt::one(), pow2(cells - k)));
            }
        }
    }

    let mut values = Vec::with_capacity(cells);
    for k in 0..cells {
        let lo = to_f64(&breakpoints[k]);
        let hi = to_f64(&breakpoints[k + 1]);
        let avg = (pw.prefix_integral(hi) - pw.prefix_integral(lo)) / (hi - lo);
        values.push(from_f64_exact(avg)?);
    }
    StepWeight::new(breakpoints, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn validates_parameters() {
        assert!(PowerWeight::new(0.0, 2.0).is_err());
        assert!(PowerWeight::new(-1.0, 2.0).is_err());
        assert!(PowerWeight::new(1.0, 0.5).is_err());
        assert!(PowerWeight::new(f64::NAN, 2.0).is_err());
        assert!(PowerWeight::new(1.0, 1.0).is_ok());
    }

    #[test]
    fn eval_closed_form() {
        // tau = 2: g(t) = (1/2) t^(-1/2); g(1/4) = 1.
        let g = PowerWeight::new(1.0, 2.0).unwrap();
        assert!((g.eval(0.25) - 1.0).abs() < 1e-15);
        // tau = 1: constant mass.
        let c = PowerWeight::new(3.5, 1.0).unwrap();
        assert_eq!(c.eval(0.9), 3.5);
    }

    #[test]
    fn anchored_average_identity() {
        let g = PowerWeight::new(1.0, 2.0).unwrap();
        let t = 0.09;
        let lhs = g.anchored_average(t);
        assert!((lhs - 2.0 * g.eval(t)).abs() < 1e-12 * lhs.abs());
        assert!((lhs - 10.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn discretize_tau_one_is_constant() {
        let c = PowerWeight::new(1.0, 1.0).unwrap();
        let w = discretize_power(&c, 4, DiscretizeScheme::Uniform).unwrap();
        assert_eq!(w.piece_count(), 1);
        assert_eq!(w.values()[0], rat(1, 1));
    }

    #[test]
    fn discretize_single_cell_preserves_mass() {
        let g = PowerWeight::new(1.0, 2.0).unwrap();
        let w = discretize_power(&g, 1, DiscretizeScheme::Uniform).unwrap();
        assert_eq!(w.piece_count(), 1);
        assert_eq!(w.total_integral(), rat(1, 1));
    }

    #[test]
    fn discretize_two_uniform_cells() {
        let g = PowerWeight::new(1.0, 2.0).unwrap();
        let w = discretize_power(&g, 2, DiscretizeScheme::Uniform).unwrap();
        let v: Vec<f64> = w.values().iter().map(to_f64).collect();
        // cell averages 2·sqrt(1/2) and 2·(1 − sqrt(1/2))
        assert!((v[0] - 2.0 * 0.5f64.sqrt()).abs() < 1e-15);
        assert!((v[1] - (2.0 - 2.0 * 0.5f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn discretize_rejects_zero_cells() {
        let g = PowerWeight::new(1.0, 2.0).unwrap();
        assert!(matches!(
            discretize_power(&g, 0, DiscretizeScheme::Uniform),
            Err(Error::ZeroCells)
        ));
    }

    #[test]
    fn prefix_mass_agreement_both_schemes() {
        for scheme in [DiscretizeScheme::Uniform, DiscretizeScheme::Geometric] {
            let g = PowerWeight::new(2.5, 3.0).unwrap();
            let w = discretize_power(&g, 64, scheme).unwrap();
            for (k, t) in w.breakpoints().iter().enumerate() {
                let got = to_f64(&w.prefix_sums()[k]);
                let want = g.prefix_integral(to_f64(t));
                assert!(
                    (got - want).abs() <= 1e-12 * want.abs().max(1.0),
                    "scheme {scheme:?}, boundary {k}: {got} vs {want}"
                );
            }
            assert!(w.is_nonincreasing());
        }
    }
}
