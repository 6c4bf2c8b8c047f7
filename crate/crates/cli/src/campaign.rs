//! Verification campaigns: seeded batches of checks with per-trial records.
//!
//! A campaign never aborts on a failing trial — the counterexample (with its
//! reproducing seed) goes into the report and the run continues.  Trials are
//! independent by construction (each derives its own seed), so the parallel
//! and sequential paths produce identical reports.

use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use a1kit_core::sharp::RATIO_TOL;
use a1kit_core::{
    a1_constant, check_rearranged_bound, check_reverse_holder, convex_dominates, cover,
    critical_exponent, default_candidates, extremal_weight, majorizes, moment_ratio,
    power_moment, rat, sharp_constant, to_f64, verify_cover, CoverResult, Interval, Moment,
};

use crate::error::{HarnessError, Result};
use crate::gen::{derive_seed, gen_interval_set, gen_weight, GeneratorKind, GeneratorSpec};

/// The verification campaigns the harness can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Campaign {
    /// Rearrangement never enlarges the A₁ constant (exact).
    Thm1,
    /// The sharp reverse power-mean inequality on subintervals (float, 1e-9).
    Thm2,
    /// Extremal weights attain the sharp constant; cross-identities.
    Sharpness,
    /// Prefix-majorization agrees with hinge domination (exact).
    Majorization,
    /// Cover construction round-trips and perturbed covers are rejected.
    Cover,
    /// Logarithmic blow-up of the truncated moment at the critical exponent.
    Divergence,
}

impl Campaign {
    pub fn token(&self) -> &'static str {
        match self {
            Campaign::Thm1 => "thm1",
            Campaign::Thm2 => "thm2",
            Campaign::Sharpness => "sharpness",
            Campaign::Majorization => "majorization",
            Campaign::Cover => "cover",
            Campaign::Divergence => "divergence",
        }
    }

    pub const ALL: [Campaign; 6] = [
        Campaign::Thm1,
        Campaign::Thm2,
        Campaign::Sharpness,
        Campaign::Majorization,
        Campaign::Cover,
        Campaign::Divergence,
    ];
}

impl FromStr for Campaign {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        Campaign::ALL
            .into_iter()
            .find(|c| c.token() == s)
            .ok_or_else(|| HarnessError::UnknownCampaign(s.to_string()))
    }
}

/// Knobs shared by the campaigns; unused fields are ignored per campaign.
#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub trials: usize,
    pub seed: u64,
    /// Upper bound on generated piece counts.
    pub max_pieces: usize,
    pub kind: GeneratorKind,
    pub tau: f64,
    /// thm2: exponent as a fraction of the critical exponent; 0 means p = 1.
    pub p_frac: f64,
    /// thm2: number of random candidate intervals per trial.
    pub random_intervals: usize,
    /// sharpness: the (c, fraction-of-critical) grid.
    pub c_grid: Vec<f64>,
    pub p_fracs: Vec<f64>,
    /// divergence: base constant and the number of decades to sweep.
    pub c: f64,
    pub eps_decades: u32,
    pub parallel: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            trials: 1000,
            seed: 0xA1C0_FFEE,
            max_pieces: 12,
            kind: GeneratorKind::Uniform,
            tau: 2.0,
            p_frac: 0.5,
            random_intervals: 10_000,
            c_grid: vec![1.1, 1.5, 2.0, 4.0],
            p_fracs: vec![0.0, 0.5, 0.99],
            c: 2.0,
            eps_decades: 12,
            parallel: true,
        }
    }
}

/// One row of a campaign report.  `margin` is the slack against the bound
/// (nonnegative exactly when the trial passes); `c`/`p` are filled when the
/// campaign has them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub seed: u64,
    pub c: Option<f64>,
    pub p: Option<f64>,
    pub metric: f64,
    pub bound: f64,
    pub margin: f64,
    pub pass: bool,
}

/// Aggregate outcome of a campaign.
#[derive(Debug, Clone, Serialize)]
pub struct CampaignReport {
    pub campaign: String,
    pub trials: usize,
    pub passes: usize,
    pub failures: Vec<TrialRecord>,
    pub worst_margin: Option<f64>,
    pub wall_time_secs: f64,
    pub records: Vec<TrialRecord>,
}

impl CampaignReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs a campaign to completion and aggregates the records.
pub fn run_campaign(campaign: Campaign, config: &CampaignConfig) -> Result<CampaignReport> {
    let started = Instant::now();
    let trials = planned_trials(campaign, config)?;
    let run_one = |index: usize| -> TrialRecord {
        let seed = derive_seed(config.seed, index as u64);
        run_trial(campaign, config, index as u64, seed)
    };
    let records: Vec<TrialRecord> = if config.parallel {
        (0..trials).into_par_iter().map(run_one).collect()
    } else {
        (0..trials).map(run_one).collect()
    };

    let passes = records.iter().filter(|r| r.pass).count();
    let failures: Vec<TrialRecord> = records.iter().filter(|r| !r.pass).cloned().collect();
    let worst_margin = records
        .iter()
        .map(|r| r.margin)
        .min_by(|a, b| a.total_cmp(b));
    Ok(CampaignReport {
        campaign: campaign.token().to_string(),
        trials,
        passes,
        failures,
        worst_margin,
        wall_time_secs: started.elapsed().as_secs_f64(),
        records,
    })
}

fn planned_trials(campaign: Campaign, config: &CampaignConfig) -> Result<usize> {
    match campaign {
        Campaign::Thm2 => {
            // 0.995 leaves the exponent clear of the pole guard for any
            // weight the generators can produce
            if !(0.0..=0.995).contains(&config.p_frac) {
                return Err(HarnessError::InvalidConfig(format!(
                    "p-frac must lie in [0, 0.995], got {}",
                    config.p_frac
                )));
            }
            Ok(config.trials)
        }
        Campaign::Sharpness => {
            if config.c_grid.iter().any(|c| *c <= 1.0) {
                return Err(HarnessError::InvalidConfig(
                    "sharpness grid requires c > 1".into(),
                ));
            }
            // one gap trial and one identity trial per grid point
            Ok(2 * config.c_grid.len() * config.p_fracs.len())
        }
        Campaign::Divergence => {
            if config.c <= 1.0 || !config.c.is_finite() {
                return Err(HarnessError::InvalidConfig(
                    "divergence sweep requires c > 1".into(),
                ));
            }
            if config.eps_decades == 0 {
                return Err(HarnessError::InvalidConfig(
                    "divergence sweep needs at least one decade".into(),
                ));
            }
            // one trial per decade plus the least-squares slope trial
            Ok(config.eps_decades as usize + 1)
        }
        _ => Ok(config.trials),
    }
}

fn run_trial(campaign: Campaign, config: &CampaignConfig, trial: u64, seed: u64) -> TrialRecord {
    match campaign {
        Campaign::Thm1 => thm1_trial(config, trial, seed),
        Campaign::Thm2 => thm2_trial(config, trial, seed),
        Campaign::Sharpness => sharpness_trial(config, trial, seed),
        Campaign::Majorization => majorization_trial(config, trial, seed),
        Campaign::Cover => cover_trial(config, trial, seed),
        Campaign::Divergence => divergence_trial(config, trial, seed),
    }
}

fn spec_for(config: &CampaignConfig, seed: u64, max_pieces: usize) -> GeneratorSpec {
    let mut spec = GeneratorSpec::new(config.kind, 1 + (seed % max_pieces as u64) as usize, seed);
    spec.tau = config.tau;
    spec
}

fn thm1_trial(config: &CampaignConfig, trial: u64, seed: u64) -> TrialRecord {
    let w = gen_weight(&spec_for(config, seed, config.max_pieces))
        .expect("campaign spec is validated");
    let report = check_rearranged_bound(&w);
    let bound = to_f64(&report.original_constant);
    let metric = to_f64(
        &report
            .rearranged_constant
            .clone()
            .max(report.anchored_constant.clone()),
    );
    TrialRecord {
        trial,
        seed,
        c: Some(bound),
        p: None,
        metric,
        bound,
        margin: bound - metric,
        pass: report.pass,
    }
}

/// Exponent choice for thm2: `max(1, frac · p_crit)`.  An exactly constant
/// weight has no critical exponent; any exponent works there and 64 keeps
/// the run representative.
fn pick_exponent(p_crit: f64, frac: f64) -> f64 {
    if !p_crit.is_finite() {
        return if frac > 0.0 { 64.0 } else { 1.0 };
    }
    (frac * p_crit).max(1.0)
}

fn thm2_trial(config: &CampaignConfig, trial: u64, seed: u64) -> TrialRecord {
    let w = gen_weight(&spec_for(config, seed, config.max_pieces))
        .expect("campaign spec is validated");
    let c = to_f64(&a1_constant(&w).constant).max(1.0);
    let p_crit = critical_exponent(c).expect("c >= 1 by construction");
    let p = pick_exponent(p_crit, config.p_frac);
    let candidates = default_candidates(&w, config.random_intervals, derive_seed(seed, 1));
    let report =
        check_reverse_holder(&w, p, &candidates).expect("p is inside the admissible range");
    let bound = 1.0 + RATIO_TOL;
    TrialRecord {
        trial,
        seed,
        c: Some(c),
        p: Some(p),
        metric: report.worst_ratio,
        bound,
        margin: bound - report.worst_ratio,
        pass: report.pass,
    }
}

fn sharpness_trial(config: &CampaignConfig, trial: u64, seed: u64) -> TrialRecord {
    let points = config.p_fracs.len();
    let grid_index = (trial as usize) / 2;
    let is_identity = trial % 2 == 1;
    let c = config.c_grid[grid_index / points];
    let frac = config.p_fracs[grid_index % points];
    let p_crit = critical_exponent(c).expect("grid is validated");
    // fraction 0 encodes p = 1; admissible exponents start at 1 either way
    let p = if frac == 0.0 {
        1.0
    } else {
        (frac * p_crit).max(1.0)
    };

    let (metric, bound) = if is_identity {
        // B(c, p) · moment_ratio(p, c) = 1 for p > 1; trivially B = 1 at p = 1
        let b = sharp_constant(c, p).expect("p below critical");
        let deviation = if p == 1.0 {
            (b - 1.0).abs()
        } else {
            (b * moment_ratio(p, c).expect("c inside [1, p/(p-1)]") - 1.0).abs()
        };
        (deviation, 1e-12)
    } else {
        let gap = sharpness_gap(c, p);
        (gap, 1e-10)
    };
    TrialRecord {
        trial,
        seed,
        c: Some(c),
        p: Some(p),
        metric,
        bound,
        margin: bound - metric,
        pass: metric <= bound,
    }
}

/// Relative sharpness gap: |moment − constant| / constant.
fn sharpness_gap(c: f64, p: f64) -> f64 {
    let gap = a1kit_core::sharpness_gap(c, p).expect("grid point is admissible");
    gap / sharp_constant(c, p).expect("grid point is admissible")
}

fn majorization_trial(config: &CampaignConfig, trial: u64, seed: u64) -> TrialRecord {
    let max_pieces = config.max_pieces.min(8);
    let w1 = gen_weight(&spec_for(config, derive_seed(seed, 1), max_pieces))
        .expect("campaign spec is validated");
    let w2 = gen_weight(&spec_for(config, derive_seed(seed, 2), max_pieces))
        .expect("campaign spec is validated");
    let prefix_order = majorizes(&w1, &w2).expect("same unit domain");
    let hinge_order = convex_dominates(&w1, &w2).expect("same unit domain");
    let agree = prefix_order == hinge_order;
    TrialRecord {
        trial,
        seed,
        c: None,
        p: None,
        metric: if agree { 1.0 } else { 0.0 },
        bound: 1.0,
        margin: if agree { 0.0 } else { -1.0 },
        pass: agree,
    }
}

fn cover_trial(_config: &CampaignConfig, trial: u64, seed: u64) -> TrialRecord {
    let set = gen_interval_set(seed, 10);
    let eps = match trial % 3 {
        0 => rat(1, 2),
        1 => rat(1, 10),
        _ => rat(1, 100),
    };
    let result = cover(&set, &eps).expect("generated sets admit covers");
    let good = verify_cover(&set, &result).pass;

    // perturbations that must be rejected
    let rejected = {
        let doubled = CoverResult {
            intervals: result
                .intervals
                .iter()
                .enumerate()
                .map(|(k, iv)| {
                    if k == 0 {
                        // double the first interval's length: density falls
                        // below 1 − ε for every ε in the menu
                        Interval::new(iv.lo().clone(), iv.hi() + iv.length())
                            .expect("still a valid interval")
                    } else {
                        iv.clone()
                    }
                })
                .collect(),
            epsilon: result.epsilon.clone(),
        };
        let uncovered = CoverResult {
            intervals: Vec::new(),
            epsilon: result.epsilon.clone(),
        };
        !verify_cover(&set, &doubled).pass && !verify_cover(&set, &uncovered).pass
    };

    let pass = good && rejected;
    TrialRecord {
        trial,
        seed,
        c: None,
        p: None,
        metric: if pass { 1.0 } else { 0.0 },
        bound: 1.0,
        margin: if pass { 0.0 } else { -1.0 },
        pass,
    }
}

fn divergence_trial(config: &CampaignConfig, trial: u64, seed: u64) -> TrialRecord {
    let c = config.c;
    let p_crit = critical_exponent(c).expect("config is validated");
    let g = extremal_weight(1.0, c).expect("c > 1");
    let per_decade = (1.0 / c).powf(p_crit) * std::f64::consts::LN_10;
    let decades = config.eps_decades;

    let moment_at = |k: u32| -> f64 {
        let eps = 10f64.powi(-(k as i32));
        match power_moment(&g, p_crit, eps).expect("eps in (0,1)") {
            Moment::Finite(m) => m,
            Moment::Divergent => f64::INFINITY,
        }
    };

    if trial < decades as u64 {
        let k = trial as u32 + 1;
        let metric = (moment_at(k) - per_decade * k as f64).abs();
        let bound = 1e-8;
        TrialRecord {
            trial,
            seed,
            c: Some(c),
            p: Some(p_crit),
            metric,
            bound,
            margin: bound - metric,
            pass: metric <= bound,
        }
    } else {
        // final trial: least-squares slope across the sweep
        let points: Vec<(f64, f64)> = (1..=decades)
            .map(|k| (k as f64, moment_at(k)))
            .collect();
        let n = points.len() as f64;
        let mean_x = points.iter().map(|(x, _)| x).sum::<f64>() / n;
        let mean_y = points.iter().map(|(_, y)| y).sum::<f64>() / n;
        let slope = points
            .iter()
            .map(|(x, y)| (x - mean_x) * (y - mean_y))
            .sum::<f64>()
            / points.iter().map(|(x, _)| (x - mean_x).powi(2)).sum::<f64>();
        let metric = (slope - per_decade).abs();
        let bound = 1e-6;
        TrialRecord {
            trial,
            seed,
            c: Some(c),
            p: Some(p_crit),
            metric,
            bound,
            margin: bound - metric,
            pass: metric <= bound,
        }
    }
}
