//! Verification harness for the exact A₁-weight toolkit: seeded generators,
//! batch campaigns with reproducible per-trial seeds, and CSV/JSON report
//! emission.  The `a1kit` binary is a thin command-line layer over this
//! library.

pub mod campaign;
pub mod error;
pub mod gen;
pub mod report;

pub use campaign::{run_campaign, Campaign, CampaignConfig, CampaignReport, TrialRecord};
pub use error::HarnessError;
pub use gen::{
    derive_seed, gen_interval_set, gen_weight, random_subinterval, GeneratorKind, GeneratorSpec,
};
pub use report::{emit, render_campaign, ReportFormat};
