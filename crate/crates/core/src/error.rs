//! Error type shared by every module of the crate.

/// Everything that can go wrong while constructing or analyzing weights.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("interval requires lo < hi, got ({lo}, {hi})")]
    InvalidInterval { lo: String, hi: String },

    #[error("breakpoints must be strictly increasing (violation at index {index})")]
    BreakpointsNotIncreasing { index: usize },

    #[error("weight values must be positive (violation at index {index})")]
    NonPositiveValue { index: usize },

    #[error("{breakpoints} breakpoints need {expected} values, got {got}")]
    LengthMismatch {
        breakpoints: usize,
        expected: usize,
        got: usize,
    },

    #[error("a step weight needs at least one piece")]
    EmptyWeight,

    #[error("interval {interval} lies outside the weight domain {domain}")]
    OutOfDomain { interval: String, domain: String },

    #[error("operation requires a non-increasing weight")]
    NotNonIncreasing,

    #[error("weights live on domains of different lengths ({left} vs {right})")]
    MismatchedDomains { left: String, right: String },

    #[error("window {window} is not inside the domain {domain}")]
    WindowOutOfBounds { window: String, domain: String },

    #[error("window half-width must be positive, got {delta}")]
    NonPositiveDelta { delta: String },

    #[error("hinge threshold must be nonnegative, got {threshold}")]
    NegativeThreshold { threshold: String },

    #[error("scale factor must be positive, got {factor}")]
    NonPositiveScale { factor: String },

    #[error("c = {c} is invalid: must be {requirement}")]
    InvalidC { c: f64, requirement: &'static str },

    #[error("p = {p} must satisfy 1 <= p < {p_crit} (the critical exponent)")]
    POutOfRange { p: f64, p_crit: f64 },

    #[error("p = {p} is within {guard:e} of the critical exponent {p_crit}, where the bound degenerates")]
    PTooCloseToCritical { p: f64, p_crit: f64, guard: f64 },

    #[error("requires p > 1, got p = {p}")]
    PNotAboveOne { p: f64 },

    #[error("z = {z} outside [{lo}, {hi}]")]
    ZOutOfRange { z: f64, lo: f64, hi: f64 },

    #[error("y = {y} outside [0, 1]")]
    YOutOfRange { y: f64 },

    #[error("power weight mass must be positive and finite, got {mass}")]
    InvalidMass { mass: f64 },

    #[error("power weight parameter must satisfy tau >= 1, got {tau}")]
    InvalidTau { tau: f64 },

    #[error("discretization needs at least one cell")]
    ZeroCells,

    #[error("truncation must satisfy 0 <= eps < 1, got {eps}")]
    EpsOutOfRange { eps: f64 },

    #[error("candidate interval list is empty")]
    EmptyCandidateSet,

    #[error("component [{lo}, {hi}] is not inside the host interval {host}")]
    ComponentOutsideHost {
        lo: String,
        hi: String,
        host: String,
    },

    #[error("component endpoints must satisfy lo <= hi, got [{lo}, {hi}]")]
    InvalidComponent { lo: String, hi: String },

    #[error("the component set fills the host interval; strict partial density is impossible")]
    SetFillsHost,

    #[error("epsilon must lie strictly between 0 and 1, got {eps}")]
    DegenerateEpsilon { eps: String },

    #[error("cannot parse {input:?} as a rational")]
    ParseRational { input: String },

    #[error("value {value} is not a finite float")]
    NonFiniteFloat { value: f64 },

    #[error("malformed JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
