//! Numerical comparison of frequency response sweeps for winding fault
//! diagnosis.
//!
//! The crate provides:
//!
//! * nine single-curve statistics ([`one_array`]) and fourteen reference vs.
//!   test curve indices including AADRR ([`two_array`]);
//! * severity profiling, trend and proportionality checks, sensitivity
//!   averages and ranking ([`assessment`]);
//! * a lumped RLC ladder that synthesizes sound and inter-turn faulted
//!   input-impedance sweeps ([`synth`]);
//! * CSV/JSON ingestion and CSV/SVG reports ([`io`], [`report`]).

pub mod assessment;
pub mod catalog;
pub mod curve;
pub mod error;
pub mod io;
mod numeric;
pub mod one_array;
pub mod report;
pub mod synth;
pub mod two_array;

pub use assessment::{
    assess_family, AssessOptions, Assessment, AssessmentProfile, Normalization, SensitivityEntry,
};
pub use catalog::{catalog, IndexCatalogEntry, IndexKind};
pub use curve::{align_family, resample, CurveFamily, FrequencyResponse};
pub use error::{Error, Result};
pub use one_array::OneArrayIndexKind;
pub use synth::{FaultSpec, LadderConfig};
pub use two_array::{Orientation, TwoArrayIndexKind};
