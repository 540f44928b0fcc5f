//! Compliance toolkit for converter-interfaced grid devices.
//!
//! Decides, from a device's small-signal D-Q frequency response, whether it
//! satisfies decentralized passivity-based stability criteria, and verifies
//! the network-side conditions (load-flow Jacobian passivation) those
//! criteria depend on.
//!
//! The numeric core is generic over the scalar type (`f32`/`f64` through
//! `num-traits`); the pipeline, file formats and CLI operate on the `f64`
//! aliases exported below.

pub mod error;
pub mod scalar;

pub mod linalg;
pub mod mat2;

pub mod grid;
pub mod ss;

pub mod devices;
pub mod transforms;

pub mod passivity;
pub mod vecfit;

pub mod io;
pub mod jacobian;
pub mod pipeline;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use grid::{FreqGrid, Spacing};
pub use mat2::{Mat2, RMat2};
pub use ss::{FreqResponse, ModelKind, Spectrum, StateSpace};
pub use transforms::OperatingPoint;

/// f64 instantiations used by the pipeline, I/O and CLI layers.
pub type Grid64 = FreqGrid<f64>;
pub type Mat2c64 = Mat2<f64>;
pub type RMat264 = RMat2<f64>;
pub type Model64 = StateSpace<f64>;
pub type Response64 = FreqResponse<f64>;
pub type Spectrum64 = Spectrum<f64>;
pub type Op64 = OperatingPoint<f64>;
