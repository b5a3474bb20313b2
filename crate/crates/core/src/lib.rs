//! Core analysis kernels for the `vcx` video complexity toolkit.
//!
//! Everything in this crate is pure computation over in-memory frames:
//! the blockwise DCT-II transform and its texture-energy features, the
//! Sobel-based SI/TI reference metrics, and the small statistics used to
//! compare analysis runs. Frame ingest, threading, and serialization live
//! in the companion `vcx` crate.
//!
//! The crate is `no_std`-compatible (it needs `alloc`); the default `std`
//! feature only switches float math from `libm` to the intrinsics and
//! enables `std::error::Error` conveniences in dependents.
//!
//! Determinism is a design contract, not an accident: every aggregation
//! walks blocks in raster order, block values are written into
//! raster-order vectors regardless of how callers parallelize, and the
//! vectorized DCT kernel accumulates each output coefficient in the same
//! order as the scalar kernel. Equal inputs produce bit-equal outputs.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;

mod math;

pub mod config;
pub mod features;
pub mod frame;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod siti;
pub mod stats;
pub mod transform;

pub use config::{AnalysisMode, AnalyzerConfig, BlockSizeChoice, ResolvedConfig, ThreadChoice};
pub use frame::{ChromaFormat, FrameBuffer, FrameRate, Plane, VideoStreamInfo};
pub use transform::{HostCaps, Kernel, KernelPath};
