//! Video complexity analyzer: stream ingest, the threaded analysis
//! pipeline, and CSV report serialization around the kernels in
//! [`vcx_core`].
//!
//! The `vcx` binary is a thin shell over this library; everything it
//! does is reachable through [`ingest`] (open a Y4M or raw YUV stream),
//! [`pipeline::analyze_stream`] (run the configured analyses), and
//! [`csv`] (serialize the reports).

pub mod csv;
pub mod ingest;
pub mod pipeline;

pub use ingest::{open_raw_yuv, BufferSource, FrameSource, IngestError, RawYuvReader, Y4mReader};
pub use pipeline::{analyze_stream, AnalysisReport, PipelineError};

pub use vcx_core as core;
