//! Analyzer configuration and its resolution against a concrete stream
//! and host.
//!
//! Users express wishes ([`AnalyzerConfig`]): automatic or fixed block
//! size, thread count, and kernel. Resolution pins every choice against
//! the stream geometry and host capabilities, producing a
//! [`ResolvedConfig`] that the analysis code consumes without further
//! decisions.

use crate::frame::VideoStreamInfo;
use crate::transform::{select_kernel, HostCaps, Kernel, KernelPath, TransformError};

/// Most threads a run will ever use, whatever the host reports.
pub const MAX_THREADS: usize = 64;

/// Block sizes a user may fix explicitly (automatic selection never
/// picks 4; it only appears as a subsampled chroma or low-pass size).
pub const SELECTABLE_BLOCK_SIZES: [usize; 3] = [8, 16, 32];

/// Which analyses to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AnalysisMode {
    /// DCT-energy features only.
    #[default]
    Features,
    /// SI/TI only.
    Siti,
    /// Both analyses in one pass.
    Both,
}

/// Block size request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BlockSizeChoice {
    /// Pick from the luma resolution.
    #[default]
    Auto,
    /// Use this size; must be 8, 16, or 32.
    Fixed(usize),
}

/// Worker thread request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ThreadChoice {
    /// Use the host's available parallelism, capped at [`MAX_THREADS`].
    #[default]
    Auto,
    /// Use exactly this many threads; must be 1..=[`MAX_THREADS`].
    Fixed(usize),
}

/// What a caller asks for before anything is known about the stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AnalyzerConfig {
    /// Block size request.
    pub block_size: BlockSizeChoice,
    /// Thread count request.
    pub threads: ThreadChoice,
    /// Compute kernel request.
    pub kernel: KernelPath,
    /// Halve blocks before transforming.
    pub low_pass: bool,
    /// Analyze chroma planes too. On by default; when off, chroma
    /// features are reported as 0.
    pub chroma: bool,
    /// Which analyses to run.
    pub mode: AnalysisMode,
}

impl AnalyzerConfig {
    /// Everything automatic: features with chroma, full resolution.
    pub fn new() -> Self {
        AnalyzerConfig {
            chroma: true,
            ..AnalyzerConfig::default()
        }
    }
}

/// A configuration with every choice pinned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResolvedConfig {
    /// Luma block edge length: 8, 16, or 32.
    pub block_size: usize,
    /// Worker threads the pipeline will spawn.
    pub threads: usize,
    /// Compute kernel the transform will run.
    pub kernel: Kernel,
    /// Halve blocks before transforming.
    pub low_pass: bool,
    /// Analyze chroma planes.
    pub chroma: bool,
    /// Which analyses to run.
    pub mode: AnalysisMode,
}

/// Errors from configuration resolution.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    /// Fixed block size outside 8/16/32.
    #[error("block size {0} not selectable, expected 8, 16, or 32")]
    InvalidBlockSize(usize),
    /// Fixed thread count outside 1..=64.
    #[error("thread count {0} out of range 1..={MAX_THREADS}")]
    InvalidThreadCount(usize),
    /// The luma plane cannot hold even one block of the resolved size.
    #[error("{width}x{height} luma too small for one {block_size}x{block_size} block")]
    FrameTooSmall {
        /// Luma width.
        width: u32,
        /// Luma height.
        height: u32,
        /// Resolved block size.
        block_size: usize,
    },
    /// Kernel selection failed.
    #[error(transparent)]
    Kernel(#[from] TransformError),
}

/// Block size picked from the luma height when the user does not fix
/// one: 32 from 2160 lines up, 16 from 1080, 8 below.
pub fn auto_block_size(luma_height: u32) -> usize {
    if luma_height >= 2160 {
        32
    } else if luma_height >= 1080 {
        16
    } else {
        8
    }
}

/// Pins every automatic choice against the stream and host.
///
/// `available_threads` is the host's usable parallelism as seen by the
/// caller; std callers pass `std::thread::available_parallelism()`.
pub fn resolve(
    config: &AnalyzerConfig,
    info: &VideoStreamInfo,
    caps: HostCaps,
    available_threads: usize,
) -> Result<ResolvedConfig, ConfigError> {
    let block_size = match config.block_size {
        BlockSizeChoice::Auto => auto_block_size(info.height),
        BlockSizeChoice::Fixed(size) => {
            if !SELECTABLE_BLOCK_SIZES.contains(&size) {
                return Err(ConfigError::InvalidBlockSize(size));
            }
            size
        }
    };
    if (info.width as usize) < block_size || (info.height as usize) < block_size {
        return Err(ConfigError::FrameTooSmall {
            width: info.width,
            height: info.height,
            block_size,
        });
    }
    let threads = match config.threads {
        ThreadChoice::Auto => available_threads.clamp(1, MAX_THREADS),
        ThreadChoice::Fixed(n) => {
            if n == 0 || n > MAX_THREADS {
                return Err(ConfigError::InvalidThreadCount(n));
            }
            n
        }
    };
    let kernel = select_kernel(config.kernel, caps)?;
    Ok(ResolvedConfig {
        block_size,
        threads,
        kernel,
        low_pass: config.low_pass,
        chroma: config.chroma,
        mode: config.mode,
    })
}
