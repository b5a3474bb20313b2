//! Drives a frame source through the analyses.
//!
//! The pipeline owns everything the pure core leaves to its caller:
//! host capability detection, the worker pool, wall-clock timing, and
//! the frame loop. Parallelism splits each plane into block rows;
//! every row writes its slice of the per-frame vectors, and the
//! reduction over those vectors is the same sequential code whatever
//! the thread count, so results never depend on scheduling.

use std::time::Instant;

use rayon::prelude::*;

use vcx_core::config::{resolve, AnalyzerConfig, ConfigError, ResolvedConfig};
use vcx_core::features::{
    analyze_plane_row, assemble_features, chroma_block_size, BlockGrid, BlockValues, FeatureError,
    FrameFeatures,
};
use vcx_core::frame::Plane;
use vcx_core::siti::{SitiError, SitiRecord, SitiSummary, SitiTracker};
use vcx_core::stats::{summarize, StatsError};
use vcx_core::{AnalysisMode, HostCaps, Kernel};

use crate::ingest::{FrameSource, IngestError};

/// Errors from a pipeline run.
#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    /// Reading the stream failed.
    #[error(transparent)]
    Ingest(#[from] IngestError),
    /// The configuration could not be pinned against the stream.
    #[error(transparent)]
    Config(#[from] ConfigError),
    /// Feature computation failed.
    #[error(transparent)]
    Feature(#[from] FeatureError),
    /// SI/TI computation failed.
    #[error(transparent)]
    Siti(#[from] SitiError),
    /// Sequence aggregation failed.
    #[error(transparent)]
    Stats(#[from] StatsError),
    /// The source delivered no frames at all.
    #[error("stream contains no frames")]
    EmptyStream,
    /// A frame's geometry differs from the stream description.
    #[error("frame {poc} does not match the declared stream geometry")]
    GeometryMismatch {
        /// Picture order count of the offending frame.
        poc: u64,
    },
    /// The worker pool could not be built.
    #[error("worker pool: {0}")]
    ThreadPool(String),
}

/// Everything one run produced.
#[derive(Debug, Clone)]
pub struct AnalysisReport {
    /// Per-frame features, in picture order; empty in SI/TI-only mode.
    pub features: Vec<FrameFeatures>,
    /// Sequence aggregation of the features, with SI/TI merged in when
    /// both analyses ran.
    pub feature_summary: Option<vcx_core::stats::SequenceSummary>,
    /// Per-frame SI/TI, in picture order; empty in features-only mode.
    pub siti: Vec<SitiRecord>,
    /// Sequence SI/TI maxima.
    pub siti_summary: Option<SitiSummary>,
    /// The pinned configuration the run used.
    pub config: ResolvedConfig,
    /// Frames analyzed.
    pub frames: u64,
    /// Wall-clock seconds spent in the frame loop, reading included.
    pub wall_seconds: f64,
    /// Frames per wall-clock second.
    pub fps: f64,
    /// Block transforms executed across all planes and frames.
    pub blocks_transformed: u64,
}

/// Vector arithmetic support of the running host.
pub fn detect_host_caps() -> HostCaps {
    #[cfg(target_arch = "x86_64")]
    {
        if std::is_x86_feature_detected!("sse2") {
            return HostCaps::with_simd128();
        }
        HostCaps::none()
    }
    #[cfg(target_arch = "aarch64")]
    {
        if std::arch::is_aarch64_feature_detected!("neon") {
            return HostCaps::with_simd128();
        }
        HostCaps::none()
    }
    #[cfg(not(any(target_arch = "x86_64", target_arch = "aarch64")))]
    {
        HostCaps::none()
    }
}

/// Usable parallelism of the running host; 1 when the host will not
/// say.
pub fn available_threads() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// Pins a configuration against a stream using the running host's
/// capabilities and parallelism.
pub fn resolve_config(
    config: &AnalyzerConfig,
    info: &vcx_core::frame::VideoStreamInfo,
) -> Result<ResolvedConfig, ConfigError> {
    resolve(config, info, detect_host_caps(), available_threads())
}

fn analyze_plane_on(
    pool: &rayon::ThreadPool,
    plane: &Plane,
    grid: &BlockGrid,
    kernel: Kernel,
    low_pass: bool,
    textures: &mut [f64],
    luminescences: &mut [f64],
) -> u64 {
    let cols = grid.cols();
    pool.install(|| {
        textures
            .par_chunks_mut(cols)
            .zip(luminescences.par_chunks_mut(cols))
            .enumerate()
            .map(|(row, (t, l))| analyze_plane_row(plane, grid, kernel, low_pass, row, t, l))
            .sum()
    })
}

/// Runs the configured analyses over every frame of `source`.
///
/// The reported timing covers the frame loop: reading, transforms, and
/// aggregation, but not configuration or any output the caller writes
/// afterwards.
pub fn analyze_stream(
    source: &mut dyn FrameSource,
    config: &AnalyzerConfig,
) -> Result<AnalysisReport, PipelineError> {
    let info = *source.info();
    let resolved = resolve_config(config, &info)?;
    let run_features = resolved.mode != AnalysisMode::Siti;
    let run_siti = resolved.mode != AnalysisMode::Features;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(resolved.threads)
        .build()
        .map_err(|e| PipelineError::ThreadPool(e.to_string()))?;

    let luma_grid = BlockGrid::new(info.width as usize, info.height as usize, resolved.block_size)?;
    let chroma_grids = if run_features && resolved.chroma {
        let (cw, ch) = info.chroma_dims();
        let subsample = (info.width / cw.max(1)).max(1) as usize;
        let block = chroma_block_size(resolved.block_size, subsample);
        Some((BlockGrid::new(cw as usize, ch as usize, block)?, subsample))
    } else {
        None
    };

    let mut features = Vec::new();
    let mut previous: Option<BlockValues> = None;
    let mut siti_tracker = SitiTracker::new();
    let mut siti = Vec::new();
    let mut frames = 0u64;
    let mut blocks_transformed = 0u64;

    let started = Instant::now();
    while let Some(frame) = source.next_frame()? {
        let (cw, ch) = info.chroma_dims();
        if frame.y.width() != info.width as usize
            || frame.y.height() != info.height as usize
            || frame.u.width() != cw as usize
            || frame.u.height() != ch as usize
        {
            return Err(PipelineError::GeometryMismatch { poc: frame.poc });
        }

        if run_features {
            let mut values = BlockValues {
                y_texture: vec![0.0; luma_grid.block_count()],
                y_luminescence: vec![0.0; luma_grid.block_count()],
                ..BlockValues::default()
            };
            blocks_transformed += analyze_plane_on(
                &pool,
                &frame.y,
                &luma_grid,
                resolved.kernel,
                resolved.low_pass,
                &mut values.y_texture,
                &mut values.y_luminescence,
            );
            let mut subsample = 1;
            if let Some((grid, sub)) = &chroma_grids {
                subsample = *sub;
                for (plane, texture, luminescence) in [
                    (&frame.u, &mut values.u_texture, &mut values.u_luminescence),
                    (&frame.v, &mut values.v_texture, &mut values.v_luminescence),
                ] {
                    texture.resize(grid.block_count(), 0.0);
                    luminescence.resize(grid.block_count(), 0.0);
                    blocks_transformed += analyze_plane_on(
                        &pool,
                        plane,
                        grid,
                        resolved.kernel,
                        resolved.low_pass,
                        texture,
                        luminescence,
                    );
                }
            }
            features.push(assemble_features(
                frame.poc,
                &values,
                previous.as_ref(),
                &resolved,
                subsample,
            )?);
            previous = Some(values);
        }
        if run_siti {
            siti.push(siti_tracker.push(&frame)?);
        }
        frames += 1;
    }
    let wall_seconds = started.elapsed().as_secs_f64();

    if frames == 0 {
        return Err(PipelineError::EmptyStream);
    }

    let siti_summary = if run_siti {
        Some(siti_tracker.summary()?)
    } else {
        None
    };
    let feature_summary = if run_features {
        let mut summary = summarize(&features)?;
        if let Some(s) = &siti_summary {
            summary.si = Some(s.si);
            summary.ti = Some(s.ti);
        }
        Some(summary)
    } else {
        None
    };

    Ok(AnalysisReport {
        features,
        feature_summary,
        siti,
        siti_summary,
        config: resolved,
        frames,
        wall_seconds,
        fps: frames as f64 / wall_seconds.max(1e-9),
        blocks_transformed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::BufferSource;
    use vcx_core::frame::{ChromaFormat, FrameBuffer, FrameRate, VideoStreamInfo};
    use vcx_core::{BlockSizeChoice, ThreadChoice};

    fn tiny_info(width: u32, height: u32) -> VideoStreamInfo {
        VideoStreamInfo {
            width,
            height,
            bit_depth: 8,
            chroma: ChromaFormat::C420,
            frame_rate: FrameRate { num: 25, den: 1 },
            frame_count: None,
        }
    }

    fn gradient_frame(poc: u64, width: usize, height: usize) -> FrameBuffer {
        let mut y = Vec::with_capacity(width * height);
        for r in 0..height {
            for c in 0..width {
                y.push(((r * 3 + c * 5 + poc as usize * 7) % 200) as u16);
            }
        }
        FrameBuffer::new(
            poc,
            Plane::from_samples(width, height, y),
            Plane::constant(width / 2, height / 2, 100),
            Plane::constant(width / 2, height / 2, 140),
        )
    }

    fn config_with(threads: usize) -> AnalyzerConfig {
        let mut config = AnalyzerConfig::new();
        config.block_size = BlockSizeChoice::Fixed(8);
        config.threads = ThreadChoice::Fixed(threads);
        config.mode = AnalysisMode::Both;
        config
    }

    #[test]
    fn counts_every_block_transform() {
        let info = tiny_info(32, 16);
        let frames: Vec<_> = (0..3).map(|poc| gradient_frame(poc, 32, 16)).collect();
        let mut source = BufferSource::new(info, frames);
        let report = analyze_stream(&mut source, &config_with(1)).unwrap();
        // Per frame: luma 4x2 blocks, each 8x8 chroma plane 4x2 at the
        // 4x4 floor size.
        assert_eq!(report.frames, 3);
        assert_eq!(report.blocks_transformed, 3 * (8 + 8 + 8));
        assert_eq!(report.features.len(), 3);
        assert_eq!(report.siti.len(), 3);
        assert!(report.feature_summary.unwrap().si.is_some());
    }

    #[test]
    fn first_frame_has_no_gradient() {
        let info = tiny_info(32, 16);
        let frames: Vec<_> = (0..2).map(|poc| gradient_frame(poc, 32, 16)).collect();
        let mut source = BufferSource::new(info, frames);
        let report = analyze_stream(&mut source, &config_with(1)).unwrap();
        assert_eq!(report.features[0].h, 0.0);
        assert!(report.features[1].h > 0.0);
    }

    #[test]
    fn empty_source_is_an_error() {
        let mut source = BufferSource::new(tiny_info(32, 16), Vec::new());
        assert!(matches!(
            analyze_stream(&mut source, &config_with(1)),
            Err(PipelineError::EmptyStream)
        ));
    }

    #[test]
    fn geometry_changes_mid_stream_are_refused() {
        let info = tiny_info(32, 16);
        let frames = vec![gradient_frame(0, 32, 16), gradient_frame(1, 16, 16)];
        let mut source = BufferSource::new(info, frames);
        assert!(matches!(
            analyze_stream(&mut source, &config_with(1)),
            Err(PipelineError::GeometryMismatch { poc: 1 })
        ));
    }

    #[test]
    fn siti_only_mode_skips_features() {
        let info = tiny_info(32, 16);
        let frames: Vec<_> = (0..2).map(|poc| gradient_frame(poc, 32, 16)).collect();
        let mut source = BufferSource::new(info, frames);
        let mut config = config_with(1);
        config.mode = AnalysisMode::Siti;
        let report = analyze_stream(&mut source, &config).unwrap();
        assert!(report.features.is_empty());
        assert!(report.feature_summary.is_none());
        assert_eq!(report.blocks_transformed, 0);
        assert_eq!(report.siti.len(), 2);
        assert!(report.siti_summary.is_some());
    }
}
