//! Blockwise DCT-energy features.
//!
//! A frame is partitioned per plane into square blocks (edges replicated
//! at the right and bottom borders). Each block is transformed and
//! reduced to two numbers: a texture value, the weighted sum of absolute
//! AC coefficients, and a luminescence value, the square root of the DC
//! coefficient. Frame-level features average those over all blocks of a
//! plane, and the temporal feature `h` sums absolute differences of
//! per-block texture between consecutive frames.
//!
//! In low-pass mode blocks are halved by 2x2 averaging before the
//! transform; normalization then uses the effective (halved) block size
//! so full and low-pass energies share a scale.
//!
//! Per-block values are always written into raster-order vectors and all
//! reductions walk those vectors front to back, so results do not depend
//! on how callers schedule the per-row work.

use alloc::vec;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use crate::config::ResolvedConfig;
use crate::frame::{FrameBuffer, Plane};
use crate::math;
use crate::transform::{self, CoefficientBlock, Kernel, BLOCK_SIZES, MAX_BLOCK_SIZE};

const MAX_BLOCK_AREA: usize = MAX_BLOCK_SIZE * MAX_BLOCK_SIZE;

/// Errors from feature extraction and aggregation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FeatureError {
    /// Block edge length outside the supported set.
    #[error("unsupported block size {0}")]
    UnsupportedBlockSize(usize),
    /// A per-block vector does not match the expected block count,
    /// e.g. because frame geometry changed between frames.
    #[error("per-block vector holds {actual} values, expected {expected}")]
    LengthMismatch {
        /// Block count implied by the grid.
        expected: usize,
        /// Length of the vector that was passed.
        actual: usize,
    },
}

/// The seven per-frame features, in picture order.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FrameFeatures {
    /// Picture order count.
    pub poc: u64,
    /// Luma texture energy per sample.
    pub e_y: f64,
    /// Gradient of luma texture against the previous frame; 0 for the
    /// first frame.
    pub h: f64,
    /// Mean luma luminescence.
    pub l_y: f64,
    /// First chroma plane texture energy; 0 when chroma is disabled.
    pub e_u: f64,
    /// Mean first-chroma luminescence; 0 when chroma is disabled.
    pub l_u: f64,
    /// Second chroma plane texture energy; 0 when chroma is disabled.
    pub e_v: f64,
    /// Mean second-chroma luminescence; 0 when chroma is disabled.
    pub l_v: f64,
}

/// Block partition of a plane. Partial blocks at the right and bottom
/// borders are padded by edge replication when extracted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockGrid {
    plane_width: usize,
    plane_height: usize,
    block_size: usize,
    cols: usize,
    rows: usize,
}

impl BlockGrid {
    /// Grid over a `plane_width` x `plane_height` plane; the plane must
    /// be nonempty and the block size one of the supported edge lengths.
    pub fn new(
        plane_width: usize,
        plane_height: usize,
        block_size: usize,
    ) -> Result<Self, FeatureError> {
        if !BLOCK_SIZES.contains(&block_size) {
            return Err(FeatureError::UnsupportedBlockSize(block_size));
        }
        assert!(
            plane_width > 0 && plane_height > 0,
            "grid over an empty plane"
        );
        Ok(BlockGrid {
            plane_width,
            plane_height,
            block_size,
            cols: plane_width.div_ceil(block_size),
            rows: plane_height.div_ceil(block_size),
        })
    }

    /// Block edge length.
    pub fn block_size(&self) -> usize {
        self.block_size
    }

    /// Blocks per row.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Block rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Total block count.
    pub fn block_count(&self) -> usize {
        self.cols * self.rows
    }

    /// Copies block (`bx`, `by`) into `out[..block_size^2]`, replicating
    /// the last sample of a row or column where the block overhangs the
    /// plane.
    pub fn extract_block(&self, plane: &Plane, bx: usize, by: usize, out: &mut [u16]) {
        debug_assert_eq!(plane.width(), self.plane_width);
        debug_assert_eq!(plane.height(), self.plane_height);
        debug_assert!(bx < self.cols && by < self.rows);
        let w = self.block_size;
        let x0 = bx * w;
        let y0 = by * w;
        let copy_w = w.min(self.plane_width - x0);
        for sy in 0..w {
            let src_y = (y0 + sy).min(self.plane_height - 1);
            let row = plane.row(src_y);
            let dst = &mut out[sy * w..][..w];
            dst[..copy_w].copy_from_slice(&row[x0..x0 + copy_w]);
            let edge = row[x0 + copy_w - 1];
            for d in &mut dst[copy_w..] {
                *d = edge;
            }
        }
    }
}

/// Raster-order per-block texture and luminescence values of one frame,
/// kept around to form the next frame's gradient.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BlockValues {
    /// Luma texture per block.
    pub y_texture: Vec<f64>,
    /// Luma luminescence per block.
    pub y_luminescence: Vec<f64>,
    /// First chroma texture per block; empty when chroma is disabled.
    pub u_texture: Vec<f64>,
    /// First chroma luminescence per block.
    pub u_luminescence: Vec<f64>,
    /// Second chroma texture per block.
    pub v_texture: Vec<f64>,
    /// Second chroma luminescence per block.
    pub v_luminescence: Vec<f64>,
}

struct WeightTables {
    by_size: [Vec<f64>; 4],
}

static WEIGHTS: OnceBox<WeightTables> = OnceBox::new();

fn build_weights(size: usize) -> Vec<f64> {
    let area = (size * size) as f64;
    let mut table = vec![0.0; size * size];
    for i in 0..size {
        for j in 0..size {
            let ratio = (i * j) as f64 / area;
            let exponent = (ratio * ratio - 1.0).abs();
            table[i * size + j] = math::exp(exponent);
        }
    }
    // The DC coefficient never counts toward texture.
    table[0] = 0.0;
    table
}

fn weight_table(size: usize) -> &'static [f64] {
    let tables = WEIGHTS.get_or_init(|| {
        alloc::boxed::Box::new(WeightTables {
            by_size: [
                build_weights(4),
                build_weights(8),
                build_weights(16),
                build_weights(32),
            ],
        })
    });
    match size {
        4 => &tables.by_size[0],
        8 => &tables.by_size[1],
        16 => &tables.by_size[2],
        32 => &tables.by_size[3],
        _ => unreachable!("callers validate the block size"),
    }
}

fn texture_of(coeffs: &[f64], weights: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (&c, &w) in coeffs.iter().zip(weights) {
        acc += w * c.abs();
    }
    acc
}

/// Texture value of one transformed block: the sum of absolute AC
/// coefficients, each weighted by its frequency position.
pub fn block_texture(coeffs: &CoefficientBlock) -> f64 {
    texture_of(coeffs.coeffs(), weight_table(coeffs.size()))
}

/// Luminescence value of one transformed block: the square root of the
/// DC coefficient, which is never negative for integer samples.
pub fn block_luminescence(coeffs: &CoefficientBlock) -> f64 {
    math::sqrt(coeffs.coeff(0, 0))
}

/// Per-sample texture energy of a frame: the block texture sum divided
/// by `block_count * block_size^2`. `block_size` is the effective
/// (post-downsampling) edge length.
pub fn frame_energy(
    textures: &[f64],
    block_size: usize,
    block_count: usize,
) -> Result<f64, FeatureError> {
    if textures.len() != block_count {
        return Err(FeatureError::LengthMismatch {
            expected: block_count,
            actual: textures.len(),
        });
    }
    let mut sum = 0.0;
    for &t in textures {
        sum += t;
    }
    Ok(sum / (block_count * block_size * block_size) as f64)
}

/// Per-sample texture gradient between two frames: the sum of absolute
/// per-block texture differences, normalized like [`frame_energy`].
pub fn frame_gradient(
    current: &[f64],
    previous: &[f64],
    block_size: usize,
) -> Result<f64, FeatureError> {
    if current.len() != previous.len() {
        return Err(FeatureError::LengthMismatch {
            expected: current.len(),
            actual: previous.len(),
        });
    }
    let mut sum = 0.0;
    for (&c, &p) in current.iter().zip(previous) {
        sum += (c - p).abs();
    }
    Ok(sum / (current.len() * block_size * block_size) as f64)
}

/// Block edge length used for a chroma plane when the luma plane uses
/// `luma_block` and the chroma plane is `subsample` times narrower:
/// scaled down with the plane, but never below 4.
pub fn chroma_block_size(luma_block: usize, subsample: usize) -> usize {
    (luma_block / subsample).max(4)
}

fn effective_size(block_size: usize, low_pass: bool) -> usize {
    if low_pass && block_size >= 8 {
        block_size / 2
    } else {
        // A 4x4 block cannot be halved again; it is transformed at full
        // resolution even in low-pass mode.
        block_size
    }
}

/// Computes texture and luminescence for every block of one block row,
/// writing them into `textures[..cols]` and `luminescences[..cols]`.
/// Returns the number of transforms executed.
///
/// This is the unit of work a parallel caller distributes; where the
/// values land depends only on the grid, so any schedule produces the
/// same vectors.
pub fn analyze_plane_row(
    plane: &Plane,
    grid: &BlockGrid,
    kernel: Kernel,
    low_pass: bool,
    block_row: usize,
    textures: &mut [f64],
    luminescences: &mut [f64],
) -> u64 {
    assert_eq!(textures.len(), grid.cols());
    assert_eq!(luminescences.len(), grid.cols());
    let size = grid.block_size();
    let eff = effective_size(size, low_pass);
    let weights = weight_table(eff);

    let mut pixels = [0u16; MAX_BLOCK_AREA];
    let mut reduced = [0u16; MAX_BLOCK_AREA / 4];
    let mut coeffs = [0.0; MAX_BLOCK_AREA];
    for bx in 0..grid.cols() {
        grid.extract_block(plane, bx, block_row, &mut pixels);
        let samples: &[u16] = if eff < size {
            transform::downsample2x_into(&pixels[..size * size], size, &mut reduced);
            &reduced[..eff * eff]
        } else {
            &pixels[..size * size]
        };
        transform::dct_into(samples, eff, kernel, &mut coeffs);
        textures[bx] = texture_of(&coeffs[..eff * eff], weights);
        luminescences[bx] = math::sqrt(coeffs[0]);
    }
    grid.cols() as u64
}

fn analyze_plane(
    plane: &Plane,
    block_size: usize,
    kernel: Kernel,
    low_pass: bool,
) -> Result<(Vec<f64>, Vec<f64>), FeatureError> {
    let grid = BlockGrid::new(plane.width(), plane.height(), block_size)?;
    let mut textures = vec![0.0; grid.block_count()];
    let mut luminescences = vec![0.0; grid.block_count()];
    for row in 0..grid.rows() {
        let span = row * grid.cols()..(row + 1) * grid.cols();
        analyze_plane_row(
            plane,
            &grid,
            kernel,
            low_pass,
            row,
            &mut textures[span.clone()],
            &mut luminescences[span],
        );
    }
    Ok((textures, luminescences))
}

fn mean(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    for &v in values {
        sum += v;
    }
    sum / values.len() as f64
}

/// Chroma block size a frame's planes imply: the ratio of luma to
/// chroma width, fed through [`chroma_block_size`].
pub fn frame_chroma_subsample(frame: &FrameBuffer) -> usize {
    (frame.y.width() / frame.u.width().max(1)).max(1)
}

/// Reduces the per-block vectors of one frame to its seven features.
///
/// Shared by the sequential path here and any parallel caller that
/// fills the vectors row by row: one reduction, walking raster order,
/// so schedules cannot change the result. `previous` carries the prior
/// frame in picture order; without it the gradient `h` is 0.
pub fn assemble_features(
    poc: u64,
    values: &BlockValues,
    previous: Option<&BlockValues>,
    config: &ResolvedConfig,
    chroma_subsample: usize,
) -> Result<FrameFeatures, FeatureError> {
    let luma_eff = effective_size(config.block_size, config.low_pass);
    let mut features = FrameFeatures {
        poc,
        e_y: frame_energy(&values.y_texture, luma_eff, values.y_texture.len())?,
        l_y: mean(&values.y_luminescence),
        ..FrameFeatures::default()
    };
    if let Some(prev) = previous {
        features.h = frame_gradient(&values.y_texture, &prev.y_texture, luma_eff)?;
    }
    if config.chroma && !values.u_texture.is_empty() {
        let chroma_block = chroma_block_size(config.block_size, chroma_subsample);
        let chroma_eff = effective_size(chroma_block, config.low_pass);
        features.e_u = frame_energy(&values.u_texture, chroma_eff, values.u_texture.len())?;
        features.l_u = mean(&values.u_luminescence);
        features.e_v = frame_energy(&values.v_texture, chroma_eff, values.v_texture.len())?;
        features.l_v = mean(&values.v_luminescence);
    }
    Ok(features)
}

/// Analyzes one frame sequentially and aggregates its features.
///
/// `previous` carries the block values of the preceding frame in picture
/// order; without it (first frame) the gradient `h` is 0. The returned
/// [`BlockValues`] feed the next call. Chroma planes are skipped
/// entirely when the configuration disables them, leaving their features
/// at 0.
pub fn analyze_frame(
    frame: &FrameBuffer,
    previous: Option<&BlockValues>,
    config: &ResolvedConfig,
) -> Result<(FrameFeatures, BlockValues), FeatureError> {
    let (y_texture, y_luminescence) = analyze_plane(
        &frame.y,
        config.block_size,
        config.kernel,
        config.low_pass,
    )?;
    let mut values = BlockValues {
        y_texture,
        y_luminescence,
        ..BlockValues::default()
    };

    let subsample = frame_chroma_subsample(frame);
    if config.chroma {
        let chroma_block = chroma_block_size(config.block_size, subsample);
        let (u_texture, u_luminescence) =
            analyze_plane(&frame.u, chroma_block, config.kernel, config.low_pass)?;
        let (v_texture, v_luminescence) =
            analyze_plane(&frame.v, chroma_block, config.kernel, config.low_pass)?;
        values.u_texture = u_texture;
        values.u_luminescence = u_luminescence;
        values.v_texture = v_texture;
        values.v_luminescence = v_luminescence;
    }

    let features = assemble_features(frame.poc, &values, previous, config, subsample)?;
    Ok((features, values))
}
