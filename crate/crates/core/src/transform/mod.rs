//! Blockwise 2D DCT-II, block downsampling, and compute-kernel selection.
//!
//! The transform is the orthonormal DCT-II, computed by row-column
//! decomposition in double precision from cosine tables that are built
//! once per block size and immutable afterwards. Block edge lengths of
//! 4, 8, 16, and 32 are supported.
//!
//! Both compute kernels subtract the block mean before the two passes
//! and write the DC coefficient exactly from the sample sum. The mean of
//! an integer block is exact in double precision (the divisor is a power
//! of two), so a constant block transforms to a lone DC coefficient with
//! every AC term exactly zero, and adding a flat offset to a block leaves
//! its AC coefficients bit-identical. The vectorized kernel accumulates
//! each output coefficient in the same order as the scalar kernel, so the
//! two paths agree far inside the documented 1e-9 tolerance.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use crate::math;

mod scalar;
mod vector;

/// Block edge lengths the transform accepts.
pub const BLOCK_SIZES: [usize; 4] = [4, 8, 16, 32];

/// Largest accepted block edge length.
pub const MAX_BLOCK_SIZE: usize = 32;

pub(crate) const MAX_BLOCK_AREA: usize = MAX_BLOCK_SIZE * MAX_BLOCK_SIZE;

/// Errors from block construction, transformation, and kernel selection.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    /// Block edge length outside the supported set, or too small for the
    /// requested operation.
    #[error("unsupported block size {0}")]
    UnsupportedBlockSize(usize),
    /// Sample buffer does not hold exactly `size * size` values.
    #[error("block of size {size}x{size} needs {expected} samples, got {actual}")]
    LengthMismatch {
        /// Block edge length.
        size: usize,
        /// `size * size`.
        expected: usize,
        /// Length of the buffer that was passed.
        actual: usize,
    },
    /// The vectorized kernel was requested on a host whose capability
    /// description lacks 128-bit SIMD.
    #[error("vectorized kernel requested but the host reports no 128-bit SIMD")]
    VectorPathUnavailable,
}

/// A square block of integer samples, edge length 4, 8, 16, or 32.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    size: usize,
    samples: Vec<u16>,
}

impl Block {
    /// Wraps `size * size` raster-order samples.
    pub fn new(size: usize, samples: Vec<u16>) -> Result<Self, TransformError> {
        if !BLOCK_SIZES.contains(&size) {
            return Err(TransformError::UnsupportedBlockSize(size));
        }
        if samples.len() != size * size {
            return Err(TransformError::LengthMismatch {
                size,
                expected: size * size,
                actual: samples.len(),
            });
        }
        Ok(Block { size, samples })
    }

    /// Edge length in samples.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Samples in raster order.
    pub fn samples(&self) -> &[u16] {
        &self.samples
    }

    /// Sample at column `x`, row `y`.
    pub fn sample(&self, x: usize, y: usize) -> u16 {
        debug_assert!(x < self.size && y < self.size);
        self.samples[y * self.size + x]
    }
}

/// DCT coefficients of one block, raster order with DC at index 0.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientBlock {
    size: usize,
    coeffs: Vec<f64>,
}

impl CoefficientBlock {
    /// Edge length in coefficients.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Coefficients in raster order; vertical frequency selects the row.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient at vertical frequency `i`, horizontal frequency `j`.
    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i < self.size && j < self.size);
        self.coeffs[i * self.size + j]
    }
}

/// Which compute path a caller asks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KernelPath {
    /// Pick the vector path when the host supports it, else scalar.
    #[default]
    Auto,
    /// Plain loops, no SIMD types.
    Scalar,
    /// Four-wide f64 SIMD.
    Vectorized,
}

/// A compute path after selection; what the transform actually runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    /// Plain loops.
    Scalar,
    /// Four-wide f64 SIMD.
    Vectorized,
}

/// What the host can execute; detected by the caller, consumed here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct HostCaps {
    /// True when 128-bit SIMD (SSE2, NEON, or equivalent) is available.
    pub simd128: bool,
}

impl HostCaps {
    /// A host with no usable SIMD.
    pub const fn none() -> Self {
        HostCaps { simd128: false }
    }

    /// A host with 128-bit SIMD.
    pub const fn with_simd128() -> Self {
        HostCaps { simd128: true }
    }
}

/// Resolves a requested path against host capabilities.
///
/// `Auto` silently falls back to scalar on hosts without SIMD; an
/// explicit `Vectorized` request on such a host is refused instead. The
/// vector kernel is written against portable SIMD types and would run
/// anywhere, but executing it without hardware lanes is slower than the
/// scalar path, so the explicit request is treated as a contradiction
/// rather than honored badly.
pub fn select_kernel(requested: KernelPath, caps: HostCaps) -> Result<Kernel, TransformError> {
    match (requested, caps.simd128) {
        (KernelPath::Scalar, _) => Ok(Kernel::Scalar),
        (KernelPath::Vectorized, true) => Ok(Kernel::Vectorized),
        (KernelPath::Vectorized, false) => Err(TransformError::VectorPathUnavailable),
        (KernelPath::Auto, true) => Ok(Kernel::Vectorized),
        (KernelPath::Auto, false) => Ok(Kernel::Scalar),
    }
}

struct Basis {
    size: usize,
    /// `table[i * size + n]` = s(i) cos(pi (2n+1) i / (2 size)).
    table: Vec<f64>,
    /// Transpose of `table`, copied value for value so the two layouts
    /// hold bit-identical entries.
    table_t: Vec<f64>,
}

impl Basis {
    fn build(size: usize) -> Self {
        let mut table = vec![0.0; size * size];
        let w = size as f64;
        for i in 0..size {
            let scale = if i == 0 {
                math::sqrt(1.0 / w)
            } else {
                math::sqrt(2.0 / w)
            };
            for n in 0..size {
                let angle = core::f64::consts::PI * (2 * n + 1) as f64 * i as f64 / (2.0 * w);
                table[i * size + n] = scale * math::cos(angle);
            }
        }
        let mut table_t = vec![0.0; size * size];
        for i in 0..size {
            for n in 0..size {
                table_t[n * size + i] = table[i * size + n];
            }
        }
        Basis {
            size,
            table,
            table_t,
        }
    }
}

struct Tables {
    by_size: [Basis; 4],
}

fn size_index(size: usize) -> usize {
    match size {
        4 => 0,
        8 => 1,
        16 => 2,
        32 => 3,
        _ => unreachable!("callers validate the block size"),
    }
}

static TABLES: OnceBox<Tables> = OnceBox::new();

fn tables() -> &'static Tables {
    TABLES.get_or_init(|| {
        Box::new(Tables {
            by_size: [
                Basis::build(4),
                Basis::build(8),
                Basis::build(16),
                Basis::build(32),
            ],
        })
    })
}

/// Runs the transform into a caller-provided buffer; `out[..size*size]`
/// receives the coefficients. Hot path used by the feature extractor.
pub(crate) fn dct_into(samples: &[u16], size: usize, kernel: Kernel, out: &mut [f64]) {
    debug_assert!(BLOCK_SIZES.contains(&size));
    let area = size * size;
    debug_assert_eq!(samples.len(), area);
    debug_assert!(out.len() >= area);

    let mut sum = 0.0;
    for &s in samples {
        sum += f64::from(s);
    }
    // Integer sum over a power-of-two count: both divisions are exact,
    // and so is every centered sample below.
    let mean = sum / area as f64;
    let dc = sum / size as f64;

    let mut centered = [0.0; MAX_BLOCK_AREA];
    for (c, &s) in centered[..area].iter_mut().zip(samples) {
        *c = f64::from(s) - mean;
    }

    let basis = &tables().by_size[size_index(size)];
    let mut tmp = [0.0; MAX_BLOCK_AREA];
    match kernel {
        Kernel::Scalar => scalar::forward(&centered[..area], size, basis, &mut tmp, out),
        Kernel::Vectorized => vector::forward(&centered[..area], size, basis, &mut tmp, out),
    }
    out[0] = dc;
}

/// Orthonormal 2D DCT-II of a block.
pub fn dct2d(block: &Block, kernel: Kernel) -> CoefficientBlock {
    let area = block.size * block.size;
    let mut coeffs = vec![0.0; area];
    dct_into(&block.samples, block.size, kernel, &mut coeffs);
    CoefficientBlock {
        size: block.size,
        coeffs,
    }
}

/// Halves a block in each dimension by averaging 2x2 quads, rounding to
/// nearest with ties away from zero. The input must be at least 8x8 so
/// the result is still a legal block.
pub fn downsample2x(block: &Block) -> Result<Block, TransformError> {
    if block.size < 8 {
        return Err(TransformError::UnsupportedBlockSize(block.size));
    }
    let half = block.size / 2;
    let mut out = vec![0u16; half * half];
    downsample2x_into(&block.samples, block.size, &mut out);
    Ok(Block {
        size: half,
        samples: out,
    })
}

/// Slice-level form of [`downsample2x`] for the feature extractor.
pub(crate) fn downsample2x_into(samples: &[u16], size: usize, out: &mut [u16]) {
    let half = size / 2;
    debug_assert_eq!(samples.len(), size * size);
    debug_assert!(out.len() >= half * half);
    for oy in 0..half {
        let top = 2 * oy * size;
        let bottom = top + size;
        for ox in 0..half {
            let x = 2 * ox;
            let sum = u32::from(samples[top + x])
                + u32::from(samples[top + x + 1])
                + u32::from(samples[bottom + x])
                + u32::from(samples[bottom + x + 1]);
            out[oy * half + ox] = ((sum + 2) >> 2) as u16;
        }
    }
}
