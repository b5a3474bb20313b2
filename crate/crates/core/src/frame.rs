//! Video frame geometry and sample storage.
//!
//! Samples are stored as `u16` regardless of bit depth: 8-bit sources
//! occupy 0..=255 and 10-bit sources 0..=1023. Readers are responsible
//! for range-checking; the analysis kernels only assume non-negative
//! integers that fit a `u16`.

use alloc::vec;
use alloc::vec::Vec;

/// Chroma subsampling layout of a YUV stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChromaFormat {
    /// 4:2:0, chroma halved in both dimensions.
    C420,
    /// 4:2:2, chroma halved horizontally.
    C422,
    /// 4:4:4, chroma at full resolution.
    C444,
}

impl ChromaFormat {
    /// Subsampling divisors as `(horizontal, vertical)`.
    pub fn subsampling(self) -> (u32, u32) {
        match self {
            ChromaFormat::C420 => (2, 2),
            ChromaFormat::C422 => (2, 1),
            ChromaFormat::C444 => (1, 1),
        }
    }

    /// Chroma plane dimensions for a luma plane of `width` x `height`.
    pub fn chroma_dims(self, width: u32, height: u32) -> (u32, u32) {
        let (sx, sy) = self.subsampling();
        (width / sx, height / sy)
    }
}

impl core::fmt::Display for ChromaFormat {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let name = match self {
            ChromaFormat::C420 => "4:2:0",
            ChromaFormat::C422 => "4:2:2",
            ChromaFormat::C444 => "4:4:4",
        };
        f.write_str(name)
    }
}

/// Frame rate as an exact rational, e.g. 30000/1001.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FrameRate {
    /// Frames per `den` seconds.
    pub num: u32,
    /// Time base divisor; never zero in a validated stream.
    pub den: u32,
}

impl FrameRate {
    /// Frame rate in frames per second.
    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl core::fmt::Display for FrameRate {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// A reason a stream description is unusable.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StreamInfoError {
    /// Width or height is zero.
    #[error("frame dimensions {width}x{height} must be nonzero")]
    InvalidDimensions {
        /// Declared luma width.
        width: u32,
        /// Declared luma height.
        height: u32,
    },
    /// A dimension is not divisible by the chroma subsampling factor.
    #[error("dimensions {width}x{height} incompatible with {chroma} subsampling")]
    OddDimensions {
        /// Declared luma width.
        width: u32,
        /// Declared luma height.
        height: u32,
        /// Subsampling that requires the divisibility.
        chroma: ChromaFormat,
    },
    /// Bit depth other than 8 or 10.
    #[error("unsupported bit depth {0}, expected 8 or 10")]
    InvalidBitDepth(u8),
    /// Frame rate with a zero numerator or denominator.
    #[error("invalid frame rate {num}/{den}")]
    InvalidFrameRate {
        /// Declared numerator.
        num: u32,
        /// Declared denominator.
        den: u32,
    },
}

/// Geometry and format of a video stream, fixed for its whole duration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VideoStreamInfo {
    /// Luma width in samples.
    pub width: u32,
    /// Luma height in samples.
    pub height: u32,
    /// Sample bit depth, 8 or 10.
    pub bit_depth: u8,
    /// Chroma subsampling layout.
    pub chroma: ChromaFormat,
    /// Exact frame rate.
    pub frame_rate: FrameRate,
    /// Total frames when the container knows it up front.
    pub frame_count: Option<u64>,
}

impl VideoStreamInfo {
    /// Checks the cross-field constraints; all constructors of readers
    /// call this before handing the description out.
    pub fn validate(&self) -> Result<(), StreamInfoError> {
        if self.width == 0 || self.height == 0 {
            return Err(StreamInfoError::InvalidDimensions {
                width: self.width,
                height: self.height,
            });
        }
        let (sx, sy) = self.chroma.subsampling();
        if self.width % sx != 0 || self.height % sy != 0 {
            return Err(StreamInfoError::OddDimensions {
                width: self.width,
                height: self.height,
                chroma: self.chroma,
            });
        }
        if self.bit_depth != 8 && self.bit_depth != 10 {
            return Err(StreamInfoError::InvalidBitDepth(self.bit_depth));
        }
        if self.frame_rate.num == 0 || self.frame_rate.den == 0 {
            return Err(StreamInfoError::InvalidFrameRate {
                num: self.frame_rate.num,
                den: self.frame_rate.den,
            });
        }
        Ok(())
    }

    /// Chroma plane dimensions implied by the luma dimensions.
    pub fn chroma_dims(&self) -> (u32, u32) {
        self.chroma.chroma_dims(self.width, self.height)
    }

    /// Bytes per stored sample in the containers this toolkit reads.
    pub fn bytes_per_sample(&self) -> usize {
        if self.bit_depth > 8 {
            2
        } else {
            1
        }
    }

    /// Total samples in one frame across all three planes.
    pub fn samples_per_frame(&self) -> usize {
        let luma = self.width as usize * self.height as usize;
        let (cw, ch) = self.chroma_dims();
        luma + 2 * cw as usize * ch as usize
    }

    /// Serialized size of one frame payload in bytes.
    pub fn frame_size_bytes(&self) -> usize {
        self.samples_per_frame() * self.bytes_per_sample()
    }

    /// Largest legal sample value for the bit depth.
    pub fn max_sample(&self) -> u16 {
        (1u16 << self.bit_depth) - 1
    }
}

/// A single plane of samples in raster order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plane {
    width: usize,
    height: usize,
    samples: Vec<u16>,
}

impl Plane {
    /// Wraps a raster-order sample buffer; `samples.len()` must equal
    /// `width * height`.
    pub fn from_samples(width: usize, height: usize, samples: Vec<u16>) -> Self {
        assert_eq!(
            samples.len(),
            width * height,
            "plane buffer length must match {width}x{height}"
        );
        Plane {
            width,
            height,
            samples,
        }
    }

    /// A plane filled with one value.
    pub fn constant(width: usize, height: usize, value: u16) -> Self {
        Plane {
            width,
            height,
            samples: vec![value; width * height],
        }
    }

    /// Width in samples.
    pub fn width(&self) -> usize {
        self.width
    }

    /// Height in samples.
    pub fn height(&self) -> usize {
        self.height
    }

    /// Sample at `(x, y)`; panics outside the plane.
    pub fn sample(&self, x: usize, y: usize) -> u16 {
        debug_assert!(x < self.width && y < self.height);
        self.samples[y * self.width + x]
    }

    /// One raster row.
    pub fn row(&self, y: usize) -> &[u16] {
        &self.samples[y * self.width..(y + 1) * self.width]
    }

    /// All samples in raster order.
    pub fn samples(&self) -> &[u16] {
        &self.samples
    }
}

/// One decoded frame: a picture order count and its three planes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameBuffer {
    /// Picture order count, starting at 0 and contiguous within a stream.
    pub poc: u64,
    /// Luma plane.
    pub y: Plane,
    /// First chroma plane.
    pub u: Plane,
    /// Second chroma plane.
    pub v: Plane,
}

impl FrameBuffer {
    /// Assembles a frame; the two chroma planes must share dimensions.
    pub fn new(poc: u64, y: Plane, u: Plane, v: Plane) -> Self {
        assert_eq!(
            (u.width(), u.height()),
            (v.width(), v.height()),
            "chroma planes must have identical dimensions"
        );
        FrameBuffer { poc, y, u, v }
    }
}
