//! Reference spatial and temporal information metrics.
//!
//! SI is the population standard deviation of the Sobel gradient
//! magnitude over the interior of a luma plane (the one-sample border
//! has no full 3x3 neighborhood and is excluded). TI is the population
//! standard deviation of the signed sample difference against the
//! previous frame, over the full plane. Both are luma-only; the
//! sequence-level values are the maxima over all frames.

use alloc::vec::Vec;

use crate::frame::{FrameBuffer, Plane};
use crate::math;

/// Errors from SI/TI computation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SitiError {
    /// The plane has no interior: both dimensions must be at least 3.
    #[error("plane {width}x{height} too small for a 3x3 gradient")]
    PlaneTooSmall {
        /// Luma width.
        width: usize,
        /// Luma height.
        height: usize,
    },
    /// Consecutive frames changed dimensions.
    #[error("frame geometry changed from {prev_width}x{prev_height} to {width}x{height}")]
    GeometryMismatch {
        /// Previous luma width.
        prev_width: usize,
        /// Previous luma height.
        prev_height: usize,
        /// Current luma width.
        width: usize,
        /// Current luma height.
        height: usize,
    },
    /// No frames were pushed before asking for a summary.
    #[error("cannot summarize an empty stream")]
    EmptyStream,
}

/// SI and TI of one frame. TI is absent for the first frame, which has
/// no predecessor to difference against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SitiRecord {
    /// Picture order count.
    pub poc: u64,
    /// Spatial information.
    pub si: f64,
    /// Temporal information; `None` at picture order count 0.
    pub ti: Option<f64>,
}

/// Sequence-level SI/TI: the maxima over all frames.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SitiSummary {
    /// Largest per-frame SI.
    pub si: f64,
    /// Largest per-frame TI; 0 for a single-frame stream, which has no
    /// frame differences at all.
    pub ti: f64,
}

/// Sobel gradient magnitudes over the plane interior, in raster order;
/// the result holds `(width - 2) * (height - 2)` values.
pub fn sobel_magnitudes(plane: &Plane) -> Result<Vec<f64>, SitiError> {
    let (width, height) = (plane.width(), plane.height());
    if width < 3 || height < 3 {
        return Err(SitiError::PlaneTooSmall { width, height });
    }
    let mut magnitudes = Vec::with_capacity((width - 2) * (height - 2));
    for y in 1..height - 1 {
        let above = plane.row(y - 1);
        let here = plane.row(y);
        let below = plane.row(y + 1);
        for x in 1..width - 1 {
            let (l, r) = (x - 1, x + 1);
            let gx = i32::from(above[r]) - i32::from(above[l])
                + 2 * (i32::from(here[r]) - i32::from(here[l]))
                + i32::from(below[r]) - i32::from(below[l]);
            let gy = i32::from(below[l]) - i32::from(above[l])
                + 2 * (i32::from(below[x]) - i32::from(above[x]))
                + i32::from(below[r]) - i32::from(above[r]);
            let energy = i64::from(gx) * i64::from(gx) + i64::from(gy) * i64::from(gy);
            magnitudes.push(math::sqrt(energy as f64));
        }
    }
    Ok(magnitudes)
}

fn population_std(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    for &v in values {
        sum += v;
    }
    let mean = sum / values.len() as f64;
    let mut var = 0.0;
    for &v in values {
        let d = v - mean;
        var += d * d;
    }
    math::sqrt(var / values.len() as f64)
}

/// Spatial information of one plane: the population standard deviation
/// of its interior Sobel magnitudes.
pub fn si_frame(plane: &Plane) -> Result<f64, SitiError> {
    Ok(population_std(&sobel_magnitudes(plane)?))
}

/// Temporal information between two planes of identical geometry: the
/// population standard deviation of the signed per-sample difference.
pub fn ti_frame(current: &Plane, previous: &Plane) -> Result<f64, SitiError> {
    if current.width() != previous.width() || current.height() != previous.height() {
        return Err(SitiError::GeometryMismatch {
            prev_width: previous.width(),
            prev_height: previous.height(),
            width: current.width(),
            height: current.height(),
        });
    }
    let count = (current.width() * current.height()) as f64;
    let mut sum = 0.0;
    for (c, p) in current.samples().iter().zip(previous.samples()) {
        sum += f64::from(i32::from(*c) - i32::from(*p));
    }
    let mean = sum / count;
    let mut var = 0.0;
    for (c, p) in current.samples().iter().zip(previous.samples()) {
        let d = f64::from(i32::from(*c) - i32::from(*p)) - mean;
        var += d * d;
    }
    Ok(math::sqrt(var / count))
}

/// Streaming SI/TI over a sequence of frames in picture order.
#[derive(Debug, Default)]
pub struct SitiTracker {
    previous_luma: Option<Plane>,
    max_si: f64,
    max_ti: Option<f64>,
    frames: u64,
}

impl SitiTracker {
    /// A tracker that has seen no frames.
    pub fn new() -> Self {
        SitiTracker::default()
    }

    /// Frames pushed so far.
    pub fn frames(&self) -> u64 {
        self.frames
    }

    /// Computes the record for the next frame in picture order.
    pub fn push(&mut self, frame: &FrameBuffer) -> Result<SitiRecord, SitiError> {
        let si = si_frame(&frame.y)?;
        let ti = match &self.previous_luma {
            Some(prev) => Some(ti_frame(&frame.y, prev)?),
            None => None,
        };
        self.previous_luma = Some(frame.y.clone());
        self.frames += 1;
        self.max_si = self.max_si.max(si);
        if let Some(t) = ti {
            self.max_ti = Some(self.max_ti.unwrap_or(0.0).max(t));
        }
        Ok(SitiRecord {
            poc: frame.poc,
            si,
            ti,
        })
    }

    /// The sequence maxima over everything pushed so far.
    pub fn summary(&self) -> Result<SitiSummary, SitiError> {
        if self.frames == 0 {
            return Err(SitiError::EmptyStream);
        }
        Ok(SitiSummary {
            si: self.max_si,
            ti: self.max_ti.unwrap_or(0.0),
        })
    }
}

/// SI/TI records and summary for a whole in-memory sequence.
pub fn sequence_siti(
    frames: impl IntoIterator<Item = FrameBuffer>,
) -> Result<(Vec<SitiRecord>, SitiSummary), SitiError> {
    let mut tracker = SitiTracker::new();
    let mut records = Vec::new();
    for frame in frames {
        records.push(tracker.push(&frame)?);
    }
    let summary = tracker.summary()?;
    Ok((records, summary))
}
