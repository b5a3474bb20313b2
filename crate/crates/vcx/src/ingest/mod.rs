//! Frame sources: Y4M streams, headerless raw YUV files, and in-memory
//! sequences.
//!
//! Every source hands out frames in picture order with contiguous
//! counts starting at 0, converts samples to the `u16` convention of
//! [`vcx_core::frame`], and never reads past the payload of the frame
//! it was asked for.

use std::collections::VecDeque;
use std::io::Read;
use std::path::PathBuf;

use vcx_core::frame::{ChromaFormat, FrameBuffer, Plane, StreamInfoError, VideoStreamInfo};

mod raw;
mod y4m;

pub use raw::{open_raw_yuv, RawYuvReader};
pub use y4m::{parse_y4m_header, Y4mReader};

/// Errors from opening and reading video streams.
#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    /// The stream does not start with the Y4M magic string.
    #[error("not a Y4M stream (bad magic)")]
    MalformedMagic,
    /// The Y4M header line is present but unparsable.
    #[error("malformed Y4M header: {0}")]
    MalformedHeader(String),
    /// A chroma layout this toolkit does not analyze.
    #[error("unsupported chroma tag {0:?}")]
    UnsupportedChroma(String),
    /// A sample depth other than 8 or 10 bits.
    #[error("unsupported bit depth in tag {0:?}, expected 8- or 10-bit")]
    UnsupportedBitDepth(String),
    /// Interlaced material; only progressive scan is analyzable.
    #[error("interlaced content (I{0}) is not supported")]
    UnsupportedInterlace(char),
    /// The FRAME marker line before this frame is corrupt.
    #[error("malformed frame marker before frame {poc}")]
    MalformedFrameMarker {
        /// Picture order count the marker would have introduced.
        poc: u64,
    },
    /// The stream ended in the middle of a frame payload.
    #[error("stream ended inside frame {poc}")]
    TruncatedFrame {
        /// Picture order count of the incomplete frame.
        poc: u64,
    },
    /// The declared geometry is internally inconsistent.
    #[error("invalid stream description: {0}")]
    Stream(#[from] StreamInfoError),
    /// The input path does not exist.
    #[error("file not found: {0}")]
    FileNotFound(PathBuf),
    /// Any other I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A sequential, single-consumer source of decoded frames.
pub trait FrameSource {
    /// Stream geometry, fixed for the whole stream.
    fn info(&self) -> &VideoStreamInfo;

    /// The next frame in picture order, or `None` at end of stream.
    fn next_frame(&mut self) -> Result<Option<FrameBuffer>, IngestError>;
}

/// Splits one frame's worth of payload bytes into planes, widening or
/// clamping samples as the bit depth demands. Returns true when any
/// 10-bit sample exceeded its legal range and was clamped.
fn frame_from_payload(info: &VideoStreamInfo, poc: u64, payload: &[u8]) -> (FrameBuffer, bool) {
    debug_assert_eq!(payload.len(), info.frame_size_bytes());
    let (cw, ch) = info.chroma_dims();
    let (w, h) = (info.width as usize, info.height as usize);
    let (cw, ch) = (cw as usize, ch as usize);
    let mut clamped = false;
    let mut offset = 0usize;
    let mut take_plane = |width: usize, height: usize| -> Plane {
        let count = width * height;
        let samples: Vec<u16> = if info.bit_depth > 8 {
            let max = info.max_sample();
            let bytes = &payload[offset..offset + 2 * count];
            offset += 2 * count;
            bytes
                .chunks_exact(2)
                .map(|pair| {
                    let v = u16::from_le_bytes([pair[0], pair[1]]);
                    if v > max {
                        clamped = true;
                        max
                    } else {
                        v
                    }
                })
                .collect()
        } else {
            let bytes = &payload[offset..offset + count];
            offset += count;
            bytes.iter().map(|&b| u16::from(b)).collect()
        };
        Plane::from_samples(width, height, samples)
    };
    let y = take_plane(w, h);
    let u = take_plane(cw, ch);
    let v = take_plane(cw, ch);
    (FrameBuffer::new(poc, y, u, v), clamped)
}

/// Reads exactly one frame payload. `Ok(None)` means the stream ended
/// cleanly at a frame boundary (no bytes read); a partial payload is a
/// [`IngestError::TruncatedFrame`].
fn read_payload_exact(
    reader: &mut impl Read,
    buf: &mut [u8],
    poc: u64,
) -> Result<Option<()>, IngestError> {
    let mut filled = 0usize;
    while filled < buf.len() {
        match reader.read(&mut buf[filled..]) {
            Ok(0) => {
                return if filled == 0 {
                    Ok(None)
                } else {
                    Err(IngestError::TruncatedFrame { poc })
                };
            }
            Ok(n) => filled += n,
            Err(e) if e.kind() == std::io::ErrorKind::Interrupted => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Some(()))
}

/// An in-memory frame sequence behind the [`FrameSource`] interface,
/// for analyzing generated content and for tests.
#[derive(Debug)]
pub struct BufferSource {
    info: VideoStreamInfo,
    frames: VecDeque<FrameBuffer>,
    next_poc: u64,
}

impl BufferSource {
    /// Wraps frames for sequential delivery. Picture order counts are
    /// renumbered from 0 in the order given.
    pub fn new(info: VideoStreamInfo, frames: impl IntoIterator<Item = FrameBuffer>) -> Self {
        BufferSource {
            info,
            frames: frames.into_iter().collect(),
            next_poc: 0,
        }
    }
}

impl FrameSource for BufferSource {
    fn info(&self) -> &VideoStreamInfo {
        &self.info
    }

    fn next_frame(&mut self) -> Result<Option<FrameBuffer>, IngestError> {
        Ok(self.frames.pop_front().map(|mut frame| {
            frame.poc = self.next_poc;
            self.next_poc += 1;
            frame
        }))
    }
}

/// Maps a Y4M chroma tag to layout and bit depth.
///
/// The three 4:2:0 siting variants (`C420jpeg`, `C420mpeg2`,
/// `C420paldv`) all map to plain 4:2:0: chroma sample positioning does
/// not move any energy between blocks of a plane. Tags that parse as a
/// known layout at an unsupported depth are reported as a depth
/// problem; anything else is an unsupported layout.
fn parse_chroma_tag(tag: &str) -> Result<(ChromaFormat, u8), IngestError> {
    match tag {
        "C420" | "C420jpeg" | "C420mpeg2" | "C420paldv" => Ok((ChromaFormat::C420, 8)),
        "C422" => Ok((ChromaFormat::C422, 8)),
        "C444" => Ok((ChromaFormat::C444, 8)),
        "C420p10" => Ok((ChromaFormat::C420, 10)),
        "C422p10" => Ok((ChromaFormat::C422, 10)),
        "C444p10" => Ok((ChromaFormat::C444, 10)),
        _ => {
            let known_layout_other_depth = ["C420p", "C422p", "C444p"]
                .iter()
                .any(|prefix| {
                    tag.strip_prefix(prefix)
                        .is_some_and(|depth| !depth.is_empty() && depth.bytes().all(|b| b.is_ascii_digit()))
                });
            if known_layout_other_depth {
                Err(IngestError::UnsupportedBitDepth(tag.to_string()))
            } else {
                Err(IngestError::UnsupportedChroma(tag.to_string()))
            }
        }
    }
}
