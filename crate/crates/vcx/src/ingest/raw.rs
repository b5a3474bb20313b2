//! Headerless planar YUV input.
//!
//! Raw files carry no geometry, so the caller supplies it. When the
//! input is a seekable file the frame count is fixed up front from the
//! file size; a trailing partial frame is then discarded rather than
//! reported as an error, since raw captures are routinely cut mid
//! frame. The plain stream form has no size to consult and treats a
//! partial final payload as truncation.

use std::fs::File;
use std::io::{BufReader, Read};
use std::path::Path;

use vcx_core::frame::{ChromaFormat, FrameBuffer, FrameRate, VideoStreamInfo};

use super::{frame_from_payload, read_payload_exact, FrameSource, IngestError};

/// A raw YUV stream with caller-supplied geometry.
#[derive(Debug)]
pub struct RawYuvReader<R> {
    reader: R,
    info: VideoStreamInfo,
    next_poc: u64,
    payload: Vec<u8>,
    clamp_warned: bool,
    trailing_bytes: u64,
}

impl<R: Read> RawYuvReader<R> {
    /// Wraps a byte stream. Frames are delivered until EOF, and a
    /// payload cut short mid-frame is an error; use [`open_raw_yuv`]
    /// for files, where the size settles the frame count instead.
    pub fn new(
        reader: R,
        width: u32,
        height: u32,
        bit_depth: u8,
        chroma: ChromaFormat,
    ) -> Result<Self, IngestError> {
        let info = VideoStreamInfo {
            width,
            height,
            bit_depth,
            chroma,
            // Raw files carry no timing; a nominal rate keeps the
            // stream description complete. Nothing computed downstream
            // depends on it.
            frame_rate: FrameRate { num: 25, den: 1 },
            frame_count: None,
        };
        info.validate()?;
        Ok(RawYuvReader {
            reader,
            payload: vec![0u8; info.frame_size_bytes()],
            info,
            next_poc: 0,
            clamp_warned: false,
            trailing_bytes: 0,
        })
    }

    /// Bytes beyond the last whole frame, known only for sized inputs.
    pub fn trailing_bytes(&self) -> u64 {
        self.trailing_bytes
    }
}

impl<R: Read> FrameSource for RawYuvReader<R> {
    fn info(&self) -> &VideoStreamInfo {
        &self.info
    }

    fn next_frame(&mut self) -> Result<Option<FrameBuffer>, IngestError> {
        if let Some(total) = self.info.frame_count {
            if self.next_poc >= total {
                return Ok(None);
            }
        }
        let poc = self.next_poc;
        if read_payload_exact(&mut self.reader, &mut self.payload, poc)?.is_none() {
            return Ok(None);
        }
        let (frame, clamped) = frame_from_payload(&self.info, poc, &self.payload);
        if clamped && !self.clamp_warned {
            self.clamp_warned = true;
            log::warn!(
                "frame {poc}: samples above the {}-bit range were clamped",
                self.info.bit_depth
            );
        }
        self.next_poc += 1;
        Ok(Some(frame))
    }
}

/// Opens a raw YUV file, deriving the frame count from its size.
///
/// Trailing bytes that do not fill a whole frame are ignored with a
/// warning; [`RawYuvReader::trailing_bytes`] reports how many there
/// were.
pub fn open_raw_yuv(
    path: &Path,
    width: u32,
    height: u32,
    bit_depth: u8,
    chroma: ChromaFormat,
) -> Result<RawYuvReader<BufReader<File>>, IngestError> {
    let file = File::open(path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            IngestError::FileNotFound(path.to_path_buf())
        } else {
            IngestError::Io(e)
        }
    })?;
    let size = file.metadata()?.len();
    let mut reader = RawYuvReader::new(BufReader::new(file), width, height, bit_depth, chroma)?;
    let frame_size = reader.info.frame_size_bytes() as u64;
    reader.info.frame_count = Some(size / frame_size);
    reader.trailing_bytes = size % frame_size;
    if reader.trailing_bytes != 0 {
        log::warn!(
            "{}: {} trailing bytes do not fill a frame and are ignored",
            path.display(),
            reader.trailing_bytes
        );
    }
    Ok(reader)
}
