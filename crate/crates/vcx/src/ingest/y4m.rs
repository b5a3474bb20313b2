//! Y4M (YUV4MPEG2) stream reader.
//!
//! The container is a single text header line, then repeated FRAME
//! marker lines each followed by a fixed-size planar payload. The
//! parser reads the header byte-exactly (never beyond the newline) and
//! each payload byte-exactly, so it composes with anything else reading
//! the same stream.

use std::io::BufRead;

use vcx_core::frame::{ChromaFormat, FrameBuffer, FrameRate, VideoStreamInfo};

use super::{frame_from_payload, parse_chroma_tag, read_payload_exact, FrameSource, IngestError};

const MAGIC: &str = "YUV4MPEG2";

/// Headers and marker lines beyond this length are treated as garbage
/// rather than buffered without bound.
const MAX_LINE: usize = 4096;

fn read_line(reader: &mut impl BufRead) -> Result<Option<String>, IngestError> {
    let mut line = Vec::new();
    let mut byte = [0u8; 1];
    loop {
        let n = reader.read(&mut byte)?;
        if n == 0 {
            return if line.is_empty() {
                Ok(None)
            } else {
                // EOF inside a line: hand back what there is; callers
                // decide whether a line without newline makes sense.
                Err(IngestError::MalformedHeader(
                    "stream ended inside a header line".into(),
                ))
            };
        }
        if byte[0] == b'\n' {
            let text = String::from_utf8(line)
                .map_err(|_| IngestError::MalformedHeader("header is not ASCII".into()))?;
            return Ok(Some(text));
        }
        if line.len() >= MAX_LINE {
            return Err(IngestError::MalformedHeader("header line too long".into()));
        }
        line.push(byte[0]);
    }
}

fn parse_dimension(token: &str) -> Result<u32, IngestError> {
    token[1..]
        .parse::<u32>()
        .map_err(|_| IngestError::MalformedHeader(format!("bad dimension token {token:?}")))
}

fn parse_rate(token: &str) -> Result<FrameRate, IngestError> {
    let bad = || IngestError::MalformedHeader(format!("bad frame rate token {token:?}"));
    let (num, den) = token[1..].split_once(':').ok_or_else(bad)?;
    Ok(FrameRate {
        num: num.parse().map_err(|_| bad())?,
        den: den.parse().map_err(|_| bad())?,
    })
}

/// Parses the stream header line, consuming exactly through its
/// newline, and leaves the reader positioned at the first FRAME marker.
///
/// `W`, `H`, and `F` are required; `C` defaults to 4:2:0 as the format
/// prescribes; `A` (aspect) is ignored; `X` extension tokens are
/// skipped with a warning; anything interlaced is refused.
pub fn parse_y4m_header(reader: &mut impl BufRead) -> Result<VideoStreamInfo, IngestError> {
    let line = read_line(reader).map_err(|e| match e {
        // A stream that ends before any newline never had a header.
        IngestError::MalformedHeader(_) => IngestError::MalformedMagic,
        other => other,
    })?;
    let line = line.ok_or(IngestError::MalformedMagic)?;
    let rest = line.strip_prefix(MAGIC).ok_or(IngestError::MalformedMagic)?;
    if !rest.is_empty() && !rest.starts_with(' ') {
        return Err(IngestError::MalformedMagic);
    }

    let mut width = None;
    let mut height = None;
    let mut rate = None;
    let mut chroma = None;
    for token in rest.split(' ').filter(|t| !t.is_empty()) {
        match token.as_bytes()[0] {
            b'W' => width = Some(parse_dimension(token)?),
            b'H' => height = Some(parse_dimension(token)?),
            b'F' => rate = Some(parse_rate(token)?),
            b'I' => match token.as_bytes().get(1) {
                Some(b'p') | None => {}
                Some(&mode) if matches!(mode, b't' | b'b' | b'm') => {
                    return Err(IngestError::UnsupportedInterlace(mode as char));
                }
                Some(_) => {
                    return Err(IngestError::MalformedHeader(format!(
                        "bad interlace token {token:?}"
                    )));
                }
            },
            b'A' => {
                // Pixel aspect ratio does not affect any analysis here.
            }
            b'C' => chroma = Some(parse_chroma_tag(token)?),
            b'X' => log::warn!("ignoring Y4M extension token {token:?}"),
            _ => {
                return Err(IngestError::MalformedHeader(format!(
                    "unrecognized token {token:?}"
                )));
            }
        }
    }

    let missing = |name: &str| IngestError::MalformedHeader(format!("missing {name} token"));
    let (chroma, bit_depth) = chroma.unwrap_or((ChromaFormat::C420, 8));
    let info = VideoStreamInfo {
        width: width.ok_or_else(|| missing("W"))?,
        height: height.ok_or_else(|| missing("H"))?,
        bit_depth,
        chroma,
        frame_rate: rate.ok_or_else(|| missing("F"))?,
        frame_count: None,
    };
    info.validate()?;
    Ok(info)
}

/// A Y4M stream positioned at its next frame.
#[derive(Debug)]
pub struct Y4mReader<R> {
    reader: R,
    info: VideoStreamInfo,
    next_poc: u64,
    payload: Vec<u8>,
    clamp_warned: bool,
}

impl<R: BufRead> Y4mReader<R> {
    /// Parses the header and prepares to deliver frames.
    pub fn new(mut reader: R) -> Result<Self, IngestError> {
        let info = parse_y4m_header(&mut reader)?;
        Ok(Y4mReader {
            reader,
            info,
            next_poc: 0,
            payload: vec![0u8; info.frame_size_bytes()],
            clamp_warned: false,
        })
    }
}

impl<R: BufRead> FrameSource for Y4mReader<R> {
    fn info(&self) -> &VideoStreamInfo {
        &self.info
    }

    fn next_frame(&mut self) -> Result<Option<FrameBuffer>, IngestError> {
        let poc = self.next_poc;
        let marker = match read_line(&mut self.reader) {
            Ok(Some(line)) => line,
            // Clean EOF at a frame boundary ends the stream.
            Ok(None) => return Ok(None),
            Err(IngestError::MalformedHeader(_)) => {
                return Err(IngestError::MalformedFrameMarker { poc });
            }
            Err(other) => return Err(other),
        };
        if marker != "FRAME" && !marker.starts_with("FRAME ") {
            return Err(IngestError::MalformedFrameMarker { poc });
        }
        if read_payload_exact(&mut self.reader, &mut self.payload, poc)?.is_none() {
            return Err(IngestError::TruncatedFrame { poc });
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
