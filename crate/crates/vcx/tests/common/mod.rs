//! Helpers shared by the integration tests: deterministic synthetic
//! clips and a Y4M byte serializer to feed the readers and the CLI.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vcx::core::frame::{ChromaFormat, FrameBuffer, FrameRate, Plane, VideoStreamInfo};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn info(
    width: u32,
    height: u32,
    bit_depth: u8,
    chroma: ChromaFormat,
    frame_rate: FrameRate,
) -> VideoStreamInfo {
    let info = VideoStreamInfo {
        width,
        height,
        bit_depth,
        chroma,
        frame_rate,
        frame_count: None,
    };
    info.validate().expect("test stream must be well formed");
    info
}

pub fn info_c420_8(width: u32, height: u32) -> VideoStreamInfo {
    info(width, height, 8, ChromaFormat::C420, FrameRate { num: 25, den: 1 })
}

pub fn plane_from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> u16) -> Plane {
    let mut samples = Vec::with_capacity(width * height);
    for y in 0..height {
        for x in 0..width {
            samples.push(f(x, y));
        }
    }
    Plane::from_samples(width, height, samples)
}

pub fn noise_plane(
    rng: &mut ChaCha8Rng,
    width: usize,
    height: usize,
    base: i32,
    amplitude: i32,
    max: u16,
) -> Plane {
    let mut samples = Vec::with_capacity(width * height);
    for _ in 0..width * height {
        let value = base + rng.random_range(-amplitude..=amplitude);
        samples.push(value.clamp(0, max as i32) as u16);
    }
    Plane::from_samples(width, height, samples)
}

/// One frame of centered noise matching the stream's geometry.
pub fn noise_frame(
    rng: &mut ChaCha8Rng,
    stream: &VideoStreamInfo,
    poc: u64,
    amplitude: i32,
) -> FrameBuffer {
    let max = stream.max_sample();
    let base = (max as i32 + 1) / 2;
    let (cw, ch) = stream.chroma_dims();
    FrameBuffer::new(
        poc,
        noise_plane(rng, stream.width as usize, stream.height as usize, base, amplitude, max),
        noise_plane(rng, cw as usize, ch as usize, base, amplitude / 2, max),
        noise_plane(rng, cw as usize, ch as usize, base, amplitude / 2, max),
    )
}

pub fn noise_clip(stream: &VideoStreamInfo, frames: u64, amplitude: i32, seed: u64) -> Vec<FrameBuffer> {
    let mut rng = rng(seed);
    (0..frames)
        .map(|poc| noise_frame(&mut rng, stream, poc, amplitude))
        .collect()
}

fn chroma_tag(stream: &VideoStreamInfo) -> &'static str {
    match (stream.chroma, stream.bit_depth) {
        (ChromaFormat::C420, 8) => "420",
        (ChromaFormat::C422, 8) => "422",
        (ChromaFormat::C444, 8) => "444",
        (ChromaFormat::C420, 10) => "420p10",
        (ChromaFormat::C422, 10) => "422p10",
        (ChromaFormat::C444, 10) => "444p10",
        _ => panic!("no Y4M tag for this stream"),
    }
}

fn push_plane(out: &mut Vec<u8>, plane: &Plane, two_byte: bool) {
    for &s in plane.samples() {
        if two_byte {
            out.extend_from_slice(&s.to_le_bytes());
        } else {
            out.push(s as u8);
        }
    }
}

/// Serializes a whole clip as Y4M bytes.
pub fn y4m_bytes(stream: &VideoStreamInfo, frames: &[FrameBuffer]) -> Vec<u8> {
    let mut out = format!(
        "YUV4MPEG2 W{} H{} F{}:{} Ip A1:1 C{}\n",
        stream.width,
        stream.height,
        stream.frame_rate.num,
        stream.frame_rate.den,
        chroma_tag(stream)
    )
    .into_bytes();
    let two_byte = stream.bit_depth > 8;
    for frame in frames {
        out.extend_from_slice(b"FRAME\n");
        push_plane(&mut out, &frame.y, two_byte);
        push_plane(&mut out, &frame.u, two_byte);
        push_plane(&mut out, &frame.v, two_byte);
    }
    out
}

/// Writes a clip to a temp file the CLI can open by path.
pub fn y4m_temp_file(stream: &VideoStreamInfo, frames: &[FrameBuffer]) -> tempfile::NamedTempFile {
    use std::io::Write;
    let mut file = tempfile::Builder::new()
        .suffix(".y4m")
        .tempfile()
        .expect("temp file");
    file.write_all(&y4m_bytes(stream, frames)).expect("write clip");
    file.flush().expect("flush clip");
    file
}
