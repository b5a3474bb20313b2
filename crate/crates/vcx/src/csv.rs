//! CSV serialization of analysis results.
//!
//! The column layout and formatting are part of the tool's contract:
//! fixed headers, six decimal places, LF line endings. Two runs over
//! the same input must serialize to identical bytes, so nothing here
//! depends on locale or platform.

use std::io::{self, Write};

use vcx_core::features::FrameFeatures;
use vcx_core::siti::{SitiRecord, SitiSummary};

struct CountingWriter<W> {
    inner: W,
    written: u64,
}

impl<W: Write> CountingWriter<W> {
    fn new(inner: W) -> Self {
        CountingWriter { inner, written: 0 }
    }
}

impl<W: Write> Write for CountingWriter<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.written += n as u64;
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

/// Writes per-frame features as CSV and returns the bytes written.
pub fn write_features_csv(
    out: impl Write,
    features: &[FrameFeatures],
) -> io::Result<u64> {
    let mut w = CountingWriter::new(out);
    w.write_all(b"POC,E_Y,h,L_Y,E_U,L_U,E_V,L_V\n")?;
    for f in features {
        writeln!(
            w,
            "{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
            f.poc, f.e_y, f.h, f.l_y, f.e_u, f.l_u, f.e_v, f.l_v
        )?;
    }
    w.flush()?;
    Ok(w.written)
}

/// Writes per-frame SI/TI as CSV, with the sequence maxima as a
/// trailing comment line, and returns the bytes written.
///
/// The first frame has no temporal reference, so its TI cell is empty
/// rather than a fabricated zero.
pub fn write_siti_csv(
    out: impl Write,
    records: &[SitiRecord],
    summary: &SitiSummary,
) -> io::Result<u64> {
    let mut w = CountingWriter::new(out);
    w.write_all(b"POC,SI_frame,TI_frame\n")?;
    for r in records {
        match r.ti {
            Some(ti) => writeln!(w, "{},{:.6},{:.6}", r.poc, r.si, ti)?,
            None => writeln!(w, "{},{:.6},", r.poc, r.si)?,
        }
    }
    writeln!(w, "# SI={:.6} TI={:.6}", summary.si, summary.ti)?;
    w.flush()?;
    Ok(w.written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn features_layout_is_fixed() {
        let rows = vec![
            FrameFeatures {
                poc: 0,
                e_y: 12.25,
                h: 0.0,
                l_y: 32.0,
                e_u: 1.5,
                l_u: 22.627417,
                e_v: 1.25,
                l_v: 22.0,
            },
            FrameFeatures {
                poc: 1,
                e_y: 12.5,
                h: 0.125,
                l_y: 32.0,
                e_u: 1.5,
                l_u: 22.627417,
                e_v: 1.25,
                l_v: 22.0,
            },
        ];
        let mut buf = Vec::new();
        let n = write_features_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "POC,E_Y,h,L_Y,E_U,L_U,E_V,L_V\n\
             0,12.250000,0.000000,32.000000,1.500000,22.627417,1.250000,22.000000\n\
             1,12.500000,0.125000,32.000000,1.500000,22.627417,1.250000,22.000000\n"
        );
        assert_eq!(n, text.len() as u64);
    }

    #[test]
    fn siti_layout_leaves_first_ti_empty() {
        let records = vec![
            SitiRecord { poc: 0, si: 30.5, ti: None },
            SitiRecord { poc: 1, si: 31.0, ti: Some(4.25) },
        ];
        let summary = SitiSummary { si: 31.0, ti: 4.25 };
        let mut buf = Vec::new();
        let n = write_siti_csv(&mut buf, &records, &summary).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "POC,SI_frame,TI_frame\n\
             0,30.500000,\n\
             1,31.000000,4.250000\n\
             # SI=31.000000 TI=4.250000\n"
        );
        assert_eq!(n, text.len() as u64);
    }

    #[test]
    fn empty_inputs_still_write_headers() {
        let mut buf = Vec::new();
        write_features_csv(&mut buf, &[]).unwrap();
        assert_eq!(buf, b"POC,E_Y,h,L_Y,E_U,L_U,E_V,L_V\n");
    }
}
