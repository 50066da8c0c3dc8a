//! Minimal PGM (portable graymap) reader and writer. Reads textual P2 and
//! binary P5 with maxval up to 65535; writes textual P2.

use std::fs;
use std::path::Path;

use qimp_core::ImageMatrix;

use crate::error::CliError;

/// Rendering of real-valued pixel grids into the 8-bit output range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WriteMode {
    /// Affine rescale of [min, max] onto [0, 255].
    Rescale,
    /// Signed data around mid-gray: 0 maps to 128, extremes to 1 and 255.
    SignedSymmetric,
}

struct Header {
    binary: bool,
    width: usize,
    height: usize,
    maxval: u32,
    data_start: usize,
}

fn parse_header(bytes: &[u8], path: &Path) -> Result<Header, CliError> {
    let corrupt = |what: &str| CliError::CorruptHeader(format!("{}: {what}", path.display()));
    if bytes.len() < 2 {
        return Err(corrupt("file shorter than a magic number"));
    }
    let binary = match &bytes[..2] {
        b"P2" => false,
        b"P5" => true,
        _ => {
            return Err(CliError::UnsupportedFormat(format!(
                "{}: not a P2/P5 graymap",
                path.display()
            )))
        }
    };

    // scan whitespace/comment separated integer fields after the magic
    let mut pos = 2;
    let mut fields = [0u64; 3];
    for field in fields.iter_mut() {
        while pos < bytes.len() {
            match bytes[pos] {
                b'#' => {
                    while pos < bytes.len() && bytes[pos] != b'\n' {
                        pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => pos += 1,
                _ => break,
            }
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos == start {
            return Err(corrupt("missing width/height/maxval field"));
        }
        *field = std::str::from_utf8(&bytes[start..pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| corrupt("unparseable header field"))?;
    }
    let (width, height, maxval) = (fields[0] as usize, fields[1] as usize, fields[2] as u32);
    if width == 0 || height == 0 {
        return Err(corrupt("zero dimension"));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(CliError::UnsupportedFormat(format!(
            "{}: maxval {maxval} outside 1..=65535",
            path.display()
        )));
    }
    // exactly one whitespace byte separates a binary header from its data
    if binary {
        if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
            return Err(corrupt("missing separator before binary data"));
        }
        pos += 1;
    }
    Ok(Header {
        binary,
        width,
        height,
        maxval,
        data_start: pos,
    })
}

pub fn read_image(path: &Path) -> Result<ImageMatrix, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::read_side(e, path))?;
    let header = parse_header(&bytes, path)?;
    let count = header.width * header.height;
    let truncated = |what: &str| CliError::TruncatedData(format!("{}: {what}", path.display()));

    let samples: Vec<f64> = if header.binary {
        let data = &bytes[header.data_start..];
        if header.maxval < 256 {
            if data.len() < count {
                return Err(truncated("fewer data bytes than pixels"));
            }
            data[..count].iter().map(|&b| b as f64).collect()
        } else {
            if data.len() < 2 * count {
                return Err(truncated("fewer data bytes than pixels"));
            }
            data[..2 * count]
                .chunks_exact(2)
                .map(|c| u16::from_be_bytes([c[0], c[1]]) as f64)
                .collect()
        }
    } else {
        let text = std::str::from_utf8(&bytes[header.data_start..])
            .map_err(|_| CliError::CorruptHeader(format!("{}: non-ASCII P2 data", path.display())))?;
        let mut values = Vec::with_capacity(count);
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("");
            for token in line.split_ascii_whitespace() {
                let v: u32 = token.parse().map_err(|_| {
                    CliError::CorruptHeader(format!("{}: bad sample {token:?}", path.display()))
                })?;
                values.push(v as f64);
            }
        }
        if values.len() < count {
            return Err(truncated("fewer samples than pixels"));
        }
        values.truncate(count);
        values
    };

    for &s in &samples {
        if s > header.maxval as f64 {
            return Err(CliError::CorruptHeader(format!(
                "{}: sample {s} exceeds maxval {}",
                path.display(),
                header.maxval
            )));
        }
    }
    Ok(ImageMatrix::from_fn(header.height, header.width, |i, j| {
        samples[i * header.width + j]
    }))
}

fn quantize(image: &ImageMatrix, mode: WriteMode) -> Vec<u8> {
    let pixels = image.pixels();
    match mode {
        WriteMode::Rescale => {
            let min = pixels.iter().cloned().fold(f64::INFINITY, f64::min);
            let max = pixels.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            if max - min <= 0.0 {
                let level = min.round().clamp(0.0, 255.0) as u8;
                return vec![level; pixels.len()];
            }
            pixels
                .iter()
                .map(|&v| ((v - min) / (max - min) * 255.0).round() as u8)
                .collect()
        }
        WriteMode::SignedSymmetric => {
            let max_abs = image.max_abs();
            if max_abs <= 0.0 {
                return vec![128; pixels.len()];
            }
            pixels
                .iter()
                .map(|&v| (128.0 + (v / max_abs) * 127.0).round().clamp(0.0, 255.0) as u8)
                .collect()
        }
    }
}

pub fn write_image(image: &ImageMatrix, path: &Path, mode: WriteMode) -> Result<(), CliError> {
    if image.pixels().iter().any(|v| !v.is_finite()) {
        return Err(CliError::Numeric(qimp_core::Error::NonFinite));
    }
    let levels = quantize(image, mode);
    let mut out = format!("P2\n{} {}\n255\n", image.cols(), image.rows());
    for row in levels.chunks(image.cols()) {
        let line: Vec<String> = row.iter().map(u8::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}
