//! 8-bit grayscale PGM, plain (P2) and raw (P5).

use std::fs;
use std::path::Path;

use awgris_core::synth::GrayImage;

use crate::error::{CliError, Result};

/// Read a PGM and scale intensities to `[0, 1]`.
pub fn read(path: &Path) -> Result<GrayImage> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    parse(&bytes).map_err(|msg| CliError::format(path, 0, msg))
}

pub fn parse(bytes: &[u8]) -> std::result::Result<GrayImage, String> {
    let mut pos = 0;
    let magic = token(bytes, &mut pos).ok_or("missing magic number")?;
    let raw = match magic.as_str() {
        "P2" => false,
        "P5" => true,
        m => return Err(format!("unsupported magic `{m}` (expected P2 or P5)")),
    };
    let mut header = [0usize; 3];
    for (h, name) in header.iter_mut().zip(["width", "height", "maxval"]) {
        let t = token(bytes, &mut pos).ok_or(format!("missing {name}"))?;
        *h = t.parse().map_err(|_| format!("bad {name} `{t}`"))?;
    }
    let [width, height, maxval] = header;
    if width == 0 || height == 0 {
        return Err("empty image".into());
    }
    if maxval == 0 || maxval > 255 {
        return Err(format!("maxval {maxval} not in 1..=255"));
    }
    let n = width * height;
    let scale = maxval as f64;
    let pixels: Vec<f64> = if raw {
        // exactly one whitespace byte separates the header from the data
        let start = pos + 1;
        let data = bytes.get(start..start + n).ok_or("truncated pixel data")?;
        data.iter().map(|&b| f64::from(b).min(scale) / scale).collect()
    } else {
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let t = token(bytes, &mut pos).ok_or(format!("truncated pixel data at {i}"))?;
            let v: usize = t.parse().map_err(|_| format!("bad pixel `{t}`"))?;
            if v > maxval {
                return Err(format!("pixel {v} exceeds maxval {maxval}"));
            }
            out.push(v as f64 / scale);
        }
        out
    };
    GrayImage::new(width, height, pixels).map_err(|e| e.to_string())
}

/// Next whitespace-separated token, skipping `#` comments.
fn token(bytes: &[u8], pos: &mut usize) -> Option<String> {
    loop {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < bytes.len() && bytes[*pos] == b'#' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
        } else {
            break;
        }
    }
    let start = *pos;
    while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
    (*pos > start).then(|| String::from_utf8_lossy(&bytes[start..*pos]).into_owned())
}

/// Quantize to 8 bits, scaling the brightest pixel to 255 (an all-zero
/// image stays black).
pub fn quantize(img: &GrayImage) -> Vec<u8> {
    let peak = img.pixels.iter().cloned().fold(0.0, f64::max);
    img.pixels
        .iter()
        .map(|&p| {
            if peak > 0.0 {
                (p / peak * 255.0).round().clamp(0.0, 255.0) as u8
            } else {
                0
            }
        })
        .collect()
}

/// Write a raw (P5) PGM, normalized so the brightest pixel is 255.
pub fn write(path: &Path, img: &GrayImage) -> Result<()> {
    let mut out = format!("P5\n{} {}\n255\n", img.width, img.height).into_bytes();
    out.extend(quantize(img));
    fs::write(path, out).map_err(|e| CliError::io(path, e))
}

/// Write a plain (P2) PGM; handy for hand-editable targets.
pub fn write_plain(path: &Path, img: &GrayImage) -> Result<()> {
    let q = quantize(img);
    let mut out = format!("P2\n{} {}\n255\n", img.width, img.height);
    for row in q.chunks(img.width) {
        let line: Vec<String> = row.iter().map(u8::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_with_comments() {
        let img = parse(b"P2\n# a comment\n3 2\n# another\n4\n0 1 2\n3 4 0\n").unwrap();
        assert_eq!((img.width, img.height), (3, 2));
        assert_eq!(img.pixels, vec![0.0, 0.25, 0.5, 0.75, 1.0, 0.0]);
    }

    #[test]
    fn raw_and_plain_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let img = GrayImage::new(4, 2, vec![0.0, 1.0, 0.5, 0.2, 1.0, 0.0, 0.0, 1.0]).unwrap();
        for (name, f) in [("a.pgm", write as fn(&Path, &GrayImage) -> Result<()>), ("b.pgm", write_plain)] {
            let p = dir.path().join(name);
            f(&p, &img).unwrap();
            let back = read(&p).unwrap();
            assert_eq!(quantize(&back), quantize(&img));
        }
    }

    #[test]
    fn rejects_16_bit_and_truncation() {
        assert!(parse(b"P5 2 2 65535\n").unwrap_err().contains("maxval"));
        assert!(parse(b"P5 2 2 255\n\x00\x01").unwrap_err().contains("truncated"));
        assert!(parse(b"P3 1 1 255 0 0 0").unwrap_err().contains("P3"));
    }
}
