//! Minimal PNM codec: decodes P2/P3 (ASCII) and P5/P6 (binary) with 8-bit
//! maxval, encodes P5. Comments (`#` to end of line) are allowed anywhere
//! whitespace is.

use std::path::Path;

use crate::error::Error;
use crate::raster::{GrayImage, RgbImage};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PnmImage {
    Gray(GrayImage),
    Rgb(RgbImage),
}

struct Tokenizer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Tokenizer<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        Self { bytes, pos: 0 }
    }

    fn skip_whitespace_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b' ' | b'\t' | b'\r' | b'\n' | 0x0b | 0x0c => self.pos += 1,
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn next_uint(&mut self) -> Option<u64> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        std::str::from_utf8(&self.bytes[start..self.pos]).ok()?.parse().ok()
    }
}

pub fn is_pnm(bytes: &[u8]) -> bool {
    bytes.len() >= 2 && bytes[0] == b'P' && matches!(bytes[1], b'2' | b'3' | b'5' | b'6')
}

pub fn decode(bytes: &[u8], path: &Path) -> Result<PnmImage, Error> {
    let fail = |reason: &str| Error::Decode {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    };
    if bytes.len() < 2 || bytes[0] != b'P' {
        return Err(fail("not a PNM file"));
    }
    let kind = bytes[1];
    if !matches!(kind, b'2' | b'3' | b'5' | b'6') {
        return Err(fail("unsupported PNM variant (only P2/P3/P5/P6)"));
    }
    let mut tok = Tokenizer::new(&bytes[2..]);
    let width = tok.next_uint().ok_or_else(|| fail("missing width"))?;
    let height = tok.next_uint().ok_or_else(|| fail("missing height"))?;
    let maxval = tok.next_uint().ok_or_else(|| fail("missing maxval"))?;
    if width == 0 || height == 0 || width > u32::MAX as u64 || height > u32::MAX as u64 {
        return Err(fail("invalid dimensions"));
    }
    let npx = (width as usize)
        .checked_mul(height as usize)
        .ok_or_else(|| fail("dimension overflow"))?;
    if maxval == 0 {
        return Err(fail("maxval must be >= 1"));
    }
    if maxval > 255 {
        return Err(fail("16-bit PNM inputs are not supported"));
    }

    let channels = if matches!(kind, b'3' | b'6') { 3 } else { 1 };
    let nvals = npx
        .checked_mul(channels)
        .ok_or_else(|| fail("dimension overflow"))?;

    let values: Vec<u8> = match kind {
        b'2' | b'3' => {
            let mut vals = Vec::with_capacity(nvals);
            for _ in 0..nvals {
                let v = tok.next_uint().ok_or_else(|| fail("truncated pixel data"))?;
                if v > maxval {
                    return Err(fail("sample exceeds maxval"));
                }
                vals.push(v as u8);
            }
            vals
        }
        _ => {
            // exactly one whitespace byte separates the header from raster data
            let start = 2 + tok.pos + 1;
            let end = start
                .checked_add(nvals)
                .filter(|&e| e <= bytes.len())
                .ok_or_else(|| fail("truncated pixel data"))?;
            let raw = &bytes[start..end];
            if let Some(&bad) = raw.iter().find(|&&v| v as u64 > maxval) {
                return Err(fail(&format!("sample {bad} exceeds maxval {maxval}")));
            }
            raw.to_vec()
        }
    };

    Ok(match channels {
        1 => PnmImage::Gray(GrayImage::new(width as u32, height as u32, values)),
        _ => PnmImage::Rgb(RgbImage::new(
            width as u32,
            height as u32,
            values.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect(),
        )),
    })
}

/// Encodes a grey image as binary PGM (P5, maxval 255).
pub fn encode_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}

/// Encodes an RGB image as binary PPM (P6, maxval 255).
pub fn encode_ppm(img: &RgbImage) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    for px in img.pixels() {
        out.extend_from_slice(px);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Result<PnmImage, Error> {
        decode(s.as_bytes(), Path::new("test.pnm"))
    }

    #[test]
    fn decodes_ascii_pgm() {
        match p("P2\n2 1\n255\n0 255\n").unwrap() {
            PnmImage::Gray(g) => {
                assert_eq!((g.width(), g.height()), (2, 1));
                assert_eq!(g.pixels(), &[0, 255]);
            }
            _ => panic!("expected gray"),
        }
    }

    #[test]
    fn decodes_ascii_ppm_with_comment() {
        match p("P3\n# a comment\n1 1\n255\n10 20 30\n").unwrap() {
            PnmImage::Rgb(r) => assert_eq!(r.get(0, 0), [10, 20, 30]),
            _ => panic!("expected rgb"),
        }
    }

    #[test]
    fn binary_pgm_round_trip() {
        let img = GrayImage::from_fn(5, 3, |x, y| (x * 50 + y) as u8);
        let bytes = encode_pgm(&img);
        match decode(&bytes, Path::new("rt.pgm")).unwrap() {
            PnmImage::Gray(g) => assert_eq!(g, img),
            _ => panic!("expected gray"),
        }
    }

    #[test]
    fn binary_ppm_round_trip() {
        let img = RgbImage::new(2, 2, vec![[1, 2, 3], [4, 5, 6], [7, 8, 9], [10, 11, 12]]);
        let bytes = encode_ppm(&img);
        match decode(&bytes, Path::new("rt.ppm")).unwrap() {
            PnmImage::Rgb(r) => assert_eq!(r, img),
            _ => panic!("expected rgb"),
        }
    }

    #[test]
    fn rejects_16_bit_maxval() {
        let err = p("P2\n1 1\n65535\n1234\n").unwrap_err();
        assert!(matches!(err, Error::Decode { .. }));
    }

    #[test]
    fn rejects_truncated_binary_data() {
        let mut bytes = b"P5\n4 4\n255\n".to_vec();
        bytes.extend_from_slice(&[0u8; 7]); // needs 16
        assert!(decode(&bytes, Path::new("t.pgm")).is_err());
    }

    #[test]
    fn rejects_sample_above_maxval() {
        assert!(p("P2\n1 1\n100\n101\n").is_err());
    }
}
