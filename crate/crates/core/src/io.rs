//! Grayscale raster and complex-buffer serialization: PGM (P2/P5) in, PGM
//! (P5) and a lossless complex CSV out. This is the only boundary the data
//! crosses between host formats and the resident buffers.

use std::fmt::Write as _;

use crate::buffer::Buffer2D;
use crate::complex::{Complex, Real};
use crate::error::{Error, Result};

/// 8-bit grayscale image, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Empty);
        }
        if pixels.len() != width * height {
            return Err(Error::ShapeMismatch {
                what: "pixel vector",
                expected: (width, height),
                actual: (pixels.len(), 1),
            });
        }
        Ok(GrayImage {
            width,
            height,
            pixels,
        })
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    /// Lifts the image into a complex buffer, pixel v becoming (v, 0).
    pub fn to_buffer<P: Real>(&self) -> Buffer2D<P> {
        let data = self
            .pixels
            .iter()
            .map(|&v| Complex::new(P::from_f64(f64::from(v)), P::zero()))
            .collect();
        Buffer2D::from_complex(self.width, self.height, data)
            .expect("pixel count was validated at construction")
    }
}

const WHITESPACE: [u8; 4] = *b" \t\r\n";

struct PgmCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> PgmCursor<'a> {
    fn error(&self, reason: impl Into<String>) -> Error {
        Error::PgmParse {
            offset: self.pos,
            reason: reason.into(),
        }
    }

    /// Skips whitespace and `#` comments (which run to end of line).
    fn skip_separators(&mut self) {
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            if WHITESPACE.contains(&b) {
                self.pos += 1;
            } else if b == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn read_uint(&mut self, what: &str) -> Result<usize> {
        self.skip_separators();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error(format!("expected {what}")));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        text.parse::<usize>()
            .map_err(|_| self.error(format!("{what} out of range")))
    }
}

/// Parses a PGM image (binary P5 or ASCII P2, maxval at most 255).
pub fn load_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let mut cursor = PgmCursor { bytes, pos: 0 };
    if bytes.len() < 2 {
        return Err(cursor.error("missing magic"));
    }
    let binary = match &bytes[0..2] {
        b"P5" => true,
        b"P2" => false,
        _ => return Err(cursor.error("bad magic (expected P2 or P5)")),
    };
    cursor.pos = 2;
    if bytes.len() > 2 && !WHITESPACE.contains(&bytes[2]) && bytes[2] != b'#' {
        return Err(cursor.error("expected whitespace after magic"));
    }

    let width = cursor.read_uint("width")?;
    let height = cursor.read_uint("height")?;
    let maxval = cursor.read_uint("maxval")?;
    if width == 0 || height == 0 {
        return Err(cursor.error("dimensions must be positive"));
    }
    if maxval == 0 || maxval > 255 {
        return Err(cursor.error(format!("maxval {maxval} outside 1..=255")));
    }

    let count = width * height;
    let mut pixels = Vec::with_capacity(count);
    if binary {
        // Exactly one whitespace byte separates the header from the raster.
        if cursor.pos >= bytes.len() || !WHITESPACE.contains(&bytes[cursor.pos]) {
            return Err(cursor.error("expected single whitespace before raster"));
        }
        cursor.pos += 1;
        let available = bytes.len() - cursor.pos;
        if available < count {
            cursor.pos = bytes.len();
            return Err(cursor.error(format!(
                "truncated raster: expected {count} bytes, found {available}"
            )));
        }
        for (i, &b) in bytes[cursor.pos..cursor.pos + count].iter().enumerate() {
            if usize::from(b) > maxval {
                cursor.pos += i;
                return Err(cursor.error(format!("pixel {b} exceeds maxval {maxval}")));
            }
            pixels.push(b);
        }
    } else {
        for _ in 0..count {
            cursor.skip_separators();
            if cursor.pos >= bytes.len() {
                return Err(cursor.error(format!(
                    "truncated raster: expected {count} pixels, found {}",
                    pixels.len()
                )));
            }
            if !bytes[cursor.pos].is_ascii_digit() {
                return Err(cursor.error("unexpected byte in raster"));
            }
            let value = cursor.read_uint("pixel")?;
            if value > maxval {
                return Err(cursor.error(format!("pixel {value} exceeds maxval {maxval}")));
            }
            pixels.push(value as u8);
        }
    }
    GrayImage::new(width, height, pixels)
}

/// Serializes a grid of values in [0, 1] as a binary PGM (P5, maxval 255);
/// each value v is quantized to round(v * 255).
pub fn save_pgm(width: usize, height: usize, values: &[f64]) -> Result<Vec<u8>> {
    if width == 0 || height == 0 {
        return Err(Error::Empty);
    }
    if values.len() != width * height {
        return Err(Error::ShapeMismatch {
            what: "value grid",
            expected: (width, height),
            actual: (values.len(), 1),
        });
    }
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    for (i, &v) in values.iter().enumerate() {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::SampleOutOfRange {
                row: i / width,
                col: i % width,
                value: v,
            });
        }
        out.push((v * 255.0).round() as u8);
    }
    Ok(out)
}

/// Serializes a buffer as CSV with header `row,col,re,im`, one element per
/// line in row-major order. Components are written in the shortest decimal
/// form that parses back to the identical value.
pub fn save_complex_csv<P: Real>(buffer: &Buffer2D<P>) -> String {
    let mut out = String::from("row,col,re,im\n");
    for r in 0..buffer.height() {
        for c in 0..buffer.width() {
            let z = buffer.get(r, c);
            writeln!(out, "{r},{c},{},{}", z.re, z.im).expect("string write");
        }
    }
    out
}

/// Parses the CSV produced by [`save_complex_csv`]. Records must cover the
/// full grid in row-major order.
pub fn load_complex_csv<P: Real>(text: &str) -> Result<Buffer2D<P>> {
    let parse_error = |line: usize, reason: &str| Error::CsvParse {
        line,
        reason: reason.to_string(),
    };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim_end() == "row,col,re,im" => {}
        _ => return Err(parse_error(1, "expected header 'row,col,re,im'")),
    }

    let mut records: Vec<(usize, usize, Complex<P>)> = Vec::new();
    let mut max_col = 0;
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.trim_end().split(',');
        let mut next = |what: &str| {
            fields
                .next()
                .ok_or_else(|| parse_error(line_no, &format!("missing {what}")))
        };
        let row: usize = next("row")?
            .parse()
            .map_err(|_| parse_error(line_no, "bad row index"))?;
        let col: usize = next("col")?
            .parse()
            .map_err(|_| parse_error(line_no, "bad col index"))?;
        let re = P::parse(next("re")?).ok_or_else(|| parse_error(line_no, "bad re value"))?;
        let im = P::parse(next("im")?).ok_or_else(|| parse_error(line_no, "bad im value"))?;
        if fields.next().is_some() {
            return Err(parse_error(line_no, "trailing fields"));
        }
        max_col = max_col.max(col);
        records.push((row, col, Complex::new(re, im)));
    }
    if records.is_empty() {
        return Err(parse_error(1, "no records"));
    }

    let width = max_col + 1;
    let height = records.last().map(|(r, _, _)| r + 1).unwrap_or(0);
    if records.len() != width * height {
        return Err(parse_error(
            records.len() + 1,
            &format!("expected {}x{} = {} records", width, height, width * height),
        ));
    }
    let mut data = Vec::with_capacity(records.len());
    for (i, (row, col, z)) in records.into_iter().enumerate() {
        if (row, col) != (i / width, i % width) {
            return Err(parse_error(i + 2, "records not in row-major order"));
        }
        data.push(z);
    }
    Buffer2D::from_complex(width, height, data)
}
