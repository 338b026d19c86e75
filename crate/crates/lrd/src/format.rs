//! Series file formats.
//!
//! * `bits`: the 8-byte magic `LRDBITS1`, the symbol count as a
//!   little-endian `u64`, then the symbols packed eight to a byte with the
//!   first symbol in the least significant bit. Unused high bits of the last
//!   byte are zero. Binary series only.
//! * `lines`: one value per line.
//! * `csv`: an `index,value` header, then one `index,value` row per value.
//!
//! Reals are written with the shortest representation that parses back to
//! the same `f64`.

use std::io::{self, BufRead, Read, Write};
use std::str::FromStr;

use thiserror::Error;

pub const MAGIC: &[u8; 8] = b"LRDBITS1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Bits,
    Lines,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bits" => Ok(Format::Bits),
            "lines" => Ok(Format::Lines),
            "csv" => Ok(Format::Csv),
            _ => Err(format!(
                "unknown format '{s}' (expected bits, lines or csv)"
            )),
        }
    }
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("missing or wrong magic header")]
    BadMagic,
    #[error("expected {expected} payload bytes, found {got}")]
    Truncated { expected: u64, got: u64 },
    #[error("line {line}: cannot parse '{text}'")]
    Parse { line: usize, text: String },
    #[error("bits format holds only 0/1 symbols")]
    NotBinary,
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Contents of a series file.
#[derive(Debug, Clone, PartialEq)]
pub enum Series {
    Binary(Vec<u8>),
    Real(Vec<f64>),
}

impl Series {
    pub fn len(&self) -> usize {
        match self {
            Series::Binary(s) => s.len(),
            Series::Real(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_reals(&self) -> Vec<f64> {
        match self {
            Series::Binary(s) => s.iter().map(|&b| b as f64).collect(),
            Series::Real(v) => v.clone(),
        }
    }

    /// 64-bit FNV-1a over the symbols (one byte each) or, for reals, over
    /// the little-endian bytes of each `f64`.
    pub fn checksum(&self) -> u64 {
        match self {
            Series::Binary(s) => fnv1a(s.iter().copied()),
            Series::Real(v) => fnv1a(v.iter().flat_map(|x| x.to_le_bytes())),
        }
    }
}

fn fnv1a(bytes: impl IntoIterator<Item = u8>) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

pub fn write_series<W: Write>(out: W, series: &Series, format: Format) -> Result<(), FormatError> {
    let mut out = io::BufWriter::new(out);
    match (format, series) {
        (Format::Bits, Series::Binary(s)) => {
            out.write_all(MAGIC)?;
            out.write_all(&(s.len() as u64).to_le_bytes())?;
            for chunk in s.chunks(8) {
                let byte = chunk
                    .iter()
                    .enumerate()
                    .fold(0u8, |acc, (i, &b)| acc | ((b & 1) << i));
                out.write_all(&[byte])?;
            }
        }
        (Format::Bits, Series::Real(_)) => return Err(FormatError::NotBinary),
        (Format::Lines, Series::Binary(s)) => {
            for &b in s {
                out.write_all(if b == 0 { b"0\n" } else { b"1\n" })?;
            }
        }
        (Format::Lines, Series::Real(v)) => {
            for x in v {
                writeln!(out, "{x}")?;
            }
        }
        (Format::Csv, _) => {
            out.write_all(b"index,value\n")?;
            match series {
                Series::Binary(s) => {
                    for (i, b) in s.iter().enumerate() {
                        writeln!(out, "{i},{b}")?;
                    }
                }
                Series::Real(v) => {
                    for (i, x) in v.iter().enumerate() {
                        writeln!(out, "{i},{x}")?;
                    }
                }
            }
        }
    }
    out.flush()?;
    Ok(())
}

/// Reads a series. Text input whose values are all exactly 0 or 1 comes back
/// as [`Series::Binary`].
pub fn read_series<R: Read>(input: R, format: Format) -> Result<Series, FormatError> {
    match format {
        Format::Bits => read_bits(input),
        Format::Lines => read_text(input, false),
        Format::Csv => read_text(input, true),
    }
}

fn read_bits<R: Read>(mut input: R) -> Result<Series, FormatError> {
    let mut header = [0u8; 16];
    input.read_exact(&mut header).map_err(|e| match e.kind() {
        io::ErrorKind::UnexpectedEof => FormatError::BadMagic,
        _ => FormatError::Io(e),
    })?;
    if &header[..8] != MAGIC {
        return Err(FormatError::BadMagic);
    }
    let count = u64::from_le_bytes(header[8..].try_into().expect("8 bytes"));
    let mut payload = Vec::new();
    input.read_to_end(&mut payload)?;
    let expected = count.div_ceil(8);
    if payload.len() as u64 != expected {
        return Err(FormatError::Truncated {
            expected,
            got: payload.len() as u64,
        });
    }
    let symbols = (0..count as usize)
        .map(|i| (payload[i / 8] >> (i % 8)) & 1)
        .collect();
    Ok(Series::Binary(symbols))
}

fn read_text<R: Read>(input: R, csv: bool) -> Result<Series, FormatError> {
    let mut values = Vec::new();
    let mut header_seen = !csv;
    for (i, line) in io::BufReader::new(input).lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        if !header_seen {
            header_seen = true;
            if text == "index,value" {
                continue;
            }
        }
        let field = if csv {
            text.rsplit(',').next().unwrap_or(text).trim()
        } else {
            text
        };
        let v: f64 = field
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| FormatError::Parse {
                line: i + 1,
                text: text.to_string(),
            })?;
        values.push(v);
    }
    if values.iter().all(|&v| v == 0.0 || v == 1.0) {
        Ok(Series::Binary(values.iter().map(|&v| v as u8).collect()))
    } else {
        Ok(Series::Real(values))
    }
}
