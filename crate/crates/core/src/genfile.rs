//! Plain-text generator files.
//!
//! ```text
//! SZ m=1 modulus=b
//! 1 0 0 0 1 1 0 0 0 1 1 0 1 0 1 1
//! ...
//! ```
//!
//! One matrix per line, 16 entries in row-major order, each a fixed-width
//! hex word. Blank lines and lines starting with `#` are ignored.

use std::path::Path;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Mat4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorFile {
    pub m: u32,
    pub gens: Vec<Mat4>,
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header(line: &str) -> Result<(u32, u32)> {
    let mut words = line.split_whitespace();
    if words.next() != Some("SZ") {
        return Err(Error::Parse(format!("expected header `SZ m=.. modulus=..`, found {line:?}")));
    }
    let (mut m, mut modulus) = (None, None);
    for w in words {
        match w.split_once('=') {
            Some(("m", v)) => m = Some(v.parse::<u32>().map_err(|e| Error::Parse(format!("m: {e}")))?),
            Some(("modulus", v)) => {
                modulus = Some(u32::from_str_radix(v, 16).map_err(|e| Error::Parse(format!("modulus: {e}")))?)
            }
            _ => return Err(Error::Parse(format!("unknown header field {w:?}"))),
        }
    }
    match (m, modulus) {
        (Some(m), Some(p)) => Ok((m, p)),
        _ => Err(Error::Parse("header needs both m and modulus".into())),
    }
}

impl GeneratorFile {
    pub fn to_text(&self, f: &Field) -> String {
        let mut out = format!("SZ m={} modulus={:x}\n", self.m, f.modulus());
        for g in &self.gens {
            out.push_str(&g.to_hex_line(f));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<GeneratorFile> {
        let mut lines = content_lines(text);
        let header = lines.next().ok_or_else(|| Error::Parse("empty generator file".into()))?;
        let (m, modulus) = parse_header(header)?;
        let f = Field::new(m)?;
        if modulus != f.modulus() {
            return Err(Error::Parse(format!(
                "modulus {modulus:x} differs from the built-in {:x} for m = {m}",
                f.modulus()
            )));
        }
        let gens = lines.map(|l| Mat4::parse_hex_line(l, &f)).collect::<Result<Vec<_>>>()?;
        Ok(GeneratorFile { m, gens })
    }

    pub fn read(path: &Path) -> Result<GeneratorFile> {
        GeneratorFile::parse(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path, f: &Field) -> Result<()> {
        std::fs::write(path, self.to_text(f))?;
        Ok(())
    }
}

/// A single matrix, either as a bare line of 16 hex words or as a
/// generator file holding exactly one matrix.
pub fn parse_matrix(text: &str, f: &Field) -> Result<Mat4> {
    let first = content_lines(text).next().ok_or_else(|| Error::Parse("no matrix found".into()))?;
    if first.starts_with("SZ") {
        let file = GeneratorFile::parse(text)?;
        if file.m != f.m() || file.gens.len() != 1 {
            return Err(Error::Parse("expected one matrix over the same field".into()));
        }
        return Ok(file.gens[0]);
    }
    Mat4::parse_hex_line(first, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::szstd::Sz;

    #[test]
    fn round_trip() {
        for m in 1..=5 {
            let sz = Sz::new(m).unwrap();
            let file = GeneratorFile { m, gens: sz.generators() };
            let text = file.to_text(sz.field());
            assert!(text.starts_with(&format!("SZ m={m} modulus=")));
            assert_eq!(GeneratorFile::parse(&text).unwrap(), file);
        }
    }

    #[test]
    fn bad_headers() {
        assert!(GeneratorFile::parse("").is_err());
        assert!(GeneratorFile::parse("SZ m=1\n").is_err());
        assert!(GeneratorFile::parse("SZ m=1 modulus=d\n").is_err());
        assert!(GeneratorFile::parse("GL m=1 modulus=b\n").is_err());
        assert!(GeneratorFile::parse("SZ m=1 modulus=b\n1 2 3\n").is_err());
        assert_eq!(GeneratorFile::parse("# c\nSZ m=1 modulus=b\n\n").unwrap().gens.len(), 0);
    }

    #[test]
    fn single_matrix() {
        let sz = Sz::new(1).unwrap();
        let f = sz.field();
        let g = sz.generators()[1];
        assert_eq!(parse_matrix(&g.to_hex_line(f), f).unwrap(), g);
        let file = GeneratorFile { m: 1, gens: vec![g] };
        assert_eq!(parse_matrix(&file.to_text(f), f).unwrap(), g);
    }
}
