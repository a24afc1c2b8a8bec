//! Plain-text and image formats for signals and STFT maps.
//!
//! Signals are CSV with header `index,re,im` next to a JSON sidecar
//! `{"L", "N", "alpha", "beta"}` (same stem, `.json` extension). STFT maps are
//! written either as a 16-bit big-endian PGM of magnitudes (rows `t_idx`,
//! columns `s_idx`, scaled by the maximum) or as complex CSV
//! `t_idx,s_idx,re,im`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use mildcalc_core::{make_grid, Complex64, FiniteSignal, GridModel, StftMap};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const SIGNAL_HEADER: &str = "index,re,im";
pub const STFT_HEADER: &str = "t_idx,s_idx,re,im";
pub const PGM_MAXVAL: u16 = u16::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridMeta {
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
}

impl From<&GridModel> for GridMeta {
    fn from(g: &GridModel) -> Self {
        Self {
            l: g.l(),
            n: g.n(),
            alpha: g.alpha(),
            beta: g.beta(),
        }
    }
}

impl GridMeta {
    pub fn grid(&self) -> Result<GridModel> {
        let g = make_grid(self.l)?;
        if g.n() != self.n {
            return Err(Error::Config(format!("sidecar N = {} does not match L = {}", self.n, self.l)));
        }
        Ok(g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Pgm,
    Csv,
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    path.with_extension("json")
}

pub(crate) fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub(crate) fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_bytes(path, text.as_bytes())
}

pub fn signal_to_csv(f: &FiniteSignal) -> String {
    let mut out = String::with_capacity(f.len() * 40);
    out.push_str(SIGNAL_HEADER);
    out.push('\n');
    for (k, v) in f.values().iter().enumerate() {
        let _ = writeln!(out, "{k},{},{}", v.re, v.im);
    }
    out
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty())
}

fn number<T: std::str::FromStr>(field: &str, what: &str, file: &str, line: usize) -> Result<T> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::parse(file, line, format!("cannot parse {what} from {field:?}")))
}

fn finite(v: f64, what: &str, file: &str, line: usize) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::parse(file, line, format!("{what} is not finite")))
    }
}

fn expect_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    header: &str,
    file: &str,
) -> Result<()> {
    match lines.next() {
        Some((_, h)) if h.trim() == header => Ok(()),
        Some((line, h)) => Err(Error::parse(file, line, format!("expected header {header:?}, found {h:?}"))),
        None => Err(Error::parse(file, 1, "empty file")),
    }
}

/// Parses signal CSV. Without `grid`, `N` must be a perfect square.
pub fn parse_signal_csv(text: &str, file: &str, grid: Option<GridModel>) -> Result<FiniteSignal> {
    let mut lines = data_lines(text);
    expect_header(&mut lines, SIGNAL_HEADER, file)?;
    let mut values = Vec::new();
    for (line, row) in lines {
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::parse(file, line, format!("expected 3 fields, found {}", fields.len())));
        }
        let idx: usize = number(fields[0], "index", file, line)?;
        if idx != values.len() {
            return Err(Error::parse(file, line, format!("index {idx} out of order, expected {}", values.len())));
        }
        let re = finite(number(fields[1], "re", file, line)?, "re", file, line)?;
        let im = finite(number(fields[2], "im", file, line)?, "im", file, line)?;
        values.push(Complex64::new(re, im));
    }
    let grid = match grid {
        Some(g) => g,
        None => GridModel::from_len(values.len())
            .map_err(|_| Error::parse(file, 0, format!("{} rows is not a square grid size", values.len())))?,
    };
    if values.len() != grid.n() {
        return Err(Error::parse(
            file,
            0,
            format!("found {} rows, grid has N = {}", values.len(), grid.n()),
        ));
    }
    Ok(FiniteSignal::new(grid, values)?)
}

pub fn write_signal(path: &Path, f: &FiniteSignal) -> Result<()> {
    write_bytes(path, signal_to_csv(f).as_bytes())?;
    write_json(&sidecar_path(path), &GridMeta::from(f.grid()))
}

/// Reads a signal CSV, taking the grid from the sidecar when present.
pub fn read_signal(path: &Path) -> Result<FiniteSignal> {
    let side = sidecar_path(path);
    let grid = if side.exists() {
        let meta: GridMeta = serde_json::from_str(&read_text(&side)?)?;
        Some(meta.grid()?)
    } else {
        None
    };
    parse_signal_csv(&read_text(path)?, &path.display().to_string(), grid)
}

/// `(bytes, scale)` for a binary P5 image; `scale` is the value mapped to
/// [`PGM_MAXVAL`].
pub fn encode_pgm(rows: usize, cols: usize, mags: &[f64]) -> (Vec<u8>, f64) {
    assert_eq!(mags.len(), rows * cols);
    let scale = mags.iter().copied().fold(0.0, f64::max);
    let header = format!("P5\n{cols} {rows}\n{PGM_MAXVAL}\n");
    let mut bytes = Vec::with_capacity(header.len() + 2 * mags.len());
    bytes.extend_from_slice(header.as_bytes());
    for m in mags {
        let v = if scale > 0.0 {
            (m / scale * PGM_MAXVAL as f64).round().clamp(0.0, PGM_MAXVAL as f64) as u16
        } else {
            0
        };
        bytes.extend_from_slice(&v.to_be_bytes());
    }
    (bytes, scale)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pgm {
    pub rows: usize,
    pub cols: usize,
    pub maxval: u16,
    pub pixels: Vec<u16>,
}

pub fn decode_pgm(bytes: &[u8], file: &str) -> Result<Pgm> {
    // four whitespace-separated header tokens, then one whitespace byte
    let mut tokens = Vec::new();
    let mut pos = 0;
    while tokens.len() < 4 {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(Error::parse(file, 1, "truncated PGM header"));
        }
        tokens.push(String::from_utf8_lossy(&bytes[start..pos]).into_owned());
    }
    pos += 1;
    if tokens[0] != "P5" {
        return Err(Error::parse(file, 1, format!("expected P5, found {}", tokens[0])));
    }
    let cols: usize = number(&tokens[1], "width", file, 2)?;
    let rows: usize = number(&tokens[2], "height", file, 2)?;
    let maxval: u16 = number(&tokens[3], "maxval", file, 3)?;
    let need = 2 * rows * cols;
    let body = bytes.get(pos..).unwrap_or(&[]);
    if maxval < 256 || body.len() != need {
        return Err(Error::parse(file, 4, format!("expected {need} bytes of 16-bit data, found {}", body.len())));
    }
    let pixels = body.chunks_exact(2).map(|c| u16::from_be_bytes([c[0], c[1]])).collect();
    Ok(Pgm {
        rows,
        cols,
        maxval,
        pixels,
    })
}

pub fn stft_to_csv(map: &StftMap) -> String {
    let n = map.grid().n();
    let mut out = String::with_capacity(n * n * 48);
    out.push_str(STFT_HEADER);
    out.push('\n');
    for t in 0..n {
        for (s, v) in map.row(t).iter().enumerate() {
            let _ = writeln!(out, "{t},{s},{},{}", v.re, v.im);
        }
    }
    out
}

/// Parses `t_idx,s_idx,re,im` rows into a dense `N × N` row-major matrix.
pub fn parse_stft_csv(text: &str, file: &str, n: usize) -> Result<Vec<Complex64>> {
    let mut lines = data_lines(text);
    expect_header(&mut lines, STFT_HEADER, file)?;
    let mut values = vec![Complex64::new(f64::NAN, f64::NAN); n * n];
    let mut count = 0;
    for (line, row) in lines {
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != 4 {
            return Err(Error::parse(file, line, format!("expected 4 fields, found {}", fields.len())));
        }
        let t: usize = number(fields[0], "t_idx", file, line)?;
        let s: usize = number(fields[1], "s_idx", file, line)?;
        if t >= n || s >= n {
            return Err(Error::parse(file, line, format!("index ({t}, {s}) outside {n} x {n}")));
        }
        let re = finite(number(fields[2], "re", file, line)?, "re", file, line)?;
        let im = finite(number(fields[3], "im", file, line)?, "im", file, line)?;
        values[t * n + s] = Complex64::new(re, im);
        count += 1;
    }
    if count != n * n || values.iter().any(|v| v.re.is_nan()) {
        return Err(Error::parse(file, 0, format!("expected {} distinct entries, found {count}", n * n)));
    }
    Ok(values)
}

/// JSON sidecar of an exported STFT.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StftSidecar {
    #[serde(flatten)]
    pub grid: GridMeta,
    pub format: Format,
    pub window: String,
    /// Magnitude mapped to the PGM maximum (also the map's max modulus).
    pub scale: f64,
    pub maxval: u16,
    pub rows: String,
    pub cols: String,
}

/// Writes `map` to `path` in `format`, with a sidecar next to it.
pub fn write_stft(path: &Path, map: &StftMap, format: Format, window: &str) -> Result<StftSidecar> {
    let n = map.grid().n();
    let scale = match format {
        Format::Pgm => {
            let (bytes, scale) = encode_pgm(n, n, &map.magnitudes());
            write_bytes(path, &bytes)?;
            scale
        }
        Format::Csv => {
            write_bytes(path, stft_to_csv(map).as_bytes())?;
            map.max_abs()
        }
    };
    let side = StftSidecar {
        grid: GridMeta::from(map.grid()),
        format,
        window: window.to_string(),
        scale,
        maxval: PGM_MAXVAL,
        rows: "t_idx".into(),
        cols: "s_idx".into(),
    };
    write_json(&sidecar_path(path), &side)?;
    Ok(side)
}
