//! Ensemble files and autocorrelation CSV.
//!
//! An ensemble file is one line of JSON (the header), a `\n`, then the
//! realizations as row-major `M × N` pairs of little-endian `f64` (`re`, `im`).

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use mildcalc_core::gsp::{CovarianceKind, GENERATOR};
use mildcalc_core::{Autocorrelation, Complex64, CovarianceSpec, FiniteSignal, GridModel, GspEnsemble};
use serde::{Deserialize, Serialize};

use crate::formats::{read_text, write_bytes, GridMeta};
use crate::{Error, Result};

pub const ENSEMBLE_FORMAT: &str = "mildcalc-ensemble";
pub const AUTOCORRELATION_HEADER: &str = "row,col,re,im";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpecRecord {
    White { variance: f64 },
    Stationary { symbol: Vec<Complex64> },
    General { matrix: Vec<Complex64> },
}

impl From<&CovarianceSpec> for SpecRecord {
    fn from(spec: &CovarianceSpec) -> Self {
        match spec.kind() {
            CovarianceKind::White { variance } => SpecRecord::White { variance: *variance },
            CovarianceKind::Stationary { symbol } => SpecRecord::Stationary {
                symbol: symbol.values().to_vec(),
            },
            CovarianceKind::General { matrix } => SpecRecord::General { matrix: matrix.clone() },
        }
    }
}

impl SpecRecord {
    pub fn to_spec(&self, grid: GridModel) -> Result<CovarianceSpec> {
        Ok(match self {
            SpecRecord::White { variance } => CovarianceSpec::white(grid, *variance)?,
            SpecRecord::Stationary { symbol } => {
                CovarianceSpec::stationary(FiniteSignal::new(grid, symbol.clone())?)?
            }
            SpecRecord::General { matrix } => CovarianceSpec::general(grid, matrix.clone())?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleHeader {
    pub format: String,
    pub grid: GridMeta,
    #[serde(rename = "M")]
    pub m: usize,
    pub seed: u64,
    pub generator: String,
    pub spec: SpecRecord,
    /// Number of Fourier transforms applied to the simulated rows (mod 4).
    pub fourier_power: u8,
    pub dtype: String,
    pub layout: String,
}

impl EnsembleHeader {
    pub fn new(e: &GspEnsemble) -> Self {
        Self {
            format: ENSEMBLE_FORMAT.into(),
            grid: GridMeta::from(e.grid()),
            m: e.m(),
            seed: e.seed(),
            generator: GENERATOR.into(),
            spec: SpecRecord::from(e.spec()),
            fourier_power: e.fourier_power(),
            dtype: "f64le re, f64le im".into(),
            layout: "row-major M x N".into(),
        }
    }
}

pub fn encode_ensemble(e: &GspEnsemble) -> Result<Vec<u8>> {
    let header = serde_json::to_string(&EnsembleHeader::new(e))?;
    let mut out = Vec::with_capacity(header.len() + 1 + 16 * e.realizations().len());
    out.extend_from_slice(header.as_bytes());
    out.push(b'\n');
    for v in e.realizations() {
        out.extend_from_slice(&v.re.to_le_bytes());
        out.extend_from_slice(&v.im.to_le_bytes());
    }
    Ok(out)
}

pub fn decode_ensemble(bytes: &[u8], file: &str) -> Result<(EnsembleHeader, GspEnsemble)> {
    let split = bytes
        .iter()
        .position(|b| *b == b'\n')
        .ok_or_else(|| Error::parse(file, 1, "missing header line"))?;
    let header: EnsembleHeader = serde_json::from_slice(&bytes[..split])
        .map_err(|e| Error::parse(file, 1, format!("bad header: {e}")))?;
    if header.format != ENSEMBLE_FORMAT {
        return Err(Error::parse(file, 1, format!("unknown format {:?}", header.format)));
    }
    let grid = header.grid.grid()?;
    let payload = &bytes[split + 1..];
    let count = header.m * grid.n();
    if payload.len() != 16 * count {
        return Err(Error::parse(
            file,
            2,
            format!("payload has {} bytes, header implies {}", payload.len(), 16 * count),
        ));
    }
    let values = payload
        .chunks_exact(16)
        .map(|c| {
            let re = f64::from_le_bytes(c[..8].try_into().unwrap());
            let im = f64::from_le_bytes(c[8..].try_into().unwrap());
            Complex64::new(re, im)
        })
        .collect();
    let spec = header.spec.to_spec(grid)?;
    let e = GspEnsemble::from_rows(spec, header.m, header.seed, header.fourier_power, values)?;
    Ok((header, e))
}

pub fn write_ensemble(path: &Path, e: &GspEnsemble) -> Result<()> {
    write_bytes(path, &encode_ensemble(e)?)
}

pub fn read_ensemble(path: &Path) -> Result<GspEnsemble> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(decode_ensemble(&bytes, &path.display().to_string())?.1)
}

/// Long-format matrix CSV, one `row,col,re,im` line per entry.
pub fn autocorrelation_to_csv(a: &Autocorrelation) -> String {
    let n = a.grid().n();
    let mut out = String::with_capacity(n * n * 48);
    out.push_str(AUTOCORRELATION_HEADER);
    out.push('\n');
    for i in 0..n {
        for j in 0..n {
            let v = a.get(i, j);
            let _ = writeln!(out, "{i},{j},{},{}", v.re, v.im);
        }
    }
    out
}

pub fn parse_autocorrelation_csv(text: &str, file: &str, grid: GridModel) -> Result<Autocorrelation> {
    let n = grid.n();
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim_end_matches('\r')));
    match lines.next() {
        Some((_, h)) if h.trim() == AUTOCORRELATION_HEADER => {}
        _ => return Err(Error::parse(file, 1, format!("expected header {AUTOCORRELATION_HEADER:?}"))),
    }
    let mut m = vec![Complex64::new(0.0, 0.0); n * n];
    let mut seen = vec![false; n * n];
    for (line, row) in lines.filter(|(_, l)| !l.trim().is_empty()) {
        let f: Vec<&str> = row.split(',').collect();
        let bad = |what: &str| Error::parse(file, line, format!("cannot parse {what}"));
        if f.len() != 4 {
            return Err(Error::parse(file, line, format!("expected 4 fields, found {}", f.len())));
        }
        let i: usize = f[0].trim().parse().map_err(|_| bad("row"))?;
        let j: usize = f[1].trim().parse().map_err(|_| bad("col"))?;
        let re: f64 = f[2].trim().parse().map_err(|_| bad("re"))?;
        let im: f64 = f[3].trim().parse().map_err(|_| bad("im"))?;
        if i >= n || j >= n {
            return Err(Error::parse(file, line, format!("entry ({i}, {j}) outside {n} x {n}")));
        }
        m[i * n + j] = Complex64::new(re, im);
        seen[i * n + j] = true;
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::parse(file, 0, "matrix is incomplete"));
    }
    Ok(Autocorrelation::new(grid, m)?)
}

pub fn write_autocorrelation(path: &Path, a: &Autocorrelation) -> Result<()> {
    write_bytes(path, autocorrelation_to_csv(a).as_bytes())
}

pub fn read_autocorrelation(path: &Path, grid: GridModel) -> Result<Autocorrelation> {
    parse_autocorrelation_csv(&read_text(path)?, &path.display().to_string(), grid)
}
