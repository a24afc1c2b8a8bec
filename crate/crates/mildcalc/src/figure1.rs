//! Four spectrograms showing what periodization and sampling do in the
//! time-frequency plane: the original signal, its periodization, its samples,
//! and the sampled periodization. Near the origin all four agree with the
//! original; away from it copies appear along the time axis (periodization)
//! and the frequency axis (sampling).

use std::fs;
use std::path::Path;

use mildcalc_core::mild::{periodize, sample};
use mildcalc_core::{gaussian, make_grid, stft, tf_shift, FiniteSignal, GridModel, StftMap, TfPoint};
use serde::{Deserialize, Serialize};

use crate::formats::{write_json, write_stft, Format, GridMeta};
use crate::{Error, Result};

/// Central-region agreement required between panels 1 and 4.
pub const CENTRAL_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct Figure1Config {
    pub l: usize,
    /// Defaults to `N/4`.
    pub periodize_stride: Option<usize>,
    pub sample_stride: usize,
    /// Physical TF shift `(t, s)` applied to the Gaussian.
    pub shift: (f64, f64),
    /// Analysis window; the Gaussian when `None`.
    pub window: Option<FiniteSignal>,
}

impl Default for Figure1Config {
    fn default() -> Self {
        Self {
            l: 32,
            periodize_stride: None,
            sample_stride: 4,
            shift: (0.0, 0.0),
            window: None,
        }
    }
}

pub const PANEL_NAMES: [&str; 4] = ["original", "periodized", "sampled", "sampled_periodized"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Replica {
    pub panel: usize,
    pub t: f64,
    pub s: f64,
    /// `|panel(t, s)| / |original at the signal center|`.
    pub ratio: f64,
    pub found: bool,
}

#[derive(Debug, Clone)]
pub struct Figure1 {
    pub grid: GridModel,
    pub periodize_stride: usize,
    pub sample_stride: usize,
    pub shift: TfPoint,
    pub panels: [StftMap; 4],
    pub central_radius: f64,
    /// `max |P4 − P1| / max |P1|` over `max(|t|, |s|) ≤ central_radius`,
    /// computed on magnitudes.
    pub central_deviation: f64,
    pub replicas: Vec<Replica>,
}

fn reach(grid: &GridModel, t: usize, s: usize) -> f64 {
    grid.shift_coord(t).abs().max(grid.shift_coord(s).abs())
}

pub fn figure1(cfg: &Figure1Config) -> Result<Figure1> {
    let grid = make_grid(cfg.l)?;
    let n = grid.n();
    let rp = cfg.periodize_stride.unwrap_or(n / 4);
    let rs = cfg.sample_stride;
    if rp == 0 || rs == 0 || !rp.is_multiple_of(rs) {
        return Err(Error::Config(format!(
            "sample stride {rs} must divide periodization stride {rp}"
        )));
    }
    let window = match &cfg.window {
        Some(w) => {
            if w.grid() != &grid {
                return Err(mildcalc_core::Error::GridMismatch {
                    left: n,
                    right: w.grid().n(),
                }
                .into());
            }
            w.clone()
        }
        None => gaussian(&grid),
    };
    let l = grid.l() as f64;
    let shift = TfPoint::new(
        &grid,
        (cfg.shift.0 * l).round() as i64,
        (cfg.shift.1 * l).round() as i64,
    );
    let f = tf_shift(&gaussian(&grid), shift);
    let per = periodize(&f, rp)?;
    // Riemann weight rs keeps sampled spectra on the original scale
    let smp = sample(&f, rs)?.scale_real(rs as f64);
    let both = sample(&per, rs)?.scale_real(rs as f64);
    let panels = [
        stft(&f, &window)?,
        stft(&per, &window)?,
        stft(&smp, &window)?,
        stft(&both, &window)?,
    ];
    let central_radius = grid.beta() / 8.0;
    let mut peak: f64 = 0.0;
    let mut dev: f64 = 0.0;
    for t in 0..n {
        if grid.shift_coord(t).abs() > central_radius {
            continue;
        }
        let (p1, p4) = (panels[0].row(t), panels[3].row(t));
        for s in 0..n {
            if reach(&grid, t, s) <= central_radius {
                peak = peak.max(p1[s].norm());
                dev = dev.max((p4[s].norm() - p1[s].norm()).abs());
            }
        }
    }
    let central_deviation = if peak > 0.0 { dev / peak } else { dev };

    let center = panels[0].get(shift).norm();
    let mut replicas = Vec::new();
    let mut probe = |panel: usize, dt: usize, ds: usize| {
        let at = TfPoint {
            t_idx: (shift.t_idx + dt) % n,
            s_idx: (shift.s_idx + ds) % n,
        };
        let ratio = if center > 0.0 { panels[panel].get(at).norm() / center } else { 0.0 };
        let (t, s) = at.coords(&grid);
        replicas.push(Replica {
            panel: panel + 1,
            t,
            s,
            ratio,
            found: ratio > 0.5,
        });
    };
    if rp < n {
        probe(1, rp, 0);
        probe(1, n - rp, 0);
    }
    let dual = n / rs;
    if dual < n {
        probe(2, 0, dual);
        probe(2, 0, n - dual);
    }
    Ok(Figure1 {
        grid,
        periodize_stride: rp,
        sample_stride: rs,
        shift,
        panels,
        central_radius,
        central_deviation,
        replicas,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PanelRecord {
    pub name: String,
    pub file: String,
    pub scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Figure1Report {
    pub grid: GridMeta,
    pub periodize_stride: usize,
    pub sample_stride: usize,
    pub signal: String,
    pub shift: [f64; 2],
    pub window: String,
    pub format: Format,
    pub central_radius: f64,
    pub central_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub replicas: Vec<Replica>,
    pub panels: Vec<PanelRecord>,
}

impl Figure1 {
    pub fn passed(&self) -> bool {
        self.central_deviation < CENTRAL_TOLERANCE && self.replicas.iter().all(|r| r.found)
    }

    /// Writes the four panels and `figure1.json` into `dir`.
    pub fn write(&self, dir: &Path, format: Format, window: &str) -> Result<Figure1Report> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let ext = match format {
            Format::Pgm => "pgm",
            Format::Csv => "csv",
        };
        let mut panels = Vec::new();
        for (k, (map, name)) in self.panels.iter().zip(PANEL_NAMES).enumerate() {
            let file = format!("panel{}_{name}.{ext}", k + 1);
            let side = write_stft(&dir.join(&file), map, format, window)?;
            panels.push(PanelRecord {
                name: name.into(),
                file,
                scale: side.scale,
            });
        }
        let (t, s) = self.shift.coords(&self.grid);
        let report = Figure1Report {
            grid: GridMeta::from(&self.grid),
            periodize_stride: self.periodize_stride,
            sample_stride: self.sample_stride,
            signal: "gaussian".into(),
            shift: [t, s],
            window: window.into(),
            format,
            central_radius: self.central_radius,
            central_deviation: self.central_deviation,
            tolerance: CENTRAL_TOLERANCE,
            passed: self.passed(),
            replicas: self.replicas.clone(),
            panels,
        };
        write_json(&dir.join("figure1.json"), &report)?;
        Ok(report)
    }
}
