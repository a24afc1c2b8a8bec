//! Registry of invariant checks, grouped into named suites.
//!
//! Every check measures one number, compares it with a tolerance and records
//! the outcome. Internal errors become failed checks with the error text in
//! `note`, so a report always lists every check that was attempted.

use mildcalc_core::grid::TfPoint;
use mildcalc_core::gsp::{spectral_autocorr_deviation, CovarianceSpec};
use mildcalc_core::mild::{
    atomic_decompose, box_radii, gabor_partial_sum_tail, mild_distance, periodize, poisson_check,
    s0_norm, sample, sampling_duality_constant, shannon_reconstruct, sop_norm, tf_box, Bupu,
    ReconstructionFilter,
};
use mildcalc_core::{
    autocorrelation, convolve, dirac_comb, dual_window, fourier, fourier_direct, frame_bounds,
    gabor_analysis, gabor_synthesis, gaussian, inner, inverse_fourier, make_grid, multiply,
    pairing, reflect, simulate, spectral_process, tf_shift, wss_deviation, AtomSource, Complex64,
    FiniteSignal, GaborSystem, GridModel,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::figure1::{figure1, Figure1Config, CENTRAL_TOLERANCE};
use crate::{Error, Result};

pub const SUITES: [&str; 11] = [
    "poisson",
    "fourier",
    "comb",
    "sampling",
    "convolution",
    "gabor",
    "atomic",
    "mild",
    "figure1",
    "shannon",
    "gsp",
];

/// Grid parameter used by the figure1 suite regardless of `--L`.
pub const FIGURE1_L: usize = 32;
/// Largest `L` used by the gsp suite.
pub const GSP_MAX_L: usize = 8;
/// Largest `L` used by the atomic suite.
pub const ATOMIC_MAX_L: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Below,
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">")]
    Above,
}

impl Relation {
    fn holds(self, measured: f64, tolerance: f64) -> bool {
        match self {
            Relation::Below => measured < tolerance,
            Relation::AtMost => measured <= tolerance,
            Relation::Above => measured > tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: String,
    pub name: String,
    #[serde(rename = "L")]
    pub l: usize,
    /// `null` when the check could not run.
    #[serde(deserialize_with = "nullable_f64")]
    pub measured: f64,
    pub relation: Relation,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

fn nullable_f64<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    #[serde(rename = "L")]
    pub l: usize,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

struct Suite<'a> {
    name: &'a str,
    l: usize,
    out: Vec<CheckResult>,
}

impl Suite<'_> {
    fn record(&mut self, name: &str, measured: f64, relation: Relation, tolerance: f64, note: Option<String>) {
        self.out.push(CheckResult {
            suite: self.name.to_string(),
            name: name.to_string(),
            l: self.l,
            measured,
            relation,
            tolerance,
            passed: relation.holds(measured, tolerance),
            note,
        });
    }

    fn below(&mut self, name: &str, measured: f64, tolerance: f64) {
        self.record(name, measured, Relation::Below, tolerance, None);
    }

    /// Runs `f`; an error becomes a failed check named `name`.
    fn attempt(&mut self, name: &str, f: impl FnOnce(&mut Self) -> Result<()>) {
        if let Err(e) = f(self) {
            self.record(name, f64::NAN, Relation::Below, 0.0, Some(e.to_string()));
        }
    }
}

/// Checks `l` against the constraints shared by all suites.
pub fn validate_l(l: usize) -> Result<()> {
    if !(4..=64).contains(&l) || !l.is_multiple_of(4) {
        return Err(Error::Config(format!("--L must be a multiple of 4 in 4..=64, got {l}")));
    }
    Ok(())
}

pub fn run(suite: &str, l: usize, seed: u64) -> Result<VerifyReport> {
    validate_l(l)?;
    let selected: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&suite) {
        vec![suite]
    } else {
        return Err(Error::Config(format!(
            "unknown suite {suite:?}; expected one of all, {}",
            SUITES.join(", ")
        )));
    };
    let mut checks = Vec::new();
    for name in selected {
        checks.extend(run_suite(name, l, seed)?);
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    Ok(VerifyReport {
        suite: suite.to_string(),
        l,
        seed,
        failed: checks.len() - passed,
        passed,
        checks,
    })
}

fn run_suite(name: &str, l: usize, seed: u64) -> Result<Vec<CheckResult>> {
    let suite_l = match name {
        "figure1" => FIGURE1_L,
        "gsp" => l.min(GSP_MAX_L),
        "atomic" => l.min(ATOMIC_MAX_L),
        _ => l,
    };
    let mut s = Suite {
        name,
        l: suite_l,
        out: Vec::new(),
    };
    let grid = make_grid(suite_l)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match name {
        "poisson" => poisson_suite(&mut s, grid, &mut rng),
        "fourier" => fourier_suite(&mut s, grid, &mut rng),
        "comb" => comb_suite(&mut s, grid),
        "sampling" => sampling_suite(&mut s, grid, &mut rng),
        "convolution" => convolution_suite(&mut s, grid, &mut rng),
        "gabor" => gabor_suite(&mut s, grid, &mut rng),
        "atomic" => atomic_suite(&mut s, grid, &mut rng),
        "mild" => mild_suite(&mut s, grid, &mut rng),
        "figure1" => figure1_suite(&mut s),
        "shannon" => shannon_suite(&mut s, grid),
        "gsp" => gsp_suite(&mut s, grid, seed),
        _ => unreachable!(),
    }
    Ok(s.out)
}

/// Uniform complex entries in the unit square.
pub fn random_signal(grid: GridModel, rng: &mut impl Rng) -> FiniteSignal {
    FiniteSignal::from_fn(grid, |_| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

/// Weighted sum of three TF-shifted Gaussians with shifts inside `|t|, |s| ≤ β/4`.
pub fn random_smooth_signal(grid: GridModel, rng: &mut impl Rng) -> FiniteSignal {
    let g = gaussian(&grid);
    let reach = (grid.n() / 4) as i64;
    let mut out = FiniteSignal::zeros(grid);
    for _ in 0..3 {
        let t = rng.random_range(-reach..=reach);
        let s = rng.random_range(-reach..=reach);
        let w = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        out = out
            .add(&tf_shift(&g, TfPoint::new(&grid, t, s)).scale(w))
            .expect("same grid");
    }
    out
}

fn rel(diff: f64, scale: f64) -> f64 {
    diff / scale.max(f64::MIN_POSITIVE)
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|r| n.is_multiple_of(*r)).collect()
}

pub fn theta() -> f64 {
    (-20i32..=20).map(|k| (-std::f64::consts::PI * (k * k) as f64).exp()).sum()
}

fn poisson_suite(s: &mut Suite, grid: GridModel, rng: &mut ChaCha8Rng) {
    let p = poisson_check(&gaussian(&grid));
    s.below("gaussian_deviation", p.deviation, 1e-12);
    s.below("gaussian_theta_value", (p.time_sum - Complex64::new(theta(), 0.0)).norm(), 1e-12);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let f = random_smooth_signal(grid, rng);
        let p = poisson_check(&f);
        worst = worst.max(rel(p.deviation, p.time_sum.norm().max(1.0)));
    }
    s.below("random_smooth_deviation", worst, 1e-12);
}

fn fourier_suite(s: &mut Suite, grid: GridModel, rng: &mut ChaCha8Rng) {
    let f = random_signal(grid, rng);
    let h = random_signal(grid, rng);
    let ff = fourier(&f);
    let direct = fourier_direct(&f);
    s.below("fast_vs_direct", rel(ff.max_abs_diff(&direct).unwrap(), direct.max_abs()), 1e-12);
    let back = inverse_fourier(&ff);
    s.below("inversion", rel(back.max_abs_diff(&f).unwrap(), f.max_abs()), 1e-12);
    let lhs = inner(&ff, &fourier(&h)).unwrap();
    let rhs = inner(&f, &h).unwrap();
    s.below("plancherel", rel((lhs - rhs).norm(), f.l2_norm() * h.l2_norm()), 1e-12);
    let lhs = pairing(&fourier(&h), &f).unwrap();
    let rhs = pairing(&h, &ff).unwrap();
    s.below("fundamental_relationship", rel((lhs - rhs).norm(), f.l2_norm() * h.l2_norm()), 1e-12);
    let parity = fourier(&ff).max_abs_diff(&reflect(&f)).unwrap();
    s.below("square_is_reflection", rel(parity, f.max_abs()), 1e-12);
    let g = gaussian(&grid);
    s.below("gaussian_self_dual", rel(fourier(&g).max_abs_diff(&g).unwrap(), g.max_abs()), 1e-12);
}

fn comb_suite(s: &mut Suite, grid: GridModel) {
    let n = grid.n();
    let mut support: f64 = 0.0;
    let mut amplitude: f64 = 0.0;
    for r in divisors(n) {
        let spec = fourier(&dirac_comb(&grid, r).unwrap());
        let height = (n / r) as f64;
        for (m, v) in spec.values().iter().enumerate() {
            if grid.is_comb_node(m, n / r) {
                amplitude = amplitude.max(rel((v - height).norm(), height));
            } else {
                support = support.max(rel(v.norm(), height));
            }
        }
    }
    s.below("dual_comb_support", support, 1e-12);
    s.below("dual_comb_amplitude", amplitude, 1e-12);
}

fn sampling_suite(s: &mut Suite, grid: GridModel, rng: &mut ChaCha8Rng) {
    let n = grid.n();
    let f = random_signal(grid, rng);
    let mut commute: f64 = 0.0;
    let divs = divisors(n);
    for &rs in &divs {
        for &rp in divs.iter().filter(|rp| *rp % rs == 0) {
            let a = sample(&periodize(&f, rp).unwrap(), rs).unwrap();
            let b = periodize(&sample(&f, rs).unwrap(), rp).unwrap();
            commute = commute.max(a.max_abs_diff(&b).unwrap());
        }
    }
    s.below("sample_periodize_commute", commute, 1e-13);
    let fhat = fourier(&f);
    let mut duality: f64 = 0.0;
    for &r in &divs {
        let lhs = fourier(&sample(&f, r).unwrap());
        let rhs = periodize(&fhat, n / r).unwrap().scale_real(sampling_duality_constant(r));
        duality = duality.max(rel(lhs.max_abs_diff(&rhs).unwrap(), rhs.max_abs()));
    }
    s.below("sampling_duality", duality, 1e-10);
}

fn convolution_suite(s: &mut Suite, grid: GridModel, rng: &mut ChaCha8Rng) {
    let mut forward: f64 = 0.0;
    let mut backward: f64 = 0.0;
    for _ in 0..50 {
        let f = random_signal(grid, rng);
        let h = random_signal(grid, rng);
        let (fh, hh) = (fourier(&f), fourier(&h));
        let a = fourier(&convolve(&f, &h).unwrap());
        let b = multiply(&fh, &hh).unwrap();
        forward = forward.max(rel(a.max_abs_diff(&b).unwrap(), b.max_abs()));
        let a = fourier(&multiply(&f, &h).unwrap());
        let b = convolve(&fh, &hh).unwrap();
        backward = backward.max(rel(a.max_abs_diff(&b).unwrap(), b.max_abs()));
    }
    s.below("convolution_to_product", forward, 1e-10);
    s.below("product_to_convolution", backward, 1e-10);
}

fn gabor_suite(s: &mut Suite, grid: GridModel, rng: &mut ChaCha8Rng) {
    let l = grid.l();
    s.attempt("redundancy2_dual", |s| {
        let mut sys = GaborSystem::new(gaussian(&grid), l / 2, l)?;
        let report = dual_window(&mut sys)?;
        s.below("redundancy2_dual_residual", report.residual, 1e-12);
        let mut recon: f64 = 0.0;
        for _ in 0..3 {
            let f = random_signal(grid, rng);
            let c = gabor_analysis(&f, &sys, AtomSource::Dual)?;
            let back = gabor_synthesis(&c, &sys, AtomSource::Window)?;
            recon = recon.max(rel(back.sub(&f)?.l2_norm(), f.l2_norm()));
        }
        s.below("redundancy2_reconstruction", recon, 1e-8);
        let f = gaussian(&grid);
        let tails: Vec<f64> = box_radii(&sys)
            .iter()
            .map(|r| gabor_partial_sum_tail(&f, &sys, &tf_box(&sys, *r)))
            .collect::<std::result::Result<_, _>>()?;
        let rise = tails.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
        s.record("tail_nonincreasing", rise, Relation::AtMost, 1e-12, None);
        s.below("tail_full_lattice", *tails.last().unwrap(), 1e-6);
        Ok(())
    });
    let mut critical = GaborSystem::new(gaussian(&grid), l, l).expect("valid strides");
    let fb = frame_bounds(&critical);
    let flagged = dual_window(&mut critical).is_err();
    s.record(
        "redundancy1_condition",
        fb.condition.min(f64::MAX),
        Relation::Above,
        1e8,
        Some(format!("dual_window rejected: {flagged}")),
    );
    s.record("redundancy1_rejected", flagged as u8 as f64, Relation::Above, 0.5, None);
}

fn atomic_suite(s: &mut Suite, grid: GridModel, rng: &mut ChaCha8Rng) {
    s.attempt("decomposition", |s| {
        let bupu = Bupu::new(grid, grid.l())?;
        let window = gaussian(&grid);
        let mut recon: f64 = 0.0;
        let mut ratio: f64 = 0.0;
        for _ in 0..10 {
            let f = random_signal(grid, rng);
            let d = atomic_decompose(&f, &bupu)?;
            recon = recon.max(d.reconstruction_error);
            ratio = ratio.max(d.norm_sum / s0_norm(&f, &window)?);
        }
        s.below("reconstruction", recon, 1e-10);
        s.record(
            "norm_sum_ratio",
            ratio,
            Relation::Below,
            f64::MAX,
            Some("max of norm_sum / s0_norm(f); reported, only finiteness is required".into()),
        );
        Ok(())
    });
}

fn comb_sequence(grid: GridModel) -> Vec<(usize, f64)> {
    let l = grid.l();
    let mut strides = vec![l, l / 2, l / 4, 1];
    strides.dedup();
    let one = FiniteSignal::constant(grid, Complex64::new(1.0, 0.0));
    let g = gaussian(&grid);
    strides
        .into_iter()
        .map(|r| {
            let sigma = dirac_comb(&grid, r).unwrap().scale_real(r as f64 * grid.alpha());
            (r, mild_distance(&sigma, &one, &g, 2.0).unwrap())
        })
        .collect()
}

fn mild_suite(s: &mut Suite, grid: GridModel, rng: &mut ChaCha8Rng) {
    let g = gaussian(&grid);
    let mut excess = f64::NEG_INFINITY;
    for _ in 0..5 {
        let f = random_signal(grid, rng);
        let h = random_signal(grid, rng);
        let sup = sop_norm(&f.sub(&h).unwrap(), &g).unwrap();
        for r in [0.5, 1.0, 2.0, grid.beta()] {
            excess = excess.max(mild_distance(&f, &h, &g, r).unwrap() - sup);
        }
    }
    s.record("distance_below_sup_norm", excess, Relation::AtMost, 0.0, None);
    let seq = comb_sequence(grid);
    let worst_step = seq.windows(2).map(|w| w[1].1 - w[0].1).fold(f64::NEG_INFINITY, f64::max);
    let trace = seq.iter().map(|(r, d)| format!("r={r}: {d:.3e}")).collect::<Vec<_>>().join(", ");
    s.record("comb_sequence_strictly_decreasing", worst_step, Relation::Below, 0.0, Some(trace));
    let moved = tf_shift(&g, TfPoint::new(&grid, grid.l() as i64 / 2, 0));
    s.record(
        "shifted_gaussian_differs",
        mild_distance(&g, &moved, &g, 1.0).unwrap(),
        Relation::Above,
        0.0,
        None,
    );
}

fn figure1_suite(s: &mut Suite) {
    s.attempt("figure1", |s| {
        let fig = figure1(&Figure1Config::default())?;
        s.below("central_deviation", fig.central_deviation, CENTRAL_TOLERANCE);
        let worst = fig.replicas.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
        s.record(
            "replicas_present",
            worst,
            Relation::Above,
            0.5,
            Some(format!("{} predicted copies", fig.replicas.len())),
        );
        Ok(())
    });
}

/// Spectrum of the Gaussian cut to `|m − c| ≤ band`, back in time.
pub fn band_limited_gaussian(grid: GridModel, band: usize) -> FiniteSignal {
    let spec = fourier(&gaussian(&grid));
    let cut = FiniteSignal::from_fn(grid, |m| {
        if grid.offset(m).unsigned_abs() as usize <= band {
            spec.values()[m]
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    inverse_fourier(&cut)
}

fn shannon_suite(s: &mut Suite, grid: GridModel) {
    let n = grid.n();
    let band = (n / 50).max(1);
    let divs = divisors(n);
    let good = *divs.iter().rfind(|r| n / **r >= 4 * band + 2).unwrap_or(&1);
    let bad = divs.iter().copied().find(|r| n / r < 2 * band + 1).unwrap_or(n);
    let f = band_limited_gaussian(grid, band);
    s.attempt("oversampled_recovery", |s| {
        let back = shannon_reconstruct(&sample(&f, good)?, good, band, ReconstructionFilter::Box)?;
        s.record(
            "oversampled_recovery",
            rel(back.max_abs_diff(&f)?, f.max_abs()),
            Relation::Below,
            1e-10,
            Some(format!("band {band}, stride {good}")),
        );
        Ok(())
    });
    let raised = matches!(
        shannon_reconstruct(&sample(&f, bad).unwrap(), bad, band, ReconstructionFilter::Box),
        Err(mildcalc_core::Error::Aliasing { .. })
    );
    s.record(
        "undersampled_aliasing_raised",
        raised as u8 as f64,
        Relation::Above,
        0.5,
        Some(format!("band {band}, stride {bad}")),
    );
}

/// `B Bᴴ / N` for a seeded random `B`.
pub fn random_covariance(grid: GridModel, seed: u64) -> Vec<Complex64> {
    let n = grid.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b: Vec<Complex64> = (0..n * n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let mut m = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in i..n {
            let v: Complex64 = (0..n).map(|k| b[i * n + k] * b[j * n + k].conj()).sum::<Complex64>() / n as f64;
            m[i * n + j] = v;
            m[j * n + i] = v.conj();
        }
    }
    m
}

/// Strictly positive symbol: the Gaussian lifted by 0.1.
pub fn smooth_symbol(grid: GridModel) -> FiniteSignal {
    FiniteSignal::from_fn(grid, |m| Complex64::new(gaussian(&grid).values()[m].re + 0.1, 0.0))
}

fn gsp_suite(s: &mut Suite, grid: GridModel, seed: u64) {
    s.attempt("gsp", |s| {
        let specs = [
            ("white", CovarianceSpec::white(grid, 1.0)?),
            ("stationary", CovarianceSpec::stationary(smooth_symbol(grid))?),
            ("general", CovarianceSpec::general(grid, random_covariance(grid, seed ^ 0x5eed))?),
        ];
        for (kind, spec) in &specs {
            let e = simulate(spec, 64, seed)?;
            let dev = spectral_autocorr_deviation(&e, &spectral_process(&e))?;
            s.below(&format!("spectral_identity_{kind}"), dev, 1e-10);
        }
        let exact = wss_deviation(&specs[1].1.exact_covariance());
        s.below("circulant_diag_invariance", exact.diag_invariance, 1e-12);
        s.below("circulant_offdiag_mass", exact.offdiag_mass, 1e-12);
        let m = 4096;
        let white = autocorrelation(&simulate(&specs[0].1, m, seed)?);
        s.below("white_offdiag_mass", wss_deviation(&white).offdiag_mass, 10.0 / (m as f64).sqrt());
        let exact = specs[2].1.exact_covariance();
        let e1 = autocorrelation(&simulate(&specs[2].1, 1024, seed)?).frobenius_diff(&exact)?;
        let e4 = autocorrelation(&simulate(&specs[2].1, 4096, seed.wrapping_add(1))?).frobenius_diff(&exact)?;
        let ratio = e1 / e4;
        s.record(
            "estimator_rate",
            (ratio - 2.0).abs(),
            Relation::AtMost,
            1.0,
            Some(format!("error ratio M=1024 vs 4096: {ratio:.3}")),
        );
        Ok(())
    });
}
