//! Acceptance criteria, one line of output per criterion.
//!
//! Each criterion compares library output with an oracle written here from
//! first principles: direct sums, closed forms, least-squares fits.

use std::f64::consts::PI;
use std::time::Instant;

use mildcalc::core::gsp::spectral_autocorr_deviation;
use mildcalc::core::mild::{
    atomic_decompose, box_radii, gabor_partial_sum_tail, mild_distance, periodize, poisson_check,
    sample, shannon_reconstruct, sop_norm, tf_box, Bupu, ReconstructionFilter,
};
use mildcalc::core::{
    autocorrelation, convolve, dirac_comb, dual_window, fourier, frame_bounds, gabor_analysis,
    gabor_synthesis, gaussian, inverse_fourier, make_grid, multiply, reflect, simulate,
    spectral_process, wss_deviation, AtomSource, Autocorrelation, Complex64, CovarianceSpec,
    Error as CoreError, FiniteSignal, GaborSystem, GridModel,
};
use mildcalc::figure1::{figure1, Figure1Config};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type C = Complex64;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn zero() -> C {
    C::new(0.0, 0.0)
}

fn rand_c(rng: &mut ChaCha8Rng) -> C {
    C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

fn random_signal(grid: GridModel, rng: &mut ChaCha8Rng) -> FiniteSignal {
    let v = (0..grid.n()).map(|_| rand_c(rng)).collect();
    FiniteSignal::new(grid, v).unwrap()
}

fn max_diff(a: &[C], b: &[C]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn max_abs(a: &[C]) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

fn l2(a: &[C]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Physical coordinate of index `n`.
fn t_of(grid: GridModel, n: usize) -> f64 {
    (n as f64 - grid.center() as f64) / grid.l() as f64
}

/// `α Σ_n f[n] e^{−2πi (n−c)(m−c)/N}`, summed term by term.
fn dft(grid: GridModel, f: &[C]) -> Vec<C> {
    let n = grid.n();
    let c = grid.center() as i64;
    let alpha = 1.0 / grid.l() as f64;
    (0..n)
        .map(|m| {
            let mut acc = zero();
            for (k, v) in f.iter().enumerate() {
                let phase = ((k as i64 - c) * (m as i64 - c)).rem_euclid(n as i64) as f64;
                acc += v * C::from_polar(1.0, -2.0 * PI * phase / n as f64);
            }
            acc * alpha
        })
        .collect()
}

/// Gaussian wrapped onto the torus of length β.
fn wrapped_gaussian(grid: GridModel, x: f64, s: f64) -> Vec<C> {
    let beta = grid.beta();
    (0..grid.n())
        .map(|n| {
            let t = t_of(grid, n);
            let env: f64 = (-4..=4).map(|k| (-PI * (t - x + k as f64 * beta).powi(2)).exp()).sum();
            C::from_polar(env, 2.0 * PI * s * t)
        })
        .collect()
}

fn smooth_signal(grid: GridModel, rng: &mut ChaCha8Rng) -> Vec<C> {
    let reach = (grid.beta() / 4.0) as i64;
    let mut out = vec![zero(); grid.n()];
    for _ in 0..3 {
        let x = rng.random_range(-reach..=reach) as f64;
        let s = rng.random_range(-reach..=reach) as f64;
        let w = rand_c(rng);
        for (o, v) in out.iter_mut().zip(wrapped_gaussian(grid, x, s)) {
            *o += w * v;
        }
    }
    out
}

fn signal(grid: GridModel, v: Vec<C>) -> FiniteSignal {
    FiniteSignal::new(grid, v).unwrap()
}

fn integer_sum(grid: GridModel, f: &[C]) -> C {
    let l = grid.l() as i64;
    let c = grid.center() as i64;
    f.iter()
        .enumerate()
        .filter(|(k, _)| (*k as i64 - c).rem_euclid(l) == 0)
        .map(|(_, v)| *v)
        .sum()
}

fn criterion_1() -> Outcome {
    let theta: f64 = (-30i32..=30).map(|k| (-PI * (k * k) as f64).exp()).sum();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    let mut oracle_gap: f64 = 0.0;
    let mut elapsed = 0.0;
    for l in [8, 16, 32] {
        let grid = make_grid(l).unwrap();
        let mut inputs = vec![wrapped_gaussian(grid, 0.0, 0.0)];
        inputs.extend((0..20).map(|_| smooth_signal(grid, &mut rng)));
        for (k, f) in inputs.into_iter().enumerate() {
            let sig = signal(grid, f.clone());
            let start = Instant::now();
            let p = poisson_check(&sig);
            elapsed += start.elapsed().as_secs_f64();
            let scale = p.time_sum.norm().max(1.0);
            worst = worst.max(p.deviation / scale);
            // sums recomputed from the input and a term-by-term transform
            oracle_gap = oracle_gap.max((p.time_sum - integer_sum(grid, &f)).norm() / scale);
            if l <= 16 {
                oracle_gap = oracle_gap.max((p.freq_sum - integer_sum(grid, &dft(grid, &f))).norm() / scale);
            }
            if k == 0 {
                oracle_gap = oracle_gap.max((p.time_sum - theta).norm());
            }
        }
    }
    outcome(
        worst < 1e-12 && oracle_gap < 1e-12 && elapsed < 1.0,
        format!("max deviation {worst:.2e}, oracle gap {oracle_gap:.2e}, {elapsed:.3} s"),
    )
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for l in [8, 16, 32] {
        let grid = make_grid(l).unwrap();
        let n = grid.n();
        let f = random_signal(grid, &mut rng);
        let h = random_signal(grid, &mut rng);
        let (fh, hh) = (fourier(&f), fourier(&h));
        let scale = f.max_abs();
        worst = worst.max(max_diff(inverse_fourier(&fh).values(), f.values()) / scale);
        let alpha = grid.alpha();
        let ip = |a: &[C], b: &[C]| a.iter().zip(b).map(|(x, y)| x * y.conj()).sum::<C>() * alpha;
        let bil = |a: &[C], b: &[C]| a.iter().zip(b).map(|(x, y)| x * y).sum::<C>() * alpha;
        let norms = l2(f.values()) * l2(h.values()) * alpha;
        worst = worst.max((ip(fh.values(), hh.values()) - ip(f.values(), h.values())).norm() / norms);
        worst = worst.max((bil(hh.values(), f.values()) - bil(h.values(), fh.values())).norm() / norms);
        let c = grid.center();
        let reflected: Vec<C> = (0..n).map(|k| f.values()[(2 * c + n - k) % n]).collect();
        worst = worst.max(max_diff(fourier(&fh).values(), &reflected) / scale);
        worst = worst.max(max_diff(reflect(&f).values(), &reflected) / scale);
        let g = wrapped_gaussian(grid, 0.0, 0.0);
        worst = worst.max(max_diff(fourier(&signal(grid, g.clone())).values(), &g));
        worst = worst.max(max_diff(gaussian(&grid).values(), &g));
    }
    let grid = make_grid(8).unwrap();
    let f = random_signal(grid, &mut rng);
    let direct = dft(grid, f.values());
    let brute = max_diff(fourier(&f).values(), &direct) / max_abs(&direct);
    outcome(
        worst < 1e-12 && brute < 1e-12,
        format!("identities {worst:.2e}, fast vs term-by-term at N = 64 {brute:.2e}"),
    )
}

fn criterion_3() -> Outcome {
    let grid = make_grid(8).unwrap();
    let n = grid.n();
    let c = grid.center() as i64;
    let mut worst: f64 = 0.0;
    let mut support: f64 = 0.0;
    for r in (1..=n).filter(|r| n.is_multiple_of(*r)) {
        let spec = fourier(&dirac_comb(&grid, r).unwrap());
        // α · (1/α) · Σ_j e^{−2πi j r (m−c)/N}
        let oracle: Vec<C> = (0..n as i64)
            .map(|m| {
                (0..(n / r) as i64)
                    .map(|j| {
                        let phase = (j * r as i64 * (m - c)).rem_euclid(n as i64) as f64;
                        C::from_polar(1.0, -2.0 * PI * phase / n as f64)
                    })
                    .sum()
            })
            .collect();
        let height = (n / r) as f64;
        worst = worst.max(max_diff(spec.values(), &oracle) / height);
        for (m, v) in spec.values().iter().enumerate() {
            if (m as i64 - c).rem_euclid((n / r) as i64) != 0 {
                support = support.max(v.norm() / height);
            }
        }
    }
    outcome(
        worst < 1e-12 && support < 1e-12,
        format!("amplitude {worst:.2e}, off-comb {support:.2e}, all divisors of 64"),
    )
}

fn sample_oracle(grid: GridModel, f: &[C], r: usize) -> Vec<C> {
    let c = grid.center() as i64;
    f.iter()
        .enumerate()
        .map(|(k, v)| if (k as i64 - c).rem_euclid(r as i64) == 0 { *v } else { zero() })
        .collect()
}

fn periodize_oracle(grid: GridModel, f: &[C], r: usize) -> Vec<C> {
    let n = grid.n();
    (0..n).map(|k| (0..n / r).map(|j| f[(k + j * r) % n]).sum()).collect()
}

fn criterion_4() -> Outcome {
    let grid = make_grid(8).unwrap();
    let n = grid.n();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let f = random_signal(grid, &mut rng);
    let divs: Vec<usize> = (1..=n).filter(|r| n.is_multiple_of(*r)).collect();
    let mut commute: f64 = 0.0;
    let mut agree: f64 = 0.0;
    for &rs in &divs {
        for &rp in divs.iter().filter(|rp| *rp % rs == 0) {
            let a = sample(&periodize(&f, rp).unwrap(), rs).unwrap();
            let b = periodize(&sample(&f, rs).unwrap(), rp).unwrap();
            commute = commute.max(max_diff(a.values(), b.values()));
            let oracle = sample_oracle(grid, &periodize_oracle(grid, f.values(), rp), rs);
            agree = agree.max(max_diff(a.values(), &oracle));
        }
    }
    let fh = fourier(&f);
    let mut fit: f64 = 0.0;
    let mut residual: f64 = 0.0;
    for &r in &divs {
        let lhs = fourier(&sample(&f, r).unwrap());
        let rhs = periodize(&fh, n / r).unwrap();
        // least-squares constant c minimizing |lhs − c·rhs|
        let num: C = lhs.values().iter().zip(rhs.values()).map(|(a, b)| a * b.conj()).sum();
        let den: f64 = rhs.values().iter().map(|b| b.norm_sqr()).sum();
        let c = num / den;
        fit = fit.max((c - 1.0 / r as f64).norm() * r as f64);
        let scaled: Vec<C> = rhs.values().iter().map(|v| v / r as f64).collect();
        residual = residual.max(max_diff(lhs.values(), &scaled) / max_abs(&scaled));
    }
    outcome(
        commute < 1e-13 && agree < 1e-13 && fit < 1e-10 && residual < 1e-10,
        format!("commutation {commute:.2e}, fitted constant 1/r within {fit:.2e}, duality {residual:.2e}"),
    )
}

fn direct_convolution(grid: GridModel, f: &[C], h: &[C]) -> Vec<C> {
    let n = grid.n();
    let c = grid.center();
    let alpha = grid.alpha();
    (0..n)
        .map(|x| (0..n).map(|y| f[y] * h[(x + c + n - y) % n]).sum::<C>() * alpha)
        .collect()
}

fn criterion_5() -> Outcome {
    let grid = make_grid(16).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut fwd: f64 = 0.0;
    let mut bwd: f64 = 0.0;
    let mut lib: f64 = 0.0;
    for _ in 0..50 {
        let f = random_signal(grid, &mut rng);
        let h = random_signal(grid, &mut rng);
        let conv = direct_convolution(grid, f.values(), h.values());
        lib = lib.max(max_diff(convolve(&f, &h).unwrap().values(), &conv) / max_abs(&conv));
        let (fh, hh) = (fourier(&f), fourier(&h));
        let prod: Vec<C> = fh.values().iter().zip(hh.values()).map(|(a, b)| a * b).collect();
        fwd = fwd.max(max_diff(fourier(&signal(grid, conv)).values(), &prod) / max_abs(&prod));
        let spec_conv = direct_convolution(grid, fh.values(), hh.values());
        let lhs = fourier(&multiply(&f, &h).unwrap());
        bwd = bwd.max(max_diff(lhs.values(), &spec_conv) / max_abs(&spec_conv));
    }
    outcome(
        fwd < 1e-10 && bwd < 1e-10 && lib < 1e-12,
        format!("F(f*h) vs Ff.Fh {fwd:.2e}, F(fh) vs Ff*Fh {bwd:.2e}, 50 pairs at N = 256"),
    )
}

/// `Σ_λ ⟨f, π(λ)γ⟩ π(λ)g`, built atom by atom.
fn frame_sum(grid: GridModel, f: &[C], gamma: &[C], g: &[C], a: usize, b: usize) -> Vec<C> {
    let n = grid.n();
    let alpha = grid.alpha();
    let c = grid.center() as i64;
    let atom = |w: &[C], ti: usize, sj: usize| -> Vec<C> {
        (0..n)
            .map(|k| {
                let phase = ((k as i64 - c) * (sj * b) as i64).rem_euclid(n as i64) as f64;
                w[(k + n - ti * a) % n] * C::from_polar(1.0, 2.0 * PI * phase / n as f64)
            })
            .collect()
    };
    let mut out = vec![zero(); n];
    for ti in 0..n / a {
        for sj in 0..n / b {
            let d = atom(gamma, ti, sj);
            let coeff: C = f.iter().zip(&d).map(|(x, y)| x * y.conj()).sum::<C>() * alpha;
            for (o, v) in out.iter_mut().zip(atom(g, ti, sj)) {
                *o += coeff * v;
            }
        }
    }
    out
}

fn criterion_6() -> Outcome {
    let grid = make_grid(16).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut sys = GaborSystem::new(gaussian(&grid), 8, 16).unwrap();
    let report = dual_window(&mut sys).unwrap();
    let g = sys.window().values().to_vec();
    let dual = sys.dual().unwrap().values().to_vec();
    // S γ = Σ ⟨γ, π(λ)g⟩ π(λ)g recomputed directly
    let s_dual = frame_sum(grid, &dual, &g, &g, 8, 16);
    let residual = l2(&s_dual.iter().zip(&g).map(|(x, y)| x - y).collect::<Vec<_>>()) / l2(&g);
    let mut recon: f64 = 0.0;
    for _ in 0..3 {
        let f = random_signal(grid, &mut rng);
        let c = gabor_analysis(&f, &sys, AtomSource::Dual).unwrap();
        let back = gabor_synthesis(&c, &sys, AtomSource::Window).unwrap();
        recon = recon.max(back.sub(&f).unwrap().l2_norm() / f.l2_norm());
        let direct = frame_sum(grid, f.values(), &dual, &g, 8, 16);
        recon = recon.max(max_diff(&direct, f.values()) / f.max_abs());
    }
    let f = gaussian(&grid);
    let tails: Vec<f64> = box_radii(&sys)
        .iter()
        .map(|r| gabor_partial_sum_tail(&f, &sys, &tf_box(&sys, *r)).unwrap())
        .collect();
    let monotone = tails.windows(2).all(|w| w[1] <= w[0] + 1e-12);
    let last = *tails.last().unwrap();
    let mut critical = GaborSystem::new(gaussian(&grid), 16, 16).unwrap();
    let fb = frame_bounds(&critical);
    let flagged = matches!(dual_window(&mut critical), Err(CoreError::IllConditioned { .. }));
    outcome(
        report.residual < 1e-12 && residual < 1e-12 && recon < 1e-8 && monotone && last < 1e-6 && flagged,
        format!(
            "dual residual {:.2e} (direct {residual:.2e}), reconstruction {recon:.2e}, \
             tail monotone {monotone} over {} boxes ending at {last:.2e}, \
             redundancy 1 flagged {flagged} (lower bound {:.1e})",
            report.residual,
            tails.len(),
            fb.lower
        ),
    )
}

fn criterion_7() -> Outcome {
    let grid = make_grid(16).unwrap();
    let bupu = Bupu::new(grid, 16).unwrap();
    let window = gaussian(&grid);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut recon: f64 = 0.0;
    let mut ratios = Vec::new();
    let mut finite = true;
    for _ in 0..10 {
        let f = random_signal(grid, &mut rng);
        let d = atomic_decompose(&f, &bupu).unwrap();
        let mut total = vec![zero(); grid.n()];
        for atom in &d.atoms {
            for (t, v) in total.iter_mut().zip(atom.signal.values()) {
                *t += v;
            }
        }
        recon = recon.max(max_diff(&total, f.values()) / f.max_abs());
        recon = recon.max(d.reconstruction_error);
        finite &= d.norm_sum.is_finite() && (d.norms.iter().sum::<f64>() - d.norm_sum).abs() <= 1e-9 * d.norm_sum;
        ratios.push(d.norm_sum / mildcalc::core::mild::s0_norm(&f, &window).unwrap());
    }
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(0.0, f64::max);
    outcome(
        recon < 1e-10 && finite,
        format!("reconstruction {recon:.2e}, norm_sum / s0_norm in [{lo:.3}, {hi:.3}]"),
    )
}

fn criterion_8() -> Outcome {
    let grid = make_grid(32).unwrap();
    let n = grid.n();
    let c = grid.center() as i64;
    let g = gaussian(&grid);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut excess = f64::NEG_INFINITY;
    for _ in 0..3 {
        let f = random_signal(grid, &mut rng);
        let h = random_signal(grid, &mut rng);
        let bound = sop_norm(&f.sub(&h).unwrap(), &g).unwrap();
        for r in [0.5, 2.0, 8.0, grid.beta()] {
            excess = excess.max(mild_distance(&f, &h, &g, r).unwrap() - bound);
        }
    }
    let one = signal(grid, vec![C::new(1.0, 0.0); n]);
    let mut seq = Vec::new();
    for r in [32usize, 16, 8, 1] {
        // α_r Ш_{α_r}: mass r α at every r-th point, node value r
        let sigma: Vec<C> = (0..n as i64)
            .map(|k| if (k - c).rem_euclid(r as i64) == 0 { C::new(r as f64, 0.0) } else { zero() })
            .collect();
        let lib = dirac_comb(&grid, r).unwrap().scale_real(r as f64 * grid.alpha());
        assert!(max_diff(lib.values(), &sigma) < 1e-12);
        seq.push(mild_distance(&signal(grid, sigma), &one, &g, 2.0).unwrap());
    }
    let decreasing = seq.windows(2).all(|w| w[1] < w[0]);
    outcome(
        excess <= 0.0 && decreasing,
        format!(
            "distance minus sup-norm bound {excess:.2e}; comb sequence at R = 2: {}",
            seq.iter().map(|d| format!("{d:.3e}")).collect::<Vec<_>>().join(" > ")
        ),
    )
}

fn central_deviation(grid: GridModel, p1: &[C], p4: &[C], radius: f64) -> f64 {
    let n = grid.n();
    let coord = |k: usize| {
        let k = k as f64;
        let n = n as f64;
        (if k >= n / 2.0 { k - n } else { k }) / grid.l() as f64
    };
    let mut peak: f64 = 0.0;
    let mut dev: f64 = 0.0;
    for t in 0..n {
        for s in 0..n {
            if coord(t).abs().max(coord(s).abs()) <= radius {
                let (a, b) = (p1[t * n + s].norm(), p4[t * n + s].norm());
                peak = peak.max(a);
                dev = dev.max((a - b).abs());
            }
        }
    }
    dev / peak
}

fn criterion_9() -> Outcome {
    let fig = figure1(&Figure1Config::default()).unwrap();
    let grid = fig.grid;
    let n = grid.n();
    let oracle = central_deviation(grid, fig.panels[0].values(), fig.panels[3].values(), grid.beta() / 8.0);
    // |V_g g(t, s)| = e^{−π(t² + s²)/2} / √2 at a few shift points
    let mut shape: f64 = 0.0;
    for (t, s) in [(0usize, 0usize), (8, 0), (0, 16), (32, 32)] {
        let (pt, ps) = (t as f64 / 32.0, s as f64 / 32.0);
        let want = (-PI * (pt * pt + ps * ps) / 2.0).exp() / 2f64.sqrt();
        shape = shape.max((fig.panels[0].values()[t * n + s].norm() - want).abs());
    }
    let shifted = figure1(&Figure1Config {
        shift: (grid.beta() / 8.0, grid.beta() / 8.0),
        ..Default::default()
    })
    .unwrap();
    outcome(
        fig.central_deviation < 1e-3 && (oracle - fig.central_deviation).abs() < 1e-15 && shape < 1e-12 && fig.passed(),
        format!(
            "central deviation {:.2e} (recomputed {oracle:.2e}), replicas found {}; \
             with the Gaussian at (β/8, β/8): {:.2e}",
            fig.central_deviation,
            fig.replicas.iter().all(|r| r.found),
            shifted.central_deviation
        ),
    )
}

fn criterion_10() -> Outcome {
    let grid = make_grid(32).unwrap();
    let n = grid.n();
    let c = grid.center() as i64;
    let band = 20i64;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let coeffs: Vec<C> = (-band..=band).map(|_| rand_c(&mut rng)).collect();
    // trigonometric polynomial with frequencies |j| ≤ band
    let f: Vec<C> = (0..n as i64)
        .map(|k| {
            (-band..=band)
                .zip(&coeffs)
                .map(|(j, a)| a * C::from_polar(1.0, 2.0 * PI * ((k - c) * j).rem_euclid(n as i64) as f64 / n as f64))
                .sum()
        })
        .collect();
    let sig = signal(grid, f.clone());
    let back = shannon_reconstruct(&sample(&sig, 8).unwrap(), 8, band as usize, ReconstructionFilter::Box).unwrap();
    let err = max_diff(back.values(), &f) / max_abs(&f);
    let aliased = shannon_reconstruct(&sample(&sig, 64).unwrap(), 64, band as usize, ReconstructionFilter::Box);
    let raised = matches!(aliased, Err(CoreError::Aliasing { .. }));
    outcome(
        err < 1e-10 && raised,
        format!("stride 8 recovery {err:.2e}, stride 64 aliasing error raised {raised}"),
    )
}

/// `F A Fᴴ` with the DFT written out as a matrix.
fn conjugate_by_dft(grid: GridModel, a: &Autocorrelation) -> Vec<C> {
    let n = grid.n();
    let c = grid.center() as i64;
    let alpha = grid.alpha();
    let f: Vec<C> = (0..n * n)
        .map(|idx| {
            let (m, k) = ((idx / n) as i64, (idx % n) as i64);
            let phase = ((m - c) * (k - c)).rem_euclid(n as i64) as f64;
            C::from_polar(alpha, -2.0 * PI * phase / n as f64)
        })
        .collect();
    let mut fa = vec![zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            fa[i * n + j] = (0..n).map(|k| f[i * n + k] * a.get(k, j)).sum();
        }
    }
    let mut out = vec![zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = (0..n).map(|k| fa[i * n + k] * f[j * n + k].conj()).sum();
        }
    }
    out
}

fn criterion_11() -> Outcome {
    let grid = make_grid(8).unwrap();
    let n = grid.n();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let b: Vec<C> = (0..n * n).map(|_| rand_c(&mut rng)).collect();
    let mut matrix = vec![zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            matrix[i * n + j] = (0..n).map(|k| b[i * n + k] * b[j * n + k].conj()).sum::<C>() / n as f64;
        }
    }
    let symbol: Vec<C> = gaussian(&grid).values().iter().map(|v| C::new(v.re + 0.1, 0.0)).collect();
    let specs = [
        CovarianceSpec::white(grid, 1.0).unwrap(),
        CovarianceSpec::stationary(signal(grid, symbol.clone())).unwrap(),
        CovarianceSpec::general(grid, matrix.clone()).unwrap(),
    ];
    let mut identity: f64 = 0.0;
    let mut brute: f64 = 0.0;
    for (k, spec) in specs.iter().enumerate() {
        let e = simulate(spec, 64, 100 + k as u64).unwrap();
        let spectral = spectral_process(&e);
        identity = identity.max(spectral_autocorr_deviation(&e, &spectral).unwrap());
        let a = autocorrelation(&e);
        let oracle = conjugate_by_dft(grid, &a);
        let got = autocorrelation(&spectral);
        let got: Vec<C> = (0..n * n).map(|idx| got.get(idx / n, idx % n)).collect();
        brute = brute.max(max_diff(&got, &oracle) / max_abs(&oracle));
    }
    // circulant built from the inverse transform of the symbol, term by term
    let c = grid.center() as i64;
    let col: Vec<C> = (0..n as i64)
        .map(|d| {
            (0..n as i64)
                .map(|m| symbol[m as usize] * C::from_polar(grid.alpha(), 2.0 * PI * ((d - c) * (m - c)).rem_euclid(n as i64) as f64 / n as f64))
                .sum()
        })
        .collect();
    let circ: Vec<C> = (0..n * n).map(|idx| col[((idx / n) + n - (idx % n) + grid.center()) % n]).collect();
    let exact = Autocorrelation::new(grid, circ).unwrap();
    let wss = wss_deviation(&exact);
    let lib_exact = specs[1].exact_covariance();
    let circ_gap = exact.max_abs_diff(&lib_exact).unwrap();
    let m = 4096;
    let white = wss_deviation(&autocorrelation(&simulate(&specs[0], m, 7).unwrap()));
    let target = Autocorrelation::new(grid, matrix).unwrap();
    let mean_err = |m: usize| -> f64 {
        (0..4)
            .map(|s| autocorrelation(&simulate(&specs[2], m, 1000 + s).unwrap()).frobenius_diff(&target).unwrap())
            .sum::<f64>()
            / 4.0
    };
    let ratio = mean_err(1024) / mean_err(4096);
    outcome(
        identity < 1e-10
            && brute < 1e-10
            && wss.diag_invariance < 1e-12
            && wss.offdiag_mass < 1e-12
            && circ_gap < 1e-12
            && white.offdiag_mass < 10.0 / (m as f64).sqrt()
            && (1.0..=3.0).contains(&ratio),
        format!(
            "identity {identity:.2e} (matrix oracle {brute:.2e}), circulant diag {:.1e} offdiag {:.1e}, \
             white offdiag {:.4} vs {:.4}, error ratio M x4 {ratio:.3}",
            wss.diag_invariance,
            wss.offdiag_mass,
            white.offdiag_mass,
            10.0 / (m as f64).sqrt()
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("Poisson summation", criterion_1),
        ("Fourier structure", criterion_2),
        ("comb calculus", criterion_3),
        ("sampling and periodization", criterion_4),
        ("convolution theorems", criterion_5),
        ("Gabor frames", criterion_6),
        ("atomic decomposition", criterion_7),
        ("mild convergence", criterion_8),
        ("periodized and sampled spectrograms", criterion_9),
        ("Shannon sampling", criterion_10),
        ("Gaussian stochastic processes", criterion_11),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {verdict} {name}: {} [{:.2} s]",
            k + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!o.passed);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
