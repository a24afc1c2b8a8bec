use mildcalc_core::grid::TfPoint;
use mildcalc_core::mild::{mild_distance, periodize, poisson_check, s0_norm, sample, sop_norm};
use mildcalc_core::{
    convolve, dirac, fourier, gaussian, inner, inverse_fourier, make_grid, multiply, pairing,
    reflect, stft, tf_shift, Complex64, FiniteSignal, GridModel,
};
use proptest::prelude::*;

fn signal(grid: GridModel) -> impl Strategy<Value = FiniteSignal> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), grid.n()).prop_map(move |v| {
        FiniteSignal::new(grid, v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap()
    })
}

fn scalar() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| Complex64::new(a, b))
}

fn g4() -> GridModel {
    make_grid(4).unwrap()
}

fn g8() -> GridModel {
    make_grid(8).unwrap()
}

fn close(a: Complex64, b: Complex64, scale: f64, tol: f64) -> bool {
    (a - b).norm() <= tol * scale.max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn plancherel(f in signal(g8()), h in signal(g8())) {
        let lhs = inner(&fourier(&f), &fourier(&h)).unwrap();
        let rhs = inner(&f, &h).unwrap();
        prop_assert!(close(lhs, rhs, f.l2_norm() * h.l2_norm(), 1e-12));
    }

    #[test]
    fn fundamental_relationship(f in signal(g8()), h in signal(g8())) {
        let lhs = pairing(&fourier(&h), &f).unwrap();
        let rhs = pairing(&h, &fourier(&f)).unwrap();
        prop_assert!(close(lhs, rhs, f.l2_norm() * h.l2_norm(), 1e-12));
    }

    #[test]
    fn parity_and_inversion(f in signal(g8())) {
        let ff = fourier(&fourier(&f));
        prop_assert!(ff.max_abs_diff(&reflect(&f)).unwrap() < 1e-12 * f.max_abs().max(1.0));
        let four = fourier(&fourier(&ff));
        prop_assert!(four.max_abs_diff(&f).unwrap() < 1e-12 * f.max_abs().max(1.0));
        prop_assert!(inverse_fourier(&fourier(&f)).max_abs_diff(&f).unwrap() < 1e-12 * f.max_abs().max(1.0));
    }

    #[test]
    fn inner_is_sesquilinear(f in signal(g4()), h in signal(g4()), k in signal(g4()), a in scalar(), b in scalar()) {
        let lhs = inner(&f.scale(a).add(&h.scale(b)).unwrap(), &k).unwrap();
        let rhs = a * inner(&f, &k).unwrap() + b * inner(&h, &k).unwrap();
        prop_assert!(close(lhs, rhs, 10.0, 1e-14 * 10.0));
        let lhs = inner(&k, &f.scale(a)).unwrap();
        prop_assert!(close(lhs, a.conj() * inner(&k, &f).unwrap(), 10.0, 1e-14 * 10.0));
        prop_assert!(close(inner(&f, &h).unwrap(), inner(&h, &f).unwrap().conj(), 1.0, 1e-15));
    }

    #[test]
    fn convolution_theorems(f in signal(g4()), h in signal(g4())) {
        let lhs = fourier(&convolve(&f, &h).unwrap());
        let rhs = multiply(&fourier(&f), &fourier(&h)).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-10 * rhs.max_abs().max(1.0));
        let lhs = fourier(&multiply(&f, &h).unwrap());
        let rhs = convolve(&fourier(&f), &fourier(&h)).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-10 * rhs.max_abs().max(1.0));
    }

    #[test]
    fn tf_shift_composition(f in signal(g4()), t in 0usize..16, s in 0usize..16) {
        let g = g4();
        let ts = tf_shift(&tf_shift(&f, TfPoint::new(&g, t as i64, 0)), TfPoint::new(&g, 0, s as i64));
        prop_assert_eq!(&ts, &tf_shift(&f, TfPoint::new(&g, t as i64, s as i64)));
        let st = tf_shift(&tf_shift(&f, TfPoint::new(&g, 0, s as i64)), TfPoint::new(&g, t as i64, 0));
        let angle = -2.0 * std::f64::consts::PI * ((t * s) % 16) as f64 / 16.0;
        let phase = Complex64::from_polar(1.0, angle);
        prop_assert!(st.max_abs_diff(&ts.scale(phase)).unwrap() < 1e-14);
    }

    #[test]
    fn stft_covariance(f in signal(g4()), t in 0usize..16, s in 0usize..16) {
        let g = g4();
        let w = gaussian(&g);
        let base = stft(&f, &w).unwrap();
        let moved = stft(&tf_shift(&f, TfPoint { t_idx: t, s_idx: s }), &w).unwrap();
        for ti in 0..16 {
            for si in 0..16 {
                let a = moved.get(TfPoint { t_idx: ti, s_idx: si }).norm();
                let b = base.get(TfPoint { t_idx: (ti + 16 - t) % 16, s_idx: (si + 16 - s) % 16 }).norm();
                prop_assert!((a - b).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn sop_norm_convolution_bound(h in signal(g4()), sigma in signal(g4())) {
        let g = g4();
        let w = gaussian(&g);
        let lhs = sop_norm(&convolve(&h, &sigma).unwrap(), &w).unwrap();
        let rhs = h.l1_norm() * sop_norm(&sigma, &w).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-10), "{} > {}", lhs, rhs);
    }

    #[test]
    fn s0_norm_axioms(f in signal(g4()), h in signal(g4()), a in scalar(), t in 0usize..16, s in 0usize..16) {
        let w = gaussian(&g4());
        let nf = s0_norm(&f, &w).unwrap();
        let nh = s0_norm(&h, &w).unwrap();
        let scaled = s0_norm(&f.scale(a), &w).unwrap();
        prop_assert!((scaled - a.norm() * nf).abs() <= 1e-12 * nf.max(1.0));
        prop_assert!(s0_norm(&f.add(&h).unwrap(), &w).unwrap() <= (nf + nh) * (1.0 + 1e-12));
        let moved = s0_norm(&tf_shift(&f, TfPoint { t_idx: t, s_idx: s }), &w).unwrap();
        prop_assert!((moved - nf).abs() <= 1e-12 * nf.max(1.0));
    }

    #[test]
    fn mild_distance_is_pseudometric(f in signal(g4()), h in signal(g4()), k in signal(g4()), r in 0.1..2.5f64) {
        let w = gaussian(&g4());
        let d = |x: &FiniteSignal, y: &FiniteSignal, r: f64| mild_distance(x, y, &w, r).unwrap();
        prop_assert_eq!(d(&f, &f, r), 0.0);
        prop_assert!((d(&f, &h, r) - d(&h, &f, r)).abs() < 1e-14);
        prop_assert!(d(&f, &k, r) <= d(&f, &h, r) + d(&h, &k, r) + 1e-14);
        prop_assert!(d(&f, &h, r) <= d(&f, &h, r + 0.5));
        prop_assert!(d(&f, &h, r) <= sop_norm(&f.sub(&h).unwrap(), &w).unwrap());
    }

    #[test]
    fn poisson_identity_on_random_signals(f in signal(g8())) {
        prop_assert!(poisson_check(&f).deviation < 1e-12 * f.max_abs().max(1.0) * 8.0);
    }

    #[test]
    fn convolution_by_finite_comb_keeps_mild_bound(
        sigma in signal(g4()),
        weights in prop::collection::vec((scalar(), 0usize..16), 1..4),
        r in 0.25..2.0f64,
    ) {
        let g = g4();
        let w = gaussian(&g);
        let zero = FiniteSignal::zeros(g);
        let mut mu = FiniteSignal::zeros(g);
        let mut reach: f64 = 0.0;
        let mut mass = 0.0;
        for (c, k) in &weights {
            mu = mu.add(&dirac(&g, *k).unwrap().scale(*c)).unwrap();
            reach = reach.max(g.coord(*k).abs());
            mass += c.norm();
        }
        let lhs = mild_distance(&convolve(&mu, &sigma).unwrap(), &zero, &w, r).unwrap();
        let rhs = mass * mild_distance(&sigma, &zero, &w, r + reach).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-14);
    }

    #[test]
    fn sample_periodize_commute(f in signal(g4())) {
        let divisors = [1usize, 2, 4, 8, 16];
        for &rs in &divisors {
            for &rp in divisors.iter().filter(|rp| *rp % rs == 0) {
                let left = sample(&periodize(&f, rp).unwrap(), rs).unwrap();
                let right = periodize(&sample(&f, rs).unwrap(), rp).unwrap();
                prop_assert!(left.max_abs_diff(&right).unwrap() <= 1e-13);
            }
        }
    }
}
