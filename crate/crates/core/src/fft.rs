//! Plain complex FFT for arbitrary lengths.
//!
//! Power-of-two lengths use an iterative radix-2 kernel; every other length
//! goes through Bluestein's chirp-z reduction onto a power-of-two convolution.
//! Forward transforms use the `e^{-2πi jk/n}` kernel and are unnormalized.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

pub(crate) struct Fft {
    n: usize,
    kind: Kind,
}

enum Kind {
    Trivial,
    Radix2(Radix2),
    Bluestein(Bluestein),
}

struct Radix2 {
    n: usize,
    // e^{-2πi k/n}, k < n/2
    twiddles: Vec<Complex64>,
}

struct Bluestein {
    inner: Box<Radix2>,
    // e^{-πi k²/n}
    chirp: Vec<Complex64>,
    kernel: Vec<Complex64>,
}

fn unit(num: u64, den: u64) -> Complex64 {
    // e^{-2πi num/den}, argument reduced before the trig call
    let r = (num % den) as f64 / den as f64;
    let (s, c) = libm::sincos(2.0 * PI * r);
    Complex64::new(c, -s)
}

impl Radix2 {
    fn new(n: usize) -> Self {
        debug_assert!(n.is_power_of_two());
        let twiddles = (0..n / 2).map(|k| unit(k as u64, n as u64)).collect();
        Self { n, twiddles }
    }

    fn forward(&self, buf: &mut [Complex64]) {
        let n = self.n;
        let bits = n.trailing_zeros();
        if bits == 0 {
            return;
        }
        for i in 0..n {
            let j = i.reverse_bits() >> (usize::BITS - bits);
            if j > i {
                buf.swap(i, j);
            }
        }
        let mut len = 2;
        while len <= n {
            let half = len / 2;
            let step = n / len;
            for start in (0..n).step_by(len) {
                for k in 0..half {
                    let w = self.twiddles[k * step];
                    let a = buf[start + k];
                    let b = buf[start + k + half] * w;
                    buf[start + k] = a + b;
                    buf[start + k + half] = a - b;
                }
            }
            len <<= 1;
        }
    }
}

impl Bluestein {
    fn new(n: usize) -> Self {
        let m = (2 * n - 1).next_power_of_two();
        let inner = Radix2::new(m);
        let two_n = 2 * n as u64;
        let chirp: Vec<Complex64> = (0..n as u64).map(|k| unit(k * k % two_n, two_n)).collect();
        let mut kernel = vec![Complex64::new(0.0, 0.0); m];
        kernel[0] = chirp[0].conj();
        for k in 1..n {
            kernel[k] = chirp[k].conj();
            kernel[m - k] = chirp[k].conj();
        }
        inner.forward(&mut kernel);
        Self {
            inner: Box::new(inner),
            chirp,
            kernel,
        }
    }

    fn forward(&self, buf: &mut [Complex64]) {
        let n = self.chirp.len();
        let m = self.inner.n;
        let mut work = vec![Complex64::new(0.0, 0.0); m];
        for k in 0..n {
            work[k] = buf[k] * self.chirp[k];
        }
        self.inner.forward(&mut work);
        for (w, k) in work.iter_mut().zip(&self.kernel) {
            *w = (*w * k).conj();
        }
        // inverse via conjugation
        self.inner.forward(&mut work);
        let scale = 1.0 / m as f64;
        for k in 0..n {
            buf[k] = work[k].conj() * scale * self.chirp[k];
        }
    }
}

impl Fft {
    pub(crate) fn new(n: usize) -> Self {
        let kind = if n <= 1 {
            Kind::Trivial
        } else if n.is_power_of_two() {
            Kind::Radix2(Radix2::new(n))
        } else {
            Kind::Bluestein(Bluestein::new(n))
        };
        Self { n, kind }
    }

    /// `X[k] = Σ_j x[j] e^{-2πi jk/n}` in place.
    pub(crate) fn forward(&self, buf: &mut [Complex64]) {
        assert_eq!(buf.len(), self.n, "fft buffer length");
        match &self.kind {
            Kind::Trivial => {}
            Kind::Radix2(r) => r.forward(buf),
            Kind::Bluestein(b) => b.forward(buf),
        }
    }

    /// `x[j] = Σ_k X[k] e^{+2πi jk/n}` in place, no `1/n` factor.
    pub(crate) fn backward(&self, buf: &mut [Complex64]) {
        for v in buf.iter_mut() {
            *v = v.conj();
        }
        self.forward(buf);
        for v in buf.iter_mut() {
            *v = v.conj();
        }
    }
}
