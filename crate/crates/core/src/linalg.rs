//! Small dense linear algebra: cyclic Jacobi for real symmetric matrices and
//! the real embedding of Hermitian matrices.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

/// Eigen-decomposition of a real symmetric matrix. `vectors` is row-major
/// with eigenvector `k` stored in column `k`.
pub(crate) struct SymEigen {
    pub n: usize,
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
}

impl SymEigen {
    pub(crate) fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub(crate) fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Cyclic Jacobi rotations on a row-major symmetric `n × n` matrix.
pub(crate) fn sym_eigen(mut a: Vec<f64>, n: usize) -> SymEigen {
    assert_eq!(a.len(), n * n);
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let total: f64 = a.iter().map(|x| x * x).sum();
    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off <= 1e-32 * total || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let values = (0..n).map(|i| a[i * n + i]).collect();
    SymEigen {
        n,
        values,
        vectors: v,
    }
}

/// `[[Re H, -Im H], [Im H, Re H]]` for a row-major Hermitian `n × n` matrix.
/// Every eigenvalue of `H` appears twice in the embedding.
pub(crate) fn hermitian_embedding(h: &[Complex64], n: usize) -> Vec<f64> {
    let m = 2 * n;
    let mut out = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = h[i * n + j];
            out[i * m + j] = z.re;
            out[i * m + n + j] = -z.im;
            out[(n + i) * m + j] = z.im;
            out[(n + i) * m + n + j] = z.re;
        }
    }
    out
}

/// Solves `H x = rhs` through the eigen-decomposition of the real embedding.
/// Returns `None` when an eigenvalue is not strictly positive.
pub(crate) fn hermitian_pd_solve(eig: &SymEigen, rhs: &[Complex64]) -> Option<Vec<Complex64>> {
    let m = eig.n;
    let n = m / 2;
    if eig.min() <= 0.0 {
        return None;
    }
    let mut b = vec![0.0; m];
    for i in 0..n {
        b[i] = rhs[i].re;
        b[n + i] = rhs[i].im;
    }
    let mut x = vec![0.0; m];
    for k in 0..m {
        let mut proj = 0.0;
        for i in 0..m {
            proj += eig.vectors[i * m + k] * b[i];
        }
        let w = proj / eig.values[k];
        for i in 0..m {
            x[i] += eig.vectors[i * m + k] * w;
        }
    }
    Some((0..n).map(|i| Complex64::new(x[i], x[n + i])).collect())
}
