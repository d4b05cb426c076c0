//! Discrete Fourier transform with the circulant-eigenvalue convention
//! `out_l = Σ_p v_p exp(+2πi p l / N)` (0-based, no normalization).

use std::f64::consts::PI;

use super::Complex;
use crate::error::{domain, Result};

/// Lengths up to this use the direct `O(N²)` sum; longer ones the mixed-radix transform.
pub const DIRECT_MAX_LEN: usize = 64;

/// Unnormalized forward transform with the `+2πi` sign.
pub fn dft(v: &[Complex]) -> Result<Vec<Complex>> {
    if v.is_empty() {
        return domain("dft of an empty vector");
    }
    Ok(if v.len() <= DIRECT_MAX_LEN {
        dft_direct(v)
    } else {
        dft_fast(v)
    })
}

/// Same transform with the `−2πi` sign, `conj(dft(conj(v)))`.
pub fn dft_inverse_sign(v: &[Complex]) -> Result<Vec<Complex>> {
    let conj: Vec<Complex> = v.iter().map(|z| z.conj()).collect();
    Ok(dft(&conj)?.into_iter().map(|z| z.conj()).collect())
}

fn roots_of_unity(n: usize) -> Vec<Complex> {
    (0..n)
        .map(|j| {
            let (s, c) = (2.0 * PI * j as f64 / n as f64).sin_cos();
            Complex::new(c, s)
        })
        .collect()
}

/// Direct evaluation of the defining sum. Returns an empty vector for empty input.
pub fn dft_direct(v: &[Complex]) -> Vec<Complex> {
    let n = v.len();
    let roots = roots_of_unity(n);
    (0..n)
        .map(|l| {
            v.iter()
                .enumerate()
                .map(|(p, &x)| x * roots[(p * l) % n])
                .sum()
        })
        .collect()
}

/// Mixed-radix decimation-in-time transform for any length.
///
/// Each level splits off the smallest prime factor, so powers of two reduce to
/// the radix-2 butterfly and a prime length degenerates to the direct sum.
pub fn dft_fast(v: &[Complex]) -> Vec<Complex> {
    let n = v.len();
    if n == 0 {
        return Vec::new();
    }
    let roots = roots_of_unity(n);
    let mut out = vec![Complex::new(0.0, 0.0); n];
    mixed_radix(v, 1, n, &roots, &mut out);
    out
}

fn smallest_factor(n: usize) -> usize {
    if n % 2 == 0 {
        return 2;
    }
    let mut f = 3;
    while f * f <= n {
        if n % f == 0 {
            return f;
        }
        f += 2;
    }
    n
}

fn mixed_radix(x: &[Complex], stride: usize, n: usize, roots: &[Complex], out: &mut [Complex]) {
    if n == 1 {
        out[0] = x[0];
        return;
    }
    let total = roots.len();
    let p = smallest_factor(n);
    let m = n / p;
    let mut sub = vec![Complex::new(0.0, 0.0); n];
    for r in 0..p {
        mixed_radix(&x[r * stride..], stride * p, m, roots, &mut sub[r * m..(r + 1) * m]);
    }
    // ω_n^j = ω_N^(j·N/n)
    let step = total / n;
    if p == 2 {
        for k in 0..m {
            let t = roots[k * step] * sub[m + k];
            out[k] = sub[k] + t;
            out[k + m] = sub[k] - t;
        }
        return;
    }
    for (k, o) in out.iter_mut().enumerate().take(n) {
        let km = k % m;
        let mut acc = sub[km];
        for r in 1..p {
            acc += roots[((r * k) % n) * step] * sub[r * m + km];
        }
        *o = acc;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn max_diff(a: &[Complex], b: &[Complex]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn delta_and_constant() {
        for n in [1usize, 2, 5, 64, 65, 128, 100] {
            let mut v = vec![c(0.0, 0.0); n];
            v[0] = c(1.0, 0.0);
            assert!(dft(&v).unwrap().iter().all(|z| (z - c(1.0, 0.0)).norm() < 1e-12));
            let a = 0.75;
            let out = dft(&vec![c(a, 0.0); n]).unwrap();
            assert!((out[0] - c(n as f64 * a, 0.0)).norm() < 1e-12);
            assert!(out[1..].iter().all(|z| z.norm() < 1e-12), "n={n}");
        }
    }

    #[test]
    fn three_point_example() {
        let out = dft(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]).unwrap();
        // per-term evaluation of 1 + 2ω + 3ω², ω = e^{2πi/3}
        let w = c(-0.5, 3f64.sqrt() / 2.0);
        let e2 = c(1.0, 0.0) + w * 2.0 + w * w * 3.0;
        assert!((out[0] - c(6.0, 0.0)).norm() < 1e-14);
        assert!((out[1] - e2).norm() < 1e-14);
        assert!((out[1] - c(-1.5, -3f64.sqrt() / 2.0)).norm() < 1e-14);
        assert!((out[2] - e2.conj()).norm() < 1e-14);
    }

    #[test]
    fn empty_is_error() {
        assert!(dft(&[]).is_err());
    }

    #[test]
    fn fast_and_direct_agree() {
        for n in (1..=300).chain([512, 1000, 1024, 997]) {
            let v: Vec<Complex> = (0..n)
                .map(|i| c((i as f64 * 0.37).sin(), (i as f64 * 1.3).cos()))
                .collect();
            let d = dft_direct(&v);
            let f = dft_fast(&v);
            assert!(max_diff(&d, &f) < 1e-10, "n={n} diff={}", max_diff(&d, &f));
        }
    }

    proptest! {
        #[test]
        fn real_input_is_conjugate_symmetric(v in prop::collection::vec(-10.0f64..10.0, 1..150)) {
            let n = v.len();
            let x: Vec<Complex> = v.iter().map(|&r| c(r, 0.0)).collect();
            let out = dft(&x).unwrap();
            for l in 1..n {
                prop_assert!((out[l] - out[n - l].conj()).norm() < 1e-9);
            }
        }

        #[test]
        fn parseval(v in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 1..150)) {
            let x: Vec<Complex> = v.iter().map(|&(a, b)| c(a, b)).collect();
            let out = dft(&x).unwrap();
            let lhs: f64 = out.iter().map(|z| z.norm_sqr()).sum();
            let rhs: f64 = x.len() as f64 * x.iter().map(|z| z.norm_sqr()).sum::<f64>();
            prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(1.0));
        }

        #[test]
        fn inverse_sign_round_trip(v in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 1..100)) {
            let x: Vec<Complex> = v.iter().map(|&(a, b)| c(a, b)).collect();
            let n = x.len() as f64;
            let back: Vec<Complex> = dft_inverse_sign(&dft(&x).unwrap()).unwrap().into_iter().map(|z| z / n).collect();
            prop_assert!(max_diff(&back, &x) < 1e-9);
        }
    }
}
