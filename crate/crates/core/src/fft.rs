//! Radix-2 FFT with a Bluestein fallback for other lengths.
//!
//! Forward transforms use the `e^{-j2πkn/N}` kernel and are unnormalized;
//! [`ifft`] divides by `N`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // inherent f64 methods win when std is linked
use num_traits::Float;


use crate::Complex64;

fn twiddle(k: usize, n: usize, sign: f64) -> Complex64 {
    let angle = sign * 2.0 * PI * (k as f64) / (n as f64);
    Complex64::new(angle.cos(), angle.sin())
}

fn radix2(buf: &mut [Complex64], sign: f64) {
    let n = buf.len();
    debug_assert!(n.is_power_of_two());
    if n <= 1 {
        return;
    }
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            buf.swap(i, j);
        }
    }
    let table: Vec<Complex64> = (0..n / 2).map(|k| twiddle(k, n, sign)).collect();
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let w = table[k * stride];
                let a = buf[start + k];
                let b = buf[start + k + half] * w;
                buf[start + k] = a + b;
                buf[start + k + half] = a - b;
            }
        }
        len <<= 1;
    }
}

fn bluestein(buf: &mut [Complex64], sign: f64) {
    let n = buf.len();
    let m = (2 * n - 1).next_power_of_two();
    // chirp[k] = e^{sign·jπk²/n}; k² taken mod 2n to keep the angle small
    let chirp: Vec<Complex64> = (0..n)
        .map(|k| {
            let k2 = (k as u128 * k as u128 % (2 * n as u128)) as f64;
            let angle = sign * PI * k2 / n as f64;
            Complex64::new(angle.cos(), angle.sin())
        })
        .collect();
    let mut a = vec![Complex64::new(0.0, 0.0); m];
    for k in 0..n {
        a[k] = buf[k] * chirp[k];
    }
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    b[0] = chirp[0].conj();
    for k in 1..n {
        b[k] = chirp[k].conj();
        b[m - k] = chirp[k].conj();
    }
    radix2(&mut a, -1.0);
    radix2(&mut b, -1.0);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    radix2(&mut a, 1.0);
    let scale = 1.0 / m as f64;
    for k in 0..n {
        buf[k] = a[k] * chirp[k] * scale;
    }
}

fn transform(buf: &mut [Complex64], sign: f64) {
    let n = buf.len();
    if n <= 1 {
        return;
    }
    if n.is_power_of_two() {
        radix2(buf, sign);
    } else {
        bluestein(buf, sign);
    }
}

/// In-place forward DFT of any length.
pub fn fft(buf: &mut [Complex64]) {
    transform(buf, -1.0);
}

/// In-place inverse DFT of any length, scaled by `1/N`.
pub fn ifft(buf: &mut [Complex64]) {
    transform(buf, 1.0);
    let scale = 1.0 / buf.len().max(1) as f64;
    for x in buf.iter_mut() {
        *x *= scale;
    }
}

/// Forward DFT of a real sequence, zero-padded to `n`.
pub fn fft_real(x: &[f64], n: usize) -> Vec<Complex64> {
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (b, &v) in buf.iter_mut().zip(x) {
        b.re = v;
    }
    fft(&mut buf);
    buf
}

/// Linear convolution via zero-padded FFT. Output length `a.len() + b.len() - 1`.
pub fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let out_len = a.len() + b.len() - 1;
    let n = out_len.next_power_of_two();
    let mut fa = fft_real(a, n);
    let fb = fft_real(b, n);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    ifft(&mut fa);
    fa.truncate(out_len);
    fa.into_iter().map(|z| z.re).collect()
}

/// Direct O(n·m) convolution.
pub fn convolve_direct(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
