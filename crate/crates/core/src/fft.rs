//! Complex FFT of arbitrary length.
//!
//! Power-of-two sizes use an iterative radix-2 transform; every other size
//! goes through Bluestein's chirp-z reformulation on a padded power-of-two
//! transform. Plans precompute twiddles and can be shared across frames.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

pub use num_complex::Complex64;

#[derive(Debug, Clone)]
struct Radix2 {
    n: usize,
    /// exp(-2πik/n) for k < n/2.
    twiddles: Vec<Complex64>,
}

impl Radix2 {
    fn new(n: usize) -> Self {
        debug_assert!(n.is_power_of_two());
        let twiddles = (0..n / 2)
            .map(|k| unit(-2.0 * PI * k as f64 / n as f64))
            .collect();
        Self { n, twiddles }
    }

    fn process(&self, buf: &mut [Complex64], inverse: bool) {
        let n = self.n;
        debug_assert_eq!(buf.len(), n);
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
        let mut len = 2;
        while len <= n {
            let half = len / 2;
            let stride = n / len;
            for start in (0..n).step_by(len) {
                for k in 0..half {
                    let mut w = self.twiddles[k * stride];
                    if inverse {
                        w = w.conj();
                    }
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

#[derive(Debug, Clone)]
struct Bluestein {
    n: usize,
    inner: Radix2,
    /// exp(-iπk²/n) for k < n.
    chirp: Vec<Complex64>,
    /// Forward transform of the conjugate chirp, wrapped and padded.
    kernel_spectrum: Vec<Complex64>,
}

impl Bluestein {
    fn new(n: usize) -> Self {
        let m = (2 * n - 1).next_power_of_two();
        let inner = Radix2::new(m);
        let two_n = 2 * n as u64;
        // k² is reduced mod 2n before scaling to keep the angle accurate.
        let chirp: Vec<Complex64> = (0..n as u64)
            .map(|k| unit(-PI * ((k * k) % two_n) as f64 / n as f64))
            .collect();
        let mut kernel = vec![Complex64::new(0.0, 0.0); m];
        kernel[0] = chirp[0].conj();
        for k in 1..n {
            kernel[k] = chirp[k].conj();
            kernel[m - k] = chirp[k].conj();
        }
        inner.process(&mut kernel, false);
        Self {
            n,
            inner,
            chirp,
            kernel_spectrum: kernel,
        }
    }

    fn process(&self, buf: &mut [Complex64], inverse: bool) {
        // The inverse transform is conj(DFT(conj(x))).
        if inverse {
            buf.iter_mut().for_each(|x| *x = x.conj());
        }
        let m = self.inner.n;
        let mut work = vec![Complex64::new(0.0, 0.0); m];
        for k in 0..self.n {
            work[k] = buf[k] * self.chirp[k];
        }
        self.inner.process(&mut work, false);
        for (w, &kspec) in work.iter_mut().zip(&self.kernel_spectrum) {
            *w *= kspec;
        }
        self.inner.process(&mut work, true);
        let scale = 1.0 / m as f64;
        for k in 0..self.n {
            buf[k] = work[k] * scale * self.chirp[k];
        }
        if inverse {
            buf.iter_mut().for_each(|x| *x = x.conj());
        }
    }
}

#[derive(Debug, Clone)]
enum Algorithm {
    Radix2(Radix2),
    Bluestein(Bluestein),
}

/// A reusable transform plan for one length.
#[derive(Debug, Clone)]
pub struct Fft {
    len: usize,
    algorithm: Algorithm,
}

impl Fft {
    pub fn new(len: usize) -> Self {
        assert!(len > 0, "FFT length must be positive");
        let algorithm = if len.is_power_of_two() {
            Algorithm::Radix2(Radix2::new(len))
        } else {
            Algorithm::Bluestein(Bluestein::new(len))
        };
        Self { len, algorithm }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Unnormalized forward DFT, X_k = Σ x_n e^{-2πikn/N}.
    pub fn forward(&self, buf: &mut [Complex64]) {
        assert_eq!(buf.len(), self.len);
        match &self.algorithm {
            Algorithm::Radix2(r) => r.process(buf, false),
            Algorithm::Bluestein(b) => b.process(buf, false),
        }
    }

    /// Inverse DFT including the 1/N factor.
    pub fn inverse(&self, buf: &mut [Complex64]) {
        assert_eq!(buf.len(), self.len);
        match &self.algorithm {
            Algorithm::Radix2(r) => r.process(buf, true),
            Algorithm::Bluestein(b) => b.process(buf, true),
        }
        let scale = 1.0 / self.len as f64;
        buf.iter_mut().for_each(|x| *x *= scale);
    }

    /// Forward transform of a real signal.
    pub fn forward_real(&self, input: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = input.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.forward(&mut buf);
        buf
    }
}

fn unit(angle: f64) -> Complex64 {
    Complex64::new(libm::cos(angle), libm::sin(angle))
}
