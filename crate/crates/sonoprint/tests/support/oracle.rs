//! Slow, direct reference implementations of the frame-based features.
//! Nothing here goes through the library's FFT, filterbank or DCT code.

use std::f64::consts::PI;

pub struct Frames {
    pub len: usize,
    pub starts: Vec<usize>,
}

pub fn frames(total: usize, rate: u32) -> Frames {
    // 50 ms, rounded to an even length, half overlap
    let len = 2 * (0.025 * rate as f64).round() as usize;
    let hop = len / 2;
    let mut starts = Vec::new();
    let mut s = 0;
    while s + len <= total {
        starts.push(s);
        s += hop;
    }
    Frames { len, starts }
}

/// |X_k| for k = 0..=N/2 by the defining sum, with a precomputed twiddle table.
pub fn dft_magnitudes(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let cos: Vec<f64> = (0..n).map(|i| (2.0 * PI * i as f64 / n as f64).cos()).collect();
    let sin: Vec<f64> = (0..n).map(|i| (2.0 * PI * i as f64 / n as f64).sin()).collect();
    (0..=n / 2)
        .map(|k| {
            let (mut re, mut im) = (0.0, 0.0);
            for (t, &v) in x.iter().enumerate() {
                let idx = (k * t) % n;
                re += v * cos[idx];
                im -= v * sin[idx];
            }
            (re * re + im * im).sqrt()
        })
        .collect()
}

fn mel(f: f64) -> f64 {
    2595.0 * (1.0 + f / 700.0).log10()
}

fn inv_mel(m: f64) -> f64 {
    700.0 * (10f64.powf(m / 2595.0) - 1.0)
}

/// Weight of filter `j` (0-based) of `count` unit-area triangles spanning 0..nyquist.
fn triangle(j: usize, count: usize, nyquist: f64, f: f64) -> f64 {
    let step = mel(nyquist) / (count + 1) as f64;
    let lo = inv_mel(step * j as f64);
    let mid = inv_mel(step * (j + 1) as f64);
    let hi = inv_mel(step * (j + 2) as f64);
    if f <= lo || f >= hi {
        return 0.0;
    }
    let rise = (f - lo) / (mid - lo);
    let fall = (hi - f) / (hi - mid);
    rise.min(fall) * 2.0 / (hi - lo)
}

pub fn mfcc(samples: &[f64], rate: u32) -> Vec<f64> {
    let fr = frames(samples.len(), rate);
    let nyquist = rate as f64 / 2.0;
    let bins: Vec<f64> = (0..=fr.len / 2).map(|k| k as f64 * rate as f64 / fr.len as f64).collect();
    let mut mean = [0.0; 13];
    for &s in &fr.starts {
        let windowed: Vec<f64> = (0..fr.len)
            .map(|i| samples[s + i] * (PI * i as f64 / fr.len as f64).sin().powi(2))
            .collect();
        let mags = dft_magnitudes(&windowed);
        let logs: Vec<f64> = (0..26)
            .map(|j| {
                let e: f64 = bins.iter().zip(&mags).map(|(&f, &m)| triangle(j, 26, nyquist, f) * m * m).sum();
                e.max(1e-10).ln()
            })
            .collect();
        for (k, acc) in mean.iter_mut().enumerate() {
            let norm = if k == 0 { (1.0 / 26.0f64).sqrt() } else { (2.0 / 26.0f64).sqrt() };
            let c: f64 = logs
                .iter()
                .enumerate()
                .map(|(n, &l)| l * (PI * k as f64 * (2 * n + 1) as f64 / 52.0).cos())
                .sum();
            *acc += norm * c;
        }
    }
    mean.iter().map(|c| c / fr.starts.len() as f64).collect()
}

/// Pitch class of `f`: semitones from A440, folded into 0..12.
fn pitch_class(f: f64) -> usize {
    let midi = (69.0 + 12.0 * (f / 440.0).log2()).round() as i64;
    (midi - 69).rem_euclid(12) as usize
}

pub fn chroma(samples: &[f64], rate: u32) -> [f64; 12] {
    let fr = frames(samples.len(), rate);
    let mut acc = [0.0; 12];
    for &s in &fr.starts {
        let mags = dft_magnitudes(&samples[s..s + fr.len]);
        for (k, m) in mags.iter().enumerate() {
            let f = k as f64 * rate as f64 / fr.len as f64;
            if f >= 20.0 {
                acc[pitch_class(f)] += m * m;
            }
        }
    }
    let total: f64 = acc.iter().sum();
    acc.map(|v| v / total)
}

pub fn tonal_centroid(chroma: &[f64; 12]) -> [f64; 6] {
    let norm: f64 = chroma.iter().map(|c| c.abs()).sum();
    let steps = [7.0 * PI / 6.0, 3.0 * PI / 2.0, 2.0 * PI / 3.0];
    let radii = [1.0, 1.0, 0.5];
    let mut out = [0.0; 6];
    for d in 0..6 {
        let (step, r) = (steps[d / 2], radii[d / 2]);
        out[d] = (0..12)
            .map(|l| {
                let a = l as f64 * step;
                r * if d % 2 == 0 { a.sin() } else { a.cos() } * chroma[l]
            })
            .sum::<f64>()
            / norm;
    }
    out
}

/// Every element within `rel` of the reference, relative; values within
/// 1e-12 of zero are compared absolutely.
pub fn close(got: &[f64], expected: &[f64], rel: f64) -> bool {
    got.len() == expected.len()
        && got
            .iter()
            .zip(expected)
            .all(|(g, e)| (g - e).abs() <= rel * e.abs() + 1e-12)
}
