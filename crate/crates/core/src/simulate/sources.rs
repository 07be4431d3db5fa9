//! Synthetic source material so experiments run without a recorded corpus.
//! Each generator is deterministic in its seed and peaks near 0.25.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::fft::{Complex64, Fft};
use crate::{seed, AudioClip};

const TARGET_PEAK: f64 = 0.25;

fn len_of(rate: u32, seconds: f64) -> usize {
    libm::round(seconds.max(0.0) * rate as f64) as usize
}

fn finish(mut x: Vec<f64>, rate: u32) -> AudioClip {
    let peak = x.iter().fold(0.0_f64, |p, v| p.max(v.abs()));
    if peak > 0.0 {
        x.iter_mut().for_each(|v| *v *= TARGET_PEAK / peak);
    }
    AudioClip::new(x, rate).expect("generator output is in range")
}

/// Noise with a 1/f power spectrum, shaped in the frequency domain.
pub fn pink_noise(rate: u32, seconds: f64, seed: u64) -> AudioClip {
    let n = len_of(rate, seconds);
    if n == 0 {
        return finish(Vec::new(), rate);
    }
    let mut rng = seed::rng(seed);
    let mut buf: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(StandardNormal.sample(&mut rng), 0.0))
        .collect();
    let fft = Fft::new(n);
    fft.forward(&mut buf);
    for (k, c) in buf.iter_mut().enumerate() {
        let bin = k.min(n - k);
        *c *= if bin == 0 { 0.0 } else { 1.0 / libm::sqrt(bin as f64) };
    }
    fft.inverse(&mut buf);
    finish(buf.iter().map(|c| c.re).collect(), rate)
}

fn envelope(t: f64, duration: f64, attack: f64, decay: f64) -> f64 {
    if t < 0.0 || t >= duration {
        0.0
    } else if t < attack {
        t / attack
    } else {
        let release = ((duration - t) / 0.02).min(1.0);
        libm::exp(-(t - attack) / decay) * release
    }
}

/// A plucked melody over two octaves of a major scale, with the odd
/// two-note chord. Harmonics above 45% of the sample rate are dropped.
pub fn instrumental(rate: u32, seconds: f64, seed: u64) -> AudioClip {
    const SCALE: [i32; 7] = [0, 2, 4, 5, 7, 9, 11];
    let n = len_of(rate, seconds);
    let fs = rate as f64;
    let mut rng = seed::rng(seed);
    let mut out = vec![0.0; n];
    let mut start = 0.0;
    while start < seconds {
        let duration = rng.random_range(0.12..0.35);
        let voices = if rng.random_bool(0.25) { 2 } else { 1 };
        for _ in 0..voices {
            let degree = SCALE[rng.random_range(0..SCALE.len())] + 12 * rng.random_range(0..2);
            let f0 = 196.0 * libm::exp2(degree as f64 / 12.0);
            let brightness = rng.random_range(0.8..1.6);
            let decay = rng.random_range(0.08..0.3);
            let level = rng.random_range(0.5..1.0);
            let phases: Vec<f64> = (0..16).map(|_| rng.random_range(0.0..2.0 * PI)).collect();
            let first = libm::floor(start * fs) as usize;
            let last = (libm::ceil((start + duration) * fs) as usize).min(n);
            for (h, phase) in phases.iter().enumerate() {
                let f = f0 * (h + 1) as f64;
                if f > 0.45 * fs {
                    break;
                }
                let amp = level * libm::pow((h + 1) as f64, -brightness);
                for (i, slot) in out.iter_mut().enumerate().take(last).skip(first) {
                    let t = i as f64 / fs - start;
                    *slot += amp * envelope(t, duration, 0.008, decay) * libm::sin(2.0 * PI * f * t + phase);
                }
            }
        }
        start += duration;
    }
    finish(out, rate)
}

const VOWELS: [[f64; 3]; 5] = [
    [730.0, 1090.0, 2440.0],
    [530.0, 1840.0, 2480.0],
    [270.0, 2290.0, 3010.0],
    [570.0, 840.0, 2410.0],
    [300.0, 870.0, 2240.0],
];

fn formant_gain(f: f64, formants: &[f64; 3]) -> f64 {
    formants
        .iter()
        .enumerate()
        .map(|(j, &fc)| {
            let bw = 60.0 + 40.0 * j as f64;
            let d = (f - fc) / bw;
            libm::pow(0.5, j as f64) / (1.0 + d * d)
        })
        .sum()
}

fn speech_into(out: &mut [f64], fs: f64, rng: &mut impl Rng, level: f64) {
    let seconds = out.len() as f64 / fs;
    let mut start = rng.random_range(0.0..0.1);
    while start < seconds {
        let duration = rng.random_range(0.12..0.3);
        let formants = VOWELS[rng.random_range(0..VOWELS.len())];
        let f0 = rng.random_range(95.0..190.0);
        let glide = rng.random_range(-0.2..0.2);
        let first = libm::floor(start * fs) as usize;
        let last = (libm::ceil((start + duration) * fs) as usize).min(out.len());
        let mut h = 1;
        loop {
            let f = f0 * h as f64;
            if f > 0.45 * fs || f > 4500.0 {
                break;
            }
            let amp = level * formant_gain(f, &formants) / libm::sqrt(h as f64);
            for (i, slot) in out.iter_mut().enumerate().take(last).skip(first) {
                let t = i as f64 / fs - start;
                // pitch contour: phase of f0·(1 + glide·t/duration)
                let phase = 2.0 * PI * f * (t + 0.5 * glide * t * t / duration);
                let env = libm::sin(PI * t / duration).max(0.0);
                *slot += amp * env * libm::sin(phase);
            }
            h += 1;
        }
        start += duration + rng.random_range(0.03..0.15);
    }
}

/// Voiced syllables built from a glide-pitched harmonic series shaped by
/// three vowel formants, separated by short pauses.
pub fn speech_like(rate: u32, seconds: f64, seed: u64) -> AudioClip {
    let mut out = vec![0.0; len_of(rate, seconds)];
    speech_into(&mut out, rate as f64, &mut seed::rng(seed), 1.0);
    finish(out, rate)
}

/// Room-tone ambience: pink noise under distant babble and the occasional
/// short clink.
pub fn ambience(rate: u32, seconds: f64, seed: u64) -> AudioClip {
    let fs = rate as f64;
    let mut out = pink_noise(rate, seconds, seed::derive(seed, &[0])).into_samples();
    let mut rng = seed::rng(seed::derive(seed, &[1]));
    for _ in 0..3 {
        speech_into(&mut out, fs, &mut rng, 0.1);
    }
    let clinks = libm::ceil(seconds) as usize;
    for _ in 0..clinks {
        let at = rng.random_range(0.0..seconds.max(1e-3));
        let f = rng.random_range(2000.0..(0.4 * fs).min(6000.0));
        let first = libm::floor(at * fs) as usize;
        let last = (first + (0.05 * fs) as usize).min(out.len());
        for (i, slot) in out.iter_mut().enumerate().take(last).skip(first) {
            let t = (i - first) as f64 / fs;
            *slot += 0.15 * libm::exp(-t / 0.01) * libm::sin(2.0 * PI * f * t);
        }
    }
    finish(out, rate)
}
