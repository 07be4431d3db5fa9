//! Time-domain clips, channel downmixing and band-limited resampling.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{Error, Result};

/// Lowest sample rate accepted anywhere in the pipeline.
pub const MIN_RATE_HZ: u32 = 4000;

const AMPLITUDE_SLACK: f64 = 1e-9;

/// Mono audio samples in `[-1, 1]` at a fixed sample rate.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AudioClip {
    samples: Vec<f64>,
    sample_rate_hz: u32,
    /// Device id for clips drawn from a labeled corpus.
    pub source_label: Option<String>,
}

impl AudioClip {
    pub fn new(samples: Vec<f64>, sample_rate_hz: u32) -> Result<Self> {
        if sample_rate_hz < MIN_RATE_HZ {
            return Err(Error::RateTooLow(sample_rate_hz));
        }
        if let Some((index, &value)) = samples
            .iter()
            .enumerate()
            .find(|(_, s)| !(s.abs() <= 1.0 + AMPLITUDE_SLACK))
        {
            return Err(Error::SampleOutOfRange { index, value });
        }
        Ok(Self {
            samples,
            sample_rate_hz,
            source_label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.source_label = Some(label.into());
        self
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn sample_rate_hz(&self) -> u32 {
        self.sample_rate_hz
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / f64::from(self.sample_rate_hz)
    }

    /// Replaces the samples, keeping rate and label. Amplitudes are re-checked.
    pub fn map_samples(&self, samples: Vec<f64>) -> Result<Self> {
        let mut clip = Self::new(samples, self.sample_rate_hz)?;
        clip.source_label.clone_from(&self.source_label);
        Ok(clip)
    }

    pub(crate) fn ensure_non_empty(&self) -> Result<()> {
        if self.samples.is_empty() {
            Err(Error::EmptyAudio)
        } else {
            Ok(())
        }
    }
}

/// Averages interleaved channels into one.
///
/// `interleaved.len()` must be a multiple of `channels`; a trailing partial
/// frame is dropped.
pub fn downmix(interleaved: &[f64], channels: usize) -> Vec<f64> {
    if channels <= 1 {
        return interleaved.to_vec();
    }
    let scale = 1.0 / channels as f64;
    interleaved
        .chunks_exact(channels)
        .map(|frame| frame.iter().sum::<f64>() * scale)
        .collect()
}

/// Zero crossings of the lower-rate sinc kept on each side of the kernel
/// centre, giving a 64-tap kernel at the lower of the two rates.
const HALF_TAPS: usize = 32;
/// Above this many distinct phases the polyphase table is skipped and the
/// kernel is evaluated per output sample.
const MAX_TABLE_PHASES: usize = 1024;

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        1.0
    } else {
        libm::sin(PI * x) / (PI * x)
    }
}

fn blackman(t: f64) -> f64 {
    // t in [-1, 1]
    if t.abs() >= 1.0 {
        return 0.0;
    }
    let u = PI * (t + 1.0);
    0.42 - 0.5 * libm::cos(u) + 0.08 * libm::cos(2.0 * u)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

struct SincKernel {
    /// Cutoff as a fraction of the input Nyquist.
    cutoff: f64,
    /// Half-width in input samples.
    half_width: f64,
}

impl SincKernel {
    fn new(source: u32, target: u32) -> Self {
        let cutoff = (f64::from(target) / f64::from(source)).min(1.0);
        Self {
            cutoff,
            half_width: HALF_TAPS as f64 / cutoff,
        }
    }

    fn first_tap(&self, pos: f64) -> i64 {
        libm::floor(pos - self.half_width) as i64 + 1
    }

    fn span(&self) -> usize {
        2 * libm::ceil(self.half_width) as usize + 1
    }

    /// Normalized taps for the output sample centred at `pos` (input units).
    fn taps(&self, pos: f64, out: &mut Vec<f64>) -> i64 {
        let start = self.first_tap(pos);
        out.clear();
        for j in 0..self.span() {
            let tau = pos - (start + j as i64) as f64;
            out.push(self.cutoff * sinc(self.cutoff * tau) * blackman(tau / self.half_width));
        }
        let sum: f64 = out.iter().sum();
        if sum.abs() > 0.0 {
            out.iter_mut().for_each(|t| *t /= sum);
        }
        start
    }
}

fn convolve_at(input: &[f64], start: i64, taps: &[f64]) -> f64 {
    let n = input.len() as i64;
    let mut acc = 0.0;
    for (j, &t) in taps.iter().enumerate() {
        let idx = start + j as i64;
        if (0..n).contains(&idx) {
            acc += input[idx as usize] * t;
        }
    }
    acc
}

/// Converts `clip` to `target_rate_hz` with windowed-sinc interpolation.
///
/// The kernel is a Blackman-windowed sinc with its cutoff at the lower
/// Nyquist frequency and 64 taps measured at the lower rate. Taps are
/// normalized to unit sum so DC passes unchanged. When the rate ratio
/// reduces to a small number of phases the kernels are tabulated once.
pub fn resample(clip: &AudioClip, target_rate_hz: u32) -> Result<AudioClip> {
    if target_rate_hz < MIN_RATE_HZ {
        return Err(Error::RateTooLow(target_rate_hz));
    }
    let source = clip.sample_rate_hz();
    if target_rate_hz == source {
        return Ok(clip.clone());
    }
    let input = clip.samples();
    let out_len = libm::round(input.len() as f64 * f64::from(target_rate_hz) / f64::from(source))
        as usize;
    let kernel = SincKernel::new(source, target_rate_hz);
    let g = gcd(u64::from(source), u64::from(target_rate_hz));
    let up = (u64::from(target_rate_hz) / g) as usize;
    let down = u64::from(source) / g;

    let mut out = Vec::with_capacity(out_len);
    if up <= MAX_TABLE_PHASES {
        // Output n sits at input position n * down / up; its fractional
        // part depends only on n mod up.
        let mut table = Vec::with_capacity(up);
        let mut scratch = Vec::new();
        for phase in 0..up {
            let frac = phase as f64 / up as f64;
            let offset = kernel.taps(frac, &mut scratch);
            table.push((offset, scratch.clone()));
        }
        for n in 0..out_len {
            let whole = (n as u64 * down) / up as u64;
            let phase = ((n as u64 * down) % up as u64) as usize;
            let (offset, taps) = &table[phase];
            out.push(convolve_at(input, whole as i64 + offset, taps));
        }
    } else {
        let ratio = f64::from(source) / f64::from(target_rate_hz);
        let mut taps = Vec::new();
        for n in 0..out_len {
            let start = kernel.taps(n as f64 * ratio, &mut taps);
            out.push(convolve_at(input, start, &taps));
        }
    }
    // Band-limited interpolation can overshoot full scale slightly.
    for s in &mut out {
        *s = s.clamp(-1.0, 1.0);
    }
    let mut resampled = AudioClip::new(out, target_rate_hz)?;
    resampled.source_label.clone_from(&clip.source_label);
    Ok(resampled)
}
