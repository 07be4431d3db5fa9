//! Framing, windowing, magnitude spectra, mel filterbanks, the DCT-II and
//! peak picking. Everything downstream of a clip goes through here.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::Range;

use crate::fft::Fft;
use crate::{AudioClip, Error, Result};

/// Default analysis frame length in milliseconds.
pub const FRAME_MS: f64 = 50.0;
/// Default fraction of each frame shared with the next one.
pub const FRAME_OVERLAP: f64 = 0.5;

/// One-sided magnitude spectrum with its normalized mass function.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Spectrum {
    pub bin_freq_hz: Vec<f64>,
    pub magnitude: Vec<f64>,
    /// `magnitude / Σ magnitude`, or uniform when the spectrum is silent.
    pub weights: Vec<f64>,
    pub sample_rate_hz: f64,
}

impl Spectrum {
    /// Builds a spectrum from explicit bins, computing the weights.
    ///
    /// Frequencies must be strictly increasing and magnitudes non-negative
    /// and finite.
    pub fn from_bins(bin_freq_hz: Vec<f64>, magnitude: Vec<f64>, sample_rate_hz: f64) -> Result<Self> {
        if bin_freq_hz.len() != magnitude.len() || magnitude.is_empty() {
            return Err(Error::InvalidParameter("spectrum needs matching non-empty bins"));
        }
        if bin_freq_hz.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidParameter("bin frequencies must be strictly increasing"));
        }
        if magnitude.iter().any(|m| !(m.is_finite() && *m >= 0.0)) {
            return Err(Error::InvalidParameter("magnitudes must be finite and non-negative"));
        }
        let weights = pmf(&magnitude);
        Ok(Self {
            bin_freq_hz,
            magnitude,
            weights,
            sample_rate_hz,
        })
    }

    pub fn len(&self) -> usize {
        self.magnitude.len()
    }

    pub fn is_empty(&self) -> bool {
        self.magnitude.is_empty()
    }

    pub fn total_magnitude(&self) -> f64 {
        self.magnitude.iter().sum()
    }

    pub fn is_silent(&self) -> bool {
        self.total_magnitude() <= 0.0
    }

    pub fn nyquist_hz(&self) -> f64 {
        self.sample_rate_hz / 2.0
    }
}

fn pmf(magnitude: &[f64]) -> Vec<f64> {
    let total: f64 = magnitude.iter().sum();
    if total > 0.0 {
        magnitude.iter().map(|m| m / total).collect()
    } else {
        vec![1.0 / magnitude.len() as f64; magnitude.len()]
    }
}

/// Reusable magnitude-spectrum computation for one input length.
#[derive(Debug, Clone)]
pub struct SpectrumAnalyzer {
    fft: Fft,
}

impl SpectrumAnalyzer {
    pub fn new(len: usize) -> Self {
        Self { fft: Fft::new(len) }
    }

    pub fn input_len(&self) -> usize {
        self.fft.len()
    }

    /// DFT magnitudes for bins `0..=len/2`, with `f_i = i · rate / len`.
    pub fn spectrum(&self, samples: &[f64], sample_rate_hz: f64) -> Spectrum {
        let n = self.fft.len();
        assert_eq!(samples.len(), n, "analyzer built for a different length");
        let bins = n / 2 + 1;
        let dft = self.fft.forward_real(samples);
        let magnitude: Vec<f64> = dft[..bins].iter().map(|c| libm::hypot(c.re, c.im)).collect();
        let bin_freq_hz = (0..bins).map(|i| i as f64 * sample_rate_hz / n as f64).collect();
        let weights = pmf(&magnitude);
        Spectrum {
            bin_freq_hz,
            magnitude,
            weights,
            sample_rate_hz,
        }
    }
}

/// One-sided magnitude spectrum of `samples`, no window applied.
pub fn magnitude_spectrum(samples: &[f64], sample_rate_hz: f64) -> Result<Spectrum> {
    if samples.is_empty() {
        return Err(Error::EmptyAudio);
    }
    Ok(SpectrumAnalyzer::new(samples.len()).spectrum(samples, sample_rate_hz))
}

/// Periodic Hann window of length `n`.
pub fn hann(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| 0.5 - 0.5 * libm::cos(2.0 * PI * i as f64 / n as f64))
        .collect()
}

/// Frame length in samples for `frame_ms` at `rate`, rounded to the
/// nearest even integer (halves round away from zero).
pub fn frame_length_samples(sample_rate_hz: u32, frame_ms: f64) -> usize {
    let exact = frame_ms * f64::from(sample_rate_hz) / 1000.0;
    (2.0 * libm::round(exact / 2.0)).max(2.0) as usize
}

/// Positions of the frames cut from a signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameLayout {
    pub frame_length: usize,
    pub hop: usize,
    pub count: usize,
}

impl FrameLayout {
    pub fn new(signal_len: usize, sample_rate_hz: u32, frame_ms: f64, overlap_fraction: f64) -> Result<Self> {
        if !(frame_ms > 0.0) {
            return Err(Error::InvalidParameter("frame length must be positive"));
        }
        if !(0.0..1.0).contains(&overlap_fraction) {
            return Err(Error::InvalidParameter("overlap must lie in [0, 1)"));
        }
        let frame_length = frame_length_samples(sample_rate_hz, frame_ms);
        let hop = (libm::round(frame_length as f64 * (1.0 - overlap_fraction)) as usize).max(1);
        if signal_len < frame_length {
            return Err(Error::ClipTooShort {
                needed: frame_length,
                got: signal_len,
            });
        }
        Ok(Self {
            frame_length,
            hop,
            count: 1 + (signal_len - frame_length) / hop,
        })
    }

    /// Default 50 ms frames with 50% overlap.
    pub fn standard(clip: &AudioClip) -> Result<Self> {
        Self::new(clip.len(), clip.sample_rate_hz(), FRAME_MS, FRAME_OVERLAP)
    }

    pub fn ranges(&self) -> impl Iterator<Item = Range<usize>> + '_ {
        (0..self.count).map(move |i| i * self.hop..i * self.hop + self.frame_length)
    }
}

/// Hann-windowed frames of one clip.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameSequence {
    pub frames: Vec<Vec<f64>>,
    pub frame_length_samples: usize,
    pub hop_samples: usize,
    pub sample_rate_hz: u32,
}

/// Cuts `clip` into Hann-windowed frames; the trailing partial frame is
/// discarded.
pub fn frame_signal(clip: &AudioClip, frame_ms: f64, overlap_fraction: f64) -> Result<FrameSequence> {
    let layout = FrameLayout::new(clip.len(), clip.sample_rate_hz(), frame_ms, overlap_fraction)?;
    let window = hann(layout.frame_length);
    let samples = clip.samples();
    let frames = layout
        .ranges()
        .map(|r| samples[r].iter().zip(&window).map(|(s, w)| s * w).collect())
        .collect();
    Ok(FrameSequence {
        frames,
        frame_length_samples: layout.frame_length,
        hop_samples: layout.hop,
        sample_rate_hz: clip.sample_rate_hz(),
    })
}

pub fn hz_to_mel(f: f64) -> f64 {
    2595.0 * libm::log10(1.0 + f / 700.0)
}

pub fn mel_to_hz(mel: f64) -> f64 {
    700.0 * (libm::pow(10.0, mel / 2595.0) - 1.0)
}

#[derive(Debug, Clone)]
struct TriangleFilter {
    first_bin: usize,
    weights: Vec<f64>,
}

/// Triangular filters with centres equally spaced on the mel scale, each
/// scaled to unit area in Hz.
#[derive(Debug, Clone)]
pub struct MelFilterbank {
    filters: Vec<TriangleFilter>,
    bins: usize,
}

impl MelFilterbank {
    pub fn new(bin_freq_hz: &[f64], nyquist_hz: f64, n_filters: usize, f_min_hz: f64, f_max_hz: f64) -> Result<Self> {
        if n_filters == 0 {
            return Err(Error::InvalidParameter("at least one mel filter required"));
        }
        if !(f_min_hz >= 0.0 && f_min_hz < f_max_hz && f_max_hz <= nyquist_hz * (1.0 + 1e-12)) {
            return Err(Error::BadBand {
                low: f_min_hz,
                high: f_max_hz,
            });
        }
        let mel_lo = hz_to_mel(f_min_hz);
        let step = (hz_to_mel(f_max_hz) - mel_lo) / (n_filters + 1) as f64;
        let edges: Vec<f64> = (0..n_filters + 2)
            .map(|i| mel_to_hz(mel_lo + step * i as f64))
            .collect();
        let filters = edges
            .windows(3)
            .map(|e| {
                let (lo, centre, hi) = (e[0], e[1], e[2]);
                let height = 2.0 / (hi - lo);
                let first_bin = bin_freq_hz.partition_point(|&f| f <= lo);
                let end_bin = bin_freq_hz.partition_point(|&f| f < hi);
                let weights = bin_freq_hz[first_bin..end_bin.max(first_bin)]
                    .iter()
                    .map(|&f| {
                        let shape = if f <= centre {
                            (f - lo) / (centre - lo)
                        } else {
                            (hi - f) / (hi - centre)
                        };
                        height * shape
                    })
                    .collect();
                TriangleFilter { first_bin, weights }
            })
            .collect();
        Ok(Self {
            filters,
            bins: bin_freq_hz.len(),
        })
    }

    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    /// Filter outputs `Σ weight · m_i²`.
    pub fn energies(&self, spec: &Spectrum) -> Vec<f64> {
        assert_eq!(spec.len(), self.bins, "filterbank built for a different bin grid");
        self.filters
            .iter()
            .map(|f| {
                f.weights
                    .iter()
                    .zip(&spec.magnitude[f.first_bin..])
                    .map(|(w, m)| w * m * m)
                    .sum()
            })
            .collect()
    }
}

/// Mel-band energies of `spec` for a freshly built filterbank.
pub fn mel_filterbank_energies(spec: &Spectrum, n_filters: usize, f_min_hz: f64, f_max_hz: f64) -> Result<Vec<f64>> {
    let bank = MelFilterbank::new(&spec.bin_freq_hz, spec.nyquist_hz(), n_filters, f_min_hz, f_max_hz)?;
    Ok(bank.energies(spec))
}

/// Orthonormal DCT-II, keeping the first `n_out` coefficients.
///
/// Panics if `n_out` exceeds the input length.
pub fn dct_ii(values: &[f64], n_out: usize) -> Vec<f64> {
    let len = values.len();
    assert!(n_out <= len, "cannot keep {n_out} of {len} DCT coefficients");
    let lf = len as f64;
    (0..n_out)
        .map(|k| {
            let scale = if k == 0 { libm::sqrt(1.0 / lf) } else { libm::sqrt(2.0 / lf) };
            let sum: f64 = values
                .iter()
                .enumerate()
                .map(|(n, &x)| x * libm::cos(PI * (n as f64 + 0.5) * k as f64 / lf))
                .sum();
            scale * sum
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub bin: usize,
    pub freq_hz: f64,
    pub amplitude: f64,
}

/// Relative amplitude below which local maxima count as noise floor.
pub const PEAK_FLOOR: f64 = 1e-4;

/// Local maxima `m[i-1] < m[i] >= m[i+1]` above `PEAK_FLOOR · max`, in
/// ascending frequency. A plateau reports its first bin.
pub fn find_spectral_peaks(spec: &Spectrum) -> Vec<Peak> {
    let m = &spec.magnitude;
    if m.len() < 3 {
        return Vec::new();
    }
    let max = m.iter().copied().fold(0.0, f64::max);
    let floor = PEAK_FLOOR * max;
    (1..m.len() - 1)
        .filter(|&i| m[i - 1] < m[i] && m[i] >= m[i + 1] && m[i] >= floor && m[i] > 0.0)
        .map(|i| Peak {
            bin: i,
            freq_hz: spec.bin_freq_hz[i],
            amplitude: m[i],
        })
        .collect()
}
