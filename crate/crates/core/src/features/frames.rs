//! Frame-based features: MFCC, chromagram and tonal centroid, plus the
//! frame RMS values behind the low energy rate.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::temporal::{frame_rms, low_energy_rate_of};
use crate::spectral::{dct_ii, hann, FrameLayout, MelFilterbank, Spectrum, SpectrumAnalyzer};
use crate::{AudioClip, Result};

pub const MFCC_COEFFICIENTS: usize = 13;
pub const MFCC_MEL_FILTERS: usize = 26;
pub const MFCC_LOG_FLOOR: f64 = 1e-10;
/// Bins below this frequency are left out of the chromagram.
pub const CHROMA_MIN_HZ: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MfccConfig {
    pub n_filters: usize,
    pub n_coefficients: usize,
    pub f_min_hz: f64,
    /// Upper band edge; `None` means Nyquist.
    pub f_max_hz: Option<f64>,
}

impl Default for MfccConfig {
    fn default() -> Self {
        Self {
            n_filters: MFCC_MEL_FILTERS,
            n_coefficients: MFCC_COEFFICIENTS,
            f_min_hz: 0.0,
            f_max_hz: None,
        }
    }
}

/// Log mel energies (floored) followed by the DCT-II.
pub fn cepstrum(mel_energies: &[f64], n_coefficients: usize) -> Vec<f64> {
    let logs: Vec<f64> = mel_energies
        .iter()
        .map(|&e| libm::log(e.max(MFCC_LOG_FLOOR)))
        .collect();
    dct_ii(&logs, n_coefficients)
}

/// Adds `m²` of every bin at or above 20 Hz to pitch class
/// `round(12 log2(f / 440)) mod 12`. Class 0 is A, class 3 is C.
pub fn chroma_from_spectrum(spec: &Spectrum, acc: &mut [f64; 12]) {
    for (&f, &m) in spec.bin_freq_hz.iter().zip(&spec.magnitude) {
        if f < CHROMA_MIN_HZ {
            continue;
        }
        let class = libm::round(12.0 * libm::log2(f / 440.0)) as i64;
        acc[class.rem_euclid(12) as usize] += m * m;
    }
}

/// Frame-level analysis of one clip.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameFeatures {
    pub low_energy_rate: f64,
    pub mfcc: Option<Vec<f64>>,
    /// L1-normalized; uniform when the clip is silent.
    pub chroma: [f64; 12],
}

impl FrameFeatures {
    /// MFCC frames are Hann-windowed; chroma frames are not, so that a tone
    /// centred on a bin stays inside its own pitch class.
    pub fn analyze(clip: &AudioClip, config: &MfccConfig, with_mfcc: bool) -> Result<Self> {
        let layout = FrameLayout::standard(clip)?;
        let rate = f64::from(clip.sample_rate_hz());
        let samples = clip.samples();
        let analyzer = SpectrumAnalyzer::new(layout.frame_length);

        let mfcc = if with_mfcc {
            let window = hann(layout.frame_length);
            let mut bank: Option<MelFilterbank> = None;
            let mut sums = vec![0.0; config.n_coefficients];
            let mut windowed = vec![0.0; layout.frame_length];
            for r in layout.ranges() {
                for ((w, s), h) in windowed.iter_mut().zip(&samples[r]).zip(&window) {
                    *w = s * h;
                }
                let spec = analyzer.spectrum(&windowed, rate);
                if bank.is_none() {
                    bank = Some(MelFilterbank::new(
                        &spec.bin_freq_hz,
                        spec.nyquist_hz(),
                        config.n_filters,
                        config.f_min_hz,
                        config.f_max_hz.unwrap_or(spec.nyquist_hz()),
                    )?);
                }
                let energies = bank.as_ref().expect("built above").energies(&spec);
                for (acc, c) in sums.iter_mut().zip(cepstrum(&energies, config.n_coefficients)) {
                    *acc += c;
                }
            }
            let n = layout.count as f64;
            Some(sums.into_iter().map(|s| s / n).collect())
        } else {
            None
        };

        let mut chroma = [0.0; 12];
        for r in layout.ranges() {
            chroma_from_spectrum(&analyzer.spectrum(&samples[r], rate), &mut chroma);
        }
        // Averaging over frames divides every class by the same count, which
        // the L1 normalization cancels.
        normalize_chroma(&mut chroma);

        Ok(Self {
            low_energy_rate: low_energy_rate_of(&frame_rms(samples, &layout)),
            mfcc,
            chroma,
        })
    }
}

fn normalize_chroma(chroma: &mut [f64; 12]) {
    let total: f64 = chroma.iter().sum();
    if total > 0.0 {
        chroma.iter_mut().for_each(|c| *c /= total);
    } else {
        *chroma = [1.0 / 12.0; 12];
    }
}

/// Mean of the first 13 cepstral coefficients over 50 ms frames.
pub fn mfcc(clip: &AudioClip) -> Result<Vec<f64>> {
    Ok(FrameFeatures::analyze(clip, &MfccConfig::default(), true)?
        .mfcc
        .expect("requested"))
}

/// 12-bin pitch-class energy distribution summing to 1.
pub fn chromagram(clip: &AudioClip) -> Result<[f64; 12]> {
    Ok(FrameFeatures::analyze(clip, &MfccConfig::default(), false)?.chroma)
}

/// Angle step and radius of the fifths, major-thirds and minor-thirds
/// circles.
const TONAL_CIRCLES: [(f64, f64); 3] = [(7.0 * PI / 6.0, 1.0), (3.0 * PI / 2.0, 1.0), (2.0 * PI / 3.0, 0.5)];

/// Projects a chroma vector onto the three pitch-interval circles.
pub fn tonal_centroid_of(chroma: &[f64; 12]) -> [f64; 6] {
    let norm: f64 = chroma.iter().map(|c| c.abs()).sum();
    let mut out = [0.0; 6];
    if !(norm > 0.0) {
        return out;
    }
    for (l, &c) in chroma.iter().enumerate() {
        for (j, &(theta, radius)) in TONAL_CIRCLES.iter().enumerate() {
            let angle = l as f64 * theta;
            out[2 * j] += radius * libm::sin(angle) * c;
            out[2 * j + 1] += radius * libm::cos(angle) * c;
        }
    }
    out.iter_mut().for_each(|v| *v /= norm);
    out
}

pub fn tonal_centroid(clip: &AudioClip) -> Result<[f64; 6]> {
    Ok(tonal_centroid_of(&chromagram(clip)?))
}
