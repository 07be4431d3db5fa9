//! Spectral-shape descriptors over a single magnitude spectrum.

use crate::spectral::{find_spectral_peaks, Spectrum};
use crate::{Error, Result};

pub const ROLLOFF_FRACTION: f64 = 0.85;
pub const BRIGHTNESS_CUTOFF_HZ: f64 = 1500.0;
/// Zero magnitudes are raised to this value inside the geometric mean.
pub const FLATNESS_FLOOR: f64 = 1e-12;

fn require_energy(spec: &Spectrum) -> Result<f64> {
    let total = spec.total_magnitude();
    if total > 0.0 {
        Ok(total)
    } else {
        Err(Error::SilentClip)
    }
}

/// Magnitude-weighted mean frequency.
pub fn spectral_centroid(spec: &Spectrum) -> Result<f64> {
    let total = require_energy(spec)?;
    Ok(spec
        .bin_freq_hz
        .iter()
        .zip(&spec.magnitude)
        .map(|(f, m)| f * m)
        .sum::<f64>()
        / total)
}

/// Shannon entropy in bits of the spectral mass function.
pub fn spectral_entropy(spec: &Spectrum) -> f64 {
    -spec
        .weights
        .iter()
        .filter(|&&w| w > 0.0)
        .map(|&w| w * libm::log2(w))
        .sum::<f64>()
}

/// Squared differences between successive peak amplitudes, relative to the
/// summed squared amplitudes. The peak after the last one is taken as zero.
/// A spectrum without peaks scores 0.
pub fn spectral_irregularity(spec: &Spectrum) -> f64 {
    let peaks = find_spectral_peaks(spec);
    irregularity_of(&peaks.iter().map(|p| p.amplitude).collect::<alloc::vec::Vec<_>>())
}

pub(crate) fn irregularity_of(amplitudes: &[f64]) -> f64 {
    let energy: f64 = amplitudes.iter().map(|a| a * a).sum();
    if energy <= 0.0 {
        return 0.0;
    }
    let diffs: f64 = amplitudes
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let next = amplitudes.get(i + 1).copied().unwrap_or(0.0);
            (a - next) * (a - next)
        })
        .sum();
    diffs / energy
}

/// Central moment of order `order` of the frequency distribution.
fn central_moment(spec: &Spectrum, centroid: f64, order: i32) -> f64 {
    spec.bin_freq_hz
        .iter()
        .zip(&spec.weights)
        .map(|(f, w)| libm::pow(f - centroid, f64::from(order)) * w)
        .sum()
}

/// Standard deviation of frequency around the centroid.
pub fn spectral_spread(spec: &Spectrum) -> Result<f64> {
    let mu = spectral_centroid(spec)?;
    Ok(libm::sqrt(central_moment(spec, mu, 2)))
}

fn standardized_moment(spec: &Spectrum, order: i32) -> Result<f64> {
    let mu = spectral_centroid(spec)?;
    let sigma = libm::sqrt(central_moment(spec, mu, 2));
    if !(sigma > 0.0) {
        return Ok(0.0);
    }
    Ok(central_moment(spec, mu, order) / libm::pow(sigma, f64::from(order)))
}

/// Third standardized moment; 0 when the spread is zero.
pub fn spectral_skewness(spec: &Spectrum) -> Result<f64> {
    standardized_moment(spec, 3)
}

/// Fourth standardized moment; 0 when the spread is zero.
pub fn spectral_kurtosis(spec: &Spectrum) -> Result<f64> {
    standardized_moment(spec, 4)
}

/// Frequency of the first bin at which the cumulative magnitude reaches
/// 85% of the total.
pub fn spectral_rolloff(spec: &Spectrum) -> Result<f64> {
    spectral_rolloff_at(spec, ROLLOFF_FRACTION)
}

pub fn spectral_rolloff_at(spec: &Spectrum, fraction: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&fraction) {
        return Err(Error::InvalidParameter("rolloff fraction must lie in [0, 1]"));
    }
    let target = fraction * require_energy(spec)?;
    let mut acc = 0.0;
    for (f, m) in spec.bin_freq_hz.iter().zip(&spec.magnitude) {
        acc += m;
        if acc >= target {
            return Ok(*f);
        }
    }
    // Only reachable through rounding in the running sum.
    Ok(*spec.bin_freq_hz.last().expect("spectrum is non-empty"))
}

/// Share of total magnitude at or above 1500 Hz.
pub fn spectral_brightness(spec: &Spectrum) -> Result<f64> {
    spectral_brightness_above(spec, BRIGHTNESS_CUTOFF_HZ)
}

pub fn spectral_brightness_above(spec: &Spectrum, cutoff_hz: f64) -> Result<f64> {
    let total = require_energy(spec)?;
    let high: f64 = spec
        .bin_freq_hz
        .iter()
        .zip(&spec.magnitude)
        .filter(|(f, _)| **f >= cutoff_hz)
        .map(|(_, m)| m)
        .sum();
    Ok(high / total)
}

/// Geometric over arithmetic mean of the magnitudes. A silent spectrum
/// scores 0.
pub fn spectral_flatness(spec: &Spectrum) -> f64 {
    let n = spec.len() as f64;
    let mean = spec.total_magnitude() / n;
    if !(mean > 0.0) {
        return 0.0;
    }
    let log_mean = spec
        .magnitude
        .iter()
        .map(|&m| libm::log(m.max(FLATNESS_FLOOR)))
        .sum::<f64>()
        / n;
    (libm::exp(log_mean) / mean).min(1.0)
}
