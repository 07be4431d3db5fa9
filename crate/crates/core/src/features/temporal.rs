use crate::spectral::FrameLayout;
use crate::{AudioClip, Error, Result};

/// Root mean square amplitude. Zero for an empty slice.
pub fn rms(samples: &[f64]) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    libm::sqrt(samples.iter().map(|x| x * x).sum::<f64>() / samples.len() as f64)
}

/// Fraction of adjacent sample pairs whose sign indicator differs, where
/// the indicator is 1 for strictly positive samples and 0 otherwise. The
/// count over `T - 1` pairs is divided by `T`.
pub fn zcr(samples: &[f64]) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::ClipTooShort {
            needed: 2,
            got: samples.len(),
        });
    }
    let crossings = samples.windows(2).filter(|w| (w[0] > 0.0) != (w[1] > 0.0)).count();
    Ok(crossings as f64 / samples.len() as f64)
}

/// Frame RMS values closer than this (relative) to the mean count as equal.
const LOW_ENERGY_TOLERANCE: f64 = 1e-9;

/// Fraction of 50 ms frames whose RMS is below the mean frame RMS.
pub fn low_energy_rate(clip: &AudioClip) -> Result<f64> {
    let layout = FrameLayout::standard(clip)?;
    Ok(low_energy_rate_of(&frame_rms(clip.samples(), &layout)))
}

pub(crate) fn frame_rms(samples: &[f64], layout: &FrameLayout) -> alloc::vec::Vec<f64> {
    layout.ranges().map(|r| rms(&samples[r])).collect()
}

pub(crate) fn low_energy_rate_of(frame_rms: &[f64]) -> f64 {
    if frame_rms.is_empty() {
        return 0.0;
    }
    let mean = frame_rms.iter().sum::<f64>() / frame_rms.len() as f64;
    let threshold = mean * (1.0 - LOW_ENERGY_TOLERANCE);
    frame_rms.iter().filter(|&&r| r < threshold).count() as f64 / frame_rms.len() as f64
}
