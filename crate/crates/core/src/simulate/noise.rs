use alloc::vec::Vec;

use crate::{AudioClip, Error, Result};

/// Background noise mixed in at a fixed signal-to-noise ratio.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseScene {
    pub noise: AudioClip,
    pub snr_db: f64,
    /// First noise sample used; the noise loops when shorter than the clip.
    pub offset: usize,
}

impl NoiseScene {
    pub fn new(noise: AudioClip, snr_db: f64) -> Self {
        Self { noise, snr_db, offset: 0 }
    }

    pub fn with_offset(mut self, offset: usize) -> Self {
        self.offset = offset;
        self
    }
}

fn power(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>() / x.len().max(1) as f64
}

/// Adds the scene's noise so that `10·log10(P_signal / P_noise)` equals
/// `snr_db`; the sum is scaled to a peak of 1 should it clip.
pub fn mix_noise(clip: &AudioClip, scene: &NoiseScene) -> Result<AudioClip> {
    if scene.noise.sample_rate_hz() != clip.sample_rate_hz() {
        return Err(Error::InvalidParameter("noise and clip sample rates differ"));
    }
    let noise = scene.noise.samples();
    if noise.is_empty() || power(noise) <= 0.0 {
        return Err(Error::SilentNoise);
    }
    let segment: Vec<f64> = (0..clip.len()).map(|i| noise[(scene.offset + i) % noise.len()]).collect();
    let p_noise = power(&segment);
    if p_noise <= 0.0 {
        return Err(Error::SilentNoise);
    }
    let p_signal = power(clip.samples());
    let scale = libm::sqrt(p_signal / (p_noise * libm::pow(10.0, scene.snr_db / 10.0)));
    let mut y: Vec<f64> = clip.samples().iter().zip(&segment).map(|(s, n)| s + scale * n).collect();
    let peak = y.iter().fold(0.0_f64, |p, v| p.max(v.abs()));
    if peak > 1.0 {
        y.iter_mut().for_each(|v| *v /= peak);
    }
    clip.map_samples(y)
}

/// Distance as attenuation plus a matching SNR loss, both a fixed number
/// of dB per doubling beyond the reference distance. Room acoustics are
/// not modeled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceModel {
    pub reference_m: f64,
    pub snr_at_reference_db: f64,
    pub db_per_doubling: f64,
}

impl Default for DistanceModel {
    fn default() -> Self {
        Self {
            reference_m: 0.1,
            snr_at_reference_db: 30.0,
            db_per_doubling: 6.0,
        }
    }
}

impl DistanceModel {
    pub fn loss_db(&self, distance_m: f64) -> f64 {
        self.db_per_doubling * libm::log2(distance_m / self.reference_m)
    }
}

/// Renders `clip` as heard from `distance_m` with `noise` in the room.
pub fn at_distance(clip: &AudioClip, model: &DistanceModel, distance_m: f64, noise: &AudioClip) -> Result<AudioClip> {
    if !(distance_m > 0.0 && model.reference_m > 0.0) {
        return Err(Error::InvalidParameter("distances must be positive"));
    }
    let loss = model.loss_db(distance_m);
    let gain = libm::pow(10.0, -loss / 20.0);
    let attenuated = clip.map_samples(clip.samples().iter().map(|s| (s * gain).clamp(-1.0, 1.0)).collect())?;
    mix_noise(&attenuated, &NoiseScene::new(noise.clone(), model.snr_at_reference_db - loss))
}
