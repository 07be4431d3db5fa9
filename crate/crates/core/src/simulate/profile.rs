use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::ResponseCurve;
use crate::fft::{Complex64, Fft};
use crate::{seed, AudioClip, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ControlPoint {
    pub freq_hz: f64,
    pub gain_db: f64,
}

/// One virtual unit's imperfection model.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DeviceProfile {
    pub device_id: String,
    pub gain_db: f64,
    /// Response deviation at increasing frequencies; empty means flat.
    pub response: Vec<ControlPoint>,
    /// Coefficient `c` of the `x + c·x³` stage.
    pub nonlinearity: f64,
    /// RMS level of the additive white noise, dBFS.
    pub noise_floor_db: f64,
    pub seed: u64,
}

impl DeviceProfile {
    /// A transparent device: no gain, flat response, no distortion and a
    /// noise floor far below 16-bit resolution.
    pub fn identity(device_id: impl Into<String>) -> Self {
        Self {
            device_id: device_id.into(),
            gain_db: 0.0,
            response: Vec::new(),
            nonlinearity: 0.0,
            noise_floor_db: -200.0,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.nonlinearity >= 0.0) {
            return Err(Error::InvalidParameter("nonlinearity must be non-negative"));
        }
        if self.response.iter().any(|p| !(p.freq_hz > 0.0)) {
            return Err(Error::InvalidParameter("control frequencies must be positive"));
        }
        if self.response.windows(2).any(|w| !(w[0].freq_hz < w[1].freq_hz)) {
            return Err(Error::InvalidParameter("control frequencies must increase"));
        }
        if !(self.gain_db.is_finite() && self.noise_floor_db.is_finite()) {
            return Err(Error::InvalidParameter("gain and noise floor must be finite"));
        }
        Ok(())
    }
}

/// Parameter ranges that device profiles are drawn from.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ProfileRanges {
    /// Gains are uniform in `±gain_db`.
    pub gain_db: f64,
    /// Each control point's deviation is uniform in `±response_dev_db`.
    pub response_dev_db: f64,
    /// Control points, log-spaced from 100 Hz to 16 kHz.
    pub control_points: usize,
    /// Nonlinearity is uniform in `[0, nonlinearity_max]`.
    pub nonlinearity_max: f64,
    /// Noise floor is uniform in this dBFS interval.
    pub noise_floor_db: (f64, f64),
}

pub const RESPONSE_LOW_HZ: f64 = 100.0;
pub const RESPONSE_HIGH_HZ: f64 = 16000.0;

/// Preset ranges: units from different vendors, or units of one model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ProfileScale {
    Vendor,
    SameModel,
}

impl ProfileScale {
    pub fn ranges(self) -> ProfileRanges {
        match self {
            ProfileScale::Vendor => ProfileRanges {
                gain_db: 6.0,
                response_dev_db: 6.0,
                control_points: 12,
                nonlinearity_max: 0.05,
                noise_floor_db: (-72.0, -60.0),
            },
            ProfileScale::SameModel => ProfileRanges {
                gain_db: 0.5,
                response_dev_db: 0.5,
                control_points: 12,
                nonlinearity_max: 0.005,
                noise_floor_db: (-66.0, -60.0),
            },
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ProfileScale::Vendor => "vendor",
            ProfileScale::SameModel => "same_model",
        }
    }
}

impl ProfileRanges {
    pub fn control_frequencies(&self) -> Vec<f64> {
        let n = self.control_points;
        if n == 1 {
            return vec![libm::sqrt(RESPONSE_LOW_HZ * RESPONSE_HIGH_HZ)];
        }
        let ratio = RESPONSE_HIGH_HZ / RESPONSE_LOW_HZ;
        (0..n)
            .map(|i| RESPONSE_LOW_HZ * libm::pow(ratio, i as f64 / (n - 1) as f64))
            .collect()
    }

    pub fn draw(&self, device_id: impl Into<String>, profile_seed: u64) -> DeviceProfile {
        let mut rng = seed::rng(profile_seed);
        let mut symmetric = |half: f64| if half > 0.0 { rng.random_range(-half..=half) } else { 0.0 };
        let gain_db = symmetric(self.gain_db);
        let response = self
            .control_frequencies()
            .into_iter()
            .map(|freq_hz| ControlPoint {
                freq_hz,
                gain_db: symmetric(self.response_dev_db),
            })
            .collect();
        let nonlinearity = if self.nonlinearity_max > 0.0 {
            rng.random_range(0.0..=self.nonlinearity_max)
        } else {
            0.0
        };
        let (lo, hi) = self.noise_floor_db;
        let noise_floor_db = if hi > lo { rng.random_range(lo..=hi) } else { lo };
        DeviceProfile {
            device_id: device_id.into(),
            gain_db,
            response,
            nonlinearity,
            noise_floor_db,
            seed: profile_seed,
        }
    }
}

/// Zero-padding added before frequency-domain filtering so the symmetric
/// impulse response does not wrap onto the signal.
const FILTER_PAD: usize = 8192;

fn zero_phase_filter(samples: &[f64], rate: f64, curve: &ResponseCurve) -> Vec<f64> {
    let m = (samples.len() + FILTER_PAD).next_power_of_two();
    let fft = Fft::new(m);
    let mut buf: Vec<Complex64> = samples
        .iter()
        .map(|&x| Complex64::new(x, 0.0))
        .chain(core::iter::repeat(Complex64::new(0.0, 0.0)))
        .take(m)
        .collect();
    fft.forward(&mut buf);
    for (k, z) in buf.iter_mut().enumerate() {
        // Mirror the upper half so the gain is real and even in frequency.
        let bin = if k <= m / 2 { k } else { m - k };
        *z *= curve.linear_gain(bin as f64 * rate / m as f64);
    }
    fft.inverse(&mut buf);
    buf.truncate(samples.len());
    buf.into_iter().map(|z| z.re).collect()
}

/// Renders `clip` through `profile`, drawing the noise floor from
/// `noise_seed`.
///
/// Stages: gain, zero-phase response filtering, `(x + c·x³) / (1 + c)`,
/// additive white Gaussian noise. Should the result exceed full scale it
/// is scaled back to a peak of 1.
pub fn render(clip: &AudioClip, profile: &DeviceProfile, noise_seed: u64) -> Result<AudioClip> {
    profile.validate()?;
    let gain = libm::pow(10.0, profile.gain_db / 20.0);
    let mut y: Vec<f64> = clip.samples().iter().map(|x| x * gain).collect();
    let curve = ResponseCurve::new(&profile.response);
    if !curve.is_flat() {
        y = zero_phase_filter(&y, f64::from(clip.sample_rate_hz()), &curve);
    }
    let c = profile.nonlinearity;
    if c > 0.0 {
        y.iter_mut().for_each(|x| *x = (*x + c * *x * *x * *x) / (1.0 + c));
    }
    let noise_rms = libm::pow(10.0, profile.noise_floor_db / 20.0);
    let mut rng = seed::rng(noise_seed);
    for x in &mut y {
        let e: f64 = StandardNormal.sample(&mut rng);
        *x += noise_rms * e;
    }
    let peak = y.iter().fold(0.0_f64, |p, x| p.max(x.abs()));
    if peak > 1.0 {
        y.iter_mut().for_each(|x| *x /= peak);
    }
    let mut out = AudioClip::new(y, clip.sample_rate_hz())?;
    out.source_label = Some(profile.device_id.clone());
    Ok(out)
}

/// [`render`] with the profile's own seed.
pub fn apply_profile(clip: &AudioClip, profile: &DeviceProfile) -> Result<AudioClip> {
    render(clip, profile, profile.seed)
}
