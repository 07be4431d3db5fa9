//! The fifteen acoustic features and a combined per-clip extractor.
//!
//! Scalar spectral-shape features (codes 4 to 12) are measured on one
//! whole-clip magnitude spectrum. RMS and ZCR read raw samples. Low energy
//! rate, MFCC, chromagram and tonal centroid work on 50 ms frames.

mod frames;
mod shape;
mod temporal;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use frames::{
    cepstrum, chroma_from_spectrum, chromagram, mfcc, tonal_centroid, tonal_centroid_of, FrameFeatures,
    MfccConfig, CHROMA_MIN_HZ, MFCC_COEFFICIENTS, MFCC_LOG_FLOOR, MFCC_MEL_FILTERS,
};
pub use shape::{
    spectral_brightness, spectral_brightness_above, spectral_centroid, spectral_entropy, spectral_flatness,
    spectral_irregularity, spectral_kurtosis, spectral_rolloff, spectral_rolloff_at, spectral_skewness,
    spectral_spread, BRIGHTNESS_CUTOFF_HZ, FLATNESS_FLOOR, ROLLOFF_FRACTION,
};
pub use temporal::{low_energy_rate, rms, zcr};

use crate::spectral::{magnitude_spectrum, Spectrum};
use crate::{AudioClip, Error, Result};

/// Feature codes as numbered in the feature table (1 to 15).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
#[repr(u8)]
pub enum FeatureId {
    Rms = 1,
    Zcr = 2,
    LowEnergyRate = 3,
    SpectralCentroid = 4,
    SpectralEntropy = 5,
    SpectralIrregularity = 6,
    SpectralSpread = 7,
    SpectralSkewness = 8,
    SpectralKurtosis = 9,
    SpectralRolloff = 10,
    SpectralBrightness = 11,
    SpectralFlatness = 12,
    Mfcc = 13,
    Chromagram = 14,
    TonalCentroid = 15,
}

impl FeatureId {
    pub const ALL: [FeatureId; 15] = [
        FeatureId::Rms,
        FeatureId::Zcr,
        FeatureId::LowEnergyRate,
        FeatureId::SpectralCentroid,
        FeatureId::SpectralEntropy,
        FeatureId::SpectralIrregularity,
        FeatureId::SpectralSpread,
        FeatureId::SpectralSkewness,
        FeatureId::SpectralKurtosis,
        FeatureId::SpectralRolloff,
        FeatureId::SpectralBrightness,
        FeatureId::SpectralFlatness,
        FeatureId::Mfcc,
        FeatureId::Chromagram,
        FeatureId::TonalCentroid,
    ];

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Result<Self> {
        Self::ALL
            .get(usize::from(code).wrapping_sub(1))
            .copied()
            .ok_or(Error::UnknownFeature(code))
    }

    pub fn name(self) -> &'static str {
        match self {
            FeatureId::Rms => "rms",
            FeatureId::Zcr => "zcr",
            FeatureId::LowEnergyRate => "low_energy_rate",
            FeatureId::SpectralCentroid => "spectral_centroid",
            FeatureId::SpectralEntropy => "spectral_entropy",
            FeatureId::SpectralIrregularity => "spectral_irregularity",
            FeatureId::SpectralSpread => "spectral_spread",
            FeatureId::SpectralSkewness => "spectral_skewness",
            FeatureId::SpectralKurtosis => "spectral_kurtosis",
            FeatureId::SpectralRolloff => "spectral_rolloff",
            FeatureId::SpectralBrightness => "spectral_brightness",
            FeatureId::SpectralFlatness => "spectral_flatness",
            FeatureId::Mfcc => "mfcc",
            FeatureId::Chromagram => "chromagram",
            FeatureId::TonalCentroid => "tonal_centroid",
        }
    }

    pub fn dimension(self) -> usize {
        match self {
            FeatureId::Mfcc => MFCC_COEFFICIENTS,
            FeatureId::Chromagram => 12,
            FeatureId::TonalCentroid => 6,
            _ => 1,
        }
    }

    /// Column names of this feature's scalars, e.g. `mfcc_03`.
    pub fn scalar_names(self) -> Vec<String> {
        match self.dimension() {
            1 => alloc::vec![String::from(self.name())],
            d => (1..=d).map(|i| format!("{}_{:02}", self.name(), i)).collect(),
        }
    }

    fn uses_clip_spectrum(self) -> bool {
        (4..=12).contains(&self.code())
    }

    fn uses_frames(self) -> bool {
        matches!(
            self,
            FeatureId::LowEnergyRate | FeatureId::Mfcc | FeatureId::Chromagram | FeatureId::TonalCentroid
        )
    }
}

impl fmt::Display for FeatureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl TryFrom<u8> for FeatureId {
    type Error = Error;

    fn try_from(code: u8) -> Result<Self> {
        Self::from_code(code)
    }
}

/// Total scalar dimension of a feature set.
pub fn total_dimension(features: &[FeatureId]) -> usize {
    canonical(features).iter().map(|f| f.dimension()).sum()
}

/// Sorted, deduplicated copy of a feature list.
pub fn canonical(features: &[FeatureId]) -> Vec<FeatureId> {
    let mut v = features.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Feature values for one clip, keyed and ordered by feature code.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FeatureVector {
    pub values: BTreeMap<FeatureId, Vec<f64>>,
    pub label: Option<String>,
}

impl FeatureVector {
    pub fn new(label: Option<String>) -> Self {
        Self {
            values: BTreeMap::new(),
            label,
        }
    }

    /// Inserts one feature, checking its dimension and finiteness.
    pub fn insert(&mut self, id: FeatureId, value: Vec<f64>) -> Result<()> {
        if value.len() != id.dimension() {
            return Err(Error::DimensionMismatch {
                expected: id.dimension(),
                got: value.len(),
            });
        }
        if value.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("feature values must be finite"));
        }
        self.values.insert(id, value);
        Ok(())
    }

    pub fn get(&self, id: FeatureId) -> Option<&[f64]> {
        self.values.get(&id).map(Vec::as_slice)
    }

    pub fn features(&self) -> Vec<FeatureId> {
        self.values.keys().copied().collect()
    }

    pub fn dimension(&self) -> usize {
        self.values.values().map(Vec::len).sum()
    }

    /// All scalars concatenated in feature-code order.
    pub fn flatten(&self) -> Vec<f64> {
        self.values.values().flatten().copied().collect()
    }

    pub fn scalar_names(&self) -> Vec<String> {
        self.values.keys().flat_map(|f| f.scalar_names()).collect()
    }

    /// Keeps only `features`, all of which must be present.
    pub fn project(&self, features: &[FeatureId]) -> Result<FeatureVector> {
        if features.is_empty() {
            return Err(Error::EmptySelection);
        }
        let mut out = FeatureVector::new(self.label.clone());
        for &f in features {
            let v = self.values.get(&f).ok_or(Error::InvalidParameter("feature missing from vector"))?;
            out.values.insert(f, v.clone());
        }
        Ok(out)
    }

    pub fn require_label(&self) -> Result<&str> {
        self.label.as_deref().ok_or(Error::Unlabeled)
    }
}

/// Extracts the selected features from one clip. The vector inherits the
/// clip's label.
pub fn extract(clip: &AudioClip, selected: &[FeatureId]) -> Result<FeatureVector> {
    let selected = canonical(selected);
    if selected.is_empty() {
        return Err(Error::EmptySelection);
    }
    clip.ensure_non_empty()?;
    let spectrum: Option<Spectrum> = if selected.iter().any(|f| f.uses_clip_spectrum()) {
        Some(magnitude_spectrum(clip.samples(), f64::from(clip.sample_rate_hz()))?)
    } else {
        None
    };
    let frames = if selected.iter().any(|f| f.uses_frames()) {
        Some(FrameFeatures::analyze(clip, &MfccConfig::default(), selected.contains(&FeatureId::Mfcc))?)
    } else {
        None
    };

    let mut out = FeatureVector::new(clip.source_label.clone());
    for id in selected {
        let spec = || spectrum.as_ref().expect("clip spectrum computed");
        let fr = || frames.as_ref().expect("frame features computed");
        let value = match id {
            FeatureId::Rms => alloc::vec![rms(clip.samples())],
            FeatureId::Zcr => alloc::vec![zcr(clip.samples())?],
            FeatureId::LowEnergyRate => alloc::vec![fr().low_energy_rate],
            FeatureId::SpectralCentroid => alloc::vec![spectral_centroid(spec())?],
            FeatureId::SpectralEntropy => alloc::vec![spectral_entropy(spec())],
            FeatureId::SpectralIrregularity => alloc::vec![spectral_irregularity(spec())],
            FeatureId::SpectralSpread => alloc::vec![spectral_spread(spec())?],
            FeatureId::SpectralSkewness => alloc::vec![spectral_skewness(spec())?],
            FeatureId::SpectralKurtosis => alloc::vec![spectral_kurtosis(spec())?],
            FeatureId::SpectralRolloff => alloc::vec![spectral_rolloff(spec())?],
            FeatureId::SpectralBrightness => alloc::vec![spectral_brightness(spec())?],
            FeatureId::SpectralFlatness => alloc::vec![spectral_flatness(spec())],
            FeatureId::Mfcc => fr().mfcc.clone().expect("mfcc requested"),
            FeatureId::Chromagram => fr().chroma.to_vec(),
            FeatureId::TonalCentroid => tonal_centroid_of(&fr().chroma).to_vec(),
        };
        out.insert(id, value)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn codes_round_trip_and_reject_out_of_range() {
        for (i, f) in FeatureId::ALL.iter().enumerate() {
            assert_eq!(f.code() as usize, i + 1);
            assert_eq!(FeatureId::from_code(f.code()), Ok(*f));
        }
        assert_eq!(FeatureId::from_code(0), Err(Error::UnknownFeature(0)));
        assert_eq!(FeatureId::from_code(16), Err(Error::UnknownFeature(16)));
    }

    #[test]
    fn dimensions_match_the_feature_table() {
        let dims: Vec<usize> = FeatureId::ALL.iter().map(|f| f.dimension()).collect();
        assert_eq!(dims, vec![1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 13, 12, 6]);
        assert_eq!(total_dimension(&FeatureId::ALL), 43);
        assert_eq!(FeatureId::Mfcc.scalar_names()[2], "mfcc_03");
    }

    #[test]
    fn insert_checks_dimension_and_finiteness() {
        let mut v = FeatureVector::new(None);
        assert!(v.insert(FeatureId::Mfcc, vec![0.0; 12]).is_err());
        assert!(v.insert(FeatureId::Rms, vec![f64::NAN]).is_err());
        assert!(v.insert(FeatureId::Rms, vec![0.5]).is_ok());
    }

    #[test]
    fn empty_selection_is_an_error() {
        let clip = AudioClip::new(vec![0.1; 8000], 8000).unwrap();
        assert_eq!(extract(&clip, &[]), Err(Error::EmptySelection));
    }

    #[test]
    fn extraction_preserves_code_order_and_label() {
        let samples = (0..8000).map(|i| 0.5 * libm::sin(i as f64 * 0.3)).collect();
        let clip = AudioClip::new(samples, 8000).unwrap().with_label("dev-a");
        let v = extract(&clip, &[FeatureId::SpectralEntropy, FeatureId::Rms, FeatureId::Rms]).unwrap();
        assert_eq!(v.features(), vec![FeatureId::Rms, FeatureId::SpectralEntropy]);
        assert_eq!(v.dimension(), 2);
        assert_eq!(v.label.as_deref(), Some("dev-a"));
        assert_eq!(v.scalar_names(), vec!["rms", "spectral_entropy"]);
    }
}
