//! Acoustic device fingerprinting.
//!
//! Speakers and microphones leave small, unit-specific marks on the audio
//! that passes through them. This crate extracts fifteen spectral and
//! temporal features from a clip, trains k-NN or Gaussian-mixture
//! classifiers on labeled recordings, selects feature subsets greedily,
//! and scores the result with macro-averaged precision, recall and F1.
//! A parametric device simulator generates labeled corpora so the whole
//! pipeline can be exercised without physical handsets.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is
//! disabled. File formats, parallel drivers and the command-line tool live
//! in the `sonoprint` companion crate.

#![cfg_attr(not(feature = "std"), no_std)]
// `!(x > 0.0)` style checks are deliberate: they reject NaN too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod audio;
pub mod classify;
mod error;
pub mod features;
pub mod fft;
pub mod metrics;
pub mod seed;
pub mod select;
pub mod simulate;
pub mod spectral;

pub use audio::AudioClip;
pub use error::{Error, Result};
pub use features::{FeatureId, FeatureVector};
pub use spectral::Spectrum;
