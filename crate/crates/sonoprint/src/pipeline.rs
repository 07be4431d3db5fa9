//! Building corpora and feature tables, in parallel but in a fixed order:
//! every item depends only on its own derived seed, so the thread count
//! never changes a result.

use std::path::Path;

use rayon::prelude::*;
use sonoprint_core::audio::resample;
use sonoprint_core::features::{extract, FeatureId};
use sonoprint_core::seed;
use sonoprint_core::simulate::{draw_profiles, render_entry, sources, Corpus, NamedSource, NoiseScene};
use sonoprint_core::{AudioClip, FeatureVector};

use crate::config::ExperimentConfig;
use crate::corpus_dir;
use crate::error::{AppError, AppResult};
use crate::wav::load_wav;

fn peak(x: &[f64]) -> f64 {
    x.iter().fold(0.0_f64, |p, v| p.max(v.abs()))
}

/// Scales `clip` so that its peak sits at `level_db` dBFS.
pub fn at_peak_level(clip: &AudioClip, level_db: f64) -> AppResult<AudioClip> {
    let p = peak(clip.samples());
    if p == 0.0 {
        return Err(AppError::data("source clip is silent"));
    }
    let g = 10f64.powf(level_db / 20.0) / p;
    Ok(clip.map_samples(clip.samples().iter().map(|v| v * g).collect())?)
}

fn wav_at_rate(path: &Path, rate: u32) -> AppResult<AudioClip> {
    let clip = load_wav(path).map_err(|e| AppError::wav(path, e))?;
    if clip.sample_rate_hz() == rate {
        Ok(clip)
    } else {
        Ok(resample(&clip, rate)?)
    }
}

/// The clip every virtual device plays, at the configured level.
pub fn source_clip(cfg: &ExperimentConfig) -> AppResult<NamedSource> {
    let rate = cfg.sample_rate;
    let sub = seed::derive(cfg.seed, &[3]);
    let (name, clip) = match cfg.source.as_str() {
        "instrumental" => ("instrumental".to_string(), sources::instrumental(rate, cfg.source_seconds, sub)),
        "speech" => ("speech".to_string(), sources::speech_like(rate, cfg.source_seconds, sub)),
        "ambience" => ("ambience".to_string(), sources::ambience(rate, cfg.source_seconds, sub)),
        path => {
            let p = Path::new(path);
            let name = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "source".into());
            (name, wav_at_rate(p, rate)?)
        }
    };
    Ok(NamedSource::new(name, at_peak_level(&clip, cfg.source_level_db)?))
}

/// Room noise for the configured scene, if any.
pub fn room_scene(cfg: &ExperimentConfig) -> AppResult<Option<NoiseScene>> {
    let Some(noise) = cfg.noise.as_deref() else {
        return Ok(None);
    };
    let clip = match noise {
        "ambience" => sources::ambience(cfg.sample_rate, (3.0 * cfg.source_seconds).max(3.0), seed::derive(cfg.seed, &[4])),
        path => wav_at_rate(Path::new(path), cfg.sample_rate)?,
    };
    Ok(Some(NoiseScene::new(clip, cfg.snr_db)))
}

/// Same corpus as the sequential generator in the core crate, rendered on
/// all cores.
pub fn simulate(cfg: &ExperimentConfig) -> AppResult<Corpus> {
    cfg.validate()?;
    let source = source_clip(cfg)?;
    let room = room_scene(cfg)?;
    let ranges = cfg.profile_scale()?.ranges();
    let profiles = draw_profiles(cfg.devices, &ranges, cfg.seed)?;
    let jobs: Vec<(usize, usize)> = (0..profiles.len())
        .flat_map(|d| (0..cfg.repetitions).map(move |r| (d, r)))
        .collect();
    let entries = jobs
        .par_iter()
        .map(|&(d, rep)| render_entry(cfg.seed, (d, &profiles[d]), (0, &source), rep, room.as_ref()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Corpus { profiles, entries })
}

/// Labeled clips from `cfg.corpus`, or a fresh simulation.
pub fn corpus_clips(cfg: &ExperimentConfig) -> AppResult<Vec<AudioClip>> {
    match &cfg.corpus {
        Some(dir) => corpus_dir::read_corpus(dir),
        None => Ok(simulate(cfg)?.clips()),
    }
}

pub fn resample_all(clips: &[AudioClip], rate: u32) -> AppResult<Vec<AudioClip>> {
    clips
        .par_iter()
        .map(|c| {
            let mut out = resample(c, rate)?;
            out.source_label = c.source_label.clone();
            Ok(out)
        })
        .collect()
}

pub fn extract_all(clips: &[AudioClip], features: &[FeatureId]) -> AppResult<Vec<FeatureVector>> {
    Ok(clips
        .par_iter()
        .map(|c| extract(c, features))
        .collect::<Result<Vec<_>, _>>()?)
}

/// Feature vectors for the configured corpus at the analysis rate.
pub fn corpus_features(cfg: &ExperimentConfig, features: &[FeatureId]) -> AppResult<Vec<FeatureVector>> {
    let clips = corpus_clips(cfg)?;
    let clips = match cfg.analysis_rate {
        Some(rate) => resample_all(&clips, rate)?,
        None => clips,
    };
    extract_all(&clips, features)
}
