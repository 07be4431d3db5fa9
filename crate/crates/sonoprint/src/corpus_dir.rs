//! On-disk corpora: `<dir>/<device_id>/<source>_<rep>.wav` and a
//! `manifest.csv` with columns `path,device_id,source,rep,seed`.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sonoprint_core::simulate::Corpus;
use sonoprint_core::AudioClip;

use crate::error::{AppError, AppResult};
use crate::wav::{load_wav, write_wav};

pub const MANIFEST: &str = "manifest.csv";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestRow {
    /// Relative to the corpus directory, `/`-separated.
    pub path: String,
    pub device_id: String,
    pub source: String,
    pub rep: usize,
    pub seed: u64,
}

pub fn write_corpus(corpus: &Corpus, dir: &Path) -> AppResult<Vec<ManifestRow>> {
    let rows: Vec<ManifestRow> = corpus
        .entries
        .iter()
        .map(|e| ManifestRow {
            path: format!("{}/{}_{}.wav", e.device_id, e.source, e.rep),
            device_id: e.device_id.clone(),
            source: e.source.clone(),
            rep: e.rep,
            seed: e.seed,
        })
        .collect();
    for p in &corpus.profiles {
        let sub = dir.join(&p.device_id);
        fs::create_dir_all(&sub).map_err(|e| AppError::io(&sub, e))?;
    }
    corpus
        .entries
        .par_iter()
        .zip(&rows)
        .try_for_each(|(e, row)| {
            let path = dir.join(&row.path);
            write_wav(&e.clip, &path).map_err(|err| AppError::wav(&path, err))
        })?;
    let manifest = dir.join(MANIFEST);
    let mut w = csv::Writer::from_path(&manifest).map_err(|e| AppError::data(format!("{}: {e}", manifest.display())))?;
    for row in &rows {
        w.serialize(row).map_err(|e| AppError::data(format!("{}: {e}", manifest.display())))?;
    }
    w.flush().map_err(|e| AppError::io(&manifest, e))?;
    Ok(rows)
}

pub fn read_manifest(dir: &Path) -> AppResult<Vec<ManifestRow>> {
    let path = dir.join(MANIFEST);
    let mut r = csv::Reader::from_path(&path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => AppError::io(&path, io),
        other => AppError::data(format!("{}: {other:?}", path.display())),
    })?;
    r.deserialize()
        .map(|row| row.map_err(|e| AppError::data(format!("{}: {e}", path.display()))))
        .collect()
}

fn wavs_by_directory(dir: &Path) -> AppResult<Vec<(PathBuf, String)>> {
    let mut found = Vec::new();
    let mut subdirs: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| AppError::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_dir())
        .collect();
    subdirs.sort();
    for sub in subdirs {
        let label = sub.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let mut files: Vec<PathBuf> = fs::read_dir(&sub)
            .map_err(|e| AppError::io(&sub, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x.eq_ignore_ascii_case("wav")))
            .collect();
        files.sort();
        found.extend(files.into_iter().map(|f| (f, label.clone())));
    }
    Ok(found)
}

/// Labeled clips of a corpus directory. Without a manifest every
/// subdirectory is taken as one device.
pub fn read_corpus(dir: &Path) -> AppResult<Vec<AudioClip>> {
    if !dir.is_dir() {
        return Err(AppError::usage(format!("corpus directory {} does not exist", dir.display())));
    }
    let files: Vec<(PathBuf, String)> = if dir.join(MANIFEST).is_file() {
        read_manifest(dir)?
            .into_iter()
            .map(|row| (dir.join(&row.path), row.device_id))
            .collect()
    } else {
        wavs_by_directory(dir)?
    };
    if files.is_empty() {
        return Err(AppError::data(format!("no WAV files under {}", dir.display())));
    }
    files
        .par_iter()
        .map(|(path, label)| {
            load_wav(path)
                .map(|c| c.with_label(label.clone()))
                .map_err(|e| AppError::wav(path, e))
        })
        .collect()
}
