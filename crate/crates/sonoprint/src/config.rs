//! Experiment configuration: `key = value` lines, `#` comments, later
//! assignments win. Keys are the field names of [`ExperimentConfig`].

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sonoprint_core::features::FeatureId;
use sonoprint_core::metrics::{ClassifierSpec, DEFAULT_GMM_RESTARTS, DEFAULT_SWEEP};
use sonoprint_core::simulate::ProfileScale;

use crate::error::{AppError, AppResult};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FeatureChoice {
    Codes(Vec<FeatureId>),
    /// Chosen by sequential forward selection over all 15.
    Auto,
}

impl FeatureChoice {
    pub fn parse(text: &str) -> AppResult<Self> {
        match text.trim() {
            "auto" => Ok(FeatureChoice::Auto),
            "all" => Ok(FeatureChoice::Codes(FeatureId::ALL.to_vec())),
            list => parse_codes(list).map(FeatureChoice::Codes),
        }
    }

    /// Explicit features, or all of them for `auto`.
    pub fn candidates(&self) -> Vec<FeatureId> {
        match self {
            FeatureChoice::Codes(ids) => ids.clone(),
            FeatureChoice::Auto => FeatureId::ALL.to_vec(),
        }
    }
}

impl fmt::Display for FeatureChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeatureChoice::Auto => f.write_str("auto"),
            FeatureChoice::Codes(ids) => {
                let codes: Vec<String> = ids.iter().map(|id| id.code().to_string()).collect();
                f.write_str(&codes.join(","))
            }
        }
    }
}

impl From<FeatureChoice> for String {
    fn from(c: FeatureChoice) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for FeatureChoice {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        FeatureChoice::parse(&s).map_err(|e| e.to_string())
    }
}

/// Comma-separated feature codes 1..=15.
pub fn parse_codes(list: &str) -> AppResult<Vec<FeatureId>> {
    let mut ids = Vec::new();
    for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let code: u8 = part
            .parse()
            .map_err(|_| AppError::usage(format!("feature code {part:?} is not a number")))?;
        let id = FeatureId::from_code(code).map_err(|_| AppError::usage(format!("no feature with code {code}")))?;
        if !ids.contains(&id) {
            ids.push(id);
        }
    }
    if ids.is_empty() {
        return Err(AppError::usage("no features selected"));
    }
    Ok(ids)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassifierKind {
    Knn,
    Gmm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Existing corpus directory. When unset the corpus is simulated from
    /// the keys below.
    pub corpus: Option<PathBuf>,
    pub devices: usize,
    pub repetitions: usize,
    pub scale: String,
    /// `instrumental`, `speech`, `ambience`, or a WAV path.
    pub source: String,
    pub source_seconds: f64,
    /// Peak level of the source as played, dBFS.
    pub source_level_db: f64,
    pub sample_rate: u32,
    /// Clips are resampled to this rate before extraction.
    pub analysis_rate: Option<u32>,
    /// Room noise heard during every recording: `ambience` or a WAV path.
    pub noise: Option<String>,
    pub snr_db: f64,
    pub features: FeatureChoice,
    pub classifier: ClassifierKind,
    /// k values or component counts.
    pub sweep: Vec<usize>,
    pub restarts: usize,
    pub train_per_class: usize,
    pub seed: u64,
    /// Where outputs go; not part of the experiment, so never echoed.
    #[serde(skip)]
    pub out: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            corpus: None,
            devices: 15,
            repetitions: 10,
            scale: ProfileScale::SameModel.name().into(),
            source: "instrumental".into(),
            source_seconds: 1.0,
            // Quiet playback keeps the device noise floor audible, so takes
            // of the same clip are not identical.
            source_level_db: -44.0,
            sample_rate: 44100,
            analysis_rate: None,
            noise: None,
            snr_db: 10.0,
            features: FeatureChoice::Codes(vec![FeatureId::Mfcc, FeatureId::Chromagram]),
            classifier: ClassifierKind::Gmm,
            sweep: DEFAULT_SWEEP.to_vec(),
            restarts: DEFAULT_GMM_RESTARTS,
            train_per_class: 5,
            seed: 2024,
            out: PathBuf::from("out"),
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> AppResult<T> {
    value
        .parse()
        .map_err(|_| AppError::usage(format!("{key}: cannot parse {value:?}")))
}

fn optional(value: &str) -> Option<&str> {
    match value {
        "" | "none" => None,
        v => Some(v),
    }
}

impl ExperimentConfig {
    pub fn from_file(path: impl AsRef<Path>) -> AppResult<Self> {
        let text = std::fs::read_to_string(path.as_ref()).map_err(|e| AppError::io(path.as_ref(), e))?;
        let mut cfg = Self::default();
        cfg.apply_text(&text)?;
        Ok(cfg)
    }

    pub fn apply_text(&mut self, text: &str) -> AppResult<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| AppError::usage(format!("line {}: expected key = value", n + 1)))?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    /// Applies one `key=value` override.
    pub fn apply_override(&mut self, assignment: &str) -> AppResult<()> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| AppError::usage(format!("override {assignment:?} is not key=value")))?;
        self.set(key.trim(), value.trim())
    }

    pub fn set(&mut self, key: &str, value: &str) -> AppResult<()> {
        match key {
            "corpus" => self.corpus = optional(value).map(PathBuf::from),
            "devices" => self.devices = parse_num(key, value)?,
            "repetitions" => self.repetitions = parse_num(key, value)?,
            "scale" => {
                scale_from_name(value)?;
                self.scale = value.into();
            }
            "source" => self.source = value.into(),
            "source_seconds" => self.source_seconds = parse_num(key, value)?,
            "source_level_db" => self.source_level_db = parse_num(key, value)?,
            "sample_rate" => self.sample_rate = parse_num(key, value)?,
            "analysis_rate" => self.analysis_rate = optional(value).map(|v| parse_num(key, v)).transpose()?,
            "noise" => self.noise = optional(value).map(String::from),
            "snr_db" => self.snr_db = parse_num(key, value)?,
            "features" => self.features = FeatureChoice::parse(value)?,
            "classifier" => {
                self.classifier = match value {
                    "knn" => ClassifierKind::Knn,
                    "gmm" => ClassifierKind::Gmm,
                    other => return Err(AppError::usage(format!("classifier must be knn or gmm, not {other:?}"))),
                }
            }
            "sweep" => {
                self.sweep = value
                    .split(',')
                    .map(|v| parse_num(key, v.trim()))
                    .collect::<AppResult<Vec<usize>>>()?;
            }
            "restarts" => self.restarts = parse_num(key, value)?,
            "train_per_class" => self.train_per_class = parse_num(key, value)?,
            "seed" => self.seed = parse_num(key, value)?,
            "out" => self.out = PathBuf::from(value),
            other => return Err(AppError::usage(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    /// Checks the values that parsing alone cannot.
    pub fn validate(&self) -> AppResult<()> {
        if self.corpus.is_none() && self.devices < 2 {
            return Err(AppError::usage(format!("need at least 2 devices, got {}", self.devices)));
        }
        if self.repetitions == 0 || self.train_per_class == 0 {
            return Err(AppError::usage("repetitions and train_per_class must be positive"));
        }
        if self.sweep.is_empty() || self.sweep.contains(&0) {
            return Err(AppError::usage("sweep values must be positive"));
        }
        if self.restarts == 0 {
            return Err(AppError::usage("restarts must be positive"));
        }
        if !(self.source_seconds > 0.0) {
            return Err(AppError::usage("source_seconds must be positive"));
        }
        if !(self.source_level_db <= 0.0) {
            return Err(AppError::usage("source_level_db must be at most 0 dBFS"));
        }
        scale_from_name(&self.scale)?;
        Ok(())
    }

    pub fn profile_scale(&self) -> AppResult<ProfileScale> {
        scale_from_name(&self.scale)
    }

    pub fn classifier_spec(&self) -> ClassifierSpec {
        match self.classifier {
            ClassifierKind::Knn => ClassifierSpec::Knn {
                k_values: self.sweep.clone(),
            },
            ClassifierKind::Gmm => ClassifierSpec::Gmm {
                components: self.sweep.clone(),
                restarts: self.restarts,
            },
        }
    }

    /// The config as `key = value` text that parses back to itself
    /// (output path aside).
    pub fn to_text(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "none".into());
        let sweep: Vec<String> = self.sweep.iter().map(|v| v.to_string()).collect();
        let lines = [
            ("corpus", opt(self.corpus.as_ref().map(|p| p.display().to_string()))),
            ("devices", self.devices.to_string()),
            ("repetitions", self.repetitions.to_string()),
            ("scale", self.scale.clone()),
            ("source", self.source.clone()),
            ("source_seconds", self.source_seconds.to_string()),
            ("source_level_db", self.source_level_db.to_string()),
            ("sample_rate", self.sample_rate.to_string()),
            ("analysis_rate", opt(self.analysis_rate.map(|r| r.to_string()))),
            ("noise", opt(self.noise.clone())),
            ("snr_db", self.snr_db.to_string()),
            ("features", self.features.to_string()),
            (
                "classifier",
                match self.classifier {
                    ClassifierKind::Knn => "knn".into(),
                    ClassifierKind::Gmm => "gmm".into(),
                },
            ),
            ("sweep", sweep.join(",")),
            ("restarts", self.restarts.to_string()),
            ("train_per_class", self.train_per_class.to_string()),
            ("seed", self.seed.to_string()),
        ];
        lines.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }
}

pub fn scale_from_name(name: &str) -> AppResult<ProfileScale> {
    match name {
        "vendor" => Ok(ProfileScale::Vendor),
        "same_model" => Ok(ProfileScale::SameModel),
        other => Err(AppError::usage(format!("scale must be vendor or same_model, not {other:?}"))),
    }
}
