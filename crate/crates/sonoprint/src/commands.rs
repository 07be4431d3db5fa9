//! One function per subcommand, usable without a process around it.

use std::path::{Path, PathBuf};
use std::time::Instant;

use sonoprint_core::classify::{knn_train, Dataset, GmmModel, Model};
use sonoprint_core::features::{extract, FeatureId};
use sonoprint_core::metrics::{evaluate_vectors, ExperimentSpec};
use sonoprint_core::select::{sfs, SelectionResult};
use sonoprint_core::FeatureVector;

use crate::config::{ClassifierKind, ExperimentConfig, FeatureChoice};
use crate::corpus_dir::{self, ManifestRow};
use crate::error::{AppError, AppResult};
use crate::model::{load_model, save_model};
use crate::pipeline::{corpus_features, corpus_clips, extract_all, simulate};
use crate::plot::line_chart;
use crate::report::{self, load_report, series, series_csv, write_file, ReportDocument};
use crate::table::{self, Row};
use crate::wav::load_wav;

fn experiment(cfg: &ExperimentConfig, features: &[FeatureId]) -> ExperimentSpec {
    ExperimentSpec {
        features: features.to_vec(),
        classifier: cfg.classifier_spec(),
        train_per_class: cfg.train_per_class,
        seed: cfg.seed,
    }
}

fn select_on(cfg: &ExperimentConfig, vectors: &[FeatureVector], candidates: &[FeatureId]) -> AppResult<SelectionResult> {
    sfs(candidates, |subset: &[FeatureId]| -> AppResult<f64> {
        Ok(evaluate_vectors(vectors, &experiment(cfg, subset))?.avg_f1)
    })
}

/// Features to file: `path,label,<scalars>`. Labels come from `label`, or
/// from each file's parent directory when `label_from_dir` is set.
pub fn cmd_extract(inputs: &[PathBuf], features: &FeatureChoice, label: Option<&str>, label_from_dir: bool, out: &mut dyn std::io::Write) -> AppResult<usize> {
    if inputs.is_empty() {
        return Err(AppError::usage("no input files"));
    }
    let ids = match features {
        FeatureChoice::Auto => return Err(AppError::usage("extract needs explicit features, not auto")),
        FeatureChoice::Codes(ids) => ids.clone(),
    };
    let mut clips = Vec::with_capacity(inputs.len());
    for path in inputs {
        let mut clip = load_wav(path).map_err(|e| AppError::wav(path, e))?;
        clip.source_label = if label_from_dir {
            path.parent().and_then(|p| p.file_name()).map(|n| n.to_string_lossy().into_owned())
        } else {
            label.map(String::from)
        };
        clips.push(clip);
    }
    let vectors = extract_all(&clips, &ids)?;
    let rows: Vec<Row> = inputs
        .iter()
        .zip(vectors)
        .map(|(p, vector)| Row {
            path: p.display().to_string(),
            vector,
        })
        .collect();
    table::write_features(out, &rows)?;
    Ok(rows.len())
}

/// Renders the configured corpus into `cfg.out`.
pub fn cmd_simulate(cfg: &ExperimentConfig) -> AppResult<Vec<ManifestRow>> {
    if cfg.corpus.is_some() {
        return Err(AppError::usage("simulate writes a new corpus; unset `corpus`"));
    }
    let corpus = simulate(cfg)?;
    std::fs::create_dir_all(&cfg.out).map_err(|e| AppError::io(&cfg.out, e))?;
    let rows = corpus_dir::write_corpus(&corpus, &cfg.out)?;
    let profiles = serde_json::to_string_pretty(&corpus.profiles)
        .map_err(|e| AppError::data(format!("cannot serialize profiles: {e}")))?;
    write_file(&cfg.out.join("profiles.json"), profiles.as_bytes())?;
    write_file(&cfg.out.join("config.txt"), cfg.to_text().as_bytes())?;
    Ok(rows)
}

/// Evaluates the configured experiment and writes its report into
/// `cfg.out`. With `features = auto` the subset comes from forward
/// selection first.
pub fn cmd_evaluate(cfg: &ExperimentConfig) -> AppResult<ReportDocument> {
    cfg.validate()?;
    if let Some(dir) = &cfg.corpus {
        if !dir.is_dir() {
            return Err(AppError::usage(format!("corpus directory {} does not exist", dir.display())));
        }
    }
    let candidates = cfg.features.candidates();
    let vectors = corpus_features(cfg, &candidates)?;
    let selection = match cfg.features {
        FeatureChoice::Auto => Some(select_on(cfg, &vectors, &candidates)?),
        FeatureChoice::Codes(_) => None,
    };
    let chosen = match &selection {
        Some(s) if !s.chosen.is_empty() => s.chosen.clone(),
        Some(_) => return Err(AppError::data("forward selection kept no feature")),
        None => candidates,
    };
    let evaluation = evaluate_vectors(&vectors, &experiment(cfg, &chosen))?;
    let doc = ReportDocument::new(cfg.clone(), selection, evaluation);
    report::write_report(&doc, &cfg.out)?;
    Ok(doc)
}

/// Mean milliseconds to extract each feature alone, over up to `limit` clips.
fn extraction_times(clips: &[sonoprint_core::AudioClip], features: &[FeatureId], limit: usize) -> AppResult<Vec<(FeatureId, f64)>> {
    let sample = &clips[..clips.len().min(limit)];
    features
        .iter()
        .map(|&f| {
            let start = Instant::now();
            for c in sample {
                extract(c, &[f])?;
            }
            Ok((f, start.elapsed().as_secs_f64() * 1000.0 / sample.len().max(1) as f64))
        })
        .collect()
}

/// Forward selection over the configured candidates (all 15 for `auto`);
/// writes `selection.csv` and `selection_trace.csv`.
pub fn cmd_select(cfg: &ExperimentConfig) -> AppResult<SelectionResult> {
    cfg.validate()?;
    let candidates = cfg.features.candidates();
    let clips = corpus_clips(cfg)?;
    let clips = match cfg.analysis_rate {
        Some(rate) => crate::pipeline::resample_all(&clips, rate)?,
        None => clips,
    };
    let vectors = extract_all(&clips, &candidates)?;
    let result = select_on(cfg, &vectors, &candidates)?;
    let times = extraction_times(&clips, &candidates, 10)?;
    std::fs::create_dir_all(&cfg.out).map_err(|e| AppError::io(&cfg.out, e))?;
    write_file(&cfg.out.join("selection.csv"), report::selection_csv(&result, &times).as_bytes())?;
    write_file(&cfg.out.join("selection_trace.csv"), report::trace_csv(&result).as_bytes())?;
    Ok(result)
}

/// Trains on every clip of the corpus with the first sweep value.
pub fn cmd_train(cfg: &ExperimentConfig, model_path: &Path) -> AppResult<Model> {
    cfg.validate()?;
    let features = match &cfg.features {
        FeatureChoice::Codes(ids) => ids.clone(),
        FeatureChoice::Auto => return Err(AppError::usage("train needs explicit features; run select first")),
    };
    let vectors = corpus_features(cfg, &features)?;
    let data = Dataset::from_vectors(&vectors)?;
    let param = cfg.sweep[0];
    let model = match cfg.classifier {
        ClassifierKind::Knn => Model::Knn(knn_train(&data, param)?),
        ClassifierKind::Gmm => Model::Gmm(GmmModel::train(&data, param, cfg.seed)?),
    };
    save_model(&model, model_path)?;
    Ok(model)
}

/// Predicted label for a WAV clip, or for every row of a feature CSV.
pub fn cmd_classify(model_path: &Path, input: &Path) -> AppResult<Vec<String>> {
    let model = load_model(model_path)?;
    let is_csv = input.extension().is_some_and(|x| x.eq_ignore_ascii_case("csv"));
    let vectors: Vec<FeatureVector> = if is_csv {
        let file = std::fs::File::open(input).map_err(|e| AppError::io(input, e))?;
        table::read_features(file)?.into_iter().map(|r| r.vector).collect()
    } else {
        let clip = load_wav(input).map_err(|e| AppError::wav(input, e))?;
        vec![extract(&clip, model.features())?]
    };
    vectors
        .iter()
        .map(|v| {
            let v = v.project(model.features()).map_err(|_| {
                AppError::data(format!("input lacks the model's features {:?}", model.features()))
            })?;
            Ok(model.predict(&v.flatten())?)
        })
        .collect()
}

/// Summarizes several reports along one config key; optionally plots it.
pub fn cmd_report(inputs: &[PathBuf], axis: &str, csv_out: &mut dyn std::io::Write, plot: Option<&Path>) -> AppResult<()> {
    if inputs.is_empty() {
        return Err(AppError::usage("no report files given"));
    }
    let docs = inputs.iter().map(|p| load_report(p)).collect::<AppResult<Vec<_>>>()?;
    let points = series(&docs, axis)?;
    series_csv(csv_out, axis, &points).map_err(|e| AppError::io("<output>", e))?;
    if let Some(svg) = plot {
        write_file(svg, line_chart(&format!("F1 vs {axis}"), axis, &points).as_bytes())?;
    }
    Ok(())
}
