//! Confusion accounting, macro-averaged precision/recall/F1, per-class
//! train/test splits and the sweep-and-report experiment protocol.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;

use crate::classify::{gmm_classify, knn_classify, knn_train, Dataset, GmmModel};
use crate::features::{canonical, extract};
use crate::{seed, AudioClip, Error, FeatureId, FeatureVector, Result};

/// Rows are true classes, columns predicted classes, both in label order.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConfusionMatrix {
    pub labels: Vec<String>,
    pub counts: Vec<Vec<u64>>,
}

impl ConfusionMatrix {
    /// `labels` are sorted and deduplicated.
    pub fn new(mut labels: Vec<String>) -> Self {
        labels.sort();
        labels.dedup();
        let n = labels.len();
        Self {
            labels,
            counts: vec![vec![0; n]; n],
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn record(&mut self, truth: &str, predicted: &str) -> Result<()> {
        let t = self.index_of(truth).ok_or(Error::InvalidParameter("unknown true label"))?;
        let p = self.index_of(predicted).ok_or(Error::InvalidParameter("unknown predicted label"))?;
        self.counts[t][p] += 1;
        Ok(())
    }

    pub fn n_classes(&self) -> usize {
        self.labels.len()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn true_positives(&self, i: usize) -> u64 {
        self.counts[i][i]
    }

    pub fn false_positives(&self, i: usize) -> u64 {
        (0..self.n_classes()).filter(|&r| r != i).map(|r| self.counts[r][i]).sum()
    }

    pub fn false_negatives(&self, i: usize) -> u64 {
        (0..self.n_classes()).filter(|&c| c != i).map(|c| self.counts[i][c]).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClassScore {
    pub label: String,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Harmonic mean, defined as 0 when both inputs are 0.
pub fn harmonic_mean(precision: f64, recall: f64) -> f64 {
    let s = precision + recall;
    if s > 0.0 {
        2.0 * precision * recall / s
    } else {
        0.0
    }
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Per-class precision, recall and F1. An empty denominator gives 0.
pub fn class_metrics(cm: &ConfusionMatrix) -> Vec<ClassScore> {
    (0..cm.n_classes())
        .map(|i| {
            let tp = cm.true_positives(i);
            let precision = ratio(tp, tp + cm.false_positives(i));
            let recall = ratio(tp, tp + cm.false_negatives(i));
            ClassScore {
                label: cm.labels[i].clone(),
                precision,
                recall,
                f1: harmonic_mean(precision, recall),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MacroAverage {
    pub precision: f64,
    pub recall: f64,
    /// Harmonic mean of the averaged precision and recall, not the mean of
    /// per-class F1.
    pub f1: f64,
}

impl MacroAverage {
    pub fn from_pr(precision: f64, recall: f64) -> Self {
        Self {
            precision,
            recall,
            f1: harmonic_mean(precision, recall),
        }
    }
}

pub fn macro_average(per_class: &[ClassScore]) -> MacroAverage {
    let n = per_class.len().max(1) as f64;
    MacroAverage::from_pr(
        per_class.iter().map(|c| c.precision).sum::<f64>() / n,
        per_class.iter().map(|c| c.recall).sum::<f64>() / n,
    )
}

/// Indices into the dataset, train and test disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Per class (in label order), shuffles that class's indices with the
/// sub-seed `derive(seed, [class_index])` and sends the first
/// `train_per_class` to training.
pub fn split<S: AsRef<str>>(labels: &[S], train_per_class: usize, seed: u64) -> Result<Split> {
    if train_per_class == 0 {
        return Err(Error::InvalidParameter("at least one training clip per class required"));
    }
    let mut classes: Vec<&str> = labels.iter().map(AsRef::as_ref).collect();
    classes.sort_unstable();
    classes.dedup();
    let mut out = Split {
        train: Vec::new(),
        test: Vec::new(),
    };
    for (ci, class) in classes.iter().enumerate() {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i].as_ref() == *class).collect();
        if members.len() <= train_per_class {
            return Err(Error::InsufficientSamples {
                label: String::from(*class),
                available: members.len(),
                requested: train_per_class,
            });
        }
        members.shuffle(&mut seed::rng(seed::derive(seed, &[ci as u64])));
        out.train.extend_from_slice(&members[..train_per_class]);
        out.test.extend_from_slice(&members[train_per_class..]);
    }
    out.train.sort_unstable();
    out.test.sort_unstable();
    Ok(out)
}

pub const DEFAULT_SWEEP: [usize; 5] = [1, 2, 3, 4, 5];
pub const DEFAULT_GMM_RESTARTS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum ClassifierSpec {
    Knn { k_values: Vec<usize> },
    Gmm { components: Vec<usize>, restarts: usize },
}

impl ClassifierSpec {
    pub fn knn() -> Self {
        ClassifierSpec::Knn {
            k_values: DEFAULT_SWEEP.to_vec(),
        }
    }

    pub fn gmm() -> Self {
        ClassifierSpec::Gmm {
            components: DEFAULT_SWEEP.to_vec(),
            restarts: DEFAULT_GMM_RESTARTS,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ClassifierSpec::Knn { .. } => "knn",
            ClassifierSpec::Gmm { .. } => "gmm",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExperimentSpec {
    pub features: Vec<FeatureId>,
    pub classifier: ClassifierSpec,
    pub train_per_class: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepPoint {
    /// k for k-NN, components per class for GMM.
    pub parameter: usize,
    pub avg_pr: f64,
    pub avg_re: f64,
    pub avg_f1: f64,
    /// Population standard deviation of AvgF1 across GMM restarts.
    pub restart_f1_std: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EvaluationReport {
    pub spec: ExperimentSpec,
    /// Sweep value with the highest AvgF1 (first one on ties).
    pub best_parameter: usize,
    pub per_class: Vec<ClassScore>,
    pub avg_pr: f64,
    pub avg_re: f64,
    pub avg_f1: f64,
    pub restart_f1_std: Option<f64>,
    pub sweep: Vec<SweepPoint>,
    /// For GMM, the confusion matrix of the first restart.
    pub confusion: ConfusionMatrix,
    pub n_train: usize,
    pub n_test: usize,
}

struct PointResult {
    point: SweepPoint,
    per_class: Vec<ClassScore>,
    confusion: ConfusionMatrix,
}

fn confusion_for<F>(labels: &[String], test: &Dataset, mut predict: F) -> Result<ConfusionMatrix>
where
    F: FnMut(&[f64]) -> Result<String>,
{
    let mut cm = ConfusionMatrix::new(labels.to_vec());
    for (row, truth) in test.rows.iter().zip(&test.labels) {
        cm.record(truth, &predict(row)?)?;
    }
    Ok(cm)
}

fn subset(data: &Dataset, idx: &[usize]) -> Dataset {
    Dataset {
        features: data.features.clone(),
        rows: idx.iter().map(|&i| data.rows[i].clone()).collect(),
        labels: idx.iter().map(|&i| data.labels[i].clone()).collect(),
    }
}

fn population_std(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    libm::sqrt(values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n)
}

/// Splits, then sweeps the classifier's hyperparameter and reports the
/// configuration with the highest AvgF1. Vectors are projected onto
/// `spec.features` first, so they may carry extra features.
///
/// GMM points average per-class precision, recall and F1 over the restarts
/// (restart `r` of `c` components uses sub-seed `derive(seed, [c, r])`)
/// before AvgF1 is formed. Sweep values that the training split cannot
/// support (k above the training count, more components than the smallest
/// class has clips) are skipped.
pub fn evaluate_vectors(vectors: &[FeatureVector], spec: &ExperimentSpec) -> Result<EvaluationReport> {
    let features = canonical(&spec.features);
    if features.is_empty() {
        return Err(Error::EmptySelection);
    }
    let projected = vectors.iter().map(|v| v.project(&features)).collect::<Result<Vec<_>>>()?;
    let data = Dataset::from_vectors(&projected)?;
    let parts = split(&data.labels, spec.train_per_class, spec.seed)?;
    let train = subset(&data, &parts.train);
    let test = subset(&data, &parts.test);
    let labels = data.classes();

    let mut results: Vec<PointResult> = Vec::new();
    match &spec.classifier {
        ClassifierSpec::Knn { k_values } => {
            for &k in k_values.iter().filter(|&&k| k >= 1 && k <= train.len()) {
                let model = knn_train(&train, k)?;
                let cm = confusion_for(&labels, &test, |q| Ok(knn_classify(&model, q)?.label))?;
                let per_class = class_metrics(&cm);
                let avg = macro_average(&per_class);
                results.push(PointResult {
                    point: SweepPoint {
                        parameter: k,
                        avg_pr: avg.precision,
                        avg_re: avg.recall,
                        avg_f1: avg.f1,
                        restart_f1_std: None,
                    },
                    per_class,
                    confusion: cm,
                });
            }
        }
        ClassifierSpec::Gmm { components, restarts } => {
            if *restarts == 0 {
                return Err(Error::InvalidParameter("at least one EM restart required"));
            }
            let max_components = spec.train_per_class;
            for &c in components.iter().filter(|&&c| c >= 1 && c <= max_components) {
                let mut sums = vec![(0.0, 0.0, 0.0); labels.len()];
                let mut restart_f1 = Vec::with_capacity(*restarts);
                let mut first_cm = None;
                for r in 0..*restarts {
                    let model = GmmModel::train(&train, c, seed::derive(spec.seed, &[c as u64, r as u64]))?;
                    let cm = confusion_for(&labels, &test, |q| Ok(gmm_classify(&model, q)?.label))?;
                    let scores = class_metrics(&cm);
                    restart_f1.push(macro_average(&scores).f1);
                    for (acc, s) in sums.iter_mut().zip(&scores) {
                        acc.0 += s.precision;
                        acc.1 += s.recall;
                        acc.2 += s.f1;
                    }
                    first_cm.get_or_insert(cm);
                }
                let rn = *restarts as f64;
                let per_class: Vec<ClassScore> = labels
                    .iter()
                    .zip(&sums)
                    .map(|(l, s)| ClassScore {
                        label: l.clone(),
                        precision: s.0 / rn,
                        recall: s.1 / rn,
                        f1: s.2 / rn,
                    })
                    .collect();
                let avg = macro_average(&per_class);
                results.push(PointResult {
                    point: SweepPoint {
                        parameter: c,
                        avg_pr: avg.precision,
                        avg_re: avg.recall,
                        avg_f1: avg.f1,
                        restart_f1_std: Some(population_std(&restart_f1)),
                    },
                    per_class,
                    confusion: first_cm.expect("restarts >= 1"),
                });
            }
        }
    }
    let best = results
        .iter()
        .enumerate()
        .fold(None::<usize>, |best, (i, r)| match best {
            Some(b) if results[b].point.avg_f1 >= r.point.avg_f1 => Some(b),
            _ => Some(i),
        })
        .ok_or(Error::InvalidParameter("no sweep value fits the training split"))?;
    let sweep: Vec<SweepPoint> = results.iter().map(|r| r.point.clone()).collect();
    let PointResult {
        point,
        per_class,
        confusion,
    } = results.swap_remove(best);
    Ok(EvaluationReport {
        spec: ExperimentSpec {
            features,
            ..spec.clone()
        },
        best_parameter: point.parameter,
        per_class,
        avg_pr: point.avg_pr,
        avg_re: point.avg_re,
        avg_f1: point.avg_f1,
        restart_f1_std: point.restart_f1_std,
        sweep,
        confusion,
        n_train: train.len(),
        n_test: test.len(),
    })
}

/// Extracts `spec.features` from every labeled clip, then runs
/// [`evaluate_vectors`].
pub fn run_experiment(corpus: &[AudioClip], spec: &ExperimentSpec) -> Result<EvaluationReport> {
    let vectors = corpus
        .iter()
        .map(|c| extract(c, &spec.features))
        .collect::<Result<Vec<_>>>()?;
    evaluate_vectors(&vectors, spec)
}
