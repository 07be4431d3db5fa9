use alloc::string::String;
use alloc::vec::Vec;

use super::{Dataset, NormStats};
use crate::{Error, FeatureId, Result};

/// Lazy learner: the z-scored training rows themselves.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KnnModel {
    pub features: Vec<FeatureId>,
    pub k: usize,
    pub norm: NormStats,
    pub exemplars: Vec<Vec<f64>>,
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KnnPrediction {
    pub label: String,
    pub votes: usize,
}

pub fn knn_train(data: &Dataset, k: usize) -> Result<KnnModel> {
    if data.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1"));
    }
    if k > data.len() {
        return Err(Error::KTooLarge {
            k,
            exemplars: data.len(),
        });
    }
    let norm = NormStats::fit(&data.rows)?;
    let exemplars = data.rows.iter().map(|r| norm.apply(r)).collect::<Result<_>>()?;
    Ok(KnnModel {
        features: data.features.clone(),
        k,
        norm,
        exemplars,
        labels: data.labels.clone(),
    })
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    libm::sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
}

/// Majority vote among the `k` nearest exemplars in z-scored space.
///
/// Ties on votes go to the label with the smaller summed distance, then to
/// the lexicographically smaller label. Equidistant neighbours at the k-th
/// position are taken in label order.
pub fn knn_classify(model: &KnnModel, query: &[f64]) -> Result<KnnPrediction> {
    let q = model.norm.apply(query)?;
    let mut ranked: Vec<(f64, &str)> = model
        .exemplars
        .iter()
        .zip(&model.labels)
        .map(|(e, l)| (distance(e, &q), l.as_str()))
        .collect();
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(b.1)));

    // (label, votes, summed distance), kept in label order.
    let mut tally: Vec<(&str, usize, f64)> = Vec::new();
    for &(d, label) in ranked.iter().take(model.k) {
        match tally.binary_search_by(|t| t.0.cmp(label)) {
            Ok(i) => {
                tally[i].1 += 1;
                tally[i].2 += d;
            }
            Err(i) => tally.insert(i, (label, 1, d)),
        }
    }
    let best = tally
        .iter()
        .reduce(|best, t| {
            if t.1 > best.1 || (t.1 == best.1 && t.2 < best.2) {
                t
            } else {
                best
            }
        })
        .expect("k >= 1");
    Ok(KnnPrediction {
        label: String::from(best.0),
        votes: best.1,
    })
}
