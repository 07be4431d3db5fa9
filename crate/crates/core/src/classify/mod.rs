//! k-nearest-neighbour and Gaussian-mixture device classifiers.
//!
//! Both classifiers z-score every dimension with statistics taken from the
//! training rows, so features measured in Hz and unitless ratios carry
//! comparable weight.

mod gmm;
mod knn;
mod norm;

use alloc::string::String;
use alloc::vec::Vec;

pub use gmm::{gmm_classify, gmm_fit, ClassMixture, FitOutcome, GmmModel, GmmPrediction, Mixture, EM_MAX_ITERATIONS, EM_TOLERANCE, VARIANCE_FLOOR};
pub use knn::{knn_classify, knn_train, KnnModel, KnnPrediction};
pub use norm::NormStats;

use crate::features::FeatureVector;
use crate::{Error, FeatureId, Result};

/// Labeled training or test rows sharing one feature layout.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub features: Vec<FeatureId>,
    pub rows: Vec<Vec<f64>>,
    pub labels: Vec<String>,
}

impl Dataset {
    /// Flattens labeled vectors. All vectors must carry the same features.
    pub fn from_vectors(vectors: &[FeatureVector]) -> Result<Self> {
        let first = vectors.first().ok_or(Error::EmptyTrainingSet)?;
        let features = first.features();
        let dim = first.dimension();
        let mut rows = Vec::with_capacity(vectors.len());
        let mut labels = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.features() != features {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.dimension(),
                });
            }
            labels.push(String::from(v.require_label()?));
            rows.push(v.flatten());
        }
        Ok(Self { features, rows, labels })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>, labels: Vec<String>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyTrainingSet);
        }
        if rows.len() != labels.len() {
            return Err(Error::InvalidParameter("row and label counts differ"));
        }
        let dim = rows[0].len();
        if let Some(r) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: r.len() });
        }
        Ok(Self {
            features: Vec::new(),
            rows,
            labels,
        })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Distinct labels in lexicographic order.
    pub fn classes(&self) -> Vec<String> {
        let mut c = self.labels.clone();
        c.sort();
        c.dedup();
        c
    }
}

pub(crate) fn check_dimension(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

/// A trained model of either kind.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Model {
    Knn(KnnModel),
    Gmm(GmmModel),
}

impl Model {
    pub fn features(&self) -> &[FeatureId] {
        match self {
            Model::Knn(m) => &m.features,
            Model::Gmm(m) => &m.features,
        }
    }

    pub fn predict(&self, query: &[f64]) -> Result<String> {
        match self {
            Model::Knn(m) => Ok(knn_classify(m, query)?.label),
            Model::Gmm(m) => Ok(gmm_classify(m, query)?.label),
        }
    }
}
