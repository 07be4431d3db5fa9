use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::Rng;

use super::{check_dimension, Dataset, NormStats};
use crate::{seed, Error, FeatureId, Result};

pub const VARIANCE_FLOOR: f64 = 1e-6;
/// EM stops once one iteration gains less than this much log-likelihood.
pub const EM_TOLERANCE: f64 = 1e-6;
pub const EM_MAX_ITERATIONS: usize = 200;

/// Diagonal-covariance Gaussian mixture.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Mixture {
    pub weights: Vec<f64>,
    pub means: Vec<Vec<f64>>,
    pub variances: Vec<Vec<f64>>,
}

fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + libm::log(values.iter().map(|v| libm::exp(v - max)).sum::<f64>())
}

fn log_gaussian(x: &[f64], mean: &[f64], var: &[f64]) -> f64 {
    let mut acc = 0.0;
    for ((xi, mi), vi) in x.iter().zip(mean).zip(var) {
        let d = xi - mi;
        acc += libm::log(2.0 * PI * vi) + d * d / vi;
    }
    -0.5 * acc
}

impl Mixture {
    pub fn n_components(&self) -> usize {
        self.weights.len()
    }

    pub fn dimension(&self) -> usize {
        self.means.first().map_or(0, Vec::len)
    }

    fn component_log_terms(&self, x: &[f64], out: &mut Vec<f64>) {
        out.clear();
        for ((w, m), v) in self.weights.iter().zip(&self.means).zip(&self.variances) {
            out.push(libm::log(*w) + log_gaussian(x, m, v));
        }
    }

    /// Log density at `x`, via log-sum-exp over components.
    pub fn log_density(&self, x: &[f64]) -> f64 {
        let mut terms = Vec::with_capacity(self.n_components());
        self.component_log_terms(x, &mut terms);
        log_sum_exp(&terms)
    }

    pub fn log_likelihood(&self, data: &[Vec<f64>]) -> f64 {
        data.iter().map(|x| self.log_density(x)).sum()
    }
}

/// A fitted mixture with its per-iteration log-likelihood trace.
#[derive(Debug, Clone, PartialEq)]
pub struct FitOutcome {
    pub mixture: Mixture,
    /// Total log-likelihood at initialization and after every M-step.
    pub log_likelihood: Vec<f64>,
    pub converged: bool,
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// k-means++ seeding: first centre uniform, the rest drawn with
/// probability proportional to squared distance from the nearest centre.
fn kmeans_pp(data: &[Vec<f64>], k: usize, rng: &mut impl Rng) -> Vec<Vec<f64>> {
    let mut centres = vec![data[rng.random_range(0..data.len())].clone()];
    let mut nearest: Vec<f64> = data.iter().map(|x| squared_distance(x, &centres[0])).collect();
    while centres.len() < k {
        let total: f64 = nearest.iter().sum();
        let pick = if total > 0.0 {
            let mut target = rng.random::<f64>() * total;
            let mut chosen = data.len() - 1;
            for (i, d) in nearest.iter().enumerate() {
                if target < *d {
                    chosen = i;
                    break;
                }
                target -= d;
            }
            chosen
        } else {
            rng.random_range(0..data.len())
        };
        let c = data[pick].clone();
        for (n, x) in nearest.iter_mut().zip(data) {
            *n = n.min(squared_distance(x, &c));
        }
        centres.push(c);
    }
    centres
}

fn data_variance(data: &[Vec<f64>]) -> Vec<f64> {
    let n = data.len() as f64;
    let dim = data[0].len();
    let mut mean = vec![0.0; dim];
    for x in data {
        mean.iter_mut().zip(x).for_each(|(m, v)| *m += v / n);
    }
    let mut var = vec![0.0; dim];
    for x in data {
        for ((s, v), m) in var.iter_mut().zip(x).zip(&mean) {
            *s += (v - m) * (v - m) / n;
        }
    }
    var.into_iter().map(|v| v.max(VARIANCE_FLOOR)).collect()
}

/// E-step: fills `resp` with responsibilities and returns the total
/// log-likelihood.
fn expectation(mix: &Mixture, data: &[Vec<f64>], resp: &mut [Vec<f64>]) -> f64 {
    let mut terms = Vec::with_capacity(mix.n_components());
    let mut total = 0.0;
    for (x, r) in data.iter().zip(resp.iter_mut()) {
        mix.component_log_terms(x, &mut terms);
        let lse = log_sum_exp(&terms);
        total += lse;
        for (ri, t) in r.iter_mut().zip(&terms) {
            *ri = libm::exp(t - lse);
        }
    }
    total
}

fn maximization(mix: &mut Mixture, data: &[Vec<f64>], resp: &[Vec<f64>]) {
    let n = data.len() as f64;
    for k in 0..mix.n_components() {
        let nk: f64 = resp.iter().map(|r| r[k]).sum();
        if !(nk > 0.0) {
            // Component owns no data; retire it.
            mix.weights[k] = 0.0;
            continue;
        }
        mix.weights[k] = nk / n;
        let mean = &mut mix.means[k];
        mean.iter_mut().for_each(|m| *m = 0.0);
        for (x, r) in data.iter().zip(resp) {
            for (m, v) in mean.iter_mut().zip(x) {
                *m += r[k] * v;
            }
        }
        mean.iter_mut().for_each(|m| *m /= nk);
        let var = &mut mix.variances[k];
        var.iter_mut().for_each(|v| *v = 0.0);
        for (x, r) in data.iter().zip(resp) {
            for ((s, v), m) in var.iter_mut().zip(x).zip(mean.iter()) {
                *s += r[k] * (v - m) * (v - m);
            }
        }
        var.iter_mut().for_each(|v| *v = (*v / nk).max(VARIANCE_FLOOR));
    }
}

/// Fits a diagonal mixture to one class with EM.
///
/// Means start from seeded k-means++ picks, weights uniform, variances at
/// the per-dimension data variance. Iterates until the gain drops below
/// `EM_TOLERANCE` or `EM_MAX_ITERATIONS` M-steps have run. Variances are
/// floored at `VARIANCE_FLOOR` after every M-step.
pub fn gmm_fit(data: &[Vec<f64>], n_components: usize, seed: u64) -> Result<FitOutcome> {
    if n_components == 0 {
        return Err(Error::InvalidParameter("at least one mixture component required"));
    }
    if data.len() < n_components {
        return Err(Error::TooFewSamples {
            samples: data.len(),
            components: n_components,
        });
    }
    let dim = data[0].len();
    for x in data {
        check_dimension(dim, x.len())?;
    }
    let mut rng = seed::rng(seed);
    let variance = data_variance(data);
    let mut mix = Mixture {
        weights: vec![1.0 / n_components as f64; n_components],
        means: kmeans_pp(data, n_components, &mut rng),
        variances: vec![variance; n_components],
    };
    let mut resp = vec![vec![0.0; n_components]; data.len()];
    let mut ll = expectation(&mix, data, &mut resp);
    let mut trace = vec![ll];
    let mut converged = false;
    for _ in 0..EM_MAX_ITERATIONS {
        maximization(&mut mix, data, &resp);
        let next = expectation(&mix, data, &mut resp);
        trace.push(next);
        let gain = next - ll;
        ll = next;
        if gain < EM_TOLERANCE {
            converged = true;
            break;
        }
    }
    Ok(FitOutcome {
        mixture: mix,
        log_likelihood: trace,
        converged,
    })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClassMixture {
    pub label: String,
    pub mixture: Mixture,
}

/// One mixture per class, over z-scored rows.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GmmModel {
    pub features: Vec<FeatureId>,
    pub n_components: usize,
    pub norm: NormStats,
    /// Sorted by label.
    pub classes: Vec<ClassMixture>,
}

impl GmmModel {
    /// Fits every class independently; class `i` (in label order) uses the
    /// sub-seed `derive(seed, [i])`.
    pub fn train(data: &Dataset, n_components: usize, seed: u64) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::EmptyTrainingSet);
        }
        let norm = NormStats::fit(&data.rows)?;
        let z: Vec<Vec<f64>> = data.rows.iter().map(|r| norm.apply(r)).collect::<Result<_>>()?;
        let classes = data
            .classes()
            .into_iter()
            .enumerate()
            .map(|(i, label)| {
                let members: Vec<Vec<f64>> = z
                    .iter()
                    .zip(&data.labels)
                    .filter(|(_, l)| **l == label)
                    .map(|(r, _)| r.clone())
                    .collect();
                let fit = gmm_fit(&members, n_components, seed::derive(seed, &[i as u64]))?;
                Ok(ClassMixture {
                    label,
                    mixture: fit.mixture,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            features: data.features.clone(),
            n_components,
            norm,
            classes,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GmmPrediction {
    pub label: String,
    /// Per-class log-likelihood of the query, in label order.
    pub log_likelihoods: Vec<(String, f64)>,
}

/// Returns the class whose mixture gives the query the highest
/// log-likelihood; ties go to the lexicographically smaller label.
pub fn gmm_classify(model: &GmmModel, query: &[f64]) -> Result<GmmPrediction> {
    let z = model.norm.apply(query)?;
    let log_likelihoods: Vec<(String, f64)> = model
        .classes
        .iter()
        .map(|c| (c.label.clone(), c.mixture.log_density(&z)))
        .collect();
    let mut best = 0;
    for (i, (_, ll)) in log_likelihoods.iter().enumerate() {
        if *ll > log_likelihoods[best].1 {
            best = i;
        }
    }
    Ok(GmmPrediction {
        label: log_likelihoods[best].0.clone(),
        log_likelihoods,
    })
}
