//! Sequential forward feature selection.
//!
//! Every feature is first scored alone. Features are then visited in
//! descending score order (ties by feature code) and each one is kept only
//! if adding it strictly raises the best score seen so far.

use alloc::vec::Vec;

use crate::features::canonical;
use crate::{Error, FeatureId};

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SelectionResult {
    /// Singleton scores, best first.
    pub ranked_singletons: Vec<(FeatureId, f64)>,
    /// Kept features in the order they were added.
    pub chosen: Vec<FeatureId>,
    /// Every subset passed to the objective, in call order.
    pub score_trace: Vec<(Vec<FeatureId>, f64)>,
    pub final_score: f64,
}

/// Runs forward selection over `features` with `evaluate` as the
/// objective (an F1 score in `[0, 1]`).
///
/// The objective is called exactly `2 · |features|` times: once per
/// singleton, then once per greedy candidate. If no candidate ever beats
/// zero the chosen set is empty.
pub fn sfs<E, F>(features: &[FeatureId], mut evaluate: F) -> Result<SelectionResult, E>
where
    E: From<Error>,
    F: FnMut(&[FeatureId]) -> Result<f64, E>,
{
    let features = canonical(features);
    if features.is_empty() {
        return Err(Error::EmptyFeatureSet.into());
    }
    let mut score_trace = Vec::with_capacity(2 * features.len());
    let mut ranked = Vec::with_capacity(features.len());
    for &f in &features {
        let score = evaluate(&[f])?;
        score_trace.push((alloc::vec![f], score));
        ranked.push((f, score));
    }
    // Stable sort keeps code order among equal scores.
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1));

    let mut max_score = 0.0;
    let mut chosen: Vec<FeatureId> = Vec::new();
    for &(f, _) in &ranked {
        chosen.push(f);
        let score = evaluate(&chosen)?;
        score_trace.push((chosen.clone(), score));
        if score > max_score {
            max_score = score;
        } else {
            chosen.pop();
        }
    }
    Ok(SelectionResult {
        ranked_singletons: ranked,
        chosen,
        score_trace,
        final_score: max_score,
    })
}
