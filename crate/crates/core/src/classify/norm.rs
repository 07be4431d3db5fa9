use alloc::vec::Vec;

use super::check_dimension;
use crate::{Error, Result};

/// Per-dimension mean and (population) standard deviation.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NormStats {
    pub mean: Vec<f64>,
    /// Constant dimensions are stored with a deviation of 1.
    pub std: Vec<f64>,
}

impl NormStats {
    pub fn fit(rows: &[Vec<f64>]) -> Result<Self> {
        let first = rows.first().ok_or(Error::EmptyTrainingSet)?;
        let dim = first.len();
        let n = rows.len() as f64;
        let mut mean = alloc::vec![0.0; dim];
        for r in rows {
            check_dimension(dim, r.len())?;
            for (m, x) in mean.iter_mut().zip(r) {
                *m += x;
            }
        }
        mean.iter_mut().for_each(|m| *m /= n);
        let mut var = alloc::vec![0.0; dim];
        for r in rows {
            for ((v, x), m) in var.iter_mut().zip(r).zip(&mean) {
                *v += (x - m) * (x - m);
            }
        }
        let std = var
            .into_iter()
            .map(|v| {
                let s = libm::sqrt(v / n);
                if s > 0.0 {
                    s
                } else {
                    1.0
                }
            })
            .collect();
        Ok(Self { mean, std })
    }

    pub fn dimension(&self) -> usize {
        self.mean.len()
    }

    pub fn apply(&self, row: &[f64]) -> Result<Vec<f64>> {
        check_dimension(self.dimension(), row.len())?;
        Ok(row
            .iter()
            .zip(&self.mean)
            .zip(&self.std)
            .map(|((x, m), s)| (x - m) / s)
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn constant_dimension_gets_unit_deviation() {
        let stats = NormStats::fit(&[vec![1.0, 5.0], vec![3.0, 5.0]]).unwrap();
        assert_eq!(stats.mean, vec![2.0, 5.0]);
        assert_eq!(stats.std, vec![1.0, 1.0]);
        assert_eq!(stats.apply(&[4.0, 7.0]).unwrap(), vec![2.0, 2.0]);
        assert!(stats.apply(&[1.0]).is_err());
    }
}
