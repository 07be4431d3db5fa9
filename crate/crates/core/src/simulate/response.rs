use alloc::vec::Vec;

use super::ControlPoint;

/// Monotone piecewise-cubic (Fritsch-Carlson) interpolation of dB gains
/// over log frequency. Outside the control range the end values are held.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseCurve {
    log_f: Vec<f64>,
    db: Vec<f64>,
    slopes: Vec<f64>,
}

impl ResponseCurve {
    pub fn new(points: &[ControlPoint]) -> Self {
        let log_f: Vec<f64> = points.iter().map(|p| libm::log(p.freq_hz)).collect();
        let db: Vec<f64> = points.iter().map(|p| p.gain_db).collect();
        let n = points.len();
        let mut slopes = alloc::vec![0.0; n];
        if n >= 2 {
            let h: Vec<f64> = log_f.windows(2).map(|w| w[1] - w[0]).collect();
            let delta: Vec<f64> = (0..n - 1).map(|i| (db[i + 1] - db[i]) / h[i]).collect();
            slopes[0] = delta[0];
            slopes[n - 1] = delta[n - 2];
            for i in 1..n - 1 {
                if delta[i - 1] * delta[i] <= 0.0 {
                    slopes[i] = 0.0;
                } else {
                    let w1 = 2.0 * h[i] + h[i - 1];
                    let w2 = h[i] + 2.0 * h[i - 1];
                    slopes[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
                }
            }
            // Endpoint slopes must not overshoot the neighbouring secant.
            for (end, d) in [(0, delta[0]), (n - 1, delta[n - 2])] {
                if slopes[end] * d <= 0.0 {
                    slopes[end] = 0.0;
                }
            }
        }
        Self { log_f, db, slopes }
    }

    pub fn is_flat(&self) -> bool {
        self.db.iter().all(|&d| d == 0.0)
    }

    pub fn gain_db(&self, freq_hz: f64) -> f64 {
        let n = self.db.len();
        match n {
            0 => return 0.0,
            1 => return self.db[0],
            _ => {}
        }
        let x = if freq_hz > 0.0 { libm::log(freq_hz) } else { f64::NEG_INFINITY };
        if x <= self.log_f[0] {
            return self.db[0];
        }
        if x >= self.log_f[n - 1] {
            return self.db[n - 1];
        }
        let i = self.log_f.partition_point(|&v| v <= x) - 1;
        let h = self.log_f[i + 1] - self.log_f[i];
        let t = (x - self.log_f[i]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.db[i] + h10 * h * self.slopes[i] + h01 * self.db[i + 1] + h11 * h * self.slopes[i + 1]
    }

    pub fn linear_gain(&self, freq_hz: f64) -> f64 {
        libm::pow(10.0, self.gain_db(freq_hz) / 20.0)
    }
}
