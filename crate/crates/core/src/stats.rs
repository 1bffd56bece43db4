//! Descriptive statistics for boxplots.

use alloc::vec::Vec;

/// Box-and-whisker summary of a sample.
///
/// Quartiles interpolate linearly between order statistics. Whiskers reach
/// the most extreme samples within 1.5 IQR of the box; a whisker whose
/// fence holds no samples outside the box collapses onto the quartile.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DescriptiveStats {
    pub n: usize,
    pub mean: f64,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    pub whisker_low: f64,
    pub whisker_high: f64,
    pub min: f64,
    pub max: f64,
    pub outliers: Vec<f64>,
}

/// Quantile `p` in `[0, 1]` of an ascending, non-empty slice.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h as usize;
    let frac = h - lo as f64;
    match sorted.get(lo + 1) {
        Some(&next) if frac > 0.0 => sorted[lo] + frac * (next - sorted[lo]),
        _ => sorted[lo],
    }
}

impl DescriptiveStats {
    /// `None` for an empty sample or one containing NaN.
    pub fn from_values(values: &[f64]) -> Option<Self> {
        if values.is_empty() || values.iter().any(|v| v.is_nan()) {
            return None;
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len();
        let mean = values.iter().sum::<f64>() / n as f64;
        let q1 = quantile_sorted(&sorted, 0.25);
        let median = quantile_sorted(&sorted, 0.5);
        let q3 = quantile_sorted(&sorted, 0.75);
        let iqr = q3 - q1;
        let lo_fence = q1 - 1.5 * iqr;
        let hi_fence = q3 + 1.5 * iqr;
        let whisker_low = sorted
            .iter()
            .copied()
            .find(|&v| v >= lo_fence)
            .map_or(q1, |v| v.min(q1));
        let whisker_high = sorted
            .iter()
            .rev()
            .copied()
            .find(|&v| v <= hi_fence)
            .map_or(q3, |v| v.max(q3));
        let outliers = values
            .iter()
            .copied()
            .filter(|&v| v < lo_fence || v > hi_fence)
            .collect();
        Some(DescriptiveStats {
            n,
            mean,
            median,
            q1,
            q3,
            whisker_low,
            whisker_high,
            min: sorted[0],
            max: sorted[n - 1],
            outliers,
        })
    }

    pub fn iqr(&self) -> f64 {
        self.q3 - self.q1
    }

    /// The same summary with every value multiplied by `factor` (> 0).
    pub fn scaled(&self, factor: f64) -> DescriptiveStats {
        DescriptiveStats {
            n: self.n,
            mean: self.mean * factor,
            median: self.median * factor,
            q1: self.q1 * factor,
            q3: self.q3 * factor,
            whisker_low: self.whisker_low * factor,
            whisker_high: self.whisker_high * factor,
            min: self.min * factor,
            max: self.max * factor,
            outliers: self.outliers.iter().map(|v| v * factor).collect(),
        }
    }
}
