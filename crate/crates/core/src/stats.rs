//! Small statistics over analysis results: correlation between feature
//! series and per-sequence aggregation of frame features.

use crate::features::FrameFeatures;
use crate::math;

/// Errors from the statistics helpers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StatsError {
    /// The two series have different lengths.
    #[error("series lengths differ: {left} vs {right}")]
    LengthMismatch {
        /// Length of the first series.
        left: usize,
        /// Length of the second series.
        right: usize,
    },
    /// Correlation is undefined: fewer than two points, or a series
    /// with zero variance.
    #[error("correlation undefined for constant or too-short input")]
    DegenerateInput,
    /// No records to aggregate.
    #[error("cannot summarize zero records")]
    EmptyInput,
}

/// Pearson correlation coefficient of two equal-length series.
///
/// Computed from centered sums and clamped into [-1, 1] so downstream
/// comparisons never see a rounding artifact like 1.0000000000000002.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(StatsError::DegenerateInput);
    }
    let n = x.len() as f64;
    let mut sum_x = 0.0;
    let mut sum_y = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        sum_x += a;
        sum_y += b;
    }
    let (mean_x, mean_y) = (sum_x / n, sum_y / n);
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        let (dx, dy) = (a - mean_x, b - mean_y);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(StatsError::DegenerateInput);
    }
    Ok((sxy / math::sqrt(sxx * syy)).clamp(-1.0, 1.0))
}

/// Mean and maximum of one feature over a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FeatureAggregate {
    /// Arithmetic mean over all frames.
    pub mean: f64,
    /// Largest value over all frames.
    pub max: f64,
}

/// Per-sequence aggregation of the seven features, with room for the
/// SI/TI maxima when that analysis also ran.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SequenceSummary {
    /// Luma texture energy.
    pub e_y: FeatureAggregate,
    /// Luma texture gradient; the first frame's 0 is part of the mean.
    pub h: FeatureAggregate,
    /// Luma luminescence.
    pub l_y: FeatureAggregate,
    /// First chroma texture energy.
    pub e_u: FeatureAggregate,
    /// First chroma luminescence.
    pub l_u: FeatureAggregate,
    /// Second chroma texture energy.
    pub e_v: FeatureAggregate,
    /// Second chroma luminescence.
    pub l_v: FeatureAggregate,
    /// Sequence SI, when SI/TI analysis ran.
    pub si: Option<f64>,
    /// Sequence TI, when SI/TI analysis ran.
    pub ti: Option<f64>,
}

/// Aggregates frame features in picture order. SI/TI stay unset; the
/// caller merges them in when both analyses run.
pub fn summarize(records: &[FrameFeatures]) -> Result<SequenceSummary, StatsError> {
    if records.is_empty() {
        return Err(StatsError::EmptyInput);
    }
    type Getter = fn(&FrameFeatures) -> f64;
    let mut summary = SequenceSummary::default();
    let fields: [(&mut FeatureAggregate, Getter); 7] = [
        (&mut summary.e_y, |r| r.e_y),
        (&mut summary.h, |r| r.h),
        (&mut summary.l_y, |r| r.l_y),
        (&mut summary.e_u, |r| r.e_u),
        (&mut summary.l_u, |r| r.l_u),
        (&mut summary.e_v, |r| r.e_v),
        (&mut summary.l_v, |r| r.l_v),
    ];
    let n = records.len() as f64;
    for (slot, get) in fields {
        let mut sum = 0.0;
        let mut max = f64::NEG_INFINITY;
        for record in records {
            let v = get(record);
            sum += v;
            max = max.max(v);
        }
        *slot = FeatureAggregate { mean: sum / n, max };
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pearson_matches_hand_computed_value() {
        // Covariance 3/2 over spreads sqrt(2/3) and sqrt(14/3):
        // r = 9 / sqrt(84).
        let r = pearson(&[1.0, 2.0, 3.0], &[1.0, 2.0, 4.0]).unwrap();
        assert!((r - 9.0 / 84.0_f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn pearson_is_exactly_one_for_affine_series() {
        let x = [1.0, 2.0, 5.0, 7.5];
        let y: Vec<f64> = x.iter().map(|v| 3.0 * v - 2.0).collect();
        assert_eq!(pearson(&x, &y).unwrap(), 1.0);
        let neg: Vec<f64> = x.iter().map(|v| -0.5 * v + 4.0).collect();
        assert_eq!(pearson(&x, &neg).unwrap(), -1.0);
    }

    #[test]
    fn pearson_is_symmetric() {
        let x = [0.3, 1.7, 2.2, 9.1, 4.0];
        let y = [5.0, 2.0, 8.8, 1.0, 0.4];
        assert_eq!(pearson(&x, &y).unwrap(), pearson(&y, &x).unwrap());
    }

    #[test]
    fn pearson_rejects_bad_input() {
        assert_eq!(
            pearson(&[1.0, 2.0], &[1.0]).unwrap_err(),
            StatsError::LengthMismatch { left: 2, right: 1 }
        );
        assert_eq!(
            pearson(&[1.0], &[1.0]).unwrap_err(),
            StatsError::DegenerateInput
        );
        assert_eq!(
            pearson(&[2.0, 2.0, 2.0], &[1.0, 2.0, 3.0]).unwrap_err(),
            StatsError::DegenerateInput
        );
    }

    #[test]
    fn summarize_tracks_mean_and_max_per_feature() {
        let records = [
            FrameFeatures {
                poc: 0,
                e_y: 1.0,
                h: 0.0,
                l_y: 30.0,
                ..FrameFeatures::default()
            },
            FrameFeatures {
                poc: 1,
                e_y: 3.0,
                h: 0.5,
                l_y: 10.0,
                ..FrameFeatures::default()
            },
        ];
        let s = summarize(&records).unwrap();
        assert_eq!(s.e_y.mean, 2.0);
        assert_eq!(s.e_y.max, 3.0);
        // The first frame's h = 0 is part of the mean by definition.
        assert_eq!(s.h.mean, 0.25);
        assert_eq!(s.l_y.max, 30.0);
        assert_eq!(s.si, None);
        assert!(s.e_y.mean <= s.e_y.max);
    }

    #[test]
    fn summarize_rejects_empty_input() {
        assert_eq!(summarize(&[]).unwrap_err(), StatsError::EmptyInput);
    }
}
