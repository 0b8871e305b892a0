//! Confusion-matrix scores and AUROC.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: usize,
    pub tn: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
}

impl ConfusionMatrix {
    pub fn total(&self) -> usize {
        self.tp + self.tn + self.fp + self.fn_
    }

    /// The same counts seen with the other class as positive.
    pub fn swapped(&self) -> Self {
        ConfusionMatrix {
            tp: self.tn,
            tn: self.tp,
            fp: self.fn_,
            fn_: self.fp,
        }
    }
}

/// Counts outcomes with `positive` as the positive class. Labels are 0/1.
pub fn confusion(y_true: &[u8], y_pred: &[u8], positive: u8) -> Result<ConfusionMatrix> {
    if y_true.len() != y_pred.len() {
        return Err(Error::Data(format!(
            "{} true labels but {} predictions",
            y_true.len(),
            y_pred.len()
        )));
    }
    if y_true.is_empty() {
        return Err(Error::Data("confusion matrix of zero samples".into()));
    }
    let mut cm = ConfusionMatrix::default();
    for (&t, &p) in y_true.iter().zip(y_pred) {
        match (t == positive, p == positive) {
            (true, true) => cm.tp += 1,
            (false, false) => cm.tn += 1,
            (false, true) => cm.fp += 1,
            (true, false) => cm.fn_ += 1,
        }
    }
    Ok(cm)
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Scores {
    pub accuracy: f64,
    pub sensitivity: f64,
    pub specificity: f64,
    pub f1: f64,
    /// Names of scores whose denominator was zero; those are reported as 0.
    pub undefined: Vec<String>,
}

fn ratio(num: usize, den: usize, name: &str, undefined: &mut Vec<String>) -> f64 {
    if den == 0 {
        undefined.push(name.to_string());
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Accuracy, sensitivity, specificity and F1 from raw counts.
pub fn scores_from_confusion(cm: &ConfusionMatrix) -> Scores {
    let mut undefined = Vec::new();
    let accuracy = ratio(cm.tp + cm.tn, cm.total(), "accuracy", &mut undefined);
    let sensitivity = ratio(cm.tp, cm.tp + cm.fn_, "sensitivity", &mut undefined);
    let specificity = ratio(cm.tn, cm.tn + cm.fp, "specificity", &mut undefined);
    let f1 = ratio(2 * cm.tp, 2 * cm.tp + cm.fp + cm.fn_, "f1", &mut undefined);
    Scores {
        accuracy,
        sensitivity,
        specificity,
        f1,
        undefined,
    }
}

/// Mann–Whitney AUROC with label 1 as positive: the fraction of
/// (positive, negative) pairs ranked correctly, ties counting one half.
pub fn auroc(y_true: &[u8], scores: &[f64]) -> Result<f64> {
    if y_true.len() != scores.len() {
        return Err(Error::Data(format!(
            "{} labels but {} scores",
            y_true.len(),
            scores.len()
        )));
    }
    if let Some(s) = scores.iter().find(|s| s.is_nan()) {
        return Err(Error::Data(format!("score {s} is not comparable")));
    }
    let n_pos = y_true.iter().filter(|&&y| y == 1).count();
    let n_neg = y_true.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(Error::UndefinedAuroc(format!(
            "needs both classes, got {n_pos} positive and {n_neg} negative samples"
        )));
    }

    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));

    // Twice the rank sum of the positives, with tied groups sharing their mean rank.
    let mut twice_rank_sum: u64 = 0;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && scores[order[end]] == scores[order[start]] {
            end += 1;
        }
        // ranks start+1 ..= end, mean = (start + 1 + end) / 2
        let twice_mean = (start + 1 + end) as u64;
        let pos_in_group = order[start..end]
            .iter()
            .filter(|&&i| y_true[i] == 1)
            .count() as u64;
        twice_rank_sum += twice_mean * pos_in_group;
        start = end;
    }
    let p = n_pos as u64;
    let twice_u = twice_rank_sum - p * (p + 1);
    Ok(twice_u as f64 / (2 * n_pos * n_neg) as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohortMetrics {
    pub accuracy: f64,
    pub sensitivity: f64,
    pub specificity: f64,
    pub f1: f64,
    pub auroc: Option<f64>,
    pub confusion: ConfusionMatrix,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub undefined: Vec<String>,
}

impl CohortMetrics {
    fn new(cm: ConfusionMatrix, auroc: Option<f64>) -> Self {
        let s = scores_from_confusion(&cm);
        CohortMetrics {
            accuracy: s.accuracy,
            sensitivity: s.sensitivity,
            specificity: s.specificity,
            f1: s.f1,
            auroc,
            confusion: cm,
            undefined: s.undefined,
        }
    }
}

/// Both rows of the evaluation table: AD as positive class, and NON_AD as
/// positive class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub n_samples: usize,
    pub ad: CohortMetrics,
    pub non_ad: CohortMetrics,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub auroc_diagnostic: Option<String>,
}

/// Evaluates probabilistic predictions; hard labels use the 0.5 threshold.
pub fn evaluate(y_true: &[u8], p_ad: &[f64]) -> Result<MetricsReport> {
    let y_pred: Vec<u8> = p_ad.iter().map(|&p| (p >= 0.5) as u8).collect();
    let cm = confusion(y_true, &y_pred, 1)?;
    let (auc_ad, auc_non_ad, diagnostic) = match auroc(y_true, p_ad) {
        Ok(a) => {
            let flipped: Vec<u8> = y_true.iter().map(|&y| 1 - y.min(1)).collect();
            let neg: Vec<f64> = p_ad.iter().map(|p| -p).collect();
            (Some(a), Some(auroc(&flipped, &neg)?), None)
        }
        Err(Error::UndefinedAuroc(msg)) => (None, None, Some(msg)),
        Err(e) => return Err(e),
    };
    Ok(MetricsReport {
        n_samples: y_true.len(),
        ad: CohortMetrics::new(cm, auc_ad),
        non_ad: CohortMetrics::new(cm.swapped(), auc_non_ad),
        auroc_diagnostic: diagnostic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_pair() {
        let cm = confusion(&[1, 0], &[1, 0], 1).unwrap();
        assert_eq!(
            cm,
            ConfusionMatrix {
                tp: 1,
                tn: 1,
                fp: 0,
                fn_: 0
            }
        );
        let s = scores_from_confusion(&cm);
        assert_eq!(
            (s.accuracy, s.sensitivity, s.specificity, s.f1),
            (1.0, 1.0, 1.0, 1.0)
        );
    }

    #[test]
    fn hand_counted_case() {
        let t = [1, 1, 1, 1, 0, 0, 0, 0];
        let p = [1, 1, 1, 0, 0, 0, 0, 1];
        let cm = confusion(&t, &p, 1).unwrap();
        assert_eq!(
            cm,
            ConfusionMatrix {
                tp: 3,
                tn: 3,
                fp: 1,
                fn_: 1
            }
        );
        assert_eq!(confusion(&t, &p, 0).unwrap(), cm.swapped());
        assert_eq!(cm.swapped(), cm);
        let s = scores_from_confusion(&cm);
        assert_eq!(
            (s.accuracy, s.sensitivity, s.specificity, s.f1),
            (0.75, 0.75, 0.75, 0.75)
        );
        assert!(s.undefined.is_empty());
    }

    #[test]
    fn zero_denominators_flagged() {
        let s = scores_from_confusion(&ConfusionMatrix {
            tp: 0,
            tn: 4,
            fp: 1,
            fn_: 0,
        });
        assert_eq!(s.sensitivity, 0.0);
        assert_eq!(s.undefined, vec!["sensitivity"]);
    }

    #[test]
    fn length_mismatch() {
        assert!(confusion(&[1], &[1, 0], 1).is_err());
        assert!(auroc(&[1, 0], &[0.5]).is_err());
    }

    #[test]
    fn auroc_cases() {
        assert_eq!(auroc(&[1, 1, 0, 0], &[0.9, 0.8, 0.2, 0.1]).unwrap(), 1.0);
        assert_eq!(auroc(&[1, 0, 1, 0], &[0.4; 4]).unwrap(), 0.5);
        assert_eq!(auroc(&[1, 0, 1, 0], &[0.9, 0.8, 0.3, 0.1]).unwrap(), 0.75);
        assert!(matches!(
            auroc(&[1, 1], &[0.2, 0.3]),
            Err(Error::UndefinedAuroc(_))
        ));
    }

    #[test]
    fn report_cohorts() {
        let y = [1, 1, 1, 1, 0, 0, 0, 0];
        let p = [0.9, 0.8, 0.7, 0.2, 0.1, 0.3, 0.4, 0.6];
        let r = evaluate(&y, &p).unwrap();
        assert_eq!(r.ad.accuracy, r.non_ad.accuracy);
        assert_eq!(r.ad.sensitivity, r.non_ad.specificity);
        assert_eq!(r.ad.auroc, r.non_ad.auroc);
        assert_eq!(r.ad.confusion.total(), 8);
    }

    #[test]
    fn single_class_report_has_null_auroc() {
        let r = evaluate(&[1, 1, 1], &[0.7, 0.2, 0.9]).unwrap();
        assert!(r.ad.auroc.is_none());
        assert!(r.auroc_diagnostic.is_some());
        let json = serde_json::to_value(&r).unwrap();
        assert!(json["ad"]["auroc"].is_null());
        assert_eq!(json["ad"]["confusion"]["fn"], 1);
    }
}
