//! Distinct-value tables and the exponential fit of their tails.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use serde::Serialize;

use crate::corpus::KnotRecord;
use crate::evaluate::Evaluation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReportError {
    #[error("{0} has neither a value nor a recorded failure")]
    CoverageGap(String),
    #[error("fit needs at least {needed} rows below 100%, found {found}")]
    InsufficientRows { found: usize, needed: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetectionRow {
    pub n: usize,
    pub total: usize,
    pub distinct: usize,
    pub percent: f64,
    /// Knots in range whose value could not be computed.
    pub excluded: usize,
}

impl DetectionRow {
    /// `100·distinct/total` cut (not rounded) to two decimals.
    pub fn percent_truncated(&self) -> String {
        let hundredths = 10_000 * self.distinct / self.total;
        format!("{}.{:02}", hundredths / 100, hundredths % 100)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetectionReport {
    pub invariant: String,
    pub cumulative: bool,
    pub alternating_only: bool,
    pub rows: Vec<DetectionRow>,
}

impl DetectionReport {
    pub fn row(&self, n: usize) -> Option<&DetectionRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    /// `n,total,distinct,percent` with the percentage truncated to two
    /// decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,total,distinct,percent\n");
        for r in &self.rows {
            writeln!(out, "{},{},{},{}", r.n, r.total, r.distinct, r.percent_truncated()).unwrap();
        }
        out
    }
}

/// Counts distinct values among the knots with at most `n` crossings
/// (`cumulative`) or exactly `n` crossings, for every `n` in the corpus.
/// Failed knots leave both counts.
pub fn detection_report(
    eval: &Evaluation,
    records: &[KnotRecord],
    cumulative: bool,
    alternating_only: bool,
) -> Result<DetectionReport, ReportError> {
    let mut by_n: BTreeMap<usize, Vec<Option<&str>>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.alternating || !alternating_only) {
        let v = match (eval.values.get(&r.name), eval.failures.contains_key(&r.name)) {
            (Some(v), _) => Some(v.as_str()),
            (None, true) => None,
            (None, false) => return Err(ReportError::CoverageGap(r.name.clone())),
        };
        by_n.entry(r.crossing_number).or_default().push(v);
    }
    if by_n.values().flatten().flatten().next().is_none() {
        return Ok(DetectionReport {
            invariant: eval.invariant.clone(),
            cumulative,
            alternating_only,
            rows: Vec::new(),
        });
    }
    let mut rows = Vec::new();
    let mut seen = BTreeSet::new();
    let (mut total, mut excluded) = (0, 0);
    for (&n, values) in &by_n {
        if !cumulative {
            seen.clear();
            total = 0;
            excluded = 0;
        }
        for v in values {
            match v {
                Some(v) => {
                    seen.insert(*v);
                    total += 1;
                }
                None => excluded += 1,
            }
        }
        if total > 0 {
            let distinct = seen.len();
            rows.push(DetectionRow { n, total, distinct, percent: 100.0 * distinct as f64 / total as f64, excluded });
        }
    }
    Ok(DetectionReport { invariant: eval.invariant.clone(), cumulative, alternating_only, rows })
}

/// Least-squares fit of `ln(percent) = a + b·n` over rows below 100%.
/// `base = e^b` estimates the per-crossing decay factor; it is a fit, not a
/// bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayFit {
    pub base: f64,
    pub intercept: f64,
    /// `(n, ln(percent) - fitted)`.
    pub residuals: Vec<(usize, f64)>,
}

pub const MIN_FIT_ROWS: usize = 4;

pub fn decay_fit(report: &DetectionReport) -> Result<DecayFit, ReportError> {
    let points: Vec<(usize, f64)> = report.rows.iter().map(|r| (r.n, r.percent)).collect();
    decay_fit_points(&points)
}

pub fn decay_fit_points(points: &[(usize, f64)]) -> Result<DecayFit, ReportError> {
    let pts: Vec<(usize, f64, f64)> =
        points.iter().filter(|(_, p)| *p < 100.0 && *p > 0.0).map(|&(n, p)| (n, n as f64, p.ln())).collect();
    if pts.len() < MIN_FIT_ROWS {
        return Err(ReportError::InsufficientRows { found: pts.len(), needed: MIN_FIT_ROWS });
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.2).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.1 - mx) * (p.2 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.1 - mx) * (p.1 - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals = pts.iter().map(|&(n, x, y)| (n, y - (intercept + slope * x))).collect();
    Ok(DecayFit { base: slope.exp(), intercept, residuals })
}

/// Published Jones-polynomial percentages for 10 to 18 crossings.
pub const TABULATED_JONES: [(usize, f64); 9] = [
    (10, 96.38),
    (11, 90.13),
    (12, 83.00),
    (13, 73.31),
    (14, 64.49),
    (15, 55.74),
    (16, 49.42),
    (17, 44.84),
    (18, 41.61),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::knots_3_10;

    fn eval_with(records: &[KnotRecord], f: impl Fn(&KnotRecord) -> Option<String>) -> Evaluation {
        let mut e = Evaluation { invariant: "test".into(), ..Default::default() };
        for r in records {
            match f(r) {
                Some(v) => e.values.insert(r.name.clone(), v),
                None => e.failures.insert(r.name.clone(), "cap".into()),
            };
        }
        e
    }

    #[test]
    fn counts_and_exclusions() {
        let knots = knots_3_10();
        let by_n =
            eval_with(&knots, |r| if r.crossing_number == 10 { None } else { Some(r.crossing_number.to_string()) });
        let rep = detection_report(&by_n, &knots, true, false).unwrap();
        assert_eq!(rep.rows.len(), 8);
        assert_eq!(rep.row(9).unwrap().total, 84);
        assert_eq!(rep.row(9).unwrap().distinct, 7);
        assert_eq!(
            rep.row(10).unwrap(),
            &DetectionRow { n: 10, total: 84, distinct: 7, percent: 700.0 / 84.0, excluded: 165 }
        );
        let per_n = detection_report(&by_n, &knots, false, false).unwrap();
        assert!(per_n.rows.iter().all(|r| r.distinct == 1));
        assert_eq!(per_n.rows.len(), 7);
        let alt = detection_report(&by_n, &knots, true, true).unwrap();
        assert!(alt.rows.iter().zip(&rep.rows).all(|(a, r)| a.total <= r.total));
    }

    #[test]
    fn names_are_distinct() {
        let knots = knots_3_10();
        let rep = detection_report(&eval_with(&knots, |r| Some(r.name.clone())), &knots, true, false).unwrap();
        assert!(rep.rows.iter().all(|r| r.percent == 100.0));
        assert_eq!(rep.to_csv().lines().last().unwrap(), "10,249,249,100.00");
        assert_eq!(decay_fit(&rep), Err(ReportError::InsufficientRows { found: 0, needed: 4 }));
    }

    #[test]
    fn percentages_are_truncated() {
        let row = |distinct, total| DetectionRow { n: 10, total, distinct, percent: 0.0, excluded: 0 };
        assert_eq!(row(240, 249).percent_truncated(), "96.38");
        assert_eq!(row(246, 249).percent_truncated(), "98.79");
        assert_eq!(row(79, 84).percent_truncated(), "94.04");
        assert_eq!(row(7, 7).percent_truncated(), "100.00");
    }

    #[test]
    fn permutation_invariant() {
        let mut knots = knots_3_10();
        let e = eval_with(&knots, |r| Some((r.name.len() % 3).to_string()));
        let a = detection_report(&e, &knots, true, false).unwrap();
        knots.reverse();
        assert_eq!(a, detection_report(&e, &knots, true, false).unwrap());
    }

    #[test]
    fn coverage_gap() {
        let knots = knots_3_10();
        let mut e = eval_with(&knots, |r| Some(r.name.clone()));
        e.values.remove("5_2");
        assert_eq!(detection_report(&e, &knots, true, false), Err(ReportError::CoverageGap("5_2".into())));
    }

    #[test]
    fn synthetic_geometric_fit() {
        let pts: Vec<(usize, f64)> = (1..12).map(|n| (n, 100.0 * 0.9f64.powi(n as i32))).collect();
        let fit = decay_fit_points(&pts).unwrap();
        assert!((fit.base - 0.9).abs() < 1e-6);
        assert!(fit.residuals.iter().all(|(_, r)| r.abs() < 1e-9));
    }

    #[test]
    fn tabulated_column_fits_below_one() {
        let fit = decay_fit_points(&TABULATED_JONES).unwrap();
        assert!(fit.base > 0.0 && fit.base < 1.0);
        assert_eq!(fit.residuals.len(), 9);
    }
}
