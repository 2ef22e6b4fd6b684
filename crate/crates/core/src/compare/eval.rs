//! 1-NN evaluation over labeled signature collections.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::collection::SignatureCollection;
use super::distance::l2;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Accuracy,
    /// Binary only; the larger label is the positive class.
    RocAuc,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Accuracy => "accuracy",
            Metric::RocAuc => "roc_auc",
        })
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "accuracy" => Ok(Metric::Accuracy),
            "roc_auc" | "auc" => Ok(Metric::RocAuc),
            other => Err(Error::invalid(format!("unknown metric `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub metric: Metric,
    /// Mean of `per_trial`.
    pub value: f64,
    pub trials: usize,
    pub per_trial: Vec<f64>,
    pub seed: u64,
}

impl EvalReport {
    fn from_trials(metric: Metric, per_trial: Vec<f64>, seed: u64) -> Self {
        let value = per_trial.iter().sum::<f64>() / per_trial.len() as f64;
        EvalReport {
            metric,
            value,
            trials: per_trial.len(),
            per_trial,
            seed,
        }
    }

    pub const CSV_HEADER: &'static str = "metric,value,trials,seed";

    /// `<metric>,<value>,<trials>,<seed>`
    pub fn csv_row(&self) -> String {
        format!("{},{},{},{}", self.metric, self.value, self.trials, self.seed)
    }

    /// `trial,<index>,<value>` per trial.
    pub fn trial_rows(&self) -> impl Iterator<Item = String> + '_ {
        self.per_trial
            .iter()
            .enumerate()
            .map(|(i, v)| format!("trial,{i},{v}"))
    }
}

/// Area under the ROC curve by rank statistics; tied scores count one half.
///
/// Returns `None` unless both classes are present.
pub fn roc_auc(scores: &[f64], positive: &[bool]) -> Option<f64> {
    assert_eq!(scores.len(), positive.len());
    let n_pos = positive.iter().filter(|&&p| p).count();
    let n_neg = positive.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return None;
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    let mut rank_sum = 0.0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && scores[order[j + 1]] == scores[order[i]] {
            j += 1;
        }
        // ranks are 1-based; tied block shares the average rank
        let avg = (i + j) as f64 / 2.0 + 1.0;
        rank_sum += order[i..=j].iter().filter(|&&k| positive[k]).count() as f64 * avg;
        i = j + 1;
    }
    let (p, q) = (n_pos as f64, n_neg as f64);
    Some((rank_sum - p * (p + 1.0) / 2.0) / (p * q))
}

/// Dense symmetric pairwise distance matrix, row-major.
fn pairwise(coll: &SignatureCollection) -> Vec<f64> {
    let n = coll.len();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| if j > i { l2(coll.values_at(i), coll.values_at(j)) } else { 0.0 }).collect())
        .collect();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            d[i * n + j] = rows[i][j];
            d[j * n + i] = rows[i][j];
        }
    }
    d
}

/// Stratified split: each class contributes `round(fraction · size)`
/// training items, at least one, and at least one test item when it has
/// two or more members.
fn stratified_split(classes: &[Vec<usize>], fraction: f64, rng: &mut ChaCha8Rng) -> (Vec<usize>, Vec<usize>) {
    let mut train = Vec::new();
    let mut test = Vec::new();
    for members in classes {
        let mut m = members.clone();
        m.shuffle(rng);
        let size = m.len();
        let mut k = (fraction * size as f64).round() as usize;
        k = k.max(1);
        if size >= 2 {
            k = k.min(size - 1);
        }
        train.extend_from_slice(&m[..k.min(size)]);
        test.extend_from_slice(&m[k.min(size)..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    (train, test)
}

/// Repeated 1-NN classification with random stratified train/test splits.
///
/// Accuracy is the fraction of test items whose nearest training item
/// (ties to the smaller id) carries the same label. ROC AUC scores a test
/// item by `d(nearest negative) − d(nearest positive)` over the training set.
pub fn evaluate_1nn(
    coll: &SignatureCollection,
    train_fraction: f64,
    trials: usize,
    metric: Metric,
    seed: u64,
) -> Result<EvalReport> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::invalid(format!("train fraction {train_fraction} outside (0, 1)")));
    }
    if trials == 0 {
        return Err(Error::invalid("at least one trial is required"));
    }
    if coll.is_empty() {
        return Err(Error::EmptyCollection);
    }
    let labels: Vec<i64> = coll
        .labels()
        .iter()
        .zip(coll.ids())
        .map(|(l, id)| l.ok_or_else(|| Error::invalid(format!("graph `{id}` has no label"))))
        .collect::<Result<_>>()?;
    let mut distinct = labels.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(Error::invalid("evaluation needs at least two classes"));
    }
    if metric == Metric::RocAuc && distinct.len() > 2 {
        return Err(Error::invalid(format!(
            "ROC AUC needs a binary labeling, found {} classes",
            distinct.len()
        )));
    }
    let classes: Vec<Vec<usize>> = distinct
        .iter()
        .map(|c| (0..labels.len()).filter(|&i| labels[i] == *c).collect())
        .collect();
    if classes.iter().all(|m| m.len() < 2) {
        return Err(Error::invalid("every class has a single member; no test items"));
    }
    if metric == Metric::RocAuc && classes.iter().any(|m| m.len() < 2) {
        return Err(Error::invalid("ROC AUC needs at least two members per class"));
    }

    let n = coll.len();
    let dist = pairwise(coll);
    let ids = coll.ids();
    let positive_label = *distinct.last().unwrap();

    let per_trial: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            let (train, test) = stratified_split(&classes, train_fraction, &mut rng);
            let nearest = |row: usize, want: Option<bool>| {
                let mut best: Option<(usize, f64)> = None;
                for &j in &train {
                    if let Some(pos) = want {
                        if (labels[j] == positive_label) != pos {
                            continue;
                        }
                    }
                    let d = dist[row * n + j];
                    let better = match best {
                        None => true,
                        Some((b, bd)) => d < bd || (d == bd && ids[j] < ids[b]),
                    };
                    if better {
                        best = Some((j, d));
                    }
                }
                best.expect("training split holds every class")
            };
            match metric {
                Metric::Accuracy => {
                    let correct = test
                        .iter()
                        .filter(|&&i| labels[nearest(i, None).0] == labels[i])
                        .count();
                    correct as f64 / test.len() as f64
                }
                Metric::RocAuc => {
                    let scores: Vec<f64> = test
                        .iter()
                        .map(|&i| nearest(i, Some(false)).1 - nearest(i, Some(true)).1)
                        .collect();
                    let positive: Vec<bool> = test.iter().map(|&i| labels[i] == positive_label).collect();
                    roc_auc(&scores, &positive).expect("stratified test split holds both classes")
                }
            }
        })
        .collect();
    Ok(EvalReport::from_trials(metric, per_trial, seed))
}
