//! Hyperbolic k-NN classification with stratified cross-validation, plus
//! the mirror-pair and role-separation metrics used by the qualitative
//! experiments.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{LabelMap, NodeId};
use crate::trainer::EmbeddingMatrix;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("cross-validation needs at least 2 folds, got {0}")]
    TooFewFolds(usize),
    #[error("class {class} has only {size} members, cannot stratify into {folds} folds")]
    ClassTooSmall {
        class: usize,
        size: usize,
        folds: usize,
    },
    #[error("no labeled nodes")]
    NoLabels,
}

/// Classification outcome: overall micro-F1, per-fold scores, and the
/// confusion matrix over all held-out predictions.
#[derive(Debug, Clone)]
pub struct EvalReport {
    pub micro_f1: f64,
    pub fold_scores: Vec<f64>,
    pub confusion: Vec<Vec<usize>>,
}

/// Micro-averaged F1; for single-label multiclass this equals accuracy.
pub fn micro_f1(predictions: &[usize], truths: &[usize]) -> f64 {
    assert_eq!(predictions.len(), truths.len(), "length mismatch");
    assert!(!predictions.is_empty(), "no predictions");
    let correct = predictions
        .iter()
        .zip(truths)
        .filter(|(p, t)| p == t)
        .count();
    correct as f64 / predictions.len() as f64
}

/// Majority label among the k hyperbolic-distance-nearest training nodes.
/// Vote ties break toward the smallest summed distance, then the lowest
/// label; equal distances rank by node id.
pub fn knn_predict(
    emb: &EmbeddingMatrix,
    training: &[(NodeId, usize)],
    query: NodeId,
    k: usize,
) -> usize {
    assert!(k >= 1 && !training.is_empty());
    let mut ranked: Vec<(f64, NodeId, usize)> = training
        .iter()
        .map(|&(node, class)| (emb.distance(query, node), node, class))
        .collect();
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    ranked.truncate(k);

    let class_count = ranked.iter().map(|&(_, _, c)| c).max().unwrap() + 1;
    let mut votes = vec![0usize; class_count];
    let mut summed = vec![0.0f64; class_count];
    for &(d, _, c) in &ranked {
        votes[c] += 1;
        summed[c] += d;
    }
    let best_votes = *votes.iter().max().unwrap();
    (0..class_count)
        .filter(|&c| votes[c] == best_votes)
        .min_by(|&a, &b| summed[a].total_cmp(&summed[b]).then(a.cmp(&b)))
        .unwrap()
}

/// Stratified k-fold cross-validation of the hyperbolic k-NN classifier.
/// Each class is shuffled with the seeded RNG and dealt round-robin over
/// the folds; micro-F1 aggregates over every held-out prediction.
pub fn cross_validate(
    emb: &EmbeddingMatrix,
    labels: &LabelMap,
    folds: usize,
    k: usize,
    seed: u64,
) -> Result<EvalReport, EvalError> {
    if folds < 2 {
        return Err(EvalError::TooFewFolds(folds));
    }
    let labeled: Vec<(NodeId, usize)> = labels.labeled().collect();
    if labeled.is_empty() {
        return Err(EvalError::NoLabels);
    }
    let class_count = labels.class_count();
    let mut by_class: Vec<Vec<NodeId>> = vec![Vec::new(); class_count];
    for &(node, class) in &labeled {
        by_class[class].push(node);
    }
    for (class, members) in by_class.iter().enumerate() {
        if members.len() < folds {
            return Err(EvalError::ClassTooSmall {
                class,
                size: members.len(),
                folds,
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fold_of = vec![0usize; emb.node_count()];
    for members in &mut by_class {
        members.shuffle(&mut rng);
        for (i, &node) in members.iter().enumerate() {
            fold_of[node] = i % folds;
        }
    }

    let mut fold_scores = Vec::with_capacity(folds);
    let mut confusion = vec![vec![0usize; class_count]; class_count];
    let mut all_predictions = Vec::with_capacity(labeled.len());
    let mut all_truths = Vec::with_capacity(labeled.len());
    for fold in 0..folds {
        let training: Vec<(NodeId, usize)> = labeled
            .iter()
            .copied()
            .filter(|&(node, _)| fold_of[node] != fold)
            .collect();
        let mut fold_predictions = Vec::new();
        let mut fold_truths = Vec::new();
        for &(node, class) in labeled.iter().filter(|&&(n, _)| fold_of[n] == fold) {
            let predicted = knn_predict(emb, &training, node, k);
            confusion[class][predicted] += 1;
            fold_predictions.push(predicted);
            fold_truths.push(class);
        }
        fold_scores.push(micro_f1(&fold_predictions, &fold_truths));
        all_predictions.extend(fold_predictions);
        all_truths.extend(fold_truths);
    }
    Ok(EvalReport {
        micro_f1: micro_f1(&all_predictions, &all_truths),
        fold_scores,
        confusion,
    })
}

/// Distance statistics over a mirror pairing: mean pair distance, mean
/// over all distinct pairs, and the fraction of nodes whose mirror ranks
/// within their 10 nearest neighbors.
#[derive(Debug, Clone, Copy)]
pub struct MirrorMetric {
    pub mean_pair_distance: f64,
    pub mean_all_distance: f64,
    pub top10_fraction: f64,
}

pub fn mirror_metric(emb: &EmbeddingMatrix, pairs: &[(NodeId, NodeId)]) -> MirrorMetric {
    assert!(!pairs.is_empty());
    let n = emb.node_count();
    let mean_pair_distance = pairs
        .iter()
        .map(|&(u, mu)| emb.distance(u, mu))
        .sum::<f64>()
        / pairs.len() as f64;

    let mut total = 0.0;
    for u in 0..n {
        for v in (u + 1)..n {
            total += emb.distance(u, v);
        }
    }
    let mean_all_distance = total / (n * (n - 1) / 2) as f64;

    let mut mirror_of = vec![None; n];
    for &(u, mu) in pairs {
        mirror_of[u] = Some(mu);
        mirror_of[mu] = Some(u);
    }
    let mut in_top10 = 0usize;
    let mut considered = 0usize;
    for (u, mirror) in mirror_of.iter().enumerate() {
        let Some(mu) = *mirror else { continue };
        considered += 1;
        let d_mirror = emb.distance(u, mu);
        let closer = (0..n)
            .filter(|&v| v != u && v != mu)
            .filter(|&v| emb.distance(u, v) < d_mirror)
            .count();
        if closer < 10 {
            in_top10 += 1;
        }
    }
    MirrorMetric {
        mean_pair_distance,
        mean_all_distance,
        top10_fraction: in_top10 as f64 / considered as f64,
    }
}

/// Mean intra-class over mean inter-class hyperbolic distance; well below
/// 1 when same-role nodes cluster, near 1 for label-independent layouts.
/// Single-member classes contribute no intra-class terms.
pub fn role_separation(emb: &EmbeddingMatrix, labels: &LabelMap) -> f64 {
    let labeled: Vec<(NodeId, usize)> = labels.labeled().collect();
    assert!(labels.class_count() >= 2, "need at least 2 classes");
    let (mut intra_sum, mut intra_n) = (0.0, 0usize);
    let (mut inter_sum, mut inter_n) = (0.0, 0usize);
    for i in 0..labeled.len() {
        for j in (i + 1)..labeled.len() {
            let d = emb.distance(labeled[i].0, labeled[j].0);
            if labeled[i].1 == labeled[j].1 {
                intra_sum += d;
                intra_n += 1;
            } else {
                inter_sum += d;
                inter_n += 1;
            }
        }
    }
    (intra_sum / intra_n as f64) / (inter_sum / inter_n as f64)
}
