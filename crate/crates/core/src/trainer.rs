//! Negative sampling, the softmax loss over squared hyperbolic distances,
//! its Riemannian gradient, and the mini-batch SGD loop on the hyperboloid.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::NodeId;
use crate::manifold::{self, HyperboloidPoint};
use crate::walker::PairMultiset;

#[derive(Debug, Error)]
pub enum TrainError {
    #[error("invalid training config: {0}")]
    BadConfig(String),
    #[error("positive pair multiset is empty")]
    EmptyPairs,
    #[error("node {0} has no eligible negative; use a smaller window or a larger graph")]
    NoEligibleNegative(NodeId),
    #[error("negative sampling for node {0} stalled after {1} rejections")]
    SamplingStalled(NodeId, usize),
    #[error("non-finite loss at epoch {epoch}, batch {batch}: learning rate too large?")]
    NonFiniteLoss { epoch: usize, batch: usize },
    #[error("embedding of node {node} diverged at epoch {epoch}: learning rate too large?")]
    DivergedUpdate { node: NodeId, epoch: usize },
}

/// Training hyperparameters; defaults follow the reference setup (20
/// negatives per positive, learning rate 1, batch 50, 5 epochs).
#[derive(Debug, Clone)]
pub struct TrainConfig {
    /// Spatial dimension n; points carry n+1 ambient coordinates.
    pub dim: usize,
    pub negatives: usize,
    pub learning_rate: f64,
    pub batch_size: usize,
    pub epochs: usize,
    pub init_scale: f64,
    pub rng_seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            dim: 10,
            negatives: 20,
            learning_rate: 1.0,
            batch_size: 50,
            epochs: 5,
            init_scale: 1e-3,
            rng_seed: 1,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<(), TrainError> {
        if self.dim == 0 || self.negatives == 0 || self.batch_size == 0 {
            return Err(TrainError::BadConfig("counts must be at least 1".into()));
        }
        if !self.learning_rate.is_finite() || self.learning_rate <= 0.0 {
            return Err(TrainError::BadConfig(format!(
                "learning rate must be positive, got {}",
                self.learning_rate
            )));
        }
        if self.init_scale < 0.0 {
            return Err(TrainError::BadConfig(
                "init_scale must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// One hyperboloid point per node.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingMatrix {
    points: Vec<HyperboloidPoint>,
}

impl EmbeddingMatrix {
    pub fn from_points(points: Vec<HyperboloidPoint>) -> EmbeddingMatrix {
        assert!(!points.is_empty());
        let dim = points[0].spatial_dim();
        assert!(points.iter().all(|p| p.spatial_dim() == dim));
        EmbeddingMatrix { points }
    }

    pub fn node_count(&self) -> usize {
        self.points.len()
    }

    pub fn spatial_dim(&self) -> usize {
        self.points[0].spatial_dim()
    }

    pub fn point(&self, u: NodeId) -> &HyperboloidPoint {
        &self.points[u]
    }

    pub fn set_point(&mut self, u: NodeId, p: HyperboloidPoint) {
        assert_eq!(p.spatial_dim(), self.spatial_dim());
        self.points[u] = p;
    }

    pub fn points(&self) -> &[HyperboloidPoint] {
        &self.points
    }

    pub fn distance(&self, u: NodeId, v: NodeId) -> f64 {
        manifold::hyperbolic_distance(&self.points[u], &self.points[v])
    }
}

/// Spatial coordinates uniform in `[-init_scale, init_scale]`, time-like
/// coordinate completed by `repair` so every row starts exactly on the
/// sheet.
pub fn init_embeddings<R: Rng + ?Sized>(
    node_count: usize,
    cfg: &TrainConfig,
    rng: &mut R,
) -> EmbeddingMatrix {
    let points = (0..node_count)
        .map(|_| {
            let mut ambient = vec![0.0; cfg.dim + 1];
            if cfg.init_scale > 0.0 {
                for x in &mut ambient[..cfg.dim] {
                    *x = rng.random_range(-cfg.init_scale..=cfg.init_scale);
                }
            }
            manifold::repair(&ambient)
        })
        .collect();
    EmbeddingMatrix::from_points(points)
}

/// Draws negatives proportionally to second-position frequency in `O`,
/// rejecting the source node and its positive partners.
pub struct NegativeSampler {
    cumulative: Vec<u64>,
    total: u64,
    partners: Vec<Vec<u32>>,
    eligible_mass: Vec<u64>,
}

impl NegativeSampler {
    pub fn new(pairs: &PairMultiset) -> NegativeSampler {
        let n = pairs.node_count();
        let mut cumulative = Vec::with_capacity(n);
        let mut running = 0u64;
        for v in 0..n {
            running += pairs.freq(v);
            cumulative.push(running);
        }
        let partners: Vec<Vec<u32>> = (0..n)
            .map(|u| pairs.partners(u).into_iter().map(|v| v as u32).collect())
            .collect();
        let eligible_mass = (0..n)
            .map(|u| {
                let blocked: u64 = partners[u].iter().map(|&v| pairs.freq(v as NodeId)).sum();
                running - blocked - pairs.freq(u)
            })
            .collect();
        NegativeSampler {
            cumulative,
            total: running,
            partners,
            eligible_mass,
        }
    }

    pub fn sample<R: Rng + ?Sized>(
        &self,
        u: NodeId,
        count: usize,
        rng: &mut R,
    ) -> Result<Vec<NodeId>, TrainError> {
        if self.eligible_mass[u] == 0 {
            return Err(TrainError::NoEligibleNegative(u));
        }
        const MAX_ATTEMPTS: usize = 1_000_000;
        let mut out = Vec::with_capacity(count);
        let mut attempts = 0;
        while out.len() < count {
            attempts += 1;
            if attempts > MAX_ATTEMPTS {
                return Err(TrainError::SamplingStalled(u, MAX_ATTEMPTS));
            }
            let x = rng.random_range(0..self.total);
            let v = self.cumulative.partition_point(|&c| c <= x);
            if v == u || self.partners[u].binary_search(&(v as u32)).is_ok() {
                continue;
            }
            out.push(v);
        }
        Ok(out)
    }
}

/// d(d^2)/d(gamma) for d = arccosh(gamma): `2 arccosh(gamma)/sqrt(gamma^2-1)`,
/// with a series fallback near gamma = 1 where the quotient degenerates.
fn dsq_derivative(gamma: f64) -> f64 {
    let eps = gamma - 1.0;
    if eps < 1e-7 {
        2.0 - 2.0 * eps / 3.0
    } else {
        2.0 * gamma.acosh() / (gamma * gamma - 1.0).sqrt()
    }
}

struct PairTerms {
    loss: f64,
    /// Euclidean partials of the loss per involved node.
    partials: BTreeMap<NodeId, Vec<f64>>,
}

/// `acc += scale * (-J x)`: spatial components subtract, time-like adds.
fn add_scaled_flipped(acc: &mut [f64], x: &[f64], scale: f64) {
    let last = acc.len() - 1;
    for (a, &xi) in acc[..last].iter_mut().zip(x) {
        *a -= scale * xi;
    }
    acc[last] += scale * x[last];
}

fn pair_terms(
    emb: &EmbeddingMatrix,
    u: NodeId,
    v: NodeId,
    negatives: &[NodeId],
    with_gradients: bool,
) -> PairTerms {
    let xu = emb.point(u);
    let targets: Vec<NodeId> = std::iter::once(v)
        .chain(negatives.iter().copied())
        .collect();
    let gammas: Vec<f64> = targets
        .iter()
        .map(|&t| (-manifold::minkowski_inner(xu.coords(), emb.point(t).coords())).max(1.0))
        .collect();
    // scores s_j = -d^2(u, t_j), softmax-stabilized
    let scores: Vec<f64> = gammas
        .iter()
        .map(|&g| {
            let d = g.acosh();
            -d * d
        })
        .collect();
    let max_score = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let log_sum_exp = max_score
        + scores
            .iter()
            .map(|s| (s - max_score).exp())
            .sum::<f64>()
            .ln();
    let loss = log_sum_exp - scores[0];

    let mut partials: BTreeMap<NodeId, Vec<f64>> = BTreeMap::new();
    if with_gradients {
        let ambient_dim = xu.coords().len();
        let mut partial_u = vec![0.0; ambient_dim];
        for (j, &t) in targets.iter().enumerate() {
            let softmax = (scores[j] - log_sum_exp).exp();
            let dl_ds = softmax - if j == 0 { 1.0 } else { 0.0 };
            // dL/dgamma_j; s_j = -d^2 flips the sign once more
            let dl_dgamma = -dl_ds * dsq_derivative(gammas[j]);
            // dgamma/dx is -J x_other: spatial parts negated, time part kept
            add_scaled_flipped(&mut partial_u, emb.point(t).coords(), dl_dgamma);
            let entry = partials.entry(t).or_insert_with(|| vec![0.0; ambient_dim]);
            add_scaled_flipped(entry, xu.coords(), dl_dgamma);
        }
        let entry = partials.entry(u).or_insert_with(|| vec![0.0; ambient_dim]);
        for (e, p) in entry.iter_mut().zip(&partial_u) {
            *e += p;
        }
    }
    PairTerms { loss, partials }
}

/// Negative-sampling softmax loss of one positive pair against its drawn
/// negatives, computed with log-sum-exp stabilization.
pub fn pair_loss(emb: &EmbeddingMatrix, u: NodeId, v: NodeId, negatives: &[NodeId]) -> f64 {
    pair_terms(emb, u, v, negatives, false).loss
}

/// Riemannian gradient of [`pair_loss`] at every involved node: ambient
/// partials passed through the time-flip and the tangent projection.
/// Nodes outside `{u, v} ∪ negatives` do not appear.
pub fn pair_gradients(
    emb: &EmbeddingMatrix,
    u: NodeId,
    v: NodeId,
    negatives: &[NodeId],
) -> Vec<(NodeId, Vec<f64>)> {
    pair_terms(emb, u, v, negatives, true)
        .partials
        .into_iter()
        .map(|(node, partial)| {
            let ambient = manifold::ambient_gradient(&partial);
            (node, manifold::tangent_project(emb.point(node), &ambient))
        })
        .collect()
}

/// Final embeddings plus the mean pair loss recorded per epoch.
#[derive(Debug, Clone)]
pub struct TrainOutcome {
    pub embeddings: EmbeddingMatrix,
    pub epoch_mean_loss: Vec<f64>,
}

/// Mini-batch Riemannian SGD over the positive pairs, expanded by
/// multiplicity and reshuffled every epoch. Per batch the tangent
/// gradients accumulate per node at its current point and are applied as
/// one negated, learning-rate-scaled exponential-map step. Sequential and
/// bit-for-bit reproducible under a fixed seed.
pub fn train(pairs: &PairMultiset, cfg: &TrainConfig) -> Result<TrainOutcome, TrainError> {
    cfg.validate()?;
    if pairs.is_empty() {
        return Err(TrainError::EmptyPairs);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut emb = init_embeddings(pairs.node_count(), cfg, &mut rng);
    let sampler = NegativeSampler::new(pairs);
    let mut expanded = pairs.expanded();
    let mut epoch_mean_loss = Vec::with_capacity(cfg.epochs);

    for epoch in 0..cfg.epochs {
        expanded.shuffle(&mut rng);
        let mut loss_sum = 0.0;
        for (batch_index, batch) in expanded.chunks(cfg.batch_size).enumerate() {
            let mut accumulated: BTreeMap<NodeId, Vec<f64>> = BTreeMap::new();
            let mut batch_loss = 0.0;
            for &(u, v) in batch {
                let negatives = sampler.sample(u, cfg.negatives, &mut rng)?;
                let terms = pair_terms(&emb, u, v, &negatives, true);
                batch_loss += terms.loss;
                for (node, partial) in terms.partials {
                    match accumulated.entry(node) {
                        std::collections::btree_map::Entry::Vacant(e) => {
                            e.insert(partial);
                        }
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            for (a, p) in e.get_mut().iter_mut().zip(&partial) {
                                *a += p;
                            }
                        }
                    }
                }
            }
            if !batch_loss.is_finite() {
                return Err(TrainError::NonFiniteLoss {
                    epoch,
                    batch: batch_index,
                });
            }
            loss_sum += batch_loss;
            let scale = -cfg.learning_rate / batch.len() as f64;
            for (node, partial) in accumulated {
                let mut ambient = manifold::ambient_gradient(&partial);
                for g in &mut ambient {
                    *g *= scale;
                }
                let step = manifold::tangent_project(emb.point(node), &ambient);
                if !manifold::minkowski_inner(&step, &step).is_finite() {
                    return Err(TrainError::DivergedUpdate { node, epoch });
                }
                let moved = manifold::exp_map(emb.point(node), &step);
                if !moved.coords().iter().all(|c| c.is_finite()) {
                    return Err(TrainError::DivergedUpdate { node, epoch });
                }
                emb.set_point(node, moved);
            }
        }
        epoch_mean_loss.push(loss_sum / expanded.len() as f64);
    }
    Ok(TrainOutcome {
        embeddings: emb,
        epoch_mean_loss,
    })
}
