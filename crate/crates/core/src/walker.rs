//! Layer-aware biased random walks over the multilayer graph and the
//! sliding-window extraction of positive training pairs.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::NodeId;
use crate::multilayer::{MultilayerGraph, Step, WalkState};

#[derive(Debug, Error)]
pub enum WalkerError {
    #[error("walk counts must be at least 1")]
    ZeroCount,
    #[error("alpha must lie strictly in (0, 1), got {0}")]
    BadAlpha(f64),
}

/// Walk generation parameters; defaults follow the reference setup
/// (8 walks of length 10 per node, layer-change constant 0.7, window
/// radius 3).
#[derive(Debug, Clone)]
pub struct WalkConfig {
    pub walks_per_node: usize,
    pub walk_length: usize,
    pub alpha: f64,
    pub window_radius: usize,
    /// Walks stop after `walk_length * max_step_budget_factor` steps even
    /// if fewer nodes were emitted; layer moves consume budget only.
    pub max_step_budget_factor: usize,
    pub rng_seed: u64,
}

impl Default for WalkConfig {
    fn default() -> Self {
        WalkConfig {
            walks_per_node: 8,
            walk_length: 10,
            alpha: 0.7,
            window_radius: 3,
            max_step_budget_factor: 10,
            rng_seed: 1,
        }
    }
}

impl WalkConfig {
    pub fn validate(&self) -> Result<(), WalkerError> {
        if self.walks_per_node == 0
            || self.walk_length == 0
            || self.window_radius == 0
            || self.max_step_budget_factor == 0
        {
            return Err(WalkerError::ZeroCount);
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(WalkerError::BadAlpha(self.alpha));
        }
        Ok(())
    }
}

/// Node sequences produced by the walker, ordered by (start node, walk index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub walks: Vec<Vec<NodeId>>,
}

/// One walk from `(start, layer 0)`. Intra-layer moves emit the new node;
/// layer moves keep the node and emit nothing. Stops once `walk_length`
/// nodes are emitted or the step budget runs out.
pub fn random_walk<R: Rng + ?Sized>(
    mg: &MultilayerGraph,
    start: NodeId,
    cfg: &WalkConfig,
    rng: &mut R,
) -> Vec<NodeId> {
    let mut sequence = Vec::with_capacity(cfg.walk_length);
    sequence.push(start);
    let mut state = WalkState {
        node: start,
        layer: 0,
    };
    let budget = cfg.walk_length * cfg.max_step_budget_factor;
    let mut steps = 0;
    while sequence.len() < cfg.walk_length && steps < budget {
        steps += 1;
        match mg.sample_step(state, cfg.alpha, rng) {
            Step::Intra(v) => {
                state.node = v;
                sequence.push(v);
            }
            Step::Up => state.layer += 1,
            Step::Down => state.layer -= 1,
        }
    }
    sequence
}

/// `walks_per_node` walks from every node, each on its own RNG stream
/// derived from `(rng_seed, node, walk index)`, so the corpus does not
/// depend on scheduling.
pub fn generate_corpus(mg: &MultilayerGraph, cfg: &WalkConfig) -> Result<Corpus, WalkerError> {
    cfg.validate()?;
    let n = mg.node_count();
    let walks = (0..n * cfg.walks_per_node)
        .into_par_iter()
        .map(|i| {
            let (node, walk) = (i / cfg.walks_per_node, i % cfg.walks_per_node);
            let mut rng = ChaCha8Rng::seed_from_u64(derive_stream_seed(
                cfg.rng_seed,
                (node * cfg.walks_per_node + walk) as u64,
            ));
            random_walk(mg, node, cfg, &mut rng)
        })
        .collect();
    Ok(Corpus { walks })
}

/// SplitMix64 step: distinct stream ids give distinct, well-mixed seeds.
fn derive_stream_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed.wrapping_add((stream.wrapping_add(1)).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Ordered positive pairs with multiplicity, plus the frequency of each
/// node in the pair's second position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairMultiset {
    counts: BTreeMap<(u32, u32), u64>,
    freq: Vec<u64>,
    total: u64,
}

impl PairMultiset {
    pub fn node_count(&self) -> usize {
        self.freq.len()
    }

    pub fn multiplicity(&self, u: NodeId, v: NodeId) -> u64 {
        self.counts.get(&(u as u32, v as u32)).copied().unwrap_or(0)
    }

    pub fn contains(&self, u: NodeId, v: NodeId) -> bool {
        self.counts.contains_key(&(u as u32, v as u32))
    }

    /// Occurrences of `v` in second position over the whole multiset.
    pub fn freq(&self, v: NodeId) -> u64 {
        self.freq[v]
    }

    /// Total pair count (sum of multiplicities).
    pub fn total_pairs(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Distinct pairs in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = ((NodeId, NodeId), u64)> + '_ {
        self.counts
            .iter()
            .map(|(&(u, v), &c)| ((u as NodeId, v as NodeId), c))
    }

    /// Every pair repeated by its multiplicity, in ascending pair order.
    pub fn expanded(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::with_capacity(self.total as usize);
        for ((u, v), c) in self.iter() {
            out.extend(std::iter::repeat_n((u, v), c as usize));
        }
        out
    }

    /// Second-position partners of `u`, ascending.
    pub fn partners(&self, u: NodeId) -> Vec<NodeId> {
        self.counts
            .range((u as u32, 0)..=(u as u32, u32::MAX))
            .map(|(&(_, v), _)| v as NodeId)
            .collect()
    }
}

/// Scan every sequence with a window of the given radius and collect the
/// ordered co-occurrence pairs, dropping pairs of identical nodes.
pub fn extract_pairs(corpus: &Corpus, window_radius: usize, node_count: usize) -> PairMultiset {
    assert!(window_radius >= 1, "window radius must be at least 1");
    let mut counts: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    let mut freq = vec![0u64; node_count];
    let mut total = 0u64;
    for seq in &corpus.walks {
        for i in 0..seq.len() {
            let lo = i.saturating_sub(window_radius);
            let hi = (i + window_radius).min(seq.len() - 1);
            for j in lo..=hi {
                if j == i || seq[i] == seq[j] {
                    continue;
                }
                *counts.entry((seq[i] as u32, seq[j] as u32)).or_insert(0) += 1;
                freq[seq[j]] += 1;
                total += 1;
            }
        }
    }
    PairMultiset {
        counts,
        freq,
        total,
    }
}
