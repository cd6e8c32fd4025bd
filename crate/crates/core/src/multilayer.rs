//! Weighted multilayer context graph over the structural distance table,
//! with the normalized transition distributions the walker samples from.
//!
//! Layer `k` connects every eligible pair with weight `exp(-distance_k)`.
//! Each node is also linked to its own copy one layer up with weight
//! `ln(L_k(u) + e)` and one layer down with weight 1, where `L_k(u)` counts
//! partners whose weight exceeds the layer average.

use rand::Rng;
use thiserror::Error;

use crate::graph::NodeId;
use crate::structdist::StructuralDistanceTable;

#[derive(Debug, Error)]
pub enum MultilayerError {
    #[error("multilayer graph needs at least 3 nodes, got {0}")]
    TooFewNodes(usize),
}

/// Position of a walk: a node inside one similarity layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkState {
    pub node: NodeId,
    pub layer: usize,
}

/// One sampled transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Intra(NodeId),
    Up,
    Down,
}

/// Explicit transition distribution out of one walk state.
#[derive(Debug, Clone)]
pub struct TransitionDistribution {
    /// Intra-layer targets with their probabilities.
    pub intra: Vec<(NodeId, f64)>,
    pub up: f64,
    pub down: f64,
}

impl TransitionDistribution {
    pub fn total(&self) -> f64 {
        self.intra.iter().map(|&(_, p)| p).sum::<f64>() + self.up + self.down
    }
}

/// Partner list of one node inside one layer, with prefix-summed weights
/// for O(log n) sampling.
#[derive(Debug, Clone, Default)]
struct IntraRow {
    partners: Vec<u32>,
    cumulative: Vec<f64>,
}

impl IntraRow {
    fn total(&self) -> f64 {
        self.cumulative.last().copied().unwrap_or(0.0)
    }

    fn weight_of(&self, v: NodeId) -> Option<f64> {
        let i = self.partners.binary_search(&(v as u32)).ok()?;
        let prev = if i == 0 { 0.0 } else { self.cumulative[i - 1] };
        Some(self.cumulative[i] - prev)
    }
}

#[derive(Debug, Clone)]
pub struct MultilayerGraph {
    node_count: usize,
    layer_count: usize,
    average_weights: Vec<f64>,
    similar_counts: Vec<Vec<usize>>,
    rows: Vec<Vec<IntraRow>>,
}

impl MultilayerGraph {
    /// Populate all layers from a distance table (Eq. 3-5 of the weighting
    /// scheme: exponential intra-layer weights, per-layer averages over
    /// C(|V|,2), similar counts, and the derived inter-layer weights).
    pub fn build(table: &StructuralDistanceTable) -> Result<MultilayerGraph, MultilayerError> {
        let n = table.node_count();
        if n < 3 {
            return Err(MultilayerError::TooFewNodes(n));
        }
        let layer_count = table.diameter() + 1;
        let pair_total = (n * (n - 1) / 2) as f64;

        let mut average_weights = vec![0.0; layer_count];
        let mut similar_counts = vec![vec![0usize; n]; layer_count];
        let mut rows: Vec<Vec<IntraRow>> = vec![vec![IntraRow::default(); n]; layer_count];

        // weight pass: rows stay sorted because pairs run in (u, v) order
        for u in 0..n {
            for v in (u + 1)..n {
                for (k, &dist) in table.pair_layers(u, v).iter().enumerate() {
                    let w = (-dist).exp();
                    average_weights[k] += w;
                    let layer = &mut rows[k];
                    layer[u].partners.push(v as u32);
                    layer[u].cumulative.push(w);
                    layer[v].partners.push(u as u32);
                    layer[v].cumulative.push(w);
                }
            }
        }
        for avg in &mut average_weights {
            *avg /= pair_total;
        }
        for (k, layer) in rows.iter_mut().enumerate() {
            let avg = average_weights[k];
            for (u, row) in layer.iter_mut().enumerate() {
                let mut running = 0.0;
                for w in &mut row.cumulative {
                    if *w > avg {
                        similar_counts[k][u] += 1;
                    }
                    running += *w;
                    *w = running;
                }
            }
        }

        Ok(MultilayerGraph {
            node_count: n,
            layer_count,
            average_weights,
            similar_counts,
            rows,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn layer_count(&self) -> usize {
        self.layer_count
    }

    /// `L_k(u)`: partners of `u` in layer `k` whose weight strictly exceeds
    /// the layer average.
    pub fn similar_count(&self, u: NodeId, k: usize) -> usize {
        self.similar_counts[k][u]
    }

    /// Average intra-layer weight `avg_k` (total pair weight over C(|V|,2)).
    pub fn average_weight(&self, k: usize) -> f64 {
        self.average_weights[k]
    }

    /// `w_k(u, v)`; `None` when the pair is ineligible at layer `k`.
    pub fn intra_weight(&self, k: usize, u: NodeId, v: NodeId) -> Option<f64> {
        self.rows[k][u].weight_of(v)
    }

    pub fn has_partners(&self, u: NodeId, k: usize) -> bool {
        !self.rows[k][u].partners.is_empty()
    }

    /// Weight of the edge to the layer above; `None` at the top layer.
    pub fn up_weight(&self, u: NodeId, k: usize) -> Option<f64> {
        (k + 1 < self.layer_count)
            .then(|| ((self.similar_counts[k][u] as f64) + std::f64::consts::E).ln())
    }

    /// Weight of the edge to the layer below; `None` at layer 0.
    pub fn down_weight(&self, _u: NodeId, k: usize) -> Option<f64> {
        (k > 0).then_some(1.0)
    }

    fn layer_move_split(&self, state: WalkState) -> (f64, f64) {
        let up = self.up_weight(state.node, state.layer);
        let down = self.down_weight(state.node, state.layer);
        match (up, down) {
            (Some(u), Some(d)) => (u / (u + d), d / (u + d)),
            (Some(_), None) => (1.0, 0.0),
            (None, Some(_)) => (0.0, 1.0),
            (None, None) => unreachable!("graphs with >= 3 nodes have >= 2 layers"),
        }
    }

    /// Full transition distribution out of `state`. With eligible partners
    /// present the intra-layer mass is `1 - alpha` split proportionally to
    /// the weights; the remaining `alpha` moves between layers, with a
    /// missing direction's share renormalized onto the other. Without
    /// partners the whole mass goes to layer moves.
    pub fn transition_distribution(&self, state: WalkState, alpha: f64) -> TransitionDistribution {
        assert!(state.node < self.node_count && state.layer < self.layer_count);
        assert!(
            alpha > 0.0 && alpha < 1.0,
            "alpha must lie strictly in (0, 1)"
        );
        let row = &self.rows[state.layer][state.node];
        let layer_mass = if row.partners.is_empty() { 1.0 } else { alpha };
        let intra = if row.partners.is_empty() {
            Vec::new()
        } else {
            let total = row.total();
            let mut prev = 0.0;
            row.partners
                .iter()
                .zip(&row.cumulative)
                .map(|(&v, &cum)| {
                    let w = cum - prev;
                    prev = cum;
                    (v as NodeId, (1.0 - alpha) * w / total)
                })
                .collect()
        };
        let (up_share, down_share) = self.layer_move_split(state);
        TransitionDistribution {
            intra,
            up: layer_mass * up_share,
            down: layer_mass * down_share,
        }
    }

    /// Draw one transition without materializing the distribution.
    pub fn sample_step<R: Rng + ?Sized>(&self, state: WalkState, alpha: f64, rng: &mut R) -> Step {
        debug_assert!(alpha > 0.0 && alpha < 1.0);
        let row = &self.rows[state.layer][state.node];
        if !row.partners.is_empty() && rng.random::<f64>() < 1.0 - alpha {
            let target = rng.random::<f64>() * row.total();
            let idx = row
                .cumulative
                .partition_point(|&c| c <= target)
                .min(row.partners.len() - 1);
            return Step::Intra(row.partners[idx] as NodeId);
        }
        let (up_share, _) = self.layer_move_split(state);
        if up_share == 1.0 {
            Step::Up
        } else if up_share == 0.0 {
            Step::Down
        } else if rng.random::<f64>() < up_share {
            Step::Up
        } else {
            Step::Down
        }
    }
}
