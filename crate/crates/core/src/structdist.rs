//! Cumulative per-layer structural distances between all node pairs,
//! computed with FastDTW over hop-ring degree sequences.

use rayon::prelude::*;

use crate::dtw::fast_dtw;
use crate::graph::{Graph, NodeId};

/// For every unordered node pair, the cumulative structural distance at
/// each eligible layer. A pair is eligible at layer `k` while both nodes
/// have a non-empty ring there, i.e. for `k <= min(ecc(u), ecc(v))`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructuralDistanceTable {
    node_count: usize,
    eccentricities: Vec<usize>,
    /// Triangular by `pair_index`; `pairs[p][k]` is `distance_k` for the pair.
    pairs: Vec<Box<[f64]>>,
}

impl StructuralDistanceTable {
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Number of layers in the multilayer graph this table induces.
    pub fn diameter(&self) -> usize {
        self.eccentricities.iter().copied().max().unwrap_or(0)
    }

    pub fn eccentricity(&self, u: NodeId) -> usize {
        self.eccentricities[u]
    }

    pub fn eccentricities(&self) -> &[usize] {
        &self.eccentricities
    }

    /// `distance_k(u, v)`; `None` when the pair is not eligible at layer `k`.
    pub fn distance(&self, k: usize, u: NodeId, v: NodeId) -> Option<f64> {
        if u == v {
            return (k <= self.eccentricities[u]).then_some(0.0);
        }
        self.pairs[pair_index(self.node_count, u, v)]
            .get(k)
            .copied()
    }

    /// Cumulative distances of a pair over its eligible layers.
    pub fn pair_layers(&self, u: NodeId, v: NodeId) -> &[f64] {
        &self.pairs[pair_index(self.node_count, u, v)]
    }

    pub fn eligible_layer_count(&self, u: NodeId, v: NodeId) -> usize {
        self.eccentricities[u].min(self.eccentricities[v]) + 1
    }

    /// Rebuild a table from its stored pieces (cache reload path).
    pub fn from_parts(eccentricities: Vec<usize>, pairs: Vec<Box<[f64]>>) -> Result<Self, String> {
        let n = eccentricities.len();
        if pairs.len() != n * n.saturating_sub(1) / 2 {
            return Err(format!(
                "expected {} pair entries for {} nodes, got {}",
                n * n.saturating_sub(1) / 2,
                n,
                pairs.len()
            ));
        }
        for u in 0..n {
            for v in (u + 1)..n {
                let want = eccentricities[u].min(eccentricities[v]) + 1;
                let got = pairs[pair_index(n, u, v)].len();
                if want != got {
                    return Err(format!(
                        "pair ({u},{v}) should span {want} layers, got {got}"
                    ));
                }
            }
        }
        Ok(StructuralDistanceTable {
            node_count: n,
            eccentricities,
            pairs,
        })
    }
}

fn pair_index(n: usize, u: NodeId, v: NodeId) -> usize {
    debug_assert!(u != v && u < n && v < n);
    let (a, b) = (u.min(v), u.max(v));
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

/// Compute `distance_k` for every unordered pair and every eligible layer:
/// the running sum of per-layer FastDTW costs between the two nodes'
/// hop-ring degree sequences. Pairs are processed in parallel; the result
/// does not depend on scheduling.
pub fn all_pair_distances(g: &Graph, radius: usize) -> StructuralDistanceTable {
    let n = g.node_count();
    let rings: Vec<Vec<Vec<f64>>> = (0..n)
        .into_par_iter()
        .map(|u| {
            let hr = g.hop_rings(u);
            (0..=hr.eccentricity())
                .map(|k| hr.ring(k).iter().map(|&d| d as f64).collect())
                .collect()
        })
        .collect();
    let eccentricities: Vec<usize> = rings.iter().map(|r| r.len() - 1).collect();

    let mut pair_list = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in (u + 1)..n {
            pair_list.push((u, v));
        }
    }
    let pairs: Vec<Box<[f64]>> = pair_list
        .into_par_iter()
        .map(|(u, v)| {
            let layers = eccentricities[u].min(eccentricities[v]) + 1;
            let mut cumulative = Vec::with_capacity(layers);
            let mut sum = 0.0;
            for (ring_u, ring_v) in rings[u].iter().zip(&rings[v]).take(layers) {
                sum += fast_dtw(ring_u, ring_v, radius);
                cumulative.push(sum);
            }
            cumulative.into_boxed_slice()
        })
        .collect();

    StructuralDistanceTable {
        node_count: n,
        eccentricities,
        pairs,
    }
}
