//! Undirected simple graphs, hop-ring degree sequences, and the experiment
//! graph generators (barbell, mirrored copies, Zachary's karate club).

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

/// Internal node identifier, contiguous in `0..node_count`.
pub type NodeId = usize;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("edge list contains no usable edges")]
    EmptyGraph,
    #[error("node {0:?} has degree 0 after dropping self-loops and duplicates")]
    IsolatedNode(String),
    #[error("line {line}: expected two whitespace-separated node tokens, got {found:?}")]
    MalformedEdge { line: usize, found: String },
    #[error("line {line}: label {token:?} is not an integer")]
    MalformedLabel { line: usize, token: String },
    #[error("line {line}: label for unknown node {token:?}")]
    UnknownNode { line: usize, token: String },
    #[error("line {line}: duplicate label for node {token:?}")]
    DuplicateLabel { line: usize, token: String },
    #[error("label file contains no labels")]
    EmptyLabels,
    #[error("barbell cliques need at least 3 nodes, got {0}")]
    CliqueTooSmall(usize),
    #[error("barbell path needs at least 1 node, got {0}")]
    PathTooShort(usize),
}

/// Counts of lines an edge-list parse dropped.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct EdgeListStats {
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
}

/// Undirected, unweighted simple graph with an external-token ↔ internal-id
/// bijection. Immutable after construction.
#[derive(Debug, Clone)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    tokens: Vec<String>,
    index: HashMap<String, NodeId>,
}

impl Graph {
    /// Parse an edge list: one edge per line, two whitespace-separated
    /// tokens, `#` starts a comment. Self-loop lines are dropped and
    /// counted; duplicate edges collapse to one.
    pub fn parse_edge_list(text: &str) -> Result<(Graph, EdgeListStats), GraphError> {
        let mut stats = EdgeListStats::default();
        let mut tokens: Vec<String> = Vec::new();
        let mut index: HashMap<String, NodeId> = HashMap::new();
        let intern = |tok: &str, tokens: &mut Vec<String>, index: &mut HashMap<String, NodeId>| {
            if let Some(&id) = index.get(tok) {
                id
            } else {
                let id = tokens.len();
                tokens.push(tok.to_owned());
                index.insert(tok.to_owned(), id);
                id
            }
        };
        let mut edges: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (a, b) = match (parts.next(), parts.next(), parts.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(GraphError::MalformedEdge {
                        line: lineno + 1,
                        found: line.to_owned(),
                    })
                }
            };
            let u = intern(a, &mut tokens, &mut index);
            let v = intern(b, &mut tokens, &mut index);
            if u == v {
                stats.self_loops_dropped += 1;
                continue;
            }
            if !edges.insert((u.min(v), u.max(v))) {
                stats.duplicates_dropped += 1;
            }
        }
        if tokens.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        let mut adjacency = vec![Vec::new(); tokens.len()];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (id, adj) in adjacency.iter_mut().enumerate() {
            if adj.is_empty() {
                return Err(GraphError::IsolatedNode(tokens[id].clone()));
            }
            adj.sort_unstable();
        }
        Ok((
            Graph {
                adjacency,
                tokens,
                index,
            },
            stats,
        ))
    }

    /// Build from internal-id edges and per-node external tokens. Intended
    /// for generators; rejects self-loops, dedups, and requires degree ≥ 1.
    pub fn from_edges(
        node_tokens: Vec<String>,
        edges: &[(NodeId, NodeId)],
    ) -> Result<Graph, GraphError> {
        let n = node_tokens.len();
        let mut set: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
        for &(u, v) in edges {
            assert!(u < n && v < n, "edge endpoint out of range");
            if u != v {
                set.insert((u.min(v), u.max(v)));
            }
        }
        if set.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &set {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (id, adj) in adjacency.iter_mut().enumerate() {
            if adj.is_empty() {
                return Err(GraphError::IsolatedNode(node_tokens[id].clone()));
            }
            adj.sort_unstable();
        }
        let index = node_tokens
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Ok(Graph {
            adjacency,
            tokens: node_tokens,
            index,
        })
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.adjacency[u].len()
    }

    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.adjacency[u]
    }

    pub fn token(&self, u: NodeId) -> &str {
        &self.tokens[u]
    }

    pub fn id_of(&self, token: &str) -> Option<NodeId> {
        self.index.get(token).copied()
    }

    /// Canonical edge set, ordered by `(min, max)` internal ids.
    pub fn canonical_edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, adj) in self.adjacency.iter().enumerate() {
            for &v in adj {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Render the canonical edge list in the on-disk format.
    pub fn serialize_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.canonical_edges() {
            out.push_str(&self.tokens[u]);
            out.push(' ');
            out.push_str(&self.tokens[v]);
            out.push('\n');
        }
        out
    }

    /// BFS shortest-path distances from `u`; `None` for unreachable nodes.
    pub fn bfs_distances(&self, u: NodeId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.node_count()];
        dist[u] = Some(0);
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            for &y in &self.adjacency[x] {
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Degrees of the nodes at each exact BFS distance from `u`, each ring
    /// sorted ascending.
    pub fn hop_rings(&self, u: NodeId) -> HopRings {
        let dist = self.bfs_distances(u);
        let ecc = dist.iter().flatten().copied().max().unwrap_or(0);
        let mut rings: Vec<Vec<usize>> = vec![Vec::new(); ecc + 1];
        for (v, d) in dist.iter().enumerate() {
            if let Some(d) = d {
                rings[*d].push(self.degree(v));
            }
        }
        for ring in &mut rings {
            ring.sort_unstable();
        }
        HopRings { source: u, rings }
    }

    pub fn eccentricity(&self, u: NodeId) -> usize {
        self.bfs_distances(u)
            .iter()
            .flatten()
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// Maximum shortest-path distance over reachable pairs (max eccentricity
    /// per component when disconnected).
    pub fn diameter(&self) -> usize {
        (0..self.node_count())
            .map(|u| self.eccentricity(u))
            .max()
            .unwrap_or(0)
    }
}

/// Degree sequences of the BFS rings around one source node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopRings {
    source: NodeId,
    rings: Vec<Vec<usize>>,
}

impl HopRings {
    pub fn source(&self) -> NodeId {
        self.source
    }

    /// Ring at distance `k`; empty beyond the eccentricity.
    pub fn ring(&self, k: usize) -> &[usize] {
        self.rings.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn eccentricity(&self) -> usize {
        self.rings.len() - 1
    }
}

/// Node → class assignment with classes remapped to `0..class_count`.
#[derive(Debug, Clone)]
pub struct LabelMap {
    classes: Vec<Option<usize>>,
    class_values: Vec<i64>,
}

impl LabelMap {
    /// Parse a label file (`token<space>int` per line, `#` comments) against
    /// the graph's token set. Distinct label values are remapped, in sorted
    /// order, onto contiguous class ids.
    pub fn parse(text: &str, graph: &Graph) -> Result<LabelMap, GraphError> {
        LabelMap::parse_with(text, |tok| graph.id_of(tok), graph.node_count())
    }

    /// Like [`LabelMap::parse`] but against an arbitrary token resolver,
    /// for callers holding a token list without a graph.
    pub fn parse_with(
        text: &str,
        lookup: impl Fn(&str) -> Option<NodeId>,
        node_count: usize,
    ) -> Result<LabelMap, GraphError> {
        let mut raw: Vec<Option<i64>> = vec![None; node_count];
        let mut seen_any = false;
        for (lineno, rawline) in text.lines().enumerate() {
            let line = rawline.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (tok, lab) = match (parts.next(), parts.next(), parts.next()) {
                (Some(t), Some(l), None) => (t, l),
                _ => {
                    return Err(GraphError::MalformedLabel {
                        line: lineno + 1,
                        token: line.to_owned(),
                    })
                }
            };
            let id = lookup(tok).ok_or_else(|| GraphError::UnknownNode {
                line: lineno + 1,
                token: tok.to_owned(),
            })?;
            let value: i64 = lab.parse().map_err(|_| GraphError::MalformedLabel {
                line: lineno + 1,
                token: lab.to_owned(),
            })?;
            if raw[id].is_some() {
                return Err(GraphError::DuplicateLabel {
                    line: lineno + 1,
                    token: tok.to_owned(),
                });
            }
            raw[id] = Some(value);
            seen_any = true;
        }
        if !seen_any {
            return Err(GraphError::EmptyLabels);
        }
        Ok(Self::from_values(raw))
    }

    /// Build from per-node raw label values (`None` = unlabeled).
    pub fn from_values(raw: Vec<Option<i64>>) -> LabelMap {
        let mut class_values: Vec<i64> = raw.iter().flatten().copied().collect();
        class_values.sort_unstable();
        class_values.dedup();
        let classes = raw
            .iter()
            .map(|v| v.map(|v| class_values.binary_search(&v).unwrap()))
            .collect();
        LabelMap {
            classes,
            class_values,
        }
    }

    pub fn class(&self, u: NodeId) -> Option<usize> {
        self.classes.get(u).copied().flatten()
    }

    pub fn class_count(&self) -> usize {
        self.class_values.len()
    }

    /// Original integer value behind a class id.
    pub fn class_value(&self, class: usize) -> i64 {
        self.class_values[class]
    }

    /// Labeled nodes in id order.
    pub fn labeled(&self) -> impl Iterator<Item = (NodeId, usize)> + '_ {
        self.classes
            .iter()
            .enumerate()
            .filter_map(|(u, c)| c.map(|c| (u, c)))
    }

    pub fn serialize(&self, graph: &Graph) -> String {
        let mut out = String::new();
        for (u, c) in self.labeled() {
            out.push_str(graph.token(u));
            out.push(' ');
            out.push_str(&self.class_values[c].to_string());
            out.push('\n');
        }
        out
    }
}

/// Two cliques of `clique_size` nodes joined by a path of `path_length`
/// intermediate nodes, with role labels given by the automorphism orbits:
/// class 0 = clique interiors, class 1 = the two attachment nodes, and one
/// class per mirrored pair of path positions.
pub fn generate_barbell(
    clique_size: usize,
    path_length: usize,
) -> Result<(Graph, LabelMap), GraphError> {
    if clique_size < 3 {
        return Err(GraphError::CliqueTooSmall(clique_size));
    }
    if path_length < 1 {
        return Err(GraphError::PathTooShort(path_length));
    }
    let c = clique_size;
    let p = path_length;
    let n = 2 * c + p;
    let mut edges = Vec::new();
    // clique A on 0..c (attachment node c-1), clique B on c+p..n (attachment node c+p)
    for u in 0..c {
        for v in (u + 1)..c {
            edges.push((u, v));
        }
    }
    for u in (c + p)..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    for i in 0..(p - 1) {
        edges.push((c + i, c + i + 1));
    }
    edges.push((c - 1, c));
    edges.push((c + p - 1, c + p));

    let labels = (0..n)
        .map(|u| {
            let class = if u == c - 1 || u == c + p {
                1
            } else if u < c || u >= c + p {
                0
            } else {
                let pos = u - c;
                2 + pos.min(p - 1 - pos)
            };
            Some(class as i64)
        })
        .collect();
    let tokens = (0..n).map(|u| u.to_string()).collect();
    let graph = Graph::from_edges(tokens, &edges)?;
    Ok((graph, LabelMap::from_values(labels)))
}

/// Disjoint union of `g` and a copy of itself, plus one edge per `(u, w)`
/// bridge connecting `u` in the original to `mirror(w)` in the copy.
/// Returns the graph and the `(node, mirror)` pairing.
pub fn generate_mirrored(
    g: &Graph,
    bridges: &[(NodeId, NodeId)],
) -> (Graph, Vec<(NodeId, NodeId)>) {
    let n = g.node_count();
    let all_numeric = (0..n).all(|u| g.token(u).parse::<i64>().is_ok());
    let mirror_token = |u: NodeId| -> String {
        if all_numeric {
            (g.token(u).parse::<i64>().unwrap() + n as i64).to_string()
        } else {
            format!("{}m", g.token(u))
        }
    };
    let mut tokens: Vec<String> = (0..n).map(|u| g.token(u).to_owned()).collect();
    tokens.extend((0..n).map(mirror_token));

    let mut edges = g.canonical_edges();
    edges.extend(g.canonical_edges().iter().map(|&(u, v)| (u + n, v + n)));
    for &(u, w) in bridges {
        assert!(u < n && w < n, "bridge endpoint out of range");
        edges.push((u, w + n));
    }
    let graph = Graph::from_edges(tokens, &edges).expect("mirrored graph is never empty");
    let pairs = (0..n).map(|u| (u, u + n)).collect();
    (graph, pairs)
}

/// Zachary's karate club network: 34 nodes, 78 edges, tokens "1".."34".
pub fn karate_club() -> Graph {
    const EDGES: [(NodeId, NodeId); 78] = [
        (0, 1),
        (0, 2),
        (1, 2),
        (0, 3),
        (1, 3),
        (2, 3),
        (0, 4),
        (0, 5),
        (0, 6),
        (4, 6),
        (5, 6),
        (0, 7),
        (1, 7),
        (2, 7),
        (3, 7),
        (0, 8),
        (2, 8),
        (2, 9),
        (0, 10),
        (4, 10),
        (5, 10),
        (0, 11),
        (0, 12),
        (3, 12),
        (0, 13),
        (1, 13),
        (2, 13),
        (3, 13),
        (5, 16),
        (6, 16),
        (0, 17),
        (1, 17),
        (0, 19),
        (1, 19),
        (0, 21),
        (1, 21),
        (23, 25),
        (24, 25),
        (2, 27),
        (23, 27),
        (24, 27),
        (2, 28),
        (23, 29),
        (26, 29),
        (1, 30),
        (8, 30),
        (0, 31),
        (24, 31),
        (25, 31),
        (28, 31),
        (2, 32),
        (8, 32),
        (14, 32),
        (15, 32),
        (18, 32),
        (20, 32),
        (22, 32),
        (23, 32),
        (29, 32),
        (30, 32),
        (31, 32),
        (8, 33),
        (9, 33),
        (13, 33),
        (14, 33),
        (15, 33),
        (18, 33),
        (19, 33),
        (20, 33),
        (23, 33),
        (26, 33),
        (27, 33),
        (28, 33),
        (29, 33),
        (30, 33),
        (31, 33),
        (32, 33),
        (22, 33),
    ];
    let tokens = (1..=34).map(|t| t.to_string()).collect();
    Graph::from_edges(tokens, &EDGES).expect("karate club graph is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::parse_edge_list("a b\nb c").unwrap().0
    }

    #[test]
    fn parse_basic() {
        let (g, stats) = Graph::parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(stats, EdgeListStats::default());
    }

    #[test]
    fn parse_dedup_and_symmetry() {
        let (g, stats) = Graph::parse_edge_list("0 1\n1 0\n0 1").unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(stats.duplicates_dropped, 2);
        assert_eq!(g.neighbors(0), &[1]);
        assert_eq!(g.neighbors(1), &[0]);
    }

    #[test]
    fn parse_self_loop_only_is_isolated() {
        let err = Graph::parse_edge_list("5 5").unwrap_err();
        match err {
            GraphError::IsolatedNode(t) => assert_eq!(t, "5"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_comments_and_blank_lines() {
        let (g, stats) = Graph::parse_edge_list("# header\n\n0 1\n0 0\n").unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(stats.self_loops_dropped, 1);
    }

    #[test]
    fn parse_rejects_empty() {
        assert!(matches!(
            Graph::parse_edge_list("# nothing\n"),
            Err(GraphError::EmptyGraph)
        ));
    }

    #[test]
    fn parse_rejects_malformed() {
        assert!(matches!(
            Graph::parse_edge_list("0 1 2"),
            Err(GraphError::MalformedEdge { line: 1, .. })
        ));
    }

    #[test]
    fn hop_rings_path() {
        let g = path3();
        let a = g.id_of("a").unwrap();
        let rings = g.hop_rings(a);
        assert_eq!(rings.ring(0), &[1]);
        assert_eq!(rings.ring(1), &[2]);
        assert_eq!(rings.ring(2), &[1]);
        assert_eq!(rings.eccentricity(), 2);
        assert!(rings.ring(3).is_empty());
    }

    #[test]
    fn hop_rings_star() {
        let (g, _) = Graph::parse_edge_list("c x\nc y\nc z").unwrap();
        let c = g.id_of("c").unwrap();
        let rings = g.hop_rings(c);
        assert_eq!(rings.ring(0), &[3]);
        assert_eq!(rings.ring(1), &[1, 1, 1]);
    }

    #[test]
    fn hop_rings_k4() {
        let (g, _) = Graph::parse_edge_list("0 1\n0 2\n0 3\n1 2\n1 3\n2 3").unwrap();
        let rings = g.hop_rings(0);
        assert_eq!(rings.ring(0), &[3]);
        assert_eq!(rings.ring(1), &[3, 3, 3]);
        assert_eq!(g.diameter(), 1);
    }

    #[test]
    fn hop_rings_cover_component() {
        let (g, _) = Graph::parse_edge_list("0 1\n1 2\n3 4").unwrap();
        for u in 0..g.node_count() {
            let rings = g.hop_rings(u);
            let total: usize = (0..=rings.eccentricity())
                .map(|k| rings.ring(k).len())
                .sum();
            let comp = g.bfs_distances(u).iter().flatten().count();
            assert_eq!(total, comp);
        }
    }

    #[test]
    fn diameter_path5() {
        let (g, _) = Graph::parse_edge_list("0 1\n1 2\n2 3\n3 4").unwrap();
        assert_eq!(g.diameter(), 4);
    }

    #[test]
    fn barbell_counts() {
        let (g, labels) = generate_barbell(10, 10).unwrap();
        assert_eq!(g.node_count(), 30);
        assert_eq!(g.edge_count(), 101);
        let interior = labels.labeled().filter(|&(_, c)| c == 0).count();
        assert_eq!(interior, 18);
        assert_eq!(labels.class_count(), 2 + 5);
    }

    #[test]
    fn barbell_small() {
        let (g, _) = generate_barbell(3, 1).unwrap();
        assert_eq!(g.node_count(), 7);
        assert_eq!(g.edge_count(), 8);
    }

    #[test]
    fn barbell_diameter_matches_bfs_oracle() {
        // interior -> attachment -> path (10 nodes) -> attachment -> interior
        let (g, _) = generate_barbell(10, 10).unwrap();
        assert_eq!(g.diameter(), 13);
        let (g, _) = generate_barbell(3, 1).unwrap();
        assert_eq!(g.diameter(), 4);
    }

    #[test]
    fn barbell_rejects_bad_sizes() {
        assert!(generate_barbell(2, 5).is_err());
        assert!(generate_barbell(3, 0).is_err());
    }

    #[test]
    fn barbell_path_roles_are_mirrored() {
        let (_, labels) = generate_barbell(4, 5).unwrap();
        // path nodes are ids 4..9; positions 0 and 4 mirror, 1 and 3 mirror
        assert_eq!(labels.class(4), labels.class(8));
        assert_eq!(labels.class(5), labels.class(7));
        assert_ne!(labels.class(4), labels.class(6));
    }

    #[test]
    fn karate_shape() {
        let g = karate_club();
        assert_eq!(g.node_count(), 34);
        assert_eq!(g.edge_count(), 78);
        // node "1" is the instructor hub
        assert_eq!(g.degree(g.id_of("1").unwrap()), 16);
        assert_eq!(g.degree(g.id_of("34").unwrap()), 17);
    }

    #[test]
    fn mirrored_karate_shape() {
        let g = karate_club();
        let hub = g.id_of("1").unwrap();
        let (m, pairs) = generate_mirrored(&g, &[(hub, hub)]);
        assert_eq!(m.node_count(), 68);
        assert_eq!(m.edge_count(), 157);
        assert_eq!(pairs.len(), 34);
        assert_eq!(m.token(pairs[hub].1), "35");
    }

    #[test]
    fn mirrored_triangle() {
        let (g, _) = Graph::parse_edge_list("0 1\n1 2\n2 0").unwrap();
        let (m, _) = generate_mirrored(&g, &[(0, 0)]);
        assert_eq!(m.node_count(), 6);
        assert_eq!(m.edge_count(), 7);
    }

    #[test]
    fn mirror_map_is_automorphism() {
        // with the bridge on a mirrored pair, swapping the two copies
        // preserves the edge set
        let g = karate_club();
        let hub = g.id_of("1").unwrap();
        let (m, pairs) = generate_mirrored(&g, &[(hub, hub)]);
        let mut mirror = vec![0; m.node_count()];
        for &(u, mu) in &pairs {
            mirror[u] = mu;
            mirror[mu] = u;
        }
        let edges: std::collections::HashSet<_> = m.canonical_edges().into_iter().collect();
        for &(u, v) in &edges {
            let (a, b) = (mirror[u].min(mirror[v]), mirror[u].max(mirror[v]));
            assert!(
                edges.contains(&(a, b)),
                "edge ({u},{v}) has no mirror image"
            );
        }
    }

    #[test]
    fn mirrored_pairs_share_hop_rings() {
        let g = karate_club();
        let hub = g.id_of("1").unwrap();
        let (m, pairs) = generate_mirrored(&g, &[(hub, hub)]);
        for &(u, mu) in &pairs {
            let ru = m.hop_rings(u);
            let rmu = m.hop_rings(mu);
            assert_eq!(ru.eccentricity(), rmu.eccentricity());
            for k in 0..=ru.eccentricity() {
                assert_eq!(
                    ru.ring(k),
                    rmu.ring(k),
                    "ring {k} differs for pair ({u},{mu})"
                );
            }
        }
    }

    #[test]
    fn edge_list_round_trip() {
        let (g, _) = generate_barbell(4, 3).unwrap();
        let text = g.serialize_edge_list();
        let (g2, stats) = Graph::parse_edge_list(&text).unwrap();
        assert_eq!(stats, EdgeListStats::default());
        assert_eq!(g.canonical_edges(), g2.canonical_edges());
        for u in 0..g.node_count() {
            assert_eq!(g.token(u), g2.token(u));
        }
    }

    #[test]
    fn labels_parse_basic() {
        let (g, _) = Graph::parse_edge_list("0 1").unwrap();
        let labels = LabelMap::parse("0 1\n1 0", &g).unwrap();
        assert_eq!(labels.class(g.id_of("0").unwrap()), Some(1));
        assert_eq!(labels.class(g.id_of("1").unwrap()), Some(0));
        assert_eq!(labels.class_count(), 2);
    }

    #[test]
    fn labels_reject_duplicates_and_unknown() {
        let (g, _) = Graph::parse_edge_list("0 1").unwrap();
        assert!(matches!(
            LabelMap::parse("0 1\n0 2", &g),
            Err(GraphError::DuplicateLabel { .. })
        ));
        assert!(matches!(
            LabelMap::parse("9 1", &g),
            Err(GraphError::UnknownNode { .. })
        ));
        assert!(matches!(
            LabelMap::parse("0 x", &g),
            Err(GraphError::MalformedLabel { .. })
        ));
    }

    #[test]
    fn labels_round_trip() {
        let (g, labels) = generate_barbell(3, 2).unwrap();
        let text = labels.serialize(&g);
        let reparsed = LabelMap::parse(&text, &g).unwrap();
        for u in 0..g.node_count() {
            assert_eq!(labels.class(u), reparsed.class(u));
        }
    }

    #[test]
    fn hop_rings_invariant_under_relabeling() {
        // barbell interior nodes of the two cliques are automorphic
        let (g, _) = generate_barbell(5, 4).unwrap();
        let a = g.hop_rings(0); // interior of clique A
        let b = g.hop_rings(g.node_count() - 1); // interior of clique B
        assert_eq!(a.eccentricity(), b.eccentricity());
        for k in 0..=a.eccentricity() {
            assert_eq!(a.ring(k), b.ring(k));
        }
    }
}
