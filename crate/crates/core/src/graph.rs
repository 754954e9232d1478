//! Graph metrics, semicube convexity tests, hypercube scale embeddings,
//! and the vertex-distance protocol.
//!
//! Recognition follows the semicube criterion: a connected graph embeds in
//! a hypercube at scale 1 iff it is bipartite and every edge's semicube is
//! convex; dropping bipartiteness characterizes the graphs embeddable at
//! an even scale (the l1-graphs), realized constructively by subdividing
//! every edge once and embedding the subdivision.

use std::collections::VecDeque;

use crate::bits::{hamming_distance, BitString};
use crate::error::{Error, Result};
use crate::fingerprint::{
    copies_needed, qubits_per_copy_compressed, sample_swap_tests, swap_accept_prob,
};
use crate::jl;
use crate::ladder::{
    build_schedule, per_step_failure, referee_estimate, CostReport, LadderConfig, ProtocolResult,
    StepAnswer, StepCost,
};
use crate::seed;
use crate::sketch::{
    decide_threshold, decide_zero, gf2_matvec, sample_sparse_matrix, EqualityAnswer, ThresholdAnswer,
    ThresholdParams,
};

/// Connected, simple, unweighted graph over vertices 0..n.
#[derive(Debug, Clone)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds from an edge list; rejects self-loops and duplicate edges.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in edges {
            if u == v {
                return Err(Error::Graph(format!("self-loop at vertex {u}")));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::Graph(format!("edge ({u}, {v}) out of range")));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::Graph(format!("duplicate edge ({u}, {v})")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Ok(Graph {
            adjacency,
            labels: None,
        })
    }

    /// Parses a text edge list: one "u v" pair per line, 0-based vertices.
    /// Blank lines and lines starting with '#' are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut max_v = 0usize;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<usize> {
                tok.ok_or_else(|| Error::Parse(format!("line {}: expected two vertices", lineno + 1)))?
                    .parse()
                    .map_err(|_| Error::Parse(format!("line {}: invalid vertex", lineno + 1)))
            };
            let u = parse(it.next())?;
            let v = parse(it.next())?;
            if it.next().is_some() {
                return Err(Error::Parse(format!("line {}: trailing tokens", lineno + 1)));
            }
            max_v = max_v.max(u).max(v);
            edges.push((u, v));
        }
        if edges.is_empty() {
            return Err(Error::Parse("empty edge list".into()));
        }
        Graph::from_edges(max_v + 1, &edges)
    }

    /// Parses an adjacency document: one "u: v1 v2 ..." line per vertex.
    pub fn parse_adjacency(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut max_v = 0usize;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (head, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("line {}: missing ':'", lineno + 1)))?;
            let u: usize = head
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: invalid vertex", lineno + 1)))?;
            max_v = max_v.max(u);
            for tok in rest.split_whitespace() {
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("line {}: invalid neighbor", lineno + 1)))?;
                max_v = max_v.max(v);
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        if edges.is_empty() {
            return Err(Error::Parse("empty adjacency document".into()));
        }
        Graph::from_edges(max_v + 1, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Canonical edge list with u < v.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(&v)
    }

    pub fn vertex_label(&self, v: usize) -> String {
        match &self.labels {
            Some(names) => names[v].clone(),
            None => v.to_string(),
        }
    }

    // --- standard constructions used by the corpus and the CLI bench ---

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                edges.push((u, a + v));
            }
        }
        Graph::from_edges(a + b, &edges).unwrap()
    }

    pub fn hypercube(dim: u32) -> Graph {
        let n = 1usize << dim;
        let mut edges = Vec::new();
        for u in 0..n {
            for b in 0..dim {
                let v = u ^ (1 << b);
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Random tree: vertex i attaches to a uniformly random earlier vertex.
    pub fn random_tree(n: usize, rng: &mut impl rand::Rng) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (rng.random_range(0..i), i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }
}

/// All-pairs shortest-path distances (BFS from every vertex).
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v]
    }
}

pub fn all_pairs_distances(g: &Graph) -> Result<DistanceMatrix> {
    let n = g.vertex_count();
    let mut d = vec![u32::MAX; n * n];
    for src in 0..n {
        let row = &mut d[src * n..(src + 1) * n];
        row[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if row[v] == u32::MAX {
                    row[v] = row[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        if row.contains(&u32::MAX) {
            return Err(Error::Graph(format!(
                "graph is disconnected (vertex {src} cannot reach every vertex)"
            )));
        }
    }
    Ok(DistanceMatrix { n, d })
}

pub fn diameter(g: &Graph) -> Result<u32> {
    let dist = all_pairs_distances(g)?;
    Ok((0..dist.n)
        .flat_map(|u| (0..dist.n).map(move |v| (u, v)))
        .map(|(u, v)| dist.get(u, v))
        .max()
        .unwrap_or(0))
}

pub fn is_bipartite(g: &Graph) -> bool {
    let n = g.vertex_count();
    let mut color = vec![-1i8; n];
    for start in 0..n {
        if color[start] >= 0 {
            continue;
        }
        color[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if color[v] < 0 {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Semicube G(a|b): vertices strictly closer to a than to b.
#[derive(Debug, Clone)]
pub struct Semicube {
    pub anchor_edge: (usize, usize),
    pub members: Vec<usize>,
}

pub fn semicube(g: &Graph, dist: &DistanceMatrix, a: usize, b: usize) -> Result<Semicube> {
    if !g.has_edge(a, b) {
        return Err(Error::Graph(format!("({a}, {b}) is not an edge")));
    }
    let members = (0..g.vertex_count())
        .filter(|&x| dist.get(x, a) < dist.get(x, b))
        .collect();
    Ok(Semicube {
        anchor_edge: (a, b),
        members,
    })
}

/// True iff no vertex outside `members` lies on a shortest path between
/// two members.
pub fn is_convex(g: &Graph, members: &[usize], dist: &DistanceMatrix) -> bool {
    let n = g.vertex_count();
    let mut inside = vec![false; n];
    for &m in members {
        inside[m] = true;
    }
    for &x in members {
        for &y in members {
            if x >= y {
                continue;
            }
            let dxy = dist.get(x, y);
            for (z, &z_inside) in inside.iter().enumerate() {
                if !z_inside && dist.get(x, z) + dist.get(z, y) == dxy {
                    return false;
                }
            }
        }
    }
    true
}

fn all_semicubes_convex(g: &Graph, dist: &DistanceMatrix) -> Result<Option<(usize, usize)>> {
    for (a, b) in g.edges() {
        for (s, t) in [(a, b), (b, a)] {
            let sc = semicube(g, dist, s, t)?;
            if !is_convex(g, &sc.members, dist) {
                return Ok(Some((s, t)));
            }
        }
    }
    Ok(None)
}

/// Djokovic's criterion: bipartite with every semicube convex.
pub fn is_partial_cube(g: &Graph) -> Result<bool> {
    let dist = all_pairs_distances(g)?;
    Ok(is_bipartite(g) && all_semicubes_convex(g, &dist)?.is_none())
}

/// Every semicube convex; bipartiteness not required (even-scale embedding).
pub fn is_l1_graph(g: &Graph) -> Result<bool> {
    let dist = all_pairs_distances(g)?;
    Ok(all_semicubes_convex(g, &dist)?.is_none())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum GraphClass {
    PartialCube,
    L1Only,
    NotL1,
}

pub fn classify(g: &Graph) -> Result<GraphClass> {
    let dist = all_pairs_distances(g)?;
    if all_semicubes_convex(g, &dist)?.is_some() {
        Ok(GraphClass::NotL1)
    } else if is_bipartite(g) {
        Ok(GraphClass::PartialCube)
    } else {
        Ok(GraphClass::L1Only)
    }
}

/// Subdivides every edge with k-1 new vertices. Original vertices keep
/// their indices; distances between them scale by exactly k.
pub fn rescale(g: &Graph, k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::BadParameter("rescale factor must be >= 1".into()));
    }
    if k == 1 {
        return Ok(g.clone());
    }
    let n = g.vertex_count();
    let mut edges = Vec::new();
    let mut next = n;
    for (u, v) in g.edges() {
        let mut prev = u;
        for _ in 0..(k - 1) {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    Graph::from_edges(next, &edges)
}

/// Subdivision vertices of edge `(u, v)` (canonical u < v order) in the
/// k-rescaled image, listed from the u side to the v side.
pub fn rescaled_edge_path(g: &Graph, k: usize, edge_index: usize) -> Vec<usize> {
    let n = g.vertex_count();
    (0..k - 1).map(|j| n + edge_index * (k - 1) + j).collect()
}

/// Vertex labeling realizing d_H(label u, label v) = scale_k * d_G(u, v).
#[derive(Debug, Clone)]
pub struct HypercubeEmbedding {
    pub scale_k: u32,
    pub dimension: usize,
    pub labeling: Vec<BitString>,
}

impl HypercubeEmbedding {
    /// Text form: header "scale k dimension m", then "name bitstring" lines.
    pub fn to_text(&self, g: &Graph) -> String {
        let mut out = format!("scale {} dimension {}\n", self.scale_k, self.dimension);
        for (v, label) in self.labeling.iter().enumerate() {
            out.push_str(&format!("{} {}\n", g.vertex_label(v), label));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty embedding".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 4 || parts[0] != "scale" || parts[2] != "dimension" {
            return Err(Error::Parse("expected header 'scale k dimension m'".into()));
        }
        let scale_k: u32 = parts[1]
            .parse()
            .map_err(|_| Error::Parse("invalid scale".into()))?;
        let dimension: usize = parts[3]
            .parse()
            .map_err(|_| Error::Parse("invalid dimension".into()))?;
        let mut labeling = Vec::new();
        for line in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (_, bits) = line
                .rsplit_once(' ')
                .ok_or_else(|| Error::Parse("expected 'name bitstring'".into()))?;
            let label = BitString::parse(bits)?;
            if label.len() != dimension {
                return Err(Error::Parse("label length differs from header dimension".into()));
            }
            labeling.push(label);
        }
        Ok(HypercubeEmbedding {
            scale_k,
            dimension,
            labeling,
        })
    }
}

/// Scale-1 embedding of a partial cube from the edge relation whose
/// classes are the hypercube coordinates: edges (a,b) and (c,d) are
/// related iff d(a,c) + d(b,d) != d(a,d) + d(b,c).
pub fn embed_partial_cube(g: &Graph) -> Result<HypercubeEmbedding> {
    let dist = all_pairs_distances(g)?;
    if !is_bipartite(g) {
        return Err(Error::NotPartialCube);
    }
    if all_semicubes_convex(g, &dist)?.is_some() {
        return Err(Error::NotPartialCube);
    }

    let edges = g.edges();
    let mut uf = UnionFind::new(edges.len());
    for i in 0..edges.len() {
        let (a, b) = edges[i];
        for (j, &(c, d)) in edges.iter().enumerate().skip(i + 1) {
            if dist.get(a, c) + dist.get(b, d) != dist.get(a, d) + dist.get(b, c) {
                uf.union(i, j);
            }
        }
    }
    // one coordinate per class, oriented by a representative edge
    let mut reps: Vec<usize> = Vec::new();
    let mut class_of = vec![usize::MAX; edges.len()];
    for i in 0..edges.len() {
        let root = uf.find(i);
        if class_of[root] == usize::MAX {
            class_of[root] = reps.len();
            reps.push(i);
        }
    }
    let dimension = reps.len();
    let mut labeling = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() {
        let mut bits = BitString::zeros(dimension);
        for (coord, &rep) in reps.iter().enumerate() {
            let (a, b) = edges[rep];
            if dist.get(v, b) < dist.get(v, a) {
                bits.set(coord, true);
            }
        }
        labeling.push(bits);
    }
    let emb = HypercubeEmbedding {
        scale_k: 1,
        dimension,
        labeling,
    };
    if !verify_embedding(g, &emb)? {
        return Err(Error::InconsistentEmbedding);
    }
    Ok(emb)
}

/// Scale-2 embedding of an l1-graph: subdivide every edge once, embed the
/// (bipartite, still semicube-convex) subdivision at scale 1, and restrict
/// the labeling to the original vertices.
pub fn embed_l1(g: &Graph) -> Result<HypercubeEmbedding> {
    let dist = all_pairs_distances(g)?;
    if let Some((a, b)) = all_semicubes_convex(g, &dist)? {
        return Err(Error::NotL1Graph(format!("G({a}|{b})")));
    }
    let doubled = rescale(g, 2)?;
    let inner = embed_partial_cube(&doubled)?;
    let emb = HypercubeEmbedding {
        scale_k: 2,
        dimension: inner.dimension,
        labeling: inner.labeling[..g.vertex_count()].to_vec(),
    };
    if !verify_embedding(g, &emb)? {
        return Err(Error::InconsistentEmbedding);
    }
    Ok(emb)
}

/// Exhaustive all-pairs check of d_H == scale_k * d_G.
pub fn verify_embedding(g: &Graph, emb: &HypercubeEmbedding) -> Result<bool> {
    if emb.labeling.len() != g.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: g.vertex_count(),
            actual: emb.labeling.len(),
        });
    }
    let dist = all_pairs_distances(g)?;
    for u in 0..g.vertex_count() {
        for v in (u + 1)..g.vertex_count() {
            let dh = hamming_distance(&emb.labeling[u], &emb.labeling[v])?;
            if dh as u64 != emb.scale_k as u64 * dist.get(u, v) as u64 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Knobs for the vertex-distance protocol.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct DisConfig {
    pub ladder: LadderConfig,
    pub jl_constant: f64,
    pub jl_retries: usize,
    /// Overrides the per-step projection accuracy (otherwise eta / 5).
    pub jl_eps_override: Option<f64>,
    /// Projection is skipped when the matrix would exceed this many entries.
    pub jl_max_entries: usize,
}

impl Default for DisConfig {
    fn default() -> Self {
        DisConfig {
            ladder: LadderConfig::default(),
            jl_constant: jl::JL_CONSTANT,
            jl_retries: 10,
            jl_eps_override: None,
            jl_max_entries: 20_000_000,
        }
    }
}

/// Vertex-distance protocol: the threshold ladder run on embedding labels,
/// with thresholds scaled by the embedding scale and fingerprints
/// compressed whenever the projection dimension actually undercuts the
/// sketch dimension.
pub fn run_dis_epsilon(
    g: &Graph,
    emb: &HypercubeEmbedding,
    v: usize,
    w: usize,
    eps: f64,
    config: &DisConfig,
    master_seed: u64,
) -> Result<ProtocolResult> {
    let n_vertices = g.vertex_count();
    if v >= n_vertices || w >= n_vertices {
        return Err(Error::Graph(format!("vertex out of range: {v} or {w}")));
    }
    let diam = diameter(g)? as f64;
    let schedule = build_schedule(diam.max(1.0), eps)?;
    let delta = per_step_failure(schedule.values.len(), config.ladder.total_fail)?;
    let x_label = &emb.labeling[v];
    let y_label = &emb.labeling[w];
    let n = emb.dimension;

    let mut answers = Vec::with_capacity(schedule.values.len());
    let mut cost = CostReport::default();

    for (idx, &value) in schedule.values.iter().enumerate() {
        let matrix_seed = seed::derive(master_seed, &[seed::tag::MATRIX, idx as u64]);
        let mut rng = seed::stream(master_seed, &[seed::tag::SWAP, idx as u64]);
        if idx == 0 {
            let out = decide_zero(
                x_label,
                y_label,
                config.ladder.matrix_fail,
                delta,
                config.ladder.sketch_mode,
                matrix_seed,
                &mut rng,
            )?;
            answers.push(match out.answer {
                EqualityAnswer::Equal => StepAnswer::Accept,
                EqualityAnswer::Unequal => StepAnswer::Reject,
            });
            cost.push(StepCost {
                threshold: 0.0,
                n_rows: out.n_rows,
                copies_k: out.copies_k,
                qubits_per_copy: out.qubits_per_copy,
            });
            continue;
        }

        let d_label = value * emb.scale_k as f64;
        let params = ThresholdParams::new(n, d_label, eps, config.ladder.matrix_fail)?;
        // the 5x widening: projection distortion eats 4 parts of the
        // overlap budget, the swap-test estimate the remaining part
        let eps_component = config.jl_eps_override.unwrap_or(params.eta / 5.0);
        let m = jl::jl_dimension_with(config.jl_constant, n_vertices, eps_component)?;
        let in_dim = 2 * params.n_rows;
        let jl_active = m < in_dim && m * in_dim <= config.jl_max_entries;

        if jl_active {
            // compression needs the actual sketch vectors of every vertex
            let a = sample_sparse_matrix(params.n_rows, n, params.d, matrix_seed);
            let vectors: Vec<Vec<f64>> = emb
                .labeling
                .iter()
                .map(|label| Ok(jl::raw_fingerprint_vector(&gf2_matvec(&a, label)?)))
                .collect::<Result<_>>()?;
            let map = jl::find_verified_map(
                in_dim,
                m,
                &vectors,
                eps_component,
                seed::derive(master_seed, &[seed::tag::JL, idx as u64]),
                config.jl_retries,
            )?;
            let xv = jl::apply_and_normalize(&map, &vectors[v])?;
            let yv = jl::apply_and_normalize(&map, &vectors[w])?;
            let overlap = jl::dot(&xv, &yv).clamp(-1.0, 1.0);
            let p = swap_accept_prob(overlap)?;
            let k = copies_needed(eps_component, delta)?;
            let estimate = sample_swap_tests(p, k, params.n_rows, &mut rng);
            answers.push(if estimate.d_tilde <= params.decision_threshold {
                StepAnswer::Accept
            } else {
                StepAnswer::Reject
            });
            cost.push(StepCost {
                threshold: d_label,
                n_rows: params.n_rows,
                copies_k: k,
                qubits_per_copy: qubits_per_copy_compressed(m),
            });
        } else {
            let out = decide_threshold(
                x_label,
                y_label,
                &params,
                config.ladder.sketch_mode,
                matrix_seed,
                delta,
                &mut rng,
            )?;
            answers.push(match out.answer {
                ThresholdAnswer::AtMostD => StepAnswer::Accept,
                ThresholdAnswer::AtLeastScaledD => StepAnswer::Reject,
            });
            cost.push(StepCost {
                threshold: d_label,
                n_rows: out.n_rows,
                copies_k: out.copies_k,
                qubits_per_copy: out.qubits_per_copy,
            });
        }
    }

    let estimate = referee_estimate(&schedule, &answers);
    let truth = hamming_distance(x_label, y_label)? as f64 / emb.scale_k as f64;
    Ok(ProtocolResult {
        estimate,
        true_distance: None,
        relative_error: None,
        succeeded: None,
        cost,
    }
    .with_truth(truth, eps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distances_and_diameter() {
        let p5 = Graph::path(5);
        let dist = all_pairs_distances(&p5).unwrap();
        assert_eq!(dist.get(0, 4), 4);
        assert_eq!(dist.get(2, 2), 0);
        assert_eq!(diameter(&p5).unwrap(), 4);

        let c6 = Graph::cycle(6);
        let dist = all_pairs_distances(&c6).unwrap();
        assert_eq!(dist.get(0, 3), 3);
        assert_eq!(diameter(&Graph::complete(4)).unwrap(), 1);
        assert_eq!(diameter(&Graph::hypercube(4)).unwrap(), 4);
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(all_pairs_distances(&g).is_err());
    }

    #[test]
    fn parse_edge_list_and_errors() {
        let g = Graph::parse_edge_list("0 1\n1 2\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(Graph::parse_edge_list("0 0\n").is_err());
        assert!(Graph::parse_edge_list("0 1\n1 0\n").is_err());
        assert!(Graph::parse_edge_list("0 1 2\n").is_err());
    }

    #[test]
    fn parse_adjacency_document() {
        let g = Graph::parse_adjacency("0: 1 2\n1: 0\n2: 0\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn semicube_examples() {
        let p3 = Graph::path(3);
        let dist = all_pairs_distances(&p3).unwrap();
        assert_eq!(semicube(&p3, &dist, 0, 1).unwrap().members, vec![0]);

        let k4 = Graph::complete(4);
        let dist = all_pairs_distances(&k4).unwrap();
        assert_eq!(semicube(&k4, &dist, 0, 1).unwrap().members, vec![0]);
        assert!(semicube(&p3, &dist, 0, 2).is_err());

        // K_{2,3}: parts {0,1} and {2,3,4}; G(0|2) = {0, 3, 4}
        let k23 = Graph::complete_bipartite(2, 3);
        let dist = all_pairs_distances(&k23).unwrap();
        let sc = semicube(&k23, &dist, 0, 2).unwrap();
        assert_eq!(sc.members, vec![0, 3, 4]);
        assert!(!is_convex(&k23, &sc.members, &dist));
    }

    #[test]
    fn convexity_examples() {
        let p3 = Graph::path(3);
        let dist = all_pairs_distances(&p3).unwrap();
        assert!(is_convex(&p3, &[1], &dist));
        assert!(!is_convex(&p3, &[0, 2], &dist));
    }

    #[test]
    fn recognition_corpus() {
        let mut rng = crate::seed::stream(10, &[]);
        let tree = Graph::random_tree(40, &mut rng);
        assert!(is_partial_cube(&tree).unwrap());
        assert!(is_partial_cube(&Graph::cycle(6)).unwrap());
        assert!(!is_partial_cube(&Graph::cycle(3)).unwrap());
        assert!(is_l1_graph(&Graph::cycle(3)).unwrap());
        assert!(is_l1_graph(&Graph::complete(4)).unwrap());
        assert!(!is_l1_graph(&Graph::complete_bipartite(2, 3)).unwrap());
        assert_eq!(classify(&Graph::cycle(6)).unwrap(), GraphClass::PartialCube);
        assert_eq!(classify(&Graph::complete(5)).unwrap(), GraphClass::L1Only);
        assert_eq!(
            classify(&Graph::complete_bipartite(2, 3)).unwrap(),
            GraphClass::NotL1
        );
    }

    #[test]
    fn rescale_examples() {
        let c3 = Graph::cycle(3);
        let c3_2 = rescale(&c3, 2).unwrap();
        assert_eq!(c3_2.vertex_count(), 6);
        assert_eq!(c3_2.edge_count(), 6);
        assert!(is_bipartite(&c3_2));
        // distances between originals scale by 2
        let d0 = all_pairs_distances(&c3).unwrap();
        let d2 = all_pairs_distances(&c3_2).unwrap();
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(d2.get(u, v), 2 * d0.get(u, v));
            }
        }

        let p2 = Graph::path(2);
        let p2_3 = rescale(&p2, 3).unwrap();
        assert_eq!(p2_3.vertex_count(), 4);
        assert_eq!(diameter(&p2_3).unwrap(), 3);

        let k5 = Graph::complete(5);
        let k5_3 = rescale(&k5, 3).unwrap();
        assert_eq!(k5_3.vertex_count(), 5 + 2 * 10);
        assert_eq!(rescale(&k5, 1).unwrap().vertex_count(), 5);
    }

    #[test]
    fn embed_path_and_hypercube() {
        let p5 = Graph::path(5);
        let emb = embed_partial_cube(&p5).unwrap();
        assert_eq!(emb.scale_k, 1);
        assert_eq!(emb.dimension, 4);
        assert!(verify_embedding(&p5, &emb).unwrap());

        let q3 = Graph::hypercube(3);
        let emb = embed_partial_cube(&q3).unwrap();
        assert_eq!(emb.dimension, 3);
        assert!(verify_embedding(&q3, &emb).unwrap());
    }

    #[test]
    fn embed_tree_dimension_is_edge_count() {
        let mut rng = crate::seed::stream(20, &[]);
        let tree = Graph::random_tree(7, &mut rng);
        let emb = embed_partial_cube(&tree).unwrap();
        assert_eq!(emb.dimension, 6);
        assert!(verify_embedding(&tree, &emb).unwrap());
    }

    #[test]
    fn embed_rejects_non_partial_cube() {
        assert!(matches!(
            embed_partial_cube(&Graph::cycle(3)),
            Err(Error::NotPartialCube)
        ));
        assert!(matches!(
            embed_l1(&Graph::complete_bipartite(2, 3)),
            Err(Error::NotL1Graph(_))
        ));
    }

    #[test]
    fn embed_triangle_at_scale_two() {
        let c3 = Graph::cycle(3);
        let emb = embed_l1(&c3).unwrap();
        assert_eq!(emb.scale_k, 2);
        assert_eq!(emb.dimension, 3);
        for u in 0..3 {
            for v in (u + 1)..3 {
                assert_eq!(
                    hamming_distance(&emb.labeling[u], &emb.labeling[v]).unwrap(),
                    2
                );
            }
        }
        assert!(verify_embedding(&c3, &emb).unwrap());
    }

    #[test]
    fn embed_k4_at_scale_two() {
        let k4 = Graph::complete(4);
        let emb = embed_l1(&k4).unwrap();
        assert!(verify_embedding(&k4, &emb).unwrap());
        for u in 0..4 {
            for v in (u + 1)..4 {
                assert_eq!(
                    hamming_distance(&emb.labeling[u], &emb.labeling[v]).unwrap(),
                    2
                );
            }
        }
    }

    #[test]
    fn bipartite_partial_cube_still_embeds_at_scale_two() {
        let c6 = Graph::cycle(6);
        let emb = embed_l1(&c6).unwrap();
        assert_eq!(emb.scale_k, 2);
        assert!(verify_embedding(&c6, &emb).unwrap());
    }

    #[test]
    fn perturbed_embedding_fails_verification() {
        let p4 = Graph::path(4);
        let mut emb = embed_partial_cube(&p4).unwrap();
        let bit0 = emb.labeling[1].get(0);
        emb.labeling[1].set(0, !bit0);
        assert!(!verify_embedding(&p4, &emb).unwrap());
    }

    #[test]
    fn single_vertex_embedding_is_vacuously_valid() {
        let g = Graph {
            adjacency: vec![vec![]],
            labels: None,
        };
        let emb = HypercubeEmbedding {
            scale_k: 1,
            dimension: 0,
            labeling: vec![BitString::zeros(0)],
        };
        assert!(verify_embedding(&g, &emb).unwrap());
    }

    #[test]
    fn embedding_text_round_trip() {
        let p4 = Graph::path(4);
        let emb = embed_partial_cube(&p4).unwrap();
        let text = emb.to_text(&p4);
        assert!(text.starts_with("scale 1 dimension 3\n"));
        let back = HypercubeEmbedding::parse(&text).unwrap();
        assert_eq!(back.scale_k, 1);
        assert_eq!(back.labeling, emb.labeling);
    }

    #[test]
    fn dis_protocol_same_vertex_is_zero() {
        let p9 = Graph::path(9);
        let emb = embed_partial_cube(&p9).unwrap();
        let r = run_dis_epsilon(&p9, &emb, 3, 3, 0.5, &DisConfig::default(), 5).unwrap();
        assert_eq!(r.estimate, 0.0);
        assert_eq!(r.succeeded, Some(true));
    }

    #[test]
    fn dis_protocol_path_endpoints() {
        let p9 = Graph::path(9);
        let emb = embed_partial_cube(&p9).unwrap();
        let mut hits = 0;
        for t in 0..60u64 {
            let r = run_dis_epsilon(&p9, &emb, 0, 8, 0.5, &DisConfig::default(), 100 + t).unwrap();
            if r.succeeded == Some(true) {
                hits += 1;
            }
        }
        assert!(hits >= 54, "only {hits}/60 runs within tolerance");
    }

    #[test]
    fn dis_protocol_triangle_adjacent() {
        let c3 = Graph::cycle(3);
        let emb = embed_l1(&c3).unwrap();
        let mut exact = 0;
        for t in 0..60u64 {
            let r = run_dis_epsilon(&c3, &emb, 0, 1, 0.5, &DisConfig::default(), 300 + t).unwrap();
            if r.estimate == 1.0 {
                exact += 1;
            }
        }
        assert!(exact >= 54, "estimate 1 in only {exact}/60 runs");
    }

    #[test]
    fn dis_protocol_with_forced_projection() {
        // large projection accuracy forces the compressed branch; margins
        // are no longer guaranteed, so only the plumbing is checked
        let c3 = Graph::cycle(3);
        let emb = embed_l1(&c3).unwrap();
        let cfg = DisConfig {
            jl_eps_override: Some(0.3),
            ladder: LadderConfig {
                matrix_fail: 0.5,
                ..LadderConfig::default()
            },
            ..DisConfig::default()
        };
        let r = run_dis_epsilon(&c3, &emb, 0, 1, 0.5, &cfg, 9).unwrap();
        // compressed steps report the smaller register size
        let compressed = r.cost.steps[1..]
            .iter()
            .any(|s| (s.qubits_per_copy as usize) < crate::fingerprint::qubits_per_copy(s.n_rows) as usize);
        assert!(compressed, "projection branch never taken");
    }
}
