//! Graph families, the pinned example graphs, the pendant-hub construction
//! and exhaustive enumeration of small labeled graphs.

use std::collections::BinaryHeap;
use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::forbidden::Pattern;
use crate::graph::{Graph, GraphBuilder, Vertex};

/// Largest order accepted by [`enumerate_small_graphs`].
pub const MAX_ENUMERATION_ORDER: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("base graph has {base} vertices but {attachments} attachments were given")]
    LengthMismatch { base: usize, attachments: usize },
    #[error("attachment {index} has no vertices")]
    EmptyAttachment { index: usize },
    #[error("labeled enumeration is limited to n <= {MAX_ENUMERATION_ORDER} (got {n}); supply larger corpora as a graph6 stream with --input")]
    TooLarge { n: usize },
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Cycle on `n >= 3` vertices, `0-1-...-(n-1)-0`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least three vertices");
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((n - 1, 0));
    Graph::from_edges(n, &edges).unwrap()
}

/// `K_{1,leaves}` with center 0.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::from_edges(leaves + 1, &edges).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n);
    for j in 1..n {
        for i in 0..j {
            b.add_edge(i, j).unwrap();
        }
    }
    b.build()
}

/// Attaches a fresh path `v - m_v - l_v` to every vertex `v` of `h`.
///
/// Vertex `v` keeps its id, `m_v = n + v` and `l_v = 2n + v`.
pub fn corona_p2(h: &Graph) -> Graph {
    let n = h.order();
    let mut b = GraphBuilder::new(3 * n);
    for (u, v) in h.edges() {
        b.add_edge(u, v).unwrap();
    }
    for v in 0..n {
        b.add_edge(v, n + v).unwrap();
        b.add_edge(n + v, 2 * n + v).unwrap();
    }
    b.build()
}

/// A base graph and one attachment graph per base vertex.
#[derive(Debug, Clone)]
pub struct ConstructionSpec {
    pub base: Graph,
    pub attachments: Vec<Graph>,
}

/// Adds a hub `u_i` per base vertex `v_i`, joined to `v_i` and to every
/// vertex of the `i`-th attachment.
///
/// Layout: base vertices keep ids `0..n`, hub `u_i` is `n + i`, and the
/// attachments follow in order.
pub fn construction_h(spec: &ConstructionSpec) -> Result<Graph, GeneratorError> {
    let n = spec.base.order();
    if spec.attachments.len() != n {
        return Err(GeneratorError::LengthMismatch { base: n, attachments: spec.attachments.len() });
    }
    if let Some(index) = spec.attachments.iter().position(|a| a.order() == 0) {
        return Err(GeneratorError::EmptyAttachment { index });
    }
    let total = 2 * n + spec.attachments.iter().map(Graph::order).sum::<usize>();
    let mut b = GraphBuilder::new(total);
    for (u, v) in spec.base.edges() {
        b.add_edge(u, v).unwrap();
    }
    let mut offset = 2 * n;
    for (i, attachment) in spec.attachments.iter().enumerate() {
        let hub = n + i;
        b.add_edge(hub, i).unwrap();
        for w in attachment.vertices() {
            b.add_edge(hub, offset + w).unwrap();
        }
        for (x, y) in attachment.edges() {
            b.add_edge(offset + x, offset + y).unwrap();
        }
        offset += attachment.order();
    }
    Ok(b.build())
}

/// Hub vertices `u_1..u_n` of [`construction_h`] for a base of order `n`.
pub fn construction_hubs(n: usize) -> std::ops::Range<Vertex> {
    n..2 * n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureName {
    Fig1,
    H1,
    H2,
    G1,
    G2,
    Cycle(usize),
    Path(usize),
    Star(usize),
    Complete(usize),
}

impl FromStr for FixtureName {
    type Err = GeneratorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        let unknown = || GeneratorError::UnknownFixture(s.to_string());
        let sized = |prefix: &str, min: usize| -> Option<usize> {
            lower
                .strip_prefix(prefix)
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k >= min)
        };
        Ok(match lower.as_str() {
            "fig1" => FixtureName::Fig1,
            "h1" => FixtureName::H1,
            "h2" => FixtureName::H2,
            "g1" => FixtureName::G1,
            "g2" => FixtureName::G2,
            _ => {
                if let Some(k) = sized("star", 1) {
                    FixtureName::Star(k)
                } else if let Some(k) = sized("complete", 1).or_else(|| sized("k", 1)) {
                    FixtureName::Complete(k)
                } else if let Some(k) = sized("c", 3) {
                    FixtureName::Cycle(k)
                } else if let Some(k) = sized("p", 1) {
                    FixtureName::Path(k)
                } else {
                    return Err(unknown());
                }
            }
        })
    }
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureName::Fig1 => write!(f, "fig1"),
            FixtureName::H1 => write!(f, "h1"),
            FixtureName::H2 => write!(f, "h2"),
            FixtureName::G1 => write!(f, "g1"),
            FixtureName::G2 => write!(f, "g2"),
            FixtureName::Cycle(k) => write!(f, "c{k}"),
            FixtureName::Path(k) => write!(f, "p{k}"),
            FixtureName::Star(k) => write!(f, "star{k}"),
            FixtureName::Complete(k) => write!(f, "k{k}"),
        }
    }
}

fn labeled(n: usize, edges: &[(Vertex, Vertex)], labels: &[&str]) -> Graph {
    Graph::from_edges(n, edges)
        .unwrap()
        .with_labels(labels.iter().map(|s| s.to_string()).collect())
        .unwrap()
}

/// The pinned example graphs. `Path(k)` has `k` vertices and `Star(k)` has
/// `k` leaves.
pub fn fixture(name: FixtureName) -> Graph {
    match name {
        FixtureName::Fig1 => labeled(
            8,
            &[
                (0, 1), (0, 2), (0, 3), (0, 4), (0, 5),
                (1, 2), (1, 3), (1, 4), (1, 5),
                (2, 3), (2, 5), (3, 4), (4, 6), (5, 7), (6, 7),
            ],
            &["v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8"],
        ),
        FixtureName::H1 => Pattern::h1().graph,
        FixtureName::H2 => Pattern::h2().graph,
        // hexagon 0..5 with chord 1-5 (an H1) and a pendant 6 on vertex 0,
        // the hexagon vertex adjacent to both chord endpoints
        FixtureName::G1 => labeled(
            7,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 5), (0, 6)],
            &["v", "x1", "x2", "x3", "x4", "x5", "w"],
        ),
        // hexagon 0..5 with chords 1-5 and 2-4 (an H2); then triangle 3-6-7,
        // square 6-8-9-7 and triangle 8-9-10; pendants 11 on v1 and 12 on v2
        FixtureName::G2 => labeled(
            13,
            &[
                (11, 0), (0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 5), (2, 4),
                (3, 6), (6, 7), (7, 3), (6, 8), (8, 9), (9, 7), (9, 10), (8, 10), (10, 12),
            ],
            &["v1", "x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x9", "v2", "w1", "w2"],
        ),
        FixtureName::Cycle(k) => cycle(k),
        FixtureName::Path(k) => path(k),
        FixtureName::Star(k) => star(k),
        FixtureName::Complete(k) => complete(k),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFilter {
    All,
    IsolateFree,
    Connected,
}

impl FromStr for GraphFilter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(GraphFilter::All),
            "isolate_free" | "isolate-free" => Ok(GraphFilter::IsolateFree),
            "connected" => Ok(GraphFilter::Connected),
            other => Err(format!("unknown filter `{other}`")),
        }
    }
}

impl GraphFilter {
    pub fn accepts(self, g: &Graph) -> bool {
        match self {
            GraphFilter::All => true,
            GraphFilter::IsolateFree => g.first_isolated_vertex().is_none(),
            GraphFilter::Connected => g.is_connected(),
        }
    }
}

/// Graph on `n` vertices whose edges are the set bits of `mask`, bit `k`
/// standing for the `k`-th pair in column order `(0,1), (0,2), (1,2), ...`.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut b = GraphBuilder::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> k & 1 == 1 {
                b.add_edge(i, j).unwrap();
            }
            k += 1;
        }
    }
    b.build()
}

/// Every labeled graph on `n` vertices passing `filter`, in ascending edge
/// mask order.
pub fn enumerate_small_graphs(
    n: usize,
    filter: GraphFilter,
) -> Result<impl Iterator<Item = Graph>, GeneratorError> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(GeneratorError::TooLarge { n });
    }
    let pairs = n * n.saturating_sub(1) / 2;
    Ok((0u64..1 << pairs)
        .map(move |mask| graph_from_mask(n, mask))
        .filter(move |g| filter.accepts(g)))
}

/// Labeled tree decoded from a seeded random Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    assert!(n >= 1, "a tree needs at least one vertex");
    if n <= 2 {
        return path(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<Vertex>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut b = GraphBuilder::new(n);
    for &c in &code {
        let Reverse(leaf) = leaves.pop().expect("a leaf always exists");
        b.add_edge(leaf, c).unwrap();
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.push(Reverse(c));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(z) = leaves.pop().unwrap();
    b.add_edge(a, z).unwrap();
    b.build()
}

/// Connected block graph made of `blocks` cliques, each of size uniform in
/// `2..=max_clique`, every new clique glued at one uniformly chosen existing
/// vertex. Not uniform over block graphs.
pub fn random_block_graph(blocks: usize, max_clique: usize, seed: u64) -> Graph {
    assert!(blocks >= 2 && max_clique >= 2, "need at least two blocks of size >= 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let first = rng.gen_range(2..=max_clique);
    let mut n = first;
    for j in 1..first {
        for i in 0..j {
            edges.push((i, j));
        }
    }
    for _ in 1..blocks {
        let size = rng.gen_range(2..=max_clique);
        let anchor = rng.gen_range(0..n);
        let mut members = vec![anchor];
        members.extend(n..n + size - 1);
        n += size - 1;
        for (a, &x) in members.iter().enumerate() {
            for &y in &members[a + 1..] {
                edges.push((x, y));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forbidden::girth;
    use crate::structure::{blocks_and_cut_vertices, is_block_graph};

    #[test]
    fn fixture_names_parse() {
        for (s, f) in [
            ("fig1", FixtureName::Fig1),
            ("G2", FixtureName::G2),
            ("c6", FixtureName::Cycle(6)),
            ("p4", FixtureName::Path(4)),
            ("star3", FixtureName::Star(3)),
            ("k4", FixtureName::Complete(4)),
            ("complete5", FixtureName::Complete(5)),
        ] {
            assert_eq!(s.parse::<FixtureName>().unwrap(), f);
            assert_eq!(f.to_string().parse::<FixtureName>().unwrap(), f);
        }
        assert!("c2".parse::<FixtureName>().is_err());
        assert!("petersen".parse::<FixtureName>().is_err());
    }

    #[test]
    fn fixture_shapes() {
        let fig1 = fixture(FixtureName::Fig1);
        assert_eq!((fig1.order(), fig1.edge_count()), (8, 15));
        let g1 = fixture(FixtureName::G1);
        assert_eq!((g1.order(), g1.edge_count()), (7, 8));
        let g2 = fixture(FixtureName::G2);
        assert_eq!((g2.order(), g2.edge_count()), (13, 18));
        let pendants: Vec<String> =
            g2.vertices().filter(|&v| g2.degree(v) == 1).map(|v| g2.label(v)).collect();
        assert_eq!(pendants, ["w1", "w2"]);
        assert_eq!(g2.label(g2.neighbors(11).first().unwrap()), "v1");
        assert_eq!(g2.label(g2.neighbors(12).first().unwrap()), "v2");
    }

    #[test]
    fn corona_examples() {
        assert_eq!(corona_p2(&Graph::empty(1)), path(3));
        let c = corona_p2(&cycle(3));
        assert_eq!(c.order(), 9);
        assert_eq!(girth(&corona_p2(&cycle(8))), Some(8));
    }

    #[test]
    fn construction_examples() {
        let spec = ConstructionSpec { base: Graph::empty(1), attachments: vec![Graph::empty(1)] };
        let g = construction_h(&spec).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        let spec = ConstructionSpec { base: cycle(4), attachments: vec![Graph::empty(1); 4] };
        // singleton attachments give the corona, up to the id layout
        let g = construction_h(&spec).unwrap();
        assert_eq!(g, corona_p2(&cycle(4)));
        let bad = ConstructionSpec { base: cycle(4), attachments: vec![Graph::empty(1); 3] };
        assert_eq!(
            construction_h(&bad).unwrap_err(),
            GeneratorError::LengthMismatch { base: 4, attachments: 3 }
        );
        let bad = ConstructionSpec { base: path(1), attachments: vec![Graph::empty(0)] };
        assert!(construction_h(&bad).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_small_graphs(3, GraphFilter::All).unwrap().count(), 8);
        assert_eq!(enumerate_small_graphs(4, GraphFilter::Connected).unwrap().count(), 38);
        let k2: Vec<Graph> = enumerate_small_graphs(2, GraphFilter::IsolateFree).unwrap().collect();
        assert_eq!(k2, vec![complete(2)]);
        assert!(enumerate_small_graphs(8, GraphFilter::All).is_err());
        let all: Vec<Graph> = enumerate_small_graphs(4, GraphFilter::All).unwrap().collect();
        assert_eq!(all.len(), 64);
        let distinct: std::collections::HashSet<String> =
            all.iter().map(crate::io::to_graph6).collect();
        assert_eq!(distinct.len(), 64);
    }

    #[test]
    fn connected_count_matches_independent_count() {
        // connected labeled graphs on 1..=5 vertices: 1, 1, 4, 38, 728
        let counts: Vec<usize> = (1..=5)
            .map(|n| enumerate_small_graphs(n, GraphFilter::Connected).unwrap().count())
            .collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
    }

    #[test]
    fn random_trees() {
        assert_eq!(random_tree(1, 9).order(), 1);
        assert_eq!(random_tree(2, 9), complete(2));
        for seed in 0..50 {
            let t = random_tree(12, seed);
            assert_eq!(t.edge_count(), 11);
            assert!(t.is_connected());
        }
        assert_eq!(random_tree(8, 42), random_tree(8, 42));
        assert_eq!(
            random_tree(8, 42).edges().collect::<Vec<_>>(),
            PINNED_TREE_8_42.to_vec()
        );
    }

    const PINNED_TREE_8_42: [(Vertex, Vertex); 7] = [(0, 5), (1, 2), (1, 6), (2, 5), (2, 7), (3, 4), (3, 5)];

    #[test]
    fn random_block_graphs() {
        let g = random_block_graph(2, 3, 1);
        assert!(is_block_graph(&g));
        assert_eq!(blocks_and_cut_vertices(&g).blocks.len(), 2);
        for seed in 0..100 {
            let g = random_block_graph(2 + (seed as usize % 5), 2 + (seed as usize % 4), seed);
            assert!(g.is_connected());
            assert!(is_block_graph(&g));
            assert_eq!(blocks_and_cut_vertices(&g).blocks.len(), 2 + (seed as usize % 5));
        }
    }
}
