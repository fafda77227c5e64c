//! Closed-neighborhood structure: true twins, the twins / dominated / mixed
//! split of `N[v]`, special vertices, support vertices and the block
//! decomposition.

use serde::Serialize;

use crate::graph::{Graph, GraphError, Vertex};
use crate::set::VertexSet;

/// The split of `N[v]` into three disjoint parts.
///
/// * `twins`: `v` and every `u` with `N[u] = N[v]`;
/// * `dominated`: neighbors `u` with `N[u]` a proper subset of `N[v]`;
/// * `mixed`: neighbors with a neighbor outside `N[v]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NeighborhoodPartition {
    pub vertex: Vertex,
    pub twins: VertexSet,
    pub dominated: VertexSet,
    pub mixed: VertexSet,
}

pub fn tdm_partition(g: &Graph, v: Vertex) -> Result<NeighborhoodPartition, GraphError> {
    let closed_v = g.closed_neighborhood(v)?;
    Ok(partition_with(g, v, &closed_v))
}

fn partition_with(g: &Graph, v: Vertex, closed_v: &VertexSet) -> NeighborhoodPartition {
    let mut twins = g.set_of([v]);
    let mut dominated = g.empty_set();
    let mut mixed = g.empty_set();
    for u in g.neighbors(v) {
        let closed_u = g.closed(u);
        if closed_u == *closed_v {
            twins.insert(u);
        } else if closed_u.is_subset(closed_v) {
            dominated.insert(u);
        } else {
            mixed.insert(u);
        }
    }
    NeighborhoodPartition { vertex: v, twins, dominated, mixed }
}

/// A vertex is special when it is not isolated and no member of its mixed
/// part is adjacent to every member of its dominated part.
pub fn is_special(g: &Graph, v: Vertex) -> Result<bool, GraphError> {
    let closed_v = g.closed_neighborhood(v)?;
    Ok(special_with(g, v, &closed_v))
}

fn special_with(g: &Graph, v: Vertex, closed_v: &VertexSet) -> bool {
    if g.is_isolated(v) {
        return false;
    }
    let p = partition_with(g, v, closed_v);
    !p.mixed.iter().any(|u| p.dominated.is_subset(g.neighbors(u)))
}

/// True-twin classes of the non-isolated vertices, each listed in ascending
/// order and the classes ordered by their smallest member.
///
/// Isolated vertices are left out entirely: two isolated vertices share a
/// closed neighborhood only vacuously and are never special.
pub fn true_twin_classes(g: &Graph) -> Vec<VertexSet> {
    let closed: Vec<VertexSet> = g.vertices().map(|v| g.closed(v)).collect();
    let mut order: Vec<Vertex> = g.vertices().filter(|&v| !g.is_isolated(v)).collect();
    order.sort_by(|&a, &b| closed[a].cmp(&closed[b]).then(a.cmp(&b)));
    let mut classes: Vec<VertexSet> = Vec::new();
    let mut prev: Option<Vertex> = None;
    for v in order {
        match prev {
            Some(p) if closed[p] == closed[v] => {
                classes.last_mut().expect("class opened").insert(v);
            }
            _ => classes.push(g.set_of([v])),
        }
        prev = Some(v);
    }
    classes.sort_by_key(|c| c.first());
    classes
}

/// Special vertices grouped into true-twin classes, with one representative
/// (the smallest id) per class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialSet {
    pub special: VertexSet,
    pub classes: Vec<VertexSet>,
    pub representatives: VertexSet,
}

impl SpecialSet {
    /// Product of the class sizes, i.e. the number of ways to pick one
    /// representative per class. `None` on overflow.
    pub fn selection_count(&self) -> Option<u128> {
        self.classes
            .iter()
            .try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128))
    }

    pub fn all_classes_singletons(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }

    /// A special set whose every class is a singleton.
    pub fn from_singletons(set: VertexSet) -> SpecialSet {
        let classes = set
            .iter()
            .map(|v| VertexSet::from_vertices(set.capacity(), [v]))
            .collect();
        SpecialSet { special: set.clone(), classes, representatives: set }
    }
}

pub fn special_vertices(g: &Graph) -> VertexSet {
    let mut out = g.empty_set();
    for v in g.vertices() {
        if special_with(g, v, &g.closed(v)) {
            out.insert(v);
        }
    }
    out
}

pub fn s_set(g: &Graph) -> SpecialSet {
    let special = special_vertices(g);
    let classes: Vec<VertexSet> = true_twin_classes(g)
        .into_iter()
        .filter(|c| {
            let any = c.first().is_some_and(|v| special.contains(v));
            debug_assert!(!any || c.is_subset(&special), "twins of a special vertex are special");
            any
        })
        .collect();
    let representatives = g.set_of(classes.iter().filter_map(VertexSet::first));
    SpecialSet { special, classes, representatives }
}

/// Vertices adjacent to a leaf. In a `K2` component only the smaller
/// endpoint counts as the support vertex.
pub fn support_vertices(g: &Graph) -> VertexSet {
    let mut out = g.empty_set();
    for leaf in g.vertices().filter(|&v| g.degree(v) == 1) {
        let support = g.neighbors(leaf).first().expect("leaf has a neighbor");
        if g.degree(support) == 1 && support > leaf {
            continue;
        }
        out.insert(support);
    }
    out
}

/// Blocks (maximal biconnected pieces or bridges) and cut vertices.
///
/// `d1` holds cut vertices that are the only cut vertex of some block; `d2`
/// holds cut vertices with two non-cut neighbors in different blocks.
/// Isolated vertices belong to no block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<VertexSet>,
    pub cut_vertices: VertexSet,
    pub d1: VertexSet,
    pub d2: VertexSet,
}

impl BlockDecomposition {
    pub fn d1_union_d2(&self) -> VertexSet {
        self.d1.union(&self.d2)
    }
}

pub fn blocks_and_cut_vertices(g: &Graph) -> BlockDecomposition {
    let blocks = biconnected_blocks(g);
    let n = g.order();
    let mut membership = vec![0usize; n];
    for b in &blocks {
        for v in b {
            membership[v] += 1;
        }
    }
    let cut_vertices = g.set_of(g.vertices().filter(|&v| membership[v] >= 2));

    let mut d1 = g.empty_set();
    for b in &blocks {
        let cuts = b.intersection(&cut_vertices);
        if cuts.len() == 1 {
            d1.insert(cuts.first().unwrap());
        }
    }

    let mut d2 = g.empty_set();
    for v in &cut_vertices {
        let mut hit: Option<usize> = None;
        'neighbors: for u in g.neighbors(v).difference(&cut_vertices).iter() {
            // two blocks share at most one vertex, so the block of edge uv is unique
            let block = blocks
                .iter()
                .position(|b| b.contains(u) && b.contains(v))
                .expect("every edge lies in a block");
            match hit {
                None => hit = Some(block),
                Some(b) if b != block => {
                    d2.insert(v);
                    break 'neighbors;
                }
                _ => {}
            }
        }
    }

    BlockDecomposition { blocks, cut_vertices, d1, d2 }
}

/// Lowpoint decomposition into blocks, iterative to avoid deep recursion.
fn biconnected_blocks(g: &Graph) -> Vec<VertexSet> {
    let n = g.order();
    let adj: Vec<Vec<Vertex>> = g.vertices().map(|v| g.neighbors(v).to_vec()).collect();
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut clock = 0;
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut blocks = Vec::new();

    for root in 0..n {
        if disc[root] != UNSEEN || adj[root].is_empty() {
            continue;
        }
        disc[root] = clock;
        low[root] = clock;
        clock += 1;
        // (vertex, parent, next neighbor index)
        let mut frames: Vec<(Vertex, Vertex, usize)> = vec![(root, UNSEEN, 0)];
        while let Some(frame) = frames.last_mut() {
            let (v, parent) = (frame.0, frame.1);
            if frame.2 < adj[v].len() {
                let w = adj[v][frame.2];
                frame.2 += 1;
                if disc[w] == UNSEEN {
                    edge_stack.push((v, w));
                    disc[w] = clock;
                    low[w] = clock;
                    clock += 1;
                    frames.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            frames.pop();
            if parent == UNSEEN {
                continue;
            }
            low[parent] = low[parent].min(low[v]);
            if low[v] >= disc[parent] {
                let mut block = g.empty_set();
                while let Some((a, b)) = edge_stack.pop() {
                    block.insert(a);
                    block.insert(b);
                    if (a, b) == (parent, v) {
                        break;
                    }
                }
                blocks.push(block);
            }
        }
    }
    blocks.sort_by_key(|b| b.to_vec());
    blocks
}

/// True iff every block induces a clique.
pub fn is_block_graph(g: &Graph) -> bool {
    blocks_and_cut_vertices(g).blocks.iter().all(|b| {
        let k = b.len();
        b.iter().all(|v| g.neighbors(v).intersection_len(b) == k - 1)
    })
}
