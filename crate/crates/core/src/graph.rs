//! Immutable simple undirected graphs over dense vertex ids.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::set::VertexSet;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: Vertex },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
}

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency is stored as one [`VertexSet`] per vertex; the graph is never
/// mutated after [`GraphBuilder::build`].
#[derive(Clone)]
pub struct Graph {
    adj: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    /// Labels are presentation only; two graphs are equal when they have the
    /// same order and edge set.
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BasicStats {
    pub min_degree: usize,
    pub max_degree: usize,
    pub edge_count: usize,
    pub component_count: usize,
    pub isolated_vertex_count: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        GraphBuilder::new(n).build()
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(v)
    }

    /// Neighbor set of `v`. Panics on an out-of-range id; use
    /// [`Graph::open_neighborhood`] for a checked query.
    pub fn neighbors(&self, v: Vertex) -> &VertexSet {
        &self.adj[v]
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.order()
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices()
            .flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// External name of `v`, falling back to its id.
    pub fn label(&self, v: Vertex) -> String {
        match &self.labels {
            Some(labels) => labels[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph, GraphError> {
        if labels.len() != self.order() {
            return Err(GraphError::LabelCount { expected: self.order(), got: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.order())
    }

    pub fn set_of<I: IntoIterator<Item = Vertex>>(&self, vertices: I) -> VertexSet {
        VertexSet::from_vertices(self.order(), vertices)
    }

    fn check(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.order() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.order() })
        }
    }

    pub fn open_neighborhood(&self, v: Vertex) -> Result<VertexSet, GraphError> {
        self.check(v)?;
        Ok(self.adj[v].clone())
    }

    pub fn closed_neighborhood(&self, v: Vertex) -> Result<VertexSet, GraphError> {
        self.check(v)?;
        Ok(self.closed(v))
    }

    /// Unchecked `N[v]`.
    pub(crate) fn closed(&self, v: Vertex) -> VertexSet {
        let mut out = self.adj[v].clone();
        out.insert(v);
        out
    }

    /// `N[S]`; the empty set maps to the empty set.
    pub fn closed_neighborhood_of_set(&self, set: &VertexSet) -> VertexSet {
        let mut out = set.clone();
        for v in set {
            out.union_with(&self.adj[v]);
        }
        out
    }

    /// `N(S)`, the union of the open neighborhoods of the members.
    pub fn open_neighborhood_of_set(&self, set: &VertexSet) -> VertexSet {
        let mut out = self.empty_set();
        for v in set {
            out.union_with(&self.adj[v]);
        }
        out
    }

    pub fn is_isolated(&self, v: Vertex) -> bool {
        self.adj[v].is_empty()
    }

    pub fn first_isolated_vertex(&self) -> Option<Vertex> {
        self.vertices().find(|&v| self.is_isolated(v))
    }

    pub fn min_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Connected components as vertex sets, ordered by their smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let n = self.order();
        let mut seen = self.empty_set();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for root in 0..n {
            if seen.contains(root) {
                continue;
            }
            let mut comp = self.empty_set();
            seen.insert(root);
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for w in &self.adj[v] {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn basic_stats(&self) -> BasicStats {
        let degrees = self.vertices().map(|v| self.degree(v));
        BasicStats {
            min_degree: degrees.clone().min().unwrap_or(0),
            max_degree: degrees.max().unwrap_or(0),
            edge_count: self.edge_count(),
            component_count: self.components().len(),
            isolated_vertex_count: self.vertices().filter(|&v| self.is_isolated(v)).count(),
        }
    }

    /// Subgraph induced by `set`, relabeled to `0..|set|` in ascending order.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Graph {
        let members = set.to_vec();
        let mut b = GraphBuilder::new(members.len());
        for (i, &u) in members.iter().enumerate() {
            for (j, &v) in members.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    b.add_edge(i, j).expect("induced edge is valid");
                }
            }
        }
        let g = b.build();
        match &self.labels {
            Some(labels) => g
                .with_labels(members.iter().map(|&v| labels[v].clone()).collect())
                .expect("label count matches"),
            None => g,
        }
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let mut b = GraphBuilder::new(shift + other.order());
        for (u, v) in self.edges() {
            b.add_edge(u, v).expect("valid edge");
        }
        for (u, v) in other.edges() {
            b.add_edge(u + shift, v + shift).expect("valid edge");
        }
        b.build()
    }
}

/// Accumulates edges; duplicate edges collapse, self-loops are rejected.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    adj: Vec<VertexSet>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder { adj: vec![VertexSet::new(n); n] }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Appends a fresh vertex and returns its id.
    pub fn add_vertex(&mut self) -> Vertex {
        let n = self.adj.len() + 1;
        let mut grown: Vec<VertexSet> = Vec::with_capacity(n);
        for old in &self.adj {
            grown.push(VertexSet::from_vertices(n, old.iter()));
        }
        grown.push(VertexSet::new(n));
        self.adj = grown;
        n - 1
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<&mut Self, GraphError> {
        let n = self.adj.len();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { vertex: u });
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(self)
    }

    pub fn build(self) -> Graph {
        Graph { adj: self.adj, labels: None }
    }
}
