//! Induced-subgraph search for small patterns, chordality and girth.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::graph::{Graph, Vertex};
use crate::set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternName {
    C3,
    C6,
    H1,
    H2,
    Custom(String),
}

impl fmt::Display for PatternName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternName::C3 => f.write_str("c3"),
            PatternName::C6 => f.write_str("c6"),
            PatternName::H1 => f.write_str("h1"),
            PatternName::H2 => f.write_str("h2"),
            PatternName::Custom(name) => f.write_str(name),
        }
    }
}

impl Serialize for PatternName {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub name: PatternName,
    pub graph: Graph,
}

const HEXAGON: [(Vertex, Vertex); 6] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)];

impl Pattern {
    pub fn c3() -> Pattern {
        Pattern {
            name: PatternName::C3,
            graph: Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap(),
        }
    }

    pub fn c6() -> Pattern {
        Pattern { name: PatternName::C6, graph: Graph::from_edges(6, &HEXAGON).unwrap() }
    }

    /// Hexagon plus the chord `1-5`, whose endpoints share the neighbor 0.
    pub fn h1() -> Pattern {
        let mut edges = HEXAGON.to_vec();
        edges.push((1, 5));
        Pattern { name: PatternName::H1, graph: Graph::from_edges(6, &edges).unwrap() }
    }

    /// Hexagon plus the two chords `1-5` and `2-4` on opposite sides.
    pub fn h2() -> Pattern {
        let mut edges = HEXAGON.to_vec();
        edges.extend([(1, 5), (2, 4)]);
        Pattern { name: PatternName::H2, graph: Graph::from_edges(6, &edges).unwrap() }
    }

    pub fn custom(name: impl Into<String>, graph: Graph) -> Pattern {
        Pattern { name: PatternName::Custom(name.into()), graph }
    }

    /// The patterns whose absence makes the polynomial classifier exact, in
    /// the order they are searched.
    pub fn eligibility_set() -> Vec<Pattern> {
        vec![Pattern::c6(), Pattern::h1(), Pattern::h2()]
    }

    /// Parses a comma-separated list such as `c3,c6,h1,h2`.
    pub fn parse_list(list: &str) -> Result<Vec<Pattern>, String> {
        list.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(Pattern::from_str)
            .collect()
    }
}

impl FromStr for Pattern {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "c3" => Ok(Pattern::c3()),
            "c6" => Ok(Pattern::c6()),
            "h1" => Ok(Pattern::h1()),
            "h2" => Ok(Pattern::h2()),
            other => Err(format!("unknown pattern `{other}` (expected c3, c6, h1 or h2)")),
        }
    }
}

/// An induced copy of a pattern: `mapping[i]` is the host vertex playing
/// pattern vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub pattern: PatternName,
    pub mapping: Vec<Vertex>,
}

impl Embedding {
    pub fn image(&self, capacity: usize) -> VertexSet {
        VertexSet::from_vertices(capacity, self.mapping.iter().copied())
    }
}

/// Lexicographically least induced embedding of `pattern` into `host`, where
/// mappings are compared as the sequence of images of pattern vertices
/// `0, 1, ...`.
pub fn find_induced(host: &Graph, pattern: &Pattern) -> Option<Embedding> {
    find_induced_mapping(host, &pattern.graph)
        .map(|mapping| Embedding { pattern: pattern.name.clone(), mapping })
}

pub fn find_induced_mapping(host: &Graph, pattern: &Graph) -> Option<Vec<Vertex>> {
    let k = pattern.order();
    if k > host.order() {
        return None;
    }
    if k == 0 {
        return Some(Vec::new());
    }
    let mut search = InducedSearch {
        host,
        pattern,
        mapping: Vec::with_capacity(k),
        used: host.empty_set(),
    };
    search.extend().then_some(search.mapping)
}

struct InducedSearch<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    mapping: Vec<Vertex>,
    used: VertexSet,
}

impl InducedSearch<'_> {
    fn extend(&mut self) -> bool {
        let i = self.mapping.len();
        if i == self.pattern.order() {
            return true;
        }
        let candidates = self.candidates(i);
        let need = self.pattern.degree(i);
        for c in &candidates {
            if self.host.degree(c) < need {
                continue;
            }
            self.mapping.push(c);
            self.used.insert(c);
            if self.extend() {
                return true;
            }
            self.used.remove(c);
            self.mapping.pop();
        }
        false
    }

    /// Host vertices consistent with the partial map for pattern vertex `i`:
    /// adjacent to the images of earlier pattern neighbors, non-adjacent to
    /// the images of earlier non-neighbors, and unused.
    fn candidates(&self, i: Vertex) -> VertexSet {
        let anchor = (0..i).find(|&j| self.pattern.has_edge(i, j));
        let mut set = match anchor {
            Some(j) => self.host.neighbors(self.mapping[j]).clone(),
            None => self.host.vertex_set(),
        };
        set.difference_with(&self.used);
        for j in 0..i {
            let image = self.mapping[j];
            if self.pattern.has_edge(i, j) {
                set.intersect_with(self.host.neighbors(image));
            } else {
                set.difference_with(self.host.neighbors(image));
            }
            if set.is_empty() {
                break;
            }
        }
        set
    }
}

/// Tries `patterns` in order; returns `(true, None)` when none embeds,
/// otherwise `(false, Some(first witness))`.
pub fn is_free(g: &Graph, patterns: &[Pattern]) -> (bool, Option<Embedding>) {
    match patterns.iter().find_map(|p| find_induced(g, p)) {
        Some(e) => (false, Some(e)),
        None => (true, None),
    }
}

/// Lexicographic breadth-first search order, ties broken by smallest id.
pub fn lex_bfs(g: &Graph) -> Vec<Vertex> {
    let n = g.order();
    // ordered partition of the unvisited vertices; first cell holds the
    // lexicographically largest labels
    let mut cells: VecDeque<Vec<Vertex>> = VecDeque::new();
    if n > 0 {
        cells.push_back(g.vertices().collect());
    }
    let mut order = Vec::with_capacity(n);
    while let Some(mut first) = cells.pop_front() {
        let v = first.remove(0);
        if !first.is_empty() {
            cells.push_front(first);
        }
        order.push(v);
        let nbrs = g.neighbors(v);
        let mut refined = VecDeque::with_capacity(cells.len() + 1);
        for cell in cells.drain(..) {
            let (inside, outside): (Vec<Vertex>, Vec<Vertex>) =
                cell.into_iter().partition(|&u| nbrs.contains(u));
            if !inside.is_empty() {
                refined.push_back(inside);
            }
            if !outside.is_empty() {
                refined.push_back(outside);
            }
        }
        cells = refined;
    }
    order
}

/// Chordality via lexicographic BFS and a perfect-elimination check on the
/// reversed visit order.
pub fn is_chordal(g: &Graph) -> bool {
    let order = lex_bfs(g);
    let mut position = vec![0usize; g.order()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    for &v in &order {
        let earlier: Vec<Vertex> = g.neighbors(v).iter().filter(|&u| position[u] < position[v]).collect();
        let Some(&parent) = earlier.iter().max_by_key(|&&u| position[u]) else {
            continue;
        };
        if earlier.iter().any(|&u| u != parent && !g.has_edge(u, parent)) {
            return false;
        }
    }
    true
}

/// Length of a shortest cycle; `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.order();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            if let Some(b) = best {
                if 2 * dist[v] >= b {
                    break;
                }
            }
            for w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    let len = dist[v] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, fixture, path, random_tree, star, FixtureName};

    fn degree_sequence(g: &Graph) -> Vec<usize> {
        let mut d: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
        d.sort();
        d
    }

    #[test]
    fn pattern_shapes_are_pinned() {
        assert_eq!(degree_sequence(&Pattern::h1().graph), vec![2, 2, 2, 2, 3, 3]);
        assert_eq!(degree_sequence(&Pattern::h2().graph), vec![2, 2, 3, 3, 3, 3]);
        let h1 = Pattern::h1().graph;
        // the chord endpoints share a neighbor
        assert!(h1.has_edge(1, 5) && h1.has_edge(0, 1) && h1.has_edge(0, 5));
        let h2 = Pattern::h2().graph;
        // the two chords are vertex-disjoint and not joined by a chord
        assert!(h2.has_edge(1, 5) && h2.has_edge(2, 4) && !h2.has_edge(1, 4) && !h2.has_edge(2, 5));
        assert_eq!(degree_sequence(&Pattern::c6().graph), vec![2; 6]);
        assert_eq!(Pattern::c3().graph, complete(3));
    }

    #[test]
    fn cycle_embeds_in_itself() {
        let e = find_induced(&cycle(6), &Pattern::c6()).unwrap();
        assert_eq!(e.mapping, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn sharpness_patterns_on_g1_and_g2() {
        let g1 = fixture(FixtureName::G1);
        assert!(find_induced(&g1, &Pattern::h1()).is_some());
        assert!(find_induced(&g1, &Pattern::h2()).is_none());
        assert!(find_induced(&g1, &Pattern::c6()).is_none());
        let g2 = fixture(FixtureName::G2);
        assert!(find_induced(&g2, &Pattern::h2()).is_some());
        assert!(find_induced(&g2, &Pattern::h1()).is_none());
        assert!(find_induced(&g2, &Pattern::c6()).is_none());
    }

    #[test]
    fn freeness_examples() {
        let all = Pattern::eligibility_set();
        assert_eq!(is_free(&random_tree(12, 5), &all), (true, None));
        let (free, witness) = is_free(&cycle(6), &all);
        assert!(!free);
        assert_eq!(witness.unwrap().pattern, PatternName::C6);

        let fig1 = fixture(FixtureName::Fig1);
        let (free, witness) = is_free(&fig1, &[Pattern::c6()]);
        assert!(!free);
        let image: Vec<String> = {
            let mut v: Vec<String> = witness.unwrap().mapping.iter().map(|&x| fig1.label(x)).collect();
            v.sort();
            v
        };
        assert_eq!(image, ["v3", "v4", "v5", "v6", "v7", "v8"]);
    }

    #[test]
    fn small_host_never_matches() {
        assert!(find_induced(&path(5), &Pattern::c6()).is_none());
    }

    #[test]
    fn chordality_examples() {
        assert!(is_chordal(&random_tree(20, 1)));
        assert!(!is_chordal(&cycle(6)));
        assert!(!is_chordal(&cycle(4)));
        let bowtie = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert!(is_chordal(&bowtie));
        assert!(is_chordal(&complete(5)));
        assert!(is_chordal(&Graph::empty(0)));
    }

    #[test]
    fn girth_examples() {
        assert_eq!(girth(&cycle(6)), Some(6));
        assert_eq!(girth(&complete(3)), Some(3));
        assert_eq!(girth(&random_tree(10, 2)), None);
        assert_eq!(girth(&star(4)), None);
        assert_eq!(girth(&complete(4)), Some(3));
        assert_eq!(girth(&cycle(9).disjoint_union(&cycle(5))), Some(5));
    }
}
