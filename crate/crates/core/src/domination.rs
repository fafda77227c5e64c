//! Domination predicates and exact exponential-time solvers for `γ` and `γ_t`.
//!
//! The solvers work on single-word bitmasks and refuse graphs larger than
//! the configured oracle cap. They are the ground truth the polynomial
//! classifier is checked against.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::set::VertexSet;

pub const DEFAULT_ORACLE_CAP: usize = 32;
/// Hard ceiling: subset state must fit in one `u64`.
pub const MAX_ORACLE_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DominationError {
    #[error("graph has {n} vertices, above the exact-solver oracle cap of {cap}")]
    OracleCap { n: usize, cap: usize },
    #[error("total domination is undefined: vertex {vertex} is isolated")]
    IsolatedVertex { vertex: Vertex },
}

/// `N[S] = V(G)`.
pub fn is_dominating(g: &Graph, set: &VertexSet) -> bool {
    g.closed_neighborhood_of_set(set).len() == g.order()
}

/// Smallest vertex outside `N[S]`.
pub fn undominated_vertex(g: &Graph, set: &VertexSet) -> Option<Vertex> {
    g.vertex_set().difference(&g.closed_neighborhood_of_set(set)).first()
}

/// `N(S) = V(G)`.
pub fn is_total_dominating(g: &Graph, set: &VertexSet) -> bool {
    g.open_neighborhood_of_set(set).len() == g.order()
}

/// Lexicographically least pair `(u, v)`, `u < v`, of members whose closed
/// neighborhoods meet.
pub fn packing_violation(g: &Graph, set: &VertexSet) -> Option<(Vertex, Vertex)> {
    let members = set.to_vec();
    for (i, &u) in members.iter().enumerate() {
        let closed_u = g.closed(u);
        for &v in &members[i + 1..] {
            if !closed_u.is_disjoint(&g.closed(v)) {
                return Some((u, v));
            }
        }
    }
    None
}

pub fn is_packing(g: &Graph, set: &VertexSet) -> (bool, Option<(Vertex, Vertex)>) {
    let violation = packing_violation(g, set);
    (violation.is_none(), violation)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DominationKind {
    Gamma,
    GammaTotal,
}

/// A minimum value together with a set attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominationCertificate {
    pub kind: DominationKind,
    pub value: usize,
    pub witness: VertexSet,
}

/// All minimum dominating sets; `sets` is truncated to the listing cap but
/// `count` is always exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaSetEnumeration {
    pub gamma: usize,
    pub count: u64,
    pub sets: Vec<VertexSet>,
    pub truncated: bool,
}

fn check_cap(g: &Graph, cap: usize) -> Result<(), DominationError> {
    let cap = cap.min(MAX_ORACLE_CAP);
    if g.order() > cap {
        Err(DominationError::OracleCap { n: g.order(), cap })
    } else {
        Ok(())
    }
}

fn closed_masks(g: &Graph) -> Vec<u64> {
    g.vertices().map(|v| g.neighbors(v).to_mask() | 1 << v).collect()
}

fn open_masks(g: &Graph) -> Vec<u64> {
    g.vertices().map(|v| g.neighbors(v).to_mask()).collect()
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Minimum-size cover of all vertices where choosing `u` covers `cover[u]`.
///
/// Iterative deepening over the budget; inside one budget, branch on the
/// least-id uncovered vertex `v` and try the vertices covering it in
/// ascending id. `cover` must be symmetric (`v ∈ cover[u] ⇔ u ∈ cover[v]`),
/// so the candidates for `v` are exactly `cover[v]`.
struct CoverSearch<'a> {
    cover: &'a [u64],
    full: u64,
}

impl CoverSearch<'_> {
    fn minimum(&self) -> (usize, u64) {
        for budget in 0..=self.cover.len() {
            if let Some(chosen) = self.search(0, 0, budget) {
                return (budget, chosen);
            }
        }
        unreachable!("choosing every vertex covers an isolate-free graph")
    }

    fn search(&self, covered: u64, chosen: u64, budget: usize) -> Option<u64> {
        let uncovered = self.full & !covered;
        if uncovered == 0 {
            return Some(chosen);
        }
        if budget == 0 {
            return None;
        }
        let best_gain = self
            .cover
            .iter()
            .map(|c| (c & uncovered).count_ones() as usize)
            .max()
            .unwrap_or(0);
        if best_gain * budget < uncovered.count_ones() as usize {
            return None;
        }
        let v = uncovered.trailing_zeros() as usize;
        let mut candidates = self.cover[v];
        while candidates != 0 {
            let u = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            if let Some(found) = self.search(covered | self.cover[u], chosen | 1 << u, budget - 1) {
                return Some(found);
            }
        }
        None
    }
}

pub fn exact_gamma(g: &Graph, cap: usize) -> Result<DominationCertificate, DominationError> {
    check_cap(g, cap)?;
    let cover = closed_masks(g);
    let (value, chosen) = CoverSearch { cover: &cover, full: full_mask(g.order()) }.minimum();
    Ok(DominationCertificate {
        kind: DominationKind::Gamma,
        value,
        witness: VertexSet::from_mask(g.order(), chosen),
    })
}

pub fn exact_gamma_total(g: &Graph, cap: usize) -> Result<DominationCertificate, DominationError> {
    if let Some(vertex) = g.first_isolated_vertex() {
        return Err(DominationError::IsolatedVertex { vertex });
    }
    check_cap(g, cap)?;
    let cover = open_masks(g);
    let (value, chosen) = CoverSearch { cover: &cover, full: full_mask(g.order()) }.minimum();
    Ok(DominationCertificate {
        kind: DominationKind::GammaTotal,
        value,
        witness: VertexSet::from_mask(g.order(), chosen),
    })
}

pub fn is_gamma2_graph_exact(g: &Graph, cap: usize) -> Result<bool, DominationError> {
    let gamma_t = exact_gamma_total(g, cap)?;
    let gamma = exact_gamma(g, cap)?;
    Ok(gamma_t.value == 2 * gamma.value)
}

/// Lists every dominating set of size `γ(G)`, in ascending lexicographic
/// order of their sorted members. At most `list_cap` sets are kept.
pub fn enumerate_gamma_sets(
    g: &Graph,
    cap: usize,
    list_cap: usize,
) -> Result<GammaSetEnumeration, DominationError> {
    let gamma = exact_gamma(g, cap)?.value;
    let n = g.order();
    let cover = closed_masks(g);
    // reach[s] = vertices coverable by members with id >= s
    let mut reach = vec![0u64; n + 1];
    for s in (0..n).rev() {
        reach[s] = reach[s + 1] | cover[s];
    }
    let mut walk = SubsetWalk {
        cover: &cover,
        reach: &reach,
        full: full_mask(n),
        n,
        count: 0,
        sets: Vec::new(),
        list_cap,
    };
    walk.visit(0, 0, 0, gamma);
    Ok(GammaSetEnumeration {
        gamma,
        count: walk.count,
        truncated: walk.count > walk.sets.len() as u64,
        sets: walk.sets.into_iter().map(|m| VertexSet::from_mask(n, m)).collect(),
    })
}

struct SubsetWalk<'a> {
    cover: &'a [u64],
    reach: &'a [u64],
    full: u64,
    n: usize,
    count: u64,
    sets: Vec<u64>,
    list_cap: usize,
}

impl SubsetWalk<'_> {
    fn visit(&mut self, start: usize, covered: u64, chosen: u64, budget: usize) {
        let uncovered = self.full & !covered;
        if budget == 0 {
            if uncovered == 0 {
                self.count += 1;
                if self.sets.len() < self.list_cap {
                    self.sets.push(chosen);
                }
            }
            return;
        }
        if uncovered & !self.reach[start] != 0 {
            return;
        }
        for u in start..=self.n - budget {
            self.visit(u + 1, covered | self.cover[u], chosen | 1 << u, budget - 1);
        }
    }
}
