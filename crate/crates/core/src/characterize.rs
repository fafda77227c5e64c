//! Decision procedures for `γ_t(G) = 2γ(G)`.
//!
//! The main classifier applies to graphs with no induced `C6`, `H1` or `H2`:
//! on those graphs the identity holds exactly when a set made of one
//! representative per true-twin class of special vertices is both a packing
//! and a dominating set. Chordal graphs qualify without a pattern search.
//! Triangle-free and `C6`-free graphs (trees in particular) reduce to the
//! support vertices, and connected block graphs with at least two blocks to
//! the `d1 ∪ d2` cut vertices of the block decomposition.
//!
//! Every verdict carries a concrete certificate: a packing violation, an
//! undominated vertex, or an induced forbidden pattern.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::domination::{
    enumerate_gamma_sets, exact_gamma, exact_gamma_total, is_gamma2_graph_exact, packing_violation,
    undominated_vertex, DominationError, DEFAULT_ORACLE_CAP,
};
use crate::forbidden::{find_induced, girth, is_chordal, is_free, Embedding, Pattern};
use crate::graph::{Graph, Vertex};
use crate::set::VertexSet;
use crate::structure::{blocks_and_cut_vertices, is_block_graph, s_set, support_vertices, SpecialSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    #[serde(rename = "main_theorem")]
    MainTheorem,
    #[serde(rename = "chordal_fast_path")]
    ChordalFastPath,
    #[serde(rename = "c3c6_free")]
    C3C6Free,
    #[serde(rename = "tree")]
    Tree,
    #[serde(rename = "block_graph")]
    BlockGraph,
    #[serde(rename = "exact_oracle")]
    ExactOracle,
}

impl Method {
    /// Whether the verdict comes from a structural characterization rather
    /// than exhaustive search.
    pub fn is_characterization(self) -> bool {
        self != Method::ExactOracle
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "is_gamma2")]
    IsGamma2,
    #[serde(rename = "not_gamma2")]
    NotGamma2,
    #[serde(rename = "unknown")]
    Unknown,
}

impl Verdict {
    pub fn from_bool(holds: bool) -> Verdict {
        if holds {
            Verdict::IsGamma2
        } else {
            Verdict::NotGamma2
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::IsGamma2 => "is_gamma2",
            Verdict::NotGamma2 => "not_gamma2",
            Verdict::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fallback {
    None,
    Oracle,
}

impl std::str::FromStr for Fallback {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Fallback::None),
            "oracle" => Ok(Fallback::Oracle),
            other => Err(format!("unknown fallback `{other}` (expected oracle or none)")),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    pub fallback: Fallback,
    pub oracle_cap: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { fallback: Fallback::None, oracle_cap: DEFAULT_ORACLE_CAP }
    }
}

impl ClassifyOptions {
    pub fn with_oracle() -> Self {
        ClassifyOptions { fallback: Fallback::Oracle, ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("total domination is undefined: vertex {vertex} is isolated")]
    IsolatedVertex { vertex: Vertex },
    #[error("graph contains an induced {} at {:?}", .witness.pattern, .witness.mapping)]
    NotEligible { witness: Embedding },
    #[error(transparent)]
    Domination(#[from] DominationError),
    #[error("input is not a tree of order at least 2")]
    NotATree,
    #[error("input is not a connected block graph with at least two blocks: {0}")]
    NotABlockGraph(&'static str),
    #[error("graph is not a (gamma_t, 2 gamma)-graph, so the gamma-set count formula does not apply")]
    NotGamma2,
    #[error("gamma-set count overflows u128")]
    CountOverflow,
    #[error("neither the characterization nor the oracle applies: {0}")]
    Undecided(String),
}

/// Outcome of one classification.
///
/// `elapsed` is kept out of the serialized form so that reports of the same
/// input serialize identically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationReport {
    pub method: Method,
    pub eligible: bool,
    pub verdict: Verdict,
    pub s_set: Option<SpecialSet>,
    pub packing_ok: Option<bool>,
    pub packing_violation: Option<(Vertex, Vertex)>,
    pub dominating_ok: Option<bool>,
    pub uncovered_vertex: Option<Vertex>,
    pub implied_gamma: Option<usize>,
    pub implied_gamma_t: Option<usize>,
    pub gamma_set_count: Option<u128>,
    pub witness_embedding: Option<Embedding>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ClassificationReport {
    pub fn elapsed_micros(&self) -> u64 {
        self.elapsed.as_micros().min(u64::MAX as u128) as u64
    }
}

struct SetCheck {
    violation: Option<(Vertex, Vertex)>,
    uncovered: Option<Vertex>,
}

impl SetCheck {
    fn run(g: &Graph, set: &VertexSet) -> SetCheck {
        SetCheck { violation: packing_violation(g, set), uncovered: undominated_vertex(g, set) }
    }

    fn holds(&self) -> bool {
        self.violation.is_none() && self.uncovered.is_none()
    }
}

/// Report for a characterization whose candidate set is `candidate` and
/// whose special-vertex classes are `classes`.
fn characterization_report(
    g: &Graph,
    method: Method,
    candidate: &VertexSet,
    classes: SpecialSet,
    started: Instant,
) -> ClassificationReport {
    let check = SetCheck::run(g, candidate);
    let holds = check.holds();
    let k = candidate.len();
    ClassificationReport {
        method,
        eligible: true,
        verdict: Verdict::from_bool(holds),
        packing_ok: Some(check.violation.is_none()),
        packing_violation: check.violation,
        dominating_ok: Some(check.uncovered.is_none()),
        uncovered_vertex: check.uncovered,
        implied_gamma: holds.then_some(k),
        implied_gamma_t: holds.then_some(2 * k),
        gamma_set_count: if holds { classes.selection_count() } else { None },
        s_set: Some(classes),
        witness_embedding: None,
        elapsed: started.elapsed(),
    }
}

fn require_isolate_free(g: &Graph) -> Result<(), ClassifyError> {
    match g.first_isolated_vertex() {
        Some(vertex) => Err(ClassifyError::IsolatedVertex { vertex }),
        None => Ok(()),
    }
}

/// The general classifier: eligibility (chordality, else a search for
/// induced `C6`, `H1`, `H2`), then the packing and domination test on the
/// minimum-id representatives of the special twin classes.
///
/// Ineligible graphs get verdict `unknown`, or an exact answer when
/// `options.fallback` is [`Fallback::Oracle`].
pub fn classify_main(g: &Graph, options: &ClassifyOptions) -> Result<ClassificationReport, ClassifyError> {
    let started = Instant::now();
    require_isolate_free(g)?;

    let (method, witness) = if is_chordal(g) {
        (Method::ChordalFastPath, None)
    } else {
        (Method::MainTheorem, is_free(g, &Pattern::eligibility_set()).1)
    };

    let special = s_set(g);
    let representatives = special.representatives.clone();
    let Some(witness) = witness else {
        return Ok(characterization_report(g, method, &representatives, special, started));
    };

    let check = SetCheck::run(g, &representatives);
    let mut report = ClassificationReport {
        method,
        eligible: false,
        verdict: Verdict::Unknown,
        s_set: Some(special),
        packing_ok: Some(check.violation.is_none()),
        packing_violation: check.violation,
        dominating_ok: Some(check.uncovered.is_none()),
        uncovered_vertex: check.uncovered,
        implied_gamma: None,
        implied_gamma_t: None,
        gamma_set_count: None,
        witness_embedding: Some(witness),
        elapsed: Duration::ZERO,
    };
    if options.fallback == Fallback::Oracle {
        let gamma = exact_gamma(g, options.oracle_cap)?;
        let gamma_t = exact_gamma_total(g, options.oracle_cap)?;
        let count = enumerate_gamma_sets(g, options.oracle_cap, 0)?.count;
        report.method = Method::ExactOracle;
        report.verdict = Verdict::from_bool(gamma_t.value == 2 * gamma.value);
        report.implied_gamma = Some(gamma.value);
        report.implied_gamma_t = Some(gamma_t.value);
        report.gamma_set_count = Some(count as u128);
    }
    report.elapsed = started.elapsed();
    Ok(report)
}

/// Classifier for graphs with no triangle and no induced `C6`: the identity
/// holds iff the support vertices form a packing and a dominating set.
pub fn classify_c3c6_free(g: &Graph) -> Result<ClassificationReport, ClassifyError> {
    let started = Instant::now();
    require_isolate_free(g)?;
    if let (false, Some(witness)) = is_free(g, &[Pattern::c3(), Pattern::c6()]) {
        return Err(ClassifyError::NotEligible { witness });
    }
    let support = support_vertices(g);
    let special = s_set(g);
    debug_assert_eq!(special.representatives, support, "support vertices form the special set");
    Ok(characterization_report(g, Method::C3C6Free, &support, special, started))
}

fn is_tree(g: &Graph) -> bool {
    g.order() >= 2 && g.edge_count() == g.order() - 1 && g.is_connected()
}

/// Trees: the identity holds iff the support vertices form a packing and a
/// dominating set.
pub fn classify_tree(g: &Graph) -> Result<ClassificationReport, ClassifyError> {
    if !is_tree(g) {
        return Err(ClassifyError::NotATree);
    }
    let mut report = classify_c3c6_free(g)?;
    report.method = Method::Tree;
    Ok(report)
}

/// Connected block graphs with at least two blocks: the identity holds iff
/// `d1 ∪ d2` is a packing and a dominating set.
///
/// On these graphs `d1 ∪ d2` is exactly the set of special vertices and no
/// cut vertex has a true twin, so the minimum dominating set is unique
/// whenever the test passes; uniqueness is not checked separately.
pub fn classify_block_graph(g: &Graph) -> Result<ClassificationReport, ClassifyError> {
    let started = Instant::now();
    if !g.is_connected() || g.order() == 0 {
        return Err(ClassifyError::NotABlockGraph("graph is disconnected"));
    }
    if !is_block_graph(g) {
        return Err(ClassifyError::NotABlockGraph("some block is not a clique"));
    }
    let decomposition = blocks_and_cut_vertices(g);
    if decomposition.blocks.len() < 2 {
        return Err(ClassifyError::NotABlockGraph("fewer than two blocks"));
    }
    let d = decomposition.d1_union_d2();
    Ok(characterization_report(
        g,
        Method::BlockGraph,
        &d,
        SpecialSet::from_singletons(d.clone()),
        started,
    ))
}

/// Checks, on one graph, that a `(γ_t, 2γ)`-graph of minimum degree at least
/// two has girth at most six and an induced `C3` or `C6`.
///
/// Returns `Ok(true)` when the implication holds (vacuously when the
/// minimum degree is below two). Graphs above the oracle cap are decided by
/// the classifier, and must then be eligible.
pub fn check_girth_corollary(g: &Graph, oracle_cap: usize) -> Result<bool, ClassifyError> {
    if g.order() == 0 || g.min_degree() < 2 {
        return Ok(true);
    }
    let gamma2 = if g.order() <= oracle_cap.min(crate::domination::MAX_ORACLE_CAP) {
        is_gamma2_graph_exact(g, oracle_cap)?
    } else {
        match classify_main(g, &ClassifyOptions { fallback: Fallback::None, oracle_cap })?.verdict {
            Verdict::IsGamma2 => true,
            Verdict::NotGamma2 => false,
            Verdict::Unknown => {
                return Err(ClassifyError::Undecided(format!(
                    "{} vertices exceed the oracle cap and the graph is ineligible",
                    g.order()
                )))
            }
        }
    };
    if !gamma2 {
        return Ok(true);
    }
    let short = girth(g).is_some_and(|len| len <= 6);
    let induced = find_induced(g, &Pattern::c3()).is_some() || find_induced(g, &Pattern::c6()).is_some();
    Ok(short && induced)
}

/// Number of minimum dominating sets of an eligible `(γ_t, 2γ)`-graph: the
/// product of the twin-class sizes of its special vertices.
pub fn count_gamma_sets_formula(g: &Graph) -> Result<u128, ClassifyError> {
    let report = classify_main(g, &ClassifyOptions::default())?;
    if let Some(witness) = report.witness_embedding {
        return Err(ClassifyError::NotEligible { witness });
    }
    if report.verdict != Verdict::IsGamma2 {
        return Err(ClassifyError::NotGamma2);
    }
    report
        .s_set
        .expect("eligible reports carry the special set")
        .selection_count()
        .ok_or(ClassifyError::CountOverflow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::enumerate_gamma_sets;
    use crate::forbidden::PatternName;
    use crate::generators::{
        complete, corona_p2, cycle, fixture, path, random_block_graph, random_tree, star, FixtureName,
    };

    fn two_triangles() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap()
    }

    fn oracle(g: &Graph) -> (usize, usize) {
        (exact_gamma(g, 32).unwrap().value, exact_gamma_total(g, 32).unwrap().value)
    }

    #[test]
    fn star_is_gamma2_via_chordal_path() {
        let r = classify_main(&star(3), &ClassifyOptions::default()).unwrap();
        assert_eq!(r.method, Method::ChordalFastPath);
        assert_eq!(r.verdict, Verdict::IsGamma2);
        assert_eq!(r.s_set.as_ref().unwrap().representatives.to_vec(), vec![0]);
        assert_eq!((r.implied_gamma, r.implied_gamma_t), (Some(1), Some(2)));
        assert_eq!(r.gamma_set_count, Some(1));
    }

    #[test]
    fn path4_fails_packing() {
        let r = classify_main(&path(4), &ClassifyOptions::default()).unwrap();
        assert!(r.eligible);
        assert_eq!(r.verdict, Verdict::NotGamma2);
        assert_eq!(r.packing_violation, Some((1, 2)));
        assert_eq!(oracle(&path(4)), (2, 2));
    }

    #[test]
    fn two_triangles_is_gamma2() {
        let g = two_triangles();
        let r = classify_main(&g, &ClassifyOptions::default()).unwrap();
        assert_eq!(r.method, Method::ChordalFastPath);
        assert_eq!(r.s_set.as_ref().unwrap().representatives.to_vec(), vec![2]);
        assert_eq!(r.verdict, Verdict::IsGamma2);
        assert_eq!((r.implied_gamma, r.implied_gamma_t), (Some(1), Some(2)));
        assert_eq!(oracle(&g), (1, 2));
    }

    #[test]
    fn c6_needs_the_oracle() {
        let c6 = cycle(6);
        let r = classify_main(&c6, &ClassifyOptions::default()).unwrap();
        assert!(!r.eligible);
        assert_eq!(r.verdict, Verdict::Unknown);
        assert_eq!(r.witness_embedding.as_ref().unwrap().pattern, PatternName::C6);
        let r = classify_main(&c6, &ClassifyOptions::with_oracle()).unwrap();
        assert_eq!(r.method, Method::ExactOracle);
        assert_eq!(r.verdict, Verdict::IsGamma2);
        assert_eq!((r.implied_gamma, r.implied_gamma_t), (Some(2), Some(4)));
    }

    #[test]
    fn fig1_is_ineligible_and_not_gamma2() {
        let g = fixture(FixtureName::Fig1);
        let r = classify_main(&g, &ClassifyOptions::default()).unwrap();
        assert!(!r.eligible);
        assert_eq!(r.witness_embedding.as_ref().unwrap().pattern, PatternName::C6);
        let r = classify_main(&g, &ClassifyOptions::with_oracle()).unwrap();
        assert_eq!(r.verdict, Verdict::NotGamma2);
        assert_eq!((r.implied_gamma, r.implied_gamma_t), (Some(2), Some(3)));
    }

    #[test]
    fn isolated_vertices_are_rejected() {
        let g = Graph::empty(1).disjoint_union(&complete(2));
        assert_eq!(
            classify_main(&g, &ClassifyOptions::default()),
            Err(ClassifyError::IsolatedVertex { vertex: 0 })
        );
    }

    #[test]
    fn fallback_respects_oracle_cap() {
        let g = corona_p2(&cycle(6)).disjoint_union(&cycle(6)).disjoint_union(&corona_p2(&cycle(4)));
        let opts = ClassifyOptions { fallback: Fallback::Oracle, oracle_cap: 16 };
        assert!(matches!(
            classify_main(&g, &opts),
            Err(ClassifyError::Domination(DominationError::OracleCap { .. }))
        ));
    }

    #[test]
    fn c3c6_free_examples() {
        let r = classify_c3c6_free(&complete(2)).unwrap();
        assert_eq!(r.verdict, Verdict::IsGamma2);
        assert_eq!((r.implied_gamma, r.implied_gamma_t), (Some(1), Some(2)));

        // star K1,3 with every edge subdivided: the three middles share the center
        let spider = Graph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]).unwrap();
        let r = classify_c3c6_free(&spider).unwrap();
        assert_eq!(r.s_set.as_ref().unwrap().representatives.to_vec(), vec![1, 2, 3]);
        assert_eq!(r.verdict, Verdict::NotGamma2);
        assert_eq!(r.packing_violation, Some((1, 2)));
        let (gamma, gamma_t) = oracle(&spider);
        assert_ne!(gamma_t, 2 * gamma);

        let corona = corona_p2(&path(4));
        let r = classify_c3c6_free(&corona).unwrap();
        assert_eq!(r.verdict, Verdict::IsGamma2);
        assert_eq!(oracle(&corona), (4, 8));

        assert!(matches!(classify_c3c6_free(&cycle(6)), Err(ClassifyError::NotEligible { .. })));
        assert!(matches!(classify_c3c6_free(&complete(3)), Err(ClassifyError::NotEligible { .. })));
    }

    #[test]
    fn tree_examples() {
        assert_eq!(classify_tree(&path(2)).unwrap().verdict, Verdict::IsGamma2);
        assert_eq!(classify_tree(&path(4)).unwrap().verdict, Verdict::NotGamma2);
        let r = classify_tree(&path(6)).unwrap();
        assert_eq!(r.method, Method::Tree);
        assert_eq!(r.s_set.as_ref().unwrap().representatives.to_vec(), vec![1, 4]);
        assert_eq!(r.verdict, Verdict::IsGamma2);
        assert_eq!(oracle(&path(6)), (2, 4));
        assert_eq!(classify_tree(&cycle(5)), Err(ClassifyError::NotATree));
        assert_eq!(classify_tree(&path(1)), Err(ClassifyError::NotATree));
    }

    #[test]
    fn block_graph_examples() {
        let r = classify_block_graph(&two_triangles()).unwrap();
        assert_eq!(r.s_set.as_ref().unwrap().representatives.to_vec(), vec![2]);
        assert_eq!(r.verdict, Verdict::IsGamma2);

        let r = classify_block_graph(&path(4)).unwrap();
        assert_eq!(r.s_set.as_ref().unwrap().representatives.to_vec(), vec![1, 2]);
        assert_eq!(r.verdict, Verdict::NotGamma2);

        // triangle 0-1-2 with pendants 3, 4, 5
        let k3_pendants =
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (2, 5)]).unwrap();
        let r = classify_block_graph(&k3_pendants).unwrap();
        assert_eq!(r.s_set.as_ref().unwrap().representatives.to_vec(), vec![0, 1, 2]);
        assert_eq!(r.verdict, Verdict::NotGamma2);
        assert_eq!(oracle(&k3_pendants), (3, 3));

        assert!(classify_block_graph(&cycle(6)).is_err());
        assert!(classify_block_graph(&complete(4)).is_err());
        assert!(classify_block_graph(&path(3).disjoint_union(&path(3))).is_err());
    }

    #[test]
    fn random_block_graph_agrees_with_oracle() {
        let g = random_block_graph(5, 4, 7);
        let r = classify_block_graph(&g).unwrap();
        assert_eq!(r.verdict == Verdict::IsGamma2, is_gamma2_graph_exact(&g, 32).unwrap());
    }

    #[test]
    fn short_cycle_examples() {
        assert!(check_girth_corollary(&cycle(6), 32).unwrap());
        assert!(check_girth_corollary(&complete(3), 32).unwrap());
        assert!(check_girth_corollary(&random_tree(9, 4), 32).unwrap());
        assert!(is_gamma2_graph_exact(&complete(3), 32).unwrap());
    }

    #[test]
    fn gamma_set_count_formula_examples() {
        for n in 2..7 {
            assert_eq!(count_gamma_sets_formula(&complete(n)).unwrap(), n as u128);
        }
        assert_eq!(count_gamma_sets_formula(&star(3)).unwrap(), 1);

        // fig1 without v7, v8
        let fig1 = fixture(FixtureName::Fig1);
        let g = fig1.induced_subgraph(&fig1.set_of(0..6));
        assert!(is_chordal(&g));
        assert_eq!(count_gamma_sets_formula(&g).unwrap(), 2);
        assert_eq!(enumerate_gamma_sets(&g, 32, 10).unwrap().count, 2);

        assert_eq!(count_gamma_sets_formula(&path(4)), Err(ClassifyError::NotGamma2));
        assert!(matches!(count_gamma_sets_formula(&cycle(6)), Err(ClassifyError::NotEligible { .. })));
    }

    #[test]
    fn report_json_field_names() {
        let r = classify_main(&star(3), &ClassifyOptions::default()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in [
            "method", "eligible", "verdict", "sSet", "packingViolation", "uncoveredVertex",
            "impliedGamma", "impliedGammaT", "gammaSetCount", "witnessEmbedding",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert!(v.get("elapsed").is_none());
        assert_eq!(v["method"], "chordal_fast_path");
        assert_eq!(v["verdict"], "is_gamma2");
    }
}
