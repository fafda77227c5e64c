//! Exhaustive verification driver.
//!
//! Every graph is decided twice, once by a classifier and once by the exact
//! solvers, and the structural claims relating the two are checked on it.
//! Graphs are fanned out over a rayon pool; results come back in input order.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::characterize::{ClassificationReport, ClassifyError, Verdict};
use crate::domination::{
    enumerate_gamma_sets, exact_gamma, exact_gamma_total, is_dominating, is_packing, DominationError,
};
use crate::forbidden::{find_induced, girth, is_chordal, is_free, Pattern};
use crate::generators::{
    corona_p2, enumerate_small_graphs, graph_from_mask, GeneratorError, GraphFilter, MAX_ENUMERATION_ORDER,
};
use crate::graph::Graph;
use crate::io::to_graph6;
use crate::set::VertexSet;
use crate::structure::{s_set, support_vertices, tdm_partition};

/// Classifier under test. Injectable so the driver can be shown to catch a
/// broken one.
pub type Classifier = dyn Fn(&Graph) -> Result<ClassificationReport, ClassifyError> + Sync;

/// Largest order for which minimum dominating sets are cross-checked
/// against a plain walk over all subsets of size γ.
const NAIVE_LISTING_MAX_ORDER: usize = 20;

/// Largest base order used by the corona extremality check.
pub const CORONA_MAX_BASE_ORDER: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// On graphs with no induced C6, H1, H2 the classifier verdict matches
    /// the exact test `γ_t = 2γ`.
    Equivalence,
    /// On every graph, an S-set that is a packing and dominating forces
    /// `γ_t = 2γ`.
    Sufficiency,
    /// On eligible graphs with `γ_t = 2γ`, the S-set is a packing and
    /// dominating.
    Necessity,
    /// When `γ_t = 2γ`, the minimum dominating sets are exactly the
    /// dominating packings of size γ.
    GammaSets,
    /// When `γ_t = 2γ` on an eligible graph, the number of minimum
    /// dominating sets is the product of the special twin-class sizes; it
    /// is one iff every class is a singleton.
    GammaSetCount,
    /// `γ ≤ γ_t ≤ 2γ`, and `γ_t ≤ 2n/3` for connected graphs with `n ≥ 3`.
    Bounds,
    /// Coronas `H∘P2` of small connected `H` attain `γ_t = 2n/3`.
    Corona,
    /// `γ_t = 2γ` and minimum degree two imply girth at most six and an
    /// induced C3 or C6.
    Girth,
    /// Chordal graphs have no induced C6, H1, H2.
    Chordal,
    /// Neighborhood partitions cover `N[v]`; without triangles and induced
    /// C6 the special vertices are the support vertices.
    Structure,
}

impl Claim {
    pub const ALL: [Claim; 10] = [
        Claim::Equivalence,
        Claim::Sufficiency,
        Claim::Necessity,
        Claim::GammaSets,
        Claim::GammaSetCount,
        Claim::Bounds,
        Claim::Corona,
        Claim::Girth,
        Claim::Chordal,
        Claim::Structure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Claim::Equivalence => "equivalence",
            Claim::Sufficiency => "sufficiency",
            Claim::Necessity => "necessity",
            Claim::GammaSets => "gamma-sets",
            Claim::GammaSetCount => "gamma-set-count",
            Claim::Bounds => "bounds",
            Claim::Corona => "corona",
            Claim::Girth => "girth",
            Claim::Chordal => "chordal",
            Claim::Structure => "structure",
        }
    }

    /// Comma-separated claim names; `all` selects everything.
    pub fn parse_list(list: &str) -> Result<Vec<Claim>, String> {
        let mut claims = Vec::new();
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if item == "all" {
                return Ok(Claim::ALL.to_vec());
            }
            let claim = item.parse()?;
            if !claims.contains(&claim) {
                claims.push(claim);
            }
        }
        if claims.is_empty() {
            return Err("empty claim list".into());
        }
        claims.sort();
        Ok(claims)
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Claim {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Claim::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown claim `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Violation {
    pub claim: Claim,
    pub graph6: String,
    pub detail: String,
}

/// Per-order tallies.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OrderTally {
    pub n: usize,
    pub graphs: u64,
    pub eligible: u64,
    pub gamma2: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepSummary {
    pub claims: Vec<Claim>,
    pub graphs_checked: u64,
    /// Input graphs not checked: isolated vertices or above the oracle cap.
    pub graphs_skipped: u64,
    pub by_order: Vec<OrderTally>,
    pub corona_graphs_checked: u64,
    pub violations: Vec<Violation>,
}

impl SweepSummary {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations_of(&self, claim: Claim) -> usize {
        self.violations.iter().filter(|v| v.claim == claim).count()
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub claims: Vec<Claim>,
    pub oracle_cap: usize,
    /// Worker count; `None` uses rayon's default.
    pub jobs: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            claims: Claim::ALL.to_vec(),
            oracle_cap: crate::domination::DEFAULT_ORACLE_CAP,
            jobs: None,
        }
    }
}

impl SweepConfig {
    fn wants(&self, claim: Claim) -> bool {
        self.claims.contains(&claim)
    }

    fn run<R: Send>(&self, work: impl FnOnce() -> R + Send) -> R {
        match self.jobs {
            Some(jobs) => rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .expect("thread pool")
                .install(work),
            None => work(),
        }
    }
}

/// What one graph contributed.
#[derive(Debug, Default)]
struct Outcome {
    eligible: bool,
    gamma2: bool,
    violations: Vec<Violation>,
}

struct Checker<'a> {
    g: &'a Graph,
    config: &'a SweepConfig,
    outcome: Outcome,
}

impl Checker<'_> {
    fn expect(&mut self, claim: Claim, holds: bool, detail: impl FnOnce() -> String) {
        if self.config.wants(claim) && !holds {
            self.outcome.violations.push(Violation { claim, graph6: to_graph6(self.g), detail: detail() });
        }
    }
}

/// Runs every selected per-graph claim on one isolate-free graph.
fn check_graph(g: &Graph, config: &SweepConfig, classify: &Classifier) -> Result<Outcome, DominationError> {
    let gamma = exact_gamma(g, config.oracle_cap)?.value;
    let gamma_t = exact_gamma_total(g, config.oracle_cap)?.value;
    let gamma2 = gamma_t == 2 * gamma;
    let n = g.order();

    let mut c = Checker { g, config, outcome: Outcome { gamma2, ..Outcome::default() } };

    c.expect(Claim::Bounds, gamma <= gamma_t && gamma_t <= 2 * gamma, || {
        format!("gamma {gamma}, gamma_t {gamma_t}")
    });
    if g.is_connected() && n >= 3 {
        c.expect(Claim::Bounds, 3 * gamma_t <= 2 * n, || format!("gamma_t {gamma_t} on {n} vertices"));
    }

    let special = s_set(g);
    let (packing, pair) = is_packing(g, &special.representatives);
    let dominating = is_dominating(g, &special.representatives);
    c.expect(Claim::Sufficiency, !(packing && dominating) || gamma2, || {
        format!("S-set {:?} is a dominating packing but (gamma, gamma_t) = ({gamma}, {gamma_t})", special.representatives)
    });

    let pattern_free = is_free(g, &Pattern::eligibility_set()).0;
    c.expect(Claim::Chordal, !is_chordal(g) || pattern_free, || "chordal graph contains a pattern".into());

    match classify(g) {
        Err(e) => c.expect(Claim::Equivalence, false, || format!("classifier failed: {e}")),
        Ok(report) => {
            c.outcome.eligible = report.eligible;
            c.expect(Claim::Equivalence, report.eligible == pattern_free, || {
                format!("classifier eligibility {} but pattern search says {}", report.eligible, pattern_free)
            });
            if report.eligible {
                c.expect(Claim::Equivalence, report.verdict == Verdict::from_bool(gamma2), || {
                    format!("verdict {} but (gamma, gamma_t) = ({gamma}, {gamma_t})", report.verdict.as_str())
                });
                if gamma2 {
                    c.expect(Claim::Necessity, packing && dominating, || {
                        format!("packing violation {pair:?}, dominating {dominating}")
                    });
                }
            }
            if report.eligible && gamma2 && config.wants(Claim::GammaSetCount) {
                let count = enumerate_gamma_sets(g, config.oracle_cap, 0)?.count as u128;
                c.expect(Claim::GammaSetCount, report.gamma_set_count == Some(count), || {
                    format!("formula {:?} but {count} minimum dominating sets", report.gamma_set_count)
                });
                c.expect(Claim::GammaSetCount, (count == 1) == special.all_classes_singletons(), || {
                    format!("{count} minimum dominating sets, classes {:?}", special.classes)
                });
            }
        }
    }

    if gamma2 && config.wants(Claim::GammaSets) {
        let listing = enumerate_gamma_sets(g, config.oracle_cap, usize::MAX)?;
        for set in &listing.sets {
            let (ok, pair) = is_packing(g, set);
            c.expect(Claim::GammaSets, ok, || format!("minimum dominating set {set:?} overlaps at {pair:?}"));
        }
        if n <= NAIVE_LISTING_MAX_ORDER {
            let naive = dominating_packings_of_size(g, gamma);
            let mut listed = listing.sets.clone();
            listed.sort();
            c.expect(Claim::GammaSets, listed == naive, || {
                format!("minimum dominating sets {listed:?} but dominating packings {naive:?}")
            });
        }
    }

    if gamma2 && g.min_degree() >= 2 {
        let short = girth(g).is_some_and(|len| len <= 6);
        let induced = find_induced(g, &Pattern::c3()).is_some() || find_induced(g, &Pattern::c6()).is_some();
        c.expect(Claim::Girth, short && induced, || format!("girth {:?}, induced C3 or C6: {induced}", girth(g)));
    }

    if config.wants(Claim::Structure) {
        check_structure(&mut c);
    }

    Ok(c.outcome)
}

fn check_structure(c: &mut Checker<'_>) {
    let g = c.g;
    for v in g.vertices() {
        let p = tdm_partition(g, v).expect("vertex in range");
        let closed = g.closed_neighborhood(v).expect("vertex in range");
        let disjoint = p.twins.is_disjoint(&p.dominated)
            && p.twins.is_disjoint(&p.mixed)
            && p.dominated.is_disjoint(&p.mixed);
        let cover = p.twins.union(&p.dominated).union(&p.mixed) == closed;
        c.expect(Claim::Structure, disjoint && cover, || format!("partition of N[{v}] is {p:?}"));
    }
    if is_free(g, &[Pattern::c3(), Pattern::c6()]).0 {
        let special = s_set(g);
        let support = support_vertices(g);
        let k2_class = |class: &VertexSet| {
            class.len() == 2 && class.iter().all(|u| g.degree(u) == 1)
        };
        let classes_ok = special.classes.iter().all(|class| class.len() == 1 || k2_class(class));
        c.expect(Claim::Structure, special.representatives == support && classes_ok, || {
            format!("special classes {:?}, support vertices {support:?}", special.classes)
        });
    }
}

/// Dominating packings of size `k`, each as a set, in ascending order;
/// found by walking every `k`-subset.
fn dominating_packings_of_size(g: &Graph, k: usize) -> Vec<VertexSet> {
    let n = g.order();
    let mut found = Vec::new();
    if k > n {
        return found;
    }
    if k == 0 {
        if n == 0 {
            found.push(VertexSet::new(0));
        }
        return found;
    }
    // Gosper's hack over masks with exactly k bits
    let mut mask: u64 = (1 << k) - 1;
    while mask < 1 << n {
        let set = VertexSet::from_mask(n, mask);
        if is_dominating(g, &set) && is_packing(g, &set).0 {
            found.push(set);
        }
        let low = mask & mask.wrapping_neg();
        let ripple = mask + low;
        mask = (((ripple ^ mask) >> 2) / low) | ripple;
    }
    found.sort();
    found
}

/// Checks that `H∘P2` attains `γ_t = 2n/3` for every connected labeled `H`
/// on `2..=max_base` vertices. Returns the number of coronas checked.
fn check_coronas(config: &SweepConfig, max_base: usize) -> (u64, Vec<Violation>) {
    let bases: Vec<Graph> = (2..=max_base.min(MAX_ENUMERATION_ORDER))
        .flat_map(|k| enumerate_small_graphs(k, GraphFilter::Connected).expect("small order"))
        .collect();
    let violations: Vec<Violation> = config.run(|| {
        bases
            .par_iter()
            .filter_map(|h| {
                let g = corona_p2(h);
                let gamma_t = exact_gamma_total(&g, config.oracle_cap.max(3 * max_base)).ok()?.value;
                (3 * gamma_t != 2 * g.order()).then(|| Violation {
                    claim: Claim::Corona,
                    graph6: to_graph6(&g),
                    detail: format!("gamma_t {gamma_t} on {} vertices", g.order()),
                })
            })
            .collect()
    });
    (bases.len() as u64, violations)
}

fn merge(
    config: &SweepConfig,
    outcomes: impl IntoIterator<Item = (usize, Option<Outcome>)>,
) -> SweepSummary {
    let mut summary = SweepSummary {
        claims: config.claims.clone(),
        graphs_checked: 0,
        graphs_skipped: 0,
        by_order: Vec::new(),
        corona_graphs_checked: 0,
        violations: Vec::new(),
    };
    for (n, outcome) in outcomes {
        let Some(outcome) = outcome else {
            summary.graphs_skipped += 1;
            continue;
        };
        if summary.by_order.len() <= n {
            summary.by_order.resize_with(n + 1, OrderTally::default);
        }
        let tally = &mut summary.by_order[n];
        tally.graphs += 1;
        tally.eligible += outcome.eligible as u64;
        tally.gamma2 += outcome.gamma2 as u64;
        summary.graphs_checked += 1;
        summary.violations.extend(outcome.violations);
    }
    for (n, tally) in summary.by_order.iter_mut().enumerate() {
        tally.n = n;
    }
    summary.by_order.retain(|t| t.graphs > 0);
    summary
}

fn add_coronas(config: &SweepConfig, summary: &mut SweepSummary) {
    if config.wants(Claim::Corona) {
        let (checked, violations) = check_coronas(config, CORONA_MAX_BASE_ORDER);
        summary.corona_graphs_checked = checked;
        summary.violations.extend(violations);
    }
}

/// Checks every labeled isolate-free graph on `1..=max_n` vertices, plus
/// the corona family when selected.
pub fn sweep_small_graphs(
    max_n: usize,
    config: &SweepConfig,
    classify: &Classifier,
) -> Result<SweepSummary, GeneratorError> {
    if max_n > MAX_ENUMERATION_ORDER {
        return Err(GeneratorError::TooLarge { n: max_n });
    }
    let mut outcomes = Vec::new();
    for n in 1..=max_n {
        let pairs = n * (n - 1) / 2;
        let batch: Vec<Option<Outcome>> = config.run(|| {
            (0u64..1 << pairs)
                .into_par_iter()
                .filter_map(|mask| {
                    let g = graph_from_mask(n, mask);
                    GraphFilter::IsolateFree
                        .accepts(&g)
                        .then(|| check_graph(&g, config, classify).ok())
                })
                .collect()
        });
        outcomes.extend(batch.into_iter().map(|o| (n, o)));
    }
    let mut summary = merge(config, outcomes);
    add_coronas(config, &mut summary);
    Ok(summary)
}

/// Checks a supplied list of graphs, skipping those with isolated vertices
/// or beyond the oracle cap. Violations are reported in input order.
pub fn sweep_graphs(graphs: &[Graph], config: &SweepConfig, classify: &Classifier) -> SweepSummary {
    let outcomes: Vec<(usize, Option<Outcome>)> = config.run(|| {
        graphs
            .par_iter()
            .map(|g| {
                let outcome = match g.first_isolated_vertex() {
                    Some(_) => None,
                    None => check_graph(g, config, classify).ok(),
                };
                (g.order(), outcome)
            })
            .collect()
    });
    let mut summary = merge(config, outcomes);
    add_coronas(config, &mut summary);
    summary
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characterize::{classify_main, ClassifyOptions};
    use crate::generators::{cycle, path};

    fn main_classifier(g: &Graph) -> Result<ClassificationReport, ClassifyError> {
        classify_main(g, &ClassifyOptions::default())
    }

    fn config(claims: &[Claim]) -> SweepConfig {
        SweepConfig { claims: claims.to_vec(), ..SweepConfig::default() }
    }

    #[test]
    fn claim_names_round_trip() {
        for claim in Claim::ALL {
            assert_eq!(claim.name().parse::<Claim>().unwrap(), claim);
        }
        assert_eq!(
            Claim::parse_list("bounds, equivalence,bounds").unwrap(),
            vec![Claim::Equivalence, Claim::Bounds]
        );
        assert_eq!(Claim::parse_list("all").unwrap().len(), Claim::ALL.len());
        assert!(Claim::parse_list("lemma").is_err());
        assert!(Claim::parse_list("").is_err());
    }

    #[test]
    fn gosper_walk_matches_filter() {
        let c6 = cycle(6);
        let sets: Vec<Vec<usize>> = dominating_packings_of_size(&c6, 2).iter().map(|s| s.to_vec()).collect();
        assert_eq!(sets, vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        let ends: Vec<Vec<usize>> = dominating_packings_of_size(&path(4), 2).iter().map(|s| s.to_vec()).collect();
        assert_eq!(ends, vec![vec![0, 3]]);
        assert!(dominating_packings_of_size(&path(4), 1).is_empty());
    }

    #[test]
    fn small_sweep_is_clean() {
        let summary = sweep_small_graphs(4, &SweepConfig::default(), &main_classifier).unwrap();
        assert!(summary.is_clean(), "{:?}", summary.violations);
        // isolate-free labeled graphs: 1 on two vertices, 4 on three, 41 on four
        let counts: Vec<(usize, u64)> = summary.by_order.iter().map(|t| (t.n, t.graphs)).collect();
        assert_eq!(counts, vec![(2, 1), (3, 4), (4, 41)]);
        assert_eq!(summary.graphs_checked, 46);
        assert_eq!(summary.corona_graphs_checked, 1 + 4 + 38 + 728);
    }

    #[test]
    fn corrupted_classifier_is_caught() {
        let flipped = |g: &Graph| {
            let mut r = classify_main(g, &ClassifyOptions::default())?;
            if r.verdict == Verdict::IsGamma2 {
                r.verdict = Verdict::NotGamma2;
            }
            Ok(r)
        };
        let summary = sweep_small_graphs(3, &config(&[Claim::Equivalence]), &flipped).unwrap();
        assert!(summary.violations_of(Claim::Equivalence) > 0);
        assert!(summary.violations.iter().all(|v| v.claim == Claim::Equivalence));
    }

    #[test]
    fn wrong_count_formula_is_caught() {
        let inflated = |g: &Graph| {
            let mut r = classify_main(g, &ClassifyOptions::default())?;
            r.gamma_set_count = r.gamma_set_count.map(|c| c + 1);
            Ok(r)
        };
        let summary = sweep_small_graphs(3, &config(&[Claim::GammaSetCount]), &inflated).unwrap();
        assert!(summary.violations_of(Claim::GammaSetCount) > 0);
    }

    #[test]
    fn supplied_graphs_keep_order_and_skip() {
        let graphs = vec![cycle(6), Graph::empty(2), path(4), cycle(5)];
        let summary = sweep_graphs(&graphs, &config(&[Claim::Bounds, Claim::Sufficiency]), &main_classifier);
        assert_eq!(summary.graphs_checked, 3);
        assert_eq!(summary.graphs_skipped, 1);
        assert!(summary.is_clean());
        assert_eq!(summary.corona_graphs_checked, 0);
    }

    #[test]
    fn explicit_job_count() {
        let cfg = SweepConfig { jobs: Some(2), claims: vec![Claim::Bounds], ..SweepConfig::default() };
        let summary = sweep_small_graphs(4, &cfg, &main_classifier).unwrap();
        assert_eq!(summary.graphs_checked, 46);
    }
}
