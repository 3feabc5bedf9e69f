//! Theorem verification: per-graph classification against a forbidden-set
//! hypothesis, exhaustive sufficiency scans, counterexample search and the
//! precedence-based prediction for forbidden pairs.
//!
//! Scans partition their source into chunks, classify chunks on the worker
//! pool and merge partial counts in chunk order, so reports are identical
//! for every worker count.

use std::fmt::{self, Write as _};
use std::io::BufRead;
use std::ops::RangeInclusive;

use serde::Serialize;
use thiserror::Error;

use crate::connectivity::{
    edge_connectivity, is_maximally_edge_connected, is_super_edge_connected,
    vertex_connectivity, CutWitness,
};
use crate::enumerate::{self, EnumError, EnumSpec, CLASSES_MAX};
use crate::families::{is_exception, registry_instances, ExceptionMode};
use crate::graph::Graph;
use crate::io::{encode_graph6, stream_decode, OnError, StreamError};
use crate::par::{self, Jobs};
use crate::patterns::{
    induced_subgraph_of, is_free, pair_precedes, path_pattern, Catalog, PairSpec, Pattern,
    PatternError,
};

pub const SCAN_SCHEMA: &str = "superedge.scan/1";
const GRAPH_CHUNK: usize = 256;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Stream(#[from] StreamError),
    #[error("pattern {member} is an induced subgraph of {bound}; pairs must avoid it")]
    MemberBelow { member: String, bound: String },
    #[error("theorem {0} needs a custom pattern named {1} (pass --pattern {1}=<graph6>)")]
    MissingPattern(String, String),
    #[error("unknown theorem {0:?} (expected 1.1, 1.2, 1.3, 1.4, 2.1, 2.2, 2.2i or 2.2ii)")]
    UnknownTheorem(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    SuperEdgeConnected,
    /// `lambda == delta`.
    MaximallyEdgeConnected,
    /// `kappa == lambda`.
    KappaEqualsLambda,
}

impl Conclusion {
    pub fn name(self) -> &'static str {
        match self {
            Conclusion::SuperEdgeConnected => "super-edge-connected",
            Conclusion::MaximallyEdgeConnected => "maximally-edge-connected",
            Conclusion::KappaEqualsLambda => "kappa-equals-lambda",
        }
    }

    /// Evaluates the predicate on a connected graph, returning a cut witness
    /// when a cut-based predicate fails.
    pub fn evaluate(self, g: &Graph) -> (bool, Option<CutWitness>) {
        if g.order() < 2 {
            return (true, None);
        }
        match self {
            Conclusion::SuperEdgeConnected => {
                is_super_edge_connected(g).expect("scanned graphs are connected")
            }
            Conclusion::MaximallyEdgeConnected => {
                is_maximally_edge_connected(g).expect("n >= 2")
            }
            Conclusion::KappaEqualsLambda => {
                let kappa = vertex_connectivity(g).expect("n >= 2");
                let (lambda, _) = edge_connectivity(g).expect("n >= 2");
                (kappa == lambda, None)
            }
        }
    }
}

/// Hypothesis (forbidden set plus exception list) and conclusion.
#[derive(Debug, Clone)]
pub struct TheoremSpec {
    pub name: String,
    pub pair: PairSpec,
    pub exceptions: Option<ExceptionMode>,
    pub conclusion: Conclusion,
}

impl TheoremSpec {
    /// Validates that no member is an induced subgraph of `bound` when one
    /// is given.
    pub fn new(
        name: impl Into<String>,
        pair: PairSpec,
        exceptions: Option<ExceptionMode>,
        conclusion: Conclusion,
        bound: Option<&Pattern>,
    ) -> Result<Self, HarnessError> {
        if let Some(bound) = bound {
            check_not_below(&pair, bound)?;
        }
        Ok(TheoremSpec {
            name: name.into(),
            pair,
            exceptions,
            conclusion,
        })
    }
}

fn check_not_below(pair: &PairSpec, bound: &Pattern) -> Result<(), HarnessError> {
    for m in pair.members() {
        if induced_subgraph_of(m, bound) {
            return Err(HarnessError::MemberBelow {
                member: m.name().to_string(),
                bound: bound.name().to_string(),
            });
        }
    }
    Ok(())
}

/// Resolves a theorem token into the scans it stands for.
///
/// `2.1`: P3-free implies super. `2.2i`/`2.2ii`: the two forbidden-pair
/// branches with their exception lists (`2.2` is both). `1.1`/`1.2`:
/// kappa = lambda for P3 and for the five maximal pairs. `1.3`/`1.4`:
/// lambda = delta for P4 and for the maximal pairs; the `{H1, P5}` branch of
/// `1.4` runs only when a custom `H1` is registered.
pub fn theorem(token: &str, catalog: &Catalog) -> Result<Vec<TheoremSpec>, HarnessError> {
    use Conclusion::*;
    let p3 = path_pattern(3);
    let p4 = path_pattern(4);
    let pair = |s: &str| catalog.pair(s);
    let spec = |suffix: &str, p: PairSpec, ex, c, bound: Option<&Pattern>| {
        let name = if suffix.is_empty() {
            token.to_string()
        } else {
            format!("{token}{suffix}")
        };
        TheoremSpec::new(name, p, ex, c, bound)
    };
    Ok(match token {
        "2.1" => vec![spec("", pair("P3")?, None, SuperEdgeConnected, None)?],
        "2.2i" => vec![spec(
            "",
            pair("H0,P4")?,
            Some(ExceptionMode::CycleFour),
            SuperEdgeConnected,
            Some(&p3),
        )?],
        "2.2ii" => vec![spec(
            "",
            pair("Z1,T112")?,
            Some(ExceptionMode::PathsCyclesGrid),
            SuperEdgeConnected,
            Some(&p3),
        )?],
        "2.2" => {
            let mut v = theorem("2.2i", catalog)?;
            v.extend(theorem("2.2ii", catalog)?);
            v
        }
        "1.1" => vec![spec("", pair("P3")?, None, KappaEqualsLambda, None)?],
        "1.2" => ["Z1,P5", "Z1,K14", "Z1,T112", "H0,P4", "H0,K13"]
            .iter()
            .map(|s| {
                let p = pair(s)?;
                let suffix = format!(" {}", p.label());
                spec(&suffix, p, None, KappaEqualsLambda, Some(&p3))
            })
            .collect::<Result<_, _>>()?,
        "1.3" => vec![spec("", pair("P4")?, None, MaximallyEdgeConnected, None)?],
        "1.4" => {
            let mut lists = Vec::new();
            if catalog.contains_custom("H1") {
                lists.push("H1,P5");
            } else {
                log::warn!("theorem 1.4: no custom H1 registered; skipping the {{H1,P5}} branch");
            }
            lists.extend(["Z2,P6", "Z2,T113"]);
            lists
                .iter()
                .map(|s| {
                    let p = pair(s)?;
                    let suffix = format!(" {}", p.label());
                    spec(&suffix, p, None, MaximallyEdgeConnected, Some(&p4))
                })
                .collect::<Result<_, _>>()?
        }
        other => return Err(HarnessError::UnknownTheorem(other.to_string())),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub graph_id: String,
    pub hypothesis_holds: bool,
    pub exception: bool,
    pub conclusion_holds: bool,
    pub violation: bool,
    pub witness: Option<CutWitness>,
}

fn exception_of(g: &Graph, spec: &TheoremSpec) -> bool {
    spec.exceptions
        .is_some_and(|mode| is_exception(g, mode).expect("scanned graphs are connected"))
}

/// Full classification of one connected graph.
pub fn classify(g: &Graph, spec: &TheoremSpec) -> Verdict {
    let hypothesis_holds = is_free(g, &spec.pair);
    let exception = exception_of(g, spec);
    let (conclusion_holds, witness) = spec.conclusion.evaluate(g);
    Verdict {
        graph_id: encode_graph6(g),
        hypothesis_holds,
        exception,
        conclusion_holds,
        violation: hypothesis_holds && !exception && !conclusion_holds,
        witness,
    }
}

/// Where a scan draws its graphs from.
#[derive(Debug, Clone)]
pub enum ScanSource {
    /// Connected isomorphism classes for each order.
    Classes(RangeInclusive<usize>),
    /// Every connected labeled graph for each order; `extended` admits n = 8.
    Labeled {
        orders: RangeInclusive<usize>,
        extended: bool,
    },
    /// Explicit graphs with their record indices.
    Graphs {
        label: String,
        graphs: Vec<(usize, Graph)>,
    },
}

impl ScanSource {
    /// Reads a graph6 stream up front (single reader stage).
    pub fn from_graph6<R: BufRead>(
        label: impl Into<String>,
        reader: R,
        on_error: OnError,
    ) -> Result<Self, HarnessError> {
        let graphs = stream_decode(reader, on_error).collect::<Result<Vec<_>, _>>()?;
        Ok(ScanSource::Graphs {
            label: label.into(),
            graphs,
        })
    }

    pub fn describe(&self) -> String {
        match self {
            ScanSource::Classes(r) => format!("connected classes n={}..{}", r.start(), r.end()),
            ScanSource::Labeled { orders, .. } => {
                format!("connected labeled graphs n={}..{}", orders.start(), orders.end())
            }
            ScanSource::Graphs { label, graphs } => format!("{label} ({} records)", graphs.len()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationRecord {
    pub graph6: String,
    /// Input record index for file sources.
    pub record: Option<usize>,
    pub witness: Option<CutWitness>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct OrderCounts {
    pub n: usize,
    pub scanned: u64,
    pub hypothesis_holds: u64,
    pub exceptions: u64,
    pub violations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub schema: &'static str,
    pub theorem: String,
    pub hypothesis: String,
    pub exceptions: Option<ExceptionMode>,
    pub conclusion: &'static str,
    pub source: String,
    pub scanned: u64,
    pub skipped_disconnected: u64,
    pub hypothesis_holds: u64,
    pub exception_count: u64,
    pub violations: u64,
    pub per_order: Vec<OrderCounts>,
    pub violating: Vec<ViolationRecord>,
}

impl ScanReport {
    pub fn success(&self) -> bool {
        self.violations == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable aligned summary.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let ex = match self.exceptions {
            None => "none",
            Some(ExceptionMode::CycleFour) => "C4",
            Some(ExceptionMode::PathsCyclesGrid) => "P2xP3, Pn, Cn (n>=4)",
            Some(ExceptionMode::Any) => "C4, P2xP3, Pn, Cn (n>=4)",
        };
        let rows = [
            ("theorem", self.theorem.clone()),
            ("hypothesis", format!("{}-free", self.hypothesis)),
            ("exceptions", ex.to_string()),
            ("conclusion", self.conclusion.to_string()),
            ("source", self.source.clone()),
            ("scanned", self.scanned.to_string()),
            ("skipped (disconnected)", self.skipped_disconnected.to_string()),
            ("hypothesis holds", self.hypothesis_holds.to_string()),
            ("exceptions met", self.exception_count.to_string()),
            ("violations", self.violations.to_string()),
        ];
        for (k, v) in rows {
            let _ = writeln!(s, "{k:>22}: {v}");
        }
        if !self.per_order.is_empty() {
            let _ = writeln!(
                s,
                "{:>4} {:>12} {:>12} {:>10} {:>10}",
                "n", "scanned", "hypothesis", "except", "violate"
            );
            for o in &self.per_order {
                let _ = writeln!(
                    s,
                    "{:>4} {:>12} {:>12} {:>10} {:>10}",
                    o.n, o.scanned, o.hypothesis_holds, o.exceptions, o.violations
                );
            }
        }
        for v in &self.violating {
            let _ = writeln!(s, "violation: {}", v.graph6);
        }
        s
    }
}

#[derive(Default)]
struct Partial {
    skipped: u64,
    per_order: Vec<OrderCounts>,
    violating: Vec<ViolationRecord>,
}

impl Partial {
    fn bucket(&mut self, n: usize) -> &mut OrderCounts {
        let idx = match self.per_order.iter().position(|o| o.n == n) {
            Some(i) => i,
            None => {
                self.per_order.push(OrderCounts {
                    n,
                    ..OrderCounts::default()
                });
                self.per_order.len() - 1
            }
        };
        &mut self.per_order[idx]
    }

    fn observe(&mut self, g: &Graph, record: Option<usize>, spec: &TheoremSpec) {
        if !g.is_connected() {
            self.skipped += 1;
            return;
        }
        let n = g.order();
        self.bucket(n).scanned += 1;
        if !is_free(g, &spec.pair) {
            return;
        }
        self.bucket(n).hypothesis_holds += 1;
        if exception_of(g, spec) {
            self.bucket(n).exceptions += 1;
            return;
        }
        let (holds, witness) = spec.conclusion.evaluate(g);
        if !holds {
            self.bucket(n).violations += 1;
            self.violating.push(ViolationRecord {
                graph6: encode_graph6(g),
                record,
                witness,
            });
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        self.skipped += other.skipped;
        for o in other.per_order {
            let b = self.bucket(o.n);
            b.scanned += o.scanned;
            b.hypothesis_holds += o.hypothesis_holds;
            b.exceptions += o.exceptions;
            b.violations += o.violations;
        }
        self.violating.extend(other.violating);
        self
    }
}

fn scan_graphs(spec: &TheoremSpec, graphs: &[(Option<usize>, Graph)], jobs: Jobs) -> Partial {
    let chunks: Vec<&[(Option<usize>, Graph)]> = graphs.chunks(GRAPH_CHUNK).collect();
    par::map(jobs, &chunks, |chunk| {
        let mut p = Partial::default();
        for (record, g) in chunk.iter() {
            p.observe(g, *record, spec);
        }
        p
    })
    .into_iter()
    .fold(Partial::default(), Partial::merge)
}

/// Classifies every graph of `source` and reports counts and violations.
pub fn verify_sufficiency(
    spec: &TheoremSpec,
    source: &ScanSource,
    jobs: Jobs,
) -> Result<ScanReport, HarnessError> {
    let partial = match source {
        ScanSource::Classes(orders) => {
            let mut acc = Partial::default();
            for n in orders.clone() {
                let reps = enumerate::enumerate_classes(&EnumSpec::classes(n).connected(), jobs)?;
                let tagged: Vec<_> = reps.into_iter().map(|g| (None, g)).collect();
                acc = acc.merge(scan_graphs(spec, &tagged, jobs));
            }
            acc
        }
        ScanSource::Labeled { orders, extended } => {
            let mut acc = Partial::default();
            for n in orders.clone() {
                let mut es = EnumSpec::labeled(n).connected();
                es.extended = *extended;
                if n == enumerate::LABELED_EXTENDED_MAX {
                    log::info!("labeled scan at n = {n}: 2^{} masks", enumerate::pair_count(n));
                }
                let parts = enumerate::map_labeled_chunks(jobs, &es, |graphs| {
                    let mut p = Partial::default();
                    for g in graphs {
                        p.observe(&g, None, spec);
                    }
                    p
                })?;
                acc = parts.into_iter().fold(acc, Partial::merge);
            }
            acc
        }
        ScanSource::Graphs { graphs, .. } => {
            let tagged: Vec<_> = graphs.iter().map(|(i, g)| (Some(*i), g.clone())).collect();
            scan_graphs(spec, &tagged, jobs)
        }
    };
    let mut per_order = partial.per_order;
    per_order.sort_by_key(|o| o.n);
    let sum = |f: fn(&OrderCounts) -> u64| per_order.iter().map(f).sum::<u64>();
    Ok(ScanReport {
        schema: SCAN_SCHEMA,
        theorem: spec.name.clone(),
        hypothesis: spec.pair.label().to_string(),
        exceptions: spec.exceptions,
        conclusion: spec.conclusion.name(),
        source: source.describe(),
        scanned: sum(|o| o.scanned),
        skipped_disconnected: partial.skipped,
        hypothesis_holds: sum(|o| o.hypothesis_holds),
        exception_count: sum(|o| o.exceptions),
        violations: sum(|o| o.violations),
        per_order,
        violating: partial.violating,
    })
}

/// Pairs whose members must avoid `P3`; returns whether the characterization
/// predicts that pair-free connected graphs are super-edge-connected (up to
/// the exception graphs).
pub fn precedence_gate(pair: &PairSpec) -> Result<bool, HarnessError> {
    check_not_below(pair, &path_pattern(3))?;
    Ok(predicted_branch(pair).is_some())
}

/// The exception list of the branch covering `pair` (`pair ⪯ {H0,P4}` or
/// `pair ⪯ {Z1,T112}`), if any. When both apply the smaller list (`{C4}`)
/// is used.
fn predicted_branch(pair: &PairSpec) -> Option<ExceptionMode> {
    let cat = Catalog::new();
    let first = cat.pair("H0,P4").expect("atlas");
    let second = cat.pair("Z1,T112").expect("atlas");
    if pair_precedes(pair, &first) {
        Some(ExceptionMode::CycleFour)
    } else if pair_precedes(pair, &second) {
        Some(ExceptionMode::PathsCyclesGrid)
    } else {
        None
    }
}

/// How far a counterexample search may go.
#[derive(Debug, Clone)]
pub struct SearchBudget {
    /// Largest order scanned via isomorphism classes (capped at 7).
    pub max_order: usize,
    /// Also scan the registered non-super families.
    pub families: bool,
    /// Scan all labeled graphs at n = 8 when `max_order >= 8`.
    pub extended: bool,
}

impl SearchBudget {
    pub fn new(max_order: usize) -> Self {
        SearchBudget {
            max_order,
            families: true,
            extended: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub graph6: String,
    pub source: String,
    pub witness: Option<CutWitness>,
}

/// Connected, pair-free, not super-edge-connected and not an exception
/// graph of either list.
fn refutes(g: &Graph, pair: &PairSpec) -> Option<Option<CutWitness>> {
    if !g.is_connected() || !is_free(g, pair) {
        return None;
    }
    if is_exception(g, ExceptionMode::Any).expect("connected") {
        return None;
    }
    let (is_super, witness) = is_super_edge_connected(g).expect("connected");
    (!is_super).then_some(witness)
}

fn first_refuting(graphs: &[Graph], pair: &PairSpec, jobs: Jobs) -> Option<(usize, CutWitness)> {
    let chunks: Vec<(usize, &[Graph])> = graphs
        .chunks(GRAPH_CHUNK)
        .enumerate()
        .map(|(i, c)| (i * GRAPH_CHUNK, c))
        .collect();
    par::map(jobs, &chunks, |(base, chunk)| {
        chunk.iter().enumerate().find_map(|(i, g)| {
            refutes(g, pair).map(|w| (base + i, w.expect("non-super graphs carry a witness")))
        })
    })
    .into_iter()
    .flatten()
    .next()
}

/// Searches classes up to the budget order, then the non-super registry,
/// then (opt-in) all labeled graphs at n = 8, returning the first
/// counterexample in that deterministic order.
pub fn search_counterexample(
    pair: &PairSpec,
    budget: &SearchBudget,
    jobs: Jobs,
) -> Result<Option<Counterexample>, HarnessError> {
    for n in 1..=budget.max_order.min(CLASSES_MAX) {
        let reps = enumerate::enumerate_classes(&EnumSpec::classes(n).connected(), jobs)?;
        if let Some((i, w)) = first_refuting(&reps, pair, jobs) {
            return Ok(Some(Counterexample {
                graph6: encode_graph6(&reps[i]),
                source: format!("connected classes n={n}"),
                witness: Some(w),
            }));
        }
    }
    if budget.families {
        let instances = registry_instances();
        let graphs: Vec<Graph> = instances.iter().map(|(_, g)| g.clone()).collect();
        if let Some((i, w)) = first_refuting(&graphs, pair, jobs) {
            return Ok(Some(Counterexample {
                graph6: encode_graph6(&graphs[i]),
                source: format!("family {}", instances[i].0),
                witness: Some(w),
            }));
        }
    }
    if budget.extended && budget.max_order >= enumerate::LABELED_EXTENDED_MAX {
        let n = enumerate::LABELED_EXTENDED_MAX;
        let es = EnumSpec::labeled(n).connected().extended();
        let found = enumerate::map_labeled_chunks(jobs, &es, |graphs| {
            for g in graphs {
                if let Some(w) = refutes(&g, pair) {
                    return Some((encode_graph6(&g), w));
                }
            }
            None
        })?;
        if let Some((graph6, w)) = found.into_iter().flatten().next() {
            return Ok(Some(Counterexample {
                graph6,
                source: format!("connected labeled graphs n={n}"),
                witness: w,
            }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Agree,
    Disagree,
    /// Predicted failure but no counterexample within budget; not a refutation.
    InconclusiveBudget,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Agree => "agree",
            Outcome::Disagree => "disagree",
            Outcome::InconclusiveBudget => "inconclusive (budget)",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyReport {
    pub pair: String,
    pub predicted_super: bool,
    pub outcome: Outcome,
    pub scan: Option<ScanReport>,
    pub counterexample: Option<Counterexample>,
}

/// Checks the precedence prediction for `pair` against exhaustive evidence
/// up to `n_max` (classes, capped at 7) plus the registered families.
pub fn cross_validate(
    pair: &PairSpec,
    n_max: usize,
    jobs: Jobs,
) -> Result<ConsistencyReport, HarnessError> {
    let predicted = precedence_gate(pair)?;
    let mut report = ConsistencyReport {
        pair: pair.label().to_string(),
        predicted_super: predicted,
        outcome: Outcome::Agree,
        scan: None,
        counterexample: None,
    };
    if let Some(mode) = predicted_branch(pair) {
        let spec = TheoremSpec::new(
            format!("pair {}", pair.label()),
            pair.clone(),
            Some(mode),
            Conclusion::SuperEdgeConnected,
            None,
        )?;
        let scan = verify_sufficiency(&spec, &ScanSource::Classes(1..=n_max.min(CLASSES_MAX)), jobs)?;
        if !scan.success() {
            report.outcome = Outcome::Disagree;
        }
        report.scan = Some(scan);
    } else {
        let found = search_counterexample(pair, &SearchBudget::new(n_max), jobs)?;
        if found.is_none() {
            report.outcome = Outcome::InconclusiveBudget;
        }
        report.counterexample = found;
    }
    Ok(report)
}
