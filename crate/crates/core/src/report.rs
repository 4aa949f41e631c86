//! Serializable run and tableaux reports, shared by the CLI and the C ABI.
//!
//! Every list is in a canonical order, so the JSON for a fixed input is
//! byte-for-byte stable.

use std::fmt::Write as _;

use serde::Serialize;

use crate::cartan::AlgebraSpec;
use crate::engine::{EngineError, FailureReport, QCharacter, TraceEntry};
use crate::monomial::{render_a_product, solve_a_factorization, YMonomial};
use crate::tableaux::MatchReport;
use crate::traceback::{InjectionRecord, TracebackError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Plain,
    Modified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Completed,
    Failed,
    Ambiguous,
    LimitExceeded,
    InvalidInput,
    Internal,
}

impl Status {
    /// Process exit code for the status.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Completed => 0,
            Status::InvalidInput | Status::Internal => 1,
            Status::Failed => 2,
            Status::Ambiguous => 3,
            Status::LimitExceeded => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightCount {
    pub weight: Vec<i64>,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterReport {
    pub terms: Vec<(String, u64)>,
    pub term_count: usize,
    pub total: u64,
    pub dominant: Vec<(String, u64)>,
    pub weights: Vec<WeightCount>,
}

impl CharacterReport {
    pub fn new(qchar: &QCharacter) -> Self {
        let text = |v: Vec<(YMonomial, u64)>| -> Vec<(String, u64)> {
            v.into_iter().map(|(m, c)| (m.to_string(), c)).collect()
        };
        CharacterReport {
            terms: text(qchar.terms().iter().map(|(m, &c)| (m.clone(), c)).collect()),
            term_count: qchar.len(),
            total: qchar.total(),
            dominant: text(qchar.dominant_monomials()),
            weights: qchar
                .specialize_classical()
                .into_iter()
                .map(|(w, multiplicity)| WeightCount {
                    weight: w.0,
                    multiplicity,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OffenderReport {
    pub monomial: String,
    pub coefficient: u64,
    pub coloring: Vec<u64>,
    pub deficient_nodes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureSection {
    pub weight: Vec<i64>,
    pub offenders: Vec<OffenderReport>,
    pub partial_term_count: usize,
    pub partial_total: u64,
}

impl FailureSection {
    pub fn new(report: &FailureReport) -> Self {
        FailureSection {
            weight: report.weight.0.clone(),
            offenders: report
                .offenders
                .iter()
                .map(|o| OffenderReport {
                    monomial: o.monomial.to_string(),
                    coefficient: o.coefficient,
                    coloring: o.coloring.clone(),
                    deficient_nodes: o.deficient_nodes.clone(),
                })
                .collect(),
            partial_term_count: report.partial.len(),
            partial_total: report.partial.total(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjectionReport {
    pub offender: String,
    pub node: usize,
    pub injected: String,
    /// `injected = offender · raising`.
    pub raising: String,
    pub ancestor_weight: Vec<i64>,
    pub candidates_considered: Vec<String>,
}

impl InjectionReport {
    pub fn new(spec: &AlgebraSpec, record: &InjectionRecord) -> Self {
        InjectionReport {
            offender: record.offender.to_string(),
            node: record.node,
            injected: record.injected.to_string(),
            raising: a_ratio(spec, &record.injected, &record.offender, 1),
            ancestor_weight: record.ancestor_weight.0.clone(),
            candidates_considered: record
                .candidates_considered
                .iter()
                .map(YMonomial::to_string)
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmbiguityReport {
    pub offender: String,
    pub node: usize,
    pub survivors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProducedTerm {
    pub monomial: String,
    pub coefficient: u64,
    /// `monomial = expanded · lowering`.
    pub lowering: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub weight: Vec<i64>,
    pub monomial: String,
    pub node: usize,
    pub multiplier: u64,
    pub produced: Vec<ProducedTerm>,
}

impl TraceReport {
    pub fn new(spec: &AlgebraSpec, entry: &TraceEntry) -> Self {
        TraceReport {
            weight: entry.weight.0.clone(),
            monomial: entry.monomial.to_string(),
            node: entry.node,
            multiplier: entry.multiplier,
            produced: entry
                .terms
                .iter()
                .map(|(m, t)| ProducedTerm {
                    monomial: m.to_string(),
                    coefficient: *t,
                    lowering: a_ratio(spec, &entry.monomial, m, -1),
                })
                .collect(),
        }
    }
}

/// Renders `high / low` (sign 1) or `low / high` (sign -1) as a product of
/// `A` monomials.
fn a_ratio(spec: &AlgebraSpec, high: &YMonomial, low: &YMonomial, sign: i64) -> String {
    match solve_a_factorization(spec, high, low) {
        Some(exps) => render_a_product(&exps.into_iter().map(|(k, e)| (k, sign * e)).collect()),
        None => "?".to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub algebra: String,
    pub highest: String,
    pub mode: Mode,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub character: Option<CharacterReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub injections: Option<Vec<InjectionReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<FailureSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambiguity: Option<AmbiguityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceReport>>,
}

impl RunReport {
    fn base(spec: &AlgebraSpec, highest: &YMonomial, mode: Mode, status: Status) -> Self {
        RunReport {
            schema: SCHEMA_VERSION,
            algebra: spec.name(),
            highest: highest.to_string(),
            mode,
            status,
            character: None,
            injections: None,
            failure: None,
            ambiguity: None,
            error: None,
            trace: None,
        }
    }

    pub fn completed(
        spec: &AlgebraSpec,
        highest: &YMonomial,
        qchar: &QCharacter,
        injections: Option<&[InjectionRecord]>,
        trace: Option<&[TraceEntry]>,
    ) -> Self {
        let mode = if injections.is_some() {
            Mode::Modified
        } else {
            Mode::Plain
        };
        RunReport {
            character: Some(CharacterReport::new(qchar)),
            injections: injections
                .map(|list| list.iter().map(|r| InjectionReport::new(spec, r)).collect()),
            trace: trace.map(|t| t.iter().map(|e| TraceReport::new(spec, e)).collect()),
            ..Self::base(spec, highest, mode, Status::Completed)
        }
    }

    pub fn failed(
        spec: &AlgebraSpec,
        highest: &YMonomial,
        mode: Mode,
        report: &FailureReport,
        with_trace: bool,
    ) -> Self {
        RunReport {
            failure: Some(FailureSection::new(report)),
            trace: with_trace.then(|| {
                report
                    .trace
                    .iter()
                    .map(|e| TraceReport::new(spec, e))
                    .collect()
            }),
            ..Self::base(spec, highest, mode, Status::Failed)
        }
    }

    pub fn engine_error(
        spec: &AlgebraSpec,
        highest: &YMonomial,
        mode: Mode,
        err: &EngineError,
    ) -> Self {
        let status = if err.is_limit() {
            Status::LimitExceeded
        } else {
            match err {
                EngineError::Internal(_) => Status::Internal,
                _ => Status::InvalidInput,
            }
        };
        RunReport {
            error: Some(err.to_string()),
            ..Self::base(spec, highest, mode, status)
        }
    }

    pub fn traceback_error(
        spec: &AlgebraSpec,
        highest: &YMonomial,
        err: &TracebackError,
        with_trace: bool,
    ) -> Self {
        match err {
            TracebackError::NoAncestor(report) => {
                let mut out = Self::failed(spec, highest, Mode::Modified, report, with_trace);
                out.error = Some(err.to_string());
                out
            }
            TracebackError::Ambiguous {
                offender,
                node,
                survivors,
            } => RunReport {
                ambiguity: Some(AmbiguityReport {
                    offender: offender.to_string(),
                    node: *node,
                    survivors: survivors.iter().map(YMonomial::to_string).collect(),
                }),
                error: Some(err.to_string()),
                ..Self::base(spec, highest, Mode::Modified, Status::Ambiguous)
            },
            TracebackError::Engine(e) => Self::engine_error(spec, highest, Mode::Modified, e),
            TracebackError::AlreadyDominant { .. } => RunReport {
                error: Some(err.to_string()),
                ..Self::base(spec, highest, Mode::Modified, Status::Internal)
            },
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "algebra  {}", self.algebra);
        let _ = writeln!(s, "highest  {}", self.highest);
        let _ = writeln!(s, "status   {}", status_word(self.status));
        if let Some(err) = &self.error {
            let _ = writeln!(s, "error    {err}");
        }
        if let Some(inj) = &self.injections {
            let _ = writeln!(s, "injections {}", inj.len());
            for r in inj {
                let _ = writeln!(
                    s,
                    "  {} = {} · {} (node {})",
                    r.injected, r.offender, r.raising, r.node
                );
            }
        }
        if let Some(c) = &self.character {
            let _ = writeln!(s, "terms    {}", c.term_count);
            let _ = writeln!(s, "total    {}", c.total);
            let _ = writeln!(s, "dominant");
            for (m, k) in &c.dominant {
                let _ = writeln!(s, "  {k} {m}");
            }
            let _ = writeln!(s, "character");
            for (m, k) in &c.terms {
                let _ = writeln!(s, "  {k} {m}");
            }
            let _ = writeln!(s, "weights");
            for w in &c.weights {
                let _ = writeln!(s, "  {} {}", fmt_weight(&w.weight), w.multiplicity);
            }
        }
        if let Some(f) = &self.failure {
            let _ = writeln!(s, "failed at weight {}", fmt_weight(&f.weight));
            for o in &f.offenders {
                let _ = writeln!(
                    s,
                    "  offender {} coefficient {} coloring {:?} deficient {:?}",
                    o.monomial, o.coefficient, o.coloring, o.deficient_nodes
                );
            }
            let _ = writeln!(
                s,
                "partial  {} terms, total {}",
                f.partial_term_count, f.partial_total
            );
        }
        if let Some(a) = &self.ambiguity {
            let _ = writeln!(
                s,
                "ambiguous ancestors of {} at node {}",
                a.offender, a.node
            );
            for m in &a.survivors {
                let _ = writeln!(s, "  {m}");
            }
        }
        if let Some(trace) = &self.trace {
            let _ = writeln!(s, "trace");
            for e in trace {
                let _ = writeln!(
                    s,
                    "  {} node {} x{} at {}",
                    e.monomial,
                    e.node,
                    e.multiplier,
                    fmt_weight(&e.weight)
                );
                for p in &e.produced {
                    let _ = writeln!(s, "    +{} {} [{}]", p.coefficient, p.monomial, p.lowering);
                }
            }
        }
        s
    }
}

fn status_word(status: Status) -> &'static str {
    match status {
        Status::Completed => "completed",
        Status::Failed => "failed",
        Status::Ambiguous => "ambiguous",
        Status::LimitExceeded => "limit exceeded",
        Status::InvalidInput => "invalid input",
        Status::Internal => "internal error",
    }
}

fn fmt_weight(w: &[i64]) -> String {
    let parts: Vec<String> = w.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableauGroup {
    pub monomial: String,
    pub tableaux: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscrepancyReport {
    pub monomial: String,
    pub expected: u64,
    pub realized: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableauxReport {
    pub schema: u32,
    pub algebra: String,
    pub highest: String,
    pub shape: Vec<usize>,
    pub matched: bool,
    pub tableau_count: usize,
    pub character_total: u64,
    pub groups: Vec<TableauGroup>,
    pub discrepancies: Vec<DiscrepancyReport>,
    pub foreign_shape: Vec<String>,
}

impl TableauxReport {
    pub fn new(qchar: &QCharacter, report: &MatchReport) -> Self {
        TableauxReport {
            schema: SCHEMA_VERSION,
            algebra: qchar.algebra().name(),
            highest: qchar.highest().to_string(),
            shape: report.shape.rows().to_vec(),
            matched: report.is_match(),
            tableau_count: report.tableau_count,
            character_total: qchar.total(),
            groups: report
                .assignment
                .iter()
                .map(|(m, ts)| TableauGroup {
                    monomial: m.to_string(),
                    tableaux: ts.iter().map(|t| t.to_string()).collect(),
                })
                .collect(),
            discrepancies: report
                .discrepancies
                .iter()
                .map(|d| DiscrepancyReport {
                    monomial: d.monomial.to_string(),
                    expected: d.expected,
                    realized: d.realized,
                })
                .collect(),
            foreign_shape: report.foreign_shape.iter().map(|t| t.to_string()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "algebra  {}", self.algebra);
        let _ = writeln!(s, "highest  {}", self.highest);
        let _ = writeln!(
            s,
            "shape    {}",
            fmt_weight(&self.shape.iter().map(|&r| r as i64).collect::<Vec<_>>())
        );
        let _ = writeln!(
            s,
            "{}: {} tableaux, character total {}",
            if self.matched { "match" } else { "mismatch" },
            self.tableau_count,
            self.character_total
        );
        for g in &self.groups {
            let _ = writeln!(s, "  {}  <=  {}", g.monomial, g.tableaux.join(" | "));
        }
        if !self.discrepancies.is_empty() {
            let _ = writeln!(s, "discrepancies");
            for d in &self.discrepancies {
                let _ = writeln!(
                    s,
                    "  {} expected {} realized {}",
                    d.monomial, d.expected, d.realized
                );
            }
        }
        for t in &self.foreign_shape {
            let _ = writeln!(s, "  wrong shape: {t}");
        }
        s
    }
}
