//! The trace-back modification: when a monomial is found that no expansion
//! can account for, look for the dominant ancestor in its deficient
//! direction, add it with zero coloring and resume.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::cartan::{AlgebraSpec, WeightVector};
use crate::colored::{mu, ExpandError};
use crate::engine::{
    Engine, EngineError, FailureReport, Limits, QCharacter, RunOptions, TraceEntry,
};
use crate::monomial::{a_monomial, MonomialError, YMonomial};

pub const DEFAULT_DEPTH_LIMIT: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TracebackError {
    #[error("{monomial} is already {node}-dominant")]
    AlreadyDominant { monomial: YMonomial, node: usize },
    #[error("ancestor of {offender} at node {node} is ambiguous: {survivors:?}")]
    Ambiguous {
        offender: YMonomial,
        node: usize,
        survivors: Vec<YMonomial>,
    },
    #[error("no ancestor of {} found", .0.offenders[0].monomial)]
    NoAncestor(Box<FailureReport>),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

impl From<ExpandError> for TracebackError {
    fn from(e: ExpandError) -> Self {
        TracebackError::Engine(e.into())
    }
}

impl From<MonomialError> for TracebackError {
    fn from(e: MonomialError) -> Self {
        TracebackError::Engine(e.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectionRecord {
    pub offender: YMonomial,
    pub node: usize,
    pub injected: YMonomial,
    pub ancestor_weight: WeightVector,
    pub candidates_considered: Vec<YMonomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModifiedRun {
    pub character: QCharacter,
    pub injections: Vec<InjectionRecord>,
    pub trace: Vec<TraceEntry>,
}

/// All `offender · Π A_{node,k}` of degree `1..=depth_limit` with each `k`
/// adjacent to a negative node exponent of the offender, in ascending
/// degree.
pub fn ancestor_candidates(
    spec: &AlgebraSpec,
    offender: &YMonomial,
    node: usize,
    depth_limit: usize,
) -> Result<Vec<(usize, YMonomial)>, TracebackError> {
    spec.check_node(node).map_err(MonomialError::from)?;
    if offender.is_i_dominant(node) {
        return Err(TracebackError::AlreadyDominant {
            monomial: offender.clone(),
            node,
        });
    }
    let d = spec.symmetrizer(node);
    let positions: Vec<i64> = offender
        .project_to_node(node)
        .factors()
        .filter(|&(_, e)| e < 0)
        .flat_map(|(k, _)| [k - d, k + d])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let factors: Vec<YMonomial> = positions
        .iter()
        .map(|&k| a_monomial(spec, node, k).map_err(MonomialError::from))
        .collect::<Result<_, _>>()?;

    let mut out = Vec::new();
    let mut layer: Vec<(usize, YMonomial)> = vec![(0, offender.clone())];
    for degree in 1..=depth_limit {
        let mut next = Vec::new();
        for (last, m) in &layer {
            // non-decreasing factor index enumerates multisets once
            for (idx, a) in factors.iter().enumerate().skip(*last) {
                let n = m.checked_mul(a)?;
                out.push((degree, n.clone()));
                next.push((idx, n));
            }
        }
        layer = next;
    }
    Ok(out)
}

/// Candidates that are `node`-dominant and whose `node`-expansion
/// contains the offender, ordered by ascending A-degree.
pub fn find_ancestors(
    spec: &AlgebraSpec,
    offender: &YMonomial,
    node: usize,
    depth_limit: usize,
) -> Result<Vec<YMonomial>, TracebackError> {
    Ok(surviving(spec, offender, node, depth_limit)?
        .into_iter()
        .map(|(_, m)| m)
        .collect())
}

fn surviving(
    spec: &AlgebraSpec,
    offender: &YMonomial,
    node: usize,
    depth_limit: usize,
) -> Result<Vec<(usize, YMonomial)>, TracebackError> {
    let mut out = Vec::new();
    for (degree, n) in ancestor_candidates(spec, offender, node, depth_limit)? {
        if !n.is_i_dominant(node) {
            continue;
        }
        if mu(spec, &n, node)?.iter().any(|(m, _)| m == offender) {
            out.push((degree, n));
        }
    }
    Ok(out)
}

pub fn run_fm_modified(
    spec: &AlgebraSpec,
    m_plus: &YMonomial,
    limits: Limits,
) -> Result<ModifiedRun, TracebackError> {
    run_fm_modified_with(
        spec,
        m_plus,
        &RunOptions::with_limits(limits),
        DEFAULT_DEPTH_LIMIT,
    )
}

pub fn run_fm_modified_with(
    spec: &AlgebraSpec,
    m_plus: &YMonomial,
    options: &RunOptions,
    depth_limit: usize,
) -> Result<ModifiedRun, TracebackError> {
    let mut engine = Engine::new(spec, m_plus, options)?;
    let mut injections = Vec::new();
    let mut height = 0;
    while let Some(report) = engine.run_from_height(height)? {
        let first = &report.offenders[0];
        let node = first.deficient_nodes[0];
        let offender = first.monomial.clone();
        let survivors = surviving(spec, &offender, node, depth_limit)?;
        let Some(min_degree) = survivors.first().map(|(d, _)| *d) else {
            return Err(TracebackError::NoAncestor(Box::new(report)));
        };
        let minimal: Vec<YMonomial> = survivors
            .into_iter()
            .filter(|(d, _)| *d == min_degree)
            .map(|(_, m)| m)
            .collect();
        if minimal.len() > 1 {
            return Err(TracebackError::Ambiguous {
                offender,
                node,
                survivors: minimal,
            });
        }
        if injections.len() >= options.limits.max_injections {
            return Err(EngineError::InjectionLimit {
                limit: options.limits.max_injections,
            }
            .into());
        }
        let injected = minimal.into_iter().next().expect("one survivor");
        let key = engine.inject(&injected)?;
        height = key.height;
        injections.push(InjectionRecord {
            candidates_considered: ancestor_candidates(spec, &offender, node, depth_limit)?
                .into_iter()
                .map(|(_, m)| m)
                .collect(),
            ancestor_weight: injected.weight(spec.rank()),
            offender,
            node,
            injected,
        });
    }
    let trace = engine.trace.clone();
    Ok(ModifiedRun {
        character: engine.finish()?,
        injections,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{make_algebra, Family};
    use crate::engine::run_fm;

    fn y(text: &str) -> YMonomial {
        text.parse().unwrap()
    }

    #[test]
    fn a1_ancestor_is_the_string_head() {
        let a1 = make_algebra(Family::A, 1).unwrap();
        let found = find_ancestors(&a1, &y("Y[1,2]^-1"), 1, 4).unwrap();
        assert_eq!(found[0], y("Y[1,0]"));
    }

    #[test]
    fn c3_ancestor_of_m4() {
        let c3 = make_algebra(Family::C, 3).unwrap();
        let m4 = y("Y[1,2] Y[2,-1] Y[2,3]^-1 Y[3,2]");
        let cands: Vec<YMonomial> = ancestor_candidates(&c3, &m4, 2, 4)
            .unwrap()
            .into_iter()
            .map(|(_, m)| m)
            .collect();
        let a22 = a_monomial(&c3, 2, 2).unwrap();
        assert!(cands.contains(&(&m4 * &a22)));
        assert!(cands.contains(&(&(&m4 * &a22) * &a22)));
        let found = find_ancestors(&c3, &m4, 2, 4).unwrap();
        assert_eq!(found[0], y("Y[2,-1] Y[2,1]"));
        assert!(!found.contains(&(&(&m4 * &a22) * &a22)));
    }

    #[test]
    fn dominant_offender_is_rejected() {
        let a1 = make_algebra(Family::A, 1).unwrap();
        assert!(matches!(
            find_ancestors(&a1, &y("Y[1,0]"), 1, 4),
            Err(TracebackError::AlreadyDominant { .. })
        ));
    }

    #[test]
    fn no_failure_means_no_injection() {
        let a2 = make_algebra(Family::A, 2).unwrap();
        let m = y("Y[1,2] Y[2,-1]");
        let modified = run_fm_modified(&a2, &m, Limits::default()).unwrap();
        assert!(modified.injections.is_empty());
        let plain = run_fm(&a2, &m, Limits::default()).unwrap();
        assert_eq!(plain.character(), Some(&modified.character));
    }

    #[test]
    fn injection_limit_zero() {
        let c3 = make_algebra(Family::C, 3).unwrap();
        let limits = Limits {
            max_injections: 0,
            ..Limits::default()
        };
        assert!(matches!(
            run_fm_modified(&c3, &y("Y[1,4] Y[2,1] Y[3,-2]"), limits),
            Err(TracebackError::Engine(EngineError::InjectionLimit {
                limit: 0
            }))
        ));
    }
}
