//! The Frenkel-Mukhin iteration.
//!
//! Weights below the highest weight `λ_+` are visited in increasing height
//! (`Σ a_i` for `λ_+ − λ = Σ a_i α_i`), ties broken lexicographically on
//! `(a_1, …, a_n)`. Only weights actually occupied by generated monomials are
//! visited. An expansion at weight `λ` creates monomials of strictly larger
//! height, so a visited weight never receives new monomials.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::Bound;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cartan::{AlgebraSpec, WeightVector};
use crate::colored::{ColoredPolynomial, ExpandError};
use crate::monomial::{MonomialError, YMonomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("height limit {limit} exceeded")]
    HeightLimit { limit: u64 },
    #[error("term limit {limit} exceeded")]
    TermLimit { limit: usize },
    #[error("injection limit {limit} exceeded")]
    InjectionLimit { limit: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Expand(#[from] ExpandError),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}

impl EngineError {
    pub fn is_limit(&self) -> bool {
        matches!(
            self,
            EngineError::HeightLimit { .. }
                | EngineError::TermLimit { .. }
                | EngineError::InjectionLimit { .. }
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_height: u64,
    pub max_terms: usize,
    pub max_injections: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_height: 64,
            max_terms: 1_000_000,
            max_injections: 16,
        }
    }
}

/// Processing order inside one weight. The algorithm's result must not
/// depend on it; the non-canonical orders exist to check exactly that.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ProcessingOrder {
    /// Loop over nodes outside, monomials inside.
    pub node_major: bool,
    /// Shuffle monomials and nodes at every weight.
    pub shuffle_seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunOptions {
    pub limits: Limits,
    pub order: ProcessingOrder,
}

impl RunOptions {
    pub fn with_limits(limits: Limits) -> Self {
        RunOptions {
            limits,
            ..Default::default()
        }
    }
}

/// Position of a weight in the processing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightKey {
    pub height: i64,
    pub depth: Vec<i64>,
}

impl WeightKey {
    fn first_at_height(height: i64) -> Self {
        WeightKey {
            height,
            depth: Vec::new(),
        }
    }
}

/// One nontrivial `i`-expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub weight: WeightVector,
    pub monomial: YMonomial,
    pub node: usize,
    /// `s - s_i` at the time of expansion.
    pub multiplier: u64,
    /// Monomials of `μ` other than the expanded one, with coefficients `t`.
    pub terms: Vec<(YMonomial, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Offender {
    pub monomial: YMonomial,
    pub coefficient: u64,
    pub coloring: Vec<u64>,
    pub deficient_nodes: Vec<usize>,
}

/// The algorithm halted: some monomial at `weight` is not admissible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailureReport {
    pub weight: WeightVector,
    pub offenders: Vec<Offender>,
    pub partial: ColoredPolynomial,
    pub trace: Vec<TraceEntry>,
}

impl FailureReport {
    pub fn offender(&self, m: &YMonomial) -> Option<&Offender> {
        self.offenders.iter().find(|o| &o.monomial == m)
    }

    /// Whether `m` ever occurred, either in the final partial state or as a
    /// term produced by a recorded expansion.
    pub fn ever_generated(&self, m: &YMonomial) -> bool {
        self.partial.contains(m)
            || self
                .trace
                .iter()
                .any(|e| &e.monomial == m || e.terms.iter().any(|(n, _)| n == m))
    }
}

/// A completed q-character with colorings discarded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QCharacter {
    algebra: AlgebraSpec,
    highest: YMonomial,
    terms: BTreeMap<YMonomial, u64>,
}

impl QCharacter {
    pub fn algebra(&self) -> &AlgebraSpec {
        &self.algebra
    }

    pub fn highest(&self) -> &YMonomial {
        &self.highest
    }

    pub fn terms(&self) -> &BTreeMap<YMonomial, u64> {
        &self.terms
    }

    pub fn coefficient(&self, m: &YMonomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients, the dimension of the representation.
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    /// Replaces `Y_{i,a}` by `e^{ω_i}`: multiplicities by weight.
    pub fn specialize_classical(&self) -> BTreeMap<WeightVector, u64> {
        let mut out = BTreeMap::new();
        for (m, &c) in &self.terms {
            *out.entry(m.weight(self.algebra.rank())).or_insert(0) += c;
        }
        out
    }

    pub fn dominant_monomials(&self) -> Vec<(YMonomial, u64)> {
        self.terms
            .iter()
            .filter(|(m, _)| m.is_dominant())
            .map(|(m, &c)| (m.clone(), c))
            .collect()
    }
}

/// Shorthand for [`QCharacter::specialize_classical`].
pub fn specialize_classical(qchar: &QCharacter) -> BTreeMap<WeightVector, u64> {
    qchar.specialize_classical()
}

/// Shorthand for [`QCharacter::dominant_monomials`].
pub fn dominant_monomials(qchar: &QCharacter) -> Vec<(YMonomial, u64)> {
    qchar.dominant_monomials()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FmOutcome {
    Completed {
        character: QCharacter,
        /// Final state with colorings, all saturated.
        colored: ColoredPolynomial,
        trace: Vec<TraceEntry>,
    },
    Failed(Box<FailureReport>),
}

impl FmOutcome {
    pub fn character(&self) -> Option<&QCharacter> {
        match self {
            FmOutcome::Completed { character, .. } => Some(character),
            FmOutcome::Failed(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&FailureReport> {
        match self {
            FmOutcome::Completed { .. } => None,
            FmOutcome::Failed(report) => Some(report),
        }
    }

    pub fn trace(&self) -> &[TraceEntry] {
        match self {
            FmOutcome::Completed { trace, .. } => trace,
            FmOutcome::Failed(report) => &report.trace,
        }
    }
}

/// Runs the algorithm from `m_plus` with default processing order.
pub fn run_fm(
    spec: &AlgebraSpec,
    m_plus: &YMonomial,
    limits: Limits,
) -> Result<FmOutcome, EngineError> {
    run_fm_with(spec, m_plus, &RunOptions::with_limits(limits))
}

pub fn run_fm_with(
    spec: &AlgebraSpec,
    m_plus: &YMonomial,
    options: &RunOptions,
) -> Result<FmOutcome, EngineError> {
    run_fm_seeded(spec, m_plus, &[], options)
}

/// Runs the algorithm on `m_plus` plus extra uncolored monomials present
/// from the start.
pub fn run_fm_seeded(
    spec: &AlgebraSpec,
    m_plus: &YMonomial,
    extra: &[YMonomial],
    options: &RunOptions,
) -> Result<FmOutcome, EngineError> {
    let mut engine = Engine::new(spec, m_plus, options)?;
    for m in extra {
        engine.inject(m)?;
    }
    match engine.run_from_height(0)? {
        Some(report) => Ok(FmOutcome::Failed(Box::new(report))),
        None => {
            let trace = engine.trace.clone();
            let colored = engine.chi.clone();
            Ok(FmOutcome::Completed {
                character: engine.finish()?,
                colored,
                trace,
            })
        }
    }
}

pub(crate) struct Engine<'a> {
    spec: &'a AlgebraSpec,
    options: RunOptions,
    highest: YMonomial,
    top: WeightVector,
    chi: ColoredPolynomial,
    buckets: BTreeMap<WeightKey, BTreeSet<YMonomial>>,
    keys: HashMap<WeightVector, WeightKey>,
    pub(crate) trace: Vec<TraceEntry>,
    rng: Option<ChaCha8Rng>,
}

impl<'a> Engine<'a> {
    pub(crate) fn new(
        spec: &'a AlgebraSpec,
        m_plus: &YMonomial,
        options: &RunOptions,
    ) -> Result<Self, EngineError> {
        m_plus.check_nodes(spec)?;
        if m_plus.is_one() {
            return Err(EngineError::InvalidInput(
                "highest monomial must be nonempty".into(),
            ));
        }
        if !m_plus.is_dominant() {
            return Err(EngineError::InvalidInput(format!(
                "highest monomial {m_plus} is not dominant"
            )));
        }
        let mut engine = Engine {
            spec,
            options: *options,
            highest: m_plus.clone(),
            top: m_plus.weight(spec.rank()),
            chi: ColoredPolynomial::seed(m_plus.clone(), spec.rank()),
            buckets: BTreeMap::new(),
            keys: HashMap::new(),
            trace: Vec::new(),
            rng: options.order.shuffle_seed.map(ChaCha8Rng::seed_from_u64),
        };
        let key = engine.key_of(m_plus)?;
        engine
            .buckets
            .entry(key)
            .or_default()
            .insert(m_plus.clone());
        Ok(engine)
    }

    pub(crate) fn key_of(&mut self, m: &YMonomial) -> Result<WeightKey, EngineError> {
        let w = m.weight(self.spec.rank());
        if let Some(k) = self.keys.get(&w) {
            return Ok(k.clone());
        }
        let depth = self
            .spec
            .root_lattice_coords(&(&self.top - &w))
            .filter(|a| a.iter().all(|&c| c >= 0))
            .ok_or_else(|| {
                EngineError::InvalidInput(format!(
                    "monomial {m} does not lie below the highest weight {}",
                    self.top
                ))
            })?;
        let height: i64 = depth.iter().sum();
        if height as u64 > self.options.limits.max_height {
            return Err(EngineError::HeightLimit {
                limit: self.options.limits.max_height,
            });
        }
        let key = WeightKey { height, depth };
        self.keys.insert(w, key.clone());
        Ok(key)
    }

    /// Adds an uncolored unit of `m` and returns its weight key.
    pub(crate) fn inject(&mut self, m: &YMonomial) -> Result<WeightKey, EngineError> {
        m.check_nodes(self.spec)?;
        let key = self.key_of(m)?;
        if self.chi.add_uncolored(m.clone()) {
            self.buckets
                .entry(key.clone())
                .or_default()
                .insert(m.clone());
        }
        Ok(key)
    }

    /// Processes every occupied weight of height `>= height` in order.
    /// Returns the failure report if some weight has a non-admissible
    /// monomial.
    pub(crate) fn run_from_height(
        &mut self,
        height: i64,
    ) -> Result<Option<FailureReport>, EngineError> {
        let mut cursor = Bound::Included(WeightKey::first_at_height(height));
        loop {
            let Some((key, bucket)) = self
                .buckets
                .range((cursor.clone(), Bound::Unbounded))
                .next()
            else {
                return Ok(None);
            };
            let key = key.clone();
            let mut monomials: Vec<YMonomial> = bucket.iter().cloned().collect();
            let weight = &self.top - &self.spec.simple_root_combination(&key.depth);

            let offenders: Vec<Offender> = monomials
                .iter()
                .filter_map(|m| {
                    let t = self.chi.get(m).expect("bucketed monomial present");
                    let nodes = t.deficient_nodes(m);
                    (!nodes.is_empty()).then(|| Offender {
                        monomial: m.clone(),
                        coefficient: t.coefficient,
                        coloring: t.coloring.clone(),
                        deficient_nodes: nodes,
                    })
                })
                .collect();
            if !offenders.is_empty() {
                return Ok(Some(FailureReport {
                    weight,
                    offenders,
                    partial: self.chi.clone(),
                    trace: self.trace.clone(),
                }));
            }

            let mut nodes: Vec<usize> = self.spec.nodes().collect();
            if let Some(rng) = self.rng.as_mut() {
                monomials.shuffle(rng);
                nodes.shuffle(rng);
            }
            let pairs: Vec<(usize, usize)> = if self.options.order.node_major {
                nodes
                    .iter()
                    .flat_map(|&i| (0..monomials.len()).map(move |k| (k, i)))
                    .collect()
            } else {
                (0..monomials.len())
                    .flat_map(|k| nodes.iter().map(move |&i| (k, i)))
                    .collect()
            };
            for (k, node) in pairs {
                self.expand(&weight, &monomials[k], node)?;
            }
            cursor = Bound::Excluded(key);
        }
    }

    fn expand(
        &mut self,
        weight: &WeightVector,
        m: &YMonomial,
        node: usize,
    ) -> Result<(), EngineError> {
        let Some(effect) = self.chi.expand_in_place(m, node, self.spec)? else {
            return Ok(());
        };
        for n in &effect.created {
            let key = self.key_of(n)?;
            self.buckets.entry(key).or_default().insert(n.clone());
        }
        if self.chi.len() > self.options.limits.max_terms {
            return Err(EngineError::TermLimit {
                limit: self.options.limits.max_terms,
            });
        }
        self.trace.push(TraceEntry {
            weight: weight.clone(),
            monomial: m.clone(),
            node,
            multiplier: effect.multiplier,
            terms: effect.terms,
        });
        Ok(())
    }

    /// Verifies saturation and drops the colorings.
    pub(crate) fn finish(self) -> Result<QCharacter, EngineError> {
        if let Some((m, t)) = self.chi.iter().find(|(_, t)| !t.is_saturated()) {
            return Err(EngineError::Internal(format!(
                "monomial {m} finished with unsaturated coloring {:?} (coefficient {})",
                t.coloring, t.coefficient
            )));
        }
        let terms = self
            .chi
            .iter()
            .map(|(m, t)| (m.clone(), t.coefficient))
            .collect();
        Ok(QCharacter {
            algebra: self.spec.clone(),
            highest: self.highest,
            terms,
        })
    }
}

impl AlgebraSpec {
    /// `Σ a_i α_i` in fundamental-weight coordinates.
    pub fn simple_root_combination(&self, coeffs: &[i64]) -> WeightVector {
        assert_eq!(coeffs.len(), self.rank());
        WeightVector(
            (0..self.rank())
                .map(|j| {
                    coeffs
                        .iter()
                        .enumerate()
                        .map(|(i, a)| self.cartan()[j][i] * a)
                        .sum()
                })
                .collect(),
        )
    }
}
