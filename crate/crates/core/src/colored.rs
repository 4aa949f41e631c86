//! Colored polynomials and the `i`-expansion.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cartan::{AlgebraSpec, CartanError};
use crate::monomial::{a_monomial_inverse, MonomialError, YMonomial};
use crate::sl2::{sl2_expansion, Sl2Error};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpandError {
    #[error("monomial {0} does not occur in the polynomial")]
    Absent(String),
    #[error("monomial {monomial} is not admissible (deficient nodes {nodes:?})")]
    NotAdmissible { monomial: String, nodes: Vec<usize> },
    #[error(transparent)]
    Sl2(#[from] Sl2Error),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}

/// Coefficient `s` of a monomial together with its coloring `(s_1, …, s_n)`,
/// `0 ≤ s_i ≤ s`. Node `i` is stored at index `i - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredTerm {
    pub coefficient: u64,
    pub coloring: Vec<u64>,
}

impl ColoredTerm {
    pub fn uncolored(coefficient: u64, rank: usize) -> Self {
        ColoredTerm {
            coefficient,
            coloring: vec![0; rank],
        }
    }

    pub fn color(&self, node: usize) -> u64 {
        self.coloring[node - 1]
    }

    pub fn is_saturated(&self) -> bool {
        self.coloring.iter().all(|&s| s == self.coefficient)
    }

    /// Nodes whose coloring is short of the coefficient while `m` still
    /// carries a negative power of that node.
    pub fn deficient_nodes(&self, m: &YMonomial) -> Vec<usize> {
        self.coloring
            .iter()
            .enumerate()
            .filter(|&(idx, &s)| s < self.coefficient && !m.is_i_dominant(idx + 1))
            .map(|(idx, _)| idx + 1)
            .collect()
    }

    pub fn is_admissible(&self, m: &YMonomial) -> bool {
        self.deficient_nodes(m).is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredPolynomial {
    rank: usize,
    terms: BTreeMap<YMonomial, ColoredTerm>,
}

/// What a nontrivial `i`-expansion did: the factor `s - s_i` and the
/// monomials of `μ` other than `m` with their coefficients `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionEffect {
    pub multiplier: u64,
    pub terms: Vec<(YMonomial, u64)>,
    pub created: Vec<YMonomial>,
}

impl ColoredPolynomial {
    pub fn new(rank: usize) -> Self {
        ColoredPolynomial {
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// `m` with coefficient 1 and zero coloring.
    pub fn seed(m: YMonomial, rank: usize) -> Self {
        let mut p = ColoredPolynomial::new(rank);
        p.terms.insert(m, ColoredTerm::uncolored(1, rank));
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, m: &YMonomial) -> Option<&ColoredTerm> {
        self.terms.get(m)
    }

    pub fn contains(&self, m: &YMonomial) -> bool {
        self.terms.contains_key(m)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&YMonomial, &ColoredTerm)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.terms.values().map(|t| t.coefficient).sum()
    }

    /// Sets a term directly. Panics if the coloring violates `0 ≤ s_i ≤ s`
    /// or the coefficient is zero.
    pub fn insert(&mut self, m: YMonomial, term: ColoredTerm) {
        assert_eq!(term.coloring.len(), self.rank, "coloring length");
        assert!(term.coefficient > 0, "zero coefficient");
        assert!(
            term.coloring.iter().all(|&s| s <= term.coefficient),
            "coloring exceeds coefficient"
        );
        self.terms.insert(m, term);
    }

    /// Adds an uncolored unit to `m`: a new term gets coefficient 1 and zero
    /// coloring, an existing one has its coefficient raised by 1.
    pub fn add_uncolored(&mut self, m: YMonomial) -> bool {
        match self.terms.get_mut(&m) {
            Some(t) => {
                t.coefficient += 1;
                false
            }
            None => {
                self.terms.insert(m, ColoredTerm::uncolored(1, self.rank));
                true
            }
        }
    }

    /// Every coloring satisfies `0 ≤ s_i ≤ s` and no coefficient is zero.
    pub fn check_invariants(&self) -> bool {
        self.terms.values().all(|t| {
            t.coefficient > 0
                && t.coloring.len() == self.rank
                && t.coloring.iter().all(|&s| s <= t.coefficient)
        })
    }

    /// Applies `i_m` in place. Returns `None` when `s_i = s` (nothing to do).
    pub fn expand_in_place(
        &mut self,
        m: &YMonomial,
        node: usize,
        spec: &AlgebraSpec,
    ) -> Result<Option<ExpansionEffect>, ExpandError> {
        spec.check_node(node)?;
        let term = self
            .terms
            .get(m)
            .ok_or_else(|| ExpandError::Absent(m.to_string()))?;
        let deficient = term.deficient_nodes(m);
        if !deficient.is_empty() {
            return Err(ExpandError::NotAdmissible {
                monomial: m.to_string(),
                nodes: deficient,
            });
        }
        let (s, s_i) = (term.coefficient, term.color(node));
        if s_i == s {
            return Ok(None);
        }
        let multiplier = s - s_i;
        let mu = mu(spec, m, node)?;
        let mut created = Vec::new();
        for (n, t) in &mu {
            let add = t * multiplier;
            match self.terms.get_mut(n) {
                None => {
                    let mut coloring = vec![0; self.rank];
                    coloring[node - 1] = add;
                    self.terms.insert(
                        n.clone(),
                        ColoredTerm {
                            coefficient: add,
                            coloring,
                        },
                    );
                    created.push(n.clone());
                }
                Some(existing) => {
                    let r_i = existing.coloring[node - 1] + add;
                    existing.coefficient = existing.coefficient.max(r_i);
                    existing.coloring[node - 1] = r_i;
                }
            }
        }
        let terms = mu.into_iter().filter(|(n, _)| n != m).collect();
        Ok(Some(ExpansionEffect {
            multiplier,
            terms,
            created,
        }))
    }
}

/// `μ = m(1 + Σ_p M_p)`: the sl2 character of the `node`-th projection of
/// `m`, lifted back through `A^{-1}_{node,·}`. `m` itself comes first with
/// coefficient 1.
pub fn mu(
    spec: &AlgebraSpec,
    m: &YMonomial,
    node: usize,
) -> Result<Vec<(YMonomial, u64)>, ExpandError> {
    spec.check_node(node)?;
    let expansion = sl2_expansion(&m.project_to_node(node), spec.symmetrizer(node))?;
    let mut out = Vec::with_capacity(expansion.len());
    for term in expansion {
        let mut n = m.clone();
        for &k in &term.positions {
            n = n.checked_mul(&a_monomial_inverse(spec, node, k)?)?;
        }
        out.push((n, term.coefficient));
    }
    Ok(out)
}

/// The `i`-expansion `i_m(χ)` as a pure function.
pub fn i_expand(
    chi: &ColoredPolynomial,
    m: &YMonomial,
    node: usize,
    spec: &AlgebraSpec,
) -> Result<ColoredPolynomial, ExpandError> {
    let mut out = chi.clone();
    out.expand_in_place(m, node, spec)?;
    Ok(out)
}
