//! Laurent monomials in the variables `Y_{i,q^k}`.
//!
//! Spectral parameters live on the lattice `a = q^k` and are stored as the
//! integer `k`. A monomial is a canonical sorted list of `(variable,
//! exponent)` pairs with no zero exponents, so structural equality is
//! algebraic equality.
//!
//! Text form: whitespace-separated factors `Y[i,k]` or `Y[i,k]^e`, ordered by
//! node then spectral exponent. The empty string is the unit monomial.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use thiserror::Error;

use crate::cartan::{AlgebraSpec, CartanError, WeightVector};

/// A variable `Y_{node, q^spectral}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YVar {
    pub node: usize,
    pub spectral: i64,
}

impl YVar {
    pub fn new(node: usize, spectral: i64) -> Self {
        YVar { node, spectral }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("exponent overflow")]
    Overflow,
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("monomial uses node {node} but the algebra has rank {rank}")]
    NodeOutOfRange { node: usize, rank: usize },
}

impl From<CartanError> for MonomialError {
    fn from(e: CartanError) -> Self {
        match e {
            CartanError::NodeOutOfRange { node, rank } => {
                MonomialError::NodeOutOfRange { node, rank }
            }
            other => MonomialError::Syntax {
                position: 0,
                message: other.to_string(),
            },
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YMonomial {
    factors: Vec<(YVar, i64)>,
}

impl YMonomial {
    pub fn one() -> Self {
        YMonomial::default()
    }

    pub fn var(node: usize, spectral: i64) -> Self {
        YMonomial {
            factors: vec![(YVar::new(node, spectral), 1)],
        }
    }

    /// Builds a monomial from `((node, spectral), exponent)` triples,
    /// accumulating repeated variables.
    pub fn from_factors<I>(factors: I) -> Result<Self, MonomialError>
    where
        I: IntoIterator<Item = ((usize, i64), i64)>,
    {
        let mut acc: BTreeMap<YVar, i64> = BTreeMap::new();
        for ((node, k), e) in factors {
            let slot = acc.entry(YVar::new(node, k)).or_insert(0);
            *slot = slot.checked_add(e).ok_or(MonomialError::Overflow)?;
        }
        Ok(YMonomial {
            factors: acc.into_iter().filter(|&(_, e)| e != 0).collect(),
        })
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (YVar, i64)> + '_ {
        self.factors.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, node: usize, spectral: i64) -> i64 {
        let key = YVar::new(node, spectral);
        self.factors
            .binary_search_by(|(v, _)| v.cmp(&key))
            .map(|idx| self.factors[idx].1)
            .unwrap_or(0)
    }

    pub fn max_node(&self) -> usize {
        self.factors.iter().map(|(v, _)| v.node).max().unwrap_or(0)
    }

    pub fn checked_mul(&self, other: &YMonomial) -> Result<YMonomial, MonomialError> {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1.checked_add(b[j].1).ok_or(MonomialError::Overflow)?;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(YMonomial { factors: out })
    }

    pub fn checked_pow(&self, e: i64) -> Result<YMonomial, MonomialError> {
        if e == 0 {
            return Ok(YMonomial::one());
        }
        let factors = self
            .factors
            .iter()
            .map(|&(v, x)| {
                x.checked_mul(e)
                    .map(|y| (v, y))
                    .ok_or(MonomialError::Overflow)
            })
            .collect::<Result<_, _>>()?;
        Ok(YMonomial { factors })
    }

    pub fn inv(&self) -> YMonomial {
        self.pow(-1)
    }

    /// Panics on exponent overflow; see [`YMonomial::checked_pow`].
    pub fn pow(&self, e: i64) -> YMonomial {
        self.checked_pow(e).expect("monomial exponent overflow")
    }

    /// No negative exponents at all.
    pub fn is_dominant(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e > 0)
    }

    /// No negative exponents on variables of `node`.
    pub fn is_i_dominant(&self, node: usize) -> bool {
        self.factors.iter().all(|&(v, e)| v.node != node || e > 0)
    }

    /// Net exponent at each node `1..=rank`, i.e. the weight in the
    /// fundamental-weight basis.
    pub fn weight(&self, rank: usize) -> WeightVector {
        let mut w = vec![0i64; rank];
        for &(v, e) in &self.factors {
            assert!(
                v.node >= 1 && v.node <= rank,
                "node {} outside rank {rank}",
                v.node
            );
            w[v.node - 1] += e;
        }
        WeightVector(w)
    }

    /// Errors unless every variable belongs to a node of `spec`.
    pub fn check_nodes(&self, spec: &AlgebraSpec) -> Result<(), MonomialError> {
        for &(v, _) in &self.factors {
            spec.check_node(v.node)?;
        }
        Ok(())
    }

    /// The `node`-th projection: keeps node-`node` variables only, keyed by
    /// spectral exponent.
    pub fn project_to_node(&self, node: usize) -> SL2Monomial {
        SL2Monomial {
            factors: self
                .factors
                .iter()
                .filter(|(v, _)| v.node == node)
                .map(|&(v, e)| (v.spectral, e))
                .collect(),
        }
    }
}

impl Mul for &YMonomial {
    type Output = YMonomial;
    fn mul(self, rhs: &YMonomial) -> YMonomial {
        self.checked_mul(rhs).expect("monomial exponent overflow")
    }
}

impl Mul for YMonomial {
    type Output = YMonomial;
    fn mul(self, rhs: YMonomial) -> YMonomial {
        &self * &rhs
    }
}

impl fmt::Display for YMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, &(v, e)) in self.factors.iter().enumerate() {
            if idx > 0 {
                write!(f, " ")?;
            }
            write!(f, "Y[{},{}]", v.node, v.spectral)?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for YMonomial {
    type Err = MonomialError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser { src: s, pos: 0 }.monomial()
    }
}

/// Parses the monomial text grammar.
pub fn parse(text: &str) -> Result<YMonomial, MonomialError> {
    text.parse()
}

/// Renders the canonical text form.
pub fn render(m: &YMonomial) -> String {
    m.to_string()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, MonomialError> {
        Err(MonomialError::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), MonomialError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn integer(&mut self) -> Result<i64, MonomialError> {
        let start = self.pos;
        if matches!(self.peek(), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        match self.src[start..self.pos].parse() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.err("expected an integer")
            }
        }
    }

    fn monomial(&mut self) -> Result<YMonomial, MonomialError> {
        let mut factors = Vec::new();
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                break;
            }
            if self.pos > 0
                && !factors.is_empty()
                && !self.src.as_bytes()[self.pos - 1].is_ascii_whitespace()
            {
                return self.err("factors must be separated by whitespace");
            }
            self.expect(b'Y')?;
            self.expect(b'[')?;
            let node_pos = self.pos;
            let node = self.integer()?;
            if node < 1 {
                self.pos = node_pos;
                return self.err("node index must be at least 1");
            }
            self.expect(b',')?;
            let k = self.integer()?;
            self.expect(b']')?;
            let mut e = 1;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                let exp_pos = self.pos;
                e = self.integer()?;
                if e == 0 {
                    self.pos = exp_pos;
                    return self.err("exponent must be nonzero");
                }
            }
            factors.push(((node as usize, k), e));
        }
        YMonomial::from_factors(factors)
    }
}

/// A monomial in the single-node variables `Y_{q^k}` of `U_q(sl2)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SL2Monomial {
    factors: Vec<(i64, i64)>,
}

impl SL2Monomial {
    pub fn one() -> Self {
        SL2Monomial::default()
    }

    pub fn from_factors<I>(factors: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        let mut acc: BTreeMap<i64, i64> = BTreeMap::new();
        for (k, e) in factors {
            *acc.entry(k).or_insert(0) += e;
        }
        SL2Monomial {
            factors: acc.into_iter().filter(|&(_, e)| e != 0).collect(),
        }
    }

    pub fn factors(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.factors.iter().copied()
    }

    pub fn exponent(&self, k: i64) -> i64 {
        self.factors
            .binary_search_by_key(&k, |&(s, _)| s)
            .map(|idx| self.factors[idx].1)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_dominant(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e > 0)
    }

    /// Total degree `Σ e`.
    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }
}

impl fmt::Display for SL2Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, &(k, e)) in self.factors.iter().enumerate() {
            if idx > 0 {
                write!(f, " ")?;
            }
            write!(f, "Y[{k}]")?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// `A_{node, q^k}`.
pub fn a_monomial(spec: &AlgebraSpec, node: usize, k: i64) -> Result<YMonomial, CartanError> {
    Ok(a_monomial_inverse(spec, node, k)?.inv())
}

/// `A^{-1}_{node, q^k}`: `Y^{-1}_{i,k-d_i} Y^{-1}_{i,k+d_i}` times the
/// neighbouring variables dictated by column `node` of the Cartan matrix.
pub fn a_monomial_inverse(
    spec: &AlgebraSpec,
    node: usize,
    k: i64,
) -> Result<YMonomial, CartanError> {
    spec.check_node(node)?;
    let d = spec.symmetrizer(node);
    let mut factors = vec![((node, k - d), -1), ((node, k + d), -1)];
    for j in spec.nodes().filter(|&j| j != node) {
        match spec.entry(j, node) {
            0 => {}
            -1 => factors.push(((j, k), 1)),
            -2 => factors.extend([((j, k - 1), 1), ((j, k + 1), 1)]),
            -3 => factors.extend([((j, k - 2), 1), ((j, k), 1), ((j, k + 2), 1)]),
            other => unreachable!("Cartan entry {other}"),
        }
    }
    Ok(YMonomial::from_factors(factors).expect("unit exponents cannot overflow"))
}

/// Weight of a monomial under `spec`.
pub fn weight(spec: &AlgebraSpec, m: &YMonomial) -> WeightVector {
    m.weight(spec.rank())
}

/// Exponents `e_{i,k}` with `m = m_plus · Π A_{i,q^k}^{-e_{i,k}}`.
///
/// The `A_{i,a}` are algebraically independent, so the exponents are unique
/// when they exist. Every factor `A_{i,q^k}` has its lowest spectral
/// exponent `k - d_i` at node `i` alone, so the lowest variable of the
/// remaining ratio always identifies the next factor to peel off.
pub fn solve_a_factorization(
    spec: &AlgebraSpec,
    m_plus: &YMonomial,
    m: &YMonomial,
) -> Option<BTreeMap<(usize, i64), i64>> {
    if m.check_nodes(spec).is_err() || m_plus.check_nodes(spec).is_err() {
        return None;
    }
    // ratio = m / m_plus = Π A^{-e}
    let mut ratio = m.checked_mul(&m_plus.inv()).ok()?;
    let upper = ratio.factors().map(|(v, _)| v.spectral).max();
    let mut exps: BTreeMap<(usize, i64), i64> = BTreeMap::new();
    while let Some(low) = ratio.factors().map(|(v, _)| v.spectral).min() {
        let upper = upper.expect("nonempty ratio has an upper bound");
        let at_low: Vec<(YVar, i64)> = ratio.factors().filter(|(v, _)| v.spectral == low).collect();
        for (v, e) in at_low {
            // Y_{i,low}^{e} comes from A_{i,low+d_i}^{e}; a negative e means
            // a factor A^{-|e|}.
            let k = low + spec.symmetrizer(v.node);
            if k + spec.symmetrizer(v.node) > upper {
                return None;
            }
            let a = a_monomial(spec, v.node, k).ok()?;
            ratio = ratio.checked_mul(&a.checked_pow(-e).ok()?).ok()?;
            *exps.entry((v.node, k)).or_insert(0) -= e;
        }
    }
    exps.retain(|_, e| *e != 0);
    Some(exps)
}

/// Renders `Π A[i,k]^e` from exponents keyed by `(node, spectral)`; the
/// empty product renders as `1`.
pub fn render_a_product(exps: &BTreeMap<(usize, i64), i64>) -> String {
    let parts: Vec<String> = exps
        .iter()
        .filter(|(_, &e)| e != 0)
        .map(|(&(i, k), &e)| match e {
            1 => format!("A[{i},{k}]"),
            e => format!("A[{i},{k}]^{e}"),
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}
