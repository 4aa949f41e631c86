//! Root-system data for the simple Lie algebras.
//!
//! Cartan matrices follow the convention `C[i][j] = 2(α_i, α_j) / (α_i, α_i)`
//! with Bourbaki node numbering, so that for `C_n` the last node is the long
//! root and for `B_n` the last node is the short root. Weights are written in
//! the basis of fundamental weights, and the simple root `α_i` is column `i`
//! of the Cartan matrix.
//!
//! Node indices in the public API are 1-based, matching the usual notation
//! `Y_{i,a}`, `A_{i,a}`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error("no simple Lie algebra of type {family}{rank}")]
    InvalidType { family: Family, rank: usize },
    #[error("node {node} out of range for rank {rank}")]
    NodeOutOfRange { node: usize, rank: usize },
    #[error(
        "cannot parse algebra {0:?}: expected a family letter A-G followed by a rank, e.g. C3"
    )]
    Parse(String),
}

/// Cartan-Killing family letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.letter() == c.to_ascii_uppercase())
    }

    /// Whether `rank` gives a simple algebra of this family (no low-rank
    /// coincidences such as `D3 = A3` are admitted except `B2 ≅ C2`).
    pub fn admits_rank(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A vector in the weight lattice, in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn zero(rank: usize) -> Self {
        WeightVector(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl Add for &WeightVector {
    type Output = WeightVector;
    fn add(self, rhs: &WeightVector) -> WeightVector {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &WeightVector {
    type Output = WeightVector;
    fn sub(self, rhs: &WeightVector) -> WeightVector {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for WeightVector {
    type Output = WeightVector;
    fn add(self, rhs: WeightVector) -> WeightVector {
        &self + &rhs
    }
}

impl Sub for WeightVector {
    type Output = WeightVector;
    fn sub(self, rhs: WeightVector) -> WeightVector {
        &self - &rhs
    }
}

impl Neg for WeightVector {
    type Output = WeightVector;
    fn neg(self) -> WeightVector {
        WeightVector(self.0.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Cartan data of a simple Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSpec {
    family: Family,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    symmetrizers: Vec<i64>,
    inverse: Vec<Vec<Rational64>>,
}

impl AlgebraSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self, CartanError> {
        if !family.admits_rank(rank) {
            return Err(CartanError::InvalidType { family, rank });
        }
        let (cartan, symmetrizers) = tabulate(family, rank);
        let inverse = invert(&cartan);
        Ok(AlgebraSpec {
            family,
            rank,
            cartan,
            symmetrizers,
            inverse,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `C[i][j]`, 0-based storage.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Entry `C_{ij}` with 1-based node indices.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    /// `d_i` with `q_i = q^{d_i}`, 0-based storage.
    pub fn symmetrizers(&self) -> &[i64] {
        &self.symmetrizers
    }

    /// `d_i` for a 1-based node.
    pub fn symmetrizer(&self, node: usize) -> i64 {
        self.symmetrizers[node - 1]
    }

    pub fn nodes(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.rank
    }

    pub fn check_node(&self, node: usize) -> Result<(), CartanError> {
        if node == 0 || node > self.rank {
            Err(CartanError::NodeOutOfRange {
                node,
                rank: self.rank,
            })
        } else {
            Ok(())
        }
    }

    /// `α_i = Σ_j C_{ji} ω_j`.
    pub fn simple_root(&self, node: usize) -> Result<WeightVector, CartanError> {
        self.check_node(node)?;
        Ok(WeightVector(
            (0..self.rank).map(|j| self.cartan[j][node - 1]).collect(),
        ))
    }

    /// Coefficients `a_i` with `v = Σ a_i α_i`, over the rationals.
    pub fn root_coefficients(&self, v: &WeightVector) -> Vec<Rational64> {
        assert_eq!(v.rank(), self.rank, "weight rank mismatch");
        self.inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&v.0)
                    .map(|(r, &c)| r * Rational64::from_integer(c))
                    .sum()
            })
            .collect()
    }

    /// Integral coefficients of `v` in the simple-root basis, if `v` lies in
    /// the root lattice.
    pub fn root_lattice_coords(&self, v: &WeightVector) -> Option<Vec<i64>> {
        self.root_coefficients(v)
            .into_iter()
            .map(|r| r.is_integer().then(|| r.to_integer()))
            .collect()
    }

    /// `λ ≤ μ` in the natural partial order: `μ − λ` is a non-negative
    /// integral combination of simple roots.
    pub fn leq_natural(&self, lambda: &WeightVector, mu: &WeightVector) -> bool {
        match self.root_lattice_coords(&(mu - lambda)) {
            Some(a) => a.iter().all(|&c| c >= 0),
            None => false,
        }
    }

    /// Short name such as `C3`.
    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for AlgebraSpec {
    type Err = CartanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| CartanError::Parse(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| CartanError::Parse(s.to_string()))?;
        AlgebraSpec::new(family, rank)
    }
}

/// Shorthand for [`AlgebraSpec::new`].
pub fn make_algebra(family: Family, rank: usize) -> Result<AlgebraSpec, CartanError> {
    AlgebraSpec::new(family, rank)
}

fn tabulate(family: Family, n: usize) -> (Vec<Vec<i64>>, Vec<i64>) {
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i - 1][j - 1] = -1;
        c[j - 1][i - 1] = -1;
    };
    let mut d = vec![1i64; n];
    match family {
        Family::A => (1..n).for_each(|i| link(i, i + 1)),
        Family::B => {
            (1..n).for_each(|i| link(i, i + 1));
            c[n - 1][n - 2] = -2;
            d.iter_mut().take(n - 1).for_each(|x| *x = 2);
        }
        Family::C => {
            (1..n).for_each(|i| link(i, i + 1));
            c[n - 2][n - 1] = -2;
            d[n - 1] = 2;
        }
        Family::D => {
            (1..n - 1).for_each(|i| link(i, i + 1));
            link(n - 2, n);
        }
        Family::E => {
            link(1, 3);
            link(2, 4);
            (3..n).for_each(|i| link(i, i + 1));
        }
        Family::F => {
            link(1, 2);
            link(2, 3);
            link(3, 4);
            c[2][1] = -2;
            d = vec![2, 2, 1, 1];
        }
        Family::G => {
            link(1, 2);
            c[0][1] = -3;
            d = vec![1, 3];
        }
    }
    (c, d)
}

fn invert(c: &[Vec<i64>]) -> Vec<Vec<Rational64>> {
    let n = c.len();
    let mut m: Vec<Vec<Rational64>> = c
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .map(|&x| Rational64::from_integer(x))
                .chain((0..n).map(|j| Rational64::from_integer((i == j) as i64)))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| m[r][col] != Rational64::from_integer(0))
            .expect("Cartan matrices are invertible");
        m.swap(col, pivot);
        let p = m[col][col];
        m[col].iter_mut().for_each(|x| *x /= p);
        for r in 0..n {
            if r != col && m[r][col] != Rational64::from_integer(0) {
                let factor = m[r][col];
                let pivot_row = m[col].clone();
                m[r].iter_mut()
                    .zip(&pivot_row)
                    .for_each(|(x, &y)| *x -= factor * y);
            }
        }
    }
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}
