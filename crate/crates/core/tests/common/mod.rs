//! Independent oracles shared by the integration tests. None of these call
//! into the engine or the sl2 module.

#![allow(dead_code)]

use std::collections::BTreeMap;

use qchar::monomial::a_monomial_inverse;
use qchar::{AlgebraSpec, WeightVector, YMonomial};

pub type Poly = BTreeMap<YMonomial, u64>;

pub fn y(text: &str) -> YMonomial {
    text.parse().unwrap()
}

pub fn poly(terms: &[&str]) -> Poly {
    let mut out = Poly::new();
    for t in terms {
        *out.entry(y(t)).or_insert(0) += 1;
    }
    out
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (m, c) in a {
        for (n, d) in b {
            *out.entry(m * n).or_insert(0) += c * d;
        }
    }
    out
}

/// The A1 character of a dominant monomial `Π Y_{k}` given by its list of
/// spectral exponents. Strings are peeled off smallest start first, each as
/// long as possible, and the character of the string
/// `Y_s Y_{s+2} … Y_{s+2r-2}` is written out in Y variables directly:
/// term `t` keeps the lowest `r - t` factors and inverts the rest shifted
/// up by 2.
pub fn a1_oracle(spectral: &[i64]) -> Poly {
    let mut counts: BTreeMap<i64, u32> = BTreeMap::new();
    for &k in spectral {
        *counts.entry(k).or_insert(0) += 1;
    }
    let mut result: Poly = [(YMonomial::one(), 1)].into_iter().collect();
    while let Some((&start, _)) = counts.iter().next() {
        let mut run = vec![start];
        while counts.contains_key(&(run[run.len() - 1] + 2)) {
            run.push(run[run.len() - 1] + 2);
        }
        for k in &run {
            let c = counts.get_mut(k).unwrap();
            *c -= 1;
            if *c == 0 {
                counts.remove(k);
            }
        }
        let r = run.len();
        let mut string = Poly::new();
        for t in 0..=r {
            let mut m = YMonomial::one();
            for (idx, &k) in run.iter().enumerate() {
                let factor = if idx < r - t {
                    YMonomial::var(1, k)
                } else {
                    YMonomial::var(1, k + 2).inv()
                };
                m = &m * &factor;
            }
            *string.entry(m).or_insert(0) += 1;
        }
        result = poly_mul(&result, &string);
    }
    result
}

/// Multiplicities are invariant under every simple reflection.
pub fn weyl_invariant(spec: &AlgebraSpec, weights: &BTreeMap<WeightVector, u64>) -> bool {
    weights.iter().all(|(w, c)| {
        spec.nodes().all(|i| {
            let alpha = spec.simple_root(i).unwrap();
            let l = w.0[i - 1];
            let image = WeightVector(
                w.0.iter()
                    .zip(alpha.0.iter())
                    .map(|(x, a)| x - l * a)
                    .collect(),
            );
            weights.get(&image) == Some(c)
        })
    })
}

/// Checks `m = m_plus · Π A^{-e}` with every `e ≥ 0` by rebuilding the
/// product from the claimed exponents.
pub fn in_a_lattice_below(spec: &AlgebraSpec, m_plus: &YMonomial, m: &YMonomial) -> bool {
    let Some(exps) = qchar::monomial::solve_a_factorization(spec, m_plus, m) else {
        return false;
    };
    if exps.values().any(|&e| e < 0) {
        return false;
    }
    let mut rebuilt = m_plus.clone();
    for (&(i, k), &e) in &exps {
        rebuilt = &rebuilt * &a_monomial_inverse(spec, i, k).unwrap().pow(e);
    }
    &rebuilt == m
}
