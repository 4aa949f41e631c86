//! Closed-form q-characters of `U_{q_i}(sl2)`.
//!
//! A dominant sl2 monomial factors uniquely into q-strings that are pairwise
//! in general position, and its q-character is the product of the
//! characters of the strings. The expansion is reported as the multisets of
//! spectral exponents `k` at which `A^{-1}_{q^k}` is applied.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::monomial::SL2Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Sl2Error {
    #[error("sl2 monomial {0} is not dominant")]
    NotDominant(String),
    #[error("step must be positive, got {0}")]
    BadStep(i64),
    #[error("q-strings {0} and {1} are not in general position")]
    GeneralPosition(QString, QString),
}

/// The q-string `{center + step·(length − 2k + 1) : k = 1..=length}`, the
/// spectral support of the highest monomial of `W_length(q^center)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QString {
    pub center: i64,
    pub length: usize,
    pub step: i64,
}

impl QString {
    pub fn exponents(&self) -> Vec<i64> {
        let r = self.length as i64;
        // ascending order
        (1..=r)
            .rev()
            .map(|k| self.center + self.step * (r - 2 * k + 1))
            .collect()
    }

    pub fn contains_set(&self, other: &QString) -> bool {
        let mine = self.exponents();
        other.exponents().iter().all(|k| mine.contains(k))
    }

    /// The pair is in general position: either the union of supports is not
    /// itself a q-string, or one string contains the other.
    pub fn general_position(&self, other: &QString) -> bool {
        debug_assert_eq!(self.step, other.step);
        if self.contains_set(other) || other.contains_set(self) {
            return true;
        }
        let mut union: Vec<i64> = self.exponents();
        union.extend(other.exponents());
        union.sort_unstable();
        union.dedup();
        !is_q_string(&union, self.step)
    }
}

impl fmt::Display for QString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W_{}(q^{}) step {}", self.length, self.center, self.step)
    }
}

/// Whether a sorted, duplicate-free set of exponents is a q-string of the
/// given step.
fn is_q_string(sorted: &[i64], step: i64) -> bool {
    !sorted.is_empty() && sorted.windows(2).all(|w| w[1] - w[0] == 2 * step)
}

/// Splits a dominant sl2 monomial into q-strings pairwise in general
/// position. Strings are extracted longest first (ties by smallest centre);
/// every extracted string is a maximal run of the remaining support, which
/// makes any two of them nested or separated.
pub fn factor_q_strings(m: &SL2Monomial, step: i64) -> Result<Vec<QString>, Sl2Error> {
    if step <= 0 {
        return Err(Sl2Error::BadStep(step));
    }
    if !m.is_dominant() {
        return Err(Sl2Error::NotDominant(m.to_string()));
    }
    let mut counts: BTreeMap<i64, i64> = m.factors().collect();
    let mut strings = Vec::new();
    while !counts.is_empty() {
        let best = maximal_runs(&counts, step)
            .into_iter()
            .max_by(|a, b| a.length.cmp(&b.length).then(b.center.cmp(&a.center)))
            .expect("nonempty support has a run");
        for k in best.exponents() {
            let c = counts.get_mut(&k).expect("run lies in support");
            *c -= 1;
            if *c == 0 {
                counts.remove(&k);
            }
        }
        strings.push(best);
    }
    for (idx, a) in strings.iter().enumerate() {
        for b in &strings[idx + 1..] {
            if !a.general_position(b) {
                return Err(Sl2Error::GeneralPosition(*a, *b));
            }
        }
    }
    strings.sort_by(|a, b| b.length.cmp(&a.length).then(a.center.cmp(&b.center)));
    Ok(strings)
}

fn maximal_runs(counts: &BTreeMap<i64, i64>, step: i64) -> Vec<QString> {
    let mut runs = Vec::new();
    for &start in counts.keys() {
        if counts.contains_key(&(start - 2 * step)) {
            continue;
        }
        let mut end = start;
        while counts.contains_key(&(end + 2 * step)) {
            end += 2 * step;
        }
        let length = ((end - start) / (2 * step) + 1) as usize;
        runs.push(QString {
            center: (start + end) / 2,
            length,
            step,
        });
    }
    runs
}

/// The `length + 1` terms of `χ(W_r(a))`: term `i` applies
/// `A^{-1}` at `{center + step·(r − 2j + 2) : j = 1..=i}`.
pub fn string_expansion(s: &QString) -> Vec<Vec<i64>> {
    let r = s.length as i64;
    let mut out = Vec::with_capacity(s.length + 1);
    let mut current = Vec::new();
    out.push(current.clone());
    for j in 1..=r {
        current.push(s.center + s.step * (r - 2 * j + 2));
        let mut sorted = current.clone();
        sorted.sort_unstable();
        out.push(sorted);
    }
    out
}

/// One term `M̄_p` of an sl2 expansion: the multiset of `A^{-1}` positions
/// (sorted ascending) and its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Sl2Term {
    pub positions: Vec<i64>,
    pub coefficient: u64,
}

/// Expands `χ_{q_i}(V(m))` as `m · Σ_p coefficient_p · Π A^{-1}`, with the
/// empty multiset first and the rest ordered by (size, positions).
pub fn sl2_expansion(m: &SL2Monomial, step: i64) -> Result<Vec<Sl2Term>, Sl2Error> {
    let strings = factor_q_strings(m, step)?;
    let mut acc: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    acc.insert(Vec::new(), 1);
    for s in &strings {
        let factor = string_expansion(s);
        let mut next: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        for (positions, coeff) in &acc {
            for extra in &factor {
                let mut merged = positions.clone();
                merged.extend_from_slice(extra);
                merged.sort_unstable();
                *next.entry(merged).or_insert(0) += coeff;
            }
        }
        acc = next;
    }
    let mut terms: Vec<Sl2Term> = acc
        .into_iter()
        .map(|(positions, coefficient)| Sl2Term {
            positions,
            coefficient,
        })
        .collect();
    terms.sort_by(|a, b| {
        a.positions
            .len()
            .cmp(&b.positions.len())
            .then_with(|| a.positions.cmp(&b.positions))
    });
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2(factors: &[(i64, i64)]) -> SL2Monomial {
        SL2Monomial::from_factors(factors.iter().copied())
    }

    #[test]
    fn factor_mixed_multiplicity() {
        let strings = factor_q_strings(&sl2(&[(-1, 1), (1, 2)]), 1).unwrap();
        assert_eq!(
            strings,
            vec![
                QString {
                    center: 0,
                    length: 2,
                    step: 1
                },
                QString {
                    center: 1,
                    length: 1,
                    step: 1
                },
            ]
        );
    }

    #[test]
    fn factor_separated_long_root() {
        // step 2: exponents -1 and 1 differ by 2 < 2·2, so they are separate.
        let strings = factor_q_strings(&sl2(&[(-1, 1), (1, 1)]), 2).unwrap();
        assert_eq!(
            strings,
            vec![
                QString {
                    center: -1,
                    length: 1,
                    step: 2
                },
                QString {
                    center: 1,
                    length: 1,
                    step: 2
                },
            ]
        );
        assert!(factor_q_strings(&SL2Monomial::one(), 1).unwrap().is_empty());
    }

    #[test]
    fn factor_rejects_bad_input() {
        assert!(matches!(
            factor_q_strings(&sl2(&[(0, -1)]), 1),
            Err(Sl2Error::NotDominant(_))
        ));
        assert!(matches!(
            factor_q_strings(&sl2(&[(0, 1)]), 0),
            Err(Sl2Error::BadStep(0))
        ));
    }

    #[test]
    fn overlapping_strings_are_merged() {
        // {1,3} and {3,5} would not be in general position; {1,3,5} + {3} is.
        let strings = factor_q_strings(&sl2(&[(1, 1), (3, 2), (5, 1)]), 1).unwrap();
        assert_eq!(
            strings,
            vec![
                QString {
                    center: 3,
                    length: 3,
                    step: 1
                },
                QString {
                    center: 3,
                    length: 1,
                    step: 1
                },
            ]
        );
    }

    #[test]
    fn string_expansions() {
        let s = QString {
            center: 7,
            length: 1,
            step: 3,
        };
        assert_eq!(string_expansion(&s), vec![vec![], vec![10]]);
        let s = QString {
            center: 0,
            length: 2,
            step: 1,
        };
        assert_eq!(string_expansion(&s), vec![vec![], vec![2], vec![0, 2]]);
        let s = QString {
            center: 4,
            length: 0,
            step: 1,
        };
        assert_eq!(string_expansion(&s), vec![Vec::<i64>::new()]);
    }

    #[test]
    fn product_expansion() {
        let terms = sl2_expansion(&sl2(&[(-1, 1), (1, 2)]), 1).unwrap();
        let flat: Vec<(Vec<i64>, u64)> = terms
            .into_iter()
            .map(|t| (t.positions, t.coefficient))
            .collect();
        assert_eq!(
            flat,
            vec![
                (vec![], 1),
                (vec![2], 2),
                (vec![0, 2], 1),
                (vec![2, 2], 1),
                (vec![0, 2, 2], 1),
            ]
        );
        let terms = sl2_expansion(&sl2(&[(2, 1)]), 1).unwrap();
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[1].positions, vec![3]);
        let terms = sl2_expansion(&SL2Monomial::one(), 1).unwrap();
        assert_eq!(
            terms,
            vec![Sl2Term {
                positions: vec![],
                coefficient: 1
            }]
        );
    }

    #[test]
    fn general_position_definition() {
        let s = |center, length| QString {
            center,
            length,
            step: 1,
        };
        assert!(s(0, 2).general_position(&s(1, 1)));
        assert!(!s(-1, 1).general_position(&s(1, 1)));
        assert!(s(-1, 1).general_position(&s(3, 1)));
        assert!(!s(2, 2).general_position(&s(4, 2)));
    }
}
