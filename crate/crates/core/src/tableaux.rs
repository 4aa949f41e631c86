//! Young tableaux for types A and C.
//!
//! Each box carries a monomial depending on its letter and position, and a
//! tableau's monomial is the product over its boxes. Multiplying a box by a
//! suitable `A^{-1}` moves its letter one step along the alphabet.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cartan::{AlgebraSpec, CartanError, Family};
use crate::engine::QCharacter;
use crate::monomial::{a_monomial_inverse, YMonomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("tableaux are only available for types A and C, not {0}")]
    UnsupportedFamily(Family),
    #[error("letter {letter} is not in the alphabet of {family}{rank}")]
    InvalidLetter {
        letter: Letter,
        family: Family,
        rank: usize,
    },
    #[error("letter {0} has no successor")]
    TerminalLetter(Letter),
    #[error("box positions start at 1, got ({0},{1})")]
    BadPosition(i64, i64),
    #[error("action on {letter} does not reach {next}")]
    ActionMismatch { letter: Letter, next: Letter },
    #[error("invalid shape: {0}")]
    Shape(String),
    #[error(transparent)]
    Algebra(#[from] CartanError),
    #[error("cannot parse {text:?}: {message}")]
    Parse { text: String, message: String },
}

/// A tableau letter; `Barred(a)` is `ā`, written `ab` in text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    Plain(u32),
    Barred(u32),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Plain(a) => write!(f, "{a}"),
            Letter::Barred(a) => write!(f, "{a}b"),
        }
    }
}

impl FromStr for Letter {
    type Err = TableauError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |message: &str| TableauError::Parse {
            text: s.to_string(),
            message: message.to_string(),
        };
        let (digits, barred) = match s.strip_suffix('b') {
            Some(rest) => (rest, true),
            None => (s, false),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("expected a letter such as 2 or 2b"));
        }
        let a: u32 = digits.parse().map_err(|_| err("letter too large"))?;
        if a == 0 {
            return Err(err("letters start at 1"));
        }
        Ok(if barred {
            Letter::Barred(a)
        } else {
            Letter::Plain(a)
        })
    }
}

fn check_family(family: Family) -> Result<(), TableauError> {
    match family {
        Family::A | Family::C => Ok(()),
        other => Err(TableauError::UnsupportedFamily(other)),
    }
}

/// Position of `letter` in the alphabet order, starting at 0.
pub fn letter_index(family: Family, rank: usize, letter: Letter) -> Result<usize, TableauError> {
    check_family(family)?;
    let n = rank as u32;
    let invalid = || TableauError::InvalidLetter {
        letter,
        family,
        rank,
    };
    match (family, letter) {
        (Family::A, Letter::Plain(a)) if a <= n + 1 => Ok(a as usize - 1),
        (Family::C, Letter::Plain(a)) if a <= n => Ok(a as usize - 1),
        (Family::C, Letter::Barred(a)) if a <= n => Ok((2 * n - a) as usize),
        _ => Err(invalid()),
    }
}

/// The alphabet in increasing order.
pub fn alphabet(family: Family, rank: usize) -> Result<Vec<Letter>, TableauError> {
    check_family(family)?;
    let n = rank as u32;
    Ok(match family {
        Family::A => (1..=n + 1).map(Letter::Plain).collect(),
        _ => (1..=n)
            .map(Letter::Plain)
            .chain((1..=n).rev().map(Letter::Barred))
            .collect(),
    })
}

fn y_or_unit(node: u32, rank: usize, spectral: i64, exponent: i64) -> Vec<((usize, i64), i64)> {
    if node == 0 || node as usize > rank {
        Vec::new()
    } else {
        vec![((node as usize, spectral), exponent)]
    }
}

/// The monomial of a box in row `i`, column `j`.
pub fn box_monomial(
    family: Family,
    rank: usize,
    letter: Letter,
    i: i64,
    j: i64,
) -> Result<YMonomial, TableauError> {
    letter_index(family, rank, letter)?;
    if i < 1 || j < 1 {
        return Err(TableauError::BadPosition(i, j));
    }
    let k = -2 * i + 2 * j;
    let n = rank as i64;
    let factors = match letter {
        Letter::Plain(a) => {
            let s = a as i64;
            let mut f = y_or_unit(a, rank, k + s - 1, 1);
            f.extend(y_or_unit(a - 1, rank, k + s, -1));
            f
        }
        Letter::Barred(a) => {
            let s = a as i64;
            let mut f = y_or_unit(a - 1, rank, k + 2 * n - s + 2, 1);
            f.extend(y_or_unit(a, rank, k + 2 * n - s + 3, -1));
            f
        }
    };
    Ok(YMonomial::from_factors(factors).expect("box exponents are small"))
}

/// The `A^{-1}_{node,spectral}` taking `letter` at `(i, j)` to the next
/// letter, verified against the box monomials.
pub fn letter_action_check(
    family: Family,
    rank: usize,
    letter: Letter,
    i: i64,
    j: i64,
) -> Result<(usize, i64, Letter), TableauError> {
    letter_index(family, rank, letter)?;
    let k = -2 * i + 2 * j;
    let n = rank as u32;
    let (node, spectral, next) = match (family, letter) {
        (Family::A, Letter::Plain(a)) if a <= n => (a, k + a as i64, Letter::Plain(a + 1)),
        (Family::C, Letter::Plain(a)) if a < n => (a, k + a as i64, Letter::Plain(a + 1)),
        (Family::C, Letter::Plain(a)) => (a, k + a as i64 + 1, Letter::Barred(a)),
        (Family::C, Letter::Barred(a)) if a > 1 => (
            a - 1,
            k + 2 * rank as i64 - a as i64 + 3,
            Letter::Barred(a - 1),
        ),
        _ => return Err(TableauError::TerminalLetter(letter)),
    };
    let spec = AlgebraSpec::new(family, rank)?;
    let a_inv = a_monomial_inverse(&spec, node as usize, spectral)?;
    let moved = &box_monomial(family, rank, letter, i, j)? * &a_inv;
    if moved != box_monomial(family, rank, next, i, j)? {
        return Err(TableauError::ActionMismatch { letter, next });
    }
    Ok((node as usize, spectral, next))
}

/// A Young diagram given by its row lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    rows: Vec<usize>,
}

impl Shape {
    pub fn new(rows: Vec<usize>) -> Result<Self, TableauError> {
        if rows.is_empty() || rows.contains(&0) {
            return Err(TableauError::Shape("rows must be positive".into()));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(TableauError::Shape(format!(
                "rows {rows:?} are not weakly decreasing"
            )));
        }
        Ok(Shape { rows })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Shape {
    type Err = TableauError;

    /// Comma-separated row lengths, e.g. `2,1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rows = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|p| {
                p.trim().parse::<usize>().map_err(|_| TableauError::Parse {
                    text: s.to_string(),
                    message: "expected comma-separated row lengths".into(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Shape::new(rows)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    rows: Vec<Vec<Letter>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<Letter>>) -> Result<Self, TableauError> {
        Shape::new(rows.iter().map(Vec::len).collect())?;
        Ok(Tableau { rows })
    }

    pub fn rows(&self) -> &[Vec<Letter>] {
        &self.rows
    }

    pub fn shape(&self) -> Shape {
        Shape {
            rows: self.rows.iter().map(Vec::len).collect(),
        }
    }

    /// Cells as `(row, column, letter)`, 1-based.
    pub fn cells(&self) -> impl Iterator<Item = (i64, i64, Letter)> + '_ {
        self.rows.iter().enumerate().flat_map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(move |(c, &l)| (r as i64 + 1, c as i64 + 1, l))
        })
    }

    pub fn check_alphabet(&self, family: Family, rank: usize) -> Result<(), TableauError> {
        for (_, _, l) in self.cells() {
            letter_index(family, rank, l)?;
        }
        Ok(())
    }

    /// Rows weakly increase and columns strictly increase.
    pub fn is_semistandard(&self, family: Family, rank: usize) -> Result<bool, TableauError> {
        let idx = |l| letter_index(family, rank, l);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &l) in row.iter().enumerate() {
                let here = idx(l)?;
                if c > 0 && idx(row[c - 1])? > here {
                    return Ok(false);
                }
                if r > 0 && idx(self.rows[r - 1][c])? >= here {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(Letter::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        f.write_str(&rows.join(" / "))
    }
}

impl FromStr for Tableau {
    type Err = TableauError;

    /// Rows separated by `/`, letters by whitespace: `1 1 1 / 2 2 / 3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rows = s
            .split('/')
            .map(|row| row.split_whitespace().map(str::parse).collect())
            .collect::<Result<Vec<Vec<Letter>>, _>>()?;
        Tableau::new(rows)
    }
}

/// Parses a candidate list: one tableau per line, blank lines and lines
/// starting with `#` skipped.
pub fn parse_tableau_list(text: &str) -> Result<Vec<Tableau>, TableauError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::parse)
        .collect()
}

pub fn tableau_monomial(
    family: Family,
    rank: usize,
    t: &Tableau,
) -> Result<YMonomial, TableauError> {
    let mut m = YMonomial::one();
    for (i, j, l) in t.cells() {
        m = &m * &box_monomial(family, rank, l, i, j)?;
    }
    Ok(m)
}

/// All semistandard tableaux of the shape, in lexicographic order of their
/// row-major readings.
pub fn enumerate_semistandard(
    family: Family,
    rank: usize,
    shape: &Shape,
) -> Result<Vec<Tableau>, TableauError> {
    let letters = alphabet(family, rank)?;
    let cells: Vec<(usize, usize)> = shape
        .rows()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.rows().iter().map(|&len| vec![0; len]).collect();
    let mut out = Vec::new();
    fill(&cells, 0, &letters, &mut grid, &mut out);
    Ok(out)
}

fn fill(
    cells: &[(usize, usize)],
    pos: usize,
    letters: &[Letter],
    grid: &mut Vec<Vec<usize>>,
    out: &mut Vec<Tableau>,
) {
    let Some(&(r, c)) = cells.get(pos) else {
        out.push(Tableau {
            rows: grid
                .iter()
                .map(|row| row.iter().map(|&x| letters[x]).collect())
                .collect(),
        });
        return;
    };
    let mut lo = 0;
    if c > 0 {
        lo = lo.max(grid[r][c - 1]);
    }
    if r > 0 {
        lo = lo.max(grid[r - 1][c] + 1);
    }
    for x in lo..letters.len() {
        grid[r][c] = x;
        fill(cells, pos + 1, letters, grid, out);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub monomial: YMonomial,
    /// Coefficient in the character.
    pub expected: u64,
    /// Number of tableaux realizing the monomial.
    pub realized: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchReport {
    pub shape: Shape,
    pub tableau_count: usize,
    pub assignment: BTreeMap<YMonomial, Vec<Tableau>>,
    pub discrepancies: Vec<Discrepancy>,
    /// Candidates whose shape differs from the requested one.
    pub foreign_shape: Vec<Tableau>,
}

impl MatchReport {
    pub fn is_match(&self) -> bool {
        self.discrepancies.is_empty() && self.foreign_shape.is_empty()
    }
}

/// Compares a character with a sum of tableau monomials. Without explicit
/// candidates the semistandard tableaux of `shape` are used.
pub fn match_character(
    qchar: &QCharacter,
    family: Family,
    rank: usize,
    shape: &Shape,
    candidates: Option<&[Tableau]>,
) -> Result<MatchReport, TableauError> {
    let owned;
    let candidates = match candidates {
        Some(c) => c,
        None => {
            owned = enumerate_semistandard(family, rank, shape)?;
            &owned
        }
    };
    let mut assignment: BTreeMap<YMonomial, Vec<Tableau>> = BTreeMap::new();
    let mut foreign_shape = Vec::new();
    for t in candidates {
        if &t.shape() != shape {
            foreign_shape.push(t.clone());
            continue;
        }
        t.check_alphabet(family, rank)?;
        assignment
            .entry(tableau_monomial(family, rank, t)?)
            .or_default()
            .push(t.clone());
    }
    let mut keys: Vec<&YMonomial> = qchar.terms().keys().chain(assignment.keys()).collect();
    keys.sort();
    keys.dedup();
    let discrepancies = keys
        .into_iter()
        .filter_map(|m| {
            let expected = qchar.coefficient(m);
            let realized = assignment.get(m).map_or(0, |v| v.len() as u64);
            (expected != realized).then(|| Discrepancy {
                monomial: m.clone(),
                expected,
                realized,
            })
        })
        .collect();
    Ok(MatchReport {
        shape: shape.clone(),
        tableau_count: candidates.len(),
        assignment,
        discrepancies,
        foreign_shape,
    })
}
