//! Partitions and Young-diagram combinatorics.
//!
//! Cells use the monomial convention of the fixed-point ideals
//! `I_λ = (w^{λ_1}, z w^{λ_2}, …, z^r)`: the monomial `z^a w^b` is the cell
//! `(row = a, col = b)`, 0-based, and `(r, c)` lies in the diagram iff
//! `c < λ_{r+1}`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::factorial;

/// A partition stored as weakly decreasing positive parts.
///
/// The derived `Ord` is lexicographic on the parts; enumeration order
/// everywhere in the crate is the *reverse* of it, so `(n)` comes first and
/// `(1^n)` last.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (j, p) in self.parts.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// A cell of a Young diagram, `(row, col)` = exponents of `(z, w)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl From<[usize; 2]> for Cell {
    fn from([row, col]: [usize; 2]) -> Self {
        Cell { row, col }
    }
}

impl From<Cell> for [usize; 2] {
    fn from(c: Cell) -> Self {
        [c.row, c.col]
    }
}

/// A canonical generator `α_j` of the monomial ideal of a partition,
/// i.e. an addable corner of its diagram.
///
/// `p` is the vertical distance to `α_{j+1}` (absent for the last corner)
/// and `q` the horizontal distance to `α_{j-1}` (absent for the first).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Corner {
    pub index: usize,
    pub cell: Cell,
    pub p: Option<usize>,
    pub q: Option<usize>,
}

impl Partition {
    /// Builds a partition, sorting the parts and dropping zeros.
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Strict constructor: parts must already be weakly decreasing and positive.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return domain(format!("partition {parts:?} has a zero part"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return domain(format!("partition {parts:?} is not weakly decreasing"));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_{r+1}` in 1-based notation; zero past the last part.
    pub fn part(&self, row: usize) -> usize {
        self.parts.get(row).copied().unwrap_or(0)
    }

    /// Number of parts equal to `v` (`m_v(λ)`).
    pub fn multiplicity(&self, v: usize) -> usize {
        self.parts.iter().filter(|&&p| p == v).count()
    }

    /// Distinct part values, largest first, with their multiplicities.
    pub fn distinct_parts(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (0..width)
            .map(|c| self.parts.iter().take_while(|&&p| p > c).count())
            .collect();
        Partition { parts }
    }

    pub fn contains_cell(&self, c: Cell) -> bool {
        c.col < self.part(c.row)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| Cell::new(r, c)))
    }

    /// Inserts one part of value `v` (no-op for `v = 0`).
    pub fn with_part(&self, v: usize) -> Partition {
        let mut parts = self.parts.clone();
        if v > 0 {
            let pos = parts.iter().position(|&p| p < v).unwrap_or(parts.len());
            parts.insert(pos, v);
        }
        Partition { parts }
    }

    /// Removes one part of value `v`; `None` if `v` is not a part.
    pub fn without_part(&self, v: usize) -> Option<Partition> {
        let pos = self.parts.iter().position(|&p| p == v)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(Partition { parts })
    }

    /// Replaces one part of value `from` by `to` (either may be `0`, meaning
    /// "append" / "drop"). `None` if `from > 0` is not a part.
    pub fn replace_part(&self, from: usize, to: usize) -> Option<Partition> {
        let base = if from == 0 {
            self.clone()
        } else {
            self.without_part(from)?
        };
        Some(base.with_part(to))
    }

    /// The partition obtained by adding the cell `c`, if it is addable.
    pub fn add_cell(&self, c: Cell) -> Option<Partition> {
        if c.col != self.part(c.row) || (c.row > 0 && self.part(c.row - 1) <= c.col) {
            return None;
        }
        let mut parts = self.parts.clone();
        if c.row == parts.len() {
            parts.push(1);
        } else {
            parts[c.row] += 1;
        }
        Some(Partition { parts })
    }
}

impl<const N: usize> From<[usize; N]> for Partition {
    fn from(parts: [usize; N]) -> Self {
        Partition::from_parts(parts.to_vec())
    }
}

/// All partitions of `n`, in reverse-lexicographic order: `(n)` first.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn hook_length(lambda: &Partition, c: Cell) -> Result<usize> {
    if !lambda.contains_cell(c) {
        return domain(format!(
            "cell ({}, {}) is outside the diagram of {lambda}",
            c.row, c.col
        ));
    }
    let arm = lambda.part(c.row) - c.col - 1;
    let leg = lambda.parts[c.row + 1..]
        .iter()
        .take_while(|&&p| p > c.col)
        .count();
    Ok(arm + leg + 1)
}

/// Product of all hook lengths; `1` for the empty partition.
pub fn hook_product(lambda: &Partition) -> BigInt {
    lambda
        .cells()
        .map(|c| hook_length(lambda, c).expect("cell of the diagram"))
        .fold(BigInt::one(), |acc, h| acc * BigInt::from(h))
}

pub fn step_length(lambda: &Partition) -> usize {
    lambda.distinct_parts().len()
}

/// `𝔷_ν = ∏_j j^{m_j} m_j!`
pub fn z_factor(nu: &Partition) -> BigInt {
    nu.distinct_parts()
        .into_iter()
        .fold(BigInt::one(), |acc, (v, m)| {
            acc * BigInt::from(v).pow(m as u32) * factorial(m)
        })
}

/// Dominance order `λ₁ ≤ λ₂`; partitions of different sizes are incomparable.
pub fn dominance_le(l1: &Partition, l2: &Partition) -> bool {
    if l1.size() != l2.size() {
        return false;
    }
    let len = l1.len().max(l2.len());
    let (mut s1, mut s2) = (0, 0);
    for j in 0..len {
        s1 += l1.part(j);
        s2 += l2.part(j);
        if s1 > s2 {
            return false;
        }
    }
    true
}

/// The canonical generators `α_0, …, α_m` (`m = s(λ)`) of the monomial
/// ideal of `λ`, top-right to bottom-left.
pub fn canonical_generators(lambda: &Partition) -> Vec<Corner> {
    let groups = lambda.distinct_parts();
    let m = groups.len();
    let mut corners = Vec::with_capacity(m + 1);
    let mut row = 0;
    for j in 0..=m {
        let col = groups.get(j).map_or(0, |&(v, _)| v);
        let p = groups.get(j).map(|&(_, mult)| mult);
        let q = (j > 0).then(|| groups[j - 1].0 - col);
        corners.push(Corner {
            index: j,
            cell: Cell::new(row, col),
            p,
            q,
        });
        row += p.unwrap_or(0);
    }
    corners
}
