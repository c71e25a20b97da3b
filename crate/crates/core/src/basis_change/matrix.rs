//! Dense exact matrices, basis tags/keys and the `TransitionMatrix` type.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::curve_classes::HilbLKey;
use crate::error::{consistency, Error, Result};
use crate::fock::{b2_keys, B2Key, FockVector};
use crate::incidence::{enumerate_incidence_pairs, IncidencePair};
use crate::partitions::{enumerate_partitions, Partition};
use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r == c { Scalar::one() } else { Scalar::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            debug_assert_eq!(row.len(), inner);
            let mut out = vec![Scalar::zero(); cols];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k]) {
                    if !y.is_zero() {
                        *o += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|c| a.iter().map(|row| row[c].clone()).collect())
        .collect()
}

/// Exact Gauss-Jordan inverse over the rationals.
pub fn inverse(a: &Matrix) -> Result<Matrix> {
    let n = a.len();
    let mut left: Matrix = a.clone();
    let mut right = identity(n);
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !left[r][col].is_zero()) {
            Some(p) => p,
            None => return consistency(format!("singular matrix (column {col})")),
        };
        left.swap(col, pivot);
        right.swap(col, pivot);
        let inv = left[col][col].recip();
        for x in left[col].iter_mut().chain(right[col].iter_mut()) {
            *x *= &inv;
        }
        for r in 0..n {
            if r == col || left[r][col].is_zero() {
                continue;
            }
            let f = left[r][col].clone();
            for c in 0..n {
                let dl = &f * &left[col][c];
                left[r][c] -= dl;
                let dr = &f * &right[col][c];
                right[r][c] -= dr;
            }
        }
    }
    Ok(right)
}

pub fn is_identity(a: &Matrix) -> bool {
    a.iter().enumerate().all(|(r, row)| {
        row.iter()
            .enumerate()
            .all(|(c, x)| if r == c { x.is_one() } else { x.is_zero() })
    })
}

/// The bases between which transition matrices are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisTag {
    /// Fixed-point classes `[λ,μ]`.
    B1,
    /// Operator monomials `t̃^i ã_{-ν}|0⟩`.
    B2,
    /// Curve classes `[L̃^{λ,μ}C]`.
    B3,
    /// Hilbert-scheme fixed-point classes `[λ]`.
    HilbFixed,
    /// Hilbert-scheme power-sum monomials `a_{-ν}|0⟩`.
    HilbP,
    /// Hilbert-scheme curve classes `[L^λC]`.
    HilbL,
}

impl BasisTag {
    pub const ALL: [BasisTag; 6] = [
        BasisTag::B1,
        BasisTag::B2,
        BasisTag::B3,
        BasisTag::HilbFixed,
        BasisTag::HilbP,
        BasisTag::HilbL,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BasisTag::B1 => "b1",
            BasisTag::B2 => "b2",
            BasisTag::B3 => "b3",
            BasisTag::HilbFixed => "hilb-fixed",
            BasisTag::HilbP => "hilb-p",
            BasisTag::HilbL => "hilb-l",
        }
    }

    pub fn is_incidence(self) -> bool {
        matches!(self, BasisTag::B1 | BasisTag::B2 | BasisTag::B3)
    }

    /// The ordered keys of this basis in degree `n`.
    pub fn keys(self, n: usize) -> Vec<BasisKey> {
        match self {
            BasisTag::B1 | BasisTag::B3 => enumerate_incidence_pairs(n)
                .into_iter()
                .map(BasisKey::Pair)
                .collect(),
            BasisTag::B2 => b2_keys(n).into_iter().map(BasisKey::B2).collect(),
            BasisTag::HilbFixed | BasisTag::HilbP | BasisTag::HilbL => enumerate_partitions(n)
                .into_iter()
                .map(BasisKey::Partition)
                .collect(),
        }
    }
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BasisTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BasisTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown basis {s:?}")))
    }
}

/// A key of any basis, serialized in the native shape of its basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BasisKey {
    Pair(IncidencePair),
    B2(B2Key),
    Partition(Partition),
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKey::Pair(p) => p.fmt(f),
            BasisKey::B2(k) => k.fmt(f),
            BasisKey::Partition(p) => p.fmt(f),
        }
    }
}

/// Key types that can be looked up in a [`TransitionMatrix`].
pub trait BasisElement: Ord + Clone {
    fn to_key(&self) -> BasisKey;
    fn from_key(k: &BasisKey) -> Option<Self>;
}

impl BasisElement for IncidencePair {
    fn to_key(&self) -> BasisKey {
        BasisKey::Pair(self.clone())
    }

    fn from_key(k: &BasisKey) -> Option<Self> {
        match k {
            BasisKey::Pair(p) => Some(p.clone()),
            _ => None,
        }
    }
}

impl BasisElement for B2Key {
    fn to_key(&self) -> BasisKey {
        BasisKey::B2(self.clone())
    }

    fn from_key(k: &BasisKey) -> Option<Self> {
        match k {
            BasisKey::B2(p) => Some(p.clone()),
            _ => None,
        }
    }
}

impl BasisElement for Partition {
    fn to_key(&self) -> BasisKey {
        BasisKey::Partition(self.clone())
    }

    fn from_key(k: &BasisKey) -> Option<Self> {
        match k {
            BasisKey::Partition(p) => Some(p.clone()),
            _ => None,
        }
    }
}

impl BasisElement for HilbLKey {
    fn to_key(&self) -> BasisKey {
        BasisKey::Partition(self.0.clone())
    }

    fn from_key(k: &BasisKey) -> Option<Self> {
        Partition::from_key(k).map(HilbLKey)
    }
}

/// Square exact matrix expressing each source basis element of degree `n`
/// in the target basis: row `r` holds the target coordinates of source key
/// `r`. Composition is therefore `A_in_C = A_in_B · B_in_C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix {
    pub n: usize,
    pub source: BasisTag,
    pub target: BasisTag,
    pub source_keys: Vec<BasisKey>,
    pub target_keys: Vec<BasisKey>,
    pub rows: Matrix,
    /// The partial order along which the matrix is triangular, if known.
    pub triangularity: Option<String>,
}

impl TransitionMatrix {
    pub fn new(
        n: usize,
        source: BasisTag,
        target: BasisTag,
        rows: Matrix,
        triangularity: Option<String>,
    ) -> Self {
        TransitionMatrix {
            n,
            source,
            target,
            source_keys: source.keys(n),
            target_keys: target.keys(n),
            rows,
            triangularity,
        }
    }

    pub fn identity(n: usize, tag: BasisTag) -> Self {
        let dim = tag.keys(n).len();
        TransitionMatrix::new(n, tag, tag, identity(dim), Some("diagonal".into()))
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, source: &BasisKey, target: &BasisKey) -> Scalar {
        let r = self.source_keys.iter().position(|k| k == source);
        let c = self.target_keys.iter().position(|k| k == target);
        match (r, c) {
            (Some(r), Some(c)) => self.rows[r][c].clone(),
            _ => Scalar::zero(),
        }
    }

    /// The inverse transition (target to source).
    pub fn inverse(&self) -> Result<Self> {
        Ok(TransitionMatrix {
            n: self.n,
            source: self.target,
            target: self.source,
            source_keys: self.target_keys.clone(),
            target_keys: self.source_keys.clone(),
            rows: inverse(&self.rows)?,
            triangularity: None,
        })
    }

    /// `self` followed by `next` (requires `self.target == next.source`).
    pub fn then(&self, next: &Self) -> Result<Self> {
        if self.target != next.source || self.n != next.n {
            return consistency(format!(
                "cannot compose {}→{} with {}→{}",
                self.source, self.target, next.source, next.target
            ));
        }
        Ok(TransitionMatrix {
            n: self.n,
            source: self.source,
            target: next.target,
            source_keys: self.source_keys.clone(),
            target_keys: next.target_keys.clone(),
            rows: mat_mul(&self.rows, &next.rows),
            triangularity: None,
        })
    }

    /// Rewrites a source-basis vector in the target basis.
    pub fn apply<S: BasisElement, T: BasisElement>(&self, v: &FockVector<S>) -> Result<FockVector<T>> {
        let index: HashMap<&BasisKey, usize> =
            self.source_keys.iter().enumerate().map(|(j, k)| (k, j)).collect();
        let targets: Vec<T> = self
            .target_keys
            .iter()
            .map(|k| {
                T::from_key(k)
                    .ok_or_else(|| Error::Domain(format!("key {k} does not belong to basis {}", self.target)))
            })
            .collect::<Result<_>>()?;
        let mut out = FockVector::zero();
        for (k, c) in v.iter() {
            let key = k.to_key();
            let r = *index.get(&key).ok_or_else(|| {
                Error::Domain(format!(
                    "key {key} is not in basis {} of degree {}",
                    self.source, self.n
                ))
            })?;
            for (t, x) in targets.iter().zip(&self.rows[r]) {
                if !x.is_zero() {
                    out.add_term(t.clone(), c * x);
                }
            }
        }
        Ok(out)
    }

    /// The target-basis expansion of source key number `r`.
    pub fn row_vector<T: BasisElement>(&self, r: usize) -> FockVector<T> {
        FockVector::from_terms(
            self.target_keys
                .iter()
                .zip(&self.rows[r])
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| (T::from_key(k).expect("key of target basis"), x.clone())),
        )
    }
}
