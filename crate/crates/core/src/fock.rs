//! Sparse exact vectors over basis keys, the Heisenberg and translation
//! operators on the operator basis `t̃^i ã_{-ν}|0⟩`, and the bilinear
//! pairings of every basis in use.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Result};
use crate::incidence::{h_pair, IncidencePair};
use crate::partitions::{hook_product, z_factor, Partition};
use crate::scalar::{parse_fraction, to_fraction_string, Scalar};

/// Keys carrying a degree (`n` of the graded piece they live in).
pub trait Graded {
    fn degree(&self) -> usize;
}

impl Graded for Partition {
    fn degree(&self) -> usize {
        self.size()
    }
}

impl Graded for IncidencePair {
    fn degree(&self) -> usize {
        self.lambda().size()
    }
}

/// The basis vector `t̃^i ã_{-ν}|0⟩`; `(0, ∅)` is the vacuum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct B2Key {
    pub i: usize,
    pub nu: Partition,
}

impl B2Key {
    pub fn new(i: usize, nu: Partition) -> Self {
        B2Key { i, nu }
    }

    pub fn vacuum() -> Self {
        B2Key::new(0, Partition::empty())
    }
}

impl Graded for B2Key {
    fn degree(&self) -> usize {
        self.i + self.nu.size()
    }
}

impl fmt::Display for B2Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{} a_-{}", self.i, self.nu)
    }
}

/// All `B2Key`s of degree `n`, ordered by `i` ascending and then `ν` in
/// reverse-lexicographic order.
pub fn b2_keys(n: usize) -> Vec<B2Key> {
    (0..=n)
        .flat_map(|i| {
            crate::partitions::enumerate_partitions(n - i)
                .into_iter()
                .map(move |nu| B2Key::new(i, nu))
        })
        .collect()
}

/// A finite linear combination of keys with nonzero exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockVector<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord> Default for FockVector<K> {
    fn default() -> Self {
        FockVector {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> FockVector<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, Scalar::from_integer(BigInt::from(1)))
    }

    pub fn term(key: K, coeff: Scalar) -> Self {
        let mut v = Self::zero();
        v.add_term(key, coeff);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, Scalar)>) -> Self {
        let mut v = Self::zero();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    /// Adds `coeff · key`, dropping the entry if it cancels.
    pub fn add_term(&mut self, key: K, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FockVector {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    /// Applies the linear extension of `f` (defined on basis keys).
    pub fn map_linear<K2, F>(&self, mut f: F) -> FockVector<K2>
    where
        K2: Ord + Clone,
        F: FnMut(&K) -> FockVector<K2>,
    {
        let mut out = FockVector::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn try_map_linear<K2, F>(&self, mut f: F) -> Result<FockVector<K2>>
    where
        K2: Ord + Clone,
        F: FnMut(&K) -> Result<FockVector<K2>>,
    {
        let mut out = FockVector::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }

    /// Keeps only the terms whose key satisfies `pred`.
    pub fn filter(&self, mut pred: impl FnMut(&K) -> bool) -> Self {
        FockVector {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| pred(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }
}

impl<K: Ord + Clone + Graded> FockVector<K> {
    /// The common degree of all keys, if there is one (`None` for zero or
    /// mixed vectors).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(Graded::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Splits into homogeneous components.
    pub fn by_degree(&self) -> BTreeMap<usize, Self> {
        let mut out: BTreeMap<usize, Self> = BTreeMap::new();
        for (k, c) in &self.terms {
            out.entry(k.degree()).or_default().add_term(k.clone(), c.clone());
        }
        out
    }
}

impl<K: Ord + Clone> Add for &FockVector<K> {
    type Output = FockVector<K>;

    fn add(self, rhs: Self) -> FockVector<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_integer(1.into()));
        out
    }
}

impl<K: Ord + Clone> Sub for &FockVector<K> {
    type Output = FockVector<K>;

    fn sub(self, rhs: Self) -> FockVector<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_integer((-1).into()));
        out
    }
}

impl<K: Ord + Clone> Neg for &FockVector<K> {
    type Output = FockVector<K>;

    fn neg(self) -> FockVector<K> {
        self.scale(&Scalar::from_integer((-1).into()))
    }
}

impl<K: Ord + Clone> Mul<&Scalar> for &FockVector<K> {
    type Output = FockVector<K>;

    fn mul(self, rhs: &Scalar) -> FockVector<K> {
        self.scale(rhs)
    }
}

impl<K: Ord + fmt::Display> fmt::Display for FockVector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (j, (k, c)) in self.terms.iter().enumerate() {
            if j > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{k}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermDoc<K> {
    key: K,
    coeff: String,
}

impl<K: Ord + Serialize> Serialize for FockVector<K> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (k, c) in &self.terms {
            seq.serialize_element(&TermDoc {
                key: k,
                coeff: to_fraction_string(c),
            })?;
        }
        seq.end()
    }
}

impl<'de, K: Ord + Clone + DeserializeOwned> Deserialize<'de> for FockVector<K> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let docs: Vec<TermDoc<K>> = Vec::deserialize(d)?;
        let mut v = FockVector::zero();
        for t in docs {
            let c = parse_fraction(&t.coeff).map_err(serde::de::Error::custom)?;
            v.add_term(t.key, c);
        }
        Ok(v)
    }
}

// ---------------------------------------------------------------------------
// Operators on the B̃₂ basis

fn check_positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return domain(format!("{what} index must be positive"));
    }
    Ok(())
}

/// `ã_{-n}`: `(i, ν) ↦ (i, ν ∪ {n})`.
pub fn creation(n: usize, v: &FockVector<B2Key>) -> Result<FockVector<B2Key>> {
    check_positive(n, "creation")?;
    Ok(v.map_linear(|k| FockVector::basis(B2Key::new(k.i, k.nu.with_part(n)))))
}

/// `ã_n`: `(i, ν) ↦ n·m_n(ν)·(i, ν ∖ {n})`.
pub fn annihilation(n: usize, v: &FockVector<B2Key>) -> Result<FockVector<B2Key>> {
    check_positive(n, "annihilation")?;
    Ok(v.map_linear(|k| match k.nu.without_part(n) {
        Some(rest) => FockVector::term(
            B2Key::new(k.i, rest),
            Scalar::from_integer(BigInt::from(n * k.nu.multiplicity(n))),
        ),
        None => FockVector::zero(),
    }))
}

/// `t̃`: `(i, ν) ↦ (i + 1, ν)`.
pub fn translate(v: &FockVector<B2Key>) -> FockVector<B2Key> {
    v.map_linear(|k| FockVector::basis(B2Key::new(k.i + 1, k.nu.clone())))
}

/// `t̃†`: `(i, ν) ↦ (i − 1, ν)`, killing `i = 0`.
pub fn cotranslate(v: &FockVector<B2Key>) -> FockVector<B2Key> {
    v.map_linear(|k| match k.i {
        0 => FockVector::zero(),
        i => FockVector::basis(B2Key::new(i - 1, k.nu.clone())),
    })
}

/// `u^{-j} ⊗ ã_n`, i.e. `t̃^j ∘ ã_n`; `ã_0 = 0`.
pub fn loop_action(j: usize, n: i64, v: &FockVector<B2Key>) -> Result<FockVector<B2Key>> {
    let mut out = match n {
        0 => return Ok(FockVector::zero()),
        n if n < 0 => creation(n.unsigned_abs() as usize, v)?,
        n => annihilation(n as usize, v)?,
    };
    for _ in 0..j {
        out = translate(&out);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Operators on the Hilbert-scheme power-sum basis `a_{-ν}|0⟩`

/// `a_{-n}` on the p-basis of `⊕ H_T^{2n}(S^[n])`.
pub fn hilb_creation(n: usize, v: &FockVector<Partition>) -> Result<FockVector<Partition>> {
    check_positive(n, "creation")?;
    Ok(v.map_linear(|nu| FockVector::basis(nu.with_part(n))))
}

/// `a_n` on the p-basis.
pub fn hilb_annihilation(n: usize, v: &FockVector<Partition>) -> Result<FockVector<Partition>> {
    check_positive(n, "annihilation")?;
    Ok(v.map_linear(|nu| match nu.without_part(n) {
        Some(rest) => FockVector::term(rest, Scalar::from_integer(BigInt::from(n * nu.multiplicity(n)))),
        None => FockVector::zero(),
    }))
}

// ---------------------------------------------------------------------------
// Pairings

fn diagonal_pairing<K: Ord + Clone>(
    v: &FockVector<K>,
    w: &FockVector<K>,
    mut weight: impl FnMut(&K) -> Result<BigInt>,
) -> Result<Scalar> {
    let mut sum = Scalar::zero();
    for (k, a) in v.iter() {
        let b = w.coeff(k);
        if !b.is_zero() {
            sum += a * b * Scalar::from_integer(weight(k)?);
        }
    }
    Ok(sum)
}

/// `⟨t̃^i ã_{-ν}|0⟩, t̃^j ã_{-ρ}|0⟩⟩ = 𝔷_ν δ_{ij} δ_{νρ}`.
pub fn pair_b2(v: &FockVector<B2Key>, w: &FockVector<B2Key>) -> Scalar {
    diagonal_pairing(v, w, |k| Ok(z_factor(&k.nu))).expect("infallible weight")
}

/// `⟨[λ,μ], [λ̃,μ̃]⟩ = δ h(λ,μ)`.
pub fn pair_b1(v: &FockVector<IncidencePair>, w: &FockVector<IncidencePair>) -> Result<Scalar> {
    diagonal_pairing(v, w, h_pair)
}

/// Hilbert-scheme pairing in the fixed-point basis: `⟨[λ],[λ̃]⟩ = δ h(λ)²`.
pub fn pair_hilb_fixed(v: &FockVector<Partition>, w: &FockVector<Partition>) -> Scalar {
    diagonal_pairing(v, w, |l| Ok(hook_product(l).pow(2))).expect("infallible weight")
}

/// Hilbert-scheme pairing in the p-basis: `⟨a_{-λ}|0⟩, a_{-λ̃}|0⟩⟩ = δ 𝔷_λ`.
pub fn pair_hilb_p(v: &FockVector<Partition>, w: &FockVector<Partition>) -> Scalar {
    diagonal_pairing(v, w, |l| Ok(z_factor(l))).expect("infallible weight")
}
