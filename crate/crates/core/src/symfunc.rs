//! Symmetric functions in the power-sum basis, the monomial and Schur
//! transitions, and the dictionaries `Φ: a_{-λ}|0⟩ ↦ p_λ` and
//! `Φ̃: t̃^i ã_{-ν}|0⟩ ↦ p_ν ⊗ v^i`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::basis_change::{inverse, Engine, Matrix};
use crate::error::{domain, Error, Result};
use crate::fock::{B2Key, FockVector};
use crate::partitions::{enumerate_partitions, z_factor, Partition};
use crate::ring::star_tilde;
use crate::scalar::{parse_fraction, to_fraction_string, Scalar};

/// A symmetric function in the power-sum basis `p_λ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymFunc(pub FockVector<Partition>);

impl SymFunc {
    pub fn zero() -> Self {
        SymFunc(FockVector::zero())
    }

    pub fn p(lambda: Partition) -> Self {
        SymFunc(FockVector::basis(lambda))
    }

    pub fn coeff(&self, lambda: &Partition) -> Scalar {
        self.0.coeff(lambda)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        SymFunc(self.0.scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Hall inner product `⟨p_λ, p_μ⟩ = z_λ δ_{λμ}`.
    pub fn hall(&self, other: &Self) -> Scalar {
        crate::fock::pair_hilb_p(&self.0, &other.0)
    }
}

impl std::ops::Sub for &SymFunc {
    type Output = SymFunc;

    fn sub(self, rhs: Self) -> SymFunc {
        SymFunc(&self.0 - &rhs.0)
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        for (j, (l, c)) in self.0.iter().enumerate() {
            if j > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})p{l}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct SymTerm {
    partition: Partition,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    v: Option<usize>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct SymDoc {
    p: Vec<SymTerm>,
}

impl Serialize for SymFunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SymDoc {
            p: self
                .0
                .iter()
                .map(|(l, c)| SymTerm {
                    partition: l.clone(),
                    v: None,
                    coeff: to_fraction_string(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = SymDoc::deserialize(d)?;
        let mut v = FockVector::zero();
        for t in doc.p {
            v.add_term(
                t.partition,
                parse_fraction(&t.coeff).map_err(serde::de::Error::custom)?,
            );
        }
        Ok(SymFunc(v))
    }
}

/// An element of `Λ ⊗ ℂ[v]`: terms `p_ν ⊗ v^j`, stored as `B2Key { i: j, nu }`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyV(pub FockVector<B2Key>);

impl PolyV {
    pub fn term(nu: Partition, v_exp: usize, c: Scalar) -> Self {
        PolyV(FockVector::term(B2Key::new(v_exp, nu), c))
    }

    pub fn coeff(&self, nu: &Partition, v_exp: usize) -> Scalar {
        self.0.coeff(&B2Key::new(v_exp, nu.clone()))
    }

    /// The largest power of `v` present.
    pub fn v_degree(&self) -> Option<usize> {
        self.0.keys().map(|k| k.i).max()
    }
}

impl Serialize for PolyV {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SymDoc {
            p: self
                .0
                .iter()
                .map(|(k, c)| SymTerm {
                    partition: k.nu.clone(),
                    v: Some(k.i),
                    coeff: to_fraction_string(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyV {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = SymDoc::deserialize(d)?;
        let mut out = FockVector::zero();
        for t in doc.p {
            let c = parse_fraction(&t.coeff).map_err(serde::de::Error::custom)?;
            out.add_term(B2Key::new(t.v.unwrap_or(0), t.partition), c);
        }
        Ok(PolyV(out))
    }
}

// ---------------------------------------------------------------------------
// Power sums and monomials

/// Number of ways to distribute the parts of `nu` into rows with sums
/// `lambda`: the coefficient of `x^λ` in `p_ν`.
fn monomial_count(nu: &[usize], lambda: &[usize]) -> u64 {
    fn go(nu: &[usize], rest: &mut Vec<usize>, memo: &mut HashMap<(usize, Vec<usize>), u64>) -> u64 {
        let Some((&first, tail)) = nu.split_first() else {
            return u64::from(rest.iter().all(|&r| r == 0));
        };
        let key = (nu.len(), rest.clone());
        if let Some(&c) = memo.get(&key) {
            return c;
        }
        let mut total = 0;
        for r in 0..rest.len() {
            if rest[r] >= first {
                rest[r] -= first;
                total += go(tail, rest, memo);
                rest[r] += first;
            }
        }
        memo.insert(key, total);
        total
    }
    go(nu, &mut lambda.to_vec(), &mut HashMap::new())
}

/// `p_ν = Σ_λ R[ν][λ] m_λ`, with both indices in reverse-lexicographic order.
pub fn p_to_m_matrix(n: usize) -> Matrix {
    let keys = enumerate_partitions(n);
    keys.iter()
        .map(|nu| {
            keys.iter()
                .map(|l| Scalar::from_integer(BigInt::from(monomial_count(nu.parts(), l.parts()))))
                .collect()
        })
        .collect()
}

fn m_to_p_matrix(n: usize) -> Matrix {
    static MEMO: OnceLock<Mutex<HashMap<usize, Matrix>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(m) = memo.lock().expect("memo lock").get(&n) {
        return m.clone();
    }
    let m = inverse(&p_to_m_matrix(n)).expect("p-to-m transition is unitriangular");
    memo.lock().expect("memo lock").entry(n).or_insert(m).clone()
}

/// `p_ν` in the monomial basis (keys are the `m_λ` indices).
pub fn p_in_m(nu: &Partition) -> FockVector<Partition> {
    let keys = enumerate_partitions(nu.size());
    FockVector::from_terms(keys.iter().filter_map(|l| {
        let c = monomial_count(nu.parts(), l.parts());
        (c > 0).then(|| (l.clone(), Scalar::from_integer(BigInt::from(c))))
    }))
}

/// `m_λ` in the power-sum basis.
pub fn m_in_p(lambda: &Partition) -> SymFunc {
    let keys = enumerate_partitions(lambda.size());
    let r = keys
        .iter()
        .position(|k| k == lambda)
        .expect("partition of its own size");
    let inv = m_to_p_matrix(lambda.size());
    SymFunc(FockVector::from_terms(
        keys.iter().cloned().zip(inv[r].iter().cloned()),
    ))
}

// ---------------------------------------------------------------------------
// Schur functions

/// `χ^λ(ν)` by the Murnaghan–Nakayama rule, removing border strips through
/// bead moves on the beta-set of `λ`.
pub fn character(lambda: &Partition, nu: &Partition) -> BigInt {
    if lambda.size() != nu.size() {
        return BigInt::zero();
    }
    let l = lambda.len();
    let beads: BTreeSet<usize> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(j, &p)| p + l - 1 - j)
        .collect();
    let mut memo = HashMap::new();
    mn(&beads, nu.parts(), &mut memo)
}

fn mn(beads: &BTreeSet<usize>, nu: &[usize], memo: &mut HashMap<(Vec<usize>, usize), BigInt>) -> BigInt {
    let Some((&r, rest)) = nu.split_first() else {
        return BigInt::one();
    };
    let key = (beads.iter().copied().collect::<Vec<_>>(), nu.len());
    if let Some(c) = memo.get(&key) {
        return c.clone();
    }
    let mut total = BigInt::zero();
    for &b in beads {
        if b < r || beads.contains(&(b - r)) {
            continue;
        }
        let height = beads.range(b - r + 1..b).count();
        let mut moved = beads.clone();
        moved.remove(&b);
        moved.insert(b - r);
        let term = mn(&moved, rest, memo);
        if height.is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    memo.insert(key, total.clone());
    total
}

/// `s_λ = Σ_ν χ^λ(ν)/z_ν p_ν`.
pub fn schur_in_p(lambda: &Partition) -> SymFunc {
    SymFunc(FockVector::from_terms(
        enumerate_partitions(lambda.size()).into_iter().map(|nu| {
            let c = Scalar::new(character(lambda, &nu), z_factor(&nu));
            (nu, c)
        }),
    ))
}

// ---------------------------------------------------------------------------
// Dictionaries

/// `Φ`: a Hilbert-scheme class in the power-sum basis, read as a symmetric
/// function.
pub fn phi(v: &FockVector<Partition>) -> SymFunc {
    SymFunc(v.clone())
}

pub fn phi_inverse(f: &SymFunc) -> FockVector<Partition> {
    f.0.clone()
}

/// `Φ̃`: `t̃^i ã_{-ν}|0⟩ ↦ p_ν ⊗ v^i`.
pub fn phi_tilde(v: &FockVector<B2Key>) -> PolyV {
    PolyV(v.clone())
}

pub fn phi_tilde_inverse(x: &PolyV) -> FockVector<B2Key> {
    x.0.clone()
}

/// `ι: Λ → Λ ⊗ ℂ[v]`, `p_λ ↦ p_λ ⊗ 1`.
pub fn iota(f: &SymFunc) -> PolyV {
    PolyV(f.0.map_linear(|l| FockVector::basis(B2Key::new(0, l.clone()))))
}

/// The product on `Λ ⊗ ℂ[v]` transported from `⋆̃`.
pub fn induced_product(engine: &Engine, x: &PolyV, y: &PolyV) -> Result<PolyV> {
    let dx = x.0.homogeneous_degree();
    let dy = y.0.homogeneous_degree();
    match (dx, dy) {
        (Some(a), Some(b)) if a != b => domain(format!(
            "induced product needs equal total degree (got {a} and {b}); the ring is graded by |ν| + j"
        )),
        (None, _) if !x.0.is_zero() => Err(Error::Domain(
            "induced product needs homogeneous input; the ring is graded by |ν| + j".into(),
        )),
        (_, None) if !y.0.is_zero() => Err(Error::Domain(
            "induced product needs homogeneous input; the ring is graded by |ν| + j".into(),
        )),
        _ => Ok(phi_tilde(&star_tilde(
            engine,
            &phi_tilde_inverse(x),
            &phi_tilde_inverse(y),
        )?)),
    }
}
