//! Transition matrices among the three bases of the incidence side
//! (`[λ,μ]`, `t̃^i ã_{-ν}|0⟩`, `[L̃^{λ,μ}C]`) and among the Hilbert-scheme
//! bases (`[λ]`, `a_{-ν}|0⟩`, `[L^λC]`).
//!
//! The curve classes are the hub of both families. Their expansion in the
//! operator basis comes from inverting the creation formulas; their
//! expansion in fixed points is recovered from the Gram matrix
//! `G = M·D·Mᵀ`, using that `M` is triangular for dominance with a known
//! diagonal. Everything else is composition and exact inversion.

mod cache;
mod matrix;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use cache::{KeyOrder, MatrixCache, MatrixDocument, MatrixPayload, CACHE_DIR_ENV, DEFAULT_CACHE_DIR};
pub use matrix::{
    identity, inverse, is_identity, mat_mul, transpose, BasisElement, BasisKey, BasisTag, Matrix,
    TransitionMatrix,
};

use crate::curve_classes::{add_part, create_b3_key, translate_b3, CoefficientRule};
use crate::error::{consistency, domain, Result};
use crate::fock::{self, b2_keys, pair_b2, pair_hilb_p, B2Key, FockVector, Graded};
use crate::incidence::{enumerate_incidence_pairs, h_pair, h_plus, IncidencePair};
use crate::partitions::{dominance_le, enumerate_partitions, hook_product, Partition};
use crate::scalar::Scalar;

const PAIR_ORDER: &str = "product dominance: (λ,μ) row has support on (λ̃,μ̃) with λ̃ ≤ λ and μ̃ ≤ μ";
const PARTITION_ORDER: &str = "dominance: λ row has support on λ̃ ≤ λ";

/// Which common part the curve-class recursion peels off. Any choice gives
/// the same answer; `Largest` keeps the recursion shallow.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SharedPart {
    #[default]
    Largest,
    Smallest,
}

/// Operators on the fixed-point basis `[λ,μ]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum B1Op {
    /// `ã_{-m}`
    Create(usize),
    /// `ã_m`
    Annihilate(usize),
    /// `t̃`
    Translate,
    /// `t̃†`
    Cotranslate,
}

impl B1Op {
    /// Degree of the image of a degree-`d` class, `None` if it is zero.
    pub fn target_degree(self, d: usize) -> Option<usize> {
        match self {
            B1Op::Create(m) => Some(d + m),
            B1Op::Translate => Some(d + 1),
            B1Op::Annihilate(m) => d.checked_sub(m),
            B1Op::Cotranslate => d.checked_sub(1),
        }
    }
}

type Memo<K, V> = Mutex<HashMap<K, V>>;

/// Memoizing evaluator for every basis change. Safe to share between
/// threads: memo tables are fill-once, and a value computed twice is
/// identical.
#[derive(Debug, Default)]
pub struct Engine {
    rule: CoefficientRule,
    shared: SharedPart,
    cache: Option<MatrixCache>,
    b3_memo: Memo<IncidencePair, FockVector<B2Key>>,
    hilb_l_memo: Memo<Partition, FockVector<Partition>>,
    matrices: Memo<(BasisTag, BasisTag, usize), Arc<TransitionMatrix>>,
    ops: Memo<(B1Op, usize), Arc<Matrix>>,
}

fn lookup<K: std::hash::Hash + Eq, V: Clone>(memo: &Memo<K, V>, k: &K) -> Option<V> {
    memo.lock().expect("memo lock").get(k).cloned()
}

fn remember<K: std::hash::Hash + Eq, V: Clone>(memo: &Memo<K, V>, k: K, v: V) -> V {
    memo.lock().expect("memo lock").entry(k).or_insert(v).clone()
}

fn int(n: &BigInt) -> Scalar {
    Scalar::from_integer(n.clone())
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_rule(mut self, rule: CoefficientRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn with_shared_part(mut self, shared: SharedPart) -> Self {
        self.shared = shared;
        self
    }

    /// Persists transition matrices under `cache`. Only the default
    /// configuration reads or writes the cache.
    pub fn with_cache(mut self, cache: MatrixCache) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn rule(&self) -> CoefficientRule {
        self.rule
    }

    fn disk_cache(&self) -> Option<&MatrixCache> {
        let default = self.rule == CoefficientRule::Corrected && self.shared == SharedPart::Largest;
        self.cache.as_ref().filter(|_| default)
    }

    // -----------------------------------------------------------------------
    // Curve classes in the operator basis

    /// `[L̃^{λ,μ}C]` written in the basis `t̃^i ã_{-ν}|0⟩`.
    pub fn b3_in_b2(&self, p: &IncidencePair) -> Result<FockVector<B2Key>> {
        if let Some(v) = lookup(&self.b3_memo, p) {
            return Ok(v);
        }
        let v = self.compute_b3_in_b2(p)?;
        Ok(remember(&self.b3_memo, p.clone(), v))
    }

    fn compute_b3_in_b2(&self, p: &IncidencePair) -> Result<FockVector<B2Key>> {
        let (lambda, mu) = (p.lambda(), p.mu());
        let shared: Vec<(usize, IncidencePair)> = lambda
            .distinct_parts()
            .into_iter()
            .filter_map(|(m, _)| {
                let l = lambda.without_part(m)?;
                let u = mu.without_part(m)?;
                Some((m, IncidencePair::new(l, u).ok()?))
            })
            .collect();
        let chosen = match self.shared {
            SharedPart::Largest => shared.first(),
            SharedPart::Smallest => shared.last(),
        };
        let Some((m, source)) = chosen.cloned() else {
            // Nothing to peel off: λ is empty or a single part i with μ = (i+1).
            let mut v = FockVector::basis(B2Key::vacuum());
            for _ in 0..p.distinguished() {
                v = fock::translate(&v);
            }
            return Ok(v);
        };

        let expansion = create_b3_key(m, &source, self.rule)?;
        let c = expansion.coeff(p);
        if c.is_zero() {
            return consistency(format!("{p} does not occur in a_-{m} of {source}"));
        }
        let base = self.b3_in_b2(&source)?;
        let mut absorbed_key = source.clone();
        let mut absorbed = base.clone();
        for _ in 0..m {
            absorbed_key = translate_b3(&absorbed_key);
            absorbed = fock::translate(&absorbed);
        }
        let mut acc = fock::creation(m, &base)?;
        for (q, cq) in expansion.iter() {
            if q == p {
                continue;
            }
            let img = if *q == absorbed_key {
                absorbed.clone()
            } else {
                self.b3_in_b2(q)?
            };
            acc.add_scaled(&img, &-cq);
        }
        Ok(acc.scale(&c.recip()))
    }

    /// `G[p][q] = ⟨[L̃^p C], [L̃^q C]⟩` in the standard pair order.
    pub fn gram_b3(&self, n: usize) -> Result<Matrix> {
        let keys = enumerate_incidence_pairs(n);
        let images = keys
            .iter()
            .map(|p| self.b3_in_b2(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(gram(&images, pair_b2))
    }

    // -----------------------------------------------------------------------
    // Hilbert-scheme curve classes

    /// `[L^λC]` written in the power-sum basis `a_{-ν}|0⟩`.
    pub fn hilb_l_in_p(&self, lambda: &Partition) -> Result<FockVector<Partition>> {
        if let Some(v) = lookup(&self.hilb_l_memo, lambda) {
            return Ok(v);
        }
        let v = if lambda.is_empty() {
            FockVector::basis(Partition::empty())
        } else {
            // a_{-m}[L^{λ−{m}}C] = m_m(λ)[L^λC] + (terms with fewer parts)
            let m = lambda.part(0);
            let rest = lambda.without_part(m).expect("largest part");
            let mut acc = fock::hilb_creation(m, &self.hilb_l_in_p(&rest)?)?;
            for (v, _) in rest.distinct_parts() {
                let other = add_part(&rest, v, m)?;
                let c = Scalar::from_integer(other.multiplicity(v + m).into());
                acc.add_scaled(&self.hilb_l_in_p(&other)?, &-c);
            }
            acc.scale(&Scalar::new(BigInt::one(), lambda.multiplicity(m).into()))
        };
        Ok(remember(&self.hilb_l_memo, lambda.clone(), v))
    }

    // -----------------------------------------------------------------------
    // Transition matrices

    /// The matrix expressing `source` classes of degree `n` in `target`.
    pub fn matrix(&self, source: BasisTag, target: BasisTag, n: usize) -> Result<Arc<TransitionMatrix>> {
        if source.is_incidence() != target.is_incidence() {
            return domain(format!("no transition between {source} and {target}"));
        }
        let key = (source, target, n);
        if let Some(m) = lookup(&self.matrices, &key) {
            return Ok(m);
        }
        if let Some(cache) = self.disk_cache() {
            if let Some(m) = cache.load(source, target, n)? {
                return Ok(remember(&self.matrices, key, Arc::new(m)));
            }
        }
        let m = self.compute_matrix(source, target, n)?;
        if let Some(cache) = self.disk_cache() {
            cache.store(&m)?;
        }
        Ok(remember(&self.matrices, key, Arc::new(m)))
    }

    fn compute_matrix(&self, source: BasisTag, target: BasisTag, n: usize) -> Result<TransitionMatrix> {
        use BasisTag::*;
        let hub = if source.is_incidence() { B3 } else { HilbL };
        Ok(match (source, target) {
            (s, t) if s == t => TransitionMatrix::identity(n, s),
            (B3, B2) => self.compute_b3_in_b2_matrix(n)?,
            (B3, B1) => self.compute_b3_in_b1(n)?,
            (HilbL, HilbP) => self.compute_hilb_l_in_p(n)?,
            (HilbL, HilbFixed) => self.compute_hilb_l_in_fixed(n)?,
            (s, t) if t == hub => self.matrix(t, s, n)?.inverse()?,
            (s, t) => self.matrix(s, hub, n)?.then(&*self.matrix(hub, t, n)?)?,
        })
    }

    fn compute_b3_in_b2_matrix(&self, n: usize) -> Result<TransitionMatrix> {
        let cols = b2_keys(n);
        let rows = enumerate_incidence_pairs(n)
            .iter()
            .map(|p| {
                let v = self.b3_in_b2(p)?;
                Ok(cols.iter().map(|k| v.coeff(k)).collect())
            })
            .collect::<Result<Matrix>>()?;
        Ok(TransitionMatrix::new(n, BasisTag::B3, BasisTag::B2, rows, None))
    }

    fn compute_b3_in_b1(&self, n: usize) -> Result<TransitionMatrix> {
        let keys = enumerate_incidence_pairs(n);
        let mut order: Vec<usize> = (0..keys.len()).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));

        let g = self.gram_b3(n)?;
        let sorted_g: Matrix = order
            .iter()
            .map(|&a| order.iter().map(|&b| g[a][b].clone()).collect())
            .collect();
        let mut diag = Vec::new();
        let mut weight = Vec::new();
        for &a in &order {
            diag.push(Scalar::new(BigInt::one(), h_plus(&keys[a])?));
            weight.push(int(&h_pair(&keys[a])?));
        }
        let sorted_keys: Vec<&IncidencePair> = order.iter().map(|&a| &keys[a]).collect();
        let m = gram_solve(&sorted_g, &diag, &weight, |p, q| {
            dominance_le(sorted_keys[q].lambda(), sorted_keys[p].lambda())
                && dominance_le(sorted_keys[q].mu(), sorted_keys[p].mu())
        })
        .map_err(|e| with_context(e, "curve classes in fixed points", n))?;

        let mut rows = vec![vec![Scalar::zero(); keys.len()]; keys.len()];
        for (sp, &a) in order.iter().enumerate() {
            for (sq, &b) in order.iter().enumerate() {
                rows[a][b] = m[sp][sq].clone();
            }
        }
        Ok(TransitionMatrix::new(
            n,
            BasisTag::B3,
            BasisTag::B1,
            rows,
            Some(PAIR_ORDER.into()),
        ))
    }

    fn compute_hilb_l_in_p(&self, n: usize) -> Result<TransitionMatrix> {
        let keys = enumerate_partitions(n);
        let rows = keys
            .iter()
            .map(|l| {
                let v = self.hilb_l_in_p(l)?;
                Ok(keys.iter().map(|k| v.coeff(k)).collect())
            })
            .collect::<Result<Matrix>>()?;
        Ok(TransitionMatrix::new(
            n,
            BasisTag::HilbL,
            BasisTag::HilbP,
            rows,
            None,
        ))
    }

    fn compute_hilb_l_in_fixed(&self, n: usize) -> Result<TransitionMatrix> {
        // enumerate_partitions is reverse-lexicographic; the solve wants the
        // lexicographic order, which extends dominance.
        let keys = enumerate_partitions(n);
        let sorted: Vec<Partition> = keys.iter().rev().cloned().collect();
        let images = sorted
            .iter()
            .map(|l| self.hilb_l_in_p(l))
            .collect::<Result<Vec<_>>>()?;
        let g = gram(&images, pair_hilb_p);
        let diag: Vec<Scalar> = sorted
            .iter()
            .map(|l| Scalar::new(BigInt::one(), hook_product(l)))
            .collect();
        let weight: Vec<Scalar> = sorted.iter().map(|l| int(&hook_product(l).pow(2))).collect();
        let m = gram_solve(&g, &diag, &weight, |p, q| dominance_le(&sorted[q], &sorted[p]))
            .map_err(|e| with_context(e, "Hilbert curve classes in fixed points", n))?;
        let d = keys.len();
        let rows = (0..d)
            .map(|a| (0..d).map(|b| m[d - 1 - a][d - 1 - b].clone()).collect())
            .collect();
        Ok(TransitionMatrix::new(
            n,
            BasisTag::HilbL,
            BasisTag::HilbFixed,
            rows,
            Some(PARTITION_ORDER.into()),
        ))
    }

    pub fn b3_in_b1(&self, n: usize) -> Result<Arc<TransitionMatrix>> {
        self.matrix(BasisTag::B3, BasisTag::B1, n)
    }

    pub fn b2_in_b1(&self, n: usize) -> Result<Arc<TransitionMatrix>> {
        self.matrix(BasisTag::B2, BasisTag::B1, n)
    }

    pub fn b1_in_b2(&self, n: usize) -> Result<Arc<TransitionMatrix>> {
        self.matrix(BasisTag::B1, BasisTag::B2, n)
    }

    pub fn hilb_fixed_in_p(&self, n: usize) -> Result<Arc<TransitionMatrix>> {
        self.matrix(BasisTag::HilbFixed, BasisTag::HilbP, n)
    }

    /// Rewrites a (possibly inhomogeneous) vector between two bases.
    pub fn convert<S, T>(
        &self,
        source: BasisTag,
        target: BasisTag,
        v: &FockVector<S>,
    ) -> Result<FockVector<T>>
    where
        S: BasisElement + Graded,
        T: BasisElement,
    {
        let mut out = FockVector::zero();
        for (d, part) in v.by_degree() {
            out.add_scaled(&self.matrix(source, target, d)?.apply(&part)?, &Scalar::one());
        }
        Ok(out)
    }

    pub fn b2_to_b1(&self, v: &FockVector<B2Key>) -> Result<FockVector<IncidencePair>> {
        self.convert(BasisTag::B2, BasisTag::B1, v)
    }

    pub fn b1_to_b2(&self, v: &FockVector<IncidencePair>) -> Result<FockVector<B2Key>> {
        self.convert(BasisTag::B1, BasisTag::B2, v)
    }

    pub fn hilb_fixed_to_p(&self, v: &FockVector<Partition>) -> Result<FockVector<Partition>> {
        self.convert(BasisTag::HilbFixed, BasisTag::HilbP, v)
    }

    pub fn hilb_p_to_fixed(&self, v: &FockVector<Partition>) -> Result<FockVector<Partition>> {
        self.convert(BasisTag::HilbP, BasisTag::HilbFixed, v)
    }

    // -----------------------------------------------------------------------
    // Operators in the fixed-point bases

    /// Matrix of `op` on `[λ,μ]` classes of degree `d` (rows: source keys,
    /// columns: keys of the target degree).
    ///
    /// Creation and translation are transported from the operator basis;
    /// their partners are built as adjoints for the fixed-point pairing.
    pub fn b1_operator(&self, op: B1Op, d: usize) -> Result<Arc<Matrix>> {
        if let Some(m) = lookup(&self.ops, &(op, d)) {
            return Ok(m);
        }
        let m = match op {
            B1Op::Create(m) => self.conjugated(d, d + m, |v| fock::creation(m, v))?,
            B1Op::Translate => self.conjugated(d, d + 1, |v| Ok(fock::translate(v)))?,
            B1Op::Annihilate(m) => self.adjoint(B1Op::Create(m), m, d)?,
            B1Op::Cotranslate => self.adjoint(B1Op::Translate, 1, d)?,
        };
        Ok(remember(&self.ops, (op, d), Arc::new(m)))
    }

    fn conjugated(
        &self,
        d: usize,
        d2: usize,
        f: impl Fn(&FockVector<B2Key>) -> Result<FockVector<B2Key>>,
    ) -> Result<Matrix> {
        let cols = b2_keys(d2);
        let op: Matrix = b2_keys(d)
            .into_iter()
            .map(|k| {
                let v = f(&FockVector::basis(k))?;
                Ok(cols.iter().map(|c| v.coeff(c)).collect())
            })
            .collect::<Result<_>>()?;
        Ok(mat_mul(
            &mat_mul(&self.b1_in_b2(d)?.rows, &op),
            &self.b2_in_b1(d2)?.rows,
        ))
    }

    /// `A[s][r] = C[r][s]·h(s)/h(r)` where `C` maps degree `d − shift` up to `d`.
    fn adjoint(&self, up: B1Op, shift: usize, d: usize) -> Result<Matrix> {
        let Some(low) = d.checked_sub(shift) else {
            return Ok(vec![Vec::new(); enumerate_incidence_pairs(d).len()]);
        };
        let c = self.b1_operator(up, low)?;
        let h_low = enumerate_incidence_pairs(low)
            .iter()
            .map(|p| h_pair(p).map(|h| int(&h)))
            .collect::<Result<Vec<_>>>()?;
        let h_high = enumerate_incidence_pairs(d)
            .iter()
            .map(|p| h_pair(p).map(|h| int(&h)))
            .collect::<Result<Vec<_>>>()?;
        Ok((0..h_high.len())
            .map(|s| {
                (0..h_low.len())
                    .map(|r| &c[r][s] * &h_high[s] / &h_low[r])
                    .collect()
            })
            .collect())
    }

    /// Applies `op` to a fixed-point vector of any degrees.
    pub fn apply_b1(&self, op: B1Op, v: &FockVector<IncidencePair>) -> Result<FockVector<IncidencePair>> {
        let mut out = FockVector::zero();
        for (d, part) in v.by_degree() {
            let Some(d2) = op.target_degree(d) else { continue };
            let m = self.b1_operator(op, d)?;
            let rows = enumerate_incidence_pairs(d);
            let cols = enumerate_incidence_pairs(d2);
            for (r, key) in rows.iter().enumerate() {
                let c = part.coeff(key);
                if c.is_zero() {
                    continue;
                }
                for (col, x) in cols.iter().zip(&m[r]) {
                    if !x.is_zero() {
                        out.add_term(col.clone(), &c * x);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `a_{-m}` on Hilbert fixed-point classes `[λ]`.
    pub fn hilb_fixed_creation(&self, m: usize, v: &FockVector<Partition>) -> Result<FockVector<Partition>> {
        self.hilb_p_to_fixed(&fock::hilb_creation(m, &self.hilb_fixed_to_p(v)?)?)
    }

    /// `a_m` on Hilbert fixed-point classes `[λ]`.
    pub fn hilb_fixed_annihilation(
        &self,
        m: usize,
        v: &FockVector<Partition>,
    ) -> Result<FockVector<Partition>> {
        self.hilb_p_to_fixed(&fock::hilb_annihilation(m, &self.hilb_fixed_to_p(v)?)?)
    }
}

fn with_context(e: crate::Error, what: &str, n: usize) -> crate::Error {
    match e {
        crate::Error::Consistency(msg) => crate::Error::Consistency(format!("{what}, n = {n}: {msg}")),
        other => other,
    }
}

fn gram<K: Ord + Clone>(
    images: &[FockVector<K>],
    pair: impl Fn(&FockVector<K>, &FockVector<K>) -> Scalar,
) -> Matrix {
    let d = images.len();
    let mut g = vec![vec![Scalar::zero(); d]; d];
    for a in 0..d {
        for b in a..d {
            let x = pair(&images[a], &images[b]);
            g[b][a] = x.clone();
            g[a][b] = x;
        }
    }
    g
}

/// Solves `G = M·diag(w)·Mᵀ` for `M` lower triangular with prescribed
/// diagonal. Keys must be listed along a linear extension of the partial
/// order `le(p, q)` = "q below p"; entries outside that order must vanish.
fn gram_solve(
    g: &Matrix,
    diag: &[Scalar],
    w: &[Scalar],
    le: impl Fn(usize, usize) -> bool,
) -> Result<Matrix> {
    let d = g.len();
    let mut m = vec![vec![Scalar::zero(); d]; d];
    for p in 0..d {
        m[p][p] = diag[p].clone();
        for q in 0..p {
            let mut x = g[p][q].clone();
            for t in 0..q {
                if !m[p][t].is_zero() && !m[q][t].is_zero() {
                    x -= &m[p][t] * &m[q][t] * &w[t];
                }
            }
            x /= &m[q][q] * &w[q];
            if !x.is_zero() && !le(p, q) {
                return consistency(format!("entry ({p},{q}) = {x} lies outside the partial order"));
            }
            m[p][q] = x;
        }
        let mut self_pair = Scalar::zero();
        for t in 0..=p {
            self_pair += &m[p][t] * &m[p][t] * &w[t];
        }
        if self_pair != g[p][p] {
            return consistency(format!(
                "self-pairing of key {p} is {} but the Gram matrix says {}",
                self_pair, g[p][p]
            ));
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests;
