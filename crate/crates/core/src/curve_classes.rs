//! Curve-class bases: `[L^λC]` on the Hilbert-scheme side and
//! `[L̃^{λ,μ}C]` on the incidence side, with the creation and translation
//! operators written directly in these bases.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::fock::{FockVector, Graded};
use crate::incidence::IncidencePair;
use crate::partitions::Partition;
use crate::scalar::Scalar;

/// The class `[L^λC]` of the closure of the points supported on the curve
/// `C` with multiplicities `λ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HilbLKey(pub Partition);

impl Graded for HilbLKey {
    fn degree(&self) -> usize {
        self.0.size()
    }
}

impl fmt::Display for HilbLKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L^{}", self.0)
    }
}

/// Which coefficient to use for the non-distinguished terms of
/// [`create_b3`].
///
/// `Literal` takes the multiplicity count `m_{λ_k+m}(λ(λ_k,m))` at face
/// value. It does not commute with translation and is kept only so that
/// the failure stays reproducible.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientRule {
    #[default]
    Corrected,
    Literal,
}

/// `λ(part, m)`: remove one copy of `part` (nothing when `part = 0`) and
/// insert `part + m`.
pub fn add_part(lambda: &Partition, part: usize, m: usize) -> Result<Partition> {
    if m == 0 {
        return domain("add_part increment must be positive");
    }
    match lambda.replace_part(part, part + m) {
        Some(p) => Ok(p),
        None => domain(format!("{lambda} has no part equal to {part}")),
    }
}

fn count(n: usize) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `{0} ∪ parts(λ)` without repetition, largest first.
fn part_values_with_zero(lambda: &Partition) -> Vec<usize> {
    let mut v: Vec<usize> = lambda.distinct_parts().into_iter().map(|(p, _)| p).collect();
    v.push(0);
    v
}

/// Nakajima's `a_{-m}` in the `[L^λC]` basis.
pub fn nakajima_l_key(m: usize, lambda: &Partition) -> Result<FockVector<HilbLKey>> {
    if m == 0 {
        return domain("creation index must be positive");
    }
    let mut out = FockVector::zero();
    for v in part_values_with_zero(lambda) {
        let raised = add_part(lambda, v, m)?;
        let c = raised.multiplicity(v + m);
        out.add_term(HilbLKey(raised), count(c));
    }
    Ok(out)
}

/// Linear extension of [`nakajima_l_key`].
pub fn nakajima_l(m: usize, v: &FockVector<HilbLKey>) -> Result<FockVector<HilbLKey>> {
    v.try_map_linear(|k| nakajima_l_key(m, &k.0))
}

/// `t̃[L̃^{λ,μ}C] = [L̃^{μ,ν}C]` with `ν = λ − {i} + {i+2}`.
pub fn translate_b3(p: &IncidencePair) -> IncidencePair {
    let i = p.distinguished();
    let nu = p
        .lambda()
        .replace_part(i, i + 2)
        .expect("distinguished part present");
    IncidencePair::new(p.mu().clone(), nu).expect("translation yields an incidence pair")
}

/// Linear extension of [`translate_b3`].
pub fn translate_b3_vec(v: &FockVector<IncidencePair>) -> FockVector<IncidencePair> {
    v.map_linear(|p| FockVector::basis(translate_b3(p)))
}

/// `ã_{-m}` on a single class `[L̃^{λ,μ}C]`.
pub fn create_b3_key(
    m: usize,
    p: &IncidencePair,
    rule: CoefficientRule,
) -> Result<FockVector<IncidencePair>> {
    if m == 0 {
        return domain("creation index must be positive");
    }
    let (lambda, mu) = (p.lambda(), p.mu());
    let i = p.distinguished();
    let mut out = FockVector::zero();

    for v in part_values_with_zero(lambda) {
        if v == i {
            continue;
        }
        let l2 = add_part(lambda, v, m)?;
        let mut c = l2.multiplicity(v + m);
        if rule == CoefficientRule::Corrected && v + m == i {
            c -= 1;
        }
        let m2 = add_part(mu, v, m)?;
        out.add_term(IncidencePair::new(l2, m2)?, count(c));
    }

    // A free copy of i survives in μ only if λ holds it twice (always for i = 0).
    if i == 0 || lambda.multiplicity(i) >= 2 {
        let l2 = add_part(lambda, i, m)?;
        let c = l2.multiplicity(i + m);
        let m2 = add_part(mu, i, m)?;
        out.add_term(IncidencePair::new(l2, m2)?, count(c));
    }

    // The distinguished cluster absorbs the new points.
    let absorbed = IncidencePair::new(add_part(lambda, i, m)?, add_part(mu, i + 1, m)?)?;
    out.add_term(absorbed, count(1));
    Ok(out)
}

/// Linear extension of [`create_b3_key`].
pub fn create_b3(
    m: usize,
    v: &FockVector<IncidencePair>,
    rule: CoefficientRule,
) -> Result<FockVector<IncidencePair>> {
    v.try_map_linear(|p| create_b3_key(m, p, rule))
}
