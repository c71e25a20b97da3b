//! Ring structures: the normalized equivariant products `⋆̃` (incidence
//! side) and `⋆` (Hilbert side), the ordinary cup product of
//! `S^[n,n+1]`, and the comparison maps `t ∪ f*` and `g*`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::basis_change::Engine;
use crate::error::{consistency, domain, Result};
use crate::fock::{b2_keys, B2Key, FockVector, Graded};
use crate::incidence::{derive_lambda, h_pair, IncidencePair};
use crate::partitions::{canonical_generators, hook_product, Partition};
use crate::scalar::{sign_pow, Scalar};

fn common_degree<K: Ord + Clone + Graded>(v: &FockVector<K>, w: &FockVector<K>) -> Result<Option<usize>> {
    let dv = v.homogeneous_degree();
    let dw = w.homogeneous_degree();
    if (!v.is_zero() && dv.is_none()) || (!w.is_zero() && dw.is_none()) {
        return domain("products are only defined on homogeneous classes");
    }
    match (dv, dw) {
        (Some(a), Some(b)) if a != b => domain(format!(
            "cannot multiply classes of degrees {a} and {b}: the product is degree-internal"
        )),
        (a, b) => Ok(a.or(b)),
    }
}

fn check_degree<K: Ord + Clone + Graded>(v: &FockVector<K>, n: usize) -> Result<()> {
    match v.iter().find(|(k, _)| k.degree() != n) {
        Some((k, _)) => domain(format!(
            "class has a term of degree {} but {n} was expected",
            k.degree()
        )),
        None => Ok(()),
    }
}

/// `⋆̃` in the fixed-point basis: `[p]⋆̃[q] = δ_{pq} (−1)^{n+1} h(p) [p]`.
pub fn star_b1(
    v: &FockVector<IncidencePair>,
    w: &FockVector<IncidencePair>,
    n: usize,
) -> Result<FockVector<IncidencePair>> {
    check_degree(v, n)?;
    check_degree(w, n)?;
    let sign = sign_pow(n + 1);
    let mut out = FockVector::zero();
    for (p, a) in v.iter() {
        let b = w.coeff(p);
        if !b.is_zero() {
            out.add_term(p.clone(), a * b * &sign * Scalar::from_integer(h_pair(p)?));
        }
    }
    Ok(out)
}

/// `⋆̃` on the operator basis, computed through the fixed points.
pub fn star_tilde(
    engine: &Engine,
    v: &FockVector<B2Key>,
    w: &FockVector<B2Key>,
) -> Result<FockVector<B2Key>> {
    let Some(n) = common_degree(v, w)? else {
        return Ok(FockVector::zero());
    };
    let prod = star_b1(&engine.b2_to_b1(v)?, &engine.b2_to_b1(w)?, n)?;
    engine.b1_to_b2(&prod)
}

/// `⋆` in the Hilbert fixed-point basis: `[λ]⋆[ρ] = δ (−1)^n h(λ)² [λ]`.
pub fn star_hilb(
    v: &FockVector<Partition>,
    w: &FockVector<Partition>,
    n: usize,
) -> Result<FockVector<Partition>> {
    check_degree(v, n)?;
    check_degree(w, n)?;
    let sign = sign_pow(n);
    let mut out = FockVector::zero();
    for (l, a) in v.iter() {
        let b = w.coeff(l);
        if !b.is_zero() {
            out.add_term(
                l.clone(),
                a * b * &sign * Scalar::from_integer(hook_product(l).pow(2)),
            );
        }
    }
    Ok(out)
}

/// A class in the ordinary cohomology of `S^[n,n+1]`, written in the basis
/// of reduced operator monomials; `(i, ν)` has cohomological degree
/// `2(n − ℓ(ν))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrdinaryClass {
    n: usize,
    class: FockVector<B2Key>,
}

impl OrdinaryClass {
    pub fn new(n: usize, class: FockVector<B2Key>) -> Result<Self> {
        check_degree(&class, n)?;
        Ok(OrdinaryClass { n, class })
    }

    pub fn basis(n: usize, key: B2Key) -> Result<Self> {
        Self::new(n, FockVector::basis(key))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> &FockVector<B2Key> {
        &self.class
    }

    pub fn is_zero(&self) -> bool {
        self.class.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        OrdinaryClass {
            n: self.n,
            class: self.class.scale(c),
        }
    }

    /// The cohomological degree, if the class is homogeneous and nonzero.
    pub fn ordinary_degree(&self) -> Option<usize> {
        let mut ds = self.class.keys().map(|k| ordinary_degree(self.n, k));
        let first = ds.next()?;
        ds.all(|d| d == first).then_some(first)
    }
}

/// `2(n − ℓ(ν))` for the key `(i, ν)` of degree `n`.
pub fn ordinary_degree(n: usize, key: &B2Key) -> usize {
    2 * (n - key.nu.len())
}

/// Cup product in `H*(S^[n,n+1])`.
///
/// Reducing `t^{n+1} ∪ (A ⋆̃ B) = A ∪ B` modulo `t` keeps exactly the terms
/// `(k, ρ)` with `ℓ(ρ) = ℓ(ν₁) + ℓ(ν₂) − n`, up to the sign `(−1)^{n+1}`.
pub fn ordinary_cup(engine: &Engine, a: &OrdinaryClass, b: &OrdinaryClass) -> Result<OrdinaryClass> {
    if a.n != b.n {
        return domain(format!(
            "classes live on different incidence schemes (n = {} and {})",
            a.n, b.n
        ));
    }
    let n = a.n;
    let sign = sign_pow(n + 1);
    let mut out = FockVector::zero();
    for (k1, c1) in a.class.iter() {
        for (k2, c2) in b.class.iter() {
            let Some(len) = (k1.nu.len() + k2.nu.len()).checked_sub(n) else {
                continue;
            };
            let prod = star_tilde(
                engine,
                &FockVector::basis(k1.clone()),
                &FockVector::basis(k2.clone()),
            )?;
            let kept = prod.filter(|k| k.nu.len() == len);
            out.add_scaled(&kept, &(c1 * c2 * &sign));
        }
    }
    OrdinaryClass::new(n, out)
}

/// The scalar `u_n` with `ord(ã_{-(1^n)}|0⟩) ∪ x = u_n·x` for every class
/// `x`, found by testing every basis element.
pub fn ordinary_unit_factor(engine: &Engine, n: usize) -> Result<Scalar> {
    let e = OrdinaryClass::basis(n, B2Key::new(0, Partition::from_parts(vec![1; n])))?;
    let mut u: Option<Scalar> = None;
    for key in b2_keys(n) {
        let x = OrdinaryClass::basis(n, key.clone())?;
        let y = ordinary_cup(engine, &e, &x)?;
        let c = y.class.coeff(&key);
        if y.class != x.class.scale(&c) {
            return consistency(format!("cup with the degree-0 class does not preserve {key}"));
        }
        match &u {
            None => u = Some(c),
            Some(prev) if *prev != c => {
                return consistency(format!("degree-0 class scales {key} by {c}, not {prev}"))
            }
            _ => {}
        }
    }
    match u {
        Some(u) if !u.is_zero() => Ok(u),
        _ => consistency(format!("no unit in degree {n}")),
    }
}

/// The multiplicative identity of `H*(S^[n,n+1])`.
pub fn ordinary_unit(engine: &Engine, n: usize) -> Result<OrdinaryClass> {
    let u = ordinary_unit_factor(engine, n)?;
    OrdinaryClass::basis(n, B2Key::new(0, Partition::from_parts(vec![1; n]))).map(|e| e.scale(&u.recip()))
}

/// `t ∪ f*`: `[λ] ↦ −Σ_μ h(λ)²/h(λ,μ) [λ,μ]`.
pub fn pullback_f(v: &FockVector<Partition>) -> Result<FockVector<IncidencePair>> {
    v.try_map_linear(|lambda| {
        let h2 = hook_product(lambda).pow(2);
        let mut out = FockVector::zero();
        for c in canonical_generators(lambda) {
            let p = IncidencePair::from_corner(lambda, c.cell)?;
            out.add_term(p.clone(), -Scalar::new(h2.clone(), h_pair(&p)?));
        }
        Ok(out)
    })
}

/// `g*`: `[μ] ↦ Σ_λ h(μ)²/h(λ,μ) [λ,μ]`.
pub fn pullback_g(v: &FockVector<Partition>) -> Result<FockVector<IncidencePair>> {
    v.try_map_linear(|mu| {
        let h2 = hook_product(mu).pow(2);
        let mut out = FockVector::zero();
        for (i, _) in mu.distinct_parts() {
            let p = IncidencePair::new(derive_lambda(mu, i)?, mu.clone())?;
            out.add_term(p.clone(), Scalar::new(h2.clone(), h_pair(&p)?));
        }
        Ok(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn pair(l: &[usize], m: &[usize]) -> IncidencePair {
        IncidencePair::new(
            Partition::from_parts(l.to_vec()),
            Partition::from_parts(m.to_vec()),
        )
        .unwrap()
    }

    fn b2(i: usize, nu: &[usize]) -> FockVector<B2Key> {
        FockVector::basis(B2Key::new(i, Partition::from_parts(nu.to_vec())))
    }

    fn fixed(l: &[usize]) -> FockVector<Partition> {
        FockVector::basis(Partition::from_parts(l.to_vec()))
    }

    #[test]
    fn star_b1_examples() {
        let e = FockVector::basis(pair(&[], &[1]));
        assert_eq!(star_b1(&e, &e, 0).unwrap(), e.scale(&int(-1)));
        let a = FockVector::basis(pair(&[1], &[2]));
        let b = FockVector::basis(pair(&[1], &[1, 1]));
        assert_eq!(star_b1(&a, &a, 1).unwrap(), a.scale(&int(2)));
        assert!(star_b1(&a, &b, 1).unwrap().is_zero());
        assert!(star_b1(&a, &e, 1).is_err());
    }

    #[test]
    fn star_tilde_examples() {
        let e = Engine::new();
        assert_eq!(star_tilde(&e, &b2(0, &[1]), &b2(0, &[1])).unwrap(), b2(0, &[1]));
        assert_eq!(star_tilde(&e, &b2(1, &[]), &b2(1, &[])).unwrap(), b2(0, &[1]));
        assert_eq!(
            star_tilde(&e, &b2(0, &[1, 1]), &b2(2, &[])).unwrap(),
            b2(2, &[]).scale(&int(-2))
        );
        assert!(star_tilde(&e, &b2(0, &[1]), &b2(0, &[2])).is_err());
    }

    #[test]
    fn star_hilb_examples() {
        assert_eq!(
            star_hilb(&fixed(&[1]), &fixed(&[1]), 1).unwrap(),
            fixed(&[1]).scale(&int(-1))
        );
        assert_eq!(
            star_hilb(&fixed(&[2]), &fixed(&[2]), 2).unwrap(),
            fixed(&[2]).scale(&int(4))
        );
        let sigma = fixed(&[2, 1]).scale(&ratio(1, 3));
        assert_eq!(star_hilb(&sigma, &sigma, 3).unwrap(), sigma.scale(&int(-3)));
    }

    #[test]
    fn ordinary_cup_examples() {
        let e = Engine::new();
        let ord = |n, i, nu: &[usize]| OrdinaryClass::new(n, b2(i, nu)).unwrap();
        assert_eq!(
            ordinary_cup(&e, &ord(1, 0, &[1]), &ord(1, 1, &[])).unwrap(),
            ord(1, 1, &[])
        );
        assert!(ordinary_cup(&e, &ord(1, 1, &[]), &ord(1, 1, &[]))
            .unwrap()
            .is_zero());
        assert_eq!(
            ordinary_cup(&e, &ord(2, 0, &[1, 1]), &ord(2, 2, &[])).unwrap(),
            ord(2, 2, &[]).scale(&int(2))
        );
        assert!(ordinary_cup(&e, &ord(1, 1, &[]), &ord(2, 2, &[])).is_err());
    }

    #[test]
    fn unit_factors() {
        let e = Engine::new();
        let expected = [1, 1, 2, 6, 24];
        for (n, u) in expected.into_iter().enumerate() {
            assert_eq!(ordinary_unit_factor(&e, n).unwrap(), int(u), "n = {n}");
        }
        assert_eq!(
            ordinary_unit(&e, 0).unwrap(),
            OrdinaryClass::new(0, b2(0, &[])).unwrap()
        );
        assert_eq!(
            ordinary_unit(&e, 2).unwrap(),
            OrdinaryClass::new(2, b2(0, &[1, 1]).scale(&ratio(1, 2))).unwrap()
        );
    }

    #[test]
    fn pullback_examples() {
        assert_eq!(
            pullback_f(&fixed(&[])).unwrap(),
            FockVector::term(pair(&[], &[1]), int(-1))
        );
        assert_eq!(
            pullback_g(&fixed(&[2])).unwrap(),
            FockVector::term(pair(&[1], &[2]), int(2))
        );
        let a2 = &fixed(&[2]).scale(&ratio(1, 2)) - &fixed(&[1, 1]).scale(&ratio(1, 2));
        let g = pullback_g(&a2).unwrap();
        assert_eq!(
            g,
            FockVector::from_terms([(pair(&[1], &[2]), int(1)), (pair(&[1], &[1, 1]), int(-1))])
        );
        let e = Engine::new();
        assert_eq!(e.b1_to_b2(&g).unwrap(), b2(1, &[]).scale(&int(2)));
    }
}
