//! Named check suites. Each check walks a finite range, stops at the first
//! counterexample and reports it.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::basis_change::{is_identity, mat_mul, B1Op, BasisTag, Engine, SharedPart};
use crate::curve_classes::{create_b3, translate_b3_vec, CoefficientRule};
use crate::error::{Error, Result};
use crate::fock::{self, b2_keys, loop_action, pair_b1, pair_b2, pair_hilb_fixed, B2Key, FockVector};
use crate::incidence::{
    betti_from_fixed_points, betti_series, enumerate_incidence_pairs, euler_class, h_plus,
    hook_identity_lambda_sum, hook_identity_mu_sum, tangent_weights_hilbert, tangent_weights_incidence,
};
use crate::partitions::{enumerate_partitions, hook_product, Partition};
use crate::ring::{self, ordinary_cup, ordinary_degree, pullback_f, pullback_g, star_hilb, OrdinaryClass};
use crate::scalar::{factorial, int, sign_pow, Scalar};
use crate::symfunc::{iota, m_in_p, phi, phi_tilde, schur_in_p, SymFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Hooks,
    Euler,
    Heisenberg,
    Loop,
    Pairing,
    Roundtrip,
    Phi,
    Diagrams,
    Ordinary,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Hooks,
        Suite::Euler,
        Suite::Heisenberg,
        Suite::Loop,
        Suite::Pairing,
        Suite::Roundtrip,
        Suite::Phi,
        Suite::Diagrams,
        Suite::Ordinary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hooks => "hooks",
            Suite::Euler => "euler",
            Suite::Heisenberg => "heisenberg",
            Suite::Loop => "loop",
            Suite::Pairing => "pairing",
            Suite::Roundtrip => "roundtrip",
            Suite::Phi => "phi",
            Suite::Diagrams => "diagrams",
            Suite::Ordinary => "ordinary",
        }
    }

    /// Parses a suite name; `"all"` expands to every suite.
    pub fn parse_selection(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        s.parse().map(|x| vec![x])
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub suite: Suite,
    pub check: String,
    pub passed: bool,
    /// Number of individual cases examined.
    pub cases: usize,
    pub counterexample: Option<String>,
}

struct Check {
    cases: usize,
    failure: Option<String>,
}

impl Check {
    fn new() -> Self {
        Check {
            cases: 0,
            failure: None,
        }
    }

    /// Records one case; returns `false` once a failure has been seen.
    fn case(&mut self, ok: bool, what: impl FnOnce() -> String) -> bool {
        if self.failure.is_some() {
            return false;
        }
        self.cases += 1;
        if !ok {
            self.failure = Some(what());
        }
        ok
    }
}

fn run(suite: Suite, name: &str, body: impl FnOnce(&mut Check) -> Result<()>) -> CheckOutcome {
    let mut c = Check::new();
    if let Err(e) = body(&mut c) {
        c.failure.get_or_insert(format!("error: {e}"));
    }
    CheckOutcome {
        suite,
        check: name.to_string(),
        passed: c.failure.is_none(),
        cases: c.cases,
        counterexample: c.failure,
    }
}

/// Runs one suite over degrees up to `max_n`.
pub fn run_suite(engine: &Engine, suite: Suite, max_n: usize) -> Vec<CheckOutcome> {
    match suite {
        Suite::Hooks => hooks(max_n),
        Suite::Euler => euler(max_n),
        Suite::Heisenberg => heisenberg(engine, max_n),
        Suite::Loop => loops(max_n),
        Suite::Pairing => pairing(engine, max_n),
        Suite::Roundtrip => roundtrip(engine, max_n),
        Suite::Phi => phi_suite(engine, max_n),
        Suite::Diagrams => diagrams(engine, max_n),
        Suite::Ordinary => ordinary(engine, max_n),
    }
}

fn hooks(max_n: usize) -> Vec<CheckOutcome> {
    vec![
        run(Suite::Hooks, "sum over μ of h(λ)²/h(λ,μ) is 1", |c| {
            for n in 0..=max_n {
                for l in enumerate_partitions(n) {
                    let s = hook_identity_lambda_sum(&l)?;
                    c.case(s.is_one(), || format!("λ = {l}: sum {s}"));
                }
            }
            Ok(())
        }),
        run(Suite::Hooks, "sum over λ of h(μ)²/h(λ,μ) is |μ|", |c| {
            for n in 1..=max_n + 1 {
                for m in enumerate_partitions(n) {
                    let s = hook_identity_mu_sum(&m)?;
                    c.case(s == int(n as i64), || format!("μ = {m}: sum {s}"));
                }
            }
            Ok(())
        }),
    ]
}

fn euler(max_n: usize) -> Vec<CheckOutcome> {
    vec![
        run(Suite::Euler, "weight product equals (-1)^(n+1) h(λ,μ)", |c| {
            for n in 0..=max_n {
                for p in enumerate_incidence_pairs(n) {
                    let w = tangent_weights_incidence(&p)?;
                    let e = euler_class(&p)?;
                    c.case(w.len() == 2 * (n + 1) && w.product() == e.coefficient(), || {
                        format!(
                            "{p}: weights {:?}, expected product {}",
                            w.weights(),
                            e.coefficient()
                        )
                    });
                }
            }
            Ok(())
        }),
        run(Suite::Euler, "positive weight product equals h+(λ,μ)", |c| {
            for n in 0..=max_n {
                for p in enumerate_incidence_pairs(n) {
                    let w = tangent_weights_incidence(&p)?;
                    let h = h_plus(&p)?;
                    c.case(w.positive_count() == n + 1 && w.positive_product() == h, || {
                        format!("{p}: weights {:?}, h+ = {h}", w.weights())
                    });
                }
            }
            Ok(())
        }),
        run(
            Suite::Euler,
            "Hilbert scheme weight product equals (-1)^n h(λ)²",
            |c| {
                for n in 0..=max_n {
                    for l in enumerate_partitions(n) {
                        let w = tangent_weights_hilbert(&l);
                        let expected = hook_product(&l).pow(2) * if n % 2 == 0 { 1 } else { -1 };
                        c.case(w.product() == expected, || format!("{l}: {:?}", w.weights()));
                    }
                }
                Ok(())
            },
        ),
        run(Suite::Euler, "Betti series matches the fixed-point count", |c| {
            let series = betti_series(max_n);
            for (n, row) in series.iter().enumerate() {
                let fixed = betti_from_fixed_points(n);
                let total: u64 = row.iter().sum();
                c.case(
                    *row == fixed
                        && total as usize == enumerate_incidence_pairs(n).len()
                        && total as usize == b2_keys(n).len(),
                    || format!("n = {n}: series {row:?}, fixed points {fixed:?}"),
                );
            }
            Ok(())
        }),
    ]
}

fn a_b2(p: i64, v: &FockVector<B2Key>) -> Result<FockVector<B2Key>> {
    loop_action(0, p, v)
}

fn a_op(p: i64) -> Option<B1Op> {
    match p {
        0 => None,
        p if p < 0 => Some(B1Op::Create(p.unsigned_abs() as usize)),
        p => Some(B1Op::Annihilate(p as usize)),
    }
}

/// The largest degree visited while applying ops right to left from `d`.
fn peak_degree(d: usize, ops: &[B1Op]) -> Option<usize> {
    let mut cur = d;
    let mut peak = d;
    for op in ops.iter().rev() {
        cur = op.target_degree(cur)?;
        peak = peak.max(cur);
    }
    Some(peak)
}

fn apply_all(
    engine: &Engine,
    ops: &[B1Op],
    v: &FockVector<crate::IncidencePair>,
) -> Result<FockVector<crate::IncidencePair>> {
    let mut out = v.clone();
    for op in ops.iter().rev() {
        out = engine.apply_b1(*op, &out)?;
    }
    Ok(out)
}

/// Checks `[x, y] = expected` on every fixed-point basis vector of degree
/// `≤ max_n` for which both orderings stay within `max_n`.
fn b1_commutator(
    engine: &Engine,
    c: &mut Check,
    x: B1Op,
    y: B1Op,
    expected: &Scalar,
    max_n: usize,
) -> Result<()> {
    for d in 0..=max_n {
        let fits = |ops: &[B1Op]| peak_degree(d, ops).is_none_or(|p| p <= max_n);
        if !fits(&[x, y]) || !fits(&[y, x]) {
            continue;
        }
        for p in enumerate_incidence_pairs(d) {
            let v = FockVector::basis(p.clone());
            let lhs = &apply_all(engine, &[x, y], &v)? - &apply_all(engine, &[y, x], &v)?;
            let rhs = v.scale(expected);
            if !c.case(lhs == rhs, || format!("[{x:?}, {y:?}] on [{p}] gives {lhs}")) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn heisenberg(engine: &Engine, max_n: usize) -> Vec<CheckOutcome> {
    vec![
        run(Suite::Heisenberg, "[a_p, a_q] = p δ(p,-q) on monomials", |c| {
            for d in 0..=max_n {
                for k in b2_keys(d) {
                    let v = FockVector::basis(k.clone());
                    for p in -5i64..=5 {
                        for q in -5i64..=5 {
                            let lhs = &a_b2(p, &a_b2(q, &v)?)? - &a_b2(q, &a_b2(p, &v)?)?;
                            let rhs = if p == -q {
                                v.scale(&int(p))
                            } else {
                                FockVector::zero()
                            };
                            c.case(lhs == rhs, || format!("p = {p}, q = {q} on {k}"));
                        }
                    }
                }
            }
            Ok(())
        }),
        run(
            Suite::Heisenberg,
            "[a_p, a_q] = p δ(p,-q) on fixed points",
            |c| {
                for p in -4i64..=4 {
                    for q in -4i64..=4 {
                        let (Some(x), Some(y)) = (a_op(p), a_op(q)) else {
                            continue;
                        };
                        let expected = if p == -q { int(p) } else { Scalar::zero() };
                        b1_commutator(engine, c, x, y, &expected, max_n)?;
                    }
                }
                Ok(())
            },
        ),
        run(Suite::Heisenberg, "translation relations on fixed points", |c| {
            for d in 0..max_n {
                for p in enumerate_incidence_pairs(d) {
                    let v = FockVector::basis(p.clone());
                    let tt = apply_all(engine, &[B1Op::Cotranslate, B1Op::Translate], &v)?;
                    c.case(tt == v, || format!("t†t on [{p}] gives {tt}"));
                }
            }
            for p in -4i64..=4 {
                let Some(x) = a_op(p) else { continue };
                let z = Scalar::zero();
                b1_commutator(engine, c, B1Op::Translate, x, &z, max_n)?;
                b1_commutator(engine, c, B1Op::Cotranslate, x, &z, max_n)?;
            }
            Ok(())
        }),
    ]
}

fn loops(max_n: usize) -> Vec<CheckOutcome> {
    vec![
        run(Suite::Loop, "loop algebra commutators on monomials", |c| {
            for d in 0..=max_n {
                for k in b2_keys(d) {
                    let v = FockVector::basis(k.clone());
                    for j1 in 0..=2 {
                        for j2 in 0..=2 {
                            for a in -3i64..=3 {
                                for b in -3i64..=3 {
                                    let lhs = &loop_action(j1, a, &loop_action(j2, b, &v)?)?
                                        - &loop_action(j2, b, &loop_action(j1, a, &v)?)?;
                                    let mut rhs = if a == -b {
                                        v.scale(&int(a))
                                    } else {
                                        FockVector::zero()
                                    };
                                    for _ in 0..j1 + j2 {
                                        rhs = fock::translate(&rhs);
                                    }
                                    c.case(lhs == rhs, || format!("({j1},{a}), ({j2},{b}) on {k}"));
                                }
                            }
                        }
                    }
                }
            }
            Ok(())
        }),
        run(
            Suite::Loop,
            "curve-class creation commutes with translation",
            |c| commutation_cases(c, CoefficientRule::Corrected, max_n, true),
        ),
        run(
            Suite::Loop,
            "uncorrected creation coefficient breaks commutation",
            |c| {
                let mut probe = Check::new();
                commutation_cases(&mut probe, CoefficientRule::Literal, max_n.max(2), false)?;
                c.case(probe.failure.is_some(), || {
                    "the uncorrected rule commutes with translation".into()
                });
                Ok(())
            },
        ),
    ]
}

/// `create_b3(m) ∘ T = T ∘ create_b3(m)` on every curve class whose image
/// has degree `≤ max_n`.
fn commutation_cases(c: &mut Check, rule: CoefficientRule, max_n: usize, describe: bool) -> Result<()> {
    for n in 0..max_n {
        for p in enumerate_incidence_pairs(n) {
            for m in 1..max_n - n {
                let v = FockVector::basis(p.clone());
                let lhs = create_b3(m, &translate_b3_vec(&v), rule)?;
                let rhs = translate_b3_vec(&create_b3(m, &v, rule)?);
                let ok = c.case(lhs == rhs, || {
                    if describe {
                        format!("m = {m} on {p}: {lhs} vs {rhs}")
                    } else {
                        String::new()
                    }
                });
                if !ok {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

fn pairing(engine: &Engine, max_n: usize) -> Vec<CheckOutcome> {
    vec![
        run(
            Suite::Pairing,
            "fixed-point pairing equals monomial pairing",
            |c| {
                for n in 0..=max_n {
                    let keys = b2_keys(n);
                    let images = keys
                        .iter()
                        .map(|k| engine.b2_to_b1(&FockVector::basis(k.clone())))
                        .collect::<Result<Vec<_>>>()?;
                    for (a, ka) in keys.iter().enumerate() {
                        for (b, kb) in keys.iter().enumerate().skip(a) {
                            let lhs = pair_b1(&images[a], &images[b])?;
                            let rhs = pair_b2(&FockVector::basis(ka.clone()), &FockVector::basis(kb.clone()));
                            c.case(lhs == rhs, || format!("{ka} / {kb}: {lhs} vs {rhs}"));
                        }
                    }
                }
                Ok(())
            },
        ),
        run(
            Suite::Pairing,
            "curve-class expansion is independent of the peeled part",
            |c| {
                let other = Engine::new().with_shared_part(SharedPart::Smallest);
                for n in 0..=max_n {
                    for p in enumerate_incidence_pairs(n) {
                        let a = engine.b3_in_b2(&p)?;
                        let b = other.b3_in_b2(&p)?;
                        c.case(a == b, || format!("{p}: {a} vs {b}"));
                    }
                }
                Ok(())
            },
        ),
        run(
            Suite::Pairing,
            "curve-class self-pairing matches the fixed-point expansion",
            |c| {
                for n in 0..=max_n {
                    let g = engine.gram_b3(n)?;
                    let m = engine.b3_in_b1(n)?;
                    for (r, p) in enumerate_incidence_pairs(n).iter().enumerate() {
                        let x = m.row_vector::<crate::IncidencePair>(r);
                        let s = pair_b1(&x, &x)?;
                        c.case(s == g[r][r], || format!("{p}: {s} vs {}", g[r][r]));
                    }
                }
                Ok(())
            },
        ),
    ]
}

fn roundtrip(engine: &Engine, max_n: usize) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let pairs = [
        (BasisTag::B1, BasisTag::B2),
        (BasisTag::B1, BasisTag::B3),
        (BasisTag::B2, BasisTag::B3),
        (BasisTag::HilbFixed, BasisTag::HilbP),
        (BasisTag::HilbL, BasisTag::HilbP),
    ];
    for (a, b) in pairs {
        out.push(run(
            Suite::Roundtrip,
            &format!("{a} → {b} → {a} is the identity"),
            |c| {
                for n in 0..=max_n {
                    let there = engine.matrix(a, b, n)?;
                    let back = engine.matrix(b, a, n)?;
                    c.case(is_identity(&mat_mul(&there.rows, &back.rows)), || {
                        format!("n = {n}")
                    });
                }
                Ok(())
            },
        ));
    }
    out
}

fn phi_suite(engine: &Engine, max_n: usize) -> Vec<CheckOutcome> {
    vec![
        run(Suite::Phi, "Φ[L^λC] = m_λ", |c| {
            for n in 0..=max_n {
                for l in enumerate_partitions(n) {
                    let x = phi(&engine.hilb_l_in_p(&l)?);
                    let m = m_in_p(&l);
                    c.case(x == m, || format!("λ = {l}: {x} vs {m}"));
                }
            }
            Ok(())
        }),
        run(Suite::Phi, "Φ[λ] = h(λ) s_λ", |c| {
            for n in 0..=max_n {
                for l in enumerate_partitions(n) {
                    let x = phi(&engine.hilb_fixed_to_p(&FockVector::basis(l.clone()))?);
                    let s = schur_in_p(&l).scale(&Scalar::from_integer(hook_product(&l)));
                    c.case(x == s, || format!("λ = {l}: {x} vs {s}"));
                }
            }
            Ok(())
        }),
        run(
            Suite::Phi,
            "Hall pairing transports the fixed-point pairing",
            |c| {
                for n in 0..=max_n {
                    let keys = enumerate_partitions(n);
                    for a in &keys {
                        for b in &keys {
                            let fa = FockVector::basis(a.clone());
                            let fb = FockVector::basis(b.clone());
                            let hall =
                                phi(&engine.hilb_fixed_to_p(&fa)?).hall(&phi(&engine.hilb_fixed_to_p(&fb)?));
                            c.case(hall == pair_hilb_fixed(&fa, &fb), || format!("{a} / {b}: {hall}"));
                        }
                    }
                }
                Ok(())
            },
        ),
        run(Suite::Phi, "σ_λ σ_μ = δ (-1)^|λ| h(λ) σ_λ", |c| {
            for n in 0..=max_n.min(6) {
                let keys = enumerate_partitions(n);
                for a in &keys {
                    for b in &keys {
                        let prod = transported_product(engine, &schur_in_p(a), &schur_in_p(b), n)?;
                        let expected = if a == b {
                            schur_in_p(a).scale(&(sign_pow(n) * Scalar::from_integer(hook_product(a))))
                        } else {
                            SymFunc::zero()
                        };
                        c.case(prod == expected, || format!("{a} · {b} = {prod}"));
                    }
                }
            }
            Ok(())
        }),
    ]
}

/// `x · y` on `Λ` transported from the Hilbert-scheme product `⋆`.
pub fn transported_product(engine: &Engine, x: &SymFunc, y: &SymFunc, n: usize) -> Result<SymFunc> {
    let fx = engine.hilb_p_to_fixed(&x.0)?;
    let fy = engine.hilb_p_to_fixed(&y.0)?;
    Ok(phi(&engine.hilb_fixed_to_p(&star_hilb(&fx, &fy, n)?)?))
}

fn diagrams(engine: &Engine, max_n: usize) -> Vec<CheckOutcome> {
    let fixed = |l: &Partition| FockVector::basis(l.clone());
    vec![
        run(Suite::Diagrams, "t ∪ f* commutes with creation", |c| {
            for d in 0..max_n {
                for m in 1..=(max_n - d).min(4) {
                    for l in enumerate_partitions(d) {
                        let lhs = pullback_f(&engine.hilb_fixed_creation(m, &fixed(&l))?)?;
                        let rhs = engine.apply_b1(B1Op::Create(m), &pullback_f(&fixed(&l))?)?;
                        c.case(lhs == rhs, || format!("m = {m}, [{l}]"));
                    }
                }
            }
            Ok(())
        }),
        run(Suite::Diagrams, "g* commutes with annihilation", |c| {
            for d in 1..=max_n + 1 {
                for m in 1..=d.min(4) {
                    if d - 1 > max_n {
                        continue;
                    }
                    for l in enumerate_partitions(d) {
                        let lhs = pullback_g(&engine.hilb_fixed_annihilation(m, &fixed(&l))?)?;
                        let rhs = engine.apply_b1(B1Op::Annihilate(m), &pullback_g(&fixed(&l))?)?;
                        c.case(lhs == rhs, || format!("m = {m}, [{l}]"));
                    }
                }
            }
            Ok(())
        }),
        run(
            Suite::Diagrams,
            "g*(a_{-m} A) = ã_{-m} g*A − m t̃^{m−1} (t ∪ f*)A",
            |c| {
                for d in 0..max_n {
                    for m in 1..=(max_n + 1 - d).min(4) {
                        if d + m - 1 > max_n {
                            continue;
                        }
                        for l in enumerate_partitions(d) {
                            let a = fixed(&l);
                            let lhs = pullback_g(&engine.hilb_fixed_creation(m, &a)?)?;
                            let mut corr = pullback_f(&a)?;
                            for _ in 1..m {
                                corr = engine.apply_b1(B1Op::Translate, &corr)?;
                            }
                            let mut rhs = engine.apply_b1(B1Op::Create(m), &pullback_g(&a)?)?;
                            rhs.add_scaled(&corr, &int(-(m as i64)));
                            c.case(lhs == rhs, || format!("m = {m}, A = [{l}]"));
                        }
                    }
                }
                Ok(())
            },
        ),
        run(Suite::Diagrams, "g* a_{-m}|0⟩ = m t̃^{m−1}|0⟩", |c| {
            for m in 1..=max_n.min(6) {
                let vac = FockVector::basis(Partition::empty());
                let lhs = engine.b1_to_b2(&pullback_g(&engine.hilb_fixed_creation(m, &vac)?)?)?;
                let mut rhs = FockVector::basis(B2Key::vacuum());
                for _ in 1..m {
                    rhs = fock::translate(&rhs);
                }
                c.case(lhs == rhs.scale(&int(m as i64)), || format!("m = {m}: {lhs}"));
            }
            Ok(())
        }),
        run(Suite::Diagrams, "pullbacks are ring homomorphisms", |c| {
            for n in 0..=max_n {
                let keys = enumerate_partitions(n);
                for a in &keys {
                    for b in &keys {
                        let x = star_hilb(&fixed(a), &fixed(b), n)?;
                        let lhs = pullback_f(&x)?;
                        let rhs = ring::star_b1(&pullback_f(&fixed(a))?, &pullback_f(&fixed(b))?, n)?;
                        c.case(lhs == rhs, || format!("f: [{a}] ⋆ [{b}]"));
                        if n >= 1 {
                            let lhs = pullback_g(&x)?;
                            let rhs = ring::star_b1(&pullback_g(&fixed(a))?, &pullback_g(&fixed(b))?, n - 1)?;
                            c.case(lhs == rhs, || format!("g: [{a}] ⋆ [{b}]"));
                        }
                    }
                }
            }
            Ok(())
        }),
        run(Suite::Diagrams, "pullbacks transport the pairings", |c| {
            for n in 0..=max_n {
                let keys = enumerate_partitions(n);
                for a in &keys {
                    for b in &keys {
                        let (fa, fb) = (fixed(a), fixed(b));
                        let base = pair_hilb_fixed(&fa, &fb);
                        let f = pair_b1(&pullback_f(&fa)?, &pullback_f(&fb)?)?;
                        c.case(f == base, || format!("f: [{a}], [{b}]"));
                        if n >= 1 {
                            let g = pair_b1(&pullback_g(&fa)?, &pullback_g(&fb)?)?;
                            c.case(g == &base * int(n as i64), || format!("g: [{a}], [{b}]"));
                        }
                    }
                }
            }
            Ok(())
        }),
        run(Suite::Diagrams, "Φ̃ ∘ (t ∪ f*) = −ι ∘ Φ", |c| {
            for n in 0..=max_n {
                for l in enumerate_partitions(n) {
                    let a = FockVector::basis(l.clone());
                    let lhs = phi_tilde(&engine.b1_to_b2(&pullback_f(&engine.hilb_p_to_fixed(&a)?)?)?);
                    let rhs = iota(&phi(&a));
                    c.case(lhs.0 == -&rhs.0, || format!("p_{l}"));
                }
            }
            Ok(())
        }),
    ]
}

fn ordinary(engine: &Engine, max_n: usize) -> Vec<CheckOutcome> {
    let cap = max_n.min(4);
    let basis = |n: usize| -> Vec<OrdinaryClass> {
        b2_keys(n)
            .into_iter()
            .map(|k| OrdinaryClass::basis(n, k).expect("degree matches"))
            .collect()
    };
    vec![
        run(Suite::Ordinary, "unit exists with u_n = n!", |c| {
            for n in 0..=cap {
                let u = ring::ordinary_unit_factor(engine, n)?;
                c.case(u == Scalar::from_integer(factorial(n)), || {
                    format!("n = {n}: u = {u}")
                });
            }
            Ok(())
        }),
        run(Suite::Ordinary, "cup product is commutative and graded", |c| {
            for n in 0..=cap {
                for x in basis(n) {
                    for y in basis(n) {
                        let xy = ordinary_cup(engine, &x, &y)?;
                        let yx = ordinary_cup(engine, &y, &x)?;
                        let want = x.ordinary_degree().unwrap() + y.ordinary_degree().unwrap();
                        let graded = xy.is_zero() || xy.ordinary_degree() == Some(want);
                        let fits = want <= 2 * n || xy.is_zero();
                        c.case(xy == yx && graded && fits, || {
                            format!("n = {n}: {:?} · {:?}", x.class(), y.class())
                        });
                    }
                }
            }
            Ok(())
        }),
        run(Suite::Ordinary, "cup product is associative", |c| {
            for n in 0..=cap {
                let b = basis(n);
                for x in &b {
                    for y in &b {
                        let xy = ordinary_cup(engine, x, y)?;
                        for z in &b {
                            let l = ordinary_cup(engine, &xy, z)?;
                            let r = ordinary_cup(engine, x, &ordinary_cup(engine, y, z)?)?;
                            c.case(l == r, || format!("n = {n}"));
                        }
                    }
                }
            }
            Ok(())
        }),
        run(
            Suite::Ordinary,
            "⋆̃ never lowers length below ℓ₁ + ℓ₂ − n",
            |c| {
                for n in 0..=cap {
                    for x in b2_keys(n) {
                        for y in b2_keys(n) {
                            let prod = ring::star_tilde(
                                engine,
                                &FockVector::basis(x.clone()),
                                &FockVector::basis(y.clone()),
                            )?;
                            let floor = (x.nu.len() + y.nu.len()).saturating_sub(n);
                            c.case(prod.keys().all(|k| k.nu.len() >= floor), || format!("{x} ⋆̃ {y}"));
                        }
                    }
                }
                Ok(())
            },
        ),
        run(Suite::Ordinary, "top class squares to zero for n = 1", |c| {
            let t = OrdinaryClass::basis(1, B2Key::new(1, Partition::empty()))?;
            let sq = ordinary_cup(engine, &t, &t)?;
            c.case(
                sq.is_zero() && ordinary_degree(1, &B2Key::new(1, Partition::empty())) == 2,
                || format!("square is {:?}", sq.class()),
            );
            Ok(())
        }),
    ]
}
