//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Each criterion combines the named check suites of the library with
//! explicit spot values computed by hand.

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use nestfock::curve_classes::{create_b3, translate_b3_vec};
use nestfock::fock::{b2_keys, pair_b1, translate};
use nestfock::incidence::{
    betti_from_fixed_points, betti_series, enumerate_incidence_pairs, h_pair, hook_identity_lambda_sum,
    hook_identity_mu_sum,
};
use nestfock::partitions::{enumerate_partitions, hook_product};
use nestfock::ring::{ordinary_cup, ordinary_unit_factor, pullback_g, OrdinaryClass};
use nestfock::scalar::{ratio, Scalar};
use nestfock::symfunc::{phi, schur_in_p};
use nestfock::verify::{run_suite, Suite};
use nestfock::{B2Key, CoefficientRule, Engine, FockVector, IncidencePair, Partition};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(p: i64, d: i64) -> Scalar {
    ratio(p, d)
}

fn part(v: &[usize]) -> Partition {
    Partition::from_parts(v.to_vec())
}

fn pair(l: &[usize], m: &[usize]) -> IncidencePair {
    IncidencePair::new(part(l), part(m)).expect("incidence pair")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs suites and reports the total number of cases, or the first failure.
fn suites(engine: &Engine, list: &[(Suite, usize)]) -> Result<usize, String> {
    let mut cases = 0;
    for &(s, n) in list {
        for o in run_suite(engine, s, n) {
            if !o.passed {
                return Err(format!(
                    "{}/{}: {}",
                    o.suite,
                    o.check,
                    o.counterexample.unwrap_or_default()
                ));
            }
            cases += o.cases;
        }
    }
    Ok(cases)
}

fn hooks() -> Outcome {
    let cases = suites(&Engine::new(), &[(Suite::Hooks, 10)])?;
    let sum = hook_identity_lambda_sum(&part(&[2])).map_err(|e| e.to_string())?;
    ensure(sum == q(1, 1), || format!("λ = (2) sums to {sum}"))?;
    let terms = [h_pair(&pair(&[2], &[3])), h_pair(&pair(&[2], &[2, 1]))];
    ensure(
        terms[0].as_ref().ok() == Some(&12.into()) && terms[1].as_ref().ok() == Some(&6.into()),
        || format!("h((2),(3)), h((2),(2,1)) = {terms:?}"),
    )?;
    let sum = hook_identity_mu_sum(&part(&[2, 1])).map_err(|e| e.to_string())?;
    ensure(sum == q(3, 1), || format!("μ = (2,1) sums to {sum}"))?;
    Ok(format!("{cases} cases, λ ⊢ n ≤ 10, μ ⊢ n ≤ 11"))
}

fn euler() -> Outcome {
    let cases = suites(&Engine::new(), &[(Suite::Euler, 8)])?;
    Ok(format!("{cases} cases, n ≤ 8"))
}

fn betti() -> Outcome {
    let series = betti_series(12);
    for (n, row) in series.iter().enumerate() {
        let total: u64 = row.iter().sum();
        ensure(*row == betti_from_fixed_points(n), || format!("n = {n}: {row:?}"))?;
        ensure(total as usize == enumerate_incidence_pairs(n).len(), || {
            format!("n = {n}: pair count")
        })?;
        ensure(total as usize == b2_keys(n).len(), || {
            format!("n = {n}: monomial count")
        })?;
    }
    ensure(series[2] == [1, 2, 1], || format!("n = 2: {:?}", series[2]))?;
    Ok(format!("n ≤ 12, n = 2 gives {:?}", series[2]))
}

fn heisenberg() -> Outcome {
    let cases = suites(&Engine::new(), &[(Suite::Heisenberg, 6)])?;
    Ok(format!("{cases} cases, degrees ≤ 6"))
}

fn pairing() -> Outcome {
    let cases = suites(&Engine::new(), &[(Suite::Pairing, 8)])?;
    Ok(format!("{cases} cases, n ≤ 8"))
}

/// Counts the curve classes on which creation fails to commute with
/// translation, over every case whose images have degree `≤ 2`.
fn commutation_failures(rule: CoefficientRule) -> Result<usize, String> {
    let mut bad = 0;
    for d in 0..2 {
        for p in enumerate_incidence_pairs(d) {
            for m in 1..2 - d {
                let v = FockVector::basis(p.clone());
                let lhs = create_b3(m, &translate_b3_vec(&v), rule).map_err(|e| e.to_string())?;
                let rhs = translate_b3_vec(&create_b3(m, &v, rule).map_err(|e| e.to_string())?);
                bad += usize::from(lhs != rhs);
            }
        }
    }
    Ok(bad)
}

fn regression() -> Outcome {
    let literal = commutation_failures(CoefficientRule::Literal)?;
    let corrected = commutation_failures(CoefficientRule::Corrected)?;
    ensure(literal > 0, || {
        "the uncorrected coefficient commutes with translation at n = 2".into()
    })?;
    ensure(corrected == 0, || {
        format!("the corrected coefficient fails {corrected} cases at n = 2")
    })?;
    let cases = suites(&Engine::new(), &[(Suite::Loop, 6)])?;
    Ok(format!(
        "uncorrected fails {literal} case(s) at n = 2, corrected passes; loop suite {cases} cases"
    ))
}

fn tables() -> Outcome {
    let e = Engine::new();
    let b2 = |i: usize, nu: &[usize]| B2Key::new(i, part(nu));
    let expected: Vec<(B2Key, Vec<(IncidencePair, Scalar)>)> = vec![
        (
            b2(0, &[1]),
            vec![(pair(&[1], &[2]), q(1, 2)), (pair(&[1], &[1, 1]), q(1, 2))],
        ),
        (
            b2(1, &[]),
            vec![(pair(&[1], &[2]), q(1, 2)), (pair(&[1], &[1, 1]), q(-1, 2))],
        ),
        (
            b2(2, &[]),
            vec![
                (pair(&[2], &[3]), q(1, 6)),
                (pair(&[2], &[2, 1]), q(-1, 6)),
                (pair(&[1, 1], &[2, 1]), q(-1, 6)),
                (pair(&[1, 1], &[1, 1, 1]), q(1, 6)),
            ],
        ),
        (
            b2(0, &[1, 1]),
            vec![
                (pair(&[2], &[3]), q(1, 6)),
                (pair(&[2], &[2, 1]), q(1, 3)),
                (pair(&[1, 1], &[2, 1]), q(1, 3)),
                (pair(&[1, 1], &[1, 1, 1]), q(1, 6)),
            ],
        ),
    ];
    for (k, terms) in &expected {
        let got = e
            .b2_to_b1(&FockVector::basis(k.clone()))
            .map_err(|x| x.to_string())?;
        let want = FockVector::from_terms(terms.iter().cloned());
        ensure(got == want, || format!("{k}: {got}"))?;
    }
    // the remaining n = 2 row is not listed; its norm must still be z_(2) = 2
    let rest = e
        .b2_to_b1(&FockVector::basis(b2(0, &[2])))
        .map_err(|x| x.to_string())?;
    let norm = pair_b1(&rest, &rest).map_err(|x| x.to_string())?;
    ensure(norm == q(2, 1), || format!("⟨ã_-2, ã_-2⟩ = {norm}"))?;
    Ok(format!("{} rows reproduced", expected.len()))
}

fn dictionary() -> Outcome {
    let e = Engine::new();
    let mut cases = suites(&e, &[(Suite::Phi, 8)])?;
    for n in 0..=9 {
        for l in enumerate_partitions(n) {
            let x = phi(&e.hilb_l_in_p(&l).map_err(|x| x.to_string())?);
            ensure(x == nestfock::symfunc::m_in_p(&l), || format!("Φ[L^{l}C] = {x}"))?;
            cases += 1;
        }
    }
    let mut signs = Vec::new();
    for n in 0..=8 {
        let mut sign = None;
        for l in enumerate_partitions(n) {
            let x = phi(&e
                .hilb_fixed_to_p(&FockVector::basis(l.clone()))
                .map_err(|x| x.to_string())?);
            let h = Scalar::from_integer(hook_product(&l));
            let norm = x.hall(&x);
            ensure(norm == &h * &h, || format!("⟨Φ[{l}], Φ[{l}]⟩ = {norm}"))?;
            let s = schur_in_p(&l).scale(&h);
            let eps = if x == s {
                1
            } else if x == s.scale(&q(-1, 1)) {
                -1
            } else {
                return Err(format!("Φ[{l}] is not ±h s_λ"));
            };
            ensure(*sign.get_or_insert(eps) == eps, || {
                format!("sign changes within degree {n}")
            })?;
            cases += 1;
        }
        signs.push(sign.unwrap_or(1));
    }
    Ok(format!("{cases} cases, sign by degree {signs:?}"))
}

fn comparison() -> Outcome {
    let e = Engine::new();
    let cases = suites(&e, &[(Suite::Diagrams, 6)])?;
    // g* a_{-2}|0⟩ = 2 t̃|0⟩, with a_{-2}|0⟩ = ½([(2)] − [(1,1)])
    let a2 = FockVector::from_terms([(part(&[2]), q(1, 2)), (part(&[1, 1]), q(-1, 2))]);
    let got = e
        .b1_to_b2(&pullback_g(&a2).map_err(|x| x.to_string())?)
        .map_err(|x| x.to_string())?;
    let want = translate(&FockVector::basis(B2Key::vacuum())).scale(&q(2, 1));
    ensure(got == want, || format!("g* a_-2|0⟩ = {got}"))?;
    Ok(format!("{cases} cases, n ≤ 6"))
}

fn ordinary() -> Outcome {
    let e = Engine::new();
    let cases = suites(&e, &[(Suite::Ordinary, 4)])?;
    let units: Vec<Scalar> = (0..=4)
        .map(|n| ordinary_unit_factor(&e, n))
        .collect::<nestfock::Result<_>>()
        .map_err(|x| x.to_string())?;
    ensure(units[1] == q(1, 1) && units[2] == q(2, 1), || {
        format!("units {units:?}")
    })?;
    let series = betti_series(4);
    for (n, betti) in series.iter().enumerate() {
        let basis: Vec<_> = b2_keys(n)
            .into_iter()
            .map(|k| OrdinaryClass::basis(n, k).unwrap())
            .collect();
        for x in &basis {
            for y in &basis {
                let d = x.ordinary_degree().unwrap() + y.ordinary_degree().unwrap();
                let b = betti.get(d / 2).copied().unwrap_or(0);
                let xy = ordinary_cup(&e, x, y).map_err(|x| x.to_string())?;
                ensure(b > 0 || xy.is_zero(), || {
                    format!("n = {n}: product lands in degree {d} with b = 0")
                })?;
            }
        }
    }
    let units: Vec<String> = units.iter().map(|u| u.to_string()).collect();
    Ok(format!("{cases} cases, u_0..u_4 = {}", units.join(", ")))
}

fn run_cli(bin: &Path, cache: &Path, args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(bin)
        .args(args)
        .arg("--cache-dir")
        .arg(cache)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!(
            "{args:?} exited {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let bin = Path::new(env!("CARGO_BIN_EXE_nestfock"));
    let dir = std::env::temp_dir().join(format!("nestfock-acceptance-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let commands: [&[&str]; 4] = [
        &["transition", "--from", "b2", "--to", "b1", "-n", "4"],
        &[
            "transition",
            "--from",
            "b3",
            "--to",
            "b1",
            "-n",
            "3",
            "--format",
            "csv",
        ],
        &["product", "--basis", "b2", "-n", "2"],
        &["product", "--basis", "ordinary", "-n", "3"],
    ];
    let mut checked = 0;
    for args in commands {
        let cold = run_cli(bin, &dir, args)?;
        let warm = run_cli(bin, &dir, args)?;
        let mut fresh = args.to_vec();
        fresh.push("--no-cache");
        let uncached = run_cli(bin, &dir, &fresh)?;
        ensure(cold == warm, || {
            format!("{args:?}: warm output differs from cold")
        })?;
        ensure(cold == uncached, || {
            format!("{args:?}: cached output differs from uncached")
        })?;
        checked += 1;
    }
    let stored = std::fs::read_dir(&dir).map(|d| d.count()).unwrap_or(0);
    let _ = std::fs::remove_dir_all(&dir);
    ensure(stored > 0, || "no matrices were cached".into())?;
    Ok(format!(
        "{checked} commands byte-identical across cold, warm and uncached runs; {stored} cached files"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("hook identities", hooks),
        ("Euler classes from tangent weights", euler),
        ("Betti numbers", betti),
        ("Heisenberg and translation relations on fixed points", heisenberg),
        ("pairing transport", pairing),
        ("uncorrected creation coefficient regression", regression),
        ("explicit n = 1, 2 transition tables", tables),
        ("symmetric-function dictionary", dictionary),
        ("comparison maps", comparison),
        ("ordinary cohomology ring", ordinary),
        ("CLI determinism and cache", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
