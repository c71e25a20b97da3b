use std::io::{self, Write};
use std::process::ExitCode;

use nestfock::basis_change::MatrixCache;
use nestfock::fock::b2_keys;
use nestfock::incidence::{
    betti_series, enumerate_incidence_pairs, euler_class, h_pair, h_plus, k_index, tangent_weights_incidence,
};
use nestfock::partitions::enumerate_partitions;
use nestfock::ring::{ordinary_cup, star_b1, star_hilb, star_tilde};
use nestfock::scalar::to_fraction_string;
use nestfock::verify::{run_suite, Suite};
use nestfock::{BasisKey, Engine, Error, FockVector, OrdinaryClass};
use serde::Serialize;
use serde_json::{json, Value};

use crate::keys;
use crate::{CacheAction, Cli, Command, Format, ProductBasis};

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) | Error::Parse(_) => 2,
            _ => 1,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError {
            code: 1,
            message: e.to_string(),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError {
            code: 1,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

pub fn run(cli: &Cli) -> CliResult<ExitCode> {
    let engine = if cli.no_cache {
        Engine::new()
    } else {
        Engine::new().with_cache(MatrixCache::new(&cli.cache_dir))
    };
    let bound = |n: usize| {
        if n > cli.max_degree {
            Err(CliError::usage(format!(
                "degree {n} exceeds --max-degree {}",
                cli.max_degree
            )))
        } else {
            Ok(())
        }
    };
    match &cli.command {
        Command::Transition { from, to, degree } => {
            bound(*degree)?;
            transition(&engine, cli.format, (*from).into(), (*to).into(), *degree)?;
        }
        Command::Product { basis, degree, a, b } => {
            bound(*degree)?;
            let pair = a.as_deref().zip(b.as_deref());
            product(&engine, cli.format, *basis, *degree, pair)?;
        }
        Command::Betti { max_n } => {
            bound(*max_n)?;
            betti(cli.format, *max_n)?;
        }
        Command::Pairs { degree } => {
            bound(*degree)?;
            pairs(cli.format, *degree)?;
        }
        Command::Verify { suite, max_n } => {
            bound(*max_n)?;
            let suites = Suite::parse_selection(suite).map_err(|e| CliError::usage(e.to_string()))?;
            if !verify(&engine, cli.format, &suites, *max_n)? {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Cache { action } => {
            let cache = MatrixCache::new(&cli.cache_dir);
            match action {
                CacheAction::Path => println!("{}", cache.dir().display()),
                CacheAction::Clear => {
                    let removed = cache.clear()?;
                    emit_json(&json!({ "removed": removed }))?;
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn emit_json<T: Serialize>(value: &T) -> CliResult<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| CliError {
        code: 1,
        message: e.to_string(),
    })?;
    writeln!(out)?;
    Ok(())
}

fn csv_writer() -> csv::Writer<io::Stdout> {
    csv::WriterBuilder::new().flexible(true).from_writer(io::stdout())
}

fn key_string<T: Serialize>(k: &T) -> String {
    serde_json::to_string(k).expect("keys serialize")
}

fn transition(
    engine: &Engine,
    format: Format,
    from: nestfock::BasisTag,
    to: nestfock::BasisTag,
    n: usize,
) -> CliResult<()> {
    let m = engine.matrix(from, to, n)?;
    let doc = m.to_document();
    match format {
        Format::Json => emit_json(&doc),
        Format::Csv => {
            let mut w = csv_writer();
            let mut header = vec![format!("{from}\\{to}")];
            header.extend(doc.payload.key_order.target.iter().map(key_string));
            w.write_record(&header)?;
            for (key, row) in doc.payload.key_order.source.iter().zip(&doc.payload.rows) {
                let mut record = vec![key_string(key)];
                record.extend(row.iter().cloned());
                w.write_record(&record)?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct Triple {
    a: Value,
    b: Value,
    c: Value,
    coeff: String,
}

fn triples<K, F>(keys: &[K], single: Option<(K, K)>, mut mul: F) -> CliResult<Vec<Triple>>
where
    K: Clone + Ord + Serialize,
    F: FnMut(&K, &K) -> nestfock::Result<FockVector<K>>,
{
    let factors: Vec<(K, K)> = match single {
        Some(ab) => vec![ab],
        None => keys
            .iter()
            .flat_map(|a| keys.iter().map(move |b| (a.clone(), b.clone())))
            .collect(),
    };
    let mut out = Vec::new();
    for (a, b) in factors {
        for (c, coeff) in mul(&a, &b)?.iter() {
            out.push(Triple {
                a: json!(a),
                b: json!(b),
                c: json!(c),
                coeff: to_fraction_string(coeff),
            });
        }
    }
    Ok(out)
}

fn parse_factors<K: nestfock::fock::Graded>(
    pair: Option<(&str, &str)>,
    n: usize,
    parse: fn(&str) -> std::result::Result<K, String>,
) -> CliResult<Option<(K, K)>> {
    let Some((a, b)) = pair else {
        return Ok(None);
    };
    let a = parse(a).map_err(CliError::usage)?;
    let b = parse(b).map_err(CliError::usage)?;
    for k in [&a, &b] {
        if k.degree() != n {
            return Err(CliError::usage(format!(
                "factor has degree {} but --degree is {n}",
                k.degree()
            )));
        }
    }
    Ok(Some((a, b)))
}

fn product(
    engine: &Engine,
    format: Format,
    basis: ProductBasis,
    n: usize,
    pair: Option<(&str, &str)>,
) -> CliResult<()> {
    let (name, table) = match basis {
        ProductBasis::B1 => {
            let single = parse_factors(pair, n, keys::pair)?;
            let keys = enumerate_incidence_pairs(n);
            let t = triples(&keys, single, |a, b| {
                star_b1(&FockVector::basis(a.clone()), &FockVector::basis(b.clone()), n)
            })?;
            ("b1", t)
        }
        ProductBasis::B2 => {
            let single = parse_factors(pair, n, keys::b2)?;
            let t = triples(&b2_keys(n), single, |a, b| {
                star_tilde(
                    engine,
                    &FockVector::basis(a.clone()),
                    &FockVector::basis(b.clone()),
                )
            })?;
            ("b2", t)
        }
        ProductBasis::Ordinary => {
            let single = parse_factors(pair, n, keys::b2)?;
            let t = triples(&b2_keys(n), single, |a, b| {
                let x = OrdinaryClass::basis(n, a.clone())?;
                let y = OrdinaryClass::basis(n, b.clone())?;
                Ok(ordinary_cup(engine, &x, &y)?.class().clone())
            })?;
            ("ordinary", t)
        }
        ProductBasis::Hilb => {
            let single = parse_factors(pair, n, keys::partition)?;
            let keys = enumerate_partitions(n);
            let t = triples(&keys, single, |a, b| {
                star_hilb(&FockVector::basis(a.clone()), &FockVector::basis(b.clone()), n)
            })?;
            ("hilb", t)
        }
    };
    match format {
        Format::Json => emit_json(&json!({ "degree": n, "basis": name, "triples": table })),
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["a", "b", "c", "coeff"])?;
            for t in &table {
                w.write_record([t.a.to_string(), t.b.to_string(), t.c.to_string(), t.coeff.clone()])?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

fn betti(format: Format, max_n: usize) -> CliResult<()> {
    let series = betti_series(max_n);
    match format {
        Format::Json => emit_json(&series),
        Format::Csv => {
            let mut w = csv_writer();
            for (n, row) in series.iter().enumerate() {
                let mut record = vec![n.to_string()];
                record.extend(row.iter().map(u64::to_string));
                w.write_record(&record)?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct PairReport {
    pair: BasisKey,
    i: usize,
    k: usize,
    h: String,
    h_plus: String,
    euler: nestfock::incidence::EulerClass,
    weights: nestfock::WeightMultiset,
}

fn pairs(format: Format, n: usize) -> CliResult<()> {
    let mut reports = Vec::new();
    for p in enumerate_incidence_pairs(n) {
        reports.push(PairReport {
            i: p.distinguished(),
            k: k_index(&p),
            h: h_pair(&p)?.to_string(),
            h_plus: h_plus(&p)?.to_string(),
            euler: euler_class(&p)?,
            weights: tangent_weights_incidence(&p)?,
            pair: BasisKey::Pair(p),
        });
    }
    match format {
        Format::Json => emit_json(&reports),
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["pair", "i", "k", "h", "h_plus", "euler", "weights"])?;
            for r in &reports {
                let weights: Vec<String> = r.weights.weights().iter().map(i64::to_string).collect();
                w.write_record([
                    key_string(&r.pair),
                    r.i.to_string(),
                    r.k.to_string(),
                    r.h.clone(),
                    r.h_plus.clone(),
                    format!("{}t^{}", r.euler.coefficient(), r.euler.t_exponent),
                    weights.join(" "),
                ])?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

fn verify(engine: &Engine, format: Format, suites: &[Suite], max_n: usize) -> CliResult<bool> {
    let outcomes: Vec<_> = suites.iter().flat_map(|&s| run_suite(engine, s, max_n)).collect();
    let passed = outcomes.iter().all(|o| o.passed);
    match format {
        Format::Json => emit_json(&json!({ "max_n": max_n, "passed": passed, "checks": outcomes }))?,
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["suite", "check", "passed", "cases", "counterexample"])?;
            for o in &outcomes {
                w.write_record([
                    o.suite.name().to_string(),
                    o.check.clone(),
                    o.passed.to_string(),
                    o.cases.to_string(),
                    o.counterexample.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
    }
    for o in outcomes.iter().filter(|o| !o.passed) {
        eprintln!(
            "FAIL {}/{}: {}",
            o.suite,
            o.check,
            o.counterexample.as_deref().unwrap_or("")
        );
    }
    Ok(passed)
}
