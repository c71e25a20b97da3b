//! Parsing basis keys given on the command line.
//!
//! Every key accepts its JSON form (`{"lambda":[1],"mu":[2]}`,
//! `{"i":1,"nu":[1]}`, `[2,1]`) or a compact form:
//!
//! * partitions: `2,1` (empty string or `-` for the empty partition)
//! * incidence pairs: `λ/μ`, e.g. `1,1/2,1` or `/1`
//! * operator monomials: `i:ν`, e.g. `1:1` or `2:`

use nestfock::{B2Key, IncidencePair, Partition};
use serde::de::DeserializeOwned;

fn json<T: DeserializeOwned>(s: &str) -> Option<Result<T, String>> {
    let t = s.trim_start();
    (t.starts_with('{') || t.starts_with('[')).then(|| serde_json::from_str(t).map_err(|e| e.to_string()))
}

pub fn partition(s: &str) -> Result<Partition, String> {
    if let Some(r) = json(s) {
        return r;
    }
    let s = s.trim();
    if s.is_empty() || s == "-" {
        return Ok(Partition::empty());
    }
    let parts = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad part {p:?} in {s:?}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Partition::new(parts).map_err(|e| e.to_string())
}

pub fn pair(s: &str) -> Result<IncidencePair, String> {
    if let Some(r) = json(s) {
        return r;
    }
    let (l, m) = s
        .split_once('/')
        .ok_or_else(|| format!("expected λ/μ, got {s:?}"))?;
    IncidencePair::new(partition(l)?, partition(m)?).map_err(|e| e.to_string())
}

pub fn b2(s: &str) -> Result<B2Key, String> {
    if let Some(r) = json(s) {
        return r;
    }
    let (i, nu) = s
        .split_once(':')
        .ok_or_else(|| format!("expected i:ν, got {s:?}"))?;
    let i = i.trim().parse().map_err(|_| format!("bad exponent {i:?}"))?;
    Ok(B2Key::new(i, partition(nu)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_and_json_forms_agree() {
        assert_eq!(partition("2,1").unwrap(), partition("[2,1]").unwrap());
        assert_eq!(partition("").unwrap(), Partition::empty());
        assert_eq!(
            pair("1,1/2,1").unwrap(),
            pair(r#"{"lambda":[1,1],"mu":[2,1]}"#).unwrap()
        );
        assert_eq!(pair("/1").unwrap().mu(), &Partition::from([1]));
        assert_eq!(b2("2:").unwrap(), B2Key::new(2, Partition::empty()));
        assert_eq!(b2("0:1,1").unwrap(), b2(r#"{"i":0,"nu":[1,1]}"#).unwrap());
    }

    #[test]
    fn malformed_keys_are_rejected() {
        assert!(partition("1,2").is_err());
        assert!(partition("a").is_err());
        assert!(pair("1/3").is_err());
        assert!(pair("1").is_err());
        assert!(b2("x:1").is_err());
    }
}
