//! The `key = value` quotient description format.
//!
//! ```text
//! # Klein bottle over A2
//! root_system = A2
//! kind = klein
//! alpha = 1,0
//! beta = 0,1
//! a = 1
//! b = 1
//! m = 1
//! order = 48      # optional, series order in u
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::quotient::{GroupSpec, QuotientGroup};
use crate::roots::{LatticeVector, RootKind, RootSystem};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpecFile {
    pub root_system: RootKind,
    pub group: GroupSpec,
    pub order: Option<usize>,
}

const TORUS_KEYS: &[&str] = &["v1", "v2"];
const KLEIN_KEYS: &[&str] = &["alpha", "beta", "a", "b", "m"];

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_vector(line: usize, key: &str, s: &str) -> Result<LatticeVector> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || parse_err(line, format!("{key}: expected \"x,y\", found \"{s}\""));
    if parts.len() != 2 {
        return Err(bad());
    }
    let x = parts[0].parse().map_err(|_| bad())?;
    let y = parts[1].parse().map_err(|_| bad())?;
    Ok(LatticeVector::new(x, y))
}

fn parse_int<T: std::str::FromStr>(line: usize, key: &str, s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| parse_err(line, format!("{key}: expected an integer, found \"{s}\"")))
}

impl QuotientSpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: BTreeMap<String, (usize, String)> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| parse_err(line, format!("expected key = value, found \"{content}\"")))?;
            let key = key.trim().to_string();
            if entries.contains_key(&key) {
                return Err(parse_err(line, format!("duplicate key '{key}'")));
            }
            entries.insert(key, (line, value.trim().to_string()));
        }
        let take = |key: &str| -> Result<(usize, String)> {
            entries
                .get(key)
                .cloned()
                .ok_or_else(|| Error::Spec(format!("missing key '{key}'")))
        };
        let (l, rs) = take("root_system")?;
        let root_system: RootKind = rs.parse().map_err(|e: Error| parse_err(l, e.to_string()))?;
        let (l, kind) = take("kind")?;
        let allowed: &[&str] = match kind.as_str() {
            "torus" => TORUS_KEYS,
            "klein" => KLEIN_KEYS,
            other => {
                return Err(parse_err(
                    l,
                    format!("unknown kind '{other}' (expected torus or klein)"),
                ))
            }
        };
        for (key, (line, _)) in &entries {
            let common = ["root_system", "kind", "order"].contains(&key.as_str());
            if !common && !allowed.contains(&key.as_str()) {
                return Err(parse_err(*line, format!("key '{key}' is not valid for kind {kind}")));
            }
        }
        let group = if kind == "torus" {
            let (l1, v1) = take("v1")?;
            let (l2, v2) = take("v2")?;
            GroupSpec::Torus {
                v1: parse_vector(l1, "v1", &v1)?,
                v2: parse_vector(l2, "v2", &v2)?,
            }
        } else {
            let vec = |k: &str| take(k).and_then(|(l, v)| parse_vector(l, k, &v));
            let int = |k: &str| take(k).and_then(|(l, v)| parse_int::<i64>(l, k, &v));
            GroupSpec::Klein {
                alpha: vec("alpha")?,
                beta: vec("beta")?,
                a: int("a")?,
                b: int("b")?,
                m: int("m")?,
            }
        };
        let order = match entries.get("order") {
            Some((l, v)) => {
                let k: usize = parse_int(*l, "order", v)?;
                if k == 0 {
                    return Err(parse_err(*l, "order must be positive"));
                }
                Some(k)
            }
            None => None,
        };
        Ok(QuotientSpecFile {
            root_system,
            group,
            order,
        })
    }

    pub fn build(&self) -> Result<QuotientGroup> {
        QuotientGroup::build(&RootSystem::new(self.root_system), self.group)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("root_system = {}\n", self.root_system);
        let v = |p: LatticeVector| format!("{},{}", p.x, p.y);
        match self.group {
            GroupSpec::Torus { v1, v2 } => {
                let _ = write!(s, "kind = torus\nv1 = {}\nv2 = {}\n", v(v1), v(v2));
            }
            GroupSpec::Klein { alpha, beta, a, b, m } => {
                let _ = write!(
                    s,
                    "kind = klein\nalpha = {}\nbeta = {}\na = {a}\nb = {b}\nm = {m}\n",
                    v(alpha),
                    v(beta)
                );
            }
        }
        if let Some(k) = self.order {
            let _ = writeln!(s, "order = {k}");
        }
        s
    }
}
