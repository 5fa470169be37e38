//! Degrees and codegrees of irreducible complex reflection groups, regular
//! numbers and their classes, and the search for pairs of groups sharing
//! both multisets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::data;
use crate::periodic::{divisors, gcd};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReflError {
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("invalid series parameters G({m},{p},{n}): {why}")]
    InvalidParameters {
        m: u64,
        p: u64,
        n: u64,
        why: &'static str,
    },
    #[error("line {line}: {msg}")]
    Table { line: usize, msg: String },
    #[error("table value for {group} disagrees with the reference value: {what}")]
    ReferenceMismatch { group: String, what: String },
}

/// Shephard–Todd label: `Gk` or `G(m,p,n)` with `m = de`, `p = e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupName {
    Exceptional(u32),
    Series { m: u64, p: u64, n: u64 },
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupName::Exceptional(k) => write!(f, "G{k}"),
            GroupName::Series { m, p, n } => write!(f, "G({m},{p},{n})"),
        }
    }
}

impl Serialize for GroupName {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for GroupName {
    type Err = ReflError;

    fn from_str(s: &str) -> Result<Self, ReflError> {
        let bad = || ReflError::UnknownGroup(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let rest = t
            .strip_prefix('G')
            .or_else(|| t.strip_prefix('g'))
            .ok_or_else(bad)?;
        if let Some(inner) = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let parts: Vec<u64> = inner
                .split(',')
                .map(|x| x.parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            let [m, p, n] = parts[..] else {
                return Err(bad());
            };
            Ok(GroupName::Series { m, p, n })
        } else {
            let k: u32 = rest.parse().map_err(|_| bad())?;
            if !(4..=37).contains(&k) {
                return Err(bad());
            }
            Ok(GroupName::Exceptional(k))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupData {
    pub name: GroupName,
    pub rank: usize,
    pub degrees: Vec<u64>,
    pub codegrees: Vec<u64>,
}

impl GroupData {
    /// Product of the degrees; `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        self.degrees
            .iter()
            .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
    }

    /// gcd of the degrees.
    pub fn center_order(&self) -> u64 {
        self.degrees.iter().fold(0, |acc, &d| gcd(acc, d))
    }

    fn key(&self) -> (Vec<u64>, Vec<u64>) {
        (self.degrees.clone(), self.codegrees.clone())
    }

    pub fn a_set(&self, d: u64) -> Vec<u64> {
        self.degrees
            .iter()
            .copied()
            .filter(|x| x % d == 0)
            .collect()
    }

    pub fn b_set(&self, d: u64) -> Vec<u64> {
        self.codegrees
            .iter()
            .copied()
            .filter(|x| x % d == 0)
            .collect()
    }

    pub fn is_regular(&self, d: u64) -> bool {
        d >= 1 && self.a_set(d).len() == self.b_set(d).len()
    }

    /// Every regular number, ascending. Regular numbers divide a degree.
    pub fn regular_numbers(&self) -> Vec<u64> {
        let top = self.degrees.iter().copied().max().unwrap_or(1);
        (1..=top).filter(|&d| self.is_regular(d)).collect()
    }

    pub fn fundamental(&self, d: u64) -> Option<u64> {
        if !self.is_regular(d) {
            return None;
        }
        Some(self.a_set(d).into_iter().chain(self.b_set(d)).fold(0, gcd))
    }

    pub fn fundamentals(&self) -> Vec<u64> {
        let set: BTreeSet<u64> = self
            .regular_numbers()
            .into_iter()
            .filter_map(|d| self.fundamental(d))
            .collect();
        set.into_iter().collect()
    }

    /// Regular numbers grouped by `(A(d), B(d))`, each class ascending,
    /// classes ordered by least element.
    pub fn r_classes(&self) -> Vec<Vec<u64>> {
        let mut by_key: BTreeMap<(Vec<u64>, Vec<u64>), Vec<u64>> = BTreeMap::new();
        for d in self.regular_numbers() {
            by_key
                .entry((self.a_set(d), self.b_set(d)))
                .or_default()
                .push(d);
        }
        let mut classes: Vec<Vec<u64>> = by_key.into_values().collect();
        classes.sort();
        classes
    }

    /// Classes from the fundamental chain `f_1 < … < f_k`: divisors of the
    /// center order, then `{d : d | f_i, d ∤ f_{i-1}}`.
    pub fn r_classes_by_chain(&self) -> Vec<Vec<u64>> {
        let f = self.fundamentals();
        let mut out = vec![divisors(self.center_order())];
        for i in 1..f.len() {
            out.push(
                divisors(f[i])
                    .into_iter()
                    .filter(|d| !f[i - 1].is_multiple_of(*d))
                    .collect(),
            );
        }
        out.sort();
        out
    }

    pub fn regularity(&self, d: u64) -> RegularityReport {
        let regular = self.is_regular(d);
        let (r_class, class_minimum) = if regular {
            let (a, b) = (self.a_set(d), self.b_set(d));
            let class: Vec<u64> = self
                .regular_numbers()
                .into_iter()
                .filter(|&e| self.a_set(e) == a && self.b_set(e) == b)
                .collect();
            let min = class_minimum(&class);
            (class, min)
        } else {
            (Vec::new(), None)
        };
        RegularityReport {
            d,
            a: self.a_set(d),
            b: self.b_set(d),
            regular,
            fundamental: self.fundamental(d),
            r_class,
            class_minimum,
        }
    }
}

/// The unique element dividing every other one, if any.
pub fn class_minimum(class: &[u64]) -> Option<u64> {
    let minimal: Vec<u64> = class
        .iter()
        .copied()
        .filter(|&x| !class.iter().any(|&y| y != x && x % y == 0))
        .collect();
    match minimal[..] {
        [m] if class.iter().all(|&x| x % m == 0) => Some(m),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub d: u64,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub regular: bool,
    pub fundamental: Option<u64>,
    pub r_class: Vec<u64>,
    pub class_minimum: Option<u64>,
}

/// The exceptional table, with the reference values checked on load.
#[derive(Clone, Debug)]
pub struct ExceptionalTable {
    groups: BTreeMap<u32, GroupData>,
}

fn parse_list(s: &str, line: usize) -> Result<Vec<u64>, ReflError> {
    let mut v: Vec<u64> = s
        .split(',')
        .map(|x| {
            x.trim().parse().map_err(|_| ReflError::Table {
                line,
                msg: format!("bad number {x:?}"),
            })
        })
        .collect::<Result<_, _>>()?;
    v.sort_unstable();
    Ok(v)
}

impl ExceptionalTable {
    pub fn bundled() -> Result<Self, ReflError> {
        Self::parse(data::EXCEPTIONAL)
    }

    pub fn parse(text: &str) -> Result<Self, ReflError> {
        let mut groups = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let err = |msg: &str| ReflError::Table {
                line,
                msg: msg.to_string(),
            };
            let (name, rest) = l.split_once(':').ok_or_else(|| err("missing ':'"))?;
            let GroupName::Exceptional(k) = name.trim().parse()? else {
                return Err(err("expected an exceptional group name"));
            };
            let mut degrees = None;
            let mut codegrees = None;
            for field in rest.split_whitespace() {
                match field.split_once('=') {
                    Some(("degrees", v)) => degrees = Some(parse_list(v, line)?),
                    Some(("codegrees", v)) => codegrees = Some(parse_list(v, line)?),
                    _ => return Err(err("expected degrees=… codegrees=…")),
                }
            }
            let (degrees, codegrees) = degrees
                .zip(codegrees)
                .ok_or_else(|| err("missing degrees or codegrees"))?;
            if degrees.len() != codegrees.len() {
                return Err(err("degrees and codegrees differ in number"));
            }
            if codegrees.first() != Some(&0) {
                return Err(err("codegree 0 missing"));
            }
            let gd = GroupData {
                name: GroupName::Exceptional(k),
                rank: degrees.len(),
                degrees,
                codegrees,
            };
            if groups.insert(k, gd).is_some() {
                return Err(err("duplicate group"));
            }
        }
        let t = ExceptionalTable { groups };
        t.check_reference_values()?;
        Ok(t)
    }

    fn check_reference_values(&self) -> Result<(), ReflError> {
        let expect = |k: u32, deg: &[u64], codeg: &[u64]| -> Result<(), ReflError> {
            let g = self
                .groups
                .get(&k)
                .ok_or_else(|| ReflError::ReferenceMismatch {
                    group: format!("G{k}"),
                    what: "missing".into(),
                })?;
            if g.degrees != deg || g.codegrees != codeg {
                return Err(ReflError::ReferenceMismatch {
                    group: format!("G{k}"),
                    what: format!("degrees {:?} codegrees {:?}", g.degrees, g.codegrees),
                });
            }
            Ok(())
        };
        expect(12, &[6, 8], &[0, 10])?;
        expect(13, &[8, 12], &[0, 16])?;
        if self.groups.len() != 34 {
            return Err(ReflError::ReferenceMismatch {
                group: "G4..G37".into(),
                what: format!("{} groups listed", self.groups.len()),
            });
        }
        Ok(())
    }

    pub fn get(&self, k: u32) -> Option<&GroupData> {
        self.groups.get(&k)
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroupData> {
        self.groups.values()
    }
}

/// Degrees and codegrees of `G(m,p,n)`, `m = de`, `p = e`, `d = m/p`.
///
/// `G(1,1,n)` is taken as the symmetric group acting irreducibly in rank
/// `n-1`: the trivial degree 1 and codegree -1 are dropped.
pub fn series_data(m: u64, p: u64, n: u64) -> Result<GroupData, ReflError> {
    let invalid = |why| ReflError::InvalidParameters { m, p, n, why };
    if m == 0 || p == 0 || n == 0 {
        return Err(invalid("parameters must be positive"));
    }
    if !m.is_multiple_of(p) {
        return Err(invalid("p must divide m"));
    }
    let d = m / p;
    let name = GroupName::Series { m, p, n };
    if m == 1 {
        if n < 2 {
            return Err(invalid("G(1,1,1) is trivial"));
        }
        return Ok(GroupData {
            name,
            rank: (n - 1) as usize,
            degrees: (2..=n).collect(),
            codegrees: (0..=n - 2).collect(),
        });
    }
    let mut degrees: Vec<u64> = (1..n).map(|i| i * m).collect();
    degrees.push(n * d);
    let mut codegrees: Vec<u64> = if d > 1 {
        (0..n).map(|i| i * m).collect()
    } else {
        let mut c: Vec<u64> = (0..n - 1).map(|i| i * m).collect();
        c.push((n - 1) * m - n);
        c
    };
    degrees.sort_unstable();
    codegrees.sort_unstable();
    Ok(GroupData {
        name,
        rank: n as usize,
        degrees,
        codegrees,
    })
}

pub fn group_data(name: &str, table: &ExceptionalTable) -> Result<GroupData, ReflError> {
    match name.parse::<GroupName>()? {
        GroupName::Exceptional(k) => table
            .get(k)
            .cloned()
            .ok_or_else(|| ReflError::UnknownGroup(name.to_string())),
        GroupName::Series { m, p, n } => series_data(m, p, n),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairCaps {
    pub max_de: u64,
    pub max_n: u64,
}

impl Default for PairCaps {
    fn default() -> Self {
        PairCaps {
            max_de: 120,
            max_n: 10,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    ExceptionalSeries,
    SeriesSeries,
    ExceptionalExceptional,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsodiscriminantalPair {
    pub first: GroupName,
    pub second: GroupName,
    pub kind: PairKind,
    pub degrees: Vec<u64>,
    pub codegrees: Vec<u64>,
}

/// Irreducible series groups of rank at least 2 within the caps.
/// `G(2,2,2)` is reducible and `G(1,1,2)` has rank 1; both are skipped.
pub fn series_groups(caps: PairCaps) -> Vec<GroupData> {
    let mut out = Vec::new();
    for m in 1..=caps.max_de {
        for p in divisors(m) {
            for n in 2..=caps.max_n {
                if (m, p, n) == (2, 2, 2) || (m, p, n) == (1, 1, 2) {
                    continue;
                }
                out.push(series_data(m, p, n).expect("parameters are valid"));
            }
        }
    }
    out
}

/// All unordered pairs of distinct groups with equal degrees and codegrees.
pub fn isodiscriminantal_pairs(
    table: &ExceptionalTable,
    caps: PairCaps,
) -> Vec<IsodiscriminantalPair> {
    let mut by_key: BTreeMap<(Vec<u64>, Vec<u64>), Vec<GroupName>> = BTreeMap::new();
    for g in table.iter().cloned().chain(series_groups(caps)) {
        by_key.entry(g.key()).or_default().push(g.name);
    }
    let mut out = Vec::new();
    for ((degrees, codegrees), mut names) in by_key {
        names.sort();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                let kind = match (names[i], names[j]) {
                    (GroupName::Exceptional(_), GroupName::Exceptional(_)) => {
                        PairKind::ExceptionalExceptional
                    }
                    (GroupName::Series { .. }, GroupName::Series { .. }) => PairKind::SeriesSeries,
                    _ => PairKind::ExceptionalSeries,
                };
                out.push(IsodiscriminantalPair {
                    first: names[i],
                    second: names[j],
                    kind,
                    degrees: degrees.clone(),
                    codegrees: codegrees.clone(),
                });
            }
        }
    }
    out.sort_by_key(|p| (p.first, p.second));
    out
}
