//! Finitely presented homogeneous monoids.
//!
//! A [`Presentation`] is read from the line-oriented `.gar` format:
//!
//! ```text
//! # comment
//! gens: s t u
//! rel: s t u s = t u s t
//! rel: t u s t = u s t u
//! delta: s t u s
//! ```
//!
//! [`CongruenceTable`] is a brute-force oracle: it partitions every word of
//! each length up to a bound into congruence classes. Everything built on top
//! of the Garside machinery is cross-checked against it.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::par::{self, Execution};
use crate::unionfind::UnionFind;

/// Index of a generator in [`Presentation::generators`].
pub type Gen = u8;

/// Maximum number of generators a presentation may declare.
pub const MAX_GENERATORS: usize = 64;

/// A positive word; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn new(letters: Vec<Gen>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }
}

/// One letter of a group word: a generator or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Gen,
    pub inverse: bool,
}

/// A word in the generators and their formal inverses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupWord(pub Vec<Letter>);

impl GroupWord {
    pub fn positive(w: &Word) -> Self {
        GroupWord(
            w.letters()
                .iter()
                .map(|&gen| Letter {
                    gen,
                    inverse: false,
                })
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GroupWord(v)
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(
            self.0
                .iter()
                .rev()
                .map(|l| Letter {
                    gen: l.gen,
                    inverse: !l.inverse,
                })
                .collect(),
        )
    }

    pub fn power(&self, k: i64) -> GroupWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::with_capacity(base.0.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            out.extend_from_slice(&base.0);
        }
        GroupWord(out)
    }

    /// `Some` when no letter is inverted.
    pub fn as_positive(&self) -> Option<Word> {
        self.0
            .iter()
            .map(|l| (!l.inverse).then_some(l.gen))
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: unknown key line `{text}`")]
    UnknownKey { line: usize, text: String },
    #[error("line {line}: `{token}` is not a declared generator")]
    UndeclaredGenerator { line: usize, token: String },
    #[error("line {line}: `{token}` is not a valid generator name")]
    InvalidName { line: usize, token: String },
    #[error("missing `gens:` line")]
    MissingGens,
    #[error("missing `delta:` line")]
    MissingDelta,
    #[error("line {line}: second `{key}` line")]
    DuplicateKey { line: usize, key: &'static str },
    #[error("line {line}: generator `{name}` declared twice")]
    DuplicateGenerator { line: usize, name: String },
    #[error("`gens:` declares no generators")]
    NoGenerators,
    #[error("more than {MAX_GENERATORS} generators")]
    TooManyGenerators,
    #[error("line {line}: relation needs exactly one `=`")]
    MalformedRelation { line: usize },
    #[error("`delta:` is empty")]
    EmptyDelta,
    #[error("bad exponent in `{token}`")]
    BadExponent { token: String },
}

/// A homogeneous-monoid presentation with a designated Garside word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<(Word, Word)>,
    pub delta: Word,
}

/// The first relation whose sides have different lengths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Error)]
#[error("relation {index} is not length-preserving ({lhs_len} vs {rhs_len})")]
pub struct HomogeneityViolation {
    pub index: usize,
    pub lhs_len: usize,
    pub rhs_len: usize,
}

fn valid_name(tok: &str) -> bool {
    let mut chars = tok.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Presentation {
    /// Parse a `.gar` document.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut gens: Option<(usize, Vec<String>)> = None;
        let mut delta: Option<(usize, String)> = None;
        let mut rels: Vec<(usize, String, String)> = Vec::new();

        for (i, raw) in text.split('\n').enumerate() {
            let lineno = i + 1;
            let line = raw.trim_end_matches('\r').trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, rest) = match line.split_once(':') {
                Some((k, r)) => (k.trim(), r),
                None => {
                    return Err(ParseError::UnknownKey {
                        line: lineno,
                        text: line.to_string(),
                    })
                }
            };
            match key {
                "gens" => {
                    if gens.is_some() {
                        return Err(ParseError::DuplicateKey {
                            line: lineno,
                            key: "gens:",
                        });
                    }
                    let mut names: Vec<String> = Vec::new();
                    for tok in rest.split_whitespace() {
                        if !valid_name(tok) {
                            return Err(ParseError::InvalidName {
                                line: lineno,
                                token: tok.to_string(),
                            });
                        }
                        if names.iter().any(|n| n == tok) {
                            return Err(ParseError::DuplicateGenerator {
                                line: lineno,
                                name: tok.to_string(),
                            });
                        }
                        names.push(tok.to_string());
                    }
                    gens = Some((lineno, names));
                }
                "rel" => {
                    let mut sides = rest.split('=');
                    let (l, r) = match (sides.next(), sides.next(), sides.next()) {
                        (Some(l), Some(r), None) => (l, r),
                        _ => return Err(ParseError::MalformedRelation { line: lineno }),
                    };
                    rels.push((lineno, l.to_string(), r.to_string()));
                }
                "delta" => {
                    if delta.is_some() {
                        return Err(ParseError::DuplicateKey {
                            line: lineno,
                            key: "delta:",
                        });
                    }
                    delta = Some((lineno, rest.to_string()));
                }
                _ => {
                    return Err(ParseError::UnknownKey {
                        line: lineno,
                        text: line.to_string(),
                    })
                }
            }
        }

        let (_, generators) = gens.ok_or(ParseError::MissingGens)?;
        if generators.is_empty() {
            return Err(ParseError::NoGenerators);
        }
        if generators.len() > MAX_GENERATORS {
            return Err(ParseError::TooManyGenerators);
        }
        let (delta_line, delta_text) = delta.ok_or(ParseError::MissingDelta)?;

        let resolve = |line: usize, text: &str| -> Result<Word, ParseError> {
            text.split_whitespace()
                .map(|tok| {
                    generators
                        .iter()
                        .position(|g| g == tok)
                        .map(|i| i as Gen)
                        .ok_or_else(|| ParseError::UndeclaredGenerator {
                            line,
                            token: tok.to_string(),
                        })
                })
                .collect::<Result<Vec<_>, _>>()
                .map(Word)
        };

        let mut relations = Vec::with_capacity(rels.len());
        for (line, l, r) in &rels {
            relations.push((resolve(*line, l)?, resolve(*line, r)?));
        }
        let delta = resolve(delta_line, &delta_text)?;
        if delta.is_empty() {
            return Err(ParseError::EmptyDelta);
        }
        Ok(Presentation {
            generators,
            relations,
            delta,
        })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn validate_homogeneous(&self) -> Result<(), HomogeneityViolation> {
        match self
            .relations
            .iter()
            .enumerate()
            .find(|(_, (l, r))| l.len() != r.len())
        {
            Some((index, (l, r))) => Err(HomogeneityViolation {
                index,
                lhs_len: l.len(),
                rhs_len: r.len(),
            }),
            None => Ok(()),
        }
    }

    pub fn generator(&self, name: &str) -> Option<Gen> {
        self.generators
            .iter()
            .position(|g| g == name)
            .map(|i| i as Gen)
    }

    /// Parse whitespace-separated generator names.
    pub fn parse_word(&self, text: &str) -> Result<Word, ParseError> {
        self.parse_group_word(text)?
            .as_positive()
            .ok_or_else(|| ParseError::BadExponent {
                token: text.to_string(),
            })
    }

    /// Parse whitespace-separated tokens `name`, `name^-1` or `name^k`.
    pub fn parse_group_word(&self, text: &str) -> Result<GroupWord, ParseError> {
        let mut out = Vec::new();
        for tok in text.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let k: i64 = e.parse().map_err(|_| ParseError::BadExponent {
                        token: tok.to_string(),
                    })?;
                    (n, k)
                }
                None => (tok, 1),
            };
            let gen = self
                .generator(name)
                .ok_or_else(|| ParseError::UndeclaredGenerator {
                    line: 0,
                    token: name.to_string(),
                })?;
            let letter = Letter {
                gen,
                inverse: exp < 0,
            };
            out.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
        }
        Ok(GroupWord(out))
    }

    /// Compact form when every generator name is a single character
    /// (`stus`), space-separated otherwise (`b1 b2 b1`). The identity is `1`.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let names: Vec<&str> = w
            .letters()
            .iter()
            .map(|&g| self.generators[g as usize].as_str())
            .collect();
        if self.generators.iter().all(|g| g.len() == 1) {
            names.concat()
        } else {
            names.join(" ")
        }
    }

    pub fn format_group_word(&self, w: &GroupWord) -> String {
        if w.0.is_empty() {
            return "1".to_string();
        }
        w.letters()
            .iter()
            .map(|l| {
                let n = &self.generators[l.gen as usize];
                if l.inverse {
                    format!("{n}^-1")
                } else {
                    n.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Serialize back to `.gar`.
    pub fn to_gar(&self) -> String {
        let spaced = |w: &Word| {
            w.letters()
                .iter()
                .map(|&g| self.generators[g as usize].as_str())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = format!("gens: {}\n", self.generators.join(" "));
        for (l, r) in &self.relations {
            out.push_str(&format!("rel: {} = {}\n", spaced(l), spaced(r)));
        }
        out.push_str(&format!("delta: {}\n", spaced(&self.delta)));
        out
    }

    /// All words obtained from `w` by one relation rewrite, in either direction.
    pub fn neighbours(&self, w: &[Gen]) -> Vec<Vec<Gen>> {
        let mut out = Vec::new();
        for (l, r) in &self.relations {
            for (from, to) in [(l, r), (r, l)] {
                let k = from.len();
                if k == 0 || k > w.len() || from == to {
                    continue;
                }
                for i in 0..=w.len() - k {
                    if &w[i..i + k] == from.letters() {
                        let mut v = w.to_vec();
                        v[i..i + k].copy_from_slice(to.letters());
                        out.push(v);
                    }
                }
            }
        }
        out
    }

    /// Decide `u ~ v` by exploring the rewrite orbit of `u`.
    ///
    /// Exact for homogeneous presentations; fails when the orbit grows past
    /// `limit` words.
    pub fn equivalent(&self, u: &Word, v: &Word, limit: usize) -> Result<bool, BudgetExceeded> {
        if u.len() != v.len() {
            return Ok(false);
        }
        if u == v {
            return Ok(true);
        }
        let mut seen: HashSet<Vec<Gen>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(u.0.clone());
        queue.push_back(u.0.clone());
        while let Some(w) = queue.pop_front() {
            for n in self.neighbours(&w) {
                if n == v.0 {
                    return Ok(true);
                }
                if seen.insert(n.clone()) {
                    if seen.len() > limit {
                        return Err(BudgetExceeded {
                            what: "rewrite orbit",
                            needed: seen.len() as u128,
                            budget: limit as u128,
                        });
                    }
                    queue.push_back(n);
                }
            }
        }
        Ok(false)
    }
}

/// An enumeration would exceed its configured cap.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[error("{what}: needs {needed}, budget is {budget}")]
pub struct BudgetExceeded {
    pub what: &'static str,
    pub needed: u128,
    pub budget: u128,
}

/// Enumeration caps shared by the oracle and the divided-set searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Words per length stratum of a [`CongruenceTable`].
    pub words_per_stratum: u64,
    /// Tuples returned by a decomposition or divided-set enumeration.
    pub tuples: u64,
    /// Words visited by an orbit search.
    pub orbit: usize,
}

impl Budget {
    /// The same cap for every enumeration.
    pub fn uniform(cap: u64) -> Self {
        Budget {
            words_per_stratum: cap,
            tuples: cap,
            orbit: usize::try_from(cap).unwrap_or(usize::MAX),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            words_per_stratum: 59_049, // 3^10
            tuples: 5_000_000,
            orbit: 2_000_000,
        }
    }
}

/// Identifies a congruence class: its word length and index within that stratum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId {
    pub len: usize,
    pub index: u32,
}

#[derive(Clone, Debug)]
struct Stratum {
    class_of: Vec<u32>,
    reps: Vec<u64>,
}

/// All words of length at most `max_length`, partitioned into congruence classes.
#[derive(Clone, Debug)]
pub struct CongruenceTable {
    rank: usize,
    max_length: usize,
    strata: Vec<Stratum>,
}

fn encode(w: &[Gen], rank: usize) -> u64 {
    w.iter().fold(0u64, |acc, &g| acc * rank as u64 + g as u64)
}

fn decode(mut idx: u64, len: usize, rank: usize) -> Vec<Gen> {
    let mut v = vec![0; len];
    for slot in v.iter_mut().rev() {
        *slot = (idx % rank as u64) as Gen;
        idx /= rank as u64;
    }
    v
}

impl CongruenceTable {
    /// Partition every word of length `0..=max_length`.
    ///
    /// Representatives are lexicographically least in generator order, so
    /// class indices follow the order of their representatives.
    pub fn build(
        p: &Presentation,
        max_length: usize,
        budget: &Budget,
        exec: Execution,
    ) -> Result<Self, CongruenceError> {
        p.validate_homogeneous()?;
        let rank = p.rank();
        let mut strata = Vec::with_capacity(max_length + 1);
        for len in 0..=max_length {
            let count = (rank as u128).pow(len as u32);
            if count > budget.words_per_stratum as u128 {
                return Err(BudgetExceeded {
                    what: "words per length stratum",
                    needed: count,
                    budget: budget.words_per_stratum as u128,
                }
                .into());
            }
            let count = count as u64;
            let edges: Vec<Vec<u64>> = par::map_range(count, exec, |idx| {
                let w = decode(idx, len, rank);
                p.neighbours(&w)
                    .into_iter()
                    .map(|n| encode(&n, rank))
                    .filter(|&j| j > idx)
                    .collect()
            });
            let mut uf = UnionFind::new(count as usize);
            for (i, targets) in edges.iter().enumerate() {
                for &j in targets {
                    uf.union(i, j as usize);
                }
            }
            let mut class_of_root = vec![u32::MAX; count as usize];
            let mut class_of = vec![0u32; count as usize];
            let mut reps = Vec::new();
            for (idx, class) in class_of.iter_mut().enumerate() {
                let root = uf.find(idx);
                if class_of_root[root] == u32::MAX {
                    class_of_root[root] = reps.len() as u32;
                    reps.push(idx as u64);
                }
                *class = class_of_root[root];
            }
            strata.push(Stratum { class_of, reps });
        }
        Ok(CongruenceTable {
            rank,
            max_length,
            strata,
        })
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    /// Class of `w`; `None` if `w` is longer than the table.
    pub fn class_of(&self, w: &Word) -> Option<ClassId> {
        let s = self.strata.get(w.len())?;
        Some(ClassId {
            len: w.len(),
            index: s.class_of[encode(w.letters(), self.rank) as usize],
        })
    }

    pub fn equivalent(&self, u: &Word, v: &Word) -> Option<bool> {
        Some(self.class_of(u)? == self.class_of(v)?)
    }

    pub fn representative(&self, c: ClassId) -> Word {
        Word(decode(
            self.strata[c.len].reps[c.index as usize],
            c.len,
            self.rank,
        ))
    }

    pub fn class_count(&self, len: usize) -> usize {
        self.strata[len].reps.len()
    }

    /// Every word of length `len` in ascending lexicographic order.
    pub fn words(&self, len: usize) -> impl Iterator<Item = Word> + '_ {
        let rank = self.rank;
        (0..self.strata[len].class_of.len() as u64).map(move |i| Word(decode(i, len, rank)))
    }

    /// Members of class `c`, ascending.
    pub fn members(&self, c: ClassId) -> Vec<Word> {
        let s = &self.strata[c.len];
        s.class_of
            .iter()
            .enumerate()
            .filter(|(_, &k)| k == c.index)
            .map(|(i, _)| Word(decode(i as u64, c.len, self.rank)))
            .collect()
    }

    /// Number of classes in each stratum.
    pub fn class_counts(&self) -> Vec<usize> {
        self.strata.iter().map(|s| s.reps.len()).collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CongruenceError {
    #[error(transparent)]
    NotHomogeneous(#[from] HomogeneityViolation),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g12() -> Presentation {
        Presentation::parse(crate::data::G12_GAR).unwrap()
    }

    #[test]
    fn parses_g12() {
        let p = g12();
        assert_eq!(p.generators, vec!["s", "t", "u"]);
        assert_eq!(p.relations.len(), 2);
        assert_eq!(p.delta.len(), 4);
        assert_eq!(p.format_word(&p.delta), "stus");
    }

    #[test]
    fn free_monoid_on_one_generator() {
        let p = Presentation::parse("gens: a\ndelta: a\n").unwrap();
        assert!(p.relations.is_empty());
        assert_eq!(p.delta, Word(vec![0]));
        assert!(p.validate_homogeneous().is_ok());
    }

    #[test]
    fn crlf_and_comments() {
        let p = Presentation::parse(
            "# G12\r\ngens: s t u\r\n\r\nrel: s t u s = t u s t\r\ndelta: s t u s\r\n",
        )
        .unwrap();
        assert_eq!(p.relations.len(), 1);
    }

    #[test]
    fn inhomogeneous_relation_parses_then_fails_validation() {
        let p = Presentation::parse("gens: a b\nrel: a b = a\ndelta: a\n").unwrap();
        assert_eq!(
            p.validate_homogeneous(),
            Err(HomogeneityViolation {
                index: 0,
                lhs_len: 2,
                rhs_len: 1
            })
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Presentation::parse("gens: a\nfoo: a\ndelta: a"),
            Err(ParseError::UnknownKey { line: 2, .. })
        ));
        assert!(matches!(
            Presentation::parse("gens: a\nrel: a = b\ndelta: a"),
            Err(ParseError::UndeclaredGenerator { line: 2, .. })
        ));
        assert_eq!(
            Presentation::parse("delta: a"),
            Err(ParseError::MissingGens)
        );
        assert_eq!(
            Presentation::parse("gens: a"),
            Err(ParseError::MissingDelta)
        );
        assert!(matches!(
            Presentation::parse("gens: a a\ndelta: a"),
            Err(ParseError::DuplicateGenerator { .. })
        ));
        assert!(matches!(
            Presentation::parse("gens: 1a\ndelta: a"),
            Err(ParseError::InvalidName { .. })
        ));
        assert!(matches!(
            Presentation::parse("gens: a\ngens: b\ndelta: a"),
            Err(ParseError::DuplicateKey { .. })
        ));
        assert!(matches!(
            Presentation::parse("gens: a\nrel: a = a = a\ndelta: a"),
            Err(ParseError::MalformedRelation { .. })
        ));
    }

    #[test]
    fn relation_order_preserved() {
        let p = g12();
        assert_eq!(p.format_word(&p.relations[0].0), "stus");
        assert_eq!(p.format_word(&p.relations[1].1), "ustu");
    }

    #[test]
    fn gar_round_trip() {
        let p = g12();
        assert_eq!(Presentation::parse(&p.to_gar()).unwrap(), p);
    }

    #[test]
    fn group_word_tokens() {
        let p = g12();
        let w = p.parse_group_word("s t^-1 u^2").unwrap();
        assert_eq!(p.format_group_word(&w), "s t^-1 u u");
        assert!(w.as_positive().is_none());
        assert_eq!(w.concat(&w.inverse()).0.len(), 8);
    }

    #[test]
    fn g12_length_four_chain() {
        let p = g12();
        let t = CongruenceTable::build(&p, 4, &Budget::default(), Execution::Sequential).unwrap();
        let a = t.class_of(&p.parse_word("s t u s").unwrap()).unwrap();
        let b = t.class_of(&p.parse_word("t u s t").unwrap()).unwrap();
        let c = t.class_of(&p.parse_word("u s t u").unwrap()).unwrap();
        assert_eq!(a, b);
        assert_eq!(b, c);
        assert_eq!(t.members(a).len(), 3);
        assert_eq!(t.representative(a), p.parse_word("s t u s").unwrap());
    }

    #[test]
    fn short_words_are_singletons() {
        let p = g12();
        let t = CongruenceTable::build(&p, 2, &Budget::default(), Execution::Sequential).unwrap();
        assert_eq!(t.class_counts(), vec![1, 3, 9]);
        assert_ne!(
            t.class_of(&p.parse_word("s t").unwrap()),
            t.class_of(&p.parse_word("t s").unwrap())
        );
    }

    #[test]
    fn budget_is_enforced() {
        let p = g12();
        let b = Budget {
            words_per_stratum: 27,
            ..Budget::default()
        };
        assert!(matches!(
            CongruenceTable::build(&p, 4, &b, Execution::Sequential),
            Err(CongruenceError::Budget(_))
        ));
    }

    #[test]
    fn orbit_search_agrees_with_table() {
        let p = g12();
        let t = CongruenceTable::build(&p, 6, &Budget::default(), Execution::Sequential).unwrap();
        let words: Vec<Word> = t.words(6).step_by(37).collect();
        for u in &words {
            for v in &words {
                assert_eq!(
                    p.equivalent(u, v, 10_000).unwrap(),
                    t.equivalent(u, v).unwrap()
                );
            }
        }
    }

    #[test]
    fn parallel_and_sequential_tables_agree() {
        let p = g12();
        let a = CongruenceTable::build(&p, 6, &Budget::default(), Execution::Sequential).unwrap();
        let b = CongruenceTable::build(&p, 6, &Budget::default(), Execution::Parallel).unwrap();
        for len in 0..=6 {
            for w in a.words(len) {
                assert_eq!(a.class_of(&w), b.class_of(&w));
            }
        }
    }
}
