//! Divided sets `D_m^n(Δ)`: m-tuples of simples with product Δ that are
//! fixed by the n-th power of the twisted shift
//! `σ(a_1,…,a_m) = (a_2,…,a_m,φ(a_1))`.

mod category;
pub mod tietze;

use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::garside::{GarsideStructure, SimpleId};
use crate::par::{self, Execution};
use crate::presentation::{Budget, BudgetExceeded};

pub use category::{
    CategoryError, CategoryJson, CentralizerSummary, DividedCategory, LoopGenerator, Morphism,
    PathError, PathStep, ReducedPresentation, Relation, VertexGroupPresentation,
};
pub use tietze::{GroupPresentation, Simplified};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DividedTuple {
    pub entries: Vec<SimpleId>,
}

impl DividedTuple {
    pub fn new(entries: Vec<SimpleId>) -> Self {
        DividedTuple { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// One application of the twisted shift.
    pub fn sigma(&self, g: &GarsideStructure) -> DividedTuple {
        let mut e = self.entries[1..].to_vec();
        e.push(g.phi(self.entries[0]));
        DividedTuple { entries: e }
    }

    pub fn sigma_pow(&self, g: &GarsideStructure, n: u64) -> DividedTuple {
        let m = self.entries.len() as u64;
        let entries = (0..m)
            .map(|i| {
                let j = (i + n) % m;
                let c = (i + n) / m;
                g.phi_pow(self.entries[j as usize], c as i64)
            })
            .collect();
        DividedTuple { entries }
    }

    pub fn product(&self, g: &GarsideStructure) -> Option<SimpleId> {
        g.mul_all(&self.entries)
    }

    pub fn names(&self, g: &GarsideStructure) -> Vec<String> {
        self.entries.iter().map(|&e| g.simple_name(e)).collect()
    }
}

/// Number of m-tuples of simples with product Δ, saturating.
pub fn count_decompositions(g: &GarsideStructure, m: usize) -> u128 {
    // ways[x] = number of k-tuples whose product is x
    let ids: Vec<SimpleId> = g.simple_ids().collect();
    let mut ways: Vec<u128> = vec![1; ids.len()];
    for _ in 1..m {
        ways = ids
            .iter()
            .map(|&x| {
                ids.iter()
                    .filter_map(|&a| g.left_quotient(a, x))
                    .fold(0u128, |acc, r| acc.saturating_add(ways[r.idx()]))
            })
            .collect();
    }
    if m == 0 {
        0
    } else {
        ways[g.delta().idx()]
    }
}

/// Every m-tuple of simples with product Δ, sorted.
pub fn decompositions(
    g: &GarsideStructure,
    m: usize,
    budget: &Budget,
    exec: Execution,
) -> Result<Vec<DividedTuple>, BudgetExceeded> {
    assert!(m >= 1, "decompositions need m >= 1");
    let count = count_decompositions(g, m);
    if count > budget.tuples as u128 {
        return Err(BudgetExceeded {
            what: "decompositions",
            needed: count,
            budget: budget.tuples as u128,
        });
    }
    search(g, m, None, budget, exec)
}

/// `D_m^n(Δ)`, sorted.
pub fn divided_set(
    g: &GarsideStructure,
    m: usize,
    n: u64,
    budget: &Budget,
    exec: Execution,
) -> Result<Vec<DividedTuple>, BudgetExceeded> {
    assert!(m >= 1, "divided sets need m >= 1");
    search(g, m, Some(n), budget, exec)
}

/// Constraint `a[pos] = φ^power(a[other])`.
#[derive(Clone, Copy, Debug)]
struct Link {
    pos: usize,
    other: usize,
    power: i64,
}

struct Search<'a> {
    g: &'a GarsideStructure,
    m: usize,
    /// Constraints to check once position `i` is filled.
    checks: Vec<Vec<Link>>,
    /// A value for position `i` forced by an earlier position.
    forced: Vec<Option<Link>>,
    found: &'a AtomicU64,
    budget: u64,
}

impl Search<'_> {
    fn value(&self, l: Link, entries: &[SimpleId]) -> SimpleId {
        // a[pos] = φ^power(a[other]), solved for whichever side is the later one
        if l.pos < entries.len() && l.other >= entries.len() {
            self.g.phi_pow(entries[l.pos], -l.power)
        } else {
            self.g.phi_pow(entries[l.other], l.power)
        }
    }

    fn run(
        &self,
        entries: &mut Vec<SimpleId>,
        rest: SimpleId,
        out: &mut Vec<DividedTuple>,
    ) -> Result<(), BudgetExceeded> {
        let i = entries.len();
        if i == self.m {
            if rest == SimpleId::IDENTITY {
                let total = self.found.fetch_add(1, Ordering::Relaxed) + 1;
                if total > self.budget {
                    return Err(BudgetExceeded {
                        what: "divided-set tuples",
                        needed: total as u128,
                        budget: self.budget as u128,
                    });
                }
                out.push(DividedTuple::new(entries.clone()));
            }
            return Ok(());
        }
        let candidates: Vec<SimpleId> = if i + 1 == self.m {
            vec![rest]
        } else if let Some(l) = self.forced[i] {
            vec![self.value(l, entries)]
        } else {
            self.g.simple_ids().collect()
        };
        for a in candidates {
            let Some(next) = self.g.left_quotient(a, rest) else {
                continue;
            };
            entries.push(a);
            let ok = self.checks[i]
                .iter()
                .all(|l| entries[l.pos] == self.g.phi_pow(entries[l.other], l.power));
            if ok {
                self.run(entries, next, out)?;
            }
            entries.pop();
        }
        Ok(())
    }
}

fn search(
    g: &GarsideStructure,
    m: usize,
    shift: Option<u64>,
    budget: &Budget,
    exec: Execution,
) -> Result<Vec<DividedTuple>, BudgetExceeded> {
    let mut checks = vec![Vec::new(); m];
    let mut forced = vec![None; m];
    if let Some(n) = shift {
        for pos in 0..m {
            let other = ((pos as u64 + n) % m as u64) as usize;
            let power = ((pos as u64 + n) / m as u64) as i64;
            let l = Link { pos, other, power };
            let later = pos.max(other);
            checks[later].push(l);
            if pos != other && forced[later].is_none() {
                forced[later] = Some(l);
            }
        }
    }
    let found = AtomicU64::new(0);
    let s = Search {
        g,
        m,
        checks,
        forced,
        found: &found,
        budget: budget.tuples,
    };
    let firsts: Vec<SimpleId> = if m == 1 {
        vec![g.delta()]
    } else {
        g.simple_ids().collect()
    };
    let parts = par::map_slice(&firsts, exec, |&a| {
        let mut out = Vec::new();
        let Some(rest) = g.left_quotient(a, g.delta()) else {
            return Ok(out);
        };
        let mut entries = vec![a];
        if s.checks[0]
            .iter()
            .all(|l| entries[l.pos] == g.phi_pow(entries[l.other], l.power))
        {
            s.run(&mut entries, rest, &mut out)?;
        }
        Ok(out)
    });
    let mut all = Vec::new();
    for p in parts {
        all.extend(p?);
    }
    all.sort();
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;

    fn g12() -> GarsideStructure {
        GarsideStructure::from_gar(data::G12_GAR).unwrap()
    }

    fn by_first(g: &GarsideStructure, set: &[DividedTuple]) -> Vec<String> {
        set.iter().map(|t| g.simple_name(t.entries[0])).collect()
    }

    /// Brute-force filter of all m-tuples, independent of the pruned search.
    fn brute(g: &GarsideStructure, m: usize, n: u64) -> Vec<DividedTuple> {
        let ids: Vec<SimpleId> = g.simple_ids().collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; m];
        loop {
            let t = DividedTuple::new(idx.iter().map(|&i| ids[i]).collect());
            if t.product(g) == Some(g.delta()) && t.sigma_pow(g, n) == t {
                out.push(t);
            }
            let mut k = m;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < ids.len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    #[test]
    fn single_entry_is_delta() {
        let g = g12();
        let d = decompositions(&g, 1, &Budget::default(), Execution::Sequential).unwrap();
        assert_eq!(d, vec![DividedTuple::new(vec![g.delta()])]);
    }

    #[test]
    fn pairs_match_simples() {
        let g = g12();
        let d = decompositions(&g, 2, &Budget::default(), Execution::Sequential).unwrap();
        assert_eq!(d.len(), g.simple_count());
        assert_eq!(count_decompositions(&g, 2), g.simple_count() as u128);
    }

    #[test]
    fn pruned_search_matches_brute_force() {
        let g = g12();
        for m in 1..=4 {
            for n in 0..=(2 * m as u64 + 3) {
                let fast = divided_set(&g, m, n, &Budget::default(), Execution::Parallel).unwrap();
                assert_eq!(fast, brute(&g, m, n), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn g12_sets() {
        let g = g12();
        let b = Budget::default();
        let e = Execution::Sequential;
        assert!(divided_set(&g, 2, 1, &b, e).unwrap().is_empty());
        assert!(divided_set(&g, 4, 1, &b, e).unwrap().is_empty());
        assert_eq!(
            by_first(&g, &divided_set(&g, 4, 3, &b, e).unwrap()),
            ["s", "t", "u"]
        );
        assert_eq!(
            by_first(&g, &divided_set(&g, 2, 3, &b, e).unwrap()),
            ["st", "tu", "us"]
        );
    }

    #[test]
    fn budget_is_enforced() {
        let g = g12();
        let tight = Budget {
            tuples: 5,
            ..Budget::default()
        };
        assert!(decompositions(&g, 3, &tight, Execution::Sequential).is_err());
        assert!(divided_set(&g, 3, 0, &tight, Execution::Parallel).is_err());
    }
}
