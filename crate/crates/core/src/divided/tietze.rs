//! Bounded Tietze simplification of finite group presentations.

use serde::Serialize;

/// A letter `(generator, inverted)`.
pub type Letter = (usize, bool);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub generators: Vec<usize>,
    pub relators: Vec<Vec<Letter>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Simplified {
    pub presentation: GroupPresentation,
    /// Eliminated generators with the words that replace them, in order.
    pub eliminated: Vec<(usize, Vec<Letter>)>,
    pub passes: usize,
    /// False when the pass bound was hit with more than one generator left.
    pub conclusive: bool,
}

impl Simplified {
    pub fn is_infinite_cyclic(&self) -> bool {
        self.presentation.generators.len() == 1 && self.presentation.relators.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.presentation.generators.is_empty()
    }
}

pub fn invert(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|&(g, i)| (g, !i)).collect()
}

pub fn free_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        match out.last() {
            Some(&(g, i)) if g == l.0 && i != l.1 => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

pub fn cyclic_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut w = free_reduce(w);
    while w.len() >= 2 {
        let (a, b) = (w[0], w[w.len() - 1]);
        if a.0 == b.0 && a.1 != b.1 {
            w.pop();
            w.remove(0);
        } else {
            break;
        }
    }
    w
}

fn substitute(w: &[Letter], x: usize, by: &[Letter]) -> Vec<Letter> {
    let inv = invert(by);
    let mut out = Vec::with_capacity(w.len());
    for &(g, i) in w {
        if g == x {
            out.extend_from_slice(if i { &inv } else { by });
        } else {
            out.push((g, i));
        }
    }
    out
}

/// Reduce relators to a fixed point, eliminating one generator per pass
/// that occurs exactly once in some relator. At most
/// `10·(generators + relators)` passes.
pub fn simplify(p: &GroupPresentation) -> Simplified {
    let bound = 10 * (p.generators.len() + p.relators.len()).max(1);
    let mut gens = p.generators.clone();
    let mut rels: Vec<Vec<Letter>> = p.relators.clone();
    let mut eliminated: Vec<(usize, Vec<Letter>)> = Vec::new();
    let mut passes = 0;
    let mut hit_bound = true;
    while passes < bound {
        passes += 1;
        rels = rels
            .iter()
            .map(|r| cyclic_reduce(r))
            .filter(|r| !r.is_empty())
            .collect();
        rels.dedup();
        let pick = rels.iter().enumerate().find_map(|(ri, r)| {
            gens.iter().copied().find_map(|x| {
                let hits: Vec<usize> = (0..r.len()).filter(|&k| r[k].0 == x).collect();
                (hits.len() == 1).then(|| (ri, x, hits[0]))
            })
        });
        let Some((ri, x, k)) = pick else {
            hit_bound = false;
            break;
        };
        let r = rels.remove(ri);
        // rotate so x is first: x^e · rest = 1, hence x = rest^{-1} (e = +1)
        let rest: Vec<Letter> = r[k + 1..].iter().chain(&r[..k]).copied().collect();
        let value = if r[k].1 { rest } else { invert(&rest) };
        let value = free_reduce(&value);
        for other in rels.iter_mut() {
            *other = substitute(other, x, &value);
        }
        for (_, v) in eliminated.iter_mut() {
            *v = free_reduce(&substitute(v, x, &value));
        }
        eliminated.push((x, value));
        gens.retain(|&g| g != x);
    }
    Simplified {
        conclusive: !(hit_bound && gens.len() > 1),
        presentation: GroupPresentation {
            generators: gens,
            relators: rels,
        },
        eliminated,
        passes,
    }
}
