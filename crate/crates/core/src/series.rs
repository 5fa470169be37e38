//! Type-B braid presentations, the winding number and membership in the
//! index-e subgroups of the infinite series.

use serde::Serialize;

use crate::garside::{GarsideError, GarsideStructure, NormalForm};
use crate::par::Execution;
use crate::presentation::{Budget, GroupWord, Letter, Presentation, Word};

/// Generators `b1..bn`, relations
/// `b1b2b1b2 = b2b1b2b1`, `b_i b_{i+1} b_i = b_{i+1} b_i b_{i+1}` for
/// `2 ≤ i < n`, `b_i b_j = b_j b_i` for `|i-j| > 1`, and Δ = (b1⋯bn)^n.
pub fn typeb_presentation(n: usize) -> Presentation {
    assert!(n >= 1, "type B needs n >= 1");
    let b = |i: usize| (i - 1) as u8;
    let w = |v: &[usize]| Word(v.iter().map(|&i| b(i)).collect());
    let mut relations = Vec::new();
    if n >= 2 {
        relations.push((w(&[1, 2, 1, 2]), w(&[2, 1, 2, 1])));
    }
    for i in 2..n {
        relations.push((w(&[i, i + 1, i]), w(&[i + 1, i, i + 1])));
    }
    for i in 1..=n {
        for j in i + 2..=n {
            relations.push((w(&[i, j]), w(&[j, i])));
        }
    }
    let row: Vec<usize> = (1..=n).collect();
    Presentation {
        generators: (1..=n).map(|i| format!("b{i}")).collect(),
        relations,
        delta: w(&row).repeat(n),
    }
}

/// Signed number of occurrences of `b1`.
pub fn winding(w: &GroupWord) -> i64 {
    w.letters()
        .iter()
        .filter(|l| l.gen == 0)
        .map(|l| if l.inverse { -1 } else { 1 })
        .sum()
}

/// Membership in the index-e subgroup: winding ≡ 0 mod e.
pub fn is_member(w: &GroupWord, e: u64) -> bool {
    assert!(e >= 1, "e must be positive");
    winding(w).rem_euclid(e as i64) == 0
}

fn letter(i: usize, inverse: bool) -> Letter {
    Letter {
        gen: (i - 1) as u8,
        inverse,
    }
}

/// ε = b_n ⋯ b_2 b_1.
pub fn epsilon(n: usize) -> GroupWord {
    GroupWord((1..=n).rev().map(|i| letter(i, false)).collect())
}

/// z = b1^e.
pub fn z_word(e: u64) -> GroupWord {
    GroupWord(vec![letter(1, false); e as usize])
}

/// t_i = b1^{-i} b2 b1^i.
pub fn t_word(i: u64) -> GroupWord {
    let mut v = vec![letter(1, true); i as usize];
    v.push(letter(2, false));
    v.extend(vec![letter(1, false); i as usize]);
    GroupWord(v)
}

/// λ = ε^e.
pub fn lambda(n: usize, e: u64) -> GroupWord {
    epsilon(n).power(e as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsilonCheck {
    pub n: usize,
    pub simple_count: usize,
    pub epsilon_power_is_delta: bool,
    pub delta_central: bool,
    pub winding: i64,
}

impl EpsilonCheck {
    pub fn passed(&self) -> bool {
        self.epsilon_power_is_delta && self.delta_central && self.winding == self.n as i64
    }
}

/// Build the type-B structure and check that ε^n = Δ and Δ is central.
pub fn check_epsilon(
    n: usize,
    budget: &Budget,
    exec: Execution,
) -> Result<EpsilonCheck, GarsideError> {
    let g = GarsideStructure::build(&typeb_presentation(n), budget, exec)?;
    let en = epsilon(n).power(n as i64);
    Ok(EpsilonCheck {
        n,
        simple_count: g.simple_count(),
        epsilon_power_is_delta: g.normal_form_group(&en) == NormalForm::delta_power(1),
        delta_central: g.is_central(&NormalForm::delta_power(1)),
        winding: winding(&en),
    })
}
