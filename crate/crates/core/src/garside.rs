//! Garside structures built from a presentation, with greedy normal forms
//! and arithmetic in the group of fractions.
//!
//! The simples are the congruence classes of prefixes of words equal to Δ.
//! All tables (products, quotients, gcds, lcms, complements, φ) are
//! computed once over the simples; normal-form arithmetic only reads them.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::par::{self, Execution};
use crate::presentation::{
    Budget, BudgetExceeded, ClassId, CongruenceError, CongruenceTable, GroupWord,
    HomogeneityViolation, Presentation, Word,
};

/// Index into the table of simples. `SimpleId::IDENTITY` is always 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SimpleId(pub u32);

impl SimpleId {
    pub const IDENTITY: SimpleId = SimpleId(0);

    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// Element `Δ^delta_power · factors[0] ⋯ factors[k-1]` in left-greedy form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    pub delta_power: i64,
    pub factors: Vec<SimpleId>,
}

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm::default()
    }

    pub fn delta_power(k: i64) -> Self {
        NormalForm {
            delta_power: k,
            factors: Vec::new(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.delta_power == 0 && self.factors.is_empty()
    }

    /// Whether this is a power of Δ.
    pub fn is_delta_power(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.delta_power >= 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomFlags {
    pub balanced: bool,
    pub lattice: bool,
    pub phi: bool,
}

/// Outcome of the exhaustive axiom checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axioms: AxiomFlags,
    pub simple_count: usize,
    pub phi_order: Option<u32>,
    pub witnesses: Vec<Witness>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.axioms.balanced && self.axioms.lattice && self.axioms.phi
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GarsideError {
    #[error(transparent)]
    NotHomogeneous(#[from] HomogeneityViolation),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("Garside axioms fail ({} witnesses)", .0.witnesses.len())]
    Axioms(Box<AxiomReport>),
}

impl From<CongruenceError> for GarsideError {
    fn from(e: CongruenceError) -> Self {
        match e {
            CongruenceError::NotHomogeneous(v) => GarsideError::NotHomogeneous(v),
            CongruenceError::Budget(b) => GarsideError::Budget(b),
        }
    }
}

/// Square table indexed by pairs of simples.
#[derive(Clone, Debug)]
struct Table<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Copy> Table<T> {
    fn filled(n: usize, v: T) -> Self {
        Table {
            n,
            data: vec![v; n * n],
        }
    }

    fn from_rows(n: usize, rows: Vec<Vec<T>>) -> Self {
        Table {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    #[inline]
    fn get(&self, a: SimpleId, b: SimpleId) -> T {
        self.data[a.idx() * self.n + b.idx()]
    }

    #[inline]
    fn set(&mut self, a: SimpleId, b: SimpleId, v: T) {
        self.data[a.idx() * self.n + b.idx()] = v;
    }
}

/// A verified Garside structure on a homogeneous monoid.
#[derive(Clone, Debug)]
pub struct GarsideStructure {
    presentation: Presentation,
    simples: Vec<Word>,
    delta: SimpleId,
    /// Atom for each generator.
    atoms: Vec<SimpleId>,
    mult: Table<Option<SimpleId>>,
    /// `quot_left(a, b) = c` with `a·c = b`.
    quot_left: Table<Option<SimpleId>>,
    /// `quot_right(a, b) = c` with `c·a = b`.
    quot_right: Table<Option<SimpleId>>,
    gcd_left: Table<SimpleId>,
    lcm_left: Table<SimpleId>,
    gcd_right: Table<SimpleId>,
    lcm_right: Table<SimpleId>,
    decomp: Table<(SimpleId, SimpleId)>,
    complement: Vec<SimpleId>,
    /// `phi_powers[k][x] = φ^k(x)` for `k < phi_order`.
    phi_powers: Vec<Vec<SimpleId>>,
    report: AxiomReport,
}

fn witness(check: &str, detail: String) -> Witness {
    Witness {
        check: check.to_string(),
        detail,
    }
}

/// Unique element of `cands` below every other one for `le`, if any.
fn unique_bottom(cands: &[SimpleId], le: impl Fn(SimpleId, SimpleId) -> bool) -> Option<SimpleId> {
    let mut found = None;
    for &c in cands {
        if cands.iter().all(|&o| le(c, o)) {
            if found.is_some() {
                return None;
            }
            found = Some(c);
        }
    }
    found
}

fn unique_top(cands: &[SimpleId], le: impl Fn(SimpleId, SimpleId) -> bool) -> Option<SimpleId> {
    unique_bottom(cands, |a, b| le(b, a))
}

impl GarsideStructure {
    pub fn from_gar(text: &str) -> Result<Self, Box<dyn std::error::Error + Send + Sync>> {
        let p = Presentation::parse(text)?;
        Ok(Self::build(&p, &Budget::default(), Execution::default())?)
    }

    /// Build every table and run the axiom checks exhaustively over the simples.
    pub fn build(p: &Presentation, budget: &Budget, exec: Execution) -> Result<Self, GarsideError> {
        p.validate_homogeneous()?;
        let len_delta = p.delta.len();
        let table = CongruenceTable::build(p, len_delta, budget, exec)?;
        let mut witnesses = Vec::new();

        let delta_class = table.class_of(&p.delta).expect("delta fits in the table");
        let mut left: BTreeSet<ClassId> = BTreeSet::new();
        let mut right: BTreeSet<ClassId> = BTreeSet::new();
        for w in table.members(delta_class) {
            for i in 0..=w.len() {
                left.insert(table.class_of(&Word(w.0[..i].to_vec())).unwrap());
                right.insert(table.class_of(&Word(w.0[i..].to_vec())).unwrap());
            }
        }
        let mut balanced = left == right;
        if let Some(c) = left.symmetric_difference(&right).next() {
            let side = if left.contains(c) { "left" } else { "right" };
            witnesses.push(witness(
                "balanced",
                format!(
                    "{} divides Δ on the {side} only",
                    p.format_word(&table.representative(*c))
                ),
            ));
        }

        let classes: Vec<ClassId> = left.iter().copied().collect();
        let simples: Vec<Word> = classes.iter().map(|&c| table.representative(c)).collect();
        let n = simples.len();
        let id_of: HashMap<ClassId, SimpleId> = classes
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, SimpleId(i as u32)))
            .collect();
        let delta = id_of[&delta_class];

        let mut atoms = Vec::with_capacity(p.rank());
        for g in 0..p.rank() {
            let w = Word(vec![g as u8]);
            match id_of.get(&table.class_of(&w).unwrap()) {
                Some(&a) => atoms.push(a),
                None => {
                    balanced = false;
                    atoms.push(SimpleId::IDENTITY);
                    witnesses.push(witness(
                        "balanced",
                        format!("generator {} does not divide Δ", p.generators[g]),
                    ));
                }
            }
        }

        let rows: Vec<Vec<Option<SimpleId>>> = par::map_range(n as u64, exec, |a| {
            let wa = &simples[a as usize];
            simples
                .iter()
                .map(|wb| {
                    if wa.len() + wb.len() > len_delta {
                        return None;
                    }
                    id_of.get(&table.class_of(&wa.concat(wb)).unwrap()).copied()
                })
                .collect()
        });
        let mult = Table::from_rows(n, rows);

        let ids: Vec<SimpleId> = (0..n as u32).map(SimpleId).collect();
        let mut lattice = true;
        let mut quot_left: Table<Option<SimpleId>> = Table::filled(n, None);
        let mut quot_right: Table<Option<SimpleId>> = Table::filled(n, None);
        for &a in &ids {
            for &b in &ids {
                if let Some(c) = mult.get(a, b) {
                    if let Some(prev) = quot_left.get(a, c) {
                        if prev != b {
                            lattice = false;
                            witnesses.push(witness(
                                "lattice",
                                format!(
                                    "left cancellation fails: {}·{} = {}·{}",
                                    p.format_word(&simples[a.idx()]),
                                    p.format_word(&simples[prev.idx()]),
                                    p.format_word(&simples[a.idx()]),
                                    p.format_word(&simples[b.idx()]),
                                ),
                            ));
                        }
                    }
                    quot_left.set(a, c, Some(b));
                    if let Some(prev) = quot_right.get(b, c) {
                        if prev != a {
                            lattice = false;
                            witnesses.push(witness(
                                "lattice",
                                format!(
                                    "right cancellation fails: {}·{} = {}·{}",
                                    p.format_word(&simples[prev.idx()]),
                                    p.format_word(&simples[b.idx()]),
                                    p.format_word(&simples[a.idx()]),
                                    p.format_word(&simples[b.idx()]),
                                ),
                            ));
                        }
                    }
                    quot_right.set(b, c, Some(a));
                }
            }
        }

        let ldiv = |a: SimpleId, b: SimpleId| quot_left.get(a, b).is_some();
        let rdiv = |a: SimpleId, b: SimpleId| quot_right.get(a, b).is_some();

        // Row a of each lattice table; `None` marks a missing or ambiguous bound.
        type Row = Vec<Option<SimpleId>>;
        type Rows = Vec<Row>;
        let lattice_rows = |div: &(dyn Fn(SimpleId, SimpleId) -> bool + Sync)| -> (Rows, Rows) {
            let pairs: Vec<(Row, Row)> = par::map_range(n as u64, exec, |a| {
                let a = SimpleId(a as u32);
                let mut g_row = Vec::with_capacity(n);
                let mut l_row = Vec::with_capacity(n);
                for &b in &ids {
                    let below: Vec<SimpleId> = ids
                        .iter()
                        .copied()
                        .filter(|&x| div(x, a) && div(x, b))
                        .collect();
                    let above: Vec<SimpleId> = ids
                        .iter()
                        .copied()
                        .filter(|&x| div(a, x) && div(b, x))
                        .collect();
                    g_row.push(unique_top(&below, div));
                    l_row.push(unique_bottom(&above, div));
                }
                (g_row, l_row)
            });
            pairs.into_iter().unzip()
        };

        let mut finish = |name: &str, rows: Rows| -> Table<SimpleId> {
            let mut t = Table::filled(n, SimpleId::IDENTITY);
            for (a, row) in rows.into_iter().enumerate() {
                for (b, v) in row.into_iter().enumerate() {
                    match v {
                        Some(x) => t.set(SimpleId(a as u32), SimpleId(b as u32), x),
                        None => {
                            lattice = false;
                            witnesses.push(witness(
                                "lattice",
                                format!(
                                    "no unique {name}({}, {})",
                                    p.format_word(&simples[a]),
                                    p.format_word(&simples[b])
                                ),
                            ));
                        }
                    }
                }
            }
            t
        };
        let (gl, ll) = lattice_rows(&ldiv);
        let (gr, lr) = lattice_rows(&rdiv);
        let gcd_left = finish("gcd_left", gl);
        let lcm_left = finish("lcm_left", ll);
        let gcd_right = finish("gcd_right", gr);
        let lcm_right = finish("lcm_right", lr);

        let mut phi_ok = balanced && lattice;
        let complement: Vec<SimpleId> = ids
            .iter()
            .map(|&a| quot_left.get(a, delta).unwrap_or(SimpleId::IDENTITY))
            .collect();
        let phi: Vec<SimpleId> = ids
            .iter()
            .map(|&a| complement[complement[a.idx()].idx()])
            .collect();

        let mut phi_powers = vec![ids.clone()];
        let mut phi_order = None;
        let bijective = {
            let mut seen = vec![false; n];
            phi.iter()
                .all(|x| !std::mem::replace(&mut seen[x.idx()], true))
        };
        if !bijective {
            phi_ok = false;
            witnesses.push(witness("phi", "φ is not a bijection of the simples".into()));
        } else {
            loop {
                let next: Vec<SimpleId> = phi_powers
                    .last()
                    .unwrap()
                    .iter()
                    .map(|x| phi[x.idx()])
                    .collect();
                if next == ids {
                    break;
                }
                phi_powers.push(next);
            }
            phi_order = Some(phi_powers.len() as u32);
        }
        if phi[0] != SimpleId::IDENTITY || phi[delta.idx()] != delta {
            phi_ok = false;
            witnesses.push(witness("phi", "φ moves 1 or Δ".into()));
        }
        for &a in &atoms {
            if simples[phi[a.idx()].idx()].len() != 1 {
                phi_ok = false;
                witnesses.push(witness(
                    "phi",
                    format!("φ({}) is not an atom", p.format_word(&simples[a.idx()])),
                ));
            }
        }
        for &a in &ids {
            for &b in &ids {
                if mult.get(a, b).map(|c| phi[c.idx()]) != mult.get(phi[a.idx()], phi[b.idx()]) {
                    phi_ok = false;
                    witnesses.push(witness(
                        "phi",
                        format!(
                            "φ is not multiplicative on ({}, {})",
                            p.format_word(&simples[a.idx()]),
                            p.format_word(&simples[b.idx()])
                        ),
                    ));
                }
            }
        }

        let mut decomp = Table::filled(n, (SimpleId::IDENTITY, SimpleId::IDENTITY));
        if balanced && lattice {
            for &a in &ids {
                for &b in &ids {
                    let g = gcd_left.get(complement[a.idx()], b);
                    let c = mult.get(a, g);
                    let d = quot_left.get(g, b);
                    match (c, d) {
                        (Some(c), Some(d)) => decomp.set(a, b, (c, d)),
                        _ => {
                            lattice = false;
                            witnesses.push(witness(
                                "lattice",
                                format!(
                                    "no left-weighted splitting of ({}, {})",
                                    p.format_word(&simples[a.idx()]),
                                    p.format_word(&simples[b.idx()])
                                ),
                            ));
                        }
                    }
                }
            }
        }

        let report = AxiomReport {
            axioms: AxiomFlags {
                balanced,
                lattice,
                phi: phi_ok && lattice,
            },
            simple_count: n,
            phi_order,
            witnesses,
        };
        let mut g = GarsideStructure {
            presentation: p.clone(),
            simples,
            delta,
            atoms,
            mult,
            quot_left,
            quot_right,
            gcd_left,
            lcm_left,
            gcd_right,
            lcm_right,
            decomp,
            complement,
            phi_powers,
            report,
        };
        if !g.report.passed() {
            return Err(GarsideError::Axioms(Box::new(g.report)));
        }

        // Twist identity x·Δ = Δ·φ(x). The normal form of the word x·Δ is
        // computed atom by atom and never consults φ.
        let delta_word = g.presentation.delta.clone();
        for x in g.simple_ids() {
            let lhs = g.normal_form(&g.simples[x.idx()].concat(&delta_word));
            let rhs = g.from_simple(g.phi(x)).times_delta_left(1);
            if lhs != rhs {
                g.report.axioms.phi = false;
                g.report.witnesses.push(witness(
                    "phi",
                    format!("Δφ(x) ≠ xΔ for x = {}", g.simple_name(x)),
                ));
            }
        }
        if !g.report.passed() {
            return Err(GarsideError::Axioms(Box::new(g.report)));
        }
        Ok(g)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn report(&self) -> &AxiomReport {
        &self.report
    }

    pub fn simple_count(&self) -> usize {
        self.simples.len()
    }

    pub fn simple_ids(&self) -> impl Iterator<Item = SimpleId> + Clone {
        (0..self.simples.len() as u32).map(SimpleId)
    }

    pub fn delta(&self) -> SimpleId {
        self.delta
    }

    pub fn delta_length(&self) -> usize {
        self.simples[self.delta.idx()].len()
    }

    pub fn atoms(&self) -> &[SimpleId] {
        &self.atoms
    }

    /// Canonical (lexicographically least) word of a simple.
    pub fn simple_word(&self, s: SimpleId) -> &Word {
        &self.simples[s.idx()]
    }

    pub fn simple_len(&self, s: SimpleId) -> usize {
        self.simples[s.idx()].len()
    }

    pub fn simple_name(&self, s: SimpleId) -> String {
        self.presentation.format_word(&self.simples[s.idx()])
    }

    /// The simple represented by `w`, if any.
    pub fn simple_of_word(&self, w: &Word) -> Option<SimpleId> {
        let mut cur = SimpleId::IDENTITY;
        for &g in w.letters() {
            cur = self.mult.get(cur, self.atoms[g as usize])?;
        }
        Some(cur)
    }

    /// `a·b` when it is simple.
    pub fn mul(&self, a: SimpleId, b: SimpleId) -> Option<SimpleId> {
        self.mult.get(a, b)
    }

    /// Product of a sequence of simples, when it stays simple.
    pub fn mul_all(&self, xs: &[SimpleId]) -> Option<SimpleId> {
        xs.iter()
            .try_fold(SimpleId::IDENTITY, |acc, &x| self.mult.get(acc, x))
    }

    /// `a ≼ b`.
    pub fn left_divides(&self, a: SimpleId, b: SimpleId) -> bool {
        self.quot_left.get(a, b).is_some()
    }

    /// `b ≽ a`: `a` is a right divisor of `b`.
    pub fn right_divides(&self, a: SimpleId, b: SimpleId) -> bool {
        self.quot_right.get(a, b).is_some()
    }

    /// The `c` with `a·c = b`.
    pub fn left_quotient(&self, a: SimpleId, b: SimpleId) -> Option<SimpleId> {
        self.quot_left.get(a, b)
    }

    /// The `c` with `c·a = b`.
    pub fn right_quotient(&self, a: SimpleId, b: SimpleId) -> Option<SimpleId> {
        self.quot_right.get(a, b)
    }

    pub fn gcd_left(&self, a: SimpleId, b: SimpleId) -> SimpleId {
        self.gcd_left.get(a, b)
    }

    pub fn lcm_left(&self, a: SimpleId, b: SimpleId) -> SimpleId {
        self.lcm_left.get(a, b)
    }

    pub fn gcd_right(&self, a: SimpleId, b: SimpleId) -> SimpleId {
        self.gcd_right.get(a, b)
    }

    pub fn lcm_right(&self, a: SimpleId, b: SimpleId) -> SimpleId {
        self.lcm_right.get(a, b)
    }

    /// `∂a`, with `a·∂a = Δ`.
    pub fn complement(&self, a: SimpleId) -> SimpleId {
        self.complement[a.idx()]
    }

    /// Left-weighted splitting `(c, d)` of the product `a·b`.
    pub fn product_decomp(&self, a: SimpleId, b: SimpleId) -> (SimpleId, SimpleId) {
        self.decomp.get(a, b)
    }

    /// No atom `x` has `a·x ≼ Δ` and `x ≼ b`.
    pub fn is_left_weighted(&self, a: SimpleId, b: SimpleId) -> bool {
        self.gcd_left(self.complement(a), b) == SimpleId::IDENTITY
    }

    pub fn phi(&self, x: SimpleId) -> SimpleId {
        self.phi_pow(x, 1)
    }

    pub fn phi_pow(&self, x: SimpleId, k: i64) -> SimpleId {
        let order = self.phi_powers.len() as i64;
        self.phi_powers[k.rem_euclid(order) as usize][x.idx()]
    }

    pub fn phi_order(&self) -> u32 {
        self.phi_powers.len() as u32
    }

    /// φ as a map on generators, when it sends atoms to atoms.
    pub fn phi_on_generators(&self) -> Vec<(String, String)> {
        self.atoms
            .iter()
            .map(|&a| (self.simple_name(a), self.simple_name(self.phi(a))))
            .collect()
    }

    // ---- normal forms ----

    pub fn from_simple(&self, s: SimpleId) -> NormalForm {
        if s == self.delta {
            NormalForm::delta_power(1)
        } else if s == SimpleId::IDENTITY {
            NormalForm::identity()
        } else {
            NormalForm {
                delta_power: 0,
                factors: vec![s],
            }
        }
    }

    pub fn delta_nf(&self, k: i64) -> NormalForm {
        NormalForm::delta_power(k)
    }

    /// Normal form of a positive word.
    pub fn normal_form(&self, w: &Word) -> NormalForm {
        let mut nf = NormalForm::identity();
        for &g in w.letters() {
            self.right_mul_simple(&mut nf, self.atoms[g as usize]);
        }
        nf
    }

    /// Normal form of a word with formal inverses.
    pub fn normal_form_group(&self, w: &GroupWord) -> NormalForm {
        let mut nf = NormalForm::identity();
        for l in w.letters() {
            let a = self.atoms[l.gen as usize];
            if l.inverse {
                nf = self.multiply(&nf, &self.inverse_simple(a));
            } else {
                self.right_mul_simple(&mut nf, a);
            }
        }
        nf
    }

    /// Parse a `.gar`-syntax word (with optional `^-1`) and normalize it.
    pub fn parse_element(&self, text: &str) -> Result<NormalForm, crate::presentation::ParseError> {
        Ok(self.normal_form_group(&self.presentation.parse_group_word(text)?))
    }

    fn right_mul_simple(&self, nf: &mut NormalForm, s: SimpleId) {
        if s == SimpleId::IDENTITY {
            return;
        }
        if s == self.delta {
            for f in nf.factors.iter_mut() {
                *f = self.phi(*f);
            }
            nf.delta_power += 1;
            return;
        }
        nf.factors.push(s);
        let mut i = nf.factors.len() - 1;
        while i > 0 {
            let (a, b) = (nf.factors[i - 1], nf.factors[i]);
            let (c, d) = self.decomp.get(a, b);
            if c == a {
                break;
            }
            nf.factors[i - 1] = c;
            nf.factors[i] = d;
            i -= 1;
        }
        self.tidy(nf);
    }

    /// Drop identities, pull leading Δs into the exponent and, if the
    /// single leftward pass left any pair unweighted, sweep to a fixed point.
    fn tidy(&self, nf: &mut NormalForm) {
        loop {
            nf.factors.retain(|&x| x != SimpleId::IDENTITY);
            let mut changed = false;
            for i in 1..nf.factors.len() {
                let (a, b) = (nf.factors[i - 1], nf.factors[i]);
                let (c, d) = self.decomp.get(a, b);
                if c != a {
                    nf.factors[i - 1] = c;
                    nf.factors[i] = d;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let lead = nf.factors.iter().take_while(|&&x| x == self.delta).count();
        if lead > 0 {
            nf.factors.drain(..lead);
            nf.delta_power += lead as i64;
        }
    }

    /// `x·y`, moving Δ powers left with `X·Δ^k = Δ^k·φ^k(X)`.
    pub fn multiply(&self, x: &NormalForm, y: &NormalForm) -> NormalForm {
        let mut r = NormalForm {
            delta_power: x.delta_power + y.delta_power,
            factors: x
                .factors
                .iter()
                .map(|&f| self.phi_pow(f, y.delta_power))
                .collect(),
        };
        for &s in &y.factors {
            self.right_mul_simple(&mut r, s);
        }
        r
    }

    /// `s^{-1} = Δ^{-1}·φ^{-1}(∂s)`.
    pub fn inverse_simple(&self, s: SimpleId) -> NormalForm {
        let mut nf = self.from_simple(self.phi_pow(self.complement(s), -1));
        nf.delta_power -= 1;
        nf
    }

    pub fn invert(&self, x: &NormalForm) -> NormalForm {
        let mut r = NormalForm::identity();
        for &f in x.factors.iter().rev() {
            r = self.multiply(&r, &self.inverse_simple(f));
        }
        self.multiply(&r, &NormalForm::delta_power(-x.delta_power))
    }

    pub fn power(&self, x: &NormalForm, k: i64) -> NormalForm {
        let mut base = if k < 0 { self.invert(x) } else { x.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = NormalForm::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.multiply(&base, &base);
            }
        }
        acc
    }

    /// Factorwise φ^k.
    pub fn phi_apply(&self, x: &NormalForm, k: i64) -> NormalForm {
        NormalForm {
            delta_power: x.delta_power,
            factors: x.factors.iter().map(|&f| self.phi_pow(f, k)).collect(),
        }
    }

    /// `x` commutes with every atom.
    pub fn is_central(&self, x: &NormalForm) -> bool {
        self.atoms.iter().all(|&a| {
            let a = self.from_simple(a);
            self.multiply(x, &a) == self.multiply(&a, x)
        })
    }

    pub fn commute(&self, x: &NormalForm, y: &NormalForm) -> bool {
        self.multiply(x, y) == self.multiply(y, x)
    }

    /// `x^{-1}·y·x`.
    pub fn conjugate(&self, y: &NormalForm, x: &NormalForm) -> NormalForm {
        self.multiply(&self.multiply(&self.invert(x), y), x)
    }

    /// Length morphism extended to the group.
    pub fn length(&self, x: &NormalForm) -> i64 {
        x.delta_power * self.delta_length() as i64
            + x.factors
                .iter()
                .map(|&f| self.simple_len(f) as i64)
                .sum::<i64>()
    }

    /// Every adjacent pair is left-weighted and no factor is 1 or Δ.
    pub fn is_normal(&self, x: &NormalForm) -> bool {
        x.factors
            .iter()
            .all(|&f| f != SimpleId::IDENTITY && f != self.delta)
            && x.factors
                .windows(2)
                .all(|w| self.is_left_weighted(w[0], w[1]))
    }

    /// A word representing `x`: Δ-power as copies of the Δ word (or the
    /// inverse of them), then the canonical words of the factors.
    pub fn to_group_word(&self, x: &NormalForm) -> GroupWord {
        let d = GroupWord::positive(&self.presentation.delta).power(x.delta_power);
        x.factors.iter().fold(d, |acc, &f| {
            acc.concat(&GroupWord::positive(&self.simples[f.idx()]))
        })
    }

    pub fn display(&self, x: &NormalForm) -> NormalFormDisplay<'_> {
        NormalFormDisplay {
            g: self,
            x: x.clone(),
        }
    }

    pub fn to_json(&self, x: &NormalForm) -> NormalFormJson {
        NormalFormJson {
            delta_power: x.delta_power,
            factors: x.factors.iter().map(|&f| self.simple_name(f)).collect(),
        }
    }

    /// Check associativity on `samples` seeded random triples of group
    /// elements; returns the failing triples.
    pub fn associativity_sample(
        &self,
        samples: usize,
        seed: u64,
        exec: Execution,
    ) -> Vec<(NormalForm, NormalForm, NormalForm)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let triples: Vec<[NormalForm; 3]> = (0..samples)
            .map(|_| {
                [(); 3].map(|_| {
                    let w = self.random_group_word(&mut rng, 8);
                    self.normal_form_group(&w)
                })
            })
            .collect();
        par::map_slice(&triples, exec, |[x, y, z]| {
            let l = self.multiply(&self.multiply(x, y), z);
            let r = self.multiply(x, &self.multiply(y, z));
            (l != r).then(|| (x.clone(), y.clone(), z.clone()))
        })
        .into_iter()
        .flatten()
        .collect()
    }

    /// Uniform random word of length `0..=max_len` in generators and inverses.
    pub fn random_group_word<R: Rng>(&self, rng: &mut R, max_len: usize) -> GroupWord {
        let len = rng.gen_range(0..=max_len);
        GroupWord(
            (0..len)
                .map(|_| crate::presentation::Letter {
                    gen: rng.gen_range(0..self.presentation.rank()) as u8,
                    inverse: rng.gen_bool(0.5),
                })
                .collect(),
        )
    }
}

impl NormalForm {
    /// `Δ^k · self`.
    pub fn times_delta_left(mut self, k: i64) -> Self {
        self.delta_power += k;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalFormJson {
    pub delta_power: i64,
    pub factors: Vec<String>,
}

pub struct NormalFormDisplay<'a> {
    g: &'a GarsideStructure,
    x: NormalForm,
}

impl fmt::Display for NormalFormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.x.delta_power != 0 {
            parts.push(if self.x.delta_power == 1 {
                "Δ".to_string()
            } else {
                format!("Δ^{}", self.x.delta_power)
            });
        }
        parts.extend(self.x.factors.iter().map(|&s| self.g.simple_name(s)));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("·"))
        }
    }
}
