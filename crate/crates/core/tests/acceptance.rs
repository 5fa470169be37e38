//! End-to-end acceptance checks, one line per criterion.
//!
//! Runs without the libtest harness so the summary lines always appear.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use garside_core::data;
use garside_core::divided::{decompositions, divided_set, DividedCategory, DividedTuple};
use garside_core::oracle::compare_with_table;
use garside_core::periodic::{bezout_root, candidate_root_orders, roots_report};
use garside_core::presentation::{CongruenceTable, Letter};
use garside_core::reflgroups::{
    class_minimum, isodiscriminantal_pairs, series_data, ExceptionalTable, PairCaps,
};
use garside_core::series::{self, epsilon, lambda, t_word, typeb_presentation, winding, z_word};
use garside_core::{
    Budget, Execution, GarsideStructure, GroupWord, NormalForm, Presentation, SimpleId,
};

type Outcome = Result<(), String>;

/// Number, summary, time limit in seconds and check.
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

const EXEC: Execution = Execution::Parallel;

fn budget() -> Budget {
    Budget::default()
}

fn build(text: &str) -> Result<GarsideStructure, String> {
    let p = Presentation::parse(text).map_err(|e| e.to_string())?;
    GarsideStructure::build(&p, &budget(), EXEC).map_err(|e| e.to_string())
}

fn m12() -> GarsideStructure {
    build(data::G12_GAR).expect("G12 builds")
}

fn n13() -> GarsideStructure {
    build(data::G13_GAR).expect("G13 builds")
}

fn el(g: &GarsideStructure, w: &str) -> NormalForm {
    g.parse_element(w).expect("word parses")
}

fn names(g: &GarsideStructure, set: &[DividedTuple]) -> BTreeSet<String> {
    set.iter().map(|t| g.simple_name(t.entries[0])).collect()
}

fn set(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Naive enumeration of `D_m^n`: every m-tuple with product Δ, filtered by
/// the shift condition.
fn brute_divided(g: &GarsideStructure, m: usize, n: u64) -> BTreeSet<DividedTuple> {
    fn go(
        g: &GarsideStructure,
        m: usize,
        prefix: &mut Vec<SimpleId>,
        acc: SimpleId,
        out: &mut Vec<DividedTuple>,
    ) {
        if prefix.len() == m {
            if acc == g.delta() {
                out.push(DividedTuple::new(prefix.clone()));
            }
            return;
        }
        for a in g.simple_ids() {
            if let Some(next) = g.mul(acc, a) {
                prefix.push(a);
                go(g, m, prefix, next, out);
                prefix.pop();
            }
        }
    }
    let mut all = Vec::new();
    go(g, m, &mut Vec::new(), SimpleId::IDENTITY, &mut all);
    all.into_iter()
        .filter(|t| t.sigma_pow(g, n) == *t)
        .collect()
}

fn compare_divided(g: &GarsideStructure, m: usize, n: u64, expected: &[&str]) -> Outcome {
    let fast = divided_set(g, m, n, &budget(), EXEC).map_err(|e| e.to_string())?;
    let slow = brute_divided(g, m, n);
    ensure!(
        fast.iter().cloned().collect::<BTreeSet<_>>() == slow,
        "D_{m}^{n}: search and brute force differ"
    );
    let got = names(g, &fast);
    ensure!(
        got == set(expected),
        "D_{m}^{n} first entries {got:?}, expected {expected:?}"
    );
    Ok(())
}

fn category(g: &GarsideStructure, p: usize, q: u64) -> Result<DividedCategory, String> {
    DividedCategory::build(g, p, q, &budget(), EXEC).map_err(|e| e.to_string())
}

fn relation_sound(g: &GarsideStructure, c: &DividedCategory) -> Outcome {
    for r in &c.relations {
        let lhs = c
            .collapse_forward(g, &[r.first, r.second])
            .map_err(|e| e.to_string())?;
        let rhs = c
            .collapse_forward(g, &[r.composite])
            .map_err(|e| e.to_string())?;
        ensure!(lhs == rhs, "relation {r:?} is not preserved by collapse");
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let cases = [
        ("g12", data::G12_GAR, Some(11), 3),
        ("g13", data::G13_GAR, None, 1),
        ("typeb2", data::TYPEB2_GAR, Some(8), 1),
        ("typeb3", data::TYPEB3_GAR, Some(48), 1),
    ];
    for (name, text, simples, order) in cases {
        let start = Instant::now();
        let g = build(text)?;
        let r = g.report();
        ensure!(r.passed(), "{name}: axioms fail: {:?}", r.witnesses);
        ensure!(
            r.witnesses.is_empty(),
            "{name}: witnesses on a passing report"
        );
        if let Some(n) = simples {
            ensure!(
                g.simple_count() == n,
                "{name}: {} simples",
                g.simple_count()
            );
        }
        if name.starts_with("g1") {
            ensure!(
                g.phi_order() == order,
                "{name}: φ has order {}",
                g.phi_order()
            );
        }
        // twist identity Δ·φ(x) = x·Δ checked again by normal form
        for x in g.simple_ids() {
            let dx = g.multiply(&g.delta_nf(1), &g.from_simple(g.phi(x)));
            let xd = g.multiply(&g.from_simple(x), &g.delta_nf(1));
            ensure!(dx == xd, "{name}: Δφ(x) ≠ xΔ for {}", g.simple_name(x));
        }
        ensure!(
            start.elapsed() < Duration::from_secs(30),
            "{name}: too slow"
        );
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let m = m12();
    let n = n13();
    let stu = el(&m, "s t u");
    let abc = el(&n, "a b c");
    ensure!(
        m.power(&stu, 4) == NormalForm::delta_power(3),
        "(stu)^4 ≠ Δ^3"
    );
    ensure!(
        m.power(&stu, 8) == NormalForm::delta_power(6),
        "(stu)^8 ≠ Δ^6"
    );
    ensure!(
        n.power(&abc, 3) == NormalForm::delta_power(1),
        "(abc)^3 ≠ Δ"
    );
    ensure!(
        n.power(&abc, 12) == NormalForm::delta_power(4),
        "(abc)^12 ≠ Δ^4"
    );
    ensure!(
        m.is_central(&NormalForm::delta_power(3)),
        "Δ^3 not central in M"
    );
    ensure!(
        n.is_central(&NormalForm::delta_power(1)),
        "Δ not central in N"
    );
    ensure!(!m.is_central(&NormalForm::delta_power(1)), "Δ central in M");
    Ok(())
}

fn criterion_3() -> Outcome {
    for (name, text) in [("M", data::G12_GAR), ("N", data::G13_GAR)] {
        let p = Presentation::parse(text).map_err(|e| e.to_string())?;
        let g = build(text)?;
        let table = CongruenceTable::build(&p, 8, &budget(), EXEC).map_err(|e| e.to_string())?;
        let r = compare_with_table(&g, &table, EXEC);
        let expected_words: u64 = (0..=8).map(|k| (p.rank() as u64).pow(k)).sum();
        ensure!(
            r.words == expected_words,
            "{name}: {} words, expected {expected_words}",
            r.words
        );
        ensure!(
            r.mismatch_count == 0,
            "{name}: {} mismatches, e.g. {:?}",
            r.mismatch_count,
            r.mismatches
        );
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let g = m12();
    compare_divided(&g, 2, 1, &[])?;
    compare_divided(&g, 4, 3, &["s", "t", "u"])?;
    compare_divided(&g, 2, 3, &["st", "tu", "us"])?;
    compare_divided(&g, 4, 1, &[])?;
    for (p, q) in [(1, 3), (1, 1), (4, 3)] {
        let c = category(&g, p, q)?;
        ensure!(c.is_connected(), "C_{p}^{q} not connected");
        relation_sound(&g, &c)?;
    }
    let c = category(&g, 1, 2)?;
    let z = c.centralizer(&g, 0);
    ensure!(
        z.cyclic && z.conclusive,
        "C_1^2 vertex group not infinite cyclic: {z:?}"
    );
    ensure!(
        z.collapse_nf == Some(NormalForm::delta_power(1)),
        "C_1^2 generator collapses to {:?}",
        z.collapse
    );
    Ok(())
}

fn criterion_5() -> Outcome {
    let g = m12();
    let c = category(&g, 2, 3)?;
    ensure!(c.objects.len() == 3, "{} objects", c.objects.len());
    let red = c.reduced_presentation();
    ensure!(
        red.generators.len() == 6,
        "{} generating morphisms",
        red.generators.len()
    );
    let labels: BTreeSet<String> = c.relation_labels(&g).into_iter().collect();
    let expected = set(&[
        "(s,t)(t,u)=(st,1)",
        "(t,u)(u,s)=(tu,1)",
        "(u,s)(s,t)=(us,1)",
    ]);
    ensure!(labels == expected, "relations {labels:?}");
    relation_sound(&g, &c)?;
    let z = c.centralizer(&g, 0);
    ensure!(
        z.generators_after == 1 && z.relators_after == 0,
        "simplified to {z:?}"
    );
    ensure!(
        z.collapse_nf == Some(el(&g, "s t u")),
        "collapse image {:?}",
        z.collapse
    );
    ensure!(
        g.power(&el(&g, "s t u"), 8) == NormalForm::delta_power(6),
        "(stu)^8 ≠ Δ^6"
    );
    Ok(())
}

fn criterion_6() -> Outcome {
    let g = n13();
    let three = ["abc", "bca", "cab"];
    compare_divided(&g, 3, 2, &three)?;
    compare_divided(&g, 3, 1, &three)?;
    let d94 = divided_set(&g, 9, 4, &budget(), EXEC).map_err(|e| e.to_string())?;
    ensure!(d94.is_empty(), "D_9^4 has {} elements", d94.len());
    // consistent with the order argument: 9 does not divide |G13| = 96
    let table = ExceptionalTable::bundled().map_err(|e| e.to_string())?;
    let order = table
        .get(13)
        .and_then(|d| d.order())
        .ok_or("no G13 order")?;
    ensure!(order == 96 && order % 9 != 0, "|G13| = {order}");
    for (p, q) in [(3, 2), (3, 1)] {
        let c = category(&g, p, q)?;
        ensure!(c.is_connected(), "C_{p}^{q} not connected");
        relation_sound(&g, &c)?;
    }
    let c = category(&g, 3, 4)?;
    ensure!(
        c.objects.len() == 3,
        "C_3^4 has {} objects",
        c.objects.len()
    );
    let red = c.reduced_presentation();
    ensure!(
        red.generators.len() == 6,
        "C_3^4 has {} morphisms",
        red.generators.len()
    );
    let labels: BTreeSet<String> = c.relation_labels(&g).into_iter().collect();
    let expected = set(&[
        "(a,bc)(b,ca)=(ab,c)",
        "(b,ca)(c,ab)=(bc,a)",
        "(c,ab)(a,bc)=(ca,b)",
        "(ab,c)(c,ab)=(a,bc)(bc,a)",
        "(bc,a)(a,bc)=(b,ca)(ca,b)",
        "(ca,b)(b,ca)=(c,ab)(ab,c)",
    ]);
    ensure!(labels == expected, "C_3^4 relations {labels:?}");
    relation_sound(&g, &c)?;
    let z = c.centralizer(&g, 0);
    ensure!(
        z.generators_after == 1 && z.relators_after == 0,
        "simplified to {z:?}"
    );
    ensure!(
        z.collapse_nf == Some(el(&g, "a b c")),
        "collapse image {:?}",
        z.collapse
    );
    ensure!(
        g.power(&el(&g, "a b c"), 12) == NormalForm::delta_power(4),
        "(abc)^12 ≠ Δ^4"
    );
    Ok(())
}

fn criterion_7() -> Outcome {
    let table = ExceptionalTable::bundled().map_err(|e| e.to_string())?;
    for (g, k, zp, expected) in [
        (m12(), 12u32, 6u64, vec![1u64, 2, 3, 4, 6, 8]),
        (n13(), 13, 4, vec![1, 2, 3, 4, 6, 12]),
    ] {
        let mut exists = Vec::new();
        for d in candidate_root_orders(&g, zp) {
            let r = roots_report(&g, zp, d, false, &budget(), EXEC).map_err(|e| e.to_string())?;
            if r.exists {
                exists.push(d);
            }
        }
        ensure!(exists == expected, "G{k}: roots for {exists:?}");
        let gd = table.get(k).ok_or("missing group")?;
        // |A(d)| = |B(d)| straight from the degree and codegree lists
        let max = *gd.degrees.iter().max().expect("degrees");
        let counted: Vec<u64> = (1..=max)
            .filter(|d| {
                let a = gd.degrees.iter().filter(|x| *x % d == 0).count();
                let b = gd.codegrees.iter().filter(|x| *x % d == 0).count();
                a == b
            })
            .collect();
        ensure!(counted == expected, "G{k}: A/B count gives {counted:?}");
        ensure!(
            gd.regular_numbers() == expected,
            "G{k}: table gives {:?}",
            gd.regular_numbers()
        );
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let table = ExceptionalTable::bundled().map_err(|e| e.to_string())?;
    let g12 = table.get(12).ok_or("missing G12")?;
    ensure!(
        g12.fundamentals() == vec![2, 6, 8],
        "G12 fundamentals {:?}",
        g12.fundamentals()
    );
    ensure!(
        g12.r_classes() == vec![vec![1, 2], vec![3, 6], vec![4, 8]],
        "G12 classes {:?}",
        g12.r_classes()
    );
    let g13 = table.get(13).ok_or("missing G13")?;
    ensure!(
        g13.fundamentals() == vec![4, 12],
        "G13 fundamentals {:?}",
        g13.fundamentals()
    );
    ensure!(
        g13.regularity(1).r_class == vec![1, 2, 4],
        "G13 R_1 {:?}",
        g13.regularity(1).r_class
    );
    ensure!(
        g13.regularity(3).r_class == vec![3, 6, 12],
        "G13 R_3 {:?}",
        g13.regularity(3).r_class
    );
    let dihedral = series_data(12, 12, 2).map_err(|e| e.to_string())?;
    let (a, b) = (dihedral.regularity(3), dihedral.regularity(4));
    ensure!(a.regular && b.regular, "3 or 4 not regular for G(12,12,2)");
    ensure!(
        a.fundamental == Some(12) && b.fundamental == Some(12),
        "fundamentals {a:?} {b:?}"
    );
    ensure!(
        class_minimum(&a.r_class).is_none(),
        "class {:?} has a minimum",
        a.r_class
    );
    for gd in table.iter() {
        for c in gd.r_classes() {
            ensure!(
                class_minimum(&c).is_some(),
                "{}: class {c:?} has no unique minimum",
                gd.name
            );
        }
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let g = m12();
    let zp = NormalForm::delta_power(6);
    let stu = el(&g, "s t u");
    let d3 = NormalForm::delta_power(3);
    let r = bezout_root(&g, &stu, &d3, 8, 2, &zp).map_err(|e| e.to_string())?;
    ensure!(r.root == stu, "root {}", g.display(&r.root));
    ensure!(g.power(&r.root, 4) == d3, "q^4 ≠ Δ^3");
    ensure!(g.power(&r.root, 8) == zp, "q^8 ≠ z_P");
    // second Bézout pair (u + r', v − d') gives the same element
    let (u, v) = r.second_pair;
    ensure!(
        4 * u + v == 1,
        "second pair {:?} is not a Bézout pair",
        r.second_pair
    );
    let again = g.multiply(&g.power(&stu, v), &g.power(&d3, u));
    ensure!(again == r.root, "root depends on the pair");
    let d2 = NormalForm::delta_power(2);
    let r = bezout_root(&g, &d3, &d2, 2, 3, &zp).map_err(|e| e.to_string())?;
    ensure!(
        r.root == NormalForm::delta_power(1),
        "root {}",
        g.display(&r.root)
    );
    ensure!(
        g.power(&r.root, 2) == d2 && g.power(&r.root, 3) == d3,
        "Δ-power identities fail"
    );
    Ok(())
}

fn criterion_10() -> Outcome {
    let table = ExceptionalTable::bundled().map_err(|e| e.to_string())?;
    let expected: BTreeSet<(String, String)> = [
        ("G5", "G(6,1,2)"),
        ("G7", "G(12,2,2)"),
        ("G10", "G(12,1,2)"),
        ("G11", "G(24,2,2)"),
        ("G15", "G(24,4,2)"),
        ("G18", "G(30,1,2)"),
        ("G19", "G(60,2,2)"),
        ("G26", "G(6,1,3)"),
        ("G(1,1,3)", "G(3,3,2)"),
        ("G(1,1,4)", "G(2,2,3)"),
        ("G(2,1,2)", "G(4,4,2)"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    let pairs = isodiscriminantal_pairs(&table, PairCaps::default());
    let found: BTreeSet<(String, String)> = pairs
        .iter()
        .map(|p| (p.first.to_string(), p.second.to_string()))
        .collect();
    ensure!(pairs.len() == 11, "{} pairs", pairs.len());
    ensure!(found == expected, "pairs {found:?}");
    Ok(())
}

fn criterion_11() -> Outcome {
    ensure!(winding(&epsilon(3)) == 1, "wd(ε) ≠ 1");
    for e in 1..=6u64 {
        ensure!(winding(&z_word(e)) == e as i64, "wd(z) ≠ {e}");
        ensure!(
            series::is_member(&lambda(3, e), e),
            "λ not in the index-{e} subgroup"
        );
    }
    for i in 0..=5 {
        ensure!(winding(&t_word(i)) == 0, "wd(t_{i}) ≠ 0");
    }
    let p2 = typeb_presentation(2);
    let sq = epsilon(2)
        .power(2)
        .as_positive()
        .ok_or("ε^2 not positive")?;
    let syntactic = p2
        .relations
        .iter()
        .any(|(l, r)| (*l == p2.delta && *r == sq) || (*r == p2.delta && *l == sq));
    ensure!(syntactic, "ε^2 = Δ is not a defining relation for n = 2");
    let g3 = build(data::TYPEB3_GAR)?;
    ensure!(g3.simple_count() == 48, "{} simples", g3.simple_count());
    ensure!(
        g3.normal_form_group(&epsilon(3).power(3)) == NormalForm::delta_power(1),
        "ε^3 ≠ Δ"
    );
    Ok(())
}

fn criterion_12() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    // σ-closure of decompositions
    for (g, ms) in [(m12(), 1..=5), (n13(), 1..=3)] {
        for m in ms {
            let all = decompositions(&g, m, &budget(), EXEC).map_err(|e| e.to_string())?;
            let set: BTreeSet<&DividedTuple> = all.iter().collect();
            for t in &all {
                ensure!(
                    set.contains(&t.sigma(&g)),
                    "σ leaves the decompositions (m = {m})"
                );
            }
        }
    }
    // relation soundness under collapse
    let g = m12();
    for (p, q) in [(1, 1), (1, 2), (1, 3), (2, 3), (4, 3), (2, 1)] {
        relation_sound(&g, &category(&g, p, q)?)?;
    }
    let n = n13();
    for (p, q) in [(3, 1), (3, 2), (3, 4)] {
        relation_sound(&n, &category(&n, p, q)?)?;
    }
    // associativity of the group multiplication on seeded samples
    for g in [&g, &n] {
        let bad = g.associativity_sample(1000, 7, EXEC);
        ensure!(bad.is_empty(), "{} associativity violations", bad.len());
    }
    // winding is a homomorphism to Z
    let random_word = |rng: &mut ChaCha8Rng| {
        let len = rng.gen_range(0..12);
        GroupWord(
            (0..len)
                .map(|_| Letter {
                    gen: rng.gen_range(0..3),
                    inverse: rng.gen_bool(0.5),
                })
                .collect(),
        )
    };
    for _ in 0..500 {
        let (u, v) = (random_word(&mut rng), random_word(&mut rng));
        ensure!(
            winding(&u.concat(&v)) == winding(&u) + winding(&v),
            "wd(uv) ≠ wd(u) + wd(v)"
        );
        ensure!(winding(&u.inverse()) == -winding(&u), "wd(u⁻¹) ≠ −wd(u)");
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "Garside axioms for G12, G13, B2, B3", 120, criterion_1),
        (2, "central powers of stu, abc and Δ", 5, criterion_2),
        (
            3,
            "normal forms agree with the congruence oracle up to length 8",
            120,
            criterion_3,
        ),
        (
            4,
            "G12 divided sets, connectivity and the C_1^2 vertex group",
            60,
            criterion_4,
        ),
        (5, "G12 centralizer of stu through C_2^3", 60, criterion_5),
        (
            6,
            "G13 divided sets and the centralizer of abc through C_3^4",
            300,
            criterion_6,
        ),
        (
            7,
            "roots exist exactly for the regular numbers",
            300,
            criterion_7,
        ),
        (
            8,
            "fundamental regular numbers and R-classes",
            5,
            criterion_8,
        ),
        (9, "Bézout roots of commuting roots", 5, criterion_9),
        (10, "the eleven isodiscriminantal pairs", 30, criterion_10),
        (
            11,
            "winding numbers and ε^n = Δ in type B",
            60,
            criterion_11,
        ),
        (
            12,
            "property samples: σ-closure, collapse soundness, associativity, winding",
            120,
            criterion_12,
        ),
    ];
    let mut failed = 0;
    for (id, name, limit, f) in criteria {
        let start = Instant::now();
        let mut outcome = f();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > Duration::from_secs(limit) {
            outcome = Err(format!("took {elapsed:.1?}, limit {limit} s"));
        }
        match outcome {
            Ok(()) => println!("criterion {id:>2}: PASS  {name} ({elapsed:.2?})"),
            Err(e) => {
                failed += 1;
                println!("criterion {id:>2}: FAIL  {name} ({elapsed:.2?}): {e}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
