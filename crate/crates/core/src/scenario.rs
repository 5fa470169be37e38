//! Bundled verification scenarios with deterministic JSON reports.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::divided::{divided_set, DividedCategory, DividedTuple};
use crate::garside::{GarsideStructure, NormalForm};
use crate::oracle;
use crate::par::Execution;
use crate::periodic::{self, bezout_root, candidate_root_orders, roots_report};
use crate::presentation::{Budget, CongruenceTable, ParseError, Presentation};
use crate::reflgroups::{self, class_minimum, ExceptionalTable, PairCaps};
use crate::series;

pub const SCHEMA: u32 = 1;

pub const SCENARIOS: [&str; 5] = [
    "verify-g12",
    "verify-g13",
    "verify-typeb",
    "verify-regular",
    "verify-pairs",
];

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("unknown scenario {0:?}")]
    Unknown(String),
    #[error("cannot read {path}")]
    MissingData {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid data in {path}")]
    BadData { path: PathBuf, source: ParseError },
    #[error("invalid data in {path}")]
    BadTable {
        path: PathBuf,
        source: reflgroups::ReflError,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub scenario: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    /// Wall time per check in milliseconds; omitted in deterministic mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

#[derive(Clone, Debug)]
pub struct ScenarioOptions {
    pub data_dir: PathBuf,
    pub budget: Budget,
    pub exec: Execution,
    pub timings: bool,
}

impl Default for ScenarioOptions {
    fn default() -> Self {
        ScenarioOptions {
            data_dir: default_data_dir(),
            budget: Budget::default(),
            exec: Execution::default(),
            timings: true,
        }
    }
}

/// The `data/` directory shipped with this crate.
pub fn default_data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

struct Runner {
    checks: Vec<Check>,
    timings: BTreeMap<String, u64>,
}

impl Runner {
    fn new() -> Self {
        Runner {
            checks: Vec::new(),
            timings: BTreeMap::new(),
        }
    }

    /// Run `f`, which returns `(expected, actual)`; passes on equality.
    fn check<F>(&mut self, id: &str, description: &str, f: F)
    where
        F: FnOnce() -> (Value, Value),
    {
        let start = Instant::now();
        let (expected, actual) = f();
        self.timings
            .insert(id.to_string(), start.elapsed().as_millis() as u64);
        self.checks.push(Check {
            id: id.to_string(),
            description: description.to_string(),
            pass: expected == actual,
            expected,
            actual,
        });
    }

    fn finish(mut self, name: &str, timings: bool) -> VerificationReport {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
        VerificationReport {
            schema: SCHEMA,
            scenario: name.to_string(),
            pass: self.checks.iter().all(|c| c.pass),
            checks: self.checks,
            timings_ms: timings.then_some(self.timings),
        }
    }
}

fn read(dir: &Path, file: &str) -> Result<String, ScenarioError> {
    let path = dir.join(file);
    std::fs::read_to_string(&path).map_err(|source| ScenarioError::MissingData { path, source })
}

fn read_presentation(dir: &Path, file: &str) -> Result<Presentation, ScenarioError> {
    let text = read(dir, file)?;
    Presentation::parse(&text).map_err(|source| ScenarioError::BadData {
        path: dir.join(file),
        source,
    })
}

fn read_table(dir: &Path) -> Result<ExceptionalTable, ScenarioError> {
    let text = read(dir, "exceptional.txt")?;
    ExceptionalTable::parse(&text).map_err(|source| ScenarioError::BadTable {
        path: dir.join("exceptional.txt"),
        source,
    })
}

/// First entries of each tuple, for comparison with parametrized sets.
pub fn parametrize(g: &GarsideStructure, set: &[DividedTuple]) -> Vec<String> {
    set.iter().map(|t| g.simple_name(t.entries[0])).collect()
}

pub fn run_scenario(
    name: &str,
    opts: &ScenarioOptions,
) -> Result<VerificationReport, ScenarioError> {
    // load every input first so a missing file never yields a partial report
    let dir = &opts.data_dir;
    match name {
        "verify-g12" => {
            let p = read_presentation(dir, "g12.gar")?;
            let t = read_table(dir)?;
            Ok(run_exceptional(Exceptional::G12, &p, &t, opts))
        }
        "verify-g13" => {
            let p = read_presentation(dir, "g13.gar")?;
            let t = read_table(dir)?;
            Ok(run_exceptional(Exceptional::G13, &p, &t, opts))
        }
        "verify-typeb" => {
            let p2 = read_presentation(dir, "typeb2.gar")?;
            let p3 = read_presentation(dir, "typeb3.gar")?;
            Ok(run_typeb(&p2, &p3, opts))
        }
        "verify-regular" => Ok(run_regular(&read_table(dir)?, opts)),
        "verify-pairs" => Ok(run_pairs(&read_table(dir)?, PairCaps::default(), opts)),
        other => Err(ScenarioError::Unknown(other.to_string())),
    }
}

#[derive(Clone, Copy)]
enum Exceptional {
    G12,
    G13,
}

struct Expectations {
    prefix: &'static str,
    table_index: u32,
    zp: u64,
    simple_count: Option<usize>,
    phi_order: u32,
    root_word: &'static str,
    /// (power of the root word, expected Δ-power)
    root_powers: &'static [(i64, i64)],
    central: &'static [(i64, bool)],
    regular: &'static [u64],
    fundamentals: &'static [u64],
    classes: &'static [&'static [u64]],
    /// (p, q, expected first entries)
    sets: &'static [(usize, u64, &'static [&'static str])],
    connected: &'static [(usize, u64)],
    centralizers: &'static [CentralizerCase],
}

/// Expected shape of `C_p^q` and the collapse of its vertex-group generator.
struct CentralizerCase {
    p: usize,
    q: u64,
    objects: usize,
    generators: usize,
    relations: &'static [&'static str],
    collapse: &'static str,
}

const G12: Expectations = Expectations {
    prefix: "g12",
    table_index: 12,
    zp: 6,
    simple_count: Some(11),
    phi_order: 3,
    root_word: "s t u",
    root_powers: &[(4, 3), (8, 6)],
    central: &[(1, false), (3, true), (6, true)],
    regular: &[1, 2, 3, 4, 6, 8],
    fundamentals: &[2, 6, 8],
    classes: &[&[1, 2], &[3, 6], &[4, 8]],
    sets: &[
        (2, 1, &[]),
        (4, 3, &["s", "t", "u"]),
        (2, 3, &["st", "tu", "us"]),
        (4, 1, &[]),
    ],
    connected: &[(1, 3), (1, 1), (4, 3)],
    centralizers: &[
        CentralizerCase {
            p: 2,
            q: 3,
            objects: 3,
            generators: 6,
            relations: &[
                "(s,t)(t,u)=(st,1)",
                "(t,u)(u,s)=(tu,1)",
                "(u,s)(s,t)=(us,1)",
            ],
            collapse: "stu",
        },
        CentralizerCase {
            p: 1,
            q: 2,
            objects: 1,
            generators: 1,
            relations: &[],
            collapse: "stus",
        },
    ],
};

const G13: Expectations = Expectations {
    prefix: "g13",
    table_index: 13,
    zp: 4,
    simple_count: None,
    phi_order: 1,
    root_word: "a b c",
    root_powers: &[(3, 1), (12, 4)],
    central: &[(1, true), (4, true)],
    regular: &[1, 2, 3, 4, 6, 12],
    fundamentals: &[4, 12],
    classes: &[&[1, 2, 4], &[3, 6, 12]],
    sets: &[
        (3, 2, &["abc", "bca", "cab"]),
        (3, 1, &["abc", "bca", "cab"]),
        (9, 4, &[]),
    ],
    connected: &[(3, 2), (3, 1)],
    centralizers: &[CentralizerCase {
        p: 3,
        q: 4,
        objects: 3,
        generators: 6,
        relations: &[
            "(a,bc)(b,ca)=(ab,c)",
            "(ab,c)(c,ab)=(a,bc)(bc,a)",
            "(b,ca)(c,ab)=(bc,a)",
            "(bc,a)(a,bc)=(b,ca)(ca,b)",
            "(c,ab)(a,bc)=(ca,b)",
            "(ca,b)(b,ca)=(c,ab)(ab,c)",
        ],
        collapse: "abc",
    }],
};

fn run_exceptional(
    which: Exceptional,
    p: &Presentation,
    table: &ExceptionalTable,
    opts: &ScenarioOptions,
) -> VerificationReport {
    let ex = match which {
        Exceptional::G12 => &G12,
        Exceptional::G13 => &G13,
    };
    let id = |s: &str| format!("{}.{s}", ex.prefix);
    let mut r = Runner::new();
    let built = GarsideStructure::build(p, &opts.budget, opts.exec);
    let g = match built {
        Ok(g) => g,
        Err(e) => {
            r.check(&id("axioms"), "Garside axioms hold exhaustively", || {
                (json!(true), json!(e.to_string()))
            });
            return r.finish(&format!("verify-{}", ex.prefix), opts.timings);
        }
    };
    let (budget, exec) = (&opts.budget, opts.exec);

    r.check(
        &id("axioms"),
        "balanced, lattice, Δφ(x)=xΔ for all simples; φ order",
        || {
            let rep = g.report();
            let mut expected =
                json!({"balanced": true, "lattice": true, "phi": true, "phi_order": ex.phi_order});
            let mut actual = json!({
                "balanced": rep.axioms.balanced,
                "lattice": rep.axioms.lattice,
                "phi": rep.axioms.phi,
                "phi_order": g.phi_order(),
            });
            if let Some(n) = ex.simple_count {
                expected["simple_count"] = json!(n);
                actual["simple_count"] = json!(g.simple_count());
            }
            (expected, actual)
        },
    );

    r.check(
        &id("central_powers"),
        "root powers and centrality of Δ-powers",
        || {
            let x = g.parse_element(ex.root_word).expect("root word parses");
            let mut expected = serde_json::Map::new();
            let mut actual = serde_json::Map::new();
            let name = ex.root_word.replace(' ', "");
            for &(k, dk) in ex.root_powers {
                let key = format!("({name})^{k}");
                expected.insert(
                    key.clone(),
                    json!(g.display(&NormalForm::delta_power(dk)).to_string()),
                );
                actual.insert(key, json!(g.display(&g.power(&x, k)).to_string()));
            }
            for &(k, central) in ex.central {
                expected.insert(format!("central(Δ^{k})"), json!(central));
                actual.insert(
                    format!("central(Δ^{k})"),
                    json!(g.is_central(&NormalForm::delta_power(k))),
                );
            }
            (Value::Object(expected), Value::Object(actual))
        },
    );

    r.check(
        &id("oracle"),
        "normal forms agree with the congruence oracle on all words of length ≤ 8",
        || match CongruenceTable::build(p, 8, budget, exec) {
            Ok(t) => {
                let rep = oracle::compare_with_table(&g, &t, exec);
                (json!(0), json!(rep.mismatch_count))
            }
            Err(e) => (json!(0), json!(e.to_string())),
        },
    );

    r.check(
        &id("candidates"),
        "candidate root orders are the divisors of ℓ(z_P)",
        || {
            let c = candidate_root_orders(&g, ex.zp);
            let expected = periodic::divisors(ex.zp * g.delta_length() as u64);
            (json!(expected), json!(c))
        },
    );

    for &(m, n, firsts) in ex.sets {
        r.check(
            &id(&format!("d{m}_{n}")),
            &format!("D_{m}^{n} by first entry"),
            || {
                let actual = match divided_set(&g, m, n, budget, exec) {
                    Ok(set) => json!(parametrize(&g, &set)),
                    Err(e) => json!(e.to_string()),
                };
                (json!(firsts), actual)
            },
        );
    }

    for &(pp, qq) in ex.connected {
        r.check(
            &id(&format!("c{pp}_{qq}_connected")),
            &format!("C_{pp}^{qq} is non-empty and connected"),
            || {
                let actual = match DividedCategory::build(&g, pp, qq, budget, exec) {
                    Ok(c) => json!(c.components().len()),
                    Err(e) => json!(e.to_string()),
                };
                (json!(1), actual)
            },
        );
    }

    for case in ex.centralizers {
        let (pp, qq) = (case.p, case.q);
        r.check(
            &id(&format!("c{pp}_{qq}_centralizer")),
            &format!("C_{pp}^{qq}: shape, relations, cyclic vertex group and its collapse"),
            || {
                let c = match DividedCategory::build(&g, pp, qq, budget, exec) {
                    Ok(c) => c,
                    Err(e) => return (json!(true), json!(e.to_string())),
                };
                let mut labels = c.relation_labels(&g);
                labels.sort();
                let z = c.centralizer(&g, 0);
                let img = z.collapse_nf.as_ref().map(|x| g.display(x).to_string());
                let expected_img = g
                    .parse_element(
                        &case
                            .collapse
                            .chars()
                            .map(String::from)
                            .collect::<Vec<_>>()
                            .join(" "),
                    )
                    .map(|x| g.display(&x).to_string())
                    .ok();
                let expected = json!({
                    "objects": case.objects,
                    "generators": case.generators,
                    "relations": case.relations,
                    "cyclic": true,
                    "simplified": [1, 0],
                    "collapse": expected_img,
                });
                let actual = json!({
                    "objects": c.objects.len(),
                    "generators": c.reduced_presentation().generators.len(),
                    "relations": labels,
                    "cyclic": z.cyclic,
                    "simplified": [z.generators_after, z.relators_after],
                    "collapse": img,
                });
                (expected, actual)
            },
        );
    }

    let gd = table
        .get(ex.table_index)
        .expect("table has the group")
        .clone();
    r.check(
        &id("roots"),
        "d-th roots of z_P exist exactly for the regular numbers",
        || {
            let mut exists = Vec::new();
            for d in candidate_root_orders(&g, ex.zp) {
                match roots_report(&g, ex.zp, d, false, budget, exec) {
                    Ok(rep) if rep.exists => exists.push(d),
                    Ok(_) => {}
                    Err(e) => return (json!(ex.regular), json!(e.to_string())),
                }
            }
            (
                json!({"expected": ex.regular, "regular": ex.regular}),
                json!({"expected": exists, "regular": gd.regular_numbers()}),
            )
        },
    );

    r.check(
        &id("regular"),
        "fundamental regular numbers and R-classes",
        || {
            let classes: Vec<Vec<u64>> = ex.classes.iter().map(|c| c.to_vec()).collect();
            (
                json!({"fundamentals": ex.fundamentals, "classes": classes, "chain": classes}),
                json!({
                    "fundamentals": gd.fundamentals(),
                    "classes": gd.r_classes(),
                    "chain": gd.r_classes_by_chain(),
                }),
            )
        },
    );

    if let Exceptional::G12 = which {
        r.check(
            "g12.bezout",
            "Bézout roots (stu, Δ^3; 8, 2) and (Δ^3, Δ^2; 2, 3)",
            || {
                let zp = NormalForm::delta_power(6);
                let stu = g.parse_element("s t u").expect("parses");
                let show = |x: Result<periodic::BezoutRoot, periodic::PeriodicError>| match x {
                    Ok(b) => json!(g.display(&b.root).to_string()),
                    Err(e) => json!(e.to_string()),
                };
                let a = show(bezout_root(
                    &g,
                    &stu,
                    &NormalForm::delta_power(3),
                    8,
                    2,
                    &zp,
                ));
                let b = show(bezout_root(
                    &g,
                    &NormalForm::delta_power(3),
                    &NormalForm::delta_power(2),
                    2,
                    3,
                    &zp,
                ));
                (json!(["stu", "Δ"]), json!([a, b]))
            },
        );
    }

    r.finish(&format!("verify-{}", ex.prefix), opts.timings)
}

fn run_typeb(p2: &Presentation, p3: &Presentation, opts: &ScenarioOptions) -> VerificationReport {
    let mut r = Runner::new();
    for (n, p, simples) in [(2usize, p2, 8usize), (3, p3, 48)] {
        r.check(
            &format!("typeb{n}.presentation"),
            "bundled file matches the generated presentation",
            || {
                (
                    json!(series::typeb_presentation(n).to_gar()),
                    json!(p.to_gar()),
                )
            },
        );
        r.check(
            &format!("typeb{n}.axioms"),
            "Garside axioms and simple count",
            || {
                let actual = match GarsideStructure::build(p, &opts.budget, opts.exec) {
                    Ok(g) => json!({"pass": g.report().passed(), "simple_count": g.simple_count()}),
                    Err(e) => json!(e.to_string()),
                };
                (json!({"pass": true, "simple_count": simples}), actual)
            },
        );
        r.check(&format!("typeb{n}.epsilon"), "ε^n = Δ and Δ central", || {
            let actual = match series::check_epsilon(n, &opts.budget, opts.exec) {
                Ok(c) => json!({"epsilon_power_is_delta": c.epsilon_power_is_delta, "delta_central": c.delta_central}),
                Err(e) => json!(e.to_string()),
            };
            (json!({"epsilon_power_is_delta": true, "delta_central": true}), actual)
        });
    }
    r.check("typeb.winding", "wd(ε)=1, wd(z)=e, wd(t_i)=0, λ=ε^e is a member", || {
        let e = 3u64;
        (
            json!({"wd_epsilon": 1, "wd_z": e, "wd_t": [0, 0, 0], "lambda_member": true, "epsilon_member_e2": false}),
            json!({
                "wd_epsilon": series::winding(&series::epsilon(3)),
                "wd_z": series::winding(&series::z_word(e)),
                "wd_t": (1..=3).map(|i| series::winding(&series::t_word(i))).collect::<Vec<_>>(),
                "lambda_member": series::is_member(&series::lambda(3, e), e),
                "epsilon_member_e2": series::is_member(&series::epsilon(3), 2),
            }),
        )
    });
    r.finish("verify-typeb", opts.timings)
}

fn run_regular(table: &ExceptionalTable, opts: &ScenarioOptions) -> VerificationReport {
    let mut r = Runner::new();
    for (k, order, center) in [(12u32, 48u128, 2u64), (13, 96, 4)] {
        let gd = table.get(k).expect("present");
        r.check(
            &format!("g{k}.order"),
            "group order and center order",
            || {
                (
                    json!([order, center]),
                    json!([gd.order(), gd.center_order()]),
                )
            },
        );
    }
    r.check(
        "g12.classes",
        "G12 fundamentals {2,6,8}, classes {1,2},{3,6},{4,8}",
        || {
            let gd = table.get(12).expect("present");
            (
                json!([[2, 6, 8], [[1, 2], [3, 6], [4, 8]]]),
                json!([gd.fundamentals(), gd.r_classes()]),
            )
        },
    );
    r.check(
        "g13.classes",
        "G13 fundamentals {4,12}, classes {1,2,4},{3,6,12}",
        || {
            let gd = table.get(13).expect("present");
            (
                json!([[4, 12], [[1, 2, 4], [3, 6, 12]]]),
                json!([gd.fundamentals(), gd.r_classes()]),
            )
        },
    );
    r.check(
        "dihedral.g12_12_2",
        "G(12,12,2): 3 and 4 regular with fundamental 12, no class minimum",
        || {
            let gd = reflgroups::series_data(12, 12, 2).expect("valid");
            let (a, b) = (gd.regularity(3), gd.regularity(4));
            (
                json!([true, true, 12, 12, null]),
                json!([
                    a.regular,
                    b.regular,
                    a.fundamental,
                    b.fundamental,
                    a.class_minimum
                ]),
            )
        },
    );
    r.check(
        "exceptional.class_minima",
        "every R-class of every exceptional group has a unique minimum",
        || {
            let failures: Vec<String> = table
                .iter()
                .flat_map(|gd| {
                    gd.r_classes()
                        .into_iter()
                        .filter(|c| class_minimum(c).is_none())
                        .map(move |c| format!("{}: {:?}", gd.name, c))
                })
                .collect();
            (json!([]), json!(failures))
        },
    );
    r.check(
        "exceptional.r1",
        "the class of 1 is the divisors of the center order",
        || {
            let failures: Vec<String> = table
                .iter()
                .filter(|gd| gd.regularity(1).r_class != periodic::divisors(gd.center_order()))
                .map(|gd| gd.name.to_string())
                .collect();
            (json!([]), json!(failures))
        },
    );
    r.finish("verify-regular", opts.timings)
}

pub const EXPECTED_PAIRS: [(&str, &str); 11] = [
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
];

fn run_pairs(
    table: &ExceptionalTable,
    caps: PairCaps,
    opts: &ScenarioOptions,
) -> VerificationReport {
    let mut r = Runner::new();
    r.check(
        "pairs.default_caps",
        "groups sharing degrees and codegrees (max_de 120, max_n 10)",
        || {
            let found: Vec<[String; 2]> = reflgroups::isodiscriminantal_pairs(table, caps)
                .into_iter()
                .map(|p| [p.first.to_string(), p.second.to_string()])
                .collect();
            (json!(EXPECTED_PAIRS), json!(found))
        },
    );
    r.finish("verify-pairs", opts.timings)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiet() -> ScenarioOptions {
        ScenarioOptions {
            timings: false,
            ..ScenarioOptions::default()
        }
    }

    #[test]
    fn cheap_scenarios_pass() {
        for name in ["verify-typeb", "verify-regular", "verify-pairs"] {
            let rep = run_scenario(name, &quiet()).unwrap();
            let failed: Vec<&Check> = rep.checks.iter().filter(|c| !c.pass).collect();
            assert!(rep.pass, "{name}: {failed:#?}");
        }
    }

    #[test]
    fn missing_data_is_an_error() {
        let opts = ScenarioOptions {
            data_dir: PathBuf::from("/nonexistent"),
            ..quiet()
        };
        assert!(matches!(
            run_scenario("verify-g12", &opts),
            Err(ScenarioError::MissingData { .. })
        ));
        assert!(matches!(
            run_scenario("nope", &quiet()),
            Err(ScenarioError::Unknown(_))
        ));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = serde_json::to_string(&run_scenario("verify-regular", &quiet()).unwrap()).unwrap();
        let b = serde_json::to_string(&run_scenario("verify-regular", &quiet()).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(!a.contains("timings_ms"));
    }
}
