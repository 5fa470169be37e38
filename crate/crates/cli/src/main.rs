use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use garside_core::divided::DividedCategory;
use garside_core::periodic::roots_report;
use garside_core::reflgroups::{self, ExceptionalTable, PairCaps};
use garside_core::scenario::{run_scenario, ScenarioOptions};
use garside_core::{series, Budget, Execution, GarsideError, GarsideStructure, Presentation};

#[derive(Parser)]
#[command(
    name = "garside",
    version,
    about = "Garside structures, divided categories and roots of the full twist"
)]
struct Cli {
    /// Cap for every enumeration (words per stratum, tuples, orbit size).
    #[arg(long, global = true, env = "GARSIDE_ENUM_BUDGET")]
    budget: Option<u64>,
    /// Run everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Garside axioms of a presentation.
    Verify { file: PathBuf },
    /// Normal form of a word (inverses as `x^-1`).
    Nf { file: PathBuf, word: String },
    /// The divided category C_p^q.
    Divided {
        file: PathBuf,
        #[arg(short)]
        p: usize,
        #[arg(short)]
        q: u64,
        /// Graphviz output instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Whether Δ^K has a d-th root.
    Roots {
        file: PathBuf,
        #[arg(long)]
        zp: u64,
        #[arg(short)]
        d: u64,
        #[arg(long)]
        centralizer: bool,
    },
    /// Regular numbers and R-classes of a reflection group (`G12`, `G(12,12,2)`).
    Regular {
        group: String,
        #[arg(short)]
        d: Option<u64>,
    },
    /// Pairs of groups with equal degrees and codegrees.
    Pairs {
        #[arg(long, default_value_t = PairCaps::default().max_de)]
        max_de: u64,
        #[arg(long, default_value_t = PairCaps::default().max_n)]
        max_n: u64,
    },
    /// Type-B presentation, winding numbers and subgroup membership.
    Typeb {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        check_epsilon: bool,
        /// Winding number of a word in b1..bn.
        #[arg(long)]
        wd: Option<String>,
        /// Membership of a word in the index-e subgroup.
        #[arg(long, requires = "e")]
        member: Option<String>,
        #[arg(short)]
        e: Option<u64>,
    },
    /// A bundled verification scenario.
    Scenario {
        name: String,
        #[arg(long)]
        data_dir: Option<PathBuf>,
        /// Omit timings so reports are byte-identical across runs.
        #[arg(long)]
        deterministic: bool,
    },
}

/// Input or environment problems; exit code 2.
#[derive(Debug)]
struct InputError(anyhow::Error);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for InputError {}

fn input<E: Into<anyhow::Error>>(e: E) -> anyhow::Error {
    anyhow::Error::new(InputError(e.into()))
}

fn load(file: &Path) -> Result<Presentation> {
    let text = std::fs::read_to_string(file)
        .with_context(|| format!("cannot read {}", file.display()))
        .map_err(input)?;
    Presentation::parse(&text)
        .with_context(|| format!("cannot parse {}", file.display()))
        .map_err(input)
}

fn structure(file: &Path, budget: &Budget, exec: Execution) -> Result<GarsideStructure> {
    let p = load(file)?;
    GarsideStructure::build(&p, budget, exec).map_err(|e| match e {
        GarsideError::Axioms(_) => {
            anyhow!(e).context(format!("{} is not a Garside presentation", file.display()))
        }
        other => input(other),
    })
}

fn print(v: &Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

/// Run a command; `Ok(false)` means a check failed.
fn run(cli: Cli) -> Result<bool> {
    let budget = cli.budget.map(Budget::uniform).unwrap_or_default();
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match cli.command {
        Command::Verify { file } => {
            let p = load(&file)?;
            let report = match GarsideStructure::build(&p, &budget, exec) {
                Ok(g) => g.report().clone(),
                Err(GarsideError::Axioms(r)) => *r,
                Err(e) => return Err(input(e)),
            };
            let mut v = json!({"schema": 1});
            v.as_object_mut().expect("object").extend(
                serde_json::to_value(&report)?
                    .as_object()
                    .expect("object")
                    .clone(),
            );
            print(&v)?;
            Ok(report.passed())
        }
        Command::Nf { file, word } => {
            let g = structure(&file, &budget, exec)?;
            let x = g.parse_element(&word).map_err(input)?;
            let nf = g.to_json(&x);
            print(&json!({
                "schema": 1,
                "delta_power": nf.delta_power,
                "factors": nf.factors,
                "display": g.display(&x).to_string(),
                "length": g.length(&x),
            }))?;
            Ok(true)
        }
        Command::Divided { file, p, q, dot } => {
            let g = structure(&file, &budget, exec)?;
            let c = DividedCategory::build(&g, p, q, &budget, exec).map_err(input)?;
            if dot {
                print!("{}", c.to_dot(&g));
            } else {
                let mut v = serde_json::to_value(c.to_json(&g))?;
                v["schema"] = json!(1);
                print(&v)?;
            }
            Ok(true)
        }
        Command::Roots {
            file,
            zp,
            d,
            centralizer,
        } => {
            if zp == 0 || d == 0 {
                return Err(input(anyhow!("--zp and -d must be positive")));
            }
            let g = structure(&file, &budget, exec)?;
            let rep = roots_report(&g, zp, d, centralizer, &budget, exec).map_err(input)?;
            let mut v = serde_json::to_value(&rep)?;
            v["schema"] = json!(1);
            print(&v)?;
            Ok(true)
        }
        Command::Regular { group, d } => {
            let table = ExceptionalTable::bundled().map_err(input)?;
            let gd = reflgroups::group_data(&group, &table).map_err(input)?;
            let v = match d {
                Some(d) => serde_json::to_value(gd.regularity(d))?,
                None => json!({
                    "group": gd.name,
                    "degrees": gd.degrees,
                    "codegrees": gd.codegrees,
                    "order": gd.order().map(|o| o.to_string()),
                    "center_order": gd.center_order(),
                    "regular_numbers": gd.regular_numbers(),
                    "fundamentals": gd.fundamentals(),
                    "r_classes": gd.r_classes(),
                }),
            };
            print(&json!({"schema": 1, "report": v}))?;
            Ok(true)
        }
        Command::Pairs { max_de, max_n } => {
            let table = ExceptionalTable::bundled().map_err(input)?;
            let pairs = reflgroups::isodiscriminantal_pairs(&table, PairCaps { max_de, max_n });
            print(&json!({"schema": 1, "count": pairs.len(), "pairs": pairs}))?;
            Ok(true)
        }
        Command::Typeb {
            n,
            check_epsilon,
            wd,
            member,
            e,
        } => {
            if n == 0 {
                return Err(input(anyhow!("-n must be positive")));
            }
            let p = series::typeb_presentation(n);
            let mut v = json!({"schema": 1, "n": n, "presentation": p.to_gar()});
            let mut ok = true;
            if check_epsilon {
                let c = series::check_epsilon(n, &budget, exec).map_err(input)?;
                ok &= c.passed();
                v["epsilon"] = serde_json::to_value(&c)?;
            }
            if let Some(w) = wd {
                let w = p.parse_group_word(&w).map_err(input)?;
                v["winding"] = json!(series::winding(&w));
            }
            if let Some(w) = member {
                let e = e.expect("clap enforces -e");
                if e == 0 {
                    return Err(input(anyhow!("-e must be positive")));
                }
                let w = p.parse_group_word(&w).map_err(input)?;
                v["member"] = json!({"e": e, "winding": series::winding(&w), "member": series::is_member(&w, e)});
            }
            print(&v)?;
            Ok(ok)
        }
        Command::Scenario {
            name,
            data_dir,
            deterministic,
        } => {
            let mut opts = ScenarioOptions {
                budget,
                exec,
                timings: !deterministic,
                ..ScenarioOptions::default()
            };
            if let Some(dir) = data_dir {
                opts.data_dir = dir;
            }
            let report = run_scenario(&name, &opts).map_err(input)?;
            print(&serde_json::to_value(&report)?)?;
            Ok(report.pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
