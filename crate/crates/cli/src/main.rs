use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use esr_core::catalog::{catalog, entry, CatalogEntry};
use esr_core::cohomology::{isotypic_betti, reduced_betti};
use esr_core::complex::classify;
use esr_core::io::{read_action, read_complex, read_lsop, ActionDoc, ComplexDoc};
use esr_core::koszul::{verify_refined_hochster, Caps};
use esr_core::sr::{build_lsop, lefschetz_probe, Lsop, QuotientEngine};
use esr_core::verify::{run_suite, Suite, VerifyOptions};
use esr_core::{validate_action, CyclicAction, Error, SimplicialComplex};

#[derive(Parser)]
#[command(
    name = "esr",
    version,
    about = "Fine-graded invariants of Stanley-Reisner rings under cyclic actions"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Size caps for local cohomology, e.g. `n=14,j=3`.
    #[arg(long, global = true)]
    caps: Option<String>,
    /// Pre-screen ranks modulo a prime before exact elimination.
    #[arg(long, global = true)]
    fast_mod: bool,
    #[command(subcommand)]
    command: Command,
}

/// Which complexes a command runs on: a catalog entry, a pair of files,
/// or the whole catalog.
#[derive(Args, Clone)]
struct Target {
    /// Catalog entry name.
    #[arg(long, conflicts_with = "complex")]
    name: Option<String>,
    /// Complex JSON file.
    #[arg(long, requires = "action")]
    complex: Option<PathBuf>,
    /// Action JSON file.
    #[arg(long)]
    action: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct SeedArg {
    #[arg(long, env = "ESR_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in complexes.
    Catalog {
        #[arg(long)]
        name: Option<String>,
    },
    /// Classify a complex and, optionally, an action on it.
    Info {
        complex: PathBuf,
        #[arg(long)]
        action: Option<PathBuf>,
    },
    /// Reduced Betti numbers, split by character when an action is known.
    Betti {
        #[command(flatten)]
        target: Target,
    },
    /// Compare both sides of the character-refined Hochster formula.
    Hochster {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        imax: Option<usize>,
        #[arg(long)]
        jmax: Option<usize>,
    },
    /// Fine Hilbert function of an Artinian reduction.
    Artinian {
        #[command(flatten)]
        target: Target,
        /// Character of the linear forms.
        #[arg(long)]
        m: Option<u32>,
        #[command(flatten)]
        seed: SeedArg,
        /// Replay a saved system instead of drawing one.
        #[arg(long)]
        lsop: Option<PathBuf>,
        /// Save the system used.
        #[arg(long)]
        save_lsop: Option<PathBuf>,
    },
    /// Sigma-module quotients and the duality pairing.
    Sigma {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        m: Option<u32>,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long)]
        lsop: Option<PathBuf>,
    },
    /// Run a verification suite over catalog entries.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Restrict to one catalog entry.
        #[arg(long)]
        name: Option<String>,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Search for injective multiplication maps on sigma quotients.
    ProbeLefschetz {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        m: Option<u32>,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 8)]
        trials: u32,
    },
}

struct Item {
    name: String,
    complex: SimplicialComplex,
    action: Option<CyclicAction>,
    lsop_character: u32,
    grid: Option<(usize, usize)>,
}

impl From<CatalogEntry> for Item {
    fn from(e: CatalogEntry) -> Self {
        Self {
            name: e.name.to_string(),
            complex: e.complex,
            action: Some(e.action),
            lsop_character: e.lsop_character,
            grid: Some(e.hochster_grid),
        }
    }
}

fn resolve(t: &Target) -> Result<Vec<Item>, Error> {
    if let Some(name) = &t.name {
        let e = entry(name).ok_or_else(|| Error::Invalid(format!("no catalog entry `{name}`")))?;
        return Ok(vec![e.into()]);
    }
    if let Some(path) = &t.complex {
        let complex = read_complex(path)?;
        let action = t.action.as_ref().map(read_action).transpose()?;
        return Ok(vec![Item {
            name: path.display().to_string(),
            complex,
            action,
            lsop_character: 0,
            grid: None,
        }]);
    }
    Ok(catalog().into_iter().map(Item::from).collect())
}

/// Output of one command: a JSON value, its text rendering and whether
/// anything failed.
struct Outcome {
    json: Value,
    text: String,
    failures: usize,
}

fn caps_of(cli: &Cli) -> Result<Caps, Error> {
    let mut caps = match &cli.caps {
        Some(s) => Caps::parse(s)?,
        None => Caps::default(),
    };
    caps.fast_mod = cli.fast_mod;
    Ok(caps)
}

fn fmt_table(rows: &[Vec<i64>]) -> String {
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            let cells: Vec<String> = r.iter().map(i64::to_string).collect();
            format!("    {i}: ({})", cells.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn cmd_catalog(name: Option<&str>) -> Result<Outcome, Error> {
    let entries: Vec<CatalogEntry> = match name {
        Some(n) => vec![entry(n).ok_or_else(|| Error::Invalid(format!("no catalog entry `{n}`")))?],
        None => catalog(),
    };
    let mut text = String::new();
    let mut docs = Vec::new();
    for e in &entries {
        let doc = &e.documented;
        text.push_str(&format!(
            "{:<9} n={:<2} d={} p={} h={:?} free={} very_free={} cm={} manifold={}  {}\n",
            e.name,
            e.complex.n(),
            e.complex.d(),
            e.action.p(),
            doc.h_vector,
            doc.free,
            doc.very_free,
            doc.cohen_macaulay,
            doc.homology_manifold,
            e.description
        ));
        if name.is_some() {
            text.push_str(&format!(
                "  complex: {}\n  action: {}\n",
                serde_json::to_string(&ComplexDoc::of(&e.complex))?,
                serde_json::to_string(&ActionDoc::of(&e.action))?
            ));
        }
        docs.push(json!({
            "name": e.name,
            "description": e.description,
            "complex": ComplexDoc::of(&e.complex),
            "action": ActionDoc::of(&e.action),
            "documented": e.documented,
            "lsop_character": e.lsop_character,
        }));
    }
    Ok(Outcome {
        json: json!(docs),
        text,
        failures: 0,
    })
}

fn cmd_info(complex: &PathBuf, action: Option<&PathBuf>) -> Result<Outcome, Error> {
    let k = read_complex(complex)?;
    let cls = classify(&k);
    let f = k.f_vector();
    let h = k.h_vector();
    let mut text = format!(
        "n = {}, d = {}, facets = {}\nf = {:?}\nh = {:?}\nreduced Betti (from -1) = {:?}\n\
         pure {} | connected {} | Cohen-Macaulay {} | Buchsbaum {} | homology manifold {} | orientable {}\n",
        k.n(),
        k.d(),
        k.facets().len(),
        f.0,
        h.0,
        cls.reduced_betti,
        cls.pure,
        cls.connected,
        cls.cohen_macaulay,
        cls.buchsbaum,
        cls.homology_manifold,
        cls.orientable
    );
    let mut out =
        json!({ "n": k.n(), "d": k.d(), "f_vector": f.0, "h_vector": h.0, "classification": cls });
    if let Some(path) = action {
        let a = read_action(path)?;
        let report = validate_action(&k, &a)?;
        text.push_str(&format!(
            "action: p = {}, automorphism {}, identity {}, free {}, very free {}\n",
            report.p, report.automorphism, report.identity, report.free, report.very_free
        ));
        out["action"] = json!(report);
        if report.free {
            let beta = isotypic_betti(&k, &a)?;
            text.push_str(&format!(
                "isotypic Betti (rows from -1):\n{}\n",
                fmt_usize_table(&beta.table)
            ));
            out["isotypic_betti"] = json!(beta);
        }
    }
    Ok(Outcome {
        json: out,
        text,
        failures: 0,
    })
}

fn fmt_usize_table(rows: &[Vec<usize>]) -> String {
    let rows: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i64).collect())
        .collect();
    fmt_table(&rows)
}

fn cmd_betti(items: &[Item]) -> Result<Outcome, Error> {
    let mut text = String::new();
    let mut docs = Vec::new();
    for it in items {
        let betti = reduced_betti(&it.complex);
        text.push_str(&format!(
            "{}: reduced Betti (from -1) {:?}\n",
            it.name, betti.0
        ));
        let mut doc = json!({ "name": it.name, "reduced_betti": betti.0 });
        if let Some(a) = &it.action {
            match isotypic_betti(&it.complex, a) {
                Ok(beta) => {
                    text.push_str(&format!(
                        "  by character:\n{}\n",
                        fmt_usize_table(&beta.table)
                    ));
                    doc["isotypic_betti"] = json!(beta.table);
                }
                Err(e) => {
                    text.push_str(&format!("  by character: unavailable ({})\n", e.code()));
                    doc["isotypic_error"] = json!(e.code());
                }
            }
        }
        docs.push(doc);
    }
    Ok(Outcome {
        json: json!(docs),
        text,
        failures: 0,
    })
}

fn cmd_hochster(
    items: &[Item],
    imax: Option<usize>,
    jmax: Option<usize>,
    caps: &Caps,
) -> Result<Outcome, Error> {
    let mut text = String::new();
    let mut docs = Vec::new();
    let mut failures = 0;
    for it in items {
        let Some(a) = &it.action else {
            return Err(Error::Invalid(format!("{} has no action", it.name)));
        };
        if items.len() > 1 && !validate_action(&it.complex, a)?.free {
            text.push_str(&format!("{}: skipped (NOT_FREE)\n", it.name));
            docs.push(json!({ "name": it.name, "skipped": "NOT_FREE" }));
            continue;
        }
        let (di, dj) = it.grid.unwrap_or((it.complex.d(), 1));
        let (imax, jmax) = (imax.unwrap_or(di), jmax.unwrap_or(dj));
        let report = verify_refined_hochster(&it.complex, a, imax as i64, jmax as u32, caps)?;
        text.push_str(&format!(
            "{} (p = {}), i <= {imax}, j <= {jmax}\n",
            it.name, report.p
        ));
        for pt in &report.points {
            let ok = pt.matches && pt.totals_match;
            if !ok {
                failures += 1;
            }
            text.push_str(&format!(
                "  [{}] i={} j={} local cohomology {:?} contrastar {:?}\n",
                if ok { "pass" } else { "FAIL" },
                pt.i,
                pt.j,
                pt.lhs,
                pt.rhs
            ));
        }
        docs.push(json!({ "name": it.name, "report": report }));
    }
    Ok(Outcome {
        json: json!(docs),
        text,
        failures,
    })
}

fn obtain_lsop(
    it: &Item,
    m: Option<u32>,
    seed: u64,
    replay: Option<&PathBuf>,
) -> Result<(CyclicAction, Lsop), Error> {
    let a = it
        .action
        .clone()
        .ok_or_else(|| Error::Invalid(format!("{} has no action", it.name)))?;
    let lsop = match replay {
        Some(path) => read_lsop(path)?,
        None => build_lsop(&it.complex, &a, m.unwrap_or(it.lsop_character), seed)?,
    };
    Ok((a, lsop))
}

fn single<'a>(items: &'a [Item], what: &str) -> Result<&'a Item, Error> {
    match items {
        [one] => Ok(one),
        _ => Err(Error::Invalid(format!(
            "{what} needs --name or --complex/--action"
        ))),
    }
}

fn cmd_artinian(
    items: &[Item],
    m: Option<u32>,
    seed: u64,
    replay: Option<&PathBuf>,
    save: Option<&PathBuf>,
) -> Result<Outcome, Error> {
    let it = single(items, "artinian")?;
    let (a, lsop) = obtain_lsop(it, m, seed, replay)?;
    if let Some(path) = save {
        std::fs::write(path, serde_json::to_string_pretty(&lsop)?)?;
    }
    let table = QuotientEngine::new(&it.complex, Some(&a), &lsop)?.artinian()?;
    let text = format!(
        "{}: character {} system (seed {}, attempt {})\n{}\n  totals {:?}\n",
        it.name,
        lsop.character.unwrap_or(0),
        lsop.seed,
        lsop.attempts,
        fmt_table(&table.dims),
        table.totals()
    );
    Ok(Outcome {
        json: json!({ "name": it.name, "lsop": lsop, "artinian": table }),
        text,
        failures: 0,
    })
}

fn cmd_sigma(
    items: &[Item],
    m: Option<u32>,
    seed: u64,
    replay: Option<&PathBuf>,
) -> Result<Outcome, Error> {
    let it = single(items, "sigma")?;
    let (a, lsop) = obtain_lsop(it, m, seed, replay)?;
    let engine = QuotientEngine::new(&it.complex, Some(&a), &lsop)?;
    let tables = engine.sigma()?;
    let mut text = format!(
        "{}: character {} system (seed {})\n  sigma / theta:\n{}\n  ring / sigma:\n{}\n",
        it.name,
        lsop.character.unwrap_or(0),
        lsop.seed,
        fmt_table(&tables.sigma_over_theta.dims),
        fmt_table(&tables.quotient.dims)
    );
    let mut out = json!({ "name": it.name, "lsop": lsop, "sigma": tables });
    match engine.pairing() {
        Ok(r) => {
            text.push_str(&format!(
                "  top piece in character {}; pairing perfect: {}\n",
                r.socle_character, r.perfect
            ));
            out["pairing"] = json!(r);
        }
        Err(e) => {
            text.push_str(&format!("  pairing unavailable: {}\n", e.code()));
            out["pairing_error"] = json!(e.code());
        }
    }
    Ok(Outcome {
        json: out,
        text,
        failures: 0,
    })
}

fn cmd_verify(suite: &str, name: Option<&str>, seed: u64, caps: Caps) -> Result<Outcome, Error> {
    let suite: Suite = suite.parse()?;
    let entries = match name {
        Some(n) => vec![entry(n).ok_or_else(|| Error::Invalid(format!("no catalog entry `{n}`")))?],
        None => catalog(),
    };
    let opts = VerifyOptions {
        seed,
        caps,
        grid: None,
    };
    let report = run_suite(suite, &entries, &opts);
    Ok(Outcome {
        text: format!("{report}\n"),
        failures: report.counts.fail,
        json: serde_json::to_value(&report)?,
    })
}

fn cmd_lefschetz(items: &[Item], m: Option<u32>, seed: u64, trials: u32) -> Result<Outcome, Error> {
    let mut text = String::new();
    let mut docs = Vec::new();
    for it in items {
        let outcome = obtain_lsop(it, m, seed, None).and_then(|(a, lsop)| {
            let cls = classify(&it.complex);
            if !(cls.homology_manifold && cls.orientable) {
                return Err(Error::Invalid("not an orientable homology manifold".into()));
            }
            lefschetz_probe(&it.complex, &a, &lsop, seed, trials)
        });
        match outcome {
            Ok(r) => {
                let found: Vec<String> = r
                    .per_character
                    .iter()
                    .map(|o| {
                        format!(
                            "m'={}: {}",
                            o.character,
                            if o.found { "found" } else { "not found" }
                        )
                    })
                    .collect();
                let vacuous = if r.vacuous { " (vacuous)" } else { "" };
                text.push_str(&format!("{}{}: {}\n", it.name, vacuous, found.join(", ")));
                docs.push(json!({ "name": it.name, "report": r }));
            }
            Err(e) => {
                text.push_str(&format!("{}: skipped ({})\n", it.name, e.code()));
                docs.push(json!({ "name": it.name, "skipped": e.code() }));
            }
        }
    }
    // exploratory only: never counted as failure
    Ok(Outcome {
        json: json!(docs),
        text,
        failures: 0,
    })
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let caps = caps_of(cli)?;
    match &cli.command {
        Command::Catalog { name } => cmd_catalog(name.as_deref()),
        Command::Info { complex, action } => cmd_info(complex, action.as_ref()),
        Command::Betti { target } => cmd_betti(&resolve(target)?),
        Command::Hochster { target, imax, jmax } => {
            cmd_hochster(&resolve(target)?, *imax, *jmax, &caps)
        }
        Command::Artinian {
            target,
            m,
            seed,
            lsop,
            save_lsop,
        } => cmd_artinian(
            &resolve(target)?,
            *m,
            seed.seed,
            lsop.as_ref(),
            save_lsop.as_ref(),
        ),
        Command::Sigma {
            target,
            m,
            seed,
            lsop,
        } => cmd_sigma(&resolve(target)?, *m, seed.seed, lsop.as_ref()),
        Command::Verify { suite, name, seed } => {
            cmd_verify(suite, name.as_deref(), seed.seed, caps)
        }
        Command::ProbeLefschetz {
            target,
            m,
            seed,
            trials,
        } => cmd_lefschetz(&resolve(target)?, *m, seed.seed, *trials),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("serializable report") + "\n"
            } else {
                out.text
            };
            // a closed pipe (e.g. `| head`) is not worth a panic
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if out.failures == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "error": e.code(), "message": e.to_string() }));
            } else {
                eprintln!("error [{}]: {e}", e.code());
            }
            ExitCode::from(2)
        }
    }
}
