//! `gyro` — command-line interface for finite gyrogroup tables.
//!
//! Exit codes: 0 success or property true, 1 property false, 2 input error,
//! 3 resource or budget error, 70 internal error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::AtomicBool;
use std::sync::Arc;
use std::time::Duration;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use gyro_core::error::ErrorKind;
use gyro_core::search::{ResumeState, SearchConfig};
use gyro_core::{axioms, catalog, doubling, format, iso, search, structure};
use gyro_core::{Error, FiniteGyrogroup, Subset};

#[derive(Parser)]
#[command(name = "gyro", version, about = "Finite gyrogroups as Cayley tables", long_about = None)]
struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full axiom suite on a table
    Verify {
        /// Table file, or @NAME for a catalog entry
        input: String,
    },
    /// Double a gyrogroup k times
    Double {
        input: String,
        /// Number of doublings
        #[arg(short, default_value_t = 1)]
        k: u32,
        /// Output file (defaults to stdout)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List all subgyrogroups
    Subs {
        input: String,
        /// Classify each subgyrogroup against this base (input must be its double)
        #[arg(long)]
        classify_against: Option<String>,
    },
    /// Test whether a subset is a normal subgyrogroup
    Normal {
        input: String,
        /// Comma-separated element list, e.g. 0,2
        #[arg(long)]
        subset: String,
    },
    /// Test whether a subset is an L-subgyrogroup
    Lsub {
        input: String,
        #[arg(long)]
        subset: String,
    },
    /// Compute the derived subgyrogroup
    Derived { input: String },
    /// Conjugate a subset (default: the full carrier) by an element
    Conj {
        input: String,
        #[arg(long)]
        elem: usize,
        #[arg(long)]
        subset: Option<String>,
    },
    /// Emit the coaddition table
    Coadd { input: String },
    /// Test two tables for isomorphism
    Iso { input1: String, input2: String },
    /// List all automorphisms
    Aut { input: String },
    /// Enumerate gyrogroups of a given order
    Search {
        #[arg(long)]
        order: usize,
        /// Keep one representative per isomorphism class
        #[arg(long)]
        up_to_iso: bool,
        /// Emit only nondegenerate gyrogroups
        #[arg(long)]
        nondegenerate: bool,
        /// Node budget; exceeding it flushes partial results and a resume state
        #[arg(long)]
        budget: Option<u64>,
        /// Wall-clock limit in seconds
        #[arg(long)]
        time_limit: Option<u64>,
        /// Resume state from an interrupted run
        #[arg(long)]
        resume: Option<String>,
        /// Write one file per table into this directory instead of stdout
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// List catalog entries, or export one as a table file
    Catalog {
        #[arg(long)]
        export: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::Input => 2u8,
                ErrorKind::Resource => 3,
                ErrorKind::Internal => 70,
            };
            if cli.json {
                let kind = match err.kind() {
                    ErrorKind::Input => "input",
                    ErrorKind::Resource => "resource",
                    ErrorKind::Internal => "internal",
                };
                println!("{}", json!({ "error": err.to_string(), "kind": kind }));
            } else {
                eprintln!("error: {err}");
            }
            ExitCode::from(code)
        }
    }
}

/// Reads GYRO_SIZE_CAP, which overrides the library's default size caps.
fn size_cap() -> Result<Option<usize>, Error> {
    match std::env::var("GYRO_SIZE_CAP") {
        Err(_) => Ok(None),
        Ok(raw) => raw
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Input(format!("GYRO_SIZE_CAP must be an integer, got {raw:?}"))),
    }
}

fn read_input(input: &str) -> Result<String, Error> {
    std::fs::read_to_string(input).map_err(|e| Error::Input(format!("cannot read {input}: {e}")))
}

fn load(input: &str) -> Result<FiniteGyrogroup, Error> {
    if let Some(name) = input.strip_prefix('@') {
        return Ok(catalog::get(name)?.gyrogroup);
    }
    format::parse_gyrogroup(&read_input(input)?)
}

/// Like `load`, but requires the table to pass the full axiom suite.
fn load_verified(input: &str) -> Result<FiniteGyrogroup, Error> {
    let g = load(input)?;
    let report = axioms::verify(&g);
    if !report.is_gyrogroup {
        let fail = report.first_failure().expect("failed check");
        return Err(Error::NotAGyrogroup {
            axiom: fail.axiom.name(),
            witness: match &fail.witness {
                Some(w) => format!(
                    " at ({})",
                    w.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                ),
                None => String::new(),
            },
        });
    }
    Ok(g)
}

fn parse_subset(g: &FiniteGyrogroup, raw: &str) -> Result<Subset, Error> {
    let mut elems = Vec::new();
    for part in raw.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let v: usize = part
            .parse()
            .map_err(|_| Error::Input(format!("invalid element {part:?} in subset")))?;
        elems.push(v);
    }
    Subset::from_elements(g.order(), elems)
}

fn subset_json(s: &Subset) -> Value {
    Value::Array(s.iter().map(|x| json!(x)).collect())
}

fn witness_str(w: &Option<Vec<usize>>) -> String {
    match w {
        None => String::new(),
        Some(w) => format!(
            " witness ({})",
            w.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ),
    }
}

fn cayley_json(g: &FiniteGyrogroup) -> Value {
    let rows: Vec<Vec<usize>> = (0..g.order())
        .map(|a| (0..g.order()).map(|b| g.op(a, b)).collect())
        .collect();
    serde_json::to_value(rows).expect("serializable")
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Verify { input } => cmd_verify(cli, input),
        Command::Double { input, k, output } => cmd_double(cli, input, *k, output.as_deref()),
        Command::Subs {
            input,
            classify_against,
        } => cmd_subs(cli, input, classify_against.as_deref()),
        Command::Normal { input, subset } => cmd_normal(cli, input, subset),
        Command::Lsub { input, subset } => cmd_lsub(cli, input, subset),
        Command::Derived { input } => cmd_derived(cli, input),
        Command::Conj {
            input,
            elem,
            subset,
        } => cmd_conj(cli, input, *elem, subset.as_deref()),
        Command::Coadd { input } => cmd_coadd(cli, input),
        Command::Iso { input1, input2 } => cmd_iso(cli, input1, input2),
        Command::Aut { input } => cmd_aut(cli, input),
        Command::Search {
            order,
            up_to_iso,
            nondegenerate,
            budget,
            time_limit,
            resume,
            out_dir,
        } => cmd_search(
            cli,
            *order,
            *up_to_iso,
            *nondegenerate,
            *budget,
            *time_limit,
            resume.as_deref(),
            out_dir.as_deref(),
        ),
        Command::Catalog { export } => cmd_catalog(cli, export.as_deref()),
    }
}

fn cmd_verify(cli: &Cli, input: &str) -> Result<u8, Error> {
    // parse leniently so non-gyrogroup candidates get a report, not an error
    let (label, order, rows, table): (String, usize, Vec<Vec<usize>>, Option<FiniteGyrogroup>) =
        if let Some(name) = input.strip_prefix('@') {
            let g = catalog::get(name)?.gyrogroup;
            let rows = (0..g.order())
                .map(|a| (0..g.order()).map(|b| g.op(a, b)).collect())
                .collect();
            (format!("@{name}"), g.order(), rows, Some(g))
        } else {
            let file = format::parse(&read_input(input)?)?;
            let table = file.to_gyrogroup().ok();
            (input.to_string(), file.order, file.cayley.clone(), table)
        };

    let report = axioms::verify_rows(&rows)?;
    let gyr_check = match &table {
        Some(g) if g.declared_gyr().is_some() && report.is_gyrogroup => {
            Some(axioms::gyration_table_mismatch(g)?)
        }
        _ => None,
    };
    let gyrocomm_witness = table
        .as_ref()
        .filter(|_| report.is_gyrogroup)
        .and_then(axioms::gyrocommutativity_witness);

    if cli.json {
        println!(
            "{}",
            json!({
                "source": label,
                "order": order,
                "checks": report.checks,
                "is_gyrogroup": report.is_gyrogroup,
                "is_degenerate": report.is_degenerate,
                "is_gyrocommutative": report.is_gyrocommutative,
                "right_counterparts": report.right_counterparts,
                "gyrocommutativity_witness": gyrocomm_witness,
                "gyration_table": {
                    "present": gyr_check.is_some(),
                    "matches": gyr_check.as_ref().map(|m| m.is_none()),
                    "first_mismatch": gyr_check.flatten(),
                },
            })
        );
    } else {
        println!("table {label} (order {order})");
        for check in &report.checks {
            let status = if check.passed { "ok" } else { "FAIL" };
            println!(
                "  {:<24}{}{}",
                check.axiom.to_string(),
                status,
                witness_str(&check.witness)
            );
        }
        println!("gyrogroup:       {}", yn(report.is_gyrogroup));
        println!("degenerate:      {}", yn(report.is_degenerate));
        match gyrocomm_witness {
            Some((a, b)) => println!("gyrocommutative: no (witness pair ({a},{b}))"),
            None => println!("gyrocommutative: {}", yn(report.is_gyrocommutative)),
        }
        if let Some(rc) = &report.right_counterparts {
            println!(
                "right counterparts: two-sided identity {}, two-sided inverse {}, right loop {}",
                yn(rc.two_sided_identity),
                yn(rc.two_sided_inverse),
                yn(rc.right_loop)
            );
        }
        match gyr_check {
            None => {}
            Some(None) => println!("gyration table:  matches derived gyrations"),
            Some(Some((a, b))) => println!("gyration table:  MISMATCH at ({a},{b})"),
        }
    }
    let gyr_ok = !matches!(gyr_check, Some(Some(_)));
    Ok(if report.is_gyrogroup && gyr_ok { 0 } else { 1 })
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn write_file(path: &std::path::Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text)
        .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))
}

fn cmd_double(
    cli: &Cli,
    input: &str,
    k: u32,
    output: Option<&std::path::Path>,
) -> Result<u8, Error> {
    let g = load_verified(input)?;
    let cap = size_cap()?.unwrap_or(doubling::DOUBLING_CAP);
    let result = doubling::double_iterated_with_cap(&g, k, cap)?;
    let text = format::render(&result);
    if let Some(path) = output {
        write_file(path, &text)?;
    }
    if cli.json {
        println!(
            "{}",
            json!({
                "name": result.name(),
                "order": result.order(),
                "cayley": cayley_json(&result),
                "file": text,
                "written_to": output.map(|p| p.display().to_string()),
            })
        );
    } else if let Some(path) = output {
        println!(
            "wrote {} (order {}) to {}",
            result.name().unwrap_or("table"),
            result.order(),
            path.display()
        );
    } else {
        print!("{text}");
    }
    Ok(0)
}

fn cmd_subs(cli: &Cli, input: &str, classify_against: Option<&str>) -> Result<u8, Error> {
    let g = load_verified(input)?;
    let cap = size_cap()?.unwrap_or(structure::ENUMERATION_CAP);
    let subs = structure::all_subgyrogroups_with_cap(&g, cap)?;

    let doubled = match classify_against {
        None => None,
        Some(base_input) => {
            let base = load_verified(base_input)?;
            let d = doubling::double(&base)?;
            if !d.result().same_table(&g) {
                return Err(Error::Input(format!(
                    "{input} is not the double of {base_input}"
                )));
            }
            Some(d)
        }
    };

    if cli.json {
        let items: Result<Vec<Value>, Error> = subs
            .iter()
            .map(|s| {
                let classification = match &doubled {
                    None => None,
                    Some(d) => {
                        let c = structure::classify_subgyrogroup(d, s)?;
                        Some(json!({
                            "shape": c.shape,
                            "a_plus": subset_json(&c.a_plus),
                            "l_minus": subset_json(&c.l_minus),
                        }))
                    }
                };
                Ok(json!({
                    "elements": subset_json(s),
                    "size": s.len(),
                    "classification": classification,
                }))
            })
            .collect();
        println!(
            "{}",
            json!({ "order": g.order(), "count": subs.len(), "subgyrogroups": items? })
        );
    } else {
        for s in &subs {
            match &doubled {
                None => println!("{s}"),
                Some(d) => {
                    let c = structure::classify_subgyrogroup(d, s)?;
                    println!("{s}  {}  A+={} L-={}", c.shape, c.a_plus, c.l_minus);
                }
            }
        }
        eprintln!("{} subgyrogroups", subs.len());
    }
    Ok(0)
}

fn cmd_normal(cli: &Cli, input: &str, subset: &str) -> Result<u8, Error> {
    let g = load_verified(input)?;
    let h = parse_subset(&g, subset)?;
    let witness = structure::normality_witness(&g, &h)?;
    let conditions = structure::normality_sufficient_conditions(&g, &h)?;
    let normal = witness.is_none();
    if cli.json {
        println!(
            "{}",
            json!({
                "subset": subset_json(&h),
                "is_normal": normal,
                "witness": witness.map(|w| w.to_vec()),
                "sufficient_conditions": conditions,
            })
        );
    } else {
        println!("subset: {h}");
        println!("normal: {}", yn(normal));
        if let Some([a, a2, b, b2]) = witness {
            println!("witness: a={a} a'={a2} b={b} b'={b2}");
        }
        println!(
            "sufficient conditions: gyr[h,a]=id {}; gyr[a,b](H) in H {}; aH=Ha {}",
            yn(conditions.gyr_left_identity),
            yn(conditions.gyr_stabilizes),
            yn(conditions.cosets_commute)
        );
    }
    Ok(if normal { 0 } else { 1 })
}

fn cmd_lsub(cli: &Cli, input: &str, subset: &str) -> Result<u8, Error> {
    let g = load_verified(input)?;
    let h = parse_subset(&g, subset)?;
    let is_l = structure::is_l_subgyrogroup(&g, &h)?;
    if cli.json {
        println!(
            "{}",
            json!({ "subset": subset_json(&h), "is_l_subgyrogroup": is_l })
        );
    } else {
        println!("subset: {h}");
        println!("L-subgyrogroup: {}", yn(is_l));
    }
    Ok(if is_l { 0 } else { 1 })
}

fn cmd_derived(cli: &Cli, input: &str) -> Result<u8, Error> {
    let g = load_verified(input)?;
    let derived = structure::derived_subgyrogroup(&g);
    if cli.json {
        println!(
            "{}",
            json!({ "derived": subset_json(&derived), "size": derived.len() })
        );
    } else {
        println!("{derived}");
    }
    Ok(0)
}

fn cmd_conj(cli: &Cli, input: &str, elem: usize, subset: Option<&str>) -> Result<u8, Error> {
    let g = load_verified(input)?;
    if elem >= g.order() {
        return Err(Error::ElementOutOfRange {
            element: elem,
            order: g.order(),
        });
    }
    let s = match subset {
        Some(raw) => parse_subset(&g, raw)?,
        None => Subset::full(g.order()),
    };
    let image = structure::conj_set(&g, elem, &s)?;
    if cli.json {
        println!(
            "{}",
            json!({ "elem": elem, "subset": subset_json(&s), "result": subset_json(&image) })
        );
    } else {
        println!("{image}");
    }
    Ok(0)
}

fn cmd_coadd(cli: &Cli, input: &str) -> Result<u8, Error> {
    let g = load_verified(input)?;
    let table = structure::coaddition_table(&g)?;
    let verifies = axioms::verify(&table).is_gyrogroup;
    if cli.json {
        println!(
            "{}",
            json!({
                "name": table.name(),
                "order": table.order(),
                "cayley": cayley_json(&table),
                "is_gyrogroup": verifies,
            })
        );
    } else {
        print!("{}", format::render(&table));
        eprintln!(
            "# coaddition table verifies as a gyrogroup: {}",
            yn(verifies)
        );
    }
    Ok(0)
}

fn cmd_iso(cli: &Cli, input1: &str, input2: &str) -> Result<u8, Error> {
    let g1 = load_verified(input1)?;
    let g2 = load_verified(input2)?;
    let result = iso::isomorphism(&g1, &g2);
    if cli.json {
        println!(
            "{}",
            json!({
                "isomorphic": result.isomorphic,
                "map": result.map.as_ref().map(|p| p.images().collect::<Vec<_>>()),
            })
        );
    } else if let Some(map) = &result.map {
        println!("isomorphic: yes");
        println!(
            "map: {map}  [{}]",
            map.images()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        );
    } else {
        println!("isomorphic: no");
    }
    Ok(if result.isomorphic { 0 } else { 1 })
}

fn cmd_aut(cli: &Cli, input: &str) -> Result<u8, Error> {
    let g = load_verified(input)?;
    let cap = size_cap()?.unwrap_or(iso::AUTOMORPHISM_CAP);
    let auts = iso::automorphisms_with_cap(&g, cap)?;
    if cli.json {
        let items: Vec<Value> = auts
            .iter()
            .map(|p| json!({ "images": p.images().collect::<Vec<_>>(), "cycles": p.to_string() }))
            .collect();
        println!("{}", json!({ "count": auts.len(), "automorphisms": items }));
    } else {
        for p in &auts {
            println!(
                "{p}  [{}]",
                p.images()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
        }
        eprintln!("{} automorphisms", auts.len());
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    cli: &Cli,
    order: usize,
    up_to_iso: bool,
    nondegenerate: bool,
    budget: Option<u64>,
    time_limit: Option<u64>,
    resume: Option<&str>,
    out_dir: Option<&std::path::Path>,
) -> Result<u8, Error> {
    let mut cfg = SearchConfig {
        order,
        up_to_iso,
        nondegenerate_only: nondegenerate,
        node_budget: budget,
        time_budget: time_limit.map(Duration::from_secs),
        stop: None,
        resume: match resume {
            Some(raw) => Some(ResumeState::decode(order, raw)?),
            None => None,
        },
    };
    // cooperative interrupt only matters for long (budgeted/resumed) runs,
    // which run sequentially and can flush partial results
    if cfg.node_budget.is_some() || cfg.time_budget.is_some() || cfg.resume.is_some() {
        let stop = Arc::new(AtomicBool::new(false));
        let handler = stop.clone();
        let _ = ctrlc::set_handler(move || {
            handler.store(true, std::sync::atomic::Ordering::SeqCst);
        });
        cfg.stop = Some(stop);
    }

    let (tables, stats, resume_state) = match search::enumerate(&cfg) {
        Ok(result) => (result.tables, result.stats, None),
        Err(Error::SearchInterrupted(interrupted)) => (
            interrupted.results,
            interrupted.stats,
            Some(interrupted.resume),
        ),
        Err(other) => return Err(other),
    };

    emit_tables(cli, &tables, &stats, resume_state.as_ref(), out_dir)?;
    Ok(if resume_state.is_some() { 3 } else { 0 })
}

fn emit_tables(
    cli: &Cli,
    tables: &[FiniteGyrogroup],
    stats: &search::SearchStats,
    resume: Option<&ResumeState>,
    out_dir: Option<&std::path::Path>,
) -> Result<(), Error> {
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)
            .map_err(|e| Error::Input(format!("cannot create {}: {e}", dir.display())))?;
        for (ix, t) in tables.iter().enumerate() {
            let path = dir.join(format!("order{}-{:04}.gyrotable", t.order(), ix));
            write_file(&path, &format::render(t))?;
        }
    }
    if cli.json {
        let items: Vec<Value> = tables
            .iter()
            .map(|t| json!({ "name": t.name(), "order": t.order(), "cayley": cayley_json(t) }))
            .collect();
        println!(
            "{}",
            json!({
                "complete": resume.is_none(),
                "count": tables.len(),
                "stats": stats,
                "tables": items,
                "resume": resume.map(|r| r.encode()),
            })
        );
    } else {
        if out_dir.is_none() {
            for (ix, t) in tables.iter().enumerate() {
                if ix > 0 {
                    println!();
                }
                print!("{}", format::render(t));
            }
        }
        eprintln!(
            "# {} tables; nodes={} completed={} found={} degenerate_skipped={} iso_rejected={}",
            tables.len(),
            stats.nodes,
            stats.completed,
            stats.found,
            stats.degenerate_skipped,
            stats.iso_rejected
        );
        if let Some(state) = resume {
            println!("# resume: {}", state.encode());
            eprintln!(
                "# interrupted; pass --resume \"{}\" to continue",
                state.encode()
            );
        }
    }
    Ok(())
}

fn cmd_catalog(cli: &Cli, export: Option<&str>) -> Result<u8, Error> {
    match export {
        Some(name) => {
            let entry = catalog::get(name)?;
            let text = format::render(&entry.gyrogroup);
            if cli.json {
                println!(
                    "{}",
                    json!({ "name": entry.name, "order": entry.gyrogroup.order(), "file": text })
                );
            } else {
                print!("{text}");
            }
        }
        None => {
            let entries = catalog::entries();
            if cli.json {
                let items: Vec<Value> = entries
                    .iter()
                    .map(|e| {
                        json!({
                            "name": e.name,
                            "order": e.gyrogroup.order(),
                            "nondegenerate": e.special_perm.is_some(),
                            "special_perm": e.special_perm.as_ref().map(|p| p.to_string()),
                        })
                    })
                    .collect();
                println!("{}", json!({ "entries": items }));
            } else {
                for e in &entries {
                    match &e.special_perm {
                        Some(p) => println!(
                            "{:<4} order {:<3} nondegenerate, gyration {p}",
                            e.name,
                            e.gyrogroup.order()
                        ),
                        None => println!("{:<4} order {:<3} group", e.name, e.gyrogroup.order()),
                    }
                }
            }
        }
    }
    Ok(0)
}
