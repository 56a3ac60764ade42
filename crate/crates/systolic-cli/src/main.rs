//! Command-line interface for the systolic fat graph toolkit.

mod report;

use std::collections::BTreeMap;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use systolic::admissibility::{
    check_admissibility, check_minimality, verify_metric, AdmissibilityStatus,
    AdmissibilityVerdict, MinimalityClass,
};
use systolic::cycles::DEFAULT_CYCLE_CAP;
use systolic::format::{
    parse_fatgraph, parse_metric, parse_plain_graph, ratio_string, serialize_fatgraph,
    serialize_plain_graph,
};
use systolic::generators::{
    example_g8, girth, trivalent_girth, unitrivalent_girth, wheel_family, Girth,
};
use systolic::hyperbolic;
use systolic::topology::{min_genus_report, ribbon_genus, vf_obstruction};
use systolic::Error;

use report::{sha_hex, ReportDocument};

#[derive(Parser)]
#[command(
    name = "systolic",
    version,
    about = "Decide admissibility of decorated fat graphs, generate graph families, and evaluate hyperbolic pants formulas"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide combinatorial admissibility of a fat graph
    Check {
        /// Fat graph file ("-" for stdin)
        file: String,
        #[arg(long, default_value_t = DEFAULT_CYCLE_CAP)]
        max_cycles: usize,
        #[arg(long)]
        json: bool,
    },
    /// Verify a metric file against every cycle constraint, exactly
    Verify {
        file: String,
        #[arg(long)]
        metric: String,
        #[arg(long, default_value_t = DEFAULT_CYCLE_CAP)]
        max_cycles: usize,
        #[arg(long)]
        json: bool,
    },
    /// Decide minimal non-admissibility
    Minimal {
        file: String,
        #[arg(long, default_value_t = DEFAULT_CYCLE_CAP)]
        max_cycles: usize,
        #[arg(long)]
        json: bool,
    },
    /// Try the vertex/face obstruction certificate
    Obstruction {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Boundary walks, Euler characteristic, and minimum filling genus
    Genus {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Generate a graph family
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Girth of a plain graph ("edge a b" lines)
    Girth {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Hyperbolic pair-of-pants formulas
    Pants {
        #[command(subcommand)]
        which: PantsCmd,
    },
    /// Capping arithmetic
    Cap {
        #[command(subcommand)]
        which: CapCmd,
    },
    /// Quasi-geodesic constants
    Quasi {
        #[command(subcommand)]
        which: QuasiCmd,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    /// Hub cycle crossed by a ring of n triangles (2n nodes, 4n edges)
    Wheel {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// The fixed 8-node, 16-edge minimal non-admissible example
    ExampleG8 {
        #[arg(short, long)]
        output: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// 3-regular plain graph of the given girth
    TrivalentGirth {
        #[arg(long)]
        girth: usize,
        #[arg(short, long)]
        output: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Same with one degree-1 vertex
    UnitrivalentGirth {
        #[arg(long)]
        girth: usize,
        #[arg(short, long)]
        output: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum PantsCmd {
    /// Height of P(l, kl, kl) with respect to the waist
    Height {
        #[arg(long)]
        waist: f64,
        #[arg(long)]
        k: Option<f64>,
        /// Use the equal-boundary variant (k is ignored)
        #[arg(long)]
        lem2: bool,
        #[arg(long)]
        json: bool,
    },
    /// Distance between distinct boundaries of P(l, l, l)
    Distance {
        #[arg(long)]
        l: f64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CapCmd {
    /// Per-pants length gap a(l)
    Gap {
        #[arg(long)]
        l: f64,
        #[arg(long)]
        json: bool,
    },
    /// Required capping girth t(l)
    Girth {
        #[arg(long)]
        l: f64,
        #[arg(long)]
        json: bool,
    },
    /// Full capping plan for a comma-separated list of boundary lengths
    Plan {
        #[arg(long)]
        l: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum QuasiCmd {
    /// Two-segment quasi-geodesic constant k(alpha)
    Constant {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        json: bool,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse { .. }
        | Error::DanglingSlot { .. }
        | Error::MismatchedOccurrenceCounts { .. }
        | Error::NonPositiveLength(_)
        | Error::MissingLength(_)
        | Error::UnknownMetricTarget(_)
        | Error::NotACycle(_) => 2,
        Error::InvalidGraph(_) | Error::NotFourRegular(_, _) | Error::EmptyGraph => 3,
        Error::CycleCapExceeded(_) => 4,
        Error::BadParameter(_)
        | Error::Domain(_)
        | Error::UnknownCycleId(_)
        | Error::DeletingEverything => 5,
        Error::InconsistentEqualities | Error::Internal(_) => 1,
    }
}

struct CliFailure {
    code: u8,
    message: String,
}

impl From<Error> for CliFailure {
    fn from(err: Error) -> Self {
        CliFailure {
            code: exit_code_for(&err),
            message: err.to_string(),
        }
    }
}

fn read_input(path: &str) -> Result<(String, String), CliFailure> {
    let bytes = if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(|e| CliFailure {
            code: 2,
            message: format!("cannot read stdin: {e}"),
        })?;
        buf
    } else {
        std::fs::read(path).map_err(|e| CliFailure {
            code: 2,
            message: format!("cannot read {path}: {e}"),
        })?
    };
    let sha = sha_hex(&bytes);
    let text = String::from_utf8(bytes).map_err(|_| CliFailure {
        code: 2,
        message: format!("{path} is not UTF-8"),
    })?;
    Ok((text, sha))
}

fn command_echo() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

fn status_str(status: AdmissibilityStatus) -> &'static str {
    match status {
        AdmissibilityStatus::Admissible => "admissible",
        AdmissibilityStatus::NotAdmissible => "not-admissible",
    }
}

fn verdict_result(v: &AdmissibilityVerdict) -> Value {
    json!({
        "status": status_str(v.status),
        "margin": ratio_string(&v.margin),
        "standard_cycles": v.standard_count,
        "non_standard_cycles": v.non_standard_count,
        "edges": v.edge_count,
    })
}

fn witness_value(v: &AdmissibilityVerdict) -> Option<Value> {
    v.witness.as_ref().map(|w| {
        let map: BTreeMap<String, String> = w
            .entries()
            .map(|(k, r)| (k.to_string(), ratio_string(r)))
            .collect();
        json!(map)
    })
}

fn print_verdict_human(v: &AdmissibilityVerdict) {
    println!("status: {}", status_str(v.status));
    println!("margin: {}", ratio_string(&v.margin));
    println!(
        "constraints: {} standard cycle(s), {} non-standard cycle(s), {} edge(s)",
        v.standard_count, v.non_standard_count, v.edge_count
    );
    if let Some(w) = &v.witness {
        println!("witness:");
        for (name, value) in w.entries() {
            println!("  len {} {}", name, ratio_string(value));
        }
    }
}

fn write_or_print(text: &str, output: Option<&str>) -> Result<(), CliFailure> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliFailure {
            code: 2,
            message: format!("cannot write {path}: {e}"),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_generated(
    kind: &str,
    text: String,
    output: Option<&str>,
    json: bool,
) -> Result<(), CliFailure> {
    if json {
        let mut doc = ReportDocument::new(command_echo(), sha_hex(text.as_bytes()));
        doc.result = json!({ "format": kind, "text": text });
        doc.print();
        Ok(())
    } else {
        write_or_print(&text, output)
    }
}

fn run(cli: Cli) -> Result<(), CliFailure> {
    match cli.command {
        Command::Check {
            file,
            max_cycles,
            json,
        } => {
            let (text, sha) = read_input(&file)?;
            let graph = parse_fatgraph(&text)?;
            let verdict = check_admissibility(&graph, max_cycles)?;
            if json {
                let mut doc = ReportDocument::new(command_echo(), sha);
                doc.result = verdict_result(&verdict);
                doc.witness = witness_value(&verdict);
                doc.print();
            } else {
                print_verdict_human(&verdict);
            }
        }
        Command::Verify {
            file,
            metric,
            max_cycles,
            json,
        } => {
            let (text, sha) = read_input(&file)?;
            let graph = parse_fatgraph(&text)?;
            let (metric_text, _) = read_input(&metric)?;
            let metric = parse_metric(&metric_text)?;
            let report = verify_metric(&graph, &metric, max_cycles)?;
            if json {
                let sums: Vec<Value> = report
                    .standard_sums
                    .iter()
                    .map(|(id, s)| json!({ "cycle": id, "sum": ratio_string(s) }))
                    .collect();
                let deviations: Vec<Value> = report
                    .deviations
                    .iter()
                    .map(|(id, d)| json!({ "cycle": id, "deviation": ratio_string(d) }))
                    .collect();
                let mut doc = ReportDocument::new(command_echo(), sha);
                doc.result = json!({
                    "pass": report.pass,
                    "common_value": report.common_value.as_ref().map(ratio_string),
                    "standard_sums": sums,
                    "deviations": deviations,
                    "non_standard_cycles": report.non_standard_count,
                    "min_non_standard_slack":
                        report.min_non_standard_slack.as_ref().map(ratio_string),
                });
                doc.diagnostics = report.violations.clone();
                doc.print();
            } else {
                println!("pass: {}", report.pass);
                match &report.common_value {
                    Some(v) => println!("common standard value: {}", ratio_string(v)),
                    None => println!("standard sums disagree"),
                }
                for (id, s) in &report.standard_sums {
                    println!("  standard cycle {id}: {}", ratio_string(s));
                }
                if let Some(slack) = &report.min_non_standard_slack {
                    println!(
                        "min slack over {} non-standard cycle(s): {}",
                        report.non_standard_count,
                        ratio_string(slack)
                    );
                }
                for v in &report.violations {
                    println!("violation: {v}");
                }
            }
        }
        Command::Minimal {
            file,
            max_cycles,
            json,
        } => {
            let (text, sha) = read_input(&file)?;
            let graph = parse_fatgraph(&text)?;
            let report = check_minimality(&graph, max_cycles)?;
            let class = match report.classification {
                MinimalityClass::Admissible => "admissible",
                MinimalityClass::MinimalNonAdmissible => "minimal-non-admissible",
                MinimalityClass::NonAdmissibleNonMinimal => "non-admissible-non-minimal",
            };
            if json {
                let deletions: Vec<Value> = report
                    .deletions
                    .iter()
                    .map(|d| {
                        json!({
                            "cycle": d.cycle_id,
                            "edges": d.description,
                            "status": status_str(d.verdict.status),
                            "margin": ratio_string(&d.verdict.margin),
                        })
                    })
                    .collect();
                let mut doc = ReportDocument::new(command_echo(), sha);
                doc.result = json!({
                    "classification": class,
                    "full": verdict_result(&report.full),
                    "deletions": deletions,
                });
                doc.print();
            } else {
                println!("classification: {class}");
                println!(
                    "full graph: {} (margin {})",
                    status_str(report.full.status),
                    ratio_string(&report.full.margin)
                );
                for d in &report.deletions {
                    println!(
                        "delete cycle {} ({}): {} (margin {})",
                        d.cycle_id,
                        d.description,
                        status_str(d.verdict.status),
                        ratio_string(&d.verdict.margin)
                    );
                }
            }
        }
        Command::Obstruction { file, json } => {
            let (text, sha) = read_input(&file)?;
            let graph = parse_fatgraph(&text)?;
            let cert = vf_obstruction(&graph)?;
            if json {
                let mut doc = ReportDocument::new(command_echo(), sha);
                match &cert {
                    Some(c) => {
                        doc.result = json!({ "status": "certificate" });
                        let faces: Vec<Value> = c
                            .face_cycles
                            .iter()
                            .map(|fc| {
                                json!({
                                    "face": fc.face,
                                    "edges": fc.edges.iter()
                                        .map(|&e| graph.edge_name(e))
                                        .collect::<Vec<_>>(),
                                    "simple": fc.simple,
                                })
                            })
                            .collect();
                        doc.certificate = Some(json!({
                            "vertices": c.vertices,
                            "faces": c.faces,
                            "mu": ratio_string(&c.mu),
                            "face_cycles": faces,
                        }));
                    }
                    None => {
                        doc.result = json!({ "status": "inconclusive" });
                        doc.diagnostics.push(
                            "no genus-zero connected intersection embedding with v <= f"
                                .to_string(),
                        );
                    }
                }
                doc.print();
            } else {
                match &cert {
                    Some(c) => {
                        println!("certificate: v = {} <= f = {}", c.vertices, c.faces);
                        println!("average face-cycle length mu = {}", ratio_string(&c.mu));
                        for fc in &c.face_cycles {
                            let edges: Vec<String> =
                                fc.edges.iter().map(|&e| graph.edge_name(e)).collect();
                            println!("  face {}: {}", fc.face, edges.join(" "));
                        }
                    }
                    None => println!("inconclusive"),
                }
            }
        }
        Command::Genus { file, json } => {
            let (text, sha) = read_input(&file)?;
            let graph = parse_fatgraph(&text)?;
            let rg = ribbon_genus(&graph)?;
            let mg = min_genus_report(&graph)?;
            if json {
                let components: Vec<Value> = rg
                    .components
                    .iter()
                    .map(|c| {
                        json!({
                            "nodes": c.nodes,
                            "edges": c.edges,
                            "chi": c.chi,
                            "boundary_count": c.boundary_count,
                            "genus": c.genus,
                        })
                    })
                    .collect();
                let mut doc = ReportDocument::new(command_echo(), sha);
                doc.result = json!({
                    "chi": rg.chi,
                    "boundary_count": rg.boundary_count,
                    "genus": rg.genus,
                    "min_genus": mg.min_genus,
                    "statement": mg.statement,
                    "components": components,
                });
                doc.print();
            } else {
                println!("chi: {}", rg.chi);
                println!("boundary walks: {}", rg.boundary_count);
                println!("filling genus: {}", rg.genus);
                println!("{}", mg.statement);
            }
        }
        Command::Gen { family } => match family {
            GenFamily::Wheel { n, output, json } => {
                let g = wheel_family(n)?;
                emit_generated("fatgraph", serialize_fatgraph(&g), output.as_deref(), json)?;
            }
            GenFamily::ExampleG8 { output, json } => {
                let g = example_g8();
                emit_generated("fatgraph", serialize_fatgraph(&g), output.as_deref(), json)?;
            }
            GenFamily::TrivalentGirth {
                girth,
                output,
                json,
            } => {
                let g = trivalent_girth(girth)?;
                emit_generated(
                    "plain-graph",
                    serialize_plain_graph(&g),
                    output.as_deref(),
                    json,
                )?;
            }
            GenFamily::UnitrivalentGirth {
                girth,
                output,
                json,
            } => {
                let g = unitrivalent_girth(girth)?;
                emit_generated(
                    "plain-graph",
                    serialize_plain_graph(&g),
                    output.as_deref(),
                    json,
                )?;
            }
        },
        Command::Girth { file, json } => {
            let (text, sha) = read_input(&file)?;
            let graph = parse_plain_graph(&text)?;
            let g = girth(&graph);
            if json {
                let mut doc = ReportDocument::new(command_echo(), sha);
                doc.result = match g {
                    Girth::Finite(k) => json!({ "girth": k }),
                    Girth::Infinite => json!({ "girth": "infinity" }),
                };
                doc.print();
            } else {
                match g {
                    Girth::Finite(k) => println!("girth: {k}"),
                    Girth::Infinite => println!("girth: infinity"),
                }
            }
        }
        Command::Pants { which } => match which {
            PantsCmd::Height {
                waist,
                k,
                lem2,
                json,
            } => {
                let (result, human) = if lem2 {
                    let m = hyperbolic::pants_height_uniform(waist)?;
                    (
                        json!({ "waist": waist, "variant": "uniform", "height": m }),
                        format!("height: {m}"),
                    )
                } else {
                    let k = k.ok_or_else(|| {
                        CliFailure::from(Error::BadParameter(
                            "pants height needs --k (or --lem2)".into(),
                        ))
                    })?;
                    let spec = hyperbolic::pants_spec(waist, k)?;
                    (
                        json!({
                            "waist": waist,
                            "multiplier": k,
                            "l_prime": spec.l_prime,
                            "height": spec.height,
                        }),
                        format!("height: {}", spec.height),
                    )
                };
                emit_value(result, human, json);
            }
            PantsCmd::Distance { l, json } => {
                let d = hyperbolic::pants_boundary_distance(l)?;
                emit_value(
                    json!({ "boundary_length": l, "distance": d }),
                    format!("distance: {d}"),
                    json,
                );
            }
        },
        Command::Cap { which } => match which {
            CapCmd::Gap { l, json } => {
                let a = hyperbolic::capping_gap(l)?;
                emit_value(json!({ "l": l, "gap": a }), format!("gap: {a}"), json);
            }
            CapCmd::Girth { l, json } => {
                let a = hyperbolic::capping_gap(l)?;
                let t = hyperbolic::capping_girth(l)?;
                emit_value(
                    json!({ "l": l, "gap": a, "girth": t }),
                    format!("girth: {t}"),
                    json,
                );
            }
            CapCmd::Plan { l, json } => {
                let lengths: Result<Vec<f64>, _> =
                    l.split(',').map(|s| s.trim().parse::<f64>()).collect();
                let lengths = lengths.map_err(|_| {
                    CliFailure::from(Error::BadParameter(format!(
                        "--l expects comma-separated numbers, got {l:?}"
                    )))
                })?;
                let plan = hyperbolic::cap_plan(&lengths)?;
                let entries: Vec<Value> = plan
                    .boundaries
                    .iter()
                    .map(|b| {
                        json!({
                            "boundary_length": b.boundary_length,
                            "gap": b.gap,
                            "girth_required": b.girth_required,
                            "girth_used": b.girth_used,
                            "graph_vertices": b.graph_vertices,
                            "terminal_pants": [
                                b.terminal_pants.0,
                                b.terminal_pants.1,
                                b.terminal_pants.2
                            ],
                            "interior_pants": [
                                b.interior_pants.0,
                                b.interior_pants.1,
                                b.interior_pants.2
                            ],
                            "interior_pants_count": b.interior_pants_count,
                            "seam_bound_equal": b.seam_bound_equal,
                            "seam_bound_mixed": b.seam_bound_mixed,
                        })
                    })
                    .collect();
                if json {
                    let mut doc = ReportDocument::new(command_echo(), sha_hex(l.as_bytes()));
                    doc.result = json!({ "boundaries": entries });
                    doc.print();
                } else {
                    for b in &plan.boundaries {
                        println!(
                            "boundary {}: gap {}, girth {} (using {}), graph with {} vertices, \
                             pants {:?} at the terminal edge and {} x {:?}",
                            b.boundary_length,
                            b.gap,
                            b.girth_required,
                            b.girth_used,
                            b.graph_vertices,
                            b.terminal_pants,
                            b.interior_pants_count,
                            b.interior_pants
                        );
                    }
                }
            }
        },
        Command::Quasi { which } => match which {
            QuasiCmd::Constant { alpha, json } => {
                let k = hyperbolic::quasi_constant(alpha)?;
                emit_value(json!({ "alpha": alpha, "k": k }), format!("k: {k}"), json);
            }
        },
    }
    Ok(())
}

fn emit_value(result: Value, human: String, json: bool) {
    if json {
        let mut doc = ReportDocument::new(command_echo(), sha_hex(command_echo().as_bytes()));
        doc.result = result;
        doc.print();
    } else {
        println!("{human}");
    }
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes, as pipeline tools should.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
