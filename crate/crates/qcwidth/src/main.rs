use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use qcwidth::bench::{bench_dir, render, TableFormat};
use qcwidth::formats::{parse_edge_list, read_text, write_circuit, write_diagram_json, write_text, OrderingJson};
use qcwidth::pipeline::{optimize, optimize_diagram_input, Method, Optimized, Options, Product, Solver};
use qcwidth::verify::{read_input, verify_inputs, Input, DEFAULT_CAP};
use qcwidth::{Error, Result};
use qcwidth_core::layout::{interval_layout, solve_cutwidth, solve_pathwidth, Constraints, WidthKind};
use qcwidth_core::oracle::brute_width;
use qcwidth_core::oracle::random::{random_graph, rng};
use qcwidth_core::Budget;

const DEFAULT_SEED: u64 = 2024;

#[derive(Parser)]
#[command(name = "qcwidth", version, about = "Reduce the qubit count of Clifford+T circuits")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Cutwidth,
    Pathwidth,
}

#[derive(Subcommand)]
enum Cmd {
    /// Optimize one circuit (.qc or JSON) or diagram (JSON).
    Optimize {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "degadget")]
        method: Method,
        #[arg(long, value_enum, default_value = "exact")]
        solver: Solver,
        /// Time limit for each exact search.
        #[arg(long)]
        budget_ms: Option<u64>,
        /// Largest conflict graph solved exactly.
        #[arg(long, default_value_t = qcwidth_core::degadget::EXACT_FVS_CAP)]
        fvs_cap: usize,
        /// Largest layout instance solved exactly.
        #[arg(long, default_value_t = qcwidth::pipeline::EXACT_LAYOUT_CAP)]
        layout_cap: usize,
        /// Output circuit; `.json` writes JSON, anything else `.qc`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report file; printed to stdout when absent.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Check that two circuits or diagrams implement the same map.
    Verify {
        a: PathBuf,
        b: PathBuf,
        /// Widest register simulated.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        tensor_cap: usize,
    },
    /// Table of qubit counts for every circuit file in a directory.
    Bench {
        dir: PathBuf,
        #[arg(long, value_enum, default_value = "tsv")]
        format: TableFormat,
        #[arg(long, value_enum, default_value = "exact")]
        solver: Solver,
        #[arg(long)]
        budget_ms: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Order the vertices of an edge-list graph.
    Layout {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "pathwidth")]
        kind: Kind,
        #[arg(long, value_enum, default_value = "exact")]
        solver: Solver,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the exact layout solvers with brute force on random graphs
    /// seeded by QCWIDTH_SEED.
    Oracle {
        #[arg(long, default_value_t = 4)]
        min: usize,
        #[arg(long, default_value_t = 8)]
        max: usize,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("qcwidth: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_text(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cmd: Cmd) -> Result<u8> {
    match cmd {
        Cmd::Optimize {
            input,
            method,
            solver,
            budget_ms,
            fvs_cap,
            layout_cap,
            out,
            stats,
        } => {
            let opts = Options {
                method,
                solver,
                budget_ms,
                fvs_cap,
                layout_cap,
            };
            let name = input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let t = Instant::now();
            let parsed = read_input(&input)?;
            let parse_ms = t.elapsed().as_secs_f64() * 1e3;
            let Optimized { product, mut report } = match &parsed {
                Input::Circuit(c) => optimize(&name, c, &opts)?,
                Input::Diagram(d) => optimize_diagram_input(&name, d, &opts)?,
            };
            report.timings.parse_ms = parse_ms;
            for w in &report.warnings {
                eprintln!("qcwidth: warning: {w}");
            }
            if let Some(out) = &out {
                match &product {
                    Product::Circuit(c) => write_circuit(out, c)?,
                    Product::Diagram(d) => write_text(out, &write_diagram_json(d))?,
                }
            }
            let mut text = serde_json::to_string_pretty(&report)?;
            text.push('\n');
            emit(stats.as_deref(), &text)?;
            Ok(if report.budget_exhausted { 5 } else { 0 })
        }
        Cmd::Verify { a, b, tensor_cap } => {
            let v = verify_inputs(&read_input(&a)?, &read_input(&b)?, tensor_cap)?;
            if v.equivalent {
                println!("equivalent (max deviation {:.3e}, {} branches)", v.deviation, v.branches);
                Ok(0)
            } else {
                Err(Error::Inequivalent { deviation: v.deviation })
            }
        }
        Cmd::Bench {
            dir,
            format,
            solver,
            budget_ms,
            out,
        } => {
            let opts = Options {
                method: Method::Both,
                solver,
                budget_ms,
                ..Options::default()
            };
            let rows = bench_dir(&dir, &opts)?;
            for r in &rows {
                for e in &r.errors {
                    eprintln!("qcwidth: {}: {e}", r.circuit);
                }
            }
            emit(out.as_deref(), &render(&rows, format))?;
            Ok(0)
        }
        Cmd::Layout { graph, kind, solver, out } => {
            let g = parse_edge_list(&read_text(&graph)?)?;
            let exact = solver == Solver::Exact;
            let s = match kind {
                Kind::Cutwidth => solve_cutwidth(&g, None, None, exact, &Budget::unlimited())?,
                Kind::Pathwidth => solve_pathwidth(&g, &[], &[], exact, &Budget::unlimited())?,
            };
            let (track, _) = interval_layout(&g, &s.ordering);
            let o = OrderingJson {
                order: s.ordering.order().to_vec(),
                width: s.width,
                tracks: track.into_iter().enumerate().collect(),
            };
            let mut text = serde_json::to_string(&o)?;
            text.push('\n');
            emit(out.as_deref(), &text)?;
            Ok(0)
        }
        Cmd::Oracle { min, max, count } => {
            let seed = match std::env::var("QCWIDTH_SEED") {
                Ok(s) => s
                    .trim()
                    .parse()
                    .map_err(|_| Error::Usage(format!("QCWIDTH_SEED `{s}` is not an integer")))?,
                Err(_) => DEFAULT_SEED,
            };
            let mut r = rng(seed);
            let mut bad = 0;
            for n in min..=max {
                let mut mismatches = 0;
                for _ in 0..count {
                    let g = random_graph(&mut r, n, 0.5);
                    for kind in [WidthKind::Cutwidth, WidthKind::Pathwidth] {
                        let c = Constraints::endpoints(None, None);
                        let want = brute_width(&g, kind, &c)?;
                        let got = match kind {
                            WidthKind::Cutwidth => solve_cutwidth(&g, None, None, true, &Budget::unlimited())?,
                            WidthKind::Pathwidth => solve_pathwidth(&g, &[], &[], true, &Budget::unlimited())?,
                        };
                        if got.width != want {
                            mismatches += 1;
                        }
                    }
                }
                println!("seed {seed} |V|={n}: {count} graphs, {mismatches} mismatches");
                bad += mismatches;
            }
            Ok(if bad == 0 { 0 } else { 3 })
        }
    }
}
