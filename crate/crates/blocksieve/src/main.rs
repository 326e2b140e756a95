use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use blocksieve::formats::GraphDocument;
use blocksieve::render::{self, VerifyReport};
use blocksieve::{load_graph, mu_json, read_file, write_file, AnchorSpec, Error};
use blocksieve_core::anchored::{gamma_detailed, validate_anchored};
use blocksieve_core::magic::{
    gamma_transport, is_quantum_iso, noncommutativity, validate_mu, verify_transport,
    walk_compatible, DEFAULT_TOLERANCE,
};
use blocksieve_core::sieve::{qi_sieve_with, SieveConfig, SieveReport, Verdict};
use clap::{Parser, Subcommand, ValueEnum};

/// Block structure and quantum-isomorphism tools for small graphs.
///
/// Graphs are read from `.g6` (graph6), `.json` or edge-list files, or inline
/// as `g6:<string>`.
#[derive(Parser)]
#[command(name = "blocksieve", version)]
struct Cli {
    /// Numerical tolerance for magic-unitary checks.
    #[arg(long, global = true, env = "BLOCKSIEVE_TOLERANCE", default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Write the primary output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Blocks, cut vertices, block tree, block graph and centre of a graph.
    Blocks { input: String },
    /// Three-valued quantum-isomorphism sieve. Exit code 0 = ISO,
    /// 1 = NOT_QI, 2 = UNKNOWN, 10 or more = error.
    Sieve {
        #[arg(required_unless_present = "batch")]
        g: Option<String>,
        #[arg(required_unless_present = "batch")]
        h: Option<String>,
        /// Manifest with one `G H` pair per line; paths are relative to it.
        /// The exit code is the worst verdict over all pairs.
        #[arg(long, conflicts_with_all = ["g", "h"])]
        batch: Option<PathBuf>,
        /// Parallel workers for batch mode.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Closed-walk profile length (defaults to the vertex count).
        #[arg(long)]
        max_walk: Option<usize>,
    },
    /// Apply the decomposition Γ to an anchored graph.
    Gamma {
        input: String,
        /// `cut:<id>`, `block:<id,...>` or `zbar`.
        #[arg(long)]
        anchor: AnchorSpec,
    },
    /// Verify a magic unitary (JSON) as a quantum isomorphism from G to H.
    /// Exit code 0 when every check passes, 1 otherwise.
    VerifyMu { g: String, h: String, mu: PathBuf },
    /// Transport a quantum isomorphism of anchored graphs through Γ; the
    /// result is re-verified before it is written.
    TransportMu {
        g: String,
        h: String,
        mu: PathBuf,
        #[arg(long)]
        anchor: AnchorSpec,
        /// Anchor in H; defaults to `--anchor`.
        #[arg(long)]
        anchor_h: Option<AnchorSpec>,
    },
}

fn emit(cli: &Cli, text: &str) -> Result<(), Error> {
    match &cli.out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            let _ = std::io::stdout().flush();
            Ok(())
        }
    }
}

fn json_text(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("reports serialise") + "\n"
}

fn no_dot(cli: &Cli) -> Result<(), Error> {
    if cli.format == Format::Dot {
        return Err(Error::Usage(
            "DOT output is only available for `blocks`".into(),
        ));
    }
    Ok(())
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Iso => 0,
        Verdict::NotQi => 1,
        Verdict::Unknown => 2,
    }
}

fn sieve_pair(
    g: &str,
    h: &str,
    cfg: SieveConfig,
) -> Result<(GraphDocument, GraphDocument, SieveReport), Error> {
    let (dg, dh) = (load_graph(g)?, load_graph(h)?);
    let report = qi_sieve_with(&dg.graph, &dh.graph, cfg);
    Ok((dg, dh, report))
}

fn render_report(cli: &Cli, r: &SieveReport) -> String {
    match cli.format {
        Format::Json => json_text(&render::sieve_json(r)),
        _ => render::sieve_human(r),
    }
}

fn manifest_pairs(path: &Path) -> Result<Vec<(String, String)>, Error> {
    let base = path.parent().unwrap_or(Path::new("."));
    let resolve = |s: &str| {
        if s.starts_with("g6:") || Path::new(s).is_absolute() {
            s.to_string()
        } else {
            base.join(s).to_string_lossy().into_owned()
        }
    };
    let mut out = Vec::new();
    for (i, line) in read_file(path)?.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [g, h] = toks[..] else {
            return Err(Error::Usage(format!(
                "{}:{}: expected two graphs per line",
                path.display(),
                i + 1
            )));
        };
        out.push((resolve(g), resolve(h)));
    }
    Ok(out)
}

fn run_batch(cli: &Cli, manifest: &Path, jobs: usize, cfg: SieveConfig) -> Result<u8, Error> {
    let pairs = manifest_pairs(manifest)?;
    let results: Vec<Mutex<Option<Result<SieveReport, Error>>>> =
        pairs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..jobs.max(1) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some((g, h)) = pairs.get(k) else { break };
                let r = sieve_pair(g, h, cfg).map(|(_, _, r)| r);
                *results[k].lock().unwrap() = Some(r);
            });
        }
    });
    let mut worst = 0u8;
    let mut first_error = None;
    let mut text = String::new();
    let mut items = Vec::new();
    for ((g, h), slot) in pairs.iter().zip(results) {
        match slot.into_inner().unwrap().expect("every pair is processed") {
            Ok(r) => {
                worst = worst.max(verdict_code(r.verdict));
                match cli.format {
                    Format::Json => items.push(
                        serde_json::json!({"g": g, "h": h, "report": render::sieve_json(&r)}),
                    ),
                    _ => text.push_str(&format!("== {g} vs {h}\n{}", render::sieve_human(&r))),
                }
            }
            Err(e) => {
                match cli.format {
                    Format::Json => {
                        items.push(serde_json::json!({"g": g, "h": h, "error": e.to_string()}))
                    }
                    _ => text.push_str(&format!("== {g} vs {h}\nerror: {e}\n")),
                }
                first_error.get_or_insert(e);
            }
        }
    }
    if cli.format == Format::Json {
        text = json_text(&serde_json::Value::Array(items));
    }
    emit(cli, &text)?;
    match first_error {
        Some(e) => Err(e),
        None => Ok(worst),
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    if cli.tolerance.is_nan() || cli.tolerance <= 0.0 {
        return Err(Error::Usage("tolerance must be positive".into()));
    }
    match &cli.command {
        Command::Blocks { input } => {
            let g = load_graph(input)?.graph;
            let text = match cli.format {
                Format::Human => render::blocks_human(&g),
                Format::Json => json_text(&render::blocks_json(&g)),
                Format::Dot => render::block_tree_dot(&g),
            };
            emit(cli, &text)?;
            Ok(0)
        }
        Command::Sieve {
            g,
            h,
            batch,
            jobs,
            max_walk,
        } => {
            no_dot(cli)?;
            let cfg = SieveConfig {
                max_walk_len: *max_walk,
            };
            if let Some(manifest) = batch {
                return run_batch(cli, manifest, *jobs, cfg);
            }
            let (g, h) = (g.as_deref().unwrap(), h.as_deref().unwrap());
            let (_, _, report) = sieve_pair(g, h, cfg)?;
            emit(cli, &render_report(cli, &report))?;
            Ok(verdict_code(report.verdict))
        }
        Command::Gamma { input, anchor } => {
            no_dot(cli)?;
            let g = load_graph(input)?.graph;
            let ag = validate_anchored(&g, &anchor.resolve(&g)?)?;
            let out = gamma_detailed(&ag)?;
            let text = match cli.format {
                Format::Json => json_text(&render::gamma_json(&out)),
                _ => render::gamma_human(&out),
            };
            emit(cli, &text)?;
            Ok(0)
        }
        Command::VerifyMu { g, h, mu } => {
            no_dot(cli)?;
            let (g, h) = (load_graph(g)?.graph, load_graph(h)?.graph);
            let u = load_mu(mu)?.with_tolerance(cli.tolerance);
            let qi = is_quantum_iso(&u, &g, &h)?;
            let report = VerifyReport {
                mu: validate_mu(&u),
                qi,
                noncommutativity: noncommutativity(&u),
                walk_compatible: if qi.passes {
                    Some(walk_compatible(&u, &g, &h)?)
                } else {
                    None
                },
            };
            let text = match cli.format {
                Format::Json => json_text(&render::verify_json(&report)),
                _ => render::verify_human(&report),
            };
            emit(cli, &text)?;
            Ok(if report.passes() { 0 } else { 1 })
        }
        Command::TransportMu {
            g,
            h,
            mu,
            anchor,
            anchor_h,
        } => {
            no_dot(cli)?;
            let (g, h) = (load_graph(g)?.graph, load_graph(h)?.graph);
            let u = load_mu(mu)?.with_tolerance(cli.tolerance);
            let ag = validate_anchored(&g, &anchor.resolve(&g)?)?;
            let ah = validate_anchored(&h, &anchor_h.as_ref().unwrap_or(anchor).resolve(&h)?)?;
            let t = gamma_transport(&u, &ag, &ah)?;
            let text = mu_json::write_mu(&t);
            let reread = mu_json::parse_mu(&text)
                .map_err(|source| Error::Parse {
                    origin: "transported unitary".into(),
                    source,
                })?
                .with_tolerance(cli.tolerance);
            let check = verify_transport(&reread, &ag, &ah)?;
            let summary = match cli.format {
                Format::Json => json_text(&render::transport_json(&check)),
                _ => render::transport_human(&check),
            };
            eprint!("{summary}");
            if !check.passes() {
                return Err(Error::Verification(
                    "transported unitary failed re-verification".into(),
                ));
            }
            emit(cli, &(text + "\n"))?;
            Ok(0)
        }
    }
}

fn load_mu(path: &Path) -> Result<blocksieve_core::magic::MagicUnitary, Error> {
    mu_json::parse_mu(&read_file(path)?).map_err(|source| Error::Parse {
        origin: path.display().to_string(),
        source,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
