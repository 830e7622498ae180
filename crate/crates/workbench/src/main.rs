use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pfw::construct::{construct, Op};
use pfw::generate::{generate, GenKind, GenParams};
use pfw::render::render_dot;
use pfw::schema::{parse_str, to_string, Instance, Object};
use pfw::suite::{run_suite, SuiteConfig, Verdict};
use pfw_core::Caps;

const PASS: u8 = 0;
const CHECK_FAILED: u8 = 1;
const USAGE: u8 = 2;

/// Finite frames, Frith frames, Pervin spaces and quasi-uniformities.
#[derive(Parser)]
#[command(name = "pfw", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a document and print a short summary.
    Validate { file: PathBuf },
    /// Run one construction; trailing arguments after the documents are element names (filter).
    Construct {
        #[arg(value_enum)]
        op: Op,
        /// Document paths, followed by element names where the operation takes them.
        #[arg(required = true)]
        args: Vec<String>,
    },
    /// Run the registered checks and print one JSON report per line.
    Check {
        /// Substring of the check ids to run.
        #[arg(long, default_value = "")]
        filter: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_ji: usize,
        #[arg(long, default_value_t = 3)]
        max_universe: usize,
        /// Only print failing reports.
        #[arg(long)]
        failures_only: bool,
    },
    /// Generate seeded or exhaustive instances, one document per line.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        points: usize,
        #[arg(long, default_value_t = 3)]
        max_ji: usize,
        #[arg(long, default_value_t = 3)]
        max_universe: usize,
    },
    /// Draw the Hasse diagram of a frame-like document.
    Render {
        #[arg(long)]
        dot: PathBuf,
    },
}

fn caps() -> Result<Caps, String> {
    match std::env::var("PFW_CAPS") {
        Ok(spec) => Caps::default().with_overrides(&spec).map_err(|e| format!("PFW_CAPS: {e}")),
        Err(std::env::VarError::NotPresent) => Ok(Caps::default()),
        Err(e) => Err(format!("PFW_CAPS: {e}")),
    }
}

fn read(path: &Path) -> Result<Instance, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn summary(inst: &Instance) -> String {
    let what = match &inst.object {
        Object::Frame(l) => format!("frame with {} elements, {} join-irreducibles", l.len(), l.jir().size()),
        Object::Frith(f) => format!("Frith frame with {} elements, |S| = {}", f.frame().len(), f.s().len()),
        Object::Pervin(x) => format!("Pervin space on {} points, {} sets", x.size(), x.lattice().len()),
        Object::Quni(q) => format!("entourage basis of {} on a {}-element frame", q.basis().len(), q.frame().len()),
        Object::FrameMorphism(h) => format!("frame morphism {} -> {} elements", h.dom().len(), h.cod().len()),
        Object::FrithMorphism(h) => {
            format!("Frith morphism {} -> {} elements", h.dom().frame().len(), h.cod().frame().len())
        }
        Object::PervinMorphism(f) => format!("Pervin map {} -> {} points", f.dom().size(), f.cod().size()),
    };
    format!("ok: {} ({what})", inst.name)
}

fn emit(line: &str) -> Result<(), String> {
    let mut out = io::stdout().lock();
    writeln!(out, "{line}").map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<u8, String> {
    let caps = caps()?;
    match cli.command {
        Command::Validate { file } => {
            emit(&summary(&read(&file)?))?;
            Ok(PASS)
        }
        Command::Construct { op, args } => {
            let (files, rest) = args.split_at(op.arity().min(args.len()));
            let inputs = files.iter().map(|f| read(Path::new(f))).collect::<Result<Vec<_>, _>>()?;
            let v = construct(op, &inputs, rest, &caps).map_err(|e| e.to_string())?;
            emit(&serde_json::to_string_pretty(&v).map_err(|e| e.to_string())?)?;
            Ok(PASS)
        }
        Command::Check { filter, seed, max_ji, max_universe, failures_only } => {
            Caps::check("join-irreducibles", max_ji, caps.max_ji).map_err(|e| e.to_string())?;
            Caps::check("universe", max_universe, caps.max_universe).map_err(|e| e.to_string())?;
            let cfg = SuiteConfig { seed, max_ji, max_universe, caps, ..SuiteConfig::default() };
            let mut out = BufWriter::new(io::stdout().lock());
            let mut io_err = None;
            let s = run_suite(&cfg, &filter, &mut |r| {
                if failures_only && r.verdict != Verdict::Fail {
                    return;
                }
                let line = serde_json::to_string(&r).expect("reports serialize");
                if let Err(e) = writeln!(out, "{line}").and_then(|_| out.flush()) {
                    io_err.get_or_insert(e);
                }
            });
            if let Some(e) = io_err {
                return Err(e.to_string());
            }
            eprintln!("{} passed, {} failed, {} skipped", s.pass, s.fail, s.skipped);
            Ok(if s.fail > 0 { CHECK_FAILED } else { PASS })
        }
        Command::Gen { kind, seed, points, max_ji, max_universe } => {
            let p = GenParams { seed, points, max_ji, max_universe };
            for inst in generate(kind, p, &caps).map_err(|e| e.to_string())? {
                emit(&to_string(&inst))?;
            }
            Ok(PASS)
        }
        Command::Render { dot } => {
            let inst = read(&dot)?;
            let text = render_dot(&inst).map_err(|e| e.to_string())?;
            io::stdout().lock().write_all(text.as_bytes()).map_err(|e| e.to_string())?;
            Ok(PASS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { PASS });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("pfw: {msg}");
            ExitCode::from(USAGE)
        }
    }
}
