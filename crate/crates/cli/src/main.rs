mod commands;
mod config;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use carlitz_core::cache::IrreducibleCache;
use carlitz_core::check::Verdict;
use carlitz_core::{Error, ErrorKind};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use commands::{Ctx, VerifyArgs, Which};
use config::{field_for, parse_count, RunConfig};
use report::{default_cache_dir, CacheInfo, Outcome, Report, ResultCache, SCHEMA};

#[derive(Parser, Debug)]
#[command(name = "carlitz", version, about = "Stickelberger series, Goss zeta values and Carlitz curves over F_q[t]")]
struct Cli {
    /// Cache directory; defaults to $CARLITZ_CACHE_DIR, then the XDG cache dir.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    /// Also write the report here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Abort when an enumeration would exceed this many elements.
    #[arg(long, global = true, default_value = "2^24", value_parser = parse_count)]
    ceiling: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Truncated Stickelberger series and its character components.
    Theta {
        #[arg(long)]
        q: u64,
        /// Monic irreducible conductor, e.g. "t^2+t+1".
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 0)]
        level: usize,
        #[arg(long = "deg", default_value_t = 10)]
        degree: usize,
        #[arg(long, default_value_t = 12)]
        prec: u32,
    },
    /// Power sums and the polynomials Z(X, j).
    Zeta {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 10)]
        jmax: u64,
        /// Write the S_n(j) table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run identity checks.
    Verify {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: String,
        #[arg(long, value_enum, default_value = "all")]
        which: Which,
        #[arg(long)]
        j: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        i: Option<i64>,
        #[arg(long, default_value_t = 10)]
        jmax: u64,
        /// nu-adic precision: compare mod P^m.
        #[arg(long, default_value_t = 8)]
        m: usize,
        #[arg(long = "deg")]
        degree: Option<usize>,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        prec: u32,
        #[arg(long, default_value = "2^26", value_parser = parse_count)]
        budget: u64,
    },
    /// Zeta function of the Carlitz curve attached to P.
    Curve {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: String,
        #[arg(long, default_value = "2^26", value_parser = parse_count)]
        budget: u64,
        #[arg(long, default_value_t = 12)]
        prec: u32,
        /// Directory of golden files; compared when present, written when absent.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Verification => 1,
        ErrorKind::Resource => 3,
        _ => 2,
    }
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Fail => 1,
        _ => 0,
    }
}

/// Returns `(command name, inputs, golden dir)` after validating arguments.
fn describe(cli: &Cli) -> Result<(&'static str, RunConfig, Option<PathBuf>), Error> {
    let c = cli.ceiling;
    Ok(match &cli.cmd {
        Cmd::Theta { q, p, level, degree, prec } => {
            let f = field_for(*q)?;
            let (mut cfg, _) = RunConfig::new(*q, c)?.with_conductor(&f, p)?;
            cfg.level = Some(*level);
            cfg.degree = Some(*degree);
            cfg.m = Some(*prec);
            ("theta", cfg, None)
        }
        Cmd::Zeta { q, jmax, .. } => {
            let mut cfg = RunConfig::new(*q, c)?;
            cfg.degree = Some(*jmax as usize);
            ("zeta", cfg, None)
        }
        Cmd::Verify { q, p, m, prec, budget, .. } => {
            let f = field_for(*q)?;
            let (mut cfg, _) = RunConfig::new(*q, c)?.with_conductor(&f, p)?;
            cfg.nu_precision = Some(*m);
            cfg.m = Some(*prec);
            cfg.budget = Some(*budget);
            ("verify", cfg, None)
        }
        Cmd::Curve { q, p, budget, prec, golden } => {
            let f = field_for(*q)?;
            let (mut cfg, _) = RunConfig::new(*q, c)?.with_conductor(&f, p)?;
            cfg.budget = Some(*budget);
            cfg.m = Some(*prec);
            ("curve", cfg, golden.clone())
        }
    })
}

/// Everything that changes the result, beyond the echoed config.
fn extra_inputs(cmd: &Cmd) -> Value {
    match cmd {
        Cmd::Verify { which, j, i, jmax, degree, samples, seed, .. } => json!({
            "which": format!("{which:?}").to_lowercase(),
            "j": j, "i": i, "jmax": jmax, "deg": degree, "samples": samples, "seed": seed,
        }),
        Cmd::Zeta { csv, .. } => json!({"csv": csv.is_some()}),
        _ => json!({}),
    }
}

fn compute(cli: &Cli, ctx: &mut Ctx) -> Result<Outcome, Error> {
    match &cli.cmd {
        Cmd::Theta { q, p, level, degree, prec } => {
            let f = field_for(*q)?;
            let place = config::place_for(&f, p)?;
            commands::theta(ctx, &f, &place, *level, *degree, *prec)
        }
        Cmd::Zeta { q, jmax, csv } => commands::zeta(&field_for(*q)?, *jmax, csv.as_deref()),
        Cmd::Verify { q, p, which, j, i, jmax, m, degree, samples, seed, prec, budget } => {
            let f = field_for(*q)?;
            let place = config::place_for(&f, p)?;
            let args = VerifyArgs {
                which: *which,
                j: *j,
                i: *i,
                jmax: *jmax,
                m: *m,
                degree: *degree,
                samples: *samples,
                seed: *seed,
                prec: *prec,
                budget: *budget,
            };
            commands::verify(ctx, &f, &place, &args)
        }
        Cmd::Curve { q, p, budget, prec, .. } => {
            let f = field_for(*q)?;
            let place = config::place_for(&f, p)?;
            commands::curve(ctx, &f, &place, *prec, *budget)
        }
    }
}

fn golden_status(dir: &Path, cfg: &RunConfig, outcome: &Outcome) -> Result<Value, Error> {
    let conductor = cfg.conductor.clone().unwrap_or_default();
    let slug: String = conductor.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    let path = dir.join(format!("{}_{slug}", cfg.q)).join("curve.json");
    let payload = commands::golden_payload(cfg.q, &conductor, &outcome.results);
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
    if path.exists() {
        let stored: Value = serde_json::from_slice(&fs::read(&path).map_err(io)?)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let same = stored == payload;
        return Ok(json!({"path": path, "status": if same { "match" } else { "mismatch" }}));
    }
    if outcome.verdict != Verdict::Pass {
        return Ok(json!({"path": path, "status": "not-written"}));
    }
    fs::create_dir_all(path.parent().expect("golden parent")).map_err(io)?;
    let body = serde_json::to_string_pretty(&payload).expect("json");
    fs::write(&path, body + "\n").map_err(io)?;
    Ok(json!({"path": path, "status": "written"}))
}

fn run(cli: Cli) -> Result<u8, Error> {
    let started = Instant::now();
    let (command, cfg, golden) = describe(&cli)?;
    let mut inputs = serde_json::to_value(&cfg).expect("json");
    if let (Value::Object(m), Value::Object(extra)) = (&mut inputs, extra_inputs(&cli.cmd)) {
        m.extend(extra);
    }
    let dir = if cli.no_cache { None } else { cli.cache_dir.clone().or_else(default_cache_dir) };
    let cache = ResultCache::new(dir.clone());
    let key = ResultCache::key(command, &inputs);
    let mut ctx = Ctx { ceiling: cli.ceiling, irreducibles: dir.as_ref().map(IrreducibleCache::new) };

    // CSV output is a side effect, so such runs are recomputed.
    let cacheable = !matches!(&cli.cmd, Cmd::Zeta { csv: Some(_), .. });
    let (outcome, status) = match cache.dir().and(if cacheable { cache.load(&key) } else { None }) {
        Some(o) => (o, "hit"),
        None => {
            let o = compute(&cli, &mut ctx)?;
            if cacheable {
                cache.store(&key, &o);
            }
            (o, if cache.dir().is_some() { "miss" } else { "disabled" })
        }
    };
    let mut outcome = outcome;
    let mut verdict = outcome.verdict;
    if let Some(g) = golden {
        let gs = golden_status(&g, &cfg, &outcome)?;
        if gs["status"] == "mismatch" {
            verdict = Verdict::Fail;
        }
        outcome.results["golden"] = gs;
    }
    let (irreducible_hits, irreducible_misses) =
        ctx.irreducibles.as_ref().map(|c| (c.hits(), c.misses())).unwrap_or((0, 0));
    let report = Report {
        schema: SCHEMA,
        tool: "carlitz",
        version: env!("CARGO_PKG_VERSION"),
        command: command.to_string(),
        inputs,
        results: outcome.results,
        verdict,
        cache: CacheInfo {
            status,
            key: cache.dir().map(|_| key),
            irreducible_hits,
            irreducible_misses,
        },
        timing_ms: started.elapsed().as_millis() as u64,
    };
    let body = serde_json::to_string_pretty(&report).expect("json");
    if let Some(out) = &cli.out {
        fs::write(out, format!("{body}\n")).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
    }
    println!("{body}");
    Ok(verdict_code(verdict))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(e.kind()))
        }
    }
}
