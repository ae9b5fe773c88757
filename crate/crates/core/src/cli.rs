//! The `tgwa` command line: subcommands over one session config.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bm::{bm_presentation, torus_decompose, BmPresentation, TorusDecomposition};
use crate::config::{SessionAlgebra, SessionConfig};
use crate::dot::{diagram_edges, emit_dot};
use crate::error::{Error, Result};
use crate::module::{ModuleTable, Support, WeightModuleSpec};
use crate::orbit::{g_m, g_tilde, orbit_report, WeightPoint};
use crate::tgwa::QwaAlgebra;
use crate::verify::{default_npib_radius, verify, VerificationReport, VerifyOptions};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;
pub const EXIT_MATH: i32 = 4;

/// Format tag of `build` output.
pub const MODULE_FORMAT: &str = "tgwa-module-1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "tgwa", version, about = "Simple weight modules over twisted generalized Weyl algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Session config (TOML), or a module written by `build`.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Built-in module used instead of a config: cyclic_n0 or sign_flip.
    #[arg(long, global = true, value_name = "NAME")]
    pub fixture: Option<String>,
    /// Window bound for infinite supports (overrides the config).
    #[arg(long, global = true, value_name = "B")]
    pub window: Option<i64>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// γ-sequence, break exponents and isotropy lattice of the point.
    Orbit,
    /// Ray intervals of G̃_m.
    Gtilde,
    /// Basis of the group G_m.
    Gm,
    /// Commutation scalars of B_m and the torus decomposition.
    Bm,
    /// Family of the point.
    Classify,
    /// Tabulated module as JSON.
    Build,
    /// Full verifier report on the session module.
    Verify,
    /// Weight diagram.
    Diagram,
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_)
        | Error::Parse(_)
        | Error::WindowRequired
        | Error::CaseMismatch(_)
        | Error::UnsupportedParameter(_) => EXIT_CONFIG,
        _ => EXIT_MATH,
    }
}

/// Output of `build`: the session it came from plus the action tabulated
/// on a window wide enough for `verify` at the session window.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BuiltModule {
    pub format: String,
    pub session: SessionConfig,
    pub verify_window: Option<i64>,
    pub table: ModuleTable,
}

#[derive(Serialize)]
struct BmOutput {
    presentation: BmPresentation,
    torus: TorusDecomposition,
}

#[derive(Serialize)]
struct DiagramJson {
    nodes: Vec<Vec<i64>>,
    edges: Vec<DiagramEdgeJson>,
}

#[derive(Serialize)]
struct DiagramEdgeJson {
    generator: String,
    from: Vec<i64>,
    to: Vec<i64>,
}

/// Result of one command: text to emit and the exit status.
pub struct Outcome {
    pub text: String,
    pub status: i32,
}

// one per invocation, so the size gap does not matter
#[allow(clippy::large_enum_variant)]
enum Source {
    Session(SessionConfig),
    Built(BuiltModule),
}

fn load_source(cli: &Cli) -> Result<Source> {
    if let Some(f) = &cli.fixture {
        if cli.config.is_some() {
            return Err(Error::Config("give either --config or --fixture".into()));
        }
        let cfg = SessionConfig {
            cyclotomic_order: 1,
            algebra: None,
            point: None,
            module: Default::default(),
            window: Default::default(),
            fixture: Some(f.clone()),
        };
        cfg.validate()?;
        return Ok(Source::Session(cfg));
    }
    let path = cli.config.as_ref().ok_or_else(|| Error::Config("--config PATH or --fixture NAME is required".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    if text.trim_start().starts_with('{') {
        let built: BuiltModule =
            serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        if built.format != MODULE_FORMAT {
            return Err(Error::Config(format!("{}: unknown module format {:?}", path.display(), built.format)));
        }
        built.session.validate()?;
        return Ok(Source::Built(built));
    }
    SessionConfig::load(path).map(Source::Session)
}

fn need_qwa(alg: &SessionAlgebra) -> Result<&QwaAlgebra> {
    alg.qwa().ok_or_else(|| Error::Config("this command needs a quantized Weyl algebra preset".into()))
}

fn session_point(cfg: &SessionConfig, alg: &SessionAlgebra) -> Result<WeightPoint> {
    if cfg.point.is_none() && cfg.fixture.is_some() {
        return Ok(cfg.module()?.base);
    }
    cfg.point(alg)
}

/// Largest jump of a reduced coordinate under one generator.
fn step_size(s: &Support) -> i64 {
    match s {
        Support::Strip { a, b } => 1 + a.abs() + b.abs(),
        _ => 1,
    }
}

/// Build the tabulated module for a session.
pub fn build(cfg: &SessionConfig, window: Option<i64>) -> Result<BuiltModule> {
    let mut cfg = cfg.clone();
    if window.is_some() {
        cfg.window.bound = window;
    }
    let m = cfg.module()?;
    let (verify_window, table_window) = if m.is_finite() {
        (None, None)
    } else {
        let w = cfg.window.bound.ok_or(Error::WindowRequired)?;
        let r = match cfg.window.npib_radius {
            Some(r) => r,
            None => default_npib_radius(&m)?,
        };
        (Some(w), Some(w + (r.max(2) + 1) * step_size(&m.support)))
    };
    Ok(BuiltModule {
        format: MODULE_FORMAT.into(),
        session: cfg,
        verify_window,
        table: m.materialize(table_window)?,
    })
}

/// The module a built file describes, with its action read from the table.
pub fn module_from_built(b: &BuiltModule) -> Result<WeightModuleSpec> {
    let alg = b.session.algebra()?;
    b.table.to_spec(alg.presentation().clone(), alg.qwa().cloned(), b.session.cyclotomic_order)
}

fn verify_module(m: &WeightModuleSpec, window: Option<i64>, npib_radius: Option<i64>) -> Result<VerificationReport> {
    verify(m, &VerifyOptions { window, npib_radius })
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::Config(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Indented `key: value` rendering of a JSON value.
fn value_to_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        value_to_text(x, indent + 1, out);
                    }
                    Value::Array(a) if a.iter().any(|y| y.is_object()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        value_to_text(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", inline(x))),
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if x.is_object() {
                    out.push_str(&format!("{pad}-\n"));
                    value_to_text(x, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", inline(x))),
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Null => "none".into(),
        x => x.to_string(),
    }
}

fn render<T: Serialize>(v: &T, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(v),
        Format::Text => {
            let value = serde_json::to_value(v).map_err(|e| Error::Config(e.to_string()))?;
            let mut s = String::new();
            value_to_text(&value, 0, &mut s);
            Ok(s)
        }
        Format::Dot => Err(Error::Config("--format dot is only available for `diagram`".into())),
    }
}

/// Run one command and produce its output.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let default_format = if cli.command == Command::Diagram { Format::Dot } else { Format::Json };
    let format = cli.format.unwrap_or(default_format);
    let source = load_source(cli)?;
    let ok = |text| Ok(Outcome { text, status: EXIT_PASS });

    if let Source::Built(b) = &source {
        let m = module_from_built(b)?;
        let window = cli.window.or(b.verify_window);
        return match cli.command {
            Command::Verify => verify_outcome(&m, window, b.session.window.npib_radius, format),
            Command::Diagram => diagram_outcome(&m, window, format),
            Command::Build => ok(to_json(b)?),
            _ => Err(Error::Config("a built module supports only verify, diagram and build".into())),
        };
    }
    let Source::Session(cfg) = source else { unreachable!() };
    let window = cli.window.or(cfg.window.bound);
    match cli.command {
        Command::Orbit | Command::Gtilde | Command::Gm if cfg.algebra()?.ccr().is_some() => {
            let alg = cfg.algebra()?;
            let orbit = alg.ccr().expect("guarded");
            let pt = session_point(&cfg, &alg)?;
            match cli.command {
                Command::Orbit => ok(render(&orbit.report(&pt)?, format)?),
                Command::Gtilde => ok(render(&orbit.g_tilde(&pt)?, format)?),
                _ => ok(render(&orbit.g_m(&pt)?, format)?),
            }
        }
        Command::Orbit | Command::Gtilde | Command::Gm | Command::Bm | Command::Classify => {
            let alg = cfg.algebra()?;
            let qwa = need_qwa(&alg)?;
            let pt = session_point(&cfg, &alg)?;
            match cli.command {
                Command::Orbit => ok(render(&orbit_report(&pt, qwa)?, format)?),
                Command::Gtilde => ok(render(&g_tilde(&pt, qwa)?, format)?),
                Command::Gm => ok(render(&g_m(&pt, qwa)?, format)?),
                Command::Bm => {
                    let presentation = bm_presentation(&pt, qwa)?;
                    let torus = torus_decompose(&presentation.lambda, &qwa.units())?;
                    ok(render(&BmOutput { presentation, torus }, format)?)
                }
                _ => {
                    let tag = cfg.case(qwa, &pt)?;
                    match format {
                        Format::Text => ok(format!("{tag}\n")),
                        _ => ok(render(&serde_json::json!({ "case": tag }), format)?),
                    }
                }
            }
        }
        Command::Build => {
            if format != Format::Json {
                return Err(Error::Config("build writes JSON only".into()));
            }
            ok(to_json(&build(&cfg, cli.window)?)?)
        }
        Command::Verify => {
            let mut c = cfg.clone();
            c.window.bound = window;
            verify_outcome(&c.module()?, window, cfg.window.npib_radius, format)
        }
        Command::Diagram => {
            let mut c = cfg.clone();
            c.window.bound = window;
            diagram_outcome(&c.module()?, window, format)
        }
    }
}

fn verify_outcome(m: &WeightModuleSpec, window: Option<i64>, radius: Option<i64>, format: Format) -> Result<Outcome> {
    let report = verify_module(m, window, radius)?;
    let status = if report.passes() { EXIT_PASS } else { EXIT_VERIFY_FAILED };
    let text = match format {
        Format::Text => report.to_text(),
        f => render(&report, f)?,
    };
    Ok(Outcome { text, status })
}

fn diagram_outcome(m: &WeightModuleSpec, window: Option<i64>, format: Format) -> Result<Outcome> {
    let text = match format {
        Format::Dot => emit_dot(m, window)?,
        f => {
            let (nodes, edges) = diagram_edges(m, window)?;
            let edges = edges
                .into_iter()
                .map(|(i, from, to)| DiagramEdgeJson { generator: format!("X{}", i + 1), from, to })
                .collect();
            render(&DiagramJson { nodes, edges }, f)?
        }
    };
    Ok(Outcome { text, status: EXIT_PASS })
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Config(format!("{}: {e}", p.display()))),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes()).and_then(|_| so.flush()).map_err(|e| Error::Config(e.to_string()))
        }
    }
}

/// Entry point of the binary; returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
        }
    };
    let res = execute(&cli).and_then(|o| write_out(cli.out.as_deref(), &o.text).map(|_| o.status));
    match res {
        Ok(s) => s,
        Err(e) => {
            eprintln!("tgwa: {e}");
            exit_code(&e)
        }
    }
}
