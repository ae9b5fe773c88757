//! Drive a session from a TOML config and verify the resulting module.
//! Usage: cargo run --example session -- [path/to/config.toml]

use std::path::PathBuf;

use tgwa::cli::build;
use tgwa::config::SessionConfig;
use tgwa::verify::{verify, VerifyOptions};
use tgwa::Result;

fn main() -> Result<()> {
    let path = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/configs/n1_break_rou.toml")
    });
    let cfg = SessionConfig::load(&path)?;
    let m = cfg.module()?;
    println!("{}: {} with support {:?}", path.display(), m.name, m.support);
    let built = build(&cfg, None)?;
    println!("tabulated {} basis vectors", built.table.basis.len());
    let report = verify(&m, &VerifyOptions { window: cfg.window.bound, npib_radius: cfg.window.npib_radius })?;
    print!("{}", report.to_text());
    Ok(())
}
