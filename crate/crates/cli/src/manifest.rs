use std::path::Path;
use std::time::Instant;

use serde::Serialize;

/// Sidecar written next to every output file.
#[derive(Debug, Serialize)]
pub struct RunManifest<'a, P: Serialize> {
    pub command: &'a str,
    pub parameters: &'a P,
    pub seed: Option<u64>,
    pub version: &'a str,
    pub duration_secs: f64,
}

pub fn sidecar_path(out: &str) -> String {
    format!("{out}.manifest.json")
}

pub fn write<P: Serialize>(
    out: &str,
    command: &str,
    parameters: &P,
    seed: Option<u64>,
    start: Instant,
) -> std::io::Result<()> {
    if out == "-" {
        return Ok(());
    }
    let manifest = RunManifest {
        command,
        parameters,
        seed,
        version: env!("CARGO_PKG_VERSION"),
        duration_secs: start.elapsed().as_secs_f64(),
    };
    let json = serde_json::to_string_pretty(&manifest).map_err(std::io::Error::other)?;
    std::fs::write(Path::new(&sidecar_path(out)), json + "\n")
}
