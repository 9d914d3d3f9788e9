use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;
use std::time::SystemTime;

use serde::Serialize;
use serde_json::{json, Value};

use citegraph::table::Table;

use crate::config::{Format, Settings};
use crate::CliError;

/// Writes tables into the output directory, stamping each with the run
/// configuration, and records what was written for the manifest.
pub struct Output {
    dir: PathBuf,
    format: Format,
    config: Value,
    digest: String,
    files: Vec<String>,
    errors: Vec<Value>,
}

fn env_err(what: &str, path: &std::path::Path, e: std::io::Error) -> CliError {
    CliError::Environment(format!("cannot {what} {}: {e}", path.display()))
}

impl Output {
    pub fn new(settings: &Settings, digest: &str) -> Result<Self, CliError> {
        fs::create_dir_all(&settings.out).map_err(|e| env_err("create", &settings.out, e))?;
        Ok(Self {
            dir: settings.out.clone(),
            format: settings.echo.format,
            config: serde_json::to_value(&settings.echo).expect("config serialises"),
            digest: digest.to_string(),
            files: Vec::new(),
            errors: Vec::new(),
        })
    }

    pub fn table(&mut self, stem: &str, mut table: Table) -> Result<(), CliError> {
        table.set_meta("config", &self.config);
        table.set_meta("corpus_digest", &self.digest);
        let name = format!("{stem}.{}", self.format.extension());
        let path = self.dir.join(&name);
        let file = File::create(&path).map_err(|e| env_err("create", &path, e))?;
        let out = BufWriter::new(file);
        match self.format {
            Format::Csv => table.write_csv(out),
            Format::Json => table.write_json(out),
        }
        .map_err(|e| env_err("write", &path, e))?;
        self.files.push(name);
        Ok(())
    }

    /// Records a failed item; the run goes on.
    pub fn error(&mut self, item: Value, message: String) {
        log::debug!("{item}: {message}");
        self.errors.push(json!({ "item": item, "error": message }));
    }

    /// Writes `errors.json` when any item failed, then `manifest.json`.
    pub fn finish(mut self, command: &str, items: impl Serialize) -> Result<(), CliError> {
        if !self.errors.is_empty() {
            let path = self.dir.join("errors.json");
            write_json(&path, &self.errors)?;
            eprintln!(
                "warning: {} item(s) failed; see {}",
                self.errors.len(),
                path.display()
            );
            self.files.push("errors.json".into());
        }
        let generated_at = humantime::format_rfc3339_seconds(SystemTime::now()).to_string();
        let manifest = json!({
            "command": command,
            "generated_at": generated_at,
            "config": self.config,
            "corpus_digest": self.digest,
            "items": items,
            "files": self.files,
            "errors": self.errors.len(),
        });
        write_json(&self.dir.join("manifest.json"), &manifest)
    }
}

fn write_json(path: &std::path::Path, value: &impl Serialize) -> Result<(), CliError> {
    let mut body = serde_json::to_vec_pretty(value).expect("json serialises");
    body.push(b'\n');
    fs::write(path, body).map_err(|e| env_err("write", path, e))
}
