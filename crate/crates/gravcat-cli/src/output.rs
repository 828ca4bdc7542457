//! Run artifacts and their destinations: `report.json` and `report.txt`
//! always, subcommand CSVs when produced, and the stdout rendering chosen
//! by `--format`. Reports carry no timestamps, so identical (config, seed,
//! version) runs are byte-identical.

use std::fs;
use std::io;
use std::path::Path;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
    Both,
}

/// Everything a subcommand produces.
pub struct CommandOutput {
    pub json: Value,
    pub text: String,
    /// `(file name, contents)` pairs, e.g. `trajectories.csv`.
    pub csv_files: Vec<(String, String)>,
    pub warnings: Vec<String>,
}

impl CommandOutput {
    pub fn new(json: Value, text: String) -> Self {
        Self {
            json,
            text,
            csv_files: Vec::new(),
            warnings: Vec::new(),
        }
    }
}

/// Writes the artifacts and prints the requested view; warning lines go to
/// stderr.
pub fn emit(output: &CommandOutput, out_dir: &Path, format: OutputFormat) -> io::Result<()> {
    fs::create_dir_all(out_dir)?;

    let mut json = output.json.clone();
    if let Value::Object(map) = &mut json {
        map.insert("warnings".to_string(), Value::from(output.warnings.clone()));
    }
    let json_text = format!("{:#}\n", json);
    fs::write(out_dir.join("report.json"), &json_text)?;
    fs::write(out_dir.join("report.txt"), &output.text)?;
    for (name, contents) in &output.csv_files {
        fs::write(out_dir.join(name), contents)?;
    }

    for warning in &output.warnings {
        eprintln!("warning: {warning}");
    }
    match format {
        OutputFormat::Table => print!("{}", output.text),
        OutputFormat::Json => print!("{json_text}"),
        OutputFormat::Both => {
            print!("{}", output.text);
            print!("{json_text}");
        }
    }
    Ok(())
}
