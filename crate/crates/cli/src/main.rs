use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use wignerkit_cli::config::Cli;
use wignerkit_cli::{run, Report, RunError, ScenarioConfig};

fn load_config(cli: &Cli) -> Result<ScenarioConfig, RunError> {
    match &cli.from_report {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            let report = Report::parse(&text)
                .map_err(|e| RunError::Config(format!("from-report: {}: {e}", path.display())))?;
            ScenarioConfig::from_report(&report)
        }
        None => ScenarioConfig::resolve(cli),
    }
}

fn execute(cli: &Cli) -> Result<bool, RunError> {
    let config = load_config(cli)?;
    let output = run(&config)?;
    let dir: &Path = cli.out.as_deref().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    for file in &output.files {
        fs::write(dir.join(&file.name), &file.contents)?;
    }
    let text = output.report.to_string();
    fs::write(dir.join(PathBuf::from("report.txt")), &text)?;
    print!("{text}");
    for v in &output.violations {
        eprintln!("wignerkit: {v}");
    }
    Ok(output.violations.is_empty())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("wignerkit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
