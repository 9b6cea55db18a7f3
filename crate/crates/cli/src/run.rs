use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use hfsim_core::scenarios::{
    scenario_interference, scenario_lens_image, scenario_wires, ScenarioResult,
};
use hfsim_core::OpticsError;

use crate::config::{self, ConfigError};
use crate::output;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

pub const METRICS_FILE: &str = "metrics.csv";
pub const CONFIG_ECHO_FILE: &str = "resolved_config.toml";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Scenario {
    Interference,
    LensImage,
    Wires,
}

impl Scenario {
    pub fn run(
        self,
        config: &hfsim_core::scenarios::ExperimentConfig,
    ) -> hfsim_core::Result<ScenarioResult> {
        match self {
            Scenario::Interference => scenario_interference(config),
            Scenario::LensImage => scenario_lens_image(config),
            Scenario::Wires => scenario_wires(config),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunManifest {
    pub scenario: Scenario,
    /// Uses the bundled default document when unset.
    pub config_path: Option<PathBuf>,
    pub output_dir: PathBuf,
    pub overrides: Vec<(String, String)>,
    /// Sample count for the lens and image planes.
    pub samples_override: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("cannot read {path}: {source}")]
    ReadConfig {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("scenario failed: {0}")]
    Scenario(OpticsError),
    #[error("cannot write {path}: {message}")]
    Output { path: PathBuf, message: String },
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Scenario(OpticsError::Configuration(_)) => EXIT_CONFIG,
            RunError::Scenario(_) => EXIT_NUMERICAL,
            _ => EXIT_CONFIG,
        }
    }
}

fn output_error(path: &Path, e: impl std::fmt::Display) -> RunError {
    RunError::Output {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

/// Files written so far; removed again unless the run completes.
struct Staged {
    dir: PathBuf,
    created_dir: bool,
    files: Vec<PathBuf>,
    done: bool,
}

impl Staged {
    fn open(dir: &Path) -> Result<Self, RunError> {
        let created_dir = !dir.exists();
        fs::create_dir_all(dir).map_err(|e| output_error(dir, e))?;
        Ok(Self {
            dir: dir.to_path_buf(),
            created_dir,
            files: Vec::new(),
            done: false,
        })
    }

    fn write(
        &mut self,
        name: &str,
        body: impl FnOnce(&mut BufWriter<fs::File>) -> Result<(), String>,
    ) -> Result<(), RunError> {
        let path = self.dir.join(name);
        let file = fs::File::create(&path).map_err(|e| output_error(&path, e))?;
        self.files.push(path.clone());
        let mut w = BufWriter::new(file);
        body(&mut w).map_err(|e| output_error(&path, e))?;
        w.into_inner()
            .map_err(|e| output_error(&path, e.error()))?
            .sync_all()
            .map_err(|e| output_error(&path, e))
    }
}

impl Drop for Staged {
    fn drop(&mut self) {
        if self.done {
            return;
        }
        for f in &self.files {
            let _ = fs::remove_file(f);
        }
        if self.created_dir {
            let _ = fs::remove_dir(&self.dir);
        }
    }
}

/// Resolves the manifest's configuration.
pub fn resolve_config(
    manifest: &RunManifest,
) -> Result<hfsim_core::scenarios::ExperimentConfig, RunError> {
    let text = match &manifest.config_path {
        Some(path) => fs::read_to_string(path).map_err(|source| RunError::ReadConfig {
            path: path.clone(),
            source,
        })?,
        None => config::DEFAULT_CONFIG.to_string(),
    };
    let mut overrides = manifest.overrides.clone();
    if let Some(n) = manifest.samples_override {
        for plane in ["lens", "image"] {
            overrides.push((format!("grids.{plane}.samples"), n.to_string()));
        }
    }
    Ok(config::load_config(&text, &overrides)?)
}

/// Runs the scenario and writes its outputs, returning the written paths.
pub fn execute(manifest: &RunManifest) -> Result<Vec<PathBuf>, RunError> {
    let config = resolve_config(manifest)?;
    let result = manifest.scenario.run(&config).map_err(RunError::Scenario)?;

    let mut staged = Staged::open(&manifest.output_dir)?;
    for (name, profile) in &result.profiles {
        staged.write(&format!("{name}.csv"), |w| {
            output::write_profile(w, profile).map_err(|e| e.to_string())
        })?;
    }
    staged.write(METRICS_FILE, |w| {
        output::write_metrics(w, &result.metrics).map_err(|e| e.to_string())
    })?;
    let echo = config::echo_config(&result.config);
    staged.write(CONFIG_ECHO_FILE, |w| {
        std::io::Write::write_all(w, echo.as_bytes()).map_err(|e| e.to_string())
    })?;
    staged.done = true;
    Ok(staged.files.clone())
}

/// Runs and reports, returning the process exit code.
pub fn run(manifest: &RunManifest) -> i32 {
    match execute(manifest) {
        Ok(_) => EXIT_OK,
        Err(e) => {
            eprintln!("hfsim: {e}");
            e.exit_code()
        }
    }
}
