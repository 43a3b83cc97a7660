//! Run configuration: defaults, then a flat `key = value` file, then flags.

use std::path::{Path, PathBuf};

use graphene_hf::{ModelParams, QuadratureSpec};
use serde::Deserialize;

use crate::table::Format;
use crate::CliError;

/// Keys accepted in a config file. All optional.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub vf: Option<f64>,
    pub lambda_uv: Option<f64>,
    pub tol: Option<f64>,
    pub grid_n: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: ModelParams,
    pub spec: QuadratureSpec,
    pub grid_n: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    /// Merges `flags` over `file` over the defaults.
    pub fn resolve(flags: &FileConfig, file: &FileConfig) -> Result<Self, CliError> {
        let vf = flags.vf.or(file.vf).unwrap_or(graphene_hf::model::GRAPHENE_VF);
        let lambda = flags.lambda_uv.or(file.lambda_uv).unwrap_or(1.0);
        let params = ModelParams::new(vf, lambda).map_err(|e| CliError::Usage(e.to_string()))?;
        let mut spec = QuadratureSpec::default();
        if let Some(tol) = flags.tol.or(file.tol) {
            spec = QuadratureSpec::new(spec.abs_tol, tol, spec.max_subdivisions)
                .map_err(|e| CliError::Usage(e.to_string()))?;
        }
        let grid_n = flags.grid_n.or(file.grid_n).unwrap_or(64);
        if grid_n < 2 {
            return Err(CliError::Usage(format!("--grid-n must be at least 2, got {grid_n}")));
        }
        Ok(Self {
            params,
            spec,
            grid_n,
            format: flags.format.or(file.format).unwrap_or(Format::Csv),
            out: flags.out.clone().or_else(|| file.out.clone()),
        })
    }
}
