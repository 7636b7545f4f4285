use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Dot,
}

/// Flags shared by every subcommand. Each may also come from an environment
/// variable or a TOML file; precedence is flag > env > file > default.
#[derive(Args, Debug, Clone, Default)]
pub struct GlobalArgs {
    /// Seed for every randomized step.
    #[arg(long, env = "BLOWUP_SEED", global = true)]
    pub seed: Option<u64>,
    /// Wall-clock budget in seconds for searches that honour one.
    #[arg(long, env = "BLOWUP_BUDGET", global = true)]
    pub budget: Option<f64>,
    /// Node budget for branch-and-bound searches.
    #[arg(long, env = "BLOWUP_NODE_BUDGET", global = true)]
    pub node_budget: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, env = "BLOWUP_WORKERS", global = true)]
    pub workers: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, env = "BLOWUP_OUT", global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, env = "BLOWUP_FORMAT", global = true)]
    pub format: Option<Format>,
    /// TOML file with any of the keys above.
    #[arg(long, env = "BLOWUP_CONFIG", global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    seed: Option<u64>,
    budget: Option<f64>,
    node_budget: Option<u64>,
    workers: Option<usize>,
    out: Option<PathBuf>,
    format: Option<Format>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub budget_secs: Option<f64>,
    pub node_budget: u64,
    pub workers: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    pub format: Format,
}

pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

impl RunConfig {
    pub fn resolve(args: &GlobalArgs) -> Result<Self, String> {
        let file = match &args.config {
            Some(p) => read_config(p)?,
            None => FileConfig::default(),
        };
        let cfg = RunConfig {
            seed: args.seed.or(file.seed).unwrap_or(0),
            budget_secs: args.budget.or(file.budget),
            node_budget: args.node_budget.or(file.node_budget).unwrap_or(DEFAULT_NODE_BUDGET),
            workers: args.workers.or(file.workers),
            out: args.out.clone().or(file.out),
            format: args.format.or(file.format).unwrap_or_default(),
        };
        if cfg.budget_secs.is_some_and(|b| !(b > 0.0 && b.is_finite())) {
            return Err("budget must be a positive number of seconds".into());
        }
        if cfg.node_budget == 0 || cfg.workers == Some(0) {
            return Err("node budget and worker count must be positive".into());
        }
        Ok(cfg)
    }

    pub fn budget(&self) -> Option<std::time::Duration> {
        self.budget_secs.map(std::time::Duration::from_secs_f64)
    }
}

fn read_config(path: &Path) -> Result<FileConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let dir = std::env::temp_dir().join(format!("blowup-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let file = dir.join("c.toml");
        std::fs::write(&file, "seed = 5\nnode_budget = 10\nformat = \"csv\"\n").unwrap();
        let args = GlobalArgs { seed: Some(9), config: Some(file.clone()), ..Default::default() };
        let cfg = RunConfig::resolve(&args).unwrap();
        assert_eq!((cfg.seed, cfg.node_budget, cfg.format), (9, 10, Format::Csv));
        let cfg = RunConfig::resolve(&GlobalArgs::default()).unwrap();
        assert_eq!((cfg.seed, cfg.node_budget, cfg.format), (0, DEFAULT_NODE_BUDGET, Format::Json));
        std::fs::write(&file, "sede = 5\n").unwrap();
        assert!(RunConfig::resolve(&GlobalArgs { config: Some(file), ..Default::default() }).is_err());
        let bad = GlobalArgs { budget: Some(-1.0), ..Default::default() };
        assert!(RunConfig::resolve(&bad).is_err());
    }
}
