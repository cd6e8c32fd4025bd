//! Run configuration: built-in defaults, overridden by an optional TOML
//! config file, overridden by explicit command-line flags.

use std::path::Path;

use anyhow::{Context, Result};
use hyperstruc::{TrainConfig, WalkConfig};
use serde::Deserialize;

/// Numeric knobs accepted both in the config file and as flags.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub dim: Option<usize>,
    pub alpha: Option<f64>,
    pub walks: Option<usize>,
    pub walk_length: Option<usize>,
    pub window: Option<usize>,
    pub negatives: Option<usize>,
    pub lr: Option<f64>,
    pub batch: Option<usize>,
    pub epochs: Option<usize>,
    pub radius: Option<usize>,
    pub k: Option<usize>,
    pub folds: Option<usize>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("bad config file {}", path.display()))
    }
}

/// Flag values as given on the command line (None = not passed).
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub dim: Option<usize>,
    pub alpha: Option<f64>,
    pub walks: Option<usize>,
    pub walk_length: Option<usize>,
    pub window: Option<usize>,
    pub negatives: Option<usize>,
    pub lr: Option<f64>,
    pub batch: Option<usize>,
    pub epochs: Option<usize>,
    pub radius: Option<usize>,
    pub k: Option<usize>,
    pub folds: Option<usize>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
}

/// Fully resolved run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub walk: WalkConfig,
    pub train: TrainConfig,
    pub radius: usize,
    pub k: usize,
    pub folds: usize,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn resolve(flags: &Overrides, file: &FileConfig) -> RunConfig {
        fn pick<T: Copy>(flag: Option<T>, file: Option<T>, default: T) -> T {
            flag.or(file).unwrap_or(default)
        }
        let walk_defaults = WalkConfig::default();
        let train_defaults = TrainConfig::default();
        let seed = pick(flags.seed, file.seed, walk_defaults.rng_seed);
        RunConfig {
            walk: WalkConfig {
                walks_per_node: pick(flags.walks, file.walks, walk_defaults.walks_per_node),
                walk_length: pick(
                    flags.walk_length,
                    file.walk_length,
                    walk_defaults.walk_length,
                ),
                alpha: pick(flags.alpha, file.alpha, walk_defaults.alpha),
                window_radius: pick(flags.window, file.window, walk_defaults.window_radius),
                max_step_budget_factor: walk_defaults.max_step_budget_factor,
                rng_seed: seed,
            },
            train: TrainConfig {
                dim: pick(flags.dim, file.dim, train_defaults.dim),
                negatives: pick(flags.negatives, file.negatives, train_defaults.negatives),
                learning_rate: pick(flags.lr, file.lr, train_defaults.learning_rate),
                batch_size: pick(flags.batch, file.batch, train_defaults.batch_size),
                epochs: pick(flags.epochs, file.epochs, train_defaults.epochs),
                init_scale: train_defaults.init_scale,
                rng_seed: seed,
            },
            radius: pick(flags.radius, file.radius, 1),
            k: pick(flags.k, file.k, 5),
            folds: pick(flags.folds, file.folds, 10),
            threads: flags.threads.or(file.threads),
        }
    }
}
