//! The embed pipeline: ingestion, structural distances (with optional
//! disk cache), multilayer construction, walks, pair extraction, and
//! training, with per-stage timings.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use hyperstruc::multilayer::MultilayerGraph;
use hyperstruc::structdist::{all_pair_distances, StructuralDistanceTable};
use hyperstruc::trainer::{train, TrainOutcome};
use hyperstruc::walker::{extract_pairs, generate_corpus, Corpus};
use hyperstruc::{Graph, PairMultiset};

use crate::config::RunConfig;
use crate::formats;

pub struct EmbedRun {
    pub graph: Graph,
    pub corpus: Corpus,
    pub pairs: PairMultiset,
    pub outcome: TrainOutcome,
}

/// Load the distance table from the cache when a directory is given and a
/// matching dump exists; otherwise compute and, if possible, store it.
fn distances_with_cache(
    graph: &Graph,
    radius: usize,
    edgelist_bytes: &[u8],
    cache_dir: Option<&Path>,
) -> Result<StructuralDistanceTable> {
    let cache_path: Option<PathBuf> = cache_dir.map(|dir| {
        dir.join(format!(
            "{}-r{}.dist",
            formats::content_hash(edgelist_bytes),
            radius
        ))
    });
    if let Some(path) = &cache_path {
        if path.exists() {
            let table = formats::parse_distance_table(&formats::read_to_string(path)?)
                .with_context(|| format!("corrupt distance cache {}", path.display()))?;
            if table.node_count() == graph.node_count() {
                eprintln!("distances: loaded cache {}", path.display());
                return Ok(table);
            }
        }
    }
    let table = all_pair_distances(graph, radius);
    if let Some(path) = &cache_path {
        formats::write_string(path, &formats::render_distance_table(&table))?;
        eprintln!("distances: wrote cache {}", path.display());
    }
    Ok(table)
}

/// Run the full pipeline on an already-parsed graph. Prints one timing
/// line per stage and the final mean loss.
pub fn run_embed(
    graph: Graph,
    cfg: &RunConfig,
    edgelist_bytes: &[u8],
    cache_dir: Option<&Path>,
) -> Result<EmbedRun> {
    let stage = Instant::now();
    let table = distances_with_cache(&graph, cfg.radius, edgelist_bytes, cache_dir)
        .context("structural distances")?;
    println!("stage distances    {:8.2?}", stage.elapsed());

    let stage = Instant::now();
    let mg = MultilayerGraph::build(&table).context("multilayer graph")?;
    println!("stage multilayer   {:8.2?}", stage.elapsed());

    let stage = Instant::now();
    let corpus = generate_corpus(&mg, &cfg.walk).context("random walks")?;
    println!("stage walks        {:8.2?}", stage.elapsed());

    let stage = Instant::now();
    let pairs = extract_pairs(&corpus, cfg.walk.window_radius, graph.node_count());
    println!("stage pairs        {:8.2?}", stage.elapsed());

    let stage = Instant::now();
    let outcome = train(&pairs, &cfg.train).context("training")?;
    println!("stage training     {:8.2?}", stage.elapsed());
    if let Some(loss) = outcome.epoch_mean_loss.last() {
        println!("final mean loss    {loss:.6}");
    }

    Ok(EmbedRun {
        graph,
        corpus,
        pairs,
        outcome,
    })
}
