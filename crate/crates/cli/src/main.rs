use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hyperstruc::eval::cross_validate;
use hyperstruc::graph::{generate_barbell, generate_mirrored, karate_club};
use hyperstruc::{Graph, LabelMap};

use hyperstruc_cli::config::{FileConfig, Overrides, RunConfig};
use hyperstruc_cli::formats;
use hyperstruc_cli::pipeline;

/// Structural role embeddings on the hyperboloid model.
#[derive(Parser)]
#[command(name = "hyperstruc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write an experiment graph (barbell or mirrored copy)
    Generate(GenerateArgs),
    /// Run the full embedding pipeline over an edge list
    Embed(EmbedArgs),
    /// Cross-validated hyperbolic k-NN classification of an embedding
    Classify(ClassifyArgs),
    /// Project an embedding onto the Poincare disk
    Project(ProjectArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Generator {
    Barbell,
    Mirror,
}

#[derive(Parser)]
struct GenerateArgs {
    #[arg(value_enum)]
    generator: Generator,
    /// Barbell clique size
    #[arg(long, default_value_t = 10)]
    clique: usize,
    /// Barbell path length (intermediate nodes)
    #[arg(long, default_value_t = 10)]
    path: usize,
    /// Graph to mirror; defaults to the built-in karate club
    #[arg(long)]
    edgelist: Option<PathBuf>,
    /// Node token joined by an edge to its mirror copy
    #[arg(long, default_value = "1")]
    bridge: String,
    /// Output edge list
    #[arg(long)]
    out: PathBuf,
    /// Role label output for barbell (default: <out>.labels)
    #[arg(long)]
    labels: Option<PathBuf>,
    /// Mirror-pair list output for mirror (default: <out>.pairs)
    #[arg(long)]
    pairs: Option<PathBuf>,
}

#[derive(Parser)]
struct EmbedArgs {
    /// Input edge list
    #[arg(long)]
    edgelist: PathBuf,
    /// Output embedding file
    #[arg(long)]
    out: PathBuf,
    /// Optional TOML config file (flags take precedence)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Cache directory for the structural-distance stage
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Also dump the walk corpus (one walk of node tokens per line)
    #[arg(long)]
    dump_corpus: Option<PathBuf>,
    /// Embedding dimension n
    #[arg(long)]
    dim: Option<usize>,
    /// Layer-change probability
    #[arg(long)]
    alpha: Option<f64>,
    /// Walks per node
    #[arg(long)]
    walks: Option<usize>,
    /// Nodes emitted per walk
    #[arg(long)]
    walk_length: Option<usize>,
    /// Sliding-window radius for pair extraction
    #[arg(long)]
    window: Option<usize>,
    /// Negative samples per positive pair
    #[arg(long)]
    negatives: Option<usize>,
    /// Learning rate
    #[arg(long)]
    lr: Option<f64>,
    /// Batch size
    #[arg(long)]
    batch: Option<usize>,
    /// Training epochs
    #[arg(long)]
    epochs: Option<usize>,
    /// FastDTW refinement radius
    #[arg(long)]
    radius: Option<usize>,
    /// RNG seed
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (1 = fully sequential)
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Parser)]
struct ClassifyArgs {
    /// Embedding file produced by `embed`
    #[arg(long)]
    embedding: PathBuf,
    /// Label file ("token label" per line)
    #[arg(long)]
    labels: PathBuf,
    /// Key-value report output
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Classifier neighbor count
    #[arg(long)]
    k: Option<usize>,
    /// Cross-validation folds
    #[arg(long)]
    folds: Option<usize>,
    /// RNG seed for fold assignment
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Parser)]
struct ProjectArgs {
    /// Embedding file produced by `embed`
    #[arg(long)]
    embedding: PathBuf,
    /// Poincare coordinate output
    #[arg(long)]
    out: PathBuf,
    /// Optional SVG scatter figure (2-dimensional embeddings only)
    #[arg(long)]
    figure: Option<PathBuf>,
    /// Optional labels for marker colors
    #[arg(long)]
    labels: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Embed(args) => cmd_embed(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Project(args) => cmd_project(args),
    };
    if let Err(err) = result {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn aux_path(base: &Path, extension: &str) -> PathBuf {
    base.with_extension(extension)
}

fn cmd_generate(args: GenerateArgs) -> Result<()> {
    match args.generator {
        Generator::Barbell => {
            let (graph, labels) = generate_barbell(args.clique, args.path)?;
            formats::write_string(&args.out, &graph.serialize_edge_list())?;
            let labels_path = args.labels.unwrap_or_else(|| aux_path(&args.out, "labels"));
            formats::write_string(&labels_path, &labels.serialize(&graph))?;
            println!(
                "barbell({}, {}): {} nodes, {} edges -> {}, labels -> {}",
                args.clique,
                args.path,
                graph.node_count(),
                graph.edge_count(),
                args.out.display(),
                labels_path.display()
            );
        }
        Generator::Mirror => {
            let base = match &args.edgelist {
                Some(path) => {
                    let (g, stats) = Graph::parse_edge_list(&formats::read_to_string(path)?)?;
                    report_dropped(stats);
                    g
                }
                None => karate_club(),
            };
            let bridge = base
                .id_of(&args.bridge)
                .with_context(|| format!("bridge node {:?} not in the graph", args.bridge))?;
            let (mirrored, pairs) = generate_mirrored(&base, &[(bridge, bridge)]);
            formats::write_string(&args.out, &mirrored.serialize_edge_list())?;
            let pairs_path = args.pairs.unwrap_or_else(|| aux_path(&args.out, "pairs"));
            let mut pair_text = String::new();
            for &(u, mu) in &pairs {
                pair_text.push_str(mirrored.token(u));
                pair_text.push(' ');
                pair_text.push_str(mirrored.token(mu));
                pair_text.push('\n');
            }
            formats::write_string(&pairs_path, &pair_text)?;
            println!(
                "mirrored: {} nodes, {} edges -> {}, pairs -> {}",
                mirrored.node_count(),
                mirrored.edge_count(),
                args.out.display(),
                pairs_path.display()
            );
        }
    }
    Ok(())
}

fn report_dropped(stats: hyperstruc::graph::EdgeListStats) {
    if stats.self_loops_dropped > 0 {
        eprintln!(
            "warning: dropped {} self-loop line(s)",
            stats.self_loops_dropped
        );
    }
}

fn apply_threads(threads: Option<usize>) -> Result<()> {
    if let Some(n) = threads {
        if n == 0 {
            bail!("--threads must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("thread pool already initialized")?;
    }
    Ok(())
}

fn cmd_embed(args: EmbedArgs) -> Result<()> {
    let file_cfg = match &args.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let flags = Overrides {
        dim: args.dim,
        alpha: args.alpha,
        walks: args.walks,
        walk_length: args.walk_length,
        window: args.window,
        negatives: args.negatives,
        lr: args.lr,
        batch: args.batch,
        epochs: args.epochs,
        radius: args.radius,
        seed: args.seed,
        threads: args.threads,
        ..Overrides::default()
    };
    let cfg = RunConfig::resolve(&flags, &file_cfg);
    apply_threads(cfg.threads)?;

    let bytes = std::fs::read(&args.edgelist)
        .with_context(|| format!("cannot read {}", args.edgelist.display()))?;
    let text = String::from_utf8(bytes.clone()).context("edge list is not UTF-8")?;
    let (graph, stats) = Graph::parse_edge_list(&text).context("ingestion")?;
    report_dropped(stats);
    println!(
        "graph: {} nodes, {} edges",
        graph.node_count(),
        graph.edge_count()
    );

    let run = pipeline::run_embed(graph, &cfg, &bytes, args.cache.as_deref())?;

    if let Some(path) = &args.dump_corpus {
        formats::write_string(path, &formats::render_corpus(&run.corpus, &run.graph))?;
    }
    let tokens: Vec<String> = (0..run.graph.node_count())
        .map(|u| run.graph.token(u).to_string())
        .collect();
    formats::write_string(
        &args.out,
        &formats::render_embedding(&run.outcome.embeddings, &tokens),
    )?;
    println!("embedding -> {}", args.out.display());
    Ok(())
}

fn cmd_classify(args: ClassifyArgs) -> Result<()> {
    let file_cfg = match &args.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let flags = Overrides {
        k: args.k,
        folds: args.folds,
        seed: args.seed,
        ..Overrides::default()
    };
    let cfg = RunConfig::resolve(&flags, &file_cfg);

    let (tokens, emb) = formats::parse_embedding(&formats::read_to_string(&args.embedding)?)?;
    let index: std::collections::HashMap<&str, usize> = tokens
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_str(), i))
        .collect();
    let labels = LabelMap::parse_with(
        &formats::read_to_string(&args.labels)?,
        |tok| index.get(tok).copied(),
        emb.node_count(),
    )
    .context("labels do not match the embedding")?;

    let report = cross_validate(&emb, &labels, cfg.folds, cfg.k, cfg.walk.rng_seed)?;
    print!("{}", formats::format_report_text(&report));
    formats::write_string(&args.out, &formats::render_report(&report))?;
    println!("report -> {}", args.out.display());
    Ok(())
}

fn cmd_project(args: ProjectArgs) -> Result<()> {
    let (tokens, emb) = formats::parse_embedding(&formats::read_to_string(&args.embedding)?)?;
    formats::write_string(&args.out, &formats::render_poincare(&emb, &tokens))?;
    println!("disk coordinates -> {}", args.out.display());

    if let Some(figure) = &args.figure {
        if emb.spatial_dim() != 2 {
            eprintln!(
                "notice: skipping figure, embedding dimension is {} (figure needs 2)",
                emb.spatial_dim()
            );
            return Ok(());
        }
        let classes: Vec<Option<usize>> = match &args.labels {
            Some(path) => {
                let index: std::collections::HashMap<&str, usize> = tokens
                    .iter()
                    .enumerate()
                    .map(|(i, t)| (t.as_str(), i))
                    .collect();
                let labels = LabelMap::parse_with(
                    &formats::read_to_string(path)?,
                    |tok| index.get(tok).copied(),
                    emb.node_count(),
                )?;
                (0..emb.node_count()).map(|u| labels.class(u)).collect()
            }
            None => vec![None; emb.node_count()],
        };
        formats::write_string(figure, &formats::render_disk_svg(&emb, &classes)?)?;
        println!("figure -> {}", figure.display());
    }
    Ok(())
}
