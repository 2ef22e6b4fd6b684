use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use netlsd::{
    bench_communities as run_communities, bench_real_vs_rewired, compute_signature, gen_erdos_renyi, gen_named,
    gen_sbm, load_edge_list, parse_manifest, rewire_degree_preserving, sbm_probabilities, CommunityBench,
    EvalReport, Graph, GraphFamily, IdPolicy, LoadedGraph, ManifestEntry, Metric, Mixing, SignatureCollection,
    SignatureFile, SizeLaw,
};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::failure::Failure;

fn open(path: &Path) -> Result<BufReader<File>, Failure> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Failure::data(path.display(), e))
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::data(path.display(), e))
}

/// Stdout unless a path is given.
fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(create(p)?),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn io_failure(e: io::Error) -> Failure {
    Failure::Data(format!("write failed: {e}"))
}

fn read_manifest(path: &Path) -> Result<Vec<ManifestEntry>, Failure> {
    let base = path.parent().unwrap_or(Path::new("."));
    parse_manifest(open(path)?, base).map_err(|e| Failure::data(path.display(), e))
}

fn read_graph(path: &Path, policy: IdPolicy) -> Result<LoadedGraph, Failure> {
    load_edge_list(open(path)?, policy).map_err(|e| Failure::data(path.display(), e))
}

fn read_signatures(path: &Path) -> Result<SignatureCollection, Failure> {
    SignatureFile::read(open(path)?)
        .and_then(SignatureCollection::from_file)
        .map_err(|e| Failure::data(path.display(), e))
}

pub fn embed(
    cfg: &RunConfig,
    manifest: &Path,
    out: &Path,
    errors: Option<&Path>,
    dense_ids: bool,
) -> Result<u8, Failure> {
    let entries = read_manifest(manifest)?;
    let policy = if dense_ids { IdPolicy::DenseIntegers } else { IdPolicy::Remap };
    let m = &cfg.method;
    eprintln!("id,nodes,edges,seconds,status");
    let results: Vec<Result<Vec<f64>, String>> = entries
        .par_iter()
        .map(|entry| {
            let loaded = read_graph(&entry.path, policy).map_err(|e| e.to_string());
            let g = match loaded {
                Ok(l) => l.graph,
                Err(e) => {
                    eprintln!("{},,,,failed", entry.id);
                    return Err(e);
                }
            };
            let start = Instant::now();
            let sig = compute_signature(&g, m.kernel, &m.grid, m.normalization, m.strategy, &m.spectrum);
            let secs = start.elapsed().as_secs_f64();
            let status = if sig.is_ok() { "ok" } else { "failed" };
            eprintln!("{},{},{},{secs:.6},{status}", entry.id, g.node_count(), g.edge_count());
            sig.map(|s| s.values).map_err(|e| format!("{}: {e}", entry.path.display()))
        })
        .collect();

    let mut file = SignatureFile { meta: m.meta(), rows: Vec::new() };
    let mut failed = Vec::new();
    for (entry, result) in entries.iter().zip(results) {
        match result {
            Ok(values) => file.rows.push((entry.id.clone(), values)),
            Err(e) => failed.push((entry.id.as_str(), e)),
        }
    }
    let mut w = create(out)?;
    file.write(&mut w, &[format!("config {cfg}")])
        .map_err(|e| Failure::data(out.display(), e))?;
    w.flush().map_err(io_failure)?;

    let sidecar = errors.map(Path::to_path_buf).unwrap_or_else(|| {
        let mut p = out.as_os_str().to_owned();
        p.push(".errors");
        PathBuf::from(p)
    });
    if failed.is_empty() {
        // a log left over from an earlier run would be misleading
        if sidecar.exists() {
            fs::remove_file(&sidecar).map_err(|e| Failure::data(sidecar.display(), e))?;
        }
        return Ok(0);
    }
    let mut w = create(&sidecar)?;
    for (id, message) in &failed {
        writeln!(w, "{id}\t{message}").map_err(io_failure)?;
    }
    w.flush().map_err(io_failure)?;
    eprintln!(
        "netlsd: {} of {} graphs failed, see {}",
        failed.len(),
        entries.len(),
        sidecar.display()
    );
    Ok(1)
}

fn format_distance(d: f64) -> String {
    format!("{d:.11e}")
}

pub fn dist(file: &Path, id_a: &str, id_b: &str, file_b: Option<&Path>) -> Result<u8, Failure> {
    let coll_a = read_signatures(file)?;
    let coll_b = match file_b {
        Some(p) => {
            let other = read_signatures(p)?;
            if other.meta() != coll_a.meta() {
                return Err(Failure::Usage(format!(
                    "{} and {} hold incompatible signatures",
                    file.display(),
                    p.display()
                )));
            }
            Some(other)
        }
        None => None,
    };
    let lookup = |coll: &SignatureCollection, id: &str| {
        coll.get(id).ok_or_else(|| Failure::Usage(format!("unknown graph id `{id}`")))
    };
    let a = lookup(&coll_a, id_a)?;
    let b = lookup(coll_b.as_ref().unwrap_or(&coll_a), id_b)?;
    let d = netlsd::signature_distance(&a, &b)?;
    println!("{}", format_distance(d));
    Ok(0)
}

pub fn knn(file: &Path, query: &str, k: usize) -> Result<u8, Failure> {
    let coll = read_signatures(file)?;
    let q = coll
        .get(query)
        .ok_or_else(|| Failure::Usage(format!("unknown graph id `{query}`")))?;
    let hits = coll.knn_query(&q, k)?;
    let mut w = sink(None)?;
    writeln!(w, "rank,id,distance").map_err(io_failure)?;
    for (rank, (id, d)) in hits.iter().enumerate() {
        writeln!(w, "{},{id},{}", rank + 1, format_distance(*d)).map_err(io_failure)?;
    }
    w.flush().map_err(io_failure)?;
    Ok(0)
}

pub fn gen(
    family: &str,
    n: usize,
    degree: f64,
    blocks: usize,
    mixing: f64,
    seed: u64,
    out: Option<&Path>,
) -> Result<u8, Failure> {
    let g: Graph = match family {
        "er" => gen_erdos_renyi(n, degree, seed)?,
        "sbm" => {
            let (p_in, p_out) = sbm_probabilities(n, blocks, degree, mixing)?;
            gen_sbm(n, blocks, p_in, p_out, seed)?
        }
        named => gen_named(named.parse::<GraphFamily>()?, n)?,
    };
    let mut w = sink(out)?;
    netlsd::write_edge_list(&mut w, &g, None).map_err(|e| Failure::data("edge list", e))?;
    w.flush().map_err(io_failure)?;
    Ok(0)
}

pub fn rewire(input: &Path, sweeps: usize, seed: u64, out: Option<&Path>) -> Result<u8, Failure> {
    let loaded = read_graph(input, IdPolicy::Remap)?;
    let g = rewire_degree_preserving(&loaded.graph, sweeps, seed)?;
    let mut w = sink(out)?;
    netlsd::write_edge_list(&mut w, &g, Some(&loaded.names)).map_err(|e| Failure::data("edge list", e))?;
    w.flush().map_err(io_failure)?;
    Ok(0)
}

fn print_report(header: &str, report: &EvalReport, per_trial: bool) -> Result<u8, Failure> {
    let mut w = sink(None)?;
    writeln!(w, "# {header}").map_err(io_failure)?;
    writeln!(w, "{}", EvalReport::CSV_HEADER).map_err(io_failure)?;
    writeln!(w, "{}", report.csv_row()).map_err(io_failure)?;
    if per_trial {
        for row in report.trial_rows() {
            writeln!(w, "{row}").map_err(io_failure)?;
        }
    }
    w.flush().map_err(io_failure)?;
    Ok(0)
}

pub struct CommunityArgs {
    pub sizes: String,
    pub per_class: usize,
    pub trials: usize,
    pub train_fraction: f64,
    pub degree: f64,
    pub blocks: usize,
    pub mixing: String,
}

pub fn bench_communities(cfg: &RunConfig, args: &CommunityArgs, per_trial: bool) -> Result<u8, Failure> {
    let sizes: SizeLaw = args.sizes.parse()?;
    let mixing = match args.mixing.as_str() {
        "degenerate" => Mixing::Degenerate,
        r => Mixing::Ratio(
            r.parse()
                .map_err(|_| Failure::Usage(format!("mixing `{r}` is neither a ratio nor `degenerate`")))?,
        ),
    };
    let mut bench = CommunityBench::new(sizes, args.per_class);
    bench.trials = args.trials;
    bench.train_fraction = args.train_fraction;
    bench.mean_degree = args.degree;
    bench.blocks = args.blocks;
    bench.mixing = mixing;
    bench.seed = cfg.seed;
    let report = run_communities(&bench, &cfg.method)?;
    let header = format!(
        "config {cfg} method={} sizes={sizes} per-class={} degree={} blocks={} mixing={} train-fraction={}",
        cfg.method.name(),
        args.per_class,
        args.degree,
        args.blocks,
        args.mixing,
        args.train_fraction
    );
    print_report(&header, &report, per_trial)
}

pub fn bench_rewired(
    cfg: &RunConfig,
    manifest: &Path,
    sweeps: usize,
    metric: &str,
    trials: usize,
    train_fraction: f64,
    per_trial: bool,
) -> Result<u8, Failure> {
    let metric: Metric = metric.parse()?;
    let entries = read_manifest(manifest)?;
    let graphs = entries
        .par_iter()
        .map(|e| read_graph(&e.path, IdPolicy::Remap).map(|l| (e.id.clone(), l.graph)))
        .collect::<Result<Vec<_>, Failure>>()?;
    let report = bench_real_vs_rewired(&graphs, sweeps, &cfg.method, metric, train_fraction, trials, cfg.seed)?;
    let header = format!(
        "config {cfg} method={} sweeps={sweeps} graphs={} train-fraction={train_fraction}",
        cfg.method.name(),
        graphs.len()
    );
    print_report(&header, &report, per_trial)
}
