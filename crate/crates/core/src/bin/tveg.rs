use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use tveg::exgraph::{build_series, build_with_segmentation, Threshold};
use tveg::export::{
    export_graph_json, export_segmentation, export_tracks_geometry, export_tveg_json, read_json,
    read_tveg_json, write_json, Stacking,
};
use tveg::field::{load_series, save_series, FieldSeries, Gauss8};
use tveg::query::{self, Query, Region};
use tveg::temporal::{temporal_arcs, ScoreWeights, Tveg};
use tveg::tracks::{self, TrackMode};
use tveg::{Error, Result};

/// Time-varying extremum graphs for 3D scalar field series.
///
/// Set TVEG_THREADS to bound the worker pool.
#[derive(Parser)]
#[command(name = "tveg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic series.
    Gen(GenArgs),
    /// Per-step extremum graphs (and optional label volumes).
    Eg(EgArgs),
    /// Full time-varying extremum graph.
    Tveg(TvegArgs),
    /// Topological events of a computed tveg.
    Events(EventsArgs),
    /// Tracks of a computed tveg.
    Tracks(TracksArgs),
    /// Queries over a computed tveg.
    Query(QueryArgs),
    /// Stacked track geometry.
    Export(ExportArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, required = true)]
    gauss8: bool,
    #[arg(long, default_value_t = 32)]
    dims: usize,
    #[arg(long, default_value_t = 50)]
    steps: usize,
    #[arg(long, default_value_t = Gauss8::DEFAULT_AMPLITUDE)]
    amplitude: f64,
    #[arg(long, default_value_t = Gauss8::DEFAULT_SIGMA)]
    sigma: f64,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long)]
    manifest: PathBuf,
    /// Persistence threshold: absolute, or a fraction of the range with an `r` suffix.
    #[arg(long, default_value = "0.05r")]
    theta: Threshold,
    /// Restrict to steps p..=r, written `p:r`.
    #[arg(long)]
    range: Option<String>,
}

#[derive(Args)]
struct EgArgs {
    #[command(flatten)]
    series: SeriesArgs,
    /// Also write per-step label volumes with JSON sidecars.
    #[arg(long)]
    segmentation: bool,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct TvegArgs {
    #[command(flatten)]
    series: SeriesArgs,
    /// Weights of persistence, value, distance and neighborhood terms.
    #[arg(long, default_value = "0.25,0.25,0.25,0.25")]
    weights: ScoreWeights,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct EventsArgs {
    #[arg(long)]
    tveg: PathBuf,
    /// Time window `t0:t1`.
    #[arg(long)]
    window: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TracksArgs {
    #[arg(long)]
    tveg: PathBuf,
    #[arg(long, default_value = "paths")]
    mode: TrackMode,
    /// Refine by overlap of clipped regions; needs --manifest.
    #[arg(long)]
    refine: bool,
    #[arg(long)]
    manifest: Option<PathBuf>,
    #[arg(long, default_value_t = 0.1)]
    iso: f64,
    #[arg(long, default_value_t = 10)]
    min_len: usize,
    /// Group tracks whose maxima share a saddle.
    #[arg(long)]
    collate: bool,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct QueryArgs {
    #[arg(long)]
    tveg: PathBuf,
    /// JSON request file holding one query.
    #[arg(long, conflicts_with_all = ["longer", "least_deviation", "region", "neighborhood"])]
    request: Option<PathBuf>,
    #[arg(long)]
    longer: Option<usize>,
    #[arg(long)]
    least_deviation: Option<usize>,
    /// Box `x0,y0,z0,x1,y1,z1`; uses --window or the full series.
    #[arg(long, allow_hyphen_values = true)]
    region: Option<String>,
    /// Alone: events in `t0:t1`.
    #[arg(long)]
    window: Option<String>,
    /// Track id whose extremum-graph neighborhood is reported.
    #[arg(long)]
    neighborhood: Option<usize>,
    #[arg(long, default_value_t = 1)]
    hops: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long)]
    tveg: PathBuf,
    /// Track JSON from `tracks --mode paths`; defaults to unrefined simple paths.
    #[arg(long)]
    tracks: Option<PathBuf>,
    #[arg(long, default_value_t = 0.1)]
    z_scale: f64,
    /// Defaults to the domain's z extent.
    #[arg(long)]
    slab_height: Option<f64>,
    #[arg(long)]
    spatial: bool,
    #[arg(short, long)]
    output: PathBuf,
}

fn parse_pair(s: &str, what: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidParameter(format!("{what} must look like a:b, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn parse_box(s: &str) -> Result<Region> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidParameter(format!("bad box {s:?}")))?;
    if v.len() != 6 {
        return Err(Error::InvalidParameter(format!("box needs 6 numbers, got {}", v.len())));
    }
    Region::new([v[0], v[1], v[2]], [v[3], v[4], v[5]])
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::Io {
        path: dir.to_path_buf(),
        source: e,
    })
}

fn load(args: &SeriesArgs) -> Result<FieldSeries> {
    let series = load_series(&args.manifest)?;
    match &args.range {
        Some(r) => {
            let (p, r) = parse_pair(r, "--range")?;
            series.window(p, r)
        }
        None => Ok(series),
    }
}

fn secs(t: Instant) -> f64 {
    t.elapsed().as_secs_f64()
}

fn gen(a: GenArgs) -> Result<()> {
    let start = Instant::now();
    let g8 = Gauss8 {
        dims: [a.dims; 3],
        steps: a.steps,
        amplitude: a.amplitude,
        sigma: a.sigma,
    };
    let series = g8.generate()?;
    let manifest = save_series(&series, &a.output)?;
    println!(
        "gen: {} steps of {n}x{n}x{n} -> {} ({:.3} s)",
        series.len(),
        manifest.display(),
        secs(start),
        n = a.dims
    );
    Ok(())
}

fn eg(a: EgArgs) -> Result<()> {
    let start = Instant::now();
    let series = load(&a.series)?;
    let theta = a.series.theta.resolve(series.range());
    create_dir(&a.output)?;
    let (mut maxima, mut saddles) = (0, 0);
    for field in series.fields() {
        let (g, seg) = build_with_segmentation(field, theta);
        maxima += g.maxima.len();
        saddles += g.saddles.len();
        export_graph_json(&g, &a.output.join(format!("eg_{:04}.json", g.t)))?;
        if a.segmentation {
            export_segmentation(&seg, &g, &a.output.join(format!("seg_{:04}", g.t)))?;
        }
    }
    println!(
        "eg: {} steps, {maxima} maxima, {saddles} saddles, theta {theta} -> {} ({:.3} s)",
        series.len(),
        a.output.display(),
        secs(start)
    );
    Ok(())
}

fn tveg_cmd(a: TvegArgs) -> Result<()> {
    let start = Instant::now();
    let series = load(&a.series)?;
    if series.len() < 2 {
        return Err(Error::TooFewSteps);
    }
    println!("load: {} steps ({:.3} s)", series.len(), secs(start));
    let t = Instant::now();
    let graphs = build_series(&series, a.series.theta)?;
    let nodes: usize = graphs.iter().map(|g| g.node_count()).sum();
    println!("eg: {} graphs, {nodes} nodes ({:.3} s)", graphs.len(), secs(t));
    let t = Instant::now();
    let tv = temporal_arcs(graphs, &a.weights)?;
    println!(
        "arcs: {} temporal arcs, {} events ({:.3} s)",
        tv.arcs().count(),
        tv.events.len(),
        secs(t)
    );
    create_dir(&a.output)?;
    let path = a.output.join("tveg.json");
    export_tveg_json(&tv, &path)?;
    println!("tveg: -> {} ({:.3} s total)", path.display(), secs(start));
    Ok(())
}

fn events(a: EventsArgs) -> Result<()> {
    let start = Instant::now();
    let tv = read_tveg_json(&a.tveg)?;
    let (lo, hi) = tv.time_range();
    let (t0, t1) = match &a.window {
        Some(w) => parse_pair(w, "--window")?,
        None => (lo, hi),
    };
    let ev = query::events_in_window(&tv, t0, t1)?;
    if let Some(out) = &a.output {
        write_json(&ev, out)?;
    }
    println!(
        "events [{t0},{t1}]: {} merges, {} splits, {} deletions, {} generations ({:.3} s)",
        ev.merges.len(),
        ev.splits.len(),
        ev.deletions.len(),
        ev.generations.len(),
        secs(start)
    );
    Ok(())
}

fn tracks_cmd(a: TracksArgs) -> Result<()> {
    let start = Instant::now();
    let tv = read_tveg_json(&a.tveg)?;
    if a.mode == TrackMode::Components {
        if a.refine || a.collate {
            return Err(Error::InvalidParameter(
                "--refine and --collate apply to --mode paths".into(),
            ));
        }
        let comps = tracks::components(&tv);
        write_json(&serde_json::json!({ "mode": "components", "components": comps }), &a.output)?;
        println!("tracks: {} components ({:.3} s)", comps.len(), secs(start));
        return Ok(());
    }
    let paths = if a.refine {
        let manifest = a.manifest.as_ref().ok_or_else(|| {
            Error::InvalidParameter("--refine needs --manifest for the region geometry".into())
        })?;
        let series = load_series(manifest)?;
        tracks::refine_by_overlap(&tv, &series, a.iso, a.min_len)?
    } else {
        tracks::simple_paths(&tv)
    };
    let groups = a.collate.then(|| tracks::collate_by_saddle(&paths, &tv));
    write_json(
        &serde_json::json!({ "mode": "paths", "tracks": paths, "groups": groups }),
        &a.output,
    )?;
    let longest = paths.iter().map(|t| t.len()).max().unwrap_or(0);
    match &groups {
        Some(g) => println!(
            "tracks: {} paths, longest {longest}, {} groups ({:.3} s)",
            paths.len(),
            g.len(),
            secs(start)
        ),
        None => println!("tracks: {} paths, longest {longest} ({:.3} s)", paths.len(), secs(start)),
    }
    Ok(())
}

fn query_cmd(a: QueryArgs) -> Result<()> {
    let start = Instant::now();
    let tv = read_tveg_json(&a.tveg)?;
    let (lo, hi) = tv.time_range();
    let window = a.window.as_deref().map(|w| parse_pair(w, "--window")).transpose()?;
    let q = if let Some(path) = &a.request {
        read_json::<Query>(path)?
    } else if let Some(k) = a.longer {
        Query::LengthThreshold { k }
    } else if let Some(n) = a.least_deviation {
        Query::LeastDeviation { n }
    } else if let Some(b) = &a.region {
        let r = parse_box(b)?;
        let (t0, t1) = window.unwrap_or((lo, hi));
        Query::Region { min: r.min, max: r.max, t0, t1 }
    } else if let Some(track) = a.neighborhood {
        Query::Neighborhood { track, hops: a.hops }
    } else if let Some((t0, t1)) = window {
        Query::WindowEvents { t0, t1 }
    } else {
        return Err(Error::InvalidParameter(
            "no query given (use --longer, --least-deviation, --region, --window, --neighborhood or --request)".into(),
        ));
    };
    let paths = tracks::simple_paths(&tv);
    let (result, summary) = match &q {
        Query::LengthThreshold { k } => {
            let r = query::tracks_longer_than(&paths, *k);
            let n = r.len();
            (serde_json::json!({ "tracks": r }), format!("{n} tracks with length >= {k}"))
        }
        Query::LeastDeviation { n } => {
            let r = query::least_deviation(&paths, &tv, *n)?;
            let rows: Vec<_> = r
                .iter()
                .map(|(t, d)| serde_json::json!({ "deviation": d, "track": t }))
                .collect();
            (serde_json::json!({ "tracks": rows }), format!("{} tracks by least deviation", rows.len()))
        }
        Query::Region { min, max, t0, t1 } => {
            let s = query::select_in_region(&tv, &Region::new(*min, *max)?, *t0, *t1)?;
            let msg = format!(
                "{} maxima, {} saddles, {} temporal arcs in region",
                s.maxima.len(),
                s.saddles.len(),
                s.temporal_arcs.len()
            );
            (serde_json::to_value(&s).expect("selection serializes"), msg)
        }
        Query::WindowEvents { t0, t1 } => {
            let e = query::events_in_window(&tv, *t0, *t1)?;
            let msg = format!("{} events in [{t0},{t1}]", e.len());
            (serde_json::to_value(&e).expect("events serialize"), msg)
        }
        Query::Neighborhood { track, hops } => {
            let t = paths
                .get(*track)
                .ok_or_else(|| Error::InvalidParameter(format!("no track {track}")))?;
            let nb = query::track_neighborhood(&tv, t, *hops)?;
            let total: usize = nb.values().map(|v| v.len()).sum();
            (
                serde_json::json!({ "track": track, "hops": hops, "steps": nb }),
                format!("{total} nodes around track {track} within {hops} hops"),
            )
        }
    };
    let doc = serde_json::json!({ "query": q, "result": result });
    match &a.output {
        Some(path) => write_json(&doc, path)?,
        None => print!("{}", tveg::export::to_canonical_json(&doc)),
    }
    println!("query: {summary} ({:.3} s)", secs(start));
    Ok(())
}

#[derive(serde::Deserialize)]
struct TrackFile {
    tracks: Vec<tracks::Track>,
}

fn export(a: ExportArgs) -> Result<()> {
    let start = Instant::now();
    let tv: Tveg = read_tveg_json(&a.tveg)?;
    let paths = match &a.tracks {
        Some(p) => read_json::<TrackFile>(p)?.tracks,
        None => tracks::simple_paths(&tv),
    };
    let stacking = Stacking {
        z_scale: a.z_scale,
        slab_height: a.slab_height,
        spatial_arcs: a.spatial,
    };
    export_tracks_geometry(&paths, &tv, &stacking, &a.output)?;
    let arcs: usize = paths.iter().map(|t| t.arcs.len()).sum();
    println!(
        "export: {} tracks, {arcs} arcs -> {} ({:.3} s)",
        paths.len(),
        a.output.display(),
        secs(start)
    );
    Ok(())
}

fn init_threads() -> Result<()> {
    let Ok(v) = std::env::var("TVEG_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::InvalidParameter(format!("TVEG_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = init_threads().and_then(|()| match cli.command {
        Command::Gen(a) => gen(a),
        Command::Eg(a) => eg(a),
        Command::Tveg(a) => tveg_cmd(a),
        Command::Events(a) => events(a),
        Command::Tracks(a) => tracks_cmd(a),
        Command::Query(a) => query_cmd(a),
        Command::Export(a) => export(a),
    });
    match run {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
