use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use cutgraph::cycles::{self, Target};
use cutgraph::exact::{self, Budget};
use cutgraph::off::{self, MissingWeight, WeightPolicy};
use cutgraph::topology::{self, CutGraph, CutGraphJson};
use cutgraph::{gen, greedy, punctures, Error, Mesh, Result};

#[derive(Parser)]
#[command(name = "cutgraph", version, about = "Cut graphs of polyhedral surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print surface invariants and mesh statistics.
    Analyze(MeshArgs),
    /// Shortest essential or non-separating cycle.
    Cycle(CycleArgs),
    /// Cut along a cut graph and report the pieces.
    Cut(CutArgs),
    /// Greedy approximate minimum cut graph.
    Approx(ApproxArgs),
    /// Exact minimum cut graph for small meshes.
    Exact(ExactArgs),
    /// Minimum puncture-spanning tree of the boundary components.
    Mst(MstArgs),
    /// Write a generated mesh.
    Gen(GenArgs),
    /// Compare the greedy and exact cut graphs over a named suite, as CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Metric {
    Euclidean,
    Unit,
}

#[derive(Args)]
struct MeshArgs {
    /// Input mesh in OFF format.
    #[arg(long = "in")]
    input: PathBuf,
    /// Edge weights for edges not listed in --weights.
    #[arg(long, value_enum, default_value = "unit")]
    metric: Metric,
    /// Sidecar file of `u v w` edge weights.
    #[arg(long)]
    weights: Option<PathBuf>,
}

impl MeshArgs {
    fn load(&self) -> Result<Mesh> {
        let missing = match self.metric {
            Metric::Euclidean => MissingWeight::Euclidean,
            Metric::Unit => MissingWeight::Unit,
        };
        let policy = match &self.weights {
            Some(p) => WeightPolicy::Sidecar { table: off::parse_weights(&read(p)?)?, missing },
            None => match self.metric {
                Metric::Euclidean => WeightPolicy::Euclidean,
                Metric::Unit => WeightPolicy::Unit,
            },
        };
        off::load_off(&read(&self.input)?, &policy)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Nonsep,
    Essential,
}

impl Kind {
    fn target(self) -> Target {
        match self {
            Kind::Nonsep => Target::NonSeparating,
            Kind::Essential => Target::Essential,
        }
    }
}

#[derive(Args)]
struct CycleArgs {
    #[command(flatten)]
    mesh: MeshArgs,
    #[arg(long, value_enum, default_value = "nonsep")]
    kind: Kind,
    /// Only cycles through this vertex.
    #[arg(long)]
    vertex: Option<usize>,
    /// Exact search (default).
    #[arg(long, conflicts_with = "approx")]
    exact: bool,
    /// Two-approximation through a tree-cotree cut graph.
    #[arg(long)]
    approx: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the full cycle as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CutArgs {
    #[command(flatten)]
    mesh: MeshArgs,
    /// Cut graph as JSON, or as an edge list with one `u v` pair per line.
    #[arg(long)]
    cut: PathBuf,
    /// Write the boundary word of the resulting disk.
    #[arg(long)]
    emit_schema: Option<PathBuf>,
}

#[derive(Args)]
struct ApproxArgs {
    #[command(flatten)]
    mesh: MeshArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "nonsep")]
    kind: Kind,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    emit_schema: Option<PathBuf>,
}

#[derive(Args)]
struct ExactArgs {
    #[command(flatten)]
    mesh: MeshArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = Budget::default().max_edges)]
    max_edges: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    emit_schema: Option<PathBuf>,
}

#[derive(Args)]
struct MstArgs {
    #[command(flatten)]
    mesh: MeshArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    kind: GenKind,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write the edge weights as a sidecar file.
    #[arg(long, global = true)]
    weights_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenKind {
    Tetrahedron,
    Triangle,
    Prism,
    Csaszar,
    ProjectivePlane,
    Sphere {
        #[arg(long, default_value_t = 0)]
        subdivisions: usize,
    },
    Torus {
        #[arg(long, default_value_t = 1)]
        genus: usize,
        #[arg(long, default_value_t = 3)]
        resolution: usize,
    },
    Klein {
        #[arg(long, default_value_t = 3)]
        a: usize,
        #[arg(long, default_value_t = 3)]
        b: usize,
    },
    /// Grid sphere with the listed cells opened into holes.
    PuncturedSphere {
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// Cells as `x,y` pairs separated by `;`.
        #[arg(long, default_value = "")]
        cells: String,
    },
    /// Punctured sphere whose minimum cut graph is a rectilinear Steiner tree.
    Steiner {
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// Terminals as `x,y` pairs separated by `;`.
        #[arg(long)]
        points: String,
    },
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = Budget::default().max_edges)]
    max_edges: usize,
    /// Add wall-clock columns; the report is then no longer reproducible.
    #[arg(long)]
    timings: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize") + "\n"
}

fn pairs(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|p| {
            let (x, y) = p.split_once(',').ok_or_else(|| Error::Input(format!("expected 'x,y', got '{p}'")))?;
            let parse =
                |s: &str| s.trim().parse::<usize>().map_err(|_| Error::Input(format!("invalid coordinate '{s}'")));
            Ok((parse(x)?, parse(y)?))
        })
        .collect()
}

fn read_cut(mesh: &Mesh, path: &Path) -> Result<CutGraph> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        let json: CutGraphJson =
            serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        return CutGraph::from_json(mesh, &json);
    }
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let toks: Vec<&str> = line.split('#').next().unwrap_or("").split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse { line: i + 1, msg: format!("invalid vertex '{s}'") })
        };
        if toks.len() != 2 {
            return Err(Error::Parse { line: i + 1, msg: "expected 'u v'".into() });
        }
        let (u, v) = (parse(toks[0])?, parse(toks[1])?);
        if u >= mesh.num_vertices() || v >= mesh.num_vertices() {
            return Err(Error::Parse { line: i + 1, msg: format!("vertex out of range in ({u}, {v})") });
        }
        edges.push(
            mesh.edge_between(u, v)
                .ok_or_else(|| Error::Parse { line: i + 1, msg: format!("({u}, {v}) is not a mesh edge") })?,
        );
    }
    Ok(CutGraph::from_edges(mesh, edges))
}

fn emit_cut(mesh: &Mesh, g: &CutGraph, out: Option<&Path>, schema: Option<&Path>) -> Result<()> {
    if let Some(p) = out {
        write(p, &to_json(&g.to_json(mesh)))?;
    }
    if let Some(p) = schema {
        let word = topology::schema_boundary_word(mesh, g)?;
        write(p, &(topology::format_schema_word(&word) + "\n"))?;
    }
    Ok(())
}

fn cut_summary(mesh: &Mesh, g: &CutGraph) -> serde_json::Value {
    json!({
        "totalWeight": g.total_weight,
        "edges": g.edges.len(),
        "vertices": g.vertices.len(),
        "isCutGraph": topology::is_cut_graph(mesh, g),
    })
}

fn analyze(args: &MeshArgs) -> Result<String> {
    let mesh = args.load()?;
    let inv = topology::invariants(&mesh);
    Ok(to_json(&json!({
        "v": mesh.num_vertices(),
        "e": mesh.num_edges(),
        "f": mesh.num_faces(),
        "chi": inv.chi,
        "orientable": inv.orientable,
        "genus": inv.genus,
        "boundaries": inv.boundaries,
        "totalWeight": mesh.total_weight(),
    })))
}

fn cycle(args: &CycleArgs) -> Result<String> {
    let mesh = args.mesh.load()?;
    let costs = mesh.perturb(args.seed);
    let target = args.kind.target();
    if let Some(u) = args.vertex {
        if u >= mesh.num_vertices() {
            return Err(Error::Input(format!("vertex {u} out of range")));
        }
    }
    let found = if args.approx {
        if args.vertex.is_some() {
            return Err(Error::Input("--vertex requires the exact search".into()));
        }
        cycles::approx_shortest_cycle(&mesh, &costs, target)?
    } else {
        match args.vertex {
            Some(u) => match target {
                Target::Essential => cycles::shortest_essential_through(&mesh, &costs, u),
                Target::NonSeparating => cycles::shortest_nonseparating_through(&mesh, &costs, u),
            },
            None => cycles::shortest_cycle(&mesh, &costs, target),
        }
    };
    match found {
        None => {
            if let Some(p) = &args.out {
                write(p, &to_json(&json!({ "cycle": null })))?;
            }
            Ok(to_json(&json!({ "cycle": null })))
        }
        Some(c) => {
            if let Some(p) = &args.out {
                write(p, &to_json(&c.to_json(&mesh)))?;
            }
            Ok(to_json(&json!({ "cycle": { "weight": c.weight, "kind": c.kind } })))
        }
    }
}

fn cut(args: &CutArgs) -> Result<String> {
    let mesh = args.mesh.load()?;
    let g = read_cut(&mesh, &args.cut)?;
    let outcome = topology::cut_outcome(&mesh, &g)?;
    let is_disk = topology::is_cut_graph(&mesh, &g);
    if let (Some(p), true) = (&args.emit_schema, is_disk) {
        emit_cut(&mesh, &g, None, Some(p))?;
    }
    Ok(to_json(&json!({
        "isDisk": is_disk,
        "totalWeight": g.total_weight,
        "components": outcome.components,
    })))
}

fn approx(args: &ApproxArgs) -> Result<String> {
    let mesh = args.mesh.load()?;
    let report = greedy::approx_min_cut_graph_report(&mesh, args.seed, args.kind.target())?;
    emit_cut(&mesh, &report.cut_graph, args.out.as_deref(), args.emit_schema.as_deref())?;
    let mut summary = cut_summary(&mesh, &report.cut_graph);
    summary["cycleCuts"] = json!(report
        .cuts
        .iter()
        .map(|c| json!({
            "weight": c.weight,
            "kind": c.kind,
            "genusBefore": c.genus_before,
            "genusAfter": c.genus_after,
        }))
        .collect::<Vec<_>>());
    summary["unregluedWeight"] = json!(report.unreglued_weight);
    Ok(to_json(&summary))
}

fn exact_cmd(args: &ExactArgs) -> Result<String> {
    let mesh = args.mesh.load()?;
    let costs = mesh.perturb(args.seed);
    let budget = Budget { max_edges: args.max_edges, ..Budget::default() };
    let warm = greedy::approx_min_cut_graph(&mesh, args.seed, Target::NonSeparating).ok();
    let result = exact::exact_min_cut_graph_with(&mesh, &costs, &[], budget, warm.as_ref())?;
    emit_cut(&mesh, &result.cut_graph, args.out.as_deref(), args.emit_schema.as_deref())?;
    let mut summary = cut_summary(&mesh, &result.cut_graph);
    summary["tight"] = json!(exact::verify_tight_decomposition(&mesh, &result.cut_graph)?.holds());
    Ok(to_json(&summary))
}

fn mst(args: &MstArgs) -> Result<String> {
    let mesh = args.mesh.load()?;
    let pm = punctures::collapse_boundaries(&mesh, &mesh.perturb(args.seed));
    let tree = punctures::puncture_spanning_tree(&pm)?;
    let g = punctures::tree_cut_graph(&mesh, &pm, &tree);
    if let Some(p) = &args.out {
        let mut j = g.to_json(&mesh);
        // each puncture is named by the first vertex of its boundary walk
        j.punctures = Some(pm.walks.iter().map(|w| mesh.edge(w[0])[0]).collect());
        write(p, &to_json(&j))?;
    }
    Ok(to_json(&json!({
        "punctures": pm.punctures.len(),
        "mstWeight": tree.mst_weight,
        "treeWeight": tree.tree_weight,
        "totalWeight": g.total_weight,
    })))
}

fn gen_cmd(args: &GenArgs) -> Result<String> {
    let mesh = match &args.kind {
        GenKind::Tetrahedron => gen::tetrahedron(),
        GenKind::Triangle => gen::triangle(),
        GenKind::Prism => gen::prism_shell(),
        GenKind::Csaszar => gen::csaszar_torus(),
        GenKind::ProjectivePlane => gen::projective_plane(),
        GenKind::Sphere { subdivisions } => {
            if *subdivisions > 6 {
                return Err(Error::Input("at most 6 subdivisions".into()));
            }
            gen::sphere(*subdivisions)
        }
        GenKind::Torus { genus, resolution } => gen::torus(*genus, *resolution)?.mesh,
        GenKind::Klein { a, b } => gen::klein_bottle(*a, *b)?,
        GenKind::PuncturedSphere { m, cells } => gen::punctured_sphere(*m, &pairs(cells)?)?,
        GenKind::Steiner { m, points } => gen::steiner_hardness(&pairs(points)?, *m)?,
    };
    let text = off::save_off(&mesh);
    if let Some(p) = &args.weights_out {
        write(p, &off::save_weights(&mesh))?;
    }
    match &args.out {
        Some(p) => {
            write(p, &text)?;
            let inv = topology::invariants(&mesh);
            Ok(to_json(&json!({
                "v": mesh.num_vertices(),
                "e": mesh.num_edges(),
                "f": mesh.num_faces(),
                "chi": inv.chi,
                "genus": inv.genus,
                "boundaries": inv.boundaries,
            })))
        }
        None => Ok(text),
    }
}

fn bench(args: &BenchArgs) -> Result<String> {
    let mut csv = String::from("name,v,e,genus,boundaries,cycle_cuts,approx_weight,exact_weight,ratio");
    if args.timings {
        csv.push_str(",approx_ms,exact_ms");
    }
    csv.push('\n');
    let budget = Budget { max_edges: args.max_edges, ..Budget::default() };
    for (name, mesh) in gen::suite(&args.suite)? {
        let inv = topology::invariants(&mesh);
        let t = Instant::now();
        let report = greedy::approx_min_cut_graph_report(&mesh, args.seed, Target::NonSeparating)?;
        let approx_ms = t.elapsed().as_secs_f64() * 1e3;
        let t = Instant::now();
        let exact = match exact::exact_min_cut_graph_with(
            &mesh,
            &mesh.perturb(args.seed),
            &[],
            budget,
            Some(&report.cut_graph),
        ) {
            Ok(r) => Some(r.cut_graph.total_weight),
            Err(Error::BudgetExceeded { .. } | Error::TooLarge(_)) => None,
            Err(e) => return Err(e),
        };
        let exact_ms = t.elapsed().as_secs_f64() * 1e3;
        let a = report.cut_graph.total_weight;
        let (exact_col, ratio_col) = match exact {
            Some(x) if x > 0.0 => (format!("{x}"), format!("{}", a / x)),
            Some(x) => (format!("{x}"), if a == 0.0 { "1".into() } else { "inf".into() }),
            None => (String::new(), String::new()),
        };
        write!(
            csv,
            "{name},{},{},{},{},{},{a},{exact_col},{ratio_col}",
            mesh.num_vertices(),
            mesh.num_edges(),
            inv.genus,
            inv.boundaries,
            report.cuts.len()
        )
        .unwrap();
        if args.timings {
            write!(csv, ",{approx_ms:.3},{exact_ms:.3}").unwrap();
        }
        csv.push('\n');
    }
    if let Some(p) = &args.out {
        write(p, &csv)?;
    }
    Ok(csv)
}

fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Cycle(a) => cycle(a),
        Command::Cut(a) => cut(a),
        Command::Approx(a) => approx(a),
        Command::Exact(a) => exact_cmd(a),
        Command::Mst(a) => mst(a),
        Command::Gen(a) => gen_cmd(a),
        Command::Bench(a) => bench(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } | Error::TooLarge(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
