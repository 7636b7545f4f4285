//! Argument definitions and the mapping from subcommands to library calls.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use blowup_core::graph::{
    amplify_blowup, clique_density, embed_monotone_path, find_balanced_biclique, find_blowup,
    find_induced_monotone_path, Blowup, BlowupOptions, DensityMode, ExactBicliqueOracle, PathOutcome,
};
use blowup_core::poset::{
    chain_or_antichain, check_partition, find_blowup_multi, find_blowup_r1, incomparability_partition,
    longest_chain, maximum_antichain, CliqueSource, Dichotomy,
};
use blowup_core::ramsey::{
    blue_layer_decomposition, blue_layer_subset, check_certificate, compute_f_resumable, verify_level, FOutcome,
    FrontierSnapshot, LevelOutcome, SearchStats, WitnessCertificate,
};
use blowup_core::sphere::{
    build_construction, search_be_quadruples, verify_construction, ConstructionGraph, ConstructionSpec, PointMode,
    VerifyOptions,
};
use blowup_core::vc::{
    biclique_via_packing, dense_vc1_biclique, haussler_packing, is_shattered, make_vc2_no_b2_example,
    nested_half_graph, vc1_checks, vc_dimension, Vc1Case, Vc1Options, Vc1Thresholds, DEFAULT_SHATTER_CAP,
};
use blowup_core::{
    dependency_digraph, has_admissible_subset, is_admissible, MultiOrder, OrderedColoring, OrderedGraph,
    PartitionParams, Poset, SearchOptions, SetSystem,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{GlobalArgs, RunConfig};
use crate::input::load;
use crate::report::Status;
use crate::repro;

#[derive(Parser, Debug)]
#[command(name = "blowup", version, about = "Ordered Ramsey search, blowup constructions and their checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Colorings, admissibility and the f(k) search.
    #[command(subcommand)]
    Ramsey(RamseyCmd),
    /// Build the sphere-based construction.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Check a construction or search for forbidden point configurations.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Posets: generation, chains, the dichotomy, partitions and blowups.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Set systems, VC-dimension and bicliques in bounded-VC graphs.
    #[command(subcommand)]
    Vc(VcCmd),
    /// Ordered graphs: generation, densities, paths, blowups and embeddings.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Re-run acceptance experiments with pinned seeds.
    Repro {
        /// `all`, an experiment name, or a criterion number.
        #[arg(default_value = "all")]
        names: Vec<String>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct In {
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum RamseyCmd {
    /// Smallest N such that every coloring of K_N has an admissible k-subset.
    F {
        #[arg(long)]
        k: usize,
        /// Continue from a frontier snapshot written on an earlier timeout.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Where to write the frontier snapshot if the budget runs out.
        #[arg(long)]
        snapshot_out: Option<PathBuf>,
        #[arg(long)]
        block_vertices: Option<usize>,
    },
    /// Does every coloring on N vertices have an admissible k-subset?
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Check a witness certificate, or a bare coloring against --k.
    Check {
        #[command(flatten)]
        input: In,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Dependency digraph and admissibility; with --k, search for an admissible k-subset.
    Admissible {
        #[command(flatten)]
        input: In,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Blue layer decomposition and the constructive k-subset.
    Layers {
        #[command(flatten)]
        input: In,
        #[arg(long)]
        k: usize,
    },
    /// Uniformly random coloring.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p_red: f64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PointsArg {
    Random,
    Center,
}

#[derive(Subcommand, Debug)]
pub enum ConstructCmd {
    /// Point sets on the sphere and the induced ordered graph.
    Sphere {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        eps: f64,
        #[arg(long, value_enum, default_value = "random")]
        points: PointsArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Induced-path search, kernel scan, complement density and biclique.
    Construction {
        #[command(flatten)]
        input: In,
        #[arg(long, default_value_t = 200_000)]
        density_samples: u64,
    },
    /// Randomised search for four points violating the quadruple theorem.
    Quadruples {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        mu: f64,
        #[arg(long, default_value_t = 100_000)]
        evaluations: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PosetKind {
    Dag,
    Chain,
    Antichain,
    Perm2,
    Blocks,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Scale {
    Desk,
    Asymptotic,
}

#[derive(Subcommand, Debug)]
pub enum PosetCmd {
    /// Random poset of the given kind.
    Gen {
        #[arg(long, value_enum, default_value = "dag")]
        kind: PosetKind,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Relation probability for `dag`.
        #[arg(long, default_value_t = 0.1)]
        p: f64,
        /// Block sizes for `blocks`.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
    },
    /// r random 2-dimensional orders on one ground set.
    GenMulti {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Longest chain and maximum antichain.
    Chain {
        #[command(flatten)]
        input: In,
    },
    /// ℓ chained t-blocks, or q pairwise incomparable t-sets.
    Dichotomy {
        #[command(flatten)]
        input: In,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        q: usize,
    },
    /// Partition into equal parts with few inhomogeneous pairs, checked.
    Partition {
        #[command(flatten)]
        input: In,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        eps: f64,
        #[arg(long, value_enum, default_value = "desk")]
        scale: Scale,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
    },
    /// Largest h-part blowup in the comparability graph.
    Blowup {
        #[command(flatten)]
        input: In,
        #[arg(long)]
        h: usize,
    },
    /// Blowup in one order of an r-order, from cliques of the intersection.
    Multi {
        #[command(flatten)]
        input: In,
        #[arg(long)]
        h: usize,
        /// Stop exact enumeration after this many cliques.
        #[arg(long, conflicts_with = "sampled")]
        cap: Option<u64>,
        /// Use this many seeded greedy cliques instead.
        #[arg(long)]
        sampled: Option<u64>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Method {
    Packing,
    Vc1,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CaseArg {
    Auto,
    Dense,
    Sparse,
}

#[derive(Subcommand, Debug)]
pub enum VcCmd {
    /// VC-dimension of a set system, or of a graph's neighbourhoods.
    Dim {
        #[command(flatten)]
        input: In,
        #[arg(long, default_value_t = DEFAULT_SHATTER_CAP)]
        cap: usize,
    },
    /// Is the given set shattered by the system?
    Shattered {
        #[command(flatten)]
        input: In,
        /// 1-based elements.
        #[arg(long, value_delimiter = ',')]
        set: Vec<usize>,
    },
    /// Maximal packing of sets at pairwise symmetric-difference distance ≥ s.
    Packing {
        #[command(flatten)]
        input: In,
        #[arg(long)]
        s: usize,
    },
    /// Large balanced biclique in a dense graph of VC-dimension at most 1.
    Biclique {
        #[command(flatten)]
        input: In,
        /// Density parameter; defaults to the graph's edge density.
        #[arg(long)]
        c: Option<f64>,
        #[arg(long, value_enum, default_value = "packing")]
        method: Method,
        #[arg(long, value_enum, default_value = "auto")]
        case: CaseArg,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, default_value_t = 0.25)]
        q_scale: f64,
        #[arg(long, default_value_t = 0.1)]
        gamma: f64,
        #[arg(long, default_value_t = 8)]
        parts: usize,
        #[arg(long, default_value_t = 20_000)]
        triple_budget: usize,
        /// Skip the VC ≤ 1 checks before the vc1 method.
        #[arg(long)]
        no_precondition: bool,
        /// Auto mode takes the dense case at c ≥ this.
        #[arg(long, default_value_t = 0.99)]
        dense_c: f64,
        /// Dense case minimum-degree trim, as a fraction of n.
        #[arg(long, default_value_t = 2.0 / 3.0)]
        min_degree: f64,
        /// Sparse case: neighbours needed in the dense part, as a fraction of m.
        #[arg(long, default_value_t = 0.8)]
        into_dense: f64,
        /// Sparse case: neighbours allowed in the sparse part, as a fraction of m.
        #[arg(long, default_value_t = 0.2)]
        into_sparse: f64,
        /// Sparse case: neighbours the chosen vertex needs in U_j, as a fraction of m.
        #[arg(long, default_value_t = 0.75)]
        pick: f64,
    },
    /// Exhaustive checks of the two VC ≤ 1 consequences.
    Checks {
        #[command(flatten)]
        input: In,
    },
    /// Complement of a random C₄-free bipartite graph, of VC-dimension at most 2.
    GenVc2 {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        biclique_budget: u64,
    },
    /// Nested half graph of VC-dimension 1 at the requested density.
    GenHalf {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        density: f64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GraphKind {
    Random,
    Complete,
    Path,
    Multipartite,
}

#[derive(Subcommand, Debug)]
pub enum GraphCmd {
    /// Ordered graph of the given kind.
    Gen {
        #[arg(long, value_enum, default_value = "random")]
        kind: GraphKind,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
    },
    /// K_r density, exact unless --samples is given.
    Density {
        #[command(flatten)]
        input: In,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 10_000_000_000)]
        exact_cap: u128,
    },
    /// Induced monotone path on m vertices.
    Path {
        #[command(flatten)]
        input: In,
        #[arg(long)]
        m: usize,
    },
    /// K_k[t] with parts in increasing order.
    Blowup {
        #[command(flatten)]
        input: In,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
    },
    /// Largest balanced biclique, exact within the node budget.
    Biclique {
        #[command(flatten)]
        input: In,
    },
    /// Complement of an ordered graph.
    Complement {
        #[command(flatten)]
        input: In,
    },
    /// Equal subsets of the given parts, complete along each pattern edge.
    Amplify {
        #[command(flatten)]
        input: In,
        /// Blowup JSON holding the parts.
        #[arg(long)]
        parts: PathBuf,
        /// Pattern edges such as `1-2,2-3` (1-based part indices).
        #[arg(long, value_delimiter = ',')]
        pattern: Vec<String>,
    },
    /// Induced monotone path through 2k candidate sets, guided by a coloring.
    Embed {
        #[command(flatten)]
        input: In,
        /// Blowup JSON holding the 2k candidate sets.
        #[arg(long)]
        sets: PathBuf,
        /// Admissible coloring on k vertices.
        #[arg(long)]
        coloring: PathBuf,
    },
}

/// What a command produced, before it is wrapped into a report.
pub struct Outcome {
    pub status: Status,
    pub results: Value,
    /// Graph rendered by the csv and dot formats.
    pub graph: Option<OrderedGraph>,
    pub timings: BTreeMap<String, u64>,
}

impl Outcome {
    fn ok(results: Value) -> Self {
        Outcome { status: Status::Ok, results, graph: None, timings: BTreeMap::new() }
    }

    fn status(status: Status, results: Value) -> Self {
        Outcome { status, results, graph: None, timings: BTreeMap::new() }
    }

    fn with_graph(mut self, g: OrderedGraph) -> Self {
        self.graph = Some(g);
        self
    }
}

fn negative_if(bad: bool) -> Status {
    if bad {
        Status::Negative
    } else {
        Status::Ok
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Certificates inside a report leave `checked_at` at zero so that `results`
/// stays deterministic.
fn certificate(k: usize, c: &OrderedColoring) -> WitnessCertificate {
    WitnessCertificate { checked_at: 0, ..WitnessCertificate::new(k, c) }
}

fn graph_in(p: &Path) -> Result<OrderedGraph, String> {
    load(p, &["graph", "complement", "construction"])
}

fn poset_in(p: &Path) -> Result<Poset, String> {
    load(p, &["poset"])
}

fn coloring_in(p: &Path) -> Result<OrderedColoring, String> {
    load(p, &["coloring", "witness"])
}

fn parts_in(p: &Path) -> Result<Vec<Vec<usize>>, String> {
    load::<Blowup>(p, &["blowup", "parts"]).map(|b| b.parts)
}

pub fn execute(cmd: &Command, cfg: &RunConfig) -> Result<Outcome, String> {
    match cmd {
        Command::Ramsey(c) => ramsey(c, cfg),
        Command::Construct(c) => construct(c, cfg),
        Command::Verify(c) => verify(c, cfg),
        Command::Poset(c) => poset(c, cfg),
        Command::Vc(c) => vc(c, cfg),
        Command::Graph(c) => graph(c, cfg),
        Command::Repro { names } => run_repro(names),
    }
}

fn search_options(cfg: &RunConfig, block_vertices: Option<usize>) -> SearchOptions {
    SearchOptions { budget: cfg.budget(), workers: cfg.workers, block_vertices }
}

/// Search statistics without their wall time, which goes to the timings.
fn stats_value(stats: &SearchStats, timings: &mut BTreeMap<String, u64>) -> Value {
    timings.insert("search".into(), stats.wall_ms);
    to_value(&SearchStats { wall_ms: 0, ..stats.clone() })
}

fn ramsey(cmd: &RamseyCmd, cfg: &RunConfig) -> Result<Outcome, String> {
    match cmd {
        RamseyCmd::F { k, resume, snapshot_out, block_vertices } => {
            let snapshot = match resume {
                Some(p) => Some(load::<FrontierSnapshot>(p, &["snapshot"])?),
                None => None,
            };
            let mut timings = BTreeMap::new();
            match compute_f_resumable(*k, &search_options(cfg, *block_vertices), snapshot).map_err(err)? {
                FOutcome::Complete(r) => {
                    let stats = stats_value(&r.stats, &mut timings);
                    let certificate = r.witness.as_ref().map(|w| certificate(r.k, w));
                    let results =
                        json!({"k": r.k, "f_value": r.f_value, "witness": r.witness, "certificate": certificate, "stats": stats});
                    Ok(Outcome::ok(results).with_timings(timings))
                }
                FOutcome::Timeout { k, refuted_level, witness, snapshot, stats } => {
                    if let Some(p) = snapshot_out {
                        let text = serde_json::to_string(&snapshot).map_err(err)?;
                        std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()))?;
                    }
                    let results = json!({
                        "k": k,
                        "lower_bound": refuted_level.map(|n| n + 1),
                        "certificate": witness.as_ref().map(|w| certificate(k, w)),
                        "witness": witness,
                        "unfinished_level": snapshot.n,
                        "pending_prefixes": snapshot.pending.len(),
                        "snapshot": snapshot_out.as_ref().map(|p| p.display().to_string()),
                        "stats": stats_value(&stats, &mut timings),
                    });
                    Ok(Outcome::status(Status::Timeout, results).with_timings(timings))
                }
            }
        }
        RamseyCmd::Verify { n, k } => {
            let rep = verify_level(*n, *k, &search_options(cfg, None)).map_err(err)?;
            let mut timings = BTreeMap::new();
            let stats = stats_value(&rep.stats, &mut timings);
            let (status, outcome) = match rep.outcome {
                LevelOutcome::Holds => (Status::Ok, json!({"holds": true})),
                LevelOutcome::Counterexample(c) => (
                    Status::Negative,
                    json!({"holds": false, "certificate": certificate(*k, &c), "counterexample": c}),
                ),
                LevelOutcome::Timeout(s) => (Status::Timeout, json!({"pending_prefixes": s.pending.len()})),
            };
            let mut results = json!({"n": n, "k": k, "stats": stats});
            merge(&mut results, outcome);
            Ok(Outcome::status(status, results).with_timings(timings))
        }
        RamseyCmd::Check { input, k } => {
            let cert = match (load::<WitnessCertificate>(&input.input, &["certificate"]), k) {
                (Ok(c), None) => c,
                (Ok(c), Some(k)) if c.k == *k => c,
                (_, Some(k)) => WitnessCertificate::new(*k, &coloring_in(&input.input)?),
                (Err(e), None) => return Err(format!("{e} (pass --k to check a bare coloring)")),
            };
            let certified = check_certificate(&cert).map_err(err)?;
            Ok(Outcome::status(
                negative_if(!certified),
                json!({
                    "k": cert.k,
                    "n": cert.n,
                    "certified": certified,
                    "f_lower_bound": certified.then_some(cert.n + 1),
                }),
            ))
        }
        RamseyCmd::Admissible { input, k } => {
            let chi = coloring_in(&input.input)?;
            let arcs: Vec<[usize; 2]> = dependency_digraph(&chi).arcs().iter().map(|&(a, b)| [a + 1, b + 1]).collect();
            let admissible = is_admissible(&chi);
            let mut results = json!({"n": chi.n(), "arcs": arcs, "admissible": admissible});
            let status = match k {
                None => negative_if(!admissible),
                Some(k) => {
                    let subset = has_admissible_subset(&chi, *k).map_err(err)?;
                    let found = subset.is_some();
                    merge(&mut results, json!({"k": k, "subset": subset.map(|s| one_based(&s))}));
                    negative_if(!found)
                }
            };
            Ok(Outcome::status(status, results))
        }
        RamseyCmd::Layers { input, k } => {
            let chi = coloring_in(&input.input)?;
            let d = blue_layer_decomposition(&chi);
            let subset = blue_layer_subset(&chi, *k);
            let layers: Vec<Vec<usize>> = d.layers.iter().map(|l| one_based(l)).collect();
            Ok(Outcome::status(
                negative_if(subset.is_none()),
                json!({"k": k, "sigma": d.sigma, "layers": layers, "subset": subset.map(|s| one_based(&s))}),
            ))
        }
        RamseyCmd::Gen { n, p_red } => {
            if !(0.0..=1.0).contains(p_red) {
                return Err("p-red must lie in [0, 1]".into());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            OrderedColoring::try_all_blue(*n).map_err(err)?;
            let chi = OrderedColoring::random(*n, *p_red, &mut rng);
            Ok(Outcome::ok(json!({"seed": cfg.seed, "coloring": chi})))
        }
    }
}

impl Outcome {
    fn with_timings(mut self, timings: BTreeMap<String, u64>) -> Self {
        self.timings.extend(timings);
        self
    }
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn construct(cmd: &ConstructCmd, cfg: &RunConfig) -> Result<Outcome, String> {
    let ConstructCmd::Sphere { k, h, n, eps, points } = cmd;
    let mut spec = ConstructionSpec::new(*k, *h, *n, *eps, cfg.seed);
    spec.points = match points {
        PointsArg::Random => PointMode::Random,
        PointsArg::Center => PointMode::Center,
    };
    let cg = build_construction(&spec).map_err(err)?;
    let g = cg.graph.clone();
    Ok(Outcome::ok(json!({"seed": cfg.seed, "mu": spec.mu(), "edges": g.edge_count(), "construction": cg}))
        .with_graph(g))
}

fn verify(cmd: &VerifyCmd, cfg: &RunConfig) -> Result<Outcome, String> {
    match cmd {
        VerifyCmd::Construction { input, density_samples } => {
            let cg: ConstructionGraph = load(&input.input, &["construction"])?;
            let opts = VerifyOptions {
                path_node_budget: cfg.node_budget,
                density_samples: *density_samples,
                seed: cfg.seed,
                ..Default::default()
            };
            let rep = verify_construction(&cg, &opts);
            let status = match rep.path.outcome {
                PathOutcome::Found(_) => Status::Negative,
                _ if !rep.kernel.holds() => Status::Negative,
                PathOutcome::Timeout => Status::Timeout,
                PathOutcome::None => Status::Ok,
            };
            Ok(Outcome::status(status, json!({"seed": cfg.seed, "report": rep})))
        }
        VerifyCmd::Quadruples { h, mu, evaluations } => {
            let r = search_be_quadruples(*h, *mu, *evaluations, cfg.seed);
            Ok(Outcome::status(negative_if(r.violations > 0), to_value(&r)))
        }
    }
}

fn poset(cmd: &PosetCmd, cfg: &RunConfig) -> Result<Outcome, String> {
    match cmd {
        PosetCmd::Gen { kind, n, p, sizes } => {
            let poset = match kind {
                PosetKind::Dag => {
                    if !(0.0..=1.0).contains(p) {
                        return Err("p must lie in [0, 1]".into());
                    }
                    Poset::random_dag(*n, *p, cfg.seed)
                }
                PosetKind::Chain => Poset::total_order(*n),
                PosetKind::Antichain => Poset::antichain(*n),
                PosetKind::Perm2 => Poset::random_perm2(*n, cfg.seed),
                PosetKind::Blocks => {
                    if sizes.is_empty() {
                        return Err("--sizes is required for blocks".into());
                    }
                    Poset::block_order(sizes)
                }
            };
            Ok(Outcome::ok(json!({"seed": cfg.seed, "relations": poset.relation_count(), "poset": poset})))
        }
        PosetCmd::GenMulti { n, r } => {
            if *r == 0 {
                return Err("r must be positive".into());
            }
            Ok(Outcome::ok(json!({"seed": cfg.seed, "multi": MultiOrder::random_perm2(*n, *r, cfg.seed)})))
        }
        PosetCmd::Chain { input } => {
            let p = poset_in(&input.input)?;
            let chain = longest_chain(&p);
            let anti = maximum_antichain(&p, &p.set(0..p.n()));
            Ok(Outcome::ok(json!({
                "n": p.n(),
                "height": chain.len(),
                "chain": one_based(&chain),
                "width": anti.len(),
                "antichain": one_based(&anti),
            })))
        }
        PosetCmd::Dichotomy { input, l, t, q } => {
            if *l == 0 || *t == 0 || *q == 0 {
                return Err("l, t and q must be positive".into());
            }
            let p = poset_in(&input.input)?;
            let d = chain_or_antichain(&p, *l, *t, *q);
            Ok(Outcome::status(negative_if(d == Dichotomy::Neither), json!({"result": d})))
        }
        PosetCmd::Partition { input, k, eps, scale, t, q, s, l } => {
            let p = poset_in(&input.input)?;
            let mut params = match scale {
                Scale::Desk => PartitionParams::desk(p.n(), *k, *eps),
                Scale::Asymptotic => PartitionParams::asymptotic(p.n(), *k, *eps),
            };
            params.t = t.unwrap_or(params.t);
            params.q = q.unwrap_or(params.q);
            params.s = s.unwrap_or(params.s);
            params.l = l.unwrap_or(params.l);
            let res = incomparability_partition(&p, &params).map_err(err)?;
            let check = check_partition(&p, &res, &params);
            let results = json!({
                "params": params,
                "inhomogeneous_fraction": res.inhomogeneous_fraction(),
                "check": match &check { Ok(()) => "passed".to_string(), Err(e) => e.to_string() },
                "result": res,
            });
            Ok(Outcome::status(negative_if(check.is_err()), results))
        }
        PosetCmd::Blowup { input, h } => {
            if *h < 2 {
                return Err("h must be at least 2".into());
            }
            let p = poset_in(&input.input)?;
            let b = find_blowup_r1(&p, *h);
            Ok(Outcome::status(
                negative_if(b.is_none()),
                json!({"h": h, "size": b.as_ref().map(|b| b.size()), "blowup": b}),
            ))
        }
        PosetCmd::Multi { input, h, cap, sampled } => {
            let m: MultiOrder = load(&input.input, &["multi"])?;
            let source = match sampled {
                Some(attempts) => CliqueSource::Sampled { attempts: *attempts, seed: cfg.seed },
                None => CliqueSource::Exact { cap: cap.unwrap_or(u64::MAX) },
            };
            match find_blowup_multi(&m, *h, source) {
                Ok(b) => Ok(Outcome::ok(json!({"seed": cfg.seed, "size": b.blowup.size(), "result": b}))),
                Err(blowup_core::Error::NotFound(msg)) => {
                    Ok(Outcome::status(Status::Negative, json!({"seed": cfg.seed, "found": false, "reason": msg})))
                }
                Err(e) => Err(e.to_string()),
            }
        }
    }
}

fn set_system_in(p: &Path) -> Result<SetSystem, String> {
    match load::<SetSystem>(p, &["set_system"]) {
        Ok(f) => Ok(f),
        Err(_) => graph_in(p).map(|g| SetSystem::neighborhoods(&g)),
    }
}

fn vc(cmd: &VcCmd, cfg: &RunConfig) -> Result<Outcome, String> {
    match cmd {
        VcCmd::Dim { input, cap } => {
            let f = set_system_in(&input.input)?;
            Ok(Outcome::ok(json!({"ground_size": f.ground_size(), "members": f.len(), "vc": vc_dimension(&f, *cap)})))
        }
        VcCmd::Shattered { input, set } => {
            let f = set_system_in(&input.input)?;
            let s: Vec<usize> = set
                .iter()
                .map(|&x| x.checked_sub(1).ok_or_else(|| "elements are 1-based".to_string()))
                .collect::<Result<_, _>>()?;
            let shattered = is_shattered(&s, &f, DEFAULT_SHATTER_CAP).map_err(err)?;
            Ok(Outcome::status(negative_if(!shattered), json!({"set": set, "shattered": shattered})))
        }
        VcCmd::Packing { input, s } => {
            let f = set_system_in(&input.input)?;
            let pk = haussler_packing(&f, *s);
            Ok(Outcome::ok(json!({"s": s, "size": pk.centers.len(), "centers": one_based(&pk.centers)})))
        }
        VcCmd::Biclique {
            input,
            c,
            method,
            case,
            d,
            q,
            q_scale,
            gamma,
            parts,
            triple_budget,
            no_precondition,
            dense_c,
            min_degree,
            into_dense,
            into_sparse,
            pick,
        } => {
            let g = graph_in(&input.input)?;
            let c = c.unwrap_or_else(|| g.density());
            let results = match method {
                Method::Packing => {
                    let r = biclique_via_packing(&g, c, *d, *q, *q_scale).map_err(err)?;
                    json!({"method": "packing", "c": c, "t": r.left.len(), "biclique": r})
                }
                Method::Vc1 => {
                    let opts = Vc1Options {
                        case: match case {
                            CaseArg::Auto => Vc1Case::Auto,
                            CaseArg::Dense => Vc1Case::Dense,
                            CaseArg::Sparse => Vc1Case::Sparse,
                        },
                        check_precondition: !no_precondition,
                        gamma: *gamma,
                        parts: *parts,
                        triple_budget: *triple_budget,
                        seed: cfg.seed,
                        thresholds: Vc1Thresholds {
                            dense_c: *dense_c,
                            min_degree: *min_degree,
                            into_dense: *into_dense,
                            into_sparse: *into_sparse,
                            pick: *pick,
                        },
                    };
                    let r = dense_vc1_biclique(&g, c, &opts).map_err(err)?;
                    json!({"method": "vc1", "c": c, "seed": cfg.seed, "t": r.t(), "biclique": r})
                }
            };
            Ok(Outcome::ok(results))
        }
        VcCmd::Checks { input } => {
            let g = graph_in(&input.input)?;
            let rep = vc1_checks(&g);
            Ok(Outcome::status(negative_if(!rep.holds()), json!({"holds": rep.holds(), "report": rep})))
        }
        VcCmd::GenVc2 { n, biclique_budget } => {
            let opts = BlowupOptions { node_budget: *biclique_budget, ..Default::default() };
            let ex = make_vc2_no_b2_example(*n, cfg.seed, &opts).map_err(err)?;
            let g = ex.graph.clone();
            Ok(Outcome::ok(json!({"seed": cfg.seed, "example": ex, "graph": g})).with_graph(g))
        }
        VcCmd::GenHalf { n, density } => {
            if !(0.0..=1.0).contains(density) {
                return Err("density must lie in [0, 1]".into());
            }
            let g = nested_half_graph(*n, *density);
            Ok(Outcome::ok(json!({"density": g.density(), "graph": g})).with_graph(g))
        }
    }
}

fn graph(cmd: &GraphCmd, cfg: &RunConfig) -> Result<Outcome, String> {
    let blowup_opts = BlowupOptions { node_budget: cfg.node_budget, ..Default::default() };
    match cmd {
        GraphCmd::Gen { kind, n, p, sizes } => {
            let g = match kind {
                GraphKind::Random => {
                    if !(0.0..=1.0).contains(p) {
                        return Err("p must lie in [0, 1]".into());
                    }
                    OrderedGraph::random(*n, *p, &mut ChaCha8Rng::seed_from_u64(cfg.seed))
                }
                GraphKind::Complete => OrderedGraph::complete(*n),
                GraphKind::Path => OrderedGraph::monotone_path(*n),
                GraphKind::Multipartite => {
                    if sizes.is_empty() {
                        return Err("--sizes is required for multipartite".into());
                    }
                    OrderedGraph::complete_multipartite(sizes)
                }
            };
            Ok(Outcome::ok(json!({"seed": cfg.seed, "graph": g})).with_graph(g))
        }
        GraphCmd::Density { input, r, samples, exact_cap } => {
            let g = graph_in(&input.input)?;
            let mode = match samples {
                Some(s) => DensityMode::Sample { samples: *s, seed: cfg.seed },
                None => DensityMode::Exact { cap: *exact_cap },
            };
            let d = clique_density(&g, *r, mode).map_err(err)?;
            Ok(Outcome::ok(json!({"density": d.point, "estimate": d})))
        }
        GraphCmd::Path { input, m } => {
            let g = graph_in(&input.input)?;
            let s = find_induced_monotone_path(&g, *m, cfg.node_budget);
            let status = match s.outcome {
                PathOutcome::Found(_) => Status::Ok,
                PathOutcome::None => Status::Negative,
                PathOutcome::Timeout => Status::Timeout,
            };
            Ok(Outcome::status(status, json!({"m": m, "search": s})))
        }
        GraphCmd::Blowup { input, k, t } => {
            let g = graph_in(&input.input)?;
            let s = find_blowup(&g, *k, *t, &blowup_opts);
            let status = match (&s.blowup, s.exhaustive) {
                (Some(_), _) => Status::Ok,
                (None, true) => Status::Negative,
                (None, false) => Status::Timeout,
            };
            Ok(Outcome::status(status, json!({"k": k, "t": t, "search": s})))
        }
        GraphCmd::Biclique { input } => {
            let g = graph_in(&input.input)?;
            let s = find_balanced_biclique(&g, &blowup_opts);
            Ok(Outcome::ok(json!({"t": s.blowup.t(), "search": s})))
        }
        GraphCmd::Complement { input } => {
            let g = graph_in(&input.input)?.complement();
            Ok(Outcome::ok(json!({"graph": g})).with_graph(g))
        }
        GraphCmd::Amplify { input, parts, pattern } => {
            let g = graph_in(&input.input)?;
            let parts = parts_in(parts)?;
            let h = parse_pattern(pattern, parts.len())?;
            let oracle = ExactBicliqueOracle { node_budget: cfg.node_budget };
            match amplify_blowup(&g, &parts, &h, &oracle) {
                Ok(w) => Ok(Outcome::ok(json!({"t": w[0].len(), "blowup": Blowup { parts: w }}))),
                Err(blowup_core::Error::OracleFailure(a, b)) => Ok(Outcome::status(
                    Status::Negative,
                    json!({"oracle_failure": [a + 1, b + 1]}),
                )),
                Err(e) => Err(e.to_string()),
            }
        }
        GraphCmd::Embed { input, sets, coloring } => {
            let g = graph_in(&input.input)?;
            let sets = parts_in(sets)?;
            let chi = coloring_in(coloring)?;
            let path = embed_monotone_path(&g, &sets, &chi).map_err(err)?;
            Ok(Outcome::status(negative_if(path.is_none()), json!({"path": path.map(|p| one_based(&p))})))
        }
    }
}

fn parse_pattern(pattern: &[String], k: usize) -> Result<Vec<(usize, usize)>, String> {
    pattern
        .iter()
        .map(|e| {
            let (a, b) = e.split_once('-').ok_or_else(|| format!("pattern edge {e:?} is not of the form a-b"))?;
            let parse = |x: &str| match x.trim().parse::<usize>() {
                Ok(v) if (1..=k).contains(&v) => Ok(v - 1),
                _ => Err(format!("pattern edge {e:?}: parts are numbered 1..={k}")),
            };
            let (a, b) = (parse(a)?, parse(b)?);
            if a == b {
                return Err(format!("pattern edge {e:?} is a loop"));
            }
            Ok((a.min(b), a.max(b)))
        })
        .collect()
}

fn run_repro(names: &[String]) -> Result<Outcome, String> {
    let mut ids = Vec::new();
    for name in names {
        let found = repro::resolve(name).ok_or_else(|| {
            let known: Vec<&str> = repro::EXPERIMENTS.iter().map(|(n, _)| *n).collect();
            format!("unknown experiment {name:?}; known: all, {}", known.join(", "))
        })?;
        for id in found {
            if !ids.contains(&id) {
                ids.push(id);
            }
        }
    }
    let mut criteria = Vec::new();
    let mut timings = BTreeMap::new();
    for id in ids {
        let (r, t) = repro::run(id);
        eprintln!("criterion {:>2} [{}] {}: {}", r.id, if r.pass { "PASS" } else { "FAIL" }, r.name, r.detail);
        timings.insert(format!("criterion_{id}"), t.as_millis() as u64);
        criteria.push(r);
    }
    let failed = criteria.iter().filter(|c| !c.pass).count();
    let results = json!({"passed": criteria.len() - failed, "failed": failed, "criteria": criteria});
    Ok(Outcome::status(negative_if(failed > 0), results).with_timings(timings))
}

/// Wall time of the whole command, for callers that build the report.
pub fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed().as_millis() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn patterns() {
        assert_eq!(parse_pattern(&["1-2".into(), "3-2".into()], 3).unwrap(), vec![(0, 1), (1, 2)]);
        assert!(parse_pattern(&["1-4".into()], 3).is_err());
        assert!(parse_pattern(&["2-2".into()], 3).is_err());
        assert!(parse_pattern(&["12".into()], 3).is_err());
    }
}
