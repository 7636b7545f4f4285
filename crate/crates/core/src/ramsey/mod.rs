//! Computing f(k): the least N such that every red/blue coloring of the
//! ordered N-clique contains an admissible k-subset.
//!
//! The search extends colorings one edge at a time (edges of vertex m in the
//! order (0,m), (1,m), …) and prunes a branch as soon as the colored prefix
//! contains an admissible k-subset; every completion inherits that subset, so
//! pruning preserves exactness. After coloring edge (j, m) only the subsets
//! whose two largest vertices are j and m are new, and only those are checked.

mod certificate;
mod layers;

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{has_admissible_subset, pair_index, AdmissibilityTable, OrderedColoring};
use crate::error::{Error, Result};

pub use certificate::{check_certificate, WitnessCertificate, CHECKER_VERSION};
pub use layers::{blue_layer_decomposition, blue_layer_subset, BlueLayerDecomposition};

/// Largest level handled by the search.
pub const MAX_SEARCH_N: usize = 32;
/// Largest k handled by the search (pattern tables up to 2^21 entries).
pub const MAX_SEARCH_K: usize = crate::coloring::MAX_TABLE_K;

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Wall-clock budget; `None` runs to completion.
    pub budget: Option<Duration>,
    /// Worker threads; `None` uses the rayon default.
    pub workers: Option<usize>,
    /// Vertices colored before the frontier is split into tasks.
    pub block_vertices: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Edge colorings tried.
    pub nodes: u64,
    /// Branches cut because an admissible k-subset appeared.
    pub prunes: u64,
    pub frontier_size: usize,
    pub tasks_completed: usize,
    /// Excluded from determinism comparisons.
    pub wall_ms: u64,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.prunes += other.prunes;
        self.frontier_size += other.frontier_size;
        self.tasks_completed += other.tasks_completed;
        self.wall_ms += other.wall_ms;
    }
}

/// Unfinished work of a level search: every listed prefix coloring still
/// needs to be extended to `n` vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrontierSnapshot {
    pub format: String,
    pub n: usize,
    pub k: usize,
    pub block_vertices: usize,
    pub pending: Vec<OrderedColoring>,
    /// Witness for level `n − 1`, carried so `compute_f` can resume.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_witness: Option<OrderedColoring>,
}

pub const SNAPSHOT_FORMAT: &str = "blowup-frontier-v1";

#[derive(Clone, Debug)]
pub enum LevelOutcome {
    /// Every coloring on `n` vertices has an admissible k-subset.
    Holds,
    /// A verified coloring on `n` vertices without admissible k-subsets.
    Counterexample(OrderedColoring),
    Timeout(FrontierSnapshot),
}

#[derive(Clone, Debug)]
pub struct LevelReport {
    pub n: usize,
    pub k: usize,
    pub outcome: LevelOutcome,
    pub stats: SearchStats,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RamseyResult {
    pub k: usize,
    pub f_value: usize,
    /// Coloring on `f_value − 1` vertices with no admissible k-subset.
    pub witness: Option<OrderedColoring>,
    pub stats: SearchStats,
}

#[derive(Clone, Debug)]
pub enum FOutcome {
    Complete(RamseyResult),
    Timeout {
        k: usize,
        /// Largest level shown to have a bad coloring, so f(k) > this.
        refuted_level: Option<usize>,
        witness: Option<OrderedColoring>,
        snapshot: FrontierSnapshot,
        stats: SearchStats,
    },
}

fn validate(n: usize, k: usize) -> Result<()> {
    if k == 0 || n < k {
        return Err(Error::ParameterOutOfRange { name: "k", detail: format!("need 1 <= k <= N, got N={n}, k={k}") });
    }
    if n > MAX_SEARCH_N || k > MAX_SEARCH_K {
        return Err(Error::ParameterOutOfRange {
            name: "N/k",
            detail: format!("search supports N <= {MAX_SEARCH_N}, k <= {MAX_SEARCH_K}"),
        });
    }
    Ok(())
}

/// Decides whether every coloring on `n` vertices contains an admissible
/// `k`-subset.
pub fn verify_level(n: usize, k: usize, opts: &SearchOptions) -> Result<LevelReport> {
    validate(n, k)?;
    let start = Instant::now();
    if k <= 2 {
        // With at most two vertices no third vertex can create an arc.
        return Ok(LevelReport { n, k, outcome: LevelOutcome::Holds, stats: SearchStats::default() });
    }
    let b = opts.block_vertices.unwrap_or(k.max(4)).clamp(2, n);
    let table = AdmissibilityTable::shared(k);
    let mut gen = Dfs::new(n, k, table, None, None);
    let mut frontier = Vec::new();
    gen.collect_prefixes(b, &mut frontier);
    let mut stats = SearchStats { nodes: gen.nodes, prunes: gen.prunes, ..Default::default() };
    let snapshot = FrontierSnapshot {
        format: SNAPSHOT_FORMAT.into(),
        n,
        k,
        block_vertices: b,
        pending: frontier,
        lower_witness: None,
    };
    let mut report = run_frontier(snapshot, opts, start)?;
    stats.absorb(&report.stats);
    stats.wall_ms = start.elapsed().as_millis() as u64;
    report.stats = stats;
    Ok(report)
}

/// Continues a level search from a snapshot produced by a timed-out run.
pub fn resume_level(snapshot: FrontierSnapshot, opts: &SearchOptions) -> Result<LevelReport> {
    validate(snapshot.n, snapshot.k)?;
    if snapshot.format != SNAPSHOT_FORMAT {
        return Err(Error::InvalidInput(format!("unknown snapshot format {:?}", snapshot.format)));
    }
    if snapshot.pending.iter().any(|c| c.n() != snapshot.block_vertices) {
        return Err(Error::InvalidInput("snapshot prefix size mismatch".into()));
    }
    let start = Instant::now();
    let mut report = run_frontier(snapshot, opts, start)?;
    report.stats.wall_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

#[derive(Clone)]
enum TaskResult {
    Exhausted,
    Found(OrderedColoring),
    Aborted,
}

fn run_frontier(snapshot: FrontierSnapshot, opts: &SearchOptions, start: Instant) -> Result<LevelReport> {
    let (n, k) = (snapshot.n, snapshot.k);
    let table = AdmissibilityTable::shared(k);
    let deadline = opts.budget.map(|b| start + b);
    let best = AtomicUsize::new(usize::MAX);
    let stop = AtomicBool::new(false);
    let items = &snapshot.pending;

    let work = || {
        items
            .par_iter()
            .enumerate()
            .map(|(idx, prefix)| {
                if idx > best.load(Ordering::Relaxed) {
                    return (TaskResult::Exhausted, SearchStats::default());
                }
                if stop.load(Ordering::Relaxed) {
                    return (TaskResult::Aborted, SearchStats::default());
                }
                let mut dfs = Dfs::new(n, k, table, deadline, Some(&stop));
                dfs.cancel_above = Some((&best, idx));
                dfs.load_prefix(prefix);
                let r = dfs.run();
                if matches!(r, TaskResult::Found(_)) {
                    best.fetch_min(idx, Ordering::Relaxed);
                }
                let st = SearchStats {
                    nodes: dfs.nodes,
                    prunes: dfs.prunes,
                    tasks_completed: usize::from(!matches!(r, TaskResult::Aborted)),
                    ..Default::default()
                };
                (r, st)
            })
            .collect::<Vec<_>>()
    };
    let results = match opts.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };

    let mut stats = SearchStats { frontier_size: items.len(), ..Default::default() };
    let mut found = None;
    let mut pending = Vec::new();
    for (idx, (r, st)) in results.into_iter().enumerate() {
        stats.absorb(&st);
        match r {
            TaskResult::Found(c) if found.is_none() => found = Some(c),
            TaskResult::Aborted => pending.push(items[idx].clone()),
            _ => {}
        }
    }
    let outcome = if let Some(c) = found {
        // Independent exhaustive re-check before reporting.
        if has_admissible_subset(&c, k)?.is_some() {
            return Err(Error::InvalidInput("search produced an unverifiable witness".into()));
        }
        LevelOutcome::Counterexample(c)
    } else if !pending.is_empty() {
        LevelOutcome::Timeout(FrontierSnapshot { pending, ..snapshot.clone() })
    } else {
        LevelOutcome::Holds
    };
    Ok(LevelReport { n, k, outcome, stats })
}

/// f(k) by ascending levels N = k, k+1, …; errors on timeout.
pub fn compute_f(k: usize, opts: &SearchOptions) -> Result<RamseyResult> {
    match compute_f_resumable(k, opts, None)? {
        FOutcome::Complete(r) => Ok(r),
        FOutcome::Timeout { refuted_level, snapshot, .. } => Err(Error::BudgetExhausted(format!(
            "k={k}: level {} unfinished ({} pending prefixes); largest refuted level {:?}",
            snapshot.n,
            snapshot.pending.len(),
            refuted_level
        ))),
    }
}

/// As [`compute_f`], but a timeout yields the snapshot instead of an error,
/// and a previous snapshot may be supplied to continue from.
pub fn compute_f_resumable(k: usize, opts: &SearchOptions, resume: Option<FrontierSnapshot>) -> Result<FOutcome> {
    if k == 0 || k > MAX_SEARCH_K {
        return Err(Error::ParameterOutOfRange { name: "k", detail: format!("need 1 <= k <= {MAX_SEARCH_K}") });
    }
    let start = Instant::now();
    let mut stats = SearchStats::default();
    let (mut n, mut witness, mut pending_resume) = match resume {
        Some(s) => {
            if s.k != k {
                return Err(Error::InvalidInput(format!("snapshot is for k={}, not {k}", s.k)));
            }
            (s.n, s.lower_witness.clone(), Some(s))
        }
        None => (k, None, None),
    };
    loop {
        let remaining = match opts.budget {
            Some(b) => Some(b.saturating_sub(start.elapsed())),
            None => None,
        };
        let level_opts = SearchOptions { budget: remaining, ..opts.clone() };
        let report = match pending_resume.take() {
            Some(s) => resume_level(s, &level_opts)?,
            None => verify_level(n, k, &level_opts)?,
        };
        stats.absorb(&report.stats);
        match report.outcome {
            LevelOutcome::Holds => {
                stats.wall_ms = start.elapsed().as_millis() as u64;
                return Ok(FOutcome::Complete(RamseyResult { k, f_value: n, witness, stats }));
            }
            LevelOutcome::Counterexample(c) => {
                witness = Some(c);
                n += 1;
                if n > MAX_SEARCH_N {
                    return Err(Error::ParameterOutOfRange { name: "N", detail: format!("exceeded {MAX_SEARCH_N}") });
                }
            }
            LevelOutcome::Timeout(mut snapshot) => {
                snapshot.lower_witness = witness.clone();
                stats.wall_ms = start.elapsed().as_millis() as u64;
                let refuted_level = witness.as_ref().map(|w| w.n());
                return Ok(FOutcome::Timeout { k, refuted_level, witness, snapshot, stats });
            }
        }
    }
}

/// Depth-first edge-by-edge extension of one prefix coloring.
struct Dfs<'a> {
    n: usize,
    k: usize,
    table: &'a AdmissibilityTable,
    red: [u64; MAX_SEARCH_N],
    start_vertex: usize,
    nodes: u64,
    prunes: u64,
    deadline: Option<Instant>,
    stop: Option<&'a AtomicBool>,
    /// Abandon this task once a lower-indexed task found a witness.
    cancel_above: Option<(&'a AtomicUsize, usize)>,
    aborted: bool,
}

const CLOCK_CHECK_MASK: u64 = (1 << 16) - 1;

impl<'a> Dfs<'a> {
    fn new(
        n: usize,
        k: usize,
        table: &'a AdmissibilityTable,
        deadline: Option<Instant>,
        stop: Option<&'a AtomicBool>,
    ) -> Self {
        Self { n, k, table, red: [0; MAX_SEARCH_N], start_vertex: 1, nodes: 0, prunes: 0, deadline, stop, cancel_above: None, aborted: false }
    }

    fn load_prefix(&mut self, prefix: &OrderedColoring) {
        for v in 0..prefix.n() {
            self.red[v] = prefix.red_row(v);
        }
        self.start_vertex = prefix.n().max(1);
    }

    fn coloring(&self, upto: usize) -> OrderedColoring {
        let mut edges = Vec::new();
        for q in 1..upto {
            for p in 0..q {
                if self.red[q] >> p & 1 == 1 {
                    edges.push((p, q));
                }
            }
        }
        OrderedColoring::from_red_edges(upto, &edges).expect("valid prefix")
    }

    fn run(&mut self) -> TaskResult {
        if self.start_vertex >= self.n {
            return TaskResult::Found(self.coloring(self.n));
        }
        match self.step(self.start_vertex, 0, self.n) {
            Some(true) => TaskResult::Found(self.coloring(self.n)),
            Some(false) => TaskResult::Exhausted,
            None => TaskResult::Aborted,
        }
    }

    /// Enumerates the surviving colorings of the first `b` vertices.
    fn collect_prefixes(&mut self, b: usize, out: &mut Vec<OrderedColoring>) {
        if b <= 1 {
            out.push(OrderedColoring::all_blue(b));
            return;
        }
        self.collect(1, 0, b, out);
    }

    fn collect(&mut self, m: usize, j: usize, b: usize, out: &mut Vec<OrderedColoring>) {
        for red in [false, true] {
            self.assign(j, m, red);
            self.nodes += 1;
            if self.closes_admissible(j, m) {
                self.prunes += 1;
                continue;
            }
            let (nm, nj) = if j + 1 == m { (m + 1, 0) } else { (m, j + 1) };
            if nm == b {
                out.push(self.coloring(b));
            } else {
                self.collect(nm, nj, b, out);
            }
        }
        self.assign(j, m, false);
    }

    #[inline]
    fn assign(&mut self, j: usize, m: usize, red: bool) {
        if red {
            self.red[j] |= 1 << m;
            self.red[m] |= 1 << j;
        } else {
            self.red[j] &= !(1 << m);
            self.red[m] &= !(1 << j);
        }
    }

    /// `Some(true)`: completed to a bad coloring on `n` vertices;
    /// `Some(false)`: subtree exhausted; `None`: aborted.
    fn step(&mut self, m: usize, j: usize, n: usize) -> Option<bool> {
        for red in [false, true] {
            self.assign(j, m, red);
            self.nodes += 1;
            if self.nodes & CLOCK_CHECK_MASK == 0 && self.should_abort() {
                self.aborted = true;
                return None;
            }
            if self.closes_admissible(j, m) {
                self.prunes += 1;
                continue;
            }
            let (nm, nj) = if j + 1 == m { (m + 1, 0) } else { (m, j + 1) };
            if nm == n {
                return Some(true);
            }
            match self.step(nm, nj, n) {
                Some(false) => {}
                other => return other,
            }
        }
        self.assign(j, m, false);
        Some(false)
    }

    fn should_abort(&self) -> bool {
        if let Some((best, idx)) = self.cancel_above {
            if best.load(Ordering::Relaxed) < idx {
                return true;
            }
        }
        if let Some(s) = self.stop {
            if s.load(Ordering::Relaxed) {
                return true;
            }
        }
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                if let Some(s) = self.stop {
                    s.store(true, Ordering::Relaxed);
                }
                return true;
            }
        }
        false
    }

    /// Whether some k-subset with largest vertices j < m is admissible.
    fn closes_admissible(&self, j: usize, m: usize) -> bool {
        let k = self.k;
        if j + 2 < k {
            return false;
        }
        let mut chosen = [0usize; MAX_SEARCH_K];
        self.choose(0, 0, 0, j, m, &mut chosen)
    }

    fn choose(&self, from: usize, depth: usize, code: u64, j: usize, m: usize, chosen: &mut [usize; MAX_SEARCH_K]) -> bool {
        let k = self.k;
        let inner = k - 2;
        if depth == inner {
            let mut c = code;
            let (rj, rm) = (self.red[j], self.red[m]);
            for (p, &a) in chosen[..inner].iter().enumerate() {
                c |= (rj >> a & 1) << pair_index(p, inner);
                c |= (rm >> a & 1) << pair_index(p, inner + 1);
            }
            c |= (rm >> j & 1) << pair_index(inner, inner + 1);
            return self.table.admissible(c);
        }
        let last = j - (inner - depth);
        for v in from..=last {
            let mut c = code;
            let rv = self.red[v];
            for (p, &a) in chosen[..depth].iter().enumerate() {
                c |= (rv >> a & 1) << pair_index(p, depth);
            }
            chosen[depth] = v;
            if self.choose(v + 1, depth + 1, c, j, m, chosen) {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn level(n: usize, k: usize) -> LevelOutcome {
        verify_level(n, k, &SearchOptions::default()).unwrap().outcome
    }

    #[test]
    fn small_levels() {
        assert!(matches!(level(1, 1), LevelOutcome::Holds));
        assert!(matches!(level(2, 2), LevelOutcome::Holds));
        assert!(matches!(level(3, 3), LevelOutcome::Holds));
        match level(4, 4) {
            LevelOutcome::Counterexample(c) => assert!(has_admissible_subset(&c, 4).unwrap().is_none()),
            other => panic!("expected counterexample, got {other:?}"),
        }
        assert!(matches!(level(5, 4), LevelOutcome::Holds));
    }

    #[test]
    fn small_f_values() {
        for (k, f) in [(1, 1), (2, 2), (3, 3), (4, 5)] {
            let r = compute_f(k, &SearchOptions::default()).unwrap();
            assert_eq!(r.f_value, f, "k={k}");
            assert_eq!(r.witness.is_some(), f > k);
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(verify_level(3, 4, &SearchOptions::default()).is_err());
        assert!(verify_level(3, 0, &SearchOptions::default()).is_err());
    }

    #[test]
    fn zero_budget_times_out_and_resumes() {
        let opts = SearchOptions { budget: Some(Duration::ZERO), block_vertices: Some(5), ..Default::default() };
        let r = verify_level(7, 5, &opts).unwrap();
        // A zero budget may still finish tiny tasks between clock checks.
        if let LevelOutcome::Timeout(snap) = r.outcome {
            let json = serde_json::to_string(&snap).unwrap();
            let back: FrontierSnapshot = serde_json::from_str(&json).unwrap();
            assert_eq!(back, snap);
            let done = resume_level(back, &SearchOptions::default()).unwrap();
            assert!(matches!(done.outcome, LevelOutcome::Holds));
        }
    }
}
