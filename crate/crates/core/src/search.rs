//! Exhaustive search for minimal complete and maximum-size arcs.
//!
//! The search is a depth-first orderly generation over point indices: a set
//! is only ever extended by points of larger index than its last non-frame
//! point, so each candidate set is visited once. Alongside the chosen points
//! the search keeps the set of points that can no longer be added, updated
//! incrementally from line counts and, for the conic-sensitive kinds, from
//! the conic through every new 5-subset.
//!
//! Conic fitting is incremental as well. Every subset of at most four chosen
//! points keeps a basis of the quadratic forms vanishing on it; adding a point
//! imposes one linear condition on each basis, and the 4-subset bases yield
//! the new conics directly.

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;
use thiserror::Error;

use crate::arcs::certificate::{ArcCertificate, Claim, SearchMeta, SearchMode};
use crate::arcs::{is_complete, ArcKind};
use crate::bounds::{self, KnownValues};
use crate::conics::{dot6, veronese, P5Point};
use crate::gf::{prime_power, FieldElement, FieldSpec};
use crate::linalg;
use crate::plane::{Plane, PlaneError};

/// Largest plane order the bitset representation holds.
pub const MAX_SEARCH_ORDER: u32 = 15;
pub const DEFAULT_SEARCH_CAP: u32 = 13;
pub const DEFAULT_WITNESS_CAP: usize = 10;

const WORDS: usize = 4;
const FLUSH_EVERY: u64 = 1 << 12;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("q = {q} exceeds the search cap {cap}")]
    TooLarge { q: u32, cap: u32 },
    #[error("k_floor {floor} exceeds k_ceiling {ceiling}")]
    EmptyRange { floor: usize, ceiling: usize },
    #[error("a fixed frame needs room for 4 points, k_ceiling is {0}")]
    FrameTooLarge(usize),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error("worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub q: u32,
    pub kind: ArcKind,
    pub mode: SearchMode,
    pub fix_frame: bool,
    pub k_floor: Option<usize>,
    pub k_ceiling: Option<usize>,
    pub permutation_reduction: bool,
    pub worker_count: usize,
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    pub witness_cap: usize,
    /// Largest q accepted.
    pub max_q: u32,
    /// Field to search over; defaults to the standard field of order q.
    pub field: Option<FieldSpec>,
}

impl SearchConfig {
    pub fn new(q: u32, kind: ArcKind, mode: SearchMode) -> Self {
        SearchConfig {
            q,
            kind,
            mode,
            fix_frame: true,
            k_floor: None,
            k_ceiling: None,
            permutation_reduction: false,
            worker_count: 1,
            node_budget: None,
            time_budget: None,
            witness_cap: DEFAULT_WITNESS_CAP,
            max_q: DEFAULT_SEARCH_CAP,
            field: None,
        }
    }

    pub fn unrestricted(mut self) -> Self {
        self.fix_frame = false;
        self.permutation_reduction = false;
        self
    }

    pub fn workers(mut self, n: usize) -> Self {
        self.worker_count = n.max(1);
        self
    }

    fn validate(&self) -> Result<(), SearchError> {
        if prime_power(self.q).is_none() {
            return Err(SearchError::NotPrimePower(self.q));
        }
        let cap = self.max_q.min(MAX_SEARCH_ORDER);
        if self.q > cap {
            return Err(SearchError::TooLarge { q: self.q, cap });
        }
        if let (Some(floor), Some(ceiling)) = (self.k_floor, self.k_ceiling) {
            if floor > ceiling {
                return Err(SearchError::EmptyRange { floor, ceiling });
            }
        }
        if self.fix_frame {
            if let Some(c) = self.k_ceiling.filter(|&c| c < 4) {
                return Err(SearchError::FrameTooLarge(c));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub q: u32,
    pub kind: ArcKind,
    pub mode: SearchMode,
    pub answer: Option<usize>,
    #[serde(rename = "certificates")]
    pub witnesses: Vec<ArcCertificate>,
    pub nodes_explored: u64,
    pub exhaustive: bool,
    #[serde(serialize_with = "as_secs")]
    pub wall_time: Duration,
    pub meta: SearchMeta,
}

fn as_secs<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl SearchResult {
    pub const CSV_HEADER: &'static str = "q,kind,mode,answer,nodes,exhaustive,wall_time";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:.3}",
            self.q,
            self.kind,
            self.mode,
            self.answer.map_or("-".into(), |a| a.to_string()),
            self.nodes_explored,
            self.exhaustive,
            self.wall_time.as_secs_f64()
        )
    }

    /// JSON bundle: the summary plus every witness certificate.
    pub fn bundle_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("results serialize")
    }
}

impl fmt::Display for SearchResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let answer = self.answer.map_or("none".into(), |a| a.to_string());
        write!(
            f,
            "q={} kind={} mode={} answer={} witnesses={} nodes={} exhaustive={} time={:.3}s",
            self.q,
            self.kind,
            self.mode,
            answer,
            self.witnesses.len(),
            self.nodes_explored,
            self.exhaustive,
            self.wall_time.as_secs_f64()
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Default)]
struct Bits([u64; WORDS]);

impl Bits {
    fn set(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    fn or(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a |= b;
        }
    }

    fn full(n: usize) -> Bits {
        let mut b = Bits::default();
        for i in 0..n {
            b.set(i);
        }
        b
    }

    /// Indices `>= from` not in `self`, below `n`.
    fn free_from(&self, from: usize, n: usize) -> impl Iterator<Item = usize> + '_ {
        (from..n).filter(move |&i| !self.get(i))
    }

    fn count_free_from(&self, from: usize, n: usize) -> usize {
        let mut total = 0;
        for (w, word) in self.0.iter().enumerate() {
            let lo = w * 64;
            let hi = lo + 64;
            if hi <= from || lo >= n {
                continue;
            }
            let mut mask = !0u64;
            if from > lo {
                mask &= !0u64 << (from - lo);
            }
            if n < hi {
                mask &= (1u64 << (n - lo)) - 1;
            }
            total += (!word & mask).count_ones() as usize;
        }
        total
    }
}

/// Basis of the quadratic forms vanishing on a subset of chosen points.
#[derive(Clone, Copy)]
struct Pencil {
    size: u8,
    dim: u8,
    basis: [P5Point; 5],
}

/// Immutable tables shared by all workers.
struct Ctx<'a> {
    plane: &'a Plane,
    field: &'a FieldSpec,
    n: usize,
    ver: Vec<P5Point>,
    line_bits: Vec<Bits>,
    line_limit: u8,
    conic_kind: bool,
    frame: Vec<u32>,
    perms: Vec<Vec<u32>>,
}

impl<'a> Ctx<'a> {
    fn new(plane: &'a Plane, kind: ArcKind, fix_frame: bool, reduce: bool) -> Self {
        let n = plane.size();
        let ver = (0..n as u32).map(|i| veronese(plane, &plane.point(i))).collect();
        let line_bits = (0..n as u32)
            .map(|l| {
                let mut b = Bits::default();
                for &p in plane.point_ids_on(l) {
                    b.set(p as usize);
                }
                b
            })
            .collect();
        let frame = if fix_frame { frame_indices(plane) } else { Vec::new() };
        let perms = if fix_frame && reduce { frame_collineations(plane) } else { Vec::new() };
        Ctx {
            plane,
            field: plane.field(),
            n,
            ver,
            line_bits,
            line_limit: if kind.needs_arc() { 2 } else { 3 },
            conic_kind: kind.needs_conic_check(),
            frame,
            perms,
        }
    }

    fn conic_key(&self, c: &P5Point) -> u32 {
        let q = self.plane.q();
        c.iter().rev().fold(0u32, |acc, x| acc * q + x.value())
    }

    fn zero_set(&self, c: &P5Point) -> Bits {
        let mut b = Bits::default();
        for (i, v) in self.ver.iter().enumerate() {
            if dot6(self.field, c, v).is_zero() {
                b.set(i);
            }
        }
        b
    }
}

fn frame_indices(plane: &Plane) -> Vec<u32> {
    let mut v: Vec<u32> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]
        .iter()
        .map(|c| plane.point_from_values(*c).expect("frame point").index)
        .collect();
    v.sort_unstable();
    v
}

/// The 23 non-identity collineations permuting the standard frame, as point
/// permutations.
fn frame_collineations(plane: &Plane) -> Vec<Vec<u32>> {
    let f = plane.field();
    let e = |v: [u32; 3]| plane.point_from_values(v).expect("frame point").coords;
    let frame = [e([1, 0, 0]), e([0, 1, 0]), e([0, 0, 1]), e([1, 1, 1])];
    let mut out = Vec::new();
    for perm in (0..4usize).permutations(4).skip(1) {
        let img: Vec<_> = perm.iter().map(|&i| frame[i]).collect();
        // Columns lambda_i * img[i] with sum lambda_i img[i] = img[3].
        let rows: Vec<Vec<FieldElement>> = (0..3)
            .map(|r| (0..4).map(|c| img[c][r]).collect())
            .collect();
        let ns = linalg::nullspace(f, &rows, 4);
        let mut v = ns[0].clone();
        let scale = f.neg(f.inv(v[3]).expect("frame in general position"));
        for x in v.iter_mut() {
            *x = f.mul(*x, scale);
        }
        let m: Vec<[FieldElement; 3]> = (0..3)
            .map(|r| [0, 1, 2].map(|c| f.mul(v[c], img[c][r])))
            .collect();
        let table = plane
            .all_points()
            .iter()
            .map(|p| {
                let c = [0, 1, 2].map(|r| {
                    (0..3).fold(FieldElement::ZERO, |acc, j| f.add(acc, f.mul(m[r][j], p.coords[j])))
                });
                plane.point_from_coords(c).expect("invertible").index
            })
            .collect();
        out.push(table);
    }
    out
}

/// Mutable per-worker search state.
#[derive(Clone)]
struct State {
    chosen: Vec<u32>,
    blocked: Bits,
    line_count: Vec<u8>,
    pencils: Vec<Pencil>,
    cache: FxHashMap<u32, Bits>,
}

struct Undo {
    blocked: Bits,
    pencils: usize,
}

impl State {
    fn new(ctx: &Ctx) -> Self {
        State {
            chosen: Vec::new(),
            blocked: Bits::default(),
            line_count: vec![0; ctx.n],
            pencils: Vec::new(),
            cache: FxHashMap::default(),
        }
    }

    fn push(&mut self, ctx: &Ctx, p: u32) -> Undo {
        let undo = Undo {
            blocked: self.blocked,
            pencils: self.pencils.len(),
        };
        self.blocked.set(p as usize);
        for &l in ctx.plane.line_ids_through(p) {
            let c = &mut self.line_count[l as usize];
            *c += 1;
            if *c == ctx.line_limit {
                self.blocked.or(&ctx.line_bits[l as usize]);
            }
        }
        if ctx.conic_kind {
            self.extend_pencils(ctx, p);
        }
        self.chosen.push(p);
        undo
    }

    fn pop(&mut self, ctx: &Ctx, undo: Undo) {
        let p = self.chosen.pop().expect("nonempty");
        for &l in ctx.plane.line_ids_through(p) {
            self.line_count[l as usize] -= 1;
        }
        self.blocked = undo.blocked;
        self.pencils.truncate(undo.pencils);
    }

    fn extend_pencils(&mut self, ctx: &Ctx, p: u32) {
        let f = ctx.field;
        let v = &ctx.ver[p as usize];
        let old = self.pencils.len();
        let mut unit = [[FieldElement::ZERO; 6]; 6];
        for (i, row) in unit.iter_mut().enumerate() {
            row[i] = FieldElement::ONE;
        }
        if let Some(first) = restrict(f, &unit, 6, v) {
            let (basis, dim) = first;
            self.pencils.push(Pencil { size: 1, dim, basis });
        }
        for i in 0..old {
            let pen = self.pencils[i];
            let mut full = [[FieldElement::ZERO; 6]; 6];
            full[..5].copy_from_slice(&pen.basis);
            let Some((basis, dim)) = restrict(f, &full, pen.dim as usize, v) else {
                self.blocked = Bits::full(ctx.n);
                continue;
            };
            if pen.size < 4 {
                self.pencils.push(Pencil {
                    size: pen.size + 1,
                    dim,
                    basis,
                });
            } else if dim == 1 {
                let mut c = basis[0];
                linalg::normalize(f, &mut c);
                let key = ctx.conic_key(&c);
                let zs = *self.cache.entry(key).or_insert_with(|| ctx.zero_set(&c));
                self.blocked.or(&zs);
            } else {
                // A pencil of conics through five points covers the plane.
                self.blocked = Bits::full(ctx.n);
            }
        }
    }

    fn is_complete(&self, ctx: &Ctx) -> bool {
        self.blocked == Bits::full(ctx.n)
    }
}

/// Forms in the span of `basis[..dim]` vanishing at `v`. `None` when every
/// form already vanishes there (the dimension does not drop).
fn restrict(
    f: &FieldSpec,
    basis: &[P5Point; 6],
    dim: usize,
    v: &P5Point,
) -> Option<([P5Point; 5], u8)> {
    let vals: Vec<FieldElement> = basis[..dim].iter().map(|b| dot6(f, b, v)).collect();
    let pivot = vals.iter().position(|x| !x.is_zero())?;
    let inv = f.inv(vals[pivot]).expect("pivot nonzero");
    let mut out = [[FieldElement::ZERO; 6]; 5];
    let mut k = 0;
    for j in 0..dim {
        if j == pivot {
            continue;
        }
        let factor = f.mul(vals[j], inv);
        for t in 0..6 {
            out[k][t] = f.sub(basis[j][t], f.mul(factor, basis[pivot][t]));
        }
        k += 1;
    }
    Some((out, k as u8))
}

/// State shared across workers.
struct Shared {
    nodes: AtomicU64,
    stop: AtomicBool,
    budget_hit: AtomicBool,
    best: AtomicUsize,
    /// Size at which the witness list is full; 0 while it is not.
    full_at: AtomicUsize,
    witnesses: Mutex<(usize, Vec<Vec<u32>>)>,
    budget: Option<u64>,
    deadline: Option<Instant>,
    cap: usize,
    upper: usize,
}

impl Shared {
    fn new(cfg: &SearchConfig, start: Instant, best: usize, upper: usize) -> Self {
        Shared {
            nodes: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            budget_hit: AtomicBool::new(false),
            best: AtomicUsize::new(best),
            full_at: AtomicUsize::new(0),
            witnesses: Mutex::new((0, Vec::new())),
            budget: cfg.node_budget,
            deadline: cfg.time_budget.map(|t| start + t),
            cap: cfg.witness_cap.max(1),
            upper,
        }
    }

    fn flush(&self, local: &mut u64) {
        let total = self.nodes.fetch_add(*local, Ordering::Relaxed) + *local;
        *local = 0;
        let over_nodes = self.budget.is_some_and(|b| total >= b);
        let over_time = self.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.budget_hit.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
        }
    }

    fn tick(&self, local: &mut u64) -> bool {
        *local += 1;
        if *local >= FLUSH_EVERY {
            self.flush(local);
        }
        self.stop.load(Ordering::Relaxed)
    }

    /// Records a witness. Max mode keeps only the largest sets seen; min
    /// mode stops once the witness cap is reached.
    fn record(&self, set: &[u32], keep_largest: bool) {
        let mut guard = self.witnesses.lock().expect("witness lock");
        let (size, list) = &mut *guard;
        if set.len() > *size || list.is_empty() {
            *size = set.len();
            list.clear();
            self.full_at.store(0, Ordering::Relaxed);
        }
        if set.len() == *size && list.len() < self.cap {
            let mut s = set.to_vec();
            s.sort_unstable();
            list.push(s);
        }
        if list.len() >= self.cap {
            self.full_at.store(*size, Ordering::Relaxed);
            if !keep_largest {
                self.stop.store(true, Ordering::Relaxed);
            }
        }
        if keep_largest {
            self.best.fetch_max(*size, Ordering::Relaxed);
            if *size >= self.upper {
                self.stop.store(true, Ordering::Relaxed);
            }
        }
    }
}

fn root_state(ctx: &Ctx) -> State {
    let mut st = State::new(ctx);
    for &p in &ctx.frame {
        let _ = st.push(ctx, p);
    }
    st
}

/// True when a frame collineation maps `x` below the first non-frame point.
fn s4_rejects(ctx: &Ctx, st: &State, x: u32) -> bool {
    if ctx.perms.is_empty() {
        return false;
    }
    let first = st.chosen.get(ctx.frame.len()).copied().unwrap_or(x);
    ctx.perms.iter().any(|g| g[x as usize] < first)
}

fn dfs_min(ctx: &Ctx, st: &mut State, from: usize, k: usize, sh: &Shared, local: &mut u64) {
    if sh.tick(local) {
        return;
    }
    if st.chosen.len() == k {
        if st.is_complete(ctx) {
            sh.record(&st.chosen, false);
        }
        return;
    }
    let need = k - st.chosen.len();
    if st.blocked.count_free_from(from, ctx.n) < need {
        return;
    }
    let candidates: Vec<usize> = st.blocked.free_from(from, ctx.n).collect();
    for x in candidates {
        if st.blocked.get(x) {
            continue;
        }
        if s4_rejects(ctx, st, x as u32) {
            continue;
        }
        let undo = st.push(ctx, x as u32);
        dfs_min(ctx, st, x + 1, k, sh, local);
        st.pop(ctx, undo);
        if sh.stop.load(Ordering::Relaxed) {
            return;
        }
    }
}

fn dfs_max(ctx: &Ctx, st: &mut State, from: usize, sh: &Shared, local: &mut u64) {
    if sh.tick(local) {
        return;
    }
    let d = st.chosen.len();
    let best = sh.best.load(Ordering::Relaxed);
    if d > best || (d == best && sh.full_at.load(Ordering::Relaxed) != d) {
        sh.record(&st.chosen, true);
        if sh.stop.load(Ordering::Relaxed) {
            return;
        }
    }
    if d >= sh.upper {
        return;
    }
    for x in st.blocked.free_from(from, ctx.n).collect::<Vec<_>>() {
        if st.blocked.get(x) {
            continue;
        }
        let reach = d + 1 + st.blocked.count_free_from(x + 1, ctx.n);
        let best = sh.best.load(Ordering::Relaxed);
        if reach < best || (reach == best && sh.full_at.load(Ordering::Relaxed) == best) {
            return;
        }
        if s4_rejects(ctx, st, x as u32) {
            continue;
        }
        let undo = st.push(ctx, x as u32);
        dfs_max(ctx, st, x + 1, sh, local);
        st.pop(ctx, undo);
        if sh.stop.load(Ordering::Relaxed) {
            return;
        }
    }
}

/// Runs `branch` for every depth-1 candidate of the root, in parallel when
/// more than one worker is configured.
fn run_branches(
    cfg: &SearchConfig,
    ctx: &Ctx,
    root: &State,
    sh: &Shared,
    branch: impl Fn(&mut State, usize, &mut u64) + Sync,
) -> Result<(), SearchError> {
    let from = 0;
    let candidates: Vec<usize> = root.blocked.free_from(from, ctx.n).collect();
    let work = |x: usize| {
        if sh.stop.load(Ordering::Relaxed) || s4_rejects(ctx, root, x as u32) {
            return;
        }
        let mut st = root.clone();
        let mut local = 0;
        let _ = st.push(ctx, x as u32);
        branch(&mut st, x + 1, &mut local);
        sh.flush(&mut local);
    };
    if cfg.worker_count <= 1 {
        candidates.into_iter().for_each(work);
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.worker_count)
            .build()
            .map_err(|e| SearchError::Pool(e.to_string()))?;
        pool.install(|| candidates.into_par_iter().with_max_len(1).for_each(work));
    }
    Ok(())
}

fn make_plane(cfg: &SearchConfig) -> Result<Plane, SearchError> {
    Ok(match &cfg.field {
        Some(f) => Plane::new(f.clone())?,
        None => Plane::of_order(cfg.q)?,
    })
}

/// Smallest size a complete arc of `kind` can have, from the closed-form
/// bounds; 4 (with a fixed frame) or 1 otherwise.
pub fn min_start(q: u32, kind: ArcKind, fix_frame: bool) -> usize {
    let trivial = if fix_frame { 4 } else { 1 };
    let from_bounds = match kind {
        ArcKind::Arc => {
            let (b2, b3) = bounds::lower_t_ball(q).unwrap_or((0, None));
            Some(bounds::lower_t_prop(q).max(b2).max(b3.unwrap_or(0)))
        }
        ArcKind::Veronesian => bounds::lower_tv(q).ok(),
        ArcKind::Generalized => bounds::lower_tg(q).ok().map(|g| g.min),
    };
    from_bounds.map_or(trivial, |b| (b as usize).max(trivial))
}

/// Upper bound on the size of any arc of `kind`, with its source.
pub fn max_bound(q: u32, kind: ArcKind, known: &KnownValues) -> (usize, String) {
    let n = (q * q + q + 1) as usize;
    let arc = if q.is_multiple_of(2) {
        (q as usize + 2, "hyperoval q+2".to_string())
    } else {
        (q as usize + 1, "oval q+1".to_string())
    };
    match kind {
        ArcKind::Arc | ArcKind::Veronesian => arc,
        ArcKind::Generalized => {
            let mut best = (n, "plane size".to_string());
            if let Some(m5) = bounds::reference_m5(q) {
                if (m5.value as usize) < best.0 {
                    best = (m5.value as usize, m5.source);
                }
            }
            if let Ok(u) = bounds::upper_mg(q, known) {
                if (u.value as usize) < best.0 {
                    best = (u.value as usize, u.attained_by);
                }
            }
            best
        }
    }
}

pub fn search_min_complete(cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    let mut cfg = cfg.clone();
    cfg.mode = SearchMode::MinComplete;
    run(&cfg)
}

pub fn search_max(cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    let mut cfg = cfg.clone();
    cfg.mode = SearchMode::Max;
    run(&cfg)
}

/// The same search without the fixed frame.
pub fn search_unrestricted(cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    run(&cfg.clone().unrestricted())
}

/// Dispatches on `cfg.mode`.
pub fn run(cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    cfg.validate()?;
    let plane = make_plane(cfg)?;
    let ctx = Ctx::new(&plane, cfg.kind, cfg.fix_frame, cfg.permutation_reduction);
    let start = Instant::now();
    let known = KnownValues::builtin();
    let (answer, sets, nodes, exhaustive, meta) = match cfg.mode {
        SearchMode::MinComplete => run_min(cfg, &ctx, start)?,
        SearchMode::Max => run_max(cfg, &ctx, start, &known)?,
    };
    let claim = |set: &[u32]| -> Claim {
        match (exhaustive, cfg.mode) {
            (true, SearchMode::MinComplete) => Claim::MinimalComplete,
            (true, SearchMode::Max) => Claim::Maximal,
            (false, _) => {
                let pts: Vec<_> = set.iter().map(|&i| plane.point(i)).collect();
                match is_complete(&plane, &pts, cfg.kind) {
                    Ok(true) => Claim::Complete,
                    _ => Claim::Valid,
                }
            }
        }
    };
    let witnesses = sets
        .iter()
        .map(|s| {
            let pts: Vec<_> = s.iter().map(|&i| plane.point(i)).collect();
            ArcCertificate::new(&plane, cfg.kind, &pts, claim(s)).with_search_meta(meta.clone())
        })
        .collect();
    Ok(SearchResult {
        q: cfg.q,
        kind: cfg.kind,
        mode: cfg.mode,
        answer,
        witnesses,
        nodes_explored: nodes,
        exhaustive,
        wall_time: start.elapsed(),
        meta,
    })
}

type Outcome = (Option<usize>, Vec<Vec<u32>>, u64, bool, SearchMeta);

fn meta(cfg: &SearchConfig, floor: usize, ceiling: Option<usize>) -> SearchMeta {
    SearchMeta {
        q: cfg.q,
        kind: cfg.kind,
        mode: cfg.mode,
        fix_frame: cfg.fix_frame,
        permutation_reduction: cfg.permutation_reduction,
        k_floor: floor,
        k_ceiling: ceiling,
        upper_bound: None,
        answer: None,
        exhaustive: false,
        nodes_explored: 0,
    }
}

fn run_min(cfg: &SearchConfig, ctx: &Ctx, start: Instant) -> Result<Outcome, SearchError> {
    let floor = cfg
        .k_floor
        .unwrap_or_else(|| min_start(cfg.q, cfg.kind, cfg.fix_frame))
        .max(ctx.frame.len());
    let ceiling = cfg.k_ceiling.unwrap_or(ctx.n);
    let root = root_state(ctx);
    let mut nodes = 0;
    let mut m = meta(cfg, floor, Some(ceiling));
    for k in floor..=ceiling {
        let sh = Shared::new(cfg, start, 0, ctx.n);
        if k == root.chosen.len() {
            nodes += 1;
            if root.is_complete(ctx) {
                sh.record(&root.chosen, false);
            }
        } else {
            run_branches(cfg, ctx, &root, &sh, |st, from, local| {
                dfs_min(ctx, st, from, k, &sh, local)
            })?;
        }
        nodes += sh.nodes.load(Ordering::Relaxed);
        let (_, mut found) = sh.witnesses.into_inner().expect("witness lock");
        found.sort();
        if !found.is_empty() {
            m.answer = Some(k);
            m.exhaustive = true;
            m.nodes_explored = nodes;
            return Ok((Some(k), found, nodes, true, m));
        }
        if sh.budget_hit.load(Ordering::Relaxed) {
            m.nodes_explored = nodes;
            return Ok((None, Vec::new(), nodes, false, m));
        }
    }
    m.nodes_explored = nodes;
    m.exhaustive = true;
    Ok((None, Vec::new(), nodes, true, m))
}

fn run_max(
    cfg: &SearchConfig,
    ctx: &Ctx,
    start: Instant,
    known: &KnownValues,
) -> Result<Outcome, SearchError> {
    let (bound, source) = max_bound(cfg.q, cfg.kind, known);
    let (upper, source) = match cfg.k_ceiling {
        Some(c) if c < bound => (c, "k_ceiling".to_string()),
        _ => (bound, source),
    };
    let floor = cfg.k_floor.unwrap_or(0);
    let root = root_state(ctx);
    let sh = Shared::new(cfg, start, floor.saturating_sub(1), upper);
    let mut local = 1;
    if root.chosen.len() >= floor {
        sh.record(&root.chosen, true);
    }
    sh.flush(&mut local);
    if !sh.stop.load(Ordering::Relaxed) {
        run_branches(cfg, ctx, &root, &sh, |st, from, local| {
            dfs_max(ctx, st, from, &sh, local)
        })?;
    }
    let nodes = sh.nodes.load(Ordering::Relaxed);
    let budget_hit = sh.budget_hit.load(Ordering::Relaxed);
    let (size, mut found) = sh.witnesses.into_inner().expect("witness lock");
    found.sort();
    let answer = (!found.is_empty()).then_some(size);
    let exhaustive = !budget_hit || answer == Some(upper);
    let mut m = meta(cfg, floor, Some(upper));
    m.upper_bound = Some((upper, source));
    m.answer = answer;
    m.exhaustive = exhaustive;
    m.nodes_explored = nodes;
    Ok((answer, found, nodes, exhaustive, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_counting() {
        let mut b = Bits::default();
        for i in [0, 3, 64, 100, 200] {
            b.set(i);
        }
        assert_eq!(b.count_free_from(0, 210), 205);
        assert_eq!(b.count_free_from(65, 130), 64);
        assert_eq!(b.free_from(60, 70).collect::<Vec<_>>(), vec![60, 61, 62, 63, 65, 66, 67, 68, 69]);
    }

    #[test]
    fn frame_collineations_permute_the_frame() {
        let plane = Plane::of_order(5).unwrap();
        let frame = frame_indices(&plane);
        let perms = frame_collineations(&plane);
        assert_eq!(perms.len(), 23);
        for g in &perms {
            let mut img: Vec<u32> = frame.iter().map(|&p| g[p as usize]).collect();
            img.sort_unstable();
            assert_eq!(img, frame);
            let mut all = g.clone();
            all.sort_unstable();
            assert_eq!(all, (0..plane.size() as u32).collect::<Vec<_>>());
        }
    }

    #[test]
    fn small_answers() {
        let r = search_max(&SearchConfig::new(2, ArcKind::Generalized, SearchMode::Max)).unwrap();
        assert_eq!(r.answer, Some(7));
        let r = search_min_complete(&SearchConfig::new(3, ArcKind::Arc, SearchMode::MinComplete)).unwrap();
        assert_eq!(r.answer, Some(4));
        assert!(r.exhaustive);
    }

    #[test]
    fn config_validation() {
        let mut c = SearchConfig::new(6, ArcKind::Arc, SearchMode::Max);
        assert!(matches!(run(&c), Err(SearchError::NotPrimePower(6))));
        c.q = 16;
        assert!(matches!(run(&c), Err(SearchError::TooLarge { .. })));
        c.q = 5;
        c.k_floor = Some(7);
        c.k_ceiling = Some(6);
        assert!(matches!(run(&c), Err(SearchError::EmptyRange { .. })));
        c.k_floor = None;
        c.k_ceiling = Some(3);
        assert!(matches!(run(&c), Err(SearchError::FrameTooLarge(3))));
    }
}
