//! Exhaustive checking of boolean predicates over bounded integer ranges.
//!
//! A predicate of one, two or three `u64` variables is evaluated at every
//! point of the product of half-open ranges. The answer is either
//! [`CheckResult::Pass`] or the lexicographically smallest falsifying tuple.
//!
//! The product is flattened into a single index space (row-major, so index
//! order is lexicographic order) and split into chunks that run on the rayon
//! pool. Each chunk stops at its first failure, and chunks lying entirely after
//! an already-found failure are skipped, so the reported counterexample never
//! depends on scheduling.
//!
//! Predicates receive exact `u64` values; overflow inside a predicate is the
//! predicate's own business.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

/// Half-open range `[lo, hi)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Range {
    pub lo: u64,
    pub hi: u64,
}

impl Range {
    /// # Panics
    ///
    /// If `lo > hi`.
    pub fn new(lo: u64, hi: u64) -> Self {
        assert!(lo <= hi, "range lower bound {lo} exceeds upper bound {hi}");
        Range { lo, hi }
    }

    pub fn len(&self) -> u64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CheckResult<T> {
    Pass,
    Counterexample(T),
}

impl<T> CheckResult<T> {
    pub fn is_pass(&self) -> bool {
        matches!(self, CheckResult::Pass)
    }
}

/// Execution knobs. Results never depend on them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Points per chunk; `None` picks one from the range size.
    pub chunk_size: Option<u64>,
}

impl CheckOptions {
    pub fn sequential() -> Self {
        CheckOptions {
            threads: Some(1),
            chunk_size: Some(u64::MAX),
        }
    }
}

const MIN_CHUNK: u64 = 1 << 14;
const CHUNKS_PER_THREAD: u64 = 16;

/// Flat index space over up to three axes.
struct Grid {
    axes: Vec<Range>,
    total: u128,
}

impl Grid {
    fn new(axes: &[Range]) -> Self {
        let total = axes.iter().map(|r| u128::from(r.len())).product();
        Grid {
            axes: axes.to_vec(),
            total,
        }
    }

    /// Writes the point at flat index `i` into `out`.
    fn point(&self, mut i: u128, out: &mut [u64; 3]) {
        for (k, r) in self.axes.iter().enumerate().rev() {
            let len = u128::from(r.len());
            out[k] = r.lo + (i % len) as u64;
            i /= len;
        }
    }
}

fn scan<F>(grid: &Grid, opts: CheckOptions, pred: F) -> Option<[u64; 3]>
where
    F: Fn(&[u64; 3]) -> bool + Sync,
{
    if grid.total == 0 {
        return None;
    }
    let threads = opts
        .threads
        .unwrap_or_else(rayon::current_num_threads)
        .max(1) as u64;
    let chunk = u128::from(opts.chunk_size.unwrap_or_else(|| {
        let per = grid.total / u128::from(threads * CHUNKS_PER_THREAD);
        per.clamp(u128::from(MIN_CHUNK), u128::from(u64::MAX)) as u64
    }))
    .max(1);
    let chunks = grid.total.div_ceil(chunk);
    // With a forced small chunk on a huge grid the chunk count could exceed
    // usize; such a check would never finish anyway.
    let chunks = usize::try_from(chunks).expect("too many chunks");

    let first_bad_chunk = AtomicUsize::new(usize::MAX);
    let run_chunk = |c: usize| -> Option<u128> {
        if first_bad_chunk.load(Ordering::Relaxed) < c {
            return None;
        }
        let start = c as u128 * chunk;
        let end = (start + chunk).min(grid.total);
        let mut point = [0u64; 3];
        grid.point(start, &mut point);
        let mut i = start;
        while i < end {
            if !pred(&point) {
                first_bad_chunk.fetch_min(c, Ordering::Relaxed);
                return Some(i);
            }
            // Periodically give up if an earlier chunk already failed.
            if i & 0xFFFF == 0 && first_bad_chunk.load(Ordering::Relaxed) < c {
                return None;
            }
            i += 1;
            advance(&grid.axes, &mut point);
        }
        None
    };

    let found = if threads == 1 || chunks == 1 {
        (0..chunks).find_map(run_chunk)
    } else if opts.threads.is_some() {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads as usize)
            .build()
            .expect("failed to build thread pool");
        pool.install(|| (0..chunks).into_par_iter().filter_map(run_chunk).min())
    } else {
        (0..chunks).into_par_iter().filter_map(run_chunk).min()
    };

    found.map(|i| {
        let mut point = [0u64; 3];
        grid.point(i, &mut point);
        assert!(
            !pred(&point),
            "predicate is not deterministic at {:?}",
            &point[..grid.axes.len()]
        );
        point
    })
}

/// Odometer increment, least significant axis last.
#[inline]
fn advance(axes: &[Range], point: &mut [u64; 3]) {
    for (k, r) in axes.iter().enumerate().rev() {
        point[k] += 1;
        if point[k] < r.hi {
            return;
        }
        point[k] = r.lo;
    }
}

pub fn check_range1_with<F>(pred: F, r: Range, opts: CheckOptions) -> CheckResult<u64>
where
    F: Fn(u64) -> bool + Sync,
{
    match scan(&Grid::new(&[r]), opts, |p| pred(p[0])) {
        None => CheckResult::Pass,
        Some(p) => CheckResult::Counterexample(p[0]),
    }
}

pub fn check_range2_with<F>(pred: F, r1: Range, r2: Range, opts: CheckOptions) -> CheckResult<(u64, u64)>
where
    F: Fn(u64, u64) -> bool + Sync,
{
    match scan(&Grid::new(&[r1, r2]), opts, |p| pred(p[0], p[1])) {
        None => CheckResult::Pass,
        Some(p) => CheckResult::Counterexample((p[0], p[1])),
    }
}

pub fn check_range3_with<F>(
    pred: F,
    r1: Range,
    r2: Range,
    r3: Range,
    opts: CheckOptions,
) -> CheckResult<(u64, u64, u64)>
where
    F: Fn(u64, u64, u64) -> bool + Sync,
{
    match scan(&Grid::new(&[r1, r2, r3]), opts, |p| pred(p[0], p[1], p[2])) {
        None => CheckResult::Pass,
        Some(p) => CheckResult::Counterexample((p[0], p[1], p[2])),
    }
}

/// Checks `pred(x)` for every `x` in `r`.
pub fn check_range1<F>(pred: F, r: Range) -> CheckResult<u64>
where
    F: Fn(u64) -> bool + Sync,
{
    check_range1_with(pred, r, CheckOptions::default())
}

/// Checks `pred(x, y)` over `r1 × r2`.
pub fn check_range2<F>(pred: F, r1: Range, r2: Range) -> CheckResult<(u64, u64)>
where
    F: Fn(u64, u64) -> bool + Sync,
{
    check_range2_with(pred, r1, r2, CheckOptions::default())
}

/// Checks `pred(x, y, z)` over `r1 × r2 × r3`.
pub fn check_range3<F>(pred: F, r1: Range, r2: Range, r3: Range) -> CheckResult<(u64, u64, u64)>
where
    F: Fn(u64, u64, u64) -> bool + Sync,
{
    check_range3_with(pred, r1, r2, r3, CheckOptions::default())
}

/// `h(x) = x - x/1460 + x/36524 - x/146096`: day of era with the leap days
/// removed.
pub fn era_day_without_leaps(x: u64) -> u64 {
    x - x / 1460 + x / 36524 - x / 146_096
}

/// For a day of era `x`, the start of the year `h(x)/365` does not lie after
/// `x`.
pub fn era_year_start_bound(x: u64) -> bool {
    let h = era_day_without_leaps(x);
    x >= h / 365 * 365 + h / (365 * 4) - h / (365 * 100)
}
