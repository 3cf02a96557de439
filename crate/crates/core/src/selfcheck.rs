//! Whole-range checks shared by the `selftest` command and the test suite.

use std::time::{Duration, Instant};

use crate::civil;
use crate::range_check::{check_range1, era_year_start_bound, CheckResult, Range};
use crate::spec::{self, DATE_COUNT, DAYS_PER_ERA};

#[derive(Clone, Debug, Default)]
pub struct DateSweep {
    pub dates: u64,
    /// Indices where the fast conversion disagreed with the successor walk.
    pub mismatches: Vec<i64>,
    /// Checked-arithmetic diagnostics raised during the sweep.
    pub diagnostics: Vec<String>,
    pub elapsed: Duration,
}

impl DateSweep {
    pub fn passed(&self) -> bool {
        self.dates == DATE_COUNT as u64 && self.mismatches.is_empty() && self.diagnostics.is_empty()
    }
}

/// Walks every valid date with `next_date` and checks, at each index `i`,
/// that `datestamp(d) == i` and `from_datestamp(i) == d`, in both plain and
/// checked arithmetic.
pub fn sweep_dates() -> DateSweep {
    let start = Instant::now();
    let mut out = DateSweep::default();
    for (i, d) in spec::all_dates().enumerate() {
        let i = i as i64;
        let raw = d.raw();
        out.dates += 1;
        if civil::datestamp(&raw) != i || civil::from_datestamp(i) != raw {
            out.mismatches.push(i);
        }
        match (civil::strict::datestamp(&raw), civil::strict::from_datestamp(i)) {
            (Ok(a), Ok(b)) if a == i && b == raw => {}
            (Ok(_), Ok(_)) => out.mismatches.push(i),
            (a, b) => {
                for e in [a.err(), b.err()].into_iter().flatten() {
                    out.diagnostics.push(format!("{raw}: {e}"));
                }
            }
        }
    }
    out.elapsed = start.elapsed();
    out
}

/// Runs the year-of-era bound over every day of an era.
pub fn era_bound_check() -> (CheckResult<u64>, Duration) {
    let start = Instant::now();
    let res = check_range1(era_year_start_bound, Range::new(0, DAYS_PER_ERA as u64));
    (res, start.elapsed())
}
