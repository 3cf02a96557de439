//! Raw and validated dates and times, and the leap-second table.
//!
//! Raw tuples carry no guarantee; anything representable may be stored in
//! them. [`Date`] and [`Time`] can only be obtained through checked
//! constructors, so holding one is evidence that it exists in UTC.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Possibly};

pub const MIN_YEAR: i64 = 0;
pub const MAX_YEAR: i64 = 9999;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RawDate {
    pub year: i64,
    pub month: i64,
    pub day: i64,
}

impl RawDate {
    pub const fn new(year: i64, month: i64, day: i64) -> Self {
        RawDate { year, month, day }
    }
}

impl fmt::Display for RawDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}-{:02}", self.year, self.month, self.day)
    }
}

/// Field order matters: the derived ordering is lexicographic on
/// (year, month, day, hour, minute, second).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RawTime {
    pub date: RawDate,
    pub hour: i64,
    pub minute: i64,
    pub second: i64,
}

impl RawTime {
    pub const fn new(date: RawDate, hour: i64, minute: i64, second: i64) -> Self {
        RawTime {
            date,
            hour,
            minute,
            second,
        }
    }

    pub const fn ymdhms(y: i64, mo: i64, d: i64, h: i64, mi: i64, s: i64) -> Self {
        RawTime::new(RawDate::new(y, mo, d), h, mi, s)
    }

    pub const fn midnight(date: RawDate) -> Self {
        RawTime::new(date, 0, 0, 0)
    }
}

impl fmt::Display for RawTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}T{:02}:{:02}:{:02}",
            self.date, self.hour, self.minute, self.second
        )
    }
}

pub fn cmp_raw_time(a: &RawTime, b: &RawTime) -> Ordering {
    a.cmp(b)
}

pub fn is_leap_year(y: i64) -> bool {
    (y.rem_euclid(4) == 0 && y.rem_euclid(100) != 0) || y.rem_euclid(400) == 0
}

/// Number of days in month `m` (1-based) of year `y`, or `None` when `m` is
/// not a month.
pub fn days_in_month(y: i64, m: i64) -> Option<i64> {
    let days = match m {
        1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
        4 | 6 | 9 | 11 => 30,
        2 if is_leap_year(y) => 29,
        2 => 28,
        _ => return None,
    };
    Some(days)
}

pub fn valid_date(d: &RawDate) -> bool {
    (MIN_YEAR..=MAX_YEAR).contains(&d.year)
        && days_in_month(d.year, d.month).is_some_and(|n| (1..=n).contains(&d.day))
}

/// Direction of a leap second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LeapSign {
    /// The day has 86401 seconds; `23:59:60` exists.
    Positive,
    /// The day has 86399 seconds; `23:59:59` is skipped.
    Negative,
}

impl LeapSign {
    pub fn delta(self) -> i64 {
        match self {
            LeapSign::Positive => 1,
            LeapSign::Negative => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LeapEntry {
    pub date: RawDate,
    pub sign: LeapSign,
}

impl LeapEntry {
    pub const fn new(date: RawDate, sign: LeapSign) -> Self {
        LeapEntry { date, sign }
    }
}

pub fn valid_leap_table(entries: &[LeapEntry]) -> bool {
    entries.iter().all(|e| valid_date(&e.date))
        && entries.windows(2).all(|w| w[0].date < w[1].date)
}

/// Sorted list of leap-second dates. Every time-level function is
/// parameterized by one of these; the empty table gives Unix time.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LeapSecondTable {
    entries: Vec<LeapEntry>,
}

impl LeapSecondTable {
    pub fn new(entries: Vec<LeapEntry>) -> Possibly<Self> {
        if let Some(e) = entries.iter().find(|e| !valid_date(&e.date)) {
            return Err(Error::invalid_leap_table(format!(
                "entry {} is not a valid date",
                e.date
            )));
        }
        if let Some(w) = entries.windows(2).find(|w| w[0].date >= w[1].date) {
            return Err(Error::invalid_leap_table(format!(
                "entries not strictly increasing: {} then {}",
                w[0].date, w[1].date
            )));
        }
        Ok(LeapSecondTable { entries })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[LeapEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sign_on(&self, d: &RawDate) -> Option<LeapSign> {
        self.entries
            .binary_search_by(|e| e.date.cmp(d))
            .ok()
            .map(|i| self.entries[i].sign)
    }

    /// Net leap seconds in the table (positives minus negatives).
    pub fn net(&self) -> i64 {
        self.entries.iter().map(|e| e.sign.delta()).sum()
    }
}

pub fn valid_time(ls: &LeapSecondTable, t: &RawTime) -> bool {
    if !valid_date(&t.date) || !(0..=23).contains(&t.hour) || !(0..=59).contains(&t.minute) {
        return false;
    }
    let last_minute = t.hour == 23 && t.minute == 59;
    match (t.second, ls.sign_on(&t.date)) {
        (60, Some(LeapSign::Positive)) => last_minute,
        (59, Some(LeapSign::Negative)) => !last_minute,
        (s, _) => (0..=59).contains(&s),
    }
}

/// A date known to exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Date(RawDate);

impl Date {
    pub const MIN: Date = Date(RawDate::new(MIN_YEAR, 1, 1));
    pub const MAX: Date = Date(RawDate::new(MAX_YEAR, 12, 31));

    pub fn new(raw: RawDate) -> Possibly<Self> {
        if valid_date(&raw) {
            Ok(Date(raw))
        } else {
            Err(Error::invalid_date(format!("{raw} is not a valid date")))
        }
    }

    pub fn from_ymd(y: i64, m: i64, d: i64) -> Possibly<Self> {
        Self::new(RawDate::new(y, m, d))
    }

    pub fn raw(&self) -> RawDate {
        self.0
    }
}

impl fmt::Display for Date {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A time known to exist under the leap table it was constructed with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Time(RawTime);

impl Time {
    pub const MIN: Time = Time(RawTime::midnight(RawDate::new(MIN_YEAR, 1, 1)));

    pub fn new(ls: &LeapSecondTable, raw: RawTime) -> Possibly<Self> {
        if !valid_date(&raw.date) {
            return Err(Error::invalid_date(format!("{} is not a valid date", raw.date)));
        }
        if !valid_time(ls, &raw) {
            return Err(Error::invalid_time(format!("{raw} is not a valid time")));
        }
        Ok(Time(raw))
    }

    pub fn raw(&self) -> RawTime {
        self.0
    }

    /// The date part. Both routes to a raw date (through [`Date`] or through
    /// [`RawTime`]) give the same tuple.
    pub fn date(&self) -> Date {
        Date(self.0.date)
    }

    /// Wraps a tuple the caller has already checked.
    pub(crate) fn trusted(raw: RawTime) -> Self {
        Time(raw)
    }
}

impl Date {
    pub(crate) fn trusted(raw: RawDate) -> Self {
        Date(raw)
    }
}

impl fmt::Display for Time {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
