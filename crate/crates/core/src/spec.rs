//! Reference model of the calendar, built from successor functions and
//! counting.
//!
//! A datestamp is the number of valid dates strictly before a date, and a
//! timestamp is the number of valid times strictly before a time. Inverses are
//! obtained by iterating the successor from the minimum. Nothing here is fast;
//! everything here is easy to believe. The fast conversions in
//! [`crate::civil`] are tested for agreement with these.

use crate::calendar::{
    days_in_month, valid_time, Date, LeapSecondTable, LeapSign, RawDate, RawTime, Time, MAX_YEAR,
    MIN_YEAR,
};

/// Datestamp of 9999-12-31.
pub const MAX_DATESTAMP: i64 = 3_652_424;
/// Number of valid dates; the period of [`next_date`].
pub const DATE_COUNT: i64 = MAX_DATESTAMP + 1;
pub const DAYS_PER_ERA: i64 = 146_097;
pub const SECONDS_PER_DAY: i64 = 86_400;

/// Successor date; 9999-12-31 wraps to 0000-01-01.
pub fn next_date(d: Date) -> Date {
    let RawDate { year, month, day } = d.raw();
    let next = if Some(day) < days_in_month(year, month) {
        RawDate::new(year, month, day + 1)
    } else if month < 12 {
        RawDate::new(year, month + 1, 1)
    } else if year < MAX_YEAR {
        RawDate::new(year + 1, 1, 1)
    } else {
        RawDate::new(MIN_YEAR, 1, 1)
    };
    Date::trusted(next)
}

/// Successor time under `ls`; the maximum time wraps to the minimum.
pub fn next_time(ls: &LeapSecondTable, t: Time) -> Time {
    let RawTime {
        date,
        hour,
        minute,
        second,
    } = t.raw();
    let candidates = [
        RawTime::new(date, hour, minute, second + 1),
        RawTime::new(date, hour, minute + 1, 0),
        RawTime::new(date, hour + 1, 0, 0),
    ];
    for c in candidates {
        if valid_time(ls, &c) {
            return Time::trusted(c);
        }
    }
    Time::trusted(RawTime::midnight(
        next_date(Date::trusted(date)).raw(),
    ))
}

/// All valid dates in order, starting from the minimum.
pub fn all_dates() -> impl Iterator<Item = Date> {
    std::iter::successors(Some(Date::MIN), |&d| {
        (d != Date::MAX).then(|| next_date(d))
    })
}

/// Valid times in order from `start` (inclusive), not wrapping.
pub fn times_from(ls: &LeapSecondTable, start: Time) -> impl Iterator<Item = Time> + '_ {
    let max = max_time(ls);
    std::iter::successors(Some(start), move |&t| (t != max).then(|| next_time(ls, t)))
}

/// Number of valid dates strictly before `d`, counted by walking from the
/// minimum date.
pub fn spec_datestamp(d: Date) -> i64 {
    all_dates().take_while(|&x| x != d).count() as i64
}

/// The `n`th successor of the minimum date. Since [`next_date`] has period
/// [`DATE_COUNT`], only `n mod DATE_COUNT` steps are taken.
pub fn spec_from_datestamp(n: u64) -> Date {
    let steps = n % DATE_COUNT as u64;
    (0..steps).fold(Date::MIN, |d, _| next_date(d))
}

pub fn seconds_in_day(ls: &LeapSecondTable, d: Date) -> i64 {
    match ls.sign_on(&d.raw()) {
        Some(LeapSign::Positive) => SECONDS_PER_DAY + 1,
        Some(LeapSign::Negative) => SECONDS_PER_DAY - 1,
        None => SECONDS_PER_DAY,
    }
}

/// Number of valid `(h, m, s)` on `t`'s date that precede it, by enumeration.
fn seconds_before_in_day(ls: &LeapSecondTable, t: &RawTime) -> i64 {
    let mut count = 0;
    for hour in 0..24 {
        for minute in 0..60 {
            for second in 0..=60 {
                let c = RawTime::new(t.date, hour, minute, second);
                if c >= *t {
                    return count;
                }
                if valid_time(ls, &c) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Number of valid times strictly before `t`: whole days before `t`'s date
/// summed day by day, plus the valid seconds preceding it on its own date.
pub fn spec_timestamp(ls: &LeapSecondTable, t: Time) -> i64 {
    let date = t.date();
    let days: i64 = all_dates()
        .take_while(|&d| d != date)
        .map(|d| seconds_in_day(ls, d))
        .sum();
    days + seconds_before_in_day(ls, &t.raw())
}

/// Number of valid times strictly before `t`, counted one second at a time.
/// Only usable close to the epoch.
pub fn spec_timestamp_by_iteration(ls: &LeapSecondTable, t: Time) -> i64 {
    times_from(ls, Time::MIN).take_while(|&x| x != t).count() as i64
}

/// The `n`th successor of the minimum time, cyclic. Linear in `n` within a
/// period.
pub fn spec_from_timestamp(ls: &LeapSecondTable, n: u64) -> Time {
    let period = (max_timestamp(ls) + 1) as u64;
    let mut remaining = n % period;
    // Skip whole days first; a day's successor chain is exactly
    // seconds_in_day long.
    let mut day = Date::MIN;
    loop {
        let len = seconds_in_day(ls, day) as u64;
        if remaining < len {
            break;
        }
        remaining -= len;
        day = next_date(day);
    }
    (0..remaining).fold(Time::trusted(RawTime::midnight(day.raw())), |t, _| {
        next_time(ls, t)
    })
}

pub fn max_timestamp(ls: &LeapSecondTable) -> i64 {
    SECONDS_PER_DAY * DATE_COUNT - 1 + ls.net()
}

/// The last valid time under `ls`.
pub fn max_time(ls: &LeapSecondTable) -> Time {
    let second = match ls.sign_on(&Date::MAX.raw()) {
        Some(LeapSign::Positive) => 60,
        Some(LeapSign::Negative) => 58,
        None => 59,
    };
    Time::trusted(RawTime::new(Date::MAX.raw(), 23, 59, second))
}
