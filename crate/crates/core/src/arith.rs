//! Time arithmetic in two flavours.
//!
//! [`shift`] moves one component of a time (adding a month adds one to the
//! month field), carries into the more significant fields, and then walks any
//! invalid field back to the previous valid value. Shifts are convenient but
//! not invertible: 2009-01-31 plus one month is 2009-02-28, and minus one
//! month from there is 2009-01-28.
//!
//! [`add_formal`] instead adds a fixed number of seconds through the
//! timestamp, with every calendar unit given a fixed length in
//! [`FormalDuration`]. Formal arithmetic composes like integer addition
//! whenever the results stay in range.

use std::fmt;
use std::str::FromStr;

use crate::calendar::{
    days_in_month, LeapSecondTable, LeapSign, RawDate, RawTime, Time, MAX_YEAR, MIN_YEAR,
};
use crate::civil;
use crate::error::{Error, Possibly};
use crate::spec::{max_time, max_timestamp, MAX_DATESTAMP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TimeUnit {
    Years,
    Months,
    Days,
    Hours,
    Minutes,
    Seconds,
}

impl TimeUnit {
    pub const ALL: [TimeUnit; 6] = [
        TimeUnit::Years,
        TimeUnit::Months,
        TimeUnit::Days,
        TimeUnit::Hours,
        TimeUnit::Minutes,
        TimeUnit::Seconds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TimeUnit::Years => "years",
            TimeUnit::Months => "months",
            TimeUnit::Days => "days",
            TimeUnit::Hours => "hours",
            TimeUnit::Minutes => "minutes",
            TimeUnit::Seconds => "seconds",
        }
    }

    /// Length of one formal unit, in seconds.
    pub fn formal_seconds(self) -> i64 {
        match self {
            TimeUnit::Seconds => 1,
            TimeUnit::Minutes => 60,
            TimeUnit::Hours => 3600,
            TimeUnit::Days => FORMAL_DAY,
            TimeUnit::Months => FORMAL_MONTH,
            TimeUnit::Years => FORMAL_YEAR,
        }
    }
}

impl fmt::Display for TimeUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TimeUnit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        TimeUnit::ALL
            .into_iter()
            .find(|u| u.name() == s || u.name().trim_end_matches('s') == s)
            .ok_or_else(|| Error::parse(format!("unknown unit {s:?}")))
    }
}

pub const FORMAL_DAY: i64 = 86_400;
/// A formal month is 30 formal days.
pub const FORMAL_MONTH: i64 = 30 * FORMAL_DAY;
/// A formal year is 12 formal months (360 formal days).
pub const FORMAL_YEAR: i64 = 12 * FORMAL_MONTH;

/// A duration measured in atomic seconds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalDuration {
    pub seconds: i64,
}

impl FormalDuration {
    pub const fn seconds(seconds: i64) -> Self {
        FormalDuration { seconds }
    }

    /// `k` formal units, or `None` on overflow.
    pub fn of(unit: TimeUnit, k: i64) -> Option<Self> {
        k.checked_mul(unit.formal_seconds()).map(Self::seconds)
    }

    pub fn checked_add(self, rhs: Self) -> Option<Self> {
        self.seconds.checked_add(rhs.seconds).map(Self::seconds)
    }
}

impl std::ops::Neg for FormalDuration {
    type Output = FormalDuration;

    fn neg(self) -> Self {
        FormalDuration::seconds(-self.seconds)
    }
}

fn out_of_range(t: Time, what: impl fmt::Display) -> Error {
    Error::out_of_range(format!("{t} {what} leaves the representable range"))
}

/// Walks invalid fields back to the previous valid value: the day is clamped
/// to the month length, `:60` becomes `:59` unless the date has a positive
/// leap second, and `23:59:59` becomes `23:59:58` on a negative-leap date.
fn correct(ls: &LeapSecondTable, raw: RawTime) -> RawTime {
    let RawTime {
        date,
        hour,
        minute,
        mut second,
    } = raw;
    let dim = days_in_month(date.year, date.month).unwrap_or(31);
    let date = RawDate::new(date.year, date.month, date.day.min(dim));
    let last_minute = hour == 23 && minute == 59;
    match ls.sign_on(&date) {
        Some(LeapSign::Positive) if last_minute => {}
        Some(LeapSign::Negative) if last_minute && second == 59 => second = 58,
        _ if second == 60 => second = 59,
        _ => {}
    }
    RawTime::new(date, hour, minute, second)
}

/// Moves the day count and keeps the components below `unit`.
fn with_day(raw: &RawTime, ds: i128, hour: i64, minute: i64) -> Option<RawTime> {
    if !(0..=MAX_DATESTAMP as i128).contains(&ds) {
        return None;
    }
    let date = civil::from_datestamp(ds as i64);
    Some(RawTime::new(date, hour, minute, raw.second))
}

/// Shifts component `unit` of `t` by `k`, carrying and correcting.
///
/// Seconds are all the same length, so a seconds shift is plain timestamp
/// arithmetic and crosses leap seconds like any other second.
pub fn shift(ls: &LeapSecondTable, t: Time, unit: TimeUnit, k: i64) -> Possibly<Time> {
    let raw = t.raw();
    let k128 = i128::from(k);
    let moved = match unit {
        TimeUnit::Years => {
            let y = i128::from(raw.date.year) + k128;
            (i128::from(MIN_YEAR)..=i128::from(MAX_YEAR))
                .contains(&y)
                .then(|| RawTime {
                    date: RawDate::new(y as i64, raw.date.month, raw.date.day),
                    ..raw
                })
        }
        TimeUnit::Months => {
            let months = i128::from(raw.date.year) * 12 + i128::from(raw.date.month - 1) + k128;
            let y = months.div_euclid(12);
            (i128::from(MIN_YEAR)..=i128::from(MAX_YEAR))
                .contains(&y)
                .then(|| RawTime {
                    date: RawDate::new(y as i64, months.rem_euclid(12) as i64 + 1, raw.date.day),
                    ..raw
                })
        }
        TimeUnit::Days => {
            let ds = i128::from(civil::datestamp(&raw.date)) + k128;
            with_day(&raw, ds, raw.hour, raw.minute)
        }
        TimeUnit::Hours => {
            let hours = i128::from(civil::datestamp(&raw.date)) * 24 + i128::from(raw.hour) + k128;
            with_day(
                &raw,
                hours.div_euclid(24),
                hours.rem_euclid(24) as i64,
                raw.minute,
            )
        }
        TimeUnit::Minutes => {
            let minutes = (i128::from(civil::datestamp(&raw.date)) * 24 + i128::from(raw.hour))
                * 60
                + i128::from(raw.minute)
                + k128;
            let hours = minutes.div_euclid(60);
            with_day(
                &raw,
                hours.div_euclid(24),
                hours.rem_euclid(24) as i64,
                minutes.rem_euclid(60) as i64,
            )
        }
        TimeUnit::Seconds => {
            return add_formal(ls, t, FormalDuration::seconds(k));
        }
    };
    let moved = moved.ok_or_else(|| out_of_range(t, format_args!("shifted by {k} {unit}")))?;
    let fixed = correct(ls, moved);
    debug_assert!(crate::calendar::valid_time(ls, &fixed), "{fixed}");
    Ok(Time::trusted(fixed))
}

/// [`shift`] that saturates at the minimum or maximum time instead of failing.
pub fn shift_plain(ls: &LeapSecondTable, t: Time, unit: TimeUnit, k: i64) -> Time {
    shift(ls, t, unit, k).unwrap_or_else(|_| if k < 0 { Time::MIN } else { max_time(ls) })
}

/// Adds `dur` atomic seconds to `t`, counting leap seconds as real seconds.
pub fn add_formal(ls: &LeapSecondTable, t: Time, dur: FormalDuration) -> Possibly<Time> {
    let n = i128::from(civil::timestamp(ls, &t.raw())) + i128::from(dur.seconds);
    if !(0..=i128::from(max_timestamp(ls))).contains(&n) {
        return Err(out_of_range(
            t,
            format_args!("plus {} seconds", dur.seconds),
        ));
    }
    let raw = civil::from_timestamp(ls, n as i64);
    debug_assert!(crate::calendar::valid_time(ls, &raw), "{raw}");
    Ok(Time::trusted(raw))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calendar::{valid_time, LeapEntry};
    use crate::ErrorKind;
    use proptest::prelude::*;

    fn at(ls: &LeapSecondTable, y: i64, mo: i64, d: i64, h: i64, mi: i64, s: i64) -> Time {
        Time::new(ls, RawTime::ymdhms(y, mo, d, h, mi, s)).unwrap()
    }

    fn leap_table() -> LeapSecondTable {
        LeapSecondTable::new(vec![
            LeapEntry::new(RawDate::new(1972, 6, 30), LeapSign::Positive),
            LeapEntry::new(RawDate::new(1972, 12, 31), LeapSign::Positive),
            LeapEntry::new(RawDate::new(2035, 12, 31), LeapSign::Negative),
        ])
        .unwrap()
    }

    #[test]
    fn month_shift_examples() {
        let ls = LeapSecondTable::empty();
        let jan31 = at(&ls, 2009, 1, 31, 14, 0, 0);
        let feb28 = shift(&ls, jan31, TimeUnit::Months, 1).unwrap();
        assert_eq!(feb28, at(&ls, 2009, 2, 28, 14, 0, 0));
        assert_eq!(
            shift(&ls, at(&ls, 2008, 2, 29, 15, 0, 0), TimeUnit::Months, 24).unwrap(),
            at(&ls, 2010, 2, 28, 15, 0, 0)
        );
        // not an inverse
        let back = shift(&ls, feb28, TimeUnit::Months, -1).unwrap();
        assert_eq!(back, at(&ls, 2009, 1, 28, 14, 0, 0));
        assert_ne!(back, jan31);
    }

    #[test]
    fn carries_and_borrows() {
        let ls = LeapSecondTable::empty();
        let t = at(&ls, 1999, 12, 31, 23, 30, 15);
        assert_eq!(shift(&ls, t, TimeUnit::Months, 1).unwrap(), at(&ls, 2000, 1, 31, 23, 30, 15));
        assert_eq!(shift(&ls, t, TimeUnit::Days, 1).unwrap(), at(&ls, 2000, 1, 1, 23, 30, 15));
        assert_eq!(shift(&ls, t, TimeUnit::Hours, 1).unwrap(), at(&ls, 2000, 1, 1, 0, 30, 15));
        assert_eq!(shift(&ls, t, TimeUnit::Minutes, 30).unwrap(), at(&ls, 2000, 1, 1, 0, 0, 15));
        assert_eq!(shift(&ls, t, TimeUnit::Seconds, 45).unwrap(), at(&ls, 1999, 12, 31, 23, 31, 0));
        assert_eq!(shift(&ls, t, TimeUnit::Months, -12).unwrap(), at(&ls, 1998, 12, 31, 23, 30, 15));
        assert_eq!(shift(&ls, t, TimeUnit::Hours, -24 * 365).unwrap(), at(&ls, 1998, 12, 31, 23, 30, 15));
        assert_eq!(shift(&ls, t, TimeUnit::Years, 1).unwrap(), at(&ls, 2000, 12, 31, 23, 30, 15));
        assert_eq!(
            shift(&ls, at(&ls, 2000, 2, 29, 0, 0, 0), TimeUnit::Years, 1).unwrap(),
            at(&ls, 2001, 2, 28, 0, 0, 0)
        );
    }

    #[test]
    fn leap_second_corrections() {
        let ls = leap_table();
        let leap = at(&ls, 1972, 6, 30, 23, 59, 60);
        // onto another positive leap day: kept
        assert_eq!(shift(&ls, leap, TimeUnit::Months, 6).unwrap(), at(&ls, 1972, 12, 30, 23, 59, 59));
        assert_eq!(shift(&ls, leap, TimeUnit::Days, 184).unwrap(), at(&ls, 1972, 12, 31, 23, 59, 60));
        // onto an ordinary day: back to :59
        assert_eq!(shift(&ls, leap, TimeUnit::Days, 1).unwrap(), at(&ls, 1972, 7, 1, 23, 59, 59));
        assert_eq!(shift(&ls, leap, TimeUnit::Minutes, -1).unwrap(), at(&ls, 1972, 6, 30, 23, 58, 59));
        // onto a negative leap day: :59 does not exist
        let t = at(&ls, 2035, 12, 30, 23, 59, 59);
        assert_eq!(shift(&ls, t, TimeUnit::Days, 1).unwrap(), at(&ls, 2035, 12, 31, 23, 59, 58));
        // seconds are atomic
        assert_eq!(
            shift(&ls, at(&ls, 1972, 6, 30, 23, 59, 59), TimeUnit::Seconds, 1).unwrap(),
            leap
        );
    }

    #[test]
    fn range_errors() {
        let ls = LeapSecondTable::empty();
        let t = at(&ls, 9999, 12, 31, 12, 0, 0);
        for unit in TimeUnit::ALL {
            let k = match unit {
                TimeUnit::Hours => 12,
                TimeUnit::Minutes => 12 * 60,
                TimeUnit::Seconds => 12 * 3600,
                _ => 1,
            };
            let err = shift(&ls, t, unit, k).unwrap_err();
            assert_eq!(err.kind, ErrorKind::OutOfRange, "{unit}");
        }
        assert_eq!(shift_plain(&ls, t, TimeUnit::Years, 1), max_time(&ls));
        assert_eq!(shift_plain(&ls, t, TimeUnit::Years, -10_000), Time::MIN);
        assert_eq!(shift(&ls, t, TimeUnit::Years, i64::MIN).unwrap_err().kind, ErrorKind::OutOfRange);
        assert_eq!(shift(&ls, t, TimeUnit::Minutes, i64::MAX).unwrap_err().kind, ErrorKind::OutOfRange);
    }

    #[test]
    fn formal_examples() {
        let ls = LeapSecondTable::empty();
        let t = at(&ls, 2009, 1, 31, 14, 0, 0);
        let month = FormalDuration::of(TimeUnit::Months, 1).unwrap();
        assert_eq!(month.seconds, 30 * 24 * 60 * 60);
        assert_eq!(add_formal(&ls, t, month).unwrap(), at(&ls, 2009, 3, 2, 14, 0, 0));
        assert_eq!(add_formal(&leap_table(), at(&leap_table(), 1980, 1, 1, 0, 0, 0), FormalDuration::default()).unwrap(),
            at(&leap_table(), 1980, 1, 1, 0, 0, 0));
        let err = add_formal(&ls, Time::MIN, FormalDuration::seconds(-1)).unwrap_err();
        assert_eq!(err.kind, ErrorKind::OutOfRange);
        assert_eq!(FormalDuration::of(TimeUnit::Years, 1).unwrap().seconds, 360 * 86_400);
        assert!(FormalDuration::of(TimeUnit::Years, i64::MAX).is_none());
    }

    #[test]
    fn formal_counts_leap_seconds() {
        let ls = leap_table();
        let t = at(&ls, 1972, 6, 30, 12, 0, 0);
        let day = FormalDuration::of(TimeUnit::Days, 1).unwrap();
        assert_eq!(add_formal(&ls, t, day).unwrap(), at(&ls, 1972, 7, 1, 11, 59, 59));
    }

    #[test]
    fn unit_names_parse() {
        for u in TimeUnit::ALL {
            assert_eq!(u.name().parse::<TimeUnit>().unwrap(), u);
        }
        assert_eq!("month".parse::<TimeUnit>().unwrap(), TimeUnit::Months);
        assert!("fortnights".parse::<TimeUnit>().is_err());
    }

    fn valid_time_strategy(ls: LeapSecondTable) -> impl Strategy<Value = Time> {
        (0i64..=MAX_DATESTAMP, 0i64..86_401).prop_map(move |(ds, sod)| {
            let date = civil::from_datestamp(ds);
            let raw = if sod == 86_400 {
                RawTime::new(date, 23, 59, 60)
            } else {
                RawTime::new(date, sod / 3600, sod % 3600 / 60, sod % 60)
            };
            Time::new(&ls, raw).unwrap_or_else(|_| Time::new(&ls, RawTime::new(date, 12, 0, 0)).unwrap())
        })
    }

    fn unit_strategy() -> impl Strategy<Value = TimeUnit> {
        prop::sample::select(TimeUnit::ALL.to_vec())
    }

    proptest! {
        #[test]
        fn shift_results_are_valid(t in valid_time_strategy(leap_table()), unit in unit_strategy(), k in -200_000i64..200_000) {
            let ls = leap_table();
            match shift(&ls, t, unit, k) {
                Ok(r) => prop_assert!(valid_time(&ls, &r.raw())),
                Err(e) => prop_assert_eq!(e.kind, ErrorKind::OutOfRange),
            }
            prop_assert!(valid_time(&ls, &shift_plain(&ls, t, unit, k).raw()));
        }

        #[test]
        fn year_shift_keeps_components(t in valid_time_strategy(leap_table()), k in -3000i64..3000) {
            let ls = leap_table();
            if let Ok(r) = shift(&ls, t, TimeUnit::Years, k) {
                let (a, b) = (t.raw(), r.raw());
                prop_assert_eq!(b.date.year, a.date.year + k);
                prop_assert_eq!((a.date.month, a.hour, a.minute), (b.date.month, b.hour, b.minute));
                if (a.date.month, a.date.day) == (2, 29) {
                    prop_assert!(b.date.day == 29 || b.date.day == 28);
                } else {
                    prop_assert_eq!(a.date.day, b.date.day);
                }
            }
        }

        #[test]
        fn seconds_shift_matches_formal(t in valid_time_strategy(LeapSecondTable::empty()), k in -10_000_000i64..10_000_000) {
            let ls = LeapSecondTable::empty();
            prop_assert_eq!(shift(&ls, t, TimeUnit::Seconds, k), add_formal(&ls, t, FormalDuration::seconds(k)));
        }

        #[test]
        fn formal_is_a_partial_group_action(
            t in valid_time_strategy(leap_table()),
            a in -100_000_000_000i64..100_000_000_000,
            b in -100_000_000_000i64..100_000_000_000,
        ) {
            let ls = leap_table();
            let (da, db) = (FormalDuration::seconds(a), FormalDuration::seconds(b));
            if let Ok(ta) = add_formal(&ls, t, da) {
                prop_assert_eq!(add_formal(&ls, ta, -da), Ok(t));
                if let Ok(tab) = add_formal(&ls, ta, db) {
                    prop_assert_eq!(add_formal(&ls, t, da.checked_add(db).unwrap()), Ok(tab));
                }
            }
        }
    }
}
