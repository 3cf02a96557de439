//! Fast date and time conversions using 400-year eras and March-based years.
//!
//! Years are reckoned from March 1 so that the leap day, when present, is the
//! last day of the year. Day-of-year for the start of each shifted month is
//! the linear interpolant `(153 m + 2) / 5`. Eras of 400 years (146097 days)
//! absorb the rest of the Gregorian rule.
//!
//! The public functions are total on raw input: they never panic and always
//! return the same value for the same input, but they only promise to agree
//! with the reference model in [`crate::spec`] on valid input. The [`strict`]
//! module runs the same code with checked arithmetic and declared bounds.

use crate::calendar::{LeapSecondTable, LeapSign, RawDate, RawTime};
use crate::numeric::{total, Arith, Plain};
use crate::spec::{DAYS_PER_ERA, MAX_DATESTAMP, SECONDS_PER_DAY};

/// Days from 0000-01-01 to 0000-03-01, the origin of era arithmetic.
pub const EPOCH_SHIFT: i64 = 60;

/// Net leap seconds accumulated before some instant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Offset(pub i64);

/// A day expressed in era coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftedDate {
    pub era: i64,
    /// Year of era, 0..=399.
    pub yoe: i64,
    /// Day of shifted year (March 1 = 0), 0..=365.
    pub doy: i64,
    /// Day of era, 0..=146096.
    pub doe: i64,
}

fn doy_of_shifted_month_in<A: Arith>(m: i64) -> Result<i64, A::Error> {
    A::div(A::add(A::mul(153, m)?, 2)?, 5)
}

fn shifted_month_of_doy_in<A: Arith>(doy: i64) -> Result<i64, A::Error> {
    A::div(A::add(A::mul(5, doy)?, 2)?, 153)
}

/// Days in the shifted year before the shifted month `m` (March = 0).
pub fn doy_of_shifted_month(m: i64) -> i64 {
    total(doy_of_shifted_month_in::<Plain>(m))
}

/// Shifted month containing day-of-year `doy`.
pub fn shifted_month_of_doy(doy: i64) -> i64 {
    total(shifted_month_of_doy_in::<Plain>(doy))
}

/// Days in the first `yoe` years of an era.
fn days_before_yoe<A: Arith>(yoe: i64) -> Result<i64, A::Error> {
    A::sub(
        A::add(A::mul(yoe, 365)?, A::div(yoe, 4)?)?,
        A::div(yoe, 100)?,
    )
}

/// Year of era for a day of era, inverting [`days_before_yoe`] by removing
/// the leap days first: `h(x) = x - x/1460 + x/36524 - x/146096`.
fn yoe_of_doe<A: Arith>(doe: i64) -> Result<i64, A::Error> {
    let h = A::sub(
        A::add(A::sub(doe, A::div(doe, 1460)?)?, A::div(doe, 36524)?)?,
        A::div(doe, 146_096)?,
    )?;
    A::div(h, 365)
}

fn shifted_in<A: Arith>(d: &RawDate) -> Result<ShiftedDate, A::Error> {
    let march_based = d.month > 2;
    A::bound("month", d.month, 1, 12)?;
    A::bound("day", d.day, 1, 31)?;
    let y = if march_based { d.year } else { A::sub(d.year, 1)? };
    let y = A::bound("shifted year", y, -1, 9999)?;
    let era = A::bound("era", A::div(y, 400)?, -1, 24)?;
    let yoe = A::bound("year of era", A::sub(y, A::mul(era, 400)?)?, 0, 399)?;
    let m = if march_based {
        A::sub(d.month, 3)?
    } else {
        A::add(d.month, 9)?
    };
    let m = A::bound("shifted month", m, 0, 11)?;
    let doy = A::sub(A::add(doy_of_shifted_month_in::<A>(m)?, d.day)?, 1)?;
    let doy = A::bound("day of year", doy, 0, 365)?;
    let doe = A::add(days_before_yoe::<A>(yoe)?, doy)?;
    let doe = A::bound("day of era", doe, 0, DAYS_PER_ERA - 1)?;
    Ok(ShiftedDate { era, yoe, doy, doe })
}

fn datestamp_in<A: Arith>(d: &RawDate) -> Result<i64, A::Error> {
    let s = shifted_in::<A>(d)?;
    let n = A::add(A::add(A::mul(s.era, DAYS_PER_ERA)?, s.doe)?, EPOCH_SHIFT)?;
    A::bound("datestamp", n, 0, MAX_DATESTAMP)
}

fn from_datestamp_in<A: Arith>(n: i64) -> Result<RawDate, A::Error> {
    let z = A::sub(n, EPOCH_SHIFT)?;
    let era = A::bound("era", A::div(z, DAYS_PER_ERA)?, -1, 24)?;
    let doe = A::sub(z, A::mul(era, DAYS_PER_ERA)?)?;
    let doe = A::bound("day of era", doe, 0, DAYS_PER_ERA - 1)?;
    let yoe = A::bound("year of era", yoe_of_doe::<A>(doe)?, 0, 399)?;
    let doy = A::bound("day of year", A::sub(doe, days_before_yoe::<A>(yoe)?)?, 0, 365)?;
    let m = A::bound("shifted month", shifted_month_of_doy_in::<A>(doy)?, 0, 11)?;
    let day = A::add(A::sub(doy, doy_of_shifted_month_in::<A>(m)?)?, 1)?;
    let day = A::bound("day", day, 1, 31)?;
    let month = if m < 10 { A::add(m, 3)? } else { A::sub(m, 9)? };
    let year = A::add(yoe, A::mul(era, 400)?)?;
    let year = if month <= 2 { A::add(year, 1)? } else { year };
    let year = A::bound("year", year, 0, 9999)?;
    Ok(RawDate::new(year, month, day))
}

fn offset_rd_in<A: Arith>(ls: &LeapSecondTable, d: &RawDate) -> Result<i64, A::Error> {
    let mut off = 0;
    for e in ls.entries().iter().take_while(|e| e.date < *d) {
        off = A::add(off, e.sign.delta())?;
    }
    Ok(off)
}

fn seconds_of_day_in<A: Arith>(t: &RawTime) -> Result<i64, A::Error> {
    A::add(
        A::add(A::mul(t.hour, 3600)?, A::mul(t.minute, 60)?)?,
        t.second,
    )
}

fn timestamp_in<A: Arith>(ls: &LeapSecondTable, t: &RawTime) -> Result<i64, A::Error> {
    let days = A::mul(datestamp_in::<A>(&t.date)?, SECONDS_PER_DAY)?;
    let sod = A::bound("second of day", seconds_of_day_in::<A>(t)?, 0, SECONDS_PER_DAY)?;
    let n = leap_count(ls);
    let off = A::bound("offset", offset_rd_in::<A>(ls, &t.date)?, -n, n)?;
    let signed = A::add(A::add(days, sod)?, off)?;
    A::bound(
        "timestamp",
        A::abs(signed)?,
        0,
        SECONDS_PER_DAY * (MAX_DATESTAMP + 1) - 1 + n,
    )
}

fn leap_count(ls: &LeapSecondTable) -> i64 {
    ls.len() as i64
}

/// Timestamp of the last second of an entry's day: `23:59:60` for a positive
/// entry, `23:59:58` for a negative one. `prior` is the offset accumulated by
/// earlier entries.
fn final_second_in<A: Arith>(d: &RawDate, sign: LeapSign, prior: i64) -> Result<i64, A::Error> {
    let last = match sign {
        LeapSign::Positive => SECONDS_PER_DAY,
        LeapSign::Negative => SECONDS_PER_DAY - 2,
    };
    let days = A::mul(datestamp_in::<A>(d)?, SECONDS_PER_DAY)?;
    A::add(A::add(days, last)?, prior)
}

/// Offset in effect at timestamp `n`, plus the date whose positive leap second
/// `n` addresses, if any.
fn offset_ts_in<A: Arith>(
    ls: &LeapSecondTable,
    n: i64,
) -> Result<(i64, Option<RawDate>), A::Error> {
    let mut off = 0;
    for e in ls.entries() {
        let last = final_second_in::<A>(&e.date, e.sign, off)?;
        if last < n {
            off = A::add(off, e.sign.delta())?;
        } else {
            let hit = (last == n && e.sign == LeapSign::Positive).then_some(e.date);
            return Ok((off, hit));
        }
    }
    Ok((off, None))
}

fn from_timestamp_in<A: Arith>(ls: &LeapSecondTable, n: i64) -> Result<RawTime, A::Error> {
    let (off, leap_day) = offset_ts_in::<A>(ls, n)?;
    if let Some(date) = leap_day {
        return Ok(RawTime::new(date, 23, 59, 60));
    }
    let k = leap_count(ls);
    let off = A::bound("offset", off, -k, k)?;
    let plain = A::sub(n, off)?;
    let date = from_datestamp_in::<A>(A::div(plain, SECONDS_PER_DAY)?)?;
    let sod = A::rem(plain, SECONDS_PER_DAY)?;
    let hour = A::div(sod, 3600)?;
    let rest = A::rem(sod, 3600)?;
    Ok(RawTime::new(date, hour, A::div(rest, 60)?, A::rem(rest, 60)?))
}

/// Days since 0000-01-01. Meaningful for valid dates only.
pub fn datestamp(d: &RawDate) -> i64 {
    total(datestamp_in::<Plain>(d))
}

/// The date `n` days after 0000-01-01. Meaningful for `0..=MAX_DATESTAMP`.
pub fn from_datestamp(n: i64) -> RawDate {
    total(from_datestamp_in::<Plain>(n))
}

/// Era decomposition of a date.
pub fn shifted(d: &RawDate) -> ShiftedDate {
    total(shifted_in::<Plain>(d))
}

/// Net leap seconds on dates strictly before `d`.
pub fn offset_rd(ls: &LeapSecondTable, d: &RawDate) -> Offset {
    Offset(total(offset_rd_in::<Plain>(ls, d)))
}

/// Seconds since 0000-01-01T00:00:00, leap seconds included. Meaningful for
/// times valid under `ls`.
pub fn timestamp(ls: &LeapSecondTable, t: &RawTime) -> i64 {
    total(timestamp_in::<Plain>(ls, t))
}

/// Net leap seconds whose final second lies strictly before timestamp `n`.
pub fn offset_ts(ls: &LeapSecondTable, n: i64) -> Offset {
    Offset(total(offset_ts_in::<Plain>(ls, n)).0)
}

/// The time at timestamp `n`. Meaningful for `0..=max_timestamp(ls)`.
pub fn from_timestamp(ls: &LeapSecondTable, n: i64) -> RawTime {
    total(from_timestamp_in::<Plain>(ls, n))
}

/// The same conversions with overflow checks and bound assertions on every
/// intermediate. Any [`BoundViolation`](crate::numeric::BoundViolation) on
/// in-contract input is a bug.
pub mod strict {
    use super::*;
    use crate::numeric::{BoundViolation, Checked};

    pub fn datestamp(d: &RawDate) -> Result<i64, BoundViolation> {
        datestamp_in::<Checked>(d)
    }

    pub fn from_datestamp(n: i64) -> Result<RawDate, BoundViolation> {
        from_datestamp_in::<Checked>(n)
    }

    pub fn timestamp(ls: &LeapSecondTable, t: &RawTime) -> Result<i64, BoundViolation> {
        timestamp_in::<Checked>(ls, t)
    }

    pub fn from_timestamp(ls: &LeapSecondTable, n: i64) -> Result<RawTime, BoundViolation> {
        from_timestamp_in::<Checked>(ls, n)
    }

    pub fn offset_ts(ls: &LeapSecondTable, n: i64) -> Result<Offset, BoundViolation> {
        offset_ts_in::<Checked>(ls, n).map(|(o, _)| Offset(o))
    }
}
