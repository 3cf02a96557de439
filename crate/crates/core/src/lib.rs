//! UTC dates, times and timestamps with leap seconds.
//!
//! Two layers compute the same functions:
//!
//! * [`spec`] defines datestamps and timestamps by counting, with successor
//!   functions and iteration. It is slow and obviously right.
//! * [`civil`] computes them with era arithmetic in constant time (plus a
//!   pass over the leap table).
//!
//! The test suite checks the layers against each other over every valid date
//! and over dense windows of times around every leap second. [`range_check`]
//! provides the exhaustive checker used for those arguments, and [`arith`]
//! builds time arithmetic on top. [`cli`] is the command-line tool.
//!
//! Leap seconds come from a [`LeapSecondTable`]; the empty table gives Unix
//! time.

pub mod arith;
pub mod calendar;
pub mod civil;
pub mod cli;
pub mod error;
pub mod numeric;
pub mod range_check;
pub mod selfcheck;
pub mod spec;

pub use arith::{add_formal, shift, FormalDuration, TimeUnit};
pub use calendar::{
    Date, LeapEntry, LeapSecondTable, LeapSign, RawDate, RawTime, Time, valid_date,
    valid_leap_table, valid_time,
};
pub use error::{Error, ErrorKind, Possibly};
