//! Command-line front end: text formats, argument grammar and exit codes.
//!
//! Times travel as `YYYY-MM-DDThh:mm:ss`. Leap tables are files with one
//! `YYYY-MM-DD P` (positive) or `YYYY-MM-DD N` (negative) entry per line;
//! blank lines and lines starting with `#` are skipped.
//!
//! Exit status is 0 on success, 1 for malformed or invalid input and 2 when a
//! valid input leads outside the representable range. Each error is reported
//! on stderr as `error: <kind>: <detail>`.

use std::fmt::Write as _;
use std::io::BufRead;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::arith::{self, FormalDuration, TimeUnit};
use crate::calendar::{LeapEntry, LeapSecondTable, LeapSign, RawDate, RawTime, Time};
use crate::civil;
use crate::error::{Error, Possibly};
use crate::range_check::CheckResult;
use crate::selfcheck;
use crate::spec::max_timestamp;

fn digits(s: &str) -> Option<i64> {
    if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) {
        s.parse().ok()
    } else {
        None
    }
}

fn parse_date_text(s: &str) -> Option<RawDate> {
    let b = s.as_bytes();
    if b.len() != 10 || b[4] != b'-' || b[7] != b'-' {
        return None;
    }
    Some(RawDate::new(
        digits(&s[0..4])?,
        digits(&s[5..7])?,
        digits(&s[8..10])?,
    ))
}

/// Parses `YYYY-MM-DDThh:mm:ss` without judging whether the time exists.
pub fn parse_time(text: &str) -> Possibly<RawTime> {
    let fail = || Error::parse(format!("expected YYYY-MM-DDThh:mm:ss, got {text:?}"));
    if !text.is_ascii() {
        return Err(fail());
    }
    let b = text.as_bytes();
    if b.len() != 19 || b[10] != b'T' || b[13] != b':' || b[16] != b':' {
        return Err(fail());
    }
    let date = parse_date_text(&text[..10]).ok_or_else(fail)?;
    let field = |r: std::ops::Range<usize>| digits(&text[r]).ok_or_else(fail);
    Ok(RawTime::new(date, field(11..13)?, field(14..16)?, field(17..19)?))
}

pub fn format_time(t: &RawTime) -> String {
    t.to_string()
}

pub fn parse_leap_table(text: &str) -> Possibly<LeapSecondTable> {
    let mut entries = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fail = || Error::parse(format!("leap table line {}: {line:?}", no + 1));
        let (date, sign) = line.split_once(' ').ok_or_else(fail)?;
        let date = parse_date_text(date).ok_or_else(fail)?;
        let sign = match sign {
            "P" => LeapSign::Positive,
            "N" => LeapSign::Negative,
            _ => return Err(fail()),
        };
        entries.push(LeapEntry::new(date, sign));
    }
    LeapSecondTable::new(entries)
}

pub fn format_leap_table(ls: &LeapSecondTable) -> String {
    let mut out = String::new();
    for e in ls.entries() {
        let sign = match e.sign {
            LeapSign::Positive => 'P',
            LeapSign::Negative => 'N',
        };
        let _ = writeln!(out, "{} {sign}", e.date);
    }
    out
}

fn parse_int(what: &str, text: &str) -> Possibly<i64> {
    let body = text.strip_prefix('-').unwrap_or(text);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(format!("{what}: expected an integer, got {text:?}")));
    }
    text.parse()
        .map_err(|_| Error::out_of_range(format!("{what}: {text} does not fit in 64 bits")))
}

#[derive(Parser, Debug)]
#[command(
    name = "leapcal",
    version,
    about = "UTC date/time and timestamp conversions with leap seconds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct LeapArg {
    /// Leap-second table file; without it there are no leap seconds (Unix time)
    #[arg(long, value_name = "FILE")]
    leap: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the timestamp of TIME (read TIMEs from stdin when omitted)
    ToTimestamp {
        #[command(flatten)]
        leap: LeapArg,
        /// Skip validation and print whatever the conversion computes
        #[arg(long)]
        plain: bool,
        time: Option<String>,
    },
    /// Print the time at timestamp N (read Ns from stdin when omitted)
    FromTimestamp {
        #[command(flatten)]
        leap: LeapArg,
        /// Skip the range check and print whatever the conversion computes
        #[arg(long)]
        plain: bool,
        #[arg(allow_hyphen_values = true)]
        n: Option<String>,
    },
    /// Shift one component of TIME, carrying and correcting invalid results
    Shift {
        #[command(flatten)]
        leap: LeapArg,
        /// Saturate at the minimum or maximum time instead of failing
        #[arg(long)]
        plain: bool,
        /// years, months, days, hours, minutes or seconds
        #[arg(long)]
        unit: String,
        #[arg(long, allow_hyphen_values = true)]
        amount: String,
        time: Option<String>,
    },
    /// Add a formal duration (month = 30 days, year = 12 months) to TIME
    AddFormal {
        #[command(flatten)]
        leap: LeapArg,
        #[arg(long, allow_hyphen_values = true)]
        years: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        months: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        days: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        hours: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        minutes: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        seconds: Option<String>,
        time: Option<String>,
    },
    /// Print the largest valid timestamp
    MaxTimestamp {
        #[command(flatten)]
        leap: LeapArg,
    },
    /// Run the built-in exhaustive checks and print timings
    Selftest,
}

/// What a command invocation produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(&mut self, e: &Error) {
        let _ = writeln!(self.stderr, "error: {e}");
        if self.code == 0 {
            self.code = e.kind.exit_code();
        }
    }
}

fn load_table(arg: &LeapArg) -> Possibly<LeapSecondTable> {
    match &arg.leap {
        None => Ok(LeapSecondTable::empty()),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::parse(format!("cannot read {}: {e}", path.display()))
            })?;
            parse_leap_table(&text)
        }
    }
}

/// Runs `f` on the positional value, or on each non-blank stdin line when it
/// is absent. Later inputs are still processed after a failure; the exit code
/// is that of the first failure.
fn each_input(
    out: &mut Outcome,
    value: Option<String>,
    stdin: &mut dyn BufRead,
    mut f: impl FnMut(&str) -> Possibly<String>,
) {
    let inputs: Vec<String> = match value {
        Some(v) => vec![v],
        None => {
            let mut lines = Vec::new();
            for line in stdin.lines() {
                match line {
                    Ok(l) if l.trim().is_empty() => {}
                    Ok(l) => lines.push(l.trim().to_string()),
                    Err(e) => {
                        out.fail(&Error::parse(format!("cannot read stdin: {e}")));
                        break;
                    }
                }
            }
            lines
        }
    };
    for input in inputs {
        match f(&input) {
            Ok(line) => {
                out.stdout.push_str(&line);
                out.stdout.push('\n');
            }
            Err(e) => out.fail(&e),
        }
    }
}

fn parse_valid_time(ls: &LeapSecondTable, text: &str) -> Possibly<Time> {
    Time::new(ls, parse_time(text)?)
}

fn to_timestamp(ls: &LeapSecondTable, plain: bool, text: &str) -> Possibly<String> {
    let raw = parse_time(text)?;
    if !plain {
        Time::new(ls, raw)?;
    }
    Ok(civil::timestamp(ls, &raw).to_string())
}

fn from_timestamp(ls: &LeapSecondTable, plain: bool, text: &str) -> Possibly<String> {
    let n = parse_int("timestamp", text)?;
    let max = max_timestamp(ls);
    if !plain && !(0..=max).contains(&n) {
        return Err(Error::out_of_range(format!(
            "timestamp {n} not in [0, {max}]"
        )));
    }
    Ok(format_time(&civil::from_timestamp(ls, n)))
}

fn formal_total(parts: &[(TimeUnit, &Option<String>)]) -> Possibly<FormalDuration> {
    let mut total = FormalDuration::default();
    for &(unit, text) in parts {
        let Some(text) = text else { continue };
        let k = parse_int(unit.name(), text)?;
        total = FormalDuration::of(unit, k)
            .and_then(|d| total.checked_add(d))
            .ok_or_else(|| Error::out_of_range(format!("duration overflows at --{unit} {k}")))?;
    }
    Ok(total)
}

fn selftest(out: &mut Outcome) {
    let (res, took) = selfcheck::era_bound_check();
    let verdict = match res {
        CheckResult::Pass => "pass".to_string(),
        CheckResult::Counterexample(x) => format!("FAIL at x = {x}"),
    };
    let _ = writeln!(
        out.stdout,
        "era year bound over [0, 146097): {verdict} ({:.3}s)",
        took.as_secs_f64()
    );
    let failed_bound = !res.is_pass();

    let sweep = selfcheck::sweep_dates();
    let verdict = if sweep.passed() {
        "pass".to_string()
    } else {
        format!(
            "FAIL ({} mismatches, {} diagnostics)",
            sweep.mismatches.len(),
            sweep.diagnostics.len()
        )
    };
    let _ = writeln!(
        out.stdout,
        "date round trip over {} dates: {verdict} ({:.3}s)",
        sweep.dates,
        sweep.elapsed.as_secs_f64()
    );
    if failed_bound || !sweep.passed() {
        out.code = 1;
    }
}

/// Runs the tool on `argv` (including the program name) with `stdin` as the
/// batch input source.
pub fn run<I, T>(argv: I, stdin: &mut dyn BufRead) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut out = Outcome::default();
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            if matches!(e.kind(), K::DisplayHelp | K::DisplayVersion) {
                out.stdout = e.render().to_string();
            } else {
                // First paragraph of clap's message, folded onto one line.
                let msg = e.render().to_string();
                let detail: Vec<&str> = msg
                    .lines()
                    .take_while(|l| !l.trim().is_empty())
                    .map(str::trim)
                    .collect();
                let detail = detail.join(" ");
                let detail = detail.strip_prefix("error: ").unwrap_or(&detail);
                out.fail(&Error::parse(detail));
            }
            return out;
        }
    };

    let table = |out: &mut Outcome, leap: &LeapArg| match load_table(leap) {
        Ok(ls) => Some(ls),
        Err(e) => {
            out.fail(&e);
            None
        }
    };

    match cli.command {
        Command::ToTimestamp { leap, plain, time } => {
            let Some(ls) = table(&mut out, &leap) else { return out };
            each_input(&mut out, time, stdin, |s| to_timestamp(&ls, plain, s));
        }
        Command::FromTimestamp { leap, plain, n } => {
            let Some(ls) = table(&mut out, &leap) else { return out };
            each_input(&mut out, n, stdin, |s| from_timestamp(&ls, plain, s));
        }
        Command::Shift {
            leap,
            plain,
            unit,
            amount,
            time,
        } => {
            let Some(ls) = table(&mut out, &leap) else { return out };
            let args = unit
                .parse::<TimeUnit>()
                .and_then(|u| Ok((u, parse_int("amount", &amount)?)));
            let (unit, k) = match args {
                Ok(v) => v,
                Err(e) => {
                    out.fail(&e);
                    return out;
                }
            };
            each_input(&mut out, time, stdin, |s| {
                let t = parse_valid_time(&ls, s)?;
                let r = if plain {
                    arith::shift_plain(&ls, t, unit, k)
                } else {
                    arith::shift(&ls, t, unit, k)?
                };
                Ok(r.to_string())
            });
        }
        Command::AddFormal {
            leap,
            years,
            months,
            days,
            hours,
            minutes,
            seconds,
            time,
        } => {
            let Some(ls) = table(&mut out, &leap) else { return out };
            let dur = formal_total(&[
                (TimeUnit::Years, &years),
                (TimeUnit::Months, &months),
                (TimeUnit::Days, &days),
                (TimeUnit::Hours, &hours),
                (TimeUnit::Minutes, &minutes),
                (TimeUnit::Seconds, &seconds),
            ]);
            let dur = match dur {
                Ok(d) => d,
                Err(e) => {
                    out.fail(&e);
                    return out;
                }
            };
            each_input(&mut out, time, stdin, |s| {
                let t = parse_valid_time(&ls, s)?;
                Ok(arith::add_formal(&ls, t, dur)?.to_string())
            });
        }
        Command::MaxTimestamp { leap } => {
            let Some(ls) = table(&mut out, &leap) else { return out };
            let _ = writeln!(out.stdout, "{}", max_timestamp(&ls));
        }
        Command::Selftest => selftest(&mut out),
    }
    out
}
