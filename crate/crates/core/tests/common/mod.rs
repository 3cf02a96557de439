#![allow(dead_code)]

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use leapcal::civil;
use leapcal::cli::parse_leap_table;
use leapcal::spec::{self, MAX_DATESTAMP};
use leapcal::{Date, LeapSecondTable, RawTime, Time};
use rand::Rng;

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn load_table(name: &str) -> LeapSecondTable {
    let text = fs::read_to_string(fixtures_dir().join(name)).unwrap();
    parse_leap_table(&text).unwrap()
}

/// Every fixture table, including the empty one.
pub fn fixture_tables() -> Vec<(&'static str, LeapSecondTable)> {
    let mut out = vec![("empty", LeapSecondTable::empty())];
    for name in [
        "leap-1972.txt",
        "leap-seconds.txt",
        "adversarial-consecutive.txt",
        "adversarial-bounds.txt",
        "adversarial-bounds-positive.txt",
    ] {
        out.push((name, load_table(name)));
    }
    out
}

/// Runs of consecutive datestamps covering the day before, the day of and the
/// day after every leap entry, clipped to the valid range and merged.
pub fn leap_windows(ls: &LeapSecondTable) -> Vec<(i64, i64)> {
    let days: BTreeSet<i64> = ls
        .entries()
        .iter()
        .flat_map(|e| {
            let d = civil::datestamp(&e.date);
            [d - 1, d, d + 1]
        })
        .filter(|d| (0..=MAX_DATESTAMP).contains(d))
        .collect();
    let mut runs: Vec<(i64, i64)> = Vec::new();
    for d in days {
        match runs.last_mut() {
            Some((_, end)) if *end + 1 == d => *end = d,
            _ => runs.push((d, d)),
        }
    }
    runs
}

/// All valid times on days `first..=last`, in order.
pub fn window_times(ls: &LeapSecondTable, (first, last): (i64, i64)) -> Vec<Time> {
    let start = Time::new(ls, RawTime::midnight(civil::from_datestamp(first))).unwrap();
    let end_day = Date::new(civil::from_datestamp(last)).unwrap();
    spec::times_from(ls, start)
        .take_while(|t| t.date() <= end_day)
        .collect()
}

/// A uniformly chosen valid time: a uniform timestamp, decoded by the
/// reference successor structure of its day.
pub fn random_time(ls: &LeapSecondTable, rng: &mut impl Rng) -> Time {
    let day = rng.gen_range(0..=MAX_DATESTAMP);
    let date = Date::new(civil::from_datestamp(day)).unwrap();
    let len = spec::seconds_in_day(ls, date);
    let k = rng.gen_range(0..len);
    if k < 86_340 {
        let raw = RawTime::new(date.raw(), k / 3600, k % 3600 / 60, k % 60);
        return Time::new(ls, raw).unwrap();
    }
    // The last minute is the only irregular one; walk it.
    let last_minute = Time::new(ls, RawTime::new(date.raw(), 23, 59, 0)).unwrap();
    spec::times_from(ls, last_minute)
        .nth((k - 86_340) as usize)
        .unwrap()
}

pub struct GoldenCase {
    pub name: String,
    pub args: Vec<String>,
    pub stdin: Option<String>,
}

pub fn golden_cases() -> Vec<GoldenCase> {
    let text = fs::read_to_string(golden_dir().join("cases.txt")).unwrap();
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, args) = l.split_once(':').expect("name: args");
            let name = name.trim().to_string();
            let stdin = fs::read_to_string(golden_dir().join(format!("{name}.stdin"))).ok();
            GoldenCase {
                name,
                args: args.split_whitespace().map(String::from).collect(),
                stdin,
            }
        })
        .collect()
}

pub fn run_bin(args: &[String], stdin: Option<&str>) -> (i32, String, String) {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_leapcal"))
        .args(args)
        .current_dir(fixtures_dir())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let input = stdin.unwrap_or("").to_string();
    let mut pipe = child.stdin.take().unwrap();
    let writer = std::thread::spawn(move || {
        let _ = pipe.write_all(input.as_bytes());
    });
    let out = child.wait_with_output().unwrap();
    writer.join().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

pub fn render_golden(code: i32, stdout: &str, stderr: &str) -> String {
    format!("exit: {code}\n--- stdout\n{stdout}--- stderr\n{stderr}")
}

/// Compares every case against its `.out` file. With `UPDATE_GOLDEN=1` the
/// files are rewritten instead. Returns the names of mismatching cases.
pub fn check_goldens() -> Vec<String> {
    let bless = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for case in golden_cases() {
        let (code, stdout, stderr) = run_bin(&case.args, case.stdin.as_deref());
        let got = render_golden(code, &stdout, &stderr);
        let path = golden_dir().join(format!("{}.out", case.name));
        if bless {
            fs::write(&path, &got).unwrap();
            continue;
        }
        match fs::read_to_string(&path) {
            Ok(want) if want == got => {}
            Ok(want) => {
                eprintln!("golden mismatch in {}:\n--- want\n{want}--- got\n{got}", case.name);
                failures.push(case.name);
            }
            Err(_) => {
                eprintln!("missing golden file {}", path.display());
                failures.push(case.name);
            }
        }
    }
    failures
}
