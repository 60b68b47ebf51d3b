//! Acceptance suite: one PASS/FAIL line per criterion, with timing.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use diagres::classifier::{in_D, in_S, in_T, pi_p};
use diagres::par::Mode;
use diagres::suites::{self, SuiteReport};

struct Outcome {
    checked: usize,
    failures: Vec<String>,
}

impl From<SuiteReport> for Outcome {
    fn from(r: SuiteReport) -> Self {
        Outcome {
            checked: r.checked,
            failures: r.failures,
        }
    }
}

fn suite(name: &str) -> Outcome {
    match suites::run(name, Mode::default(), None) {
        Ok(r) => r.into(),
        Err(e) => Outcome {
            checked: 0,
            failures: vec![format!("suite {name} did not run: {e}")],
        },
    }
}

fn intervals(parts: &[(i64, i64)]) -> Vec<i64> {
    parts.iter().flat_map(|&(a, b)| a..=b).collect()
}

/// Compares membership on `0..=last printed element` against the listing.
fn prefix(name: &str, listed: &[i64], member: impl Fn(i64) -> bool, out: &mut Outcome) {
    let last = *listed.last().expect("non-empty listing");
    for a in 0..=last {
        out.checked += 1;
        if member(a) != listed.contains(&a) {
            out.failures.push(format!("{name}: membership of {a} disagrees with the printed prefix"));
        }
    }
}

fn set_tables() -> Outcome {
    let mut out = Outcome {
        checked: 0,
        failures: Vec::new(),
    };
    let d3 = [0, 2, 6, 8, 18, 20, 24, 26, 54, 56, 60, 62, 72, 74, 78, 80];
    let s3 = [0, 1, 4, 5, 12, 13, 16, 17, 36, 37, 40, 41, 48, 49, 52, 53];
    prefix("D_3", &d3, |a| in_D(3, a), &mut out);
    prefix("S_3", &s3, |a| in_S(3, a), &mut out);
    let tables: [(u64, i64, &[(i64, i64)], &[(i64, i64)]); 4] = [
        (5, 1, &[(0, 1), (4, 6), (19, 21), (24, 26)], &[(0, 2), (7, 12), (37, 42), (47, 52)]),
        (7, 2, &[(0, 2), (5, 9), (12, 16), (33, 37)], &[(0, 4), (9, 18), (23, 32), (65, 74)]),
        (11, 3, &[(0, 3), (8, 14), (19, 25), (30, 36)], &[(0, 6), (15, 28), (37, 50), (59, 72)]),
        (13, 4, &[(0, 4), (9, 17), (22, 30), (35, 43)], &[(0, 8), (17, 34), (43, 60), (69, 86)]),
    ];
    for (p, pi, d, s) in tables {
        out.checked += 1;
        if pi_p(p) != Ok(pi) {
            out.failures.push(format!("pi_{p} = {:?}, expected {pi}", pi_p(p)));
        }
        prefix(&format!("D_{p}"), &intervals(d), |a| in_D(p, a), &mut out);
        prefix(&format!("S_{p}"), &intervals(s), |a| in_S(p, a), &mut out);
    }
    let t: [(u64, &[(i64, i64)]); 3] = [
        (
            3,
            &[
                (2, 3),
                (6, 11),
                (14, 15),
                (18, 35),
                (38, 39),
                (42, 47),
                (50, 51),
                (54, 107),
                (110, 111),
                (114, 119),
                (122, 123),
                (126, 143),
                (146, 147),
            ],
        ),
        (5, &[(3, 6), (13, 36), (43, 46), (53, 56), (63, 186)]),
        (7, &[(5, 8), (19, 22), (33, 64), (75, 78), (89, 92), (103, 106)]),
    ];
    for (p, parts) in t {
        prefix(&format!("T_{p}"), &intervals(parts), |a| in_T(p, a).is_some(), &mut out);
    }
    out
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "set tables", limit: Duration::from_secs(1), run: set_tables },
        Criterion { id: 2, name: "partition", limit: Duration::from_secs(30), run: || suite("partition") },
        Criterion { id: 3, name: "valuations", limit: Duration::from_secs(120), run: || suite("valuations") },
        Criterion { id: 4, name: "polynomial identities", limit: Duration::from_secs(120), run: || suite("nandi") },
        Criterion { id: 5, name: "crit certification", limit: Duration::from_secs(300), run: || suite("crit") },
        Criterion { id: 6, name: "resolution referee", limit: Duration::from_secs(600), run: || suite("referee") },
        Criterion { id: 7, name: "Hilbert-Burch", limit: Duration::from_secs(300), run: || suite("hb") },
        Criterion { id: 8, name: "Frobenius", limit: Duration::from_secs(300), run: || suite("frobenius") },
        Criterion { id: 9, name: "two variables", limit: Duration::from_secs(60), run: || suite("twovar") },
    ];
    let mut all = true;
    for c in criteria {
        let start = Instant::now();
        let out = (c.run)();
        let took = start.elapsed();
        let in_time = took <= c.limit;
        let ok = out.failures.is_empty() && in_time;
        all &= ok;
        println!(
            "{} criterion {} ({}): {} checks, {} failures, {:.2?} (limit {:?})",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            out.checked,
            out.failures.len(),
            took,
            c.limit,
        );
        if !in_time {
            println!("    over the time limit");
        }
        for f in out.failures.iter().take(10) {
            println!("    {f}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
