use std::fmt::Write;

use crate::record::{CensusRow, OutputRecord, Payload};

fn opt(value: Option<u64>) -> String {
    value.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn compared(rows: &[CensusRow]) -> bool {
    rows.iter().any(|r| r.status.is_some())
}

fn disputes_line(flags: &[String]) -> Option<String> {
    let disputes: Vec<&str> = flags
        .iter()
        .filter_map(|f| f.strip_prefix("dispute: "))
        .collect();
    if disputes.is_empty() && !flags.iter().any(|f| f == "DISPUTED") {
        return None;
    }
    Some(format!("disputed: {} ({})", disputes.len(), disputes.join("; ")))
}

pub fn table(record: &OutputRecord) -> String {
    let mut out = String::new();
    if let Some(surface) = record.surface {
        writeln!(out, "surface: {surface}").unwrap();
    }
    match &record.payload {
        Payload::Census { theory, rows, .. } => {
            writeln!(out, "theory: {theory}").unwrap();
            if compared(rows) {
                writeln!(
                    out,
                    "{:<6} {:>10} {:>10} {:>10} {:>10}  status",
                    "value", "enumerated", "printed", "corrected", "recursion"
                )
                .unwrap();
                for r in rows {
                    let status = r.status.map(|s| s.to_string()).unwrap_or_default();
                    writeln!(
                        out,
                        "{:<6} {:>10} {:>10} {:>10} {:>10}  {status}",
                        r.value,
                        r.count,
                        opt(r.printed),
                        opt(r.corrected),
                        opt(r.recursion)
                    )
                    .unwrap();
                }
            } else {
                writeln!(out, "{:<6} {:>10}", "value", "count").unwrap();
                for r in rows {
                    writeln!(out, "{:<6} {:>10}", r.value, r.count).unwrap();
                }
            }
            let total: u64 = rows.iter().map(|r| r.count).sum();
            writeln!(out, "total: {total}").unwrap();
            if let Some(line) = disputes_line(&record.flags) {
                writeln!(out, "{line}").unwrap();
            }
        }
        Payload::Invariant {
            name,
            value,
            histogram,
            ..
        } => {
            writeln!(out, "{name}={value}").unwrap();
            if let Some(h) = histogram {
                writeln!(out, "histogram={},{},{},{}", h[0], h[1], h[2], h[3]).unwrap();
            }
        }
        Payload::Orbits {
            theory,
            method,
            orbits,
            verdict,
        } => {
            writeln!(out, "theory: {theory}").unwrap();
            writeln!(out, "method: {method}").unwrap();
            writeln!(out, "{:<6} {:>6} {:>10}", "orbit", "size", "invariant").unwrap();
            for (i, orbit) in orbits.iter().enumerate() {
                writeln!(out, "{:<6} {:>6} {:>10}", i, orbit.size, orbit.invariant).unwrap();
            }
            writeln!(out, "orbits: {}", orbits.len()).unwrap();
            writeln!(out, "{}", verdict.as_str()).unwrap();
        }
        Payload::Verify { report } => {
            for suite in &report.suites {
                writeln!(out, "{suite}").unwrap();
                for failure in &suite.failures {
                    writeln!(out, "  failure: {failure}").unwrap();
                }
                for note in &suite.notes {
                    writeln!(out, "  note: {note}").unwrap();
                }
            }
            let verdict = if report.passed() { "PASS" } else { "FAIL" };
            writeln!(out, "result: {verdict}").unwrap();
            let disputes = report.disputes();
            let names: Vec<String> = disputes.iter().map(ToString::to_string).collect();
            writeln!(out, "disputed: {} ({})", names.len(), names.join("; ")).unwrap();
        }
    }
    out
}

pub fn csv(record: &OutputRecord) -> String {
    let mut out = String::new();
    match &record.payload {
        Payload::Census { rows, .. } => {
            if compared(rows) {
                out.push_str("value,enumerated,printed,corrected,recursion,status\n");
                for r in rows {
                    let status = r.status.map(|s| s.to_string()).unwrap_or_default();
                    let cell = |v: Option<u64>| v.map(|v| v.to_string()).unwrap_or_default();
                    writeln!(
                        out,
                        "{},{},{},{},{},{status}",
                        r.value,
                        r.count,
                        cell(r.printed),
                        cell(r.corrected),
                        cell(r.recursion)
                    )
                    .unwrap();
                }
            } else {
                out.push_str("value,count\n");
                for r in rows {
                    writeln!(out, "{},{}", r.value, r.count).unwrap();
                }
            }
        }
        Payload::Invariant {
            name,
            value,
            histogram,
            ..
        } => match histogram {
            Some(h) => {
                out.push_str("name,value,e0,e1,e2,e3\n");
                writeln!(out, "{name},{value},{},{},{},{}", h[0], h[1], h[2], h[3]).unwrap();
            }
            None => {
                out.push_str("name,value\n");
                writeln!(out, "{name},{value}").unwrap();
            }
        },
        Payload::Orbits { orbits, verdict, .. } => {
            out.push_str("orbit,size,invariant,verdict\n");
            for (i, orbit) in orbits.iter().enumerate() {
                writeln!(out, "{i},{},{},{}", orbit.size, orbit.invariant, verdict.as_str()).unwrap();
            }
        }
        Payload::Verify { report } => {
            out.push_str("suite,verdict,checks,failures\n");
            for suite in &report.suites {
                let verdict = if suite.passed() { "PASS" } else { "FAIL" };
                writeln!(out, "{},{verdict},{},{}", suite.name, suite.checks, suite.failures.len()).unwrap();
            }
        }
    }
    out
}

pub fn json(record: &OutputRecord) -> String {
    let mut out = serde_json::to_string_pretty(record).expect("records always serialize");
    out.push('\n');
    out
}
