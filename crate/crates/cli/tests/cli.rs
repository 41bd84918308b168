use pinsurf_cli::{parse_record, run, Outcome, Payload, Verdict};

fn pinsurf(args: &str) -> Outcome {
    run(std::iter::once("pinsurf").chain(args.split_whitespace()))
}

fn stdout_of(args: &str) -> String {
    let outcome = pinsurf(args);
    assert_eq!(outcome.code, 0, "{args}: {}", outcome.stderr);
    outcome.stdout
}

#[test]
fn census_golden_tables() {
    assert_eq!(
        stdout_of("census -s N:3 -t pin-"),
        "surface: N:3\ntheory: pin-\nvalue       count\n1               3\n3               1\n5               1\n7               3\ntotal: 8\n"
    );
    assert_eq!(
        stdout_of("census -s S:2 -t spin"),
        "surface: S:2\ntheory: spin\nvalue       count\n0              10\n1               6\ntotal: 16\n"
    );
    assert_eq!(
        stdout_of("census -s N:3 -t pin- --format csv"),
        "value,count\n1,3\n3,1\n5,1\n7,3\n"
    );
}

#[test]
fn census_compare_flags_the_even_zero_entry() {
    let out = stdout_of("census -s N:2 -t pin- --compare");
    let zero_row = out.lines().find(|l| l.starts_with("0 ")).unwrap();
    let cells: Vec<&str> = zero_row.split_whitespace().collect();
    assert_eq!(cells, ["0", "2", "1", "2", "2", "DISPUTED"]);
    assert!(out.ends_with("disputed: 2 (even-k census i=0 closed form; even/odd case wording)\n"));

    let odd = stdout_of("census -s N:5 -t pin- --compare");
    assert!(!odd.contains("DISPUTED"));
    assert!(!odd.contains("disputed:"));
}

#[test]
fn census_compare_json_carries_all_columns() {
    let record = parse_record(&stdout_of("census -s N:4 -t pin- --compare --format json")).unwrap();
    assert!(record.flags.contains(&"DISPUTED".to_string()));
    let Payload::Census { rows, modulus, .. } = record.payload else {
        panic!("not a census");
    };
    assert_eq!(modulus, 8);
    assert_eq!(rows.len(), 8);
    assert_eq!((rows[0].count, rows[0].printed, rows[0].corrected), (6, Some(8), Some(6)));
    assert_eq!(rows.iter().map(|r| r.recursion.unwrap()).sum::<u64>(), 16);
}

#[test]
fn invariant_golden_lines() {
    assert_eq!(stdout_of("invariant -s N:1 -e 1"), "surface: N:1\nbeta=1\nhistogram=1,1,0,0\n");
    assert_eq!(stdout_of("invariant -s S:1 -q 1,1"), "surface: S:1\narf=1\n");
    assert_eq!(stdout_of("invariant -s N:2 -e 1,3"), "surface: N:2\nbeta=0\nhistogram=2,1,0,1\n");
    assert_eq!(
        stdout_of("invariant -s N:2 -e 1,3 --format csv"),
        "name,value,e0,e1,e2,e3\nbeta,0,2,1,0,1\n"
    );
}

#[test]
fn orbit_reports() {
    let out = stdout_of("orbits -s S:1 -t spin");
    assert!(out.contains("orbits: 2\nPASS\n"), "{out}");
    let record = parse_record(&stdout_of("orbits -s N:3 -t pin- --format json")).unwrap();
    let Payload::Orbits { orbits, verdict, method, .. } = record.payload else {
        panic!("not an orbit report");
    };
    assert_eq!(method, "brute");
    assert_eq!(verdict, Verdict::Pass);
    assert_eq!(orbits.iter().map(|o| o.size).collect::<Vec<_>>(), [1, 3, 3, 1]);
    assert_eq!(orbits.iter().map(|o| o.invariant).collect::<Vec<_>>(), [3, 1, 7, 5]);

    let out = stdout_of("orbits -s N:1 -t pin-");
    assert!(out.contains("orbits: 2\nPASS\n"), "{out}");
    let out = stdout_of("orbits -s N:5 -t pin-");
    assert!(out.contains("method: generated"), "{out}");
}

#[test]
fn verify_single_suites() {
    let out = stdout_of("verify brown-compass");
    assert!(out.starts_with("PASS brown-compass"), "{out}");
    assert!(out.ends_with("result: PASS\ndisputed: 0 ()\n"), "{out}");
    let out = stdout_of("verify pin-census-even");
    assert!(out.ends_with("disputed: 2 (even-k census i=0 closed form; even/odd case wording)\n"));
}

#[test]
fn exit_codes() {
    let cases = [
        ("census -s X:3 -t pin-", 2),
        ("census -s N:0 -t pin-", 2),
        ("census -s N:3 -t bogus", 2),
        ("census -s N:3 -t spin", 2),
        ("invariant -s N:1 -e 2", 2),
        ("invariant -s N:1 -e 5", 2),
        ("invariant -s S:1 -q 1", 2),
        ("invariant -s N:2 -q 1,1", 2),
        ("invariant -s N:2", 2),
        ("verify no-such-suite", 2),
        ("census -s N:17 -t pin-", 3),
        ("census -s N:5 -t pin- --max-census-dim 4", 3),
        ("invariant -s N:21 -e 1", 3),
        ("orbits -s N:5 -t pin- --method brute", 3),
        ("orbits -s N:11 -t pin-", 3),
        ("orbits -s S:2 -t spin --max-brute-dim 2 --max-generated-dim 3", 3),
    ];
    for (args, code) in cases {
        let outcome = pinsurf(args);
        assert_eq!(outcome.code, code, "{args}: {}", outcome.stderr);
        assert!(outcome.stdout.is_empty(), "{args}");
        assert!(!outcome.stderr.is_empty(), "{args}");
    }
}

#[test]
fn json_round_trips_for_every_command() {
    for args in [
        "census -s N:3 -t pin-",
        "census -s S:2 -t spin --compare",
        "census -s N:6 -t pin- --compare",
        "invariant -s S:2 -q 1,0,1,1",
        "invariant -s N:3 -e 1,3,3",
        "orbits -s S:2 -t spin",
        "orbits -s N:4 -t pin- --method generated",
        "verify recursion",
    ] {
        let text = stdout_of(&format!("{args} --format json"));
        let record = parse_record(&text).unwrap();
        assert_eq!(record.command, format!("{args} --format json"));
        let again = serde_json::to_string_pretty(&record).unwrap() + "\n";
        assert_eq!(again, text, "{args}");
        assert_eq!(parse_record(&again).unwrap(), record);
    }
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.csv");
    let args = format!("census -s N:4 -t pin- --format csv --out {}", path.display());
    let outcome = pinsurf(&args);
    assert_eq!(outcome.code, 0);
    assert!(outcome.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout_of("census -s N:4 -t pin- --format csv"));

    let missing = dir.path().join("missing").join("out.txt");
    let outcome = pinsurf(&format!("census -s N:1 -t pin- --out {}", missing.display()));
    assert_eq!(outcome.code, 2);
}

#[test]
fn repeated_runs_are_identical() {
    for args in ["orbits -s N:4 -t pin-", "census -s S:3 -t pin- --compare", "verify orbits"] {
        assert_eq!(pinsurf(args), pinsurf(args), "{args}");
    }
}
