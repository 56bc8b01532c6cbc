use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn gcisfm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcisfm"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn csv_row(out: &str) -> Vec<(String, String)> {
    let mut lines = out.lines();
    let head: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    head.iter()
        .zip(row)
        .map(|(h, v)| (h.to_string(), v.to_string()))
        .collect()
}

fn field(row: &[(String, String)], key: &str) -> String {
    row.iter().find(|(k, _)| k == key).unwrap().1.clone()
}

#[test]
fn build_count_stats_running_example() {
    let dir = tempfile::tempdir().unwrap();
    let text = dir.path().join("t.txt");
    let idx = dir.path().join("t.gfi");
    fs::write(&text, "bacabacaacbcbc").unwrap();
    let o = gcisfm(&[
        "build",
        "-i",
        p(&text),
        "-o",
        p(&idx),
        "--lambda",
        "4",
        "--baseline",
    ]);
    assert!(o.status.success(), "{o:?}");
    let row = csv_row(&stdout(&o));
    assert_eq!(field(&row, "sigma1"), "5");
    assert_eq!(field(&row, "level1_len"), "7");
    assert_eq!(field(&row, "r1"), "7");
    assert_eq!(field(&row, "r0"), "9");
    assert_eq!(
        field(&row, "file_bytes"),
        fs::metadata(&idx).unwrap().len().to_string()
    );

    let pats = dir.path().join("p.txt");
    fs::write(&pats, "cabaca\nca\n\na\nzz\n").unwrap();
    let o = gcisfm(&["count", "-x", p(&idx), "-p", p(&pats)]);
    assert_eq!(stdout(&o), "1\n2\nerror\n5\n0\n");
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let o = gcisfm(&["stats", "-x", p(&idx)]);
    assert!(o.status.success());
    assert_eq!(csv_row(&stdout(&o)), row);
}

#[test]
fn lambda_one_matches_baseline_runs() {
    let dir = tempfile::tempdir().unwrap();
    let text = dir.path().join("t.txt");
    let idx = dir.path().join("t.gfi");
    fs::write(&text, "bacabacaacbcbc").unwrap();
    let o = gcisfm(&[
        "build",
        "-i",
        p(&text),
        "-o",
        p(&idx),
        "--lambda",
        "1",
        "--baseline",
    ]);
    let row = csv_row(&stdout(&o));
    assert_eq!(field(&row, "sigma1"), "3");
    assert_eq!(field(&row, "r1"), field(&row, "r0"));
    let o = gcisfm(&["build", "-i", p(&text), "-o", p(&idx), "--lambda", "0"]);
    assert!(!o.status.success());
}

#[test]
fn errors_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let o = gcisfm(&["stats", "-x", p(&dir.path().join("missing.gfi"))]);
    assert!(!o.status.success());
    let junk = dir.path().join("junk.gfi");
    fs::write(&junk, "not an index").unwrap();
    assert!(!gcisfm(&["stats", "-x", p(&junk)]).status.success());
}

#[test]
fn gen_and_bench() {
    let dir = tempfile::tempdir().unwrap();
    let text = dir.path().join("a.txt");
    let o = gcisfm(&[
        "gen",
        "artificial",
        "--mutation",
        "1",
        "--seed",
        "3",
        "-o",
        p(&text),
    ]);
    assert!(o.status.success(), "{o:?}");
    let data = fs::read(&text).unwrap();
    assert!(data.len() > 500_000 && data.iter().all(|b| b"ACGT".contains(b)));
    let again = dir.path().join("b.txt");
    gcisfm(&[
        "gen",
        "artificial",
        "--mutation",
        "1",
        "--seed",
        "3",
        "-o",
        p(&again),
    ]);
    assert_eq!(fs::read(&again).unwrap(), data);

    let idx = dir.path().join("a.gfi");
    assert!(gcisfm(&[
        "build",
        "-i",
        p(&text),
        "-o",
        p(&idx),
        "--lambda",
        "4",
        "--baseline"
    ])
    .status
    .success());
    let args = [
        "bench",
        "-x",
        p(&idx),
        "--text",
        p(&text),
        "--lengths",
        "4..6",
        "--samples",
        "20",
        "--seed",
        "1",
    ];
    let o = gcisfm(&args);
    assert!(o.status.success(), "{o:?}");
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "index,length,ns_per_char,rank_calls,rank_calls_per_char"
    );
    assert_eq!(lines.len(), 1 + 3 * 2);
    let ranks = |o: &str| -> Vec<String> {
        o.lines()
            .skip(1)
            .map(|l| l.split(',').nth(3).unwrap().to_string())
            .collect()
    };
    assert_eq!(ranks(&out), ranks(&stdout(&gcisfm(&args))));

    let o = gcisfm(&[
        "bench",
        "-x",
        p(&idx),
        "--text",
        p(&text),
        "--lengths",
        "30..31",
        "--samples",
        "1",
    ]);
    assert!(!o.status.success());

    let small = dir.path().join("r.txt");
    assert!(gcisfm(&[
        "gen",
        "random",
        "--sigma",
        "4",
        "-n",
        "300",
        "--seed",
        "2",
        "-o",
        p(&small)
    ])
    .status
    .success());
    let r = fs::read(&small).unwrap();
    assert_eq!(r.len(), 300);
    assert!(r.iter().all(|b| b"abcd".contains(b)));
}

#[test]
fn counts_match_scan_on_generated_text() {
    let dir = tempfile::tempdir().unwrap();
    let text = dir.path().join("r.txt");
    gcisfm(&[
        "gen",
        "random",
        "--sigma",
        "3",
        "-n",
        "1500",
        "--seed",
        "8",
        "-o",
        p(&text),
    ]);
    let data = fs::read(&text).unwrap();
    let mut pats = String::new();
    let mut want = String::new();
    for (i, len) in (0..1400).step_by(61).zip((1..40).cycle()) {
        let pat = &data[i..i + len];
        pats.push_str(std::str::from_utf8(pat).unwrap());
        pats.push('\n');
        want.push_str(&format!(
            "{}\n",
            data.windows(len).filter(|w| *w == pat).count()
        ));
    }
    let pfile = dir.path().join("p.txt");
    fs::write(&pfile, pats).unwrap();
    for lambda in ["1", "3", "6"] {
        let idx = dir.path().join("r.gfi");
        gcisfm(&["build", "-i", p(&text), "-o", p(&idx), "--lambda", lambda]);
        let o = gcisfm(&["count", "-x", p(&idx), "-p", p(&pfile)]);
        assert_eq!(stdout(&o), want, "lambda {lambda}");
    }
}
