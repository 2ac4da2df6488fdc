use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_wordlen");

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn wordlen(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn wordlen_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

/// Compares against `tests/golden/<name>`; `WORDLEN_BLESS=1` rewrites it.
fn assert_golden(name: &str, actual: &[u8]) {
    let path = golden_dir().join(name);
    if std::env::var_os("WORDLEN_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(
        expected == actual,
        "{name} differs from golden:\n--- expected\n{}\n--- actual\n{}",
        String::from_utf8_lossy(&expected),
        String::from_utf8_lossy(actual)
    );
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fit_field(tsv: &str, name: &str) -> String {
    let mut lines = tsv.lines();
    let header: Vec<&str> = lines.next().unwrap().split('\t').collect();
    let row: Vec<&str> = lines.next().unwrap().split('\t').collect();
    row[header.iter().position(|h| *h == name).unwrap()].to_string()
}

#[test]
fn simulate_goldens() {
    let o = wordlen(&[
        "simulate",
        "--lambda1",
        "0",
        "--lambda2",
        "0",
        "--n",
        "10",
        "--seed",
        "1",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "1\t10\n");

    let args = [
        "simulate",
        "--lambda1",
        "0.5",
        "--lambda2",
        "1.5",
        "--n",
        "2000",
        "--seed",
        "42",
    ];
    let a = wordlen(&args);
    let b = wordlen(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_golden("simulate_0.5_1.5_n2000_s42.tsv", &a.stdout);
}

#[test]
fn fit_goldens() {
    let table = golden_dir().join("simulate_0.5_1.5_n2000_s42.tsv");
    let table = table.to_str().unwrap();
    for format in ["tsv", "text", "json"] {
        let o = wordlen(&["fit", "--input", table, "--format", format]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert_golden(&format!("fit_0.5_1.5_n2000_s42.{format}"), &o.stdout);
    }
}

#[test]
fn simulate_fit_round_trip() {
    let sim = wordlen(&[
        "simulate",
        "--lambda1",
        "0.5",
        "--lambda2",
        "1.5",
        "--n",
        "100000",
        "--seed",
        "1",
    ]);
    let fit = wordlen_stdin(&["fit", "--input", "-"], &sim.stdout);
    assert_eq!(code(&fit), 0, "{}", stderr(&fit));
    let out = stdout(&fit);
    let l0: f64 = fit_field(&out, "lambda0").parse().unwrap();
    let l1: f64 = fit_field(&out, "lambda1").parse().unwrap();
    assert!((l0 - 1.0).abs() <= 0.02 && (l1 - 0.5).abs() <= 0.1, "{out}");
    assert_eq!(fit_field(&out, "satisfactory"), "true");

    let sim = wordlen(&[
        "simulate",
        "--lambda1",
        "1.2",
        "--lambda2",
        "1.2",
        "--n",
        "100000",
        "--seed",
        "7",
    ]);
    let fit = wordlen_stdin(&["fit", "--input", "-"], &sim.stdout);
    assert_eq!(code(&fit), 0);
    assert_eq!(fit_field(&stdout(&fit), "degenerate"), "true");
}

#[test]
fn exit_codes() {
    let sim = wordlen(&[
        "simulate",
        "--lambda1",
        "0.2",
        "--lambda2",
        "3.0",
        "--n",
        "100000",
        "--seed",
        "3",
    ]);
    let cf = wordlen_stdin(&["fit", "--input", "-", "--model", "cf"], &sim.stdout);
    assert_eq!(code(&cf), 1, "{}", stdout(&cf));
    assert_eq!(fit_field(&stdout(&cf), "satisfactory"), "false");

    let two = wordlen_stdin(&["fit", "--input", "-"], b"1\t50\n2\t30\n");
    assert_eq!(code(&two), 2);
    assert!(
        stderr(&two).contains("at least 3 distinct"),
        "{}",
        stderr(&two)
    );

    let dup = wordlen_stdin(&["fit", "--input", "-"], b"1\t50\n1\t3\n");
    assert_eq!(code(&dup), 2);
    assert!(stderr(&dup).contains("line 2"));

    assert_eq!(
        code(&wordlen(&["fit", "--input", "/definitely/missing.tsv"])),
        2
    );
    assert_eq!(
        code(&wordlen(&[
            "simulate",
            "--lambda1",
            "2",
            "--lambda2",
            "1",
            "--n",
            "5"
        ])),
        2
    );
    assert_eq!(
        code(&wordlen(&[
            "simulate",
            "--lambda1",
            "0",
            "--lambda2",
            "1",
            "--n",
            "0"
        ])),
        2
    );
    assert_eq!(
        code(&wordlen(&["fit", "--input", "x", "--min-expected", "-1"])),
        2
    );
    assert_eq!(code(&wordlen(&["frobnicate"])), 2);
    assert_eq!(code(&wordlen(&[])), 2);
    assert_eq!(code(&wordlen(&["--version"])), 0);
}

#[test]
fn help_json_describes_commands() {
    let o = wordlen(&["--help-json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = v["subcommands"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    for want in ["fit", "simulate", "batch", "regress", "report"] {
        assert!(names.contains(&want), "{names:?}");
    }
}

fn write_manifest(dir: &Path, rows: &[(&str, &str, &str, &str)]) -> PathBuf {
    let mut text = String::from("label\tlanguage\tgenre\tpath\n");
    for (a, b, c, d) in rows {
        text.push_str(&format!("{a}\t{b}\t{c}\t{d}\n"));
    }
    let path = dir.join("manifest.tsv");
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn batch_empty_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_manifest(dir.path(), &[]);
    let o = wordlen(&["batch", "--manifest", m.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "label\tlanguage\tgenre\tlambda0\tlambda1\tlambda2\tC\tN\n"
    );
}

#[test]
fn batch_twelve_inputs_feed_report() {
    let dir = tempfile::tempdir().unwrap();
    let mut rows = Vec::new();
    for i in 0..12 {
        let l0 = 1.45 + 0.062 * i as f64;
        let l1 = 0.5 + 0.34 / (l0 - 1.0f64).powf(1.01);
        let sim = wordlen(&[
            "simulate",
            "--lambda1",
            &l1.to_string(),
            "--lambda2",
            &(2.0 * l0 - l1).to_string(),
            "--n",
            "20000",
            "--seed",
            &i.to_string(),
        ]);
        std::fs::write(dir.path().join(format!("c{i}.tsv")), &sim.stdout).unwrap();
        rows.push((
            format!("t{i}"),
            if i < 6 { "letters" } else { "news" },
            format!("c{i}.tsv"),
        ));
    }
    let rows: Vec<_> = rows
        .iter()
        .map(|(l, g, p)| (l.as_str(), "De", *g, p.as_str()))
        .collect();
    let m = write_manifest(dir.path(), &rows);
    let m = m.to_str().unwrap();

    let serial = wordlen(&["batch", "--manifest", m, "--jobs", "1"]);
    let parallel = wordlen(&["batch", "--manifest", m, "--jobs", "4"]);
    assert_eq!(code(&serial), 0, "{}", stderr(&serial));
    assert_eq!(serial.stdout, parallel.stdout);
    let table = stdout(&serial);
    let labels: Vec<&str> = table
        .lines()
        .skip(1)
        .map(|l| l.split('\t').next().unwrap())
        .collect();
    assert_eq!(labels, (0..12).map(|i| format!("t{i}")).collect::<Vec<_>>());

    let records = dir.path().join("records.tsv");
    std::fs::write(&records, &serial.stdout).unwrap();
    let out = dir.path().join("report");
    let o = wordlen(&[
        "report",
        "--records",
        records.to_str().unwrap(),
        "--out-dir",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let svg = std::fs::read_to_string(out.join("lambda.svg")).unwrap();
    assert_eq!(svg.matches("<!-- point ").count(), 12);
}

#[test]
fn batch_keeps_going_past_bad_rows() {
    let dir = tempfile::tempdir().unwrap();
    for (i, seed) in [(0, "1"), (1, "2")] {
        let sim = wordlen(&[
            "simulate",
            "--lambda1",
            "0.5",
            "--lambda2",
            "1.5",
            "--n",
            "5000",
            "--seed",
            seed,
        ]);
        std::fs::write(dir.path().join(format!("ok{i}.tsv")), &sim.stdout).unwrap();
    }
    std::fs::write(dir.path().join("bad.tsv"), "1\t10\nnot a row\n").unwrap();
    let m = write_manifest(
        dir.path(),
        &[
            ("a", "En", "news", "ok0.tsv"),
            ("b", "En", "news", "bad.tsv"),
            ("c", "En", "news", "ok1.tsv"),
        ],
    );
    let o = wordlen(&["batch", "--manifest", m.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 3, "{out}");
    assert!(out.lines().nth(1).unwrap().starts_with("a\t"));
    assert!(out.lines().nth(2).unwrap().starts_with("c\t"));
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.contains("line 3") && err.contains("bad.tsv"), "{err}");
}

#[test]
fn regress_goldens() {
    let records = golden_dir().join("records.tsv");
    let records = records.to_str().unwrap();
    let o = wordlen(&[
        "regress",
        "--records",
        records,
        "--form",
        "shifted-power",
        "--predict",
        "1.45,2.13",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_golden("regress_shifted_power.tsv", &o.stdout);
    let o = wordlen(&[
        "regress",
        "--records",
        records,
        "--form",
        "linear",
        "--genre",
        "letters",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_golden("regress_linear_letters.tsv", &o.stdout);

    let bad = wordlen(&[
        "regress",
        "--records",
        records,
        "--form",
        "shifted-power",
        "--predict",
        "1.0",
    ]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn report_goldens_and_determinism() {
    let records = golden_dir().join("records.tsv");
    let dir = tempfile::tempdir().unwrap();
    let run = |sub: &str| {
        let out = dir.path().join(sub);
        let o = wordlen(&[
            "report",
            "--records",
            records.to_str().unwrap(),
            "--out-dir",
            out.to_str().unwrap(),
            "--alpha-genre",
            "letters",
        ]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        out
    };
    let (a, b) = (run("a"), run("b"));
    for name in [
        "table.tsv",
        "fits.tsv",
        "lambda_points.tsv",
        "lambda_curves.tsv",
        "lambda.svg",
        "alpha_points.tsv",
        "alpha_summary.tsv",
        "alpha.svg",
    ] {
        let bytes = std::fs::read(a.join(name)).unwrap();
        assert_eq!(bytes, std::fs::read(b.join(name)).unwrap(), "{name}");
        if name.ends_with(".tsv") {
            assert_golden(&format!("report_{name}"), &bytes);
        }
    }
    let alpha = std::fs::read_to_string(a.join("alpha.svg")).unwrap();
    assert_eq!(alpha.matches("<!-- point ").count(), 6);
    assert_eq!(alpha.matches("<!-- hline ").count(), 1);
}

#[test]
fn report_on_empty_table() {
    let dir = tempfile::tempdir().unwrap();
    let records = dir.path().join("empty.tsv");
    std::fs::write(
        &records,
        "label\tlanguage\tgenre\tlambda0\tlambda1\tlambda2\tC\tN\n",
    )
    .unwrap();
    let out = dir.path().join("out");
    let o = wordlen(&[
        "report",
        "--records",
        records.to_str().unwrap(),
        "--out-dir",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let svg = std::fs::read_to_string(out.join("lambda.svg")).unwrap();
    assert!(svg.starts_with("<svg") && !svg.contains("<!-- point "));
}

#[test]
fn raw_text_front_end() {
    let dir = tempfile::tempdir().unwrap();
    let text = dir.path().join("sample.txt");
    std::fs::write(&text, "The banana queue. A banana, a queue!\n").unwrap();
    let o = wordlen(&["tabulate", "--input", text.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "1\t5\n3\t2\n");

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, b"ok \xff").unwrap();
    let o = wordlen(&["fit", "--input", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("offset 3"), "{}", stderr(&o));

    let o = wordlen(&[
        "tabulate",
        "--input",
        text.to_str().unwrap(),
        "--profile",
        "klingon",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn profile_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("mine.toml"),
        "version = 1\nname = \"mine\"\nvowels = \"aeiou\"\n\n[overrides]\nqueue = 2\n",
    )
    .unwrap();
    let text = dir.path().join("t.txt");
    std::fs::write(&text, "queue").unwrap();
    let o = Command::new(BIN)
        .args([
            "tabulate",
            "--input",
            text.to_str().unwrap(),
            "--profile",
            "mine",
        ])
        .env("WORDLEN_PROFILE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), "2\t1\n");
}
