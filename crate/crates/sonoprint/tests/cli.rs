use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sonoprint::wav::write_wav;
use sonoprint_core::AudioClip;

fn sonoprint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sonoprint")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn tone(freq: f64, amp: f64, rate: u32) -> AudioClip {
    let n = rate as usize / 2;
    AudioClip::new(
        (0..n).map(|i| amp * (2.0 * std::f64::consts::PI * freq * i as f64 / rate as f64).sin()).collect(),
        rate,
    )
    .unwrap()
}

/// Three devices that differ only in loudness, four clips each.
fn toy_corpus(dir: &Path) -> Vec<PathBuf> {
    let mut files = Vec::new();
    for (d, amp) in [0.1, 0.3, 0.6].iter().enumerate() {
        let sub = dir.join(format!("dev{}", d + 1));
        std::fs::create_dir_all(&sub).unwrap();
        for r in 0..4 {
            let p = sub.join(format!("clip_{r}.wav"));
            write_wav(&tone(300.0 + 40.0 * r as f64, *amp, 8000), &p).unwrap();
            files.push(p);
        }
    }
    files
}

#[test]
fn extract_writes_one_row_per_file() {
    let dir = tempfile::tempdir().unwrap();
    let files = toy_corpus(dir.path());
    let csv = dir.path().join("f.csv");
    let out = sonoprint(&["extract", s(&files[0]), s(&files[1]), s(&files[2]), "--features", "1,5", "-o", s(&csv)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "path,label,rms,spectral_entropy");

    let all = sonoprint(&["extract", s(&files[0]), "--features", "all", "--label-from-dir"]);
    let header = String::from_utf8(all.stdout).unwrap();
    let header = header.lines().next().unwrap();
    assert_eq!(header.split(',').count(), 2 + 43);

    assert_eq!(code(&sonoprint(&["extract", s(&files[0]), "--features", "16"])), 2);
    assert_eq!(code(&sonoprint(&["extract", s(&dir.path().join("nope.wav"))])), 4);
}

#[test]
fn simulate_layout_and_repeatability() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let common = ["-s", "sample_rate=8000", "-s", "source_seconds=0.1", "-s", "devices=15", "-s", "repetitions=10"];
    for out in [&a, &b] {
        let mut args = vec!["simulate", "-o", s(out)];
        args.extend(common);
        let run = sonoprint(&args);
        assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    }
    let manifest = std::fs::read(a.join("manifest.csv")).unwrap();
    assert_eq!(manifest, std::fs::read(b.join("manifest.csv")).unwrap());
    let text = String::from_utf8(manifest).unwrap();
    assert_eq!(text.lines().count(), 151);
    assert!(text.starts_with("path,device_id,source,rep,seed\n"));
    assert!(a.join("dev15").join("instrumental_9.wav").is_file());
    assert_eq!(std::fs::read(a.join("dev03/instrumental_4.wav")).unwrap(), std::fs::read(b.join("dev03/instrumental_4.wav")).unwrap());

    let one = sonoprint(&["simulate", "-o", s(&dir.path().join("c")), "-s", "devices=1"]);
    assert_eq!(code(&one), 2);
}

#[test]
fn evaluate_reports_and_reproduces() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    toy_corpus(&corpus);
    let out = dir.path().join("knn");
    let run = sonoprint(&[
        "evaluate", "-o", s(&out), "-s", &format!("corpus={}", s(&corpus)),
        "-s", "features=1", "-s", "classifier=knn", "-s", "train_per_class=2",
    ]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["evaluation"]["avg_f1"], 1.0);
    for p in &report["evaluation"]["sweep"].as_array().unwrap()[..] {
        assert_eq!(p["avg_f1"], 1.0);
    }
    assert!(out.join("confusion.csv").is_file() && out.join("scores.csv").is_file());

    // the embedded config reproduces the report byte for byte
    let cfg_file = dir.path().join("again.cfg");
    let doc = sonoprint::report::load_report(&out.join("report.json")).unwrap();
    std::fs::write(&cfg_file, doc.config.to_text()).unwrap();
    let again = dir.path().join("again");
    assert_eq!(code(&sonoprint(&["evaluate", "-c", s(&cfg_file), "-o", s(&again)])), 0);
    assert_eq!(std::fs::read(out.join("report.json")).unwrap(), std::fs::read(again.join("report.json")).unwrap());

    let gmm = dir.path().join("gmm");
    let run = sonoprint(&[
        "evaluate", "-o", s(&gmm), "-s", &format!("corpus={}", s(&corpus)),
        "-s", "features=1,4", "-s", "classifier=gmm", "-s", "train_per_class=2", "-s", "restarts=3",
    ]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(gmm.join("report.json")).unwrap()).unwrap();
    assert!(report["evaluation"]["restart_f1_std"].is_number());

    let missing = sonoprint(&["evaluate", "-o", s(&out), "-s", "corpus=/no/such/corpus"]);
    assert_eq!(code(&missing), 2);
}

#[test]
fn select_writes_its_tables() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    toy_corpus(&corpus);
    let out = dir.path().join("sel");
    let run = sonoprint(&[
        "select", "-o", s(&out), "-s", &format!("corpus={}", s(&corpus)),
        "-s", "features=1,2,4", "-s", "classifier=knn", "-s", "train_per_class=2",
    ]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).contains("selected [1]"));
    let table = std::fs::read_to_string(out.join("selection.csv")).unwrap();
    assert_eq!(table.lines().count(), 1 + 3 + 1);
    let trace = std::fs::read_to_string(out.join("selection_trace.csv")).unwrap();
    assert_eq!(trace.lines().count(), 1 + 6);
}

#[test]
fn classify_round_trip_and_failures() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    let files = toy_corpus(&corpus);
    let model = dir.path().join("model.json");
    let run = sonoprint(&[
        "train", "-m", s(&model), "-s", &format!("corpus={}", s(&corpus)),
        "-s", "features=1,4", "-s", "classifier=knn", "-s", "sweep=1",
    ]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    let pred = sonoprint(&["classify", "-m", s(&model), s(&files[5])]);
    assert_eq!(code(&pred), 0);
    assert_eq!(String::from_utf8(pred.stdout).unwrap().trim(), "dev2");

    // a feature table without the model's features
    let csv = dir.path().join("other.csv");
    assert_eq!(code(&sonoprint(&["extract", s(&files[0]), "-f", "2", "-o", s(&csv)])), 0);
    assert_eq!(code(&sonoprint(&["classify", "-m", s(&model), s(&csv)])), 3);

    assert_eq!(code(&sonoprint(&["classify", "-m", s(&dir.path().join("absent.json")), s(&files[0])])), 4);
    std::fs::write(dir.path().join("bad.json"), "{}").unwrap();
    assert_eq!(code(&sonoprint(&["classify", "-m", s(&dir.path().join("bad.json")), s(&files[0])])), 3);
}

#[test]
fn report_summarizes_and_plots() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    toy_corpus(&corpus);
    let mut reports = Vec::new();
    for t in [1, 2, 3] {
        let out = dir.path().join(format!("t{t}"));
        let run = sonoprint(&[
            "evaluate", "-o", s(&out), "-s", &format!("corpus={}", s(&corpus)),
            "-s", "features=4", "-s", "classifier=knn", "-s", &format!("train_per_class={t}"),
        ]);
        assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
        reports.push(out.join("report.json"));
    }
    let svg = dir.path().join("f1.svg");
    let mut args = vec!["report", "--axis", "train_per_class", "--plot", s(&svg)];
    args.extend(reports.iter().map(|p| s(p)));
    let run = sonoprint(&args);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    let table = String::from_utf8(run.stdout).unwrap();
    assert!(table.starts_with("train_per_class,avg_pr,avg_re,avg_f1\n1.0,"));
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));

    let mut bad = vec!["report", "--axis", "colour"];
    bad.push(s(&reports[0]));
    assert_eq!(code(&sonoprint(&bad)), 2);
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(code(&sonoprint(&["frobnicate"])), 2);
    assert_eq!(code(&sonoprint(&["--help"])), 0);
}
