use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn abelianfft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abelianfft"))
        .env_remove("ABELIANFFT_ORACLE_CAP")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn parse_pairs(json: &str) -> Vec<(f64, f64)> {
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    v.as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_f64().unwrap(), p[1].as_f64().unwrap()))
        .collect()
}

fn assert_close(got: &[(f64, f64)], want: &[(f64, f64)], tol: f64) {
    assert_eq!(got.len(), want.len());
    for (g, w) in got.iter().zip(want) {
        assert!((g.0 - w.0).abs() <= tol && (g.1 - w.1).abs() <= tol, "{got:?} vs {want:?}");
    }
}

#[test]
fn synthesis_of_delta_is_all_ones() {
    let dir = TempDir::new().unwrap();
    let delta = write(&dir, "delta.json", "[1, 0, 0, 0]");
    let out = abelianfft(&["transform", "Z4", s(&delta), "--direction", "synthesis"]);
    assert!(out.status.success());
    assert_close(&parse_pairs(&stdout(&out)), &[(1.0, 0.0); 4], 0.0);
    let info = String::from_utf8_lossy(&out.stderr);
    assert!(info.contains("synthesis") && info.contains("fast") && info.contains("normalization"));
}

#[test]
fn analysis_then_synthesis_round_trips() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", "[1, [2, -1], 3.5, 0, -4, [0, 2], 7, 1e-3]");
    let y = dir.path().join("y.json");
    let z = dir.path().join("z.json");
    assert!(abelianfft(&["transform", "8", s(&x), "--direction", "analysis", "-o", s(&y)]).status.success());
    assert!(abelianfft(&["transform", "8", s(&y), "--direction", "synthesis", "-o", s(&z)]).status.success());
    let want = [(1., 0.), (2., -1.), (3.5, 0.), (0., 0.), (-4., 0.), (0., 2.), (7., 0.), (1e-3, 0.)];
    assert_close(&parse_pairs(&fs::read_to_string(z).unwrap()), &want, 1e-12);
}

#[test]
fn naive_and_fast_engines_agree() {
    let dir = TempDir::new().unwrap();
    let v = write(&dir, "v.json", "[0.3, [1, 2], -0.7, [0.1, -0.4], 5, 2]");
    for direction in ["analysis", "synthesis"] {
        let naive = abelianfft(&["transform", "Z3xZ2", s(&v), "--engine", "naive", "--direction", direction]);
        let fast = abelianfft(&["transform", "Z3xZ2", s(&v), "--engine", "fast", "--direction", direction]);
        assert_close(&parse_pairs(&stdout(&naive)), &parse_pairs(&stdout(&fast)), 1e-12);
    }
}

#[test]
fn csv_output_follows_extension() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.csv", "re,im\n1,0\n0,0\n");
    let y = dir.path().join("y.csv");
    assert!(abelianfft(&["transform", "2", s(&x), "--direction", "synthesis", "-o", s(&y)]).status.success());
    let text = fs::read_to_string(y).unwrap();
    assert!(text.starts_with("re,im\n"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn convolution_examples() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c.json", "[1, 2, 3]");
    let delta = write(&dir, "d.json", "[1, 0, 0]");
    for engine in ["naive", "fast"] {
        let out = abelianfft(&["convolve", "3", s(&c), s(&delta), "--engine", engine]);
        assert!(out.status.success());
        assert_close(&parse_pairs(&stdout(&out)), &[(1., 0.), (2., 0.), (3., 0.)], 1e-12);
    }

    // column 1 of the Z_3×Z_2 G-circulant of a..f is (b, a, d, c, f, e)
    let abcdef = write(&dir, "v.json", "[1, 2, 3, 4, 5, 6]");
    let delta1 = write(&dir, "d1.json", "[0, 1, 0, 0, 0, 0]");
    let want = [(2., 0.), (1., 0.), (4., 0.), (3., 0.), (6., 0.), (5., 0.)];
    for engine in ["naive", "fast"] {
        let out = abelianfft(&["convolve", "Z3xZ2", s(&abcdef), s(&delta1), "--engine", engine]);
        assert!(out.status.success());
        assert_close(&parse_pairs(&stdout(&out)), &want, 1e-12);
    }
    let notice = abelianfft(&["convolve", "Z3xZ2", s(&abcdef), s(&delta1)]);
    assert!(String::from_utf8_lossy(&notice.stderr).contains("notice"));
}

#[test]
fn fast_and_naive_convolution_agree_on_z4() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c.json", "[[0.5, -1], 2, [3, 0.25], -1.5]");
    let d = write(&dir, "d.json", "[1.25, [0, 1], -2, [4, -3]]");
    let fast = abelianfft(&["convolve", "Z4", s(&c), s(&d), "--engine", "fast"]);
    let naive = abelianfft(&["convolve", "Z4", s(&c), s(&d), "--engine", "naive"]);
    assert_close(&parse_pairs(&stdout(&fast)), &parse_pairs(&stdout(&naive)), 1e-12);
}

#[test]
fn character_rows() {
    let out = abelianfft(&["characters", "Z2", "--porcelain"]);
    assert_eq!(
        stdout(&out),
        "(0)\t1.000000+0.000000i\t1.000000+0.000000i\n(1)\t1.000000+0.000000i\t-1.000000+0.000000i\n"
    );
    let out = abelianfft(&["characters", "Z2^2", "--element", "1,1", "--porcelain", "--precision", "1"]);
    assert_eq!(stdout(&out), "(1,1)\t1.0+0.0i\t-1.0+0.0i\t-1.0+0.0i\t1.0+0.0i\n");
    let out = abelianfft(&["characters", "Z4", "--element", "1", "--porcelain", "--precision", "0"]);
    assert_eq!(stdout(&out), "(1)\t1+0i\t0+1i\t-1+0i\t0-1i\n");
}

#[test]
fn circulant_actions() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c123.json", "[1, 2, 3]");
    let out = abelianfft(&["circulant", "3", s(&c), "spectrum", "--porcelain"]);
    assert!(stdout(&out).starts_with("(0)\t6.000000+0.000000i\n"));

    let v = write(&dir, "v.json", "[1, 2, 3, 4, 5, 6]");
    let out = abelianfft(&["circulant", "Z3xZ2", s(&v), "blocks", "--porcelain", "--precision", "0"]);
    assert_eq!(
        stdout(&out),
        "C_0\tZ2\t1+0i\t2+0i\nC_1\tZ2\t3+0i\t4+0i\nC_2\tZ2\t5+0i\t6+0i\n"
    );
    let out = abelianfft(&["circulant", "Z3xZ2", s(&v), "check"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS"));

    let m = dir.path().join("m.json");
    assert!(abelianfft(&["circulant", "3", s(&c), "materialize", "-o", s(&m)]).status.success());
    let rows: serde_json::Value = serde_json::from_str(&fs::read_to_string(m).unwrap()).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let three = write(&dir, "three.json", "[1, 2, 3]");
    let broken = write(&dir, "broken.json", "[1, 2");
    let nan = write(&dir, "nan.csv", "1,0\nnan,0\n");
    let eight = write(&dir, "eight.json", "[1, 2, 3, 4, 5, 6, 7, 8]");

    let code = |args: &[&str]| abelianfft(args).status.code();
    assert_eq!(code(&["transform", "Z4", s(&three)]), Some(2));
    assert_eq!(code(&["transform", "Z3", s(&broken)]), Some(3));
    assert_eq!(code(&["transform", "Z2", s(&nan)]), Some(3));
    assert_eq!(code(&["transform", "Z0", s(&three)]), Some(2));
    assert_eq!(code(&["characters", "Z2", "--element", "2"]), Some(2));
    assert_eq!(code(&["characters", "Z2", "--element", "x"]), Some(2));
    assert_eq!(code(&["circulant", "8", s(&eight), "materialize", "--oracle-cap", "4"]), Some(4));
    assert_eq!(code(&["circulant", "8", s(&eight), "check", "--oracle-cap", "4"]), Some(4));
    assert_eq!(code(&["circulant", "8", s(&eight), "spectrum", "--oracle-cap", "4"]), Some(0));
    assert_eq!(code(&["circulant", "8", s(&eight), "check", "--tolerance", "1e-300"]), Some(1));
    assert_eq!(code(&["verify", "nonsense"]), Some(2));
    assert_eq!(code(&["transform", "Z4", s(&three), "--tolerance", "-1"]), Some(2));
    assert_eq!(code(&["bench", "--max-exponent", "25"]), Some(2));
}

#[test]
fn oracle_cap_from_environment() {
    let dir = TempDir::new().unwrap();
    let eight = write(&dir, "eight.json", "[1, 2, 3, 4, 5, 6, 7, 8]");
    let run = |env: &str, extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_abelianfft"))
            .env("ABELIANFFT_ORACLE_CAP", env)
            .args(["circulant", "8", s(&eight), "materialize"])
            .args(extra)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(run("4", &[]), Some(4));
    assert_eq!(run("4", &["--oracle-cap", "8"]), Some(0));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", "[0.1, 0.2, [0.3, -0.9], 0.4, 0.5, 0.6]");
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    abelianfft(&["transform", "Z2x3", s(&x), "-o", s(&a)]);
    abelianfft(&["transform", "Z2x3", s(&x), "-o", s(&b)]);
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());

    let first = abelianfft(&["verify", "group", "--seed", "7"]);
    let second = abelianfft(&["verify", "group", "--seed", "7"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert!(stdout(&first).starts_with("seed 7\n"));
}

#[test]
fn verify_scope_reports_each_check() {
    let out = abelianfft(&["verify", "circulant", "--porcelain"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().skip(1).all(|l| l.starts_with("PASS\tcirculant\t")));
    assert!(text.contains("block reconstruction"));
}

#[test]
fn bench_table_marks_skipped_naive() {
    let out = abelianfft(&["bench", "--max-exponent", "13", "--oracle-cap", "4096", "--repetitions", "1", "--porcelain"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.iter().map(|r| r[0]).collect::<Vec<_>>(), ["2^12", "2^13"]);
    assert_ne!(rows[0][2], "skipped");
    assert_eq!(rows[1][2], "skipped");
}
