//! End-to-end runs of the `sdlab` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn sdlab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdlab"))
        .args(args)
        .current_dir(dir)
        .env_remove("SDLAB_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Writes a real matrix in the JSON file format.
fn matrix_json(rows: usize, cols: usize, entries: &[f64]) -> String {
    let data: Vec<String> = entries.iter().map(|x| format!("[{x}, 0]")).collect();
    format!(
        "{{\"rows\": {rows}, \"cols\": {cols}, \"data\": [{}]}}",
        data.join(", ")
    )
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn zdi_of_zero_matrix() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "z.json", &matrix_json(3, 3, &[0.0; 9]));
    let o = sdlab(dir.path(), &["zdi", "z.json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).starts_with("d = 3\n"));
    assert!(stdout(&o).contains("argmin theta"));
}

#[test]
fn zdi_of_nilpotent_companion() {
    // Companion of z^4: ones on the superdiagonal.
    let mut e = [0.0; 16];
    for i in 0..3 {
        e[i * 4 + i + 1] = 1.0;
    }
    let dir = TempDir::new().unwrap();
    write(dir.path(), "c.json", &matrix_json(4, 4, &e));
    let o = sdlab(dir.path(), &["zdi", "c.json"]);
    assert!(stdout(&o).starts_with("d = 2\n"), "{}", stdout(&o));
}

#[test]
fn zdi_of_scalar_kms() {
    let dir = TempDir::new().unwrap();
    let k3 = [0.0, 1.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0];
    write(dir.path(), "k.json", &matrix_json(3, 3, &k3));
    write(dir.path(), "one.json", &matrix_json(1, 1, &[1.0]));
    assert!(stdout(&sdlab(dir.path(), &["zdi", "k.json"])).starts_with("d = 1\n"));
    let o = sdlab(dir.path(), &["kms", "zdi", "--m", "3", "one.json"]);
    assert_eq!(stdout(&o), "d = 1 (formula and sweep agree)\n");
}

#[test]
fn kms_build_round_trips_through_zdi() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "one.json", &matrix_json(1, 1, &[1.0]));
    let o = sdlab(
        dir.path(),
        &["kms", "build", "--m", "3", "one.json", "--out", "k3.json"],
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&sdlab(dir.path(), &["zdi", "k3.json"])).starts_with("d = 1\n"));
}

#[test]
fn companion_interpolation_example() {
    let dir = TempDir::new().unwrap();
    let o = sdlab(
        dir.path(),
        &["companion", "interp", "--m", "3", "--n", "2", "--k", "1"],
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), "expected 3, oracle 3\n");
}

fn companion_file(m: usize, n: usize, diag: &[Vec<f64>], bottom: &[Vec<f64>]) -> String {
    let blocks = |bs: &[Vec<f64>]| {
        bs.iter()
            .map(|b| matrix_json(n, n, b))
            .collect::<Vec<_>>()
            .join(", ")
    };
    format!(
        "{{\"m\": {m}, \"n\": {n}, \"diag_blocks\": [{}], \"bottom_blocks\": [{}]}}",
        blocks(diag),
        blocks(bottom)
    )
}

#[test]
fn companion_det_with_zero_bottom_row() {
    let dir = TempDir::new().unwrap();
    write(
        dir.path(),
        "s.json",
        &companion_file(2, 1, &[vec![1.0]], &[vec![0.0], vec![0.0]]),
    );
    let o = sdlab(dir.path(), &["companion", "det", "s.json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 8);
    for line in text.lines() {
        assert!(
            line.contains("closed form -2.500000000000e-1, direct -2.500000000000e-1"),
            "{line}"
        );
    }
}

#[test]
fn companion_bounds_even_and_singular() {
    let dir = TempDir::new().unwrap();
    // m = 4, n = 3 with fixed nonsingular blocks.
    let diag: Vec<Vec<f64>> = (0..3)
        .map(|j| {
            (0..9)
                .map(|i| {
                    if i % 4 == 0 {
                        2.0 + j as f64
                    } else {
                        ((i * 7 + j) % 5) as f64 * 0.1
                    }
                })
                .collect()
        })
        .collect();
    let bottom: Vec<Vec<f64>> = (0..4)
        .map(|j| {
            (0..9)
                .map(|i| ((i * 3 + j * 5) % 7) as f64 * 0.2 - 0.6)
                .collect()
        })
        .collect();
    write(
        dir.path(),
        "even.json",
        &companion_file(4, 3, &diag, &bottom),
    );
    let o = sdlab(
        dir.path(),
        &["companion", "bounds", "even.json", "--grid", "1024"],
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), "exact d = 6, oracle agrees\n");

    let mut singular = diag.clone();
    singular[1] = vec![0.0; 9];
    write(
        dir.path(),
        "sing.json",
        &companion_file(4, 3, &singular, &bottom),
    );
    let o = sdlab(dir.path(), &["companion", "bounds", "sing.json"]);
    assert_eq!(code(&o), 4);
    assert!(stderr(&o).starts_with("sdlab: "), "{}", stderr(&o));
}

fn j3_plus_zero() -> String {
    let mut e = [0.0; 16];
    e[1] = 1.0;
    e[6] = 1.0;
    matrix_json(4, 4, &e)
}

#[test]
fn kms_block_counts_and_similarity() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "j.json", &j3_plus_zero());
    write(
        dir.path(),
        "j2.json",
        &matrix_json(2, 2, &[0.0, 1.0, 0.0, 0.0]),
    );
    write(
        dir.path(),
        "d.json",
        &matrix_json(2, 2, &[1.0, 0.0, 0.0, 0.0]),
    );
    let o = sdlab(dir.path(), &["kms", "nk", "--m", "5", "j.json"]);
    assert_eq!(stdout(&o), "N = [7, 2, 3, 0, 0]\n");
    let o = sdlab(
        dir.path(),
        &["kms", "similar", "--m", "3", "j2.json", "d.json"],
    );
    assert_eq!(stdout(&o), "not similar (N_3: 0 vs 1)\n");
    let o = sdlab(
        dir.path(),
        &["kms", "similar", "--m", "2", "j2.json", "d.json"],
    );
    assert_eq!(stdout(&o), "similar\n");
}

#[test]
fn kms_unitary_similarity_search() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "one.json", &matrix_json(1, 1, &[1.0]));
    write(dir.path(), "two.json", &matrix_json(1, 1, &[2.0]));
    write(dir.path(), "minus.json", &matrix_json(1, 1, &[-1.0]));
    let o = sdlab(
        dir.path(),
        &["kms", "usim", "--m", "3", "one.json", "two.json"],
    );
    assert!(
        stdout(&o).starts_with("distinguished by word st "),
        "{}",
        stdout(&o)
    );
    let o = sdlab(
        dir.path(),
        &[
            "kms",
            "usim",
            "--m",
            "3",
            "one.json",
            "minus.json",
            "--max-degree",
            "8",
        ],
    );
    assert!(stdout(&o).starts_with("indistinguishable up to degree 8"));
}

#[test]
fn numrange_writes_csv_and_svg() {
    let dir = TempDir::new().unwrap();
    write(
        dir.path(),
        "k2.json",
        &format!("{{\"m\": 2, \"a\": {}}}", matrix_json(1, 1, &[2.0])),
    );
    let o = sdlab(dir.path(), &["numrange", "k2.json", "--samples", "64"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(
        stdout(&o).contains("verdict: circular disk"),
        "{}",
        stdout(&o)
    );
    let csv = fs::read_to_string(dir.path().join("numrange.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("theta,support,re,im"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 64);
    assert!(rows.iter().all(|r| (r[1] - 1.0).abs() <= 1e-9));
    let svg = fs::read_to_string(dir.path().join("numrange.svg")).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 1);

    write(
        dir.path(),
        "k3.json",
        &format!("{{\"m\": 3, \"a\": {}}}", matrix_json(1, 1, &[1.0])),
    );
    let o = sdlab(dir.path(), &["numrange", "k3.json", "--out", "k3"]);
    assert!(stdout(&o).contains("verdict: not circular"));
    assert!(dir.path().join("k3.csv").exists());
}

#[test]
fn numrange_of_hermitian_is_a_segment() {
    let dir = TempDir::new().unwrap();
    write(
        dir.path(),
        "h.json",
        &matrix_json(2, 2, &[1.0, 0.5, 0.5, -2.0]),
    );
    let o = sdlab(dir.path(), &["numrange", "h.json", "--out", "h"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let csv = fs::read_to_string(dir.path().join("h.csv")).unwrap();
    for line in csv.lines().skip(1) {
        let im: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(im.abs() <= 1e-9, "{line}");
    }
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    write(
        dir.path(),
        "bad.json",
        "{\"rows\": 1, \"cols\": 1, \"data\": [\"1+2i\"]}",
    );
    write(dir.path(), "short.json", &matrix_json(2, 2, &[1.0]));
    write(dir.path(), "rect.json", &matrix_json(1, 2, &[1.0, 2.0]));
    write(dir.path(), "one.json", &matrix_json(1, 1, &[1.0]));
    assert_eq!(code(&sdlab(dir.path(), &["zdi", "bad.json"])), 2);
    assert_eq!(code(&sdlab(dir.path(), &["zdi", "short.json"])), 3);
    assert_eq!(code(&sdlab(dir.path(), &["zdi", "rect.json"])), 3);
    assert_eq!(code(&sdlab(dir.path(), &["zdi", "missing.json"])), 5);
    let o = sdlab(
        dir.path(),
        &["numrange", "one.json", "--out", "no/such/dir/plot"],
    );
    assert_eq!(code(&o), 5);
}

#[test]
fn verify_rejects_singular_fixture() {
    let dir = TempDir::new().unwrap();
    write(
        dir.path(),
        "fix.json",
        &companion_file(
            3,
            1,
            &[vec![1.0], vec![0.0]],
            &[vec![0.5], vec![0.0], vec![0.0]],
        ),
    );
    let o = sdlab(
        dir.path(),
        &[
            "verify",
            "companion",
            "--fixture",
            "fix.json",
            "--grid",
            "256",
            "--out",
            "r.json",
        ],
    );
    assert_eq!(code(&o), 1, "{}", stderr(&o));
    let report = fs::read_to_string(dir.path().join("r.json")).unwrap();
    assert!(report.contains("rejected"), "{report}");
    assert!(
        stderr(&o).contains("[FAIL] fixture supplied companion spec: rejected"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn verify_reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let a = sdlab(dir.path(), &["verify", "numrange", "--samples", "180"]);
    let b = sdlab(dir.path(), &["verify", "numrange", "--samples", "180"]);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("\"passed\": true"));
}

#[test]
fn verify_kms_with_another_seed() {
    let dir = TempDir::new().unwrap();
    let o = sdlab(
        dir.path(),
        &["verify", "kms", "--seed", "7", "--out", "kms.json"],
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "6/6 checks passed; report written to kms.json\n"
    );
}

#[test]
fn verify_all_with_the_default_seed() {
    let dir = TempDir::new().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_sdlab"))
        .args(["verify", "all", "--out", "all.json"])
        .current_dir(dir.path())
        .env("SDLAB_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(
        stderr(&o)
            .lines()
            .filter(|l| l.starts_with("[PASS]"))
            .count(),
        12
    );
}
