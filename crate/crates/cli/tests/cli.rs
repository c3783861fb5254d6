use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn spec(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(name)
}

fn antinorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_antinorm"))
        .args(args)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn exit_codes() {
    let rec = spec("reciprocal.toml");
    let rec = rec.to_str().unwrap();
    assert_eq!(code(&antinorm(&["check-axioms", rec, "--samples", "500"])), 0);
    assert_eq!(
        code(&antinorm(&[
            "check-axioms",
            spec("non_monotone.toml").to_str().unwrap(),
            "--samples",
            "500"
        ])),
        1
    );
    assert_eq!(
        code(&antinorm(&["alpha-table", rec, "--x", "1,2,3", "--alpha", "0,0.5"])),
        2
    );
    assert_eq!(code(&antinorm(&["alpha-table", rec, "--x", "1,2"])), 2);
    assert_eq!(code(&antinorm(&["converge", rec, "--sequence", "missing"])), 2);
    assert_eq!(code(&antinorm(&["check-axioms", "/nonexistent/space.toml"])), 2);
    assert_eq!(code(&antinorm(&["frobnicate"])), 2);

    let o = antinorm(&[
        "riesz",
        rec,
        "--subspace",
        "everything",
        "--alpha",
        "0.5",
        "--eps",
        "0.1",
    ]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("subspace not proper"));
}

#[test]
fn spec_errors_name_line_and_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("space.toml");
    std::fs::write(
        &path,
        "dimension = 2\nbase_norm = \"euclidean\"\nconorm = \"maximum\"\n[profile]\nkind = \"reciprocal\"\nk = -2.0\n",
    )
    .unwrap();
    let o = antinorm(&["check-axioms", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("space.toml:6: profile.k"), "{err}");
}

#[test]
fn alpha_table_is_sorted_csv() {
    let o = antinorm(&[
        "alpha-table",
        spec("reciprocal.toml").to_str().unwrap(),
        "--x",
        "1,-2,2",
        "--alpha",
        "0.75,0.25,0.5",
    ]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<&str> = out.lines().take(4).collect();
    assert_eq!(rows, ["alpha,alpha_norm", "0.25,1", "0.5,3", "0.75,9"]);
}

#[test]
fn reports_and_csvs_are_byte_identical_across_runs() {
    let rec = spec("reciprocal.toml");
    let rec = rec.to_str().unwrap();
    let runs: [&[&str]; 5] = [
        &["check-axioms", rec, "--samples", "300", "--seed", "3"],
        &["alpha-table", rec, "--x", "0.5,1,-1"],
        &[
            "roundtrip",
            rec,
            "--x-samples",
            "10",
            "--t-samples",
            "10",
            "--samples",
            "50",
        ],
        &["converge", rec, "--sequence", "geometric"],
        &[
            "riesz",
            rec,
            "--subspace",
            "line",
            "--alpha",
            "0.25",
            "--eps",
            "0.3",
            "--samples",
            "500",
        ],
    ];
    for args in runs {
        let mut seen = Vec::new();
        for _ in 0..2 {
            let dir = tempfile::tempdir().unwrap();
            let out = dir.path().join("report.json");
            let csv = dir.path().join("csv");
            let mut full = args.to_vec();
            full.extend(["--out", out.to_str().unwrap(), "--csv", csv.to_str().unwrap()]);
            let o = antinorm(&full);
            assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
            let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(&csv)
                .unwrap()
                .map(|e| e.unwrap())
                .map(|e| {
                    (
                        e.file_name().to_string_lossy().into_owned(),
                        std::fs::read(e.path()).unwrap(),
                    )
                })
                .collect();
            files.sort();
            seen.push((std::fs::read(&out).unwrap(), o.stdout, files));
        }
        assert!(seen[0] == seen[1], "{args:?} differs between runs");
        let json: serde_json::Value = serde_json::from_slice(&seen[0].0).unwrap();
        assert_eq!(json["tool"], "antinorm");
        assert!(json["input_digest"].as_str().unwrap().starts_with("sha256:"));
        assert_eq!(json["overall_pass"], true);
    }
}

#[test]
fn csv_outputs_have_headers() {
    let dir = tempfile::tempdir().unwrap();
    let rec = spec("reciprocal.toml");
    let d = dir.path().to_str().unwrap();
    let o = antinorm(&[
        "roundtrip",
        rec.to_str().unwrap(),
        "--x-samples",
        "3",
        "--t-samples",
        "4",
        "--samples",
        "5",
        "--csv",
        d,
    ]);
    assert_eq!(code(&o), 0);
    let grid = std::fs::read_to_string(dir.path().join("roundtrip.csv")).unwrap();
    assert!(grid.starts_with("x_id,t,nu,nu_prime,error\n"));
    assert_eq!(grid.lines().count(), 1 + 3 * 4);
    let fam = std::fs::read_to_string(dir.path().join("family.csv")).unwrap();
    assert_eq!(fam.lines().count(), 1 + 5);

    let o = antinorm(&[
        "converge",
        rec.to_str().unwrap(),
        "--sequence",
        "harmonic",
        "--trace-terms",
        "10",
        "--csv",
        d,
    ]);
    assert_eq!(code(&o), 0);
    let trace = std::fs::read_to_string(dir.path().join("trace.csv")).unwrap();
    assert!(trace.starts_with("n,t,nu\n"));
    assert_eq!(trace.lines().count(), 1 + 10 * 7);

    let o = antinorm(&["check-axioms", rec.to_str().unwrap(), "--samples", "100", "--csv", d]);
    assert_eq!(code(&o), 0);
    let axioms = std::fs::read_to_string(dir.path().join("axioms.csv")).unwrap();
    assert!(axioms.starts_with("suite,axiom,status,samples,worst_violation\n"));
}

#[test]
fn step_profile_flags_instead_of_failing() {
    let o = antinorm(&["check-axioms", spec("step.toml").to_str().unwrap(), "--samples", "500"]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("FLAG antinorm.vii"), "{out}");
}
