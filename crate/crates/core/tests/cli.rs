use std::fs;
use std::path::Path;

use mafrft::cli::{run, EXIT_CONFLICT, EXIT_OK, EXIT_PARSE};
use mafrft::io::{read_orders, read_result_matrix};
use tempfile::TempDir;

fn mafrft(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("mafrft").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn gen(dir: &TempDir, name: &str, extra: &[&str]) -> std::path::PathBuf {
    let path = dir.path().join(name);
    let mut args = vec!["gen", "--out", p(&path)];
    args.extend_from_slice(extra);
    let (code, _, err) = mafrft(&args);
    assert_eq!(code, EXIT_OK, "{err}");
    path
}

#[test]
fn gen_delta_is_exact() {
    let dir = TempDir::new().unwrap();
    let path = gen(&dir, "d.csv", &["--n", "8", "--kind", "delta"]);
    let text = fs::read_to_string(path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[0], "1,0");
    assert!(lines[1..].iter().all(|l| *l == "0,0"));
}

#[test]
fn gen_is_deterministic_per_seed() {
    let dir = TempDir::new().unwrap();
    let args = ["--n", "16", "--noise-std", "0.3", "--seed", "7"];
    let a = fs::read(gen(&dir, "a.csv", &args)).unwrap();
    let b = fs::read(gen(&dir, "b.csv", &args)).unwrap();
    let c = fs::read(gen(&dir, "c.csv", &["--n", "16", "--noise-std", "0.3", "--seed", "8"])).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn compute_delta_keeps_order_zero() {
    let dir = TempDir::new().unwrap();
    let input = gen(&dir, "d.csv", &["--n", "8", "--kind", "delta"]);
    let prefix = dir.path().join("out");
    let (code, _, err) = mafrft(&["compute", "-i", p(&input), "--out-prefix", p(&prefix)]);
    assert_eq!(code, EXIT_OK, "{err}");
    let x = read_result_matrix(&prefix).unwrap();
    assert_eq!((x.rows(), x.cols()), (8, 8));
    for n in 0..8 {
        let expected = if n == 0 { 1.0 } else { 0.0 };
        assert!((x[(n, 0)].re - expected).abs() < 1e-12 && x[(n, 0)].im.abs() < 1e-12);
    }
    assert_eq!(read_orders(&prefix).unwrap(), vec![0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5]);
}

#[test]
fn compute_paths_agree_through_files() {
    let dir = TempDir::new().unwrap();
    let input = gen(&dir, "x.csv", &["--n", "12", "--noise-std", "0.5", "--seed", "3"]);
    for variant in ["standard", "centered"] {
        let mut outs = Vec::new();
        for path in ["naive", "full", "half"] {
            let prefix = dir.path().join(format!("{variant}_{path}"));
            let (code, _, err) = mafrft(&[
                "compute",
                "-i",
                p(&input),
                "--variant",
                variant,
                "--path",
                path,
                "--out-prefix",
                p(&prefix),
            ]);
            assert_eq!(code, EXIT_OK, "{err}");
            outs.push(read_result_matrix(&prefix).unwrap());
        }
        assert!(outs[0].max_abs_diff(&outs[1]) < 1e-8);
        assert!(outs[1].max_abs_diff(&outs[2]) < 1e-12);
    }
}

#[test]
fn compute_odd_half_needs_padding() {
    let dir = TempDir::new().unwrap();
    let input = gen(&dir, "x.csv", &["--n", "9"]);
    let prefix = dir.path().join("out");
    let (code, _, err) = mafrft(&["compute", "-i", p(&input), "--out-prefix", p(&prefix)]);
    assert_eq!(code, EXIT_CONFLICT);
    assert!(err.contains("--pad-odd"));

    let (code, _, err) = mafrft(&["compute", "-i", p(&input), "--pad-odd", "--out-prefix", p(&prefix)]);
    assert_eq!(code, EXIT_OK, "{err}");
    let x = read_result_matrix(&prefix).unwrap();
    assert_eq!((x.rows(), x.cols()), (9, 10));
}

#[test]
fn compute_basis_cache_round_trip() {
    let dir = TempDir::new().unwrap();
    let input = gen(&dir, "x.csv", &["--n", "16", "--noise-std", "0.2"]);
    let cache = dir.path().join("basis.bin");
    let first = dir.path().join("first");
    let second = dir.path().join("second");
    for prefix in [&first, &second] {
        let (code, _, err) =
            mafrft(&["compute", "-i", p(&input), "--basis-cache", p(&cache), "--out-prefix", p(prefix)]);
        assert_eq!(code, EXIT_OK, "{err}");
    }
    assert!(cache.exists());
    assert_eq!(read_result_matrix(&first).unwrap(), read_result_matrix(&second).unwrap());

    let (code, _, _) = mafrft(&[
        "compute",
        "-i",
        p(&input),
        "--variant",
        "centered",
        "--basis-cache",
        p(&cache),
        "--out-prefix",
        p(&first),
    ]);
    assert_eq!(code, EXIT_CONFLICT);
}

#[test]
fn compute_rejects_bad_input() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("bad.csv");
    fs::write(&input, "1,0\n0,zz\n").unwrap();
    let (code, _, err) = mafrft(&["compute", "-i", p(&input), "--out-prefix", p(&dir.path().join("o"))]);
    assert_eq!(code, EXIT_PARSE);
    assert!(err.contains("line 2"), "{err}");
}

fn validate(n: &str, variant: &str) -> (i32, serde_json::Value) {
    let (code, out, _) = mafrft(&["validate", "--n", n, "--variant", variant]);
    (code, serde_json::from_str(&out).unwrap_or(serde_json::Value::Null))
}

#[test]
fn validate_reports_multiplicities() {
    let (code, json) = validate("8", "standard");
    assert_eq!(code, EXIT_OK);
    assert_eq!(json["multiplicities"], serde_json::json!([3, 2, 2, 1]));
    assert_eq!(json["pass"], serde_json::json!(true));
    assert!(json["orthonormality_residual"].as_f64().unwrap() < 1e-10);

    let (code, json) = validate("9", "centered");
    assert_eq!(code, EXIT_OK);
    assert_eq!(json["multiplicities"], serde_json::json!([3, 2, 2, 2]));

    let (code, _, err) = mafrft(&["validate", "--n", "3"]);
    assert_eq!(code, EXIT_PARSE);
    assert!(!err.is_empty());
}

#[test]
fn bench_counts_ffts() {
    for (variant, half) in [("standard", "33"), ("centered", "32")] {
        let (code, out, err) =
            mafrft(&["bench", "--n", "64", "--variant", variant, "--repetitions", "1", "--paths", "full,half"]);
        assert_eq!(code, EXIT_OK, "{err}");
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "n,path,wall_ns_median,fft_count");
        let fields: Vec<Vec<&str>> = lines[1..].iter().map(|l| l.split(',').collect()).collect();
        assert_eq!((fields[0][1], fields[0][3]), ("full", "64"));
        assert_eq!((fields[1][1], fields[1][3]), ("half", half));
    }
    let (code, _, _) = mafrft(&["bench", "--n", "12"]);
    assert_eq!(code, EXIT_PARSE);
}

fn pgm_pixels(path: &Path) -> (usize, usize, Vec<u8>) {
    let bytes = fs::read(path).unwrap();
    let header_end = bytes.iter().enumerate().filter(|(_, &b)| b == b'\n').nth(2).unwrap().0 + 1;
    let header = std::str::from_utf8(&bytes[..header_end]).unwrap();
    let parts: Vec<&str> = header.split_whitespace().collect();
    assert_eq!(parts[0], "P5");
    assert_eq!(parts[3], "255");
    let (w, h) = (parts[1].parse().unwrap(), parts[2].parse().unwrap());
    assert_eq!(bytes.len() - header_end, w * h);
    (w, h, bytes[header_end..].to_vec())
}

fn compute_and_render(dir: &TempDir, input: &Path, name: &str) -> (usize, usize, Vec<u8>) {
    let prefix = dir.path().join(name);
    let (code, _, err) = mafrft(&["compute", "-i", p(input), "--out-prefix", p(&prefix)]);
    assert_eq!(code, EXIT_OK, "{err}");
    let image = dir.path().join(format!("{name}.pgm"));
    let (code, _, err) = mafrft(&["render", "--input-prefix", p(&prefix), "-o", p(&image)]);
    assert_eq!(code, EXIT_OK, "{err}");
    pgm_pixels(&image)
}

#[test]
fn render_delta_and_chirp() {
    let dir = TempDir::new().unwrap();
    let delta = gen(&dir, "d.csv", &["--n", "8", "--kind", "delta"]);
    let (w, h, px) = compute_and_render(&dir, &delta, "delta");
    assert_eq!((w, h), (8, 8));
    assert_eq!(px[0], 255);
    assert!((1..8).all(|n| px[n * w] == 0));

    let chirp = gen(&dir, "c.csv", &["--n", "8"]);
    let (w, _, px) = compute_and_render(&dir, &chirp, "chirp");
    let brightest: Vec<usize> = (0..w).filter(|&c| px.iter().skip(c).step_by(w).any(|&v| v == 255)).collect();
    assert_eq!(brightest, vec![1, 5]);
}

#[test]
fn render_rejects_zero_matrix() {
    let dir = TempDir::new().unwrap();
    let prefix = dir.path().join("z");
    for suffix in ["_re.csv", "_im.csv"] {
        fs::write(dir.path().join(format!("z{suffix}")), "0,0\n0,0\n").unwrap();
    }
    let (code, _, err) = mafrft(&["render", "--input-prefix", p(&prefix), "-o", p(&dir.path().join("z.pgm"))]);
    assert_eq!(code, EXIT_PARSE);
    assert!(!err.is_empty());
}

#[test]
fn help_and_unknown_flags() {
    let (code, out, _) = mafrft(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("compute"));
    let (code, _, err) = mafrft(&["compute", "--bogus"]);
    assert_eq!(code, EXIT_PARSE);
    assert!(!err.is_empty());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_mafrft");
    let status = std::process::Command::new(bin).args(["validate", "--n", "6"]).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&status.stdout).contains("\"pass\": true"));
    let status = std::process::Command::new(bin).args(["validate", "--n", "2"]).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_PARSE));
}
