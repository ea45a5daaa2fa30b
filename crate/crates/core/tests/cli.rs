use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use stablevol::cli::run;
use tempfile::TempDir;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Out {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("stablevol").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Out {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn ok(args: &[&str]) -> String {
    let o = cli(args);
    assert_eq!(o.code, 0, "{args:?}: {}", o.stderr);
    o.stdout
}

fn gen(dir: &TempDir, name: &str, seed: u64) -> PathBuf {
    let p = dir.path().join(format!("{name}-{seed}.txt"));
    ok(&["gen", name, "--seed", &seed.to_string(), "-o", p.to_str().unwrap()]);
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn validate(schema: &str, doc: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(schema);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let v = jsonschema::validator_for(&schema).unwrap();
    let doc: Value = serde_json::from_str(doc).unwrap();
    let errors: Vec<String> = v.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = std::fs::read_to_string(gen(&dir, "lattice-3x3x3", 4)).unwrap();
    let b = ok(&["gen", "lattice-3x3x3", "--seed", "4"]);
    assert_eq!(a, b);
    let coords: Vec<f64> = a.split_whitespace().map(|t| t.parse().unwrap()).collect();
    assert_eq!(coords.len(), 27 * 3);
    assert!(coords.iter().all(|&x| (-0.05..=2.05).contains(&x)));
    assert_ne!(b, ok(&["gen", "lattice-3x3x3", "--seed", "5"]));
    assert_eq!(cli(&["gen", "nonsense"]).code, 2);
}

#[test]
fn pd_five_points() {
    let dir = TempDir::new().unwrap();
    let input = gen(&dir, "fig1-five-points", 0);
    let tsv = dir.path().join("pd.tsv");
    let json = ok(&["pd", s(&input), "--tsv", s(&tsv)]);
    validate("diagrams.schema.json", &json);
    let v: Value = serde_json::from_str(&json).unwrap();
    let d1 = &v[1]["pairs"];
    assert_eq!(v[1]["degree"], 1);
    assert_eq!(d1.as_array().unwrap().len(), 2);
    let want = [(0.5, 1.0 / 3f64.sqrt()), (0.5, 1.0 / 2f64.sqrt())];
    for (p, (b, d)) in d1.as_array().unwrap().iter().zip(want) {
        assert!((p["birth"].as_f64().unwrap() - b).abs() < 1e-9);
        assert!((p["death"].as_f64().unwrap() - d).abs() < 1e-9);
    }
    let rows = std::fs::read_to_string(&tsv).unwrap();
    assert!(rows.starts_with("degree\tbirth\tdeath\n"));
    assert!(rows.lines().any(|l| l.starts_with("0\t0\tinf")));

    let sq: Value = serde_json::from_str(&ok(&["pd", s(&input), "--squared", "--degree", "1"])).unwrap();
    for (p, q) in d1.as_array().unwrap().iter().zip(sq[0]["pairs"].as_array().unwrap()) {
        let (b, d) = (p["birth"].as_f64().unwrap(), p["death"].as_f64().unwrap());
        assert!((q["birth"].as_f64().unwrap() - b * b).abs() < 1e-12);
        assert!((q["death"].as_f64().unwrap() - d * d).abs() < 1e-12);
    }
}

#[test]
fn pd_error_codes() {
    let dir = TempDir::new().unwrap();
    let empty = dir.path().join("empty.txt");
    std::fs::write(&empty, "").unwrap();
    assert_eq!(cli(&["pd", s(&empty)]).code, 2);
    let junk = dir.path().join("junk.txt");
    std::fs::write(&junk, "0 0\n1 zero\n").unwrap();
    assert_eq!(cli(&["pd", s(&junk)]).code, 2);
    let line = dir.path().join("line.txt");
    std::fs::write(&line, "0 0\n1 0\n2 0\n").unwrap();
    let o = cli(&["pd", s(&line)]);
    assert_eq!(o.code, 3);
    assert!(o.stdout.is_empty() && !o.stderr.is_empty());
    assert_eq!(cli(&["pd", "/nonexistent/points.txt"]).code, 1);
    assert_eq!(cli(&["pd"]).code, 2);
    assert_eq!(cli(&["frobnicate"]).code, 2);
}

#[test]
fn pd_of_complex_json() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("c.json");
    let doc = r#"{"simplices": [[0],[1],[2],[0,1],[1,2],[0,2],[0,1,2]],
                  "levels": [0, 0, 0, 1, 1, 1, 2]}"#;
    std::fs::write(&p, doc).unwrap();
    let v: Value = serde_json::from_str(&ok(&["pd", s(&p), "--degree", "1"])).unwrap();
    assert_eq!(v[0]["pairs"][0]["birth"], 1.0);
    assert_eq!(v[0]["pairs"][0]["death"], 2.0);
    std::fs::write(&p, r#"{"simplices": [[0,1]], "levels": [0]}"#).unwrap();
    assert_eq!(cli(&["pd", s(&p)]).code, 2);
}

#[test]
fn vol_methods_agree_in_codimension_one() {
    let dir = TempDir::new().unwrap();
    let input = gen(&dir, "lattice-2d-defects", 3);
    let i = s(&input);
    for eps in ["0", "0.05", "0.2"] {
        let tree = ok(&["vol", i, "--largest", "--method", "stable-tree", "--epsilon", eps]);
        let lp = ok(&["vol", i, "--largest", "--method", "stable-lp", "--epsilon", eps]);
        validate("volume.schema.json", &tree);
        validate("volume.schema.json", &lp);
        let (t, l): (Value, Value) = (serde_json::from_str(&tree).unwrap(), serde_json::from_str(&lp).unwrap());
        assert_eq!(t["cells"].to_string(), l["cells"].to_string(), "eps {eps}");
        assert_eq!(t["boundary"], l["boundary"]);
    }
    let opt: Value = serde_json::from_str(&ok(&["vol", i, "--largest"])).unwrap();
    let sv0: Value =
        serde_json::from_str(&ok(&["vol", i, "--largest", "--method", "stable-tree"])).unwrap();
    assert_eq!(opt["method"], "tree-optimal");
    assert_eq!(opt["cells"], sv0["cells"]);
    let lp_opt: Value =
        serde_json::from_str(&ok(&["vol", i, "--largest", "--method", "optimal-lp"])).unwrap();
    assert_eq!(opt["cells"], lp_opt["cells"]);
}

#[test]
fn vol_five_points_square() {
    let dir = TempDir::new().unwrap();
    let input = gen(&dir, "fig1-five-points", 0);
    let out = dir.path().join("v.json");
    let o = cli(&["vol", s(&input), "--pair-index", "1", "-o", s(&out)]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["boundary_vertices"], serde_json::json!([0, 1, 2, 3]));
    assert_eq!(v["points"].as_array().unwrap().len(), 4);
}

#[test]
fn vol_sub_in_three_dimensions() {
    let dir = TempDir::new().unwrap();
    let input = gen(&dir, "lattice-3x3x3", 1);
    let i = s(&input);
    let sub = ok(&["vol", i, "--degree", "1", "--largest", "--method", "sub", "--epsilon", "0.05"]);
    validate("volume.schema.json", &sub);
    let v: Value = serde_json::from_str(&sub).unwrap();
    assert_eq!(v["method"], "lp-sub");
    assert!(!v["cells"].as_array().unwrap().is_empty());
    // tree methods need codimension one
    assert_eq!(
        cli(&["vol", i, "--degree", "1", "--largest", "--method", "stable-tree"]).code,
        1
    );
}

#[test]
fn vol_pair_selection_errors() {
    let dir = TempDir::new().unwrap();
    let input = gen(&dir, "fig1-five-points", 0);
    let i = s(&input);
    // the essential component never dies
    assert_eq!(cli(&["vol", i, "--degree", "0", "--birth", "0", "--death", "inf"]).code, 5);
    // several components merge at 0.5
    assert_eq!(cli(&["vol", i, "--degree", "0", "--birth", "0", "--death", "0.5"]).code, 4);
    assert_eq!(cli(&["vol", i, "--pair-index", "7"]).code, 4);
    assert_eq!(cli(&["vol", i, "--birth", "0.9", "--death", "1.0"]).code, 4);
    let one = cli(&["vol", i, "--birth", "0.5", "--death", "0.57735"]);
    assert_eq!(one.code, 0, "{}", one.stderr);
    assert_eq!(cli(&["vol", i]).code, 2);
    assert_eq!(cli(&["vol", i, "--largest", "--pair-index", "0"]).code, 2);
    assert_eq!(cli(&["vol", i, "--birth", "0.5"]).code, 2);
    assert_eq!(cli(&["vol", i, "--largest", "--epsilon", "-1"]).code, 2);
}

#[test]
fn sweep_rows() {
    let dir = TempDir::new().unwrap();
    let input = gen(&dir, "lattice-2d-defects", 2);
    let i = s(&input);
    let tsv = ok(&["sweep", i, "--largest", "--epsilon-grid", "0:0.4:0.01"]);
    let rows: Vec<(f64, usize)> = tsv
        .lines()
        .skip(1)
        .map(|l| {
            let (a, b) = l.split_once('\t').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 41);
    assert!(rows.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 >= w[1].1));
    let single = ok(&["sweep", i, "--largest", "--epsilon-grid", "0.1:0.1:0.01"]);
    assert_eq!(single.lines().count(), 2);
    let lp = ok(&["sweep", i, "--largest", "--epsilon-grid", "0:0.4:0.1", "--method", "stable-lp"]);
    let tree = ok(&["sweep", i, "--largest", "--epsilon-grid", "0:0.4:0.1"]);
    assert_eq!(lp, tree);
    assert_eq!(cli(&["sweep", i, "--largest", "--epsilon-grid", "0:0.4"]).code, 2);
}

#[test]
fn stat_requires_seed_and_repeats() {
    let dir = TempDir::new().unwrap();
    let input = gen(&dir, "fig1-five-points", 0);
    let i = s(&input);
    assert_eq!(cli(&["stat", i, "--largest"]).code, 2);
    let args = ["stat", i, "--largest", "--seed", "9", "--trials", "20", "--noise", "0.05"];
    let a = ok(&args);
    assert_eq!(a, ok(&args));
    validate("frequency.schema.json", &a);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["trials"], 20);
    assert_eq!(v["frequencies"].as_array().unwrap().len(), 5);
}

#[test]
fn rsc_bandwidths() {
    let dir = TempDir::new().unwrap();
    let input = gen(&dir, "lattice-2d-defects", 1);
    let i = s(&input);
    let mut weights = Vec::new();
    for bw in ["0.1", "0.3"] {
        let out = dir.path().join(format!("loop-{bw}.json"));
        ok(&["rsc", i, "--largest", "--bandwidth", bw, "-o", s(&out)]);
        let text = std::fs::read_to_string(&out).unwrap();
        validate("volume.schema.json", &text);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["method"], "rsc");
        assert_eq!(v["boundary"].as_array().unwrap().len(), v["boundary_vertices"].as_array().unwrap().len());
        weights.push(v["weight"].as_f64().unwrap());
    }
    assert!(weights[1] <= weights[0]);
    let e = ok(&["rsc", i, "--largest", "--euclidean"]);
    validate("volume.schema.json", &e);
    assert_eq!(cli(&["rsc", i, "--largest", "--k-index", "0", "--bandwidth", "0.1"]).code, 2);
}

fn binary(args: &[&str], threads: &str) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_stablevol"))
        .args(args)
        .env("STABLEVOL_THREADS", threads)
        .output()
        .unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

#[test]
fn binary_exit_codes() {
    let out = Command::new(env!("CARGO_BIN_EXE_stablevol"))
        .args(["pd", "/nonexistent"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let help = Command::new(env!("CARGO_BIN_EXE_stablevol")).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = TempDir::new().unwrap();
    let input = gen(&dir, "lattice-2d-defects", 7);
    let i = s(&input);
    let runs: [&[&str]; 3] = [
        &["pd", i],
        &["stat", i, "--largest", "--seed", "1", "--trials", "8", "--noise", "0.05"],
        &["sweep", i, "--largest", "--epsilon-grid", "0:0.3:0.1", "--method", "stable-lp"],
    ];
    for args in runs {
        let a = binary(args, "1");
        assert_eq!(a, binary(args, "8"), "{args:?}");
        let mut flagged = vec!["--threads", "1"];
        flagged.extend_from_slice(args);
        assert_eq!(a, binary(&flagged, "8"));
    }
}
