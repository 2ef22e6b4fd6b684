use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn netlsd(args: &[&str]) -> Output {
    netlsd_env(args, &[])
}

fn netlsd_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_netlsd"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn ring_edges(n: usize, relabel: impl Fn(usize) -> usize) -> String {
    (0..n).map(|i| format!("{} {}\n", relabel(i), relabel((i + 1) % n))).collect()
}

/// Three small graphs plus a manifest referencing them.
fn fixture() -> (TempDir, PathBuf) {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "ring.txt", &ring_edges(10, |i| i));
    write(dir.path(), "ring_perm.txt", &ring_edges(10, |i| (i * 3 + 7) % 10));
    write(dir.path(), "path.txt", "a b\nb c\nc d\n");
    let manifest = write(dir.path(), "graphs.txt", "ring ring.txt 0\nring-perm ring_perm.txt 0\npath path.txt 1\n");
    (dir, manifest)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn embed(dir: &Path, manifest: &Path, name: &str, flags: &[&str]) -> (Output, PathBuf) {
    let out_path = dir.join(name);
    let mut args = vec!["embed", p(manifest), "-o", p(&out_path)];
    args.extend_from_slice(flags);
    (netlsd(&args), out_path)
}

fn data_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn embed_writes_one_row_per_graph() {
    let (dir, manifest) = fixture();
    let (out, sig) = embed(dir.path(), &manifest, "sig.csv", &["--norm", "none", "--strategy", "full"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&sig).unwrap();
    assert_eq!(text.lines().next().unwrap(), "#netlsd v1 kernel=heat norm=none grid=250,0.01,100,log");
    let rows = data_lines(&text);
    assert_eq!(rows.len(), 3);
    let ids: Vec<&str> = rows.iter().map(|r| r.split(',').next().unwrap()).collect();
    assert_eq!(ids, ["ring", "ring-perm", "path"]);
    assert!(rows.iter().all(|r| r.split(',').count() == 251));
    assert!(text.lines().any(|l| l.starts_with("# config kernel=heat norm=none")));

    let timing = String::from_utf8(out.stderr).unwrap();
    assert!(timing.starts_with("id,nodes,edges,seconds,status\n"));
    assert!(timing.lines().any(|l| l.starts_with("path,4,3,") && l.ends_with(",ok")));
}

#[test]
fn default_header_records_standard_settings() {
    let (dir, manifest) = fixture();
    let (out, sig) = embed(dir.path(), &manifest, "sig.csv", &[]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(sig).unwrap();
    assert_eq!(text.lines().next().unwrap(), "#netlsd v1 kernel=heat norm=empty grid=250,0.01,100,log");
    assert!(text.contains("strategy=auto k=300"));
}

#[test]
fn environment_overrides_flags_defaults() {
    let (dir, manifest) = fixture();
    let out_path = dir.path().join("wave.csv");
    let out = netlsd_env(
        &["embed", p(&manifest), "-o", p(&out_path)],
        &[("NETLSD_KERNEL", "wave"), ("NETLSD_NORM", "complete")],
    );
    assert_eq!(code(&out), 0);
    let header = fs::read_to_string(out_path).unwrap().lines().next().unwrap().to_string();
    assert!(header.starts_with("#netlsd v1 kernel=wave norm=complete grid=250,0,"), "{header}");
}

#[test]
fn unreadable_graph_goes_to_sidecar() {
    let (dir, _) = fixture();
    let manifest = write(dir.path(), "bad.txt", "ring ring.txt\nghost missing.txt\npath path.txt\n");
    let (out, sig) = embed(dir.path(), &manifest, "sig.csv", &[]);
    assert_eq!(code(&out), 1);
    let rows = fs::read_to_string(&sig).unwrap();
    assert_eq!(data_lines(&rows).len(), 2);
    let errors = fs::read_to_string(dir.path().join("sig.csv.errors")).unwrap();
    assert_eq!(errors.lines().count(), 1);
    assert!(errors.starts_with("ghost\t"));

    // a clean rerun clears the stale log
    let good = write(dir.path(), "good.txt", "ring ring.txt\n");
    let (out, _) = embed(dir.path(), &good, "sig.csv", &[]);
    assert_eq!(code(&out), 0);
    assert!(!dir.path().join("sig.csv.errors").exists());
}

#[test]
fn embed_is_reproducible_across_thread_counts() {
    let (dir, manifest) = fixture();
    let (_, a) = embed(dir.path(), &manifest, "a.csv", &["--threads", "1"]);
    let (_, b) = embed(dir.path(), &manifest, "b.csv", &["--threads", "1"]);
    let (_, c) = embed(dir.path(), &manifest, "c.csv", &["--threads", "3"]);
    let a = fs::read_to_string(a).unwrap();
    assert_eq!(a, fs::read_to_string(b).unwrap());
    assert_eq!(data_lines(&a), data_lines(&fs::read_to_string(c).unwrap()));
}

#[test]
fn dist_behaviour() {
    let (dir, manifest) = fixture();
    let (_, sig) = embed(dir.path(), &manifest, "sig.csv", &[]);
    let same = netlsd(&["dist", p(&sig), "path", "path"]);
    assert_eq!(code(&same), 0);
    assert_eq!(stdout(&same).trim().parse::<f64>().unwrap(), 0.0);

    let iso = netlsd(&["dist", p(&sig), "ring", "ring-perm"]);
    assert!(stdout(&iso).trim().parse::<f64>().unwrap() < 1e-7);

    let apart = netlsd(&["dist", p(&sig), "ring", "path"]);
    let text = stdout(&apart);
    let mantissa = text.trim().split('e').next().unwrap();
    assert_eq!(mantissa.replace(['.', '-'], "").len(), 12, "{text}");
    assert!(text.trim().parse::<f64>().unwrap() > 0.0);
    // reading the file again gives the same bits
    assert_eq!(text, stdout(&netlsd(&["dist", p(&sig), "ring", "path"])));

    let unknown = netlsd(&["dist", p(&sig), "ring", "nope"]);
    assert_eq!(code(&unknown), 2);
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("nope"));
}

#[test]
fn dist_refuses_incompatible_files() {
    let (dir, manifest) = fixture();
    let (_, heat) = embed(dir.path(), &manifest, "heat.csv", &[]);
    let (_, raw) = embed(dir.path(), &manifest, "raw.csv", &["--norm", "none"]);
    let out = netlsd(&["dist", p(&heat), "ring", "ring", "--file-b", p(&raw)]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).is_empty());
    let ok = netlsd(&["dist", p(&heat), "ring", "path", "--file-b", p(&heat)]);
    assert_eq!(code(&ok), 0);
}

#[test]
fn knn_behaviour() {
    let (dir, manifest) = fixture();
    let (_, sig) = embed(dir.path(), &manifest, "sig.csv", &[]);
    let one = netlsd(&["knn", p(&sig), "path", "1"]);
    assert_eq!(code(&one), 0);
    let lines: Vec<String> = stdout(&one).lines().map(String::from).collect();
    assert_eq!(lines[0], "rank,id,distance");
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("1,path,"));
    assert_eq!(lines[1].rsplit(',').next().unwrap().parse::<f64>().unwrap(), 0.0);

    let all = netlsd(&["knn", p(&sig), "ring", "10"]);
    let text = stdout(&all);
    assert_eq!(text.lines().count(), 4);
    assert_eq!(text, stdout(&netlsd(&["knn", p(&sig), "ring", "10"])));

    assert_eq!(code(&netlsd(&["knn", p(&sig), "ring", "0"])), 2);
    assert_eq!(code(&netlsd(&["knn", p(&sig), "ghost", "1"])), 2);
}

#[test]
fn gen_ring_has_one_line_per_edge() {
    let out = netlsd(&["gen", "ring", "10"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 10);
    assert_eq!(code(&netlsd(&["gen", "moebius", "10"])), 2);
    assert_eq!(code(&netlsd(&["gen", "ring", "2"])), 2);
}

#[test]
fn gen_random_families_are_seeded() {
    let a = netlsd(&["gen", "er", "200", "--seed", "5"]);
    let b = netlsd(&["gen", "er", "200", "--seed", "5"]);
    let c = netlsd(&["gen", "er", "200", "--seed", "6"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_ne!(stdout(&a), stdout(&c));
    let sbm = netlsd(&["gen", "sbm", "200", "--blocks", "4", "--mixing", "0.2", "--seed", "1"]);
    assert_eq!(code(&sbm), 0);
    assert!(stdout(&sbm).lines().count() > 500);
}

fn edge_set(text: &str) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = text
        .lines()
        .map(|l| {
            let mut t = l.split_whitespace().map(String::from);
            let (a, b) = (t.next().unwrap(), t.next().unwrap());
            if a < b { (a, b) } else { (b, a) }
        })
        .collect();
    out.sort();
    out
}

#[test]
fn rewire_triangle_is_unchanged() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "tri.txt", "x y\ny z\nz x\n");
    let out = netlsd(&["rewire", p(&input), "--sweeps", "10"]);
    assert_eq!(code(&out), 0);
    assert_eq!(edge_set(&stdout(&out)), edge_set("x y\ny z\nz x\n"));
}

#[test]
fn rewire_preserves_degrees_and_is_seeded() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("er.txt");
    assert_eq!(code(&netlsd(&["gen", "er", "100", "-o", p(&input)])), 0);
    let original = fs::read_to_string(&input).unwrap();
    let a = stdout(&netlsd(&["rewire", p(&input), "--seed", "3"]));
    let b = stdout(&netlsd(&["rewire", p(&input), "--seed", "3"]));
    assert_eq!(a, b);
    assert_ne!(edge_set(&a), edge_set(&original));
    let degrees = |text: &str| {
        let mut d = std::collections::BTreeMap::<String, usize>::new();
        for (u, v) in edge_set(text) {
            *d.entry(u).or_default() += 1;
            *d.entry(v).or_default() += 1;
        }
        d
    };
    assert_eq!(degrees(&a), degrees(&original));
}

#[test]
fn bench_communities_reports_accuracy() {
    let args = [
        "bench", "communities", "--n", "64", "--per-class", "10", "--method", "heat-empty", "--trials", "3",
    ];
    let out = netlsd(&args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# config kernel=heat norm=empty"));
    assert!(lines[0].contains("method=heat-empty sizes=fixed(64)"));
    assert_eq!(lines[1], "metric,value,trials,seed");
    let fields: Vec<&str> = lines[2].split(',').collect();
    assert_eq!(fields[0], "accuracy");
    let value: f64 = fields[1].parse().unwrap();
    assert!((0.0..=1.0).contains(&value));
    assert_eq!(&fields[2..], ["3", "0"]);
    assert_eq!(text, stdout(&netlsd(&args)));

    let mut with_trials = args.to_vec();
    with_trials.push("--per-trial");
    let text = stdout(&netlsd(&with_trials));
    assert_eq!(text.lines().filter(|l| l.starts_with("trial,")).count(), 3);
}

#[test]
fn bench_argument_errors_exit_2() {
    let base = ["bench", "communities", "--per-class", "10", "--trials", "2"];
    let with = |extra: &[&str]| {
        let mut a = base.to_vec();
        a.extend_from_slice(extra);
        code(&netlsd(&a))
    };
    assert_eq!(with(&["--n", "gauss(3)"]), 2);
    assert_eq!(with(&["--n", "64", "--method", "heat-full"]), 2);
    assert_eq!(with(&["--n", "64", "--mixing", "lots"]), 2);
    assert_eq!(with(&["--n", "64", "--train-fraction", "1.5"]), 2);
    assert_eq!(code(&netlsd(&["bench", "communities", "--n", "64", "--per-class", "3"])), 2);
}

#[test]
fn bench_rewired_on_rings() {
    let dir = TempDir::new().unwrap();
    let mut manifest = String::new();
    for i in 0..20 {
        let name = format!("ring{i}.txt");
        write(dir.path(), &name, &ring_edges(100, |v| (v + i) % 100));
        manifest.push_str(&format!("ring{i} {name}\n"));
    }
    let manifest = write(dir.path(), "m.txt", &manifest);
    let out = netlsd(&["bench", "rewired", p(&manifest), "--trials", "5", "--method", "heat-empty"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let row = text.lines().nth(2).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[0], "roc_auc");
    assert!(fields[1].parse::<f64>().unwrap() > 0.9, "{row}");

    let acc = netlsd(&["bench", "rewired", p(&manifest), "--trials", "5", "--metric", "accuracy"]);
    assert!(stdout(&acc).lines().nth(2).unwrap().starts_with("accuracy,"));
}

#[test]
fn bad_global_flags_exit_2() {
    assert_eq!(code(&netlsd(&["--kernel", "laplace", "gen", "ring", "5"])), 2);
    assert_eq!(code(&netlsd(&["--grid", "10,1,0,log", "gen", "ring", "5"])), 2);
    assert_eq!(code(&netlsd(&["--kernel", "wave", "--grid", "10,1,100,lin", "gen", "ring", "5"])), 2);
    assert_eq!(code(&netlsd(&["--kernel", "wave", "--strategy", "taylor", "gen", "ring", "5"])), 2);
    assert_eq!(code(&netlsd(&["--tol", "-1", "gen", "ring", "5"])), 2);
    assert_eq!(code(&netlsd(&["frobnicate"])), 2);
}

#[test]
fn missing_inputs_exit_1() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("nothing.csv");
    assert_eq!(code(&netlsd(&["dist", p(&missing), "a", "b"])), 1);
    assert_eq!(code(&netlsd(&["rewire", p(&missing)])), 1);
}
