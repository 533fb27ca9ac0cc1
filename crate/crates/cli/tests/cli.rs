use std::fs;
use std::process::{Command, Output};

use tempfile::TempDir;

fn toptree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toptree"))
        .args(args)
        .output()
        .expect("running toptree")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn path_str(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

#[test]
fn compress_query_decompress() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "t.txt", "(a(b(d))(c))\n");
    let tdag = path_str(&dir, "t.tdag");
    let o = toptree(&["compress", &input, "-o", &tdag]);
    assert!(o.status.success(), "{o:?}");
    assert!(fs::read_to_string(&tdag).unwrap().starts_with("TOPDAG 1\nn 4\n"));

    let cases: [(&[&str], &str); 10] = [
        (&["access", "3"], "d"),
        (&["depth", "3"], "2"),
        (&["height", "1"], "2"),
        (&["size", "2"], "2"),
        (&["parent", "1"], "none"),
        (&["first_child", "2"], "3"),
        (&["next-sibling", "2"], "4"),
        (&["level_ancestor", "3", "2"], "1"),
        (&["nca", "3", "4"], "1"),
        (&["decompress", "2"], "(b(d))"),
    ];
    for (args, want) in cases {
        let mut full = vec!["query", tdag.as_str()];
        full.extend_from_slice(args);
        let o = toptree(&full);
        assert!(o.status.success(), "{args:?}: {o:?}");
        assert_eq!(stdout(&o), format!("{want}\n"), "{args:?}");
    }

    let out = path_str(&dir, "back.txt");
    let o = toptree(&["decompress", &tdag, "-o", &out]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&out).unwrap(), "(a(b(d))(c))\n");
    let o = toptree(&["decompress", &tdag]);
    assert_eq!(stdout(&o), "(a(b(d))(c))\n");
}

#[test]
fn compress_xml() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "doc.xml", "<?xml version=\"1.0\"?><r><x>text</x><y a=\"1\"/></r>");
    let tdag = path_str(&dir, "doc.tdag");
    assert!(toptree(&["compress", &input, "-o", &tdag]).status.success());
    assert_eq!(stdout(&toptree(&["decompress", &tdag])), "(r(x)(y))\n");
    let forced = toptree(&["compress", &input, "--format", "tree"]);
    assert_eq!(forced.status.code(), Some(2));
}

#[test]
fn stats_text_and_json() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p.txt", "(a(a(a)))");
    let o = toptree(&["stats", &input]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "n_T\te_T\tn_TT\tttHeight\tn_TD\tn_D\tratio_T_TD\tratio_D_TD\n3\t2\t3\t1\t4\t5\t0.750000\t1.250000\n"
    );
    let o = toptree(&["stats", "--json", &input]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n_T"], 3);
    assert_eq!(v["n_TD"], 4);
    assert_eq!(v["n_D"], 5);

    let single = write(&dir, "s.txt", "(a)");
    let v: serde_json::Value = serde_json::from_str(&stdout(&toptree(&["stats", "--json", &single]))).unwrap();
    assert_eq!((v["n_T"].as_u64(), v["n_TD"].as_u64(), v["n_D"].as_u64()), (Some(1), Some(1), Some(1)));
}

#[test]
fn gen_is_deterministic() {
    let a = toptree(&["gen", "random", "--n", "50", "--sigma", "3", "--seed", "9"]);
    let b = toptree(&["gen", "random", "--n", "50", "--sigma", "3", "--seed", "9"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&toptree(&["gen", "path", "--n", "3"])), "(a(a(a)))\n");
    assert_eq!(stdout(&toptree(&["gen", "complete-binary", "--n", "3"])), "(a(a)(a))\n");
}

#[test]
fn bench_sweep() {
    let o = toptree(&["bench", "--family", "path", "--max", "64"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 3);
    assert!(lines[0].starts_with("family\tn_T"));
    assert!(lines[1].starts_with("path\t16\t"));

    let o = toptree(&["bench", "--max", "32", "--json"]);
    let rows: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 4 * 2);
    assert!(rows.iter().all(|r| r["n_TD"].as_u64().unwrap() > 0));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "t.txt", "(a(b))");
    let tdag = path_str(&dir, "t.tdag");
    assert!(toptree(&["compress", &input, "-o", &tdag]).status.success());

    // usage errors
    assert_eq!(toptree(&[]).status.code(), Some(1));
    assert_eq!(toptree(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(toptree(&["gen", "path"]).status.code(), Some(1));
    assert_eq!(toptree(&["gen", "spiral", "--n", "3"]).status.code(), Some(1));
    assert_eq!(toptree(&["query", &tdag, "sideways", "1"]).status.code(), Some(1));
    assert_eq!(toptree(&["query", &tdag, "nca", "1"]).status.code(), Some(1));
    assert_eq!(toptree(&["--help"]).status.code(), Some(0));

    // data errors
    assert_eq!(toptree(&["query", &tdag, "depth", "3"]).status.code(), Some(2));
    assert_eq!(toptree(&["query", &tdag, "level_ancestor", "2", "2"]).status.code(), Some(2));
    let missing = dir.path().join("missing.tdag");
    assert_eq!(toptree(&["decompress", missing.to_str().unwrap()]).status.code(), Some(2));
    let bad = write(&dir, "bad.tdag", "TOPDAG 2\n");
    let o = toptree(&["decompress", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("TOPDAG 1"));
    let broken = write(&dir, "broken.txt", "(a(b)");
    assert_eq!(toptree(&["compress", &broken]).status.code(), Some(2));
}
