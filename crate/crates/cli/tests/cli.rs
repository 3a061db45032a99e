use std::path::PathBuf;
use std::process::{Command, Output};

fn cofinal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cofinal")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

const FAST: &[&str] = &["--group", "free2", "--construction", "fast_betti", "--target", "power:0.5", "--terms", "2"];

#[test]
fn fast_betti_csv() {
    let o = cofinal(FAST);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let out = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "i,d_i,n_i,index,b1,b1_mod,torsion,rank_lo,rank_hi,target,verdict,ratio");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("1,4,5,20,21,2:21;3:21,1,"));
    assert!(lines[1..].iter().all(|l| l.split(',').nth(10) == Some("holds")));
}

#[test]
fn reruns_are_byte_identical() {
    let slow = ["--group", "surface_g2", "--construction", "slow_rank", "--target", "log:2", "--terms", "1"];
    for args in [FAST, &slow[..]] {
        let first = cofinal(args).stdout;
        for _ in 0..2 {
            assert_eq!(cofinal(args).stdout, first);
        }
    }
}

#[test]
fn slow_rank_symbolic_modulus() {
    let o = cofinal(&["--group", "surface_g2", "--construction", "slow_rank", "--target", "log:2", "--terms", "1"]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[2], (1u64 << 61).to_string());
    assert_eq!(row[8], "35");
    assert_eq!(row[9], "65.000000");
    assert_eq!(row[10], "holds");
}

#[test]
fn csv_and_json_agree() {
    let csv = String::from_utf8(cofinal(FAST).stdout).unwrap();
    let mut args = FAST.to_vec();
    args.extend(["--emit", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&cofinal(&args).stdout).unwrap();
    let rows = json["rows"].as_array().unwrap();
    for (line, row) in csv.lines().skip(1).zip(rows) {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[0], row["i"].to_string());
        for (k, name) in [(1, "d_i"), (2, "n_i"), (3, "index"), (6, "torsion"), (9, "target"), (10, "verdict"), (11, "ratio")] {
            assert_eq!(f[k], row[name].as_str().unwrap(), "{name}");
        }
        assert_eq!(f[4], row["b1"].to_string());
        let b1_mod: Vec<String> =
            row["b1_mod"].as_object().unwrap().iter().map(|(p, v)| format!("{p}:{v}")).collect();
        assert_eq!(f[5], b1_mod.join(";"));
    }
}

#[test]
fn stable_letter_probe() {
    let o = cofinal(&["--group", "fig8", "--construction", "derived_p", "--p", "2", "--terms", "1", "--probe", "t"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("probe t: excluded at term 1"));
}

#[test]
fn presentation_files() {
    let torus = scratch("torus.txt", "gens: a b\nrel: abAB\n");
    let o = cofinal(&["--file", torus.to_str().unwrap(), "--construction", "derived_p", "--terms", "1"]);
    assert_eq!(code(&o), 0);
    // the mod-2 cover of the torus is a torus
    assert!(String::from_utf8(o.stdout).unwrap().lines().nth(1).unwrap().starts_with("1,4,1,4,2,"));

    let bad = scratch("bad.txt", "gens: a b\nrel: abc\n");
    let o = cofinal(&["--file", bad.to_str().unwrap(), "--construction", "derived_p"]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn exit_codes() {
    // cap truncation
    assert_eq!(code(&cofinal(&["--group", "surface_g2", "--construction", "derived_p", "--terms", "2"])), 2);
    assert_eq!(code(&cofinal(&["--group", "klein", "--construction", "derived_p"])), 3);
    // missing target
    assert_eq!(code(&cofinal(&["--group", "free2", "--construction", "fast_betti"])), 5);
    // bounded target below the slow-rank threshold
    assert_eq!(
        code(&cofinal(&["--group", "surface_g2", "--construction", "slow_rank", "--target", "table:3", "--terms", "1"])),
        5
    );
    assert_eq!(code(&cofinal(&["--construction", "derived_p"])), 64);
    assert_eq!(code(&cofinal(&["--group", "free2", "--construction", "nonsense"])), 64);
}

#[test]
fn dump_tables() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("dump.json");
    let o = cofinal(&["--group", "free2", "--construction", "derived_p", "--terms", "1", "--dump", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let dump: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(dump[0]["table"]["degree"], 4);
    assert_eq!(dump[0]["table"]["action"].as_array().unwrap().len(), 2);
}
