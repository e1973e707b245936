use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use symdyn::cli::{format_points, parse_points, run};
use symdyn::format::{
    element_from_key, pattern_from_cells, read_homotopy, write_json, CellMap, HomotopyFile, MapFile, SftFile,
};
use symdyn_core::blockmap::MapDesc;
use symdyn_core::glue::{cocycle_sft, stitch_fixture};
use symdyn_core::homotopy::{burton_steif, coloring_homotopy, naive_contraction, safe_symbol_homotopy};
use symdyn_core::{BlockMap, FiniteDomain, Group, Pattern, Sft, Sym};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn invoke(args: &[&str]) -> (i32, Value) {
    let argv: Vec<String> = std::iter::once("symdyn").chain(args.iter().copied()).map(String::from).collect();
    let (code, report) = run(&argv);
    let v: Value = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(v["exit_code"], code);
    (code, v)
}

/// A report with the fields that legitimately vary between runs removed.
fn stable(mut v: Value) -> Value {
    let o = v.as_object_mut().unwrap();
    o.remove("timing");
    o.remove("argv");
    if let Some(p) = o.get_mut("params").and_then(Value::as_object_mut) {
        p.remove("jobs");
    }
    v
}

#[test]
fn safe_symbol_descriptor_verifies() {
    let (code, v) = invoke(&["homotopy-verify", &fixture("gm_safe.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "proved");
    assert!(v.get("witness").is_none());
}

#[test]
fn naive_descriptor_has_a_checkable_witness() {
    let (code, v) = invoke(&["homotopy-verify", &fixture("gm_naive.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "counterexample");
    let h = read_homotopy(Path::new(&fixture("gm_naive.json"))).unwrap();
    let w = &v["witness"];
    let tracks: Vec<Pattern> = w["tracks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            let alphabet: Vec<String> = serde_json::from_value(t["alphabet"].clone()).unwrap();
            let cells: CellMap = serde_json::from_value(t["pattern"].clone()).unwrap();
            pattern_from_cells(Group::Line, &alphabet, &cells).unwrap()
        })
        .collect();
    assert_eq!(tracks.len(), 3);
    for p in &tracks[1..] {
        assert!(h.sft.locally_valid(p).unwrap());
    }
    let mut image = Vec::new();
    for o in w["outputs"].as_array().unwrap() {
        let cell = element_from_key(Group::Line, o["cell"].as_str().unwrap()).unwrap();
        // cells the rule never read may hold anything
        let mut seen = Vec::new();
        for fill in 0..2 {
            let contents: Vec<Vec<Sym>> = tracks
                .iter()
                .map(|p| h.map.nbhd.iter().map(|n| p.get(&cell.mul(n)).unwrap_or(fill)).collect())
                .collect();
            seen.push(h.map.eval(&contents));
        }
        assert_eq!(seen[0], seen[1]);
        let sym = seen[0];
        assert_eq!(h.sft.alphabet[sym as usize], o["symbol"].as_str().unwrap());
        image.push((cell, sym));
    }
    assert!(!h.sft.locally_valid(&Pattern::from_cells(image)).unwrap());
}

#[test]
fn empty_search_passes() {
    let (code, v) = invoke(&["free-search", "--count", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "no-candidates");
}

#[test]
fn search_is_deterministic_across_jobs() {
    let args = ["free-search", "--count", "40", "--seed", "7"];
    let (_, one) = invoke(&[&args[..], &["--jobs", "1"]].concat());
    let (_, again) = invoke(&[&args[..], &["--jobs", "1"]].concat());
    let (_, three) = invoke(&[&args[..], &["--jobs", "3"]].concat());
    assert_eq!(stable(one.clone()), stable(again));
    assert_eq!(stable(one), stable(three));
}

#[test]
fn malformed_inputs_exit_64() {
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{ not json").unwrap();
    let bad_symbol = dir.path().join("bad.json");
    std::fs::write(
        &bad_symbol,
        r#"{"group":{"kind":"line","rank":1},"alphabet":["0","1"],"window":[0,1],"forbidden":[{"0":"2"}]}"#,
    )
    .unwrap();
    let missing = dir.path().join("missing.json");
    for args in [
        vec!["analyze".to_string(), junk.display().to_string()],
        vec!["analyze".into(), bad_symbol.display().to_string()],
        vec!["fep-check".into(), missing.display().to_string()],
        vec!["no-such-command".into()],
        vec!["zd-coloring".into(), "--d".into(), "2".into()],
    ] {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, v) = invoke(&refs);
        assert_eq!(code, 64, "{args:?}");
        assert_eq!(v["verdict"], "malformed");
    }
}

#[test]
fn sft_files_round_trip() {
    for x in [
        Sft::golden_mean(),
        Sft::coloring(Group::Grid(2), 3),
        Sft::coloring(Group::Free(2), 3),
        Sft::burton_steif(Group::Grid(2), 2),
        cocycle_sft(),
    ] {
        let text = serde_json::to_string(&SftFile::of(&x)).unwrap();
        let back: SftFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.build().unwrap(), x);
    }
}

#[test]
fn homotopy_files_round_trip() {
    let gm = Sft::golden_mean();
    let hs = vec![
        safe_symbol_homotopy(&gm, 0).unwrap(),
        naive_contraction(&gm),
        burton_steif(Group::Grid(2), 2).unwrap().1,
        coloring_homotopy(Group::Line, 3).unwrap().1,
    ];
    for h in hs {
        let text = serde_json::to_string(&HomotopyFile::of(&h).unwrap()).unwrap();
        let back: HomotopyFile = serde_json::from_str(&text).unwrap();
        assert!(back.build().unwrap() == h);
    }
}

fn rows(f: &BlockMap) -> Vec<Sym> {
    match f.tabulate().unwrap().desc {
        MapDesc::Table { rows } => rows,
        other => panic!("{other:?}"),
    }
}

#[test]
fn map_files_round_trip() {
    let g = Group::Line;
    let maps = vec![
        BlockMap::identity(g, 3),
        BlockMap::xor(g, FiniteDomain::interval(-1, 1)),
        BlockMap::relabel(g, 3, 2, vec![0, 1, 1]).unwrap(),
        BlockMap::constant(g, vec![2, 3], 2, 1),
        stitch_fixture().1[0].clone(),
    ];
    for f in maps {
        let text = serde_json::to_string(&MapFile::of(&f).unwrap()).unwrap();
        let back: MapFile = serde_json::from_str(&text).unwrap();
        let b = back.build().unwrap();
        assert_eq!((b.sources.clone(), b.target, b.nbhd.clone()), (f.sources.clone(), f.target, f.nbhd.clone()));
        assert_eq!(rows(&b), rows(&f));
    }
}

fn write<T: serde::Serialize>(dir: &Path, name: &str, v: &T) -> String {
    let p: PathBuf = dir.join(name);
    write_json(&p, v).unwrap();
    p.display().to_string()
}

#[test]
fn stitch_of_tabulated_parts_is_proved() {
    let dir = tempfile::tempdir().unwrap();
    let (x, parts) = stitch_fixture();
    let source = write(dir.path(), "source.json", &SftFile::of(&x));
    let p0 = write(dir.path(), "left.json", &MapFile::of(&parts[0]).unwrap());
    let p1 = write(dir.path(), "right.json", &MapFile::of(&parts[1]).unwrap());
    let out = dir.path().join("stitched.json").display().to_string();
    let (code, v) = invoke(&[
        "stitch",
        "--source",
        &source,
        "--target",
        &fixture("golden_mean.json"),
        "--homotopy",
        &fixture("gm_safe.json"),
        "--map",
        &p0,
        &p1,
        "-o",
        &out,
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["verdict"], "proved");
    let k = symdyn::format::read_map(Path::new(&out)).unwrap();
    assert_eq!(k.sources, vec![2]);
}

#[test]
fn retraction_and_factor_build() {
    let dir = tempfile::tempdir().unwrap();
    let r = dir.path().join("r.json").display().to_string();
    let (code, v) = invoke(&[
        "retract-build",
        "--sft",
        &fixture("golden_mean.json"),
        "--homotopy",
        &fixture("gm_safe.json"),
        "--fixed",
        "0",
        "-o",
        &r,
    ]);
    assert_eq!(code, 0, "{v}");
    let rm = symdyn::format::read_map(Path::new(&r)).unwrap();
    assert_eq!(rm.eval(&[vec![1; rm.nbhd.len()]]), 0);

    let f = write(dir.path(), "f.json", &MapFile::of(&BlockMap::constant(Group::Line, vec![3], 2, 0)).unwrap());
    let g = write(dir.path(), "g.json", &MapFile::of(&BlockMap::relabel(Group::Line, 3, 2, vec![0, 1, 1]).unwrap()).unwrap());
    let (code, v) = invoke(&[
        "factor-build",
        "--f",
        &f,
        "--g",
        &g,
        "--source",
        &fixture("ternary.json"),
        "--target",
        &fixture("golden_mean.json"),
        "--homotopy",
        &fixture("gm_safe.json"),
    ]);
    assert_eq!(code, 0, "{v}");
}

#[test]
fn line_analysis_and_fep() {
    let (code, v) = invoke(&["analyze", &fixture("golden_mean.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["line"]["mixing"], true);
    let (code, v) = invoke(&["fep-check", &fixture("golden_mean.json"), "--gap", "1", "--radius", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "passed");
}

#[test]
fn net_completion_on_small_torus() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.txt");
    std::fs::write(&pts, format_points(&[vec![0, 0], vec![10, 10]])).unwrap();
    let out = dir.path().join("net.txt");
    let (code, v) = invoke(&[
        "net",
        "--torus",
        "40,40",
        "--r",
        "4",
        "--points",
        &pts.display().to_string(),
        "-o",
        &out.display().to_string(),
        "--partition",
    ]);
    assert_eq!(code, 0, "{v}");
    let net = parse_points(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(net.contains(&vec![0, 0]) && net.contains(&vec![10, 10]));
}

#[test]
fn zd_coloring_member() {
    let (code, v) = invoke(&["zd-coloring", "--d", "2", "--r", "1", "--N", "301"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["verdict"], "member");
}

#[test]
fn binary_prints_one_json_report() {
    let out = Command::new(env!("CARGO_BIN_EXE_symdyn"))
        .args(["homotopy-verify", &fixture("gm_naive.json")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"], "homotopy-verify");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn plots_are_png() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("zd.png");
    let (code, _) = invoke(&["plot", "zd", "--r", "1", "--N", "301", "-o", &out.display().to_string()]);
    assert_eq!(code, 0);
    let bytes = std::fs::read(&out).unwrap();
    assert_eq!(&bytes[1..4], b"PNG");
    let out = dir.path().join("sweep.png");
    let (code, v) = invoke(&[
        "plot",
        "sweep",
        &fixture("gm_safe.json"),
        "--x",
        "1,0",
        "--y",
        "0",
        "--width",
        "12",
        "-o",
        &out.display().to_string(),
    ]);
    assert_eq!(code, 0, "{v}");
}
