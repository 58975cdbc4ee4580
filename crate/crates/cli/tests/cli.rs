use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use vasqforge::{cl_dice, dice, BinaryMask, EngineConfig};

fn vasqforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vasqforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = vasqforge(&["generate", "--preset", "fundus", "--count", "5", "--seed", "42", "--out", s(out)]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    for name in ["manifest.json", "mask_00000.png", "skel_00004.png"] {
        assert_eq!(fs::read(a.join(name)).unwrap(), fs::read(b.join(name)).unwrap(), "{name}");
    }
    let m: serde_json::Value = serde_json::from_slice(&fs::read(a.join("manifest.json")).unwrap()).unwrap();
    let images = m["images"].as_array().unwrap();
    assert_eq!(images.len(), 5);
    assert_eq!(images[3]["mask"], "mask_00003.png");
    assert_eq!(images[3]["seed"], vasqforge::derive_seed(42, 3));
    assert_eq!(m["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn generate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = vasqforge(&["generate", "--preset", "fundus", "--count", "0", "--out", s(dir.path())]);
    assert_eq!(code(&o), 2);

    let file = dir.path().join("plain");
    fs::write(&file, b"x").unwrap();
    let o = vasqforge(&["generate", "--preset", "octa", "--count", "1", "--out", s(&file.join("sub"))]);
    assert_eq!(code(&o), 3);

    let o = vasqforge(&["generate", "--preset", "retina", "--count", "1", "--out", s(dir.path())]);
    assert_eq!(code(&o), 2);

    let mut v: serde_json::Value = serde_json::from_str(&EngineConfig::preset("fundus").unwrap().to_json()).unwrap();
    v["growth"]["kill_distance"] = 30.into();
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, v.to_string()).unwrap();
    let o = vasqforge(&["generate", "--config", s(&cfg), "--count", "1", "--out", s(dir.path())]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("growth"));

    v["growth"]["kill_distance"] = 10.into();
    v["growth"]["typo"] = 1.into();
    fs::write(&cfg, v.to_string()).unwrap();
    let o = vasqforge(&["generate", "--config", s(&cfg), "--count", "1", "--out", s(dir.path())]);
    assert_eq!(code(&o), 2);

    let o = vasqforge(&["generate", "--config", s(&dir.path().join("missing.json")), "--count", "1", "--out", s(dir.path())]);
    assert_eq!(code(&o), 3);
}

#[test]
fn config_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = EngineConfig::preset("brain_dsa").unwrap();
    c.domain = vasqforge::config::DomainConfig { width: 128, height: 96 };
    c.raster.width = 128;
    c.raster.height = 96;
    c.placement.roots = vec![[64.0, 90.0]];
    c.growth.max_nodes = 200;
    let cfg = dir.path().join("small.json");
    fs::write(&cfg, c.to_json()).unwrap();
    let out = dir.path().join("out");
    let o = vasqforge(&["generate", "--config", s(&cfg), "--count", "2", "--out", s(&out), "--forest"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let m = BinaryMask::load(out.join("mask_00001.png")).unwrap();
    assert_eq!((m.width(), m.height()), (128, 96));
    assert!(m.any());

    let o = vasqforge(&["validate-murray", "--forest", s(&out.join("forest_00000.json"))]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.starts_with("CS: 100.00 ± 0.00"), "{text}");
}

fn read_csv(p: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(p)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn sweep_rows_and_warnings() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("ls.csv");
    let o = vasqforge(&["sweep", "--preset", "fundus", "--param", "Ls", "--values", "5,15,25", "--per", "2", "--out", s(&csv)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows = read_csv(&csv);
    assert_eq!(
        rows[0].join(","),
        "param,value,mean_density,mean_branch_count,mean_tortuosity,mean_radius,mean_nodes,mean_edge_length"
    );
    assert_eq!(rows.len(), 4);
    for (row, ls) in rows[1..].iter().zip(["5", "15", "25"]) {
        assert_eq!(row[0], "Ls");
        assert_eq!(row[1], ls);
        assert_eq!(row[7], format!("{ls}.000000"));
    }

    let csv = dir.path().join("dk.csv");
    let o = vasqforge(&["sweep", "--preset", "fundus", "--param", "Dk", "--values", "25", "--per", "2", "--out", s(&csv)]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let rows = read_csv(&csv);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1], ["Dk", "25", "", "", "", "", "", ""]);
}

#[test]
fn metrics_csv() {
    let dir = tempfile::tempdir().unwrap();
    let (pred, gt) = (dir.path().join("pred"), dir.path().join("gt"));
    fs::create_dir_all(&pred).unwrap();
    fs::create_dir_all(&gt).unwrap();
    let p = BinaryMask::from_fn(16, 16, |x, y| (3..12).contains(&x) && (5..8).contains(&y));
    let g = BinaryMask::from_fn(16, 16, |x, y| (5..14).contains(&x) && (6..9).contains(&y));
    p.save_png(pred.join("a.png")).unwrap();
    g.save_png(gt.join("a.png")).unwrap();
    g.save_png(pred.join("b.png")).unwrap();
    g.save_png(gt.join("b.png")).unwrap();

    let csv = dir.path().join("m.csv");
    let o = vasqforge(&["metrics", "--pred", s(&pred), "--gt", s(&gt), "--out", s(&csv)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows = read_csv(&csv);
    assert_eq!(rows[0].join(","), "file,dsc,cl_dice,t_prec,t_sens");
    assert_eq!(rows.len(), 4);
    // |P| = 27, |G| = 27, |P & G| = 14
    assert_eq!(rows[1][1], format!("{:.6}", 28.0 / 54.0));
    assert_eq!(rows[1][1], format!("{:.6}", dice::<f64>(&p, &g).unwrap()));
    assert_eq!(rows[1][2], format!("{:.6}", cl_dice::<f64>(&p, &g).unwrap().cl_dice));
    assert_eq!(rows[2][1..], ["1.000000", "1.000000", "1.000000", "1.000000"]);
    assert_eq!(rows[3][0], "mean");

    g.save_png(pred.join("c.png")).unwrap();
    let o = vasqforge(&["metrics", "--pred", s(&pred), "--gt", s(&gt), "--out", s(&csv)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("c.png"));
}

#[test]
fn blank_masks_have_no_valid_score() {
    let dir = tempfile::tempdir().unwrap();
    for i in 0..3 {
        BinaryMask::new(32, 32).save_png(dir.path().join(format!("m{i}.png"))).unwrap();
    }
    let report = dir.path().join("r.json");
    let o = vasqforge(&["validate-murray", "--masks", s(dir.path()), "--out", s(&report)]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("valid masks: 0/3"), "{text}");
    let r: serde_json::Value = serde_json::from_slice(&fs::read(&report).unwrap()).unwrap();
    assert_eq!(r["valid"], 0);
    assert_eq!(r["items"][0]["status"], "no-bifurcation");
}
