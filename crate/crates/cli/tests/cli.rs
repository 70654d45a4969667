use std::process::{Command, Output};

fn umbrella(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_umbrella")).args(args).output().expect("run umbrella")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn normal_on_the_axis_at_right_angle() {
    let o = umbrella(&["eval", "normal", "--r", "0", "--theta", "pi/2", "--coeffs", "1,0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0 -1 0\n");
}

#[test]
fn normal_has_unit_length_off_the_axis() {
    let o = umbrella(&["eval", "normal", "--r", "0.3", "--theta", "1.1", "--coeffs", "-2,1/2,3"]);
    let v: Vec<f64> = stdout(&o).split_whitespace().map(|t| t.parse().unwrap()).collect();
    let n: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    assert!((n - 1.0).abs() < 1e-10, "{v:?}");
}

#[test]
fn exit_codes() {
    assert_eq!(umbrella(&["eval", "kappa_g", "--r", "0.01", "--theta", "0"]).status.code(), Some(3));
    assert_eq!(umbrella(&["eval", "bogus", "--r", "0.01", "--theta", "1"]).status.code(), Some(2));
    assert_eq!(umbrella(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(umbrella(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(umbrella(&["dupin", "--coeffs", "1,0"]).status.code(), Some(2));
    assert_eq!(umbrella(&["dupin", "--coeffs", "1,0,0"]).status.code(), Some(2));
    assert_eq!(umbrella(&["dupin", "--coeffs-file", "/definitely/not/here.json"]).status.code(), Some(4));
    assert_eq!(umbrella(&["roots", "--out", "/definitely/not/here/x.txt"]).status.code(), Some(4));
    assert_eq!(umbrella(&["first-term", "KappaG_g", "--radii", "0.1,0.2,0.3,0.4"]).status.code(), Some(2));
    assert_eq!(umbrella(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_exit_reflects_outcome() {
    let ok = umbrella(&["verify", "geodesic-cross-path"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("PASS geodesic-cross-path"));
    let bad = umbrella(&["verify", "orders", "--coeffs", "1,0,1"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL orders"));
}

#[test]
fn dupin_types() {
    for (c, want) in [("1,0,1", "circle"), ("2,0,1", "ellipse"), ("1,3,1", "hyperbola"), ("1,2,4", "parallel lines")] {
        let o = umbrella(&["dupin", "--coeffs", c]);
        assert_eq!(stdout(&o).trim(), want, "{c}");
    }
}

#[test]
fn coeffs_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("c.json");
    std::fs::write(&p, r#"{"a20": -4, "a11": 0, "a02": 1}"#).unwrap();
    let a = umbrella(&["eval", "kappa_n", "--r", "0.01", "--theta", "0.4", "--coeffs-file", p.to_str().unwrap()]);
    let b = umbrella(&["eval", "kappa_n", "--r", "0.01", "--theta", "0.4", "--coeffs", "-4,0,1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sweep_headers_and_determinism() {
    let a = umbrella(&["sweep", "roots", "--grid", "4"]);
    let b = umbrella(&["sweep", "roots", "--grid", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(umbrella_core::roots::ATLAS_HEADER));
    assert_eq!(lines.count(), 16);

    let f = umbrella(&["sweep", "flipped-counts", "--samples", "5", "--seed", "3"]);
    let g = umbrella(&["sweep", "flipped-counts", "--samples", "5", "--seed", "4"]);
    assert_ne!(f.stdout, g.stdout);
    assert!(stdout(&f).lines().skip(1).all(|l| !l.ends_with(',')));
}

#[test]
fn mesh_writes_obj_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("h.obj");
    let o = umbrella(&["mesh", "developable-flipped", "--resolution", "9x3", "--out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let obj = std::fs::read_to_string(&p).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 27);
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 32);
    assert!(o.stdout.is_empty());
}

#[test]
fn roots_report_for_the_conical_instance() {
    let o = umbrella(&["roots", "--coeffs", "-4,0,1"]);
    let text = stdout(&o);
    assert!(text.contains("F_k: case DegreeDrop, Sturm count 2"), "{text}");
}
