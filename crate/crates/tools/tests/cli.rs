use std::path::PathBuf;
use std::process::{Command, Output};

use jacobi_core::glue::{diff_op, self_closure};
use jacobi_core::lmo::{self, LinkingData, SeifertInput};
use jacobi_core::shapes::bead_ring;
use jacobi_core::{int, rat, Color, ColorSet, Monomial, Series};
use jacobi_tools::format::{parse_diagrams, parse_matrix, parse_series};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn jacobi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacobi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn series_out(args: &[&str]) -> Series {
    parse_series(&stdout(&jacobi(args)), &[]).unwrap()
}

fn load(series: &str, diagrams: &str) -> Series {
    let ds = parse_diagrams(&std::fs::read_to_string(fixture(diagrams)).unwrap()).unwrap();
    parse_series(&std::fs::read_to_string(fixture(series)).unwrap(), &ds).unwrap()
}

fn temp(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("jacobi-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn ring_example() {
    let (l, r, d) = (fixture("ring_left.series"), fixture("ring_right.series"), fixture("ring.dia"));
    let out = series_out(&["bracket", &l, &r, "--diagrams", &d, "--oracle"]);
    let ring = |k| Monomial::single(bead_ring(k).unwrap());
    let expected = Series::from_terms(
        ColorSet::empty(),
        6,
        [(ring(2).mul(&ring(3)), int(2)), (ring(5), int(2))],
    )
    .unwrap();
    assert_eq!(out, expected);
    let conn = series_out(&["bracket", &l, &r, "--diagrams", &d, "--connected"]);
    assert_eq!(conn, Series::monomial(ColorSet::empty(), 6, ring(5), int(2)));
}

#[test]
fn four_legged_circle() {
    let args = [
        "dop",
        &fixture("dumbbell.series"),
        &fixture("circle.series"),
        "--diagrams",
        &fixture("ring.dia"),
        "--oracle",
    ];
    let out = series_out(&args);
    let coefs: Vec<_> = out.terms().map(|(_, q)| q.clone()).collect();
    assert_eq!(coefs, [int(2), int(2)]);
    let direct = diff_op(
        &load("dumbbell.series", "ring.dia"),
        &load("circle.series", "ring.dia"),
    )
    .unwrap();
    assert_eq!(out, direct);
}

#[test]
fn closure_and_logarithm() {
    let (w, d) = (fixture("wheels.series"), fixture("shapes.dia"));
    let out = series_out(&["close", &w, "--diagrams", &d, "--oracle"]);
    assert_eq!(out, self_closure(&load("wheels.series", "shapes.dia")).unwrap());
    // the fixture is exp(-w/2) for the 2-wheel w
    let log = series_out(&["log", &w, "--diagrams", &d]);
    assert_eq!(log.len(), 1);
    assert_eq!(log.terms().next().unwrap().1, &rat(-1, 2));
}

#[test]
fn exp_log_round_trip_and_determinism() {
    let src = fixture("two_wheels.series");
    let e = temp("exp.series");
    assert!(jacobi(&["exp", &src, "--output", &e]).status.success());
    let first = std::fs::read(&e).unwrap();
    assert!(jacobi(&["exp", &src, "--output", &e]).status.success());
    assert_eq!(std::fs::read(&e).unwrap(), first);
    let back = series_out(&["log", &e]);
    assert_eq!(back, load("two_wheels.series", "shapes.dia"));
    let prim = series_out(&["primitive", &e, "--max-degree", "4"]);
    assert_eq!(prim, back.truncate(4));
}

#[test]
fn gaussian_integration() {
    let e = temp("z.series");
    assert!(jacobi(&["exp", &fixture("two_wheels.series"), "-o", &e]).status.success());
    let out = series_out(&["gaussian", &e, "--matrix", &fixture("linking.mat"), "--colors", "a", "b"]);
    let z = parse_series(&std::fs::read_to_string(&e).unwrap(), &[]).unwrap();
    let rows = parse_matrix(&std::fs::read_to_string(fixture("linking.mat")).unwrap()).unwrap();
    let colors = vec![Color::new("a").unwrap(), Color::new("b").unwrap()];
    let linking = LinkingData::new(colors, rows).unwrap();
    assert_eq!(out, lmo::gaussian_integrate(&z, &linking, 2).unwrap());
    assert!(!out.is_zero());
}

#[test]
fn lens_and_seifert() {
    for q in ["1", "2", "3"] {
        let out = series_out(&["lens", "--p", "1", "--q", q, "--max-degree", "3"]);
        assert!(out.is_zero());
        assert_eq!(out.trunc(), 3);
    }
    let out = series_out(&["lens", "--p", "5", "--q", "2", "--max-degree", "3", "--check-routes"]);
    assert_eq!(out, lmo::lens_space_primitive(5, 2, 3).unwrap());
    let mismatch = jacobi(&["lens", "--p", "2", "--q", "1", "--max-degree", "4", "--check-routes"]);
    assert_eq!(mismatch.status.code(), Some(1));

    let out = series_out(&[
        "seifert", "--b", "-1", "--fiber", "2/1", "--fiber", "3/1", "--fiber", "5/1", "--casson-walker", "-1/2",
    ]);
    let input = SeifertInput {
        b: -1,
        fibers: vec![(2, 1), (3, 1), (5, 1)],
        casson_walker: rat(-1, 2),
    };
    assert_eq!(out, lmo::seifert_primitive(&input, 2).unwrap());
}

#[test]
fn dot_export() {
    let shapes = fixture("shapes.dia");
    let count = |name: &str| {
        let text = stdout(&jacobi(&["export-dot", &shapes, "--name", name]));
        assert!(text.starts_with("graph ") && !text.contains("digraph"));
        let nodes = text.lines().filter(|l| l.contains("shape=")).count();
        let edges = text.lines().filter(|l| l.contains(" -- ")).count();
        (nodes, edges)
    };
    assert_eq!(count("theta"), (2, 3));
    assert_eq!(count("strut"), (2, 1));
    assert_eq!(count("wheel2"), (4, 4));
    let all = stdout(&jacobi(&["export-dot", &shapes]));
    assert_eq!(all.matches("graph ").count(), 3);
    assert_eq!(all, stdout(&jacobi(&["export-dot", &shapes])));
}

#[test]
fn verify_campaigns() {
    let out = stdout(&jacobi(&["verify", "--campaign", "main", "--max-degree", "2", "--trials", "6", "--seed", "3"]));
    assert!(out.contains("6/6 trials passed"), "{out}");
    let again = stdout(&jacobi(&["verify", "--campaign", "main", "--max-degree", "2", "--trials", "6", "--seed", "3"]));
    assert_eq!(out.split(" in ").next(), again.split(" in ").next());
    let partial = jacobi(&["verify", "--campaign", "partial", "--colors", "y"]);
    assert_eq!(partial.status.code(), Some(2));
    let bad = jacobi(&["verify", "--campaign", "sideways"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    // parse errors carry the file and line
    let broken = temp("broken.series");
    std::fs::write(&broken, "trunc 2\ncolors y\n1 * nowhere\n").unwrap();
    let out = jacobi(&["exp", &broken]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("broken.series:3:"), "{msg}");

    let missing = jacobi(&["exp", &temp("does-not-exist.series")]);
    assert_eq!(missing.status.code(), Some(2));
    assert_eq!(jacobi(&["frobnicate"]).status.code(), Some(2));

    // the fixture has a nonzero constant term, so exp is not defined
    let w = fixture("wheels.series");
    let d = fixture("shapes.dia");
    assert_eq!(jacobi(&["exp", &w, "--diagrams", &d]).status.code(), Some(3));
    // the result is only known up to degree 2
    assert_eq!(jacobi(&["close", &w, "--diagrams", &d, "--max-degree", "3"]).status.code(), Some(3));

    let struts = temp("struts.series");
    std::fs::write(
        &struts,
        "diagram s\nu 0 y\nu 1 y\ne 0.0 1.0\nend\ntrunc 4\ncolors y\n1 * s\n",
    )
    .unwrap();
    let out = jacobi(&["bracket", &struts, &struts]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bracket"));
    assert_eq!(jacobi(&["lens", "--p", "4", "--q", "2"]).status.code(), Some(3));
}
