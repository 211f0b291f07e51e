use serde_json::Value;
use surfint::cvp::{ComponentData, ComponentKind};
use surfint::index::{ClassIndex, IndexedComponent};
use surfint_cli::{emit_grid_svg, normalize_word_text, run_with_io, EXIT_OK, EXIT_USAGE};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("surfint").chain(args.iter().copied());
    let code = run_with_io(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, EXIT_OK, "stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

const MU: &str = "4 3 4 -1";
const NU: &str = "-4 3 4 -3";

#[test]
fn intersect_worked_example() {
    let v = json(&["intersect", "--genus", "2", "--word1", MU, "--word2", NU]);
    assert_eq!(v["result"], 2);
    assert_eq!(v["essential_count"], 2);
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 10);
    let triples: Vec<(i64, i64, i64, i64)> = comps
        .iter()
        .map(|c| {
            (
                c["k"].as_i64().unwrap(),
                c["l"].as_i64().unwrap(),
                c["q"].as_i64().unwrap(),
                c["index"].as_i64().unwrap(),
            )
        })
        .collect();
    assert_eq!(triples[0], (1, 1, 2, 1));
    assert_eq!(triples[7], (4, 3, -2, -1));
}

#[test]
fn classes_lists_components_only() {
    let v = json(&["classes", "--genus", "2", "--word1", MU, "--word2", NU]);
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 10);
    let keys: Vec<_> = arr[0].as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["index", "k", "l", "q"]);
}

#[test]
fn reduce_rewrites_positive_relator_half() {
    let v = json(&["reduce", "--genus", "2", "--word", "1 2 3 4"]);
    assert_eq!(v["normal_form"], "4 3 2 1");
}

#[test]
fn cyclic_reduce_reports_root_and_exponent() {
    let v = json(&["cyclic-reduce", "--genus", "2", "--word", "-2,1,1,1,2"]);
    assert_eq!(v["representative"], "1 1 1");
    assert_eq!(v["length"], 3);
    assert_eq!(v["root"], "1");
    assert_eq!(v["exponent"], 3);

    let v = json(&["cyclic-reduce", "--genus", "2", "--word", "1 -1"]);
    assert_eq!(v["length"], 0);
    assert!(v["exponent"].is_null());
}

#[test]
fn self_intersect_of_a_cube() {
    let v = json(&["self-intersect", "--genus", "2", "--word", "1 1 1"]);
    assert_eq!(v["result"], 2);
    let v = json(&["self-intersect", "--genus", "2", "--word", "1"]);
    assert_eq!(v["result"], 0);
}

#[test]
fn genus_one_is_a_usage_error() {
    let (code, out, err) = run(&["intersect", "--genus", "1", "--word1", "1", "--word2", "2"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert!(err.contains("genus must be ≥ 2"), "{err}");
}

#[test]
fn bad_input_is_a_usage_error() {
    for args in [
        &["reduce", "--genus", "2", "--word", "1 x"][..],
        &["reduce", "--genus", "2", "--word", "0"],
        &["reduce", "--genus", "2", "--word", "5"],
        &["reduce", "--genus", "2"],
        &["frobnicate"],
        &["reduce", "--genus", "2", "--word", "1", "--svg", "x.svg"],
        &["verify-hyperbolic", "--genus", "2", "--tol", "-1"],
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty());
    }
}

#[test]
fn verify_commands_succeed() {
    let v = json(&["verify-basis", "--genus", "2", "--max-s", "2"]);
    assert_eq!(v["failures"], Value::Array(vec![]));
    assert!(v["pairs_checked"].as_u64().unwrap() > 0);
    assert!(v["compositions_found"].as_u64().unwrap() > 0);

    let v = json(&["verify-hyperbolic", "--genus", "3", "--tol", "1e-9"]);
    assert_eq!(v["failures"], Value::Array(vec![]));
    assert!(v["fixed_point_max_error"].as_f64().unwrap() < 1e-9);
    assert!(v["relation_error"].as_f64().unwrap() < 1e-9);
}

#[test]
fn pretty_and_compact_json_agree() {
    let args = ["intersect", "--genus", "2", "--word1", MU, "--word2", NU];
    let (_, compact, _) = run(&args);
    let mut pretty_args = args.to_vec();
    pretty_args.push("--json-pretty");
    let (_, pretty, _) = run(&pretty_args);
    assert!(pretty.lines().count() > 1);
    assert_eq!(compact.lines().count(), 1);
    let a: Value = serde_json::from_str(&compact).unwrap();
    let b: Value = serde_json::from_str(&pretty).unwrap();
    assert_eq!(a, b);
    // deterministic
    assert_eq!(run(&args).1, compact);
}

#[test]
fn word_text_round_trip_only_normalizes_whitespace() {
    assert_eq!(
        normalize_word_text("  4,3\t4 , -1 ", 2).unwrap(),
        "4 3 4 -1"
    );
    assert_eq!(normalize_word_text("", 2).unwrap(), "");
}

#[test]
fn svg_of_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.svg");
    let p = path.to_str().unwrap();
    let (code, _, err) = run(&[
        "intersect",
        "--genus",
        "2",
        "--word1",
        MU,
        "--word2",
        NU,
        "--svg",
        p,
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches(r#"<g class="component""#).count(), 10);
    assert_eq!(svg.matches(r#"class="index-label""#).count(), 2);
    assert!(svg.contains(">+1</text>") && svg.contains(">-1</text>"));
}

#[test]
fn svg_of_empty_component_list_is_bare_lattice() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.svg");
    emit_grid_svg(&[], 3, 2, &path).unwrap();
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<circle").count(), 6);
    assert!(!svg.contains(r#"class="component""#));
}

#[test]
fn svg_of_single_infinite_component_is_one_diagonal() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("one.svg");
    let comp = IndexedComponent {
        component: ComponentData {
            anchor_k: 1,
            anchor_l: 1,
            kind: ComponentKind::InfiniteParallel,
        },
        index: ClassIndex::new(0).unwrap(),
    };
    emit_grid_svg(&[comp], 1, 1, &path).unwrap();
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_eq!(svg.matches(r#"<g class="component""#).count(), 1);
    assert_eq!(svg.matches("<line").count(), 1);
}

#[test]
fn unwritable_svg_path_is_reported() {
    let (code, _, err) = run(&[
        "intersect",
        "--genus",
        "2",
        "--word1",
        MU,
        "--word2",
        NU,
        "--svg",
        "/nonexistent/dir/x.svg",
    ]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("cannot write"));
}
