use genus2_galois_cli::run;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("genus2-galois").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn decompose_d4_markdown() {
    let (code, out, _) = invoke(&["decompose", "--group", "D4", "--order", "8", "--format", "md"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "|H| | D_0 | D_2 | D_4"), "{out}");
    assert!(out.lines().any(|l| l == "8 | 1 | 3 | 1"), "{out}");
}

#[test]
fn empty_decompositions_exit_cleanly() {
    for group in ["C2", "C2xC2"] {
        let (code, out, err) = invoke(&["decompose", "--group", group]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains("decomposition is empty"), "{out}");
    }
}

#[test]
fn verify_all_reports_the_known_errata() {
    let (code, out, _) = invoke(&["verify", "--all"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("C10: table CleanWithErrata"), "{out}");
    assert!(out.contains("KnownErratum"));
    assert!(out.contains("C10: theorem 1 part 1 skipped"));
    assert!(!out.contains("FAILED"));
}

#[test]
fn unknown_group_is_a_usage_error() {
    let (code, _, err) = invoke(&["subgroups", "--group", "A5"]);
    assert_eq!(code, 2);
    assert!(err.contains("--group"), "{err}");
    assert!(err.contains("UnknownGroup"), "{err}");
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(invoke(&["decompose", "--group", "D6", "--format", "xml"]).0, 2);
    assert_eq!(invoke(&["certificate", "--group", "D6", "--pair", "13"]).0, 2);
    assert_eq!(invoke(&["verify"]).0, 2);
    assert_eq!(invoke(&["frobnicate"]).0, 2);
    assert_eq!(invoke(&["--help"]).0, 0);
}

#[test]
fn domain_errors_surface_their_names() {
    let (code, _, err) = invoke(&["decompose", "--group", "D4", "--order", "4"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("NotVeryAmple"), "{err}");
    let (code, _, err) = invoke(&["decompose", "--group", "D4", "--subgroup-index", "99"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("NoSuchSubgroup"), "{err}");
    // #1 is a non-central involution: its quotient is not rational.
    let (code, _, err) = invoke(&["certificate", "--group", "D4", "--pair", "1:9"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("NotInLedger"), "{err}");
}

#[test]
fn certificate_for_the_d6_example() {
    // Indices from the deterministic enumeration: #13 is an S3, #10 a C2²,
    // #12 the cyclic C6, #8 the C3 and #4 the centre.
    let (code, out, _) = invoke(&["certificate", "--group", "D6", "--pair", "13:10"]);
    assert_eq!(code, 0);
    assert!(out.contains("= 2 [Proved]"), "{out}");
    assert!(out.contains("EqualVia via #8 (C3)"), "{out}");
    assert!(out.contains("D#12 (C6)"), "{out}");
    assert!(out.contains("DiffIsClass via #4 (C2)"), "{out}");
}

#[test]
fn lattice_dot_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d6.dot");
    let (code, out, _) =
        invoke(&["lattice-dot", "--group", "D6", "--highlight", "13:10", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("graph"));
    assert!(dot.contains("color=red"));
    genus2_galois::report::validate_dot(&dot).unwrap();
}

#[test]
fn json_and_csv_outputs() {
    let (code, out, _) = invoke(&["decompose", "--group", "GL2F3_48", "--order", "16", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.lines().nth(1).unwrap().starts_with("16,2,3,0,4,0,0,0,7,0,12,9,4,1"), "{out}");
    let (code, out, _) = invoke(&["decompose", "--group", "D6", "--subgroup-index", "15", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"order_of_H\": 12"));
    assert!(out.contains("\"N_label\""));
}

#[test]
fn output_is_stable_across_runs() {
    for args in [
        &["verify", "--all"][..],
        &["list-groups"],
        &["subgroups", "--group", "GL2F3_48"],
        &["lattice-dot", "--group", "C3sdD4_24"],
    ] {
        assert_eq!(invoke(args), invoke(args));
    }
}
