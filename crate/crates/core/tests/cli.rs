use galcover::cli::{run_from_args, EXIT_FAIL, EXIT_OK, EXIT_PARSE, EXIT_UNSUPPORTED};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["galcover"];
    full.extend_from_slice(args);
    let code = run_from_args(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn strong_on_kummer_example() {
    let (code, out, _) = run(&["verify-strong", "--builtin", "kummer:p=5,n=2,f=x(x-1)"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let rows: Vec<_> = out.lines().filter(|l| l.starts_with('(')).collect();
    assert_eq!(rows.len(), 2);
    assert!(out.contains("convention: standard"));
}

#[test]
fn gauss_quadratic_over_f3() {
    let (code, out, _) = run(&["gauss", "--p", "3", "--r", "1", "--char", "1", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"][0]["digit_sum"], "1/2");
    assert_eq!(v["rows"][0]["padic"], "1/2");
    assert_eq!(v["rows"][0]["product_identity"], true);
}

#[test]
fn gauss_rejects_out_of_range_character() {
    assert_eq!(run(&["gauss", "--p", "5", "--char", "4"]).0, EXIT_PARSE);
    assert_eq!(run(&["gauss", "--p", "6"]).0, EXIT_PARSE);
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir().join(format!("galcover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"kummer\": {\"p\": 5,").unwrap();
    let (code, _, err) = run(&["verify-weak", "--input", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_PARSE);
    assert!(err.contains("line"), "{err}");

    assert_eq!(run(&["verify-strong", "--builtin", "as:p=3,f=1/x^2"]).0, EXIT_UNSUPPORTED);
    assert_eq!(run(&["verify-strong"]).0, EXIT_PARSE);
    assert_eq!(run(&["frobnicate"]).0, EXIT_PARSE);
    assert_eq!(run(&["verify-strong", "--builtin", "kummer:p=5,n=2,f=x(x-1)", "--oracle", "nope"]).0, EXIT_PARSE);

    // e_t = 3 with p = 7 but no primitive cube root of unity in the residue field of q
    let deep = dir.join("deep.json");
    std::fs::write(
        &deep,
        r#"{"datum": {"group": [4], "p": 2, "places": [
            {"label": "a", "degree": 1, "e_t": 1, "e_w": 4, "inertia": [[1]], "tame_generator": [0],
             "conductors": [[[1], 3], [[2], 3], [[3], 3]]}]}}"#,
    )
    .unwrap();
    let code = run(&["verify-weak", "--input", deep.to_str().unwrap()]).0;
    assert!(code == EXIT_UNSUPPORTED || code == EXIT_PARSE, "{code}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn json_input_matches_builtin() {
    let dir = std::env::temp_dir().join(format!("galcover-cli-json-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k.json");
    std::fs::write(&path, r#"{"kummer": {"p": 5, "n": 2, "f": "x(x-1)"}}"#).unwrap();
    let a = run(&["epsilon", "--input", path.to_str().unwrap(), "--format", "json"]);
    let b = run(&["epsilon", "--builtin", "kummer:p=5,n=2,f=x(x-1)", "--format", "json"]);
    assert_eq!(a.0, EXIT_OK);
    assert_eq!(a.1, b.1);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn json_is_deterministic() {
    let args = ["verify-all", "--builtin", "kummer:p=13,n=4,f=x(x-2)^3", "--format", "json", "--oracle", "both"];
    let (code, first, _) = run(&args);
    assert_eq!(code, EXIT_OK);
    for _ in 0..3 {
        assert_eq!(run(&args).1, first);
    }
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn inverted_convention_is_reported() {
    let (code, out, _) = run(&["epsilon", "--builtin", "kummer:p=7,n=3,f=x", "--convention", "inverted"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("convention: inverted"));
    // the strong formula is stated for the standard pairing; this cover is not
    // symmetric under chi -> chi^-1
    let (code, _, _) = run(&["verify-strong", "--builtin", "kummer:p=5,n=4,f=x(x^2+2)", "--convention", "inverted"]);
    assert_eq!(code, EXIT_FAIL);
}

#[test]
fn euler_and_corpus_commands() {
    let (code, out, _) = run(&["euler", "--builtin", "kummer:p=5,n=4,f=x(x^2+2)"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("g_X = 3"));
    let (code, out, _) = run(&["corpus", "--synthetic", "8", "--seed", "3"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("synthetic#7"));
}

#[test]
fn binary_forwards_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_galcover");
    let ok = std::process::Command::new(bin)
        .args(["verify-strong", "--builtin", "kummer:p=5,n=2,f=x(x-1)"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = std::process::Command::new(bin).args(["verify-strong", "--builtin", "kummer:p=5,n=2,f=x("]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
