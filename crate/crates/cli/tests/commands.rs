use std::process::Command;

use qfun_cli::{parse, run, AlgebraKind, Context};
use serde_json::Value;

fn qfun(args: &[&str]) -> qfun_cli::Output {
    run(std::iter::once("qfun").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = qfun(&a);
    let v = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}{}", out.stdout, out.stderr));
    (out.code, v)
}

#[test]
fn nf_reorders_commuting_generators() {
    let out = qfun(&["nf", "--n", "1", "--algebra", "M", "x[2,1]x[1,2]"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout.trim(), "x[1,2]x[2,1]");
}

#[test]
fn detq_at_n2_has_six_terms() {
    let (code, v) = json(&["detq", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "qfun/1");
    assert_eq!(v["result"]["value"]["value"]["terms"].as_array().unwrap().len(), 6);
    let text = qfun(&["detq", "--n", "2"]).stdout;
    assert_eq!(text.matches("x[1,").count(), 6);
}

#[test]
fn verify_hopf_n1_passes_with_json_report() {
    let out = qfun(&["verify", "hopf", "--n", "1"]);
    assert_eq!(out.code, 0);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["schema"], "qfun/1");
    assert_eq!(v["summary"]["failed"], 0);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    let ids: Vec<&str> = v["errata"].as_array().unwrap().iter().map(|e| e["id"].as_str().unwrap()).collect();
    for want in ["antipode-exponent", "integer-form-index-ranges", "w0-word", "n-index"] {
        assert!(ids.contains(&want), "{ids:?}");
    }
}

#[test]
fn failing_suite_exits_one_but_still_reports() {
    // the GL central element does not behave as displayed
    let (code, v) = json(&["verify", "cobracket", "--n", "1"]);
    assert_eq!(code, 1);
    assert!(v["summary"]["failed"].as_u64().unwrap() > 0);
    assert!(v["summary"]["passed"].as_u64().unwrap() > 0);
}

#[test]
fn errata_from_the_catalog_reach_the_report() {
    let (_, v) = json(&["verify", "intform", "--n", "1"]);
    assert!(v["errata"].as_array().unwrap().len() > 4);
}

#[test]
fn usage_and_parse_errors_exit_two() {
    for args in [
        &["nf", "x[3,1]"][..],
        &["nf", "x[1,2"],
        &["bogus"],
        &["verify", "nope"],
        &["nf", "--algebra", "Q", "x[1,1]"],
        &["nf", "--n", "0", "x[1,1]"],
        &["antipode", "x[1,1]"],
        &["rootvec", "--n", "2", "--root", "2,1"],
        &["mu", "--gen", "y:1,2"],
    ] {
        let out = qfun(args);
        assert_eq!(out.code, 2, "{args:?}: {}", out.stdout);
        assert!(out.stderr.contains("error"), "{args:?}");
    }
}

#[test]
fn help_is_not_an_error() {
    let out = qfun(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("verify"));
}

#[test]
fn hopf_operations_on_generators() {
    assert_eq!(qfun(&["coproduct", "x[1,2]"]).stdout.trim(), "x[1,1] ⊗ x[1,2] + x[1,2] ⊗ x[2,2]");
    assert_eq!(qfun(&["counit", "x[1,1]x[2,2] + x[1,2]"]).stdout.trim(), "1");
    assert_eq!(qfun(&["antipode", "--algebra", "SL", "x[1,2]"]).stdout.trim(), "-q^-1*x[1,2]");
    assert_eq!(qfun(&["antipode", "--algebra", "SL", "x[1,1]"]).stdout.trim(), "x[2,2]");
    assert_eq!(qfun(&["nf", "--algebra", "SL", "detq"]).stdout.trim(), "1");
    assert_eq!(qfun(&["nf", "--algebra", "GL", "detq^-1 detq x[1,2]"]).stdout.trim(), "x[1,2]");
}

#[test]
fn mul_matches_nf_of_product() {
    let a = qfun(&["mul", "--n", "2", "x[3,1] x[2,2]", "x[1,3] + q x[2,1]"]).stdout;
    let b = qfun(&["nf", "--n", "2", "(x[3,1] x[2,2]) (x[1,3] + q x[2,1])"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn printed_results_parse_back_to_the_same_element() {
    for (alg, src) in [
        ("M", "x[2,2] x[1,1] x[2,1]"),
        ("SL", "x[2,2] x[1,1] + 1/3 x[1,2]^2"),
        ("SL", "S(x[1,2] x[2,1])"),
        ("GL", "S(x[1,1])"),
        ("Uq", "E[1] F[1]"),
        ("B+", "x[2,2] x[1,1] x[1,2]"),
    ] {
        let first = qfun(&["nf", "--algebra", alg, src]);
        assert_eq!(first.code, 0, "{src}: {}", first.stderr);
        let text = first.stdout.trim().to_string();
        let kind: AlgebraKind = alg.parse().unwrap();
        parse(&text, &Context::new(1, kind)).unwrap_or_else(|e| panic!("{text}: {e}"));
        let second = qfun(&["nf", "--algebra", alg, &text]);
        assert_eq!(second.stdout.trim(), text, "{alg}: {src}");
    }
}

#[test]
fn basis_counts_per_degree() {
    let (_, v) = json(&["basis", "--n", "1", "--algebra", "SL", "--max-degree", "3"]);
    let counts: Vec<u64> = v["result"]["degrees"].as_array().unwrap().iter().map(|d| d["count"].as_u64().unwrap()).collect();
    // dim of the degree-d part of k[a,b,c,d]/(ad - bc - 1) filtered by degree: (d+1)^2
    assert_eq!(counts, [1, 4, 9, 16]);
    let (_, v) = json(&["basis", "--n", "1", "--max-degree", "2"]);
    let counts: Vec<u64> = v["result"]["degrees"].as_array().unwrap().iter().map(|d| d["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, [1, 4, 10]);
}

#[test]
fn rootvec_methods_agree() {
    let (code, v) = json(&["rootvec", "--n", "3", "--root", "1,4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["equal"], true);
    let (_, braid) = json(&["rootvec", "--n", "3", "--root", "1,4", "--method", "braid"]);
    assert_eq!(braid["result"]["braid"], v["result"]["iterated"]);
    assert!(braid["result"].get("iterated").is_none());
}

#[test]
fn mu_leading_terms() {
    let out = qfun(&["mu", "--n", "1", "--gen", "r:1,2", "--collapse"]);
    assert!(out.stdout.trim_end().ends_with("at q = 1: -F[1] ⊗ 1"), "{}", out.stdout);
    let out = qfun(&["mu", "--n", "1", "--gen", "r:2,1", "--collapse"]);
    assert!(out.stdout.trim_end().ends_with("at q = 1: 1 ⊗ E[1]"), "{}", out.stdout);
    let out = qfun(&["mu", "--n", "1", "x[1,2]"]);
    assert!(!out.stdout.contains("at q = 1"));
}

#[test]
fn specialize_and_cobracket() {
    assert_eq!(qfun(&["specialize", "--algebra", "SL", "r[1,2]"]).stdout.trim(), "-f[2,1]");
    assert_eq!(qfun(&["specialize", "--algebra", "SL", "phi[1]"]).stdout.trim(), "h[1]");
    assert_eq!(qfun(&["specialize", "--algebra", "GL", "chi[2]"]).stdout.trim(), "c");
    let quantum = qfun(&["cobracket", "--algebra", "SL", "r[1,2]"]).stdout;
    let classical = qfun(&["cobracket", "--algebra", "Uh", "-f[2,1]"]).stdout;
    assert_eq!(quantum, classical);
}

#[test]
fn reports_are_deterministic_given_seed() {
    let a = qfun(&["verify", "pbw", "--n", "2", "--seed", "7"]);
    let b = qfun(&["verify", "pbw", "--n", "2", "--seed", "7"]);
    assert_eq!(a, b);
    assert_eq!(a.code, 0);
}

#[test]
fn binary_honours_term_cap() {
    let bin = env!("CARGO_BIN_EXE_qfun");
    let out = Command::new(bin).args(["detq", "--n", "2"]).env("QFUN_MAX_TERMS", "5").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("QFUN_MAX_TERMS"));
    let out = Command::new(bin).args(["detq", "--n", "2"]).env("QFUN_MAX_TERMS", "6").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(bin).args(["verify", "convex", "--n", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn every_report_matches_the_published_schema() {
    let schema: Value = serde_json::from_str(include_str!("../schema/qfun-1.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let runs: [&[&str]; 13] = [
        &["nf", "x[2,1]x[1,2]"],
        &["mul", "x[1,1]", "x[2,2]"],
        &["coproduct", "--algebra", "Uq", "E[1]"],
        &["antipode", "--algebra", "GL", "x[1,2]"],
        &["counit", "--algebra", "Uh", "h[1] + 2"],
        &["detq", "--n", "2"],
        &["basis", "--algebra", "SL", "--max-degree", "2"],
        &["rootvec", "--n", "2", "--root", "1,3", "--side", "f"],
        &["mu", "--gen", "r:1,2", "--collapse"],
        &["cobracket", "--algebra", "GL", "chi[1]"],
        &["specialize", "--algebra", "SL", "psi[1]"],
        &["verify", "all", "--n", "1"],
        &["verify", "thm53", "--n", "2", "--seed", "3"],
    ];
    for args in runs {
        let (_, v) = json(args);
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| format!("{} at {}", e, e.instance_path())).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
    let (_, mut v) = json(&["verify", "convex", "--n", "2"]);
    v.as_object_mut().unwrap().remove("summary");
    assert!(!validator.is_valid(&v));
}
