use cycbound::code::CyclicCode;
use cycbound::field::FieldElement;
use cycbound::harness::{self, FamilyRule, DEFAULT_BUDGET};
use cycbound::series::Registry;
use cycbound_cli::{run, EXIT_DECODING_FAILURE, EXIT_INVALID, EXIT_OK};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("cycbound").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let (code, out, err) = cli(&a);
    assert_eq!(code, EXIT_OK, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn word(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn codeword(code: &CyclicCode, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let msg: Vec<FieldElement> = (0..code.k()).map(|_| code.base().random(&mut rng)).collect();
    code.encode(&msg).iter().map(|x| x.index()).collect()
}

#[test]
fn analyze_marks_symmetric_reversible_lengths() {
    let (code, out, _) = cli(&["analyze", "q=2", "n=17", "cosets=1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("n = 17, k = 9, q = 2"), "{out}");
    assert!(out.lines().any(|l| l.starts_with("reversibility:") && l.ends_with(" *")), "{out}");
    let v = json(&["analyze", "q=2", "n=17", "cosets=1"]);
    assert_eq!(v["k"], 9);
    assert_eq!(v["defining_set"].as_array().unwrap().len(), 8);
}

#[test]
fn bounds_report_witnesses() {
    let (code, out, _) = cli(&["bounds", "q=2", "n=17", "cosets=1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().any(|l| l.starts_with("BCH 4")), "{out}");
    assert!(out.lines().any(|l| l.starts_with("RATIONAL 5")), "{out}");
    assert!(out.contains("BOSTON-QUESTION"));
    let v = json(&["bounds", "q=2", "n=17", "cosets=1"]);
    assert_eq!(v["rational"]["value"], 5);
    assert_eq!(v["rational"]["b"], 13);
    assert_eq!(v["ht"]["value"], 5);
}

#[test]
fn decode_corrects_two_flips() {
    let code = CyclicCode::new(17, 2, &[1]).unwrap();
    let sent = codeword(&code, 1);
    let mut r = sent.clone();
    r[3] ^= 1;
    r[11] ^= 1;
    let arg = format!("word={}", word(&r));
    let (status, out, err) = cli(&["decode", "q=2", "n=17", "cosets=1", &arg]);
    assert_eq!(status, EXIT_OK, "{err}");
    assert!(out.contains("status: ok"));
    let v = json(&["decode", "q=2", "n=17", "cosets=1", &arg]);
    assert_eq!(v["positions"], serde_json::json!([3, 11]));
    let corrected: Vec<u64> = serde_json::from_value(v["corrected"].clone()).unwrap();
    assert_eq!(corrected, sent);
}

#[test]
fn decode_reports_failure_with_exit_one() {
    let code = CyclicCode::new(17, 2, &[1]).unwrap();
    let sent = codeword(&code, 2);
    let mut failed = false;
    'search: for a in 0..17 {
        for b in a + 1..17 {
            for c in b + 1..17 {
                let mut r = sent.clone();
                for p in [a, b, c] {
                    r[p] ^= 1;
                }
                let arg = format!("word={}", word(&r));
                let (status, out, _) = cli(&["decode", "q=2", "n=17", "cosets=1", &arg]);
                if status == EXIT_DECODING_FAILURE {
                    assert!(out.contains("status: decoding-failure") && out.contains("reason:"), "{out}");
                    failed = true;
                    break 'search;
                }
                assert_eq!(status, EXIT_OK);
            }
        }
    }
    assert!(failed);
}

#[test]
fn decoder_self_test_passes() {
    let (status, out, _) = cli(&["decode", "q=3", "n=8", "cosets=1"]);
    assert_eq!(status, EXIT_OK);
    assert!(out.contains("failures: 0"), "{out}");
}

#[test]
fn malformed_input_names_the_token() {
    let (status, _, err) = cli(&["bounds", "q=2", "n=17", "cosets=x"]);
    assert_eq!(status, EXIT_INVALID);
    assert!(err.contains("cosets=x"), "{err}");
    let (status, _, err) = cli(&["decode", "q=2", "n=17", "cosets=1", "word=1,0"]);
    assert_eq!(status, EXIT_INVALID);
    assert!(err.contains("17"), "{err}");
    let (status, _, err) = cli(&["distance", "q=2", "n=17", "cosets=1", "--bogus"]);
    assert_eq!(status, EXIT_INVALID);
    assert!(err.to_lowercase().contains("usage"), "{err}");
}

#[test]
fn distance_in_text_and_json() {
    let (status, out, _) = cli(&["distance", "q=2", "n=17", "cosets=1"]);
    assert_eq!(status, EXIT_OK);
    assert_eq!(out.trim(), "d = 5");
    let v = json(&["distance", "q=2", "n=17", "cosets=1"]);
    assert_eq!(v, serde_json::json!({"status": "exact", "d": 5}));
    let v = json(&["distance", "q=2", "n=45", "cosets=-5,-3,3,5"]);
    assert_eq!(v["status"], "over-budget");
}

#[test]
fn tabulate_csv_matches_library() {
    let (status, out, _) = cli(&["tabulate", "--lengths", "15,17,23"]);
    assert_eq!(status, EXIT_OK);
    let rows = harness::tabulate(&[15, 17, 23], 2, &Registry::tabulation(), FamilyRule::FirstValid, DEFAULT_BUDGET).unwrap();
    assert_eq!(out, harness::to_csv(&rows));
    let v = json(&["tabulate", "--lengths", "8,11", "--q", "3"]);
    assert_eq!(v.as_array().unwrap().len(), 2);
}
