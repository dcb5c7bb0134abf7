use std::process::{Command, Output};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use origami_cli::record::{GenerateDoc, PreviewDoc};
use origami_core::construction::generate;
use origami_core::SlopeSet;
use serde_json::Value;

fn origami(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_origami"))
        .args(args)
        .env_remove("ORIGAMI_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

/// Exact value of a decimal string such as `-1.25`.
fn parse_decimal(s: &str) -> BigRational {
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits = BigInt::from_str(&format!("{}{}", int, frac)).unwrap();
    let q = BigRational::new(digits, BigInt::from(10u32).pow(frac.len() as u32));
    if neg {
        -q
    } else {
        q
    }
}

#[test]
fn ring_verdicts() {
    for slopes in ["0,1/3,2/3", "0,1/3,1/4,1/5"] {
        let o = origami(&["ring", "--slopes", slopes]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert!(stdout(&o).contains("verdict: Ring"));
    }
    let o = origami(&["ring", "--slopes", "0,1/4,1/3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&o);
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["verdict"], "NotRing");
    assert_eq!(doc["coherent"], true);
    assert_eq!(doc["criteria"].as_array().unwrap().len(), 4);
}

#[test]
fn sqrt3_witness_is_printed() {
    let o = origami(&["member", "--slopes", "0,1/3,1/4,1/5", "sqrt(3)"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("verdict: ProvenIn"));
    assert!(text.contains("a=5, b=4"), "{}", text);

    let o = origami(&["member", "--slopes", "0,1/3,1/4,1/5", "sqrt(3)", "--format", "json"]);
    let doc = json(&o);
    assert_eq!(doc["verdict"], "ProvenIn");
    assert_eq!(doc["witness"]["exponents"], serde_json::json!([5, 4]));
    assert_eq!(doc["witness"]["denominators"][0]["exponent_name"], "a");
}

#[test]
fn exit_codes() {
    // decided negative
    let o = origami(&["member", "--slopes", "0,1/3,2/3", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ProvenNotIn"));
    // search bounds too small to find the witness
    let o = origami(&["member", "--slopes", "0,1/3,1/4,1/5", "sqrt(3)", "--max-den-exp", "1", "--max-num-deg", "4"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    assert!(stdout(&o).contains("Unknown"));
    // usage errors
    assert_eq!(origami(&["ring"]).status.code(), Some(2));
    assert_eq!(origami(&["ring", "--slopes", "0,1/3", "--bogus"]).status.code(), Some(2));
    assert_eq!(origami(&["ring", "--slopes", "0,1/3,2/3", "--format", "csv"]).status.code(), Some(2));
    // runtime error
    let o = origami(&["ring", "--slopes", "0,1/3,2/3", "--out", "/nonexistent/dir/out.txt"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn error_messages_name_the_problem() {
    let o = origami(&["ring", "--slopes", "0,1/3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("0 ∈ U and |U| ≥ 3"));

    let o = origami(&["ring", "--slopes", "0,1.0472,2/3"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("1.0472") && err.contains("--float-preview"), "{}", err);

    let o = origami(&["member", "--slopes", "0,1/3,2/3", "2 * cosh(1)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`cosh`"));

    let o = origami(&["ring", "--slopes", "0,1/3,abc"]);
    assert!(stderr(&o).contains("abc"));
}

#[test]
fn json_points_round_trip_exactly() {
    let slopes = "0,1/4,1/2,3/4";
    let o = origami(&["generate", "--slopes", slopes, "--levels", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: GenerateDoc = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc.schema, 1);
    assert!(doc.certified);
    let u: SlopeSet = slopes.parse().unwrap();
    let levels = generate(&u, 2, 50_000);
    let last = levels.last().unwrap();
    assert_eq!(doc.points.len(), last.len());
    assert_eq!(doc.levels.iter().map(|l| l.points).collect::<Vec<_>>(), vec![2, 8, 39]);
    let tol = BigRational::new(1.into(), BigInt::from(10u64.pow(12)));
    for rec in &doc.points {
        let pt = rec.to_point(u.frame()).unwrap();
        assert!(last.contains(&pt));
        assert!(levels[rec.level].contains(&pt));
        assert!(rec.level == 0 || !levels[rec.level - 1].contains(&pt));
        // decimals are within 1e-12 of the exact embedding
        let c = pt.to_cartesian();
        for (dec, exact) in [(&rec.re, &c.x), (&rec.im, &c.y)] {
            let iv = exact.refine(&BigRational::new(1.into(), BigInt::from(10u64.pow(15))));
            assert!((parse_decimal(dec) - iv.midpoint()).abs() < tol, "{} vs {}", dec, exact);
        }
    }
}

#[test]
fn csv_export() {
    let o = origami(&["generate", "--slopes", "0,1/3,2/3", "--levels", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("level,re,im,conductor,r,s"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().any(|r| r.starts_with("1,0.5,0.866025403784439,")));
}

#[test]
fn float_preview_is_labelled() {
    let o = origami(&["generate", "--float-preview", "--slopes", "0,1,2", "--levels", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("NOT certified"));
    let o = origami(&["generate", "--float-preview", "--slopes", "0,1/3,2/3", "--levels", "3", "--format", "json"]);
    let doc: PreviewDoc = serde_json::from_slice(&o.stdout).unwrap();
    assert!(!doc.certified);
    assert_eq!(doc.levels.iter().map(|l| l.points).collect::<Vec<_>>(), vec![2, 4, 8, 20]);
}

#[test]
fn config_file_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("origami.toml");
    std::fs::write(&path, "slopes = [\"0\", \"1/3\", \"2/3\"]\nformat = \"json\"\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_origami"))
        .arg("ring")
        .env("ORIGAMI_CONFIG", &path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(json(&o)["verdict"], "Ring");

    // flags win over the file, and --out writes the body to disk
    let out = dir.path().join("ring.txt");
    let o = Command::new(env!("CARGO_BIN_EXE_origami"))
        .args(["ring", "--format", "text", "--out"])
        .arg(&out)
        .env("ORIGAMI_CONFIG", &path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&out).unwrap().contains("verdict: Ring"));

    std::fs::write(&path, "slopes = \"0,1/3,2/3\"\nlevles = 3\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_origami")).arg("ring").env("ORIGAMI_CONFIG", &path).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_and_pvalues() {
    let o = origami(&["classify", "--slopes", "0,1/3,2/3"]);
    assert!(stdout(&o).contains("discrete"));
    let o = origami(&["classify", "--slopes", "0,1/3,1/4,1/5", "--format", "json"]);
    assert_eq!(json(&o)["classification"], "dense");

    let o = origami(&["pvalues", "--slopes", "0,1/3,1/4,1/5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&o);
    let rows = doc["pvalues"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let fifth = rows.iter().find(|r| r["slope"] == "1/5").unwrap();
    assert_eq!(
        fifth["minimal_polynomial"],
        "X^8 + 4X^7 - 8X^6 - 20X^5 + (104/5)X^4 + 16X^3 - 8X^2 - (16/5)X + 16/25"
    );
    assert_eq!(doc["delta"].as_array().unwrap().len(), 6);

    let o = origami(&["pvalues", "--slopes", "0,1/3,1/4,1/5", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 4);
}
