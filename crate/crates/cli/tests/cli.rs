use std::io::Write;
use std::process::{Command, Output};

use nijenhuis::{OperatorField, Poly, Vars};
use serde_json::Value;

fn nij(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nij"))
        .args(args)
        .env_remove("NIJ_MAXDEG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn batch_file(lines: &[&str]) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    for l in lines {
        writeln!(f, "{l}").unwrap();
    }
    f
}

#[test]
fn example_operator_is_nijenhuis() {
    let o = nij(&["check-nijenhuis", "0, -x; -x, -2*y"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "torsion ≡ 0");
    let o = nij(&["check-nijenhuis", "y, 0; 0, x", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["is_nijenhuis"], false);
    assert_eq!(v["torsion"][0]["value"], "-x + y");
}

#[test]
fn verdict_exit_codes() {
    let o = nij(&["verdict", "--form", "b1", "--alpha", "-1", "--category", "smooth"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "Degenerate (Σ2)");
    let o = nij(&["verdict", "--form", "c5+", "--category", "analytic"]);
    assert_eq!(o.status.code(), Some(0));
    let o = nij(&["verdict", "--form", "b1", "--cf", "[-1; 2, 7, 1, ...]", "--category", "analytic"]);
    assert_eq!(o.status.code(), Some(2));
    let o = nij(&["verdict", "--form", "b1", "--cf", "[-1; (1)]", "--category", "analytic", "--json"]);
    assert_eq!(json(&o)["value"], "NonDegenerate");
    let o = nij(&["verdict", "--form", "b9"]);
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn obstruction_report() {
    let o = nij(&["linearize-jet", "--maxdeg", "4", "--counterexample", "b1,1/2", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["status"], "obstructed");
    assert_eq!(v["obstruction"]["degree"], 2);
    assert_eq!(v["obstruction"]["monomial_text"], "y^2");
    assert_eq!(v["obstruction"]["component"], 1);
}

#[test]
fn maxdeg_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_nij"))
        .args(["linearize-jet", "0, x + x^2; 0, 5/2*y", "--json"])
        .env("NIJ_MAXDEG", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["maxdeg"], 3);
    assert_eq!(v["map"][0], "x^3 - x^2 + x");
    let o = nij(&["linearize-jet", "0, x + x^2; 0, 5/2*y", "--json"]);
    assert_eq!(json(&o)["maxdeg"], 6);
    let o = nij(&["linearize-jet", "x^2, x; 0, y"]);
    assert_eq!(o.status.code(), Some(65));
}

#[test]
fn reports_reparse() {
    let o = nij(&["gen-counterexample", "--form", "c4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let op = OperatorField::parse(v["operator"].as_str().unwrap()).unwrap();
    assert_eq!(op.to_string(), v["operator"].as_str().unwrap());
    let vars = Vars::xy();
    for row in v["rows"].as_array().unwrap() {
        for cell in row.as_array().unwrap() {
            let s = cell.as_str().unwrap();
            assert_eq!(Poly::parse(s, &vars).unwrap().to_string(), s);
        }
    }
    let inv = &v["separating_invariant"]["perturbed"];
    assert_eq!(inv, "-4*x^2*y^2");
    let o = nij(&["normal-form", "--form", "b1", "--alpha", "2", "--json"]);
    let v = json(&o);
    assert_eq!(v["R"], serde_json::json!([["0", "x"], ["0", "2*y"]]));
    assert_eq!(v["L"], serde_json::json!([["y", "0"], ["0", "2*y"]]));
}

#[test]
fn classify_and_isotropy() {
    let o = nij(&["classify-lsa", "lsa dim=2; 1 2 1 1; 2 1 1 1/2; 2 2 2 1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["form"], "b3,2");
    assert_eq!(v["verified"], true);
    let o = nij(&["classify-lsa", "lsa dim=2; 1 2 1 1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = nij(&["isotropy", "--counterexample", "c2", "--at", "0,0", "--json"]);
    assert_eq!(json(&o)["classification"]["form"], "c2");
    let o = nij(&["isotropy", "0, -x; -x, -2*y", "--at", "1,0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn brjuno_outcomes() {
    assert_eq!(nij(&["brjuno", "--cf", "[0; (1)]"]).status.code(), Some(0));
    assert_eq!(nij(&["brjuno", "--cf", "[0; 2]"]).status.code(), Some(1));
    assert_eq!(nij(&["brjuno", "--cf", "[0; 1, 2, ...]", "--depth", "2"]).status.code(), Some(2));
    assert_eq!(nij(&["brjuno", "--cf", "[0; 0]"]).status.code(), Some(64));
}

#[test]
fn parse_errors_carry_positions() {
    let o = nij(&["check-nijenhuis", "x^2 + , 0; 0, y"]);
    assert_eq!(o.status.code(), Some(64));
    assert!(stdout(&o).contains("line 1, column 7"), "{}", stdout(&o));
    assert_eq!(nij(&["check-nijenhuis", "--json", "--text", "x"]).status.code(), Some(64));
}

#[test]
fn batch_over_the_suite() {
    let forms = ["c1", "c2", "c3", "c4", "b4", "b3,1", "b1,0", "b1,3", "b1,1/2", "b1,-1"];
    let lines: Vec<String> = forms.iter().map(|f| format!("check-nijenhuis --counterexample {f}")).collect();
    let refs: Vec<&str> = lines.iter().map(String::as_str).collect();
    let f = batch_file(&refs);
    let o = nij(&["batch", f.path().to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 10);
    for r in results {
        assert_eq!(r["report"]["is_nijenhuis"], true);
    }
}

#[test]
fn batch_isolates_failures() {
    let empty = batch_file(&[]);
    let o = nij(&["batch", empty.path().to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["count"], 0);
    let f = batch_file(&[
        "verdict --form b1 --alpha 5/2",
        "brjuno --cf '[0; (1)]'",
        "check-nijenhuis 'x^2 +* y, 0; 0, y'",
        "normal-form --form c5-",
        "linearize-jet --counterexample b1,1/2 --maxdeg 3",
    ]);
    let o = nij(&["batch", f.path().to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(64));
    let v = json(&o);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 5);
    let errors: Vec<&Value> = results.iter().filter(|r| r.get("error").is_some()).collect();
    assert_eq!(errors.len(), 1);
    assert_eq!(errors[0]["line"], 3);
    assert_eq!(results[4]["exit"], 1);
}
