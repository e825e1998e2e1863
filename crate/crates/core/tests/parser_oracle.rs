//! Body-parser agreement with a frozen reference corpus: each `src` was
//! parsed as the body of `function () { ... }` by an independent ES parser
//! and its tree rendered in our s-expression form.

use jsc::js::{parse_function_expression, Sexpr};
use jsc::syntax::tokenize;
use jsc::FileId;
use serde_json::Value;

fn parse(src: &str) -> Result<String, String> {
    let text = format!("function () {{{src}\n}}");
    let tokens = tokenize(&text, FileId(0)).map_err(|d| format!("{d:?}"))?;
    let (f, end) = parse_function_expression(&tokens, 0).map_err(|d| format!("{d:?}"))?;
    if end != tokens.len() - 1 {
        return Err("trailing tokens".into());
    }
    Ok(f.sexpr())
}

fn cases() -> Vec<Value> {
    include_str!("oracle/parser.jsonl").lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn corpus_size() {
    let cases = cases();
    assert!(cases.len() >= 200);
    assert!(cases.iter().filter(|c| c["ok"] == false).count() >= 30);
}

#[test]
fn agrees_with_reference() {
    let mut failures = Vec::new();
    for case in cases() {
        let src = case["src"].as_str().unwrap();
        match (parse(src), case["ok"].as_bool().unwrap()) {
            (Ok(actual), true) => {
                let expected = case["sexpr"].as_str().unwrap();
                if actual != expected {
                    failures.push(format!("{src:?}\n  expected {expected}\n  actual   {actual}"));
                }
            }
            (Err(e), true) => failures.push(format!("{src:?} rejected: {e}")),
            (Ok(actual), false) => failures.push(format!("{src:?} accepted as {actual}")),
            (Err(_), false) => {}
        }
    }
    assert!(failures.is_empty(), "{} disagreements:\n{}", failures.len(), failures.join("\n"));
}
