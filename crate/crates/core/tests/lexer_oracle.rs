//! Regex-versus-division decisions checked against token streams frozen from
//! an independent ES parser.

use jsc::syntax::token::{Keyword, TokenKind};
use jsc::syntax::tokenize;
use jsc::FileId;
use serde_json::Value;

fn render(kind: &TokenKind) -> String {
    match kind {
        TokenKind::Ident(n) => format!("Identifier {n}"),
        TokenKind::Keyword(Keyword::True) => "Boolean true".into(),
        TokenKind::Keyword(Keyword::False) => "Boolean false".into(),
        TokenKind::Keyword(Keyword::Null) => "Null null".into(),
        TokenKind::Keyword(k) if k.is_contextual() => format!("Identifier {}", k.as_str()),
        TokenKind::Keyword(k) => format!("Keyword {}", k.as_str()),
        TokenKind::Punct(p) => format!("Punctuator {}", p.as_str()),
        TokenKind::Str(s) => format!("String {}", serde_json::to_string(s).unwrap()),
        TokenKind::Num(n) => format!("Numeric {n}"),
        TokenKind::Regex { pattern, flags } => format!("RegularExpression /{pattern}/{flags}"),
        TokenKind::Eof => "EOF".into(),
    }
}

#[test]
fn regex_division_corpus() {
    let cases: Vec<Value> =
        include_str!("oracle/tokens.jsonl").lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(cases.len(), 50);
    let mut failures = Vec::new();
    for case in &cases {
        let src = case["src"].as_str().unwrap();
        let expected: Vec<&str> = case["tokens"].as_array().unwrap().iter().map(|t| t.as_str().unwrap()).collect();
        match tokenize(src, FileId(0)) {
            Ok(mut tokens) => {
                tokens.pop();
                let actual: Vec<String> = tokens.iter().map(|t| render(&t.kind)).collect();
                if actual != expected {
                    failures.push(format!("{src:?}\n  expected {expected:?}\n  actual   {actual:?}"));
                }
            }
            Err(d) => failures.push(format!("{src:?}: {d:?}")),
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
