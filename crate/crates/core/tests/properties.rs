mod common;

use std::collections::HashSet;

use common::{in_memory, load};
use jsc::codegen::ImageOptions;
use jsc::driver::{compile, Mode};
use jsc::js::{find_global_assignments, parse_function_expression, Sexpr};
use jsc::syntax::tokenize;
use jsc::{initialization_order, FileId};
use proptest::prelude::*;

const NAMES: [&str; 4] = ["a", "b", "c", "d"];

/// A tiny statement language over four variable names; rendered to ES5 and
/// resolved independently of the real scope analysis.
#[derive(Debug, Clone)]
enum Gen {
    Var(usize),
    Assign(usize),
    Update(usize),
    ForIn(usize),
    Read(usize),
    Func(Vec<usize>, Vec<Gen>),
    Catch(usize, Vec<Gen>),
}

fn gen_stmt() -> impl Strategy<Value = Gen> {
    let leaf = prop_oneof![
        (0..4usize).prop_map(Gen::Var),
        (0..4usize).prop_map(Gen::Assign),
        (0..4usize).prop_map(Gen::Update),
        (0..4usize).prop_map(Gen::ForIn),
        (0..4usize).prop_map(Gen::Read),
    ];
    leaf.prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            (proptest::collection::vec(0..4usize, 0..3), proptest::collection::vec(inner.clone(), 0..4))
                .prop_map(|(p, b)| Gen::Func(p, b)),
            (0..4usize, proptest::collection::vec(inner, 0..4)).prop_map(|(p, b)| Gen::Catch(p, b)),
        ]
    })
}

fn render(stmts: &[Gen], out: &mut String) {
    for s in stmts {
        match s {
            Gen::Var(n) => out.push_str(&format!("var {} = 1;\n", NAMES[*n])),
            Gen::Assign(n) => out.push_str(&format!("{} = o.x;\n", NAMES[*n])),
            Gen::Update(n) => out.push_str(&format!("{}++;\n", NAMES[*n])),
            Gen::ForIn(n) => out.push_str(&format!("for ({} in o) {{}}\n", NAMES[*n])),
            Gen::Read(n) => out.push_str(&format!("f({});\n", NAMES[*n])),
            Gen::Func(params, body) => {
                let ps: Vec<&str> = params.iter().map(|p| NAMES[*p]).collect();
                out.push_str(&format!("(function ({}) {{\n", ps.join(", ")));
                render(body, out);
                out.push_str("})();\n");
            }
            Gen::Catch(p, body) => {
                out.push_str(&format!("try {{}} catch ({}) {{\n", NAMES[*p]));
                render(body, out);
                out.push_str("}\n");
            }
        }
    }
}

fn hoisted(stmts: &[Gen], out: &mut HashSet<usize>) {
    for s in stmts {
        match s {
            Gen::Var(n) => {
                out.insert(*n);
            }
            Gen::Catch(_, body) => hoisted(body, out),
            _ => {}
        }
    }
}

/// Names of unresolved writes in source order.
fn expected_writes(stmts: &[Gen], scopes: &mut Vec<HashSet<usize>>, out: &mut Vec<&'static str>) {
    for s in stmts {
        match s {
            Gen::Assign(n) | Gen::Update(n) | Gen::ForIn(n) => {
                if !scopes.iter().any(|sc| sc.contains(n)) {
                    out.push(NAMES[*n]);
                }
            }
            Gen::Var(_) | Gen::Read(_) => {}
            Gen::Func(params, body) => {
                let mut scope: HashSet<usize> = params.iter().copied().collect();
                hoisted(body, &mut scope);
                scopes.push(scope);
                expected_writes(body, scopes, out);
                scopes.pop();
            }
            Gen::Catch(p, body) => {
                scopes.push(HashSet::from([*p]));
                expected_writes(body, scopes, out);
                scopes.pop();
            }
        }
    }
}

fn method_source(body: &[Gen]) -> String {
    let mut s = String::from("function (o) {\n");
    render(body, &mut s);
    s.push('}');
    s
}

fn lint(body: &[Gen]) -> Vec<String> {
    let src = method_source(body);
    let tokens = tokenize(&src, FileId(0)).unwrap();
    let (f, _) = parse_function_expression(&tokens, 0).unwrap();
    find_global_assignments(&f).into_iter().map(|w| w.name).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn lint_matches_scope_model(body in proptest::collection::vec(gen_stmt(), 0..6)) {
        let mut scope = HashSet::from([4usize]);
        hoisted(&body, &mut scope);
        let mut expected = Vec::new();
        expected_writes(&body, &mut vec![scope], &mut expected);
        prop_assert_eq!(lint(&body), expected);
    }

    #[test]
    fn declaring_never_adds_findings(body in proptest::collection::vec(gen_stmt(), 0..6), n in 0..4usize) {
        let before = lint(&body);
        let mut declared = vec![Gen::Var(n)];
        declared.extend(body);
        // the outer declaration resolves every write of that name, at any depth
        let expected: Vec<String> = before.into_iter().filter(|w| w != NAMES[n]).collect();
        prop_assert_eq!(lint(&declared), expected);
    }

    #[test]
    fn body_text_round_trips(body in proptest::collection::vec(gen_stmt(), 0..6)) {
        let method = method_source(&body);
        let unit = format!("package P;\nclass A {{\n  m: {method}\n}}\n");
        let map = in_memory(&[("P/A.jsc".into(), unit)]);
        let (units, diags) = common::parse_all(&map);
        prop_assert!(diags.is_empty());
        let m = units[0].decl.as_class().unwrap().method("m").unwrap();
        prop_assert_eq!(&m.body_text, &method);
        let tokens = tokenize(&m.body_text, FileId(0)).unwrap();
        let (reparsed, _) = parse_function_expression(&tokens, 0).unwrap();
        prop_assert_eq!(reparsed.sexpr(), m.body.sexpr());
    }

    #[test]
    fn input_order_does_not_matter(seed in any::<u64>()) {
        let paper = load("paper");
        let mut files: Vec<(String, String)> =
            paper.files().iter().map(|f| (f.rel_path.to_string_lossy().into_owned(), f.text.clone())).collect();
        files.push(("P/Leak.jsc".into(), "package P; class Leak { m: function () { x = 1; } }".into()));
        let reference_map = in_memory(&files);
        let reference = compile(&reference_map, Mode::Build, &ImageOptions::default(), false);
        let mut rng = seed;
        for i in (1..files.len()).rev() {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            files.swap(i, (rng >> 33) as usize % (i + 1));
        }
        let map = in_memory(&files);
        let shuffled = compile(&map, Mode::Build, &ImageOptions::default(), false);
        let render = |c: &jsc::Compilation, m: &jsc::SourceMap| jsc::driver::render_diagnostics(m, &c.diagnostics, true);
        let expected = render(&reference, &reference_map);
        prop_assert_eq!(expected.lines().count(), 1);
        prop_assert_eq!(render(&shuffled, &map), expected);
        prop_assert_eq!(reference.image.map(|i| i.text), shuffled.image.map(|i| i.text));
    }

    #[test]
    fn order_respects_supers(supers in proptest::collection::vec(proptest::collection::vec(any::<prop::sample::Index>(), 0..3), 1..8)) {
        let mut files = Vec::new();
        let mut edges = Vec::new();
        for (i, ss) in supers.iter().enumerate() {
            let mut targets: Vec<usize> = if i == 0 { vec![] } else { ss.iter().map(|ix| ix.index(i)).collect() };
            targets.sort();
            targets.dedup();
            let ext = targets.iter().map(|t| format!("P.K{t}")).collect::<Vec<_>>().join(", ");
            let header = if ext.is_empty() { String::new() } else { format!(" extends {ext}") };
            files.push((format!("P/K{i}.jsc"), format!("package P; class K{i}{header} {{}}")));
            edges.push(targets);
        }
        let (units, _) = common::parse_all(&in_memory(&files));
        let mut pool = jsc::build_pool(units).unwrap();
        prop_assert!(jsc::resolve_supers(&mut pool).is_empty());
        let order = initialization_order(&pool);
        prop_assert_eq!(order.len(), files.len());
        let pos = |i: usize| order.iter().position(|n| *n == format!("P.K{i}")).unwrap();
        for (i, targets) in edges.iter().enumerate() {
            for &t in targets {
                prop_assert!(pos(t) < pos(i));
            }
        }
    }

    #[test]
    fn damaged_sources_keep_spans_in_bounds(file in 0usize..4, cut in any::<prop::sample::Index>(), len in 1usize..6, junk in "[{}()\\[\\];:,/*'\"a\n ]{0,3}") {
        let paper = load("paper");
        let f = &paper.files()[file];
        let mut text = f.text.clone();
        let mut at = cut.index(text.len());
        while !text.is_char_boundary(at) { at -= 1; }
        let mut end = (at + len).min(text.len());
        while !text.is_char_boundary(end) { end += 1; }
        text.replace_range(at..end, &junk);
        let map = in_memory(&[(f.rel_path.to_string_lossy().into_owned(), text.clone())]);
        let c = compile(&map, Mode::Check, &ImageOptions::default(), false);
        for d in &c.diagnostics {
            if let Some(s) = d.span {
                prop_assert!(s.start <= s.end && s.end <= text.len(), "{:?}", d);
                prop_assert!(text.is_char_boundary(s.start) && text.is_char_boundary(s.end));
                prop_assert!(s.start_line >= 1 && s.start_col >= 1);
                prop_assert!((s.start_line, s.start_col) <= (s.end_line, s.end_col));
            }
            prop_assert!(d.code.starts_with("JSC-"));
        }
    }
}
