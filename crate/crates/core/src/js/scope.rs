//! Scope analysis for undeclared-global writes.
//!
//! A write whose target identifier resolves in no enclosing scope creates a
//! property on the global object in sloppy mode and throws in strict mode.
//! Reads are never reported.

use std::collections::HashSet;

use crate::js::ast::*;
use crate::span::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WriteKind {
    Assignment,
    /// `++` / `--`
    Update,
    ForInTarget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LintFinding {
    pub name: String,
    pub span: Span,
    pub kind: WriteKind,
}

/// The names bound by one function or catch scope.
#[derive(Debug, Clone, Default)]
pub struct JsScope<'p> {
    pub declared: HashSet<String>,
    pub parent: Option<&'p JsScope<'p>>,
}

impl<'p> JsScope<'p> {
    pub fn resolves(&self, name: &str) -> bool {
        self.declared.contains(name) || self.parent.is_some_and(|p| p.resolves(name))
    }

    fn child(&'p self, declared: HashSet<String>) -> JsScope<'p> {
        JsScope { declared, parent: Some(self) }
    }

    fn for_function(f: &JsFunction, parent: Option<&'p JsScope<'p>>) -> JsScope<'p> {
        let mut declared: HashSet<String> = f.params.iter().map(|p| p.name.clone()).collect();
        declared.insert("arguments".to_string());
        if let Some(n) = &f.name {
            declared.insert(n.name.clone());
        }
        hoisted_names(&f.body, &mut declared);
        JsScope { declared, parent }
    }
}

/// Collects `var` names and function-declaration names of one function body,
/// without descending into nested functions.
fn hoisted_names(body: &[Stmt], out: &mut HashSet<String>) {
    for stmt in body {
        hoisted_in_stmt(stmt, out);
    }
}

fn hoisted_in_stmt(stmt: &Stmt, out: &mut HashSet<String>) {
    match &stmt.kind {
        StmtKind::Var(decls) => out.extend(decls.iter().map(|d| d.name.name.clone())),
        StmtKind::Function(f) => {
            if let Some(n) = &f.name {
                out.insert(n.name.clone());
            }
        }
        StmtKind::Block(b) => hoisted_names(b, out),
        StmtKind::If { consequent, alternate, .. } => {
            hoisted_in_stmt(consequent, out);
            if let Some(a) = alternate {
                hoisted_in_stmt(a, out);
            }
        }
        StmtKind::DoWhile { body, .. } | StmtKind::While { body, .. } | StmtKind::Labeled { body, .. } => {
            hoisted_in_stmt(body, out)
        }
        StmtKind::For { init, body, .. } => {
            if let Some(ForInit::Var(decls)) = init {
                out.extend(decls.iter().map(|d| d.name.name.clone()));
            }
            hoisted_in_stmt(body, out);
        }
        StmtKind::ForIn { left, body, .. } => {
            if let ForInLeft::Var(d) = left {
                out.insert(d.name.name.clone());
            }
            hoisted_in_stmt(body, out);
        }
        StmtKind::Switch { cases, .. } => {
            for c in cases {
                hoisted_names(&c.body, out);
            }
        }
        StmtKind::Try { block, handler, finalizer } => {
            hoisted_names(block, out);
            if let Some(h) = handler {
                hoisted_names(&h.body, out);
            }
            if let Some(f) = finalizer {
                hoisted_names(f, out);
            }
        }
        StmtKind::Empty
        | StmtKind::Expr(_)
        | StmtKind::Continue(_)
        | StmtKind::Break(_)
        | StmtKind::Return(_)
        | StmtKind::Throw(_)
        | StmtKind::Debugger => {}
    }
}

#[derive(Default)]
struct Findings {
    global: Vec<LintFinding>,
    restricted: Vec<LintFinding>,
}

/// Every write to an identifier that resolves in no enclosing scope of `f`.
/// Writes to `eval` and `arguments` are excluded; see
/// [`find_restricted_writes`].
pub fn find_global_assignments(f: &JsFunction) -> Vec<LintFinding> {
    analyze_function(f, None).global
}

/// Writes to `eval` or `arguments`, which strict mode forbids.
pub fn find_restricted_writes(f: &JsFunction) -> Vec<LintFinding> {
    analyze_function(f, None).restricted
}

/// Undeclared writes in a top-level script. Top-level `var` and function
/// declarations count as declared.
pub fn find_global_assignments_in_program(body: &[Stmt]) -> Vec<LintFinding> {
    let mut declared = HashSet::new();
    hoisted_names(body, &mut declared);
    let scope = JsScope { declared, parent: None };
    let mut out = Findings::default();
    for stmt in body {
        walk_stmt(stmt, &scope, &mut out);
    }
    out.global
}

fn analyze_function(f: &JsFunction, parent: Option<&JsScope<'_>>) -> Findings {
    let mut out = Findings::default();
    walk_function(f, parent, &mut out);
    out
}

fn walk_function(f: &JsFunction, parent: Option<&JsScope<'_>>, out: &mut Findings) {
    let scope = JsScope::for_function(f, parent);
    for stmt in &f.body {
        walk_stmt(stmt, &scope, out);
    }
}

fn record_write(target: &Expr, kind: WriteKind, scope: &JsScope<'_>, out: &mut Findings) {
    let ExprKind::Ident(name) = &target.kind else { return };
    let finding = LintFinding { name: name.clone(), span: target.span, kind };
    if name == "eval" || name == "arguments" {
        out.restricted.push(finding);
    } else if !scope.resolves(name) {
        out.global.push(finding);
    }
}

fn walk_stmts(body: &[Stmt], scope: &JsScope<'_>, out: &mut Findings) {
    for stmt in body {
        walk_stmt(stmt, scope, out);
    }
}

fn walk_stmt(stmt: &Stmt, scope: &JsScope<'_>, out: &mut Findings) {
    match &stmt.kind {
        StmtKind::Block(b) => walk_stmts(b, scope, out),
        StmtKind::Var(decls) => walk_decls(decls, scope, out),
        StmtKind::Empty | StmtKind::Continue(_) | StmtKind::Break(_) | StmtKind::Debugger => {}
        StmtKind::Expr(e) | StmtKind::Throw(e) => walk_expr(e, scope, out),
        StmtKind::Return(e) => {
            if let Some(e) = e {
                walk_expr(e, scope, out);
            }
        }
        StmtKind::If { test, consequent, alternate } => {
            walk_expr(test, scope, out);
            walk_stmt(consequent, scope, out);
            if let Some(a) = alternate {
                walk_stmt(a, scope, out);
            }
        }
        StmtKind::DoWhile { body, test } | StmtKind::While { test, body } => {
            walk_expr(test, scope, out);
            walk_stmt(body, scope, out);
        }
        StmtKind::For { init, test, update, body } => {
            match init {
                Some(ForInit::Var(decls)) => walk_decls(decls, scope, out),
                Some(ForInit::Expr(e)) => walk_expr(e, scope, out),
                None => {}
            }
            for e in test.iter().chain(update) {
                walk_expr(e, scope, out);
            }
            walk_stmt(body, scope, out);
        }
        StmtKind::ForIn { left, right, body } => {
            match left {
                ForInLeft::Var(d) => walk_decls(std::slice::from_ref(d), scope, out),
                ForInLeft::Expr(e) => {
                    record_write(e, WriteKind::ForInTarget, scope, out);
                    walk_target(e, scope, out);
                }
            }
            walk_expr(right, scope, out);
            walk_stmt(body, scope, out);
        }
        StmtKind::Switch { discriminant, cases } => {
            walk_expr(discriminant, scope, out);
            for c in cases {
                if let Some(t) = &c.test {
                    walk_expr(t, scope, out);
                }
                walk_stmts(&c.body, scope, out);
            }
        }
        StmtKind::Labeled { body, .. } => walk_stmt(body, scope, out),
        StmtKind::Try { block, handler, finalizer } => {
            walk_stmts(block, scope, out);
            if let Some(h) = handler {
                let catch_scope = scope.child(HashSet::from([h.param.name.clone()]));
                walk_stmts(&h.body, &catch_scope, out);
            }
            if let Some(f) = finalizer {
                walk_stmts(f, scope, out);
            }
        }
        StmtKind::Function(f) => walk_function(f, Some(scope), out),
    }
}

fn walk_decls(decls: &[VarDecl], scope: &JsScope<'_>, out: &mut Findings) {
    for d in decls {
        if let Some(init) = &d.init {
            walk_expr(init, scope, out);
        }
    }
}

/// Sub-expressions of a write target that are evaluated as reads.
fn walk_target(target: &Expr, scope: &JsScope<'_>, out: &mut Findings) {
    match &target.kind {
        ExprKind::Ident(_) => {}
        _ => walk_expr(target, scope, out),
    }
}

fn walk_expr(expr: &Expr, scope: &JsScope<'_>, out: &mut Findings) {
    match &expr.kind {
        ExprKind::This
        | ExprKind::Ident(_)
        | ExprKind::Null
        | ExprKind::Bool(_)
        | ExprKind::Num(_)
        | ExprKind::Str(_)
        | ExprKind::Regex { .. } => {}
        ExprKind::Array(items) => {
            for e in items.iter().flatten() {
                walk_expr(e, scope, out);
            }
        }
        ExprKind::Object(props) => {
            for p in props {
                walk_expr(&p.value, scope, out);
            }
        }
        ExprKind::Function(f) => walk_function(f, Some(scope), out),
        ExprKind::Unary { arg, .. } => walk_expr(arg, scope, out),
        ExprKind::Update { arg, .. } => {
            record_write(arg, WriteKind::Update, scope, out);
            walk_target(arg, scope, out);
        }
        ExprKind::Binary { left, right, .. } => {
            walk_expr(left, scope, out);
            walk_expr(right, scope, out);
        }
        ExprKind::Assign { target, value, .. } => {
            record_write(target, WriteKind::Assignment, scope, out);
            walk_target(target, scope, out);
            walk_expr(value, scope, out);
        }
        ExprKind::Conditional { test, consequent, alternate } => {
            walk_expr(test, scope, out);
            walk_expr(consequent, scope, out);
            walk_expr(alternate, scope, out);
        }
        ExprKind::Call { callee, args } | ExprKind::New { callee, args } => {
            walk_expr(callee, scope, out);
            for a in args {
                walk_expr(a, scope, out);
            }
        }
        ExprKind::Member { object, .. } => walk_expr(object, scope, out),
        ExprKind::Index { object, index } => {
            walk_expr(object, scope, out);
            walk_expr(index, scope, out);
        }
        ExprKind::Sequence(items) => {
            for e in items {
                walk_expr(e, scope, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::js::parse_function_expression;
    use crate::span::FileId;
    use crate::syntax::tokenize;

    fn names(src: &str) -> Vec<String> {
        let toks = tokenize(src, FileId(0)).unwrap();
        let (f, _) = parse_function_expression(&toks, 0).unwrap();
        find_global_assignments(&f).into_iter().map(|f| f.name).collect()
    }

    #[test]
    fn global_vs_local() {
        assert_eq!(names("function Foo(){\n  var local = 1;\n  global = 1;\n}"), ["global"]);
        assert!(names("function (){ var local = 1; local = 2; }").is_empty());
    }

    #[test]
    fn nested_functions_resolve_outward() {
        assert_eq!(names("function (x){ function g(){ x = 1; y = 1; } }"), ["y"]);
    }

    #[test]
    fn hoisting_covers_later_and_nested_vars() {
        assert!(names("function (){ a = 1; if (b) { var a; } }").is_empty());
        assert!(names("function (){ for (var i = 0; i < 3; i++) { j = i; } var j; }").is_empty());
    }

    #[test]
    fn catch_parameter_scope_is_block_local() {
        assert!(names("function (){ try {} catch (e) { e = 1; } }").is_empty());
        assert_eq!(names("function (){ try {} catch (e) {} e = 1; }"), ["e"]);
    }

    #[test]
    fn member_writes_and_reads_are_silent() {
        assert!(names("function (){ this.x = 1; a.b = 2; c[d] = 3; Class(\"P.A\").create(); }").is_empty());
    }

    #[test]
    fn write_kinds() {
        let toks = tokenize("function (){ a++; --b; for (c in o) {} d += 1; }", FileId(0)).unwrap();
        let (f, _) = parse_function_expression(&toks, 0).unwrap();
        let kinds: Vec<_> = find_global_assignments(&f).into_iter().map(|f| (f.name, f.kind)).collect();
        assert_eq!(
            kinds,
            [
                ("a".to_string(), WriteKind::Update),
                ("b".to_string(), WriteKind::Update),
                ("c".to_string(), WriteKind::ForInTarget),
                ("d".to_string(), WriteKind::Assignment),
            ]
        );
    }

    #[test]
    fn named_function_expression_binds_its_name() {
        assert!(names("function (){ var f = function g(){ g = 1; }; }").is_empty());
    }

    #[test]
    fn ambient_names_are_still_reported() {
        assert_eq!(names("function (){ Class = null; }"), ["Class"]);
    }

    #[test]
    fn eval_and_arguments_are_restricted_not_global() {
        let toks = tokenize("function (){ eval = 1; arguments = 2; }", FileId(0)).unwrap();
        let (f, _) = parse_function_expression(&toks, 0).unwrap();
        assert!(find_global_assignments(&f).is_empty());
        let r: Vec<_> = find_restricted_writes(&f).into_iter().map(|f| f.name).collect();
        assert_eq!(r, ["eval", "arguments"]);
    }
}
