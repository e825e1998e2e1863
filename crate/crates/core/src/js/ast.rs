//! AST for the ES5 subset accepted in method bodies.
//!
//! Nodes carry spans. [`Sexpr`] renders a span-free structural form used to
//! compare trees parsed from different offsets or files.

use std::fmt::{self, Write as _};

use crate::span::Span;

#[derive(Debug, Clone, PartialEq)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JsFunction {
    pub name: Option<Ident>,
    pub params: Vec<Ident>,
    pub body: Vec<Stmt>,
    /// From the `function` keyword through the closing brace.
    pub span: Span,
}

impl JsFunction {
    /// Undeclared-global writes anywhere in this function.
    pub fn free_writes(&self) -> Vec<super::LintFinding> {
        super::find_global_assignments(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtKind {
    Block(Vec<Stmt>),
    Var(Vec<VarDecl>),
    Empty,
    Expr(Expr),
    If { test: Expr, consequent: Box<Stmt>, alternate: Option<Box<Stmt>> },
    DoWhile { body: Box<Stmt>, test: Expr },
    While { test: Expr, body: Box<Stmt> },
    For { init: Option<ForInit>, test: Option<Expr>, update: Option<Expr>, body: Box<Stmt> },
    ForIn { left: ForInLeft, right: Expr, body: Box<Stmt> },
    Continue(Option<Ident>),
    Break(Option<Ident>),
    Return(Option<Expr>),
    Switch { discriminant: Expr, cases: Vec<SwitchCase> },
    Labeled { label: Ident, body: Box<Stmt> },
    Throw(Expr),
    Try { block: Vec<Stmt>, handler: Option<CatchClause>, finalizer: Option<Vec<Stmt>> },
    Debugger,
    Function(JsFunction),
}

#[derive(Debug, Clone, PartialEq)]
pub struct VarDecl {
    pub name: Ident,
    pub init: Option<Expr>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ForInit {
    Var(Vec<VarDecl>),
    Expr(Expr),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ForInLeft {
    Var(VarDecl),
    Expr(Expr),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwitchCase {
    /// `None` for `default:`.
    pub test: Option<Expr>,
    pub body: Vec<Stmt>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatchClause {
    pub param: Ident,
    pub body: Vec<Stmt>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    This,
    Ident(String),
    Null,
    Bool(bool),
    Num(f64),
    Str(String),
    Regex { pattern: String, flags: String },
    Array(Vec<Option<Expr>>),
    Object(Vec<Property>),
    Function(Box<JsFunction>),
    Unary { op: UnaryOp, arg: Box<Expr> },
    Update { op: UpdateOp, prefix: bool, arg: Box<Expr> },
    Binary { op: BinaryOp, left: Box<Expr>, right: Box<Expr> },
    Assign { op: AssignOp, target: Box<Expr>, value: Box<Expr> },
    Conditional { test: Box<Expr>, consequent: Box<Expr>, alternate: Box<Expr> },
    Call { callee: Box<Expr>, args: Vec<Expr> },
    New { callee: Box<Expr>, args: Vec<Expr> },
    Member { object: Box<Expr>, property: Ident },
    Index { object: Box<Expr>, index: Box<Expr> },
    Sequence(Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Property {
    pub key: PropKey,
    pub value: Expr,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PropKey {
    Ident(String),
    Str(String),
    Num(f64),
}

macro_rules! op_enum {
    ($name:ident { $($variant:ident => $text:literal,)* }) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum $name {
            $($variant,)*
        }

        impl $name {
            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text,)*
                }
            }
        }
    };
}

op_enum!(UnaryOp {
    Delete => "delete",
    Void => "void",
    Typeof => "typeof",
    Plus => "+",
    Minus => "-",
    BitNot => "~",
    Not => "!",
});

op_enum!(UpdateOp {
    Increment => "++",
    Decrement => "--",
});

op_enum!(BinaryOp {
    Or => "||",
    And => "&&",
    BitOr => "|",
    BitXor => "^",
    BitAnd => "&",
    Eq => "==",
    Ne => "!=",
    StrictEq => "===",
    StrictNe => "!==",
    Lt => "<",
    Gt => ">",
    Le => "<=",
    Ge => ">=",
    Instanceof => "instanceof",
    In => "in",
    Shl => "<<",
    Shr => ">>",
    UShr => ">>>",
    Add => "+",
    Sub => "-",
    Mul => "*",
    Div => "/",
    Mod => "%",
});

op_enum!(AssignOp {
    Assign => "=",
    Add => "+=",
    Sub => "-=",
    Mul => "*=",
    Div => "/=",
    Mod => "%=",
    Shl => "<<=",
    Shr => ">>=",
    UShr => ">>>=",
    BitAnd => "&=",
    BitOr => "|=",
    BitXor => "^=",
});

/// Span-free structural rendering of a node.
pub trait Sexpr {
    fn write_sexpr(&self, out: &mut String);

    fn sexpr(&self) -> String {
        let mut s = String::new();
        self.write_sexpr(&mut s);
        s
    }
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("string serializes")
}

fn write_list<T: Sexpr>(out: &mut String, items: &[T]) {
    for item in items {
        out.push(' ');
        item.write_sexpr(out);
    }
}

fn write_opt<T: Sexpr>(out: &mut String, item: Option<&T>) {
    out.push(' ');
    match item {
        Some(i) => i.write_sexpr(out),
        None => out.push('_'),
    }
}

fn write_block(out: &mut String, body: &[Stmt]) {
    out.push_str("(block");
    write_list(out, body);
    out.push(')');
}

impl Sexpr for Ident {
    fn write_sexpr(&self, out: &mut String) {
        out.push_str(&self.name);
    }
}

impl Sexpr for JsFunction {
    fn write_sexpr(&self, out: &mut String) {
        out.push_str("(function");
        if let Some(n) = &self.name {
            out.push(' ');
            out.push_str(&n.name);
        }
        out.push_str(" (params");
        write_list(out, &self.params);
        out.push(')');
        write_list(out, &self.body);
        out.push(')');
    }
}

impl Sexpr for VarDecl {
    fn write_sexpr(&self, out: &mut String) {
        out.push('(');
        out.push_str(&self.name.name);
        if let Some(init) = &self.init {
            out.push(' ');
            init.write_sexpr(out);
        }
        out.push(')');
    }
}

impl Sexpr for Stmt {
    fn write_sexpr(&self, out: &mut String) {
        match &self.kind {
            StmtKind::Block(b) => write_block(out, b),
            StmtKind::Var(decls) => {
                out.push_str("(var");
                write_list(out, decls);
                out.push(')');
            }
            StmtKind::Empty => out.push_str("(empty)"),
            StmtKind::Expr(e) => {
                out.push_str("(expr ");
                e.write_sexpr(out);
                out.push(')');
            }
            StmtKind::If { test, consequent, alternate } => {
                out.push_str("(if ");
                test.write_sexpr(out);
                out.push(' ');
                consequent.write_sexpr(out);
                write_opt(out, alternate.as_deref());
                out.push(')');
            }
            StmtKind::DoWhile { body, test } => {
                out.push_str("(do ");
                body.write_sexpr(out);
                out.push(' ');
                test.write_sexpr(out);
                out.push(')');
            }
            StmtKind::While { test, body } => {
                out.push_str("(while ");
                test.write_sexpr(out);
                out.push(' ');
                body.write_sexpr(out);
                out.push(')');
            }
            StmtKind::For { init, test, update, body } => {
                out.push_str("(for ");
                match init {
                    Some(ForInit::Var(decls)) => {
                        out.push_str("(var");
                        write_list(out, decls);
                        out.push(')');
                    }
                    Some(ForInit::Expr(e)) => e.write_sexpr(out),
                    None => out.push('_'),
                }
                write_opt(out, test.as_ref());
                write_opt(out, update.as_ref());
                out.push(' ');
                body.write_sexpr(out);
                out.push(')');
            }
            StmtKind::ForIn { left, right, body } => {
                out.push_str("(for-in ");
                match left {
                    ForInLeft::Var(d) => {
                        out.push_str("(var ");
                        d.write_sexpr(out);
                        out.push(')');
                    }
                    ForInLeft::Expr(e) => e.write_sexpr(out),
                }
                out.push(' ');
                right.write_sexpr(out);
                out.push(' ');
                body.write_sexpr(out);
                out.push(')');
            }
            StmtKind::Continue(l) | StmtKind::Break(l) => {
                out.push_str(if matches!(self.kind, StmtKind::Continue(_)) { "(continue" } else { "(break" });
                if let Some(l) = l {
                    out.push(' ');
                    out.push_str(&l.name);
                }
                out.push(')');
            }
            StmtKind::Return(e) => {
                out.push_str("(return");
                if let Some(e) = e {
                    out.push(' ');
                    e.write_sexpr(out);
                }
                out.push(')');
            }
            StmtKind::Switch { discriminant, cases } => {
                out.push_str("(switch ");
                discriminant.write_sexpr(out);
                for case in cases {
                    out.push_str(" (case ");
                    match &case.test {
                        Some(t) => t.write_sexpr(out),
                        None => out.push_str("default"),
                    }
                    write_list(out, &case.body);
                    out.push(')');
                }
                out.push(')');
            }
            StmtKind::Labeled { label, body } => {
                let _ = write!(out, "(label {} ", label.name);
                body.write_sexpr(out);
                out.push(')');
            }
            StmtKind::Throw(e) => {
                out.push_str("(throw ");
                e.write_sexpr(out);
                out.push(')');
            }
            StmtKind::Try { block, handler, finalizer } => {
                out.push_str("(try ");
                write_block(out, block);
                out.push(' ');
                match handler {
                    Some(h) => {
                        let _ = write!(out, "(catch {} ", h.param.name);
                        write_block(out, &h.body);
                        out.push(')');
                    }
                    None => out.push('_'),
                }
                out.push(' ');
                match finalizer {
                    Some(f) => write_block(out, f),
                    None => out.push('_'),
                }
                out.push(')');
            }
            StmtKind::Debugger => out.push_str("(debugger)"),
            StmtKind::Function(f) => {
                out.push_str("(fundecl ");
                f.write_sexpr(out);
                out.push(')');
            }
        }
    }
}

impl Sexpr for Expr {
    fn write_sexpr(&self, out: &mut String) {
        match &self.kind {
            ExprKind::This => out.push_str("this"),
            ExprKind::Ident(n) => {
                let _ = write!(out, "(id {n})");
            }
            ExprKind::Null => out.push_str("null"),
            ExprKind::Bool(b) => {
                let _ = write!(out, "{b}");
            }
            ExprKind::Num(n) => {
                let _ = write!(out, "(num {n})");
            }
            ExprKind::Str(s) => {
                let _ = write!(out, "(str {})", json_str(s));
            }
            ExprKind::Regex { pattern, flags } => {
                let _ = write!(out, "(regex {} {})", json_str(pattern), json_str(flags));
            }
            ExprKind::Array(items) => {
                out.push_str("(array");
                for item in items {
                    out.push(' ');
                    match item {
                        Some(e) => e.write_sexpr(out),
                        None => out.push_str("hole"),
                    }
                }
                out.push(')');
            }
            ExprKind::Object(props) => {
                out.push_str("(object");
                for p in props {
                    out.push_str(" (");
                    match &p.key {
                        PropKey::Ident(s) | PropKey::Str(s) => out.push_str(&json_str(s)),
                        PropKey::Num(n) => {
                            let _ = write!(out, "{n}");
                        }
                    }
                    out.push(' ');
                    p.value.write_sexpr(out);
                    out.push(')');
                }
                out.push(')');
            }
            ExprKind::Function(f) => f.write_sexpr(out),
            ExprKind::Unary { op, arg } => {
                let _ = write!(out, "(unary {} ", op.as_str());
                arg.write_sexpr(out);
                out.push(')');
            }
            ExprKind::Update { op, prefix, arg } => {
                let _ = write!(out, "(update {} {} ", op.as_str(), if *prefix { "prefix" } else { "postfix" });
                arg.write_sexpr(out);
                out.push(')');
            }
            ExprKind::Binary { op, left, right } => {
                let _ = write!(out, "({} ", op.as_str());
                left.write_sexpr(out);
                out.push(' ');
                right.write_sexpr(out);
                out.push(')');
            }
            ExprKind::Assign { op, target, value } => {
                let _ = write!(out, "(assign {} ", op.as_str());
                target.write_sexpr(out);
                out.push(' ');
                value.write_sexpr(out);
                out.push(')');
            }
            ExprKind::Conditional { test, consequent, alternate } => {
                out.push_str("(cond ");
                test.write_sexpr(out);
                out.push(' ');
                consequent.write_sexpr(out);
                out.push(' ');
                alternate.write_sexpr(out);
                out.push(')');
            }
            ExprKind::Call { callee, args } | ExprKind::New { callee, args } => {
                out.push_str(if matches!(self.kind, ExprKind::Call { .. }) { "(call " } else { "(new " });
                callee.write_sexpr(out);
                write_list(out, args);
                out.push(')');
            }
            ExprKind::Member { object, property } => {
                out.push_str("(member ");
                object.write_sexpr(out);
                let _ = write!(out, " {})", property.name);
            }
            ExprKind::Index { object, index } => {
                out.push_str("(index ");
                object.write_sexpr(out);
                out.push(' ');
                index.write_sexpr(out);
                out.push(')');
            }
            ExprKind::Sequence(items) => {
                out.push_str("(seq");
                write_list(out, items);
                out.push(')');
            }
        }
    }
}

impl fmt::Display for JsFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.sexpr())
    }
}
