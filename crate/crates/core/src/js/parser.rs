//! Recursive-descent parser for ES5 function bodies.
//!
//! Works directly on the token list produced by [`crate::syntax::tokenize`],
//! so class declarations and their method bodies are lexed once. Automatic
//! semicolon insertion follows the ES5 rules, including the restricted
//! productions (`return`, `throw`, `break`, `continue`, postfix `++`/`--`).

use crate::diagnostic::{codes, Diagnostic};
use crate::js::ast::*;
use crate::span::Span;
use crate::syntax::token::{Keyword, Punct, Token, TokenKind};

pub type ParseResult<T> = Result<T, Diagnostic>;

/// Parses the function expression starting at `tokens[start]` (which must be
/// the `function` keyword). Returns the function and the index just past its
/// closing brace.
pub fn parse_function_expression(tokens: &[Token], start: usize) -> Result<(JsFunction, usize), Vec<Diagnostic>> {
    let mut p = Parser::new(tokens, start);
    if !p.at_keyword(Keyword::Function) {
        return Err(vec![p.unexpected("`function`")]);
    }
    p.function(false).map(|f| (f, p.pos)).map_err(|d| vec![d])
}

/// Parses one AssignmentExpression starting at `tokens[start]`.
pub fn parse_assignment_expression(tokens: &[Token], start: usize) -> Result<(Expr, usize), Vec<Diagnostic>> {
    let mut p = Parser::new(tokens, start);
    p.assignment(false).map(|e| (e, p.pos)).map_err(|d| vec![d])
}

/// Parses a whole script: statements up to end of input.
pub fn parse_program(tokens: &[Token]) -> Result<Vec<Stmt>, Vec<Diagnostic>> {
    let mut p = Parser::new(tokens, 0);
    p.ctx.in_function = false;
    let mut body = Vec::new();
    while !p.at_eof() {
        body.push(p.statement().map_err(|d| vec![d])?);
    }
    Ok(body)
}

#[derive(Default, Clone)]
struct Context {
    in_function: bool,
    loop_depth: u32,
    switch_depth: u32,
    /// Active labels; the flag records whether the label is on a loop.
    labels: Vec<(String, bool)>,
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    ctx: Context,
}

fn binary_precedence(tok: &Token, no_in: bool) -> Option<(u8, BinaryOp)> {
    use BinaryOp as B;
    Some(match &tok.kind {
        TokenKind::Punct(p) => match p {
            Punct::OrOr => (1, B::Or),
            Punct::AndAnd => (2, B::And),
            Punct::Pipe => (3, B::BitOr),
            Punct::Caret => (4, B::BitXor),
            Punct::Amp => (5, B::BitAnd),
            Punct::Eq => (6, B::Eq),
            Punct::Ne => (6, B::Ne),
            Punct::StrictEq => (6, B::StrictEq),
            Punct::StrictNe => (6, B::StrictNe),
            Punct::Lt => (7, B::Lt),
            Punct::Gt => (7, B::Gt),
            Punct::Le => (7, B::Le),
            Punct::Ge => (7, B::Ge),
            Punct::Shl => (8, B::Shl),
            Punct::Shr => (8, B::Shr),
            Punct::UShr => (8, B::UShr),
            Punct::Plus => (9, B::Add),
            Punct::Minus => (9, B::Sub),
            Punct::Star => (10, B::Mul),
            Punct::Slash => (10, B::Div),
            Punct::Percent => (10, B::Mod),
            _ => return None,
        },
        TokenKind::Keyword(Keyword::Instanceof) => (7, B::Instanceof),
        TokenKind::Keyword(Keyword::In) if !no_in => (7, B::In),
        _ => return None,
    })
}

fn assign_op(tok: &Token) -> Option<AssignOp> {
    use AssignOp as A;
    Some(match tok.kind {
        TokenKind::Punct(p) => match p {
            Punct::Assign => A::Assign,
            Punct::PlusAssign => A::Add,
            Punct::MinusAssign => A::Sub,
            Punct::StarAssign => A::Mul,
            Punct::SlashAssign => A::Div,
            Punct::PercentAssign => A::Mod,
            Punct::ShlAssign => A::Shl,
            Punct::ShrAssign => A::Shr,
            Punct::UShrAssign => A::UShr,
            Punct::AndAssign => A::BitAnd,
            Punct::OrAssign => A::BitOr,
            Punct::XorAssign => A::BitXor,
            _ => return None,
        },
        _ => return None,
    })
}

fn is_simple_target(e: &Expr) -> bool {
    matches!(e.kind, ExprKind::Ident(_) | ExprKind::Member { .. } | ExprKind::Index { .. })
}

impl<'t> Parser<'t> {
    fn new(tokens: &'t [Token], pos: usize) -> Self {
        Parser { tokens, pos, ctx: Context { in_function: true, ..Context::default() } }
    }

    fn peek(&self) -> &'t Token {
        let last = self.tokens.len() - 1;
        &self.tokens[self.pos.min(last)]
    }

    fn peek_nth(&self, n: usize) -> &'t Token {
        let last = self.tokens.len() - 1;
        &self.tokens[(self.pos + n).min(last)]
    }

    fn prev_span(&self) -> Span {
        self.tokens[self.pos.saturating_sub(1)].span
    }

    fn bump(&mut self) -> &'t Token {
        let t = self.peek();
        if self.pos < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn at_eof(&self) -> bool {
        self.peek().kind == TokenKind::Eof
    }

    fn at_punct(&self, p: Punct) -> bool {
        self.peek().is_punct(p)
    }

    fn at_keyword(&self, k: Keyword) -> bool {
        self.peek().is_keyword(k)
    }

    fn eat_punct(&mut self, p: Punct) -> bool {
        if self.at_punct(p) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn eat_keyword(&mut self, k: Keyword) -> bool {
        if self.at_keyword(k) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error_at(&self, span: Span, msg: impl Into<String>) -> Diagnostic {
        Diagnostic::error(codes::BODY_SYNTAX, span, msg)
    }

    fn unexpected(&self, expected: &str) -> Diagnostic {
        let tok = self.peek();
        self.error_at(tok.span, format!("expected {expected}, found {}", tok.kind))
    }

    fn expect_punct(&mut self, p: Punct) -> ParseResult<&'t Token> {
        if self.at_punct(p) {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&format!("`{}`", p.as_str())))
        }
    }

    fn finish(&self, start: Span) -> Span {
        start.to(self.prev_span())
    }

    fn binding_ident(&mut self) -> ParseResult<Ident> {
        let tok = self.peek();
        match tok.as_ident() {
            Some(name) => {
                self.bump();
                Ok(Ident { name: name.to_string(), span: tok.span })
            }
            None => Err(self.unexpected("identifier")),
        }
    }

    fn consume_semicolon(&mut self) -> ParseResult<()> {
        if self.eat_punct(Punct::Semi) {
            return Ok(());
        }
        let tok = self.peek();
        if tok.is_punct(Punct::RBrace) || tok.kind == TokenKind::Eof || tok.newline_before {
            return Ok(());
        }
        Err(self.unexpected("`;`"))
    }

    // ---- functions ----

    fn function(&mut self, declaration: bool) -> ParseResult<JsFunction> {
        let start = self.bump().span;
        let name = if declaration || self.peek().as_ident().is_some() {
            Some(self.binding_ident()?)
        } else {
            None
        };
        self.expect_punct(Punct::LParen)?;
        let mut params = Vec::new();
        if !self.at_punct(Punct::RParen) {
            loop {
                params.push(self.binding_ident()?);
                if !self.eat_punct(Punct::Comma) {
                    break;
                }
            }
        }
        self.expect_punct(Punct::RParen)?;
        self.expect_punct(Punct::LBrace)?;
        let outer = std::mem::replace(&mut self.ctx, Context { in_function: true, ..Context::default() });
        let body = self.statements_until_rbrace();
        self.ctx = outer;
        let body = body?;
        self.expect_punct(Punct::RBrace)?;
        Ok(JsFunction { name, params, body, span: self.finish(start) })
    }

    fn statements_until_rbrace(&mut self) -> ParseResult<Vec<Stmt>> {
        let mut body = Vec::new();
        while !self.at_punct(Punct::RBrace) {
            if self.at_eof() {
                return Err(self.unexpected("`}`"));
            }
            body.push(self.statement()?);
        }
        Ok(body)
    }

    // ---- statements ----

    fn statement(&mut self) -> ParseResult<Stmt> {
        let tok = self.peek();
        let start = tok.span;
        if tok.as_ident().is_some() && self.peek_nth(1).is_punct(Punct::Colon) {
            let kind = self.labeled()?;
            return Ok(Stmt { kind, span: self.finish(start) });
        }
        let kind = match &tok.kind {
            TokenKind::Punct(Punct::LBrace) => {
                self.bump();
                let body = self.statements_until_rbrace()?;
                self.bump();
                StmtKind::Block(body)
            }
            TokenKind::Punct(Punct::Semi) => {
                self.bump();
                StmtKind::Empty
            }
            TokenKind::Keyword(k) => match k {
                Keyword::Var => {
                    self.bump();
                    let decls = self.var_declarations(false)?;
                    self.consume_semicolon()?;
                    StmtKind::Var(decls)
                }
                Keyword::Function => StmtKind::Function(self.function(true)?),
                Keyword::If => self.if_statement()?,
                Keyword::Do => self.do_while()?,
                Keyword::While => {
                    self.bump();
                    let test = self.paren_expression()?;
                    let body = self.loop_body()?;
                    StmtKind::While { test, body }
                }
                Keyword::For => self.for_statement()?,
                Keyword::Continue | Keyword::Break => self.jump(*k)?,
                Keyword::Return => {
                    if !self.ctx.in_function {
                        return Err(self.error_at(tok.span, "`return` outside of a function"));
                    }
                    self.bump();
                    let arg = if self.at_statement_end() { None } else { Some(self.expression(false)?) };
                    self.consume_semicolon()?;
                    StmtKind::Return(arg)
                }
                Keyword::Switch => self.switch_statement()?,
                Keyword::Throw => {
                    self.bump();
                    if self.peek().newline_before {
                        return Err(self.error_at(self.peek().span, "line break is not allowed after `throw`"));
                    }
                    let arg = self.expression(false)?;
                    self.consume_semicolon()?;
                    StmtKind::Throw(arg)
                }
                Keyword::Try => self.try_statement()?,
                Keyword::Debugger => {
                    self.bump();
                    self.consume_semicolon()?;
                    StmtKind::Debugger
                }
                Keyword::With => {
                    return Err(Diagnostic::error(
                        codes::WITH_STATEMENT,
                        tok.span,
                        "`with` statements are not allowed in class code",
                    ))
                }
                _ => self.expression_statement()?,
            },
            _ => self.expression_statement()?,
        };
        Ok(Stmt { kind, span: self.finish(start) })
    }

    fn at_statement_end(&self) -> bool {
        let tok = self.peek();
        tok.is_punct(Punct::Semi) || tok.is_punct(Punct::RBrace) || tok.kind == TokenKind::Eof || tok.newline_before
    }

    fn expression_statement(&mut self) -> ParseResult<StmtKind> {
        let expr = self.expression(false)?;
        self.consume_semicolon()?;
        Ok(StmtKind::Expr(expr))
    }

    fn labeled(&mut self) -> ParseResult<StmtKind> {
        let label = self.binding_ident()?;
        self.bump();
        if self.ctx.labels.iter().any(|(l, _)| *l == label.name) {
            return Err(self.error_at(label.span, format!("label `{}` is already declared", label.name)));
        }
        // `a: b: while (...)` puts both labels on the loop
        let mut n = 0;
        while self.peek_nth(n).as_ident().is_some() && self.peek_nth(n + 1).is_punct(Punct::Colon) {
            n += 2;
        }
        let is_loop = matches!(
            self.peek_nth(n).kind,
            TokenKind::Keyword(Keyword::For | Keyword::While | Keyword::Do)
        );
        self.ctx.labels.push((label.name.clone(), is_loop));
        let body = self.statement();
        self.ctx.labels.pop();
        Ok(StmtKind::Labeled { label, body: Box::new(body?) })
    }

    fn var_declarations(&mut self, no_in: bool) -> ParseResult<Vec<VarDecl>> {
        let mut decls = Vec::new();
        loop {
            let name = self.binding_ident()?;
            let init = if self.eat_punct(Punct::Assign) { Some(self.assignment(no_in)?) } else { None };
            let span = self.finish(name.span);
            decls.push(VarDecl { name, init, span });
            if !self.eat_punct(Punct::Comma) {
                return Ok(decls);
            }
        }
    }

    fn paren_expression(&mut self) -> ParseResult<Expr> {
        self.expect_punct(Punct::LParen)?;
        let e = self.expression(false)?;
        self.expect_punct(Punct::RParen)?;
        Ok(e)
    }

    fn if_statement(&mut self) -> ParseResult<StmtKind> {
        self.bump();
        let test = self.paren_expression()?;
        let consequent = Box::new(self.statement()?);
        let alternate = if self.eat_keyword(Keyword::Else) { Some(Box::new(self.statement()?)) } else { None };
        Ok(StmtKind::If { test, consequent, alternate })
    }

    fn loop_body(&mut self) -> ParseResult<Box<Stmt>> {
        self.ctx.loop_depth += 1;
        let body = self.statement();
        self.ctx.loop_depth -= 1;
        body.map(Box::new)
    }

    fn do_while(&mut self) -> ParseResult<StmtKind> {
        self.bump();
        let body = self.loop_body()?;
        if !self.eat_keyword(Keyword::While) {
            return Err(self.unexpected("`while`"));
        }
        let test = self.paren_expression()?;
        // a semicolon is always inserted after `do ... while (...)`
        self.eat_punct(Punct::Semi);
        Ok(StmtKind::DoWhile { body, test })
    }

    fn for_statement(&mut self) -> ParseResult<StmtKind> {
        self.bump();
        self.expect_punct(Punct::LParen)?;
        let mut init = None;
        if self.eat_keyword(Keyword::Var) {
            let mut decls = self.var_declarations(true)?;
            if decls.len() == 1 && self.eat_keyword(Keyword::In) {
                let right = self.expression(false)?;
                self.expect_punct(Punct::RParen)?;
                let body = self.loop_body()?;
                return Ok(StmtKind::ForIn { left: ForInLeft::Var(decls.pop().unwrap()), right, body });
            }
            init = Some(ForInit::Var(decls));
        } else if !self.at_punct(Punct::Semi) {
            let expr = self.expression(true)?;
            if self.at_keyword(Keyword::In) {
                if !is_simple_target(&expr) {
                    return Err(self.error_at(expr.span, "invalid left-hand side in for-in"));
                }
                self.bump();
                let right = self.expression(false)?;
                self.expect_punct(Punct::RParen)?;
                let body = self.loop_body()?;
                return Ok(StmtKind::ForIn { left: ForInLeft::Expr(expr), right, body });
            }
            init = Some(ForInit::Expr(expr));
        }
        self.expect_punct(Punct::Semi)?;
        let test = if self.at_punct(Punct::Semi) { None } else { Some(self.expression(false)?) };
        self.expect_punct(Punct::Semi)?;
        let update = if self.at_punct(Punct::RParen) { None } else { Some(self.expression(false)?) };
        self.expect_punct(Punct::RParen)?;
        let body = self.loop_body()?;
        Ok(StmtKind::For { init, test, update, body })
    }

    fn jump(&mut self, k: Keyword) -> ParseResult<StmtKind> {
        let kw = self.bump();
        let is_break = k == Keyword::Break;
        let label = if !self.peek().newline_before && self.peek().as_ident().is_some() {
            Some(self.binding_ident()?)
        } else {
            None
        };
        match &label {
            Some(l) => match self.ctx.labels.iter().rev().find(|(name, _)| *name == l.name) {
                None => return Err(self.error_at(l.span, format!("undefined label `{}`", l.name))),
                Some((_, false)) if !is_break => {
                    return Err(self.error_at(l.span, format!("label `{}` is not on a loop", l.name)))
                }
                _ => {}
            },
            None => {
                let ok = self.ctx.loop_depth > 0 || (is_break && self.ctx.switch_depth > 0);
                if !ok {
                    let what = if is_break { "break" } else { "continue" };
                    return Err(self.error_at(kw.span, format!("illegal `{what}` statement")));
                }
            }
        }
        self.consume_semicolon()?;
        Ok(if is_break { StmtKind::Break(label) } else { StmtKind::Continue(label) })
    }

    fn switch_statement(&mut self) -> ParseResult<StmtKind> {
        self.bump();
        let discriminant = self.paren_expression()?;
        self.expect_punct(Punct::LBrace)?;
        self.ctx.switch_depth += 1;
        let cases = self.switch_cases();
        self.ctx.switch_depth -= 1;
        let cases = cases?;
        self.expect_punct(Punct::RBrace)?;
        Ok(StmtKind::Switch { discriminant, cases })
    }

    fn switch_cases(&mut self) -> ParseResult<Vec<SwitchCase>> {
        let mut cases = Vec::new();
        let mut seen_default = false;
        while !self.at_punct(Punct::RBrace) {
            let start = self.peek().span;
            let test = if self.eat_keyword(Keyword::Case) {
                Some(self.expression(false)?)
            } else if self.eat_keyword(Keyword::Default) {
                if seen_default {
                    return Err(self.error_at(start, "more than one `default` clause in switch"));
                }
                seen_default = true;
                None
            } else {
                return Err(self.unexpected("`case`, `default` or `}`"));
            };
            self.expect_punct(Punct::Colon)?;
            let mut body = Vec::new();
            while !self.at_punct(Punct::RBrace) && !self.at_keyword(Keyword::Case) && !self.at_keyword(Keyword::Default)
            {
                if self.at_eof() {
                    return Err(self.unexpected("`}`"));
                }
                body.push(self.statement()?);
            }
            cases.push(SwitchCase { test, body, span: self.finish(start) });
        }
        Ok(cases)
    }

    fn block(&mut self) -> ParseResult<Vec<Stmt>> {
        self.expect_punct(Punct::LBrace)?;
        let body = self.statements_until_rbrace()?;
        self.bump();
        Ok(body)
    }

    fn try_statement(&mut self) -> ParseResult<StmtKind> {
        self.bump();
        let block = self.block()?;
        let handler = if self.at_keyword(Keyword::Catch) {
            let start = self.bump().span;
            self.expect_punct(Punct::LParen)?;
            let param = self.binding_ident()?;
            self.expect_punct(Punct::RParen)?;
            let body = self.block()?;
            Some(CatchClause { param, body, span: self.finish(start) })
        } else {
            None
        };
        let finalizer = if self.eat_keyword(Keyword::Finally) { Some(self.block()?) } else { None };
        if handler.is_none() && finalizer.is_none() {
            return Err(self.unexpected("`catch` or `finally`"));
        }
        Ok(StmtKind::Try { block, handler, finalizer })
    }

    // ---- expressions ----

    fn expression(&mut self, no_in: bool) -> ParseResult<Expr> {
        let first = self.assignment(no_in)?;
        if !self.at_punct(Punct::Comma) {
            return Ok(first);
        }
        let start = first.span;
        let mut items = vec![first];
        while self.eat_punct(Punct::Comma) {
            items.push(self.assignment(no_in)?);
        }
        Ok(Expr { kind: ExprKind::Sequence(items), span: self.finish(start) })
    }

    fn assignment(&mut self, no_in: bool) -> ParseResult<Expr> {
        let target = self.conditional(no_in)?;
        let Some(op) = assign_op(self.peek()) else {
            return Ok(target);
        };
        if !is_simple_target(&target) {
            return Err(self.error_at(target.span, "invalid left-hand side in assignment"));
        }
        self.bump();
        let value = self.assignment(no_in)?;
        let span = target.span.to(value.span);
        Ok(Expr { kind: ExprKind::Assign { op, target: Box::new(target), value: Box::new(value) }, span })
    }

    fn conditional(&mut self, no_in: bool) -> ParseResult<Expr> {
        let test = self.binary(0, no_in)?;
        if !self.eat_punct(Punct::Question) {
            return Ok(test);
        }
        let consequent = self.assignment(false)?;
        self.expect_punct(Punct::Colon)?;
        let alternate = self.assignment(no_in)?;
        let span = test.span.to(alternate.span);
        Ok(Expr {
            kind: ExprKind::Conditional {
                test: Box::new(test),
                consequent: Box::new(consequent),
                alternate: Box::new(alternate),
            },
            span,
        })
    }

    fn binary(&mut self, min_prec: u8, no_in: bool) -> ParseResult<Expr> {
        let mut left = self.unary()?;
        while let Some((prec, op)) = binary_precedence(self.peek(), no_in) {
            if prec <= min_prec {
                break;
            }
            self.bump();
            let right = self.binary(prec, no_in)?;
            let span = left.span.to(right.span);
            left = Expr { kind: ExprKind::Binary { op, left: Box::new(left), right: Box::new(right) }, span };
        }
        Ok(left)
    }

    fn unary(&mut self) -> ParseResult<Expr> {
        let tok = self.peek();
        let op = match &tok.kind {
            TokenKind::Keyword(Keyword::Delete) => Some(UnaryOp::Delete),
            TokenKind::Keyword(Keyword::Void) => Some(UnaryOp::Void),
            TokenKind::Keyword(Keyword::Typeof) => Some(UnaryOp::Typeof),
            TokenKind::Punct(Punct::Plus) => Some(UnaryOp::Plus),
            TokenKind::Punct(Punct::Minus) => Some(UnaryOp::Minus),
            TokenKind::Punct(Punct::Tilde) => Some(UnaryOp::BitNot),
            TokenKind::Punct(Punct::Bang) => Some(UnaryOp::Not),
            _ => None,
        };
        if let Some(op) = op {
            self.bump();
            let arg = self.unary()?;
            let span = tok.span.to(arg.span);
            return Ok(Expr { kind: ExprKind::Unary { op, arg: Box::new(arg) }, span });
        }
        let update = match tok.kind {
            TokenKind::Punct(Punct::PlusPlus) => Some(UpdateOp::Increment),
            TokenKind::Punct(Punct::MinusMinus) => Some(UpdateOp::Decrement),
            _ => None,
        };
        if let Some(op) = update {
            self.bump();
            let arg = self.unary()?;
            if !is_simple_target(&arg) {
                return Err(self.error_at(arg.span, "invalid left-hand side in prefix operation"));
            }
            let span = tok.span.to(arg.span);
            return Ok(Expr { kind: ExprKind::Update { op, prefix: true, arg: Box::new(arg) }, span });
        }
        self.postfix()
    }

    fn postfix(&mut self) -> ParseResult<Expr> {
        let expr = self.left_hand_side(true)?;
        let tok = self.peek();
        if tok.newline_before {
            return Ok(expr);
        }
        let op = match tok.kind {
            TokenKind::Punct(Punct::PlusPlus) => UpdateOp::Increment,
            TokenKind::Punct(Punct::MinusMinus) => UpdateOp::Decrement,
            _ => return Ok(expr),
        };
        if !is_simple_target(&expr) {
            return Err(self.error_at(expr.span, "invalid left-hand side in postfix operation"));
        }
        self.bump();
        let span = expr.span.to(tok.span);
        Ok(Expr { kind: ExprKind::Update { op, prefix: false, arg: Box::new(expr) }, span })
    }

    fn left_hand_side(&mut self, allow_call: bool) -> ParseResult<Expr> {
        let mut expr = if self.at_keyword(Keyword::New) {
            let start = self.bump().span;
            let callee = self.left_hand_side(false)?;
            let args = if self.at_punct(Punct::LParen) { self.arguments()? } else { Vec::new() };
            Expr { kind: ExprKind::New { callee: Box::new(callee), args }, span: self.finish(start) }
        } else {
            self.primary()?
        };
        loop {
            let start = expr.span;
            if self.eat_punct(Punct::Dot) {
                let tok = self.peek();
                let Some(name) = tok.as_identifier_name() else {
                    return Err(self.unexpected("property name"));
                };
                self.bump();
                let property = Ident { name: name.to_string(), span: tok.span };
                expr = Expr { kind: ExprKind::Member { object: Box::new(expr), property }, span: self.finish(start) };
            } else if self.eat_punct(Punct::LBracket) {
                let index = self.expression(false)?;
                self.expect_punct(Punct::RBracket)?;
                expr = Expr {
                    kind: ExprKind::Index { object: Box::new(expr), index: Box::new(index) },
                    span: self.finish(start),
                };
            } else if allow_call && self.at_punct(Punct::LParen) {
                let args = self.arguments()?;
                expr = Expr { kind: ExprKind::Call { callee: Box::new(expr), args }, span: self.finish(start) };
            } else {
                return Ok(expr);
            }
        }
    }

    fn arguments(&mut self) -> ParseResult<Vec<Expr>> {
        self.expect_punct(Punct::LParen)?;
        let mut args = Vec::new();
        if !self.at_punct(Punct::RParen) {
            loop {
                args.push(self.assignment(false)?);
                if !self.eat_punct(Punct::Comma) {
                    break;
                }
            }
        }
        self.expect_punct(Punct::RParen)?;
        Ok(args)
    }

    fn primary(&mut self) -> ParseResult<Expr> {
        let tok = self.peek();
        let kind = match &tok.kind {
            TokenKind::Keyword(Keyword::This) => ExprKind::This,
            TokenKind::Keyword(Keyword::Null) => ExprKind::Null,
            TokenKind::Keyword(Keyword::True) => ExprKind::Bool(true),
            TokenKind::Keyword(Keyword::False) => ExprKind::Bool(false),
            TokenKind::Keyword(Keyword::Function) => {
                let f = self.function(false)?;
                let span = f.span;
                return Ok(Expr { kind: ExprKind::Function(Box::new(f)), span });
            }
            TokenKind::Num(n) => ExprKind::Num(*n),
            TokenKind::Str(s) => ExprKind::Str(s.clone()),
            TokenKind::Regex { pattern, flags } => ExprKind::Regex { pattern: pattern.clone(), flags: flags.clone() },
            TokenKind::Punct(Punct::LParen) => {
                self.bump();
                let inner = self.expression(false)?;
                self.expect_punct(Punct::RParen)?;
                return Ok(inner);
            }
            TokenKind::Punct(Punct::LBracket) => return self.array_literal(),
            TokenKind::Punct(Punct::LBrace) => return self.object_literal(),
            _ => match tok.as_ident() {
                Some(name) => ExprKind::Ident(name.to_string()),
                None => return Err(self.unexpected("expression")),
            },
        };
        self.bump();
        Ok(Expr { kind, span: tok.span })
    }

    fn array_literal(&mut self) -> ParseResult<Expr> {
        let start = self.bump().span;
        let mut items = Vec::new();
        loop {
            if self.eat_punct(Punct::RBracket) {
                break;
            }
            if self.eat_punct(Punct::Comma) {
                items.push(None);
                continue;
            }
            items.push(Some(self.assignment(false)?));
            if !self.at_punct(Punct::RBracket) {
                self.expect_punct(Punct::Comma)?;
            }
        }
        Ok(Expr { kind: ExprKind::Array(items), span: self.finish(start) })
    }

    fn object_literal(&mut self) -> ParseResult<Expr> {
        let start = self.bump().span;
        let mut props = Vec::new();
        while !self.eat_punct(Punct::RBrace) {
            let tok = self.peek();
            let key = match &tok.kind {
                TokenKind::Str(s) => PropKey::Str(s.clone()),
                TokenKind::Num(n) => PropKey::Num(*n),
                _ => match tok.as_identifier_name() {
                    Some(name) => PropKey::Ident(name.to_string()),
                    None => return Err(self.unexpected("property name")),
                },
            };
            self.bump();
            if matches!(&key, PropKey::Ident(n) if n == "get" || n == "set") && !self.at_punct(Punct::Colon) {
                let next = self.peek();
                if next.as_identifier_name().is_some() || matches!(next.kind, TokenKind::Str(_) | TokenKind::Num(_)) {
                    return Err(Diagnostic::error(
                        codes::ACCESSOR_PROPERTY,
                        tok.span.to(next.span),
                        "getter/setter properties in object literals are not supported",
                    ));
                }
            }
            self.expect_punct(Punct::Colon)?;
            let value = self.assignment(false)?;
            props.push(Property { key, span: tok.span.to(value.span), value });
            if !self.at_punct(Punct::RBrace) {
                self.expect_punct(Punct::Comma)?;
            }
        }
        Ok(Expr { kind: ExprKind::Object(props), span: self.finish(start) })
    }
}
