//! Parser for the declaration layer of a `.jsc` unit:
//!
//! ```text
//! unit         := "package" dotted ";" (classDecl | protocolDecl)
//! classDecl    := "class" IDENT ("extends" dotted ("," dotted)*)? "{" members "}"
//! member       := "slots" ":" slotList | "static" ":" "{" methods "}" | IDENT ":" functionExpr
//! protocolDecl := "protocol" IDENT ("extends" dotted ("," dotted)*)? "{" (IDENT ":" bool),* "}"
//! ```
//!
//! Members are comma separated and a trailing comma is accepted. Function
//! bodies and slot defaults are handed to the ES5 parser.

use std::collections::HashMap;

use crate::diagnostic::{codes, Diagnostic};
use crate::js::{self, ast::Expr};
use crate::pool::derive_accessor_names;
use crate::span::{FileId, Span};
use crate::syntax::ast::*;
use crate::syntax::lexer::tokenize;
use crate::syntax::token::{Keyword, Punct, Token, TokenKind};

/// Parses one `.jsc` source file.
pub fn parse_unit(source: &str, file_path: &str, file_id: FileId) -> Result<SourceUnit, Vec<Diagnostic>> {
    let tokens = tokenize(source, file_id)?;
    let mut p = UnitParser { source, tokens: &tokens, pos: 0, errors: Vec::new() };
    match p.unit(file_path, file_id) {
        Ok(unit) if p.errors.is_empty() => Ok(unit),
        Ok(_) => Err(p.errors),
        Err(fatal) => {
            p.errors.push(fatal);
            Err(p.errors)
        }
    }
}

/// `[A-Za-z_$][A-Za-z0-9_$]*`
pub fn is_plain_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_' || c == '$')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '$')
}

type PResult<T> = Result<T, Diagnostic>;

struct UnitParser<'s, 't> {
    source: &'s str,
    tokens: &'t [Token],
    pos: usize,
    /// Non-fatal errors; parsing continues after these.
    errors: Vec<Diagnostic>,
}

impl<'s, 't> UnitParser<'s, 't> {
    fn peek(&self) -> &'t Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn bump(&mut self) -> &'t Token {
        let t = self.peek();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn prev_span(&self) -> Span {
        self.tokens[self.pos.saturating_sub(1)].span
    }

    fn malformed(&self, expected: &str) -> Diagnostic {
        let tok = self.peek();
        Diagnostic::error(codes::MALFORMED_DECL, tok.span, format!("expected {expected}, found {}", tok.kind))
    }

    fn expect_punct(&mut self, p: Punct) -> PResult<&'t Token> {
        if self.peek().is_punct(p) {
            Ok(self.bump())
        } else {
            Err(self.malformed(&format!("`{}`", p.as_str())))
        }
    }

    fn eat_punct(&mut self, p: Punct) -> bool {
        if self.peek().is_punct(p) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, Span)> {
        let tok = self.peek();
        match tok.as_ident() {
            Some(name) => {
                self.bump();
                Ok((name.to_string(), tok.span))
            }
            None => Err(self.malformed(what)),
        }
    }

    /// A member key: any IdentifierName.
    fn member_name(&mut self) -> PResult<(String, Span)> {
        let tok = self.peek();
        match tok.as_identifier_name() {
            Some(name) => {
                self.bump();
                Ok((name.to_string(), tok.span))
            }
            None => Err(self.malformed("member name")),
        }
    }

    fn dotted(&mut self, what: &str) -> PResult<DottedName> {
        let (first, start) = self.ident(what)?;
        let mut segments = vec![first];
        while self.eat_punct(Punct::Dot) {
            segments.push(self.ident("identifier after `.`")?.0);
        }
        let span = start.to(self.prev_span());
        if let Some(bad) = segments.iter().find(|s| !is_plain_identifier(s)) {
            return Err(Diagnostic::error(
                codes::MALFORMED_DECL,
                span,
                format!("`{bad}` is not a valid package or class name segment"),
            ));
        }
        Ok(DottedName { segments, span })
    }

    fn unit(&mut self, file_path: &str, file_id: FileId) -> PResult<SourceUnit> {
        if !self.peek().is_keyword(Keyword::Package) {
            return Err(self.malformed("`package` declaration"));
        }
        self.bump();
        let package = self.dotted("package name")?;
        self.expect_punct(Punct::Semi)?;
        let tok = self.peek();
        let decl = match tok.kind {
            TokenKind::Keyword(Keyword::Class) => Decl::Class(self.class_decl(package.clone())?),
            TokenKind::Keyword(Keyword::Protocol) => Decl::Protocol(self.protocol_decl(package.clone())?),
            _ => return Err(self.malformed("`class` or `protocol` declaration")),
        };
        let rest = self.peek();
        if rest.kind != TokenKind::Eof {
            let last = self.tokens[self.tokens.len() - 1].span;
            return Err(Diagnostic::error(
                codes::TRAILING_INPUT,
                rest.span.to(last),
                "unexpected input after the declaration",
            ));
        }
        Ok(SourceUnit { file_path: file_path.to_string(), file_id, package, decl })
    }

    fn supers(&mut self) -> PResult<Vec<DottedName>> {
        let mut supers = Vec::new();
        if self.peek().is_keyword(Keyword::Extends) {
            self.bump();
            loop {
                supers.push(self.dotted("super class or protocol name")?);
                if !self.eat_punct(Punct::Comma) {
                    break;
                }
            }
        }
        Ok(supers)
    }

    /// Parses `{ item (, item)* ,? }` calling `item` for each entry.
    fn comma_list(&mut self, mut item: impl FnMut(&mut Self) -> PResult<()>) -> PResult<()> {
        self.expect_punct(Punct::LBrace)?;
        while !self.eat_punct(Punct::RBrace) {
            item(self)?;
            if !self.peek().is_punct(Punct::RBrace) && !self.eat_punct(Punct::Comma) {
                return Err(self.malformed("`,` or `}`"));
            }
        }
        Ok(())
    }

    fn class_decl(&mut self, package: PackagePath) -> PResult<ClassDecl> {
        let start = self.bump().span;
        let (name, name_span) = self.ident("class name")?;
        let supers = self.supers()?;
        let mut decl = ClassDecl {
            package,
            name,
            name_span,
            supers,
            slots: Vec::new(),
            methods: Vec::new(),
            statics: Vec::new(),
            ctor: None,
            span: start,
        };
        let mut seen_sections: HashMap<&'static str, Span> = HashMap::new();
        self.comma_list(|p| {
            let key_tok = p.peek();
            let (key, key_span) = p.member_name()?;
            p.expect_punct(Punct::Colon)?;
            let section = match key.as_str() {
                "slots" if !p.peek().is_keyword(Keyword::Function) => Some("slots"),
                "static" if p.peek().is_punct(Punct::LBrace) => Some("static"),
                _ => None,
            };
            if let Some(section) = section {
                if let Some(first) = seen_sections.insert(section, key_span) {
                    p.errors.push(
                        Diagnostic::error(codes::DUPLICATE_MEMBER, key_span, format!("duplicate `{section}` section"))
                            .with_note(Some(first), "first declared here"),
                    );
                }
                if section == "slots" {
                    p.slot_list(&mut decl.slots)
                } else {
                    p.static_list(&mut decl.statics)
                }
            } else {
                let method = p.method(key, key_tok.span, false)?;
                if method.name == decl.name {
                    match &decl.ctor {
                        Some(first) => p.errors.push(
                            Diagnostic::error(
                                codes::DUPLICATE_CTOR,
                                method.name_span,
                                format!("class `{}` declares more than one constructor; only one is allowed", decl.name),
                            )
                            .with_note(Some(first.name_span), "first constructor declared here"),
                        ),
                        None => decl.ctor = Some(method),
                    }
                } else {
                    push_unique_method(&mut decl.methods, method, &mut p.errors);
                }
                Ok(())
            }
        })?;
        decl.span = start.to(self.prev_span());
        Ok(decl)
    }

    fn method(&mut self, name: String, name_span: Span, is_static: bool) -> PResult<MethodDecl> {
        if !self.peek().is_keyword(Keyword::Function) {
            return Err(self.malformed("function expression"));
        }
        let (body, end) = js::parse_function_expression(self.tokens, self.pos).map_err(first)?;
        self.pos = end;
        let body_text = js::extract_body_text(&body, self.source).to_string();
        let params = body.params.iter().map(|p| p.name.clone()).collect();
        let span = name_span.to(body.span);
        Ok(MethodDecl { name, name_span, params, body, body_text, is_static, span })
    }

    fn static_list(&mut self, out: &mut Vec<MethodDecl>) -> PResult<()> {
        self.comma_list(|p| {
            let (name, span) = p.member_name()?;
            p.expect_punct(Punct::Colon)?;
            let method = p.method(name, span, true)?;
            push_unique_method(out, method, &mut p.errors);
            Ok(())
        })
    }

    fn slot_list(&mut self, out: &mut Vec<SlotSpec>) -> PResult<()> {
        if self.eat_punct(Punct::LBracket) {
            while !self.eat_punct(Punct::RBracket) {
                let (name, span) = self.ident("slot name")?;
                let (getter_name, setter_name) = derive_accessor_names(&name);
                self.push_slot(out, SlotSpec { name, getter_name, setter_name, default: None, span });
                if !self.peek().is_punct(Punct::RBracket) && !self.eat_punct(Punct::Comma) {
                    return Err(self.malformed("`,` or `]`"));
                }
            }
            return Ok(());
        }
        if !self.peek().is_punct(Punct::LBrace) {
            return Err(self.malformed("`[` or `{` after `slots:`"));
        }
        self.comma_list(|p| {
            let (name, name_span) = p.ident("slot name")?;
            p.expect_punct(Punct::Colon)?;
            let slot = p.slot_options(name, name_span)?;
            p.push_slot(out, slot);
            Ok(())
        })
    }

    fn slot_options(&mut self, name: String, name_span: Span) -> PResult<SlotSpec> {
        let (derived_get, derived_set) = derive_accessor_names(&name);
        let mut getter: Option<String> = None;
        let mut setter: Option<String> = None;
        let mut default: Option<SlotDefault> = None;
        let slot_name = name.clone();
        self.comma_list(|p| {
            let (key, key_span) = p.member_name()?;
            p.expect_punct(Punct::Colon)?;
            let already = match key.as_str() {
                "getter" | "setter" => {
                    let tok = p.peek();
                    let TokenKind::Str(value) = &tok.kind else {
                        return Err(p.malformed("string literal naming the accessor"));
                    };
                    p.bump();
                    if !is_plain_identifier(value) {
                        p.errors.push(Diagnostic::error(
                            codes::INVALID_SLOT,
                            tok.span,
                            format!("accessor name `{value}` for slot `{slot_name}` is not a valid identifier"),
                        ));
                    }
                    let target = if key == "getter" { &mut getter } else { &mut setter };
                    target.replace(value.clone()).is_some()
                }
                "default" => {
                    let (expr, end) = js::parse_assignment_expression(p.tokens, p.pos).map_err(first)?;
                    p.pos = end;
                    let text = p.source[expr.span.start..expr.span.end].to_string();
                    default.replace(SlotDefault { text, expr }).is_some()
                }
                other => {
                    p.errors.push(Diagnostic::error(
                        codes::INVALID_SLOT,
                        key_span,
                        format!("unknown slot option `{other}`; expected `getter`, `setter` or `default`"),
                    ));
                    skip_value(p)?;
                    false
                }
            };
            if already {
                p.errors.push(Diagnostic::error(
                    codes::INVALID_SLOT,
                    key_span,
                    format!("slot option `{key}` given more than once for slot `{slot_name}`"),
                ));
            }
            Ok(())
        })?;
        let span = name_span.to(self.prev_span());
        let slot = SlotSpec {
            name,
            getter_name: getter.unwrap_or(derived_get),
            setter_name: setter.unwrap_or(derived_set),
            default,
            span,
        };
        if slot.getter_name == slot.setter_name {
            self.errors.push(Diagnostic::error(
                codes::INVALID_SLOT,
                span,
                format!("slot `{}` uses `{}` as both getter and setter", slot.name, slot.getter_name),
            ));
        }
        Ok(slot)
    }

    fn push_slot(&mut self, out: &mut Vec<SlotSpec>, slot: SlotSpec) {
        if let Some(first) = out.iter().find(|s| s.name == slot.name) {
            self.errors.push(
                Diagnostic::error(codes::DUPLICATE_MEMBER, slot.span, format!("duplicate slot `{}`", slot.name))
                    .with_note(Some(first.span), "first declared here"),
            );
        } else {
            out.push(slot);
        }
    }

    fn protocol_decl(&mut self, package: PackagePath) -> PResult<ProtocolDecl> {
        let start = self.bump().span;
        let (name, name_span) = self.ident("protocol name")?;
        let supers = self.supers()?;
        let mut requirements: Vec<Requirement> = Vec::new();
        self.comma_list(|p| {
            let (method, span) = p.member_name()?;
            p.expect_punct(Punct::Colon)?;
            let tok = p.peek();
            let required = match tok.kind {
                TokenKind::Keyword(Keyword::True) => Some(true),
                TokenKind::Keyword(Keyword::False) => Some(false),
                _ => None,
            };
            match required {
                Some(_) => {
                    p.bump();
                }
                None => {
                    let start = p.peek().span;
                    skip_value(p)?;
                    p.errors.push(Diagnostic::error(
                        codes::BAD_REQUIREMENT_FLAG,
                        start.to(p.prev_span()),
                        format!("protocol member `{method}` must be `true` (required) or `false` (optional)"),
                    ));
                }
            }
            if let Some(first) = requirements.iter().find(|r| r.name == method) {
                p.errors.push(
                    Diagnostic::error(codes::DUPLICATE_MEMBER, span, format!("duplicate protocol member `{method}`"))
                        .with_note(Some(first.span), "first declared here"),
                );
            } else {
                requirements.push(Requirement { name: method, required: required.unwrap_or(true), span });
            }
            Ok(())
        })?;
        Ok(ProtocolDecl { package, name, name_span, supers, requirements, span: start.to(self.prev_span()) })
    }
}

fn first(mut diags: Vec<Diagnostic>) -> Diagnostic {
    diags.swap_remove(0)
}

fn push_unique_method(out: &mut Vec<MethodDecl>, method: MethodDecl, errors: &mut Vec<Diagnostic>) {
    if let Some(prev) = out.iter().find(|m| m.name == method.name) {
        let what = if method.is_static { "static method" } else { "method" };
        errors.push(
            Diagnostic::error(codes::DUPLICATE_MEMBER, method.name_span, format!("duplicate {what} `{}`", method.name))
                .with_note(Some(prev.name_span), "first declared here"),
        );
    } else {
        out.push(method);
    }
}

/// Skips one member value: an ES5 expression if it parses, otherwise tokens
/// up to the next `,` or `}` at nesting depth zero.
fn skip_value(p: &mut UnitParser<'_, '_>) -> PResult<Option<Expr>> {
    if let Ok((expr, end)) = js::parse_assignment_expression(p.tokens, p.pos) {
        p.pos = end;
        return Ok(Some(expr));
    }
    let mut depth = 0usize;
    loop {
        let tok = p.peek();
        match tok.kind {
            TokenKind::Eof => return Err(p.malformed("`}`")),
            TokenKind::Punct(Punct::LBrace | Punct::LBracket | Punct::LParen) => depth += 1,
            TokenKind::Punct(Punct::RBrace | Punct::RBracket | Punct::RParen) if depth == 0 => return Ok(None),
            TokenKind::Punct(Punct::RBrace | Punct::RBracket | Punct::RParen) => depth -= 1,
            TokenKind::Punct(Punct::Comma) if depth == 0 => return Ok(None),
            _ => {}
        }
        p.bump();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(src: &str) -> Result<SourceUnit, Vec<Diagnostic>> {
        parse_unit(src, "P/A.jsc", FileId(0))
    }

    fn class(src: &str) -> ClassDecl {
        match parse(src).unwrap_or_else(|e| panic!("{:?}", e)).decl {
            Decl::Class(c) => c,
            Decl::Protocol(_) => panic!("expected class"),
        }
    }

    fn codes_of(src: &str) -> Vec<&'static str> {
        parse(src).unwrap_err().into_iter().map(|d| d.code).collect()
    }

    #[test]
    fn empty_class() {
        let c = class("package P; class A {}");
        assert_eq!(c.package.text(), "P");
        assert!(c.slots.is_empty() && c.methods.is_empty() && c.statics.is_empty() && c.ctor.is_none());
    }

    #[test]
    fn trailing_comma_and_member_order() {
        let c = class("package P; class A { b: function(){}, a: function(){}, }");
        let names: Vec<_> = c.methods.iter().map(|m| m.name.as_str()).collect();
        assert_eq!(names, ["b", "a"]);
    }

    #[test]
    fn two_ctors() {
        assert_eq!(codes_of("package P; class A { A: function(){}, A: function(x){} }"), ["JSC-E002"]);
    }

    #[test]
    fn duplicates() {
        assert_eq!(codes_of("package P; class A { slots:[x,x] }"), ["JSC-E004"]);
        assert_eq!(codes_of("package P; class A { m: function(){}, m: function(){} }"), ["JSC-E004"]);
        assert_eq!(codes_of("package P; protocol D { a: true, a: false }"), ["JSC-E004"]);
        // instance and static namespaces are separate
        class("package P; class A { m: function(){}, static: { m: function(){} } }");
    }

    #[test]
    fn protocol_flag_must_be_boolean() {
        assert_eq!(codes_of("package P; protocol D { a: 1, b: \"x\" + y }"), ["JSC-E005", "JSC-E005"]);
    }

    #[test]
    fn trailing_garbage() {
        assert_eq!(codes_of("package P; class A {} extra"), ["JSC-E006"]);
    }

    #[test]
    fn malformed_header() {
        assert_eq!(codes_of("class A {}"), ["JSC-E014"]);
        assert_eq!(codes_of("package P; class A { m: 1 }"), ["JSC-E014"]);
    }

    #[test]
    fn body_errors_propagate() {
        assert_eq!(codes_of("package P; class A { m: function(){ with (a) {} } }"), ["JSC-E020"]);
        assert_eq!(codes_of("package P; class A { m: function(){ a b } }"), ["JSC-E021"]);
    }

    #[test]
    fn extended_slots() {
        let c = class(
            "package P; class A { slots: { s: { getter: \"g\\u0041\", default: [1, 2] }, t: {} } }",
        );
        assert_eq!(c.slots[0].getter_name, "gA");
        assert_eq!(c.slots[0].setter_name, "setS");
        assert_eq!(c.slots[0].default.as_ref().unwrap().text, "[1, 2]");
        assert_eq!((c.slots[1].getter_name.as_str(), c.slots[1].setter_name.as_str()), ("getT", "setT"));
    }

    #[test]
    fn slot_option_errors() {
        assert_eq!(codes_of("package P; class A { slots: { s: { getter: \"x\", setter: \"x\" } } }"), ["JSC-E015"]);
        assert_eq!(codes_of("package P; class A { slots: { s: { color: 1 } } }"), ["JSC-E015"]);
        assert_eq!(codes_of("package P; class A { slots: { s: { getter: \"not ok\" } } }"), ["JSC-E015"]);
    }

    #[test]
    fn unicode_package_segment_rejected() {
        assert_eq!(codes_of("package Pé; class A {}"), ["JSC-E014"]);
    }

    #[test]
    fn keywords_are_plain_identifiers_in_bodies() {
        let c = class("package P; class A { m: function(){ var package = 1, protocol = 2; return package + protocol; } }");
        assert_eq!(c.methods[0].params.len(), 0);
    }
}
