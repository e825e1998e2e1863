//! Tokenizer shared by the declaration parser and the ES5 body parser.

use crate::diagnostic::{codes, Diagnostic};
use crate::span::{FileId, Span};
use crate::syntax::token::{Keyword, Punct, Token, TokenKind};

/// Tokenizes a whole source text. The returned list always ends with
/// [`TokenKind::Eof`]. Comments are skipped; a comment containing a line
/// terminator counts as a line break for the following token.
pub fn tokenize(source: &str, file_id: FileId) -> Result<Vec<Token>, Vec<Diagnostic>> {
    let mut lexer = Lexer::new(source, file_id);
    let mut tokens = Vec::new();
    loop {
        match lexer.next_token(&tokens[tokens.len().saturating_sub(2)..]) {
            Ok(tok) => {
                let eof = tok.kind == TokenKind::Eof;
                tokens.push(tok);
                if eof {
                    break;
                }
            }
            Err(fatal) => {
                lexer.errors.push(fatal);
                break;
            }
        }
    }
    if lexer.errors.is_empty() {
        Ok(tokens)
    } else {
        Err(lexer.errors)
    }
}

fn is_line_terminator(c: char) -> bool {
    matches!(c, '\n' | '\r' | '\u{2028}' | '\u{2029}')
}

fn is_id_start(c: char) -> bool {
    c == '$' || c == '_' || c.is_alphabetic()
}

fn is_id_part(c: char) -> bool {
    is_id_start(c) || c.is_alphanumeric() || c == '\u{200c}' || c == '\u{200d}'
}

#[derive(Clone, Copy)]
struct Mark {
    pos: usize,
    line: u32,
    col: u32,
}

struct Lexer<'a> {
    src: &'a str,
    file_id: FileId,
    pos: usize,
    line: u32,
    col: u32,
    errors: Vec<Diagnostic>,
    /// One entry per open `(`: whether it opens an `if`/`while`/`for`/`with`
    /// header, after which a `/` starts a regex.
    parens: Vec<bool>,
    last_paren_was_header: bool,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, file_id: FileId) -> Self {
        Lexer { src, file_id, pos: 0, line: 1, col: 1, errors: Vec::new(), parens: Vec::new(), last_paren_was_header: false }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.src[self.pos..].chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        match c {
            '\r' if self.peek() == Some('\n') => self.col += 1,
            c if is_line_terminator(c) => {
                self.line += 1;
                self.col = 1;
            }
            _ => self.col += 1,
        }
        Some(c)
    }

    fn mark(&self) -> Mark {
        Mark { pos: self.pos, line: self.line, col: self.col }
    }

    fn span_from(&self, m: Mark) -> Span {
        Span {
            file_id: self.file_id,
            start: m.pos,
            end: self.pos,
            start_line: m.line,
            start_col: m.col,
            end_line: self.line,
            end_col: self.col,
        }
    }

    fn error(&self, m: Mark, msg: impl Into<String>) -> Diagnostic {
        Diagnostic::error(codes::UNTERMINATED, self.span_from(m), msg)
    }

    /// Skips whitespace and comments; reports whether a line break was seen.
    fn skip_trivia(&mut self) -> Result<bool, Diagnostic> {
        let mut newline = false;
        while let Some(c) = self.peek() {
            if is_line_terminator(c) {
                newline = true;
                self.bump();
            } else if c.is_whitespace() || c == '\u{feff}' {
                self.bump();
            } else if c == '/' && self.peek_at(1) == Some('/') {
                while let Some(c) = self.peek() {
                    if is_line_terminator(c) {
                        break;
                    }
                    self.bump();
                }
            } else if c == '/' && self.peek_at(1) == Some('*') {
                let start = self.mark();
                self.bump();
                self.bump();
                loop {
                    match self.bump() {
                        None => return Err(self.error(start, "unterminated block comment")),
                        Some('*') if self.peek() == Some('/') => {
                            self.bump();
                            break;
                        }
                        Some(c) if is_line_terminator(c) => newline = true,
                        Some(_) => {}
                    }
                }
            } else {
                break;
            }
        }
        Ok(newline)
    }

    fn next_token(&mut self, recent: &[Token]) -> Result<Token, Diagnostic> {
        let prev = recent.last();
        loop {
            let newline_before = self.skip_trivia()?;
            let start = self.mark();
            let Some(c) = self.peek() else {
                return Ok(Token { kind: TokenKind::Eof, span: self.span_from(start), newline_before });
            };
            let kind = if is_id_start(c) || c == '\\' {
                self.identifier(start)?
            } else if c.is_ascii_digit() || (c == '.' && self.peek_at(1).is_some_and(|d| d.is_ascii_digit())) {
                self.number(start)?
            } else if c == '"' || c == '\'' {
                self.string(start, c)?
            } else if c == '/' && self.regex_allowed(recent) {
                self.regex(start)?
            } else if let Some(p) = self.punct() {
                match p {
                    Punct::LParen => self.parens.push(prev.is_some_and(|t| {
                        matches!(t.kind, TokenKind::Keyword(Keyword::If | Keyword::While | Keyword::For | Keyword::With))
                    })),
                    Punct::RParen => self.last_paren_was_header = self.parens.pop().unwrap_or(false),
                    _ => {}
                }
                TokenKind::Punct(p)
            } else {
                self.bump();
                self.errors.push(self.error(start, format!("unexpected character `{}`", c.escape_debug())));
                continue;
            };
            return Ok(Token { kind, span: self.span_from(start), newline_before });
        }
    }

    fn regex_allowed(&self, recent: &[Token]) -> bool {
        let Some(prev) = recent.last() else { return true };
        let after_dot = recent.len() == 2 && recent[0].is_punct(Punct::Dot);
        match &prev.kind {
            TokenKind::Ident(_) | TokenKind::Num(_) | TokenKind::Str(_) | TokenKind::Regex { .. } => false,
            TokenKind::Keyword(_) if after_dot => false,
            TokenKind::Keyword(k) => !matches!(
                k,
                Keyword::This | Keyword::Null | Keyword::True | Keyword::False | Keyword::Package | Keyword::Protocol
            ),
            TokenKind::Punct(Punct::RParen) => self.last_paren_was_header,
            TokenKind::Punct(p) => !matches!(p, Punct::RBracket | Punct::PlusPlus | Punct::MinusMinus),
            TokenKind::Eof => true,
        }
    }

    fn punct(&mut self) -> Option<Punct> {
        let rest = &self.src[self.pos..];
        let p = Punct::BY_LENGTH.iter().copied().find(|p| rest.starts_with(p.as_str()))?;
        for _ in 0..p.as_str().len() {
            self.bump();
        }
        Some(p)
    }

    fn identifier(&mut self, start: Mark) -> Result<TokenKind, Diagnostic> {
        let mut name = String::new();
        let mut escaped = false;
        while let Some(c) = self.peek() {
            if c == '\\' {
                let esc = self.mark();
                self.bump();
                if self.bump() != Some('u') {
                    return Err(self.error(esc, "invalid escape in identifier"));
                }
                match self.hex_digits(4) {
                    Some(ch) if (name.is_empty() && is_id_start(ch)) || (!name.is_empty() && is_id_part(ch)) => {
                        name.push(ch);
                        escaped = true;
                    }
                    _ => return Err(self.error(esc, "invalid unicode escape in identifier")),
                }
            } else if (name.is_empty() && is_id_start(c)) || (!name.is_empty() && is_id_part(c)) {
                name.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if name.is_empty() {
            return Err(self.error(start, "invalid identifier"));
        }
        Ok(match Keyword::from_word(&name) {
            Some(k) if !escaped => TokenKind::Keyword(k),
            _ => TokenKind::Ident(name),
        })
    }

    fn hex_digits(&mut self, n: usize) -> Option<char> {
        let mut v = 0u32;
        for _ in 0..n {
            let d = self.peek()?.to_digit(16)?;
            self.bump();
            v = v * 16 + d;
        }
        char::from_u32(v)
    }

    fn eat_digits(&mut self, radix: u32) -> usize {
        let mut n = 0;
        while self.peek().is_some_and(|c| c.is_digit(radix)) {
            self.bump();
            n += 1;
        }
        n
    }

    fn number(&mut self, start: Mark) -> Result<TokenKind, Diagnostic> {
        let value = if self.peek() == Some('0') && matches!(self.peek_at(1), Some('x' | 'X')) {
            self.bump();
            self.bump();
            let digits_start = self.pos;
            if self.eat_digits(16) == 0 {
                return Err(self.error(start, "missing hexadecimal digits"));
            }
            u64::from_str_radix(&self.src[digits_start..self.pos], 16).map(|v| v as f64).unwrap_or(f64::INFINITY)
        } else if self.peek() == Some('0') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            // legacy octal, or decimal when a digit 8/9 appears
            self.bump();
            let digits_start = self.pos;
            self.eat_digits(10);
            let digits = &self.src[digits_start..self.pos];
            if digits.chars().all(|c| c.is_digit(8)) {
                u64::from_str_radix(digits, 8).map(|v| v as f64).unwrap_or(f64::INFINITY)
            } else {
                self.decimal_tail(start)?
            }
        } else {
            self.eat_digits(10);
            self.decimal_tail(start)?
        };
        if self.peek().is_some_and(|c| is_id_start(c) || c.is_ascii_digit() || c == '\\') {
            return Err(self.error(start, "identifier starts immediately after numeric literal"));
        }
        Ok(TokenKind::Num(value))
    }

    /// Fraction and exponent after the integer digits; returns the value of
    /// the whole literal.
    fn decimal_tail(&mut self, start: Mark) -> Result<f64, Diagnostic> {
        if self.peek() == Some('.') {
            self.bump();
            self.eat_digits(10);
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let save = (self.pos, self.line, self.col);
            self.bump();
            if matches!(self.peek(), Some('+' | '-')) {
                self.bump();
            }
            if self.eat_digits(10) == 0 {
                (self.pos, self.line, self.col) = save;
                return Err(self.error(start, "missing exponent digits"));
            }
        }
        Ok(self.src[start.pos..self.pos].parse::<f64>().unwrap_or(f64::NAN))
    }

    fn string(&mut self, start: Mark, quote: char) -> Result<TokenKind, Diagnostic> {
        self.bump();
        let mut value = String::new();
        loop {
            match self.peek() {
                None => return Err(self.error(start, "unterminated string literal")),
                Some(c) if is_line_terminator(c) => return Err(self.error(start, "unterminated string literal")),
                Some(c) if c == quote => {
                    self.bump();
                    return Ok(TokenKind::Str(value));
                }
                Some('\\') => {
                    let esc = self.mark();
                    self.bump();
                    let Some(c) = self.bump() else {
                        return Err(self.error(start, "unterminated string literal"));
                    };
                    match c {
                        'b' => value.push('\u{8}'),
                        't' => value.push('\t'),
                        'n' => value.push('\n'),
                        'v' => value.push('\u{b}'),
                        'f' => value.push('\u{c}'),
                        'r' => value.push('\r'),
                        '\r' => {
                            if self.peek() == Some('\n') {
                                self.bump();
                            }
                        }
                        c if is_line_terminator(c) => {}
                        'x' => match self.hex_digits(2) {
                            Some(ch) => value.push(ch),
                            None => return Err(self.error(esc, "invalid hexadecimal escape")),
                        },
                        'u' => match self.hex_digits(4) {
                            Some(ch) => value.push(ch),
                            None => return Err(self.error(esc, "invalid unicode escape")),
                        },
                        '0'..='7' => {
                            let mut v = c.to_digit(8).unwrap();
                            let max_len = if c <= '3' { 3 } else { 2 };
                            let mut len = 1;
                            while len < max_len {
                                match self.peek().and_then(|d| d.to_digit(8)) {
                                    Some(d) => {
                                        self.bump();
                                        v = v * 8 + d;
                                        len += 1;
                                    }
                                    None => break,
                                }
                            }
                            value.push(char::from_u32(v).unwrap_or('\u{fffd}'));
                        }
                        other => value.push(other),
                    }
                }
                Some(c) => {
                    self.bump();
                    value.push(c);
                }
            }
        }
    }

    fn regex(&mut self, start: Mark) -> Result<TokenKind, Diagnostic> {
        self.bump();
        let body_start = self.pos;
        let mut in_class = false;
        loop {
            match self.peek() {
                None => return Err(self.error(start, "unterminated regular expression")),
                Some(c) if is_line_terminator(c) => return Err(self.error(start, "unterminated regular expression")),
                Some('\\') => {
                    self.bump();
                    match self.peek() {
                        Some(c) if !is_line_terminator(c) => {
                            self.bump();
                        }
                        _ => return Err(self.error(start, "unterminated regular expression")),
                    }
                }
                Some('[') => {
                    in_class = true;
                    self.bump();
                }
                Some(']') => {
                    in_class = false;
                    self.bump();
                }
                Some('/') if !in_class => break,
                Some(_) => {
                    self.bump();
                }
            }
        }
        let pattern = self.src[body_start..self.pos].to_string();
        self.bump();
        let flags_start = self.pos;
        while self.peek().is_some_and(is_id_part) {
            self.bump();
        }
        let flags = self.src[flags_start..self.pos].to_string();
        Ok(TokenKind::Regex { pattern, flags })
    }
}
