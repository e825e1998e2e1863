use std::fmt;

use crate::span::Span;

macro_rules! keywords {
    ($($variant:ident => $text:literal,)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum Keyword {
            $($variant,)*
        }

        impl Keyword {
            pub fn from_word(s: &str) -> Option<Keyword> {
                match s {
                    $($text => Some(Keyword::$variant),)*
                    _ => None,
                }
            }

            pub fn as_str(self) -> &'static str {
                match self {
                    $(Keyword::$variant => $text,)*
                }
            }
        }
    };
}

keywords! {
    Break => "break",
    Case => "case",
    Catch => "catch",
    Continue => "continue",
    Debugger => "debugger",
    Default => "default",
    Delete => "delete",
    Do => "do",
    Else => "else",
    Finally => "finally",
    For => "for",
    Function => "function",
    If => "if",
    In => "in",
    Instanceof => "instanceof",
    New => "new",
    Return => "return",
    Switch => "switch",
    This => "this",
    Throw => "throw",
    Try => "try",
    Typeof => "typeof",
    Var => "var",
    Void => "void",
    While => "while",
    With => "with",
    Class => "class",
    Const => "const",
    Enum => "enum",
    Export => "export",
    Extends => "extends",
    Import => "import",
    Super => "super",
    Null => "null",
    True => "true",
    False => "false",
    Package => "package",
    Protocol => "protocol",
}

impl Keyword {
    /// Keywords that are ordinary identifiers inside ES5 method bodies.
    pub fn is_contextual(self) -> bool {
        matches!(self, Keyword::Package | Keyword::Protocol)
    }
}

macro_rules! puncts {
    ($($variant:ident => $text:literal,)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum Punct {
            $($variant,)*
        }

        impl Punct {
            pub fn as_str(self) -> &'static str {
                match self {
                    $(Punct::$variant => $text,)*
                }
            }

            /// All punctuators, longest first, for maximal-munch lexing.
            pub(crate) const BY_LENGTH: &'static [Punct] = &[$(Punct::$variant,)*];
        }
    };
}

puncts! {
    UShrAssign => ">>>=",
    StrictEq => "===",
    StrictNe => "!==",
    UShr => ">>>",
    ShlAssign => "<<=",
    ShrAssign => ">>=",
    Eq => "==",
    Ne => "!=",
    Le => "<=",
    Ge => ">=",
    AndAnd => "&&",
    OrOr => "||",
    PlusPlus => "++",
    MinusMinus => "--",
    Shl => "<<",
    Shr => ">>",
    PlusAssign => "+=",
    MinusAssign => "-=",
    StarAssign => "*=",
    PercentAssign => "%=",
    AndAssign => "&=",
    OrAssign => "|=",
    XorAssign => "^=",
    SlashAssign => "/=",
    LBrace => "{",
    RBrace => "}",
    LParen => "(",
    RParen => ")",
    LBracket => "[",
    RBracket => "]",
    Dot => ".",
    Semi => ";",
    Comma => ",",
    Lt => "<",
    Gt => ">",
    Plus => "+",
    Minus => "-",
    Star => "*",
    Percent => "%",
    Amp => "&",
    Pipe => "|",
    Caret => "^",
    Bang => "!",
    Tilde => "~",
    Question => "?",
    Colon => ":",
    Assign => "=",
    Slash => "/",
}

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Ident(String),
    Keyword(Keyword),
    Punct(Punct),
    /// String literal with escapes decoded.
    Str(String),
    Num(f64),
    Regex { pattern: String, flags: String },
    Eof,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
    /// A line terminator (possibly inside a comment) precedes this token.
    pub newline_before: bool,
}

impl Token {
    pub fn is_punct(&self, p: Punct) -> bool {
        self.kind == TokenKind::Punct(p)
    }

    pub fn is_keyword(&self, k: Keyword) -> bool {
        self.kind == TokenKind::Keyword(k)
    }

    /// The identifier text usable as a binding or reference name.
    pub fn as_ident(&self) -> Option<&str> {
        match &self.kind {
            TokenKind::Ident(s) => Some(s),
            TokenKind::Keyword(k) if k.is_contextual() => Some(k.as_str()),
            _ => None,
        }
    }

    /// Text of an IdentifierName (any identifier or reserved word).
    pub fn as_identifier_name(&self) -> Option<&str> {
        match &self.kind {
            TokenKind::Ident(s) => Some(s),
            TokenKind::Keyword(k) => Some(k.as_str()),
            _ => None,
        }
    }
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) => write!(f, "identifier `{s}`"),
            TokenKind::Keyword(k) => write!(f, "`{}`", k.as_str()),
            TokenKind::Punct(p) => write!(f, "`{}`", p.as_str()),
            TokenKind::Str(_) => f.write_str("string literal"),
            TokenKind::Num(_) => f.write_str("number"),
            TokenKind::Regex { .. } => f.write_str("regular expression"),
            TokenKind::Eof => f.write_str("end of input"),
        }
    }
}
