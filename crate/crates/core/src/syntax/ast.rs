//! Declarations of a `.jsc` unit.

use std::fmt;

use crate::js::ast::{Expr, JsFunction};
use crate::span::{FileId, Span};

/// A non-empty dotted name such as `UI.Component`.
#[derive(Debug, Clone, PartialEq)]
pub struct DottedName {
    pub segments: Vec<String>,
    pub span: Span,
}

impl DottedName {
    pub fn text(&self) -> String {
        self.segments.join(".")
    }
}

impl fmt::Display for DottedName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

pub type PackagePath = DottedName;

/// A per-instance slot with its accessor names.
#[derive(Debug, Clone, PartialEq)]
pub struct SlotSpec {
    pub name: String,
    pub getter_name: String,
    pub setter_name: String,
    pub default: Option<SlotDefault>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlotDefault {
    /// The expression exactly as written.
    pub text: String,
    pub expr: Expr,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodDecl {
    pub name: String,
    pub name_span: Span,
    pub params: Vec<String>,
    pub body: JsFunction,
    /// Verbatim source from `function` through the closing brace.
    pub body_text: String,
    pub is_static: bool,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassDecl {
    pub package: PackagePath,
    pub name: String,
    pub name_span: Span,
    pub supers: Vec<DottedName>,
    pub slots: Vec<SlotSpec>,
    pub methods: Vec<MethodDecl>,
    pub statics: Vec<MethodDecl>,
    pub ctor: Option<MethodDecl>,
    pub span: Span,
}

impl ClassDecl {
    /// All method bodies including the constructor and statics.
    pub fn all_methods(&self) -> impl Iterator<Item = &MethodDecl> {
        self.ctor.iter().chain(&self.methods).chain(&self.statics)
    }

    pub fn method(&self, name: &str) -> Option<&MethodDecl> {
        self.methods.iter().find(|m| m.name == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Requirement {
    pub name: String,
    pub required: bool,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolDecl {
    pub package: PackagePath,
    pub name: String,
    pub name_span: Span,
    pub supers: Vec<DottedName>,
    pub requirements: Vec<Requirement>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Decl {
    Class(ClassDecl),
    Protocol(ProtocolDecl),
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Class(c) => &c.name,
            Decl::Protocol(p) => &p.name,
        }
    }

    pub fn name_span(&self) -> Span {
        match self {
            Decl::Class(c) => c.name_span,
            Decl::Protocol(p) => p.name_span,
        }
    }

    pub fn package(&self) -> &PackagePath {
        match self {
            Decl::Class(c) => &c.package,
            Decl::Protocol(p) => &p.package,
        }
    }

    pub fn supers(&self) -> &[DottedName] {
        match self {
            Decl::Class(c) => &c.supers,
            Decl::Protocol(p) => &p.supers,
        }
    }

    pub fn kind(&self) -> DeclKind {
        match self {
            Decl::Class(_) => DeclKind::Class,
            Decl::Protocol(_) => DeclKind::Protocol,
        }
    }

    pub fn as_class(&self) -> Option<&ClassDecl> {
        match self {
            Decl::Class(c) => Some(c),
            Decl::Protocol(_) => None,
        }
    }

    pub fn as_protocol(&self) -> Option<&ProtocolDecl> {
        match self {
            Decl::Protocol(p) => Some(p),
            Decl::Class(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DeclKind {
    Class,
    Protocol,
}

impl DeclKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DeclKind::Class => "class",
            DeclKind::Protocol => "protocol",
        }
    }
}

/// One parsed `.jsc` file.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceUnit {
    /// Path relative to the source root, `/`-separated.
    pub file_path: String,
    pub file_id: FileId,
    pub package: PackagePath,
    pub decl: Decl,
}

impl SourceUnit {
    pub fn canonical_name(&self) -> String {
        format!("{}.{}", self.package.text(), self.decl.name())
    }
}
