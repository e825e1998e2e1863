//! Coded diagnostics and their renderers.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;

use crate::span::{FileId, LineIndex, Span};

/// Stable diagnostic codes. `E` codes block emission, `W` codes do not.
pub mod codes {
    pub const UNTERMINATED: &str = "JSC-E001";
    pub const DUPLICATE_CTOR: &str = "JSC-E002";
    pub const SUPER_CYCLE: &str = "JSC-E003";
    pub const DUPLICATE_MEMBER: &str = "JSC-E004";
    pub const BAD_REQUIREMENT_FLAG: &str = "JSC-E005";
    pub const TRAILING_INPUT: &str = "JSC-E006";
    pub const DUPLICATE_CLASS: &str = "JSC-E007";
    pub const FILE_NAME_MISMATCH: &str = "JSC-E008";
    pub const PACKAGE_PATH_MISMATCH: &str = "JSC-E009";
    pub const ACCESSOR_COLLISION: &str = "JSC-E010";
    pub const RESERVED_STATIC: &str = "JSC-E011";
    pub const PROTOCOL_EXTENDS_CLASS: &str = "JSC-E012";
    pub const UNRESOLVED_SUPER: &str = "JSC-E013";
    pub const MALFORMED_DECL: &str = "JSC-E014";
    pub const INVALID_SLOT: &str = "JSC-E015";
    pub const WITH_STATEMENT: &str = "JSC-E020";
    pub const BODY_SYNTAX: &str = "JSC-E021";
    pub const ACCESSOR_PROPERTY: &str = "JSC-E022";
    pub const MISSING_REQUIRED: &str = "JSC-E030";
    pub const NO_INPUT: &str = "JSC-E040";
    pub const GLOBAL_WRITE: &str = "JSC-W001";
    pub const MIXIN_CONFLICT: &str = "JSC-W002";
    pub const RESTRICTED_WRITE: &str = "JSC-W003";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Note {
    pub span: Option<Span>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: &'static str,
    pub severity: Severity,
    pub message: String,
    pub span: Option<Span>,
    pub notes: Vec<Note>,
}

impl Diagnostic {
    pub fn error(code: &'static str, span: Span, message: impl Into<String>) -> Diagnostic {
        Diagnostic { code, severity: Severity::Error, message: message.into(), span: Some(span), notes: Vec::new() }
    }

    pub fn warning(code: &'static str, span: Span, message: impl Into<String>) -> Diagnostic {
        Diagnostic { code, severity: Severity::Warning, message: message.into(), span: Some(span), notes: Vec::new() }
    }

    /// An error not tied to any source location.
    pub fn global_error(code: &'static str, message: impl Into<String>) -> Diagnostic {
        Diagnostic { code, severity: Severity::Error, message: message.into(), span: None, notes: Vec::new() }
    }

    pub fn with_note(mut self, span: Option<Span>, message: impl Into<String>) -> Diagnostic {
        self.notes.push(Note { span, message: message.into() });
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}

/// One loaded source file.
#[derive(Debug, Clone)]
pub struct SourceFile {
    pub id: FileId,
    /// Path used when printing diagnostics.
    pub display_path: String,
    /// Path relative to the source root the file was discovered under.
    pub rel_path: PathBuf,
    pub text: String,
    pub lines: LineIndex,
}

/// All files of one compilation, indexed by [`FileId`].
#[derive(Debug, Clone, Default)]
pub struct SourceMap {
    files: Vec<SourceFile>,
}

impl SourceMap {
    pub fn new() -> SourceMap {
        SourceMap::default()
    }

    pub fn add(&mut self, display_path: impl Into<String>, rel_path: impl Into<PathBuf>, text: String) -> FileId {
        let id = FileId(self.files.len() as u32);
        let lines = LineIndex::new(id, &text);
        self.files.push(SourceFile { id, display_path: display_path.into(), rel_path: rel_path.into(), text, lines });
        id
    }

    pub fn get(&self, id: FileId) -> &SourceFile {
        &self.files[id.0 as usize]
    }

    pub fn files(&self) -> &[SourceFile] {
        &self.files
    }

    fn path_of(&self, span: Option<Span>) -> &str {
        span.map(|s| self.get(s.file_id).display_path.as_str()).unwrap_or("")
    }

    /// Orders diagnostics by file path, then start position, then code.
    pub fn sort(&self, diags: &mut [Diagnostic]) {
        diags.sort_by(|a, b| self.compare(a, b));
    }

    fn compare(&self, a: &Diagnostic, b: &Diagnostic) -> Ordering {
        let key = |d: &Diagnostic| d.span.map(|s| (s.start_line, s.start_col, s.start)).unwrap_or((0, 0, 0));
        self.path_of(a.span)
            .cmp(self.path_of(b.span))
            .then_with(|| key(a).cmp(&key(b)))
            .then_with(|| a.code.cmp(b.code))
            .then_with(|| a.message.cmp(&b.message))
    }

    pub fn render_human(&self, d: &Diagnostic) -> String {
        let mut out = String::new();
        match d.span {
            Some(s) => {
                let _ = write!(out, "{}:{}:{}: ", self.get(s.file_id).display_path, s.start_line, s.start_col);
            }
            None => out.push_str("jscc: "),
        }
        let _ = write!(out, "{}[{}]: {}", d.severity.as_str(), d.code, d.message);
        for note in &d.notes {
            match note.span {
                Some(s) => {
                    let _ = write!(
                        out,
                        "\n  note: {}:{}:{}: {}",
                        self.get(s.file_id).display_path,
                        s.start_line,
                        s.start_col,
                        note.message
                    );
                }
                None => {
                    let _ = write!(out, "\n  note: {}", note.message);
                }
            }
        }
        out
    }

    /// One JSON object per diagnostic, no trailing newline.
    pub fn render_json(&self, d: &Diagnostic) -> String {
        #[derive(Serialize)]
        #[serde(rename_all = "camelCase")]
        struct Record<'a> {
            severity: Severity,
            code: &'a str,
            message: &'a str,
            file: Option<&'a str>,
            line: Option<u32>,
            col: Option<u32>,
            end_line: Option<u32>,
            end_col: Option<u32>,
        }
        let rec = Record {
            severity: d.severity,
            code: d.code,
            message: &d.message,
            file: d.span.map(|s| self.get(s.file_id).display_path.as_str()),
            line: d.span.map(|s| s.start_line),
            col: d.span.map(|s| s.start_col),
            end_line: d.span.map(|s| s.end_line),
            end_col: d.span.map(|s| s.end_col),
        };
        serde_json::to_string(&rec).expect("diagnostic record serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorting_is_by_path_position_code() {
        let mut map = SourceMap::new();
        let b = map.add("b.jsc", "b.jsc", "x\ny".into());
        let a = map.add("a.jsc", "a.jsc", "x\ny".into());
        let span = |f: FileId, off: usize| map.get(f).lines.span(&map.get(f).text, off, off + 1);
        let mut diags = vec![
            Diagnostic::error(codes::DUPLICATE_MEMBER, span(b, 0), "m"),
            Diagnostic::warning(codes::GLOBAL_WRITE, span(a, 2), "m"),
            Diagnostic::error(codes::DUPLICATE_CTOR, span(a, 2), "m"),
            Diagnostic::global_error(codes::NO_INPUT, "none"),
        ];
        map.sort(&mut diags);
        let got: Vec<_> = diags.iter().map(|d| d.code).collect();
        assert_eq!(got, ["JSC-E040", "JSC-E002", "JSC-W001", "JSC-E004"]);
    }

    #[test]
    fn json_record_shape() {
        let mut map = SourceMap::new();
        let f = map.add("P/A.jsc", "P/A.jsc", "global = 1".into());
        let s = map.get(f).lines.span("global = 1", 0, 6);
        let d = Diagnostic::warning(codes::GLOBAL_WRITE, s, "write");
        assert_eq!(
            map.render_json(&d),
            r#"{"severity":"warning","code":"JSC-W001","message":"write","file":"P/A.jsc","line":1,"col":1,"endLine":1,"endCol":7}"#
        );
        assert_eq!(map.render_human(&d), "P/A.jsc:1:1: warning[JSC-W001]: write");
    }
}
