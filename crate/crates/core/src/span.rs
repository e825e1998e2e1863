//! Source positions.
//!
//! Every token and AST node carries a [`Span`] holding both byte offsets (used
//! to slice verbatim text out of the source) and 1-based line/column pairs
//! (used for diagnostics). Columns count code points, and CRLF, CR, LF, U+2028
//! and U+2029 each terminate one logical line.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct FileId(pub u32);

/// A half-open source range. `end_col` points one past the last code point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Span {
    pub file_id: FileId,
    pub start: usize,
    pub end: usize,
    pub start_line: u32,
    pub start_col: u32,
    pub end_line: u32,
    pub end_col: u32,
}

impl Span {
    /// Smallest span covering both `self` and `other`.
    pub fn to(self, other: Span) -> Span {
        let (first, last) = if self.start <= other.start { (self, other) } else { (other, self) };
        let end = if first.end >= last.end { first } else { last };
        Span {
            file_id: self.file_id,
            start: first.start,
            end: end.end,
            start_line: first.start_line,
            start_col: first.start_col,
            end_line: end.end_line,
            end_col: end.end_col,
        }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// Maps byte offsets of one source text to line/column positions.
#[derive(Debug, Clone)]
pub struct LineIndex {
    file_id: FileId,
    line_starts: Vec<usize>,
    len: usize,
}

impl LineIndex {
    pub fn new(file_id: FileId, text: &str) -> LineIndex {
        let mut line_starts = vec![0];
        let mut chars = text.char_indices().peekable();
        while let Some((i, c)) = chars.next() {
            match c {
                '\r' => {
                    if let Some(&(_, '\n')) = chars.peek() {
                        chars.next();
                        line_starts.push(i + 2);
                    } else {
                        line_starts.push(i + 1);
                    }
                }
                '\n' => line_starts.push(i + 1),
                '\u{2028}' | '\u{2029}' => line_starts.push(i + c.len_utf8()),
                _ => {}
            }
        }
        LineIndex { file_id, line_starts, len: text.len() }
    }

    pub fn file_id(&self) -> FileId {
        self.file_id
    }

    /// 1-based (line, column) of a byte offset. Offsets past the end clamp.
    pub fn position(&self, text: &str, offset: usize) -> (u32, u32) {
        let offset = offset.min(self.len);
        let line = match self.line_starts.binary_search(&offset) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let start = self.line_starts[line];
        let col = text[start..offset].chars().count();
        (line as u32 + 1, col as u32 + 1)
    }

    pub fn span(&self, text: &str, start: usize, end: usize) -> Span {
        let (start_line, start_col) = self.position(text, start);
        let (end_line, end_col) = self.position(text, end);
        Span { file_id: self.file_id, start, end, start_line, start_col, end_line, end_col }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_count_code_points() {
        let text = "ab\néé x";
        let idx = LineIndex::new(FileId(0), text);
        assert_eq!(idx.position(text, 0), (1, 1));
        assert_eq!(idx.position(text, 3), (2, 1));
        let x = text.find('x').unwrap();
        assert_eq!(idx.position(text, x), (2, 4));
    }

    #[test]
    fn crlf_is_one_line_break() {
        let text = "a\r\nb\rc\u{2028}d";
        let idx = LineIndex::new(FileId(0), text);
        assert_eq!(idx.position(text, text.find('b').unwrap()), (2, 1));
        assert_eq!(idx.position(text, text.find('c').unwrap()), (3, 1));
        assert_eq!(idx.position(text, text.find('d').unwrap()), (4, 1));
    }

    #[test]
    fn join_spans() {
        let text = "abc def";
        let idx = LineIndex::new(FileId(0), text);
        let a = idx.span(text, 0, 3);
        let b = idx.span(text, 4, 7);
        let j = b.to(a);
        assert_eq!((j.start, j.end, j.start_col, j.end_col), (0, 7, 1, 8));
    }
}
