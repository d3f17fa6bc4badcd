//! Byte spans and line/column resolution.

use serde::Serialize;

/// A half-open byte range `[start, end)` into one source file, together with
/// the 1-based line and column of `start`.
///
/// Columns count Unicode scalar values from the start of the line, so they
/// match what editors display rather than raw byte offsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: u32,
    pub col: u32,
}

impl Span {
    pub fn new(start: usize, end: usize, line: u32, col: u32) -> Self {
        Span { start, end, line, col }
    }

    /// The smallest span covering both `self` and `other`.
    ///
    /// Line/column information is taken from whichever span starts first.
    pub fn to(self, other: Span) -> Span {
        let (line, col) = if self.start <= other.start {
            (self.line, self.col)
        } else {
            (other.line, other.col)
        };
        Span {
            start: self.start.min(other.start),
            end: self.end.max(other.end),
            line,
            col,
        }
    }

    /// True if `other` lies entirely within `self`.
    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

/// Precomputed line-start table for resolving byte offsets to positions.
#[derive(Debug, Clone)]
pub struct LineIndex {
    /// Byte offset of the first character of each line, starting with 0.
    line_starts: Vec<usize>,
    len: usize,
}

impl LineIndex {
    pub fn new(text: &str) -> Self {
        let mut line_starts = vec![0];
        for (i, b) in text.bytes().enumerate() {
            if b == b'\n' {
                line_starts.push(i + 1);
            }
        }
        LineIndex { line_starts, len: text.len() }
    }

    /// Resolve a byte offset to a 1-based (line, column) pair.
    ///
    /// The column counts characters, so the caller must also supply the
    /// source text. Offsets past the end of the text clamp to the last
    /// position.
    pub fn position(&self, text: &str, offset: usize) -> (u32, u32) {
        let offset = offset.min(self.len);
        let line_idx = match self.line_starts.binary_search(&offset) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let line_start = self.line_starts[line_idx];
        let col = text[line_start..offset].chars().count() as u32 + 1;
        (line_idx as u32 + 1, col)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn join_takes_outermost_bounds() {
        let a = Span::new(4, 9, 1, 5);
        let b = Span::new(12, 20, 2, 3);
        let joined = a.to(b);
        assert_eq!(joined, Span::new(4, 20, 1, 5));
        assert!(joined.contains(&a) && joined.contains(&b));
    }

    #[test]
    fn positions_are_one_based_and_char_counted() {
        // Layout: line 1 is "ab", line 2 is "" (just the newline),
        // line 3 starts with a two-byte character.
        let text = "ab\n\nße";
        let index = LineIndex::new(text);
        assert_eq!(index.position(text, 0), (1, 1));
        assert_eq!(index.position(text, 1), (1, 2));
        assert_eq!(index.position(text, 3), (2, 1));
        assert_eq!(index.position(text, 4), (3, 1));
        // 'ß' is two bytes; offset 6 is the character after it.
        assert_eq!(index.position(text, 6), (3, 2));
        // Past-the-end offsets clamp.
        assert_eq!(index.position(text, 99), (3, 3));
    }
}
