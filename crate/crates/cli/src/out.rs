//! Output buffering for the two formats.
//!
//! Machine format: one record per line, space-separated `key=value` pairs.
//! Values containing whitespace, `=`, `"` or nothing at all are written as
//! Rust string literals.

use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

pub struct Out {
    pub format: Format,
    buf: String,
}

impl Out {
    pub fn new(format: Format) -> Out {
        Out {
            format,
            buf: String::new(),
        }
    }

    pub fn machine(&self) -> bool {
        self.format == Format::Machine
    }

    /// A line of human-readable output; dropped in machine format.
    pub fn text(&mut self, line: impl AsRef<str>) {
        if !self.machine() {
            self.buf.push_str(line.as_ref());
            if !line.as_ref().ends_with('\n') {
                self.buf.push('\n');
            }
        }
    }

    /// A key=value record; dropped in text format.
    pub fn record(&mut self, fields: &[(&str, String)]) {
        if self.machine() {
            let line: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={}", quote(v))).collect();
            let _ = writeln!(self.buf, "{}", line.join(" "));
        }
    }

    /// Pre-rendered machine lines (already key=value).
    pub fn raw_machine(&mut self, lines: &str) {
        if self.machine() {
            self.buf.push_str(lines);
            if !lines.is_empty() && !lines.ends_with('\n') {
                self.buf.push('\n');
            }
        }
    }

    pub fn finish(self) -> String {
        self.buf
    }
}

pub fn quote(v: &str) -> String {
    if v.is_empty() || v.chars().any(|c| c.is_whitespace() || c == '=' || c == '"') {
        format!("{v:?}")
    } else {
        v.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoting() {
        assert_eq!(quote("abc"), "abc");
        assert_eq!(quote("a b"), "\"a b\"");
        assert_eq!(quote(""), "\"\"");
        assert_eq!(quote("x=1"), "\"x=1\"");
    }

    #[test]
    fn formats_filter() {
        let mut o = Out::new(Format::Machine);
        o.text("hello");
        o.record(&[("result", "ok".into()), ("seq", "a |- a".into())]);
        assert_eq!(o.finish(), "result=ok seq=\"a |- a\"\n");
        let mut o = Out::new(Format::Text);
        o.text("hello");
        o.record(&[("result", "ok".into())]);
        assert_eq!(o.finish(), "hello\n");
    }
}
