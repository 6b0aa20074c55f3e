//! The machine report: a version header, then one `key=value` per line.
//! Values escape `\` and newlines, so every report parses back into the
//! entries it was written from.

use std::fmt::{self, Display};

pub const HEADER: &str = "tenfold-report v1";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub entries: Vec<(String, String)>,
}

fn escape(v: &str) -> String {
    v.replace('\\', "\\\\").replace('\n', "\\n").replace('\r', "\\r")
}

fn unescape(v: &str) -> Option<String> {
    let mut out = String::with_capacity(v.len());
    let mut chars = v.chars();
    while let Some(ch) = chars.next() {
        if ch != '\\' {
            out.push(ch);
            continue;
        }
        match chars.next()? {
            '\\' => out.push('\\'),
            'n' => out.push('\n'),
            'r' => out.push('\r'),
            _ => return None,
        }
    }
    Some(out)
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends an entry. Keys are identifiers made of letters, digits and
    /// `._-^[]:+` characters.
    pub fn push(&mut self, key: impl Into<String>, value: impl Display) {
        let key = key.into();
        assert!(
            !key.is_empty() && !key.contains(['=', '\n', '\r', ' ']),
            "report key {key:?} is not a plain identifier"
        );
        self.entries.push((key, value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Entries whose key starts with `prefix`, in order.
    pub fn with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = (&'a str, &'a str)> {
        self.entries
            .iter()
            .filter(move |(k, _)| k.starts_with(prefix))
            .map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn to_machine(&self) -> String {
        let mut out = String::from(HEADER);
        out.push('\n');
        for (k, v) in &self.entries {
            out.push_str(k);
            out.push('=');
            out.push_str(&escape(v));
            out.push('\n');
        }
        out
    }

    /// Parses a machine report; errors carry the 1-based line number.
    pub fn parse(text: &str) -> Result<Report, (usize, String)> {
        let mut lines = text.lines();
        if lines.next() != Some(HEADER) {
            return Err((1, format!("expected header {HEADER:?}")));
        }
        let mut report = Report::new();
        for (i, line) in lines.enumerate() {
            let ln = i + 2;
            let (k, v) = line.split_once('=').ok_or((ln, "expected key=value".to_string()))?;
            if k.is_empty() {
                return Err((ln, "empty key".into()));
            }
            let v = unescape(v).ok_or((ln, "bad escape".to_string()))?;
            report.entries.push((k.to_string(), v));
        }
        Ok(report)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_machine())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_escapes() {
        let mut r = Report::new();
        r.push("group", "Z2");
        r.push("tau", "tau[-1][-1] = 1/2\ntau[1][1] = 0\\x");
        r.push("k.-3", "Z/2 + Z");
        r.push("empty", "");
        let text = r.to_machine();
        assert!(text.starts_with("tenfold-report v1\n"));
        assert_eq!(text.lines().count(), 5);
        assert_eq!(Report::parse(&text).unwrap(), r);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(Report::parse("nope\n").unwrap_err().0, 1);
        assert_eq!(Report::parse("tenfold-report v1\na=1\nbroken\n").unwrap_err().0, 3);
        assert_eq!(Report::parse("tenfold-report v1\na=\\q\n").unwrap_err().0, 2);
    }
}
