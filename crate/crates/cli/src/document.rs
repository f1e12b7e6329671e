//! JSON documents in and out.
//!
//! Floats are written with 17 significant digits so every double survives
//! a write/read cycle; innermost numeric arrays stay on one line.

use std::collections::BTreeMap;
use std::io;

use invdec::{Complex64, ComplexMat, Error};
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;

/// `{ n, entries: [[[re, im], ...], ...], metadata }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub n: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

impl MatrixDocument {
    pub fn from_mat(m: &ComplexMat) -> Self {
        Self {
            n: m.n(),
            entries: m.rows().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn to_mat(&self) -> Result<ComplexMat, Error> {
        if self.entries.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "n = {} but {} rows",
                self.n,
                self.entries.len()
            )));
        }
        let rows: Vec<Vec<Complex64>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect();
        ComplexMat::from_rows(&rows)
    }
}

/// Matrix as a JSON value.
pub fn mat_value(m: &ComplexMat) -> Value {
    serde_json::to_value(MatrixDocument::from_mat(m)).expect("matrix documents serialize")
}

pub fn complex_value(z: Complex64) -> Value {
    serde_json::json!([z.re, z.im])
}

/// Pretty printer writing `{:.16e}` floats and `null` for non-finite ones.
struct ExactFloats<'a>(PrettyFormatter<'a>);

impl Formatter for ExactFloats<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(w, "{value:.16e}")
        } else {
            w.write_all(b"null")
        }
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Joins every bracket group free of nested arrays, objects and strings
/// onto one line.
fn collapse_flat_arrays(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut open: Option<usize> = None;
    let mut in_string = false;
    let mut escaped = false;
    for ch in text.chars() {
        if in_string {
            out.push(ch);
            match (escaped, ch) {
                (true, _) => escaped = false,
                (false, '\\') => escaped = true,
                (false, '"') => in_string = false,
                _ => {}
            }
            continue;
        }
        match ch {
            '"' => {
                in_string = true;
                open = None;
                out.push(ch);
            }
            '[' => {
                open = Some(out.len());
                out.push(ch);
            }
            '{' => {
                open = None;
                out.push(ch);
            }
            ']' => match open.take() {
                Some(start) => {
                    let inner: Vec<String> = out[start + 1..]
                        .split(',')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect();
                    out.truncate(start);
                    out.push('[');
                    out.push_str(&inner.join(", "));
                    out.push(']');
                }
                None => out.push(ch),
            },
            _ => out.push(ch),
        }
    }
    out
}

/// Renders `v` with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, ExactFloats(PrettyFormatter::with_indent(b"  ")));
    v.serialize(&mut ser).expect("in-memory serialization");
    let mut s = collapse_flat_arrays(&String::from_utf8(buf).expect("serde_json writes UTF-8"));
    s.push('\n');
    s
}
