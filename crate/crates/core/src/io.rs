//! Canonical text documents for complexes and chain maps.
//!
//! A complex document looks like
//!
//! ```text
//! {
//!   "format": "symchain-complex/1",
//!   "ring": "QQ[x,y]",
//!   "support": [0, 2],
//!   "ranks": [1, 2, 1],
//!   "degrees": [[0], [1, 1], [2]],
//!   "differentials": [
//!     {"degree": 1, "shape": [1, 2], "rows": [
//!       ["x", "y"]
//!     ]},
//!     ...
//!   ]
//! }
//! ```
//!
//! Keys always appear in this order, matrices are dense and row-major, and
//! scalars are written in their canonical form, so equal objects serialize to
//! identical bytes. `degrees` is `null` for ungraded rings.

use serde::Deserialize;

use crate::complex::{ChainMap, FreeComplex};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::scalar::{Ring, Scalar};

pub const COMPLEX_FORMAT: &str = "symchain-complex/1";
pub const MAP_FORMAT: &str = "symchain-map/1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Complex(FreeComplex),
    Map(ChainMap),
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn int_list<T: ToString>(v: &[T]) -> String {
    format!("[{}]", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn write_matrix(out: &mut String, indent: &str, degree: i64, m: &SparseMatrix, last: bool) {
    out.push_str(&format!("{indent}{{\"degree\": {degree}, \"shape\": [{}, {}], \"rows\": [", m.rows(), m.cols()));
    let rows = m.to_strings();
    if rows.is_empty() {
        out.push(']');
    } else {
        out.push('\n');
        for (k, row) in rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|s| quote(s)).collect();
            out.push_str(&format!("{indent}  [{}]", cells.join(", ")));
            out.push_str(if k + 1 < rows.len() { ",\n" } else { "\n" });
        }
        out.push_str(&format!("{indent}]"));
    }
    out.push_str(if last { "}\n" } else { "},\n" });
}

fn write_complex(out: &mut String, x: &FreeComplex, indent: &str) {
    let inner = format!("{indent}  ");
    out.push_str("{\n");
    out.push_str(&format!("{inner}\"format\": {},\n", quote(COMPLEX_FORMAT)));
    out.push_str(&format!("{inner}\"ring\": {},\n", quote(&x.ring().to_string())));
    let trimmed = x.trimmed();
    match trimmed.support() {
        Some((a, b)) => out.push_str(&format!("{inner}\"support\": [{a}, {b}],\n")),
        None => out.push_str(&format!("{inner}\"support\": null,\n")),
    }
    out.push_str(&format!("{inner}\"ranks\": {},\n", int_list(trimmed.ranks())));
    match trimmed.all_gen_degrees() {
        Some(g) => {
            let parts: Vec<String> = g.iter().map(|v| int_list(v)).collect();
            out.push_str(&format!("{inner}\"degrees\": [{}],\n", parts.join(", ")));
        }
        None => out.push_str(&format!("{inner}\"degrees\": null,\n")),
    }
    let diffs = trimmed.differentials();
    if diffs.is_empty() {
        out.push_str(&format!("{inner}\"differentials\": []\n"));
    } else {
        out.push_str(&format!("{inner}\"differentials\": [\n"));
        for (k, d) in diffs.iter().enumerate() {
            write_matrix(out, &format!("{inner}  "), trimmed.lo() + k as i64 + 1, d, k + 1 == diffs.len());
        }
        out.push_str(&format!("{inner}]\n"));
    }
    out.push_str(&format!("{indent}}}"));
}

/// Canonical document for a complex (trimmed to its support).
pub fn serialize_complex(x: &FreeComplex) -> String {
    let mut out = String::new();
    write_complex(&mut out, x, "");
    out.push('\n');
    out
}

/// Canonical document for a chain map; components are listed for every
/// degree of the source's support.
pub fn serialize_map(f: &ChainMap) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"format\": {},\n", quote(MAP_FORMAT)));
    out.push_str("  \"source\": ");
    write_complex(&mut out, &f.source().trimmed(), "  ");
    out.push_str(",\n  \"target\": ");
    write_complex(&mut out, &f.target().trimmed(), "  ");
    out.push_str(",\n");
    let degrees: Vec<i64> = f.source().trimmed().support().map(|(a, b)| (a..=b).collect()).unwrap_or_default();
    if degrees.is_empty() {
        out.push_str("  \"components\": []\n");
    } else {
        out.push_str("  \"components\": [\n");
        for (k, &n) in degrees.iter().enumerate() {
            write_matrix(&mut out, "    ", n, &f.map(n), k + 1 == degrees.len());
        }
        out.push_str("  ]\n");
    }
    out.push_str("}\n");
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDoc {
    degree: i64,
    shape: [usize; 2],
    rows: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    format: String,
    ring: String,
    support: Option<[i64; 2]>,
    ranks: Vec<usize>,
    degrees: Option<Vec<Vec<i64>>>,
    differentials: Vec<MatrixDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDoc {
    format: String,
    source: ComplexDoc,
    target: ComplexDoc,
    components: Vec<MatrixDoc>,
}

#[derive(Deserialize)]
struct Header {
    format: String,
}

/// Byte offsets of the string literals that are JSON values (not keys), in
/// document order; used to point errors at the offending entry.
struct Locator<'a> {
    text: &'a str,
    values: Vec<(usize, String)>,
    next: usize,
}

impl<'a> Locator<'a> {
    fn new(text: &'a str) -> Self {
        let bytes = text.as_bytes();
        let mut values = Vec::new();
        let mut k = 0;
        while k < bytes.len() {
            if bytes[k] != b'"' {
                k += 1;
                continue;
            }
            let start = k;
            k += 1;
            while k < bytes.len() && bytes[k] != b'"' {
                k += if bytes[k] == b'\\' { 2 } else { 1 };
            }
            let end = k.min(bytes.len());
            k += 1;
            let is_key = bytes[k.min(bytes.len())..].iter().find(|b| !b.is_ascii_whitespace()) == Some(&b':');
            if !is_key {
                let content = serde_json::from_str::<String>(&text[start..(end + 1).min(text.len())]).unwrap_or_default();
                values.push((start, content));
            }
        }
        Locator { text, values, next: 0 }
    }

    fn line_col(&self, offset: usize) -> (usize, usize) {
        let before = &self.text[..offset];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, col)
    }

    /// Position of the next value string, which should read `expected`.
    fn take(&mut self, expected: &str) -> (usize, usize) {
        let hit = match self.values.get(self.next) {
            Some((off, s)) if s == expected => Some(*off),
            _ => self.values.iter().find(|(_, s)| s == expected).map(|(off, _)| *off),
        };
        self.next += 1;
        // one past the opening quote
        hit.map_or((1, 1), |off| self.line_col(off + 1))
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse { line: e.line(), column: e.column(), message: e.to_string() }
}

fn parse_entry(ring: &Ring, token: &str, loc: &mut Locator<'_>) -> Result<Scalar> {
    let (line, col) = loc.take(token);
    match Scalar::parse(ring, token) {
        Ok(s) => Ok(s),
        Err(Error::Parse { column, message, .. }) => {
            // a well-formed entry that simply lives in another ring
            let foreign = message.starts_with("unknown variable");
            if foreign {
                Err(Error::InvalidComplex(format!("entry `{token}` at line {line}, column {col} is not an element of {ring}")))
            } else {
                Err(Error::Parse { line, column: col + column - 1, message: format!("bad scalar `{token}`: {message}") })
            }
        }
        Err(Error::Invalid(m)) | Err(Error::NotHomogeneous(m)) => {
            Err(Error::InvalidComplex(format!("entry `{token}` at line {line}, column {col}: {m}")))
        }
        Err(e) => Err(e),
    }
}

fn build_matrix(ring: &Ring, doc: &MatrixDoc, expected: (usize, usize), loc: &mut Locator<'_>) -> Result<SparseMatrix> {
    let [r, c] = doc.shape;
    if (r, c) != expected {
        return Err(Error::dims(format!("matrix in degree {} has shape {r}x{c}, expected {}x{}", doc.degree, expected.0, expected.1)));
    }
    if doc.rows.len() != r || doc.rows.iter().any(|row| row.len() != c) {
        return Err(Error::dims(format!("matrix in degree {} does not match its declared shape {r}x{c}", doc.degree)));
    }
    let mut m = SparseMatrix::zero(ring, r, c);
    for (i, row) in doc.rows.iter().enumerate() {
        for (j, tok) in row.iter().enumerate() {
            m.set(i, j, parse_entry(ring, tok, loc)?);
        }
    }
    Ok(m)
}

fn build_complex(doc: &ComplexDoc, loc: &mut Locator<'_>) -> Result<FreeComplex> {
    loc.take(&doc.format);
    if doc.format != COMPLEX_FORMAT {
        let (line, column) = loc.line_col(loc.values.get(loc.next - 1).map_or(0, |v| v.0));
        return Err(Error::Parse { line, column, message: format!("unknown format `{}`", doc.format) });
    }
    let (line, column) = loc.take(&doc.ring);
    let ring: Ring = doc.ring.parse().map_err(|e: Error| Error::Parse { line, column, message: e.to_string() })?;
    let Some([lo, hi]) = doc.support else {
        if !doc.ranks.is_empty() || !doc.differentials.is_empty() {
            return Err(Error::dims("a complex without support must have no ranks and no differentials"));
        }
        return Ok(FreeComplex::zero(&ring));
    };
    if hi < lo || doc.ranks.len() as i64 != hi - lo + 1 {
        return Err(Error::dims(format!("support [{lo}, {hi}] does not match {} ranks", doc.ranks.len())));
    }
    if doc.differentials.len() as i64 != hi - lo {
        return Err(Error::dims(format!("expected {} differentials, found {}", hi - lo, doc.differentials.len())));
    }
    let mut diffs = Vec::new();
    for (k, d) in doc.differentials.iter().enumerate() {
        let n = lo + k as i64 + 1;
        if d.degree != n {
            return Err(Error::dims(format!("differential {k} is labelled {}, expected {n}", d.degree)));
        }
        diffs.push(build_matrix(&ring, d, (doc.ranks[k], doc.ranks[k + 1]), loc)?);
    }
    let x = FreeComplex::new(&ring, lo, doc.ranks.clone(), diffs, doc.degrees.clone())?;
    x.validate().map_err(|v| Error::InvalidComplex(v.to_string()))?;
    Ok(x)
}

pub fn parse_complex(text: &str) -> Result<FreeComplex> {
    let doc: ComplexDoc = serde_json::from_str(text).map_err(json_error)?;
    build_complex(&doc, &mut Locator::new(text))
}

pub fn parse_map(text: &str) -> Result<ChainMap> {
    let doc: MapDoc = serde_json::from_str(text).map_err(json_error)?;
    let mut loc = Locator::new(text);
    loc.take(&doc.format);
    if doc.format != MAP_FORMAT {
        return Err(Error::Parse { line: 1, column: 1, message: format!("unknown format `{}`", doc.format) });
    }
    let source = build_complex(&doc.source, &mut loc)?;
    let target = build_complex(&doc.target, &mut loc)?;
    if source.ring() != target.ring() {
        return Err(Error::mismatch(source.ring(), target.ring()));
    }
    let mut comps = Vec::new();
    for c in &doc.components {
        let m = build_matrix(source.ring(), c, (target.rank(c.degree), source.rank(c.degree)), &mut loc)?;
        comps.push((c.degree, m));
    }
    let f = ChainMap::new(&source, &target, comps)?;
    if !f.is_chain_map() {
        return Err(Error::NotChainMap("the components do not commute with the differentials".into()));
    }
    Ok(f)
}

/// Parses either kind of document, dispatching on its `format`.
pub fn parse_document(text: &str) -> Result<Document> {
    let header: Header = serde_json::from_str::<serde_json::Value>(text)
        .map_err(json_error)
        .and_then(|v| serde_json::from_value(v).map_err(|e| Error::Parse { line: 1, column: 1, message: e.to_string() }))?;
    match header.format.as_str() {
        COMPLEX_FORMAT => parse_complex(text).map(Document::Complex),
        MAP_FORMAT => parse_map(text).map(Document::Map),
        other => Err(Error::Parse { line: 1, column: 1, message: format!("unknown format `{other}`") }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::koszul;

    fn kxy() -> FreeComplex {
        let r = Ring::graded(&["x", "y"]).unwrap();
        koszul(&[Scalar::variable(&r, "x").unwrap(), Scalar::variable(&r, "y").unwrap()]).unwrap()
    }

    #[test]
    fn koszul_document() {
        let text = serialize_complex(&kxy());
        let expected = r#"{
  "format": "symchain-complex/1",
  "ring": "QQ[x,y]",
  "support": [0, 2],
  "ranks": [1, 2, 1],
  "degrees": [[0], [1, 1], [2]],
  "differentials": [
    {"degree": 1, "shape": [1, 2], "rows": [
      ["x", "y"]
    ]},
    {"degree": 2, "shape": [2, 1], "rows": [
      ["y"],
      ["-x"]
    ]}
  ]
}
"#;
        assert_eq!(text, expected);
        assert_eq!(parse_complex(&text).unwrap(), kxy());
    }

    #[test]
    fn map_round_trip() {
        let f = ChainMap::identity(&kxy());
        let text = serialize_map(&f);
        let g = parse_map(&text).unwrap();
        assert_eq!(serialize_map(&g), text);
        assert!(matches!(parse_document(&text).unwrap(), Document::Map(_)));
    }

    #[test]
    fn zero_complex() {
        let z = FreeComplex::zero(&Ring::integers());
        let text = serialize_complex(&z);
        assert!(text.contains("\"support\": null"));
        assert!(parse_complex(&text).unwrap().is_zero());
    }

    #[test]
    fn malformed_scalar_is_located() {
        let text = serialize_complex(&kxy()).replacen("\"-x\"", "\"x^\"", 1);
        match parse_complex(&text) {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 13);
                // `      ["` is 8 characters, then `x^` fails after the caret
                assert_eq!(column, 11);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn foreign_entries_fail_validation() {
        let text = serialize_complex(&kxy()).replace("QQ[x,y]", "QQ[x]");
        assert!(matches!(parse_complex(&text), Err(Error::InvalidComplex(_))));
        let bad = serialize_complex(&kxy()).replace("[\"y\"],", "[\"x\"],");
        assert!(matches!(parse_complex(&bad), Err(Error::InvalidComplex(_))));
    }

    #[test]
    fn json_errors_carry_positions() {
        match parse_complex("{\n  \"format\": }") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
