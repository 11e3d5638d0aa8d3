//! Line-oriented text documents for tables, relations, maps, quasimetrics,
//! topologies and presentations.
//!
//! ```text
//! mvs
//! elems e a b
//! row e: e a b
//! row a: a b b
//! row b: b b b
//! ```
//!
//! `#` starts a comment. Names are alphanumeric (underscores allowed).
//! Serializing a parsed document gives back the input exactly when the input
//! is in canonical form: single spaces, no comments or blank lines, sections
//! in the documented order, sets in their natural order.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{ElemId, FiniteMvs, RawTable, TableError};
use crate::topology::{FiniteTopology, PointSet, MAX_POINTS};
use crate::words::{Presentation, Relation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("{0}")]
    Semantic(String),
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        col,
        message: message.into(),
    }
}

fn semantic(message: impl Into<String>) -> FormatError {
    FormatError::Semantic(message.into())
}

/// A map document: files are paths relative to the document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapDoc {
    pub from: String,
    pub to: String,
    pub sends: Vec<(String, String)>,
}

/// A quasimetric document: the MVS is referenced by path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasimetricDoc {
    pub points: Vec<String>,
    pub mvs: String,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Mvs(RawTable),
    Relation(Vec<(String, String)>),
    Map(MapDoc),
    Quasimetric(QuasimetricDoc),
    Topology(FiniteTopology),
    Presentation(Presentation),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Mvs(_) => "mvs",
            Document::Relation(_) => "relation",
            Document::Map(_) => "map",
            Document::Quasimetric(_) => "quasimetric",
            Document::Topology(_) => "topology",
            Document::Presentation(_) => "presentation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Punct(&'static str),
}

#[derive(Debug, Clone)]
struct Line {
    number: usize,
    /// Column (1-based) of each token.
    cols: Vec<usize>,
    toks: Vec<Tok>,
    /// Text after the keyword, for path arguments.
    rest: String,
    rest_col: usize,
}

impl Line {
    fn keyword(&self) -> Option<&str> {
        match self.toks.first() {
            Some(Tok::Name(s)) => Some(s),
            _ => None,
        }
    }

    fn col(&self, i: usize) -> usize {
        self.cols.get(i).copied().unwrap_or_else(|| self.cols.last().map_or(1, |c| c + 1))
    }

    fn name_at(&self, i: usize) -> Result<&str, FormatError> {
        match self.toks.get(i) {
            Some(Tok::Name(s)) => Ok(s),
            Some(Tok::Punct(p)) => Err(syntax(self.number, self.col(i), format!("expected a name, found `{p}`"))),
            None => Err(syntax(self.number, self.col(i), "expected a name")),
        }
    }

    fn punct_at(&self, i: usize, want: &'static str) -> Result<(), FormatError> {
        match self.toks.get(i) {
            Some(Tok::Punct(p)) if *p == want => Ok(()),
            _ => Err(syntax(self.number, self.col(i), format!("expected `{want}`"))),
        }
    }

    fn names_from(&self, start: usize) -> Result<Vec<String>, FormatError> {
        (start..self.toks.len()).map(|i| self.name_at(i).map(str::to_string)).collect()
    }

    fn end_at(&self, i: usize) -> Result<(), FormatError> {
        if i < self.toks.len() {
            return Err(syntax(self.number, self.col(i), "unexpected trailing token"));
        }
        Ok(())
    }

    fn path(&self) -> Result<String, FormatError> {
        if self.rest.is_empty() {
            return Err(syntax(self.number, self.rest_col, "expected a file path"));
        }
        Ok(self.rest.clone())
    }
}

fn lex(text: &str) -> Result<Vec<Line>, FormatError> {
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let number = idx + 1;
        let content = raw.split('#').next().unwrap();
        let chars: Vec<(usize, char)> = content.char_indices().collect();
        let mut toks = Vec::new();
        let mut cols = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let (_, ch) = chars[i];
            let col = i + 1;
            if ch.is_whitespace() {
                i += 1;
                continue;
            }
            if ch.is_alphanumeric() || ch == '_' {
                let start = i;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                toks.push(Tok::Name(chars[start..i].iter().map(|c| c.1).collect()));
                cols.push(col);
                continue;
            }
            let punct = match ch {
                ':' => ":",
                '~' => "~",
                '{' => "{",
                '}' => "}",
                '-' if chars.get(i + 1).map(|c| c.1) == Some('>') => "->",
                // path characters are only meaningful after `mvs`, `from`, `to`
                _ => "",
            };
            if punct.is_empty() {
                toks.push(Tok::Punct("?"));
                cols.push(col);
                i += 1;
                continue;
            }
            toks.push(Tok::Punct(punct));
            cols.push(col);
            i += punct.len();
        }
        if toks.is_empty() {
            continue;
        }
        let trimmed = content.trim_start();
        let lead = content.len() - trimmed.len();
        let kw_len = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let rest_raw = &trimmed[kw_len..];
        let rest = rest_raw.trim().to_string();
        let rest_col = content[..lead + kw_len].chars().count()
            + rest_raw.chars().take_while(|c| c.is_whitespace()).count()
            + 1;
        lines.push(Line {
            number,
            cols,
            toks,
            rest,
            rest_col,
        });
    }
    Ok(lines)
}

fn reject_unknown(line: &Line) -> Result<(), FormatError> {
    if let Some(i) = line.toks.iter().position(|t| *t == Tok::Punct("?")) {
        return Err(syntax(line.number, line.col(i), "unexpected character"));
    }
    Ok(())
}

/// Parses one document.
pub fn parse(text: &str) -> Result<Document, FormatError> {
    let lines = lex(text)?;
    let Some((head, body)) = lines.split_first() else {
        return Err(syntax(1, 1, "empty document"));
    };
    reject_unknown(head)?;
    head.end_at(1)?;
    match head.keyword() {
        Some("mvs") => parse_mvs(body),
        Some("relation") => parse_relation(body),
        Some("map") => parse_map(body),
        Some("quasimetric") => parse_quasimetric(body),
        Some("topology") => parse_topology(body),
        Some("presentation") => parse_presentation(body),
        _ => Err(syntax(head.number, 1, "unknown document kind")),
    }
}

fn unexpected(line: &Line) -> FormatError {
    syntax(line.number, line.col(0), format!("unexpected `{}` line", line.keyword().unwrap_or("?")))
}

fn names_line<'a>(lines: &'a [Line], keyword: &str) -> Result<(&'a Line, Vec<String>), FormatError> {
    let Some(first) = lines.first() else {
        return Err(syntax(1, 1, format!("missing `{keyword}` line")));
    };
    if first.keyword() != Some(keyword) {
        return Err(syntax(first.number, first.col(0), format!("expected `{keyword}`")));
    }
    reject_unknown(first)?;
    let names = first.names_from(1)?;
    if names.is_empty() {
        return Err(syntax(first.number, first.col(1), format!("`{keyword}` needs at least one name")));
    }
    Ok((first, names))
}

fn lookup(names: &[String], name: &str, line: &Line, i: usize) -> Result<usize, FormatError> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| syntax(line.number, line.col(i), format!("unknown name `{name}`")))
}

/// `row <label>: <names>+` rows in declared order.
fn parse_rows(lines: &[Line], labels: &[String], values: &[String]) -> Result<Vec<Vec<usize>>, FormatError> {
    let mut rows = Vec::new();
    for line in lines {
        if line.keyword() != Some("row") {
            return Err(unexpected(line));
        }
        reject_unknown(line)?;
        let label = line.name_at(1)?;
        line.punct_at(2, ":")?;
        let expected = labels
            .get(rows.len())
            .ok_or_else(|| syntax(line.number, line.col(0), "more rows than elements"))?;
        if label != expected {
            return Err(syntax(line.number, line.col(1), format!("expected row `{expected}`")));
        }
        let row = (3..line.toks.len())
            .map(|i| lookup(values, line.name_at(i)?, line, i))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(rows)
}

fn parse_mvs(lines: &[Line]) -> Result<Document, FormatError> {
    let (_, names) = names_line(lines, "elems")?;
    let rows = parse_rows(&lines[1..], &names, &names)?;
    RawTable::new(names, rows).map(Document::Mvs).map_err(|e| match e {
        TableError::NotSquare => semantic("table not square"),
        other => semantic(other.to_string()),
    })
}

fn parse_relation(lines: &[Line]) -> Result<Document, FormatError> {
    let mut pairs = Vec::new();
    for line in lines {
        if line.keyword() != Some("pairs") {
            return Err(unexpected(line));
        }
        reject_unknown(line)?;
        let names = line.names_from(1)?;
        if names.len() % 2 == 1 {
            return Err(syntax(line.number, line.col(names.len()), "pairs need an even number of names"));
        }
        pairs.extend(names.chunks(2).map(|c| (c[0].clone(), c[1].clone())));
    }
    Ok(Document::Relation(pairs))
}

fn parse_map(lines: &[Line]) -> Result<Document, FormatError> {
    let mut from = None;
    let mut to = None;
    let mut sends = Vec::new();
    for line in lines {
        match line.keyword() {
            Some("from") if from.is_none() && sends.is_empty() => from = Some(line.path()?),
            Some("to") if to.is_none() && sends.is_empty() => to = Some(line.path()?),
            Some("send") => {
                reject_unknown(line)?;
                let a = line.name_at(1)?.to_string();
                line.punct_at(2, "->")?;
                let b = line.name_at(3)?.to_string();
                line.end_at(4)?;
                sends.push((a, b));
            }
            _ => return Err(unexpected(line)),
        }
    }
    let from = from.ok_or_else(|| semantic("map has no `from` line"))?;
    let to = to.ok_or_else(|| semantic("map has no `to` line"))?;
    Ok(Document::Map(MapDoc { from, to, sends }))
}

fn parse_quasimetric(lines: &[Line]) -> Result<Document, FormatError> {
    let (_, points) = names_line(lines, "points")?;
    let Some(mvs_line) = lines.get(1).filter(|l| l.keyword() == Some("mvs")) else {
        let at = lines.get(1).map_or(lines[0].number + 1, |l| l.number);
        return Err(syntax(at, 1, "expected `mvs`"));
    };
    let mvs = mvs_line.path()?;
    let mut rows = Vec::new();
    for line in &lines[2..] {
        if line.keyword() != Some("row") {
            return Err(unexpected(line));
        }
        reject_unknown(line)?;
        let label = line.name_at(1)?;
        line.punct_at(2, ":")?;
        let expected = points
            .get(rows.len())
            .ok_or_else(|| syntax(line.number, line.col(0), "more rows than points"))?;
        if label != expected {
            return Err(syntax(line.number, line.col(1), format!("expected row `{expected}`")));
        }
        rows.push(line.names_from(3)?);
    }
    if rows.len() != points.len() || rows.iter().any(|r| r.len() != points.len()) {
        return Err(semantic("table not square"));
    }
    Ok(Document::Quasimetric(QuasimetricDoc { points, mvs, rows }))
}

fn parse_topology(lines: &[Line]) -> Result<Document, FormatError> {
    let (_, points) = names_line(lines, "points")?;
    if points.len() > MAX_POINTS {
        return Err(semantic(format!("{} points exceed the cap of {MAX_POINTS}", points.len())));
    }
    let mut opens = BTreeSet::new();
    for line in &lines[1..] {
        if line.keyword() != Some("open") {
            return Err(unexpected(line));
        }
        reject_unknown(line)?;
        line.punct_at(1, "{")?;
        let mut set = PointSet::EMPTY;
        let mut i = 2;
        while line.toks.get(i) != Some(&Tok::Punct("}")) {
            let name = line.name_at(i)?;
            set.insert(lookup(&points, name, line, i)?);
            i += 1;
        }
        line.end_at(i + 1)?;
        opens.insert(set);
    }
    FiniteTopology::new(points, opens)
        .map(Document::Topology)
        .map_err(|e| semantic(e.to_string()))
}

fn parse_presentation(lines: &[Line]) -> Result<Document, FormatError> {
    let (_, letters) = names_line(lines, "letters")?;
    let mut rels = Vec::new();
    for line in &lines[1..] {
        if line.keyword() != Some("rel") {
            return Err(unexpected(line));
        }
        reject_unknown(line)?;
        let a = lookup(&letters, line.name_at(1)?, line, 1)?;
        let b = lookup(&letters, line.name_at(2)?, line, 2)?;
        line.punct_at(3, "~")?;
        let c = lookup(&letters, line.name_at(4)?, line, 4)?;
        line.end_at(5)?;
        rels.push(Relation::new(a, b, c));
    }
    Presentation::new(letters, rels)
        .map(Document::Presentation)
        .map_err(|e| semantic(e.to_string()))
}

/// Canonical text of a document.
pub fn serialize(doc: &Document) -> String {
    let mut out = String::new();
    out.push_str(doc.kind());
    out.push('\n');
    match doc {
        Document::Mvs(raw) => {
            let names = raw.names();
            let _ = writeln!(out, "elems {}", names.join(" "));
            for (i, row) in raw.rows().iter().enumerate() {
                let cells: Vec<&str> = row.iter().map(|&j| names[j].as_str()).collect();
                let _ = writeln!(out, "row {}: {}", names[i], cells.join(" "));
            }
        }
        Document::Relation(pairs) => {
            out.push_str("pairs");
            for (a, b) in pairs {
                let _ = write!(out, " {a} {b}");
            }
            out.push('\n');
        }
        Document::Map(m) => {
            let _ = writeln!(out, "from {}", m.from);
            let _ = writeln!(out, "to {}", m.to);
            for (a, b) in &m.sends {
                let _ = writeln!(out, "send {a} -> {b}");
            }
        }
        Document::Quasimetric(q) => {
            let _ = writeln!(out, "points {}", q.points.join(" "));
            let _ = writeln!(out, "mvs {}", q.mvs);
            for (p, row) in q.points.iter().zip(&q.rows) {
                let _ = writeln!(out, "row {p}: {}", row.join(" "));
            }
        }
        Document::Topology(t) => {
            let _ = writeln!(out, "points {}", t.points().join(" "));
            for u in t.opens() {
                let names: Vec<&str> = u.iter().map(|x| t.points()[x].as_str()).collect();
                if names.is_empty() {
                    out.push_str("open {}\n");
                } else {
                    let _ = writeln!(out, "open {{{}}}", names.join(" "));
                }
            }
        }
        Document::Presentation(p) => {
            let _ = writeln!(out, "letters {}", p.alphabet().join(" "));
            for r in p.relations() {
                let l = p.alphabet();
                let _ = writeln!(out, "rel {} {} ~ {}", l[r.a], l[r.b], l[r.c]);
            }
        }
    }
    out
}

/// The document of a validated table.
pub fn mvs_document(m: &FiniteMvs) -> Document {
    Document::Mvs(m.to_raw())
}

/// Pairs of names of a relation, in lexicographic order of indices.
pub fn relation_document(m: &FiniteMvs, pairs: impl IntoIterator<Item = (ElemId, ElemId)>) -> Document {
    Document::Relation(
        pairs
            .into_iter()
            .map(|(a, b)| (m.name(a).to_string(), m.name(b).to_string()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate;
    use crate::fixtures;

    #[test]
    fn magma_transcription() {
        let doc = parse("mvs\nelems e a b\nrow e: e a b\nrow a: a b a\nrow b: b a b\n").unwrap();
        let Document::Mvs(raw) = &doc else { panic!() };
        assert_eq!(raw.names(), ["e", "a", "b"]);
        assert_eq!(raw.rows(), vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 2]]);
    }

    #[test]
    fn missing_row_is_semantic() {
        let err = parse("mvs\nelems e a b\nrow e: e a b\nrow a: a b a\n").unwrap_err();
        assert_eq!(err, FormatError::Semantic("table not square".into()));
        assert_eq!(err.to_string(), "table not square");
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse("mvs\nelems e a\nrow e e a\n").unwrap_err();
        assert_eq!(err, syntax(3, 7, "expected `:`"));
        let err = parse("mvs\nelems e a\nrow e: e z\n").unwrap_err();
        assert_eq!(err, syntax(3, 10, "unknown name `z`"));
        let err = parse("# only a comment\n\n").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 1, .. }));
        let err = parse("graph\n").unwrap_err();
        assert_eq!(err, syntax(1, 1, "unknown document kind"));
        let err = parse("topology\npoints x y\nopen {x\n").unwrap_err();
        assert_eq!(err, syntax(3, 8, "expected a name"));
    }

    #[test]
    fn comments_and_spacing() {
        let doc = parse("mvs   # max on {0,1}\n\nelems 0 1\nrow 0:  0 1\nrow 1: 1 1 # saturates\n").unwrap();
        assert_eq!(serialize(&doc), "mvs\nelems 0 1\nrow 0: 0 1\nrow 1: 1 1\n");
    }

    #[test]
    fn round_trips() {
        let texts = [
            "relation\npairs a b b a\n",
            "relation\npairs\n",
            "map\nfrom m_ab.mvs\nto ../m_max2.mvs\nsend e -> 0\nsend a -> 1\nsend b -> 1\n",
            "quasimetric\npoints x y\nmvs m_sat3.mvs\nrow x: 0 1\nrow y: 0 0\n",
            "topology\npoints x y\nopen {}\nopen {x}\nopen {x y}\n",
            "presentation\nletters a b c d\nrel a b ~ c\nrel a d ~ b\nrel b c ~ a\n",
        ];
        for text in texts {
            assert_eq!(serialize(&parse(text).unwrap()), text);
        }
        for m in fixtures::all() {
            let text = serialize(&mvs_document(&m));
            let Document::Mvs(raw) = parse(&text).unwrap() else { panic!() };
            assert_eq!(validate(&raw).unwrap(), m);
        }
    }

    #[test]
    fn presentation_semantics() {
        let err = parse("presentation\nletters a a\n").unwrap_err();
        assert_eq!(err, FormatError::Semantic("duplicate letter `a`".into()));
        let err = parse("presentation\nletters a b\nrel a b ~ q\n").unwrap_err();
        assert_eq!(err, syntax(3, 11, "unknown name `q`"));
    }

    #[test]
    fn topology_must_be_closed() {
        let err = parse("topology\npoints x y z\nopen {}\nopen {x}\nopen {y}\nopen {x y z}\n").unwrap_err();
        assert!(matches!(err, FormatError::Semantic(m) if m.contains("union")));
    }
}
