//! The line-oriented spec-file dialect for algebras and Lie pairs.
//!
//! ```text
//! name = "h3"
//! basis = ["e1", "e2", "e3"]
//!
//! [brackets]
//! "e1,e2" = "e3"
//! ```
//!
//! Pair files use the sections `[q]`, `[q.brackets]`, `[l]`, `[l.brackets]`,
//! `[iota]` and `[component.NAME]`. The full grammar is in `docs/grammar.md`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::lie_pair::{Component, LiePairDatum};
use crate::liealg::LieAlgebra;
use crate::linalg::{zero_vector, LinearMap, Vector};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: &'static str,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: [{}] {}", self.line, self.column, self.code, self.message)
    }
}

/// Stable diagnostic codes.
pub mod diag {
    pub const SYNTAX: &str = "E100";
    pub const UNKNOWN_SECTION: &str = "E101";
    pub const UNKNOWN_KEY: &str = "E102";
    pub const DUPLICATE_KEY: &str = "E103";
    pub const BAD_BASIS_NAME: &str = "E110";
    pub const UNKNOWN_NAME: &str = "E200";
    pub const MALFORMED_SCALAR: &str = "E201";
    pub const DUPLICATE_BRACKET: &str = "E202";
    pub const SELF_BRACKET: &str = "E203";
    pub const BRACKET_ORDER: &str = "E204";
    pub const MALFORMED_KEY: &str = "E205";
    pub const MALFORMED_EXPRESSION: &str = "E206";
    pub const MATRIX_SHAPE: &str = "E300";
    pub const MISSING: &str = "E301";
}

type PResult<T> = Result<T, Diagnostic>;

fn diagnostic(code: &'static str, line: usize, column: usize, message: impl Into<String>) -> Diagnostic {
    Diagnostic {
        code,
        line,
        column,
        message: message.into(),
    }
}

/// A string literal with the column of its first content character.
#[derive(Debug, Clone)]
struct Str {
    text: String,
    col: usize,
}

#[derive(Debug, Clone)]
enum Raw {
    Str(Str),
    List(Vec<Raw>),
}

#[derive(Debug, Clone)]
struct Entry {
    key: Str,
    value: Raw,
    value_col: usize,
    line: usize,
}

#[derive(Debug, Clone)]
struct Section {
    name: String,
    line: usize,
    entries: Vec<Entry>,
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(src: &str, line: usize) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn col(&self) -> usize {
        self.pos + 1
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c == ' ' || c == '\t') {
            self.pos += 1;
        }
    }

    fn err(&self, message: impl Into<String>) -> Diagnostic {
        diagnostic(diag::SYNTAX, self.line, self.col(), message)
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    /// Only whitespace or a comment may follow.
    fn finish(&mut self) -> PResult<()> {
        self.skip_ws();
        match self.peek() {
            None | Some('#') => Ok(()),
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
        }
    }

    fn string(&mut self) -> PResult<Str> {
        self.expect('"')?;
        let col = self.col();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c == '"' {
                let text = self.chars[start..self.pos].iter().collect();
                self.pos += 1;
                return Ok(Str { text, col });
            }
            self.pos += 1;
        }
        Err(diagnostic(diag::SYNTAX, self.line, col - 1, "unterminated string"))
    }

    fn bare_word(&mut self) -> Option<Str> {
        let col = self.col();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            self.pos += 1;
        }
        (self.pos > start).then(|| Str {
            text: self.chars[start..self.pos].iter().collect(),
            col,
        })
    }

    fn value(&mut self, depth: usize) -> PResult<Raw> {
        match self.peek() {
            Some('"') => Ok(Raw::Str(self.string()?)),
            Some('[') if depth < 2 => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    if self.peek() == Some(']') {
                        self.pos += 1;
                        return Ok(Raw::List(items));
                    }
                    items.push(self.value(depth + 1)?);
                    self.skip_ws();
                    match self.peek() {
                        Some(',') => self.pos += 1,
                        Some(']') => {}
                        _ => return Err(self.err("expected `,` or `]`")),
                    }
                }
            }
            Some('[') => Err(self.err("arrays nest at most two deep")),
            _ => Err(self.err("expected a quoted string or an array")),
        }
    }
}

fn lex(text: &str) -> PResult<Vec<Section>> {
    let mut sections = vec![Section {
        name: String::new(),
        line: 0,
        entries: Vec::new(),
    }];
    for (i, raw_line) in text.lines().enumerate() {
        let line = i + 1;
        let mut c = Cursor::new(raw_line, line);
        c.skip_ws();
        match c.peek() {
            None | Some('#') => continue,
            Some('[') => {
                c.pos += 1;
                c.skip_ws();
                let mut parts = Vec::new();
                loop {
                    let w = c.bare_word().ok_or_else(|| c.err("expected a section name"))?;
                    parts.push(w.text);
                    c.skip_ws();
                    if c.peek() == Some('.') {
                        c.pos += 1;
                        c.skip_ws();
                    } else {
                        break;
                    }
                }
                c.expect(']')?;
                c.finish()?;
                let name = parts.join(".");
                if sections.iter().any(|s| s.name == name) {
                    return Err(diagnostic(diag::UNKNOWN_SECTION, line, 1, format!("section `[{name}]` appears twice")));
                }
                sections.push(Section {
                    name,
                    line,
                    entries: Vec::new(),
                });
            }
            Some(_) => {
                let key = if c.peek() == Some('"') {
                    c.string()?
                } else {
                    c.bare_word().ok_or_else(|| c.err("expected a key"))?
                };
                c.skip_ws();
                c.expect('=')?;
                c.skip_ws();
                let value_col = c.col();
                let value = c.value(0)?;
                c.finish()?;
                sections.last_mut().expect("root section").entries.push(Entry {
                    key,
                    value,
                    value_col,
                    line,
                });
            }
        }
    }
    Ok(sections)
}

/// Keys of a section, rejecting unknown and duplicate ones.
fn keyed<'s>(section: &'s Section, allowed: &[&str]) -> PResult<BTreeMap<String, &'s Entry>> {
    let mut out = BTreeMap::new();
    for e in &section.entries {
        if !allowed.contains(&e.key.text.as_str()) {
            return Err(diagnostic(
                diag::UNKNOWN_KEY,
                e.line,
                e.key.col,
                format!("unknown key `{}`", e.key.text),
            ));
        }
        if out.insert(e.key.text.clone(), e).is_some() {
            return Err(diagnostic(
                diag::DUPLICATE_KEY,
                e.line,
                e.key.col,
                format!("duplicate key `{}`", e.key.text),
            ));
        }
    }
    Ok(out)
}

fn as_str(e: &Entry) -> PResult<&Str> {
    match &e.value {
        Raw::Str(s) => Ok(s),
        Raw::List(_) => Err(diagnostic(
            diag::SYNTAX,
            e.line,
            e.value_col,
            format!("`{}` must be a string", e.key.text),
        )),
    }
}

fn as_string_list(e: &Entry) -> PResult<Vec<Str>> {
    let bad = || diagnostic(diag::SYNTAX, e.line, e.value_col, format!("`{}` must be an array of strings", e.key.text));
    match &e.value {
        Raw::List(items) => items
            .iter()
            .map(|x| match x {
                Raw::Str(s) => Ok(s.clone()),
                Raw::List(_) => Err(bad()),
            })
            .collect(),
        Raw::Str(_) => Err(bad()),
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_basis(e: &Entry) -> PResult<Vec<String>> {
    let names = as_string_list(e)?;
    let mut out: Vec<String> = Vec::new();
    for s in names {
        if !is_identifier(&s.text) {
            return Err(diagnostic(diag::BAD_BASIS_NAME, e.line, s.col, format!("`{}` is not a valid basis name", s.text)));
        }
        if out.contains(&s.text) {
            return Err(diagnostic(diag::BAD_BASIS_NAME, e.line, s.col, format!("basis name `{}` repeated", s.text)));
        }
        out.push(s.text);
    }
    Ok(out)
}

fn parse_scalar(text: &str, line: usize, col: usize) -> PResult<Scalar> {
    text.trim().parse().map_err(|err| {
        diagnostic(diag::MALFORMED_SCALAR, line, col, format!("{err}"))
    })
}

/// `coeff [*] name` terms joined by `+`/`-`; `0` alone is the zero vector.
fn parse_expression(s: &Str, names: &[String], line: usize) -> PResult<Vector> {
    let chars: Vec<char> = s.text.chars().collect();
    let mut acc = zero_vector(names.len());
    let col = |pos: usize| s.col + pos;
    let err = |pos: usize, msg: &str| diagnostic(diag::MALFORMED_EXPRESSION, line, col(pos), msg.to_string());
    if s.text.trim() == "0" {
        return Ok(acc);
    }
    let mut pos = 0;
    let skip = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let mut first = true;
    loop {
        skip(&mut pos);
        if pos == chars.len() {
            if first {
                return Err(err(pos, "empty expression"));
            }
            return Ok(acc);
        }
        let mut coeff = Scalar::one();
        match chars[pos] {
            '+' => pos += 1,
            '-' => {
                coeff = -coeff;
                pos += 1;
            }
            _ if !first => return Err(err(pos, "expected `+` or `-` between terms")),
            _ => {}
        }
        skip(&mut pos);
        let start = pos;
        if pos < chars.len() && chars[pos].is_ascii_digit() {
            while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '/') {
                pos += 1;
            }
            let text: String = chars[start..pos].iter().collect();
            coeff = coeff * parse_scalar(&text, line, col(start))?;
        } else if pos < chars.len() && chars[pos] == '(' {
            let close = chars[pos..]
                .iter()
                .position(|&c| c == ')')
                .ok_or_else(|| err(pos, "unclosed `(`"))?;
            let text: String = chars[pos + 1..pos + close].iter().collect();
            coeff = coeff * parse_scalar(&text, line, col(pos + 1))?;
            pos += close + 1;
        }
        skip(&mut pos);
        if pos < chars.len() && chars[pos] == '*' {
            pos += 1;
            skip(&mut pos);
        }
        let name_start = pos;
        if pos < chars.len() && (chars[pos].is_ascii_alphabetic() || chars[pos] == '_') {
            while pos < chars.len() && (chars[pos].is_ascii_alphanumeric() || chars[pos] == '_') {
                pos += 1;
            }
        }
        if pos == name_start {
            return Err(err(pos, "expected a basis name"));
        }
        let name: String = chars[name_start..pos].iter().collect();
        let idx = names.iter().position(|n| *n == name).ok_or_else(|| {
            diagnostic(diag::UNKNOWN_NAME, line, col(name_start), format!("unknown basis name `{name}`"))
        })?;
        acc[idx] += &coeff;
        first = false;
    }
}

fn parse_brackets(section: Option<&Section>, name: &str, basis: Vec<String>) -> PResult<LieAlgebra> {
    let mut g = LieAlgebra::new(name, basis.clone()).map_err(|e| diagnostic(diag::BAD_BASIS_NAME, 0, 0, e.to_string()))?;
    let Some(section) = section else {
        return Ok(g);
    };
    let mut seen = BTreeMap::new();
    for e in &section.entries {
        let key = &e.key;
        let parts: Vec<&str> = key.text.split(',').collect();
        if parts.len() != 2 {
            return Err(diagnostic(diag::MALFORMED_KEY, e.line, key.col, format!("bracket key `{}` is not of the form \"a,b\"", key.text)));
        }
        let (a, b) = (parts[0].trim(), parts[1].trim());
        let lookup = |n: &str| {
            basis.iter().position(|x| x == n).ok_or_else(|| {
                diagnostic(diag::UNKNOWN_NAME, e.line, key.col, format!("unknown basis name `{n}` in bracket key"))
            })
        };
        let (i, j) = (lookup(a)?, lookup(b)?);
        if seen.insert((i.min(j), i.max(j)), e.line).is_some() {
            return Err(diagnostic(diag::DUPLICATE_BRACKET, e.line, key.col, format!("bracket [{a}, {b}] given twice")));
        }
        let value = parse_expression(as_str(e)?, &basis, e.line)?;
        if i == j {
            if value.iter().any(|c| !c.is_zero()) {
                return Err(diagnostic(diag::SELF_BRACKET, e.line, key.col, format!("[{a}, {a}] must be zero")));
            }
            continue;
        }
        if i > j {
            return Err(diagnostic(
                diag::BRACKET_ORDER,
                e.line,
                key.col,
                format!("write the key as \"{b},{a}\": the first name must come earlier in the basis"),
            ));
        }
        g.set_bracket(i, j, value).expect("indices are distinct and in range");
    }
    Ok(g)
}

fn missing(line: usize, message: impl Into<String>) -> Diagnostic {
    diagnostic(diag::MISSING, line, 1, message)
}

fn algebra_from(header: &Section, brackets: Option<&Section>, default_name: &str) -> PResult<LieAlgebra> {
    let keys = keyed(header, &["name", "basis"])?;
    let name = match keys.get("name") {
        Some(e) => as_str(e)?.text.clone(),
        None => default_name.to_string(),
    };
    let basis = match keys.get("basis") {
        Some(e) => parse_basis(e)?,
        None => return Err(missing(header.line.max(1), "missing `basis`")),
    };
    parse_brackets(brackets, &name, basis)
}

/// Parsed spec file of either kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecFile {
    Algebra(LieAlgebra),
    Pair(LiePairDatum),
}

/// Parses an algebra or pair file; pair files are recognized by a `[q]`
/// section.
pub fn parse_spec(text: &str) -> PResult<SpecFile> {
    let sections = lex(text)?;
    if sections.iter().any(|s| s.name == "q") {
        pair_from_sections(&sections).map(SpecFile::Pair)
    } else {
        algebra_from_sections(&sections).map(SpecFile::Algebra)
    }
}

pub fn parse_algebra_spec(text: &str) -> PResult<LieAlgebra> {
    algebra_from_sections(&lex(text)?)
}

pub fn parse_pair_spec(text: &str) -> PResult<LiePairDatum> {
    let sections = lex(text)?;
    if !sections.iter().any(|s| s.name == "q") {
        return Err(missing(1, "missing section `[q]`"));
    }
    pair_from_sections(&sections)
}

fn algebra_from_sections(sections: &[Section]) -> PResult<LieAlgebra> {
    if let Some(s) = sections.iter().find(|s| !s.name.is_empty() && s.name != "brackets") {
        return Err(diagnostic(diag::UNKNOWN_SECTION, s.line, 1, format!("unknown section `[{}]`", s.name)));
    }
    let find = |n: &str| sections.iter().find(|s| s.name == n);
    algebra_from(&sections[0], find("brackets"), "g")
}

fn parse_matrix(e: &Entry, dim: usize, component: &str) -> PResult<LinearMap> {
    let shape_err = |detail: String| {
        diagnostic(
            diag::MATRIX_SHAPE,
            e.line,
            e.value_col,
            format!("{} of component `{component}` {detail}, expected {dim}x{dim}", e.key.text),
        )
    };
    let rows = match &e.value {
        Raw::List(rows) => rows,
        Raw::Str(_) => return Err(shape_err("is not a matrix".into())),
    };
    if rows.len() != dim {
        return Err(shape_err(format!("has {} rows", rows.len())));
    }
    let mut out = Vec::with_capacity(dim);
    for row in rows {
        let Raw::List(cells) = row else {
            return Err(shape_err("has a row that is not an array".into()));
        };
        if cells.len() != dim {
            return Err(shape_err(format!("has a row of length {}", cells.len())));
        }
        let row = cells
            .iter()
            .map(|c| match c {
                Raw::Str(s) => parse_scalar(&s.text, e.line, s.col),
                Raw::List(_) => Err(shape_err("nests too deep".into())),
            })
            .collect::<PResult<Vector>>()?;
        out.push(row);
    }
    Ok(LinearMap::from_rows(dim, out).expect("shape checked"))
}

fn pair_from_sections(sections: &[Section]) -> PResult<LiePairDatum> {
    let find = |n: &str| sections.iter().find(|s| s.name == n);
    if let Some(e) = sections[0].entries.first() {
        return Err(diagnostic(diag::UNKNOWN_KEY, e.line, e.key.col, format!("key `{}` outside any section", e.key.text)));
    }
    for s in &sections[1..] {
        let known = matches!(s.name.as_str(), "q" | "q.brackets" | "l" | "l.brackets" | "iota")
            || s.name.strip_prefix("component.").is_some_and(is_identifier);
        if !known {
            return Err(diagnostic(diag::UNKNOWN_SECTION, s.line, 1, format!("unknown section `[{}]`", s.name)));
        }
    }
    let q = algebra_from(find("q").expect("checked by caller"), find("q.brackets"), "q")?;
    let l = match find("l") {
        Some(h) => algebra_from(h, find("l.brackets"), "l")?,
        None => {
            if let Some(s) = find("l.brackets") {
                return Err(missing(s.line, "`[l.brackets]` without `[l]`"));
            }
            LieAlgebra::abelian("0", 0)
        }
    };
    let (n, m) = (q.dim(), l.dim());

    let mut iota_cols: Vec<Option<Vector>> = vec![None; m];
    if let Some(s) = find("iota") {
        for e in &s.entries {
            let t = l.index_of(&e.key.text).ok_or_else(|| {
                diagnostic(diag::UNKNOWN_NAME, e.line, e.key.col, format!("`{}` is not a basis name of l", e.key.text))
            })?;
            if iota_cols[t].is_some() {
                return Err(diagnostic(diag::DUPLICATE_KEY, e.line, e.key.col, format!("duplicate key `{}`", e.key.text)));
            }
            iota_cols[t] = Some(parse_expression(as_str(e)?, q.basis_names(), e.line)?);
        }
    }
    let mut columns = Vec::with_capacity(m);
    for (t, c) in iota_cols.into_iter().enumerate() {
        match c {
            Some(c) => columns.push(c),
            None => {
                let line = find("iota").or(find("l")).map_or(1, |s| s.line);
                return Err(missing(line, format!("missing iota image of `{}`", l.basis_names()[t])));
            }
        }
    }
    let iota = LinearMap::from_columns(n, columns).expect("columns have length dim q");

    let mut components = Vec::new();
    for s in sections.iter().filter(|s| s.name.starts_with("component.")) {
        let name = s.name["component.".len()..].to_string();
        let keys = keyed(s, &["q_action", "l_action"])?;
        let q_action = match keys.get("q_action") {
            Some(e) => parse_matrix(e, n, &name)?,
            None => return Err(missing(s.line, format!("component `{name}` lacks `q_action`"))),
        };
        let l_action = match keys.get("l_action") {
            Some(e) => parse_matrix(e, m, &name)?,
            None if m == 0 => LinearMap::identity(0),
            None => return Err(missing(s.line, format!("component `{name}` lacks `l_action`"))),
        };
        components.push(Component {
            name,
            q_action,
            l_action,
        });
    }
    Ok(LiePairDatum {
        q,
        l,
        iota,
        components,
    })
}

fn quote(s: &str) -> String {
    format!("\"{s}\"")
}

fn name_list(names: &[String]) -> String {
    format!("[{}]", names.iter().map(|n| quote(n)).collect::<Vec<_>>().join(", "))
}

/// Inverse of the expression parser, e.g. `e1 - 1/2 e3` or `(1+i) e2`.
pub fn render_expression(v: &[Scalar], names: &[String]) -> String {
    let mut out = String::new();
    for (c, name) in v.iter().zip(names).filter(|(c, _)| !c.is_zero()) {
        let (neg, mag) = if c.is_real() && c.re() < &num_rational::BigRational::zero() {
            (true, -c.clone())
        } else {
            (false, c.clone())
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag.is_one() {
            out.push_str(name);
        } else if mag.is_real() {
            out.push_str(&format!("{mag} {name}"));
        } else {
            out.push_str(&format!("({mag}) {name}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn emit_header(out: &mut String, g: &LieAlgebra) {
    out.push_str(&format!("name = {}\n", quote(g.name())));
    out.push_str(&format!("basis = {}\n", name_list(g.basis_names())));
}

fn emit_brackets(out: &mut String, g: &LieAlgebra) {
    let names = g.basis_names();
    for (&(i, j), v) in g.brackets() {
        out.push_str(&format!(
            "{} = {}\n",
            quote(&format!("{},{}", names[i], names[j])),
            quote(&render_expression(v, names))
        ));
    }
}

pub fn emit_algebra_spec(g: &LieAlgebra) -> String {
    let mut out = String::new();
    emit_header(&mut out, g);
    out.push_str("\n[brackets]\n");
    emit_brackets(&mut out, g);
    out
}

fn emit_matrix(m: &LinearMap) -> String {
    let rows: Vec<String> = m
        .rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|c| quote(&c.to_string())).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

pub fn emit_pair_spec(p: &LiePairDatum) -> String {
    let mut out = String::from("[q]\n");
    emit_header(&mut out, &p.q);
    out.push_str("\n[q.brackets]\n");
    emit_brackets(&mut out, &p.q);
    out.push_str("\n[l]\n");
    emit_header(&mut out, &p.l);
    out.push_str("\n[l.brackets]\n");
    emit_brackets(&mut out, &p.l);
    out.push_str("\n[iota]\n");
    for (t, name) in p.l.basis_names().iter().enumerate() {
        out.push_str(&format!(
            "{} = {}\n",
            quote(name),
            quote(&render_expression(p.iota.column(t), p.q.basis_names()))
        ));
    }
    for c in &p.components {
        out.push_str(&format!("\n[component.{}]\n", c.name));
        out.push_str(&format!("q_action = {}\n", emit_matrix(&c.q_action)));
        out.push_str(&format!("l_action = {}\n", emit_matrix(&c.l_action)));
    }
    out
}

pub fn emit_spec(file: &SpecFile) -> String {
    match file {
        SpecFile::Algebra(g) => emit_algebra_spec(g),
        SpecFile::Pair(p) => emit_pair_spec(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::standard;
    use crate::lie_pair::standard as pairs;
    use proptest::prelude::*;

    fn code(text: &str) -> (&'static str, usize, usize) {
        let d = parse_spec(text).unwrap_err();
        (d.code, d.line, d.column)
    }

    #[test]
    fn heisenberg_and_sl2() {
        let h = parse_algebra_spec("name = \"h3\"\nbasis = [\"e1\", \"e2\", \"e3\"]\n[brackets]\n\"e1,e2\" = \"e3\"\n").unwrap();
        assert_eq!(h, standard::heisenberg());
        let s = parse_algebra_spec(
            "name = \"sl2\"\nbasis = [\"h\",\"e\",\"f\"]\n\n[brackets]\n\"h,e\" = \"2e\"\n\"h,f\" = \"-2f\"\n\"e,f\" = \"h\" # comment\n",
        )
        .unwrap();
        assert_eq!(s, standard::sl2());
    }

    #[test]
    fn expression_forms() {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let parse = |t: &str| parse_expression(&Str { text: t.into(), col: 1 }, &names, 1);
        let v = parse("1/2 a - 3*b + (1/2-i) c").unwrap();
        assert_eq!(v, vec![Scalar::ratio(1, 2), Scalar::from_integer(-3), "1/2-i".parse().unwrap()]);
        assert_eq!(parse("0").unwrap(), zero_vector(3));
        assert_eq!(parse("-a + a").unwrap(), zero_vector(3));
        assert_eq!(parse("a b").unwrap_err().code, diag::MALFORMED_EXPRESSION);
        assert_eq!(parse("2").unwrap_err().code, diag::MALFORMED_EXPRESSION);
        assert_eq!(parse("1/0 a").unwrap_err().code, diag::MALFORMED_SCALAR);
        assert_eq!(parse("(1+) a").unwrap_err().code, diag::MALFORMED_SCALAR);
        for v in [parse("1/2 a - 3*b + (1/2-i) c").unwrap(), vec![-Scalar::one(), Scalar::i(), Scalar::zero()]] {
            assert_eq!(parse(&render_expression(&v, &names)).unwrap(), v);
        }
    }

    #[test]
    fn diagnostics() {
        let head = "name = \"x\"\nbasis = [\"e1\", \"e2\", \"e3\"]\n[brackets]\n";
        assert_eq!(code(&format!("{head}\"e1,e2\" = \"e4\"\n")), (diag::UNKNOWN_NAME, 4, 12));
        assert_eq!(code(&format!("{head}\"e1,e2\" = \"e3\"\n\"e1,e2\" = \"e3\"\n")).0, diag::DUPLICATE_BRACKET);
        assert_eq!(code(&format!("{head}\"e1,e1\" = \"e3\"\n")).0, diag::SELF_BRACKET);
        assert!(parse_spec(&format!("{head}\"e1,e1\" = \"0\"\n")).is_ok());
        assert_eq!(code(&format!("{head}\"e2,e1\" = \"e3\"\n")).0, diag::BRACKET_ORDER);
        assert_eq!(code(&format!("{head}\"e1\" = \"e3\"\n")).0, diag::MALFORMED_KEY);
        assert_eq!(code(&format!("{head}\"e1,e2\" = \"x e3\"\n")).0, diag::UNKNOWN_NAME);
        assert_eq!(code(&format!("{head}\"e1,e2\" = \"e3 e2\"\n")).0, diag::MALFORMED_EXPRESSION);
        assert_eq!(code(&format!("{head}\"e1,e2\" = e3\n")).0, diag::SYNTAX);
        assert_eq!(code("basis = [\"a\", \"a\"]\n").0, diag::BAD_BASIS_NAME);
        assert_eq!(code("basis = [\"1a\"]\n").0, diag::BAD_BASIS_NAME);
        assert_eq!(code("name = \"x\"\n").0, diag::MISSING);
        assert_eq!(code("basis = []\ncolour = \"red\"\n").0, diag::UNKNOWN_KEY);
        assert_eq!(code("basis = []\nbasis = []\n").0, diag::DUPLICATE_KEY);
        assert_eq!(code("basis = []\n[stuff]\n").0, diag::UNKNOWN_SECTION);
        assert_eq!(code("basis = [\"a\"\n").0, diag::SYNTAX);
    }

    const PAIR: &str = "[q]\nname = \"h3\"\nbasis = [\"e1\", \"e2\", \"e3\"]\n[q.brackets]\n\"e1,e2\" = \"e3\"\n\
[l]\nname = \"center\"\nbasis = [\"t\"]\n[iota]\nt = \"e3\"\n";

    #[test]
    fn pair_files() {
        assert_eq!(parse_pair_spec(PAIR).unwrap(), pairs::h3_center());
        let with = format!("{PAIR}[component.swap]\nq_action = [[\"0\",\"1\",\"0\"],[\"1\",\"0\",\"0\"],[\"0\",\"0\",\"-1\"]]\nl_action = [[\"-1\"]]\n");
        assert_eq!(parse_pair_spec(&with).unwrap(), pairs::h3_swap());
        let bad_shape = format!("{PAIR}[component.g]\nq_action = [[\"1\",\"0\",\"0\"],[\"0\",\"1\",\"0\"]]\nl_action = [[\"1\"]]\n");
        let d = parse_pair_spec(&bad_shape).unwrap_err();
        assert_eq!(d.code, diag::MATRIX_SHAPE);
        assert!(d.message.contains("`g`"));
        let no_l = format!("{PAIR}[component.g]\nq_action = [[\"1\",\"0\",\"0\"],[\"0\",\"1\",\"0\"],[\"0\",\"0\",\"1\"]]\n");
        assert_eq!(parse_pair_spec(&no_l).unwrap_err().code, diag::MISSING);
        let no_iota = PAIR.replace("[iota]\nt = \"e3\"\n", "");
        assert_eq!(parse_pair_spec(&no_iota).unwrap_err().code, diag::MISSING);
        let trivial = "[q]\nname = \"sl2\"\nbasis = [\"h\", \"e\", \"f\"]\n[q.brackets]\n\"h,e\" = \"2 e\"\n\"h,f\" = \"-2 f\"\n\"e,f\" = \"h\"\n";
        assert_eq!(parse_pair_spec(trivial).unwrap(), LiePairDatum::trivial(standard::sl2()));
    }

    #[test]
    fn emit_then_parse() {
        for g in standard::corpus().into_iter().chain([standard::jacobi_violating()]) {
            assert_eq!(parse_algebra_spec(&emit_algebra_spec(&g)).unwrap(), g);
        }
        for (_, p) in pairs::corpus() {
            assert_eq!(parse_pair_spec(&emit_pair_spec(&p)).unwrap(), p);
        }
        let t = LiePairDatum::trivial(standard::aff1());
        assert_eq!(parse_pair_spec(&emit_pair_spec(&t)).unwrap(), t);
    }

    fn small_scalar() -> impl Strategy<Value = Scalar> {
        (-3i64..=3, 1i64..=3, -2i64..=2).prop_map(|(a, b, c)| {
            Scalar::ratio(a, b) + Scalar::from_integer(c) * Scalar::i()
        })
    }

    proptest! {
        #[test]
        fn random_algebras_round_trip(dim in 0usize..4, consts in proptest::collection::vec(small_scalar(), 27)) {
            let mut g = LieAlgebra::abelian("random", dim);
            let mut k = 0;
            for i in 0..dim {
                for j in i + 1..dim {
                    g.set_bracket(i, j, consts[k..k + dim].to_vec()).unwrap();
                    k += dim;
                }
            }
            let once = parse_algebra_spec(&emit_algebra_spec(&g)).unwrap();
            prop_assert_eq!(&once, &g);
            prop_assert_eq!(parse_algebra_spec(&emit_algebra_spec(&once)).unwrap(), once);
        }
    }
}
