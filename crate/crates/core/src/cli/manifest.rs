//! Plain-text manifests. A manifest opens with a `kind:` line, followed by
//! `key: value` lines and indented blocks:
//!
//! ```text
//! kind: algebra
//! labels: 1 x
//! unit: 1 0
//! products:
//!   (0, 0) -> 1*0
//!   (0, 1) -> 1*1
//!   (1, 0) -> 1*1
//! ```
//!
//! `#` starts a comment. Scalars use the exact syntax `a/b+c/di`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use crate::algebra::{make_algebra, Algebra, AlgebraError, SparseVec};
use crate::exact::{Scalar, SparseMatrix};
use crate::site::{Cover, FiniteSpace, OpenSet, Presheaf, SiteError, MAX_POINTS};

/// Byte offset plus 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Position {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
}

impl Position {
    const START: Position = Position {
        offset: 0,
        line: 1,
        column: 1,
    };
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: Position,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "position {} (line {}, column {}): {}",
            self.position.offset, self.position.line, self.position.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

fn err<T>(position: Position, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        position,
        message: message.into(),
    })
}

#[derive(Clone, Debug)]
struct Item {
    text: String,
    pos: Position,
}

#[derive(Clone, Debug)]
enum Value {
    Inline(Item),
    Block(Vec<Item>),
}

#[derive(Clone, Debug)]
struct Entry {
    key: String,
    pos: Position,
    value: Value,
}

fn lex(text: &str) -> Result<Vec<Entry>, ParseError> {
    let mut entries: Vec<Entry> = Vec::new();
    let mut offset = 0;
    for (n, raw) in text.split_inclusive('\n').enumerate() {
        let line_start = offset;
        offset += raw.len();
        let line = raw.trim_end_matches(['\n', '\r']);
        let line = line.split_once('#').map_or(line, |(before, _)| before);
        let body = line.trim();
        if body.is_empty() {
            continue;
        }
        let lead = line.len() - line.trim_start().len();
        let pos = Position {
            offset: line_start + lead,
            line: n + 1,
            column: line[..lead].chars().count() + 1,
        };
        if lead > 0 {
            match entries.last_mut() {
                Some(Entry {
                    value: Value::Block(items),
                    ..
                }) => items.push(Item {
                    text: body.to_string(),
                    pos,
                }),
                _ => return err(pos, "indented line outside a block"),
            }
            continue;
        }
        let Some((key, value)) = body.split_once(':') else {
            return err(pos, "expected `key: value`");
        };
        let key = key.trim();
        if key.is_empty() || !key.bytes().all(|b| b.is_ascii_lowercase() || b == b'_') {
            return err(pos, format!("bad key `{key}`"));
        }
        if entries.iter().any(|e| e.key == key) {
            return err(pos, format!("duplicate key `{key}`"));
        }
        let value_text = value.trim();
        let value = if value_text.is_empty() {
            Value::Block(Vec::new())
        } else {
            let skip = body.len() - value.trim_start().len();
            Value::Inline(Item {
                text: value_text.to_string(),
                pos: Position {
                    offset: pos.offset + skip,
                    line: pos.line,
                    column: pos.column + body[..skip].chars().count(),
                },
            })
        };
        entries.push(Entry {
            key: key.to_string(),
            pos,
            value,
        });
    }
    Ok(entries)
}

/// The entries of one manifest, consumed key by key.
struct Fields {
    anchor: Position,
    entries: Vec<Entry>,
}

impl Fields {
    fn take(&mut self, key: &str) -> Option<Entry> {
        let i = self.entries.iter().position(|e| e.key == key)?;
        Some(self.entries.remove(i))
    }

    fn inline(&mut self, key: &str) -> Result<Option<Item>, ParseError> {
        match self.take(key) {
            None => Ok(None),
            Some(Entry {
                value: Value::Inline(item),
                ..
            }) => Ok(Some(item)),
            Some(e) => err(e.pos, format!("`{key}` needs an inline value")),
        }
    }

    fn require_inline(&mut self, key: &str) -> Result<Item, ParseError> {
        self.inline(key)?
            .map_or_else(|| err(self.anchor, format!("missing key `{key}`")), Ok)
    }

    fn block(&mut self, key: &str) -> Result<Option<Vec<Item>>, ParseError> {
        match self.take(key) {
            None => Ok(None),
            Some(Entry {
                value: Value::Block(items),
                ..
            }) => Ok(Some(items)),
            Some(e) => err(e.pos, format!("`{key}` needs an indented block")),
        }
    }

    fn require_block(&mut self, key: &str) -> Result<Vec<Item>, ParseError> {
        self.block(key)?
            .map_or_else(|| err(self.anchor, format!("missing key `{key}`")), Ok)
    }

    fn finish(self) -> Result<(), ParseError> {
        match self.entries.first() {
            Some(e) => err(e.pos, format!("unexpected key `{}`", e.key)),
            None => Ok(()),
        }
    }
}

fn parse_usize(text: &str, pos: Position) -> Result<usize, ParseError> {
    text.trim().parse().or_else(|_| {
        err(
            pos,
            format!("expected a non-negative integer, got `{}`", text.trim()),
        )
    })
}

fn parse_scalar(text: &str, pos: Position) -> Result<Scalar, ParseError> {
    text.parse()
        .or_else(|e: crate::exact::ExactError| err(pos, e.to_string()))
}

fn parse_open(text: &str, points: usize, pos: Position) -> Result<OpenSet, ParseError> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .map_or_else(
            || {
                err(
                    pos,
                    format!("expected a point set like {{0,1}}, got `{text}`"),
                )
            },
            Ok,
        )?;
    let mut pts = Vec::new();
    for p in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let p = parse_usize(p, pos)?;
        if p >= points {
            return err(pos, format!("point {p} outside 0..{points}"));
        }
        pts.push(p);
    }
    Ok(OpenSet::from_points(&pts))
}

fn parse_matrix(
    text: &str,
    shape: (usize, usize),
    pos: Position,
) -> Result<SparseMatrix, ParseError> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .map_or_else(|| err(pos, "expected a matrix like [1 0; 0 1]"), Ok)?;
    if inner.trim().is_empty() {
        return Ok(SparseMatrix::zeros(shape.0, shape.1));
    }
    let mut rows = Vec::new();
    for row in inner.split(';') {
        let row: Vec<Scalar> = row
            .split_whitespace()
            .map(|s| parse_scalar(s, pos))
            .collect::<Result<_, _>>()?;
        rows.push(row);
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) || (rows.len(), cols) != shape {
        return err(pos, format!("matrix must be {} x {}", shape.0, shape.1));
    }
    Ok(SparseMatrix::from_dense(&rows))
}

fn render_matrix(m: &SparseMatrix) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return "[]".to_string();
    }
    let rows: Vec<String> = m
        .to_dense()
        .iter()
        .map(|r| {
            r.iter()
                .map(Scalar::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!("[{}]", rows.join("; "))
}

fn render_open(o: OpenSet) -> String {
    o.to_string()
}

/// Structure constants and unit of an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraManifest {
    pub labels: Vec<String>,
    pub unit: Vec<Scalar>,
    /// Nonzero products `e_i e_j`.
    pub products: BTreeMap<(usize, usize), SparseVec>,
}

impl AlgebraManifest {
    pub fn from_algebra(a: &Algebra) -> Self {
        AlgebraManifest {
            labels: a.labels().to_vec(),
            unit: a.unit().to_vec(),
            products: a.structure_constants(),
        }
    }

    pub fn to_algebra(&self) -> Result<Algebra, AlgebraError> {
        make_algebra(
            self.labels.clone(),
            self.products.clone(),
            self.unit.clone(),
        )
    }

    fn parse(f: &mut Fields) -> Result<Self, ParseError> {
        let labels_item = f.require_inline("labels")?;
        let labels: Vec<String> = labels_item
            .text
            .split_whitespace()
            .map(str::to_string)
            .collect();
        let n = labels.len();
        let unit_item = f.require_inline("unit")?;
        let unit: Vec<Scalar> = unit_item
            .text
            .split_whitespace()
            .map(|s| parse_scalar(s, unit_item.pos))
            .collect::<Result<_, _>>()?;
        if unit.len() != n {
            return err(
                unit_item.pos,
                format!("unit has {} coordinates, expected {n}", unit.len()),
            );
        }
        let mut products = BTreeMap::new();
        let mut seen = std::collections::BTreeSet::new();
        for item in f.block("products")?.unwrap_or_default() {
            let (pair, value) = parse_product(&item, n)?;
            if !seen.insert(pair) {
                return err(item.pos, format!("duplicate product {pair:?}"));
            }
            if !value.is_empty() {
                products.insert(pair, value);
            }
        }
        let m = AlgebraManifest {
            labels,
            unit,
            products,
        };
        if let Err(e) = m.to_algebra() {
            return err(f.anchor, format!("invalid algebra: {e}"));
        }
        Ok(m)
    }

    fn render(&self, out: &mut String) {
        let _ = writeln!(out, "labels: {}", self.labels.join(" "));
        let unit: Vec<String> = self.unit.iter().map(Scalar::to_string).collect();
        let _ = writeln!(out, "unit: {}", unit.join(" "));
        out.push_str("products:\n");
        for ((i, j), v) in &self.products {
            let terms: Vec<String> = v.iter().map(|(k, c)| format!("{c}*{k}")).collect();
            let _ = writeln!(out, "  ({i}, {j}) -> {}", terms.join(" + "));
        }
    }
}

/// `(i, j) -> c*k + c*k`; a bare `k` has coefficient 1 and `0` is zero.
fn parse_product(item: &Item, n: usize) -> Result<((usize, usize), SparseVec), ParseError> {
    let pos = item.pos;
    let Some((lhs, rhs)) = item.text.split_once("->") else {
        return err(pos, "expected `(i, j) -> c*k + ...`");
    };
    let pair = lhs
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .and_then(|t| t.split_once(','))
        .map_or_else(|| err(pos, "expected `(i, j)`"), Ok)?;
    let (i, j) = (parse_usize(pair.0, pos)?, parse_usize(pair.1, pos)?);
    if i >= n || j >= n {
        return err(pos, format!("index outside 0..{n}"));
    }
    let tokens: Vec<&str> = rhs.split_whitespace().collect();
    if tokens == ["0"] {
        return Ok(((i, j), Vec::new()));
    }
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (t, token) in tokens.iter().enumerate() {
        if t % 2 == 1 {
            if *token != "+" {
                return err(pos, format!("expected `+` between terms, got `{token}`"));
            }
            continue;
        }
        let (c, k) = match token.rsplit_once(['*', '·']) {
            Some((c, k)) => (parse_scalar(c, pos)?, k),
            None => (Scalar::one(), *token),
        };
        let k = parse_usize(k, pos)?;
        if k >= n {
            return err(pos, format!("index {k} outside 0..{n}"));
        }
        *acc.entry(k).or_default() += &c;
    }
    if tokens.is_empty() || tokens.len().is_multiple_of(2) {
        return err(pos, "incomplete product");
    }
    Ok((
        (i, j),
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpenList {
    /// Every open, the empty set and the whole space included.
    Opens(Vec<OpenSet>),
    /// A subbasis; the topology is the one it generates.
    Generators(Vec<OpenSet>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceManifest {
    pub points: usize,
    pub opens: OpenList,
}

impl SpaceManifest {
    pub fn from_space(space: &FiniteSpace) -> Self {
        SpaceManifest {
            points: space.n_points(),
            opens: OpenList::Opens(space.opens().to_vec()),
        }
    }

    pub fn to_space(&self) -> Result<FiniteSpace, SiteError> {
        match &self.opens {
            OpenList::Opens(o) => FiniteSpace::new(self.points, o.iter().copied()),
            OpenList::Generators(g) => FiniteSpace::generated_by(self.points, g.iter().copied()),
        }
    }

    fn parse(f: &mut Fields) -> Result<(Self, FiniteSpace), ParseError> {
        let item = f.require_inline("points")?;
        let points = parse_usize(&item.text, item.pos)?;
        if points == 0 || points > MAX_POINTS {
            return err(
                item.pos,
                format!("between 1 and {MAX_POINTS} points required"),
            );
        }
        let opens = match (f.block("opens")?, f.block("generators")?) {
            (Some(items), None) => OpenList::Opens(parse_opens(&items, points)?),
            (None, Some(items)) => OpenList::Generators(parse_opens(&items, points)?),
            _ => {
                return err(
                    f.anchor,
                    "exactly one of `opens` or `generators` is required",
                )
            }
        };
        let m = SpaceManifest { points, opens };
        match m.to_space() {
            Ok(space) => Ok((m, space)),
            Err(e) => err(f.anchor, format!("invalid space: {e}")),
        }
    }

    fn render(&self, out: &mut String) {
        let _ = writeln!(out, "points: {}", self.points);
        let (key, list) = match &self.opens {
            OpenList::Opens(o) => ("opens", o),
            OpenList::Generators(g) => ("generators", g),
        };
        let _ = writeln!(out, "{key}:");
        for o in list {
            let _ = writeln!(out, "  {}", render_open(*o));
        }
    }
}

fn parse_opens(items: &[Item], points: usize) -> Result<Vec<OpenSet>, ParseError> {
    items
        .iter()
        .map(|i| parse_open(&i.text, points, i.pos))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverManifest {
    pub space: SpaceManifest,
    pub members: Vec<OpenSet>,
}

impl CoverManifest {
    pub fn from_cover(cover: &Cover) -> Self {
        CoverManifest {
            space: SpaceManifest::from_space(cover.space()),
            members: cover.members().to_vec(),
        }
    }

    pub fn to_cover(&self) -> Result<Cover, SiteError> {
        Cover::new(Arc::new(self.space.to_space()?), self.members.clone())
    }

    fn parse(f: &mut Fields) -> Result<Self, ParseError> {
        let (space, _) = SpaceManifest::parse(f)?;
        let members = parse_opens(&f.require_block("members")?, space.points)?;
        let m = CoverManifest { space, members };
        if let Err(e) = m.to_cover() {
            return err(f.anchor, format!("invalid cover: {e}"));
        }
        Ok(m)
    }

    fn render(&self, out: &mut String) {
        self.space.render(out);
        out.push_str("members:\n");
        for o in &self.members {
            let _ = writeln!(out, "  {}", render_open(*o));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sections {
    /// `C^r` on every nonempty open.
    Constant(usize),
    /// Functions on the points of each open.
    Functions,
    Table {
        values: BTreeMap<OpenSet, usize>,
        /// `(v, u)` for `v ⊆ u`, a `dim M(v) x dim M(u)` matrix.
        restrictions: BTreeMap<(OpenSet, OpenSet), SparseMatrix>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafManifest {
    pub space: SpaceManifest,
    pub sections: Sections,
}

impl PresheafManifest {
    pub fn to_presheaf(&self) -> Result<Presheaf, SiteError> {
        let space = Arc::new(self.space.to_space()?);
        Ok(match &self.sections {
            Sections::Constant(r) => Presheaf::constant(space, *r),
            Sections::Functions => Presheaf::functions(space),
            Sections::Table {
                values,
                restrictions,
            } => Presheaf::from_table(space, values.clone(), restrictions.clone())?,
        })
    }

    fn parse(f: &mut Fields) -> Result<Self, ParseError> {
        let (space, _) = SpaceManifest::parse(f)?;
        let item = f.require_inline("sections")?;
        let words: Vec<&str> = item.text.split_whitespace().collect();
        let sections = match words.as_slice() {
            ["constant", r] => Sections::Constant(parse_usize(r, item.pos)?),
            ["functions"] => Sections::Functions,
            ["table"] => {
                let mut values = BTreeMap::new();
                for v in f.require_block("values")? {
                    let Some((o, d)) = v.text.split_once('=') else {
                        return err(v.pos, "expected `{..} = dim`");
                    };
                    let o = parse_open(o, space.points, v.pos)?;
                    if values.insert(o, parse_usize(d, v.pos)?).is_some() {
                        return err(v.pos, format!("duplicate value on {o}"));
                    }
                }
                let mut restrictions = BTreeMap::new();
                for r in f.block("restrictions")?.unwrap_or_default() {
                    let parsed = r
                        .text
                        .split_once('=')
                        .and_then(|(l, m)| l.split_once("<-").map(|(v, u)| (v, u, m)));
                    let Some((v, u, m)) = parsed else {
                        return err(r.pos, "expected `{v} <- {u} = [..]`");
                    };
                    let (v, u) = (
                        parse_open(v, space.points, r.pos)?,
                        parse_open(u, space.points, r.pos)?,
                    );
                    let (Some(dv), Some(du)) = (values.get(&v), values.get(&u)) else {
                        return err(r.pos, "restriction between opens without values");
                    };
                    let m = parse_matrix(m, (*dv, *du), r.pos)?;
                    if restrictions.insert((v, u), m).is_some() {
                        return err(r.pos, "duplicate restriction");
                    }
                }
                Sections::Table {
                    values,
                    restrictions,
                }
            }
            _ => {
                return err(
                    item.pos,
                    "expected `constant <rank>`, `functions` or `table`",
                )
            }
        };
        let m = PresheafManifest { space, sections };
        if let Err(e) = m.to_presheaf() {
            return err(f.anchor, format!("invalid presheaf: {e}"));
        }
        Ok(m)
    }

    fn render(&self, out: &mut String) {
        self.space.render(out);
        match &self.sections {
            Sections::Constant(r) => {
                let _ = writeln!(out, "sections: constant {r}");
            }
            Sections::Functions => out.push_str("sections: functions\n"),
            Sections::Table {
                values,
                restrictions,
            } => {
                out.push_str("sections: table\nvalues:\n");
                for (o, d) in values {
                    let _ = writeln!(out, "  {} = {d}", render_open(*o));
                }
                out.push_str("restrictions:\n");
                for ((v, u), m) in restrictions {
                    let _ = writeln!(
                        out,
                        "  {} <- {} = {}",
                        render_open(*v),
                        render_open(*u),
                        render_matrix(m)
                    );
                }
            }
        }
    }
}

/// A refinement of one cover of a space by another, with the constant
/// presheaf of the given rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobManifest {
    pub space: SpaceManifest,
    pub coarse: Vec<OpenSet>,
    pub fine: Vec<OpenSet>,
    /// Fine member `b` lies inside coarse member `assignment[b]`.
    pub assignment: Vec<usize>,
    pub rank: usize,
}

impl JobManifest {
    /// The coarse cover, the fine cover and the presheaf, on one space.
    pub fn instantiate(&self) -> Result<(Cover, Cover, Presheaf), SiteError> {
        let space = Arc::new(self.space.to_space()?);
        Ok((
            Cover::new(space.clone(), self.coarse.clone())?,
            Cover::new(space.clone(), self.fine.clone())?,
            Presheaf::constant(space, self.rank),
        ))
    }

    fn parse(f: &mut Fields) -> Result<Self, ParseError> {
        let task = f.require_inline("task")?;
        if task.text != "refine" {
            return err(task.pos, format!("unknown task `{}`", task.text));
        }
        let (space, _) = SpaceManifest::parse(f)?;
        let coarse = parse_opens(&f.require_block("coarse")?, space.points)?;
        let fine = parse_opens(&f.require_block("fine")?, space.points)?;
        let item = f.require_inline("assignment")?;
        let assignment = item
            .text
            .split_whitespace()
            .map(|t| parse_usize(t, item.pos))
            .collect::<Result<Vec<_>, _>>()?;
        let rank = match f.inline("rank")? {
            Some(r) => parse_usize(&r.text, r.pos)?,
            None => 1,
        };
        let m = JobManifest {
            space,
            coarse,
            fine,
            assignment,
            rank,
        };
        if let Err(e) = m.instantiate() {
            return err(f.anchor, format!("invalid job: {e}"));
        }
        Ok(m)
    }

    fn render(&self, out: &mut String) {
        out.push_str("task: refine\n");
        self.space.render(out);
        for (key, list) in [("coarse", &self.coarse), ("fine", &self.fine)] {
            let _ = writeln!(out, "{key}:");
            for o in list {
                let _ = writeln!(out, "  {}", render_open(*o));
            }
        }
        let a: Vec<String> = self.assignment.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "assignment: {}", a.join(" "));
        let _ = writeln!(out, "rank: {}", self.rank);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Manifest {
    Algebra(AlgebraManifest),
    Space(SpaceManifest),
    Cover(CoverManifest),
    Presheaf(PresheafManifest),
    Job(JobManifest),
}

impl Manifest {
    pub fn kind(&self) -> &'static str {
        match self {
            Manifest::Algebra(_) => "algebra",
            Manifest::Space(_) => "space",
            Manifest::Cover(_) => "cover",
            Manifest::Presheaf(_) => "presheaf",
            Manifest::Job(_) => "job",
        }
    }

    pub fn render(&self) -> String {
        let mut out = format!("kind: {}\n", self.kind());
        match self {
            Manifest::Algebra(m) => m.render(&mut out),
            Manifest::Space(m) => m.render(&mut out),
            Manifest::Cover(m) => m.render(&mut out),
            Manifest::Presheaf(m) => m.render(&mut out),
            Manifest::Job(m) => m.render(&mut out),
        }
        out
    }
}

pub fn parse_manifest(text: &str) -> Result<Manifest, ParseError> {
    let mut entries = lex(text)?;
    if entries.is_empty() {
        return err(Position::START, "empty manifest");
    }
    let first = entries.remove(0);
    let kind = match (&first.key[..], &first.value) {
        ("kind", Value::Inline(item)) => item.clone(),
        _ => return err(first.pos, "a manifest starts with `kind: ...`"),
    };
    let mut f = Fields {
        anchor: first.pos,
        entries,
    };
    let m = match kind.text.as_str() {
        "algebra" => Manifest::Algebra(AlgebraManifest::parse(&mut f)?),
        "space" => Manifest::Space(SpaceManifest::parse(&mut f)?.0),
        "cover" => Manifest::Cover(CoverManifest::parse(&mut f)?),
        "presheaf" => Manifest::Presheaf(PresheafManifest::parse(&mut f)?),
        "job" => Manifest::Job(JobManifest::parse(&mut f)?),
        other => return err(kind.pos, format!("unknown kind `{other}`")),
    };
    f.finish()?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_algebra, truncated_polynomial};
    use crate::site::spaces::{chain3, circle_refinement};

    #[test]
    fn empty_input_errors_at_zero() {
        for text in ["", "\n  \n# only a comment\n"] {
            let e = parse_manifest(text).unwrap_err();
            assert_eq!(e.position.offset, 0);
        }
    }

    #[test]
    fn decimal_rejected() {
        let text = "kind: algebra\nlabels: 1\nunit: 0.5\n";
        let e = parse_manifest(text).unwrap_err();
        assert!(e.message.contains("exact scalar syntax required"), "{e}");
        assert_eq!((e.position.line, e.position.column), (3, 7));
    }

    #[test]
    fn positioned_errors() {
        let e =
            parse_manifest("kind: algebra\nlabels: a b\nunit: 1 0\nproducts:\n  (0, 0) -> 1*5\n")
                .unwrap_err();
        assert_eq!(e.position.line, 5);
        let e = parse_manifest("kind: widget\n").unwrap_err();
        assert_eq!((e.position.line, e.position.column), (1, 7));
        assert!(parse_manifest("labels: a\nkind: algebra\n").is_err());
        assert!(parse_manifest("kind: algebra\n  stray\n").is_err());
    }

    #[test]
    fn algebra_round_trip() {
        for a in [matrix_algebra(2), truncated_polynomial(3)] {
            let m = Manifest::Algebra(AlgebraManifest::from_algebra(&a));
            let back = parse_manifest(&m.render()).unwrap();
            assert_eq!(back, m);
            let Manifest::Algebra(am) = back else {
                unreachable!()
            };
            assert_eq!(am.to_algebra().unwrap(), a);
        }
    }

    #[test]
    fn product_syntax() {
        let text =
            "kind: algebra\nlabels: 1 x\nunit: 1 0\nproducts:\n  (0, 0) -> 0\n  (0,0) -> 1*0\n";
        assert!(parse_manifest(text)
            .unwrap_err()
            .message
            .contains("duplicate"));
        let text = "kind: algebra\nlabels: 1 x\nunit: 1 0\nproducts:\n  (0, 0) -> 1*0\n  (0, 1) -> 1\n  (1, 0) -> 1/2*1 + 1/2*1\n";
        let Manifest::Algebra(m) = parse_manifest(text).unwrap() else {
            unreachable!()
        };
        assert_eq!(m.to_algebra().unwrap().product(1, 0), &[(1, Scalar::one())]);
        // a zero unit is not a unit
        let text = "kind: algebra\nlabels: 1 x\nunit: 0 0\nproducts:\n  (0, 0) -> 0\n";
        assert!(parse_manifest(text)
            .unwrap_err()
            .message
            .contains("invalid algebra"));
    }

    #[test]
    fn presheaf_table_round_trip() {
        let text = "\
kind: presheaf
points: 3
opens:
  {}
  {0}
  {0,1}
  {0,1,2}
sections: table
values:
  {} = 0
  {0} = 1
  {0,1} = 2
  {0,1,2} = 1
restrictions:
  {0} <- {0,1} = [1 1/2-i]
  {0} <- {0,1,2} = [13/4]
  {0,1} <- {0,1,2} = [2; 1/2+i]
";
        let m = parse_manifest(text).unwrap();
        assert_eq!(parse_manifest(&m.render()).unwrap(), m);
        let Manifest::Presheaf(p) = m else {
            unreachable!()
        };
        let p = p.to_presheaf().unwrap();
        assert_eq!(p.space().as_ref(), &chain3());
        assert!(crate::site::validate_presheaf(&p).holds);
    }

    #[test]
    fn cover_and_job_round_trip() {
        let (coarse, fine, assignment) = circle_refinement();
        let c = Manifest::Cover(CoverManifest::from_cover(&coarse));
        assert_eq!(parse_manifest(&c.render()).unwrap(), c);
        let job = Manifest::Job(JobManifest {
            space: SpaceManifest::from_space(coarse.space()),
            coarse: coarse.members().to_vec(),
            fine: fine.members().to_vec(),
            assignment,
            rank: 1,
        });
        assert_eq!(parse_manifest(&job.render()).unwrap(), job);
        let gen = "kind: space\npoints: 3\ngenerators:\n  {0}\n  {2}\n";
        let m = parse_manifest(gen).unwrap();
        assert_eq!(m.render(), gen);
        let bad = "kind: cover\npoints: 2\ngenerators:\n  {0}\nmembers:\n  {0}\n";
        assert!(parse_manifest(bad)
            .unwrap_err()
            .message
            .contains("invalid cover"));
    }
}
