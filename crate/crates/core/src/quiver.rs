//! Finite quivers: the text format, degrees, connectivity, shape
//! recognition, and splitting into connected components.
//!
//! The file format is newline-delimited UTF-8:
//! - `# ...` comment lines are ignored, as are blank lines;
//! - `vertex NAME` declares a vertex;
//! - `NAME -> NAME` or `ID: NAME -> NAME` declares an arrow;
//! - names and ids are nonempty runs of `[A-Za-z0-9_]`; whitespace around
//!   tokens is ignored.
//!
//! If a file contains at least one `vertex` line, the declared set is
//! authoritative and arrows may only reference declared vertices.  Without
//! declarations, arrow endpoints declare vertices implicitly in order of
//! first appearance.  The serializer always emits every vertex explicitly,
//! so `parse(serialize(q)) == q` and canonical files round-trip byte for
//! byte.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::{Error, Result};

/// Ingoing/outgoing arrow counts of a vertex. A loop counts once in each.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub struct Degree {
    pub incoming: usize,
    pub outgoing: usize,
}

impl Degree {
    pub fn pair(self) -> (usize, usize) {
        (self.incoming, self.outgoing)
    }
}

/// The two exceptional shapes, or anything else.
///
/// `LinearA(m)` is the oriented path on `m` vertices; `CycleATilde(m)` is
/// the oriented cycle on `m` vertices (`m = 1` being the single loop).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Shape {
    LinearA(usize),
    CycleATilde(usize),
    Other,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver. Immutable after construction; vertices keep their
/// first-appearance order, arrows their declaration order.
#[derive(Clone, Debug)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    index: BTreeMap<String, usize>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
}

impl PartialEq for Quiver {
    /// Set equality of vertices and multiset equality of arrows
    /// (by id, source name, target name).
    fn eq(&self, other: &Self) -> bool {
        let verts = |q: &Quiver| {
            let mut v: Vec<&str> = q.vertices.iter().map(|s| s.as_str()).collect();
            v.sort_unstable();
            v.into_iter().map(String::from).collect::<Vec<_>>()
        };
        let arrs = |q: &Quiver| {
            let mut a: Vec<(String, String, String)> = q
                .arrows
                .iter()
                .map(|a| {
                    (
                        a.id.clone(),
                        q.vertices[a.source].clone(),
                        q.vertices[a.target].clone(),
                    )
                })
                .collect();
            a.sort_unstable();
            a
        };
        verts(self) == verts(other) && arrs(self) == arrs(other)
    }
}

impl Eq for Quiver {}

impl Quiver {
    /// Build a quiver programmatically. Arrow ids default to `a0, a1, ...`
    /// in declaration order when not given.
    pub fn build<S: Into<String>>(
        vertices: Vec<S>,
        arrows: Vec<(Option<String>, S, S)>,
    ) -> Result<Quiver> {
        let mut q = Builder::new();
        for v in vertices {
            q.declare_vertex(v.into(), None)?;
        }
        for (id, s, t) in arrows {
            q.add_arrow(id, s.into(), t.into(), None)?;
        }
        q.finish()
    }

    /// The oriented path `1 -> 2 -> ... -> m`.
    pub fn linear_a(m: usize) -> Quiver {
        let vertices: Vec<String> = (1..=m).map(|i| i.to_string()).collect();
        let arrows = (1..m)
            .map(|i| (None, i.to_string(), (i + 1).to_string()))
            .collect();
        Quiver::build(vertices, arrows).expect("path quiver is valid")
    }

    /// The oriented cycle on `m >= 1` vertices (`m = 1` is the loop).
    pub fn cycle_a_tilde(m: usize) -> Quiver {
        assert!(m >= 1);
        let vertices: Vec<String> = (1..=m).map(|i| i.to_string()).collect();
        let arrows = (1..=m)
            .map(|i| (None, i.to_string(), (i % m + 1).to_string()))
            .collect();
        Quiver::build(vertices, arrows).expect("cycle quiver is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    /// Arrow indices with source `v`, in declaration order.
    pub fn outgoing(&self, v: usize) -> &[usize] {
        &self.outgoing[v]
    }

    /// Arrow indices with target `v`, in declaration order.
    pub fn incoming(&self, v: usize) -> &[usize] {
        &self.incoming[v]
    }

    pub fn degree(&self, v: usize) -> Degree {
        Degree {
            incoming: self.incoming[v].len(),
            outgoing: self.outgoing[v].len(),
        }
    }

    /// Degree lookup by vertex name, with an error for unknown names.
    pub fn degree_of(&self, name: &str) -> Result<Degree> {
        let v = self
            .vertex_index(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))?;
        Ok(self.degree(v))
    }

    /// Connectivity of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &a in self.outgoing[v].iter().chain(self.incoming[v].iter()) {
                for w in [self.arrows[a].source, self.arrows[a].target] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Recognize `A_m` / `~A_m` by walking the unique out-arrows.
    pub fn classify_shape(&self) -> Result<Shape> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let m = self.vertex_count();
        if self.arrow_count() == m.saturating_sub(1) {
            if m == 1 {
                return Ok(Shape::LinearA(1));
            }
            // walk from the unique source, if any
            let starts: Vec<usize> = (0..m)
                .filter(|&v| self.degree(v).pair() == (0, 1))
                .collect();
            if let [start] = starts[..] {
                let mut v = start;
                let mut steps = 0;
                while let [a] = self.outgoing[v][..] {
                    v = self.arrows[a].target;
                    steps += 1;
                    if steps > m {
                        break;
                    }
                }
                if steps == m - 1 && self.degree(v).pair() == (1, 0) {
                    return Ok(Shape::LinearA(m));
                }
            }
        } else if self.arrow_count() == m && (0..m).all(|v| self.degree(v).pair() == (1, 1)) {
            // connected with all degrees (1,1) and |Q1| = |Q0| is the cycle
            return Ok(Shape::CycleATilde(m));
        }
        Ok(Shape::Other)
    }

    /// Split into connected components; vertex and arrow order (and ids)
    /// are inherited from the original.
    pub fn components(&self) -> Vec<Quiver> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for root in 0..n {
            if comp[root] != usize::MAX {
                continue;
            }
            let mut stack = vec![root];
            comp[root] = count;
            while let Some(v) = stack.pop() {
                for &a in self.outgoing[v].iter().chain(self.incoming[v].iter()) {
                    for w in [self.arrows[a].source, self.arrows[a].target] {
                        if comp[w] == usize::MAX {
                            comp[w] = count;
                            stack.push(w);
                        }
                    }
                }
            }
            count += 1;
        }
        (0..count)
            .map(|c| {
                let vertices: Vec<String> = (0..n)
                    .filter(|&v| comp[v] == c)
                    .map(|v| self.vertices[v].clone())
                    .collect();
                let arrows: Vec<(Option<String>, String, String)> = self
                    .arrows
                    .iter()
                    .filter(|a| comp[a.source] == c)
                    .map(|a| {
                        (
                            Some(a.id.clone()),
                            self.vertices[a.source].clone(),
                            self.vertices[a.target].clone(),
                        )
                    })
                    .collect();
                Quiver::build(vertices, arrows).expect("component of a valid quiver is valid")
            })
            .collect()
    }

    /// Parse the quiver file format.
    pub fn parse(text: &str) -> Result<Quiver> {
        let mut builder = Builder::new();
        let mut pending: Vec<(Option<String>, String, String, usize)> = Vec::new();
        let mut has_decls = false;

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let tokens = scan_line(raw, line_no)?;
            match tokens[..] {
                [] => {}
                [Token::Name(ref w, _), Token::Name(ref name, _)] if w == "vertex" => {
                    has_decls = true;
                    builder.declare_vertex(name.clone(), Some(line_no))?;
                }
                [Token::Name(ref s, _), Token::ArrowSym(_), Token::Name(ref t, _)] => {
                    pending.push((None, s.clone(), t.clone(), line_no));
                }
                [Token::Name(ref id, _), Token::Colon(_), Token::Name(ref s, _), Token::ArrowSym(_), Token::Name(ref t, _)] => {
                    pending.push((Some(id.clone()), s.clone(), t.clone(), line_no));
                }
                _ => {
                    let col = tokens.last().map(Token::col).unwrap_or(1);
                    return Err(Error::Syntax {
                        line: line_no,
                        col,
                        msg: "expected `vertex NAME`, `NAME -> NAME` or `ID: NAME -> NAME`"
                            .to_string(),
                    });
                }
            }
        }

        for (id, s, t, line) in pending {
            let ctx = if has_decls { Some(line) } else { None };
            builder.add_arrow(id, s, t, ctx)?;
        }
        builder.finish()
    }

    /// Serialize: every vertex first, then arrows in declaration order.
    /// Ids are omitted when they all equal the positional defaults.
    pub fn to_text(&self) -> String {
        let default_ids = self
            .arrows
            .iter()
            .enumerate()
            .all(|(i, a)| a.id == format!("a{i}"));
        let mut out = String::new();
        for v in &self.vertices {
            let _ = writeln!(out, "vertex {v}");
        }
        for a in &self.arrows {
            let s = &self.vertices[a.source];
            let t = &self.vertices[a.target];
            if default_ids {
                let _ = writeln!(out, "{s} -> {t}");
            } else {
                let _ = writeln!(out, "{}: {s} -> {t}", a.id);
            }
        }
        out
    }
}

struct Builder {
    vertices: Vec<String>,
    index: BTreeMap<String, usize>,
    arrows: Vec<Arrow>,
    ids: BTreeMap<String, usize>,
}

impl Builder {
    fn new() -> Builder {
        Builder {
            vertices: Vec::new(),
            index: BTreeMap::new(),
            arrows: Vec::new(),
            ids: BTreeMap::new(),
        }
    }

    fn declare_vertex(&mut self, name: String, line: Option<usize>) -> Result<()> {
        if self.index.contains_key(&name) {
            if line.is_some() {
                return Err(Error::DuplicateVertex(name));
            }
            return Ok(());
        }
        self.index.insert(name.clone(), self.vertices.len());
        self.vertices.push(name);
        Ok(())
    }

    fn vertex_of(&mut self, name: String, strict_line: Option<usize>) -> Result<usize> {
        if let Some(&v) = self.index.get(&name) {
            return Ok(v);
        }
        if let Some(line) = strict_line {
            return Err(Error::DanglingVertex { line, name });
        }
        self.index.insert(name.clone(), self.vertices.len());
        self.vertices.push(name);
        Ok(self.vertices.len() - 1)
    }

    fn add_arrow(
        &mut self,
        id: Option<String>,
        s: String,
        t: String,
        strict_line: Option<usize>,
    ) -> Result<()> {
        let id = id.unwrap_or_else(|| format!("a{}", self.arrows.len()));
        if self.ids.contains_key(&id) {
            return Err(Error::DuplicateArrowId(id));
        }
        let source = self.vertex_of(s, strict_line)?;
        let target = self.vertex_of(t, strict_line)?;
        self.ids.insert(id.clone(), self.arrows.len());
        self.arrows.push(Arrow { id, source, target });
        Ok(())
    }

    fn finish(self) -> Result<Quiver> {
        if self.vertices.is_empty() {
            return Err(Error::EmptyQuiver);
        }
        let mut outgoing = vec![Vec::new(); self.vertices.len()];
        let mut incoming = vec![Vec::new(); self.vertices.len()];
        for (i, a) in self.arrows.iter().enumerate() {
            outgoing[a.source].push(i);
            incoming[a.target].push(i);
        }
        Ok(Quiver {
            vertices: self.vertices,
            arrows: self.arrows,
            index: self.index,
            outgoing,
            incoming,
        })
    }
}

enum Token {
    Name(String, usize),
    ArrowSym(usize),
    Colon(usize),
}

impl Token {
    fn col(&self) -> usize {
        match self {
            Token::Name(_, c) | Token::ArrowSym(c) | Token::Colon(c) => *c,
        }
    }
}

fn scan_line(raw: &str, line: usize) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = raw.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c == '#' {
            break;
        } else if c == ':' {
            tokens.push(Token::Colon(col));
            i += 1;
        } else if c == '-' {
            if chars.get(i + 1) == Some(&'>') {
                tokens.push(Token::ArrowSym(col));
                i += 2;
            } else {
                return Err(Error::Syntax {
                    line,
                    col,
                    msg: "expected `->`".to_string(),
                });
            }
        } else if c.is_ascii_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            tokens.push(Token::Name(chars[start..i].iter().collect(), col));
        } else {
            return Err(Error::Syntax {
                line,
                col,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_arrow() {
        let q = Quiver::parse("1 -> 2").unwrap();
        assert_eq!(q.vertex_count(), 2);
        assert_eq!(q.arrow_count(), 1);
        assert_eq!(q.degree_of("1").unwrap().pair(), (0, 1));
    }

    #[test]
    fn loop_counts_once_in_each_degree() {
        let q = Quiver::parse("1 -> 1").unwrap();
        assert_eq!(q.vertex_count(), 1);
        assert_eq!(q.degree_of("1").unwrap().pair(), (1, 1));
    }

    #[test]
    fn comments_blanks_and_ids() {
        let q = Quiver::parse("# header\n\nx1: a -> b\n  x2 : b->c # tail\n").unwrap();
        assert_eq!(q.vertex_count(), 3);
        assert_eq!(q.arrows()[0].id, "x1");
        assert_eq!(q.arrows()[1].id, "x2");
    }

    #[test]
    fn duplicate_arrow_id_rejected() {
        let err = Quiver::parse("z: 1 -> 2\nz: 2 -> 3").unwrap_err();
        assert!(matches!(err, Error::DuplicateArrowId(id) if id == "z"));
    }

    #[test]
    fn auto_id_collision_rejected() {
        // explicit `a1` collides with the positional default of the second arrow
        let err = Quiver::parse("a1: 1 -> 2\n2 -> 3").unwrap_err();
        assert!(matches!(err, Error::DuplicateArrowId(id) if id == "a1"));
    }

    #[test]
    fn dangling_reference_needs_declarations() {
        assert!(Quiver::parse("1 -> 2").is_ok());
        let err = Quiver::parse("vertex 1\n1 -> 2").unwrap_err();
        assert!(matches!(err, Error::DanglingVertex { name, .. } if name == "2"));
    }

    #[test]
    fn syntax_error_reports_position() {
        let err = Quiver::parse("1 => 2").unwrap_err();
        match err {
            Error::Syntax { line, col, .. } => {
                assert_eq!(line, 1);
                assert_eq!(col, 3);
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn empty_input_rejected() {
        assert!(matches!(Quiver::parse("# nothing"), Err(Error::EmptyQuiver)));
    }

    #[test]
    fn roundtrip_identity() {
        let q = Quiver::parse("vertex z\nvertex 1\nvertex 2\n1 -> 2\n2 -> 1").unwrap();
        let again = Quiver::parse(&q.to_text()).unwrap();
        assert_eq!(q, again);
        assert_eq!(q.to_text(), again.to_text());
    }

    #[test]
    fn degree_sum_equals_arrow_count() {
        let q = Quiver::parse("1 -> 2\n2 -> 3\n3 -> 1\n1 -> 1").unwrap();
        let inc: usize = (0..q.vertex_count()).map(|v| q.degree(v).incoming).sum();
        let out: usize = (0..q.vertex_count()).map(|v| q.degree(v).outgoing).sum();
        assert_eq!(inc, q.arrow_count());
        assert_eq!(out, q.arrow_count());
    }

    #[test]
    fn shapes() {
        assert_eq!(Quiver::linear_a(1).classify_shape().unwrap(), Shape::LinearA(1));
        assert_eq!(Quiver::linear_a(3).classify_shape().unwrap(), Shape::LinearA(3));
        assert_eq!(
            Quiver::cycle_a_tilde(1).classify_shape().unwrap(),
            Shape::CycleATilde(1)
        );
        assert_eq!(
            Quiver::cycle_a_tilde(5).classify_shape().unwrap(),
            Shape::CycleATilde(5)
        );
        // reversing one arrow of a path is not an oriented path
        let q = Quiver::parse("1 -> 2\n3 -> 2").unwrap();
        assert_eq!(q.classify_shape().unwrap(), Shape::Other);
    }

    #[test]
    fn disconnected_detected_and_split() {
        let q = Quiver::parse("1 -> 1\n2 -> 2").unwrap();
        assert!(!q.is_connected());
        assert!(matches!(q.classify_shape(), Err(Error::Disconnected)));
        let comps = q.components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.is_connected()));
    }

    #[test]
    fn linear_a_degree_profile() {
        for m in 2..8 {
            let q = Quiver::linear_a(m);
            let mut sources = 0;
            let mut sinks = 0;
            for v in 0..m {
                match q.degree(v).pair() {
                    (0, 1) => sources += 1,
                    (1, 0) => sinks += 1,
                    (1, 1) => {}
                    other => panic!("unexpected degree {other:?}"),
                }
            }
            assert_eq!((sources, sinks), (1, 1));
        }
    }
}
