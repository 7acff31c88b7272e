//! Subgroup lattices as Graphviz DOT, one node per conjugacy class.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::genus2::{CurveContext, SubgroupId};
use crate::picard::{Certificate, Node};

fn class_node(ctx: &CurveContext, h: SubgroupId) -> String {
    format!("c{}", ctx.lattice().orbit[h.0])
}

/// Class-level pairs along a certificate: each step contributes the edges
/// from its source to the mediating subgroup and from there to its target.
fn highlighted_pairs(ctx: &CurveContext, certificate: &Certificate) -> BTreeSet<(usize, usize)> {
    let orbit = |h: SubgroupId| ctx.lattice().orbit[h.0];
    let mut pairs = BTreeSet::new();
    for step in &certificate.steps {
        let (Node::Class(from), Node::Class(to)) = (step.from, step.to) else { continue };
        let via = orbit(step.relation.via());
        for end in [orbit(from), orbit(to)] {
            if end != via {
                pairs.insert((end.min(via), end.max(via)));
            }
        }
    }
    pairs
}

pub fn render_lattice_dot(ctx: &CurveContext, highlight: Option<&Certificate>) -> String {
    let lattice = ctx.lattice();
    let mut out = format!("graph \"{}\" {{\n  rankdir=BT;\n  node [shape=box];\n", ctx.id());
    for orbit in lattice.orbits() {
        let h = SubgroupId(orbit);
        let size = lattice.orbit_members(orbit).count();
        let mut label = ctx.label(h).to_string();
        if size > 1 {
            let _ = write!(label, " x{size}");
        }
        let style = if ctx.quotient_is_p1(h) { "" } else { ", style=dashed" };
        let _ = writeln!(out, "  {} [label=\"{label}\"{style}];", class_node(ctx, h));
    }
    let covers: BTreeSet<(usize, usize)> =
        lattice.covers.iter().map(|&(lo, hi)| (lattice.orbit[lo], lattice.orbit[hi])).collect();
    for (lo, hi) in covers {
        let _ = writeln!(out, "  c{lo} -- c{hi};");
    }
    if let Some(certificate) = highlight {
        for (a, b) in highlighted_pairs(ctx, certificate) {
            let _ = writeln!(out, "  c{a} -- c{b} [color=red, penwidth=2, constraint=false];");
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("InvalidDot: {0}")]
pub struct DotError(String);

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Id(String),
    Edge,
    Punct(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>, DotError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '{' | '}' | '[' | ']' | ';' | ',' | '=' => {
                tokens.push(Token::Punct(c));
                chars.next();
            }
            '-' => {
                chars.next();
                match chars.next() {
                    Some('-') | Some('>') => tokens.push(Token::Edge),
                    Some(d) if d.is_ascii_digit() => {
                        let mut id = format!("-{d}");
                        while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit() || **d == '.') {
                            id.push(d);
                            chars.next();
                        }
                        tokens.push(Token::Id(id));
                    }
                    _ => return Err(DotError("stray '-'".into())),
                }
            }
            '"' => {
                chars.next();
                let mut id = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some('\\') => id.extend(chars.next()),
                        Some(c) => id.push(c),
                        None => return Err(DotError("unterminated string".into())),
                    }
                }
                tokens.push(Token::Id(id));
            }
            c if c.is_alphanumeric() || c == '_' || c == '.' => {
                let mut id = String::new();
                while let Some(&c) = chars.peek().filter(|c| c.is_alphanumeric() || **c == '_' || **c == '.') {
                    id.push(c);
                    chars.next();
                }
                tokens.push(Token::Id(id));
            }
            other => return Err(DotError(format!("unexpected character {other:?}"))),
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, c: char) -> Result<(), DotError> {
        match self.next() {
            Some(Token::Punct(p)) if p == c => Ok(()),
            other => Err(DotError(format!("expected {c:?}, found {other:?}"))),
        }
    }

    fn id(&mut self) -> Result<String, DotError> {
        match self.next() {
            Some(Token::Id(id)) => Ok(id),
            other => Err(DotError(format!("expected identifier, found {other:?}"))),
        }
    }

    fn attr_list(&mut self) -> Result<(), DotError> {
        while self.peek() == Some(&Token::Punct('[')) {
            self.next();
            while self.peek() != Some(&Token::Punct(']')) {
                self.id()?;
                self.expect('=')?;
                self.id()?;
                if matches!(self.peek(), Some(Token::Punct(',' | ';'))) {
                    self.next();
                }
            }
            self.expect(']')?;
        }
        Ok(())
    }

    /// Returns the number of edges in the statement.
    fn statement(&mut self) -> Result<usize, DotError> {
        let first = self.id()?;
        let mut edges = 0;
        match self.peek() {
            Some(Token::Punct('=')) => {
                self.next();
                self.id()?;
            }
            _ if matches!(first.as_str(), "graph" | "node" | "edge") => self.attr_list()?,
            _ => {
                while self.peek() == Some(&Token::Edge) {
                    self.next();
                    self.id()?;
                    edges += 1;
                }
                self.attr_list()?;
            }
        }
        if self.peek() == Some(&Token::Punct(';')) {
            self.next();
        }
        Ok(edges)
    }
}

/// Checks `text` against the core of the DOT grammar: a single `graph` or
/// `digraph` with node, edge and attribute statements. Returns the node and
/// edge statement counts.
pub fn validate_dot(text: &str) -> Result<DotSummary, DotError> {
    let mut p = Parser { tokens: tokenize(text)?, pos: 0 };
    if let Some(Token::Id(s)) = p.peek() {
        if s == "strict" {
            p.next();
        }
    }
    let kind = p.id()?;
    if kind != "graph" && kind != "digraph" {
        return Err(DotError(format!("expected graph or digraph, found {kind:?}")));
    }
    if matches!(p.peek(), Some(Token::Id(_))) {
        p.next();
    }
    p.expect('{')?;
    let mut summary = DotSummary::default();
    while p.peek() != Some(&Token::Punct('}')) {
        if p.peek().is_none() {
            return Err(DotError("unbalanced braces".into()));
        }
        match p.statement()? {
            0 => summary.other_statements += 1,
            n => summary.edges += n,
        }
    }
    p.expect('}')?;
    if p.peek().is_some() {
        return Err(DotError("trailing input after closing brace".into()));
    }
    Ok(summary)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DotSummary {
    pub edges: usize,
    /// Node and attribute statements.
    pub other_statements: usize,
}
