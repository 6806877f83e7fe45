//! Galileo-style fault-tree files.
//!
//! ```text
//! toplevel "Top";
//! "Top" and "A" "G";
//! "G" or "B" "C";
//! "A" prob=0.8;
//! "B" prob=0.1 tri=0.05,0.1,0.2;
//! "C" prob=0.4;
//! ```
//!
//! Names are double-quoted or bare words. A basic event carries `prob=` and at
//! most one fuzzy annotation (`tri=`, `trap=`, `interval=` or `gauss=`).
//! `//` starts a comment that runs to the end of the line.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::analysis::{AnalysisError, FuzzyProbVector};
use crate::fuzzy::{discretize, AlphaFuzzy, FuzzyError, Shape};
use crate::model::{FaultTree, FaultTreeBuilder, Gate, ModelError, NodeId, NodeKind, ProbVector};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FtFileError {
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{line}:{column}: undefined symbol \"{name}\"")]
    Undefined { name: String, line: usize, column: usize },
    #[error("{line}:{column}: \"{name}\" is defined more than once")]
    Duplicate { name: String, line: usize, column: usize },
    #[error("missing `toplevel` declaration")]
    MissingToplevel,
    #[error("{line}:{column}: invalid annotation on \"{name}\": {source}")]
    Annotation { name: String, line: usize, column: usize, source: FuzzyError },
    #[error("semantic error: {0}")]
    Model(#[from] ModelError),
}

/// A parsed fault-tree file.
#[derive(Debug, Clone, PartialEq)]
pub struct FtModel {
    pub tree: FaultTree,
    pub probs: ProbVector,
    /// Fuzzy annotation per basic event, in basic-event order.
    pub shapes: Vec<Option<Shape>>,
}

impl FtModel {
    /// Discretized probabilities; unannotated events become crisp.
    pub fn fuzzy(&self, n_cuts: usize) -> Result<FuzzyProbVector, AnalysisError> {
        let entries = self
            .shapes
            .iter()
            .zip(self.probs.as_slice())
            .map(|(shape, &p)| match shape {
                Some(s) => discretize(s, n_cuts),
                None => AlphaFuzzy::crisp(p, n_cuts),
            })
            .collect::<Result<_, _>>()?;
        FuzzyProbVector::new(entries)
    }

    pub fn is_crisp(&self) -> bool {
        self.shapes.iter().all(Option::is_none)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Word(String),
    Number(f64),
    Eq,
    Comma,
    Semi,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> FtFileError {
    FtFileError::Syntax { line, column, message: message.into() }
}

fn lex(src: &str) -> Result<Vec<Token>, FtFileError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let advance = |i: &mut usize, col: &mut usize| {
            *i += 1;
            *col += 1;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => advance(&mut i, &mut col),
            '/' if chars.get(i + 1) == Some(&'/') => {
                while i < chars.len() && chars[i] != '\n' {
                    advance(&mut i, &mut col);
                }
            }
            '=' | ',' | ';' => {
                let tok = match c {
                    '=' => Tok::Eq,
                    ',' => Tok::Comma,
                    _ => Tok::Semi,
                };
                out.push(Token { tok, line: l0, column: c0 });
                advance(&mut i, &mut col);
            }
            '"' => {
                advance(&mut i, &mut col);
                let mut name = String::new();
                loop {
                    match chars.get(i) {
                        None | Some('\n') => return Err(syntax(l0, c0, "unterminated string")),
                        Some('"') => {
                            advance(&mut i, &mut col);
                            break;
                        }
                        Some('\\') if matches!(chars.get(i + 1), Some('"') | Some('\\')) => {
                            name.push(chars[i + 1]);
                            advance(&mut i, &mut col);
                            advance(&mut i, &mut col);
                        }
                        Some(&ch) => {
                            name.push(ch);
                            advance(&mut i, &mut col);
                        }
                    }
                }
                out.push(Token { tok: Tok::Name(name), line: l0, column: c0 });
            }
            c if c.is_ascii_digit() || c == '-' || c == '+' || c == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || "+-.".contains(chars[i])) {
                    advance(&mut i, &mut col);
                }
                let text: String = chars[start..i].iter().collect();
                let x: f64 = text.parse().map_err(|_| syntax(l0, c0, format!("malformed number `{text}`")))?;
                out.push(Token { tok: Tok::Number(x), line: l0, column: c0 });
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || "_-.".contains(chars[i])) {
                    advance(&mut i, &mut col);
                }
                out.push(Token { tok: Tok::Word(chars[start..i].iter().collect()), line: l0, column: c0 });
            }
            other => return Err(syntax(l0, c0, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

enum Def {
    Gate { gate: Gate, children: Vec<(String, usize, usize)> },
    Event { prob: Option<f64>, shape: Option<Shape> },
}

struct Statement {
    name: String,
    line: usize,
    column: usize,
    def: Def,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    eof: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Result<Token, FtFileError> {
        let t = self.tokens.get(self.pos).cloned().ok_or_else(|| syntax(self.eof.0, self.eof.1, "unexpected end of input"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Token, FtFileError> {
        let t = self.next()?;
        if t.tok == want {
            Ok(t)
        } else {
            Err(syntax(t.line, t.column, format!("expected {what}")))
        }
    }

    fn name(&mut self) -> Result<(String, usize, usize), FtFileError> {
        let t = self.next()?;
        match t.tok {
            Tok::Name(s) | Tok::Word(s) => Ok((s, t.line, t.column)),
            _ => Err(syntax(t.line, t.column, "expected a node name")),
        }
    }

    fn numbers(&mut self) -> Result<Vec<f64>, FtFileError> {
        let mut xs = Vec::new();
        loop {
            let t = self.next()?;
            match t.tok {
                Tok::Number(x) => xs.push(x),
                _ => return Err(syntax(t.line, t.column, "expected a number")),
            }
            if self.peek().map(|t| &t.tok) == Some(&Tok::Comma) {
                self.pos += 1;
            } else {
                return Ok(xs);
            }
        }
    }

    fn event(&mut self, name: &str) -> Result<Def, FtFileError> {
        let (mut prob, mut shape) = (None, None);
        while let Some(Token { tok: Tok::Word(key), line, column }) = self.peek().cloned() {
            self.pos += 1;
            self.expect(Tok::Eq, "`=`")?;
            let xs = self.numbers()?;
            let arity = |n: usize| {
                if xs.len() == n {
                    Ok(())
                } else {
                    Err(syntax(line, column, format!("`{key}` takes {n} value(s), got {}", xs.len())))
                }
            };
            let parsed = match key.as_str() {
                "prob" => {
                    arity(1)?;
                    if prob.replace(xs[0]).is_some() {
                        return Err(syntax(line, column, "`prob` given twice"));
                    }
                    continue;
                }
                "tri" => arity(3).map(|_| Shape::Triangular { a: xs[0], b: xs[1], d: xs[2] })?,
                "trap" => arity(4).map(|_| Shape::Trapezoidal { a: xs[0], b: xs[1], c: xs[2], d: xs[3] })?,
                "interval" => arity(2).map(|_| Shape::Interval { a: xs[0], b: xs[1] })?,
                "gauss" => arity(2).map(|_| Shape::gaussian(xs[0], xs[1]))?,
                other => return Err(syntax(line, column, format!("unknown attribute `{other}`"))),
            };
            if shape.is_some() {
                return Err(syntax(line, column, "at most one fuzzy annotation per basic event"));
            }
            parsed.validate_probability().map_err(|source| FtFileError::Annotation {
                name: name.to_string(),
                line,
                column,
                source,
            })?;
            shape = Some(parsed);
        }
        Ok(Def::Event { prob, shape })
    }

    fn statement(&mut self) -> Result<Statement, FtFileError> {
        let (name, line, column) = self.name()?;
        let def = match self.peek().map(|t| &t.tok) {
            Some(Tok::Word(w)) if w == "and" || w == "or" => {
                let gate = if w == "and" { Gate::And } else { Gate::Or };
                self.pos += 1;
                let mut children = Vec::new();
                while matches!(self.peek().map(|t| &t.tok), Some(Tok::Name(_)) | Some(Tok::Word(_))) {
                    children.push(self.name()?);
                }
                Def::Gate { gate, children }
            }
            _ => self.event(&name)?,
        };
        self.expect(Tok::Semi, "`;`")?;
        Ok(Statement { name, line, column, def })
    }
}

/// Parses a fault-tree file into a validated model.
pub fn parse_ft(src: &str) -> Result<FtModel, FtFileError> {
    let tokens = lex(src)?;
    let eof = tokens.last().map_or((1, 1), |t| (t.line, t.column + 1));
    let mut p = Parser { tokens, pos: 0, eof };
    let mut toplevel: Option<(String, usize, usize)> = None;
    let mut statements = Vec::new();
    while let Some(t) = p.peek().cloned() {
        if t.tok == Tok::Word("toplevel".into()) {
            p.pos += 1;
            let top = p.name()?;
            p.expect(Tok::Semi, "`;`")?;
            if toplevel.replace(top).is_some() {
                return Err(syntax(t.line, t.column, "more than one `toplevel` declaration"));
            }
        } else {
            statements.push(p.statement()?);
        }
    }
    let (top, top_line, top_column) = toplevel.ok_or(FtFileError::MissingToplevel)?;

    let mut ids: HashMap<&str, NodeId> = HashMap::new();
    let mut b = FaultTreeBuilder::with_capacity(statements.len());
    let mut probs = Vec::new();
    let mut shapes = Vec::new();
    for s in &statements {
        if ids.contains_key(s.name.as_str()) {
            return Err(FtFileError::Duplicate { name: s.name.clone(), line: s.line, column: s.column });
        }
        let id = match &s.def {
            Def::Gate { gate, .. } => b.add_gate(s.name.clone(), *gate, Vec::new()),
            Def::Event { prob, shape } => {
                let p = match (prob, shape) {
                    (Some(p), _) => *p,
                    (None, Some(shape)) => {
                        let core = shape.cut_at(1.0);
                        0.5 * (core.lo + core.hi)
                    }
                    (None, None) => return Err(syntax(s.line, s.column, format!("basic event \"{}\" has no `prob`", s.name))),
                };
                if !(0.0..=1.0).contains(&p) {
                    return Err(syntax(s.line, s.column, format!("probability {p} of \"{}\" is outside [0, 1]", s.name)));
                }
                probs.push(p);
                shapes.push(*shape);
                b.add_basic_event(s.name.clone())
            }
        };
        ids.insert(&s.name, id);
    }
    for s in &statements {
        if let Def::Gate { children, .. } = &s.def {
            let resolved = children
                .iter()
                .map(|(c, line, column)| {
                    ids.get(c.as_str()).copied().ok_or_else(|| FtFileError::Undefined {
                        name: c.clone(),
                        line: *line,
                        column: *column,
                    })
                })
                .collect::<Result<_, _>>()?;
            b.set_children(ids[s.name.as_str()], resolved);
        }
    }
    let root = *ids
        .get(top.as_str())
        .ok_or(FtFileError::Undefined { name: top.clone(), line: top_line, column: top_column })?;
    let tree = b.build(root)?;
    Ok(FtModel { tree, probs: ProbVector::new(probs)?, shapes })
}

fn quote(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

fn shape_attr(shape: &Shape) -> String {
    match *shape {
        Shape::Triangular { a, b, d } => format!("tri={a},{b},{d}"),
        Shape::Trapezoidal { a, b, c, d } => format!("trap={a},{b},{c},{d}"),
        Shape::Interval { a, b } => format!("interval={a},{b}"),
        Shape::TruncGaussian { mean, std_dev, .. } => format!("gauss={mean},{std_dev}"),
    }
}

/// Serializes in node order, so reparsing reproduces node and event indices.
/// Numbers use the shortest representation that reads back to the same `f64`.
pub fn write_ft(tree: &FaultTree, probs: &ProbVector, shapes: Option<&[Option<Shape>]>) -> String {
    let mut out = String::new();
    writeln!(out, "toplevel {};", quote(tree.name(tree.root()))).unwrap();
    for i in 0..tree.node_count() {
        let id = NodeId(i);
        match tree.kind(id) {
            NodeKind::Gate(g) => {
                write!(out, "{} {g}", quote(tree.name(id))).unwrap();
                for &c in tree.children(id) {
                    write!(out, " {}", quote(tree.name(c))).unwrap();
                }
                out.push_str(";\n");
            }
            NodeKind::BasicEvent => {
                let be = tree.be_index(id).unwrap();
                write!(out, "{} prob={}", quote(tree.name(id)), probs.as_slice()[be]).unwrap();
                if let Some(shape) = shapes.and_then(|s| s[be].as_ref()) {
                    write!(out, " {}", shape_attr(shape)).unwrap();
                }
                out.push_str(";\n");
            }
        }
    }
    out
}

impl FtModel {
    pub fn to_text(&self) -> String {
        write_ft(&self.tree, &self.probs, Some(&self.shapes))
    }
}
