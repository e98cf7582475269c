//! Line-oriented circuit-description documents.
//!
//! ```text
//! stats boson|fermion
//! paths N
//! bs A B [theta=EXPR]          # zero or more element lines
//! phase P EXPR
//! input fock N0 N1 ...  |  input pair P1 P2 r=EXPR
//! sweep NAME EXPR EXPR COUNT   # optional
//! ```
//!
//! `EXPR` is a decimal, `pi`, `pi/N`, or `$NAME` referring to the sweep
//! variable. `#` starts a comment.

use std::f64::consts::PI;
use std::fmt;

use pairsim_core::Statistics;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64),
    Pi { divisor: Option<u32> },
    Var(String),
}

impl Expr {
    /// Value with the sweep variable bound to `value` (0 when unbound).
    pub fn eval(&self, value: Option<f64>) -> f64 {
        match self {
            Expr::Number(x) => *x,
            Expr::Pi { divisor: None } => PI,
            Expr::Pi { divisor: Some(d) } => PI / f64::from(*d),
            Expr::Var(_) => value.unwrap_or(0.0),
        }
    }

    fn constant(&self) -> Option<f64> {
        match self {
            Expr::Var(_) => None,
            e => Some(e.eval(None)),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(x) => write!(f, "{x}"),
            Expr::Pi { divisor: None } => f.write_str("pi"),
            Expr::Pi { divisor: Some(d) } => write!(f, "pi/{d}"),
            Expr::Var(name) => write!(f, "${name}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ElementStmt {
    Beamsplitter {
        path_a: usize,
        path_b: usize,
        theta: Option<Expr>,
    },
    Phase {
        path: usize,
        phi: Expr,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum InputStmt {
    Fock(Vec<u32>),
    Pair { path_1: usize, path_2: usize, r: Expr },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub name: String,
    pub start: Expr,
    pub end: Expr,
    pub count: u32,
}

impl Sweep {
    /// `count` evenly spaced values from `start` to `end` inclusive.
    pub fn values(&self) -> Vec<f64> {
        let (a, b) = (self.start.eval(None), self.end.eval(None));
        match self.count {
            0 => Vec::new(),
            1 => vec![a],
            n => (0..n)
                .map(|k| a + (b - a) * f64::from(k) / f64::from(n - 1))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircuitDocument {
    pub stats: Statistics,
    pub n_paths: usize,
    pub elements: Vec<ElementStmt>,
    pub input: InputStmt,
    pub sweep: Option<Sweep>,
}

impl fmt::Display for CircuitDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "stats {}", self.stats)?;
        writeln!(f, "paths {}", self.n_paths)?;
        for element in &self.elements {
            match element {
                ElementStmt::Beamsplitter {
                    path_a,
                    path_b,
                    theta,
                } => {
                    write!(f, "bs {path_a} {path_b}")?;
                    if let Some(theta) = theta {
                        write!(f, " theta={theta}")?;
                    }
                    writeln!(f)?;
                }
                ElementStmt::Phase { path, phi } => writeln!(f, "phase {path} {phi}")?,
            }
        }
        match &self.input {
            InputStmt::Fock(counts) => {
                f.write_str("input fock")?;
                for n in counts {
                    write!(f, " {n}")?;
                }
                writeln!(f)?;
            }
            InputStmt::Pair { path_1, path_2, r } => {
                writeln!(f, "input pair {path_1} {path_2} r={r}")?
            }
        }
        if let Some(s) = &self.sweep {
            writeln!(f, "sweep {} {} {} {}", s.name, s.start, s.end, s.count)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("unknown keyword `{0}`")]
    UnknownKeyword(String),
    #[error("{0}")]
    Syntax(String),
    #[error("missing `{0}` statement")]
    Missing(&'static str),
    #[error("beamsplitter needs two distinct paths, got {0} twice")]
    EqualPaths(usize),
    #[error("path {path} out of range for {n_paths} paths")]
    PathOutOfRange { path: usize, n_paths: usize },
    #[error("overlap r = {0} is outside [0, 1]")]
    OverlapOutOfRange(f64),
    #[error("undefined variable `${0}`")]
    UndefinedVariable(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl<'a> Token<'a> {
    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            kind,
        }
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        self.error(ParseErrorKind::Syntax(msg.into()))
    }
}

fn tokenize(line: &str, line_no: usize) -> Vec<Token<'_>> {
    let code = line.split('#').next().unwrap_or("");
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, ch) in code.char_indices().chain(std::iter::once((code.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                tokens.push(Token {
                    text: &code[s..i],
                    line: line_no,
                    column: code[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    tokens
}

fn parse_int<T: std::str::FromStr>(tok: &Token<'_>, what: &str) -> Result<T, ParseError> {
    tok.text
        .parse()
        .map_err(|_| tok.syntax(format!("expected {what}, found `{}`", tok.text)))
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_expr_text(text: &str, tok: &Token<'_>) -> Result<Expr, ParseError> {
    if let Some(name) = text.strip_prefix('$') {
        if is_ident(name) {
            return Ok(Expr::Var(name.to_string()));
        }
        return Err(tok.syntax(format!("invalid variable name `{text}`")));
    }
    if text == "pi" {
        return Ok(Expr::Pi { divisor: None });
    }
    if let Some(d) = text.strip_prefix("pi/") {
        return match d.parse::<u32>() {
            Ok(d) if d > 0 => Ok(Expr::Pi { divisor: Some(d) }),
            _ => Err(tok.syntax(format!("invalid divisor in `{text}`"))),
        };
    }
    let looks_decimal = !text.is_empty()
        && text
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'));
    match text.parse::<f64>() {
        Ok(x) if looks_decimal && x.is_finite() => Ok(Expr::Number(x)),
        _ => Err(tok.syntax(format!("expected number, `pi`, `pi/N` or `$name`, found `{text}`"))),
    }
}

fn parse_expr(tok: &Token<'_>) -> Result<Expr, ParseError> {
    parse_expr_text(tok.text, tok)
}

fn parse_keyed_expr(tok: &Token<'_>, key: &str) -> Result<Expr, ParseError> {
    match tok.text.strip_prefix(key).and_then(|t| t.strip_prefix('=')) {
        Some(rest) => {
            let value_tok = Token {
                column: tok.column + key.len() + 1,
                ..*tok
            };
            parse_expr_text(rest, &value_tok)
        }
        None => Err(tok.syntax(format!("expected `{key}=...`, found `{}`", tok.text))),
    }
}

fn expect_len(tokens: &[Token<'_>], min: usize, max: usize, usage: &str) -> Result<(), ParseError> {
    if tokens.len() < min {
        let last = tokens.last().expect("keyword token present");
        return Err(ParseError {
            line: last.line,
            column: last.column + last.text.chars().count(),
            kind: ParseErrorKind::Syntax(format!("too few arguments, usage: {usage}")),
        });
    }
    if tokens.len() > max {
        return Err(tokens[max].syntax(format!("unexpected argument, usage: {usage}")));
    }
    Ok(())
}

#[derive(PartialEq, PartialOrd, Clone, Copy)]
enum Stage {
    Start,
    Stats,
    Paths,
    Input,
    Sweep,
}

struct Parser<'a> {
    stage: Stage,
    stats: Option<Statistics>,
    n_paths: usize,
    elements: Vec<ElementStmt>,
    input: Option<InputStmt>,
    sweep: Option<Sweep>,
    variables: Vec<(String, Token<'a>)>,
    overlap_var: Option<Token<'a>>,
    sweep_line: Option<Token<'a>>,
}

impl<'a> Parser<'a> {
    fn path(&self, tok: &Token<'_>) -> Result<usize, ParseError> {
        let path: usize = parse_int(tok, "path index")?;
        if path >= self.n_paths {
            return Err(tok.error(ParseErrorKind::PathOutOfRange {
                path,
                n_paths: self.n_paths,
            }));
        }
        Ok(path)
    }

    fn track(&mut self, expr: &Expr, tok: Token<'a>) {
        if let Expr::Var(name) = expr {
            self.variables.push((name.clone(), tok));
        }
    }

    fn order(&mut self, tok: &Token<'_>, allowed_after: Stage, next: Stage) -> Result<(), ParseError> {
        if self.stage != allowed_after {
            let expected = match self.stage {
                Stage::Start => "`stats`",
                Stage::Stats => "`paths`",
                Stage::Paths => "an element or `input`",
                Stage::Input => "`sweep` or end of document",
                Stage::Sweep => "end of document",
            };
            return Err(tok.syntax(format!("unexpected `{}`, expected {expected}", tok.text)));
        }
        self.stage = next;
        Ok(())
    }

    fn statement(&mut self, tokens: &[Token<'a>]) -> Result<(), ParseError> {
        let kw = tokens[0];
        match kw.text {
            "stats" => {
                self.order(&kw, Stage::Start, Stage::Stats)?;
                expect_len(tokens, 2, 2, "stats boson|fermion")?;
                self.stats = Some(match tokens[1].text {
                    "boson" => Statistics::Boson,
                    "fermion" => Statistics::Fermion,
                    other => {
                        return Err(tokens[1].syntax(format!(
                            "expected `boson` or `fermion`, found `{other}`"
                        )))
                    }
                });
            }
            "paths" => {
                self.order(&kw, Stage::Stats, Stage::Paths)?;
                expect_len(tokens, 2, 2, "paths N")?;
                self.n_paths = parse_int(&tokens[1], "path count")?;
                if self.n_paths == 0 {
                    return Err(tokens[1].syntax("path count must be positive"));
                }
            }
            "bs" => {
                self.order(&kw, Stage::Paths, Stage::Paths)?;
                expect_len(tokens, 3, 4, "bs A B [theta=EXPR]")?;
                let path_a = self.path(&tokens[1])?;
                let path_b = self.path(&tokens[2])?;
                if path_a == path_b {
                    return Err(tokens[2].error(ParseErrorKind::EqualPaths(path_a)));
                }
                let theta = match tokens.get(3) {
                    Some(t) => {
                        let e = parse_keyed_expr(t, "theta")?;
                        self.track(&e, *t);
                        Some(e)
                    }
                    None => None,
                };
                self.elements.push(ElementStmt::Beamsplitter {
                    path_a,
                    path_b,
                    theta,
                });
            }
            "phase" => {
                self.order(&kw, Stage::Paths, Stage::Paths)?;
                expect_len(tokens, 3, 3, "phase P EXPR")?;
                let path = self.path(&tokens[1])?;
                let phi = parse_expr(&tokens[2])?;
                self.track(&phi, tokens[2]);
                self.elements.push(ElementStmt::Phase { path, phi });
            }
            "input" => {
                self.order(&kw, Stage::Paths, Stage::Input)?;
                expect_len(tokens, 2, usize::MAX, "input fock N... | input pair A B r=EXPR")?;
                self.input = Some(match tokens[1].text {
                    "fock" => {
                        let counts = tokens[2..]
                            .iter()
                            .map(|t| parse_int::<u32>(t, "occupation count"))
                            .collect::<Result<Vec<_>, _>>()?;
                        if counts.len() != self.n_paths {
                            return Err(tokens[1].syntax(format!(
                                "expected {} occupation counts, found {}",
                                self.n_paths,
                                counts.len()
                            )));
                        }
                        InputStmt::Fock(counts)
                    }
                    "pair" => {
                        expect_len(tokens, 5, 5, "input pair A B r=EXPR")?;
                        let path_1 = self.path(&tokens[2])?;
                        let path_2 = self.path(&tokens[3])?;
                        let r = parse_keyed_expr(&tokens[4], "r")?;
                        match r.constant() {
                            Some(x) if !(0.0..=1.0).contains(&x) => {
                                return Err(tokens[4].error(ParseErrorKind::OverlapOutOfRange(x)))
                            }
                            Some(_) => {}
                            None => self.overlap_var = Some(tokens[4]),
                        }
                        self.track(&r, tokens[4]);
                        InputStmt::Pair { path_1, path_2, r }
                    }
                    other => {
                        return Err(tokens[1]
                            .syntax(format!("expected `fock` or `pair`, found `{other}`")))
                    }
                });
            }
            "sweep" => {
                self.order(&kw, Stage::Input, Stage::Sweep)?;
                expect_len(tokens, 5, 5, "sweep NAME START END COUNT")?;
                let name = tokens[1].text;
                if !is_ident(name) {
                    return Err(tokens[1].syntax(format!("invalid sweep variable `{name}`")));
                }
                let start = parse_expr(&tokens[2])?;
                let end = parse_expr(&tokens[3])?;
                for (e, t) in [(&start, &tokens[2]), (&end, &tokens[3])] {
                    if matches!(e, Expr::Var(_)) {
                        return Err(t.syntax("sweep bounds must be constants"));
                    }
                }
                let count: u32 = parse_int(&tokens[4], "point count")?;
                if count == 0 {
                    return Err(tokens[4].syntax("point count must be positive"));
                }
                self.sweep_line = Some(kw);
                self.sweep = Some(Sweep {
                    name: name.to_string(),
                    start,
                    end,
                    count,
                });
            }
            other => return Err(kw.error(ParseErrorKind::UnknownKeyword(other.to_string()))),
        }
        Ok(())
    }

    fn finish(self, end_line: usize) -> Result<CircuitDocument, ParseError> {
        let missing = |what| ParseError {
            line: end_line,
            column: 1,
            kind: ParseErrorKind::Missing(what),
        };
        let stats = self.stats.ok_or_else(|| missing("stats"))?;
        if self.stage < Stage::Paths {
            return Err(missing("paths"));
        }
        let input = self.input.ok_or_else(|| missing("input"))?;

        for (name, tok) in &self.variables {
            if self.sweep.as_ref().map(|s| &s.name) != Some(name) {
                return Err(tok.error(ParseErrorKind::UndefinedVariable(name.clone())));
            }
        }
        if let (Some(_), Some(sweep)) = (self.overlap_var, &self.sweep) {
            for bound in [&sweep.start, &sweep.end] {
                let x = bound.eval(None);
                if !(0.0..=1.0).contains(&x) {
                    let tok = self.sweep_line.expect("sweep parsed");
                    return Err(tok.error(ParseErrorKind::OverlapOutOfRange(x)));
                }
            }
        }

        Ok(CircuitDocument {
            stats,
            n_paths: self.n_paths,
            elements: self.elements,
            input,
            sweep: self.sweep,
        })
    }
}

/// Parses a whole document, reporting the first error.
pub fn parse(text: &str) -> Result<CircuitDocument, ParseError> {
    let mut parser = Parser {
        stage: Stage::Start,
        stats: None,
        n_paths: 0,
        elements: Vec::new(),
        input: None,
        sweep: None,
        variables: Vec::new(),
        overlap_var: None,
        sweep_line: None,
    };
    let mut last_line = 0;
    for (i, line) in text.lines().enumerate() {
        last_line = i + 1;
        let tokens = tokenize(line, i + 1);
        if !tokens.is_empty() {
            parser.statement(&tokens)?;
        }
    }
    parser.finish(last_line + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MZI: &str = "stats boson\npaths 2\nbs 0 1\nphase 1 $phi\nbs 0 1\ninput fock 1 1\nsweep phi 0 6.5 64";

    #[test]
    fn mzi_document() {
        let doc = parse(MZI).unwrap();
        assert_eq!(doc.stats, Statistics::Boson);
        assert_eq!(doc.n_paths, 2);
        assert_eq!(doc.elements.len(), 3);
        assert_eq!(
            doc.elements[1],
            ElementStmt::Phase {
                path: 1,
                phi: Expr::Var("phi".into())
            }
        );
        assert_eq!(doc.input, InputStmt::Fock(vec![1, 1]));
        let sweep = doc.sweep.unwrap();
        assert_eq!(sweep.count, 64);
        let values = sweep.values();
        assert_eq!(values.len(), 64);
        assert_eq!(values[0], 0.0);
        assert!((values[63] - 6.5).abs() < 1e-12);
    }

    #[test]
    fn equal_paths_rejected() {
        let err = parse("stats boson\npaths 2\nbs 0 0\ninput fock 1 1").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::EqualPaths(0));
        assert_eq!((err.line, err.column), (3, 6));
    }

    #[test]
    fn fermion_same_path_pair_parses() {
        let doc = parse("stats fermion\npaths 2\nbs 0 1\ninput pair 0 0 r=1.0").unwrap();
        assert_eq!(
            doc.input,
            InputStmt::Pair {
                path_1: 0,
                path_2: 0,
                r: Expr::Number(1.0)
            }
        );
    }

    #[test]
    fn error_positions() {
        let err = parse("stats boson\npaths 2\nmirror 0\ninput fock 1 1").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownKeyword("mirror".into()));
        assert_eq!((err.line, err.column), (3, 1));

        let err = parse("stats boson\npaths 2\n  phase 7 pi\ninput fock 1 1").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::PathOutOfRange { path: 7, n_paths: 2 });
        assert_eq!((err.line, err.column), (3, 9));

        let err = parse("stats boson\npaths 2\ninput pair 0 1 r=1.5").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::OverlapOutOfRange(1.5));
        assert_eq!((err.line, err.column), (3, 16));

        let err = parse("stats boson\npaths 2\nphase 1 $psi\ninput fock 1 1\nsweep phi 0 1 3").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UndefinedVariable("psi".into()));
        assert_eq!(err.line, 3);
    }

    #[test]
    fn missing_and_misordered_statements() {
        assert_eq!(
            parse("stats boson\npaths 2\nbs 0 1").unwrap_err().kind,
            ParseErrorKind::Missing("input")
        );
        assert_eq!(parse("").unwrap_err().kind, ParseErrorKind::Missing("stats"));
        assert!(matches!(
            parse("paths 2\nstats boson\ninput fock 1 1").unwrap_err().kind,
            ParseErrorKind::Syntax(_)
        ));
        assert!(matches!(
            parse("stats boson\npaths 2\ninput fock 1 1\nbs 0 1").unwrap_err().kind,
            ParseErrorKind::Syntax(_)
        ));
        assert!(matches!(
            parse("stats boson\nstats boson\npaths 2\ninput fock 1 1").unwrap_err().kind,
            ParseErrorKind::Syntax(_)
        ));
    }

    #[test]
    fn swept_overlap_bounds_checked() {
        let err = parse("stats boson\npaths 2\nbs 0 1\ninput pair 0 1 r=$r\nsweep r 0 2 5").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::OverlapOutOfRange(2.0));
        assert_eq!(err.line, 5);
        assert!(parse("stats boson\npaths 2\nbs 0 1\ninput pair 0 1 r=$r\nsweep r 0 1 5").is_ok());
    }

    #[test]
    fn expressions() {
        let doc = parse("stats boson # comment\npaths 3\nbs 0 2 theta=pi/4\nphase 1 -0.5\nphase 2 pi\ninput fock 1 0 1\n").unwrap();
        assert_eq!(
            doc.elements[0],
            ElementStmt::Beamsplitter {
                path_a: 0,
                path_b: 2,
                theta: Some(Expr::Pi { divisor: Some(4) })
            }
        );
        assert_eq!(doc.elements[1], ElementStmt::Phase { path: 1, phi: Expr::Number(-0.5) });
        assert!(parse("stats boson\npaths 2\nphase 1 pi/0\ninput fock 1 1").is_err());
        assert!(parse("stats boson\npaths 2\nphase 1 inf\ninput fock 1 1").is_err());
        assert!(parse("stats boson\npaths 2\nphase 1 nan\ninput fock 1 1").is_err());
    }

    #[test]
    fn printing_round_trips() {
        let doc = parse(MZI).unwrap();
        assert_eq!(parse(&doc.to_string()).unwrap(), doc);
    }
}
