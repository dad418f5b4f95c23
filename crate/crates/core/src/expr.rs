//! Expression trees for defining functions and immersion components.
//!
//! The grammar is a small fixed infix language: `+ - * / ^` with the usual
//! precedence (`^` right-associative and tightest, unary minus below it),
//! parentheses, the function calls `exp ln sin cos sinh cosh sqrt`, decimal
//! literals, and the variable names declared for the evaluation context.

use crate::jets::{Jet2, JetError};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
}

/// A jet domain error tagged with the byte offset of the subexpression
/// that raised it.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("{source} in subexpression at byte {offset}")]
pub struct EvalError {
    pub offset: usize,
    #[source]
    pub source: JetError,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryFn {
    Exp,
    Ln,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Sqrt,
}

impl UnaryFn {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "exp" => UnaryFn::Exp,
            "ln" => UnaryFn::Ln,
            "sin" => UnaryFn::Sin,
            "cos" => UnaryFn::Cos,
            "sinh" => UnaryFn::Sinh,
            "cosh" => UnaryFn::Cosh,
            "sqrt" => UnaryFn::Sqrt,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            UnaryFn::Exp => "exp",
            UnaryFn::Ln => "ln",
            UnaryFn::Sin => "sin",
            UnaryFn::Cos => "cos",
            UnaryFn::Sinh => "sinh",
            UnaryFn::Cosh => "cosh",
            UnaryFn::Sqrt => "sqrt",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Const(f64),
    Var(usize),
    Neg(Box<Spanned>),
    Unary(UnaryFn, Box<Spanned>),
    Binary(BinOp, Box<Spanned>, Box<Spanned>),
    /// `^` with a syntactically integral literal exponent; evaluated by
    /// repeated multiplication so negative bases stay in-domain.
    PowInt(Box<Spanned>, i32),
}

#[derive(Debug, Clone, PartialEq)]
struct Spanned {
    node: Node,
    offset: usize,
}

/// A parsed expression over a declared variable context.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    vars: Vec<String>,
    root: Spanned,
}

impl Expr {
    /// Parse `src` over the declared variable names.
    pub fn parse(src: &str, vars: &[&str]) -> Result<Expr, ParseError> {
        let var_names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let tokens = lex(src)?;
        let mut p = Parser {
            tokens,
            pos: 0,
            vars: &var_names,
            src_len: src.len(),
        };
        let root = p.expr()?;
        match p.peek() {
            None => Ok(Expr {
                vars: var_names,
                root,
            }),
            Some(t) => Err(ParseError::Syntax {
                offset: t.offset,
                message: format!("unexpected `{}`", t.kind.describe()),
            }),
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    /// Indices of the variables that actually occur.
    pub fn free_variables(&self) -> BTreeSet<usize> {
        let mut set = BTreeSet::new();
        collect_vars(&self.root, &mut set);
        set
    }

    /// Evaluate with jet-valued variable assignments, one per declared
    /// variable in order.
    pub fn eval_jet<const N: usize>(&self, at: &[Jet2<N>]) -> Result<Jet2<N>, EvalError> {
        assert_eq!(
            at.len(),
            self.vars.len(),
            "assignment arity does not match declared variables"
        );
        eval_node(&self.root, at)
    }

    /// Plain value evaluation (a zero-arity jet under the hood).
    pub fn eval_value(&self, at: &[f64]) -> Result<f64, EvalError> {
        assert_eq!(at.len(), self.vars.len());
        let jets: Vec<Jet2<0>> = at.iter().map(|&v| Jet2::constant(v)).collect();
        Ok(eval_node(&self.root, &jets)?.value)
    }
}

fn collect_vars(s: &Spanned, out: &mut BTreeSet<usize>) {
    match &s.node {
        Node::Const(_) => {}
        Node::Var(i) => {
            out.insert(*i);
        }
        Node::Neg(a) | Node::Unary(_, a) | Node::PowInt(a, _) => collect_vars(a, out),
        Node::Binary(_, a, b) => {
            collect_vars(a, out);
            collect_vars(b, out);
        }
    }
}

fn eval_node<const N: usize>(s: &Spanned, at: &[Jet2<N>]) -> Result<Jet2<N>, EvalError> {
    let here = |source: JetError| EvalError {
        offset: s.offset,
        source,
    };
    match &s.node {
        Node::Const(c) => Ok(Jet2::constant(*c)),
        Node::Var(i) => Ok(at[*i]),
        Node::Neg(a) => Ok(-eval_node(a, at)?),
        Node::Unary(f, a) => {
            let x = eval_node(a, at)?;
            match f {
                UnaryFn::Exp => Ok(x.exp()),
                UnaryFn::Ln => x.ln().map_err(here),
                UnaryFn::Sin => Ok(x.sin()),
                UnaryFn::Cos => Ok(x.cos()),
                UnaryFn::Sinh => Ok(x.sinh()),
                UnaryFn::Cosh => Ok(x.cosh()),
                UnaryFn::Sqrt => x.sqrt().map_err(here),
            }
        }
        Node::PowInt(a, n) => eval_node(a, at)?.powi(*n).map_err(here),
        Node::Binary(op, a, b) => {
            let x = eval_node(a, at)?;
            let y = eval_node(b, at)?;
            match op {
                BinOp::Add => Ok(x + y),
                BinOp::Sub => Ok(x - y),
                BinOp::Mul => Ok(x * y),
                BinOp::Div => x.div(y).map_err(here),
                BinOp::Pow => x.pow(y).map_err(here),
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_node(&self.root, &self.vars, f)
    }
}

fn fmt_node(s: &Spanned, vars: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match &s.node {
        Node::Const(c) => {
            if *c < 0.0 {
                write!(f, "({})", c)
            } else {
                write!(f, "{}", c)
            }
        }
        Node::Var(i) => write!(f, "{}", vars[*i]),
        Node::Neg(a) => {
            write!(f, "(-")?;
            fmt_node(a, vars, f)?;
            write!(f, ")")
        }
        Node::Unary(u, a) => {
            write!(f, "{}(", u.name())?;
            fmt_node(a, vars, f)?;
            write!(f, ")")
        }
        Node::PowInt(a, n) => {
            write!(f, "(")?;
            fmt_node(a, vars, f)?;
            write!(f, " ^ {})", n)
        }
        Node::Binary(op, a, b) => {
            let sym = match op {
                BinOp::Add => "+",
                BinOp::Sub => "-",
                BinOp::Mul => "*",
                BinOp::Div => "/",
                BinOp::Pow => "^",
            };
            write!(f, "(")?;
            fmt_node(a, vars, f)?;
            write!(f, " {} ", sym)?;
            fmt_node(b, vars, f)?;
            write!(f, ")")
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Num(v) => format!("{v}"),
            TokenKind::Ident(s) => s.clone(),
            TokenKind::Plus => "+".into(),
            TokenKind::Minus => "-".into(),
            TokenKind::Star => "*".into(),
            TokenKind::Slash => "/".into(),
            TokenKind::Caret => "^".into(),
            TokenKind::LParen => "(".into(),
            TokenKind::RParen => ")".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Token {
    kind: TokenKind,
    offset: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let offset = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                let kind = match c {
                    '+' => TokenKind::Plus,
                    '-' => TokenKind::Minus,
                    '*' => TokenKind::Star,
                    '/' => TokenKind::Slash,
                    '^' => TokenKind::Caret,
                    '(' => TokenKind::LParen,
                    _ => TokenKind::RParen,
                };
                tokens.push(Token { kind, offset });
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text = &src[start..i];
                let value: f64 = text.parse().map_err(|_| ParseError::Syntax {
                    offset: start,
                    message: format!("malformed number `{text}`"),
                })?;
                tokens.push(Token {
                    kind: TokenKind::Num(value),
                    offset,
                });
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Ident(src[start..i].to_string()),
                    offset,
                });
            }
            _ => {
                return Err(ParseError::Syntax {
                    offset,
                    message: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    if tokens.is_empty() {
        return Err(ParseError::Syntax {
            offset: 0,
            message: "empty expression".into(),
        });
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a [String],
    src_len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek().map(|t| &t.kind) == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn end_error(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            offset: self.src_len,
            message: format!("expected {expected}, found end of input"),
        }
    }

    fn expr(&mut self) -> Result<Spanned, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Plus) => BinOp::Add,
                Some(TokenKind::Minus) => BinOp::Sub,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            let offset = lhs.offset;
            lhs = Spanned {
                node: Node::Binary(op, Box::new(lhs), Box::new(rhs)),
                offset,
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Spanned, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Star) => BinOp::Mul,
                Some(TokenKind::Slash) => BinOp::Div,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.factor()?;
            let offset = lhs.offset;
            lhs = Spanned {
                node: Node::Binary(op, Box::new(lhs), Box::new(rhs)),
                offset,
            };
        }
        Ok(lhs)
    }

    // unary minus binds below `^`, so -x^2 is -(x^2)
    fn factor(&mut self) -> Result<Spanned, ParseError> {
        if let Some(t) = self.peek() {
            if t.kind == TokenKind::Minus {
                let offset = t.offset;
                self.pos += 1;
                let inner = self.factor()?;
                return Ok(Spanned {
                    node: Node::Neg(Box::new(inner)),
                    offset,
                });
            }
        }
        self.power()
    }

    fn power(&mut self) -> Result<Spanned, ParseError> {
        let base = self.atom()?;
        if self.eat(&TokenKind::Caret) {
            // recurse through factor: right-associative, and the exponent
            // may carry its own unary minus
            let exponent = self.factor()?;
            let offset = base.offset;
            if let Some(n) = integral_literal(&exponent) {
                return Ok(Spanned {
                    node: Node::PowInt(Box::new(base), n),
                    offset,
                });
            }
            return Ok(Spanned {
                node: Node::Binary(BinOp::Pow, Box::new(base), Box::new(exponent)),
                offset,
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Spanned, ParseError> {
        let tok = self.bump().ok_or_else(|| self.end_error("an operand"))?;
        match tok.kind {
            TokenKind::Num(v) => Ok(Spanned {
                node: Node::Const(v),
                offset: tok.offset,
            }),
            TokenKind::LParen => {
                let inner = self.expr()?;
                if !self.eat(&TokenKind::RParen) {
                    return Err(match self.peek() {
                        Some(t) => ParseError::Syntax {
                            offset: t.offset,
                            message: format!("expected `)`, found `{}`", t.kind.describe()),
                        },
                        None => self.end_error("`)`"),
                    });
                }
                Ok(inner)
            }
            TokenKind::Ident(name) => {
                if let Some(func) = UnaryFn::from_name(&name) {
                    if !self.eat(&TokenKind::LParen) {
                        return Err(match self.peek() {
                            Some(t) => ParseError::Syntax {
                                offset: t.offset,
                                message: format!("expected `(` after `{name}`"),
                            },
                            None => self.end_error("`(`"),
                        });
                    }
                    let arg = self.expr()?;
                    if !self.eat(&TokenKind::RParen) {
                        return Err(match self.peek() {
                            Some(t) => ParseError::Syntax {
                                offset: t.offset,
                                message: format!("expected `)`, found `{}`", t.kind.describe()),
                            },
                            None => self.end_error("`)`"),
                        });
                    }
                    return Ok(Spanned {
                        node: Node::Unary(func, Box::new(arg)),
                        offset: tok.offset,
                    });
                }
                match self.vars.iter().position(|v| v == &name) {
                    Some(i) => Ok(Spanned {
                        node: Node::Var(i),
                        offset: tok.offset,
                    }),
                    None => Err(ParseError::UnknownIdentifier {
                        name,
                        offset: tok.offset,
                    }),
                }
            }
            other => Err(ParseError::Syntax {
                offset: tok.offset,
                message: format!("unexpected `{}`", other.describe()),
            }),
        }
    }
}

fn integral_literal(s: &Spanned) -> Option<i32> {
    match &s.node {
        Node::Const(v) if v.fract() == 0.0 && v.abs() <= i32::MAX as f64 => Some(*v as i32),
        Node::Neg(inner) => integral_literal(inner).map(|n| -n),
        _ => None,
    }
}
