//! Tiny expression language for coefficient functions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := atom ('^' unary)?
//! atom    := number | 'x' | 'n' | 'pi' | func '(' expr (',' expr)* ')' | '(' expr ')'
//! func    := sin | cos | exp | abs | min | max | indicator
//! ```
//!
//! `indicator(lo, hi)` is 1 on `lo ≤ x < hi` and 0 elsewhere.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("{message} at offset {offset} in `{source_text}`")]
pub struct ExprError {
    pub offset: usize,
    pub message: String,
    pub source_text: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Func {
    Sin,
    Cos,
    Exp,
    Abs,
    Min,
    Max,
    Indicator,
}

impl Func {
    fn lookup(name: &str) -> Option<Self> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "abs" => Func::Abs,
            "min" => Func::Min,
            "max" => Func::Max,
            "indicator" => Func::Indicator,
            _ => return None,
        })
    }

    fn arity(self) -> usize {
        match self {
            Func::Sin | Func::Cos | Func::Exp | Func::Abs => 1,
            Func::Min | Func::Max | Func::Indicator => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Node {
    Num(f64),
    X,
    N,
    Neg(Box<Node>),
    Bin(char, Box<Node>, Box<Node>),
    Call(Func, Vec<Node>),
}

/// Parsed coefficient expression in the variables `x` and `n`.
#[derive(Clone, PartialEq)]
pub struct Expr {
    source: String,
    root: Node,
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({:?})", self.source)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, offset: usize, message: impl Into<String>) -> ExprError {
        ExprError { offset, message: message.into(), source_text: self.src.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(self.pos, format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Node, ExprError> {
        let mut lhs = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Node::Bin(c as char, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node, ExprError> {
        let mut lhs = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Node::Bin(c as char, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, ExprError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Node::Neg(Box::new(self.unary()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Node, ExprError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(Node::Bin('^', Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, ExprError> {
        let start = match self.peek() {
            Some(_) => self.pos,
            None => return Err(self.err(self.pos, "unexpected end of expression")),
        };
        let c = self.bytes[start];
        if c == b'(' {
            self.pos += 1;
            let inner = self.expr()?;
            self.expect(b')')?;
            return Ok(inner);
        }
        if c.is_ascii_digit() || c == b'.' {
            return self.number(start);
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < self.bytes.len()
                && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let name = &self.src[start..self.pos];
            return match name {
                "x" => Ok(Node::X),
                "n" => Ok(Node::N),
                "pi" => Ok(Node::Num(std::f64::consts::PI)),
                _ => {
                    let func = Func::lookup(name)
                        .ok_or_else(|| self.err(start, format!("unknown identifier `{name}`")))?;
                    self.expect(b'(')?;
                    let mut args = vec![self.expr()?];
                    while self.peek() == Some(b',') {
                        self.pos += 1;
                        args.push(self.expr()?);
                    }
                    self.expect(b')')?;
                    if args.len() != func.arity() {
                        return Err(self.err(
                            start,
                            format!("`{name}` takes {} argument(s), got {}", func.arity(), args.len()),
                        ));
                    }
                    Ok(Node::Call(func, args))
                }
            };
        }
        Err(self.err(start, format!("unexpected character `{}`", c as char)))
    }

    fn number(&mut self, start: usize) -> Result<Node, ExprError> {
        let b = self.bytes;
        while self.pos < b.len() && (b[self.pos].is_ascii_digit() || b[self.pos] == b'.') {
            self.pos += 1;
        }
        if self.pos < b.len() && (b[self.pos] == b'e' || b[self.pos] == b'E') {
            let save = self.pos;
            self.pos += 1;
            if self.pos < b.len() && (b[self.pos] == b'+' || b[self.pos] == b'-') {
                self.pos += 1;
            }
            let digits = self.pos;
            while self.pos < b.len() && b[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos == digits {
                self.pos = save;
            }
        }
        let text = &self.src[start..self.pos];
        text.parse::<f64>()
            .map(Node::Num)
            .map_err(|_| self.err(start, format!("malformed number `{text}`")))
    }
}

fn eval(node: &Node, x: f64, n: f64) -> f64 {
    match node {
        Node::Num(v) => *v,
        Node::X => x,
        Node::N => n,
        Node::Neg(a) => -eval(a, x, n),
        Node::Bin(op, a, b) => {
            let (a, b) = (eval(a, x, n), eval(b, x, n));
            match op {
                '+' => a + b,
                '-' => a - b,
                '*' => a * b,
                '/' => a / b,
                _ => a.powf(b),
            }
        }
        Node::Call(func, args) => {
            let arg = |i: usize| eval(&args[i], x, n);
            match func {
                Func::Sin => arg(0).sin(),
                Func::Cos => arg(0).cos(),
                Func::Exp => arg(0).exp(),
                Func::Abs => arg(0).abs(),
                Func::Min => arg(0).min(arg(1)),
                Func::Max => arg(0).max(arg(1)),
                Func::Indicator => {
                    if arg(0) <= x && x < arg(1) {
                        1.0
                    } else {
                        0.0
                    }
                }
            }
        }
    }
}

fn uses_n(node: &Node) -> bool {
    match node {
        Node::N => true,
        Node::Num(_) | Node::X => false,
        Node::Neg(a) => uses_n(a),
        Node::Bin(_, a, b) => uses_n(a) || uses_n(b),
        Node::Call(_, args) => args.iter().any(uses_n),
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Self, ExprError> {
        let mut p = Parser { src, bytes: src.as_bytes(), pos: 0 };
        let root = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err(p.pos, "trailing input"));
        }
        Ok(Self { source: src.to_string(), root })
    }

    pub fn eval(&self, x: f64, n: f64) -> f64 {
        eval(&self.root, x, n)
    }

    /// Whether the expression depends on the family index `n`.
    pub fn uses_n(&self) -> bool {
        uses_n(&self.root)
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}
