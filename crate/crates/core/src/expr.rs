//! Arithmetic expressions in `x`, `x1`, `x2` and `t`.
//!
//! Problem data (source terms, snapshots, boundary values, exact solutions)
//! are stored as parsed expressions so they can be evaluated on any
//! [`Scalar`]: plain floats for data, [`crate::autodiff::Jet2`] for exact
//! spatial derivatives of a closed-form solution.
//!
//! Grammar: `+ - * / ^`, unary minus, parentheses, numbers, the constants
//! `pi` and `e`, and the functions `sin cos tan exp ln log sqrt tanh sinh
//! cosh`. `x` is an alias for `x1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::autodiff::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Ln,
    Sqrt,
    Tanh,
    Sinh,
    Cosh,
}

#[derive(Clone, Debug, PartialEq)]
enum Node {
    Num(f64),
    Coord(usize),
    Time,
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

/// A parsed expression together with its source text.
#[derive(Clone, PartialEq)]
pub struct Expr {
    source: String,
    root: Node,
    max_coord: Option<usize>,
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

impl Expr {
    pub fn parse(source: &str) -> Result<Self> {
        let tokens = tokenize(source)?;
        let mut p = Parser { tokens, pos: 0 };
        let root = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Expression(format!(
                "unexpected {:?} in {source:?}",
                p.tokens[p.pos]
            )));
        }
        let max_coord = max_coord(&root);
        Ok(Expr { source: source.trim().to_string(), root, max_coord })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Highest spatial coordinate index referenced, if any.
    pub fn max_coord(&self) -> Option<usize> {
        self.max_coord
    }

    /// Evaluate at spatial point `x` and time `t`.
    pub fn eval<S: Scalar>(&self, x: &[S], t: f64) -> S {
        eval_node(&self.root, x, t)
    }

    pub fn eval_f64(&self, x: &[f64], t: f64) -> f64 {
        self.eval(x, t)
    }
}

impl FromStr for Expr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Expr::parse(s)
    }
}

impl Serialize for Expr {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        s.serialize_str(&self.source)
    }
}

impl<'de> Deserialize<'de> for Expr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Expr::parse(&s).map_err(serde::de::Error::custom)
    }
}

fn max_coord(n: &Node) -> Option<usize> {
    match n {
        Node::Num(_) | Node::Time => None,
        Node::Coord(i) => Some(*i),
        Node::Neg(a) | Node::Call(_, a) => max_coord(a),
        Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) | Node::Pow(a, b) => {
            max_coord(a).max(max_coord(b))
        }
    }
}

fn is_constant(n: &Node) -> bool {
    match n {
        Node::Num(_) => true,
        Node::Coord(_) | Node::Time => false,
        Node::Neg(a) | Node::Call(_, a) => is_constant(a),
        Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) | Node::Pow(a, b) => {
            is_constant(a) && is_constant(b)
        }
    }
}

/// Small integer exponents are applied by repeated multiplication so that
/// negative bases and jets stay exact.
fn integer_exponent(n: &Node) -> Option<i32> {
    if !is_constant(n) {
        return None;
    }
    let v: f64 = eval_node(n, &[], 0.0);
    (v.fract() == 0.0 && v.abs() <= 64.0).then_some(v as i32)
}

fn eval_node<S: Scalar>(n: &Node, x: &[S], t: f64) -> S {
    match n {
        Node::Num(v) => S::from_f64(*v),
        Node::Coord(i) => x.get(*i).copied().unwrap_or_else(|| S::from_f64(f64::NAN)),
        Node::Time => S::from_f64(t),
        Node::Neg(a) => -eval_node(a, x, t),
        Node::Add(a, b) => eval_node(a, x, t) + eval_node(b, x, t),
        Node::Sub(a, b) => eval_node(a, x, t) - eval_node(b, x, t),
        Node::Mul(a, b) => eval_node(a, x, t) * eval_node(b, x, t),
        Node::Div(a, b) => eval_node(a, x, t) * eval_node(b, x, t).recip(),
        Node::Pow(a, b) => {
            let base = eval_node(a, x, t);
            match integer_exponent(b) {
                Some(k) if k >= 0 => base.powi(k as u32),
                Some(k) => base.powi((-k) as u32).recip(),
                None => (eval_node(b, x, t) * base.ln()).exp(),
            }
        }
        Node::Call(f, a) => {
            let v = eval_node(a, x, t);
            match f {
                Func::Sin => v.sin(),
                Func::Cos => v.cos(),
                Func::Tan => v.sin() * v.cos().recip(),
                Func::Exp => v.exp(),
                Func::Ln => v.ln(),
                Func::Sqrt => v.sqrt(),
                Func::Tanh => v.tanh(),
                Func::Sinh => (v.exp() - (-v).exp()).scale(0.5),
                Func::Cosh => (v.exp() + (-v).exp()).scale(0.5),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            // exponent part, e.g. 1e-3
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let v = text
                .parse::<f64>()
                .map_err(|_| Error::Expression(format!("bad number {text:?}")))?;
            out.push(Token::Num(v));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Expression(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    if out.is_empty() {
        return Err(Error::Expression("empty expression".into()));
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expect(&mut self, op: char) -> Result<()> {
        if self.peek_op() == Some(op) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Expression(format!("expected {op:?}")))
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == '+' {
                Node::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Node::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if op == '*' {
                Node::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Node::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(Node::Neg(Box::new(self.unary()?)))
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(Node::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node> {
        let tok = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Expression("unexpected end of expression".into()))?;
        self.pos += 1;
        match tok {
            Token::Num(v) => Ok(Node::Num(v)),
            Token::Op('(') => {
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Token::Op(c) => Err(Error::Expression(format!("unexpected {c:?}"))),
            Token::Ident(name) => {
                let func = match name.as_str() {
                    "sin" => Some(Func::Sin),
                    "cos" => Some(Func::Cos),
                    "tan" => Some(Func::Tan),
                    "exp" => Some(Func::Exp),
                    "ln" | "log" => Some(Func::Ln),
                    "sqrt" => Some(Func::Sqrt),
                    "tanh" => Some(Func::Tanh),
                    "sinh" => Some(Func::Sinh),
                    "cosh" => Some(Func::Cosh),
                    _ => None,
                };
                if let Some(f) = func {
                    self.expect('(')?;
                    let arg = self.expr()?;
                    self.expect(')')?;
                    return Ok(Node::Call(f, Box::new(arg)));
                }
                match name.as_str() {
                    "x" | "x1" => Ok(Node::Coord(0)),
                    "x2" | "y" => Ok(Node::Coord(1)),
                    "t" => Ok(Node::Time),
                    "pi" => Ok(Node::Num(std::f64::consts::PI)),
                    "e" => Ok(Node::Num(std::f64::consts::E)),
                    _ => Err(Error::Expression(format!("unknown identifier {name:?}"))),
                }
            }
        }
    }
}
