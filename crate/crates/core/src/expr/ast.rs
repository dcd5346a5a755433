use std::fmt;
use std::str::FromStr;

use super::{parse, tokenize, ExprError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constant {
    Pi,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
    Sqrt,
}

impl Func {
    pub const ALL: [Func; 5] = [Func::Exp, Func::Ln, Func::Sin, Func::Cos, Func::Sqrt];

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NodeKind {
    /// Unsigned decimal literal, kept verbatim so it can be converted at
    /// whatever precision the evaluation runs at.
    Number(String),
    Variable,
    Constant(Constant),
    Neg(Box<Node>),
    Binary(BinOp, Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

/// An AST node tagged with the byte offset it was parsed from.
///
/// Equality is structural and ignores positions.
#[derive(Debug, Clone)]
pub struct Node {
    pub kind: NodeKind,
    pub position: usize,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Node {
    pub fn new(kind: NodeKind, position: usize) -> Self {
        Self { kind, position }
    }

    // Binding strength used for minimal parenthesization.
    fn level(&self) -> u8 {
        match &self.kind {
            NodeKind::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
            NodeKind::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
            NodeKind::Neg(_) => 3,
            NodeKind::Binary(BinOp::Pow, ..) => 4,
            _ => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min_level: u8) -> fmt::Result {
        if self.level() < min_level {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        match &self.kind {
            NodeKind::Number(text) => f.write_str(text),
            NodeKind::Variable => f.write_str("x"),
            NodeKind::Constant(Constant::Pi) => f.write_str("pi"),
            NodeKind::Constant(Constant::E) => f.write_str("e"),
            NodeKind::Neg(child) => {
                f.write_str("-")?;
                child.fmt_at(f, 3)
            }
            NodeKind::Call(func, arg) => {
                write!(f, "{}(", func.name())?;
                arg.fmt_at(f, 0)?;
                f.write_str(")")
            }
            NodeKind::Binary(BinOp::Pow, base, exponent) => {
                base.fmt_at(f, 5)?;
                f.write_str("^")?;
                exponent.fmt_at(f, 3)
            }
            NodeKind::Binary(op, lhs, rhs) => {
                let level = self.level();
                lhs.fmt_at(f, level)?;
                write!(f, " {} ", op.symbol())?;
                rhs.fmt_at(f, level + 1)
            }
        }
    }
}

/// A parsed univariate function of `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    root: Node,
}

impl Expr {
    pub fn new(root: Node) -> Self {
        Self { root }
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    /// Tokenizes and parses `source`.
    pub fn parse(source: &str) -> Result<Self, ExprError> {
        let tokens = tokenize(source)?;
        Ok(parse(&tokens)?)
    }

    /// `factor * self`, where `factor` is a decimal literal with an optional
    /// leading minus sign.
    pub fn scaled(&self, factor: &str) -> Self {
        let (negative, digits) = match factor.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, factor),
        };
        let mut lit = Node::new(NodeKind::Number(digits.to_string()), 0);
        if negative {
            lit = Node::new(NodeKind::Neg(Box::new(lit)), 0);
        }
        Self::new(Node::new(
            NodeKind::Binary(BinOp::Mul, Box::new(lit), Box::new(self.root.clone())),
            0,
        ))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt_at(f, 0)
    }
}

impl FromStr for Expr {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(src: &str) -> String {
        let e = Expr::parse(src).unwrap();
        let printed = e.to_string();
        assert_eq!(Expr::parse(&printed).unwrap(), e, "{src} -> {printed}");
        printed
    }

    #[test]
    fn minimal_parentheses() {
        assert_eq!(roundtrip("exp(-x)-1+x/5"), "exp(-x) - 1 + x / 5");
        assert_eq!(roundtrip("x-(1-x)"), "x - (1 - x)");
        assert_eq!(roundtrip("(2^3)^2"), "(2^3)^2");
        assert_eq!(roundtrip("2^3^2"), "2^3^2");
        assert_eq!(roundtrip("-x^2"), "-x^2");
        assert_eq!(roundtrip("(-x)^2"), "(-x)^2");
        assert_eq!(roundtrip("2^-x"), "2^-x");
        assert_eq!(roundtrip("x/(2*x)"), "x / (2 * x)");
        assert_eq!(
            roundtrip("(x+cos(x)*sin(x))/pi-1/4"),
            "(x + cos(x) * sin(x)) / pi - 1 / 4"
        );
    }

    #[test]
    fn scaled_wraps_root() {
        let e = Expr::parse("x - 2").unwrap();
        assert_eq!(e.scaled("10").to_string(), "10 * (x - 2)");
        assert_eq!(e.scaled("-3").to_string(), "-3 * (x - 2)");
        assert_eq!(e.scaled("1e-4"), Expr::parse("1e-4*(x-2)").unwrap());
    }
}
