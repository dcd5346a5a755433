use std::fmt;

use thiserror::Error;

use super::ast::{BinOp, Constant, Expr, Func, Node, NodeKind};
use super::token::{Token, TokenKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("at offset {position}: expected {}, found {found}", Expected(expected))]
    Unexpected {
        position: usize,
        expected: Vec<&'static str>,
        /// Offending token text, or `end of input`.
        found: String,
    },
    #[error("at offset {position}: unknown identifier `{name}`")]
    UnknownIdentifier { position: usize, name: String },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Unexpected { position, .. }
            | ParseError::UnknownIdentifier { position, .. } => *position,
        }
    }
}

struct Expected<'a>(&'a [&'static str]);

impl fmt::Display for Expected<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            [] => f.write_str("nothing"),
            [one] => f.write_str(one),
            [init @ .., last] => write!(f, "{} or {}", init.join(", "), last),
        }
    }
}

const ATOM_START: &[&str] = &["number", "'x'", "'pi'", "'e'", "function call", "'('"];

/// Builds an [`Expr`] from a token stream.
pub fn parse(tokens: &[Token<'_>]) -> Result<Expr, ParseError> {
    let mut parser = Parser { tokens, pos: 0 };
    let root = parser.expr()?;
    match parser.peek() {
        None => Ok(Expr::new(root)),
        Some(_) => Err(parser.unexpected(&["operator", "end of input"])),
    }
}

struct Parser<'t, 'a> {
    tokens: &'t [Token<'a>],
    pos: usize,
}

impl<'t, 'a> Parser<'t, 'a> {
    fn peek(&self) -> Option<&'t Token<'a>> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<TokenKind> {
        self.peek().map(|t| t.kind)
    }

    fn bump(&mut self) -> &'t Token<'a> {
        let tok = &self.tokens[self.pos];
        self.pos += 1;
        tok
    }

    fn end_position(&self) -> usize {
        self.tokens.last().map_or(0, Token::end)
    }

    fn unexpected(&self, expected: &[&'static str]) -> ParseError {
        let (position, found) = match self.peek() {
            Some(t) => (t.position, format!("`{}`", t.text)),
            None => (self.end_position(), "end of input".to_string()),
        };
        ParseError::Unexpected {
            position,
            expected: expected.to_vec(),
            found,
        }
    }

    fn expect(
        &mut self,
        kind: TokenKind,
        label: &'static str,
    ) -> Result<&'t Token<'a>, ParseError> {
        if self.peek_kind() == Some(kind) {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&[label]))
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        while let Some(op @ (TokenKind::Plus | TokenKind::Minus)) = self.peek_kind() {
            let position = self.bump().position;
            let rhs = self.term()?;
            let op = if op == TokenKind::Plus {
                BinOp::Add
            } else {
                BinOp::Sub
            };
            lhs = Node::new(NodeKind::Binary(op, Box::new(lhs), Box::new(rhs)), position);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(op @ (TokenKind::Star | TokenKind::Slash)) = self.peek_kind() {
            let position = self.bump().position;
            let rhs = self.unary()?;
            let op = if op == TokenKind::Star {
                BinOp::Mul
            } else {
                BinOp::Div
            };
            lhs = Node::new(NodeKind::Binary(op, Box::new(lhs), Box::new(rhs)), position);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if self.peek_kind() == Some(TokenKind::Minus) {
            let position = self.bump().position;
            let child = self.unary()?;
            return Ok(Node::new(NodeKind::Neg(Box::new(child)), position));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if self.peek_kind() == Some(TokenKind::Caret) {
            let position = self.bump().position;
            let exponent = self.unary()?;
            return Ok(Node::new(
                NodeKind::Binary(BinOp::Pow, Box::new(base), Box::new(exponent)),
                position,
            ));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let Some(tok) = self.peek() else {
            return Err(self.unexpected(ATOM_START));
        };
        match tok.kind {
            TokenKind::Number => {
                self.bump();
                Ok(Node::new(
                    NodeKind::Number(tok.text.to_string()),
                    tok.position,
                ))
            }
            TokenKind::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(inner)
            }
            TokenKind::Identifier => {
                self.bump();
                let kind = match tok.text {
                    "x" => NodeKind::Variable,
                    "pi" => NodeKind::Constant(Constant::Pi),
                    "e" => NodeKind::Constant(Constant::E),
                    name => {
                        let func =
                            Func::from_name(name).ok_or_else(|| ParseError::UnknownIdentifier {
                                position: tok.position,
                                name: name.to_string(),
                            })?;
                        self.expect(TokenKind::LParen, "'('")?;
                        let arg = self.expr()?;
                        self.expect(TokenKind::RParen, "')'")?;
                        NodeKind::Call(func, Box::new(arg))
                    }
                };
                Ok(Node::new(kind, tok.position))
            }
            _ => Err(self.unexpected(ATOM_START)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::tokenize;

    fn p(src: &str) -> Result<Expr, ParseError> {
        parse(&tokenize(src).unwrap())
    }

    fn num(s: &str) -> Box<Node> {
        Box::new(Node::new(NodeKind::Number(s.into()), 0))
    }

    fn var() -> Box<Node> {
        Box::new(Node::new(NodeKind::Variable, 0))
    }

    fn bin(op: BinOp, l: Box<Node>, r: Box<Node>) -> Box<Node> {
        Box::new(Node::new(NodeKind::Binary(op, l, r), 0))
    }

    #[test]
    fn planck_function_shape() {
        let neg_x = Box::new(Node::new(NodeKind::Neg(var()), 0));
        let exp = Box::new(Node::new(NodeKind::Call(Func::Exp, neg_x), 0));
        let expected = bin(
            BinOp::Add,
            bin(BinOp::Sub, exp, num("1")),
            bin(BinOp::Div, var(), num("5")),
        );
        assert_eq!(p("exp(-x)-1+x/5").unwrap(), Expr::new(*expected));
    }

    #[test]
    fn pow_is_right_associative() {
        let expected = bin(BinOp::Pow, num("2"), bin(BinOp::Pow, num("3"), num("2")));
        assert_eq!(p("2^3^2").unwrap(), Expr::new(*expected));
    }

    #[test]
    fn unary_minus_below_pow() {
        let expected = Node::new(NodeKind::Neg(bin(BinOp::Pow, var(), num("2"))), 0);
        assert_eq!(p("-x^2").unwrap(), Expr::new(expected));
    }

    #[test]
    fn dangling_operator() {
        match p("2*").unwrap_err() {
            ParseError::Unexpected {
                position, found, ..
            } => {
                assert_eq!(position, 2);
                assert_eq!(found, "end of input");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_identifiers() {
        assert_eq!(
            p("x + y").unwrap_err(),
            ParseError::UnknownIdentifier {
                position: 4,
                name: "y".into()
            }
        );
        assert!(matches!(
            p("tan(x)"),
            Err(ParseError::UnknownIdentifier { .. })
        ));
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(p("(x").unwrap_err().position(), 2);
        assert_eq!(p("x)").unwrap_err().position(), 1);
        assert_eq!(p("exp x").unwrap_err().position(), 4);
        assert_eq!(p("sin(x, x)").unwrap_err().position(), 5);
        assert_eq!(p("").unwrap_err().position(), 0);
        assert_eq!(p("x x").unwrap_err().position(), 2);
    }

    #[test]
    fn error_message_lists_expectations() {
        let msg = p("2*").unwrap_err().to_string();
        assert!(msg.contains("offset 2"), "{msg}");
        assert!(msg.contains("number"), "{msg}");
    }
}
