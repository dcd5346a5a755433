//! Univariate function expressions: tokenizer, recursive-descent parser, and
//! evaluation over [`Real`](crate::numeric::Real) or
//! [`Jet4`](crate::numeric::Jet4).
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?
//! atom  := number | 'x' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
//! func  := 'exp' | 'ln' | 'sin' | 'cos' | 'sqrt'
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-x^2`
//! is `-(x^2)` and `2^3^2` is `2^(3^2)`.

mod ast;
mod eval;
mod parse;
mod token;

use thiserror::Error;

pub use ast::{BinOp, Constant, Expr, Func, Node, NodeKind};
pub use eval::{eval_jet, eval_real, EvalError};
pub use parse::{parse, ParseError};
pub use token::{tokenize, LexError, Token, TokenKind};

/// Any failure turning source text into an [`Expr`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl ExprError {
    pub fn position(&self) -> usize {
        match self {
            ExprError::Lex(e) => e.position,
            ExprError::Parse(e) => e.position(),
        }
    }
}
