use thiserror::Error;

use super::ast::{BinOp, Constant, Expr, Func, Node, NodeKind};
use crate::numeric::{Jet4, JetError, Precision, Real};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at offset {position}: {reason}")]
pub struct EvalError {
    /// Byte offset of the node whose evaluation failed.
    pub position: usize,
    pub reason: String,
}

/// Value of `expr` at `x`, with literals converted at `x`'s precision.
pub fn eval_real(expr: &Expr, x: &Real) -> Result<Real, EvalError> {
    eval_node::<Real>(expr.root(), x)
}

/// Degree-4 Taylor jet of `expr` at `x`.
pub fn eval_jet(expr: &Expr, x: &Real) -> Result<Jet4, EvalError> {
    eval_node::<Jet4>(expr.root(), x)
}

/// Arithmetic needed to walk the AST; failures carry a short reason and
/// are tagged with the node position by the walker.
trait Scalar: Sized {
    fn constant(c: Real) -> Self;
    fn variable(x: &Real) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Result<Self, String>;
    fn pow(&self, rhs: &Self) -> Result<Self, String>;
    fn neg(&self) -> Self;
    fn call(&self, func: Func) -> Result<Self, String>;
}

fn eval_node<S: Scalar>(node: &Node, x: &Real) -> Result<S, EvalError> {
    let prec = x.precision();
    let fail = |reason: String| EvalError {
        position: node.position,
        reason,
    };
    Ok(match &node.kind {
        NodeKind::Number(text) => S::constant(literal(text, prec).map_err(fail)?),
        NodeKind::Variable => S::variable(x),
        NodeKind::Constant(Constant::Pi) => S::constant(Real::pi(prec)),
        NodeKind::Constant(Constant::E) => S::constant(Real::e(prec)),
        NodeKind::Neg(child) => eval_node::<S>(child, x)?.neg(),
        NodeKind::Call(func, arg) => eval_node::<S>(arg, x)?.call(*func).map_err(fail)?,
        NodeKind::Binary(op, lhs, rhs) => {
            let l = eval_node::<S>(lhs, x)?;
            let r = eval_node::<S>(rhs, x)?;
            match op {
                BinOp::Add => l.add(&r),
                BinOp::Sub => l.sub(&r),
                BinOp::Mul => l.mul(&r),
                BinOp::Div => l.div(&r).map_err(fail)?,
                BinOp::Pow => l.pow(&r).map_err(fail)?,
            }
        }
    })
}

fn literal(text: &str, prec: Precision) -> Result<Real, String> {
    Real::parse_decimal(text, prec).map_err(|e| e.to_string())
}

impl Scalar for Real {
    fn constant(c: Real) -> Self {
        c
    }

    fn variable(x: &Real) -> Self {
        x.clone()
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn div(&self, rhs: &Self) -> Result<Self, String> {
        if rhs.is_zero() {
            return Err("division by zero".into());
        }
        Ok(self / rhs)
    }

    fn pow(&self, rhs: &Self) -> Result<Self, String> {
        match rhs.to_small_int() {
            Some(n) if n < 0 && self.is_zero() => Err("negative power of zero".into()),
            Some(_) => Ok(self.pow(rhs)),
            None if self.is_positive() => Ok(self.pow(rhs)),
            None => Err("non-integer power of a non-positive base".into()),
        }
    }

    fn neg(&self) -> Self {
        -self
    }

    fn call(&self, func: Func) -> Result<Self, String> {
        match func {
            Func::Exp => Ok(self.exp()),
            Func::Sin => Ok(self.sin()),
            Func::Cos => Ok(self.cos()),
            Func::Ln if self.is_positive() => Ok(self.ln()),
            Func::Ln => Err("logarithm of a non-positive value".into()),
            Func::Sqrt if !self.is_negative() => Ok(self.sqrt()),
            Func::Sqrt => Err("square root of a negative value".into()),
        }
    }
}

impl Scalar for Jet4 {
    fn constant(c: Real) -> Self {
        Jet4::constant(c)
    }

    fn variable(x: &Real) -> Self {
        Jet4::variable(x.clone())
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn div(&self, rhs: &Self) -> Result<Self, String> {
        self.checked_div(rhs).map_err(jet_reason)
    }

    fn pow(&self, rhs: &Self) -> Result<Self, String> {
        Jet4::pow(self, rhs).map_err(jet_reason)
    }

    fn neg(&self) -> Self {
        -self
    }

    fn call(&self, func: Func) -> Result<Self, String> {
        match func {
            Func::Exp => Ok(self.exp()),
            Func::Ln => self.ln().map_err(jet_reason),
            Func::Sin => Ok(self.sin()),
            Func::Cos => Ok(self.cos()),
            Func::Sqrt => Jet4::sqrt(self).map_err(jet_reason),
        }
    }
}

fn jet_reason(e: JetError) -> String {
    match e {
        JetError::DivisionByZero => "division by zero".into(),
        JetError::Domain(reason) => reason.into(),
    }
}
