use super::{BinOp, Expr, ExprError};
use crate::numerics::{Elementary, NumericsError, Scalar};

/// Largest integer exponent evaluated by repeated multiplication.
const MAX_INT_EXPONENT: f64 = 64.0;

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Value(f64),
    Slot(usize),
    Neg(Box<Node>),
    Bin(BinOp, Box<Node>, Box<Node>),
    PowInt(Box<Node>, i32),
    PowConst(Box<Node>, f64),
    Call(Elementary, Box<Node>),
}

/// An expression whose variables have been resolved to argument slots.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundExpr {
    root: Node,
    arity: usize,
}

impl BoundExpr {
    pub(super) fn new(expr: &Expr, params: &[&str], consts: &[(&str, f64)]) -> Result<Self, ExprError> {
        Ok(BoundExpr {
            root: lower(expr, params, consts)?,
            arity: params.len(),
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Evaluation that reports domain violations (log of a non-positive
    /// value, division by zero, non-integer power of a non-positive base).
    pub fn eval<S: Scalar>(&self, args: &[S]) -> Result<S, ExprError> {
        assert_eq!(args.len(), self.arity, "argument count");
        eval_checked(&self.root, args).map_err(ExprError::from)
    }

    /// Evaluation that lets invalid operations produce NaN.
    pub fn eval_unchecked<S: Scalar>(&self, args: &[S]) -> S {
        eval_raw(&self.root, args)
    }

    pub fn is_constant(&self) -> bool {
        !has_slot(&self.root)
    }
}

fn has_slot(n: &Node) -> bool {
    match n {
        Node::Value(_) => false,
        Node::Slot(_) => true,
        Node::Neg(a) | Node::Call(_, a) | Node::PowInt(a, _) | Node::PowConst(a, _) => has_slot(a),
        Node::Bin(_, a, b) => has_slot(a) || has_slot(b),
    }
}

fn lower(e: &Expr, params: &[&str], consts: &[(&str, f64)]) -> Result<Node, ExprError> {
    Ok(match e {
        Expr::Num(v) => Node::Value(*v),
        Expr::Const(c) => Node::Value(c.value()),
        Expr::Var(name) => {
            if let Some(i) = params.iter().position(|p| p == name) {
                Node::Slot(i)
            } else if let Some((_, v)) = consts.iter().find(|(c, _)| c == name) {
                Node::Value(*v)
            } else {
                return Err(ExprError::Name { name: name.clone() });
            }
        }
        Expr::Neg(a) => Node::Neg(Box::new(lower(a, params, consts)?)),
        Expr::Call(f, a) => Node::Call(*f, Box::new(lower(a, params, consts)?)),
        Expr::Bin(BinOp::Pow, base, exp) => {
            let b = lower(base, params, consts)?;
            let x = lower(exp, params, consts)?;
            if has_slot(&x) {
                Node::Bin(BinOp::Pow, Box::new(b), Box::new(x))
            } else {
                let p = eval_checked::<f64>(&x, &[])?;
                if p.fract() == 0.0 && p.abs() <= MAX_INT_EXPONENT {
                    Node::PowInt(Box::new(b), p as i32)
                } else {
                    Node::PowConst(Box::new(b), p)
                }
            }
        }
        Expr::Bin(op, a, b) => Node::Bin(
            *op,
            Box::new(lower(a, params, consts)?),
            Box::new(lower(b, params, consts)?),
        ),
    })
}

fn domain(function: &'static str, value: f64) -> NumericsError {
    NumericsError::Domain { function, value }
}

fn eval_checked<S: Scalar>(n: &Node, args: &[S]) -> Result<S, NumericsError> {
    Ok(match n {
        Node::Value(v) => S::constant(*v),
        Node::Slot(i) => args[*i],
        Node::Neg(a) => -eval_checked(a, args)?,
        Node::Call(f, a) => {
            let x = eval_checked(a, args)?;
            if !f.in_domain(x.value()) {
                return Err(domain(f.name(), x.value()));
            }
            f.apply(x)
        }
        Node::PowInt(a, p) => {
            let x = eval_checked(a, args)?;
            if *p < 0 && x.value() == 0.0 {
                return Err(domain("^", 0.0));
            }
            x.powi(*p)
        }
        Node::PowConst(a, p) => {
            let x = eval_checked(a, args)?;
            if !(x.value() > 0.0) {
                return Err(domain("^", x.value()));
            }
            x.powf(*p)
        }
        Node::Bin(op, a, b) => {
            let x = eval_checked(a, args)?;
            let y = eval_checked(b, args)?;
            match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => {
                    if y.value() == 0.0 {
                        return Err(domain("/", x.value()));
                    }
                    x / y
                }
                BinOp::Pow => {
                    if !(x.value() > 0.0) {
                        return Err(domain("^", x.value()));
                    }
                    x.pow(y)
                }
            }
        }
    })
}

fn eval_raw<S: Scalar>(n: &Node, args: &[S]) -> S {
    match n {
        Node::Value(v) => S::constant(*v),
        Node::Slot(i) => args[*i],
        Node::Neg(a) => -eval_raw(a, args),
        Node::Call(f, a) => f.apply(eval_raw(a, args)),
        Node::PowInt(a, p) => eval_raw(a, args).powi(*p),
        Node::PowConst(a, p) => eval_raw(a, args).powf(*p),
        Node::Bin(op, a, b) => {
            let x = eval_raw(a, args);
            let y = eval_raw(b, args);
            match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => x / y,
                BinOp::Pow => x.pow(y),
            }
        }
    }
}
