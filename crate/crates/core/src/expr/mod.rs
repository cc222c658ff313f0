//! A small expression language for defining parametric curves and surfaces.
//!
//! ```
//! use diffgeo::expr::parse_str;
//! let e = parse_str("a*cos(t) + 1").unwrap();
//! let b = e.bind(&["t"], &[("a", 2.0)]).unwrap();
//! assert_eq!(b.eval(&[0.0_f64]).unwrap(), 3.0);
//! ```

mod bind;
mod definition;
mod lexer;
mod parser;

use std::fmt;

pub use bind::BoundExpr;
pub use definition::{load_definition, ParamDomain, ShapeDefinition, ShapeKind};
pub use lexer::{is_reserved, tokenize, Token, TokenKind};
pub use parser::parse;

use crate::numerics::{Elementary, NumericsError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    pub fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedConst {
    Pi,
    E,
}

impl NamedConst {
    pub fn value(self) -> f64 {
        match self {
            NamedConst::Pi => std::f64::consts::PI,
            NamedConst::E => std::f64::consts::E,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NamedConst::Pi => "pi",
            NamedConst::E => "e",
        }
    }
}

/// Expression tree. Literals produced by the parser are never negative;
/// negation is always an explicit [`Expr::Neg`] node.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(String),
    Const(NamedConst),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Elementary, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExprError {
    #[error("unexpected character {character:?} at byte {position}")]
    Lex { position: usize, character: char },
    #[error("at byte {position}: expected one of {expected:?}, found {found:?}")]
    Parse {
        position: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("unknown identifier {name:?}")]
    Name { name: String },
    #[error("{function} takes {expected} argument(s), got {found}")]
    Arity {
        function: String,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Domain(#[from] NumericsError),
    #[error("definition line {line}: {message}")]
    Definition { line: usize, message: String },
    #[error("parameter {name} = {value} outside [{lo}, {hi}]")]
    OutOfDomain { name: String, value: f64, lo: f64, hi: f64 },
}

/// Tokenizes and parses `text`.
pub fn parse_str(text: &str) -> Result<Expr, ExprError> {
    parse(&tokenize(text)?)
}

impl Expr {
    pub fn num(v: f64) -> Expr {
        Expr::Num(v)
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn bin(op: BinOp, l: Expr, r: Expr) -> Expr {
        Expr::Bin(op, Box::new(l), Box::new(r))
    }

    pub fn call(f: Elementary, arg: Expr) -> Expr {
        Expr::Call(f, Box::new(arg))
    }

    pub fn neg(e: Expr) -> Expr {
        Expr::Neg(Box::new(e))
    }

    /// Variable names in first-occurrence order.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Var(n) => {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
            Expr::Num(_) | Expr::Const(_) => {}
            Expr::Neg(a) | Expr::Call(_, a) => a.collect_vars(out),
            Expr::Bin(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Num(_) | Expr::Var(_) | Expr::Const(_) => 1,
            Expr::Neg(a) | Expr::Call(_, a) => 1 + a.depth(),
            Expr::Bin(_, a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Evaluates an expression without free variables.
    pub fn eval_constant(&self) -> Result<f64, ExprError> {
        self.bind(&[], &[])?.eval::<f64>(&[])
    }

    /// Resolves variables: parameters become evaluation slots (in the order
    /// given), constants are substituted.
    pub fn bind(&self, params: &[&str], consts: &[(&str, f64)]) -> Result<BoundExpr, ExprError> {
        BoundExpr::new(self, params, consts)
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
            Expr::Bin(BinOp::Mul | BinOp::Div, ..) => 2,
            Expr::Neg(_) => 3,
            Expr::Bin(BinOp::Pow, ..) => 4,
            Expr::Num(v) if *v < 0.0 || v.is_sign_negative() => 3,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let wrap = self.precedence() < min;
        if wrap {
            f.write_str("(")?;
        }
        match self {
            Expr::Num(v) => write!(f, "{v:?}")?,
            Expr::Var(n) => f.write_str(n)?,
            Expr::Const(c) => f.write_str(c.name())?,
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.write_at(f, 3)?;
            }
            Expr::Call(g, a) => {
                write!(f, "{}(", g.name())?;
                a.write_at(f, 0)?;
                f.write_str(")")?;
            }
            Expr::Bin(op, a, b) => {
                let (lmin, rmin) = match op {
                    BinOp::Add | BinOp::Sub => (1, 2),
                    BinOp::Mul | BinOp::Div => (2, 3),
                    BinOp::Pow => (5, 3),
                };
                a.write_at(f, lmin)?;
                match op {
                    BinOp::Pow => f.write_str("^")?,
                    _ => write!(f, " {} ", op.symbol())?,
                }
                b.write_at(f, rmin)?;
            }
        }
        if wrap {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Pretty-prints with the fewest parentheses that re-parse to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}
