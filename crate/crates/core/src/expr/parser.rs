use super::lexer::{Token, TokenKind};
use super::{BinOp, Expr, ExprError, NamedConst};
use crate::numerics::Elementary;

/// Parses a full token stream into an expression tree.
pub fn parse(tokens: &[Token]) -> Result<Expr, ExprError> {
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(p.error_at(t.position, &["operator", "end of input"]));
    }
    Ok(e)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn end_position(&self) -> usize {
        self.tokens.last().map(|t| t.position + t.lexeme.len()).unwrap_or(0)
    }

    fn error_at(&self, position: usize, expected: &[&str]) -> ExprError {
        let found = self
            .tokens
            .iter()
            .find(|t| t.position == position)
            .map(|t| t.lexeme.clone())
            .unwrap_or_else(|| "end of input".to_string());
        ExprError::Parse {
            position,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        }
    }

    fn error_here(&self, expected: &[&str]) -> ExprError {
        let position = self.peek().map(|t| t.position).unwrap_or_else(|| self.end_position());
        self.error_at(position, expected)
    }

    fn eat_op(&mut self, ops: &[char]) -> Option<char> {
        match self.peek() {
            Some(Token {
                kind: TokenKind::Operator(c),
                ..
            }) if ops.contains(c) => {
                self.pos += 1;
                Some(*c)
            }
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        while let Some(c) = self.eat_op(&['+', '-']) {
            let rhs = self.term()?;
            let op = if c == '+' { BinOp::Add } else { BinOp::Sub };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        while let Some(c) = self.eat_op(&['*', '/']) {
            let rhs = self.unary()?;
            let op = if c == '*' { BinOp::Mul } else { BinOp::Div };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat_op(&['-']).is_some() {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.eat_op(&['^']).is_some() {
            let exponent = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        const EXPECTED: &[&str] = &["number", "identifier", "function call", "("];
        let Some(tok) = self.peek() else {
            return Err(self.error_here(EXPECTED));
        };
        match &tok.kind {
            TokenKind::Number(v) => {
                self.pos += 1;
                Ok(Expr::Num(*v))
            }
            TokenKind::Identifier => {
                self.pos += 1;
                if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::LParen)) {
                    return Err(ExprError::Arity {
                        function: tok.lexeme.clone(),
                        expected: 0,
                        found: 1,
                    });
                }
                Ok(match tok.lexeme.as_str() {
                    "pi" => Expr::Const(NamedConst::Pi),
                    "e" => Expr::Const(NamedConst::E),
                    name => Expr::Var(name.to_string()),
                })
            }
            TokenKind::Keyword => {
                self.pos += 1;
                let f = Elementary::from_name(&tok.lexeme).expect("keywords are function names");
                if !matches!(self.peek().map(|t| &t.kind), Some(TokenKind::LParen)) {
                    return Err(ExprError::Arity {
                        function: tok.lexeme.clone(),
                        expected: 1,
                        found: 0,
                    });
                }
                self.pos += 1;
                if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::RParen)) {
                    return Err(ExprError::Arity {
                        function: tok.lexeme.clone(),
                        expected: 1,
                        found: 0,
                    });
                }
                let arg = self.expr()?;
                let mut extra = 0;
                while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Comma)) {
                    self.pos += 1;
                    self.expr()?;
                    extra += 1;
                }
                if extra > 0 {
                    return Err(ExprError::Arity {
                        function: tok.lexeme.clone(),
                        expected: 1,
                        found: 1 + extra,
                    });
                }
                self.close_paren()?;
                Ok(Expr::Call(f, Box::new(arg)))
            }
            TokenKind::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                self.close_paren()?;
                Ok(inner)
            }
            _ => Err(self.error_here(EXPECTED)),
        }
    }

    fn close_paren(&mut self) -> Result<(), ExprError> {
        match self.peek() {
            Some(Token {
                kind: TokenKind::RParen,
                ..
            }) => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error_here(&[")", "operator"])),
        }
    }
}
