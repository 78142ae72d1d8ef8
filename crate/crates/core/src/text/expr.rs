//! Recursive-descent parser for element expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | factor
//! factor := atom ('^' uint)?
//! atom   := rational | basis_name | 't' | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{AlgElem, FinDimAlgebra};
use crate::arith::{Rational, UniPoly};
use crate::error::{Error, Result};
use crate::polyext::{PolyExtAlgebra, PolyExtElem};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    Basis(String),
    T,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt, Option<BigInt>),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = vec![];
    let mut i = 0;
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].1.is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().map(|c| c.1).collect::<String>()
    };
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' | '-' | '*' | '^' | '(' | ')' => {
                out.push((
                    pos,
                    match c {
                        '+' => Tok::Plus,
                        '-' => Tok::Minus,
                        '*' => Tok::Star,
                        '^' => Tok::Caret,
                        '(' => Tok::LParen,
                        _ => Tok::RParen,
                    },
                ));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let num: BigInt = digits(&mut i).parse().expect("digits");
                let mut den = None;
                if i < chars.len() && chars[i].1 == '/' {
                    i += 1;
                    let d = digits(&mut i);
                    if d.is_empty() {
                        return Err(Error::Parse { pos: chars.get(i).map_or(src.len(), |c| c.0), msg: "expected denominator".into() });
                    }
                    let d: BigInt = d.parse().expect("digits");
                    if d.is_zero() {
                        return Err(Error::Parse { pos, msg: "zero denominator".into() });
                    }
                    den = Some(d);
                }
                out.push((pos, Tok::Num(num, den)));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                out.push((pos, Tok::Ident(chars[start..i].iter().map(|c| c.1).collect())));
            }
            other => return Err(Error::Parse { pos, msg: format!("unexpected character '{other}'") }),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.i += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.i += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::Star) {
            self.i += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Tok::Minus) {
            self.i += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.i += 1;
        match self.peek() {
            Some(Tok::Num(n, None)) => {
                let Ok(k) = u32::try_from(n) else {
                    return self.err("exponent too large");
                };
                self.i += 1;
                Ok(Expr::Pow(Box::new(base), k))
            }
            _ => self.err("expected a non-negative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        self.i += 1;
        match tok {
            Tok::Num(n, d) => Ok(Expr::Num(Rational::new(n, d.unwrap_or_else(BigInt::one)))),
            Tok::Ident(s) if s == "t" => Ok(Expr::T),
            Tok::Ident(s) => Ok(Expr::Basis(s)),
            Tok::LParen => {
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.i += 1;
                Ok(e)
            }
            _ => {
                self.i -= 1;
                self.err("expected a number, name, 't' or '('")
            }
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, i: 0, end: src.len() };
    let e = p.expr()?;
    if p.i != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Value in the unitization: a scalar polynomial plus an element of `B[t]`.
struct Val {
    scalar: UniPoly,
    elem: PolyExtElem,
}

fn scalar_times(p: &UniPoly, a: &PolyExtElem, dim: usize) -> PolyExtElem {
    let (Some(dp), Some(da)) = (p.degree(), a.degree()) else {
        return PolyExtElem::zero();
    };
    let mut out = vec![AlgElem::zero(dim); dp + da + 1];
    for (i, c) in p.coeffs().iter().enumerate() {
        for (j, x) in a.coeffs().iter().enumerate() {
            out[i + j] = &out[i + j] + &x.scale(c);
        }
    }
    PolyExtElem::new(out)
}

fn eval(alg: &PolyExtAlgebra, e: &Expr) -> Result<Val> {
    let dim = alg.coeff_algebra().dim();
    Ok(match e {
        Expr::Num(q) => Val { scalar: UniPoly::constant(q.clone()), elem: PolyExtElem::zero() },
        Expr::T => Val { scalar: UniPoly::t(), elem: PolyExtElem::zero() },
        Expr::Basis(name) => {
            let i = alg
                .coeff_algebra()
                .basis_index(name)
                .ok_or_else(|| Error::UnknownBasisName(name.clone()))?;
            Val { scalar: UniPoly::zero(), elem: alg.constant(&AlgElem::basis(dim, i))? }
        }
        Expr::Neg(x) => {
            let v = eval(alg, x)?;
            Val { scalar: -&v.scalar, elem: v.elem.neg() }
        }
        Expr::Add(x, y) => {
            let (a, b) = (eval(alg, x)?, eval(alg, y)?);
            Val { scalar: &a.scalar + &b.scalar, elem: a.elem.add(&b.elem) }
        }
        Expr::Sub(x, y) => {
            let (a, b) = (eval(alg, x)?, eval(alg, y)?);
            Val { scalar: &a.scalar - &b.scalar, elem: a.elem.sub(&b.elem) }
        }
        Expr::Mul(x, y) => {
            let (a, b) = (eval(alg, x)?, eval(alg, y)?);
            mul(alg, &a, &b)?
        }
        Expr::Pow(x, k) => {
            let base = eval(alg, x)?;
            let mut acc = Val { scalar: UniPoly::one(), elem: PolyExtElem::zero() };
            for _ in 0..*k {
                acc = mul(alg, &acc, &base)?;
            }
            acc
        }
    })
}

fn mul(alg: &PolyExtAlgebra, a: &Val, b: &Val) -> Result<Val> {
    let dim = alg.coeff_algebra().dim();
    let scalar = &a.scalar * &b.scalar;
    if let Some(d) = scalar.degree() {
        if d > alg.degree_cap() {
            return Err(Error::DegreeCapExceeded { degree: d, cap: alg.degree_cap() });
        }
    }
    let elem = scalar_times(&a.scalar, &b.elem, dim)
        .add(&scalar_times(&b.scalar, &a.elem, dim))
        .add(&alg.pmul(&a.elem, &b.elem)?);
    Ok(Val { scalar, elem })
}

fn lower(alg: &PolyExtAlgebra, v: Val) -> Result<PolyExtElem> {
    if v.scalar.is_zero() {
        return Ok(v.elem);
    }
    let unit = alg.coeff_algebra().unit().ok_or(Error::NotUnital)?;
    let dim = alg.coeff_algebra().dim();
    let embedded = PolyExtElem::new(v.scalar.coeffs().iter().map(|c| unit.scale(c)).collect());
    let out = v.elem.add(&embedded);
    if let Some(d) = out.degree() {
        if d > alg.degree_cap() {
            return Err(Error::DegreeCapExceeded { degree: d, cap: alg.degree_cap() });
        }
    }
    debug_assert!(out.coeffs().iter().all(|c| c.dim() == dim));
    Ok(out)
}

/// Parses an element of `B[t]`. Scalars are multiples of the unit of `B`.
pub fn parse_poly_element(alg: &PolyExtAlgebra, src: &str) -> Result<PolyExtElem> {
    let ast = parse_expr(src)?;
    lower(alg, eval(alg, &ast)?)
}

/// Parses an element of a finite-dimensional algebra; `t` is rejected.
pub fn parse_element(alg: &FinDimAlgebra, src: &str) -> Result<AlgElem> {
    let ast = parse_expr(src)?;
    if contains_t(&ast) {
        let pos = src.find('t').unwrap_or(0);
        return Err(Error::Parse { pos, msg: "'t' is not available in a finite-dimensional algebra".into() });
    }
    let wrapped = PolyExtAlgebra::with_default_cap(alg.clone());
    let e = lower(&wrapped, eval(&wrapped, &ast)?)?;
    Ok(e.coeff(0).cloned().unwrap_or_else(|| alg.zero()))
}

fn contains_t(e: &Expr) -> bool {
    match e {
        Expr::T => true,
        Expr::Num(_) | Expr::Basis(_) => false,
        Expr::Neg(x) | Expr::Pow(x, _) => contains_t(x),
        Expr::Add(x, y) | Expr::Sub(x, y) | Expr::Mul(x, y) => contains_t(x) || contains_t(y),
    }
}
