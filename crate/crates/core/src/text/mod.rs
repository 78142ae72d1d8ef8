//! Text syntax for elements and operators.

mod expr;

pub use expr::{parse_element, parse_expr, parse_poly_element, Expr};

use crate::arith::parse_rational;
use crate::error::{Error, Result};
use crate::polyext::PolyOp;

/// Parsed operator name, before any referenced file or element is resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpSpec {
    Poly(PolyOp),
    /// Matrix read from a JSON file, column `j` = image of basis element `j`.
    MatrixFile(String),
    /// `I - phi` with `phi` read from a JSON file.
    IMinusEndoFile(String),
    /// Inner derivation `a -> x a - a x`.
    Ad(String),
}

fn call_arg<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    s.strip_prefix(name)?.trim_start().strip_prefix('(')?.strip_suffix(')')
}

/// Operator mini-language: `d/dt` (alias `D`), `id`, `shift(c)`,
/// `I-shift(c)`, `matrix:<file>`, `I-endo:<file>`, `ad(<element>)`.
pub fn parse_op_spec(src: &str) -> Result<OpSpec> {
    let s = src.trim();
    let bad = |msg: String| Error::Parse { pos: 0, msg };
    if let Some(path) = s.strip_prefix("matrix:") {
        return Ok(OpSpec::MatrixFile(path.trim().to_string()));
    }
    if let Some(path) = s.strip_prefix("I-endo:") {
        return Ok(OpSpec::IMinusEndoFile(path.trim().to_string()));
    }
    if let Some(arg) = call_arg(s, "ad") {
        return Ok(OpSpec::Ad(arg.trim().to_string()));
    }
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let op = match compact.as_str() {
        "d/dt" | "D" => PolyOp::Derivative,
        "id" | "I" => PolyOp::Identity,
        _ => {
            if let Some(c) = call_arg(&compact, "I-shift") {
                PolyOp::IMinusShift(parse_rational(c).map_err(|e| bad(e.to_string()))?)
            } else if let Some(c) = call_arg(&compact, "shift") {
                PolyOp::Shift(parse_rational(c).map_err(|e| bad(e.to_string()))?)
            } else {
                return Err(bad(format!("unknown operator '{s}'")));
            }
        }
    };
    Ok(OpSpec::Poly(op))
}

pub fn parse_poly_op(src: &str) -> Result<PolyOp> {
    match parse_op_spec(src)? {
        OpSpec::Poly(op) => Ok(op),
        _ => Err(Error::UnsupportedOperator(format!("{src} is not a built-in B[t] operator"))),
    }
}
