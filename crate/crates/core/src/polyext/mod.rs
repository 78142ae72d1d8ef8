//! The polynomial extension `B[t]` of a finite-dimensional algebra `B`, with
//! `t` central, and the two built-in operator families acting on it.

mod format;

pub use format::format_terms;

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{AlgElem, FinDimAlgebra};
use crate::arith::{binomial, fmt_rational, int, Rational};
use crate::error::{Error, Result};

pub const DEFAULT_DEGREE_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct PolyExtAlgebra {
    coeff: FinDimAlgebra,
    degree_cap: usize,
}

/// `sum_k coeffs[k] t^k` with no trailing zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyExtElem {
    coeffs: Vec<AlgElem>,
}

impl PolyExtElem {
    pub fn new(mut coeffs: Vec<AlgElem>) -> Self {
        while coeffs.last().is_some_and(AlgElem::is_zero) {
            coeffs.pop();
        }
        PolyExtElem { coeffs }
    }

    pub fn zero() -> Self {
        PolyExtElem { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[AlgElem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&AlgElem> {
        self.coeffs.get(k)
    }

    pub fn add(&self, o: &PolyExtElem) -> PolyExtElem {
        self.zip_with(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &PolyExtElem) -> PolyExtElem {
        self.zip_with(o, |a, b| a - b)
    }

    pub fn neg(&self) -> PolyExtElem {
        PolyExtElem { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Rational) -> PolyExtElem {
        PolyExtElem::new(self.coeffs.iter().map(|x| x.scale(c)).collect())
    }

    fn zip_with(&self, o: &PolyExtElem, f: impl Fn(&AlgElem, &AlgElem) -> AlgElem) -> PolyExtElem {
        let n = self.coeffs.len().max(o.coeffs.len());
        let dim = self.coeffs.first().or(o.coeffs.first()).map_or(0, AlgElem::dim);
        let zero = AlgElem::zero(dim);
        PolyExtElem::new(
            (0..n)
                .map(|k| f(self.coeffs.get(k).unwrap_or(&zero), o.coeffs.get(k).unwrap_or(&zero)))
                .collect(),
        )
    }
}

/// Built-in operators on `B[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyOp {
    /// `d/dt` applied coefficientwise.
    Derivative,
    /// The endomorphism `t -> t + c 1_B`.
    Shift(Rational),
    Identity,
    /// `I - Shift(c)`.
    IMinusShift(Rational),
}

impl fmt::Display for PolyOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyOp::Derivative => write!(f, "d/dt"),
            PolyOp::Shift(c) => write!(f, "shift({})", fmt_rational(c)),
            PolyOp::Identity => write!(f, "id"),
            PolyOp::IMinusShift(c) => write!(f, "I-shift({})", fmt_rational(c)),
        }
    }
}

impl PolyExtAlgebra {
    pub fn new(coeff: FinDimAlgebra, degree_cap: usize) -> Result<Self> {
        if degree_cap == 0 {
            return Err(Error::Invalid("degree cap must be at least 1".into()));
        }
        Ok(PolyExtAlgebra { coeff, degree_cap })
    }

    pub fn with_default_cap(coeff: FinDimAlgebra) -> Self {
        PolyExtAlgebra { coeff, degree_cap: DEFAULT_DEGREE_CAP }
    }

    pub fn coeff_algebra(&self) -> &FinDimAlgebra {
        &self.coeff
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    fn check_cap(&self, degree: usize) -> Result<()> {
        if degree > self.degree_cap {
            return Err(Error::DegreeCapExceeded { degree, cap: self.degree_cap });
        }
        Ok(())
    }

    /// Element from coefficients in `B`, lowest degree first.
    pub fn elem(&self, coeffs: Vec<AlgElem>) -> Result<PolyExtElem> {
        if let Some(c) = coeffs.iter().find(|c| c.dim() != self.coeff.dim()) {
            return Err(Error::DimensionMismatch { expected: self.coeff.dim(), got: c.dim() });
        }
        let e = PolyExtElem::new(coeffs);
        self.check_cap(e.degree().unwrap_or(0))?;
        Ok(e)
    }

    /// `b t^k`.
    pub fn monomial(&self, b: &AlgElem, k: usize) -> Result<PolyExtElem> {
        let mut coeffs = vec![self.coeff.zero(); k];
        coeffs.push(b.clone());
        self.elem(coeffs)
    }

    pub fn constant(&self, b: &AlgElem) -> Result<PolyExtElem> {
        self.monomial(b, 0)
    }

    pub fn one(&self) -> Result<PolyExtElem> {
        let u = self.coeff.unit().ok_or(Error::NotUnital)?;
        self.constant(u)
    }

    /// `1_B t`.
    pub fn t(&self) -> Result<PolyExtElem> {
        let u = self.coeff.unit().ok_or(Error::NotUnital)?;
        self.monomial(u, 1)
    }

    /// Convolution product with coefficientwise multiplication in `B`.
    pub fn pmul(&self, a: &PolyExtElem, b: &PolyExtElem) -> Result<PolyExtElem> {
        let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
            return Ok(PolyExtElem::zero());
        };
        let mut out = vec![self.coeff.zero(); da + db + 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &self.coeff.mul(x, y)?;
            }
        }
        let prod = PolyExtElem::new(out);
        self.check_cap(prod.degree().unwrap_or(0))?;
        Ok(prod)
    }

    pub fn pow(&self, a: &PolyExtElem, k: usize) -> Result<PolyExtElem> {
        (0..k).try_fold(self.one()?, |acc, _| self.pmul(&acc, a))
    }

    fn derivative(&self, a: &PolyExtElem) -> PolyExtElem {
        PolyExtElem::new(
            a.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&int(k as i64)))
                .collect(),
        )
    }

    fn shift(&self, c: &Rational, a: &PolyExtElem) -> Result<PolyExtElem> {
        if !self.coeff.is_unital() {
            return Err(Error::NotUnital);
        }
        let n = a.coeffs.len();
        let mut out = vec![self.coeff.zero(); n];
        for (k, ak) in a.coeffs.iter().enumerate() {
            if ak.is_zero() {
                continue;
            }
            let mut cpow = Rational::one();
            for j in (0..=k).rev() {
                out[j] = &out[j] + &ak.scale(&(binomial(k, j) * &cpow));
                cpow *= c;
            }
        }
        Ok(PolyExtElem::new(out))
    }

    pub fn apply_op(&self, op: &PolyOp, a: &PolyExtElem) -> Result<PolyExtElem> {
        match op {
            PolyOp::Derivative => Ok(self.derivative(a)),
            PolyOp::Shift(c) => self.shift(c, a),
            PolyOp::Identity => Ok(a.clone()),
            PolyOp::IMinusShift(c) => Ok(a.sub(&self.shift(c, a)?)),
        }
    }

    /// Some `u` with `op(u) = target`, integration constants and residual
    /// kernel components set to zero.
    pub fn solve_slice(&self, op: &PolyOp, target: &PolyExtElem) -> Result<Option<PolyExtElem>> {
        match op {
            PolyOp::Derivative => {
                let mut coeffs = vec![self.coeff.zero()];
                for (k, c) in target.coeffs.iter().enumerate() {
                    coeffs.push(c.scale(&(Rational::one() / int(k as i64 + 1))));
                }
                self.elem(coeffs).map(Some)
            }
            PolyOp::IMinusShift(c) if c.is_zero() => {
                Ok(target.is_zero().then(PolyExtElem::zero))
            }
            PolyOp::IMinusShift(c) => {
                if !self.coeff.is_unital() {
                    return Err(Error::NotUnital);
                }
                // (I - shift_c)(b t^(k+1)) = -(k+1) c b t^k + lower terms.
                let mut u = PolyExtElem::zero();
                let mut residual = target.clone();
                while let Some(k) = residual.degree() {
                    self.check_cap(k + 1)?;
                    let lead = &residual.coeffs[k];
                    let scale = -(Rational::one() / (int(k as i64 + 1) * c));
                    let m = self.monomial(&lead.scale(&scale), k + 1)?;
                    residual = residual.sub(&self.apply_op(op, &m)?);
                    u = u.add(&m);
                }
                Ok(Some(u))
            }
            other => Err(Error::UnsupportedOperator(other.to_string())),
        }
    }

    /// `s = e s0 e`, re-checking `d/dt (s) = e`.
    pub fn normalize_s(&self, e: &PolyExtElem, s0: &PolyExtElem) -> Result<PolyExtElem> {
        let s = self.pmul(&self.pmul(e, s0)?, e)?;
        if self.derivative(&s) != *e {
            return Err(Error::NotPreimage("d/dt(e s0 e) != e".into()));
        }
        Ok(s)
    }

    pub fn format(&self, a: &PolyExtElem) -> String {
        format_terms(&self.coeff, a.coeffs())
    }
}
