use std::fmt::Debug;

use crate::algebra::{AlgElem, FinDimAlgebra};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::linalg::QMat;
use crate::polyext::{PolyExtAlgebra, PolyExtElem, PolyOp};

/// Element arithmetic shared by the finite-dimensional and `B[t]` backends.
pub trait Backend {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &Rational) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn unit(&self) -> Option<Self::Elem>;
    /// Upper bound on the number of applications an LN operator of this
    /// backend needs to annihilate `a`.
    fn nilpotency_bound(&self, a: &Self::Elem) -> usize;
    fn format(&self, a: &Self::Elem) -> String;
}

impl Backend for FinDimAlgebra {
    type Elem = AlgElem;

    fn zero(&self) -> AlgElem {
        FinDimAlgebra::zero(self)
    }
    fn add(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        a + b
    }
    fn sub(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        a - b
    }
    fn scale(&self, a: &AlgElem, c: &Rational) -> AlgElem {
        a.scale(c)
    }
    fn mul(&self, a: &AlgElem, b: &AlgElem) -> Result<AlgElem> {
        FinDimAlgebra::mul(self, a, b)
    }
    fn is_zero(&self, a: &AlgElem) -> bool {
        a.is_zero()
    }
    fn unit(&self) -> Option<AlgElem> {
        FinDimAlgebra::unit(self).cloned()
    }
    fn nilpotency_bound(&self, _a: &AlgElem) -> usize {
        self.dim() + 1
    }
    fn format(&self, a: &AlgElem) -> String {
        crate::polyext::format_terms(self, std::slice::from_ref(a))
    }
}

impl Backend for PolyExtAlgebra {
    type Elem = PolyExtElem;

    fn zero(&self) -> PolyExtElem {
        PolyExtElem::zero()
    }
    fn add(&self, a: &PolyExtElem, b: &PolyExtElem) -> PolyExtElem {
        a.add(b)
    }
    fn sub(&self, a: &PolyExtElem, b: &PolyExtElem) -> PolyExtElem {
        a.sub(b)
    }
    fn scale(&self, a: &PolyExtElem, c: &Rational) -> PolyExtElem {
        a.scale(c)
    }
    fn mul(&self, a: &PolyExtElem, b: &PolyExtElem) -> Result<PolyExtElem> {
        self.pmul(a, b)
    }
    fn is_zero(&self, a: &PolyExtElem) -> bool {
        a.is_zero()
    }
    fn unit(&self) -> Option<PolyExtElem> {
        self.one().ok()
    }
    /// The built-in LN operators strictly lower the degree; the residual
    /// nilpotent part of `B` adds at most `dim B` more steps.
    fn nilpotency_bound(&self, a: &PolyExtElem) -> usize {
        a.degree().map_or(0, |d| d + 1) + self.coeff_algebra().dim() + 1
    }
    fn format(&self, a: &PolyExtElem) -> String {
        PolyExtAlgebra::format(self, a)
    }
}

/// A linear operator on the elements of a backend.
pub trait Operator<B: Backend + ?Sized> {
    fn apply(&self, alg: &B, a: &B::Elem) -> Result<B::Elem>;
}

impl Operator<FinDimAlgebra> for QMat {
    fn apply(&self, alg: &FinDimAlgebra, a: &AlgElem) -> Result<AlgElem> {
        if self.rows() != alg.dim() || self.cols() != alg.dim() {
            return Err(Error::DimensionMismatch { expected: alg.dim(), got: self.rows() });
        }
        if a.dim() != alg.dim() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(AlgElem::new(QMat::apply(self, a.coeffs())))
    }
}

impl Operator<PolyExtAlgebra> for PolyOp {
    fn apply(&self, alg: &PolyExtAlgebra, a: &PolyExtElem) -> Result<PolyExtElem> {
        alg.apply_op(self, a)
    }
}

/// Operator given by a closure, for composites such as `I - e^D`.
pub struct FnOp<F>(pub F);

impl<B: Backend + ?Sized, F: Fn(&B::Elem) -> Result<B::Elem>> Operator<B> for FnOp<F> {
    fn apply(&self, _alg: &B, a: &B::Elem) -> Result<B::Elem> {
        (self.0)(a)
    }
}

impl<B: Backend + ?Sized, T: Operator<B> + ?Sized> Operator<B> for &T {
    fn apply(&self, alg: &B, a: &B::Elem) -> Result<B::Elem> {
        (**self).apply(alg, a)
    }
}

/// Matrix of `op` on a finite-dimensional algebra, column `j` = `op(b_j)`.
pub fn operator_matrix<T: Operator<FinDimAlgebra> + ?Sized>(alg: &FinDimAlgebra, op: &T) -> Result<QMat> {
    let cols = (0..alg.dim())
        .map(|j| op.apply(alg, &alg.basis_elem(j)).map(AlgElem::into_coeffs))
        .collect::<Result<Vec<_>>>()?;
    QMat::from_cols(alg.dim(), &cols)
}

/// Matrix of the inner derivation `a -> x a - a x`.
pub fn ad_matrix(alg: &FinDimAlgebra, x: &AlgElem) -> QMat {
    alg.left_mul_matrix(x).sub(&alg.right_mul_matrix(x))
}
