use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{int, rational_roots, Rational, UniPoly};

/// Element `a + b*r` of `Q[t]/(t^2 - D)` with `r^2 = D`. `D` must not be a
/// rational square, so the quotient is a field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt<const D: i64> {
    pub a: Rational,
    pub b: Rational,
}

/// `Q(sqrt 2)`.
pub type Sqrt2 = QuadExt<2>;

impl<const D: i64> QuadExt<D> {
    pub fn new(a: Rational, b: Rational) -> Self {
        debug_assert!(Self::modulus_is_irreducible());
        QuadExt { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        Self::new(a, Rational::zero())
    }

    /// The defining polynomial `t^2 - D`.
    pub fn modulus() -> UniPoly {
        UniPoly::new(vec![-int(D), Rational::zero(), Rational::one()])
    }

    pub fn modulus_is_irreducible() -> bool {
        rational_roots(&Self::modulus()).is_ok_and(|r| r.is_empty())
    }

    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -&self.b }
    }

    /// `a^2 - D b^2`, nonzero for nonzero elements.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - int(D) * &self.b * &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }
}

impl<const D: i64> Zero for QuadExt<D> {
    fn zero() -> Self {
        QuadExt { a: Rational::zero(), b: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<const D: i64> One for QuadExt<D> {
    fn one() -> Self {
        QuadExt { a: Rational::one(), b: Rational::zero() }
    }
}

impl<const D: i64> Add for QuadExt<D> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        QuadExt { a: self.a + o.a, b: self.b + o.b }
    }
}

impl<const D: i64> Sub for QuadExt<D> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        QuadExt { a: self.a - o.a, b: self.b - o.b }
    }
}

impl<const D: i64> Neg for QuadExt<D> {
    type Output = Self;
    fn neg(self) -> Self {
        QuadExt { a: -self.a, b: -self.b }
    }
}

impl<const D: i64> Mul for QuadExt<D> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        QuadExt {
            a: &self.a * &o.a + int(D) * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl<const D: i64> Div for QuadExt<D> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let n = o.norm();
        assert!(!n.is_zero(), "division by zero in quadratic extension");
        let num = self * o.conj();
        QuadExt { a: num.a / &n, b: num.b / n }
    }
}

impl<const D: i64> fmt::Debug for QuadExt<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({D})", self.a, self.b)
    }
}
