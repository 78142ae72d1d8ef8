//! Operator series that terminate on locally nilpotent operators, evaluated
//! one element at a time.

use num_traits::{One, Zero};

use super::backend::{Backend, Operator};
use crate::arith::{binomial, factorial, int, Rational};
use crate::error::{Error, Result};

/// `[a, T a, T^2 a, ...]` up to and excluding the first zero.
pub fn orbit_to_zero<B: Backend + ?Sized, T: Operator<B> + ?Sized>(
    alg: &B,
    op: &T,
    a: &B::Elem,
) -> Result<Vec<B::Elem>> {
    let bound = alg.nilpotency_bound(a);
    let mut out = vec![];
    let mut cur = a.clone();
    while !alg.is_zero(&cur) {
        if out.len() > bound {
            return Err(Error::NotLocallyNilpotent(bound));
        }
        let next = op.apply(alg, &cur)?;
        out.push(cur);
        cur = next;
    }
    Ok(out)
}

/// `sum_{k >= 0} coeff(k) T^k a`.
pub fn power_series<B: Backend + ?Sized, T: Operator<B> + ?Sized>(
    alg: &B,
    op: &T,
    a: &B::Elem,
    coeff: impl Fn(usize) -> Rational,
) -> Result<B::Elem> {
    let orbit = orbit_to_zero(alg, op, a)?;
    Ok(orbit
        .iter()
        .enumerate()
        .fold(alg.zero(), |acc, (k, x)| alg.add(&acc, &alg.scale(x, &coeff(k)))))
}

/// `e^D (a) = sum D^k a / k!`.
pub fn exp_map<B: Backend + ?Sized, T: Operator<B> + ?Sized>(alg: &B, d: &T, a: &B::Elem) -> Result<B::Elem> {
    power_series(alg, d, a, |k| Rational::one() / factorial(k))
}

/// `Xi(D)(a) = a - e^D(a)`.
pub fn xi_map<B: Backend + ?Sized, T: Operator<B> + ?Sized>(alg: &B, d: &T, a: &B::Elem) -> Result<B::Elem> {
    power_series(alg, d, a, |k| if k == 0 { Rational::zero() } else { -(Rational::one() / factorial(k)) })
}

/// `Lambda(delta)(a) = ln(I - delta)(a) = -sum_{k >= 1} delta^k a / k`.
pub fn lambda_map<B: Backend + ?Sized, T: Operator<B> + ?Sized>(alg: &B, delta: &T, a: &B::Elem) -> Result<B::Elem> {
    power_series(alg, delta, a, |k| if k == 0 { Rational::zero() } else { -(Rational::one() / int(k as i64)) })
}

/// `G(a) = sum_{k >= 1} D^k a / (k+1)!`, so that `h(D) = -(I + G)`.
fn g_map<B: Backend + ?Sized, T: Operator<B> + ?Sized>(alg: &B, d: &T, a: &B::Elem) -> Result<B::Elem> {
    power_series(alg, d, a, |k| if k == 0 { Rational::zero() } else { Rational::one() / factorial(k + 1) })
}

/// `h(D)(a) = -sum_{k >= 0} D^k a / (k+1)!`, the factor in `I - e^D = D h(D)`.
pub fn h_map<B: Backend + ?Sized, T: Operator<B> + ?Sized>(alg: &B, d: &T, a: &B::Elem) -> Result<B::Elem> {
    power_series(alg, d, a, |k| -(Rational::one() / factorial(k + 1)))
}

/// `h(D)^{-1}(a) = -(I + G)^{-1} a = sum_{m >= 0} (-1)^{m+1} G^m a`, a finite
/// sum because `G` is locally nilpotent with `D`.
pub fn h_inverse<B: Backend + ?Sized, T: Operator<B> + ?Sized>(alg: &B, d: &T, a: &B::Elem) -> Result<B::Elem> {
    let g = super::backend::FnOp(|x: &B::Elem| g_map(alg, d, x));
    power_series(alg, &g, a, |m| if m % 2 == 0 { -Rational::one() } else { Rational::one() })
}

/// Both sides of `delta^n(ab) = sum_i C(n,i) delta^i(a) delta^{n-i}(I - delta)^i(b)`.
pub fn e_leibniz_sides<B: Backend + ?Sized, T: Operator<B> + ?Sized>(
    alg: &B,
    delta: &T,
    a: &B::Elem,
    b: &B::Elem,
    n: usize,
) -> Result<(B::Elem, B::Elem)> {
    let pow = |x: &B::Elem, k: usize| -> Result<B::Elem> {
        (0..k).try_fold(x.clone(), |acc, _| delta.apply(alg, &acc))
    };
    let phi = |x: &B::Elem| -> Result<B::Elem> { Ok(alg.sub(x, &delta.apply(alg, x)?)) };
    let lhs = pow(&alg.mul(a, b)?, n)?;
    let mut rhs = alg.zero();
    let mut da = a.clone();
    let mut phib = b.clone();
    for i in 0..=n {
        let term = alg.mul(&da, &pow(&phib, n - i)?)?;
        rhs = alg.add(&rhs, &alg.scale(&term, &binomial(n, i)));
        da = delta.apply(alg, &da)?;
        phib = phi(&phib)?;
    }
    Ok((lhs, rhs))
}

/// Checks the n-fold E-Leibniz identity after confirming the one-step law
/// on `(a, b)`.
pub fn e_leibniz_check<B: Backend + ?Sized, T: Operator<B> + ?Sized>(
    alg: &B,
    delta: &T,
    a: &B::Elem,
    b: &B::Elem,
    n: usize,
) -> Result<bool> {
    let (l1, r1) = e_leibniz_sides(alg, delta, a, b, 1)?;
    if l1 != r1 {
        return Err(Error::NotEDerivation);
    }
    let (l, r) = e_leibniz_sides(alg, delta, a, b, n)?;
    Ok(l == r)
}
