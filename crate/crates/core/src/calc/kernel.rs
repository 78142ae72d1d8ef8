//! Kernel projections and the preimage constructions built on them, for an
//! LN derivation `D` with `D(s) = e`, `D(e) = 0`, `e^2 = e`, `s` in `eAe`,
//! and the convention `s^0 = e`.

use num_traits::{One, Zero};

use super::backend::{operator_matrix, Backend, FnOp, Operator};
use super::certificate::{CertBackend, Certificate, Construction};
use super::op::LinOp;
use super::series::{h_inverse, lambda_map, orbit_to_zero};
use crate::arith::{factorial, int, Rational};
use crate::algebra::{AlgElem, FinDimAlgebra};
use crate::error::{Error, Result};
use crate::polyext::{PolyExtAlgebra, PolyExtElem, PolyOp};

/// `Left` keeps `a` to the left of the powers of `s` (the projection
/// `sum (-1)^i/i! D^i(a) s^i`); `Right` puts it on the right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjSide {
    Left,
    Right,
}

/// Data `(s, e)` after the preconditions have been checked.
#[derive(Clone, Debug)]
pub struct KernelData<E> {
    pub s: E,
    pub e: E,
}

impl<E: Clone + PartialEq> KernelData<E> {
    pub fn new<B, T>(alg: &B, d: &T, s: E, e: E) -> Result<Self>
    where
        B: Backend<Elem = E> + ?Sized,
        T: Operator<B> + ?Sized,
    {
        let fail = |m: &str| Err(Error::PreconditionFailed(m.into()));
        if d.apply(alg, &s)? != e {
            return fail("D(s) != e");
        }
        if !alg.is_zero(&d.apply(alg, &e)?) {
            return fail("D(e) != 0");
        }
        if alg.mul(&e, &e)? != e {
            return fail("e^2 != e");
        }
        if alg.mul(&e, &s)? != s || alg.mul(&s, &e)? != s {
            return fail("s is not in eAe");
        }
        Ok(KernelData { s, e })
    }

    /// `s^k` with `s^0 = e`.
    pub fn s_pow<B: Backend<Elem = E> + ?Sized>(&self, alg: &B, k: usize) -> Result<E> {
        (0..k).try_fold(self.e.clone(), |acc, _| alg.mul(&acc, &self.s))
    }
}

fn sum<B: Backend + ?Sized>(alg: &B, terms: impl IntoIterator<Item = Result<B::Elem>>) -> Result<B::Elem> {
    terms.into_iter().try_fold(alg.zero(), |acc, t| Ok(alg.add(&acc, &t?)))
}

/// `phi_{-s}(a)` (`Left`) or `psi_{-s}(a)` (`Right`), checked to lie in ker D.
pub fn kernel_projection<B: Backend + ?Sized, T: Operator<B> + ?Sized>(
    alg: &B,
    d: &T,
    k: &KernelData<B::Elem>,
    a: &B::Elem,
    side: ProjSide,
) -> Result<B::Elem> {
    let orbit = orbit_to_zero(alg, d, a)?;
    let out = sum(
        alg,
        orbit.iter().enumerate().map(|(i, di)| {
            let c = int(if i % 2 == 0 { 1 } else { -1 }) / factorial(i);
            let si = k.s_pow(alg, i)?;
            let prod = match side {
                ProjSide::Left => alg.mul(di, &si)?,
                ProjSide::Right => alg.mul(&si, di)?,
            };
            Ok(alg.scale(&prod, &c))
        }),
    )?;
    if !alg.is_zero(&d.apply(alg, &out)?) {
        return Err(Error::KernelCheckFailed);
    }
    Ok(out)
}

/// `sum_j 1/j! phi_{-s}(D^j a) s^j` (`Left`, equals `a e`) or
/// `sum_j 1/j! s^j psi_{-s}(D^j a)` (`Right`, equals `e a`).
pub fn reconstruct<B: Backend + ?Sized, T: Operator<B> + ?Sized>(
    alg: &B,
    d: &T,
    k: &KernelData<B::Elem>,
    a: &B::Elem,
    side: ProjSide,
) -> Result<B::Elem> {
    let orbit = orbit_to_zero(alg, d, a)?;
    sum(
        alg,
        orbit.iter().enumerate().map(|(j, dj)| {
            let p = kernel_projection(alg, d, k, dj, side)?;
            let sj = k.s_pow(alg, j)?;
            let prod = match side {
                ProjSide::Left => alg.mul(&p, &sj)?,
                ProjSide::Right => alg.mul(&sj, &p)?,
            };
            Ok(alg.scale(&prod, &(Rational::one() / factorial(j))))
        }),
    )
}

fn checked<B: CertBackend + ?Sized>(
    alg: &B,
    op: &LinOp,
    applied: B::Elem,
    target: &B::Elem,
    preimage: &B::Elem,
    construction: Construction,
) -> Result<Certificate> {
    if applied != *target {
        return Err(Error::CertificateRejected(format!(
            "operator maps the preimage to {}, not {}",
            alg.format(&applied),
            alg.format(target)
        )));
    }
    Ok(Certificate::new(alg, op.to_json(), target, preimage, construction))
}

/// One-sided preimage certificate. The side names where `e` sits in the
/// target: `Right` certifies `a e`, `Left` certifies `e a`.
pub fn preimage_one_sided<B>(
    alg: &B,
    d: &LinOp,
    k: &KernelData<B::Elem>,
    a: &B::Elem,
    e_side: ProjSide,
) -> Result<Certificate>
where
    B: CertBackend + ?Sized,
    LinOp: Operator<B>,
{
    let orbit = orbit_to_zero(alg, d, a)?;
    let (proj, target, construction) = match e_side {
        ProjSide::Right => (ProjSide::Left, alg.mul(a, &k.e)?, Construction::RightOneSided),
        ProjSide::Left => (ProjSide::Right, alg.mul(&k.e, a)?, Construction::LeftOneSided),
    };
    let x = sum(
        alg,
        orbit.iter().enumerate().map(|(j, dj)| {
            let p = kernel_projection(alg, d, k, dj, proj)?;
            let sj1 = k.s_pow(alg, j + 1)?;
            let prod = match proj {
                ProjSide::Left => alg.mul(&p, &sj1)?,
                ProjSide::Right => alg.mul(&sj1, &p)?,
            };
            Ok(alg.scale(&prod, &(Rational::one() / factorial(j + 1))))
        }),
    )?;
    let applied = d.apply(alg, &x)?;
    Ok(checked(alg, d, applied, &target, &x, construction)?
        .with_meta_elem(alg, "a", a)
        .with_meta_elem(alg, "s", &k.s)
        .with_meta_elem(alg, "e", &k.e)
        .with_meta("terms", orbit.len()))
}

/// Certificate for `a e b` from
/// `sum_{i,j} 1/(i! j!) phi_{-s}(D^i a) s^{i+j+1}/(i+j+1) psi_{-s}(D^j b)`.
pub fn preimage_two_sided<B>(
    alg: &B,
    d: &LinOp,
    k: &KernelData<B::Elem>,
    a: &B::Elem,
    b: &B::Elem,
) -> Result<Certificate>
where
    B: CertBackend + ?Sized,
    LinOp: Operator<B>,
{
    let phis = orbit_to_zero(alg, d, a)?
        .iter()
        .map(|x| kernel_projection(alg, d, k, x, ProjSide::Left))
        .collect::<Result<Vec<_>>>()?;
    let psis = orbit_to_zero(alg, d, b)?
        .iter()
        .map(|x| kernel_projection(alg, d, k, x, ProjSide::Right))
        .collect::<Result<Vec<_>>>()?;
    let mut x = alg.zero();
    for (i, p) in phis.iter().enumerate() {
        for (j, q) in psis.iter().enumerate() {
            let c = Rational::one() / (factorial(i) * factorial(j) * int((i + j + 1) as i64));
            let term = alg.mul(&alg.mul(p, &k.s_pow(alg, i + j + 1)?)?, q)?;
            x = alg.add(&x, &alg.scale(&term, &c));
        }
    }
    let target = alg.mul(&alg.mul(a, &k.e)?, b)?;
    let applied = d.apply(alg, &x)?;
    Ok(checked(alg, d, applied, &target, &x, Construction::TwoSided)?
        .with_meta_elem(alg, "a", a)
        .with_meta_elem(alg, "b", b)
        .with_meta_elem(alg, "s", &k.s)
        .with_meta_elem(alg, "e", &k.e))
}

/// Certificate `delta(x) = v` for an LN E-derivation `delta`: with
/// `D = ln(I - delta)`, `x` is a D-preimage of `h(D)^{-1}(v)`, supplied by
/// `d_solver` and checked against `D` before use.
pub fn ederiv_preimage<B, S>(alg: &B, delta: &LinOp, v: &B::Elem, d_solver: S) -> Result<Certificate>
where
    B: CertBackend + ?Sized,
    LinOp: Operator<B>,
    S: Fn(&B::Elem) -> Result<Option<B::Elem>>,
{
    let d = FnOp(|x: &B::Elem| lambda_map(alg, delta, x));
    let w = h_inverse(alg, &d, v)?;
    let x = d_solver(&w)?.ok_or_else(|| Error::NotPreimage(format!("{} is not in the image of D", alg.format(&w))))?;
    if d.apply(alg, &x)? != w {
        return Err(Error::NotPreimage("solver output is not a D-preimage".into()));
    }
    let applied = delta.apply(alg, &x)?;
    Ok(checked(alg, delta, applied, v, &x, Construction::EderivViaH)?.with_meta_elem(alg, "h_inverse_target", &w))
}

/// `ederiv_preimage` on a finite-dimensional algebra, solving against the
/// matrix of `D = ln(I - delta)`.
pub fn ederiv_preimage_findim(alg: &FinDimAlgebra, delta: &LinOp, v: &AlgElem) -> Result<Certificate> {
    let dm = operator_matrix(alg, &FnOp(|x: &AlgElem| lambda_map(alg, delta, x)))?;
    ederiv_preimage(alg, delta, v, |w: &AlgElem| Ok(dm.solve(w.coeffs())?.map(AlgElem::new)))
}

/// `ederiv_preimage` for `I - shift_c` on `B[t]`, where `ln(shift_c) = c d/dt`.
pub fn ederiv_preimage_poly(alg: &PolyExtAlgebra, delta: &PolyOp, v: &PolyExtElem) -> Result<Certificate> {
    let PolyOp::IMinusShift(c) = delta else {
        return Err(Error::UnsupportedOperator(format!("{delta} is not of the form I-shift(c)")));
    };
    let solver = |w: &PolyExtElem| -> Result<Option<PolyExtElem>> {
        if c.is_zero() {
            return Ok(w.is_zero().then(PolyExtElem::zero));
        }
        Ok(alg.solve_slice(&PolyOp::Derivative, w)?.map(|x| x.scale(&(Rational::one() / c))))
    };
    ederiv_preimage(alg, &LinOp::Poly(delta.clone()), v, solver)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rationals, upper_triangular_2};
    use crate::arith::frac;
    use crate::calc::backend::ad_matrix;
    use crate::calc::certificate::{verify_certificate, Verdict};
    use crate::calc::series::xi_map;

    fn qt() -> PolyExtAlgebra {
        PolyExtAlgebra::with_default_cap(rationals())
    }

    fn t2t() -> PolyExtAlgebra {
        PolyExtAlgebra::with_default_cap(upper_triangular_2())
    }

    fn q(alg: &PolyExtAlgebra, c: &[i64]) -> PolyExtElem {
        alg.elem(c.iter().map(|&x| AlgElem::from_ints(&[x])).collect()).unwrap()
    }

    const D: LinOp = LinOp::Poly(PolyOp::Derivative);

    fn qt_data(a: &PolyExtAlgebra) -> KernelData<PolyExtElem> {
        KernelData::new(a, &D, q(a, &[0, 1]), q(a, &[1])).unwrap()
    }

    fn t2_data(a: &PolyExtAlgebra) -> KernelData<PolyExtElem> {
        let e11 = a.coeff_algebra().basis_elem(0);
        KernelData::new(a, &D, a.monomial(&e11, 1).unwrap(), a.constant(&e11).unwrap()).unwrap()
    }

    #[test]
    fn projection_examples() {
        let a = qt();
        let k = qt_data(&a);
        assert_eq!(kernel_projection(&a, &D, &k, &q(&a, &[3, 0, 1]), ProjSide::Left).unwrap(), q(&a, &[3]));
        assert_eq!(kernel_projection(&a, &D, &k, &q(&a, &[1]), ProjSide::Left).unwrap(), q(&a, &[1]));

        let b = t2t();
        let k = t2_data(&b);
        let e12t = b.monomial(&b.coeff_algebra().basis_elem(1), 1).unwrap();
        assert!(kernel_projection(&b, &D, &k, &e12t, ProjSide::Left).unwrap().is_zero());
    }

    #[test]
    fn preconditions_are_reported() {
        let a = qt();
        let r = KernelData::new(&a, &D, q(&a, &[0, 2]), q(&a, &[1]));
        assert!(matches!(r, Err(Error::PreconditionFailed(m)) if m.contains("D(s)")));
        let b = t2t();
        let alg = b.coeff_algebra();
        let s = b.monomial(alg.unit().unwrap(), 1).unwrap();
        let r = KernelData::new(&b, &D, s, b.constant(&alg.basis_elem(0)).unwrap());
        assert!(matches!(r, Err(Error::PreconditionFailed(m)) if m.contains("D(s)")));
    }

    #[test]
    fn one_sided_examples() {
        let a = qt();
        let k = qt_data(&a);
        let c = preimage_one_sided(&a, &D, &k, &q(&a, &[0, 1]), ProjSide::Right).unwrap();
        assert_eq!(c.preimage(&a).unwrap(), a.monomial(&AlgElem::new(vec![frac(1, 2)]), 2).unwrap());
        assert_eq!(c.target(&a).unwrap(), q(&a, &[0, 1]));
        let c = preimage_one_sided(&a, &D, &k, &k.e, ProjSide::Right).unwrap();
        assert_eq!(c.preimage(&a).unwrap(), k.s);

        let b = t2t();
        let k = t2_data(&b);
        let e12 = b.coeff_algebra().basis_elem(1);
        let c = preimage_one_sided(&b, &D, &k, &b.monomial(&e12, 1).unwrap(), ProjSide::Left).unwrap();
        assert_eq!(c.target(&b).unwrap(), b.monomial(&e12, 1).unwrap());
        assert_eq!(c.preimage(&b).unwrap(), b.monomial(&e12.scale(&frac(1, 2)), 2).unwrap());
        assert_eq!(verify_certificate(&c).unwrap(), Verdict::Verified);
    }

    #[test]
    fn two_sided_examples() {
        let a = qt();
        let k = qt_data(&a);
        let c = preimage_two_sided(&a, &D, &k, &k.e, &k.e).unwrap();
        assert_eq!(c.preimage(&a).unwrap(), k.s);
        let c = preimage_two_sided(&a, &D, &k, &q(&a, &[0, 1]), &q(&a, &[1])).unwrap();
        assert_eq!(c.preimage(&a).unwrap(), a.monomial(&AlgElem::new(vec![frac(1, 2)]), 2).unwrap());

        let b = t2t();
        let k = t2_data(&b);
        let alg = b.coeff_algebra();
        let e11 = b.constant(&alg.basis_elem(0)).unwrap();
        let e12 = b.constant(&alg.basis_elem(1)).unwrap();
        let c = preimage_two_sided(&b, &D, &k, &e11, &e12).unwrap();
        assert_eq!(c.target(&b).unwrap(), e12);
        assert_eq!(c.preimage(&b).unwrap(), b.monomial(&alg.basis_elem(1), 1).unwrap());
    }

    #[test]
    fn ederiv_examples() {
        let a = qt();
        let delta = LinOp::Poly(PolyOp::IMinusShift(int(1)));
        let solver = |w: &PolyExtElem| a.solve_slice(&PolyOp::Derivative, w);
        let c = ederiv_preimage(&a, &delta, &q(&a, &[1]), solver).unwrap();
        assert_eq!(c.preimage(&a).unwrap(), q(&a, &[0, -1]));
        let c = ederiv_preimage(&a, &delta, &PolyExtElem::zero(), solver).unwrap();
        assert!(c.preimage(&a).unwrap().is_zero());

        let t2 = upper_triangular_2();
        let ad = ad_matrix(&t2, &t2.basis_elem(1));
        let xi = operator_matrix(&t2, &FnOp(|x: &AlgElem| xi_map(&t2, &ad, x))).unwrap();
        let delta = LinOp::matrix("xi(ad(E12))", xi);
        let dm = operator_matrix(&t2, &FnOp(|x: &AlgElem| lambda_map(&t2, &delta, x))).unwrap();
        assert_eq!(dm, ad);
        let solver = |w: &AlgElem| Ok(dm.solve(w.coeffs())?.map(AlgElem::new));
        let c = ederiv_preimage(&t2, &delta, &t2.basis_elem(1), solver).unwrap();
        assert_eq!(c.target(&t2).unwrap(), t2.basis_elem(1));
        assert_eq!(verify_certificate(&c).unwrap(), Verdict::Verified);
        let c = ederiv_preimage_findim(&t2, &delta, &t2.basis_elem(1)).unwrap();
        assert_eq!(verify_certificate(&c).unwrap(), Verdict::Verified);

        let c = ederiv_preimage_poly(&a, &PolyOp::IMinusShift(int(2)), &q(&a, &[1])).unwrap();
        assert_eq!(c.preimage(&a).unwrap(), q(&a, &[0, -1]).scale(&frac(1, 2)));
        assert!(ederiv_preimage_poly(&a, &PolyOp::IMinusShift(int(0)), &q(&a, &[1])).is_err());
        assert!(ederiv_preimage_poly(&a, &PolyOp::Derivative, &q(&a, &[1])).is_err());
    }

    #[test]
    fn tampering_is_detected() {
        let a = qt();
        let k = qt_data(&a);
        let mut c = preimage_one_sided(&a, &D, &k, &q(&a, &[1, 2, 3]), ProjSide::Right).unwrap();
        c.preimage = a.elem_to_json(&q(&a, &[0, 1, 1, 2]));
        assert!(matches!(verify_certificate(&c).unwrap(), Verdict::Mismatch { .. }));
    }
}
