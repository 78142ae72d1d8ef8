use super::{minimal_polynomial, Mat, QMat};
use crate::arith::{squarefree_part, Rational, Sqrt2, UniPoly};
use crate::error::{Error, Result};

/// Additive Jordan–Chevalley decomposition `A = S + N` over Q.
#[derive(Clone, Debug)]
pub struct JCDecomp {
    pub semisimple: QMat,
    pub nilpotent: QMat,
    /// `S = witness(A)`.
    pub witness: UniPoly,
    /// Smallest `k` with `N^k = 0`; zero when `N` itself is zero.
    pub nilpotency_index: usize,
    pub iterations: usize,
}

/// Newton iteration `x <- x - f(x) / f'(x)` on `f` = the squarefree part of
/// the minimal polynomial, carried out on polynomials in `A` modulo the
/// minimal polynomial.
pub fn jordan_chevalley(a: &QMat) -> Result<JCDecomp> {
    let m = minimal_polynomial(a)?;
    let f = squarefree_part(&m)?;
    let df = f.derivative();
    let deg = m.degree().unwrap_or(0).max(1);
    let bound = (usize::BITS - (deg - 1).leading_zeros()) as usize + 2;

    let mut w = UniPoly::t().rem(&m);
    let mut iterations = 0;
    loop {
        let fw = f.compose_mod(&w, &m);
        if fw.is_zero() {
            break;
        }
        if iterations >= bound {
            return Err(Error::IterationBound(bound));
        }
        let inv = df
            .compose_mod(&w, &m)
            .inverse_mod(&m)
            .ok_or(Error::IterationBound(bound))?;
        w = (&w - &(&fw * &inv)).rem(&m);
        iterations += 1;
    }

    let semisimple = a.eval_poly(&w);
    let nilpotent = a.sub(&semisimple);
    let nilpotency_index = if nilpotent.is_zero() {
        0
    } else {
        nilpotent.nilpotency_index().ok_or(Error::NotNilpotent)?
    };
    Ok(JCDecomp { semisimple, nilpotent, witness: w, nilpotency_index, iterations })
}

/// `(F - G)^{-1} = sum_{k < nu} G^k F^{-k-1}` for invertible `F` commuting
/// with nilpotent `G`.
pub fn invert_shifted(f: &QMat, g: &QMat) -> Result<QMat> {
    if !f.is_square() {
        return Err(Error::NotSquare { rows: f.rows(), cols: f.cols() });
    }
    if g.rows() != f.rows() || g.cols() != f.cols() {
        return Err(Error::DimensionMismatch { expected: f.rows(), got: g.rows() });
    }
    if f.mul(g) != g.mul(f) {
        return Err(Error::NotCommuting);
    }
    let nu = g.nilpotency_index().ok_or(Error::NotNilpotent)?;
    let f_inv = f.inverse().ok_or(Error::NotInvertible)?;
    let n = f.rows();
    let mut term = f_inv.clone();
    let mut sum = QMat::zeros(n, n);
    for _ in 0..nu {
        sum = sum.add(&term);
        term = g.mul(&term).mul(&f_inv);
    }
    if f.sub(g).mul(&sum) != QMat::identity(n) {
        return Err(Error::CertificateRejected("(F - G) * inverse != I".into()));
    }
    Ok(sum)
}

/// Solves `A x = y` over Q and over Q(sqrt 2) separately and reports whether
/// the two solvability verdicts agree.
pub fn solvability_transfer_check(a: &QMat, y: &[Rational]) -> Result<bool> {
    let over_q = a.solve(y)?;
    let lifted: Mat<Sqrt2> = a.map(|x| Sqrt2::from_rational(x.clone()));
    let y_ext: Vec<Sqrt2> = y.iter().map(|x| Sqrt2::from_rational(x.clone())).collect();
    let over_ext = lifted.solve(&y_ext)?;
    if let Some(x) = &over_ext {
        if lifted.apply(x) != y_ext {
            return Err(Error::CertificateRejected("extension solution does not solve".into()));
        }
    }
    Ok(over_q.is_some() == over_ext.is_some())
}

impl JCDecomp {
    /// Re-checks every structural property of the decomposition against `a`.
    pub fn verify(&self, a: &QMat) -> std::result::Result<(), String> {
        if self.semisimple.add(&self.nilpotent) != *a {
            return Err("S + N != A".into());
        }
        if self.semisimple.mul(&self.nilpotent) != self.nilpotent.mul(&self.semisimple) {
            return Err("S and N do not commute".into());
        }
        let k = self.nilpotency_index;
        if k == 0 {
            if !self.nilpotent.is_zero() {
                return Err("index 0 but N != 0".into());
            }
        } else if !self.nilpotent.pow(k).is_zero() || self.nilpotent.pow(k - 1).is_zero() {
            return Err(format!("N does not have nilpotency index {k}"));
        }
        let ms = minimal_polynomial(&self.semisimple).map_err(|e| e.to_string())?;
        if crate::arith::poly_gcd(&ms, &ms.derivative()) != UniPoly::one() {
            return Err(format!("minimal polynomial {ms} of S is not squarefree"));
        }
        if a.eval_poly(&self.witness) != self.semisimple {
            return Err("witness(A) != S".into());
        }
        Ok(())
    }
}
