use num_traits::{One, Zero};

use super::{Mat, QMat};
use crate::arith::{Rational, UniPoly};
use crate::error::{Error, Result};

/// Monic polynomial of least degree annihilating `v` under `a`, from the
/// first linear dependency in the Krylov sequence `v, Av, A^2 v, ...`.
pub fn krylov_minimal_polynomial(a: &QMat, v: &[Rational]) -> UniPoly {
    if v.iter().all(Zero::is_zero) {
        return UniPoly::one();
    }
    let n = a.rows();
    let mut krylov: Vec<Vec<Rational>> = vec![v.to_vec()];
    loop {
        let next = a.apply(krylov.last().unwrap());
        let k = Mat::from_cols(n, &krylov).expect("krylov vectors have length n");
        if let Some(c) = k.solve(&next).expect("dimensions agree") {
            let mut coeffs: Vec<Rational> = c.into_iter().map(|x| -x).collect();
            coeffs.push(Rational::one());
            return UniPoly::new(coeffs);
        }
        krylov.push(next);
    }
}

/// Minimal polynomial as the lcm of the Krylov polynomials of the standard
/// basis vectors.
pub fn minimal_polynomial(a: &QMat) -> Result<UniPoly> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let mut m = UniPoly::one();
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        m = m.lcm(&krylov_minimal_polynomial(a, &e));
    }
    Ok(m)
}
