//! The unit orbit of an endomorphism and the criterion "1 in im delta implies
//! delta is surjective".

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use super::backend::Backend;
use super::certificate::{Certificate, Construction};
use super::classify::classify_matrix;
use super::kernel::{preimage_one_sided, KernelData, ProjSide};
use super::op::LinOp;
use crate::algebra::{AlgElem, FinDimAlgebra, Side};
use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::linalg::{invert_shifted, QMat};
use crate::polyext::{PolyExtAlgebra, PolyExtElem, PolyOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `e_d = 0`, so `phi` is nilpotent.
    Nilpotent,
    Stable,
}

#[derive(Clone, Debug)]
pub struct UnitOrbit {
    pub d: usize,
    /// `orbit[i] = phi^i(1)` for `i = 0..=d`.
    pub orbit: Vec<AlgElem>,
    pub branch: Branch,
}

impl UnitOrbit {
    pub fn e_d(&self) -> &AlgElem {
        &self.orbit[self.d]
    }
}

/// Iterates `e_i = phi^i(1)` until `e_i = 0` or `e_{i+1} = e_i`, then checks
/// `e_i e_j = e_j e_i = e_j` for `i <= j <= d`.
pub fn unit_orbit(alg: &FinDimAlgebra, phi: &QMat) -> Result<UnitOrbit> {
    let unit = alg.unit().ok_or(Error::NotUnital)?.clone();
    if !classify_matrix(alg, phi)?.is_endomorphism {
        return Err(Error::NotEndomorphism);
    }
    let cap = alg.dim() + 1;
    let mut orbit = vec![unit];
    let d = loop {
        let i = orbit.len();
        if i > cap {
            return Err(Error::NoStabilization(cap));
        }
        let next = AlgElem::new(phi.apply(orbit[i - 1].coeffs()));
        let stop_zero = next.is_zero();
        orbit.push(next);
        if stop_zero {
            break i;
        }
        if i >= 2 && orbit[i] == orbit[i - 1] {
            orbit.pop();
            break i - 1;
        }
    };
    // The loop may stop at i with e_i == e_{i-1}; make sure e_{d+1} == e_d or e_d == 0.
    let e_d = orbit[d].clone();
    let next = AlgElem::new(phi.apply(e_d.coeffs()));
    if !e_d.is_zero() && next != e_d {
        return Err(Error::NoStabilization(cap));
    }
    for i in 0..=d {
        for j in i..=d {
            let (ei, ej) = (&orbit[i], &orbit[j]);
            if alg.mul(ei, ej)? != *ej || alg.mul(ej, ei)? != *ej {
                return Err(Error::NoStabilization(cap));
            }
        }
    }
    let branch = if e_d.is_zero() { Branch::Nilpotent } else { Branch::Stable };
    Ok(UnitOrbit { d, orbit, branch })
}

/// Outcome of the surjectivity analysis.
#[derive(Clone, Debug)]
pub enum Surjectivity<E> {
    /// `1` is not in the image.
    NotInImage,
    /// `delta(u) = 1`, with supporting data in `report`.
    Surjective { u: E, report: Value, certificate: Certificate },
}

/// Finite-dimensional analysis. For an E-derivation `delta = I - phi` the
/// constructive chain from the unit orbit is rebuilt and checked; for a
/// derivation only the rank statement applies.
pub fn surjectivity_findim(alg: &FinDimAlgebra, delta: &LinOp) -> Result<Surjectivity<AlgElem>> {
    let n = alg.dim();
    let unit = alg.unit().ok_or(Error::NotUnital)?.clone();
    let m = delta.as_matrix()?;
    let Some(u) = m.solve(unit.coeffs())? else {
        return Ok(Surjectivity::NotInImage);
    };
    let u = AlgElem::new(u);
    let rank = m.rank();
    if rank != n {
        return Err(Error::RankMismatch { rank, dim: n });
    }
    let class = classify_matrix(alg, m)?;
    let mut report = json!({ "rank": rank, "dim": n, "u": alg.format(&u) });
    if class.is_ederivation {
        let phi = QMat::identity(n).sub(m);
        let orbit = unit_orbit(alg, &phi)?;
        let d = orbit.d;
        let e_d = orbit.e_d().clone();
        report["d"] = json!(d);
        report["e_d"] = json!(alg.format(&e_d));
        report["branch"] = json!(orbit.branch);
        let delta_d = QMat::identity(n).sub(&phi.pow(d));
        let y = alg.mul(&e_d, &u)?.scale(&(Rational::one() / int(d as i64)));
        if AlgElem::new(delta_d.apply(y.coeffs())) != e_d {
            return Err(Error::CertificateRejected("delta_d(e_d u / d) != e_d".into()));
        }
        let mut pieces = alg.one_sided_span(&e_d, Side::Right);
        pieces.extend(alg.one_sided_span(&(&unit - &e_d), Side::Right));
        if !alg.spans_algebra(&pieces) {
            return Err(Error::CertificateRejected("e_d A + (1 - e_d) A != A".into()));
        }
        report["delta_d_preimage_of_e_d"] = json!(alg.format(&y));
        if orbit.branch == Branch::Nilpotent {
            let inv = invert_shifted(&QMat::identity(n), &phi)?;
            if m.mul(&inv) != QMat::identity(n) {
                return Err(Error::CertificateRejected("series inverse of I - phi is wrong".into()));
            }
            report["inverse"] = json!(inv.to_strings());
        }
    }
    let certificate = Certificate::new(alg, delta.to_json(), &unit, &u, Construction::UnitSurjectivity);
    Ok(Surjectivity::Surjective { u, report, certificate })
}

/// Preimage generator for a surjective built-in operator on `B[t]`.
#[derive(Clone, Debug)]
pub struct PolyGenerator {
    op: PolyOp,
    /// `(s, e = 1)` for the derivation route.
    kernel: Option<KernelData<PolyExtElem>>,
}

impl PolyGenerator {
    pub fn preimage(&self, alg: &PolyExtAlgebra, target: &PolyExtElem) -> Result<PolyExtElem> {
        match (&self.op, &self.kernel) {
            (PolyOp::Derivative, Some(k)) => {
                let cert = preimage_one_sided(alg, &LinOp::Poly(PolyOp::Derivative), k, target, ProjSide::Right)?;
                cert.preimage(alg)
            }
            (PolyOp::Identity, _) => Ok(target.clone()),
            (op, _) => alg
                .solve_slice(op, target)?
                .ok_or_else(|| Error::NotPreimage(alg.format(target))),
        }
    }
}

/// `B[t]` analysis: `I - shift_c` (c != 0) by back-substitution, `d/dt`
/// through the one-sided construction with `e = 1`.
pub fn surjectivity_poly(alg: &PolyExtAlgebra, op: &PolyOp) -> Result<Surjectivity<PolyExtElem>> {
    let one = alg.one()?;
    let gen = match op {
        PolyOp::IMinusShift(c) if c.is_zero() => return Ok(Surjectivity::NotInImage),
        PolyOp::Shift(_) => {
            return Err(Error::UnsupportedOperator(format!("{op} is neither a derivation nor an E-derivation")))
        }
        _ => poly_generator(alg, op)?,
    };
    let u = gen.preimage(alg, &one)?;
    if alg.apply_op(op, &u)? != one {
        return Err(Error::CertificateRejected("generator output does not map to 1".into()));
    }
    let report = json!({
        "u": alg.format(&u),
        "generator": match op {
            PolyOp::Derivative => "one-sided construction with e = 1",
            PolyOp::Identity => "identity",
            _ => "degreewise back-substitution",
        },
    });
    let certificate = Certificate::new(alg, LinOp::Poly(op.clone()).to_json(), &one, &u, Construction::UnitSurjectivity);
    Ok(Surjectivity::Surjective { u, report, certificate })
}

/// Generator for `op` once surjectivity is known.
pub fn poly_generator(alg: &PolyExtAlgebra, op: &PolyOp) -> Result<PolyGenerator> {
    match op {
        PolyOp::Derivative => {
            let one = alg.one()?;
            let s = alg.solve_slice(op, &one)?.expect("antiderivative exists");
            let s = alg.normalize_s(&one, &s)?;
            let k = KernelData::new(alg, &LinOp::Poly(PolyOp::Derivative), s, one)?;
            Ok(PolyGenerator { op: op.clone(), kernel: Some(k) })
        }
        PolyOp::IMinusShift(c) if !c.is_zero() => Ok(PolyGenerator { op: op.clone(), kernel: None }),
        PolyOp::Identity => Ok(PolyGenerator { op: op.clone(), kernel: None }),
        _ => Err(Error::UnsupportedOperator(op.to_string())),
    }
}

impl<E> Surjectivity<E> {
    pub fn is_surjective(&self) -> bool {
        matches!(self, Surjectivity::Surjective { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_numbers, product_of_q, rationals, upper_triangular_2};

    #[test]
    fn orbit_examples() {
        let qq = product_of_q(2);
        let proj = QMat::from_ints(&[&[1, 0], &[0, 0]]);
        let o = unit_orbit(&qq, &proj).unwrap();
        assert_eq!((o.d, o.e_d().clone(), o.branch), (1, AlgElem::from_ints(&[1, 0]), Branch::Stable));
        let o = unit_orbit(&qq, &QMat::identity(2)).unwrap();
        assert_eq!((o.d, o.e_d().clone()), (1, AlgElem::from_ints(&[1, 1])));
        let o = unit_orbit(&qq, &QMat::zeros(2, 2)).unwrap();
        assert_eq!((o.d, o.branch), (1, Branch::Nilpotent));
        assert!(o.e_d().is_zero());
        let swap = QMat::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(unit_orbit(&qq, &swap).unwrap().d, 1);
        let not_endo = QMat::from_ints(&[&[2, 0], &[0, 1]]);
        assert!(matches!(unit_orbit(&qq, &not_endo), Err(Error::NotEndomorphism)));
    }

    /// Oracle: on T2, phi = "keep the E11 entry" sends 1 to E11 and fixes it.
    #[test]
    fn orbit_with_non_unital_endomorphism() {
        let t2 = upper_triangular_2();
        let phi = QMat::from_ints(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        let o = unit_orbit(&t2, &phi).unwrap();
        assert_eq!(o.orbit, vec![AlgElem::from_ints(&[1, 0, 1]), AlgElem::from_ints(&[1, 0, 0])]);
    }

    #[test]
    fn surjectivity_examples() {
        let d = dual_numbers();
        let delta = LinOp::matrix("I", QMat::identity(2));
        match surjectivity_findim(&d, &delta).unwrap() {
            Surjectivity::Surjective { report, .. } => {
                assert_eq!(report["branch"], "nilpotent");
                assert_eq!(report["d"], 1);
            }
            other => panic!("{other:?}"),
        }
        let phi = QMat::from_ints(&[&[1, 0], &[0, 2]]);
        let delta = LinOp::matrix("I-endo", QMat::identity(2).sub(&phi));
        assert!(matches!(surjectivity_findim(&d, &delta).unwrap(), Surjectivity::NotInImage));

        let qt = PolyExtAlgebra::with_default_cap(rationals());
        match surjectivity_poly(&qt, &PolyOp::IMinusShift(int(1))).unwrap() {
            Surjectivity::Surjective { u, .. } => assert_eq!(qt.format(&u), "-t"),
            other => panic!("{other:?}"),
        }
        match surjectivity_poly(&qt, &PolyOp::Derivative).unwrap() {
            Surjectivity::Surjective { u, .. } => assert_eq!(qt.format(&u), "t"),
            other => panic!("{other:?}"),
        }
        assert!(!surjectivity_poly(&qt, &PolyOp::IMinusShift(int(0))).unwrap().is_surjective());
    }

    #[test]
    fn stable_branch_chain() {
        // phi(a, b) = (a, 0) on Q x Q: delta = I - phi = (0, b); 1 is not hit.
        let qq = product_of_q(2);
        let delta = LinOp::matrix("I-endo", QMat::from_ints(&[&[0, 0], &[0, 1]]));
        assert!(!surjectivity_findim(&qq, &delta).unwrap().is_surjective());
        // phi = swap on Q x Q: delta(1) = 0 and 1 is not hit either.
        let delta = LinOp::matrix("I-swap", QMat::from_ints(&[&[1, -1], &[-1, 1]]));
        assert!(!surjectivity_findim(&qq, &delta).unwrap().is_surjective());
    }
}
