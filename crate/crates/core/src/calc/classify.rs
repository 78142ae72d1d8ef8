use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::backend::{Backend, Operator};
use crate::algebra::{AlgElem, FinDimAlgebra};
use crate::arith::int;
use crate::linalg::QMat;
use crate::polyext::{PolyExtAlgebra, PolyExtElem, PolyOp};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum LnVerdict {
    /// `index` is the nilpotency index for matrices; for `B[t]` built-ins it
    /// is zero and the witness is the degree-decrease argument.
    Yes { index: usize, witness: String },
    No { counterexample: String },
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpClass {
    pub is_derivation: bool,
    pub is_endomorphism: bool,
    pub is_ederivation: bool,
    pub locally_nilpotent: LnVerdict,
    /// First pair on which the derivation law fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure_witness: Option<(String, String)>,
    /// Laws were checked on sampled pairs rather than on a basis.
    pub sampled: bool,
}

/// Results of the three product laws over a list of pairs.
struct Laws {
    derivation: bool,
    endomorphism: bool,
    ederivation: bool,
    witness: Option<(usize, usize)>,
}

fn check_laws<B: Backend + ?Sized, T: Operator<B> + ?Sized>(
    alg: &B,
    op: &T,
    elems: &[B::Elem],
    pairs: &[(usize, usize)],
) -> crate::Result<Laws> {
    let images = elems.iter().map(|x| op.apply(alg, x)).collect::<crate::Result<Vec<_>>>()?;
    let mut laws = Laws { derivation: true, endomorphism: true, ederivation: true, witness: None };
    for &(i, j) in pairs {
        let (a, b) = (&elems[i], &elems[j]);
        let (ta, tb) = (&images[i], &images[j]);
        let tab = op.apply(alg, &alg.mul(a, b)?)?;
        let leibniz = alg.add(&alg.mul(ta, b)?, &alg.mul(a, tb)?);
        let tatb = alg.mul(ta, tb)?;
        if laws.derivation && tab != leibniz {
            laws.derivation = false;
            laws.witness = Some((i, j));
        }
        if laws.endomorphism && tab != tatb {
            laws.endomorphism = false;
        }
        if laws.ederivation && tab != alg.sub(&leibniz, &tatb) {
            laws.ederivation = false;
        }
    }
    Ok(laws)
}

/// Exact classification of a matrix operator on all basis pairs.
pub fn classify_matrix(alg: &FinDimAlgebra, m: &QMat) -> crate::Result<OpClass> {
    let n = alg.dim();
    let mut elems: Vec<AlgElem> = (0..n).map(|i| alg.basis_elem(i)).collect();
    let mut pairs: Vec<(usize, usize)> = vec![];
    let mut names: Vec<String> = alg.basis_names().to_vec();
    if let Some(u) = alg.unit() {
        elems.push(u.clone());
        names.push(Backend::format(alg, u));
        pairs.push((n, n));
    }
    pairs.extend((0..n).flat_map(|i| (0..n).map(move |j| (i, j))));
    let laws = check_laws(alg, m, &elems, &pairs)?;

    let locally_nilpotent = match m.nilpotency_index() {
        Some(k) => LnVerdict::Yes { index: k, witness: format!("M^{k} = 0") },
        None => {
            let p = m.pow(n);
            let j = (0..n).find(|&j| p.col(j).iter().any(|x| *x != int(0))).expect("M^n is nonzero");
            LnVerdict::No { counterexample: names[j].clone() }
        }
    };
    Ok(OpClass {
        is_derivation: laws.derivation,
        is_endomorphism: laws.endomorphism,
        is_ederivation: laws.ederivation,
        locally_nilpotent,
        failure_witness: laws.witness.map(|(i, j)| (names[i].clone(), names[j].clone())),
        sampled: false,
    })
}

pub const POLY_SAMPLE_PAIRS: usize = 200;
pub const POLY_SAMPLE_DEGREE: usize = 6;

fn random_poly_elem(alg: &PolyExtAlgebra, rng: &mut ChaCha8Rng) -> crate::Result<PolyExtElem> {
    let deg = rng.gen_range(0..=POLY_SAMPLE_DEGREE);
    let dim = alg.coeff_algebra().dim();
    let coeffs = (0..=deg)
        .map(|_| AlgElem::new((0..dim).map(|_| int(rng.gen_range(-3..=3))).collect()))
        .collect();
    alg.elem(coeffs)
}

/// Classification of a built-in `B[t]` operator on the generator pairs plus
/// `POLY_SAMPLE_PAIRS` random pairs of degree at most `POLY_SAMPLE_DEGREE`.
pub fn classify_poly(alg: &PolyExtAlgebra, op: &PolyOp, seed: u64) -> crate::Result<OpClass> {
    let b = alg.coeff_algebra();
    let n = b.dim();
    let mut elems = vec![];
    if let Some(one) = Backend::unit(alg) {
        elems.push(one);
        elems.push(alg.t()?);
    }
    for i in 0..n {
        elems.push(alg.constant(&b.basis_elem(i))?);
        elems.push(alg.monomial(&b.basis_elem(i), 1)?);
    }
    let g = elems.len();
    let mut pairs: Vec<(usize, usize)> = (0..g).flat_map(|i| (0..g).map(move |j| (i, j))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..POLY_SAMPLE_PAIRS {
        elems.push(random_poly_elem(alg, &mut rng)?);
        elems.push(random_poly_elem(alg, &mut rng)?);
        pairs.push((g + 2 * k, g + 2 * k + 1));
    }
    let laws = check_laws(alg, op, &elems, &pairs)?;

    let witness_elem = Backend::unit(alg).unwrap_or(alg.constant(&b.basis_elem(0))?);
    let locally_nilpotent = match op {
        PolyOp::Derivative => LnVerdict::Yes { index: 0, witness: "d/dt lowers the t-degree".into() },
        PolyOp::IMinusShift(_) => LnVerdict::Yes { index: 0, witness: "I - shift lowers the t-degree".into() },
        PolyOp::Identity | PolyOp::Shift(_) => {
            LnVerdict::No { counterexample: alg.format(&witness_elem) }
        }
    };
    Ok(OpClass {
        is_derivation: laws.derivation,
        is_endomorphism: laws.endomorphism,
        is_ederivation: laws.ederivation,
        locally_nilpotent,
        failure_witness: laws.witness.map(|(i, j)| (alg.format(&elems[i]), alg.format(&elems[j]))),
        sampled: true,
    })
}
