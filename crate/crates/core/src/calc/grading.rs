//! Spectral gradings of finite-dimensional algebras by the semisimple part of
//! a derivation or endomorphism, and the induced description of the image.

use num_traits::{One, Zero};
use serde::Serialize;

use super::certificate::{Certificate, Construction};
use super::op::LinOp;
use crate::algebra::{AlgElem, FinDimAlgebra};
use crate::arith::{fmt_rational, rational_roots, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::linalg::{in_span, invert_shifted, jordan_chevalley, minimal_polynomial, same_span, span_basis, span_contains, QMat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GradeKind {
    /// `A_l A_m` lies in `A_{l+m}`.
    Derivation,
    /// `A_l A_m` lies in `A_{lm}`.
    Endomorphism,
}

#[derive(Clone, Debug)]
pub struct GradingDecomp {
    pub kind: GradeKind,
    pub eigenvalues: Vec<Rational>,
    /// `blocks[i]` is a basis of the eigenspace of the semisimple part for
    /// `eigenvalues[i]`.
    pub blocks: Vec<Vec<AlgElem>>,
    pub semisimple: QMat,
    pub nilpotent: QMat,
    /// Eigenvalue pairs `(l, 1/l)` with `l != 1/l`; recorded, not analysed.
    pub reciprocal_pairs: Vec<(Rational, Rational)>,
}

impl GradingDecomp {
    pub fn block(&self, lambda: &Rational) -> Option<&[AlgElem]> {
        self.eigenvalues.iter().position(|l| l == lambda).map(|i| self.blocks[i].as_slice())
    }

    pub fn to_json(&self, alg: &FinDimAlgebra) -> serde_json::Value {
        use super::backend::Backend;
        serde_json::json!({
            "kind": self.kind,
            "eigenvalues": self.eigenvalues.iter().map(fmt_rational).collect::<Vec<_>>(),
            "blocks": self.blocks.iter().map(|b| b.iter().map(|x| alg.format(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "semisimple": self.semisimple.to_strings(),
            "nilpotent": self.nilpotent.to_strings(),
            "reciprocal_pairs": self.reciprocal_pairs.iter().map(|(a, b)| [fmt_rational(a), fmt_rational(b)]).collect::<Vec<_>>(),
        })
    }
}

fn coeff_vecs(v: &[AlgElem]) -> Vec<Vec<Rational>> {
    v.iter().map(|x| x.coeffs().to_vec()).collect()
}

/// Grades `alg` by the eigenspaces of the semisimple part of `t`, then checks
/// block invariance and the product rule on all block basis pairs.
pub fn grade(alg: &FinDimAlgebra, t: &QMat, kind: GradeKind) -> Result<GradingDecomp> {
    let n = alg.dim();
    if t.rows() != n || t.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: t.rows() });
    }
    let jc = jordan_chevalley(t)?;
    let ms = minimal_polynomial(&jc.semisimple)?;
    let eigenvalues = rational_roots(&ms)?;
    let split = eigenvalues.iter().fold(UniPoly::one(), |acc, l| &acc * &UniPoly::linear_root(l));
    if split != ms {
        let (rest, _) = ms.div_rem(&split);
        return Err(Error::NotSplit(rest));
    }
    let blocks: Vec<Vec<AlgElem>> = eigenvalues
        .iter()
        .map(|l| jc.semisimple.sub(&QMat::scalar(n, l.clone())).nullspace().into_iter().map(AlgElem::new).collect())
        .collect();
    if blocks.iter().map(Vec::len).sum::<usize>() != n {
        return Err(Error::GradingViolation("eigenspaces do not span the algebra".into()));
    }
    for (l, block) in eigenvalues.iter().zip(&blocks) {
        let basis = coeff_vecs(block);
        if block.iter().any(|x| !in_span(n, &basis, &t.apply(x.coeffs()))) {
            return Err(Error::GradingViolation(format!("block {} is not invariant", fmt_rational(l))));
        }
    }
    for (l, bl) in eigenvalues.iter().zip(&blocks) {
        for (m, bm) in eigenvalues.iter().zip(&blocks) {
            let target = match kind {
                GradeKind::Derivation => l + m,
                GradeKind::Endomorphism => l * m,
            };
            let shifted = jc.semisimple.sub(&QMat::scalar(n, target.clone()));
            for u in bl {
                for v in bm {
                    let uv = alg.mul(u, v)?;
                    if shifted.apply(uv.coeffs()).iter().any(|x| !x.is_zero()) {
                        return Err(Error::GradingViolation(format!(
                            "product of blocks {} and {} leaves block {}",
                            fmt_rational(l),
                            fmt_rational(m),
                            fmt_rational(&target)
                        )));
                    }
                }
            }
        }
    }
    let mut reciprocal_pairs = vec![];
    if kind == GradeKind::Endomorphism {
        for (i, l) in eigenvalues.iter().enumerate() {
            for m in &eigenvalues[i + 1..] {
                if !l.is_zero() && *m == l.recip() {
                    reciprocal_pairs.push((l.clone(), m.clone()));
                }
            }
        }
    }
    Ok(GradingDecomp {
        kind,
        eigenvalues,
        blocks,
        semisimple: jc.semisimple,
        nilpotent: jc.nilpotent,
        reciprocal_pairs,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ImageKind {
    Derivation,
    Ederivation,
}

#[derive(Clone, Debug)]
pub struct ImageDecomp {
    /// Basis of the image computed directly from the matrix.
    pub direct: Vec<AlgElem>,
    /// Labelled summands of the structured description.
    pub pieces: Vec<(String, Vec<AlgElem>)>,
    pub grading: GradingDecomp,
}

/// Image of a derivation `D` as `Dn(A_0) + sum_{l != 0} A_l`, or of an
/// E-derivation `delta = I - phi` as `Pn(A_1) + sum_{l != 1} A_l` with the
/// grading taken from `phi`. Both descriptions are compared with the direct
/// image and the kernel is checked to lie in the distinguished block.
pub fn image_decomposition(alg: &FinDimAlgebra, t: &QMat, kind: ImageKind) -> Result<ImageDecomp> {
    let n = alg.dim();
    let (graded, special, grade_kind) = match kind {
        ImageKind::Derivation => (t.clone(), Rational::zero(), GradeKind::Derivation),
        ImageKind::Ederivation => (QMat::identity(n).sub(t), Rational::one(), GradeKind::Endomorphism),
    };
    let grading = grade(alg, &graded, grade_kind)?;
    let mut pieces = vec![];
    let special_block = grading.block(&special).map(coeff_vecs).unwrap_or_default();
    let nil_image: Vec<Vec<Rational>> = special_block.iter().map(|x| grading.nilpotent.apply(x)).collect();
    let label = match kind {
        ImageKind::Derivation => "Dn(A_0)".to_string(),
        ImageKind::Ederivation => "Pn(A_1)".to_string(),
    };
    pieces.push((label, span_basis(n, &nil_image).into_iter().map(AlgElem::new).collect()));
    for (l, block) in grading.eigenvalues.iter().zip(&grading.blocks) {
        if *l != special {
            pieces.push((format!("A_{}", fmt_rational(l)), block.clone()));
        }
    }

    let direct_vecs = t.image_basis();
    let structured: Vec<Vec<Rational>> = pieces.iter().flat_map(|(_, p)| coeff_vecs(p)).collect();
    if structured.len() != direct_vecs.len() || !same_span(n, &structured, &direct_vecs) {
        return Err(Error::StructureMismatch);
    }
    if !span_contains(n, &special_block, &t.nullspace()) {
        return Err(Error::GradingViolation("kernel is not contained in the distinguished block".into()));
    }
    Ok(ImageDecomp { direct: direct_vecs.into_iter().map(AlgElem::new).collect(), pieces, grading })
}

/// Preimage of `v` under the graded operator, assembled blockwise: on `A_l`
/// away from the distinguished eigenvalue the operator is a unipotent shift
/// and is inverted by the finite series; on the distinguished block it
/// reduces to the nilpotent part.
pub fn spectral_block_preimage(alg: &FinDimAlgebra, op: &LinOp, kind: ImageKind, v: &AlgElem) -> Result<Certificate> {
    let n = alg.dim();
    let t = op.as_matrix()?;
    let dec = image_decomposition(alg, t, kind)?;
    let g = &dec.grading;
    let all: Vec<Vec<Rational>> = g.blocks.iter().flat_map(|b| coeff_vecs(b)).collect();
    let coords = QMat::from_cols(n, &all)?
        .solve(v.coeffs())?
        .ok_or_else(|| Error::GradingViolation("blocks do not span the algebra".into()))?;
    let mut x = vec![Rational::zero(); n];
    let mut offset = 0;
    for (l, block) in g.eigenvalues.iter().zip(&g.blocks) {
        let mut comp = vec![Rational::zero(); n];
        for (k, b) in block.iter().enumerate() {
            for (c, bc) in comp.iter_mut().zip(b.coeffs()) {
                *c += &coords[offset + k] * bc;
            }
        }
        offset += block.len();
        let (shift, nil) = match kind {
            ImageKind::Derivation => (l.clone(), g.nilpotent.scale(&-Rational::one())),
            ImageKind::Ederivation => (Rational::one() - l, g.nilpotent.clone()),
        };
        let piece = if shift.is_zero() {
            if comp.iter().all(Zero::is_zero) {
                continue;
            }
            t.solve(&comp)?.ok_or_else(|| Error::NotPreimage(format!("{} is not in the image", super::backend::Backend::format(alg, v))))?
        } else {
            invert_shifted(&QMat::scalar(n, shift), &nil)?.apply(&comp)
        };
        for (xi, p) in x.iter_mut().zip(piece) {
            *xi += p;
        }
    }
    let x = AlgElem::new(x);
    let applied = AlgElem::new(t.apply(x.coeffs()));
    if applied != *v {
        return Err(Error::CertificateRejected("blockwise preimage does not map to the target".into()));
    }
    Ok(Certificate::new(alg, op.to_json(), v, &x, Construction::SpectralBlock)
        .with_meta("eigenvalues", g.eigenvalues.iter().map(fmt_rational).collect::<Vec<_>>()))
}
