use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::backend::Backend;
use super::op::OperatorJson;
use crate::algebra::{AlgElem, AlgebraJson, FinDimAlgebra};
use crate::arith::{fmt_vec, parse_vec};
use crate::error::{Error, Result};
use crate::linalg::QMat;
use crate::polyext::{PolyExtAlgebra, PolyExtElem};
use crate::text::parse_poly_op;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// Target `a e` from the right kernel projection.
    RightOneSided,
    /// Target `e a` from the left kernel projection.
    LeftOneSided,
    /// Target `a e b`.
    TwoSided,
    /// E-derivation preimage through `D = ln(I - delta)` and `h(D)^{-1}`.
    EderivViaH,
    /// Preimage assembled block by block from the spectral grading.
    SpectralBlock,
    /// Preimage of the unit from the surjectivity analysis.
    UnitSurjectivity,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BackendJson {
    Findim { algebra: AlgebraJson },
    Poly { algebra: AlgebraJson, degree_cap: usize },
}

/// A claim `operator(preimage) = target`, re-checkable from the file alone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub backend: BackendJson,
    pub operator: OperatorJson,
    pub target: Value,
    pub preimage: Value,
    pub construction: Construction,
    #[serde(default)]
    pub meta: BTreeMap<String, Value>,
}

/// Backends whose elements can be written into certificates.
pub trait CertBackend: Backend {
    fn backend_json(&self) -> BackendJson;
    fn elem_to_json(&self, a: &Self::Elem) -> Value;
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem>;
}

fn strings(v: &Value) -> Result<Vec<String>> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(format!("expected a list of rationals: {e}")))
}

impl CertBackend for FinDimAlgebra {
    fn backend_json(&self) -> BackendJson {
        BackendJson::Findim { algebra: AlgebraJson::from(self) }
    }
    fn elem_to_json(&self, a: &AlgElem) -> Value {
        Value::from(fmt_vec(a.coeffs()))
    }
    fn elem_from_json(&self, v: &Value) -> Result<AlgElem> {
        self.elem(parse_vec(&strings(v)?)?)
    }
}

impl CertBackend for PolyExtAlgebra {
    fn backend_json(&self) -> BackendJson {
        BackendJson::Poly { algebra: AlgebraJson::from(self.coeff_algebra()), degree_cap: self.degree_cap() }
    }
    /// Coefficient vectors in `B`, lowest t-degree first.
    fn elem_to_json(&self, a: &PolyExtElem) -> Value {
        Value::from(a.coeffs().iter().map(|c| Value::from(fmt_vec(c.coeffs()))).collect::<Vec<_>>())
    }
    fn elem_from_json(&self, v: &Value) -> Result<PolyExtElem> {
        let Value::Array(items) = v else {
            return Err(Error::Invalid("expected a list of coefficient vectors".into()));
        };
        let b = self.coeff_algebra();
        let coeffs = items
            .iter()
            .map(|c| b.elem(parse_vec(&strings(c)?)?))
            .collect::<Result<Vec<_>>>()?;
        self.elem(coeffs)
    }
}

impl Certificate {
    pub fn new<B: CertBackend + ?Sized>(
        alg: &B,
        operator: OperatorJson,
        target: &B::Elem,
        preimage: &B::Elem,
        construction: Construction,
    ) -> Self {
        let mut meta = BTreeMap::new();
        meta.insert("target_text".into(), Value::from(alg.format(target)));
        meta.insert("preimage_text".into(), Value::from(alg.format(preimage)));
        Certificate {
            backend: alg.backend_json(),
            operator,
            target: alg.elem_to_json(target),
            preimage: alg.elem_to_json(preimage),
            construction,
            meta,
        }
    }

    pub fn with_meta_elem<B: CertBackend + ?Sized>(mut self, alg: &B, key: &str, a: &B::Elem) -> Self {
        self.meta.insert(key.into(), alg.elem_to_json(a));
        self.meta.insert(format!("{key}_text"), Value::from(alg.format(a)));
        self
    }

    pub fn with_meta(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.meta.insert(key.into(), v.into());
        self
    }

    pub fn target<B: CertBackend + ?Sized>(&self, alg: &B) -> Result<B::Elem> {
        alg.elem_from_json(&self.target)
    }

    pub fn preimage<B: CertBackend + ?Sized>(&self, alg: &B) -> Result<B::Elem> {
        alg.elem_from_json(&self.preimage)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Mismatch { expected: String, got: String, difference: String },
}

fn compare<B: Backend + ?Sized>(alg: &B, target: &B::Elem, got: &B::Elem) -> Verdict {
    if got == target {
        Verdict::Verified
    } else {
        Verdict::Mismatch {
            expected: alg.format(target),
            got: alg.format(got),
            difference: alg.format(&alg.sub(got, target)),
        }
    }
}

/// Rebuilds the backend and operator from the certificate alone, applies
/// the operator once to the preimage and compares with the target exactly.
pub fn verify_certificate(cert: &Certificate) -> Result<Verdict> {
    match &cert.backend {
        BackendJson::Findim { algebra } => {
            let alg = algebra.clone().into_algebra()?;
            let m: &QMat = cert
                .operator
                .matrix
                .as_ref()
                .ok_or_else(|| Error::Invalid("finite-dimensional certificate without a matrix".into()))?;
            if m.rows() != alg.dim() || m.cols() != alg.dim() {
                return Err(Error::DimensionMismatch { expected: alg.dim(), got: m.rows() });
            }
            let x = alg.elem_from_json(&cert.preimage)?;
            let y = alg.elem_from_json(&cert.target)?;
            let got = AlgElem::new(m.apply(x.coeffs()));
            Ok(compare(&alg, &y, &got))
        }
        BackendJson::Poly { algebra, degree_cap } => {
            let alg = PolyExtAlgebra::new(algebra.clone().into_algebra()?, *degree_cap)?;
            let op = parse_poly_op(&cert.operator.spec)?;
            let x = alg.elem_from_json(&cert.preimage)?;
            let y = alg.elem_from_json(&cert.target)?;
            let got = alg.apply_op(&op, &x)?;
            Ok(compare(&alg, &y, &got))
        }
    }
}
