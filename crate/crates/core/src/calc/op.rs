use serde::{Deserialize, Serialize};

use super::backend::Operator;
use crate::algebra::{AlgElem, FinDimAlgebra};
use crate::error::{Error, Result};
use crate::linalg::QMat;
use crate::polyext::{PolyExtAlgebra, PolyExtElem, PolyOp};

/// A linear operator in one of the two concrete forms the toolkit handles:
/// a matrix on a finite-dimensional algebra, or a built-in rule on `B[t]`.
#[derive(Clone, Debug, PartialEq)]
pub enum LinOp {
    Matrix { label: String, matrix: QMat },
    Poly(PolyOp),
}

/// Serialized operator: its label plus, for matrix operators, the matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub spec: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<QMat>,
}

impl LinOp {
    pub fn matrix(label: impl Into<String>, matrix: QMat) -> Self {
        LinOp::Matrix { label: label.into(), matrix }
    }

    pub fn label(&self) -> String {
        match self {
            LinOp::Matrix { label, .. } => label.clone(),
            LinOp::Poly(op) => op.to_string(),
        }
    }

    pub fn as_matrix(&self) -> Result<&QMat> {
        match self {
            LinOp::Matrix { matrix, .. } => Ok(matrix),
            LinOp::Poly(op) => Err(Error::UnsupportedOperator(format!("{op} needs a B[t] backend"))),
        }
    }

    pub fn as_poly(&self) -> Result<&PolyOp> {
        match self {
            LinOp::Poly(op) => Ok(op),
            LinOp::Matrix { label, .. } => {
                Err(Error::UnsupportedOperator(format!("{label} needs a finite-dimensional backend")))
            }
        }
    }

    pub fn to_json(&self) -> OperatorJson {
        match self {
            LinOp::Matrix { label, matrix } => OperatorJson { spec: label.clone(), matrix: Some(matrix.clone()) },
            LinOp::Poly(op) => OperatorJson { spec: op.to_string(), matrix: None },
        }
    }
}

impl Operator<FinDimAlgebra> for LinOp {
    fn apply(&self, alg: &FinDimAlgebra, a: &AlgElem) -> Result<AlgElem> {
        Operator::<FinDimAlgebra>::apply(self.as_matrix()?, alg, a)
    }
}

impl Operator<PolyExtAlgebra> for LinOp {
    fn apply(&self, alg: &PolyExtAlgebra, a: &PolyExtElem) -> Result<PolyExtElem> {
        alg.apply_op(self.as_poly()?, a)
    }
}
