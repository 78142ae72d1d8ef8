use serde::{Deserialize, Serialize};

use super::{AlgElem, FinDimAlgebra};
use crate::arith::{fmt_vec, parse_vec};
use crate::error::{Error, Result};

/// On-disk algebra description; rationals are `p/q` strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub basis: Vec<String>,
    pub table: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ElementJson {
    pub algebra: String,
    pub coeffs: Vec<String>,
}

impl From<&FinDimAlgebra> for AlgebraJson {
    fn from(a: &FinDimAlgebra) -> Self {
        AlgebraJson {
            name: Some(a.name().to_string()),
            dim: a.dim(),
            basis: a.basis_names().to_vec(),
            table: a
                .table()
                .iter()
                .map(|row| row.iter().map(|c| fmt_vec(c)).collect())
                .collect(),
            unit: a.unit().map(|u| fmt_vec(u.coeffs())),
        }
    }
}

impl AlgebraJson {
    pub fn into_algebra(self) -> Result<FinDimAlgebra> {
        if self.basis.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: self.basis.len() });
        }
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(|c| parse_vec(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let unit = self.unit.as_deref().map(parse_vec).transpose()?;
        let name = self.name.unwrap_or_else(|| "A".to_string());
        FinDimAlgebra::from_table(name, self.basis, table, unit)
    }
}

impl ElementJson {
    pub fn from_elem(algebra: &FinDimAlgebra, e: &AlgElem) -> Self {
        ElementJson { algebra: algebra.name().to_string(), coeffs: fmt_vec(e.coeffs()) }
    }

    pub fn to_elem(&self, algebra: &FinDimAlgebra) -> Result<AlgElem> {
        if self.algebra != algebra.name() {
            return Err(Error::AlgebraMismatch);
        }
        algebra.elem(parse_vec(&self.coeffs)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::upper_triangular_2;

    #[test]
    fn json_roundtrip() {
        let t2 = upper_triangular_2();
        let text = serde_json::to_string(&AlgebraJson::from(&t2)).unwrap();
        let back: AlgebraJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_algebra().unwrap(), t2);
        let e = ElementJson::from_elem(&t2, &t2.basis_elem(1));
        assert_eq!(e.coeffs, vec!["0", "1", "0"]);
        assert_eq!(e.to_elem(&t2).unwrap(), t2.basis_elem(1));
    }

    #[test]
    fn json_without_unit() {
        let text = r#"{"dim":1,"basis":["n"],"table":[[["0"]]]}"#;
        let a: AlgebraJson = serde_json::from_str(text).unwrap();
        let a = a.into_algebra().unwrap();
        assert!(!a.is_unital());
    }
}
