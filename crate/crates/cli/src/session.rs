use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use dertool_core::algebra::{
    direct_sum, dual_numbers, product_of_q, rationals, strictly_upper_3, truncated_poly, upper_triangular_2,
    AlgebraJson, ElementJson, FinDimAlgebra,
};
use dertool_core::calc::{ad_matrix, LinOp};
use dertool_core::linalg::QMat;
use dertool_core::polyext::{PolyExtAlgebra, PolyExtElem};
use dertool_core::text::{parse_element, parse_op_spec, parse_poly_element, OpSpec};
use dertool_core::{Error, Result};

/// Built-in algebra by name: `Q`, `dual`, `T2`, `N3`, `QxQ`, `Q^n`,
/// `trunc<n>` (for `Q[x]/(x^n)`), or a `+`-separated direct sum of these.
pub fn builtin_algebra(name: &str) -> Option<FinDimAlgebra> {
    if name.contains('+') {
        let parts = name.split('+').map(|p| builtin_algebra(p.trim())).collect::<Option<Vec<_>>>()?;
        return Some(direct_sum(&parts.iter().collect::<Vec<_>>()));
    }
    match name {
        "Q" => Some(rationals()),
        "dual" => Some(dual_numbers()),
        "T2" => Some(upper_triangular_2()),
        "N3" => Some(strictly_upper_3()),
        "QxQ" => Some(product_of_q(2)),
        _ => {
            if let Some(n) = name.strip_prefix("Q^") {
                n.parse().ok().filter(|&n| n > 0).map(product_of_q)
            } else if let Some(n) = name.strip_prefix("trunc") {
                n.parse().ok().filter(|&n| n > 0).map(truncated_poly)
            } else {
                None
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

/// A matrix file holds either a bare array of rows or `{"matrix": rows}`.
pub fn read_matrix(path: &Path) -> Result<QMat> {
    let v: serde_json::Value = read_json(path)?;
    let rows = match v {
        serde_json::Value::Object(mut m) => m.remove("matrix").ok_or_else(|| Error::Invalid("missing \"matrix\"".into()))?,
        other => other,
    };
    serde_json::from_value(rows).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

/// The algebra a command works in: a finite-dimensional algebra `B` or `B[t]`.
pub enum Space {
    Findim(FinDimAlgebra),
    Poly(PolyExtAlgebra),
}

/// Loaded state for one invocation: algebras and operators cached by id,
/// the output directory and the master seed.
pub struct Session {
    algebras: BTreeMap<String, FinDimAlgebra>,
    operators: BTreeMap<(String, String), LinOp>,
    pub out_dir: PathBuf,
    pub seed: u64,
}

impl Session {
    pub fn new(out_dir: PathBuf, seed: u64) -> Self {
        Session { algebras: BTreeMap::new(), operators: BTreeMap::new(), out_dir, seed }
    }

    /// Loads an algebra by built-in name or JSON file path.
    pub fn algebra(&mut self, id: &str) -> Result<FinDimAlgebra> {
        if let Some(a) = self.algebras.get(id) {
            return Ok(a.clone());
        }
        let path = Path::new(id);
        let alg = if path.is_file() {
            read_json::<AlgebraJson>(path)?.into_algebra()?
        } else {
            builtin_algebra(id).ok_or_else(|| Error::Invalid(format!("unknown algebra '{id}' (not a builtin or a file)")))?
        };
        self.algebras.insert(id.to_string(), alg.clone());
        Ok(alg)
    }

    pub fn space(&mut self, id: &str, poly: bool, degree_cap: usize) -> Result<Space> {
        let alg = self.algebra(id)?;
        Ok(if poly { Space::Poly(PolyExtAlgebra::new(alg, degree_cap)?) } else { Space::Findim(alg) })
    }

    /// Resolves an operator spec against a finite-dimensional algebra.
    pub fn findim_op(&mut self, alg: &FinDimAlgebra, spec: &str) -> Result<LinOp> {
        let key = (alg.name().to_string(), spec.to_string());
        if let Some(op) = self.operators.get(&key) {
            return Ok(op.clone());
        }
        let n = alg.dim();
        let check = |m: QMat| {
            if m.rows() != n || m.cols() != n {
                Err(Error::DimensionMismatch { expected: n, got: m.rows().max(m.cols()) })
            } else {
                Ok(m)
            }
        };
        let op = match parse_op_spec(spec)? {
            OpSpec::MatrixFile(p) => LinOp::matrix(spec, check(read_matrix(Path::new(&p))?)?),
            OpSpec::IMinusEndoFile(p) => {
                let phi = check(read_matrix(Path::new(&p))?)?;
                LinOp::matrix(spec, QMat::identity(n).sub(&phi))
            }
            OpSpec::Ad(x) => LinOp::matrix(spec, ad_matrix(alg, &parse_element(alg, &x)?)),
            OpSpec::Poly(dertool_core::polyext::PolyOp::Identity) => LinOp::matrix(spec, QMat::identity(n)),
            OpSpec::Poly(p) => {
                return Err(Error::UnsupportedOperator(format!("{p} acts on B[t]; pass --poly")));
            }
        };
        self.operators.insert(key, op.clone());
        Ok(op)
    }

    pub fn poly_op(&self, spec: &str) -> Result<LinOp> {
        match parse_op_spec(spec)? {
            OpSpec::Poly(p) => Ok(LinOp::Poly(p)),
            _ => Err(Error::UnsupportedOperator(format!("{spec} is not available on B[t]"))),
        }
    }

    /// Writes `contents` to `name` inside the output directory via a temporary
    /// file and rename.
    pub fn write(&self, name: &str, contents: &str) -> Result<PathBuf> {
        let target = self.out_dir.join(name);
        let dir = target.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
        let io = |e: std::io::Error| Error::Invalid(format!("cannot write {}: {e}", target.display()));
        fs::create_dir_all(dir).map_err(io)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
        tmp.write_all(contents.as_bytes()).map_err(io)?;
        tmp.persist(&target).map_err(|e| io(e.error))?;
        Ok(target)
    }
}

/// Element text, or `@file` for an element JSON file.
pub fn findim_elem(alg: &FinDimAlgebra, src: &str) -> Result<dertool_core::algebra::AlgElem> {
    match src.strip_prefix('@') {
        Some(path) => read_json::<ElementJson>(Path::new(path))?.to_elem(alg),
        None => parse_element(alg, src),
    }
}

pub fn poly_elem(alg: &PolyExtAlgebra, src: &str) -> Result<PolyExtElem> {
    parse_poly_element(alg, src)
}

pub fn read_file(path: &Path) -> Result<String> {
    read(path)
}
