//! Finite-dimensional associative algebras given by structure constants.

mod builtin;
mod json;

pub use builtin::{
    direct_sum, dual_numbers, product_of_q, rationals, strictly_upper_3, truncated_poly, upper_triangular_2,
};
pub use json::{AlgebraJson, ElementJson};

use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::{rational_roots, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::linalg::{minimal_polynomial, span_basis, span_rank, QMat};

/// Element of a finite-dimensional algebra as a coefficient vector in the
/// algebra's basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AlgElem {
    coeffs: Vec<Rational>,
}

impl AlgElem {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        AlgElem { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        AlgElem { coeffs: vec![Rational::zero(); dim] }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coeffs[i] = Rational::one();
        e
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| crate::arith::int(x)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        AlgElem { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }
}

impl Add for &AlgElem {
    type Output = AlgElem;
    fn add(self, o: &AlgElem) -> AlgElem {
        assert_eq!(self.dim(), o.dim(), "elements of different algebras");
        AlgElem { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &AlgElem {
    type Output = AlgElem;
    fn sub(self, o: &AlgElem) -> AlgElem {
        assert_eq!(self.dim(), o.dim(), "elements of different algebras");
        AlgElem { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        AlgElem { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

/// Which side of `e` the rest of the algebra sits on: `Right` is `eA`,
/// `Left` is `Ae`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Associative algebra over Q with basis `b_0..b_{n-1}` and
/// `b_i b_j = sum_k table[i][j][k] b_k`. Possibly non-unital.
#[derive(Clone, Debug, PartialEq)]
pub struct FinDimAlgebra {
    name: String,
    basis: Vec<String>,
    table: Vec<Vec<Vec<Rational>>>,
    unit: Option<AlgElem>,
}

impl FinDimAlgebra {
    /// Validates shape, associativity on all basis triples and the unit laws.
    pub fn from_table(
        name: impl Into<String>,
        basis: Vec<String>,
        table: Vec<Vec<Vec<Rational>>>,
        unit: Option<Vec<Rational>>,
    ) -> Result<Self> {
        let n = basis.len();
        if n == 0 {
            return Err(Error::Invalid("algebra must have dimension at least 1".into()));
        }
        let shape_ok = table.len() == n
            && table.iter().all(|row| row.len() == n && row.iter().all(|c| c.len() == n));
        if !shape_ok {
            return Err(Error::Invalid(format!("structure table must be {n}x{n}x{n}")));
        }
        if let Some(u) = &unit {
            if u.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: u.len() });
            }
        }
        let alg = FinDimAlgebra { name: name.into(), basis, table, unit: unit.map(AlgElem::new) };
        alg.check_associative()?;
        alg.check_unit()?;
        Ok(alg)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let bij = AlgElem::new(self.table[i][j].clone());
                for k in 0..n {
                    let bk = AlgElem::basis(n, k);
                    let bjk = AlgElem::new(self.table[j][k].clone());
                    let lhs = self.mul_unchecked(&bij, &bk);
                    let rhs = self.mul_unchecked(&AlgElem::basis(n, i), &bjk);
                    if lhs != rhs {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<()> {
        let Some(u) = &self.unit else { return Ok(()) };
        let n = self.dim();
        for i in 0..n {
            let b = AlgElem::basis(n, i);
            if self.mul_unchecked(u, &b) != b || self.mul_unchecked(&b, u) != b {
                return Err(Error::BadUnit(i));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn table(&self) -> &[Vec<Vec<Rational>>] {
        &self.table
    }

    pub fn unit(&self) -> Option<&AlgElem> {
        self.unit.as_ref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn basis_elem(&self, i: usize) -> AlgElem {
        AlgElem::basis(self.dim(), i)
    }

    pub fn zero(&self) -> AlgElem {
        AlgElem::zero(self.dim())
    }

    /// Element from a coefficient vector, checking its length.
    pub fn elem(&self, coeffs: Vec<Rational>) -> Result<AlgElem> {
        if coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: coeffs.len() });
        }
        Ok(AlgElem::new(coeffs))
    }

    fn mul_unchecked(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &xy * c;
                    }
                }
            }
        }
        AlgElem::new(out)
    }

    /// Bilinear extension of the structure constants.
    pub fn mul(&self, a: &AlgElem, b: &AlgElem) -> Result<AlgElem> {
        if a.dim() != self.dim() || b.dim() != self.dim() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self.mul_unchecked(a, b))
    }

    pub fn is_idempotent(&self, e: &AlgElem) -> bool {
        self.mul_unchecked(e, e) == *e
    }

    pub fn is_central(&self, e: &AlgElem) -> bool {
        (0..self.dim()).all(|i| {
            let b = self.basis_elem(i);
            self.mul_unchecked(e, &b) == self.mul_unchecked(&b, e)
        })
    }

    /// Matrix of `a -> e a`.
    pub fn left_mul_matrix(&self, e: &AlgElem) -> QMat {
        let cols: Vec<Vec<Rational>> =
            (0..self.dim()).map(|j| self.mul_unchecked(e, &self.basis_elem(j)).coeffs).collect();
        QMat::from_cols(self.dim(), &cols).expect("square")
    }

    /// Matrix of `a -> a e`.
    pub fn right_mul_matrix(&self, e: &AlgElem) -> QMat {
        let cols: Vec<Vec<Rational>> =
            (0..self.dim()).map(|j| self.mul_unchecked(&self.basis_elem(j), e).coeffs).collect();
        QMat::from_cols(self.dim(), &cols).expect("square")
    }

    /// Basis of `eA` (`Side::Right`) or `Ae` (`Side::Left`).
    pub fn one_sided_span(&self, e: &AlgElem, side: Side) -> Vec<AlgElem> {
        let m = match side {
            Side::Right => self.left_mul_matrix(e),
            Side::Left => self.right_mul_matrix(e),
        };
        m.image_basis().into_iter().map(AlgElem::new).collect()
    }

    /// Basis of the two-sided ideal generated by `e`, by closing `span{e}`
    /// under multiplication by basis elements on both sides.
    pub fn principal_ideal_basis(&self, e: &AlgElem) -> Vec<AlgElem> {
        let n = self.dim();
        let mut current = span_basis(n, &[e.coeffs.clone()]);
        for _ in 0..=n {
            let mut gens = current.clone();
            for v in &current {
                let v = AlgElem::new(v.clone());
                for i in 0..n {
                    let b = self.basis_elem(i);
                    gens.push(self.mul_unchecked(&b, &v).coeffs);
                    gens.push(self.mul_unchecked(&v, &b).coeffs);
                }
            }
            let next = span_basis(n, &gens);
            if next.len() == current.len() {
                break;
            }
            current = next;
        }
        current.into_iter().map(AlgElem::new).collect()
    }

    /// Minimal polynomial of `a` in a unital algebra (that of left
    /// multiplication by `a`).
    pub fn element_minimal_polynomial(&self, a: &AlgElem) -> Result<UniPoly> {
        if !self.is_unital() {
            return Err(Error::NotUnital);
        }
        minimal_polynomial(&self.left_mul_matrix(a))
    }

    /// Orthogonal idempotents of `Q[a]` from the Lagrange partial fractions of
    /// its minimal polynomial. Empty unless that polynomial is squarefree and
    /// splits into rational linear factors.
    pub fn spectral_idempotents(&self, a: &AlgElem) -> Result<Vec<AlgElem>> {
        let m = self.element_minimal_polynomial(a)?;
        let roots = rational_roots(&m)?;
        if Some(roots.len()) != m.degree() {
            return Ok(vec![]);
        }
        let la = self.left_mul_matrix(a);
        let unit = self.unit.as_ref().unwrap();
        let mut out = vec![];
        for (i, li) in roots.iter().enumerate() {
            let mut p = UniPoly::one();
            for (j, lj) in roots.iter().enumerate() {
                if i != j {
                    p = &p * &UniPoly::linear_root(lj).scale(&(Rational::one() / (li - lj)));
                }
            }
            out.push(AlgElem::new(la.eval_poly(&p).apply(unit.coeffs())));
        }
        Ok(out)
    }

    /// Basis of the space of derivation matrices: the nullspace of the
    /// linear Leibniz constraints `D(b_i b_j) = D(b_i) b_j + b_i D(b_j)`.
    pub fn derivation_space(&self) -> Vec<QMat> {
        let n = self.dim();
        // Unknown d[r][c] = coefficient of b_r in D(b_c), variable index r*n + c.
        let var = |r: usize, c: usize| r * n + c;
        let mut rows = vec![];
        for i in 0..n {
            for j in 0..n {
                for m in 0..n {
                    let mut row = vec![Rational::zero(); n * n];
                    for k in 0..n {
                        let c = &self.table[i][j][k];
                        if !c.is_zero() {
                            row[var(m, k)] += c;
                        }
                        let c = &self.table[k][j][m];
                        if !c.is_zero() {
                            row[var(k, i)] -= c;
                        }
                        let c = &self.table[i][k][m];
                        if !c.is_zero() {
                            row[var(k, j)] -= c;
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let basis = if rows.is_empty() {
            (0..n * n)
                .map(|v| {
                    let mut x = vec![Rational::zero(); n * n];
                    x[v] = Rational::one();
                    x
                })
                .collect()
        } else {
            QMat::from_rows(rows).unwrap().nullspace()
        };
        basis.into_iter().map(|x| QMat::new(n, n, x).unwrap()).collect()
    }

    /// Whether `span(elems)` equals the whole algebra.
    pub fn spans_algebra(&self, elems: &[AlgElem]) -> bool {
        let vs: Vec<Vec<Rational>> = elems.iter().map(|e| e.coeffs.clone()).collect();
        span_rank(self.dim(), &vs) == self.dim()
    }
}
