use num_traits::{One, Zero};

use super::FinDimAlgebra;
use crate::arith::Rational;

fn empty_table(n: usize) -> Vec<Vec<Vec<Rational>>> {
    vec![vec![vec![Rational::zero(); n]; n]; n]
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Q itself, with the single basis element named `1`.
pub fn rationals() -> FinDimAlgebra {
    let table = vec![vec![vec![Rational::one()]]];
    FinDimAlgebra::from_table("Q", names(&["1"]), table, Some(vec![Rational::one()]))
        .expect("Q is a valid algebra")
}

/// `Q^n` with orthogonal idempotent basis `e1..en`.
pub fn product_of_q(n: usize) -> FinDimAlgebra {
    let mut table = empty_table(n);
    for i in 0..n {
        table[i][i][i] = Rational::one();
    }
    let basis = (1..=n).map(|i| format!("e{i}")).collect();
    FinDimAlgebra::from_table(format!("Q^{n}"), basis, table, Some(vec![Rational::one(); n]))
        .expect("Q^n is a valid algebra")
}

/// `Q[x]/(x^2)` with basis `1, x`.
pub fn dual_numbers() -> FinDimAlgebra {
    let mut table = empty_table(2);
    table[0][0][0] = Rational::one();
    table[0][1][1] = Rational::one();
    table[1][0][1] = Rational::one();
    let unit = vec![Rational::one(), Rational::zero()];
    FinDimAlgebra::from_table("dual", names(&["1", "x"]), table, Some(unit))
        .expect("dual numbers are a valid algebra")
}

/// Upper-triangular 2x2 matrices with basis `E11, E12, E22`.
pub fn upper_triangular_2() -> FinDimAlgebra {
    let mut table = empty_table(3);
    table[0][0][0] = Rational::one();
    table[0][1][1] = Rational::one();
    table[1][2][1] = Rational::one();
    table[2][2][2] = Rational::one();
    let unit = vec![Rational::one(), Rational::zero(), Rational::one()];
    FinDimAlgebra::from_table("T2", names(&["E11", "E12", "E22"]), table, Some(unit))
        .expect("T2 is a valid algebra")
}

/// `Q[x]/(x^n)` with basis `1, x, x2, ..., x{n-1}`.
pub fn truncated_poly(n: usize) -> FinDimAlgebra {
    assert!(n >= 1, "truncated_poly needs n >= 1");
    let mut table = empty_table(n);
    for i in 0..n {
        for j in 0..n - i {
            table[i][j][i + j] = Rational::one();
        }
    }
    let basis = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x{i}"),
        })
        .collect();
    let mut unit = vec![Rational::zero(); n];
    unit[0] = Rational::one();
    FinDimAlgebra::from_table(format!("Q[x]/(x^{n})"), basis, table, Some(unit))
        .expect("truncated polynomial ring is a valid algebra")
}

/// Strictly upper-triangular 3x3 matrices, basis `E12, E13, E23`; non-unital
/// with `E12 E23 = E13` the only nonzero product.
pub fn strictly_upper_3() -> FinDimAlgebra {
    let mut table = empty_table(3);
    table[0][2][1] = Rational::one();
    FinDimAlgebra::from_table("N3", names(&["E12", "E13", "E23"]), table, None)
        .expect("N3 is a valid algebra")
}

/// Block-diagonal direct sum. Basis names get a `_k` suffix for factor `k`
/// (1-based); a factor basis element named `1` becomes `one_k`.
pub fn direct_sum(factors: &[&FinDimAlgebra]) -> FinDimAlgebra {
    let n: usize = factors.iter().map(|f| f.dim()).sum();
    let mut table = empty_table(n);
    let mut basis = Vec::with_capacity(n);
    let mut unit: Option<Vec<Rational>> = Some(Vec::with_capacity(n));
    let mut offset = 0;
    for (k, f) in factors.iter().enumerate() {
        let d = f.dim();
        for (i, name) in f.basis_names().iter().enumerate() {
            let stem = if name == "1" { "one" } else { name.as_str() };
            basis.push(format!("{stem}_{}", k + 1));
            for j in 0..d {
                for l in 0..d {
                    table[offset + i][offset + j][offset + l] = f.table()[i][j][l].clone();
                }
            }
        }
        unit = match (unit, f.unit()) {
            (Some(mut u), Some(fu)) => {
                u.extend_from_slice(fu.coeffs());
                Some(u)
            }
            _ => None,
        };
        offset += d;
    }
    let name = factors.iter().map(|f| f.name()).collect::<Vec<_>>().join("+");
    FinDimAlgebra::from_table(name, basis, table, unit).expect("direct sum of valid algebras")
}
