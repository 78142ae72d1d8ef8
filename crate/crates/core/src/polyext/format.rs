use num_traits::{One, Signed, Zero};

use crate::algebra::{AlgElem, FinDimAlgebra};
use crate::arith::{fmt_rational, Rational};

/// Canonical text of `sum_k coeffs[k] t^k`: terms sorted by descending degree,
/// then by basis index. A basis element equal to the unit prints as a bare
/// scalar.
pub fn format_terms(alg: &FinDimAlgebra, coeffs: &[AlgElem]) -> String {
    let unit_index = alg
        .unit()
        .and_then(|u| (0..alg.dim()).find(|&i| alg.basis_elem(i) == *u));
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        for (i, x) in c.coeffs().iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let name = (Some(i) != unit_index).then(|| alg.basis_names()[i].as_str());
            let term = term_text(&x.abs(), name, k);
            if out.is_empty() {
                if x.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if x.is_negative() { " - " } else { " + " });
            }
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn term_text(c: &Rational, name: Option<&str>, k: usize) -> String {
    let mut factors: Vec<String> = vec![];
    let power = match k {
        0 => None,
        1 => Some("t".to_string()),
        _ => Some(format!("t^{k}")),
    };
    let bare = name.is_none() && power.is_none();
    if !c.is_one() || bare {
        factors.push(fmt_rational(c));
    }
    factors.extend(name.map(str::to_string));
    factors.extend(power);
    factors.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rationals, upper_triangular_2};
    use crate::arith::frac;

    #[test]
    fn canonical_text() {
        let t2 = upper_triangular_2();
        let c0 = AlgElem::new(vec![Rational::zero(), frac(3, 2), Rational::zero()]);
        let c1 = AlgElem::from_ints(&[1, 0, -1]);
        assert_eq!(format_terms(&t2, &[c0, c1]), "E11*t - E22*t + 3/2*E12");
        assert_eq!(format_terms(&t2, &[]), "0");

        let q = rationals();
        let p = [AlgElem::from_ints(&[-1]), AlgElem::from_ints(&[-2]), AlgElem::from_ints(&[1])];
        assert_eq!(format_terms(&q, &p), "t^2 - 2*t - 1");
        assert_eq!(format_terms(&q, &[AlgElem::from_ints(&[-1])]), "-1");
    }
}
