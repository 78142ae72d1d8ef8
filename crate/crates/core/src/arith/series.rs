use num_traits::{One, Zero};

use super::{binomial, int, Rational};

/// Formal power series truncated after degree `order`; always holds exactly
/// `order + 1` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    /// Pads or truncates `coeffs` to `order + 1` entries.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        TruncSeries { coeffs }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let n = self.order().min(other.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        TruncSeries { coeffs: out }
    }

    pub fn pow(&self, k: usize) -> TruncSeries {
        (0..k).fold(Self::constant(Rational::one(), self.order()), |acc, _| acc.mul(self))
    }
}

/// Checks that `(1 - t)^i * sum_{n >= i} (1/n) C(n, i) t^(n - i)` equals the
/// constant `1/i` through degree `order`.
pub fn series_identity_check(i: usize, order: usize) -> bool {
    if i == 0 {
        return false;
    }
    let tail: Vec<Rational> = (i..=order + i)
        .map(|n| binomial(n, i) / int(n as i64))
        .collect();
    let tail = TruncSeries::new(tail, order);
    let one_minus_t = TruncSeries::new(vec![int(1), int(-1)], order);
    let lhs = one_minus_t.pow(i).mul(&tail);
    lhs == TruncSeries::constant(Rational::one() / int(i as i64), order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim_examples() {
        assert!(series_identity_check(1, 10));
        assert!(series_identity_check(2, 30));
        assert!(series_identity_check(5, 30));
        for i in 1..=10 {
            assert!(series_identity_check(i, 30));
        }
    }

    /// Oracle for i = 5: coefficients of sum (1/n) C(n,5) t^(n-5) are
    /// (n-1)(n-2)(n-3)(n-4)/5!, so multiplying the first few terms by
    /// (1-t)^5 = 1 - 5t + 10t^2 - 10t^3 + 5t^4 - t^5 by hand gives 1/5 then
    /// zeros.
    #[test]
    fn hand_expansion_i5() {
        let c = |n: i64| int((n - 1) * (n - 2) * (n - 3) * (n - 4)) / int(120);
        let binom5 = [1, -5, 10, -10, 5, -1];
        for deg in 0..6i64 {
            let s: Rational = (0..=deg)
                .map(|j| int(binom5[j as usize]) * c(5 + deg - j))
                .sum();
            let want = if deg == 0 { Rational::one() / int(5) } else { Rational::zero() };
            assert_eq!(s, want);
        }
    }

    #[test]
    fn truncation_is_exact_length() {
        let s = TruncSeries::new(vec![int(1); 10], 3);
        assert_eq!(s.coeffs().len(), 4);
        assert_eq!(s.mul(&s).coeffs(), &[int(1), int(2), int(3), int(4)]);
    }
}
