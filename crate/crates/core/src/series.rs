//! Truncated formal power series with exact rational coefficients, plus the
//! two product formulas used throughout: the symmetric-product generating
//! function `prod (1-q^l)^{-chi}` and the Fock-space graded dimension
//! `prod (1+q^l)^{k1} / prod (1-q^l)^{k0}`.

use std::fmt;

use num::Zero;
use serde::Serialize;

use crate::rational::{rat_int, render_rational, Rational};

/// Coefficients up to and including `q^order`. Arithmetic never extends the
/// truncation order silently: binary operations truncate to the minimum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty());
        PowerSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![rat_int(0); order + 1];
        coeffs[0] = rat_int(1);
        PowerSeries { coeffs }
    }

    /// 1 - q^l, truncated at `order`.
    pub fn one_minus_power(l: usize, order: usize) -> Self {
        let mut coeffs = vec![rat_int(0); order + 1];
        coeffs[0] = rat_int(1);
        if l <= order {
            coeffs[l] = rat_int(-1);
        }
        PowerSeries { coeffs }
    }

    /// 1 + q^l, truncated at `order`.
    pub fn one_plus_power(l: usize, order: usize) -> Self {
        let mut coeffs = vec![rat_int(0); order + 1];
        coeffs[0] = rat_int(1);
        if l <= order {
            coeffs[l] = rat_int(1);
        }
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(|| rat_int(0))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        let mut coeffs = vec![rat_int(0); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        PowerSeries { coeffs }
    }

    /// Multiplicative inverse via the geometric-series recursion.
    /// Panics if the constant term is zero.
    pub fn inverse(&self) -> PowerSeries {
        assert!(!self.coeffs[0].is_zero(), "series not invertible");
        let order = self.order();
        let c0_inv = rat_int(1) / &self.coeffs[0];
        let mut inv = vec![rat_int(0); order + 1];
        inv[0] = c0_inv.clone();
        for k in 1..=order {
            let mut acc = rat_int(0);
            for j in 1..=k {
                acc += &self.coeffs[j] * &inv[k - j];
            }
            inv[k] = -acc * &c0_inv;
        }
        PowerSeries { coeffs: inv }
    }

    /// Integer power, negative exponents via `inverse`.
    pub fn powi(&self, exp: i64) -> PowerSeries {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut acc = PowerSeries::one(self.order());
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Coefficients rendered as `p/q` strings (JSON interface format).
    pub fn render(&self) -> Vec<String> {
        self.coeffs.iter().map(render_rational).collect()
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.render().join(", "))
    }
}

/// `prod_{l>=1} (1 - q^l)^{-chi}` truncated at `order`.
pub fn sym_euler_series(chi: i64, order: usize) -> PowerSeries {
    let mut acc = PowerSeries::one(order);
    for l in 1..=order.max(1) {
        if l > order {
            break;
        }
        acc = acc.mul(&PowerSeries::one_minus_power(l, order).powi(-chi));
    }
    acc
}

/// Fock graded dimension `prod (1+q^l)^{k1} / prod (1-q^l)^{k0}`.
pub fn fock_graded_dimension(k0: u64, k1: u64, order: usize) -> PowerSeries {
    let mut acc = PowerSeries::one(order);
    for l in 1..=order {
        acc = acc.mul(&PowerSeries::one_plus_power(l, order).powi(k1 as i64));
        acc = acc.mul(&PowerSeries::one_minus_power(l, order).powi(-(k0 as i64)));
    }
    acc
}

/// Independent partition counter (restricted-part dynamic program), used as
/// the oracle for the product formulas. Counts partitions of `n`; with
/// `distinct`, partitions into distinct parts.
pub fn partition_count(n: usize, distinct: bool) -> u64 {
    let mut table = vec![0u64; n + 1];
    table[0] = 1;
    for part in 1..=n.max(1) {
        if part > n {
            break;
        }
        if distinct {
            for k in (part..=n).rev() {
                table[k] += table[k - part];
            }
        } else {
            for k in part..=n {
                table[k] += table[k - part];
            }
        }
    }
    table[n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn zero_exponent_is_one() {
        let s = sym_euler_series(0, 6);
        assert_eq!(s.coeff(0), rat_int(1));
        for k in 1..=6 {
            assert_eq!(s.coeff(k), rat_int(0));
        }
    }

    #[test]
    fn chi_one_gives_partition_numbers() {
        let s = sym_euler_series(1, 10);
        for k in 0..=10 {
            assert_eq!(s.coeff(k), rat_int(partition_count(k, false) as i64));
        }
        // spot values from the oracle: 1, 1, 2, 3, 5, 7, 11
        assert_eq!(s.coeff(6), rat_int(11));
    }

    #[test]
    fn chi_minus_one_gives_euler_function() {
        // pentagonal-number oracle for prod (1 - q^l)
        let order = 12;
        let s = sym_euler_series(-1, order);
        let mut expected = vec![0i64; order + 1];
        expected[0] = 1;
        let mut k = 1i64;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            let g2 = k * (3 * k + 1) / 2;
            if g1 > order as i64 {
                break;
            }
            // coefficient (-1)^k at both generalized pentagonal numbers
            let sign = if k % 2 == 0 { 1 } else { -1 };
            if g1 <= order as i64 {
                expected[g1 as usize] += sign;
            }
            if g2 <= order as i64 {
                expected[g2 as usize] += sign;
            }
            k += 1;
        }
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(s.coeff(i), rat_int(e), "coefficient {i}");
        }
        // known Euler-function prefix 1, -1, -1, 0, 0, 1, 0, 1
        let prefix: Vec<Rational> = (0..=7).map(|i| s.coeff(i)).collect();
        let want: Vec<Rational> = [1, -1, -1, 0, 0, 1, 0, 1]
            .iter()
            .map(|&v| rat_int(v))
            .collect();
        assert_eq!(prefix, want);
    }

    #[test]
    fn fock_dimension_cases() {
        let s = fock_graded_dimension(0, 0, 8);
        assert_eq!(s, PowerSeries::one(8));

        let s = fock_graded_dimension(1, 0, 12);
        for k in 0..=12 {
            assert_eq!(s.coeff(k), rat_int(partition_count(k, false) as i64));
        }

        let s = fock_graded_dimension(0, 1, 12);
        for k in 0..=12 {
            assert_eq!(s.coeff(k), rat_int(partition_count(k, true) as i64));
        }
        // 1,1,1,2,2,3,4 from the distinct-partition oracle
        assert_eq!(s.coeff(6), rat_int(4));
    }

    #[test]
    fn series_addition_law_of_exponents() {
        for (a, b) in [(1i64, 2i64), (-1, 3), (2, -2), (-3, -1)] {
            let lhs = sym_euler_series(a, 8).mul(&sym_euler_series(b, 8));
            let rhs = sym_euler_series(a + b, 8);
            assert_eq!(lhs, rhs, "chi {a} + {b}");
        }
    }

    #[test]
    fn inverse_is_right_inverse() {
        let s = sym_euler_series(3, 9);
        let prod = s.mul(&s.inverse());
        assert_eq!(prod, PowerSeries::one(9));
    }

    #[test]
    fn truncation_to_minimum_order() {
        let a = PowerSeries::one(3);
        let b = PowerSeries::one(7);
        assert_eq!(a.mul(&b).order(), 3);
        let c = rat(1, 2);
        let s = PowerSeries::from_coeffs(vec![rat_int(1), c]);
        assert_eq!(s.order(), 1);
    }
}
