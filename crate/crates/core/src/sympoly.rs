//! Exact sparse multivariate polynomials over the rationals, with the
//! symmetric-function machinery built on them: the Vandermonde polynomial
//! V = prod_{i<j}(x_i - x_j), Schur expansion of even powers of V via the
//! bialternant formula (read the coefficients of V^{p+1} at the staircase
//! x^{lambda+delta}), and the exact Jacobian identity
//! J(p_1,...,p_n) = J_e(p_1,...,p_n) * V.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::group::all_permutations;
use crate::rational::{rat_int, render_rational, Rational};

#[derive(Debug, Error, PartialEq)]
pub enum SymPolyError {
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("exact division left a remainder")]
    NotDivisible,
}

/// Polynomial in `n` variables: canonical exponent vector -> nonzero
/// rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    pub n: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub fn zero(n: usize) -> Self {
        MPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = MPoly::zero(n);
        if !c.is_zero() {
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    pub fn one(n: usize) -> Self {
        MPoly::constant(n, rat_int(1))
    }

    pub fn var(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut e = vec![0u32; n];
        e[i] = 1;
        let mut p = MPoly::zero(n);
        p.terms.insert(e, rat_int(1));
        p
    }

    pub fn monomial(n: usize, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), n);
        let mut p = MPoly::zero(n);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(|| rat_int(0))
    }

    fn insert_add(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.n, other.n);
        let mut out = MPoly::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_add(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.n);
        }
        MPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one(self.n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(self.n);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            out.insert_add(d, c * rat_int(e[i] as i64));
        }
        out
    }

    pub fn eval(&self, xs: &[Rational]) -> Rational {
        assert_eq!(xs.len(), self.n);
        let mut acc = rat_int(0);
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in xs.iter().zip(e) {
                for _ in 0..k {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitutes `args[i]` for variable `i`.
    pub fn compose(&self, args: &[MPoly]) -> MPoly {
        assert_eq!(args.len(), self.n);
        let m = args.first().map_or(self.n, |a| a.n);
        let mut acc = MPoly::zero(m);
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(m, c.clone());
            for (arg, &k) in args.iter().zip(e) {
                if k > 0 {
                    term = term.mul(&arg.pow(k));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Exact synthetic division by (x_i - x_j): writes the polynomial in
    /// powers of x_i and folds down, substituting x_i -> x_j into the
    /// remainder check. Errors if the remainder is nonzero.
    pub fn div_linear_diff(&self, i: usize, j: usize) -> Result<MPoly, SymPolyError> {
        assert!(i != j && i < self.n && j < self.n);
        // group terms by the exponent of x_i
        let mut by_deg: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = e[i];
            let mut rest = e.clone();
            rest[i] = 0;
            by_deg
                .entry(d)
                .or_insert_with(|| MPoly::zero(self.n))
                .insert_add(rest, c.clone());
        }
        let max_deg = match by_deg.keys().next_back() {
            None => return Ok(MPoly::zero(self.n)),
            Some(&d) => d,
        };
        let coeff = |k: u32| by_deg.get(&k).cloned().unwrap_or_else(|| MPoly::zero(self.n));
        let xj = MPoly::var(self.n, j);
        let mut quotient = MPoly::zero(self.n);
        let mut carry = MPoly::zero(self.n); // running q_k
        for k in (1..=max_deg).rev() {
            carry = coeff(k).add(&carry.mul(&xj));
            // carry is the coefficient of x_i^{k-1} in the quotient
            let mut shifted = MPoly::zero(self.n);
            for (e, c) in &carry.terms {
                let mut e2 = e.clone();
                e2[i] += k - 1;
                shifted.insert_add(e2, c.clone());
            }
            quotient = quotient.add(&shifted);
        }
        let remainder = coeff(0).add(&carry.mul(&xj));
        if remainder.is_zero() {
            Ok(quotient)
        } else {
            Err(SymPolyError::NotDivisible)
        }
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        if k == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{}", i + 1, k)
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    render_rational(c)
                } else {
                    format!("{}*{}", render_rational(c), vars.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// V(x_1, ..., x_n) = prod_{i<j} (x_i - x_j).
pub fn vandermonde_poly(n: usize) -> MPoly {
    let mut acc = MPoly::one(n);
    for i in 0..n {
        for j in i + 1..n {
            acc = acc.mul(&MPoly::var(n, i).sub(&MPoly::var(n, j)));
        }
    }
    acc
}

/// Exact division by the full Vandermonde polynomial (successive synthetic
/// divisions by each (x_i - x_j)).
pub fn div_vandermonde(p: &MPoly) -> Result<MPoly, SymPolyError> {
    let n = p.n;
    let mut acc = p.clone();
    for i in 0..n {
        for j in i + 1..n {
            acc = acc.div_linear_diff(i, j)?;
        }
    }
    Ok(acc)
}

fn perm_sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Alternant a_mu = sum_{s in S_n} sgn(s) prod_i x_i^{mu_{s(i)}}.
pub fn alternant(n: usize, mu: &[u32]) -> MPoly {
    assert_eq!(mu.len(), n);
    let mut acc = MPoly::zero(n);
    for p in all_permutations(n) {
        let exps: Vec<u32> = (0..n).map(|i| mu[p[i]]).collect();
        acc.insert_add(exps, rat_int(perm_sign(&p)));
    }
    acc
}

/// Schur polynomial s_lambda = a_{lambda+delta} / a_delta via exact division.
pub fn schur_poly(n: usize, lambda: &[u32]) -> MPoly {
    assert!(lambda.len() <= n);
    let mu: Vec<u32> = (0..n)
        .map(|i| lambda.get(i).copied().unwrap_or(0) + (n - 1 - i) as u32)
        .collect();
    div_vandermonde(&alternant(n, &mu)).expect("alternants are divisible by V")
}

/// Canonical partition key: weakly decreasing, trailing zeros trimmed.
fn trim_partition(mut parts: Vec<u32>) -> Vec<u32> {
    while parts.last() == Some(&0) {
        parts.pop();
    }
    parts
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum VandermondeExpansion {
    /// Even p: V^p = sum c_lambda s_lambda.
    Schur(BTreeMap<Vec<u32>, Rational>),
    /// Odd p: coefficients of V^p itself at strictly decreasing exponents
    /// (one representative per antisymmetric orbit).
    Alternant(BTreeMap<Vec<u32>, Rational>),
}

/// Schur expansion of V^p (even p) via the bialternant route: V^{p+1} is
/// antisymmetric, so its coefficient at x^{lambda+delta} is c_lambda. For
/// odd p, V^p is itself antisymmetric and the staircase coefficient table is
/// returned directly.
pub fn vandermonde_power_expand(
    n: usize,
    p: u32,
) -> Result<VandermondeExpansion, SymPolyError> {
    if n > 5 || p > 6 {
        return Err(SymPolyError::SizeGuard(format!(
            "vandermonde_power_expand limited to n <= 5, p <= 6 (got n={n}, p={p})"
        )));
    }
    let v = vandermonde_poly(n);
    if p % 2 == 0 {
        let vp1 = v.pow(p + 1);
        let mut out = BTreeMap::new();
        for (e, c) in vp1.terms() {
            if !e.windows(2).all(|w| w[0] > w[1]) {
                continue;
            }
            let lambda: Vec<u32> = (0..n).map(|i| e[i] - (n - 1 - i) as u32).collect();
            out.insert(trim_partition(lambda), c.clone());
        }
        Ok(VandermondeExpansion::Schur(out))
    } else {
        let vp = v.pow(p);
        let mut out = BTreeMap::new();
        for (e, c) in vp.terms() {
            if e.windows(2).all(|w| w[0] > w[1]) {
                out.insert(e.clone(), c.clone());
            }
        }
        Ok(VandermondeExpansion::Alternant(out))
    }
}

/// Power sum p_k(x) = sum_i x_i^k.
pub fn power_sum(n: usize, k: u32) -> MPoly {
    let mut acc = MPoly::zero(n);
    for i in 0..n {
        let mut e = vec![0u32; n];
        e[i] = k;
        acc.insert_add(e, rat_int(1));
    }
    acc
}

/// Elementary symmetric polynomial e_k(x).
pub fn elementary_symmetric(n: usize, k: usize) -> MPoly {
    let mut acc = MPoly::zero(n);
    if k > n {
        return acc;
    }
    // iterate over k-subsets
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut e = vec![0u32; n];
        for &i in &idx {
            e[i] = 1;
        }
        acc.insert_add(e, rat_int(1));
        // next combination
        let mut pos = k;
        while pos > 0 {
            pos -= 1;
            if idx[pos] < n - (k - pos) {
                idx[pos] += 1;
                for q in pos + 1..k {
                    idx[q] = idx[q - 1] + 1;
                }
                break;
            }
            if pos == 0 {
                return acc;
            }
        }
        if k == 0 {
            return acc;
        }
    }
}

/// Determinant of a square matrix of polynomials by Laplace expansion.
pub fn poly_det(mat: &[Vec<MPoly>]) -> MPoly {
    let n = mat.len();
    let vars = if n == 0 { 0 } else { mat[0][0].n };
    if n == 0 {
        return MPoly::one(vars);
    }
    if n == 1 {
        return mat[0][0].clone();
    }
    let mut acc = MPoly::zero(vars);
    for j in 0..n {
        if mat[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MPoly>> = (1..n)
            .map(|r| {
                (0..n)
                    .filter(|&c| c != j)
                    .map(|c| mat[r][c].clone())
                    .collect()
            })
            .collect();
        let term = mat[0][j].mul(&poly_det(&minor));
        acc = if j % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

/// Power sums written in the elementary symmetric generators via Newton's
/// identities: p_k = e_1 p_{k-1} - e_2 p_{k-2} + ... + (-1)^{k-1} k e_k.
/// Returns P_1..P_n as polynomials in the variables e_1..e_n.
pub fn power_sums_in_elementary(n: usize) -> Vec<MPoly> {
    let e = |k: usize| MPoly::var(n, k - 1);
    let mut ps: Vec<MPoly> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut acc = MPoly::zero(n);
        for i in 1..k {
            let term = e(i).mul(&ps[k - 1 - i]);
            acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        let last = e(k).scale(&rat_int(k as i64));
        acc = if k % 2 == 1 { acc.add(&last) } else { acc.sub(&last) };
        ps.push(acc);
    }
    ps
}

#[derive(Debug, Clone, Serialize)]
pub struct JacobianSample {
    pub point: Vec<String>,
    pub jacobian: String,
    pub je_times_v: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct JacobianReport {
    pub n: usize,
    pub identity_holds: bool,
    pub quotient_equals_je: bool,
    pub samples: Vec<JacobianSample>,
}

/// Checks J(p_1,...,p_n) = J_e(p_1,...,p_n) * V exactly: the left side is
/// det(d p_i / d x_j), divided exactly by V; the right-side J_e comes from
/// writing the power sums in elementary symmetric generators (Newton) and
/// differentiating there, then substituting e_k = e_k(x).
pub fn jacobian_identity_check(
    n: usize,
    sample_points: &[Vec<Rational>],
) -> Result<JacobianReport, SymPolyError> {
    if n == 0 || n > 5 {
        return Err(SymPolyError::SizeGuard(format!(
            "jacobian_identity_check limited to 1 <= n <= 5 (got {n})"
        )));
    }
    let jac: Vec<Vec<MPoly>> = (1..=n)
        .map(|i| {
            let p = power_sum(n, i as u32);
            (0..n).map(|j| p.derivative(j)).collect()
        })
        .collect();
    let j_poly = poly_det(&jac);
    let quotient = div_vandermonde(&j_poly)?;

    let ps_in_e = power_sums_in_elementary(n);
    let je_in_e: Vec<Vec<MPoly>> = ps_in_e
        .iter()
        .map(|p| (0..n).map(|j| p.derivative(j)).collect())
        .collect();
    let e_polys: Vec<MPoly> = (1..=n).map(|k| elementary_symmetric(n, k)).collect();
    let je = poly_det(&je_in_e).compose(&e_polys);

    let quotient_equals_je = quotient == je;
    let v = vandermonde_poly(n);
    let je_v = je.mul(&v);
    let identity_holds = quotient_equals_je && j_poly == je_v;

    let samples = sample_points
        .iter()
        .map(|pt| JacobianSample {
            point: pt.iter().map(render_rational).collect(),
            jacobian: render_rational(&j_poly.eval(pt)),
            je_times_v: render_rational(&je_v.eval(pt)),
        })
        .collect();

    Ok(JacobianReport {
        n,
        identity_holds,
        quotient_equals_je,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn poly_basics() {
        let n = 2;
        let x = MPoly::var(n, 0);
        let y = MPoly::var(n, 1);
        let p = x.add(&y).pow(2);
        assert_eq!(p.coefficient(&[2, 0]), rat_int(1));
        assert_eq!(p.coefficient(&[1, 1]), rat_int(2));
        assert_eq!(p.eval(&[rat_int(2), rat_int(3)]), rat_int(25));
        assert_eq!(p.derivative(0), x.add(&y).scale(&rat_int(2)));
    }

    #[test]
    fn synthetic_division_exact() {
        let n = 3;
        let v = vandermonde_poly(n);
        let q = div_vandermonde(&v).unwrap();
        assert_eq!(q, MPoly::one(n));

        let sym = power_sum(n, 2);
        let prod = v.mul(&sym);
        assert_eq!(div_vandermonde(&prod).unwrap(), sym);

        // non-divisible polynomial leaves a remainder
        assert_eq!(
            MPoly::var(n, 0).div_linear_diff(0, 1),
            Err(SymPolyError::NotDivisible)
        );
    }

    #[test]
    fn schur_small() {
        // s_(1) = e_1, s_(1,1) = e_2, s_(2) = p-like
        let s1 = schur_poly(2, &[1]);
        assert_eq!(s1, power_sum(2, 1));
        let s11 = schur_poly(2, &[1, 1]);
        assert_eq!(s11, elementary_symmetric(2, 2));
        let s2 = schur_poly(2, &[2]);
        let expected = MPoly::monomial(2, vec![2, 0], rat_int(1))
            .add(&MPoly::monomial(2, vec![1, 1], rat_int(1)))
            .add(&MPoly::monomial(2, vec![0, 2], rat_int(1)));
        assert_eq!(s2, expected);
    }

    #[test]
    fn expand_p0_trivial() {
        let out = vandermonde_power_expand(3, 0).unwrap();
        let VandermondeExpansion::Schur(map) = out else {
            panic!("even p must give a Schur table");
        };
        assert_eq!(map.len(), 1);
        assert_eq!(map.get(&vec![]), Some(&rat_int(1)));
    }

    #[test]
    fn expand_n2_p2() {
        let out = vandermonde_power_expand(2, 2).unwrap();
        let VandermondeExpansion::Schur(map) = out else {
            panic!()
        };
        assert_eq!(map.get(&vec![2]), Some(&rat_int(1)));
        assert_eq!(map.get(&vec![1, 1]), Some(&rat_int(-3)));
        assert_eq!(map.len(), 2);
    }

    #[test]
    fn expand_reconstructs_power() {
        for (n, p) in [(2usize, 2u32), (3, 2), (2, 4), (3, 4), (4, 2)] {
            let out = vandermonde_power_expand(n, p).unwrap();
            let VandermondeExpansion::Schur(map) = out else {
                panic!()
            };
            let mut acc = MPoly::zero(n);
            for (lambda, c) in &map {
                acc = acc.add(&schur_poly(n, lambda).scale(c));
            }
            assert_eq!(acc, vandermonde_poly(n).pow(p), "n={n} p={p}");
        }
    }

    #[test]
    fn expand_random_point_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let (n, p) = (3usize, 2u32);
        let VandermondeExpansion::Schur(map) = vandermonde_power_expand(n, p).unwrap()
        else {
            panic!()
        };
        let schurs: Vec<(MPoly, Rational)> = map
            .iter()
            .map(|(l, c)| (schur_poly(n, l), c.clone()))
            .collect();
        let vp = vandermonde_poly(n).pow(p);
        for _ in 0..50 {
            let pt: Vec<Rational> = (0..n)
                .map(|_| rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=9)))
                .collect();
            let lhs: Rational = schurs.iter().map(|(s, c)| s.eval(&pt) * c).sum();
            assert_eq!(lhs, vp.eval(&pt));
        }
    }

    #[test]
    fn expand_odd_alternant() {
        let out = vandermonde_power_expand(2, 1).unwrap();
        let VandermondeExpansion::Alternant(map) = out else {
            panic!("odd p must give the alternant table");
        };
        assert_eq!(map.len(), 1);
        assert_eq!(map.get(&vec![1, 0]), Some(&rat_int(1)));
    }

    #[test]
    fn expand_size_guard() {
        assert!(matches!(
            vandermonde_power_expand(6, 2),
            Err(SymPolyError::SizeGuard(_))
        ));
        assert!(matches!(
            vandermonde_power_expand(3, 7),
            Err(SymPolyError::SizeGuard(_))
        ));
    }

    #[test]
    fn newton_identities_consistent() {
        for n in 1..=5 {
            let ps_e = power_sums_in_elementary(n);
            let e_polys: Vec<MPoly> = (1..=n).map(|k| elementary_symmetric(n, k)).collect();
            for (k, p_in_e) in ps_e.iter().enumerate() {
                assert_eq!(
                    p_in_e.compose(&e_polys),
                    power_sum(n, (k + 1) as u32),
                    "n={n} k={}",
                    k + 1
                );
            }
        }
    }

    #[test]
    fn jacobian_identity_n1_n2() {
        let r = jacobian_identity_check(1, &[]).unwrap();
        assert!(r.identity_holds);

        let r = jacobian_identity_check(2, &[vec![rat_int(1), rat_int(3)]]).unwrap();
        assert!(r.identity_holds);
        // J(p1,p2) = -2 V: at (1,3), V = -2, J = det[[1,1],[2,6]] = 4
        assert_eq!(r.samples[0].jacobian, "4");
        assert_eq!(r.samples[0].je_times_v, "4");
    }

    #[test]
    fn jacobian_identity_up_to_5() {
        for n in 3..=5 {
            let r = jacobian_identity_check(n, &[]).unwrap();
            assert!(r.identity_holds, "n={n}");
            assert!(r.quotient_equals_je, "n={n}");
        }
        assert!(jacobian_identity_check(6, &[]).is_err());
    }
}
