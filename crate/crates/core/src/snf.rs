//! Smith normal form over the integers, with the unimodular transforms
//! tracked so the factorization can be re-verified by exact multiplication.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// Determinant by fraction-free Gaussian elimination (Bareiss).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let pivot = (k + 1..n).find(|&i| !a[(i, k)].is_zero());
                match pivot {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = &num / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row(i) += q * row(k)
    fn add_row(&mut self, i: usize, k: usize, q: &BigInt) {
        for c in 0..self.cols {
            let add = q * &self[(k, c)];
            self[(i, c)] += add;
        }
    }

    /// col(j) += q * col(k)
    fn add_col(&mut self, j: usize, k: usize, q: &BigInt) {
        for r in 0..self.rows {
            let add = q * &self[(r, k)];
            self[(r, j)] += add;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self[(i, c)].clone();
            self[(i, c)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form `D = U * A * V`, with `U`, `V` unimodular and
/// `D` diagonal with each entry dividing the next.
pub struct Snf {
    pub d: IntMat,
    pub u: IntMat,
    pub v: IntMat,
}

impl Snf {
    /// Diagonal entries of `D` (length = min(rows, cols)).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows.min(self.d.cols);
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Exact check that D = U * A * V and |det U| = |det V| = 1.
    pub fn verify(&self, a: &IntMat) -> bool {
        let prod = self.u.mul(a).mul(&self.v);
        if prod != self.d {
            return false;
        }
        self.u.det().abs().is_one() && self.v.det().abs().is_one()
    }
}

/// Computes the Smith normal form of `a` by elementary row/column operations.
pub fn smith_normal_form(a: &IntMat) -> Snf {
    let mut d = a.clone();
    let mut u = IntMat::identity(a.rows);
    let mut v = IntMat::identity(a.cols);
    let n = a.rows.min(a.cols);

    for t in 0..n {
        loop {
            // Smallest nonzero |entry| in the trailing block becomes the pivot.
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    let better = match &pivot {
                        None => true,
                        Some((pi, pj)) => d[(i, j)].abs() < d[(*pi, *pj)].abs(),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
            let (pi, pj) = match pivot {
                Some(p) => p,
                None => return finish(d, u, v, n), // trailing block is zero
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            // Reduce the pivot row and column.
            let mut clean = true;
            for i in t + 1..d.rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..d.cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            // Pivot must divide every remaining entry; otherwise fold the
            // offending row in and start over.
            let mut fixed = true;
            'scan: for i in t + 1..d.rows {
                for j in t + 1..d.cols {
                    if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                        let one = BigInt::one();
                        d.add_row(t, i, &one);
                        u.add_row(t, i, &one);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
    }
    finish(d, u, v, n)
}

fn finish(mut d: IntMat, mut u: IntMat, v: IntMat, n: usize) -> Snf {
    for t in 0..n {
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { d, u, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_i64(snf: &Snf) -> Vec<i64> {
        snf.diagonal()
            .iter()
            .map(|b| i64::try_from(b).unwrap())
            .collect()
    }

    #[test]
    fn snf_237_relations() {
        // rows 2e1, 3e2, 7e3, e1+e2+e3: invariant factors 1,1,1
        let a = IntMat::from_rows(vec![
            vec![2, 0, 0],
            vec![0, 3, 0],
            vec![0, 0, 7],
            vec![1, 1, 1],
        ]);
        let snf = smith_normal_form(&a);
        assert!(snf.verify(&a));
        assert_eq!(diag_i64(&snf), vec![1, 1, 1]);
    }

    #[test]
    fn snf_2222_relations() {
        let a = IntMat::from_rows(vec![
            vec![2, 0, 0, 0],
            vec![0, 2, 0, 0],
            vec![0, 0, 2, 0],
            vec![0, 0, 0, 2],
            vec![1, 1, 1, 1],
        ]);
        let snf = smith_normal_form(&a);
        assert!(snf.verify(&a));
        assert_eq!(diag_i64(&snf), vec![1, 2, 2, 2]);
    }

    #[test]
    fn snf_zero_matrix() {
        let a = IntMat::zeros(2, 3);
        let snf = smith_normal_form(&a);
        assert!(snf.verify(&a));
        assert_eq!(diag_i64(&snf), vec![0, 0]);
    }

    #[test]
    fn snf_divisibility_chain() {
        let a = IntMat::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let snf = smith_normal_form(&a);
        assert!(snf.verify(&a));
        let d = diag_i64(&snf);
        for w in d.windows(2) {
            if w[0] != 0 {
                assert_eq!(w[1] % w[0], 0, "chain broken: {:?}", d);
            } else {
                assert_eq!(w[1], 0);
            }
        }
        // classical example: invariant factors 2, 6, 12
        assert_eq!(d, vec![2, 6, 12]);
    }

    #[test]
    fn bareiss_det() {
        let a = IntMat::from_rows(vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(a.det(), BigInt::from(-2));
        let b = IntMat::from_rows(vec![vec![2, 0, 1], vec![1, 1, 0], vec![0, 3, 1]]);
        assert_eq!(b.det(), BigInt::from(5));
    }
}
