//! Integer matrices: Hermite and Smith normal forms for the ideal and
//! class-group bookkeeping. Sizes stay small (factor bases of a few hundred
//! ideals at most), so the classical algorithms suffice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        Self { rows: r, cols: c, data }
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self.at(i, c).clone();
            *self.at_mut(i, c) = v;
        }
    }

    /// row_i -= q * row_j
    fn sub_scaled_row(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.at(i, c) - q * self.at(j, c);
            *self.at_mut(i, c) = v;
        }
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.at(i, k).is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + self.at(i, k) * other.at(k, j);
                    *out.at_mut(i, j) = v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..self.cols {
                    acc += self.at(i, j) * &v[j];
                }
                acc
            })
            .collect()
    }

    /// Row-style Hermite normal form of the lattice spanned by the rows:
    /// upper-echelon with positive pivots and entries above each pivot
    /// reduced into [0, pivot). Zero rows are dropped.
    pub fn hnf(&self) -> IMat {
        let mut m = self.clone();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            // euclidean elimination below pivot_row in this column
            loop {
                let mut idx: Option<usize> = None;
                for r in pivot_row..m.rows {
                    if !m.at(r, col).is_zero() {
                        idx = match idx {
                            None => Some(r),
                            Some(b) => {
                                if m.at(r, col).abs() < m.at(b, col).abs() {
                                    Some(r)
                                } else {
                                    Some(b)
                                }
                            }
                        };
                    }
                }
                let Some(best) = idx else { break };
                m.swap_rows(pivot_row, best);
                let mut any_left = false;
                for r in pivot_row + 1..m.rows {
                    if m.at(r, col).is_zero() {
                        continue;
                    }
                    let q = div_round(m.at(r, col), m.at(pivot_row, col));
                    m.sub_scaled_row(r, pivot_row, &q);
                    if !m.at(r, col).is_zero() {
                        any_left = true;
                    }
                }
                if !any_left {
                    break;
                }
            }
            if pivot_row < m.rows && !m.at(pivot_row, col).is_zero() {
                if m.at(pivot_row, col).is_negative() {
                    m.negate_row(pivot_row);
                }
                // reduce entries above the pivot into [0, pivot)
                for r in 0..pivot_row {
                    let q = m.at(r, col).div_floor(m.at(pivot_row, col));
                    m.sub_scaled_row(r, pivot_row, &q);
                }
                pivot_row += 1;
                if pivot_row == m.rows {
                    break;
                }
            }
        }
        // drop zero rows
        let mut rows = Vec::new();
        for r in 0..m.rows {
            if (0..m.cols).any(|c| !m.at(r, c).is_zero()) {
                rows.push(m.row(r).to_vec());
            }
        }
        IMat::from_rows_or_empty(rows, m.cols)
    }

    fn from_rows_or_empty(rows: Vec<Vec<BigInt>>, cols: usize) -> IMat {
        if rows.is_empty() {
            IMat::zero(0, cols)
        } else {
            IMat::from_rows(rows)
        }
    }

    /// Determinant of a square upper-triangular matrix.
    pub fn det_triangular(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let mut d = BigInt::one();
        for i in 0..self.rows {
            d *= self.at(i, i);
        }
        d
    }

    /// Solve x * H = target over Z for H a full-rank square HNF (upper
    /// triangular, positive diagonal). None if no integral solution.
    pub fn solve_left_triangular(&self, target: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(target.len(), self.cols);
        let n = self.rows;
        let mut x = vec![BigInt::zero(); n];
        for c in 0..n {
            let mut acc = target[c].clone();
            for i in 0..c {
                acc -= &x[i] * self.at(i, c);
            }
            let (q, r) = acc.div_rem(self.at(c, c));
            if !r.is_zero() {
                return None;
            }
            x[c] = q;
        }
        Some(x)
    }

    /// Smith normal form diagonal with the left transform:
    /// U * self * V = D for unimodular U (returned) and V (discarded).
    /// The diagonal satisfies the divisibility chain d_1 | d_2 | ...
    pub fn snf_with_left(&self) -> (Vec<BigInt>, IMat) {
        let mut a = self.clone();
        let mut u = IMat::identity(a.rows);
        let k = a.rows.min(a.cols);
        let mut t = 0usize;
        while t < k {
            // find a nonzero entry of least absolute value in the submatrix
            let mut best: Option<(usize, usize)> = None;
            for i in t..a.rows {
                for j in t..a.cols {
                    if a.at(i, j).is_zero() {
                        continue;
                    }
                    best = match best {
                        None => Some((i, j)),
                        Some((bi, bj)) => {
                            if a.at(i, j).abs() < a.at(bi, bj).abs() {
                                Some((i, j))
                            } else {
                                Some((bi, bj))
                            }
                        }
                    };
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap_rows(t, bi);
            u.swap_rows(t, bi);
            a.swap_cols(t, bj);
            'reduce: loop {
                // clear column t below the pivot
                for i in t + 1..a.rows {
                    if a.at(i, t).is_zero() {
                        continue;
                    }
                    let q = div_round(a.at(i, t), a.at(t, t));
                    a.sub_scaled_row(i, t, &q);
                    u.sub_scaled_row(i, t, &q);
                    if !a.at(i, t).is_zero() {
                        // remainder smaller than pivot: swap up and restart
                        a.swap_rows(t, i);
                        u.swap_rows(t, i);
                        continue 'reduce;
                    }
                }
                // clear row t right of the pivot (column ops, V untracked)
                for j in t + 1..a.cols {
                    if a.at(t, j).is_zero() {
                        continue;
                    }
                    let q = div_round(a.at(t, j), a.at(t, t));
                    a.sub_scaled_col(j, t, &q);
                    if !a.at(t, j).is_zero() {
                        a.swap_cols(t, j);
                        continue 'reduce;
                    }
                }
                // pivot must divide the rest of the submatrix
                for i in t + 1..a.rows {
                    for j in t + 1..a.cols {
                        if !(a.at(i, j) % a.at(t, t)).is_zero() {
                            // fold row i into row t and restart
                            let one = BigInt::from(-1);
                            a.sub_scaled_row(t, i, &one);
                            u.sub_scaled_row(t, i, &one);
                            continue 'reduce;
                        }
                    }
                }
                break;
            }
            if a.at(t, t).is_negative() {
                a.negate_row(t);
                u.negate_row(t);
            }
            t += 1;
        }
        let diag = (0..k).map(|i| a.at(i, i).clone()).collect();
        (diag, u)
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// col_i -= q * col_j
    fn sub_scaled_col(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.at(r, i) - q * self.at(r, j);
            *self.at_mut(r, i) = v;
        }
    }
}

/// Quotient rounding to nearest (ties toward zero), keeping remainders small
/// during the eliminations.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (a.is_negative()) == (b.is_negative()) {
            q + BigInt::one()
        } else {
            q - BigInt::one()
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IMat {
        IMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn hnf_simple_lattice() {
        // rows (2,0) and (0,2) plus (1,1): index-2 sublattice of Z^2
        let a = m(&[&[2, 0], &[0, 2], &[1, 1]]);
        let h = a.hnf();
        assert_eq!(h.rows, 2);
        assert_eq!(h.det_triangular(), BigInt::from(2));
        assert_eq!(*h.at(0, 0), BigInt::one());
        assert_eq!(*h.at(1, 1), BigInt::from(2));
    }

    #[test]
    fn hnf_is_canonical_under_row_shuffles() {
        let a = m(&[&[4, 6, 1], &[2, 3, 5], &[0, 0, 7]]);
        let b = m(&[&[2, 3, 5], &[0, 0, 7], &[4, 6, 1]]);
        assert_eq!(a.hnf(), b.hnf());
    }

    #[test]
    fn solve_membership() {
        let h = m(&[&[1, 3], &[0, 5]]);
        // (1,3) + 2*(0,5) = (1,13)
        let x = h
            .solve_left_triangular(&[BigInt::from(1), BigInt::from(13)])
            .unwrap();
        assert_eq!(x, vec![BigInt::from(1), BigInt::from(2)]);
        assert!(h
            .solve_left_triangular(&[BigInt::from(0), BigInt::from(3)])
            .is_none());
    }

    #[test]
    fn snf_diagonal_and_transform() {
        // classical example: [[2,4,4],[-6,6,12],[10,-4,-16]] has SNF (2,6,12)
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let (d, u) = a.snf_with_left();
        assert_eq!(
            d,
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        // U is unimodular: |det U| = 1 via SNF of U itself
        let (du, _) = u.snf_with_left();
        assert!(du.iter().all(|x| x.is_one()));
    }

    #[test]
    fn snf_divisibility_chain_random() {
        let mut rng = crate::rng::SplitMix64::new(0x51f7);
        for _ in 0..60 {
            let r = 2 + rng.below(3) as usize;
            let c = 2 + rng.below(3) as usize;
            let rows: Vec<Vec<BigInt>> = (0..r)
                .map(|_| (0..c).map(|_| BigInt::from(rng.range_i64(-9, 9))).collect())
                .collect();
            let a = IMat::from_rows(rows);
            let (d, u) = a.snf_with_left();
            for w in d.windows(2) {
                if !w[1].is_zero() {
                    assert!(
                        !w[0].is_zero() && (&w[1] % &w[0]).is_zero(),
                        "chain broken: {:?}",
                        d
                    );
                }
            }
            // left transform really is unimodular
            let (du, _) = u.snf_with_left();
            assert!(du.iter().all(|x| x.is_one()));
        }
    }
}
