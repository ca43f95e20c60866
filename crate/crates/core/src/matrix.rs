//! Dense linear algebra over GF(p) with deterministic (first-nonzero)
//! pivoting, so kernels and particular solutions are reproducible.

use crate::field::mod_inverse;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl PrimeMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        PrimeMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = PrimeMatrix::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn set_column(&mut self, c: usize, v: &[u64]) {
        debug_assert_eq!(v.len(), self.rows);
        for (r, &x) in v.iter().enumerate() {
            self.set(r, c, x);
        }
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn matmul(&self, other: &PrimeMatrix) -> PrimeMatrix {
        debug_assert_eq!(self.cols, other.rows);
        debug_assert_eq!(self.p, other.p);
        let mut out = PrimeMatrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.data[i * other.cols + j] = v % self.p;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[u64]) -> Vec<u64> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc: u64 = 0;
                for j in 0..self.cols {
                    acc = (acc + self.get(i, j) * (v[j] % self.p)) % self.p;
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u32) -> PrimeMatrix {
        debug_assert_eq!(self.rows, self.cols);
        let mut acc = PrimeMatrix::identity(self.p, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.matmul(&base);
            }
            base = base.matmul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn inv_scalar(&self, a: u64) -> u64 {
        mod_inverse(a % self.p, self.p).expect("p is prime and a nonzero")
    }

    /// In-place reduced row echelon form; returns (pivot row, pivot column)
    /// pairs in elimination order. Pivot choice is the first nonzero entry
    /// scanning down each column, so results are reproducible.
    pub fn rref(&mut self) -> Vec<(usize, usize)> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let mut pivot = None;
            for r in row..self.rows {
                if self.get(r, col) != 0 {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(pr) = pivot else { continue };
            if pr != row {
                for c in 0..self.cols {
                    self.data.swap(row * self.cols + c, pr * self.cols + c);
                }
            }
            let inv = self.inv_scalar(self.get(row, col));
            for c in col..self.cols {
                let v = self.get(row, c) * inv % self.p;
                self.data[row * self.cols + c] = v;
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..self.cols {
                    let v = self.get(r, c) + (self.p - factor) * self.get(row, c) % self.p;
                    self.data[r * self.cols + c] = v % self.p;
                }
            }
            pivots.push((row, col));
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel, one vector per free column in ascending
    /// column order.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut pivot_of_col = vec![None; self.cols];
        for &(r, c) in &pivots {
            pivot_of_col[c] = Some(r);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for &(r, c) in &pivots {
                // Pivot variable value = -entry at (r, free).
                v[c] = (self.p - m.get(r, free)) % self.p;
            }
            basis.push(v);
        }
        basis
    }

    /// A particular solution of `self * x = rhs` with all free variables
    /// set to zero, or None when inconsistent.
    pub fn solve(&self, rhs: &[u64]) -> Option<Vec<u64>> {
        debug_assert_eq!(rhs.len(), self.rows);
        let mut aug = PrimeMatrix::zeros(self.p, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, rhs[r]);
        }
        let pivots = aug.rref();
        if pivots.iter().any(|&(_, c)| c == self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for &(r, c) in &pivots {
            x[c] = aug.get(r, self.cols);
        }
        Some(x)
    }
}

/// Column-space membership: does `v` lie in the span of `basis`?
pub fn in_span(p: u64, basis: &[Vec<u64>], v: &[u64]) -> bool {
    if basis.is_empty() {
        return v.iter().all(|&c| c % p == 0);
    }
    let dim = v.len();
    let mut m = PrimeMatrix::zeros(p, dim, basis.len());
    for (j, b) in basis.iter().enumerate() {
        m.set_column(j, b);
    }
    m.solve(v).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_rank() {
        // Circulant of (1, 1, 0) over GF(5): determinant 2, full rank.
        let mut m = PrimeMatrix::zeros(5, 3, 3);
        m.set(0, 0, 1);
        m.set(0, 1, 1);
        m.set(1, 1, 1);
        m.set(1, 2, 1);
        m.set(2, 0, 1);
        m.set(2, 2, 1);
        assert_eq!(m.rank(), 3);
        // Rank drops when a row is a linear combination of the others.
        let mut s = PrimeMatrix::zeros(5, 3, 3);
        s.set(0, 0, 1);
        s.set(0, 1, 2);
        s.set(0, 2, 3);
        s.set(1, 0, 2);
        s.set(1, 1, 4);
        s.set(1, 2, 1);
        s.set(2, 0, 3);
        s.set(2, 1, 1);
        s.set(2, 2, 4);
        // Rows 2 and 3 are 2x and 3x the first row mod 5.
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn kernel_of_sum_map() {
        // x + y + z = 0 over GF(3): kernel dim 2, deterministic basis.
        let mut m = PrimeMatrix::zeros(3, 1, 3);
        m.set(0, 0, 1);
        m.set(0, 1, 1);
        m.set(0, 2, 1);
        let k = m.kernel_basis();
        assert_eq!(k, vec![vec![2, 1, 0], vec![2, 0, 1]]);
        for v in &k {
            assert_eq!(m.matvec(v), vec![0]);
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let mut m = PrimeMatrix::zeros(7, 2, 2);
        m.set(0, 0, 2);
        m.set(1, 1, 3);
        let x = m.solve(&[4, 5]).unwrap();
        assert_eq!(m.matvec(&x), vec![4, 5]);

        let mut sing = PrimeMatrix::zeros(7, 2, 2);
        sing.set(0, 0, 1);
        sing.set(1, 0, 1);
        assert!(sing.solve(&[1, 2]).is_none());
        assert!(sing.solve(&[1, 1]).is_some());
    }

    #[test]
    fn matrix_power() {
        let mut m = PrimeMatrix::zeros(2, 2, 2);
        m.set(0, 1, 1);
        assert!(m.pow(2).is_zero());
        assert_eq!(m.pow(0), PrimeMatrix::identity(2, 2));
    }

    #[test]
    fn span_membership() {
        let basis = vec![vec![1, 1, 0], vec![0, 1, 1]];
        assert!(in_span(2, &basis, &[1, 0, 1]));
        assert!(!in_span(2, &basis, &[1, 0, 0]));
        assert!(in_span(2, &[], &[0, 0]));
        assert!(!in_span(2, &[], &[1, 0]));
    }
}
