//! Dense matrices over the rational function field, with the exact
//! elimination primitives the torsion computation is built on.

use crate::field::RatFunc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RfMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RatFunc>,
}

/// Row reduction outcome: pivot columns plus a basis of the kernel.
pub struct Elimination {
    pub pivot_cols: Vec<usize>,
    pub kernel: RfMatrix,
}

impl RfMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RfMatrix {
            rows,
            cols,
            entries: vec![RatFunc::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = RatFunc::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        RfMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RatFunc) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> Vec<RatFunc> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Matrix whose columns are the selected columns of self, in order.
    pub fn select_columns(&self, js: &[usize]) -> RfMatrix {
        RfMatrix::from_fn(self.rows, js.len(), |i, k| self[(i, js[k])].clone())
    }

    /// Horizontal concatenation [self | other].
    pub fn hcat(&self, other: &RfMatrix) -> RfMatrix {
        assert_eq!(self.rows, other.rows);
        RfMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn mul(&self, other: &RfMatrix) -> RfMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        RfMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = RatFunc::zero();
            for k in 0..self.cols {
                if !self[(i, k)].is_zero() && !other[(k, j)].is_zero() {
                    acc = acc.add(&self[(i, k)].mul(&other[(k, j)]));
                }
            }
            acc
        })
    }

    pub fn add(&self, other: &RfMatrix) -> RfMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RfMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].add(&other[(i, j)]))
    }

    pub fn neg(&self) -> RfMatrix {
        RfMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].neg())
    }

    pub fn scale(&self, c: &RatFunc) -> RfMatrix {
        RfMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].mul(c))
    }

    /// Determinant by Gaussian elimination with exact field arithmetic.
    pub fn det(&self) -> RatFunc {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = RatFunc::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return RatFunc::zero();
            };
            if p != c {
                for j in 0..n {
                    let tmp = m[(p, j)].clone();
                    m[(p, j)] = m[(c, j)].clone();
                    m[(c, j)] = tmp;
                }
                det = det.neg();
            }
            let pivot = m[(c, c)].clone();
            det = det.mul(&pivot);
            let inv = pivot.inverse();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].mul(&inv);
                for j in c..n {
                    let sub = f.mul(&m[(c, j)]);
                    m[(i, j)] = m[(i, j)].sub(&sub);
                }
            }
        }
        det
    }

    /// Reduced row echelon form, in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    let tmp = self[(p, j)].clone();
                    self[(p, j)] = self[(r, j)].clone();
                    self[(r, j)] = tmp;
                }
            }
            let inv = self[(r, c)].inverse();
            for j in 0..self.cols {
                self[(r, j)] = self[(r, j)].mul(&inv);
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in 0..self.cols {
                        let sub = f.mul(&self[(r, j)]);
                        self[(i, j)] = self[(i, j)].sub(&sub);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        pivots
    }

    /// Pivot columns (leftmost, first-nonzero pivot) and a kernel basis.
    pub fn eliminate(&self) -> Elimination {
        let mut work = self.clone();
        let pivots = work.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut kernel = RfMatrix::zero(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            kernel[(fc, k)] = RatFunc::one();
            for (row, &pc) in pivots.iter().enumerate() {
                kernel[(pc, k)] = work[(row, fc)].neg();
            }
        }
        Elimination {
            pivot_cols: pivots,
            kernel,
        }
    }

    pub fn rank(&self) -> usize {
        self.eliminate().pivot_cols.len()
    }

    /// Inverse by Gauss-Jordan; None when singular.
    pub fn inverse(&self) -> Option<RfMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = self.hcat(&RfMatrix::identity(n));
        let pivots = aug.rref();
        if pivots != (0..n).collect::<Vec<_>>() {
            return None;
        }
        Some(RfMatrix::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RatFunc::is_zero)
    }
}

impl std::ops::Index<(usize, usize)> for RfMatrix {
    type Output = RatFunc;
    fn index(&self, (i, j): (usize, usize)) -> &RatFunc {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RfMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut RatFunc {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.entries[i * self.cols + j]
    }
}
