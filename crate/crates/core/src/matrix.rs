//! Minimal dense matrices over a finite field: just enough exact linear
//! algebra (products, determinants by Gaussian elimination, rank, column
//! selection) for the code-theoretic checks in this crate.

use crate::gf::{Field, FieldElement};

/// A dense row-major matrix over a single finite field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    /// Builds a matrix from `nrows * ncols` entries computed by `f(i, j)`.
    pub fn from_fn(
        nrows: usize,
        ncols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Matrix {
        let mut data = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                data.push(f(i, j));
            }
        }
        Matrix { nrows, ncols, data }
    }

    /// Builds a matrix from rows, which must all have the same length.
    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Matrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix {
            nrows,
            ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Number of rows.
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    /// Number of columns.
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Entry at row `i`, column `j`.
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.ncols + j]
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    /// The transpose.
    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.ncols, self.nrows, |i, j| self.at(j, i))
    }

    /// Matrix product over the field.
    pub fn mul(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch");
        Matrix::from_fn(self.nrows, other.ncols, |i, j| {
            let mut acc = field.zero();
            for t in 0..self.ncols {
                acc = field.add(acc, field.mul(self.at(i, t), other.at(t, j)));
            }
            acc
        })
    }

    /// True when every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    /// The submatrix consisting of the given columns, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.nrows, cols.len(), |i, j| self.at(i, cols[j]))
    }

    /// Determinant of a square matrix by Gaussian elimination with row
    /// swaps (exact over a field).
    pub fn det(&self, field: &Field) -> FieldElement {
        assert_eq!(self.nrows, self.ncols, "determinant of non-square matrix");
        let n = self.nrows;
        let mut a = self.data.clone();
        let mut det = field.one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => return field.zero(),
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                }
                det = field.neg(det);
            }
            let pv = a[col * n + col];
            det = field.mul(det, pv);
            let pv_inv = field.inv(pv);
            for r in col + 1..n {
                let factor = field.mul(a[r * n + col], pv_inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let sub = field.mul(factor, a[col * n + j]);
                    a[r * n + j] = field.sub(a[r * n + j], sub);
                }
            }
        }
        det
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self, field: &Field) -> usize {
        let (n, m) = (self.nrows, self.ncols);
        let mut a = self.data.clone();
        let mut rank = 0;
        for col in 0..m {
            if rank == n {
                break;
            }
            let pivot = (rank..n).find(|&r| !a[r * m + col].is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => continue,
            };
            if pivot != rank {
                for j in 0..m {
                    a.swap(rank * m + j, pivot * m + j);
                }
            }
            let pv_inv = field.inv(a[rank * m + col]);
            for r in rank + 1..n {
                let factor = field.mul(a[r * m + col], pv_inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..m {
                    let sub = field.mul(factor, a[rank * m + j]);
                    a[r * m + j] = field.sub(a[r * m + j], sub);
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    fn mat(field: &Field, rows: &[&[u32]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&i| field.element(i)).collect())
                .collect(),
        )
    }

    #[test]
    fn det_2x2_frozen() {
        let f5 = Field::new(5, 1).unwrap();
        // det [[1,1],[1,4]] = 4 - 1 = 3.
        let m = mat(&f5, &[&[1, 1], &[1, 4]]);
        assert_eq!(m.det(&f5), f5.element(3));
    }

    #[test]
    fn det_singular_and_permutation_sign() {
        let f7 = Field::new(7, 1).unwrap();
        assert_eq!(mat(&f7, &[&[1, 2], &[2, 4]]).det(&f7), f7.zero());
        // Swapping two rows flips the sign.
        let a = mat(&f7, &[&[1, 2], &[3, 4]]);
        let b = mat(&f7, &[&[3, 4], &[1, 2]]);
        assert_eq!(a.det(&f7), f7.neg(b.det(&f7)));
    }

    #[test]
    fn det_by_laplace_oracle_3x3() {
        let f9 = Field::new(3, 2).unwrap();
        for seed in 0..40u32 {
            let e: Vec<u32> = (0..9)
                .map(|i| (seed.wrapping_mul(29).wrapping_add(i * 7)) % 9)
                .collect();
            let m = mat(&f9, &[&e[0..3], &e[3..6], &e[6..9]]);
            // Cofactor expansion along the first row.
            let minor = |r: [usize; 2], c: [usize; 2]| {
                let sub = Matrix::from_fn(2, 2, |i, j| m.at(r[i], c[j]));
                sub.det(&f9)
            };
            let mut expect = f9.mul(m.at(0, 0), minor([1, 2], [1, 2]));
            expect = f9.sub(expect, f9.mul(m.at(0, 1), minor([1, 2], [0, 2])));
            expect = f9.add(expect, f9.mul(m.at(0, 2), minor([1, 2], [0, 1])));
            assert_eq!(m.det(&f9), expect);
        }
    }

    #[test]
    fn product_and_rank() {
        let f5 = Field::new(5, 1).unwrap();
        let a = mat(&f5, &[&[1, 2], &[3, 4]]);
        let id = mat(&f5, &[&[1, 0], &[0, 1]]);
        assert_eq!(a.mul(&f5, &id), a);
        assert_eq!(a.rank(&f5), 2);
        let singular = mat(&f5, &[&[1, 2], &[2, 4]]);
        assert_eq!(singular.rank(&f5), 1);
        assert!(mat(&f5, &[&[0, 0], &[0, 0]]).is_zero());
    }

    #[test]
    fn select_cols_and_transpose() {
        let f5 = Field::new(5, 1).unwrap();
        let a = mat(&f5, &[&[1, 2, 3], &[4, 0, 1]]);
        let sel = a.select_cols(&[2, 0]);
        assert_eq!(sel.at(0, 0), f5.element(3));
        assert_eq!(sel.at(1, 1), f5.element(4));
        assert_eq!(a.transpose().at(2, 1), f5.element(1));
    }
}
