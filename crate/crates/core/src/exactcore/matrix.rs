//! Dense rational matrices and exact elimination.

use num_traits::{One, Zero};

use super::rat::{dot, QVec, Rat};
use crate::error::{Error, Result};

/// Row-major rational matrix with a fixed column count (so empty matrices keep their shape).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QMat {
    ncols: usize,
    rows: Vec<QVec>,
}

impl QMat {
    pub fn new(ncols: usize, rows: Vec<QVec>) -> Result<Self> {
        for r in &rows {
            if r.len() != ncols {
                return Err(Error::DimensionMismatch { expected: ncols, got: r.len() });
            }
        }
        Ok(QMat { ncols, rows })
    }

    /// Builds from rows, panicking on ragged input. For internal use with known shapes.
    pub fn from_rows(ncols: usize, rows: Vec<QVec>) -> Self {
        Self::new(ncols, rows).expect("ragged matrix")
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        QMat { ncols, rows: vec![vec![Rat::zero(); ncols]; nrows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = Rat::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[QVec] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<QVec> {
        self.rows
    }

    pub fn row(&self, i: usize) -> &QVec {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.rows[i][j]
    }

    pub fn transpose(&self) -> QMat {
        let rows = (0..self.ncols).map(|j| self.rows.iter().map(|r| r[j].clone()).collect()).collect();
        QMat { ncols: self.rows.len(), rows }
    }

    /// `A·x`
    pub fn mul_vec(&self, x: &[Rat]) -> QVec {
        self.rows.iter().map(|r| dot(r, x)).collect()
    }

    /// `x·A`
    pub fn vec_mul(&self, x: &[Rat]) -> QVec {
        let mut out = vec![Rat::zero(); self.ncols];
        for (xi, r) in x.iter().zip(&self.rows) {
            if xi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(r) {
                *o += xi * a;
            }
        }
        out
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        let rows = self.rows.iter().map(|r| other.vec_mul(r)).collect();
        QMat { ncols: other.ncols, rows }
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut m = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == m.len() {
                break;
            }
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for x in m[r].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        (QMat { ncols: self.ncols, rows: m }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A·x = 0}`, one vector per free column, with a 1 in that column.
    pub fn kernel(&self) -> Vec<QVec> {
        let (r, pivots) = self.rref();
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rat::zero(); self.ncols];
            v[free] = Rat::one();
            for (row, &pc) in r.rows.iter().zip(&pivots) {
                v[pc] = -row[free].clone();
            }
            out.push(v);
        }
        out
    }

    /// Basis of `{y : y·A = 0}`.
    pub fn left_kernel(&self) -> Vec<QVec> {
        self.transpose().kernel()
    }

    /// Some solution of `A·x = b`, if one exists.
    pub fn solve(&self, b: &[Rat]) -> Option<QVec> {
        let mut aug = self.rows.clone();
        for (row, bi) in aug.iter_mut().zip(b) {
            row.push(bi.clone());
        }
        let (r, pivots) = QMat { ncols: self.ncols + 1, rows: aug }.rref();
        if pivots.last() == Some(&self.ncols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.ncols];
        for (row, &pc) in r.rows.iter().zip(&pivots) {
            x[pc] = row[self.ncols].clone();
        }
        Some(x)
    }

    /// Coefficients `y` with `y·A = b`, if `b` lies in the row space.
    pub fn solve_left(&self, b: &[Rat]) -> Option<QVec> {
        self.transpose().solve(b)
    }
}

/// Basis of the row space in reduced echelon form.
pub fn row_space_basis(ncols: usize, rows: &[QVec]) -> Vec<QVec> {
    QMat::from_rows(ncols, rows.to_vec()).rref().0.into_rows()
}

/// Basis of the orthogonal complement of the span of `rows`.
pub fn orthogonal_complement(ncols: usize, rows: &[QVec]) -> Vec<QVec> {
    QMat::from_rows(ncols, rows.to_vec()).kernel()
}

/// Rank of a list of vectors.
pub fn rank_of(ncols: usize, rows: &[QVec]) -> usize {
    QMat::from_rows(ncols, rows.to_vec()).rank()
}

/// Whether `x` lies in the span of `rows`.
pub fn in_span(ncols: usize, rows: &[QVec], x: &[Rat]) -> bool {
    let mut all = rows.to_vec();
    let r = rank_of(ncols, &all);
    all.push(x.to_vec());
    rank_of(ncols, &all) == r
}

/// Orthogonal projection of `x` onto the orthogonal complement of `span(rows)`.
pub fn project_off(x: &[Rat], ncols: usize, rows: &[QVec]) -> QVec {
    let basis = row_space_basis(ncols, rows);
    if basis.is_empty() {
        return x.to_vec();
    }
    // Solve the normal equations G·λ = B·x for the component inside the span.
    let gram = QMat::from_rows(basis.len(), basis.iter().map(|b| basis.iter().map(|c| dot(b, c)).collect()).collect());
    let rhs: QVec = basis.iter().map(|b| dot(b, x)).collect();
    let lambda = gram.solve(&rhs).expect("gram matrix of a basis is invertible");
    let mut out = x.to_vec();
    for (l, b) in lambda.iter().zip(&basis) {
        for (o, bi) in out.iter_mut().zip(b) {
            *o -= l * bi;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat::{int, qvec};

    #[test]
    fn kernel_of_row() {
        let a = QMat::from_rows(2, vec![qvec(&[1, 1])]);
        let k = a.kernel();
        assert_eq!(k, vec![qvec(&[-1, 1])]);
    }

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        let k = QMat::zeros(2, 2).kernel();
        assert_eq!(k, vec![qvec(&[1, 0]), qvec(&[0, 1])]);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = QMat::from_rows(2, vec![qvec(&[1, 2]), qvec(&[2, 4])]);
        let x = a.solve(&qvec(&[3, 6])).unwrap();
        assert_eq!(a.mul_vec(&x), qvec(&[3, 6]));
        assert!(a.solve(&qvec(&[3, 7])).is_none());
    }

    #[test]
    fn projection_is_orthogonal() {
        let rows = vec![qvec(&[1, 1, 0])];
        let p = project_off(&qvec(&[2, 0, 5]), 3, &rows);
        assert_eq!(p, vec![int(1), int(-1), int(5)]);
    }
}
