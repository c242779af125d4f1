//! Hermite and Smith normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-major integer matrix.
pub type IMat = Vec<Vec<BigInt>>;

pub fn imat(rows: &[&[i64]]) -> IMat {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn mat_mul(a: &IMat, b: &IMat, bcols: usize) -> IMat {
    a.iter()
        .map(|row| (0..bcols).map(|j| row.iter().zip(b).fold(BigInt::zero(), |acc, (x, br)| acc + x * &br[j])).collect())
        .collect()
}

/// Determinant by fraction-free elimination (Bareiss).
pub fn det(a: &IMat) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn combine_rows(m: &mut IMat, r: usize, i: usize, coeffs: [&BigInt; 4]) {
    let [x, y, u, v] = coeffs;
    let (a, b) = (m[r].clone(), m[i].clone());
    m[r] = a.iter().zip(&b).map(|(p, q)| x * p + y * q).collect();
    m[i] = a.iter().zip(&b).map(|(p, q)| u * p + v * q).collect();
}

/// Row Hermite normal form: returns `(H, U)` with `U` unimodular and `U·A = H`.
///
/// Nonzero rows of `H` come first, pivots are positive and entries above a pivot lie in
/// `[0, pivot)`.
pub fn hermite_normal_form(a: &IMat, ncols: usize) -> (IMat, IMat) {
    let m = a.len();
    let mut h = a.clone();
    let mut u = identity(m);
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        for i in r + 1..m {
            if h[i][c].is_zero() {
                continue;
            }
            let eg = h[r][c].extended_gcd(&h[i][c]);
            let a_ = &h[r][c] / &eg.gcd;
            let b_ = &h[i][c] / &eg.gcd;
            let nb = -b_;
            combine_rows(&mut h, r, i, [&eg.x, &eg.y, &nb, &a_]);
            combine_rows(&mut u, r, i, [&eg.x, &eg.y, &nb, &a_]);
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            h[r].iter_mut().for_each(|x| *x = -x.clone());
            u[r].iter_mut().for_each(|x| *x = -x.clone());
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            if q.is_zero() {
                continue;
            }
            let (hr, ur) = (h[r].clone(), u[r].clone());
            h[i].iter_mut().zip(&hr).for_each(|(x, y)| *x -= &q * y);
            u[i].iter_mut().zip(&ur).for_each(|(x, y)| *x -= &q * y);
        }
        r += 1;
    }
    (h, u)
}

/// Number of nonzero rows of a matrix in Hermite form.
pub fn hnf_rank(h: &IMat) -> usize {
    h.iter().take_while(|r| r.iter().any(|x| !x.is_zero())).count()
}

/// Integer basis of the left kernel lattice `{y ∈ ℤᵐ : y·A = 0}`.
pub fn int_left_kernel(a: &IMat, ncols: usize) -> IMat {
    let (h, u) = hermite_normal_form(a, ncols);
    let r = hnf_rank(&h);
    u.into_iter().skip(r).collect()
}

pub fn transpose(a: &IMat, ncols: usize) -> IMat {
    (0..ncols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Integer basis of `{x ∈ ℤⁿ : A·x = 0}`.
pub fn int_kernel(a: &IMat, ncols: usize) -> IMat {
    int_left_kernel(&transpose(a, ncols), a.len())
}

/// Invariant factors `d₁ | d₂ | …` of the Smith normal form (nonzero ones only).
pub fn smith_invariants(a: &IMat, ncols: usize) -> Vec<BigInt> {
    let mut m = a.clone();
    let mut cols = ncols;
    loop {
        let (h, _) = hermite_normal_form(&m, cols);
        let r = hnf_rank(&h);
        let h: IMat = h.into_iter().take(r).collect();
        let diagonal = h.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, x)| i == j || x.is_zero()));
        if diagonal {
            let mut d: Vec<BigInt> = (0..r).map(|i| h[i][i].abs()).collect();
            for i in 0..d.len() {
                for j in i + 1..d.len() {
                    let g = d[i].gcd(&d[j]);
                    let l = d[i].lcm(&d[j]);
                    d[i] = g;
                    d[j] = l;
                }
            }
            return d;
        }
        m = transpose(&h, cols);
        cols = r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_is_already_hermite() {
        let a = imat(&[&[2, 0], &[0, 3]]);
        let (h, u) = hermite_normal_form(&a, 2);
        assert_eq!(h, a);
        assert_eq!(u, identity(2));
    }

    #[test]
    fn two_by_two_example() {
        let a = imat(&[&[2, 4], &[1, 3]]);
        let (h, u) = hermite_normal_form(&a, 2);
        // [[1,3],[0,2]] is an echelon form of the same row lattice; reducing 3 modulo the
        // pivot 2 gives the canonical form.
        assert_eq!(h, imat(&[&[1, 1], &[0, 2]]));
        assert_eq!(mat_mul(&u, &a, 2), h);
        let (h2, _) = hermite_normal_form(&imat(&[&[1, 3], &[0, 2]]), 2);
        assert_eq!(h2, h);
        assert_eq!(det(&u).abs(), BigInt::one());
    }

    #[test]
    fn single_row_and_column() {
        let row = imat(&[&[7, -4, -3]]);
        let (h, _) = hermite_normal_form(&row, 3);
        assert_eq!(h, row);
        let col = imat(&[&[7], &[-4], &[-3]]);
        let (h, u) = hermite_normal_form(&col, 1);
        assert_eq!(h, imat(&[&[1], &[0], &[0]]));
        assert_eq!(mat_mul(&u, &col, 1), h);
        assert_eq!(det(&u).abs(), BigInt::one());
    }

    #[test]
    fn kernel_lattice() {
        let a = imat(&[&[2, 4, 6]]);
        let k = int_kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: BigInt = v.iter().zip(&a[0]).map(|(x, y)| x * y).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn smith_of_cyclic_quotient() {
        let a = imat(&[&[2, 0], &[0, 3]]);
        assert_eq!(smith_invariants(&a, 2), vec![BigInt::from(1), BigInt::from(6)]);
        let b = imat(&[&[2, 4], &[6, 8]]);
        assert_eq!(smith_invariants(&b, 2), vec![BigInt::from(2), BigInt::from(4)]);
    }
}
