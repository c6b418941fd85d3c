//! Small dense matrices over a [`Scalar`] field, enough for 7×7 Gram work.

use crate::scalar::Scalar;

/// Row-major square matrix.
pub type Matrix<S> = Vec<Vec<S>>;

pub fn identity<S: Scalar>(n: usize) -> Matrix<S> {
    (0..n).map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect()).collect()
}

/// Gaussian elimination with first-nonzero pivoting; exact over rationals.
fn eliminate<S: Scalar>(m: &Matrix<S>, rhs: Option<&mut Matrix<S>>) -> S {
    let n = m.len();
    let mut a = m.clone();
    let mut rhs = rhs;
    let mut det = S::one();
    for col in 0..n {
        // Largest magnitude pivot keeps the float path stable and is harmless when exact.
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .max_by(|&r, &s| a[r][col].abs().partial_cmp(&a[s][col].abs()).unwrap_or(std::cmp::Ordering::Equal));
        let Some(p) = pivot else {
            return S::zero();
        };
        if p != col {
            a.swap(p, col);
            if let Some(b) = rhs.as_deref_mut() {
                b.swap(p, col);
            }
            det = -det;
        }
        let piv = a[col][col].clone();
        det = det * piv.clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() / piv.clone();
            for c in col..n {
                let t = a[col][c].clone() * f.clone();
                a[r][c] = a[r][c].clone() - t;
            }
            if let Some(b) = rhs.as_deref_mut() {
                for c in 0..b[r].len() {
                    let t = b[col][c].clone() * f.clone();
                    b[r][c] = b[r][c].clone() - t;
                }
            }
        }
    }
    if let Some(b) = rhs {
        for r in 0..n {
            let piv = a[r][r].clone();
            for x in b[r].iter_mut() {
                *x = x.clone() / piv.clone();
            }
        }
    }
    det
}

pub fn determinant<S: Scalar>(m: &Matrix<S>) -> S {
    eliminate(m, None)
}

/// Inverse, or `None` when singular.
pub fn inverse<S: Scalar>(m: &Matrix<S>) -> Option<Matrix<S>> {
    let mut inv = identity(m.len());
    let det = eliminate(m, Some(&mut inv));
    (!det.is_zero()).then_some(inv)
}

/// Sylvester's criterion on leading principal minors.
pub fn is_positive_definite<S: Scalar>(m: &Matrix<S>) -> bool {
    let n = m.len();
    (0..n).all(|i| m[i].len() == n && (0..n).all(|j| m[i][j] == m[j][i]))
        && (1..=n).all(|k| {
            let minor: Matrix<S> = m[..k].iter().map(|row| row[..k].to_vec()).collect();
            determinant(&minor) > S::zero()
        })
}

pub fn mat_mul<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols).map(|j| (0..inner).fold(S::zero(), |acc, k| acc + row[k].clone() * b[k][j].clone())).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    fn r(rows: &[&[i64]]) -> Matrix<Rational> {
        rows.iter().map(|row| row.iter().map(|&x| ratio(x, 1)).collect()).collect()
    }

    #[test]
    fn determinant_and_inverse_exact() {
        let m = r(&[&[0, 2, 1], &[1, 1, 0], &[3, 0, 1]]);
        // Cofactor expansion along the first row: 0 - 2(1) + 1(-3).
        assert_eq!(determinant(&m), ratio(-5, 1));
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(3));
        assert!(inverse(&r(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn sylvester_criterion() {
        assert!(is_positive_definite(&r(&[&[2, 1], &[1, 2]])));
        assert!(!is_positive_definite(&r(&[&[1, 2], &[2, 1]])));
        assert!(!is_positive_definite(&r(&[&[1, 1], &[0, 1]])));
    }
}
