//! Small dense linear algebra over exact scalars.

use crate::error::{Error, Result};
use crate::field::FieldElement;

pub type Matrix = Vec<Vec<FieldElement>>;

/// Determinant by Gaussian elimination with nonzero-pivot search.
pub fn det(m: &Matrix) -> FieldElement {
    let n = m.len();
    let mut a = m.clone();
    let mut sign_flip = false;
    let mut acc = FieldElement::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return FieldElement::zero();
        };
        if piv != col {
            a.swap(piv, col);
            sign_flip = !sign_flip;
        }
        let p = a[col][col].clone();
        let pinv = p.inv();
        acc = &acc * &p;
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &pinv;
            for c in col..n {
                let t = &factor * &a[col][c];
                a[r][c] -= &t;
            }
        }
    }
    if sign_flip {
        -acc
    } else {
        acc
    }
}

/// Solve `m x = rhs` for square invertible `m`.
pub fn solve(m: &Matrix, rhs: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let n = m.len();
    let mut a: Matrix = m.iter().zip(rhs).map(|(row, b)| {
        let mut r = row.clone();
        r.push(b.clone());
        r
    }).collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::PreconditionViolated("singular linear system".into()))?;
        a.swap(piv, col);
        let pinv = a[col][col].inv();
        for c in col..=n {
            a[col][c] = &a[col][c] * &pinv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..=n {
                let t = &factor * &a[col][c];
                a[r][c] -= &t;
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Inverse of a square invertible matrix.
pub fn inverse(m: &Matrix) -> Result<Matrix> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<FieldElement> = (0..n).map(|i| if i == j { FieldElement::one() } else { FieldElement::zero() }).collect();
        cols.push(solve(m, &e)?);
    }
    Ok((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(FieldElement::zero(), |acc, t| acc + &a[i][t] * &b[t][j]))
                .collect()
        })
        .collect()
}

pub fn from_ints(rows: &[&[i64]]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&x| FieldElement::from_i64(x)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse() {
        let m = from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(det(&m), FieldElement::from_i64(18));
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), from_ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        let sing = from_ints(&[&[1, 2], &[2, 4]]);
        assert!(det(&sing).is_zero());
        assert!(inverse(&sing).is_err());
        let swap = from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(det(&swap), FieldElement::from_i64(-1));
    }
}
