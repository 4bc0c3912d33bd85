//! Dense rational linear algebra for the small matrices of root data.

use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::{One, Zero};

pub(crate) type R64 = Ratio<i64>;

/// Inverse of a square nonsingular matrix by Gauss-Jordan elimination.
pub(crate) fn inverse(m: &[Vec<R64>]) -> Option<Vec<Vec<R64>>> {
    let n = m.len();
    let mut a: Vec<Vec<R64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { R64::one() } else { R64::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        let pivot = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col];
                for (x, v) in row.iter_mut().zip(&pivot) {
                    *x -= f * *v;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub(crate) fn mat_vec(m: &[Vec<R64>], v: &[R64]) -> Vec<R64> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(R64::zero(), |acc, (a, b)| acc + *a * *b))
        .collect()
}

pub(crate) fn dot(u: &[R64], v: &[R64]) -> R64 {
    u.iter().zip(v).fold(R64::zero(), |acc, (a, b)| acc + *a * *b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn inverse_of_cartan_a2() {
        let m = vec![
            vec![R64::from(2), R64::from(-1)],
            vec![R64::from(-1), R64::from(2)],
        ];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv[0][0], R64::new(2, 3));
        assert_eq!(inv[0][1], R64::new(1, 3));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = vec![vec![R64::from(1), R64::from(2)], vec![R64::from(2), R64::from(4)]];
        assert!(inverse(&m).is_none());
    }
}
