//! Exact linear algebra: rational matrix inversion and ranks over Q(ζ_N).

use num::{BigInt, BigRational, One, Zero};

use super::cyclo::CycloNum;

/// Exact inverse and determinant of an integer matrix; `None` if singular.
pub fn invert_integer_matrix(m: &[Vec<i64>]) -> Option<(Vec<Vec<BigRational>>, BigRational)> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        let inv = p.recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
    }
    Some((a.into_iter().map(|row| row[n..].to_vec()).collect(), det))
}

/// True if the symmetric integer matrix is positive definite: Gaussian
/// elimination without pivoting meets only positive pivots.
pub fn is_positive_definite(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|row| row.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect()).collect();
    for k in 0..n {
        if a[k][k] <= BigRational::zero() {
            return false;
        }
        let inv = a[k][k].recip();
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] * &inv;
            for c in k..n {
                let t = &f * &a[k][c];
                a[r][c] -= t;
            }
        }
    }
    true
}

/// Rank of a matrix over Q(ζ_N), by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<CycloNum>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(piv, rank);
        let inv = rows[rank][col].inverse().expect("nonzero pivot");
        let pivot_row: Vec<CycloNum> = rows[rank].iter().map(|v| v * &inv).collect();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for c in col..ncols {
                rows[r][c] = &rows[r][c] - &(&f * &pivot_row[c]);
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Determinant over Q(ζ_N).
pub fn determinant(mut rows: Vec<Vec<CycloNum>>) -> CycloNum {
    let n = rows.len();
    let field = rows[0][0].field().clone();
    let mut det = CycloNum::one(&field);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return CycloNum::zero(&field);
        };
        if piv != col {
            rows.swap(piv, col);
            det = -det;
        }
        det = &det * &rows[col][col];
        let inv = rows[col][col].inverse().unwrap();
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = &rows[r][col] * &inv;
            for c in col..n {
                rows[r][c] = &rows[r][c] - &(&f * &rows[col][c]);
            }
        }
    }
    det
}
