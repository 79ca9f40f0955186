//! Exact rank and integer row reduction for small integer matrices.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Rank over `Q`.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Ratio<i128>>> = rows.iter().map(|r| r.iter().map(|&x| Ratio::from_integer(i128::from(x))).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c];
        for r in rank + 1..m.len() {
            if !m[r][c].is_zero() {
                let f = m[r][c] / pivot;
                for k in c..cols {
                    let v = m[rank][k] * f;
                    m[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Hermite normal form of the row lattice: nonzero rows only, positive
/// pivots, entries above each pivot reduced into `[0, pivot)`. Two integer
/// matrices span the same lattice iff their forms are equal.
pub fn hermite_form(rows: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let overflow = || Error::Consistency("integer overflow in row reduction".into());
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut top = 0;
    for c in 0..cols {
        // Euclid down the column until a single nonzero entry remains.
        loop {
            let nonzero: Vec<usize> = (top..m.len()).filter(|&r| m[r][c] != 0).collect();
            if nonzero.len() <= 1 {
                if let Some(&r) = nonzero.first() {
                    m.swap(top, r);
                }
                break;
            }
            let &p = nonzero.iter().min_by_key(|&&r| m[r][c].abs()).expect("nonempty");
            m.swap(top, p);
            for r in top + 1..m.len() {
                let q = Integer::div_floor(&m[r][c], &m[top][c]);
                if q != 0 {
                    for k in c..cols {
                        let v = m[top][k].checked_mul(q).ok_or_else(overflow)?;
                        m[r][k] = m[r][k].checked_sub(v).ok_or_else(overflow)?;
                    }
                }
            }
        }
        if top < m.len() && m[top][c] != 0 {
            if m[top][c] < 0 {
                m[top].iter_mut().for_each(|x| *x = -*x);
            }
            let pivot = m[top][c];
            for r in 0..top {
                let q = Integer::div_floor(&m[r][c], &pivot);
                if q != 0 {
                    for k in c..cols {
                        let v = m[top][k].checked_mul(q).ok_or_else(overflow)?;
                        m[r][k] = m[r][k].checked_sub(v).ok_or_else(overflow)?;
                    }
                }
            }
            top += 1;
        }
    }
    m.truncate(top);
    m.into_iter().map(|r| r.into_iter().map(|x| i64::try_from(x).map_err(|_| overflow())).collect()).collect()
}
