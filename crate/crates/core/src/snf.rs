//! Exact integer Smith normal form with explicit overflow detection.

use crate::{Error, Result};

fn ck_add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow("smith normal form"))
}

fn ck_mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow("smith normal form"))
}

/// Diagonalize and return the invariant factors d_1 | d_2 | ⋯
/// (nonnegative, zeros trailing, one entry per min(rows, cols)).
#[allow(clippy::needless_range_loop)] // rows are read and written together
pub fn invariant_factors(mut m: Vec<Vec<i128>>) -> Result<Vec<i128>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    debug_assert!(m.iter().all(|r| r.len() == cols));
    let rank_bound = rows.min(cols);
    let mut diag = Vec::with_capacity(rank_bound);

    'outer: for k in 0..rank_bound {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if m[i][j] != 0 && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break 'outer;
            };
            m.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            let p = m[k][k];

            let mut dirty = false;
            for i in k + 1..rows {
                if m[i][k] != 0 {
                    let q = m[i][k].div_euclid(p);
                    if q != 0 {
                        for j in k..cols {
                            let sub = ck_mul(q, m[k][j])?;
                            m[i][j] = ck_add(m[i][j], -sub)?;
                        }
                    }
                    if m[i][k] != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            for j in k + 1..cols {
                if m[k][j] != 0 {
                    let q = m[k][j].div_euclid(p);
                    if q != 0 {
                        for i in k..rows {
                            let sub = ck_mul(q, m[i][k])?;
                            m[i][j] = ck_add(m[i][j], -sub)?;
                        }
                    }
                    if m[k][j] != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // divisibility: fold a row with a non-divisible entry into row k
            let mut fixed = true;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if m[i][j] % p != 0 {
                        for jj in k..cols {
                            m[k][jj] = ck_add(m[k][jj], m[i][jj])?;
                        }
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                diag.push(p.abs());
                break;
            }
        }
    }
    while diag.len() < rank_bound {
        diag.push(0);
    }
    Ok(diag)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_matrices() {
        assert_eq!(invariant_factors(vec![]).unwrap(), Vec::<i128>::new());
        assert_eq!(invariant_factors(vec![vec![0, 0]]).unwrap(), vec![0]);
        assert_eq!(
            invariant_factors(vec![vec![2, 0], vec![0, 3]]).unwrap(),
            vec![1, 6]
        );
        // known invariant factors 1, 3, 21, 0
        let m = vec![
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ];
        assert_eq!(invariant_factors(m).unwrap(), vec![1, 3, 21, 0]);
    }

    #[test]
    fn divisibility_chain() {
        let m = vec![vec![4, 6, 0], vec![6, 4, 2], vec![0, 2, 8]];
        let d = invariant_factors(m).unwrap();
        for w in d.windows(2) {
            if w[0] != 0 && w[1] != 0 {
                assert_eq!(w[1] % w[0], 0, "{d:?}");
            }
        }
    }
}
