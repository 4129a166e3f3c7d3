//! Smith normal form with unimodular transform tracking.
//!
//! For an integer matrix A this computes U, V with U A V = diag(d) where the
//! d_i are non-negative and d_i | d_{i+1}. The transforms are what the lattice
//! code actually consumes: U maps ambient coordinates to the cyclic-factor
//! presentation of a quotient group, V maps factor generators back.

use crate::exact::Mat;
use num_integer::Integer;
use num_traits::Signed;
use std::ops::AddAssign;

#[derive(Clone, Debug)]
pub struct Snf<T> {
    /// Diagonal entries, zeros trailing; d_i divides d_{i+1} among nonzeros.
    pub diag: Vec<T>,
    /// Row transform, |det| = 1.
    pub u: Mat<T>,
    /// Column transform, |det| = 1.
    pub v: Mat<T>,
}

pub fn smith_normal_form<T>(a: &Mat<T>) -> Snf<T>
where
    T: Integer + Signed + Clone + AddAssign,
{
    let rows = a.rows();
    let cols = a.cols();
    let mut m = a.clone();
    let mut u = Mat::<T>::identity(rows);
    let mut v = Mat::<T>::identity(cols);
    let steps = rows.min(cols);

    for t in 0..steps {
        'pivot: loop {
            // Smallest-magnitude nonzero entry of the trailing block becomes
            // the pivot; with truncated division every clearing pass strictly
            // shrinks it, so the loop terminates.
            let mut best: Option<(usize, usize)> = None;
            for r in t..rows {
                for c in t..cols {
                    if m[(r, c)].is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((br, bc)) => m[(r, c)].abs() < m[(br, bc)].abs(),
                    };
                    if better {
                        best = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = best else {
                break 'pivot; // trailing block is zero
            };
            m.swap_rows(t, pr);
            u.swap_rows(t, pr);
            m.swap_cols(t, pc);
            v.swap_cols(t, pc);

            let mut dirty = false;
            for r in t + 1..rows {
                if m[(r, t)].is_zero() {
                    continue;
                }
                let q = m[(r, t)].clone() / m[(t, t)].clone();
                if !q.is_zero() {
                    row_sub(&mut m, r, t, &q);
                    row_sub(&mut u, r, t, &q);
                }
                dirty |= !m[(r, t)].is_zero();
            }
            for c in t + 1..cols {
                if m[(t, c)].is_zero() {
                    continue;
                }
                let q = m[(t, c)].clone() / m[(t, t)].clone();
                if !q.is_zero() {
                    col_sub(&mut m, c, t, &q);
                    col_sub(&mut v, c, t, &q);
                }
                dirty |= !m[(t, c)].is_zero();
            }
            if dirty {
                continue 'pivot;
            }

            // Pivot must divide the whole trailing block for the divisibility
            // chain; folding an offending row into row t re-enters the loop
            // with a strictly smaller achievable pivot (gcd descent).
            for r in t + 1..rows {
                for c in t + 1..cols {
                    if !m[(r, c)].mod_floor(&m[(t, t)]).is_zero() {
                        row_add(&mut m, t, r);
                        row_add(&mut u, t, r);
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
    }

    for t in 0..steps {
        if m[(t, t)].is_negative() {
            negate_row(&mut m, t);
            negate_row(&mut u, t);
        }
    }

    let diag = (0..steps).map(|t| m[(t, t)].clone()).collect();
    Snf { diag, u, v }
}

fn row_sub<T: Integer + Clone>(m: &mut Mat<T>, r: usize, from: usize, q: &T) {
    for c in 0..m.cols() {
        let d = q.clone() * m[(from, c)].clone();
        m[(r, c)] = m[(r, c)].clone() - d;
    }
}

fn col_sub<T: Integer + Clone>(m: &mut Mat<T>, c: usize, from: usize, q: &T) {
    for r in 0..m.rows() {
        let d = q.clone() * m[(r, from)].clone();
        m[(r, c)] = m[(r, c)].clone() - d;
    }
}

fn row_add<T: Integer + Clone>(m: &mut Mat<T>, r: usize, from: usize) {
    for c in 0..m.cols() {
        m[(r, c)] = m[(r, c)].clone() + m[(from, c)].clone();
    }
}

fn negate_row<T: Integer + Signed + Clone>(m: &mut Mat<T>, r: usize) {
    for c in 0..m.cols() {
        m[(r, c)] = -m[(r, c)].clone();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Int;
    use num_traits::{One, Zero};

    fn check(a: &Mat<Int>) -> Snf<Int> {
        let snf = smith_normal_form(a);
        // U A V really is the diagonal we report.
        let prod = snf.u.mul(a).mul(&snf.v);
        for r in 0..prod.rows() {
            for c in 0..prod.cols() {
                let expect = if r == c && r < snf.diag.len() {
                    snf.diag[r].clone()
                } else {
                    Int::zero()
                };
                assert_eq!(prod[(r, c)], expect, "at ({r},{c})");
            }
        }
        assert!(snf.u.is_unimodular());
        assert!(snf.v.is_unimodular());
        for w in snf.diag.windows(2) {
            if !w[1].is_zero() {
                assert!(!w[0].is_zero(), "zero before nonzero in chain");
            }
            if !w[0].is_zero() && !w[1].is_zero() {
                assert!(w[1].mod_floor(&w[0]).is_zero(), "{} !| {}", w[0], w[1]);
            }
        }
        assert!(snf.diag.iter().all(|d| !d.is_negative()));
        snf
    }

    fn diag_u64(snf: &Snf<Int>) -> Vec<u64> {
        snf.diag.iter().map(|d| u64::try_from(d).unwrap()).collect()
    }

    #[test]
    fn known_gram_matrices() {
        let a1 = Mat::from_i64_rows(&[vec![2]]);
        assert_eq!(diag_u64(&check(&a1)), vec![2]);

        let a2 = Mat::from_i64_rows(&[vec![2, -1], vec![-1, 2]]);
        assert_eq!(diag_u64(&check(&a2)), vec![1, 3]);

        let a3 = Mat::from_i64_rows(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(diag_u64(&check(&a3)), vec![1, 1, 4]);

        let d4 = Mat::from_i64_rows(&[
            vec![2, 0, -1, 0],
            vec![0, 2, -1, 0],
            vec![-1, -1, 2, -1],
            vec![0, 0, -1, 2],
        ]);
        assert_eq!(diag_u64(&check(&d4)), vec![1, 1, 2, 2]);
    }

    #[test]
    fn singular_and_rectangular() {
        let sing = Mat::from_i64_rows(&[vec![2, 4], vec![1, 2]]);
        let snf = check(&sing);
        assert_eq!(diag_u64(&snf), vec![1, 0]);

        let rect = Mat::from_i64_rows(&[vec![6, 4, 2], vec![2, 8, 4]]);
        check(&rect);
    }

    #[test]
    fn zero_matrix() {
        let z = Mat::<Int>::zeros(2, 3);
        let snf = check(&z);
        assert!(snf.diag.iter().all(Zero::is_zero));
    }

    #[test]
    fn awkward_pivots() {
        // Needs the divisibility fix-up: naive elimination gives diag 2,3.
        let m = Mat::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(diag_u64(&check(&m)), vec![1, 6]);

        let m = Mat::from_i64_rows(&[vec![0, 5], vec![7, 0]]);
        assert_eq!(diag_u64(&check(&m)), vec![1, 35]);
    }

    #[test]
    fn det_preserved_up_to_sign() {
        let m = Mat::from_i64_rows(&[vec![3, 1, 4], vec![1, 5, 9], vec![2, 6, 5]]);
        let snf = check(&m);
        let prod: Int = snf.diag.iter().fold(Int::one(), |a, b| a * b);
        assert_eq!(prod, m.det().abs());
    }
}
