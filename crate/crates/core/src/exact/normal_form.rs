//! Hermite and Smith normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntegerMatrix;

/// Result of reducing `A` by unimodular column operations: `A * transform = echelon`.
///
/// The first `rank` columns of `echelon` are linearly independent and the
/// remaining columns are zero, so the last `cols - rank` columns of
/// `transform` form a basis of the integer kernel of `A`.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    pub echelon: IntegerMatrix,
    pub transform: IntegerMatrix,
    pub rank: usize,
}

fn combine_columns(m: &mut IntegerMatrix, p: usize, j: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
    // [col_p, col_j] <- [s*col_p + t*col_j, u*col_p + v*col_j]
    for i in 0..m.rows() {
        let cp = m[(i, p)].clone();
        let cj = m[(i, j)].clone();
        m[(i, p)] = s * &cp + t * &cj;
        m[(i, j)] = u * &cp + v * &cj;
    }
}

fn combine_rows(m: &mut IntegerMatrix, p: usize, j: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
    for c in 0..m.cols() {
        let rp = m[(p, c)].clone();
        let rj = m[(j, c)].clone();
        m[(p, c)] = s * &rp + t * &rj;
        m[(j, c)] = u * &rp + v * &rj;
    }
}

/// Unimodular 2x2 step sending `(a, b)` to `(gcd, 0)`.
fn gcd_step(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
    let eg = a.extended_gcd(b);
    let g = eg.gcd;
    // s*a + t*b = g; second output (b/g)*a - (a/g)*b = 0; determinant -1.
    (eg.x, eg.y, b / &g, -(a / &g))
}

pub fn column_echelon(a: &IntegerMatrix) -> ColumnEchelon {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntegerMatrix::identity(n);
    let mut p = 0;
    for i in 0..m {
        if p == n {
            break;
        }
        for j in p + 1..n {
            if h[(i, j)].is_zero() {
                continue;
            }
            let (s, t, uu, vv) = gcd_step(&h[(i, p)], &h[(i, j)]);
            combine_columns(&mut h, p, j, &s, &t, &uu, &vv);
            combine_columns(&mut u, p, j, &s, &t, &uu, &vv);
        }
        if !h[(i, p)].is_zero() {
            p += 1;
        }
    }
    ColumnEchelon {
        echelon: h,
        transform: u,
        rank: p,
    }
}

/// Row-style Hermite normal form. Returns only the nonzero rows together
/// with their pivot columns. Pivots are positive and entries above each
/// pivot are reduced into `[0, pivot)`.
pub fn hermite_rows(a: &IntegerMatrix) -> (IntegerMatrix, Vec<usize>) {
    let (k, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut row = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        if row == k {
            break;
        }
        for i in row + 1..k {
            if h[(i, c)].is_zero() {
                continue;
            }
            let (s, t, uu, vv) = gcd_step(&h[(row, c)], &h[(i, c)]);
            combine_rows(&mut h, row, i, &s, &t, &uu, &vv);
        }
        if h[(row, c)].is_zero() {
            continue;
        }
        if h[(row, c)].is_negative() {
            for j in 0..n {
                h[(row, j)] = -h[(row, j)].clone();
            }
        }
        let pivot = h[(row, c)].clone();
        for i in 0..row {
            let q = h[(i, c)].div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            for j in 0..n {
                let d = &q * &h[(row, j)];
                h[(i, j)] -= d;
            }
        }
        pivots.push(c);
        row += 1;
    }
    let rows: Vec<usize> = (0..row).collect();
    let cols: Vec<usize> = (0..n).collect();
    (h.submatrix(&rows, &cols), pivots)
}

/// Nonzero invariant factors `d_1 | d_2 | ... | d_r` of the Smith normal form.
pub fn smith_invariants(a: &IntegerMatrix) -> Vec<BigInt> {
    let mut s = a.clone();
    let (m, n) = (s.rows(), s.cols());
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        s.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = s[(i, t)].div_floor(&s[(t, t)]);
                for j in t..n {
                    let d = &q * &s[(t, j)];
                    s[(i, j)] -= d;
                }
                if !s[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = s[(t, j)].div_floor(&s[(t, t)]);
                for i in t..m {
                    let d = &q * &s[(i, t)];
                    s[(i, j)] -= d;
                }
                if !s[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A smaller remainder now sits in row or column t; move it to the pivot.
                let (pi, pj) = min_abs_in_cross(&s, t);
                s.swap_rows(t, pi);
                s.swap_cols(t, pj);
                continue;
            }
            let pivot = s[(t, t)].clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    for j in t..n {
                        let v = s[(i, j)].clone();
                        s[(t, j)] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(s[(t, t)].abs());
    }
    diag
}

fn min_abs_entry(s: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let v = s[(i, j)].abs();
            if v.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| &v < b) {
                best = Some((i, j, v));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn min_abs_in_cross(s: &IntegerMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t, s[(t, t)].abs());
    for i in t + 1..s.rows() {
        let v = s[(i, t)].abs();
        if !v.is_zero() && v < best.2 {
            best = (i, t, v);
        }
    }
    for j in t + 1..s.cols() {
        let v = s[(t, j)].abs();
        if !v.is_zero() && v < best.2 {
            best = (t, j, v);
        }
    }
    (best.0, best.1)
}

/// Product of the invariant factors, i.e. the gcd of all maximal-rank minors.
pub fn smith_gcd(a: &IntegerMatrix) -> BigInt {
    smith_invariants(a).into_iter().fold(BigInt::one(), |acc, d| acc * d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{determinant, rank};

    fn mat(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn kernel_from_column_echelon() {
        let a = mat(&[vec![2, 3]]);
        let ce = column_echelon(&a);
        assert_eq!(ce.rank, 1);
        assert_eq!(determinant(&ce.transform).abs(), BigInt::one());
        let k = ce.transform.column(1);
        assert!(a.mul_vec(&k).iter().all(Zero::is_zero));
        assert_eq!(ce.echelon[(0, 0)].abs(), BigInt::one());
    }

    #[test]
    fn echelon_handles_dependent_rows() {
        let a = mat(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let ce = column_echelon(&a);
        assert_eq!(ce.rank, 1);
        for j in 1..3 {
            let k = ce.transform.column(j);
            assert!(a.mul_vec(&k).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn hermite_rows_is_canonical() {
        let a = mat(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let (h, piv) = hermite_rows(&a);
        assert_eq!(piv.len(), rank(&a));
        // same lattice up to row order and sign gives the same form
        let b = mat(&[vec![10, -4, -16], vec![-2, -4, -4], vec![-6, 6, 12]]);
        assert_eq!(hermite_rows(&b).0, h);
        for (r, &c) in piv.iter().enumerate() {
            assert!(h[(r, c)] > BigInt::zero());
            for above in 0..r {
                assert!(h[(above, c)] >= BigInt::zero() && h[(above, c)] < h[(r, c)]);
            }
        }
    }

    #[test]
    fn smith_examples() {
        assert_eq!(smith_invariants(&mat(&[vec![2, 4, 6]])), vec![BigInt::from(2)]);
        let a = mat(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let d: Vec<i64> = smith_invariants(&a).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
        assert_eq!(smith_gcd(&mat(&[vec![1, 1], vec![1, -1]])), BigInt::from(2));
    }
}
