//! Small dense linear algebra over exact fields and, for determinants,
//! over polynomial rings.

use crate::numeric::{Field, Ring};

/// Row-reduces a copy of `m` and returns it with the pivot columns.
fn echelon<F: Field>(m: &[Vec<F>]) -> (Vec<Vec<F>>, Vec<usize>) {
    let mut a: Vec<Vec<F>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c]
            .inverse()
            .expect("nonzero pivot is not invertible: coefficient ring is not a field here");
        for x in a[r].iter_mut() {
            *x = x.times(&inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.minus(&f.times(p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    echelon(m).1.len()
}

/// Dimension of the left kernel {v : v·m = 0}.
pub fn left_kernel_dim<F: Field>(m: &[Vec<F>]) -> usize {
    m.len() - rank(m)
}

/// Unique solution of the square system `m·x = rhs`, or `None` when `m`
/// is singular.
pub fn solve<F: Field>(m: &[Vec<F>], rhs: &[F]) -> Option<Vec<F>> {
    let n = m.len();
    assert_eq!(rhs.len(), n, "right-hand side length mismatch");
    let aug: Vec<Vec<F>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            assert_eq!(row.len(), n, "solve needs a square matrix");
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let (red, pivots) = echelon(&aug);
    if pivots.len() < n || pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
        return None;
    }
    Some(red.into_iter().map(|r| r[n].clone()).collect())
}

pub fn inverse<F: Field>(m: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = m.len();
    let aug: Vec<Vec<F>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let (red, pivots) = echelon(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant by cofactor expansion along the first row. Works over any
/// commutative ring; intended for matrices of size ≤ 7.
pub fn det<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    let cols: Vec<usize> = (0..n).collect();
    det_rec(m, 0, &cols)
}

fn det_rec<R: Ring>(m: &[Vec<R>], row: usize, cols: &[usize]) -> R {
    if cols.is_empty() {
        return R::one();
    }
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = R::zero();
    for (k, &c) in cols.iter().enumerate() {
        let e = &m[row][c];
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = e.times(&det_rec(m, row + 1, &rest));
        acc = if k % 2 == 0 { acc.plus(&term) } else { acc.minus(&term) };
    }
    acc
}

/// Determinant of the submatrix on the given rows and columns.
pub fn minor<R: Ring>(m: &[Vec<R>], rows: &[usize], cols: &[usize]) -> R {
    let sub: Vec<Vec<R>> = rows.iter().map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect()).collect();
    det(&sub)
}

/// All k-element subsets of 0..n in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

pub fn mat_mul<R: Ring>(a: &[Vec<R>], b: &[Vec<R>]) -> Vec<Vec<R>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(R::zero(), |acc, k| acc.plus(&row[k].times(&b[k][j]))))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, Rational};

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(left_kernel_dim(&m), 1);
    }

    #[test]
    fn solve_and_inverse_agree() {
        let m = q(&[&[2, 1], &[1, 3]]);
        let x = solve(&m, &[rat(3, 1), rat(5, 1)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), q(&[&[1, 0], &[0, 1]]));
        assert!(solve(&q(&[&[1, 2], &[2, 4]]), &[rat(1, 1), rat(1, 1)]).is_none());
    }

    #[test]
    fn det_by_cofactors() {
        let m = q(&[&[1, 2, 0], &[3, 4, 5], &[0, 1, 1]]);
        assert_eq!(det(&m), rat(1 * (4 - 5) - 2 * (3 - 0), 1));
    }

    #[test]
    fn subset_count() {
        assert_eq!(subsets(6, 5).len(), 6);
        assert_eq!(subsets(5, 2).len(), 10);
    }
}
