//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::rational::Q;

pub type Matrix = Vec<Vec<Q>>;

pub fn from_i64(rows: &[Vec<i64>]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect())
        .collect()
}

/// Reduced row echelon form with leftmost pivots. Returns the reduced matrix
/// and the pivot column of each nonzero row.
pub fn rref(m: &[Vec<Q>]) -> (Matrix, Vec<usize>) {
    let mut a: Matrix = m.to_vec();
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
        let inv = Q::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &[Vec<Q>]) -> usize {
    rref(m).1.len()
}

/// Basis of `{x : m x = 0}`, one vector per free column.
pub fn nullspace(m: &[Vec<Q>], cols: usize) -> Matrix {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Q::zero(); cols];
            x[f] = Q::one();
            for (row, &p) in pivots.iter().enumerate() {
                x[p] = -r[row][f].clone();
            }
            x
        })
        .collect()
}

/// A particular solution of `m x = b` with every free variable set to zero,
/// or `None` when the system is inconsistent.
pub fn solve(m: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let cols = m.first().map_or(0, Vec::len);
    let aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[row][cols].clone();
    }
    Some(x)
}

pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[c][c];
                for j in c..n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    d
}

pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter().map(|row| crate::rational::dot(row, v)).collect()
}

pub fn transpose(m: &[Vec<Q>]) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Incrementally grown span, used to extend independent sets greedily.
#[derive(Debug, Clone, Default)]
pub struct Span {
    /// Echelon rows, each normalised so its pivot entry is one.
    rows: Vec<(usize, Vec<Q>)>,
}

impl Span {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` if it is independent of the current span; reports whether it was.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Q::one() / &r[p];
        let r: Vec<Q> = r.iter().map(|x| x * &inv).collect();
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, r));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn rank_and_nullspace() {
        let m = from_i64(&[vec![2, -2, 0], vec![-2, 2, 1]]);
        assert_eq!(rank(&m), 2);
        let ns = nullspace(&m, 3);
        assert_eq!(ns, vec![vec![q(1), q(1), q(0)]]);
    }

    #[test]
    fn solve_sets_free_variables_to_zero() {
        let m = from_i64(&[vec![2, -2, 0], vec![-2, 2, 1]]);
        let x = solve(&m, &[q(1), q(0)]).unwrap();
        assert_eq!(x, vec![crate::rational::q_frac(1, 2), q(0), q(1)]);
        let inconsistent = from_i64(&[vec![1, 1], vec![2, 2]]);
        assert!(solve(&inconsistent, &[q(1), q(3)]).is_none());
    }

    #[test]
    fn determinant() {
        let m = from_i64(&[vec![2, -1], vec![-3, 2]]);
        assert_eq!(det(&m), q(1));
        let affine = from_i64(&[vec![2, -2], vec![-2, 2]]);
        assert_eq!(det(&affine), q(0));
    }

    #[test]
    fn span_growth() {
        let mut s = Span::new();
        assert!(s.insert(&[q(1), q(1), q(0)]));
        assert!(!s.insert(&[q(2), q(2), q(0)]));
        assert!(s.insert(&[q(0), q(1), q(0)]));
        assert!(s.contains(&[q(5), q(-3), q(0)]));
        assert!(!s.contains(&[q(0), q(0), q(1)]));
        assert_eq!(s.dim(), 2);
    }
}
