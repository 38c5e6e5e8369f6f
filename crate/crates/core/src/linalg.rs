//! Small exact-rational linear algebra: row reduction, rank, membership,
//! square solves. Matrices are row vectors of `Rat`.

use crate::rootsys::Rat;
use num::Zero;

/// Incremental row-echelon basis. Rows are stored with their pivot entry
/// normalized to 1; `reduce` eliminates against all stored rows.
pub struct Reducer {
    dim: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Reducer {
    pub fn new(dim: usize) -> Self {
        Reducer { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.dim);
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let c = r[p];
                for (ri, wi) in r.iter_mut().zip(row) {
                    *ri -= c * *wi;
                }
            }
        }
        r
    }

    /// Insert `v` if independent of the stored rows. Returns true when the
    /// rank grew.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let mut r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                let c = r[p];
                for x in r.iter_mut() {
                    *x /= c;
                }
                self.rows.push(r);
                self.pivots.push(p);
                true
            }
        }
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut red = Reducer::new(rows[0].len());
    for r in rows {
        red.insert(r);
    }
    red.rank()
}

/// Solve the square system `a x = b`; `None` when `a` is singular.
pub fn solve_square(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n) && b.len() == n);
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(r, &bi)| {
            let mut row = r.clone();
            row.push(bi);
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let c = m[col][col];
        for x in m[col].iter_mut() {
            *x /= c;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                let src = m[col].clone();
                for (x, s) in m[r].iter_mut().zip(&src) {
                    *x -= f * *s;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n]).collect())
}

/// Express `v` in the span of the given (independent) columns; `None` when
/// `v` is outside the span.
pub fn solve_columns(cols: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    let m = v.len();
    let k = cols.len();
    assert!(cols.iter().all(|c| c.len() == m));
    // eliminate on the augmented matrix [cols | v]
    let mut rows: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[i]).collect();
            row.push(v[i]);
            row
        })
        .collect();
    let mut pivot_rows: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut r0 = 0;
    for col in 0..k {
        if let Some(piv) = (r0..m).find(|&r| !rows[r][col].is_zero()) {
            rows.swap(r0, piv);
            let c = rows[r0][col];
            for x in rows[r0].iter_mut() {
                *x /= c;
            }
            for r in 0..m {
                if r != r0 && !rows[r][col].is_zero() {
                    let f = rows[r][col];
                    let src = rows[r0].clone();
                    for (x, s) in rows[r].iter_mut().zip(&src) {
                        *x -= f * *s;
                    }
                }
            }
            pivot_rows.push((r0, col));
            r0 += 1;
        }
    }
    // consistency: rows below the pivots must have zero rhs
    for r in r0..m {
        if !rows[r][k].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Rat::zero(); k];
    for &(r, c) in &pivot_rows {
        sol[c] = rows[r][k];
    }
    // columns were assumed independent; a free column would mean they are not
    if pivot_rows.len() != k {
        // still fine if v reduced consistently, but coefficients are not
        // unique; callers pass independent coroot sets so treat as a bug
        panic!("solve_columns: dependent columns");
    }
    Some(sol)
}

/// Dimension of the affine hull of a point set.
pub fn affine_dim(points: &[Vec<Rat>]) -> Option<usize> {
    let first = points.first()?;
    let mut red = Reducer::new(first.len());
    for p in &points[1..] {
        let d: Vec<Rat> = p.iter().zip(first).map(|(a, b)| *a - *b).collect();
        red.insert(&d);
    }
    Some(red.rank())
}
