//! Exact linear algebra over cyclotomic fields.

use crate::scalar::CycScalar;

pub type Vector = Vec<CycScalar>;
/// Row-major dense matrix.
pub type Matrix = Vec<Vec<CycScalar>>;

pub fn zero_vec(n: usize) -> Vector {
    vec![CycScalar::zero(); n]
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            let mut r = zero_vec(n);
            r[i] = CycScalar::one();
            r
        })
        .collect()
}

pub fn is_zero_vec(v: &[CycScalar]) -> bool {
    v.iter().all(|c| c.is_zero())
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map(|r| r.len()).unwrap_or(0);
    let mut out = vec![zero_vec(m); n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] += &(aik * &b[k][j]);
                }
            }
        }
    }
    out
}

pub fn mat_vec(a: &Matrix, v: &[CycScalar]) -> Vector {
    a.iter()
        .map(|row| {
            let mut acc = CycScalar::zero();
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    acc += &(x * y);
                }
            }
            acc
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let n = a.len();
    let m = a.first().map(|r| r.len()).unwrap_or(0);
    (0..m).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}

pub fn axpy(y: &mut [CycScalar], a: &CycScalar, x: &[CycScalar]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += &(a * xi);
        }
    }
}

/// Reduces `m` in place to reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let nrows = m.len();
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("pivot is nonzero");
        for x in m[row].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let f = -other[col].clone();
                axpy(other, &f, &pivot_row);
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut c = m.clone();
    rref(&mut c).len()
}

/// Basis of {x : A x = 0}.
pub fn kernel(a: &Matrix, ncols: usize) -> Vec<Vector> {
    let mut m = a.clone();
    for r in m.iter_mut() {
        r.resize(ncols, CycScalar::zero());
    }
    let pivots = rref(&mut m);
    let mut out = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = zero_vec(ncols);
        v[free] = CycScalar::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -m[i][free].clone();
        }
        out.push(v);
    }
    out
}

/// One solution of A x = b, if consistent.
pub fn solve(a: &Matrix, b: &[CycScalar], ncols: usize) -> Option<Vector> {
    let mut m: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.resize(ncols, CycScalar::zero());
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = zero_vec(ncols);
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = m[i][ncols].clone();
    }
    Some(x)
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut m: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            let mut e = zero_vec(n);
            e[i] = CycScalar::one();
            r.extend(e);
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() != n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Incrementally built subspace kept in semi-echelon form.
///
/// Every stored row has a distinct pivot (its first nonzero column) and zeros in the
/// pivot columns of rows inserted earlier, so reducing in insertion order is exact.
/// With tracking on, each row also remembers its combination of inserted vectors.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    rows: Vec<(usize, Vector, Vector)>,
    inserted: usize,
    track: bool,
}

impl RowSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tracking() -> Self {
        RowSpace {
            track: true,
            ..Default::default()
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces v against the space; returns the remainder and, when tracking, the
    /// combination of inserted vectors that was subtracted.
    pub fn reduce(&self, v: &[CycScalar]) -> (Vector, Vector) {
        let mut v = v.to_vec();
        let mut comb = if self.track {
            zero_vec(self.inserted)
        } else {
            Vec::new()
        };
        for (p, row, rc) in &self.rows {
            if *p < v.len() && !v[*p].is_zero() {
                let f = v[*p].clone();
                let nf = -f.clone();
                axpy(&mut v, &nf, row);
                if self.track {
                    axpy(&mut comb, &f, rc);
                }
            }
        }
        (v, comb)
    }

    pub fn contains(&self, v: &[CycScalar]) -> bool {
        is_zero_vec(&self.reduce(v).0)
    }

    /// Coordinates of v in terms of the inserted vectors, if v lies in the span.
    pub fn coordinates(&self, v: &[CycScalar]) -> Option<Vector> {
        assert!(self.track, "coordinates need a tracking row space");
        let (r, comb) = self.reduce(v);
        if is_zero_vec(&r) {
            Some(comb)
        } else {
            None
        }
    }

    /// Inserts v; returns true when it enlarged the space. With tracking, every call
    /// counts as an inserted vector, dependent or not.
    pub fn insert(&mut self, v: &[CycScalar]) -> bool {
        let (mut r, comb) = self.reduce(v);
        let idx = self.inserted;
        if self.track {
            self.inserted += 1;
        }
        let Some(p) = r.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero pivot");
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let rc = if self.track {
            // row = (v - comb . inserted) / pivot
            let mut rc: Vector = comb.iter().map(|c| -c.clone()).collect();
            rc.resize(self.inserted, CycScalar::zero());
            rc[idx] = CycScalar::one();
            for x in rc.iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
            for (_, _, other) in self.rows.iter_mut() {
                other.resize(self.inserted, CycScalar::zero());
            }
            rc
        } else {
            Vec::new()
        };
        self.rows.push((p, r, rc));
        true
    }

    pub fn rows(&self) -> impl Iterator<Item = &Vector> {
        self.rows.iter().map(|r| &r.1)
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.0).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> CycScalar {
        CycScalar::from_int(n)
    }

    #[test]
    fn kernel_and_solve() {
        let a = vec![vec![s(1), s(2), s(3)], vec![s(2), s(4), s(6)]];
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(is_zero_vec(&mat_vec(&a, v)));
        }
        let x = solve(&a, &[s(1), s(2)], 3).unwrap();
        assert_eq!(mat_vec(&a, &x), vec![s(1), s(2)]);
        assert!(solve(&a, &[s(1), s(3)], 3).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let a = vec![vec![s(2), s(1)], vec![s(1), s(1)]];
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert!(inverse(&vec![vec![s(1), s(2)], vec![s(2), s(4)]]).is_none());
    }

    #[test]
    fn row_space_tracking() {
        let mut rs = RowSpace::tracking();
        let v1 = vec![s(0), s(1), s(1)];
        let v2 = vec![s(1), s(1), s(0)];
        let v3 = vec![s(1), s(2), s(1)];
        assert!(rs.insert(&v1));
        assert!(rs.insert(&v2));
        assert!(!rs.insert(&v3));
        let c = rs.coordinates(&vec![s(2), s(5), s(3)]).unwrap();
        let mut recon = zero_vec(3);
        for (ci, v) in c.iter().zip([&v1, &v2, &v3]) {
            axpy(&mut recon, ci, v);
        }
        assert_eq!(recon, vec![s(2), s(5), s(3)]);
        assert!(rs.coordinates(&vec![s(0), s(0), s(1)]).is_none());
    }
}
