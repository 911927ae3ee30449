//! Dense matrices over a finite field, acting on row vectors from the right.

use crate::gf::{Elem, Gf};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        Mat {
            rows: r,
            cols: c,
            data: rows.iter().flat_map(|v| v.iter().copied()).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, f: &Gf, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * other.cols + j;
                        out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, f: &Gf, other: &Mat) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn scale(&self, f: &Gf, c: Elem) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `self - c I`.
    pub fn minus_scalar(&self, f: &Gf, c: Elem) -> Mat {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m.set(i, i, f.sub(m.get(i, i), c));
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn rank(&self, f: &Gf) -> usize {
        Echelon::of_rows(f, self.to_rows()).rank()
    }

    /// Basis of `{v : v M = 0}`, as rows.
    pub fn left_nullspace(&self, f: &Gf) -> Vec<Vec<Elem>> {
        // v M = 0  <=>  M^T v^T = 0: reduce [M | I] and read off zero rows
        let n = self.rows;
        let aug: Vec<Vec<Elem>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| (i == j) as Elem));
                r
            })
            .collect();
        let mut e = Echelon::of_rows_limited(f, aug, self.cols);
        e.rows
            .drain(..)
            .filter(|r| r[..self.cols].iter().all(|&x| x == 0))
            .map(|r| r[self.cols..].to_vec())
            .collect()
    }

    pub fn inverse(&self, f: &Gf) -> Option<Mat> {
        let n = self.rows;
        let aug: Vec<Vec<Elem>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| (i == j) as Elem));
                r
            })
            .collect();
        let e = Echelon::of_rows_limited(f, aug, n);
        if e.pivots.len() != n {
            return None;
        }
        let mut rows = vec![Vec::new(); n];
        for (r, &c) in e.rows.iter().zip(&e.pivots) {
            rows[c] = r[n..].to_vec();
        }
        Some(Mat::from_rows(&rows))
    }

    pub fn vec_mul(&self, f: &Gf, v: &[Elem]) -> Vec<Elem> {
        let mut out = vec![0; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.get(k, j);
                if b != 0 {
                    *o = f.add(*o, f.mul(a, b));
                }
            }
        }
        out
    }

    /// Matrix of `self` restricted to an invariant subspace with basis
    /// `sub` (in reduced echelon form): `B M = X B`, returns `X`.
    pub fn restrict(&self, f: &Gf, sub: &Echelon) -> Mat {
        let rows: Vec<Vec<Elem>> = sub
            .rows
            .iter()
            .map(|b| sub.coordinates(f, &self.vec_mul(f, b)).expect("subspace is invariant"))
            .collect();
        Mat::from_rows(&rows)
    }

    /// Matrix of `self` on the quotient by an invariant subspace, in the
    /// basis of standard vectors at the non-pivot columns of `sub`.
    pub fn quotient(&self, f: &Gf, sub: &Echelon) -> Mat {
        let free: Vec<usize> = (0..self.cols).filter(|c| !sub.pivots.contains(c)).collect();
        let rows: Vec<Vec<Elem>> = free
            .iter()
            .map(|&c| {
                let img = sub.reduce(f, self.row(c).to_vec());
                free.iter().map(|&j| img[j]).collect()
            })
            .collect();
        Mat::from_rows(&rows)
    }
}

/// A subspace in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<Elem>>,
    pub pivots: Vec<usize>,
    pub dim: usize,
}

impl Echelon {
    pub fn empty(dim: usize) -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: Vec::new(),
            dim,
        }
    }

    pub fn of_rows(f: &Gf, rows: Vec<Vec<Elem>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut e = Self::of_rows_limited(f, rows, cols);
        e.rows.retain(|r| r.iter().any(|&x| x != 0));
        e
    }

    /// Gauss–Jordan elimination using pivots only among the first `limit`
    /// columns. All rows are kept (zero rows last), in echelon order.
    fn of_rows_limited(f: &Gf, mut rows: Vec<Vec<Elem>>, limit: usize) -> Self {
        let dim = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit {
            let Some(pi) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, pi);
            let inv = f.inv(rows[r][c]).unwrap();
            for x in rows[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let factor = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        if y != 0 {
                            *x = f.sub(*x, f.mul(factor, y));
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { rows, pivots, dim }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the basis; zero iff `v` lies in the subspace.
    pub fn reduce(&self, f: &Gf, mut v: Vec<Elem>) -> Vec<Elem> {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let a = v[c];
            if a != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    if y != 0 {
                        *x = f.sub(*x, f.mul(a, y));
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, f: &Gf, v: &[Elem]) -> bool {
        self.reduce(f, v.to_vec()).iter().all(|&x| x == 0)
    }

    /// Adds a vector; returns whether the dimension grew.
    pub fn insert(&mut self, f: &Gf, v: Vec<Elem>) -> bool {
        let v = self.reduce(f, v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[c]).unwrap();
        let v: Vec<Elem> = v.iter().map(|&x| f.mul(x, inv)).collect();
        for row in self.rows.iter_mut() {
            let a = row[c];
            if a != 0 {
                for (x, &y) in row.iter_mut().zip(&v) {
                    if y != 0 {
                        *x = f.sub(*x, f.mul(a, y));
                    }
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < c);
        self.pivots.insert(pos, c);
        self.rows.insert(pos, v);
        true
    }

    /// Coordinates of a vector of the subspace in the echelon basis.
    pub fn coordinates(&self, f: &Gf, v: &[Elem]) -> Option<Vec<Elem>> {
        let coords: Vec<Elem> = self.pivots.iter().map(|&c| v[c]).collect();
        let mut rest = v.to_vec();
        for (row, &a) in self.rows.iter().zip(&coords) {
            if a != 0 {
                for (x, &y) in rest.iter_mut().zip(row) {
                    if y != 0 {
                        *x = f.sub(*x, f.mul(a, y));
                    }
                }
            }
        }
        rest.iter().all(|&x| x == 0).then_some(coords)
    }
}

/// Smallest subspace containing `seeds` and invariant under all `gens`
/// (acting on row vectors from the right).
pub fn spin(f: &Gf, seeds: &[Vec<Elem>], gens: &[Mat]) -> Echelon {
    let dim = gens.first().map_or_else(|| seeds.first().map_or(0, |s| s.len()), |g| g.rows());
    let mut space = Echelon::empty(dim);
    let mut queue: Vec<Vec<Elem>> = Vec::new();
    for s in seeds {
        if space.insert(f, s.clone()) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if space.rank() == dim {
            break;
        }
        for g in gens {
            let w = g.vec_mul(f, &v);
            if space.insert(f, w.clone()) {
                queue.push(w);
            }
        }
    }
    space
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_rank() {
        let f = Gf::new(3, 1).unwrap();
        let m = Mat::from_rows(&[vec![1, 2], vec![0, 1]]);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv), Mat::identity(2));
        let s = Mat::from_rows(&[vec![1, 2], vec![2, 1]]);
        assert_eq!(s.rank(&f), 1);
        assert!(s.inverse(&f).is_none());
        let ns = s.left_nullspace(&f);
        assert_eq!(ns.len(), 1);
        assert!(s.vec_mul(&f, &ns[0]).iter().all(|&x| x == 0));
    }

    #[test]
    fn spin_and_quotient() {
        let f = Gf::new(2, 1).unwrap();
        // regular module of C2: swap of two coordinates
        let g = Mat::from_rows(&[vec![0, 1], vec![1, 0]]);
        let sub = spin(&f, &[vec![1, 1]], &[g.clone()]);
        assert_eq!(sub.rank(), 1);
        assert_eq!(g.restrict(&f, &sub), Mat::identity(1));
        assert_eq!(g.quotient(&f, &sub), Mat::identity(1));
        assert_eq!(spin(&f, &[vec![1, 0]], &[g]).rank(), 2);
    }
}
