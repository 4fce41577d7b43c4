//! Dense exact matrices over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::polyring::{format_q, Field, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<K: Field> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Field> Matrix<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![K::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = K::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(cols: Vec<Vec<K>>) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn diagonal(d: Vec<K>) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, v) in d.into_iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<K> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<K> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &K) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v.clone() * c.clone()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn apply(&self, v: &[K]) -> Vec<K> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).fold(K::zero(), |acc, j| acc + self[(i, j)].clone() * v[j].clone()))
            .collect()
    }

    pub fn trace(&self) -> K {
        (0..self.rows.min(self.cols)).fold(K::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Row-reduces `[self | rhs]`; returns the pivot columns.
    fn eliminate(a: &mut Matrix<K>, rhs: &mut Matrix<K>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else { continue };
            a.swap_rows(p, r);
            rhs.swap_rows(p, r);
            let inv = a[(r, c)].inv();
            a.scale_row(r, &inv);
            rhs.scale_row(r, &inv);
            for i in 0..a.rows {
                if i != r && !a[(i, c)].is_zero() {
                    let f = a[(i, c)].clone();
                    a.axpy_row(i, r, &f);
                    rhs.axpy_row(i, r, &f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, r: usize, c: &K) {
        for j in 0..self.cols {
            let v = self[(r, j)].clone() * c.clone();
            self[(r, j)] = v;
        }
    }

    /// row[i] -= f * row[r]
    fn axpy_row(&mut self, i: usize, r: usize, f: &K) {
        for j in 0..self.cols {
            if !self[(r, j)].is_zero() {
                let v = self[(i, j)].clone() - f.clone() * self[(r, j)].clone();
                self[(i, j)] = v;
            }
        }
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rhs = Matrix::zeros(self.rows, 0);
        Self::eliminate(&mut a, &mut rhs).len()
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let mut a = self.clone();
        let mut inv = Self::identity(self.rows);
        let piv = Self::eliminate(&mut a, &mut inv);
        (piv.len() == self.rows).then_some(inv)
    }

    pub fn det(&self) -> K {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = K::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else { return K::zero() };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            det = det * a[(c, c)].clone();
            let inv = a[(c, c)].inv();
            for i in c + 1..n {
                if !a[(i, c)].is_zero() {
                    let f = a[(i, c)].clone() * inv.clone();
                    a.axpy_row(i, c, &f);
                }
            }
        }
        det
    }

    /// Solves `self * X = rhs`; `None` if inconsistent. Free variables are set to zero.
    /// The flag reports whether the solution is unique.
    pub fn solve(&self, rhs: &Matrix<K>) -> Option<(Matrix<K>, bool)> {
        let mut a = self.clone();
        let mut b = rhs.clone();
        let piv = Self::eliminate(&mut a, &mut b);
        for i in piv.len()..self.rows {
            if (0..b.cols).any(|j| !b[(i, j)].is_zero()) {
                return None;
            }
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (r, &c) in piv.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(c, j)] = b[(r, j)].clone();
            }
        }
        Some((x, piv.len() == self.cols))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.rows), |acc, _| &acc * self)
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> Matrix<L> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }
}

/// Characteristic polynomial coefficients `c_0..c_n` (monic, `c_n = 1`) by Faddeev–LeVerrier.
pub fn charpoly(m: &Matrix<Q>) -> Vec<Q> {
    let n = m.rows();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut mk = Matrix::<Q>::zeros(n, n);
    for k in 1..=n {
        let mut next = m * &mk;
        for i in 0..n {
            next[(i, i)] = next[(i, i)].clone() + coeffs[n - k + 1].clone();
        }
        mk = next;
        let am = m * &mk;
        coeffs[n - k] = -am.trace() / Q::from_integer((k as i64).into());
    }
    coeffs
}

impl<K: Field> std::ops::Index<(usize, usize)> for Matrix<K> {
    type Output = K;
    fn index(&self, (i, j): (usize, usize)) -> &K {
        &self.data[i * self.cols + j]
    }
}

impl<K: Field> std::ops::IndexMut<(usize, usize)> for Matrix<K> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut K {
        &mut self.data[i * self.cols + j]
    }
}

impl<K: Field> Mul for &Matrix<K> {
    type Output = Matrix<K>;
    fn mul(self, o: &Matrix<K>) -> Matrix<K> {
        assert_eq!(self.cols, o.rows);
        let mut out = Matrix::<K>::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    if !o[(k, j)].is_zero() {
                        let v = out[(i, j)].clone() + a.clone() * o[(k, j)].clone();
                        out[(i, j)] = v;
                    }
                }
            }
        }
        out
    }
}

impl<K: Field> Add for &Matrix<K> {
    type Output = Matrix<K>;
    fn add(self, o: &Matrix<K>) -> Matrix<K> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b.clone()).collect() }
    }
}

impl<K: Field> Sub for &Matrix<K> {
    type Output = Matrix<K>;
    fn sub(self, o: &Matrix<K>) -> Matrix<K> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b.clone()).collect() }
    }
}

impl fmt::Display for Matrix<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows).map(|i| self.row(i).iter().map(format_q).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

impl Matrix<Q> {
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(format_q).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{q, qi};

    fn m(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| qi(v)).collect()).collect())
    }

    #[test]
    fn inverse_det_solve() {
        let a = m(&[&[2, 1], &[7, 4]]);
        assert_eq!(a.det(), qi(1));
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
        let (x, unique) = a.solve(&m(&[&[3], &[11]])).unwrap();
        assert!(unique);
        assert_eq!(x, m(&[&[1], &[1]]));
        assert!(m(&[&[1, 1], &[1, 1]]).solve(&m(&[&[1], &[2]])).is_none());
        assert_eq!(m(&[&[1, 2], &[3, 4]]).scale(&q(1, 2)).det(), q(-1, 2));
    }

    #[test]
    fn charpoly_of_companion() {
        // x^2 + 1
        let c = m(&[&[0, -1], &[1, 0]]);
        assert_eq!(charpoly(&c), vec![qi(1), qi(0), qi(1)]);
        let d = m(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]);
        assert_eq!(charpoly(&d), vec![qi(-30), qi(31), qi(-10), qi(1)]);
    }
}
