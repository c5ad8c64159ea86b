//! Dense exact linear algebra over [`Quad`] by Gaussian elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::quad::Quad;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Quad>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Quad::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Quad::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Quad>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Quad::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn from_columns(cols: &[Vec<Quad>]) -> Self {
        let n = cols.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Quad {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Quad) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Quad] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Quad> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Quad>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Quad::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Quad::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Quad]) -> Vec<Quad> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Quad::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> Quad {
        assert_eq!(self.rows, self.cols, "square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Quad::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Quad::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix> {
        assert_eq!(self.rows, self.cols, "square matrix");
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Quad::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// One solution of `self · x = b` with free variables set to zero.
    pub fn solve(&self, b: &[Quad]) -> Result<Vec<Quad>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent("linear system has no solution".into()));
        }
        let mut x = vec![Quad::zero(); self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = r.get(row, self.cols).clone();
        }
        Ok(x)
    }

    /// Basis of the right kernel; each vector has a 1 in its free coordinate.
    pub fn nullspace(&self) -> Vec<Vec<Quad>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Quad::zero(); self.cols];
                v[f] = Quad::one();
                for (row, &c) in pivots.iter().enumerate() {
                    v[c] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    /// Row indices whose unit vectors, taken greedily in `order`, complete the
    /// column space of `self` to the whole space.
    pub fn image_complement(&self, order: &[usize]) -> Vec<usize> {
        let mut basis = self.clone();
        let mut rank = basis.rank();
        let mut chosen = Vec::new();
        for &i in order {
            if rank == self.rows {
                break;
            }
            let mut e = vec![Quad::zero(); self.rows];
            e[i] = Quad::one();
            let candidate = basis.with_column(&e);
            let r = candidate.rank();
            if r > rank {
                basis = candidate;
                rank = r;
                chosen.push(i);
            }
        }
        chosen
    }

    fn with_column(&self, col: &[Quad]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            m.set(i, self.cols, col[i].clone());
        }
        m
    }

    /// Splits `b = self·x + Σ c_i e_i` over the given complement rows.
    /// Returns `(x, c)`.
    pub fn decompose(&self, b: &[Quad], complement: &[usize]) -> Result<(Vec<Quad>, Vec<Quad>)> {
        let mut m = self.clone();
        for &i in complement {
            let mut e = vec![Quad::zero(); self.rows];
            e[i] = Quad::one();
            m = m.with_column(&e);
        }
        let z = m.solve(b)?;
        let (x, c) = z.split_at(self.cols);
        Ok((x.to_vec(), c.to_vec()))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
