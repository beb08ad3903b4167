//! Dense exact linear algebra: the substrate for every Hom, Ext, kernel and
//! rank computation. Deterministic pivoting (first nonzero entry) so all
//! downstream output is reproducible byte for byte.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Scalar> {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<F>,
}

impl<F: Scalar> std::fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{}", self.at(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Scalar> Matrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| F::from_i64(x)).collect()).collect())
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &F {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(F::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<F> {
        self.row(i).to_vec()
    }

    pub fn col_vec(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale(&self, c: &F) -> Self {
        let entries = self.entries.iter().map(|a| a.mul(c)).collect();
        Matrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn neg(&self) -> Self {
        let entries = self.entries.iter().map(|a| a.neg()).collect();
        Matrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.at(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// v * self for a row vector v.
    pub fn apply_row(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![F::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let a = self.at(i, j);
                if !a.is_zero() {
                    out[j] = out[j].add(&vi.mul(a));
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: usize) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols { self.at(i, j).clone() } else { other.at(i, j - self.cols).clone() }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Matrix { rows: self.rows + other.rows, cols: self.cols, entries }
    }

    pub fn vstack_all(mats: &[Self], cols: usize) -> Self {
        let mut out = Matrix { rows: 0, cols, entries: Vec::new() };
        for m in mats {
            assert_eq!(m.cols, cols);
            out.rows += m.rows;
            out.entries.extend_from_slice(&m.entries);
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.at(rows[i], cols[j]).clone())
    }

    /// Block-diagonal stack of two matrices.
    pub fn block_diag(&self, other: &Self) -> Self {
        Self::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            if i < self.rows && j < self.cols {
                self.at(i, j).clone()
            } else if i >= self.rows && j >= self.cols {
                other.at(i - self.rows, j - self.cols).clone()
            } else {
                F::zero()
            }
        })
    }

    /// Reduced row-echelon form with the list of pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // first nonzero entry in column c at or below row r
            let mut pr = None;
            for i in r..m.rows {
                if !m.at(i, c).is_zero() {
                    pr = Some(i);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            if pr != r {
                for j in 0..m.cols {
                    m.entries.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.at(r, c).inv().expect("pivot nonzero");
            for j in c..m.cols {
                let v = m.at(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.at(i, c).is_zero() {
                    continue;
                }
                let f = m.at(i, c).clone();
                for j in c..m.cols {
                    let v = m.at(i, j).sub(&f.mul(m.at(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, returned as the columns of a matrix.
    /// `self * kernel_basis(self) = 0`.
    pub fn kernel_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zero(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, F::one());
            for (pi, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, r.at(pi, fc).neg());
            }
        }
        out
    }

    /// Basis of the left null space (rows v with v * self = 0), as rows.
    pub fn left_kernel_basis(&self) -> Self {
        self.transpose().kernel_basis().transpose()
    }

    /// Solve self * x = b columnwise; `None` when inconsistent.
    pub fn solve(&self, b: &Self) -> Result<Option<Self>> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch {
                context: format!("solve: {}x{} vs {}x{}", self.rows, self.cols, b.rows, b.cols),
            });
        }
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Self::zero(self.cols, b.cols);
        for (pi, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.at(pi, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    /// Solve x * self = b rowwise (row-vector convention).
    pub fn solve_left(&self, b: &Self) -> Result<Option<Self>> {
        Ok(self
            .transpose()
            .solve(&b.transpose())?
            .map(|x| x.transpose()))
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve(&Self::identity(self.rows)).expect("square dims");
        x.filter(|x| self.mul(x) == Self::identity(self.rows))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Row space basis in rref form; canonical for a given row space.
    pub fn row_space_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        Self::from_fn(pivots.len(), self.cols, |i, j| r.at(i, j).clone())
    }
}

/// Coordinates (rows) of `mats[j]` in the spanning set `basis`; panics if a
/// matrix lies outside the span.
pub fn coords_in<F: Scalar>(basis: &[Matrix<F>], mats: &[Matrix<F>]) -> Matrix<F> {
    let k = basis.len();
    if mats.is_empty() {
        return Matrix::zero(0, k);
    }
    let flat_dim = basis.first().map_or(0, |m| m.rows * m.cols);
    let cols = Matrix::from_fn(flat_dim, k, |i, j| {
        let m = &basis[j];
        m.at(i / m.cols, i % m.cols).clone()
    });
    let mut rows = Vec::new();
    for m in mats {
        let flat = Matrix::from_fn(flat_dim, 1, |i, _| m.at(i / m.cols, i % m.cols).clone());
        let c = cols.solve(&flat).expect("dims agree").expect("matrix lies in the span");
        rows.push((0..k).map(|j| c.at(j, 0).clone()).collect());
    }
    Matrix::from_rows(rows)
}

/// Independent fraction-free Bareiss elimination rank oracle.
/// Kept apart from `rref` so the two routes never share code.
pub fn bareiss_rank<F: Scalar>(m: &Matrix<F>) -> usize {
    let mut a: Vec<Vec<F>> = (0..m.rows).map(|i| m.row_vec(i)).collect();
    let rows = m.rows;
    let cols = m.cols;
    let mut prev = F::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut pr = None;
        for i in r..rows {
            if !a[i][c].is_zero() {
                pr = Some(i);
                break;
            }
        }
        let Some(pr) = pr else { continue };
        a.swap(r, pr);
        let piv = a[r][c].clone();
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = piv.mul(&a[i][j]).sub(&a[i][c].mul(&a[r][j]));
                a[i][j] = num.mul(&prev.inv().expect("previous pivot nonzero"));
            }
            a[i][c] = F::zero();
        }
        prev = piv;
        r += 1;
    }
    r
}
