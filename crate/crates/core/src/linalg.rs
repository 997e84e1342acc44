//! Dense exact matrices and the handful of linear-algebra kernels the rest of
//! the crate is built on.
//!
//! Pivoting is deterministic: at each step the pivot is the first nonzero
//! entry of the current column at or below the current row. Kernel bases are
//! the reduced-echelon kernel, one vector per free column in increasing
//! column order.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::upoly::UniPoly;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> =
                self.data[r * self.cols..(r + 1) * self.cols].iter().map(|x| format!("{x:?}")).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of row reduction: the reduced echelon form and its pivot columns.
#[derive(Clone)]
pub struct Echelon<F> {
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    /// Builds a matrix whose columns are the given vectors, all of length `dim`.
    pub fn from_columns(columns: &[Vec<F>], dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: col.len() });
            }
            for (r, x) in col.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        Ok(m)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| F::from_i64(x)).collect()).collect())
            .expect("rectangular literal")
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c).clone() + a.clone() * b.clone();
                        out.set(r, c, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix<F>) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.clone() * s.clone()).collect() }
    }

    /// `self - s·I` for a square matrix.
    pub fn shift(&self, s: &F) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = m.get(i, i).clone() - s.clone();
            m.set(i, i, v);
        }
        m
    }

    pub fn pow(&self, e: usize) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self).expect("square");
        }
        acc
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// Reduced row echelon form with deterministic pivots.
    pub fn echelon(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            for c in col..m.cols {
                let v = m.get(row, c).clone() * inv.clone();
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let pv = m.get(row, c);
                    if !pv.is_zero() {
                        let v = m.get(r, c).clone() - factor.clone() * pv.clone();
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        let full = self.rows.min(self.cols);
        if let Some(image) = F::modular_image(self) {
            if full > 0 && image.rank() == full {
                return full;
            }
        }
        self.echelon().pivots.len()
    }

    /// Rank and the reduced-echelon basis of the right kernel.
    pub fn rank_and_right_kernel(&self) -> (usize, Vec<Vec<F>>) {
        // Full column rank modulo a prime forces full column rank over ℚ.
        if self.rows >= self.cols && self.cols > 0 {
            if let Some(image) = F::modular_image(self) {
                if image.rank() == self.cols {
                    return (self.cols, Vec::new());
                }
            }
        }
        let Echelon { reduced, pivots } = self.echelon();
        let mut is_pivot = vec![None; self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(r);
        }
        let kernel = (0..self.cols)
            .filter(|&c| is_pivot[c].is_none())
            .map(|free| {
                let mut v = vec![F::zero(); self.cols];
                v[free] = F::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced.get(r, free).clone();
                }
                v
            })
            .collect();
        (pivots.len(), kernel)
    }

    pub fn right_kernel(&self) -> Vec<Vec<F>> {
        self.rank_and_right_kernel().1
    }

    pub fn determinant(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(F::determinant(self))
    }

    pub(crate) fn determinant_by_elimination(&self) -> F {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = F::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return F::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det = det * pivot.clone();
            let inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                let factor = m.get(r, col).clone() * inv.clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m.get(r, c).clone() - factor.clone() * m.get(col, c).clone();
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, F::one());
        }
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, reduced.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }

    /// A matrix `L` with `L·self = I`, for a matrix of full column rank.
    pub fn left_inverse(&self) -> Result<Self> {
        let t = self.transpose();
        let ech = t.echelon();
        if ech.pivots.len() < self.cols {
            return Err(Error::Singular);
        }
        // Pivot columns of selfᵀ are independent rows of self.
        let mut square = Self::zeros(self.cols, self.cols);
        for (i, &r) in ech.pivots.iter().enumerate() {
            for c in 0..self.cols {
                square.set(i, c, self.get(r, c).clone());
            }
        }
        let sq_inv = square.inverse()?;
        let mut left = Self::zeros(self.cols, self.rows);
        for (i, &r) in ech.pivots.iter().enumerate() {
            for k in 0..self.cols {
                left.set(k, r, sq_inv.get(k, i).clone());
            }
        }
        Ok(left)
    }

    /// Characteristic polynomial `det(x·I - self)` via Hessenberg reduction.
    pub fn char_poly(&self) -> UniPoly<F> {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            if i != m {
                h.swap_rows(i, m);
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let t = h.get(m, m - 1).clone();
            for j in m + 1..n {
                let u = h.get(j, m - 1).clone() / t.clone();
                if u.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = h.get(j, c).clone() - u.clone() * h.get(m, c).clone();
                    h.set(j, c, v);
                }
                for r in 0..n {
                    let v = h.get(r, m).clone() + u.clone() * h.get(r, j).clone();
                    h.set(r, m, v);
                }
            }
        }
        let x = UniPoly::monomial(F::one(), 1);
        let mut p: Vec<UniPoly<F>> = vec![UniPoly::constant(F::one())];
        for m in 1..=n {
            let mut pm = x.sub(&UniPoly::constant(h.get(m - 1, m - 1).clone())).mul(&p[m - 1]);
            let mut t = F::one();
            for i in (1..m).rev() {
                t = t * h.get(i, i - 1).clone();
                let coef = h.get(i - 1, m - 1).clone() * t.clone();
                if !coef.is_zero() {
                    pm = pm.sub(&p[i - 1].scale(&coef));
                }
            }
            p.push(pm);
        }
        p.pop().expect("nonempty")
    }

    /// Matrix polynomial evaluation by Horner's rule.
    pub fn eval_poly(&self, f: &UniPoly<F>) -> Self {
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self).expect("square");
            acc = acc.shift(&-c.clone());
        }
        acc
    }
}

/// Canonical basis of the span of `vectors`: the nonzero rows of their
/// reduced echelon form.
pub fn span_basis<F: Field>(vectors: &[Vec<F>], dim: usize) -> Result<Vec<Vec<F>>> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    for v in vectors {
        if v.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
        }
    }
    let m = Matrix::from_rows(vectors.to_vec())?;
    let ech = m.echelon();
    Ok((0..ech.pivots.len()).map(|r| ech.reduced.row(r).to_vec()).collect())
}

/// Basis of `span(a) ∩ span(b)`, from the kernel of `[A | -B]`.
pub fn subspace_intersect<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Result<Vec<Vec<F>>> {
    let dim = match (a.first(), b.first()) {
        (Some(x), Some(y)) => {
            if x.len() != y.len() {
                return Err(Error::DimensionMismatch { expected: x.len(), found: y.len() });
            }
            x.len()
        }
        _ => return Ok(Vec::new()),
    };
    let mut cols: Vec<Vec<F>> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|x| -x.clone()).collect::<Vec<F>>()));
    let m = Matrix::from_columns(&cols, dim)?;
    let kernel = m.right_kernel();
    let images: Vec<Vec<F>> = kernel
        .iter()
        .map(|k| {
            (0..dim)
                .map(|r| {
                    a.iter()
                        .zip(k)
                        .filter(|(_, c)| !c.is_zero())
                        .fold(F::zero(), |acc, (v, c)| acc + v[r].clone() * c.clone())
                })
                .collect()
        })
        .collect();
    span_basis(&images, dim)
}

/// Completes independent `vectors` to a basis of `F^ambient`, greedily adding
/// standard basis vectors in increasing index order. Returns the basis as the
/// columns of an invertible matrix.
pub fn extend_to_basis<F: Field>(vectors: &[Vec<F>], ambient: usize) -> Result<Matrix<F>> {
    for v in vectors {
        if v.len() != ambient {
            return Err(Error::DimensionMismatch { expected: ambient, found: v.len() });
        }
    }
    let mut cols: Vec<Vec<F>> = vectors.to_vec();
    if !cols.is_empty() && Matrix::from_columns(&cols, ambient)?.rank() < cols.len() {
        return Err(Error::DependentVectors);
    }
    for i in 0..ambient {
        if cols.len() == ambient {
            break;
        }
        let mut e = vec![F::zero(); ambient];
        e[i] = F::one();
        cols.push(e);
        if Matrix::from_columns(&cols, ambient)?.rank() < cols.len() {
            cols.pop();
        }
    }
    Matrix::from_columns(&cols, ambient)
}
