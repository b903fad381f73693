use std::fmt;

use super::linalg::FieldMatrix;
use super::poly::{same_ring, Poly, RingRef};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Dense matrix over a polynomial ring. Column j is the image of basis vector j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: RingRef,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

/// Below this size determinants use cofactor expansion, above it Bareiss elimination.
pub const COFACTOR_LIMIT: usize = 5;

impl Matrix {
    pub fn zeros(ring: &RingRef, rows: usize, cols: usize) -> Matrix {
        Matrix { ring: ring.clone(), rows, cols, data: vec![Poly::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &RingRef, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(ring));
        }
        m
    }

    pub fn scalar_identity(ring: &RingRef, n: usize, r: &Poly) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, r.clone());
        }
        m
    }

    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<Poly>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Dimension("ragged matrix rows".into()));
            }
            for p in row {
                if !same_ring(p.ring(), ring) {
                    return Err(Error::RingMismatch("matrix entry from another ring".into()));
                }
                data.push(p);
            }
        }
        Ok(Matrix { ring: ring.clone(), rows: r, cols: c, data })
    }

    /// Parses row-major entry strings; an empty outer list with `cols` gives a 0×cols matrix.
    pub fn parse(ring: &RingRef, rows: &[Vec<String>], cols_if_empty: usize) -> Result<Matrix> {
        if rows.is_empty() {
            return Ok(Matrix::zeros(ring, 0, cols_if_empty));
        }
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| Poly::parse(ring, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(ring, parsed)
    }

    pub fn from_strs(ring: &RingRef, rows: &[&[&str]]) -> Result<Matrix> {
        let owned: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
        Matrix::parse(ring, &owned, 0)
    }

    pub fn from_field(ring: &RingRef, m: &FieldMatrix) -> Matrix {
        let mut out = Matrix::zeros(ring, m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, Poly::constant(ring, m.get(i, j).clone()));
            }
        }
        out
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Poly) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = Matrix::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) + &(a * b);
                    m.set(i, j, v);
                }
            }
        }
        Ok(m)
    }

    /// Matrix product; panics on a shape mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.checked_mul(other).expect("matrix shape mismatch")
    }

    pub fn mul_vec(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = Poly::zero(&self.ring);
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc = &acc + &(self.get(i, j) * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix shape mismatch");
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix shape mismatch");
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&-&Poly::one(&self.ring))
    }

    pub fn scale(&self, r: &Poly) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * r).collect(),
        }
    }

    pub fn scale_i64(&self, s: i64) -> Matrix {
        self.scale(&Poly::from_i64(&self.ring, s))
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(&self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Deletes the listed rows and columns (0-based).
    pub fn delete(&self, del_rows: &[usize], del_cols: &[usize]) -> Result<Matrix> {
        if let Some(&i) = del_rows.iter().find(|&&i| i >= self.rows) {
            return Err(Error::Dimension(format!("row index {i} out of range")));
        }
        if let Some(&j) = del_cols.iter().find(|&&j| j >= self.cols) {
            return Err(Error::Dimension(format!("column index {j} out of range")));
        }
        let rows: Vec<usize> = (0..self.rows).filter(|i| !del_rows.contains(i)).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|j| !del_cols.contains(j)).collect();
        Ok(self.submatrix(&rows, &cols))
    }

    /// Places blocks side by side.
    pub fn hstack(ring: &RingRef, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(ring, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            m.paste(0, off, b);
            off += b.cols;
        }
        m
    }

    pub fn paste(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let rs: Vec<usize> = (r0..r0 + rows).collect();
        let cs: Vec<usize> = (c0..c0 + cols).collect();
        self.submatrix(&rs, &cs)
    }

    pub fn is_constant(&self) -> bool {
        self.data.iter().all(|p| p.constant_value().is_some())
    }

    /// The same matrix over the coefficient field; fails on non-constant entries.
    pub fn to_field(&self) -> Result<FieldMatrix> {
        let mut out = FieldMatrix::zeros(self.ring.field, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let c = self
                    .get(i, j)
                    .constant_value()
                    .ok_or_else(|| Error::NonConstant(format!("entry ({i},{j}) = {}", self.get(i, j))))?;
                out.set(i, j, c);
            }
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Scalar]) -> FieldMatrix {
        let mut out = FieldMatrix::zeros(self.ring.field, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).eval(point));
            }
        }
        out
    }

    pub fn embed(&self, target: &RingRef) -> Result<Matrix> {
        Ok(Matrix {
            ring: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|p| p.embed(target)).collect::<Result<Vec<_>>>()?,
        })
    }

    pub fn det(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("determinant of non-square {}x{} matrix", self.rows, self.cols)));
        }
        if self.rows < COFACTOR_LIMIT {
            Ok(self.det_cofactor())
        } else {
            Ok(self.det_bareiss())
        }
    }

    /// Laplace expansion along the first row.
    pub fn det_cofactor(&self) -> Poly {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Poly::one(&self.ring);
        }
        if n == 1 {
            return self.get(0, 0).clone();
        }
        let mut acc = Poly::zero(&self.ring);
        for j in 0..n {
            let a = self.get(0, j);
            if a.is_zero() {
                continue;
            }
            let minor = self.delete(&[0], &[j]).unwrap().det_cofactor();
            let t = a * &minor;
            acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }

    /// Fraction-free (Bareiss) elimination; every division is exact in the polynomial ring.
    pub fn det_bareiss(&self) -> Poly {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Poly::one(&self.ring);
        }
        let mut a: Vec<Vec<Poly>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut sign = false;
        let mut prev = Poly::one(&self.ring);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = !sign;
                    }
                    None => return Poly::zero(&self.ring),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign {
            -&d
        } else {
            d
        }
    }

    pub fn is_alternating(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            if !self.get(i, i).is_zero() {
                return false;
            }
            for j in i + 1..self.cols {
                if *self.get(i, j) != -self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Pfaffian of an alternating matrix; 0 for odd size, 1 for the empty matrix.
pub fn pfaffian(a: &Matrix) -> Result<Poly> {
    if !a.is_alternating() {
        return Err(Error::Precondition("matrix is not alternating".into()));
    }
    Ok(pf_rec(a, &(0..a.rows()).collect::<Vec<_>>()))
}

fn pf_rec(a: &Matrix, idx: &[usize]) -> Poly {
    let ring = a.ring();
    if idx.is_empty() {
        return Poly::one(ring);
    }
    if idx.len() % 2 == 1 {
        return Poly::zero(ring);
    }
    let first = idx[0];
    let mut acc = Poly::zero(ring);
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        let entry = a.get(first, j);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx.iter().copied().filter(|&k| k != first && k != j).collect();
        let t = entry * &pf_rec(a, &rest);
        // position pos is 1-based index pos+1 in the expansion sum, sign (-1)^(pos+1)
        acc = if pos % 2 == 1 { &acc + &t } else { &acc - &t };
    }
    acc
}

/// Sign convention for the entries B_i built from submaximal Pfaffians.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignFlag {
    /// B_i = (-1)^i Pf(A^i_i), i 1-based.
    A,
    /// B_i = (-1)^(i-1) Pf(A^i_i), i 1-based.
    #[default]
    B,
}

/// Pf(A^i_i) for each i: delete row and column i. Unsigned.
pub fn submaximal_pfaffians(a: &Matrix) -> Result<Vec<Poly>> {
    if !a.is_alternating() {
        return Err(Error::Precondition("matrix is not alternating".into()));
    }
    let n = a.rows();
    Ok((0..n)
        .map(|i| {
            let idx: Vec<usize> = (0..n).filter(|&k| k != i).collect();
            pf_rec(a, &idx)
        })
        .collect())
}

/// Submaximal Pfaffians with the alternating signs selected by `flag`.
pub fn signed_submaximal_pfaffians(a: &Matrix, flag: SignFlag) -> Result<Vec<Poly>> {
    let pf = submaximal_pfaffians(a)?;
    Ok(pf
        .into_iter()
        .enumerate()
        .map(|(i0, p)| {
            // i0 is 0-based, so the 1-based index is i0+1
            let negate = match flag {
                SignFlag::A => i0 % 2 == 0,
                SignFlag::B => i0 % 2 == 1,
            };
            if negate {
                -&p
            } else {
                p
            }
        })
        .collect())
}

/// Pfaffian of the principal submatrix on the rows/columns not in `deleted`.
pub fn principal_pfaffian(a: &Matrix, deleted: &[usize]) -> Poly {
    let idx: Vec<usize> = (0..a.rows()).filter(|k| !deleted.contains(k)).collect();
    pf_rec(a, &idx)
}
