//! Dense exact linear algebra over any [`Field`].
//!
//! Vectors are plain `Vec<FieldElement>`; matrices act on column vectors.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, Poly};

pub type Vector = Vec<FieldElement>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|e| e.field() != field) {
            return Err(Error::FieldMismatch(field.name(), bad.field().name()));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        Matrix::from_fn(field, n, n, |i, j| if i == j { field.one() } else { field.zero() })
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FieldElement) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Matrix whose rows are the given vectors; `cols` is needed for the
    /// empty case.
    pub fn from_rows(field: &Field, cols: usize, rows: &[Vector]) -> Matrix {
        Matrix::from_fn(field, rows.len(), cols, |i, j| rows[i][j].clone())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(field: &Field, rows: usize, cols: &[Vector]) -> Matrix {
        Matrix::from_fn(field, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(field, rows.len(), cols, |i, j| field.from_int(rows[i][j]))
    }

    pub fn field(&self) -> &Field {
        &self.field
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

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| {
                let e = self.get(i, j);
                if i == j { e.is_one() } else { e.is_zero() }
            }))
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.name(), other.field.name()));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
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
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Product; panics on a dimension or field mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).expect("matrix product")
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert!(self.rows == other.rows && self.cols == other.cols, "matrix sum shape");
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert!(self.rows == other.rows && self.cols == other.cols, "matrix difference shape");
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mat_vec(&self, v: &[FieldElement]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Entries mapped through `f` into `target`.
    pub fn map(&self, target: &Field, f: impl Fn(&FieldElement) -> FieldElement) -> Matrix {
        Matrix {
            field: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Row-major flattening.
    pub fn to_vec(&self) -> Vector {
        self.data.clone()
    }

    /// Reduced row echelon form, rank and pivot columns.
    pub fn rref(&self) -> (Matrix, usize, Vec<usize>) {
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
                let idx = r * m.cols + j;
                m.data[idx] = &m.data[idx] * &inv;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let t = m.get(r, j);
                    if t.is_zero() {
                        continue;
                    }
                    let d = &factor * t;
                    let idx = i * m.cols + j;
                    m.data[idx] = &m.data[idx] - &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
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
        self.rref().1
    }

    /// Canonical basis of the right null space: one vector per free column,
    /// with that free variable set to 1 and the other free variables 0.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (r, rank, pivots) = self.rref();
        let mut out = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (i, &p) in pivots.iter().enumerate().take(rank) {
                v[p] = -r.get(i, free);
            }
            out.push(v);
        }
        out
    }

    /// One solution of `self · x = b` (free variables zero), `Ok(None)` when
    /// the system is inconsistent.
    pub fn solve(&self, b: &[FieldElement]) -> Result<Option<Vector>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} equations",
                b.len(),
                self.rows
            )));
        }
        let aug = Matrix::from_fn(&self.field, self.rows, self.cols + 1, |i, j| {
            if j < self.cols { self.get(i, j).clone() } else { b[i].clone() }
        });
        let (r, rank, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate().take(rank) {
            x[p] = r.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn kronecker(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        let (p, q) = (other.rows, other.cols);
        Ok(Matrix::from_fn(&self.field, self.rows * p, self.cols * q, |i, j| {
            self.get(i / p, j / q) * other.get(i % p, j % q)
        }))
    }

    pub fn det(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                let factor = m.get(i, c) * &inv;
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let d = &factor * m.get(c, j);
                    let idx = i * n + j;
                    m.data[idx] = &m.data[idx] - &d;
                }
            }
        }
        Ok(det)
    }

    /// Inverse, or `Ok(None)` for a singular matrix.
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let aug = Matrix::from_fn(&self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let (r, rank, pivots) = aug.rref();
        if n > 0 && (rank < n || pivots[n - 1] != n - 1) {
            return Ok(None);
        }
        Ok(Some(Matrix::from_fn(&self.field, n, n, |i, j| r.get(i, n + j).clone())))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// `p(self)` by Horner's rule.
    pub fn eval_poly(&self, p: &Poly) -> Matrix {
        assert!(self.is_square(), "polynomial of a non-square matrix");
        let n = self.rows;
        let mut acc = Matrix::zeros(&self.field, n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let idx = i * n + i;
                acc.data[idx] = &acc.data[idx] + c;
            }
        }
        acc
    }

    /// Monic minimal polynomial: the lcm over the standard basis vectors of
    /// the least dependence in each Krylov sequence `e, Me, M²e, …`.
    pub fn min_poly(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut acc = Poly::one(&self.field);
        for j in 0..n {
            let mut e = vec![self.field.zero(); n];
            e[j] = self.field.one();
            if !acc.is_one() && self.eval_poly_on(&acc, &e).iter().all(|x| x.is_zero()) {
                continue;
            }
            acc = acc.lcm(&self.local_min_poly(e));
        }
        Ok(acc)
    }

    fn eval_poly_on(&self, p: &Poly, v: &[FieldElement]) -> Vector {
        let mut acc = vec![self.field.zero(); v.len()];
        for c in p.coeffs().iter().rev() {
            acc = self.mat_vec(&acc);
            for (a, b) in acc.iter_mut().zip(v) {
                *a = &*a + &(c * b);
            }
        }
        acc
    }

    /// Least monic `p` with `p(self)·v = 0`.
    fn local_min_poly(&self, v: Vector) -> Poly {
        let n = self.rows;
        let mut krylov: Vec<Vector> = Vec::new();
        let mut cur = v;
        loop {
            if !krylov.is_empty() {
                let m = Matrix::from_cols(&self.field, n, &krylov);
                if let Some(x) = m.solve(&cur).expect("shapes agree") {
                    let mut coeffs: Vec<FieldElement> = x.iter().map(|c| -c).collect();
                    coeffs.push(self.field.one());
                    return Poly::from_coeffs(&self.field, coeffs);
                }
            } else if cur.iter().all(|x| x.is_zero()) {
                return Poly::one(&self.field);
            }
            let next = self.mat_vec(&cur);
            krylov.push(cur);
            cur = next;
        }
    }
}

/// Incrementally maintained echelon basis of a subspace of `F^n`. Every stored
/// row has a leading 1 in its pivot column and zeros in the pivot columns of
/// earlier rows, so sequential reduction is exact.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    field: Field,
    len: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl EchelonBuilder {
    pub fn new(field: &Field, len: usize) -> EchelonBuilder {
        EchelonBuilder { field: field.clone(), len, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.len
    }

    /// Residue of `v` after eliminating the stored pivots.
    pub fn reduce(&self, v: &[FieldElement]) -> Vector {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if c.is_zero() {
                continue;
            }
            for (j, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    w[j] = &w[j] - &(&c * r);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &[FieldElement]) -> bool {
        assert_eq!(v.len(), self.len, "vector length");
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero");
        let w: Vector = w.iter().map(|x| x * &inv).collect();
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    /// The stored (not necessarily reduced) basis in insertion order.
    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    /// Canonical basis: the nonzero rows of the reduced row echelon form.
    pub fn canonical_basis(&self) -> Vec<Vector> {
        canonical_basis(&self.field, self.len, &self.rows)
    }
}

/// Nonzero rows of the rref of the stacked vectors.
pub fn canonical_basis(field: &Field, len: usize, vectors: &[Vector]) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (r, rank, _) = Matrix::from_rows(field, len, vectors).rref();
    (0..rank).map(|i| r.row(i).to_vec()).collect()
}

pub fn is_zero_vector(v: &[FieldElement]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Coordinates of `v` in the given (independent) basis, if it lies in the span.
pub fn coordinates_in(field: &Field, basis: &[Vector], v: &[FieldElement]) -> Option<Vector> {
    if basis.is_empty() {
        return is_zero_vector(v).then(Vec::new);
    }
    Matrix::from_cols(field, v.len(), basis).solve(v).expect("shapes agree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn rref_examples() {
        let (_, rank, _) = Matrix::from_ints(&q(), &[&[1, 2], &[2, 4]]).rref();
        assert_eq!(rank, 1);
        let id = Matrix::identity(&q(), 3);
        let (r, rank, _) = id.rref();
        assert_eq!(rank, 3);
        assert_eq!(r, id);

        let f4 = Field::finite(2, 2).unwrap();
        let t = f4.generator();
        let m = Matrix::from_fn(&f4, 2, 2, |i, j| match (i, j) {
            (0, 0) => t.clone(),
            (0, 1) => f4.one(),
            _ => f4.zero(),
        });
        let (r, rank, pivots) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(pivots, vec![0]);
        assert!(r.get(0, 0).is_one());
        assert_eq!(r.get(0, 1), &t.inv().unwrap());
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(&q(), 3).kernel_basis().is_empty());
        let k = Matrix::zeros(&q(), 2, 2).kernel_basis();
        assert_eq!(k, vec![vec![q().one(), q().zero()], vec![q().zero(), q().one()]]);
        let f2 = Field::prime(2).unwrap();
        let k = Matrix::from_ints(&f2, &[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![f2.one(), f2.one()]]);
    }

    #[test]
    fn solve_examples() {
        let b: Vector = [3, -1, 7].iter().map(|&x| q().from_int(x)).collect();
        assert_eq!(Matrix::identity(&q(), 3).solve(&b).unwrap(), Some(b.clone()));
        let m = Matrix::from_ints(&q(), &[&[1, 2], &[2, 4]]);
        assert_eq!(m.solve(&[q().from_int(1), q().from_int(3)]).unwrap(), None);
        let half = q().from_int(2).inv().unwrap();
        assert_eq!(Matrix::from_ints(&q(), &[&[2]]).solve(&[q().one()]).unwrap(), Some(vec![half]));
        assert!(matches!(m.solve(&[q().one()]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn kronecker_examples() {
        let k = Matrix::identity(&q(), 2).kronecker(&Matrix::identity(&q(), 3)).unwrap();
        assert_eq!(k, Matrix::identity(&q(), 6));
        let a = Matrix::zeros(&q(), 2, 3);
        let b = Matrix::zeros(&q(), 4, 5);
        let k = a.kronecker(&b).unwrap();
        assert_eq!((k.rows(), k.cols()), (8, 15));
        let n = Matrix::from_ints(&q(), &[&[0, 1], &[0, 0]]);
        let nn = n.kronecker(&n).unwrap();
        assert!(!nn.is_zero());
        assert!(nn.mul(&nn).is_zero());
        let f2 = Matrix::identity(&Field::prime(2).unwrap(), 1);
        assert!(matches!(n.kronecker(&f2), Err(Error::FieldMismatch(_, _))));
    }

    #[test]
    fn min_poly_examples() {
        let x = Poly::x(&q());
        assert_eq!(Matrix::zeros(&q(), 3, 3).min_poly().unwrap(), x);
        let rot = Matrix::from_ints(&q(), &[&[0, -1], &[1, 0]]);
        assert_eq!(rot.min_poly().unwrap(), Poly::from_ints(&q(), &[1, 0, 1]));
        assert_eq!(Matrix::identity(&q(), 2).min_poly().unwrap(), Poly::from_ints(&q(), &[-1, 1]));
        assert!(matches!(Matrix::zeros(&q(), 2, 3).min_poly(), Err(Error::NotSquare(2, 3))));
    }

    #[test]
    fn det_and_inverse() {
        let m = Matrix::from_ints(&q(), &[&[2, 1], &[7, 4]]);
        assert_eq!(m.det().unwrap(), q().one());
        let inv = m.inverse().unwrap().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(Matrix::from_ints(&q(), &[&[1, 2], &[2, 4]]).inverse().unwrap(), None);
    }

    #[test]
    fn echelon_builder_tracks_span() {
        let f = q();
        let v = |xs: &[i64]| xs.iter().map(|&x| f.from_int(x)).collect::<Vector>();
        let mut e = EchelonBuilder::new(&f, 3);
        assert!(e.insert(&v(&[0, 2, 2])));
        assert!(e.insert(&v(&[1, 1, 1])));
        assert!(!e.insert(&v(&[3, 1, 1])));
        assert!(e.contains(&v(&[2, 5, 5])));
        assert!(!e.contains(&v(&[0, 0, 1])));
        assert_eq!(e.canonical_basis(), vec![v(&[1, 0, 0]), v(&[0, 1, 1])]);
    }
}
