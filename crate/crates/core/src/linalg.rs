//! Dense exact linear algebra over [`Rational`].
//!
//! Everything here is exact; row reduction always pivots on the leftmost
//! nonzero column, which makes reduced row-echelon forms (and therefore
//! [`Subspace`] bases) canonical.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row-major data; `data.len()` must equal `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    pub fn from_ints(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            rows,
            cols,
            data: entries.iter().map(|&x| Rational::integer(x)).collect(),
        }
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

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[Rational]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        matrix_product(self, other)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc.add_product(a, b);
                }
                acc
            })
            .collect())
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = self[(r, c)].recip().expect("nonzero pivot");
            for j in c..cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for j in c..cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let delta = &factor * &self[(r, j)];
                    self[(i, j)] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
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

    /// Deletes row `r` and column `c`.
    pub fn minor(&self, r: usize, c: usize) -> Matrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

pub fn matrix_product(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.cols != b.rows {
        return Err(Error::Shape(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = Matrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = &a[(i, k)];
            if aik.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                out[(i, j)].add_product(aik, &b[(k, j)]);
            }
        }
    }
    Ok(out)
}

pub fn determinant(m: &Matrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "determinant of {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != c {
            a.swap_rows(p, c);
            det = -det;
        }
        let pivot = a[(c, c)].clone();
        det *= &pivot;
        let inv = pivot.recip().expect("nonzero pivot");
        for i in c + 1..n {
            if a[(i, c)].is_zero() {
                continue;
            }
            let factor = &a[(i, c)] * &inv;
            for j in c..n {
                let delta = &factor * &a[(c, j)];
                a[(i, j)] -= delta;
            }
        }
    }
    Ok(det)
}

/// Returns `(det, cofactors)` where `cofactors[(i, j)] = (-1)^(i+j) det(minor(i, j))`,
/// so that `m * cofactorsᵀ == det * I`. The classical adjugate is `cofactorsᵀ`.
pub fn determinant_adjugate(m: &Matrix) -> Result<(Rational, Matrix)> {
    let det = determinant(m)?;
    let n = m.rows;
    if n == 0 {
        return Ok((det, Matrix::zeros(0, 0)));
    }
    if n == 1 {
        return Ok((det, Matrix::identity(1)));
    }
    let mut cof = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let d = determinant(&m.minor(i, j))?;
            cof[(i, j)] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    Ok((det, cof))
}

pub fn inverse(m: &Matrix) -> Result<Option<Matrix>> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "inverse of {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    let (r, pivots) = aug.rref();
    if pivots.len() < n || pivots[n - 1] >= n {
        return Ok(None);
    }
    Ok(Some(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone())))
}

/// Canonical basis of `{v : m v = 0}`.
pub fn nullspace(m: &Matrix) -> Subspace {
    let (r, pivots) = m.rref();
    let n = m.cols;
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -&r[(row, free)];
        }
        basis.push(v);
    }
    Subspace::span(n, basis)
}

/// A particular solution of `m x = rhs`, or `None` when the system is inconsistent.
pub fn solve_linear(m: &Matrix, rhs: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if rhs.len() != m.rows {
        return Err(Error::Shape(format!(
            "right-hand side of length {} for {} equations",
            rhs.len(),
            m.rows
        )));
    }
    let n = m.cols;
    let aug = Matrix::from_fn(m.rows, n + 1, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else {
            rhs[i].clone()
        }
    });
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r[(row, n)].clone();
    }
    Ok(Some(x))
}

/// A linear subspace of `Q^ambient`, stored as a reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given generators (zero and dependent generators are fine).
    pub fn span<I, V>(ambient: usize, generators: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[Rational]>,
    {
        let mut b = SpanBuilder::new(ambient);
        for g in generators {
            b.insert(g.as_ref());
        }
        b.finish()
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        Subspace::span(ambient, indices.iter().map(|&i| unit_vector(ambient, i)))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[Rational]> + '_ {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient, "vector length vs ambient dimension");
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.dim());
        for (row, &pc) in self.pivots.iter().enumerate() {
            let c = rest[pc].clone();
            if !c.is_zero() {
                for (x, b) in rest.iter_mut().zip(self.basis.row(row)) {
                    if !b.is_zero() {
                        *x -= &c * b;
                    }
                }
            }
            coords.push(c);
        }
        rest.iter().all(Rational::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::span(
            self.ambient,
            self.basis_vectors().chain(other.basis_vectors()),
        )
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        // x = Σ c_i u_i lies in `other` iff it is killed by every annihilator of `other`.
        let ann = nullspace(&other.basis);
        let eqs = Matrix::from_fn(ann.dim(), self.dim(), |k, i| {
            dot(ann.basis.row(k), self.basis.row(i))
        });
        let coeffs = nullspace(&eqs);
        Subspace::span(
            self.ambient,
            coeffs
                .basis_vectors()
                .map(|c| combine(self.basis_vectors(), c, self.ambient)),
        )
    }
}

/// Incremental reduced row-echelon span.
#[derive(Clone)]
pub(crate) struct SpanBuilder {
    ambient: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl SpanBuilder {
    pub(crate) fn new(ambient: usize) -> Self {
        SpanBuilder {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub(crate) fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(
            v.len(),
            self.ambient,
            "generator length vs ambient dimension"
        );
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if w[pc].is_zero() {
                continue;
            }
            let c = w[pc].clone();
            for (x, b) in w.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x -= &c * b;
                }
            }
        }
        let Some(pc) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[pc].recip().expect("nonzero");
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[pc].is_zero() {
                continue;
            }
            let c = row[pc].clone();
            for (x, b) in row.iter_mut().zip(&w) {
                if !b.is_zero() {
                    *x -= &c * b;
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, w);
        true
    }

    pub(crate) fn snapshot(&self) -> Subspace {
        self.clone().finish()
    }

    pub(crate) fn finish(self) -> Subspace {
        let n = self.rows.len();
        let data = self.rows.into_iter().flatten().collect();
        Subspace {
            ambient: self.ambient,
            basis: Matrix::from_vec(n, self.ambient, data).expect("consistent rows"),
            pivots: self.pivots,
        }
    }
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        acc.add_product(x, y);
    }
    acc
}

/// `Σ coeffs[i] * vectors[i]`.
pub fn combine<'a>(
    vectors: impl IntoIterator<Item = &'a [Rational]>,
    coeffs: &[Rational],
    len: usize,
) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (v, c) in vectors.into_iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            o.add_product(c, x);
        }
    }
    out
}
