//! Dense elements of `A⊗A` and `A⊗A⊗A`, the flips, and slot-wise actions.

use std::fmt;

use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Rational;

/// `Σ coeff[i][j] e_i⊗e_j`; the coefficient matrix is the `Λ` of the tensor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tensor2 {
    dim: usize,
    coeff: Vec<Rational>,
}

/// `Σ coeff[i][j][k] e_i⊗e_j⊗e_k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tensor3 {
    dim: usize,
    coeff: Vec<Rational>,
}

/// A factor acting on one tensor slot: the formal unit leaves the slot alone.
#[derive(Clone, Debug, PartialEq)]
pub enum SlotFactor {
    Unit,
    Element(Element),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry3 {
    pub index: [usize; 3],
    pub value: Rational,
}

impl Tensor2 {
    pub fn zeros(dim: usize) -> Self {
        Tensor2 {
            dim,
            coeff: vec![Rational::zero(); dim * dim],
        }
    }

    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Shape(format!(
                "{}x{} coefficient matrix",
                m.rows(),
                m.cols()
            )));
        }
        Ok(Tensor2 {
            dim: m.rows(),
            coeff: m.entries().to_vec(),
        })
    }

    pub fn from_flat(dim: usize, coeff: Vec<Rational>) -> Result<Self> {
        if coeff.len() != dim * dim {
            return Err(Error::Shape(format!(
                "{} coefficients for a {dim}-dim square",
                coeff.len()
            )));
        }
        Ok(Tensor2 { dim, coeff })
    }

    /// `(i, j, c)` entries mean `c e_i⊗e_j`; repeated indices accumulate.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, Rational)]) -> Result<Self> {
        let mut t = Tensor2::zeros(dim);
        for (i, j, c) in entries {
            if *i >= dim || *j >= dim {
                return Err(Error::Shape(format!(
                    "tensor index ({i},{j}) out of range for dimension {dim}"
                )));
            }
            t.coeff[i * dim + j] += c;
        }
        Ok(t)
    }

    /// `u⊗v`.
    pub fn decomposable(u: &[Rational], v: &[Rational]) -> Self {
        assert_eq!(u.len(), v.len());
        let n = u.len();
        let mut t = Tensor2::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.coeff[i * n + j] = &u[i] * &v[j];
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.coeff[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: Rational) {
        self.coeff[i * self.dim + j] = c;
    }

    pub fn add_at(&mut self, i: usize, j: usize, c: &Rational) {
        self.coeff[i * self.dim + j] += c;
    }

    pub fn flat(&self) -> &[Rational] {
        &self.coeff
    }

    pub fn matrix(&self) -> Matrix {
        Matrix::from_vec(self.dim, self.dim, self.coeff.clone()).expect("square")
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.iter().all(Rational::is_zero)
    }

    pub fn nonzero_entries(&self) -> Vec<(usize, usize, Rational)> {
        let n = self.dim;
        (0..n * n)
            .filter(|&ij| !self.coeff[ij].is_zero())
            .map(|ij| (ij / n, ij % n, self.coeff[ij].clone()))
            .collect()
    }

    pub fn add(&self, other: &Tensor2) -> Tensor2 {
        assert_eq!(self.dim, other.dim);
        Tensor2 {
            dim: self.dim,
            coeff: self
                .coeff
                .iter()
                .zip(&other.coeff)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Tensor2) -> Tensor2 {
        assert_eq!(self.dim, other.dim);
        Tensor2 {
            dim: self.dim,
            coeff: self
                .coeff
                .iter()
                .zip(&other.coeff)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Tensor2 {
        Tensor2 {
            dim: self.dim,
            coeff: self.coeff.iter().map(|x| x * c).collect(),
        }
    }

    /// `τ(Σ a⊗b) = Σ b⊗a`.
    pub fn tau(&self) -> Tensor2 {
        let n = self.dim;
        let mut out = Tensor2::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.coeff[j * n + i] = self.coeff[i * n + j].clone();
            }
        }
        out
    }

    /// `(½(t + τt), ½(t − τt))`.
    pub fn split_symmetric(&self) -> (Tensor2, Tensor2) {
        let half = Rational::new(1, 2);
        let t = self.tau();
        (self.add(&t).scale(&half), self.sub(&t).scale(&half))
    }

    /// First `(i, j)` with `t_ij != −t_ji`, if any.
    pub fn antisymmetry_witness(&self) -> Option<(usize, usize)> {
        let n = self.dim;
        (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != &-self.get(j, i))
    }

    pub fn require_antisymmetric(&self) -> Result<()> {
        match self.antisymmetry_witness() {
            Some((i, j)) => Err(Error::NotAntisymmetric { i, j }),
            None => Ok(()),
        }
    }
}

impl fmt::Debug for Tensor2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor2(dim {}) {{", self.dim)?;
        for (i, j, c) in self.nonzero_entries() {
            write!(f, " ({i},{j}): {c}")?;
        }
        write!(f, " }}")
    }
}

impl Tensor3 {
    pub fn zeros(dim: usize) -> Self {
        Tensor3 {
            dim,
            coeff: vec![Rational::zero(); dim * dim * dim],
        }
    }

    pub fn from_flat(dim: usize, coeff: Vec<Rational>) -> Result<Self> {
        if coeff.len() != dim * dim * dim {
            return Err(Error::Shape(format!(
                "{} coefficients for a {dim}-dim cube",
                coeff.len()
            )));
        }
        Ok(Tensor3 { dim, coeff })
    }

    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let mut t = Tensor3::zeros(dim);
        for (i, j, k, c) in entries {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::Shape(format!(
                    "tensor index ({i},{j},{k}) out of range for dimension {dim}"
                )));
            }
            t.coeff[(i * dim + j) * dim + k] += c;
        }
        Ok(t)
    }

    /// `u⊗v⊗w`.
    pub fn decomposable(u: &[Rational], v: &[Rational], w: &[Rational]) -> Self {
        let n = u.len();
        assert!(v.len() == n && w.len() == n);
        let mut t = Tensor3::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let uv = &u[i] * &v[j];
                for k in 0..n {
                    t.coeff[(i * n + j) * n + k] = &uv * &w[k];
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.coeff[self.idx(i, j, k)]
    }

    pub fn add_at(&mut self, i: usize, j: usize, k: usize, c: &Rational) {
        let at = self.idx(i, j, k);
        self.coeff[at] += c;
    }

    pub(crate) fn add_product_at(
        &mut self,
        i: usize,
        j: usize,
        k: usize,
        a: &Rational,
        b: &Rational,
    ) {
        let at = self.idx(i, j, k);
        self.coeff[at].add_product(a, b);
    }

    pub fn flat(&self) -> &[Rational] {
        &self.coeff
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.iter().all(Rational::is_zero)
    }

    pub fn nonzero_entries(&self) -> Vec<Entry3> {
        let n = self.dim;
        self.coeff
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(ijk, c)| Entry3 {
                index: [ijk / (n * n), (ijk / n) % n, ijk % n],
                value: c.clone(),
            })
            .collect()
    }

    pub fn add(&self, other: &Tensor3) -> Tensor3 {
        assert_eq!(self.dim, other.dim);
        Tensor3 {
            dim: self.dim,
            coeff: self
                .coeff
                .iter()
                .zip(&other.coeff)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Tensor3) -> Tensor3 {
        assert_eq!(self.dim, other.dim);
        Tensor3 {
            dim: self.dim,
            coeff: self
                .coeff
                .iter()
                .zip(&other.coeff)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Tensor3 {
        Tensor3 {
            dim: self.dim,
            coeff: self.coeff.iter().map(|x| x * c).collect(),
        }
    }

    fn permuted(&self, f: impl Fn(usize, usize, usize) -> (usize, usize, usize)) -> Tensor3 {
        let n = self.dim;
        let mut out = Tensor3::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a, b, c) = f(i, j, k);
                    let at = out.idx(a, b, c);
                    out.coeff[at] = self.get(i, j, k).clone();
                }
            }
        }
        out
    }

    /// `ξ(a⊗b⊗c) = b⊗c⊗a`.
    pub fn xi(&self) -> Tensor3 {
        self.permuted(|i, j, k| (j, k, i))
    }

    /// `a⊗b⊗c ↦ a⊗c⊗b`.
    pub fn swap23(&self) -> Tensor3 {
        self.permuted(|i, j, k| (i, k, j))
    }

    /// `a⊗b⊗c ↦ b⊗a⊗c`.
    pub fn swap12(&self) -> Tensor3 {
        self.permuted(|i, j, k| (j, i, k))
    }

    /// Applies a linear map (given as a matrix acting on coordinate columns)
    /// to one slot.
    pub fn map_slot(&self, slot: usize, m: &Matrix) -> Tensor3 {
        assert!(slot < 3 && m.rows() == self.dim && m.cols() == self.dim);
        let n = self.dim;
        let mut out = Tensor3::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = self.get(i, j, k);
                    if c.is_zero() {
                        continue;
                    }
                    let src = [i, j, k][slot];
                    for dst in 0..n {
                        let f = &m[(dst, src)];
                        if f.is_zero() {
                            continue;
                        }
                        let mut at = [i, j, k];
                        at[slot] = dst;
                        out.add_product_at(at[0], at[1], at[2], c, f);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for Tensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor3(dim {}) {{", self.dim)?;
        for e in self.nonzero_entries() {
            write!(f, " {:?}: {}", e.index, e.value)?;
        }
        write!(f, " }}")
    }
}

/// Matrix of `v ↦ v a`.
pub fn right_mult_by(alg: &Algebra, a: &[Rational]) -> Matrix {
    let n = alg.dim();
    let mut m = Matrix::zeros(n, n);
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for j in 0..n {
            for (k, g) in alg.product_terms(j, i) {
                m[(*k, j)].add_product(ai, g);
            }
        }
    }
    m
}

/// Matrix of `v ↦ a v`.
pub fn left_mult_by(alg: &Algebra, a: &[Rational]) -> Matrix {
    let n = alg.dim();
    let mut m = Matrix::zeros(n, n);
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for j in 0..n {
            for (k, g) in alg.product_terms(i, j) {
                m[(*k, j)].add_product(ai, g);
            }
        }
    }
    m
}

fn check_dims(alg: &Algebra, tdim: usize, a: &[Rational]) -> Result<()> {
    if tdim != alg.dim() || a.len() != alg.dim() {
        return Err(Error::Shape(format!(
            "tensor dim {tdim} and element length {} in a {}-dim algebra",
            a.len(),
            alg.dim()
        )));
    }
    Ok(())
}

/// `[t, a]` with `[x⊗y, a] = xa⊗y + x⊗ya`.
pub fn derivation_action2(alg: &Algebra, t: &Tensor2, a: &Element) -> Result<Tensor2> {
    check_dims(alg, t.dim(), a.coords())?;
    let ra = right_mult_by(alg, a.coords());
    let m = t.matrix();
    // Λ' = R Λ + Λ Rᵀ
    let out = ra.mul(&m)?.add(&m.mul(&ra.transpose())?)?;
    Tensor2::from_matrix(&out)
}

/// `[t, a]` with `[x⊗y⊗z, a] = xa⊗y⊗z + x⊗ya⊗z + x⊗y⊗za`.
pub fn derivation_action3(alg: &Algebra, t: &Tensor3, a: &Element) -> Result<Tensor3> {
    check_dims(alg, t.dim(), a.coords())?;
    let ra = right_mult_by(alg, a.coords());
    Ok(t.map_slot(0, &ra)
        .add(&t.map_slot(1, &ra))
        .add(&t.map_slot(2, &ra)))
}

/// `x⊗y⊗z ↦ (x∘u1)⊗(y∘u2)⊗(z∘u3)`, where `∘` is right multiplication and
/// the formal unit acts as the identity.
pub fn slot_action(alg: &Algebra, t: &Tensor3, factors: [&SlotFactor; 3]) -> Result<Tensor3> {
    let mut out = t.clone();
    for (slot, f) in factors.iter().enumerate() {
        if let SlotFactor::Element(a) = f {
            check_dims(alg, t.dim(), a.coords())?;
            out = out.map_slot(slot, &right_mult_by(alg, a.coords()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn tau_transposes() {
        let t = Tensor2::from_entries(3, &[(0, 2, q(5, 1)), (1, 1, q(-1, 2))]).unwrap();
        let s = t.tau();
        assert_eq!(s.get(2, 0), &q(5, 1));
        assert_eq!(s.get(0, 2), &q(0, 1));
        assert_eq!(s.tau(), t);
    }

    #[test]
    fn xi_rotates() {
        let t = Tensor3::from_entries(3, &[(0, 1, 2, q(1, 1))]).unwrap();
        assert_eq!(t.xi().get(1, 2, 0), &q(1, 1));
        assert_eq!(t.xi().xi().get(2, 0, 1), &q(1, 1));
        assert_eq!(t.xi().xi().xi(), t);
    }

    #[test]
    fn split_pure_parts() {
        let anti = Tensor2::from_entries(2, &[(0, 1, q(1, 1)), (1, 0, q(-1, 1))]).unwrap();
        let (s, n) = anti.split_symmetric();
        assert!(s.is_zero());
        assert_eq!(n, anti);
        let sym = Tensor2::from_entries(2, &[(0, 1, q(1, 1)), (1, 0, q(1, 1))]).unwrap();
        let (s, n) = sym.split_symmetric();
        assert_eq!(s, sym);
        assert!(n.is_zero());
    }

    #[test]
    fn antisymmetry_witness_reports_pair() {
        let t = Tensor2::from_entries(3, &[(1, 2, q(1, 1))]).unwrap();
        assert_eq!(t.antisymmetry_witness(), Some((1, 2)));
        assert!(matches!(
            t.require_antisymmetric(),
            Err(Error::NotAntisymmetric { i: 1, j: 2 })
        ));
    }

    #[test]
    fn map_slot_with_identity() {
        let t = Tensor3::from_entries(2, &[(0, 1, 1, q(3, 1)), (1, 0, 0, q(-1, 1))]).unwrap();
        for slot in 0..3 {
            assert_eq!(t.map_slot(slot, &Matrix::identity(2)), t);
        }
    }
}
