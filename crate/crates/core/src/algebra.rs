//! Structure-constant algebras and the identity checkers that run on them.

use std::ops::{Add, Neg, Sub};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{nullspace, Matrix, SpanBuilder, Subspace};
use crate::random;
use crate::rational::Rational;

pub(crate) type Sparse = Vec<(usize, Rational)>;

/// An algebra given by structure constants `e_i e_j = Σ_k γ_ij^k e_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    labels: Vec<String>,
    gamma: Vec<Rational>,
    table: Vec<Sparse>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Algebra(dim {}, basis {:?})", self.dim, self.labels)
    }
}

/// Coordinates of an algebra element in the fixed basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Element {
    coords: Vec<Rational>,
}

impl Element {
    pub fn new(coords: Vec<Rational>) -> Self {
        Element { coords }
    }

    pub fn zero(n: usize) -> Self {
        Element::new(vec![Rational::zero(); n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        Element::new(crate::linalg::unit_vector(n, i))
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Element {
        Element::new(self.coords.iter().map(|x| x * c).collect())
    }
}

impl From<Vec<Rational>> for Element {
    fn from(coords: Vec<Rational>) -> Self {
        Element::new(coords)
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim());
        Element::new(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim());
        Element::new(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::new(self.coords.iter().map(|a| -a).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnticommutativityReport {
    pub ok: bool,
    pub witness: Option<(usize, usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MalcevWitness {
    /// A basis 4-tuple on which the multilinear identity fails.
    Tuple {
        indices: [usize; 4],
        residual: Vec<Rational>,
    },
    /// A sampled triple on which `J(x,y,xz) = J(x,y,z)x` fails.
    Sampled {
        sample: usize,
        x: Vec<Rational>,
        y: Vec<Rational>,
        z: Vec<Rational>,
        residual: Vec<Rational>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MalcevReport {
    pub ok: bool,
    pub tuples_checked: usize,
    pub samples_checked: usize,
    pub multilinear_ok: bool,
    pub sampled_ok: bool,
    pub witness: Option<MalcevWitness>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JacobianFailure {
    pub indices: [usize; 3],
    pub jacobian: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LieReport {
    pub ok: bool,
    /// Every failing basis triple (only `i < j < k` when the algebra is
    /// anticommutative, since the jacobian is then alternating).
    pub failures: Vec<JacobianFailure>,
}

impl LieReport {
    pub fn witness(&self) -> Option<&JacobianFailure> {
        self.failures.first()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DerivedSeries {
    pub terms: Vec<Subspace>,
    pub solvable: bool,
}

impl Algebra {
    /// `gamma` is flat with `gamma[(i*n + j)*n + k] = γ_ij^k`.
    pub fn new(labels: Vec<String>, gamma: Vec<Rational>) -> Result<Self> {
        let n = labels.len();
        if gamma.len() != n * n * n {
            return Err(Error::Shape(format!(
                "{} structure constants for dimension {n}",
                gamma.len()
            )));
        }
        let table = (0..n * n)
            .map(|ij| {
                (0..n)
                    .filter(|&k| !gamma[ij * n + k].is_zero())
                    .map(|k| (k, gamma[ij * n + k].clone()))
                    .collect()
            })
            .collect();
        Ok(Algebra {
            dim: n,
            labels,
            gamma,
            table,
        })
    }

    /// Builds an algebra from `(i, j, k, c)` entries meaning `γ_ij^k += c`.
    pub fn from_products(
        labels: Vec<String>,
        products: &[(usize, usize, usize, Rational)],
    ) -> Result<Self> {
        let n = labels.len();
        let mut gamma = vec![Rational::zero(); n * n * n];
        for (i, j, k, c) in products {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::Shape(format!(
                    "product index ({i},{j},{k}) out of range for dimension {n}"
                )));
            }
            gamma[(i * n + j) * n + k] += c;
        }
        Algebra::new(labels, gamma)
    }

    /// The algebra with all products zero.
    pub fn abelian(n: usize) -> Self {
        Algebra::new(random::default_labels(n), vec![Rational::zero(); n * n * n]).expect("shape")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gamma(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.gamma[(i * self.dim + j) * self.dim + k]
    }

    pub fn gamma_flat(&self) -> &[Rational] {
        &self.gamma
    }

    /// Nonzero coordinates of `e_i e_j`.
    pub fn product_terms(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i * self.dim + j]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::basis(self.dim, i)
    }

    fn check_len(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::Shape(format!(
                "element of length {} in an algebra of dimension {}",
                v.len(),
                self.dim
            )));
        }
        Ok(())
    }

    pub fn multiply(&self, u: &Element, v: &Element) -> Result<Element> {
        self.check_len(u.coords())?;
        self.check_len(v.coords())?;
        Ok(Element::new(self.mul_coords(u.coords(), v.coords())))
    }

    pub(crate) fn mul_coords(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let terms = self.product_terms(i, j);
                if terms.is_empty() {
                    continue;
                }
                let c = ui * vj;
                for (k, g) in terms {
                    out[*k].add_product(&c, g);
                }
            }
        }
        out
    }

    /// `J(x,y,z) = (xy)z + (yz)x + (zx)y`.
    pub fn jacobian(&self, x: &Element, y: &Element, z: &Element) -> Result<Element> {
        for e in [x, y, z] {
            self.check_len(e.coords())?;
        }
        Ok(Element::new(self.jacobian_coords(
            x.coords(),
            y.coords(),
            z.coords(),
        )))
    }

    fn jacobian_coords(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vec<Rational> {
        let a = self.mul_coords(&self.mul_coords(x, y), z);
        let b = self.mul_coords(&self.mul_coords(y, z), x);
        let c = self.mul_coords(&self.mul_coords(z, x), y);
        a.iter()
            .zip(&b)
            .zip(&c)
            .map(|((a, b), c)| a + b + c)
            .collect()
    }

    /// Matrix of `v ↦ e_i v`.
    pub fn left_mult_matrix(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |k, j| self.gamma(i, j, k).clone())
    }

    /// Matrix of `v ↦ v e_i`.
    pub fn right_mult_matrix(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |k, j| self.gamma(j, i, k).clone())
    }

    pub fn is_anticommutative(&self) -> bool {
        self.check_anticommutative().ok
    }

    pub fn check_anticommutative(&self) -> AnticommutativityReport {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.gamma(i, j, k) != &-self.gamma(j, i, k) {
                        return AnticommutativityReport {
                            ok: false,
                            witness: Some((i, j, k)),
                        };
                    }
                }
            }
        }
        AnticommutativityReport {
            ok: true,
            witness: None,
        }
    }

    /// Residual of `((xy)z)t + ((yz)t)x + ((zt)x)y + ((tx)y)z − (xz)(yt)` on basis elements.
    pub fn malcev_tuple_residual(&self, x: usize, y: usize, z: usize, t: usize) -> Vec<Rational> {
        let triple = TripleTable::new(self);
        triple.residual(self, [x, y, z, t])
    }

    /// Exhaustive multilinear check over all basis 4-tuples plus `samples`
    /// seeded random checks of `J(x,y,xz) = J(x,y,z)x`.
    pub fn check_malcev(&self, samples: usize, seed: u64) -> Result<MalcevReport> {
        if let Some((i, j, k)) = self.check_anticommutative().witness {
            return Err(Error::NotAnticommutative { i, j, k });
        }
        let n = self.dim;
        let triple = TripleTable::new(self);
        let tuple_witness = (0..n).into_par_iter().find_map_first(|x| {
            for y in 0..n {
                for z in 0..n {
                    for t in 0..n {
                        let res = triple.residual(self, [x, y, z, t]);
                        if res.iter().any(|c| !c.is_zero()) {
                            return Some(MalcevWitness::Tuple {
                                indices: [x, y, z, t],
                                residual: res,
                            });
                        }
                    }
                }
            }
            None
        });

        let mut rng = random::rng(seed);
        let draws: Vec<[Vec<Rational>; 3]> = (0..samples)
            .map(|_| {
                [
                    random::small_vector(&mut rng, n),
                    random::small_vector(&mut rng, n),
                    random::small_vector(&mut rng, n),
                ]
            })
            .collect();
        let sample_witness = draws
            .par_iter()
            .enumerate()
            .find_map_first(|(s, [x, y, z])| {
                let res = self.mal1_residual(x, y, z);
                res.iter()
                    .any(|c| !c.is_zero())
                    .then(|| MalcevWitness::Sampled {
                        sample: s,
                        x: x.clone(),
                        y: y.clone(),
                        z: z.clone(),
                        residual: res,
                    })
            });

        let multilinear_ok = tuple_witness.is_none();
        let sampled_ok = sample_witness.is_none();
        Ok(MalcevReport {
            ok: multilinear_ok && sampled_ok,
            tuples_checked: n.pow(4),
            samples_checked: samples,
            multilinear_ok,
            sampled_ok,
            witness: tuple_witness.or(sample_witness),
        })
    }

    /// `J(x,y,xz) − J(x,y,z)x`.
    pub fn mal1_residual(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vec<Rational> {
        let xz = self.mul_coords(x, z);
        let lhs = self.jacobian_coords(x, y, &xz);
        let rhs = self.mul_coords(&self.jacobian_coords(x, y, z), x);
        lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect()
    }

    pub fn check_lie(&self) -> LieReport {
        let n = self.dim;
        let alternating = self.is_anticommutative();
        let mut failures = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if alternating && !(i < j && j < k) {
                        continue;
                    }
                    let jac = self.jacobian_coords(
                        &crate::linalg::unit_vector(n, i),
                        &crate::linalg::unit_vector(n, j),
                        &crate::linalg::unit_vector(n, k),
                    );
                    if jac.iter().any(|c| !c.is_zero()) {
                        failures.push(JacobianFailure {
                            indices: [i, j, k],
                            jacobian: jac,
                        });
                    }
                }
            }
        }
        LieReport {
            ok: failures.is_empty(),
            failures,
        }
    }

    pub fn subalgebra_closure(&self, generators: &Subspace) -> Subspace {
        let n = self.dim;
        let mut builder = SpanBuilder::new(n);
        for g in generators.basis_vectors() {
            builder.insert(g);
        }
        loop {
            let current = builder.snapshot();
            let before = builder.dim();
            for u in current.basis_vectors() {
                for v in current.basis_vectors() {
                    builder.insert(&self.mul_coords(u, v));
                }
            }
            if builder.dim() == before {
                return builder.finish();
            }
        }
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.basis_vectors().all(|u| {
            s.basis_vectors()
                .all(|v| s.contains(&self.mul_coords(u, v)))
        })
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        let n = self.dim;
        s.basis_vectors().all(|v| {
            (0..n).all(|i| {
                let e = crate::linalg::unit_vector(n, i);
                s.contains(&self.mul_coords(&e, v)) && s.contains(&self.mul_coords(v, &e))
            })
        })
    }

    /// `s ⊇ s² ⊇ (s²)² ⊇ …` until the chain stabilizes.
    pub fn derived_series(&self, s: &Subspace) -> Result<DerivedSeries> {
        if !self.is_subalgebra(s) {
            return Err(Error::Precondition(
                "derived series requires a subalgebra".into(),
            ));
        }
        let mut terms = vec![s.clone()];
        loop {
            let last = terms.last().expect("nonempty");
            if last.is_zero() {
                break;
            }
            let next = self.product_space(last, last);
            if &next == last {
                break;
            }
            terms.push(next);
        }
        let solvable = terms.last().is_some_and(Subspace::is_zero);
        Ok(DerivedSeries { terms, solvable })
    }

    /// `span{uv : u ∈ a, v ∈ b}`.
    pub fn product_space(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut builder = SpanBuilder::new(self.dim);
        for u in a.basis_vectors() {
            for v in b.basis_vectors() {
                builder.insert(&self.mul_coords(u, v));
            }
        }
        builder.finish()
    }

    /// Dimension of the associative algebra generated by the left
    /// multiplication operators. It equals `dim²` exactly when the operators
    /// act irreducibly, which certifies simplicity.
    pub fn multiplication_envelope_dim(&self) -> usize {
        let n = self.dim;
        let gens: Vec<Matrix> = (0..n).map(|i| self.left_mult_matrix(i)).collect();
        let mut span = SpanBuilder::new(n * n);
        let mut queue = std::collections::VecDeque::new();
        for g in &gens {
            if span.insert(g.entries()) {
                queue.push_back(g.clone());
            }
        }
        while let Some(op) = queue.pop_front() {
            if span.dim() == n * n {
                break;
            }
            for g in &gens {
                let p = op.mul(g).expect("square operators");
                if span.insert(p.entries()) {
                    queue.push_back(p);
                }
            }
        }
        span.dim()
    }

    /// `{l ∈ A⊗A : [l, e_a] = 0 for all a}` with `[x⊗y, a] = xa⊗y + x⊗ya`,
    /// as a subspace of coefficient vectors indexed `p*n + q`.
    pub fn tensor_centralizer(&self) -> Subspace {
        let n = self.dim;
        let mut m = Matrix::zeros(n * n * n, n * n);
        for a in 0..n {
            for p in 0..n {
                for (i, g) in self.product_terms(p, a) {
                    // l_pq e_p e_a ⊗ e_q contributes to (i, q)
                    for qq in 0..n {
                        m[((a * n + i) * n + qq, p * n + qq)] += g;
                    }
                }
            }
            for qq in 0..n {
                for (j, g) in self.product_terms(qq, a) {
                    for p in 0..n {
                        m[((a * n + p) * n + j, p * n + qq)] += g;
                    }
                }
            }
        }
        nullspace(&m)
    }

    /// The algebra induced on a subspace closed under multiplication, in the
    /// subspace's echelon basis.
    pub fn restrict(&self, s: &Subspace, labels: Vec<String>) -> Result<Algebra> {
        if labels.len() != s.dim() {
            return Err(Error::Shape(format!(
                "{} labels for a {}-dimensional subspace",
                labels.len(),
                s.dim()
            )));
        }
        let basis: Vec<&[Rational]> = s.basis_vectors().collect();
        let m = basis.len();
        let mut gamma = Vec::with_capacity(m * m * m);
        for (i, u) in basis.iter().enumerate() {
            for (j, v) in basis.iter().enumerate() {
                let p = self.mul_coords(u, v);
                let Some(c) = s.coordinates(&p) else {
                    return Err(Error::NotClosed(format!(
                        "{} * {} = {} leaves the subspace",
                        labels[i],
                        labels[j],
                        self.describe(&p)
                    )));
                };
                gamma.extend(c);
            }
        }
        Algebra::new(labels, gamma)
    }

    /// Renders coordinates using the basis labels, e.g. `-6h + 2z'`.
    pub fn describe(&self, v: &[Rational]) -> String {
        describe_with(&self.labels, v)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::Shape("label count".into()));
        }
        self.labels = labels;
        Ok(self)
    }
}

pub fn describe_with(labels: &[String], v: &[Rational]) -> String {
    let mut out = String::new();
    for (c, l) in v.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = if c.is_negative() {
            (true, -c)
        } else {
            (false, c.clone())
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        out.push_str(l);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Precomputed `(e_a e_b) e_c` for the multilinear Malcev sweep.
struct TripleTable {
    n: usize,
    t: Vec<Sparse>,
}

impl TripleTable {
    fn new(alg: &Algebra) -> Self {
        let n = alg.dim;
        let t = (0..n * n * n)
            .into_par_iter()
            .map(|abc| {
                let (ab, c) = (abc / n, abc % n);
                let mut acc = vec![Rational::zero(); n];
                for (m, g) in &alg.table[ab] {
                    for (k, h) in alg.product_terms(*m, c) {
                        acc[*k].add_product(g, h);
                    }
                }
                to_sparse(acc)
            })
            .collect();
        TripleTable { n, t }
    }

    fn get(&self, a: usize, b: usize, c: usize) -> &Sparse {
        &self.t[(a * self.n + b) * self.n + c]
    }

    fn residual(&self, alg: &Algebra, [x, y, z, t]: [usize; 4]) -> Vec<Rational> {
        let mut acc = vec![Rational::zero(); self.n];
        for (a, b, c, d) in [(x, y, z, t), (y, z, t, x), (z, t, x, y), (t, x, y, z)] {
            for (m, g) in self.get(a, b, c) {
                for (k, h) in alg.product_terms(*m, d) {
                    acc[k.to_owned()].add_product(g, h);
                }
            }
        }
        for (a, g) in alg.product_terms(x, z) {
            for (b, h) in alg.product_terms(y, t) {
                let gh = g * h;
                for (k, c) in alg.product_terms(*a, *b) {
                    acc[*k] -= &gh * c;
                }
            }
        }
        acc
    }
}

pub(crate) fn to_sparse(v: Vec<Rational>) -> Sparse {
    v.into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn span_hx() -> Algebra {
        // hx = 2x, xh = -2x
        Algebra::from_products(
            vec!["h".into(), "x".into()],
            &[(0, 1, 1, q(2, 1)), (1, 0, 1, q(-2, 1))],
        )
        .unwrap()
    }

    #[test]
    fn two_dim_solvable_algebra() {
        let a = span_hx();
        assert!(a.check_anticommutative().ok);
        assert!(a.check_lie().ok);
        assert_eq!(a.multiplication_envelope_dim(), 2);
        let series = a.derived_series(&Subspace::full(2)).unwrap();
        assert_eq!(series.terms.len(), 3);
        assert_eq!(series.terms[1], Subspace::coordinate(2, &[1]));
        assert!(series.solvable);
    }

    #[test]
    fn anticommutativity_witness() {
        let a = Algebra::from_products(vec!["a".into()], &[(0, 0, 0, q(1, 1))]).unwrap();
        assert_eq!(a.check_anticommutative().witness, Some((0, 0, 0)));
        assert!(matches!(
            a.check_malcev(1, 0),
            Err(Error::NotAnticommutative { .. })
        ));
    }

    #[test]
    fn abelian_everything_trivial() {
        let a = Algebra::abelian(3);
        assert!(a.check_malcev(5, 1).unwrap().ok);
        assert_eq!(a.multiplication_envelope_dim(), 0);
        assert_eq!(a.tensor_centralizer().dim(), 9);
        let s = a.derived_series(&Subspace::full(3)).unwrap();
        assert_eq!(s.terms, vec![Subspace::full(3), Subspace::zero(3)]);
    }

    #[test]
    fn zero_dimensional_algebra_is_vacuous() {
        let a = Algebra::abelian(0);
        assert!(a.check_anticommutative().ok);
        assert!(a.check_malcev(3, 0).unwrap().ok);
        assert!(a.check_lie().ok);
    }

    #[test]
    fn centralizer_of_span_hx_by_brute_force() {
        // Oracle: solve [l,h] = [l,x] = 0 by hand. With l = Σ l_pq e_p⊗e_q,
        // [l,h] scales e_p⊗e_q by (w_p + w_q) where w_h = 0, w_x = -2,
        // forcing l_hx = l_xh = l_xx = 0; then [l,x] = l_hh (hx⊗h + h⊗hx)
        // forces l_hh = 0 as well.
        let a = span_hx();
        assert!(a.tensor_centralizer().is_zero());
    }

    #[test]
    fn describe_formats_signs() {
        let labels: Vec<String> = ["h", "x"].iter().map(|s| s.to_string()).collect();
        assert_eq!(describe_with(&labels, &[q(-6, 1), q(1, 2)]), "-6h + 1/2x");
        assert_eq!(describe_with(&labels, &[q(0, 1), q(-1, 1)]), "-x");
        assert_eq!(describe_with(&labels, &[q(0, 1), q(0, 1)]), "0");
    }

    #[test]
    fn restriction_reports_escaping_product() {
        let a = span_hx();
        let err = a
            .restrict(&Subspace::coordinate(2, &[0]), vec!["h".into()])
            .unwrap();
        assert!(err.product_terms(0, 0).is_empty());
        let b = Algebra::from_products(
            vec!["a".into(), "b".into(), "c".into()],
            &[(0, 1, 2, q(1, 1)), (1, 0, 2, q(-1, 1))],
        )
        .unwrap();
        let e = b.restrict(
            &Subspace::coordinate(3, &[0, 1]),
            vec!["a".into(), "b".into()],
        );
        assert!(matches!(e, Err(Error::NotClosed(msg)) if msg.contains("a * b = c")));
    }
}
