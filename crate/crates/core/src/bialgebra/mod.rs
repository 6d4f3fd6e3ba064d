//! Comultiplications, dual algebras, Drinfeld doubles and bialgebra checks.

mod structure;

pub use structure::*;

use serde::Serialize;

use crate::algebra::{Algebra, AnticommutativityReport, Element, MalcevReport};
use crate::error::{Error, Result};
use crate::linalg::{determinant, Matrix, Subspace};
use crate::rational::Rational;
use crate::tensor::{derivation_action2, left_mult_by, right_mult_by, Tensor2, Tensor3};

/// `Δ(e_a) = Σ_jk d[a][j][k] e_j⊗e_k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Comultiplication {
    dim: usize,
    d: Vec<Rational>,
}

impl std::fmt::Debug for Comultiplication {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Comultiplication(dim {}) {{", self.dim)?;
        for (a, j, k, c) in self.nonzero_entries() {
            write!(f, " ({a};{j},{k}): {c}")?;
        }
        write!(f, " }}")
    }
}

impl Comultiplication {
    pub fn zeros(dim: usize) -> Self {
        Comultiplication {
            dim,
            d: vec![Rational::zero(); dim * dim * dim],
        }
    }

    pub fn from_flat(dim: usize, d: Vec<Rational>) -> Result<Self> {
        if d.len() != dim * dim * dim {
            return Err(Error::Shape(format!(
                "{} coefficients for a {dim}-dim comultiplication",
                d.len()
            )));
        }
        Ok(Comultiplication { dim, d })
    }

    /// `(a, j, k, c)` entries mean `Δ(e_a) += c e_j⊗e_k`.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let mut delta = Comultiplication::zeros(dim);
        for (a, j, k, c) in entries {
            if *a >= dim || *j >= dim || *k >= dim {
                return Err(Error::Shape(format!(
                    "comultiplication index ({a};{j},{k}) out of range for dimension {dim}"
                )));
            }
            delta.d[(a * dim + j) * dim + k] += c;
        }
        Ok(delta)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, j: usize, k: usize) -> &Rational {
        &self.d[(a * self.dim + j) * self.dim + k]
    }

    pub fn add_at(&mut self, a: usize, j: usize, k: usize, c: &Rational) {
        let at = (a * self.dim + j) * self.dim + k;
        self.d[at] += c;
    }

    pub fn flat(&self) -> &[Rational] {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.d.iter().all(Rational::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Comultiplication {
            dim: self.dim,
            d: self.d.iter().map(|x| x * c).collect(),
        }
    }

    pub fn nonzero_entries(&self) -> Vec<(usize, usize, usize, Rational)> {
        let n = self.dim;
        self.d
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i / (n * n), (i / n) % n, i % n, c.clone()))
            .collect()
    }

    /// `Δ(v)` for an arbitrary coordinate vector.
    pub fn apply(&self, v: &[Rational]) -> Tensor2 {
        let n = self.dim;
        let mut out = vec![Rational::zero(); n * n];
        for (a, va) in v.iter().enumerate() {
            if va.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(&self.d[a * n * n..(a + 1) * n * n]) {
                o.add_product(va, c);
            }
        }
        Tensor2::from_flat(n, out).expect("square")
    }

    /// `(Δ⊗1)(t)`.
    pub fn apply_left(&self, t: &Tensor2) -> Tensor3 {
        let n = self.dim;
        let mut out = Tensor3::zeros(n);
        for (j, k, c) in t.nonzero_entries() {
            for p in 0..n {
                for qq in 0..n {
                    out.add_product_at(p, qq, k, &c, self.get(j, p, qq));
                }
            }
        }
        out
    }

    /// `(1⊗Δ)(t)`.
    pub fn apply_right(&self, t: &Tensor2) -> Tensor3 {
        let n = self.dim;
        let mut out = Tensor3::zeros(n);
        for (j, k, c) in t.nonzero_entries() {
            for p in 0..n {
                for qq in 0..n {
                    out.add_product_at(j, p, qq, &c, self.get(k, p, qq));
                }
            }
        }
        out
    }
}

fn require_dim(alg: &Algebra, delta: &Comultiplication) -> Result<usize> {
    if alg.dim() != delta.dim() {
        return Err(Error::Shape(format!(
            "{}-dim algebra with {}-dim comultiplication",
            alg.dim(),
            delta.dim()
        )));
    }
    Ok(alg.dim())
}

/// The algebra `A*` with `(e_i* e_j*)(e_a) = d[a][i][j]`.
pub fn dual_algebra(delta: &Comultiplication) -> Algebra {
    let labels = crate::random::default_labels(delta.dim)
        .into_iter()
        .map(|l| l + "*")
        .collect();
    dual_algebra_labeled(delta, labels)
}

fn dual_algebra_labeled(delta: &Comultiplication, labels: Vec<String>) -> Algebra {
    let n = delta.dim;
    let mut gamma = vec![Rational::zero(); n * n * n];
    for (a, i, j, c) in delta.nonzero_entries() {
        gamma[(i * n + j) * n + a] = c;
    }
    Algebra::new(labels, gamma).expect("shape")
}

/// `Δ_r(a) = [r, a]`.
pub fn coboundary_delta(alg: &Algebra, r: &Tensor2) -> Result<Comultiplication> {
    let n = alg.dim();
    if r.dim() != n {
        return Err(Error::Shape(format!(
            "tensor of dim {} over a {n}-dim algebra",
            r.dim()
        )));
    }
    let mut d = Vec::with_capacity(n * n * n);
    for a in 0..n {
        d.extend_from_slice(derivation_action2(alg, r, &alg.basis_element(a))?.flat());
    }
    Comultiplication::from_flat(n, d)
}

/// The four actions of `A*` and `A` on each other, as coordinate vectors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BimoduleActions {
    /// `f⇀a = Σ a_(1) f(a_(2))`
    pub f_on_a: Vec<Rational>,
    /// `a↼f = Σ f(a_(1)) a_(2)`
    pub a_by_f: Vec<Rational>,
    /// `⟨f↽a, b⟩ = ⟨f, ab⟩`
    pub f_by_a: Vec<Rational>,
    /// `⟨a⇁f, b⟩ = ⟨f, ba⟩`
    pub a_on_f: Vec<Rational>,
}

pub fn bimodule_actions(
    alg: &Algebra,
    delta: &Comultiplication,
    f: &[Rational],
    a: &Element,
) -> Result<BimoduleActions> {
    let n = require_dim(alg, delta)?;
    if f.len() != n || a.dim() != n {
        return Err(Error::Shape("functional or element length".into()));
    }
    let da = delta.apply(a.coords()).matrix();
    let f_on_a = da.mul_vec(f)?;
    let a_by_f = da.transpose().mul_vec(f)?;
    // (f↽a)_m = f(a e_m) = Σ_k f_k (L_a)_km
    let f_by_a = left_mult_by(alg, a.coords()).transpose().mul_vec(f)?;
    let a_on_f = right_mult_by(alg, a.coords()).transpose().mul_vec(f)?;
    Ok(BimoduleActions {
        f_on_a,
        a_by_f,
        f_by_a,
        a_on_f,
    })
}

/// `D(A) = A ⊕ A*`: coordinates `0..n` are primal, `n..2n` dual.
#[derive(Clone, Debug, PartialEq)]
pub struct DrinfeldDouble {
    pub double: Algebra,
    pub n: usize,
    /// Gram matrix of `Q(a+f, b+g) = g(a) + f(b)`.
    pub q: Matrix,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FormReport {
    pub symmetric: bool,
    pub nondegenerate: bool,
    pub associative: bool,
    /// First basis triple with `Q(uv,w) != Q(u,vw)`.
    pub associativity_witness: Option<(usize, usize, usize)>,
}

impl FormReport {
    pub fn ok(&self) -> bool {
        self.symmetric && self.nondegenerate && self.associative
    }
}

impl DrinfeldDouble {
    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn primal_block(&self) -> Subspace {
        Subspace::coordinate(2 * self.n, &(0..self.n).collect::<Vec<_>>())
    }

    pub fn dual_block(&self) -> Subspace {
        Subspace::coordinate(2 * self.n, &(self.n..2 * self.n).collect::<Vec<_>>())
    }

    /// `f ∈ A*` as a vector of the double.
    pub fn embed_dual(&self, f: &[Rational]) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.n];
        v.extend_from_slice(f);
        v
    }

    pub fn embed_primal(&self, a: &[Rational]) -> Vec<Rational> {
        let mut v = a.to_vec();
        v.extend(std::iter::repeat_n(Rational::zero(), self.n));
        v
    }

    pub fn mul(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        self.double.mul_coords(u, v)
    }

    pub fn form(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let n = self.n;
        let mut acc = Rational::zero();
        for i in 0..n {
            acc.add_product(&u[i], &v[n + i]);
            acc.add_product(&u[n + i], &v[i]);
        }
        acc
    }

    /// `{v : Q(v, s) = 0}`.
    pub fn orthogonal(&self, s: &Subspace) -> Subspace {
        let rows = s.basis().mul(&self.q).expect("shape");
        crate::linalg::nullspace(&rows)
    }

    pub fn check_form(&self) -> FormReport {
        let m = self.dim();
        let symmetric = self.q == self.q.transpose();
        let nondegenerate = !determinant(&self.q).expect("square").is_zero();
        let mut witness = None;
        'outer: for i in 0..m {
            for j in 0..m {
                let ij = self.double.product_terms(i, j);
                for k in 0..m {
                    let jk = self.double.product_terms(j, k);
                    let mut lhs = Rational::zero();
                    for (p, c) in ij {
                        lhs.add_product(c, &self.q[(*p, k)]);
                    }
                    let mut rhs = Rational::zero();
                    for (p, c) in jk {
                        rhs.add_product(c, &self.q[(i, *p)]);
                    }
                    if lhs != rhs {
                        witness = Some((i, j, k));
                        break 'outer;
                    }
                }
            }
        }
        FormReport {
            symmetric,
            nondegenerate,
            associative: witness.is_none(),
            associativity_witness: witness,
        }
    }
}

/// `(a+f)(b+g) = (ab + f⇀b + a↼g) + (fg + f↽b + a⇁g)` on `A ⊕ A*`.
pub fn drinfeld_double(alg: &Algebra, delta: &Comultiplication) -> Result<DrinfeldDouble> {
    let n = require_dim(alg, delta)?;
    let m = 2 * n;
    let mut products: Vec<(usize, usize, usize, Rational)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, g) in alg.product_terms(i, j) {
                // e_i e_j
                products.push((i, j, *k, g.clone()));
                // e_i ⇁ e_k*: (e_i⇁e_k*)_j = γ_ji^k ; e_k* ↽ e_i: (e_k*↽e_i)_j = γ_ij^k
                products.push((j, n + k, n + i, g.clone()));
                products.push((n + k, i, n + j, g.clone()));
            }
        }
    }
    for (a, j, k, c) in delta.nonzero_entries() {
        // e_j* e_k* = Σ_a d[a][j][k] e_a*
        products.push((n + j, n + k, n + a, c.clone()));
        // e_a ↼ e_j* has coordinate d[a][j][k] at e_k
        products.push((a, n + j, k, c.clone()));
        // e_k* ⇀ e_a has coordinate d[a][j][k] at e_j
        products.push((n + k, a, j, c));
    }
    let labels = alg
        .labels()
        .iter()
        .cloned()
        .chain(alg.labels().iter().map(|l| format!("{l}*")))
        .collect();
    let double = Algebra::from_products(labels, &products)?;
    let q = Matrix::from_fn(m, m, |i, j| {
        if (i < n && j == i + n) || (i >= n && j + n == i) {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    Ok(DrinfeldDouble { double, n, q })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BialgebraReport {
    pub is_bialgebra: bool,
    pub anticommutative: AnticommutativityReport,
    /// Absent when the double is not anticommutative.
    pub malcev: Option<MalcevReport>,
}

/// Checks that the Drinfeld double of `(alg, delta)` is a Malcev algebra.
pub fn is_malcev_bialgebra(
    alg: &Algebra,
    delta: &Comultiplication,
    samples: usize,
    seed: u64,
) -> Result<BialgebraReport> {
    require_dim(alg, delta)?;
    let base = alg
        .check_malcev(0, seed)
        .map_err(|e| Error::Precondition(format!("base algebra: {e}")))?;
    if !base.ok {
        return Err(Error::Precondition(
            "base algebra is not a Malcev algebra".into(),
        ));
    }
    let dd = drinfeld_double(alg, delta)?;
    double_malcev_report(&dd, samples, seed)
}

pub fn double_malcev_report(
    dd: &DrinfeldDouble,
    samples: usize,
    seed: u64,
) -> Result<BialgebraReport> {
    let anticommutative = dd.double.check_anticommutative();
    let malcev = if anticommutative.ok {
        Some(dd.double.check_malcev(samples, seed)?)
    } else {
        None
    };
    Ok(BialgebraReport {
        is_bialgebra: malcev.as_ref().is_some_and(|m| m.ok),
        anticommutative,
        malcev,
    })
}

fn require_elements(n: usize, es: &[&Element]) -> Result<()> {
    if es.iter().any(|e| e.dim() != n) {
        return Err(Error::Shape("element length".into()));
    }
    Ok(())
}

/// Left side minus right side of the first compatibility identity
///
/// `Δ((ab)c) + Δ(bc)(a⊗1) + (1⊗b)Δ(ac) = Σ a_(1)⊗a_(2)(bc) + Σ a_(1)b⊗a_(2)c
/// + Σ (a_(1)b)c⊗a_(2) + Σ b_(1)c⊗ab_(2) − Σ b_(1)(ac)⊗b_(2) + Σ b_(1)⊗(ab_(2))c
/// + Σ c_(1)⊗a(bc_(2)) − Σ (c_(1)a)b⊗c_(2)`.
///
/// For antisymmetric `Δ` this vanishes on all triples exactly when the
/// `M`-component of the Malcev identity on the double vanishes on tuples
/// with three arguments from `A` and one from `A*`. The commonly printed
/// form with the opposite tensor slots is [`condition1_printed_residual`].
pub fn vershinin_condition1_residual(
    alg: &Algebra,
    delta: &Comultiplication,
    a: &Element,
    b: &Element,
    c: &Element,
) -> Result<Tensor2> {
    condition1(alg, delta, a, b, c, false)
}

/// The first identity with the slot placement
/// `Δ((ab)c) + Δ(bc)(a⊗1) + (b⊗1)Δ(ac) = Σ a_(1)(bc)⊗a_(2) + Σ a_(1)c⊗a_(2)b + …`.
/// It is not satisfied by coboundary Lie bialgebras such as `sl₂` with
/// `r = h∧e`, so it is kept only for comparison.
pub fn condition1_printed_residual(
    alg: &Algebra,
    delta: &Comultiplication,
    a: &Element,
    b: &Element,
    c: &Element,
) -> Result<Tensor2> {
    condition1(alg, delta, a, b, c, true)
}

fn condition1(
    alg: &Algebra,
    delta: &Comultiplication,
    a: &Element,
    b: &Element,
    c: &Element,
    printed: bool,
) -> Result<Tensor2> {
    let n = require_dim(alg, delta)?;
    require_elements(n, &[a, b, c])?;
    let (a, b, c) = (a.coords(), b.coords(), c.coords());
    let mul = |u: &[Rational], v: &[Rational]| alg.mul_coords(u, v);
    let r = |x: &[Rational]| right_mult_by(alg, x);
    let l = |x: &[Rational]| left_mult_by(alg, x);
    // slot maps on coefficient matrices: slot 1 ↦ M Λ, slot 2 ↦ Λ Mᵀ
    let s1 = |m: &Matrix, t: &Matrix| m.mul(t).expect("square");
    let s2 = |m: &Matrix, t: &Matrix| t.mul(&m.transpose()).expect("square");
    let d = |x: &[Rational]| delta.apply(x).matrix();
    let minus = Rational::integer(-1);

    let bc = mul(b, c);
    let ac = mul(a, c);
    let ab_c = mul(&mul(a, b), c);
    let (da, db, dc) = (d(a), d(b), d(c));
    let (lhs, rhs) = if printed {
        let lhs = d(&ab_c)
            .add(&s1(&r(a), &d(&bc)))?
            .add(&s1(&l(b), &d(&ac)))?;
        let rhs = vec![
            s1(&r(&bc), &da),
            s2(&r(b), &s1(&r(c), &da)),
            s2(&r(c), &s2(&r(b), &da)),
            s2(&r(c), &s1(&l(a), &db)),
            s2(&r(&ac), &db).scale(&minus),
            s1(&r(c), &s1(&l(a), &db)),
            s1(&l(a), &s1(&l(b), &dc)),
            s2(&r(b), &s2(&r(a), &dc)).scale(&minus),
        ];
        (lhs, rhs)
    } else {
        let lhs = d(&ab_c)
            .add(&s1(&r(a), &d(&bc)))?
            .add(&s2(&l(b), &d(&ac)))?;
        let rhs = vec![
            s2(&r(&bc), &da),
            s2(&r(c), &s1(&r(b), &da)),
            s1(&r(c), &s1(&r(b), &da)),
            s2(&l(a), &s1(&r(c), &db)),
            s1(&r(&ac), &db).scale(&minus),
            s2(&r(c), &s2(&l(a), &db)),
            s2(&l(a), &s2(&l(b), &dc)),
            s1(&r(b), &s1(&r(a), &dc)).scale(&minus),
        ];
        (lhs, rhs)
    };
    let rhs = rhs
        .into_iter()
        .try_fold(Matrix::zeros(n, n), |acc, m| acc.add(&m))?;
    Tensor2::from_matrix(&lhs.sub(&rhs)?)
}

/// Left side minus right side of the second compatibility identity
/// `(1⊗Δ)Δ(ab) = (1⊗1⊗a)((1⊗Δ)Δ(b)) + …` (all ten terms).
pub fn vershinin_condition2_residual(
    alg: &Algebra,
    delta: &Comultiplication,
    a: &Element,
    b: &Element,
) -> Result<Tensor3> {
    let n = require_dim(alg, delta)?;
    require_elements(n, &[a, b])?;
    let (a, b) = (a.coords(), b.coords());
    let r = |x: &[Rational]| right_mult_by(alg, x);
    let l = |x: &[Rational]| left_mult_by(alg, x);
    let minus = Rational::integer(-1);

    let da = delta.apply(a);
    let db = delta.apply(b);
    let ddb_right = delta.apply_right(&db); // (1⊗Δ)Δ(b)
    let ddb_left = delta.apply_left(&db); // (Δ⊗1)Δ(b)
    let dda_left = delta.apply_left(&da);
    let dda_right = delta.apply_right(&da);

    let lhs = delta.apply_right(&delta.apply(&alg.mul_coords(a, b)));

    let t1 = ddb_right.map_slot(2, &l(a));
    let a_db = Tensor2::from_matrix(&l(a).mul(&db.matrix())?)?;
    let t2 = delta.apply_left(&a_db);
    let t3 = ddb_left.map_slot(2, &l(a)).swap23().scale(&minus);
    let t4 = ddb_left.map_slot(0, &r(a)).swap23();
    let t5 = dda_left.map_slot(0, &r(b));
    let t6 = dda_left.map_slot(2, &r(b));
    let da_b = Tensor2::from_matrix(&r(b).mul(&da.matrix())?)?;
    let t7 = delta.apply_left(&da_b).swap23().scale(&minus);
    let t8 = dda_right.map_slot(1, &l(b)).scale(&minus);
    // b_(1)⊗(b_(2)a_(2))⊗a_(1) and a_(1)⊗b_(1)⊗(a_(2)b_(2))
    let mut t9 = Tensor3::zeros(n);
    let mut t10 = Tensor3::zeros(n);
    for (p, qq, cb) in db.nonzero_entries() {
        for (s, t, ca) in da.nonzero_entries() {
            let c = &cb * &ca;
            for (k, g) in alg.product_terms(qq, t) {
                t9.add_product_at(p, *k, s, &c, g);
            }
            for (k, g) in alg.product_terms(t, qq) {
                t10.add_product_at(s, p, *k, &c, g);
            }
        }
    }
    let rhs = [t1, t2, t3, t4, t5, t6, t7, t8, t9, t10]
        .iter()
        .fold(Tensor3::zeros(n), |acc, t| acc.add(t));
    Ok(lhs.sub(&rhs))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VershininReport {
    pub dual_malcev: bool,
    pub condition1: bool,
    pub condition2: bool,
    /// First basis triple with a nonzero first-identity residual.
    pub condition1_witness: Option<[usize; 3]>,
    /// First basis pair with a nonzero second-identity residual.
    pub condition2_witness: Option<[usize; 2]>,
}

impl VershininReport {
    pub fn holds(&self) -> bool {
        self.dual_malcev && self.condition1 && self.condition2
    }
}

/// Sweeps both compatibility identities over basis triples/pairs and checks
/// the dual algebra.
pub fn vershinin_report(
    alg: &Algebra,
    delta: &Comultiplication,
    samples: usize,
    seed: u64,
) -> Result<VershininReport> {
    use rayon::prelude::*;
    let n = require_dim(alg, delta)?;
    let dual = dual_algebra(delta);
    let dual_malcev = match dual.check_malcev(samples, seed) {
        Ok(r) => r.ok,
        Err(Error::NotAnticommutative { .. }) => false,
        Err(e) => return Err(e),
    };
    let e = |i| alg.basis_element(i);
    let condition1_witness = (0..n * n * n).into_par_iter().find_first(|&t| {
        let (i, j, k) = (t / (n * n), (t / n) % n, t % n);
        !vershinin_condition1_residual(alg, delta, &e(i), &e(j), &e(k))
            .expect("dims checked")
            .is_zero()
    });
    let condition2_witness = (0..n * n).into_par_iter().find_first(|&t| {
        !vershinin_condition2_residual(alg, delta, &e(t / n), &e(t % n))
            .expect("dims checked")
            .is_zero()
    });
    Ok(VershininReport {
        dual_malcev,
        condition1: condition1_witness.is_none(),
        condition2: condition2_witness.is_none(),
        condition1_witness: condition1_witness.map(|t| [t / (n * n), (t / n) % n, t % n]),
        condition2_witness: condition2_witness.map(|t| [t / n, t % n]),
    })
}
