//! Ideals of the double: graphs of dual-to-primal maps, radical
//! certificates, two-ideal decompositions and primal projections.

use serde::Serialize;

use super::{coboundary_delta, drinfeld_double, Comultiplication, DrinfeldDouble};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::rational::Rational;
use crate::tensor::Tensor2;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomomorphismReport {
    pub ok: bool,
    /// First dual basis pair `(i, j)` with `φ(e_i* e_j*) != φ(e_i*) φ(e_j*)`.
    pub witness: Option<(usize, usize)>,
    pub rank: usize,
}

/// The matrix of `φ_t(f) = Σ f(p_i) q_i` for `t = Σ p_i⊗q_i` (so `Φ = tᵀ`),
/// with a check that it is a homomorphism from the dual algebra of `delta`.
pub fn dual_to_primal_map(
    alg: &Algebra,
    delta: &Comultiplication,
    t: &Tensor2,
) -> Result<(Matrix, HomomorphismReport)> {
    let n = alg.dim();
    if t.dim() != n || delta.dim() != n {
        return Err(Error::Shape(
            "tensor, comultiplication and algebra dimensions differ".into(),
        ));
    }
    let phi = t.matrix().transpose();
    let col = |j: usize| phi.column(j);
    let mut witness = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let mut lhs = vec![Rational::zero(); n];
            for a in 0..n {
                let c = delta.get(a, i, j);
                if c.is_zero() {
                    continue;
                }
                for (k, x) in lhs.iter_mut().enumerate() {
                    x.add_product(c, &phi[(k, a)]);
                }
            }
            if lhs != alg.mul_coords(&col(i), &col(j)) {
                witness = Some((i, j));
                break 'outer;
            }
        }
    }
    let rank = phi.rank();
    Ok((
        phi,
        HomomorphismReport {
            ok: witness.is_none(),
            witness,
            rank,
        },
    ))
}

/// `{f + sign·φ(f) : f ∈ A*}` inside the double.
pub fn graph_subspace(dd: &DrinfeldDouble, phi: &Matrix, sign: i64) -> Result<Subspace> {
    let n = dd.n;
    if phi.rows() != n || phi.cols() != n {
        return Err(Error::Shape(format!("φ must be {n}x{n}")));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::Precondition("sign must be +1 or -1".into()));
    }
    let s = Rational::integer(sign);
    let gens = (0..n).map(|j| {
        let mut v: Vec<Rational> = (0..n).map(|k| &phi[(k, j)] * &s).collect();
        v.extend(crate::linalg::unit_vector(n, j));
        v
    });
    Ok(Subspace::span(2 * n, gens))
}

fn products_vanish(dd: &DrinfeldDouble, a: &Subspace, b: &Subspace) -> bool {
    a.basis_vectors().all(|u| {
        b.basis_vectors()
            .all(|v| dd.mul(u, v).iter().all(Rational::is_zero))
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadicalReport {
    pub ideal: bool,
    pub square_zero: bool,
    pub self_orthogonal: bool,
    pub dim_ok: bool,
    pub trivial_primal_intersection: bool,
    pub dim: usize,
}

impl RadicalReport {
    pub fn ok(&self) -> bool {
        self.ideal
            && self.square_zero
            && self.self_orthogonal
            && self.dim_ok
            && self.trivial_primal_intersection
    }
}

/// Checks the shape expected of a nonzero radical: an ideal with `S² = 0`,
/// `S = S^⊥` under `Q`, `dim S = n` and `S ∩ A = 0`.
pub fn radical_certificate(dd: &DrinfeldDouble, s: &Subspace) -> RadicalReport {
    RadicalReport {
        ideal: dd.double.is_ideal(s),
        square_zero: products_vanish(dd, s, s),
        self_orthogonal: &dd.orthogonal(s) == s,
        dim_ok: s.dim() == dd.n,
        trivial_primal_intersection: s.intersection(&dd.primal_block()).is_zero(),
        dim: s.dim(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub m1_ideal: bool,
    pub m2_ideal: bool,
    pub trivial_intersection: bool,
    pub product_zero: bool,
    pub dims: (usize, usize),
    pub dims_ok: bool,
    /// Multiplication-envelope dimensions of the two ideals (absent when the
    /// subspace is not closed under multiplication).
    pub envelopes: (Option<usize>, Option<usize>),
    pub envelopes_full: bool,
    pub q_orthogonal: bool,
}

impl DecompositionReport {
    pub fn ok(&self) -> bool {
        self.m1_ideal
            && self.m2_ideal
            && self.trivial_intersection
            && self.product_zero
            && self.dims_ok
            && self.envelopes_full
            && self.q_orthogonal
    }
}

#[derive(Clone, Debug)]
pub struct SemisimpleDecomposition {
    pub double: DrinfeldDouble,
    pub delta: Comultiplication,
    pub m1: Subspace,
    pub m2: Subspace,
    pub report: DecompositionReport,
}

fn envelope_of(dd: &DrinfeldDouble, s: &Subspace) -> Option<usize> {
    let labels = (0..s.dim()).map(|i| format!("m{i}")).collect();
    dd.double
        .restrict(s, labels)
        .ok()
        .map(|a| a.multiplication_envelope_dim())
}

/// With `Δ = −Δ_r`, splits the double into the graphs `M₁` of `φ_r` and
/// `M₂` of `φ_{−τ(r)}` (both with sign −) and checks that they form a
/// direct sum of simple ideals.
pub fn semisimple_decomposition(alg: &Algebra, r: &Tensor2) -> Result<SemisimpleDecomposition> {
    let n = alg.dim();
    let delta = coboundary_delta(alg, r)?.scale(&Rational::integer(-1));
    let dd = drinfeld_double(alg, &delta)?;
    let (phi1, _) = dual_to_primal_map(alg, &delta, r)?;
    let (phi2, _) = dual_to_primal_map(alg, &delta, &r.tau().scale(&Rational::integer(-1)))?;
    let m1 = graph_subspace(&dd, &phi1, -1)?;
    let m2 = graph_subspace(&dd, &phi2, -1)?;
    let envelopes = (envelope_of(&dd, &m1), envelope_of(&dd, &m2));
    let q_orthogonal = m1
        .basis_vectors()
        .all(|u| m2.basis_vectors().all(|v| dd.form(u, v).is_zero()));
    let report = DecompositionReport {
        m1_ideal: dd.double.is_ideal(&m1),
        m2_ideal: dd.double.is_ideal(&m2),
        trivial_intersection: m1.intersection(&m2).is_zero(),
        product_zero: products_vanish(&dd, &m1, &m2) && products_vanish(&dd, &m2, &m1),
        dims: (m1.dim(), m2.dim()),
        dims_ok: m1.dim() == n && m2.dim() == n,
        envelopes,
        envelopes_full: envelopes == (Some(n * n), Some(n * n)),
        q_orthogonal,
    };
    Ok(SemisimpleDecomposition {
        double: dd,
        delta,
        m1,
        m2,
        report,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProjectionReport {
    pub dim: usize,
    pub subalgebra: bool,
    /// `a↼g` and `g⇀a` stay in `V` for `a ∈ V`.
    pub subcoalgebra: bool,
    pub annihilator_kills_left: bool,
    pub annihilator_kills_right: bool,
}

impl ProjectionReport {
    pub fn ok(&self) -> bool {
        self.subalgebra
            && self.subcoalgebra
            && self.annihilator_kills_left
            && self.annihilator_kills_right
    }
}

fn primal_part(n: usize, v: &[Rational]) -> Vec<Rational> {
    v[..n].to_vec()
}

/// `V = {a ∈ A : a + f ∈ U for some f}` for an ideal `U` of the double.
pub fn ideal_projection_v(
    dd: &DrinfeldDouble,
    u: &Subspace,
) -> Result<(Subspace, ProjectionReport)> {
    let n = dd.n;
    if u.ambient_dim() != 2 * n {
        return Err(Error::Shape("subspace is not inside the double".into()));
    }
    if !dd.double.is_ideal(u) {
        return Err(Error::NotIdeal(
            "projection requires an ideal of the double".into(),
        ));
    }
    let v = Subspace::span(n, u.basis_vectors().map(|w| primal_part(n, w)));
    let v_in_double = Subspace::span(2 * n, v.basis_vectors().map(|a| dd.embed_primal(a)));

    let subalgebra = v_in_double.basis_vectors().all(|a| {
        v_in_double
            .basis_vectors()
            .all(|b| v_in_double.contains(&dd.mul(a, b)))
    });
    let subcoalgebra = v_in_double.basis_vectors().all(|a| {
        (n..2 * n).all(|g| {
            let eg = crate::linalg::unit_vector(2 * n, g);
            let left = primal_part(n, &dd.mul(a, &eg));
            let right = primal_part(n, &dd.mul(&eg, a));
            v.contains(&left) && v.contains(&right)
        })
    });
    // V^⊥ inside A*: functionals vanishing on V
    let ann = crate::linalg::nullspace(v.basis());
    let ann_in_double = Subspace::span(2 * n, ann.basis_vectors().map(|f| dd.embed_dual(f)));
    let zero = |x: Vec<Rational>| x.iter().all(Rational::is_zero);
    let annihilator_kills_left = ann_in_double
        .basis_vectors()
        .all(|f| u.basis_vectors().all(|w| zero(dd.mul(f, w))));
    let annihilator_kills_right = ann_in_double
        .basis_vectors()
        .all(|f| u.basis_vectors().all(|w| zero(dd.mul(w, f))));
    let report = ProjectionReport {
        dim: v.dim(),
        subalgebra,
        subcoalgebra,
        annihilator_kills_left,
        annihilator_kills_right,
    };
    Ok((v, report))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecoveredCoboundary {
    /// `r = Σ a_i⊗b_i` with `φ(f) = Σ f(b_i) a_i`, where `f − φ(f) ∈ R`.
    pub r: Tensor2,
    /// `Δ(a) = Σ (a_i a⊗b_i + b_i⊗a a_i)`.
    pub delta: Comultiplication,
}

/// Reads `φ` off a radical complementary to the primal block and rebuilds
/// the comultiplication from it.
pub fn recover_coboundary_from_radical(
    alg: &Algebra,
    dd: &DrinfeldDouble,
    radical: &Subspace,
) -> Result<RecoveredCoboundary> {
    let n = dd.n;
    if alg.dim() != n || radical.ambient_dim() != 2 * n {
        return Err(Error::Shape("radical and algebra dimensions".into()));
    }
    if radical.dim() != n || !radical.intersection(&dd.primal_block()).is_zero() {
        return Err(Error::Construction(
            "radical is not a complement of the primal block".into(),
        ));
    }
    // dual parts of the radical basis form an invertible n×n matrix
    let basis: Vec<&[Rational]> = radical.basis_vectors().collect();
    let dual_parts = Matrix::from_fn(n, n, |j, i| basis[i][n + j].clone());
    let inv = crate::linalg::inverse(&dual_parts)?
        .ok_or_else(|| Error::Construction("dual projection of the radical is singular".into()))?;
    // column j of inv gives u_j ∈ R with dual part e_j*; φ(e_j*) = −(primal part of u_j)
    let mut phi = Matrix::zeros(n, n);
    for j in 0..n {
        for (i, b) in basis.iter().enumerate() {
            let c = &inv[(i, j)];
            if c.is_zero() {
                continue;
            }
            for k in 0..n {
                phi[(k, j)] -= c * &b[k];
            }
        }
    }
    // φ(e_j*) = Σ_k r_kj e_k
    let r = Tensor2::from_matrix(&phi)?;
    let mut delta = Comultiplication::zeros(n);
    for (p, qq, c) in r.nonzero_entries() {
        for a in 0..n {
            for (k, g) in alg.product_terms(p, a) {
                delta.add_at(a, *k, qq, &(&c * g));
            }
            for (k, g) in alg.product_terms(a, p) {
                delta.add_at(a, qq, *k, &(&c * g));
            }
        }
    }
    Ok(RecoveredCoboundary { r, delta })
}

/// Dimension of `span{L_a : a ∈ s}` closure, exposed for callers that want
/// the simplicity certificate on an arbitrary ideal.
pub fn ideal_envelope_dim(dd: &DrinfeldDouble, s: &Subspace) -> Option<usize> {
    envelope_of(dd, s)
}
