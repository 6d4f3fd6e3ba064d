//! Classical Yang–Baxter residuals and their matrix reformulations.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::linalg::{determinant, Matrix};
use crate::rational::Rational;
use crate::tensor::{slot_action, SlotFactor, Tensor2, Tensor3};

/// The three sums of the non-unital expansion of `C(r)` for `r = Σ α_pq e_p⊗e_q`:
///
/// * `Σ α_pq α_st (e_p e_s)⊗e_q⊗e_t`
/// * `−Σ α_pq α_st e_p⊗(e_s e_q)⊗e_t`
/// * `Σ α_pq α_st e_p⊗e_s⊗(e_q e_t)`
pub fn cybe_terms(alg: &Algebra, r: &Tensor2) -> Result<[Tensor3; 3]> {
    let n = alg.dim();
    if r.dim() != n {
        return Err(Error::Shape(format!(
            "tensor of dim {} over a {n}-dim algebra",
            r.dim()
        )));
    }
    let a = |i: usize, j: usize| r.get(i, j);
    let mut t1 = Tensor3::zeros(n);
    let mut t2 = Tensor3::zeros(n);
    let mut t3 = Tensor3::zeros(n);
    for x in 0..n {
        for y in 0..n {
            let terms = alg.product_terms(x, y);
            if terms.is_empty() {
                continue;
            }
            for u in 0..n {
                for v in 0..n {
                    // t1: p = x, s = y, q = u, t = v
                    let c1 = a(x, u) * a(y, v);
                    // t2: s = x, q = y, p = u, t = v
                    let c2 = a(u, y) * a(x, v);
                    // t3: q = x, t = y, p = u, s = v
                    let c3 = a(u, x) * a(v, y);
                    for (k, g) in terms {
                        t1.add_product_at(*k, u, v, &c1, g);
                        t2.add_product_at(u, *k, v, &-&c2, g);
                        t3.add_product_at(u, v, *k, &c3, g);
                    }
                }
            }
        }
    }
    Ok([t1, t2, t3])
}

/// `C(r)`; zero exactly when `r` solves the classical Yang–Baxter equation.
pub fn cybe_residual(alg: &Algebra, r: &Tensor2) -> Result<Tensor3> {
    let [t1, t2, t3] = cybe_terms(alg, r)?;
    Ok(t1.add(&t2).add(&t3))
}

/// `Σ s_pq s_st e_p⊗e_s⊗(e_q e_t)`, i.e. `Σ a_i⊗a_j⊗b_i b_j` for `s = Σ a_i⊗b_i`.
pub fn contracted_third_slot(alg: &Algebra, s: &Tensor2) -> Result<Tensor3> {
    let [_, _, t3] = cybe_terms(alg, s)?;
    Ok(t3)
}

/// Which reading of the first term of the unimodular residual to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SlotVariant {
    /// `(C(r)(1⊗b⊗1))(1⊗a⊗1)`
    #[default]
    Statement,
    /// `(C(r)(b⊗1⊗1))(a⊗1⊗1)`
    Proof,
}

/// `S(a,b) = (C(1⊗b⊗1))(1⊗a⊗1) − C(ab⊗1⊗1) − (C(1⊗1⊗a))(1⊗1⊗b)
///           − C(b⊗1⊗a) + C(a⊗b⊗1)` with `C = C(r)`, slots acting by right
/// multiplication.
pub fn um_residual(
    alg: &Algebra,
    r: &Tensor2,
    a: &Element,
    b: &Element,
    variant: SlotVariant,
) -> Result<Tensor3> {
    r.require_antisymmetric()?;
    let c = cybe_residual(alg, r)?;
    um_residual_from(alg, &c, a, b, variant)
}

/// [`um_residual`] for an already computed `C(r)`.
pub fn um_residual_from(
    alg: &Algebra,
    c: &Tensor3,
    a: &Element,
    b: &Element,
    variant: SlotVariant,
) -> Result<Tensor3> {
    use SlotFactor::Unit as U;
    let ea = SlotFactor::Element(a.clone());
    let eb = SlotFactor::Element(b.clone());
    let eab = SlotFactor::Element(alg.multiply(a, b)?);

    let first = match variant {
        SlotVariant::Statement => {
            let t = slot_action(alg, c, [&U, &eb, &U])?;
            slot_action(alg, &t, [&U, &ea, &U])?
        }
        SlotVariant::Proof => {
            let t = slot_action(alg, c, [&eb, &U, &U])?;
            slot_action(alg, &t, [&ea, &U, &U])?
        }
    };
    let second = slot_action(alg, c, [&eab, &U, &U])?;
    let third = {
        let t = slot_action(alg, c, [&U, &U, &ea])?;
        slot_action(alg, &t, [&U, &U, &eb])?
    };
    let fourth = slot_action(alg, c, [&eb, &U, &ea])?;
    let fifth = slot_action(alg, c, [&ea, &eb, &U])?;
    Ok(first.sub(&second).sub(&third).sub(&fourth).add(&fifth))
}

/// `Γ_k` with `(Γ_k)_ij = γ_ij^k`.
pub fn gamma_matrices(alg: &Algebra) -> Vec<Matrix> {
    let n = alg.dim();
    (0..n)
        .map(|k| Matrix::from_fn(n, n, |i, j| alg.gamma(i, j, k).clone()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Eq2Residual {
    pub dim: usize,
    /// `values[(k*n + s)*n + m]`.
    pub values: Vec<Rational>,
}

impl Eq2Residual {
    pub fn get(&self, k: usize, s: usize, m: usize) -> &Rational {
        &self.values[(k * self.dim + s) * self.dim + m]
    }

    pub fn nonzero(&self) -> Vec<([usize; 3], Rational)> {
        let n = self.dim;
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| ([i / (n * n), (i / n) % n, i % n], v.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Rational::is_zero)
    }
}

fn check_square_family(lambda: &Matrix, gammas: &[Matrix]) -> Result<usize> {
    let n = lambda.rows();
    if !lambda.is_square()
        || gammas.len() != n
        || gammas.iter().any(|g| g.rows() != n || g.cols() != n)
    {
        return Err(Error::Shape(format!(
            "Λ is {}x{} with {} structure matrices",
            lambda.rows(),
            lambda.cols(),
            gammas.len()
        )));
    }
    Ok(n)
}

/// `(ΛᵀΓ_kΛ)_sm + (ΛΓ_sΛ)_km + (ΛΓ_mΛᵀ)_ks` for every `(k, s, m)`.
pub fn lemma1_eq2_residual(lambda: &Matrix, gammas: &[Matrix]) -> Result<Eq2Residual> {
    let n = check_square_family(lambda, gammas)?;
    let lt = lambda.transpose();
    let per_k: Vec<(Matrix, Matrix, Matrix)> = gammas
        .par_iter()
        .map(|g| {
            let a = lt.mul(g).and_then(|m| m.mul(lambda)).expect("square");
            let b = lambda.mul(g).and_then(|m| m.mul(lambda)).expect("square");
            let c = lambda.mul(g).and_then(|m| m.mul(&lt)).expect("square");
            (a, b, c)
        })
        .collect();
    let mut values = Vec::with_capacity(n * n * n);
    for k in 0..n {
        for s in 0..n {
            for m in 0..n {
                values.push(&per_k[k].0[(s, m)] + &per_k[s].1[(k, m)] + &per_k[m].2[(k, s)]);
            }
        }
    }
    Ok(Eq2Residual { dim: n, values })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NdResidual {
    pub det: Rational,
    /// `Σ_l 2(ΛΓ_l)_kl + (ΛᵀΓ_k)_ll` for each `k`.
    pub brackets: Vec<Rational>,
    /// `det · brackets[k]`.
    pub values: Vec<Rational>,
}

impl NdResidual {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Rational::is_zero)
    }
}

pub fn lemma1_nd_residual(lambda: &Matrix, gammas: &[Matrix]) -> Result<NdResidual> {
    let n = check_square_family(lambda, gammas)?;
    let det = determinant(lambda)?;
    let lg: Vec<Matrix> = gammas
        .iter()
        .map(|g| lambda.mul(g).expect("square"))
        .collect();
    let lt = lambda.transpose();
    let brackets: Vec<Rational> = (0..n)
        .map(|k| {
            let mut acc = Rational::zero();
            for (l, m) in lg.iter().enumerate() {
                acc += &m[(k, l)] * Rational::integer(2);
            }
            let ltg = lt.mul(&gammas[k]).expect("square");
            for l in 0..n {
                acc += &ltg[(l, l)];
            }
            acc
        })
        .collect();
    let values = brackets.iter().map(|b| b * &det).collect();
    Ok(NdResidual {
        det,
        brackets,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn span_hx() -> Algebra {
        Algebra::from_products(
            vec!["h".into(), "x".into()],
            &[(0, 1, 1, q(2, 1)), (1, 0, 1, q(-2, 1))],
        )
        .unwrap()
    }

    /// Term-by-term oracle straight from the triple sum over decomposables.
    fn cybe_oracle(alg: &Algebra, r: &Tensor2) -> Tensor3 {
        let n = alg.dim();
        let e = |i| alg.basis_element(i);
        let mut out = Tensor3::zeros(n);
        for (p, qq, a1) in r.nonzero_entries() {
            for (s, t, a2) in r.nonzero_entries() {
                let c = &a1 * &a2;
                let ps = alg.multiply(&e(p), &e(s)).unwrap();
                let sq = alg.multiply(&e(s), &e(qq)).unwrap();
                let qt = alg.multiply(&e(qq), &e(t)).unwrap();
                out = out
                    .add(
                        &Tensor3::decomposable(ps.coords(), e(qq).coords(), e(t).coords())
                            .scale(&c),
                    )
                    .sub(
                        &Tensor3::decomposable(e(p).coords(), sq.coords(), e(t).coords()).scale(&c),
                    )
                    .add(
                        &Tensor3::decomposable(e(p).coords(), e(s).coords(), qt.coords()).scale(&c),
                    );
            }
        }
        out
    }

    #[test]
    fn h_tensor_x_in_two_dims() {
        let alg = span_hx();
        let r = Tensor2::from_entries(2, &[(0, 1, q(1, 1))]).unwrap();
        let c = cybe_residual(&alg, &r).unwrap();
        assert_eq!(c, Tensor3::from_entries(2, &[(0, 1, 1, q(-2, 1))]).unwrap());
        assert_eq!(c, cybe_oracle(&alg, &r));
    }

    #[test]
    fn random_tensors_match_oracle() {
        let mut rng = crate::random::rng(7);
        let alg = crate::random::anticommutative_algebra(&mut rng, 4, 0.4);
        for _ in 0..10 {
            let r = Tensor2::from_flat(4, crate::random::sparse_vector(&mut rng, 16, 0.5)).unwrap();
            assert_eq!(cybe_residual(&alg, &r).unwrap(), cybe_oracle(&alg, &r));
        }
    }

    #[test]
    fn um_requires_antisymmetry() {
        let alg = span_hx();
        let r = Tensor2::from_entries(2, &[(0, 1, q(1, 1))]).unwrap();
        let a = alg.basis_element(0);
        assert!(matches!(
            um_residual(&alg, &r, &a, &a, SlotVariant::Statement),
            Err(Error::NotAntisymmetric { .. })
        ));
    }

    #[test]
    fn zero_lambda_is_zero_everywhere() {
        let alg = span_hx();
        let g = gamma_matrices(&alg);
        assert!(lemma1_eq2_residual(&Matrix::zeros(2, 2), &g)
            .unwrap()
            .is_zero());
        assert!(lemma1_nd_residual(&Matrix::zeros(2, 2), &g)
            .unwrap()
            .is_zero());
        assert!(lemma1_eq2_residual(&Matrix::zeros(3, 3), &g).is_err());
    }
}
