//! The seven-dimensional simple non-Lie Malcev algebra in its standard basis
//! `h, x, x', y, y', z, z'`, its symplectic subalgebras, the one-parameter
//! family of semisimple-double solutions and the end-to-end pipelines.

use serde::Serialize;
use serde_json::json;

use crate::algebra::Algebra;
use crate::bialgebra::{
    coboundary_delta, double_malcev_report, drinfeld_double, dual_to_primal_map, graph_subspace,
    ideal_projection_v, is_malcev_bialgebra, radical_certificate, recover_coboundary_from_radical,
    semisimple_decomposition, vershinin_report,
};
use crate::error::{Error, Result};
use crate::linalg::{determinant, inverse, Matrix, Subspace};
use crate::rational::{q, Rational};
use crate::report::{to_value, PipelineReport};
use crate::tensor::Tensor2;
use crate::yang_baxter::{cybe_residual, gamma_matrices, lemma1_eq2_residual};

pub const H: usize = 0;
pub const X: usize = 1;
pub const XP: usize = 2;
pub const Y: usize = 3;
pub const YP: usize = 4;
pub const Z: usize = 5;
pub const ZP: usize = 6;

pub const LABELS: [&str; 7] = ["h", "x", "x'", "y", "y'", "z", "z'"];

/// Basis indices of the four-dimensional subalgebra `M(4) = span{h, x, y', z}`.
pub const M4: [usize; 4] = [H, X, YP, Z];

fn labels() -> Vec<String> {
    LABELS.iter().map(|s| s.to_string()).collect()
}

/// Products `e_i e_j` with `i` before `j` in the table; the rest follow by
/// anticommutativity.
const TABLE: [(usize, usize, usize, i64); 12] = [
    (H, X, X, 2),
    (H, Y, Y, 2),
    (H, Z, Z, 2),
    (H, XP, XP, -2),
    (H, YP, YP, -2),
    (H, ZP, ZP, -2),
    (X, XP, H, 1),
    (Y, YP, H, 1),
    (Z, ZP, H, 1),
    (X, Y, ZP, 2),
    (Y, Z, XP, 2),
    (Z, X, YP, 2),
];

const TABLE_PRIMED: [(usize, usize, usize, i64); 3] =
    [(XP, YP, Z, -2), (YP, ZP, X, -2), (ZP, XP, Y, -2)];

pub fn build_m7() -> Algebra {
    let mut products = Vec::new();
    for (i, j, k, c) in TABLE.iter().chain(&TABLE_PRIMED) {
        products.push((*i, *j, *k, Rational::integer(*c)));
        products.push((*j, *i, *k, Rational::integer(-c)));
    }
    Algebra::from_products(labels(), &products).expect("static table")
}

/// The span of the selected basis vectors together with the algebra
/// structure it inherits; fails if some product leaves the span.
pub fn build_subalgebra(indices: &[usize]) -> Result<(Subspace, Algebra)> {
    let mut idx = indices.to_vec();
    idx.sort_unstable();
    idx.dedup();
    if idx.iter().any(|&i| i >= 7) {
        return Err(Error::Shape("basis index out of range".into()));
    }
    let s = Subspace::coordinate(7, &idx);
    let sub_labels = idx.iter().map(|&i| LABELS[i].to_string()).collect();
    let alg = build_m7().restrict(&s, sub_labels)?;
    Ok((s, alg))
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct Theorem5Params {
    pub a12: Rational,
    pub a15: Rational,
    pub a16: Rational,
    pub a25: Rational,
    pub a56: Rational,
}

impl Theorem5Params {
    pub fn new(a12: Rational, a15: Rational, a16: Rational, a25: Rational, a56: Rational) -> Self {
        Theorem5Params {
            a12,
            a15,
            a16,
            a25,
            a56,
        }
    }

    pub fn random(rng: &mut impl rand::Rng) -> Self {
        let mut r = || crate::random::small_rational(rng);
        Theorem5Params::new(r(), r(), r(), r(), r())
    }
}

fn wedge(t: &mut Tensor2, i: usize, j: usize, c: &Rational) {
    t.add_at(i, j, c);
    t.add_at(j, i, &-c);
}

/// The antisymmetric part `r₀`; the `x∧z` coefficient is `−2·a15`.
pub fn theorem5_r0(p: &Theorem5Params) -> Tensor2 {
    let mut t = Tensor2::zeros(7);
    wedge(&mut t, H, X, &p.a12);
    wedge(&mut t, H, YP, &p.a15);
    wedge(&mut t, H, Z, &p.a16);
    wedge(&mut t, X, YP, &p.a25);
    wedge(&mut t, X, Z, &(&p.a15 * q(-2, 1)));
    wedge(&mut t, YP, Z, &p.a56);
    t
}

/// `r = r₀ + ¼h⊗h + x⊗x' + y'⊗y + z⊗z'`.
pub fn theorem5_r(p: &Theorem5Params) -> Tensor2 {
    let mut t = theorem5_r0(p);
    t.add_at(H, H, &q(1, 4));
    t.add_at(X, XP, &q(1, 1));
    t.add_at(YP, Y, &q(1, 1));
    t.add_at(Z, ZP, &q(1, 1));
    t
}

/// `½h⊗h + x⊗x' + x'⊗x + y⊗y' + y'⊗y + z⊗z' + z'⊗z`, the invariant symmetric tensor.
pub fn invariant_tensor() -> Tensor2 {
    let mut t = Tensor2::zeros(7);
    t.set(H, H, q(1, 2));
    for (a, b) in [(X, XP), (Y, YP), (Z, ZP)] {
        t.set(a, b, q(1, 1));
        t.set(b, a, q(1, 1));
    }
    t
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymplecticReport {
    pub skew: bool,
    pub nondegenerate: bool,
    pub cyclic: bool,
    /// First subalgebra basis triple violating `ω(ab,c) + ω(bc,a) + ω(ca,b) = 0`.
    pub cyclic_witness: Option<[usize; 3]>,
    /// On `M(4)` only: whether `ω(y',h) = 2ω(x,z)`.
    pub scalar_condition: Option<bool>,
    /// On `M(4)` only: whether the cyclic identity and the scalar condition agree.
    pub equivalence_holds: Option<bool>,
    pub symplectic: bool,
}

fn bilinear(gram: &Matrix, u: &[Rational], v: &[Rational]) -> Rational {
    let gv = gram.mul_vec(v).expect("shape");
    crate::linalg::dot(u, &gv)
}

/// Checks skew-symmetry, nondegeneracy and the cyclic identity for a form
/// on the subalgebra spanned by `indices` (Gram matrix in sorted index order).
pub fn symplectic_check(indices: &[usize], gram: &Matrix) -> Result<SymplecticReport> {
    let (_, sub) = build_subalgebra(indices)?;
    let m = sub.dim();
    if gram.rows() != m || gram.cols() != m {
        return Err(Error::Shape(format!("Gram matrix must be {m}x{m}")));
    }
    let skew = gram.transpose() == gram.scale(&q(-1, 1));
    let nondegenerate = !determinant(gram)?.is_zero();
    let e = |i| sub.basis_element(i).into_coords();
    let mut cyclic_witness = None;
    'outer: for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let (ea, eb, ec) = (e(a), e(b), e(c));
                let s = bilinear(gram, &sub.mul_coords(&ea, &eb), &ec)
                    + bilinear(gram, &sub.mul_coords(&eb, &ec), &ea)
                    + bilinear(gram, &sub.mul_coords(&ec, &ea), &eb);
                if !s.is_zero() {
                    cyclic_witness = Some([a, b, c]);
                    break 'outer;
                }
            }
        }
    }
    let cyclic = cyclic_witness.is_none();
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let (scalar_condition, equivalence_holds) = if sorted == M4 {
        // local order h, x, y', z
        let cond = gram[(2, 0)] == &gram[(1, 3)] * q(2, 1);
        (Some(cond), Some(cond == cyclic))
    } else {
        (None, None)
    };
    Ok(SymplecticReport {
        skew,
        nondegenerate,
        cyclic,
        cyclic_witness,
        scalar_condition,
        equivalence_holds,
        symplectic: skew && nondegenerate && cyclic,
    })
}

/// `r = Σ (gram⁻¹)_ij b_i⊗b_j`, verified to be antisymmetric and to solve
/// the classical Yang–Baxter equation before it is returned.
pub fn r_from_symplectic(m7: &Algebra, indices: &[usize], gram: &Matrix) -> Result<Tensor2> {
    let (s, _) = build_subalgebra(indices)?;
    let inv =
        inverse(gram)?.ok_or_else(|| Error::Construction("Gram matrix is singular".into()))?;
    if inv.rows() != s.dim() {
        return Err(Error::Shape("Gram matrix size vs subalgebra".into()));
    }
    let basis: Vec<usize> = s.pivots().to_vec();
    let mut r = Tensor2::zeros(m7.dim());
    for (i, &bi) in basis.iter().enumerate() {
        for (j, &bj) in basis.iter().enumerate() {
            r.set(bi, bj, inv[(i, j)].clone());
        }
    }
    if let Some((i, j)) = r.antisymmetry_witness() {
        return Err(Error::Construction(format!(
            "r is not antisymmetric at ({}, {})",
            LABELS[i], LABELS[j]
        )));
    }
    let c = cybe_residual(m7, &r)?;
    if let Some(e) = c.nonzero_entries().first() {
        return Err(Error::Construction(format!(
            "C(r) has nonzero coefficient {} at {}⊗{}⊗{}",
            e.value, LABELS[e.index[0]], LABELS[e.index[1]], LABELS[e.index[2]]
        )));
    }
    Ok(r)
}

/// Triangular pipeline starting from a symplectic subalgebra.
pub fn pipeline_triangular(
    indices: &[usize],
    gram: &Matrix,
    samples: usize,
    seed: u64,
) -> PipelineReport {
    let mut report = PipelineReport::new();
    let check = match symplectic_check(indices, gram) {
        Ok(c) => c,
        Err(e) => {
            report.push("symplectic_check", false, Some(json!(e.to_string())));
            return report;
        }
    };
    if !report.push("symplectic_check", check.symplectic, Some(to_value(&check))) {
        return report;
    }
    let m7 = build_m7();
    let r = match r_from_symplectic(&m7, indices, gram) {
        Ok(r) => r,
        Err(e) => {
            report.push("r_from_symplectic", false, Some(json!(e.to_string())));
            return report;
        }
    };
    report.push("r_from_symplectic", true, Some(tensor2_json(&r)));
    triangular_stages(&m7, &r, samples, seed, &mut report);
    report
}

/// Triangular pipeline for a given `r` (antisymmetry is checked first).
pub fn pipeline_triangular_r(
    alg: &Algebra,
    r: &Tensor2,
    samples: usize,
    seed: u64,
) -> PipelineReport {
    let mut report = PipelineReport::new();
    triangular_stages(alg, r, samples, seed, &mut report);
    report
}

fn triangular_stages(
    alg: &Algebra,
    r: &Tensor2,
    samples: usize,
    seed: u64,
    report: &mut PipelineReport,
) {
    let n = alg.dim();
    if r.dim() != n {
        report.push(
            "dimensions",
            false,
            Some(json!("tensor and algebra dimensions differ")),
        );
        return;
    }
    let anti = r.antisymmetry_witness();
    if !report.push("antisymmetry", anti.is_none(), anti.map(|w| json!(w))) {
        return;
    }
    let c = cybe_residual(alg, r).expect("dims checked");
    let c_ok = c.is_zero();
    if !report.push(
        "cybe",
        c_ok,
        (!c_ok).then(|| to_value(&c.nonzero_entries())),
    ) {
        return;
    }
    let delta = coboundary_delta(alg, r).expect("dims checked");
    match is_malcev_bialgebra(alg, &delta, samples, seed) {
        Ok(b) => {
            if !report.push("malcev_bialgebra", b.is_bialgebra, Some(to_value(&b))) {
                return;
            }
        }
        Err(e) => {
            report.push("malcev_bialgebra", false, Some(json!(e.to_string())));
            return;
        }
    }
    let (phi, hom) = dual_to_primal_map(alg, &delta, &r.tau()).expect("dims checked");
    report.push("phi_homomorphism", hom.ok, Some(to_value(&hom)));
    let dd = drinfeld_double(alg, &delta).expect("dims checked");
    let s = graph_subspace(&dd, &phi, -1).expect("square φ");
    let cert = radical_certificate(&dd, &s);
    report.push("radical_certificate", cert.ok(), Some(to_value(&cert)));
    let complement = dd.primal_block().sum(&s).dim() == 2 * n;
    report.push("primal_plus_radical", complement, None);
    let recovered = recover_coboundary_from_radical(alg, &dd, &s);
    let ok = recovered.as_ref().is_ok_and(|rec| rec.delta == delta);
    report.push(
        "coboundary_recovered",
        ok,
        recovered.err().map(|e| json!(e.to_string())),
    );
}

/// Semisimple pipeline for the parametrized family.
pub fn pipeline_semisimple(p: &Theorem5Params, samples: usize, seed: u64) -> PipelineReport {
    let mut report = PipelineReport::new();
    let m7 = build_m7();
    let r0 = theorem5_r0(p);
    let c0 = cybe_residual(&m7, &r0).expect("dim 7");
    let ok = c0.is_zero();
    report.push(
        "cybe_r0",
        ok,
        (!ok).then(|| to_value(&c0.nonzero_entries())),
    );
    semisimple_stages(&m7, &theorem5_r(p), samples, seed, &mut report);
    report
}

pub fn pipeline_semisimple_r(
    alg: &Algebra,
    r: &Tensor2,
    samples: usize,
    seed: u64,
) -> PipelineReport {
    let mut report = PipelineReport::new();
    semisimple_stages(alg, r, samples, seed, &mut report);
    report
}

fn semisimple_stages(
    alg: &Algebra,
    r: &Tensor2,
    samples: usize,
    seed: u64,
    report: &mut PipelineReport,
) {
    let n = alg.dim();
    if r.dim() != n {
        report.push(
            "dimensions",
            false,
            Some(json!("tensor and algebra dimensions differ")),
        );
        return;
    }
    let c = cybe_residual(alg, r).expect("dims checked");
    let c_ok = c.is_zero();
    if !report.push(
        "cybe",
        c_ok,
        (!c_ok).then(|| to_value(&c.nonzero_entries())),
    ) {
        return;
    }
    let delta = coboundary_delta(alg, r)
        .expect("dims checked")
        .scale(&q(-1, 1));
    let dd = drinfeld_double(alg, &delta).expect("dims checked");
    let form = dd.check_form();
    report.push("form_q", form.ok(), Some(to_value(&form)));
    let verdict = match double_malcev_report(&dd, samples, seed) {
        Ok(b) => b,
        Err(e) => {
            report.push("malcev_bialgebra", false, Some(json!(e.to_string())));
            return;
        }
    };
    if !report.push(
        "malcev_bialgebra",
        verdict.is_bialgebra,
        Some(to_value(&verdict)),
    ) {
        return;
    }
    match vershinin_report(alg, &delta, samples, seed) {
        Ok(v) => {
            report.push(
                "compatibility_conditions",
                v.holds() == verdict.is_bialgebra,
                Some(to_value(&v)),
            );
        }
        Err(e) => {
            report.push(
                "compatibility_conditions",
                false,
                Some(json!(e.to_string())),
            );
        }
    }
    let dec = match semisimple_decomposition(alg, r) {
        Ok(d) => d,
        Err(e) => {
            report.push("decomposition", false, Some(json!(e.to_string())));
            return;
        }
    };
    if !report.push(
        "decomposition",
        dec.report.ok(),
        Some(to_value(&dec.report)),
    ) {
        return;
    }
    match ideal_projection_v(&dec.double, &dec.m2) {
        Ok((v, pr)) => {
            let basis: Vec<String> = v.basis_vectors().map(|b| alg.describe(b)).collect();
            report.push(
                "projection_v",
                pr.ok() && pr.dim == 4,
                Some(json!({ "report": to_value(&pr), "basis": basis })),
            );
        }
        Err(e) => {
            report.push("projection_v", false, Some(json!(e.to_string())));
        }
    }
    let eq2 = lemma1_eq2_residual(&r.matrix(), &gamma_matrices(alg)).expect("square");
    let ok = eq2.is_zero();
    report.push(
        "matrix_form_eq2",
        ok,
        (!ok).then(|| to_value(&eq2.nonzero())),
    );
}

pub fn tensor2_json(t: &Tensor2) -> serde_json::Value {
    let entries: Vec<_> = t
        .nonzero_entries()
        .into_iter()
        .map(|(i, j, c)| json!([i, j, c.to_string()]))
        .collect();
    json!({ "dim": t.dim(), "entries": entries })
}
