//! End-to-end acceptance checks for the seven-dimensional Malcev algebra.
//! Each test prints one `criterion N: PASS|FAIL` line; run with
//! `cargo test -p malcev-core --test acceptance -- --nocapture --test-threads=1`
//! to see them in order.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use malcev_core::algebra::{Algebra, MalcevWitness};
use malcev_core::bialgebra::{
    coboundary_delta, is_malcev_bialgebra, vershinin_report, Comultiplication,
};
use malcev_core::linalg::{determinant, Matrix};
use malcev_core::malcev7::{
    build_m7, invariant_tensor, pipeline_semisimple, pipeline_triangular, r_from_symplectic,
    symplectic_check, theorem5_r, Theorem5Params, H, M4, X, XP, Y, YP, Z, ZP,
};
use malcev_core::random::{rng, small_rational, sparse_vector};
use malcev_core::report::PipelineReport;
use malcev_core::yang_baxter::{
    cybe_residual, gamma_matrices, lemma1_eq2_residual, lemma1_nd_residual,
};
use malcev_core::{q, Rational, Tensor2};

const SEED: u64 = 20_240_917;

fn verdict(n: u32, ok: bool, elapsed: Duration, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("criterion {n}: {tag} ({:.2?}) {detail}", elapsed);
}

fn finish(n: u32, ok: bool, start: Instant, limit: Duration, detail: String) {
    let elapsed = start.elapsed();
    let in_time = elapsed < limit;
    verdict(n, ok && in_time, elapsed, &detail);
    assert!(ok, "criterion {n}: {detail}");
    assert!(
        in_time,
        "criterion {n}: took {elapsed:.2?}, limit {limit:.0?}"
    );
}

fn block_gram(m: usize) -> Matrix {
    Matrix::from_fn(m, m, |i, j| {
        if j == i + 1 && i % 2 == 0 {
            q(1, 1)
        } else if i == j + 1 && j % 2 == 0 {
            q(-1, 1)
        } else {
            Rational::zero()
        }
    })
}

#[test]
fn criterion_01_identity_suite() {
    let start = Instant::now();
    let m = build_m7();
    let anti = m.check_anticommutative();
    let mal = m.check_malcev(0, SEED).unwrap();
    let lie = m.check_lie();
    let mut expected = vec![Rational::zero(); 7];
    expected[H] = q(-6, 1);
    let xyz = lie
        .failures
        .iter()
        .find(|f| f.indices == [X, Y, Z])
        .map(|f| f.jacobian.clone());
    let ok = anti.ok
        && mal.ok
        && mal.tuples_checked == 2401
        && !lie.ok
        && xyz.as_deref() == Some(&expected[..]);
    let detail = format!(
        "anticommutative={} malcev={} tuples={} lie={} J(x,y,z)={}",
        anti.ok,
        mal.ok,
        mal.tuples_checked,
        lie.ok,
        xyz.map(|j| m.describe(&j))
            .unwrap_or_else(|| "missing".into())
    );
    finish(1, ok, start, Duration::from_secs(1), detail);
}

/// The printed structure-constant matrices, as `(i, j, c)` with 1-based
/// indices meaning `c·e_ij`; each display lists both `e_ij` and `−e_ji`.
const GAMMA_DISPLAYS: [&[(usize, usize, i64)]; 7] = [
    &[
        (2, 3, 1),
        (3, 2, -1),
        (4, 5, 1),
        (5, 4, -1),
        (6, 7, 1),
        (7, 6, -1),
    ],
    &[(1, 2, 2), (2, 1, -2), (5, 7, -2), (7, 5, 2)],
    &[(1, 3, -2), (3, 1, 2), (4, 6, 2), (6, 4, -2)],
    &[(1, 4, 2), (4, 1, -2), (3, 7, 2), (7, 3, -2)],
    &[(1, 5, 2), (5, 1, -2), (2, 6, 2), (6, 2, -2)],
    &[(1, 6, 2), (6, 1, -2), (3, 5, -2), (5, 3, 2)],
    &[(1, 7, -2), (7, 1, 2), (2, 4, -2), (4, 2, 2)],
];

fn gamma_display(k: usize) -> Matrix {
    let mut g = Matrix::zeros(7, 7);
    for &(i, j, c) in GAMMA_DISPLAYS[k] {
        g[(i - 1, j - 1)] = q(c, 1);
    }
    g
}

#[test]
fn criterion_02_gamma_displays() {
    let start = Instant::now();
    let gammas = gamma_matrices(&build_m7());
    let mismatched: Vec<usize> = (0..7)
        .filter(|&k| gammas[k] != gamma_display(k))
        .map(|k| k + 1)
        .collect();
    let detail = format!("matrices differing from the printed displays (1-based): {mismatched:?}");
    finish(
        2,
        mismatched.is_empty(),
        start,
        Duration::from_secs(1),
        detail,
    );
}

#[test]
fn criterion_03_invariant_tensor() {
    let start = Instant::now();
    let m = build_m7();
    let cent = m.tensor_centralizer();
    let ok = if cent.dim() == 1 {
        let g = cent.basis_vectors().next().unwrap();
        let hh = &g[H * 7 + H];
        let scaled: Vec<Rational> = g.iter().map(|c| c * &q(1, 2) / hh).collect();
        Tensor2::from_flat(7, scaled).unwrap() == invariant_tensor()
    } else {
        false
    };
    finish(
        3,
        ok,
        start,
        Duration::from_secs(1),
        format!("centralizer dim {}", cent.dim()),
    );
}

fn family_params() -> Vec<Theorem5Params> {
    let z = Rational::zero;
    let mut ps = vec![
        Theorem5Params::new(z(), z(), z(), z(), z()),
        Theorem5Params::new(q(1, 1), z(), z(), z(), z()),
    ];
    let mut g = rng(SEED);
    ps.extend((0..20).map(|_| Theorem5Params::random(&mut g)));
    ps
}

struct FamilyRun {
    report: PipelineReport,
    elapsed: Duration,
}

fn family_runs() -> &'static [FamilyRun] {
    static RUNS: OnceLock<Vec<FamilyRun>> = OnceLock::new();
    RUNS.get_or_init(|| {
        family_params()
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let start = Instant::now();
                let report = pipeline_semisimple(p, 16, SEED + i as u64);
                FamilyRun {
                    report,
                    elapsed: start.elapsed(),
                }
            })
            .collect()
    })
}

fn stage_ok(r: &PipelineReport, name: &str) -> bool {
    r.stage(name).is_some_and(|s| s.ok)
}

#[test]
fn criterion_04_semisimple_family() {
    let start = Instant::now();
    let runs = family_runs();
    let mut bad = Vec::new();
    let mut tuples_ok = true;
    for (i, run) in runs.iter().enumerate() {
        let r = &run.report;
        if !(stage_ok(r, "cybe_r0") && stage_ok(r, "cybe") && stage_ok(r, "malcev_bialgebra")) {
            bad.push(i);
        }
        let tuples = r
            .stage("malcev_bialgebra")
            .and_then(|s| s.witness.as_ref())
            .and_then(|w| w["malcev"]["tuples_checked"].as_u64());
        tuples_ok &= tuples == Some(38_416);
    }
    let slowest = runs.iter().map(|r| r.elapsed).max().unwrap_or_default();
    let ok = bad.is_empty() && tuples_ok && slowest < Duration::from_secs(60);
    let detail = format!(
        "{} instances, failing {bad:?}, exhaustive={tuples_ok}, slowest {slowest:.2?}",
        runs.len()
    );
    finish(
        4,
        ok,
        start,
        Duration::from_secs(60 * runs.len() as u64),
        detail,
    );
}

#[test]
fn criterion_05_semisimple_decomposition() {
    let start = Instant::now();
    let runs = family_runs();
    let mut bad = Vec::new();
    for (i, run) in runs.iter().enumerate() {
        let r = &run.report;
        let dims = r
            .stage("projection_v")
            .and_then(|s| s.witness.as_ref())
            .and_then(|w| w["report"]["dim"].as_u64());
        if !(stage_ok(r, "form_q") && stage_ok(r, "decomposition") && dims == Some(4)) {
            bad.push((i, dims));
        }
    }
    let detail = format!("{} instances, failing {bad:?}", runs.len());
    finish(
        5,
        bad.is_empty(),
        start,
        Duration::from_secs(30 * runs.len() as u64),
        detail,
    );
}

#[test]
fn criterion_06_triangular_pipeline() {
    let start = Instant::now();
    let fixtures: [(&str, Vec<usize>); 3] = [
        ("{x,y'}", vec![X, YP]),
        ("{h,x}", vec![H, X]),
        ("M(4)", M4.to_vec()),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, idx) in &fixtures {
        let report = pipeline_triangular(idx, &block_gram(idx.len()), 16, SEED);
        let dim7 = report
            .stage("radical_certificate")
            .and_then(|s| s.witness.as_ref())
            .and_then(|w| w["dim"].as_u64())
            == Some(7);
        let pass = [
            "r_from_symplectic",
            "antisymmetry",
            "cybe",
            "malcev_bialgebra",
            "radical_certificate",
        ]
        .iter()
        .all(|s| stage_ok(&report, s))
            && dim7
            && report.ok;
        ok &= pass;
        lines.push(format!(
            "{name}: {}",
            report.first_failure().unwrap_or("all stages pass")
        ));
    }
    finish(6, ok, start, Duration::from_secs(60), lines.join("; "));
}

#[test]
fn criterion_07_scalar_condition() {
    let start = Instant::now();
    let mut g = rng(SEED);
    let (mut agree, mut symplectic, mut total) = (0, 0, 0);
    while total < 50 {
        let mut w = Matrix::zeros(4, 4);
        for i in 0..4 {
            for j in i + 1..4 {
                let c = small_rational(&mut g);
                w[(i, j)] = c.clone();
                w[(j, i)] = -c;
            }
        }
        // local order h, x, y', z; force the scalar condition on every other draw
        if total % 2 == 0 {
            let s = &w[(1, 3)] * q(2, 1);
            w[(2, 0)] = s.clone();
            w[(0, 2)] = -s;
        }
        if determinant(&w).unwrap().is_zero() {
            continue;
        }
        total += 1;
        let rep = symplectic_check(&M4, &w).unwrap();
        if rep.equivalence_holds == Some(true) {
            agree += 1;
        }
        if rep.cyclic {
            symplectic += 1;
        }
    }
    let ok = agree == total && symplectic > 0 && symplectic < total;
    let detail = format!("{agree}/{total} agree, {symplectic} symplectic");
    finish(7, ok, start, Duration::from_secs(5), detail);
}

#[test]
fn criterion_08_matrix_form() {
    let start = Instant::now();
    let m = build_m7();
    let gammas = gamma_matrices(&m);
    let mut g = rng(SEED);
    let mut agree = 0;
    let mut solutions = 0;
    let mut family = g.clone();
    for i in 0..100 {
        // every fifth sample is a genuine solution so both zero and nonzero cases occur
        let r = if i % 5 == 0 {
            theorem5_r(&Theorem5Params::random(&mut family))
        } else {
            Tensor2::from_flat(7, sparse_vector(&mut g, 49, 0.3)).unwrap()
        };
        let c = cybe_residual(&m, &r).unwrap();
        let e = lemma1_eq2_residual(&r.matrix(), &gammas).unwrap();
        let same = (0..7).all(|k| {
            (0..7).all(|s| (0..7).all(|n| c.get(k, s, n).is_zero() == e.get(k, s, n).is_zero()))
        });
        if same {
            agree += 1;
        }
        if c.is_zero() {
            solutions += 1;
        }
    }
    let r = theorem5_r(&Theorem5Params::random(&mut g));
    let lambda = r.matrix();
    let nd = lemma1_nd_residual(&lambda, &gammas).unwrap();
    let eq2 = lemma1_eq2_residual(&lambda, &gammas).unwrap();
    let ok = agree == 100 && solutions > 0 && nd.det.is_zero() && nd.is_zero() && eq2.is_zero();
    let detail = format!(
        "zero sets agree {agree}/100 ({solutions} solutions), singular det={} nd zero={}, family eq2 zero={}",
        nd.det,
        nd.is_zero(),
        eq2.is_zero()
    );
    finish(8, ok, start, Duration::from_secs(30), detail);
}

/// Perturbs one coefficient antisymmetrically so the dual product stays
/// anticommutative.
fn corrupt(delta: &Comultiplication) -> Comultiplication {
    let mut d = delta.clone();
    d.add_at(H, X, XP, &q(1, 1));
    d.add_at(H, XP, X, &q(-1, 1));
    d
}

#[test]
fn criterion_09_compatibility_equivalence() {
    let start = Instant::now();
    let m = build_m7();
    let semisimple_r = theorem5_r(&Theorem5Params::new(
        q(1, 1),
        q(-1, 2),
        q(2, 3),
        q(3, 1),
        q(-2, 1),
    ));
    let semisimple = coboundary_delta(&m, &semisimple_r)
        .unwrap()
        .scale(&q(-1, 1));
    let triangular_r = r_from_symplectic(&m, &M4, &block_gram(4)).unwrap();
    let triangular = coboundary_delta(&m, &triangular_r).unwrap();
    let fixtures = [
        ("zero", Comultiplication::zeros(7), true),
        ("corrupted", corrupt(&semisimple), false),
        ("semisimple", semisimple, true),
        ("triangular", triangular, true),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, delta, expected) in &fixtures {
        let double = is_malcev_bialgebra(&m, delta, 16, SEED)
            .unwrap()
            .is_bialgebra;
        let v = vershinin_report(&m, delta, 16, SEED).unwrap();
        ok &= double == v.holds() && double == *expected;
        parts.push(format!("{name}: double={double} conditions={}", v.holds()));
    }
    finish(9, ok, start, Duration::from_secs(120), parts.join("; "));
}

fn corrupted_m7() -> Algebra {
    let m = build_m7();
    let mut gamma = m.gamma_flat().to_vec();
    gamma[(X * 7 + Y) * 7 + ZP] = q(3, 1);
    gamma[(Y * 7 + X) * 7 + ZP] = q(-3, 1);
    Algebra::new(m.labels().to_vec(), gamma).unwrap()
}

#[test]
fn criterion_10_negative_controls() {
    let start = Instant::now();
    let m = build_m7();

    let bad = corrupted_m7().check_malcev(0, SEED).unwrap();
    let table_witness = match &bad.witness {
        Some(MalcevWitness::Tuple { indices, .. }) => Some(*indices),
        _ => None,
    };

    let mut r = Tensor2::zeros(7);
    r.set(H, X, q(1, 1));
    r.set(X, H, q(-1, 1));
    let c = cybe_residual(&m, &r).unwrap();
    let cybe_witness = c.nonzero_entries().first().map(|e| e.index);

    let mut w = Matrix::zeros(4, 4);
    for (i, j) in [(0, 1), (2, 0), (1, 3), (2, 3)] {
        w[(i, j)] = q(1, 1);
        w[(j, i)] = q(-1, 1);
    }
    let form = symplectic_check(&M4, &w).unwrap();
    let form_rejected =
        !form.symplectic && form.cyclic_witness.is_some() && form.scalar_condition == Some(false);

    let ok = !bad.ok && table_witness.is_some() && cybe_witness.is_some() && form_rejected;
    let detail = format!(
        "corrupted table witness {table_witness:?}; h∧x CYBE witness {cybe_witness:?}; form witness {:?}",
        form.cyclic_witness
    );
    finish(10, ok, start, Duration::from_secs(5), detail);
}
