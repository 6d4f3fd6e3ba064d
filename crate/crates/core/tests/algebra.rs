use malcev_core::algebra::{Algebra, Element, MalcevWitness};
use malcev_core::error::Error;
use malcev_core::linalg::{unit_vector, Subspace};
use malcev_core::malcev7::{build_m7, build_subalgebra, H, LABELS, M4, X, XP, Y, YP, Z, ZP};
use malcev_core::random::{anticommutative_algebra, rng, small_vector};
use malcev_core::tensor::derivation_action2;
use malcev_core::{q, Rational, Tensor2};
use proptest::prelude::*;

fn e(i: usize) -> Element {
    Element::basis(7, i)
}

fn span(indices: &[usize]) -> Subspace {
    Subspace::coordinate(7, indices)
}

fn corrupted_m7() -> Algebra {
    let m = build_m7();
    let mut gamma = m.gamma_flat().to_vec();
    gamma[(X * 7 + Y) * 7 + ZP] = q(3, 1);
    gamma[(Y * 7 + X) * 7 + ZP] = q(-3, 1);
    Algebra::new(m.labels().to_vec(), gamma).unwrap()
}

#[test]
fn m7_products() {
    let m = build_m7();
    assert_eq!(m.multiply(&e(X), &e(Y)).unwrap(), e(ZP).scale(&q(2, 1)));
    assert!(m.multiply(&e(X), &e(YP)).unwrap().is_zero());
    assert_eq!(m.multiply(&e(Y), &e(X)).unwrap(), e(ZP).scale(&q(-2, 1)));
    assert!(matches!(
        m.multiply(&e(X), &Element::basis(3, 0)),
        Err(Error::Shape(_))
    ));
}

#[test]
fn m7_jacobians() {
    let m = build_m7();
    assert_eq!(
        m.jacobian(&e(X), &e(Y), &e(Z)).unwrap(),
        e(H).scale(&q(-6, 1))
    );
    assert!(m.jacobian(&e(H), &e(X), &e(XP)).unwrap().is_zero());
}

#[test]
fn m7_identity_checks() {
    let m = build_m7();
    assert!(m.check_anticommutative().ok);
    let mal = m.check_malcev(200, 7).unwrap();
    assert!(mal.ok && mal.multilinear_ok && mal.sampled_ok);
    assert_eq!((mal.tuples_checked, mal.samples_checked), (2401, 200));

    let lie = m.check_lie();
    assert!(!lie.ok);
    // Lexicographically first failing triple.
    let first = lie.witness().unwrap();
    assert_eq!(first.indices, [H, X, Y]);
    assert_eq!(m.describe(&first.jacobian), "12z'");
    let xyz = lie
        .failures
        .iter()
        .find(|f| f.indices == [X, Y, Z])
        .unwrap();
    assert_eq!(Element::new(xyz.jacobian.clone()), e(H).scale(&q(-6, 1)));
    assert_eq!(m.multiplication_envelope_dim(), 49);
}

#[test]
fn corrupted_table_fails_malcev_with_tuple() {
    let bad = corrupted_m7();
    assert!(bad.check_anticommutative().ok);
    let rep = bad.check_malcev(50, 1).unwrap();
    assert!(!rep.ok && !rep.multilinear_ok);
    match rep.witness {
        Some(MalcevWitness::Tuple { indices, residual }) => {
            let [x, y, z, t] = indices;
            assert_eq!(bad.malcev_tuple_residual(x, y, z, t), residual);
            assert!(residual.iter().any(|c| !c.is_zero()));
        }
        other => panic!("expected a tuple witness, got {other:?}"),
    }
}

#[test]
fn anticommutativity_failure() {
    let a = Algebra::from_products(vec!["a".into()], &[(0, 0, 0, q(1, 1))]).unwrap();
    let rep = a.check_anticommutative();
    assert_eq!((rep.ok, rep.witness), (false, Some((0, 0, 0))));
    assert!(matches!(
        a.check_malcev(5, 0),
        Err(Error::NotAnticommutative { .. })
    ));
    let (_, m4) = build_subalgebra(&M4).unwrap();
    assert!(m4.check_anticommutative().ok);
}

#[test]
fn small_lie_algebras_pass() {
    let (_, hx) = build_subalgebra(&[H, X]).unwrap();
    assert!(hx.check_lie().ok);
    assert!(hx.check_malcev(20, 3).unwrap().ok);
    assert!(Algebra::abelian(3).check_lie().ok);
}

#[test]
fn closure_examples() {
    let m = build_m7();
    assert_eq!(m.subalgebra_closure(&span(&M4)), span(&M4));
    assert_eq!(m.subalgebra_closure(&span(&[X])), span(&[X]));
    let xy = m.subalgebra_closure(&span(&[X, Y]));
    assert!(xy.contains(&unit_vector(7, ZP)));
    assert!(xy.contains_subspace(&span(&[X, Y])));
}

#[test]
fn ideal_examples() {
    let m = build_m7();
    assert!(m.is_ideal(&Subspace::full(7)));
    assert!(!m.is_ideal(&span(&[X])));
    assert!(m.is_ideal(&Subspace::zero(7)));
}

#[test]
fn derived_series_examples() {
    let m = build_m7();
    let hx = span(&[H, X]);
    let ds = m.derived_series(&hx).unwrap();
    assert_eq!(ds.terms, vec![hx, span(&[X]), Subspace::zero(7)]);
    assert!(ds.solvable);

    let full = m.derived_series(&Subspace::full(7)).unwrap();
    assert!(!full.solvable);
    assert_eq!(full.terms.last().unwrap(), &Subspace::full(7));

    let ab = Algebra::abelian(2);
    let ds = ab.derived_series(&Subspace::full(2)).unwrap();
    assert_eq!(ds.terms, vec![Subspace::full(2), Subspace::zero(2)]);

    assert!(matches!(
        m.derived_series(&span(&[X, Y])),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn envelope_examples() {
    assert_eq!(Algebra::abelian(3).multiplication_envelope_dim(), 0);
    let (_, hx) = build_subalgebra(&[H, X]).unwrap();
    assert_eq!(hx.multiplication_envelope_dim(), 2);
}

#[test]
fn centralizer_examples() {
    let m = build_m7();
    let c = m.tensor_centralizer();
    assert_eq!(c.dim(), 1);
    let g = c.basis_vectors().next().unwrap();
    let mut expected = vec![Rational::zero(); 49];
    expected[H * 7 + H] = q(1, 2);
    for (a, b) in [(X, XP), (Y, YP), (Z, ZP)] {
        expected[a * 7 + b] = q(1, 1);
        expected[b * 7 + a] = q(1, 1);
    }
    let scale = &g[H * 7 + H] / &expected[H * 7 + H];
    let scaled: Vec<Rational> = expected.iter().map(|c| c * &scale).collect();
    assert_eq!(g, &scaled[..]);

    assert_eq!(Algebra::abelian(3).tensor_centralizer(), Subspace::full(9));
}

#[test]
fn labels_are_standard() {
    assert_eq!(build_m7().labels(), LABELS.map(String::from));
}

fn small_algebra() -> impl Strategy<Value = (u64, usize)> {
    (any::<u64>(), 1usize..=5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobian_is_alternating((seed, n) in small_algebra()) {
        let mut g = rng(seed);
        let a = anticommutative_algebra(&mut g, n, 0.4);
        let (x, y, z) = (
            Element::new(small_vector(&mut g, n)),
            Element::new(small_vector(&mut g, n)),
            Element::new(small_vector(&mut g, n)),
        );
        let j = a.jacobian(&x, &y, &z).unwrap();
        let minus = j.scale(&q(-1, 1));
        prop_assert_eq!(a.jacobian(&y, &x, &z).unwrap(), minus.clone());
        prop_assert_eq!(a.jacobian(&x, &z, &y).unwrap(), minus);
    }

    #[test]
    fn closure_is_idempotent_and_monotone((seed, n) in small_algebra(), k in 0usize..3) {
        let mut g = rng(seed);
        let a = anticommutative_algebra(&mut g, n, 0.3);
        let gens: Vec<Vec<Rational>> = (0..k).map(|_| small_vector(&mut g, n)).collect();
        let extra = small_vector(&mut g, n);
        let s = Subspace::span(n, &gens);
        let c = a.subalgebra_closure(&s);
        prop_assert!(c.contains_subspace(&s));
        prop_assert!(a.is_subalgebra(&c));
        prop_assert_eq!(a.subalgebra_closure(&c), c.clone());
        let bigger = s.sum(&Subspace::span(n, [extra]));
        prop_assert!(a.subalgebra_closure(&bigger).contains_subspace(&c));
    }

    #[test]
    fn centralizer_is_rechecked_by_action((seed, n) in (any::<u64>(), 1usize..=4)) {
        let mut g = rng(seed);
        let a = anticommutative_algebra(&mut g, n, 0.3);
        let c = a.tensor_centralizer();
        for v in c.basis_vectors() {
            let l = Tensor2::from_flat(n, v.to_vec()).unwrap();
            for i in 0..n {
                prop_assert!(derivation_action2(&a, &l, &a.basis_element(i)).unwrap().is_zero());
            }
        }
    }
}

/// Randomized `J(x,y,xz) = J(x,y,z)x` agrees with the exhaustive multilinear
/// identity on random anticommutative algebras, including Malcev ones.
#[test]
fn mal1_agrees_with_mal() {
    let mut g = rng(99);
    let mut agree = 0;
    let mut malcev = 0;
    let mut algebras: Vec<Algebra> = Vec::new();
    for i in 0..60 {
        let n = 2 + i % 4;
        algebras.push(anticommutative_algebra(&mut g, n, [0.05, 0.15, 0.4][i % 3]));
    }
    algebras.push(build_subalgebra(&M4).unwrap().1);
    algebras.push(build_subalgebra(&[H, X]).unwrap().1);
    algebras.push(Algebra::abelian(5));
    for (i, a) in algebras.iter().enumerate() {
        let rep = a.check_malcev(60, i as u64).unwrap();
        let n = a.dim();
        let sampled = (0..60).all(|_| {
            let (x, y, z) = (
                small_vector(&mut g, n),
                small_vector(&mut g, n),
                small_vector(&mut g, n),
            );
            a.mal1_residual(&x, &y, &z).iter().all(Rational::is_zero)
        });
        assert_eq!(rep.multilinear_ok, sampled, "algebra {i}");
        assert_eq!(rep.multilinear_ok, rep.sampled_ok, "algebra {i}");
        agree += 1;
        malcev += rep.ok as usize;
    }
    assert!(agree >= 50);
    assert!(
        malcev >= 3 && malcev < algebras.len(),
        "{malcev} Malcev algebras"
    );
}
