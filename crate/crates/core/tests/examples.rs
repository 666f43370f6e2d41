mod common;

use twistcross::action::{check_derived_identities, verify_action, Postulate};
use twistcross::algebra::StructureAlgebra;
use twistcross::criteria::{check_criteria, CriteriaConfig, Route, Verdict};
use twistcross::crossed::build_crossed_product;
use twistcross::graded::{check_condition_i, check_homogeneous_nondegeneracy};
use twistcross::matrix::solution_space;
use twistcross::{vector, Field, Matrix};

use common::*;

fn center_dim(alg: &StructureAlgebra) -> usize {
    let n = alg.dim();
    solution_space(alg.field(), n, |c| {
        let mut out = Vec::new();
        for j in 0..n {
            let e = vector::unit_vector(alg.field(), n, j);
            out.extend(vector::sub(&alg.mul(c, &e), &alg.mul(&e, c)));
        }
        out
    })
    .dim()
}

fn crossed(file: &str, action: &str) -> std::sync::Arc<StructureAlgebra> {
    build_crossed_product(&corpus_action(file, action))
        .unwrap()
        .algebra()
        .clone()
}

#[test]
fn crossed_product_dimensions_and_centers() {
    // (file, action, dim, center dim)
    let cases = [
        ("kz2", "T", 2, 2),
        ("global_swap", "S", 4, 1),
        ("z3_cyclic", "C", 9, 1),
        ("partial_e1", "P", 3, 3),
        ("v4_partial", "W", 3, 3),
        ("twisted_z2", "I", 2, 2),
        ("quaternion", "H", 4, 1),
    ];
    for (file, action, dim, center) in cases {
        let a = crossed(file, action);
        assert_eq!(a.dim(), dim, "{file}");
        assert_eq!(center_dim(&a), center, "{file}");
        assert!(a.unit_element().is_some(), "{file}");
        assert!(associative_on_basis(&a), "{file}");
    }
}

#[test]
fn twisted_z2_is_gaussian_rationals() {
    let a = crossed("twisted_z2", "I");
    let i = a.names().iter().position(|n| n == "one_g").unwrap();
    let e = vector::unit_vector(Field::Rational, 2, i);
    let one = a.unit_element().unwrap();
    let minus_one: Vec<_> = one.iter().map(|x| -x).collect();
    assert_eq!(a.mul(&e, &e), minus_one);
}

#[test]
fn quaternion_oracle_contains_corpus_cocycle() {
    let tables = quaternion_sign_tables();
    // Normalized cocycles with w(x,x) = -1 and w(a,b) = -w(b,a): the two
    // orientations of the quaternion table.
    assert_eq!(tables.len(), 2);
    let h = corpus_action("quaternion", "H");
    let corpus: [i64; 16] = std::array::from_fn(|k| {
        let r = h.twist(k / 4, k % 4).r_matrix();
        if r.get(0, 0).is_one() {
            1
        } else {
            -1
        }
    });
    assert!(tables.contains(&corpus));
    for w in &tables {
        let th = sign_twisted_action(w);
        assert!(verify_action(&th).passed());
        assert!(check_derived_identities(&th).unwrap().passed());
    }
}

#[test]
fn quaternion_relations() {
    let a = crossed("quaternion", "H");
    let f = Field::Rational;
    let e = |name: &str| vector::unit_vector(f, 4, a.names().iter().position(|n| n == name).unwrap());
    let neg = |v: Vec<_>| v.into_iter().map(|x: twistcross::FieldElement| -x).collect::<Vec<_>>();
    for x in ["one_a", "one_b", "one_c"] {
        assert_eq!(a.mul(&e(x), &e(x)), neg(e("one_1")));
    }
    assert_eq!(a.mul(&e("one_a"), &e("one_b")), neg(a.mul(&e("one_b"), &e("one_a"))));
    // No basis product vanishes.
    for i in 0..4 {
        for j in 0..4 {
            assert!(!vector::is_zero(&a.basis_product_vector(i, j)));
        }
    }
}

#[test]
fn corrupted_cocycle_witness() {
    let r = verify_action(&corpus_action("quaternion_corrupt", "H"));
    let w = r.failure(Postulate::CocycleIdentity).unwrap();
    assert_eq!(w.elements, ["a", "a", "b"]);
    assert_eq!(w.basis_index, Some(0));
    // Everything before the cocycle identity still holds.
    assert!(r.failure(Postulate::TwistInvertible).is_none());
    assert!(r.failure(Postulate::NormalizedTwist).is_none());
}

#[test]
fn dual_numbers_fail_both_conditions_at_g() {
    let gb = corpus_grading("dual_numbers", "B");
    let ci = check_condition_i(&gb);
    let nd = check_homogeneous_nondegeneracy(&gb);
    let bad: Vec<_> = ci.failures().map(|c| c.g.as_str()).collect();
    assert_eq!(bad, ["g"]);
    let bad: Vec<_> = nd.failures().map(|c| (c.g.as_str(), c.witness.as_deref())).collect();
    assert_eq!(bad, [("g", Some("x"))]);
}

#[test]
fn trivially_graded_algebra_is_its_own_crossed_product() {
    let gb = corpus_grading("t2_trivial", "B");
    let r = check_criteria(&gb, &CriteriaConfig::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Certificate);
    let c = r.certificate.unwrap();
    let g = c.action.group().index_of("g").unwrap();
    assert_eq!(c.action.domain(g).dim(), 0);
    assert_eq!(c.crossed.dim(), 3);
}

#[test]
fn group_algebra_of_z3_has_trivial_action() {
    let gb = corpus_grading("kz3", "B");
    let c = check_criteria(&gb, &CriteriaConfig::default())
        .unwrap()
        .certificate
        .unwrap();
    let th = &c.action;
    let f = Field::Rational;
    for g in th.group().elements() {
        assert_eq!(th.domain(g).dim(), 1);
        assert_eq!(*th.theta(g), Matrix::identity(f, 1));
    }
    phi_is_graded_isomorphism(&gb, &c.crossed, &c.phi).unwrap();
}

#[test]
fn mixed_basis_grading_certifies() {
    let gb = corpus_grading("twisted_z2", "Mixed");
    for route in [Route::Psi, Route::Uv] {
        let config = CriteriaConfig {
            route,
            ..Default::default()
        };
        let r = check_criteria(&gb, &config).unwrap();
        assert_eq!(r.verdict, Verdict::Certificate, "{route:?}");
    }
}

#[test]
fn canonical_gradings_of_corpus_actions_certify_on_both_routes() {
    for (file, name, th) in corpus_verified_actions() {
        let cp = build_crossed_product(&th).unwrap();
        let gb = cp.canonical_grading().unwrap();
        for route in [Route::Psi, Route::Uv] {
            let config = CriteriaConfig {
                route,
                ..Default::default()
            };
            let r = check_criteria(&gb, &config).unwrap();
            assert_eq!(r.verdict, Verdict::Certificate, "{file}/{name} {route:?}");
            let c = r.certificate.unwrap();
            assert!(c.uv_reports.iter().all(|u| u.passed()), "{file}/{name}");
            phi_is_graded_isomorphism(&gb, &c.crossed, &c.phi).unwrap();
            // Reconstructed domains have the original dimensions.
            for g in th.group().elements() {
                assert_eq!(c.action.domain(g).dim(), th.domain(g).dim(), "{file}/{name}");
            }
        }
    }
}
