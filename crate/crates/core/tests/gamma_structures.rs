use gamma_bialg::exact::{q, qi, LinComb, LinMap, Tensor};
use gamma_bialg::gamma::catalog as gcat;
use gamma_bialg::gamma::*;
use gamma_bialg::lie::catalog::{self, sl2_basis::*};
use gamma_bialg::twists::{compose_twists, twist, twist_defect};
use gamma_bialg::Error;
use proptest::prelude::*;

fn t2(terms: &[(usize, usize, i64)]) -> Tensor {
    Tensor::from_terms(vec![3, 3], terms.iter().map(|&(a, b, c)| (vec![a, b], qi(c)))).unwrap()
}

#[test]
fn trivial_action_checks() {
    let a = GroupAction::trivial(FiniteGroup::cyclic(3).unwrap(), 3);
    assert!(check_action(&a, &catalog::sl2_algebra()).unwrap().is_zero());
    let a = GroupAction::trivial(FiniteGroup::trivial(), 2);
    assert!(check_action(&a, &catalog::solvable2_algebra()).unwrap().is_zero());
}

#[test]
fn cartan_involution_is_an_action() {
    let rep = check_action(&gcat::sl2_cartan_action(), &catalog::sl2_algebra()).unwrap();
    assert!(rep.is_zero());
}

#[test]
fn swap_without_sign_is_not_an_automorphism() {
    let g = FiniteGroup::cyclic(2).unwrap();
    let a = GroupAction::new(g, vec![LinMap::identity(3), gcat::sl2_bad_swap()]).unwrap();
    let rep = check_action(&a, &catalog::sl2_algebra()).unwrap();
    assert!(!rep.condition_is_zero("automorphism"));
    assert!(rep.condition_is_zero("homomorphism"));
}

#[test]
fn singular_matrix_is_rejected() {
    let g = FiniteGroup::cyclic(2).unwrap();
    let r = GroupAction::new(g, vec![LinMap::identity(2), LinMap::zero(2, 2)]);
    assert!(matches!(r, Err(Error::Singular(_))));
}

#[test]
fn s3_action_is_faithful_and_preserves_casimir() {
    let a = gcat::sl2_s3_action();
    assert_eq!(a.group().order(), 6);
    assert!(check_action(&a, &catalog::sl2_algebra()).unwrap().is_zero());
    assert!(a.preserves(&catalog::sl2_quasitriangular().t()).unwrap());
    let grp = a.group();
    let nonabelian = grp.elements().any(|x| grp.elements().any(|y| grp.mul(x, y) != grp.mul(y, x)));
    assert!(nonabelian);
}

#[test]
fn trivial_group_has_zero_defects() {
    let g = gcat::sl2_trivial();
    assert!(g.twist(0).is_zero());
    assert!(gamma_defects(&g).unwrap().is_zero());
    assert_eq!(g.bialg(), &catalog::sl2_standard());
}

#[test]
fn cartan_family_is_f_e_minus_e_f() {
    let g = gcat::sl2_cartan_z2();
    let sigma = g.action().group().index_of("g").unwrap();
    assert_eq!(g.twist(sigma), &t2(&[(F, E, 1), (E, F, -1)]));
    assert!(gamma_defects(&g).unwrap().is_zero());
}

#[test]
fn doubled_cartan_twist_breaks_condition_a() {
    let g = gcat::sl2_cartan_z2();
    let twists = vec![g.twist(0).clone(), g.twist(1).scale(&qi(2))];
    let bad = GammaLieBialgebra::new_unchecked(g.bialg().clone(), g.action().clone(), twists.clone()).unwrap();
    let rep = gamma_defects(&bad).unwrap();
    assert!(!rep.condition_is_zero("a"));
    assert!(GammaLieBialgebra::new(g.bialg().clone(), g.action().clone(), twists).is_err());
}

#[test]
fn identity_action_gives_zero_twists() {
    let g = gcat::sl2_trivial_z2();
    assert!(g.twists().iter().all(Tensor::is_zero));
}

#[test]
fn whole_matrix_satisfies_conditions() {
    for (name, g) in gcat::test_matrix() {
        assert!(check_action(g.action(), g.bialg().alg()).unwrap().is_zero(), "{name}");
        assert!(gamma_defects(&g).unwrap().is_zero(), "{name}");
    }
}

#[test]
fn consequences_of_condition_b() {
    for (name, g) in gcat::test_matrix() {
        let grp = g.action().group();
        assert!(g.twist(grp.identity()).is_zero(), "{name}");
        for x in grp.elements() {
            let xi = grp.inv(x);
            let moved = transport(g.action().theta(xi), g.twist(x)).unwrap();
            assert_eq!(g.twist(xi), &moved.neg(), "{name} {}", grp.label(x));
        }
    }
}

#[test]
fn condition_b_families_compose() {
    for (name, g) in gcat::test_matrix() {
        let b = g.bialg();
        let grp = g.action().group();
        for x in grp.elements() {
            for y in grp.elements() {
                let f = g.twist(x);
                let f2 = transport(g.action().theta(x), g.twist(y)).unwrap();
                let pair = compose_twists(b, f, &f2).unwrap();
                assert!(twist_defect(b, &pair.sum()).unwrap().is_zero(), "{name}");
                let lhs = twist(&twist(b, f).unwrap(), &f2).unwrap();
                let rhs = twist(b, &pair.sum()).unwrap();
                assert_eq!(lhs, rhs, "{name}");
            }
        }
    }
}

#[test]
fn identity_morphism_has_zero_report() {
    for (name, g) in gcat::test_matrix() {
        let id = LinMap::identity(g.dim());
        assert!(gamma_morphism_check(&g, &g, &id).unwrap().is_zero(), "{name}");
    }
}

#[test]
fn rescaling_is_a_bialgebra_morphism() {
    let b = catalog::sl2_standard();
    let m = LinMap::new(3, vec![LinComb::term(E, qi(2)), LinComb::term(F, q(1, 2)), LinComb::basis(H)]).unwrap();
    let triv = gcat::sl2_trivial();
    let rep = gamma_morphism_check(&triv, &triv, &m).unwrap();
    assert!(rep.condition_is_zero("bracket"));
    assert!(rep.condition_is_zero("cobracket"));
    assert!(rep.condition_is_zero("twist"));
    assert_eq!(triv.bialg(), &b);
    // f⊗e − e⊗f is fixed by the rescaling, but the Cartan involution is not
    let g = gcat::sl2_cartan_z2();
    let rep = gamma_morphism_check(&g, &g, &m).unwrap();
    assert!(rep.condition_is_zero("cobracket"));
    assert!(rep.condition_is_zero("twist"));
    assert!(!rep.condition_is_zero("equivariance"));
}

#[test]
fn zero_map_forces_zero_target_twists() {
    let g = gcat::sl2_cartan_z2();
    let rep = gamma_morphism_check(&g, &g, &LinMap::zero(3, 3)).unwrap();
    assert!(rep.condition_is_zero("bracket"));
    assert!(rep.condition_is_zero("cobracket"));
    assert!(!rep.condition_is_zero("twist"));
    let t = gcat::sl2_trivial_z2();
    assert!(gamma_morphism_check(&t, &t, &LinMap::zero(3, 3)).unwrap().is_zero());
}

#[test]
fn morphism_dimension_mismatch() {
    let g = gcat::sl2_cartan_z2();
    assert!(gamma_morphism_check(&g, &g, &LinMap::identity(2)).is_err());
}

#[test]
fn non_invariant_t_is_rejected() {
    // every automorphism of sl2 preserves t, so the swap (which is
    // not an automorphism) exercises the refusal path
    let g = FiniteGroup::cyclic(2).unwrap();
    let a = GroupAction::new(g, vec![LinMap::identity(3), gcat::sl2_bad_swap()]).unwrap();
    assert!(quasitriangular_gamma(&catalog::sl2_quasitriangular(), &a).is_err());
}

#[test]
fn naturality_under_equivariant_isomorphism() {
    // Conjugating the Cartan structure by an S3 element that commutes with the
    // Cartan involution produces an isomorphic Γ-Lie bialgebra.
    let g = gcat::sl2_cartan_z2();
    let m = gcat::pgl2_conjugation(qi(0), qi(1), qi(1), qi(0)).unwrap();
    let b = g.bialg();
    let cob = (0..3)
        .map(|i| {
            let pre = m.inverse().unwrap();
            transport(&m, &b.delta(pre.image(i)))
        })
        .collect::<Result<Vec<_>, _>>()
        .unwrap();
    let target_b = b.with_cobracket(cob).unwrap();
    let action = g.action().clone();
    let twists = g.twists().iter().map(|f| transport(&m, f)).collect::<Result<Vec<_>, _>>().unwrap();
    let target = GammaLieBialgebra::new_unchecked(target_b, action, twists).unwrap();
    assert!(gamma_morphism_check(&g, &target, &m).unwrap().is_zero());
    assert!(gamma_defects(&target).unwrap().is_zero());
}

proptest! {
    #[test]
    fn solvable_families_valid_for_all_b(n in -5i64..=5, d in 1i64..=4) {
        let b = q(n, d);
        let z2 = gcat::solvable2_z2(&b);
        prop_assert!(gamma_defects(&z2).unwrap().is_zero());
        let s3 = gcat::solvable2_s3(&b);
        prop_assert!(gamma_defects(&s3).unwrap().is_zero());
    }

    #[test]
    fn conjugation_actions_preserve_casimir(a in -3i64..=3, b in -3i64..=3, c in -3i64..=3, d in -3i64..=3) {
        if let Some(m) = gcat::pgl2_conjugation(qi(a), qi(b), qi(c), qi(d)) {
            prop_assert!(catalog::sl2_algebra().automorphism_defect(&m).unwrap().is_zero());
            let t = catalog::sl2_quasitriangular().t();
            prop_assert_eq!(transport(&m, &t).unwrap(), t);
        }
    }
}
