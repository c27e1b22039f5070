use gamma_bialg::exact::{q, qi, LinComb, LinMap, Scalar, Tensor};
use gamma_bialg::lie::catalog::{self, sl2_basis::*};
use gamma_bialg::lie::*;
use gamma_bialg::twists::*;
use gamma_bialg::Error;
use num_traits::Zero;
use proptest::prelude::*;

fn t2(n: usize, terms: &[(usize, usize, i64)]) -> Tensor {
    Tensor::from_terms(vec![n, n], terms.iter().map(|&(a, b, c)| (vec![a, b], qi(c)))).unwrap()
}

fn wedge(n: usize, a: usize, b: usize) -> Tensor {
    t2(n, &[(a, b, 1), (b, a, -1)])
}

/// f⊗e − e⊗f
fn cartan_twist() -> Tensor {
    t2(3, &[(F, E, 1), (E, F, -1)])
}

/// Dense brute-force expansion of the twist defect.
fn oracle_defect(b: &LieBialgebra, f: &Tensor) -> Vec<Vec<Vec<Scalar>>> {
    let n = b.dim();
    let z = || vec![vec![vec![Scalar::zero(); n]; n]; n];
    let mut c = z();
    let mut d = z();
    for i in 0..n {
        for j in 0..n {
            for (&k, v) in b.alg().bracket_basis(i, j) {
                c[i][j][k] = v.clone();
            }
        }
        for (jk, v) in b.cobracket()[i].iter() {
            d[i][jk[0]][jk[1]] = v.clone();
        }
    }
    let fm: Vec<Vec<Scalar>> = (0..n).map(|a| (0..n).map(|b| f.coeff(&[a, b])).collect()).collect();
    let mut t = z();
    for p in 0..n {
        for qq in 0..n {
            for r in 0..n {
                let mut s = Scalar::zero();
                for a in 0..n {
                    s += &fm[a][r] * &d[a][p][qq];
                }
                for bb in 0..n {
                    for dd in 0..n {
                        s += &fm[p][bb] * &fm[qq][dd] * &c[bb][dd][r];
                    }
                }
                t[p][qq][r] = s;
            }
        }
    }
    let mut out = z();
    for p in 0..n {
        for qq in 0..n {
            for r in 0..n {
                out[p][qq][r] = &t[p][qq][r] + &t[r][p][qq] + &t[qq][r][p];
            }
        }
    }
    out
}

fn agrees_with_oracle(b: &LieBialgebra, f: &Tensor) -> bool {
    let got = twist_defect(b, f).unwrap();
    let want = oracle_defect(b, f);
    let n = b.dim();
    (0..n).all(|p| (0..n).all(|qq| (0..n).all(|r| got.coeff(&[p, qq, r]) == want[p][qq][r])))
}

fn cartan_theta() -> LinMap {
    LinMap::new(3, vec![LinComb::basis(F), LinComb::basis(E), LinComb::term(H, qi(-1))]).unwrap()
}

#[test]
fn zero_twist_has_zero_defect() {
    let b = catalog::sl2_standard();
    assert!(twist_defect(&b, &Tensor::zero_square(3, 2)).unwrap().is_zero());
}

#[test]
fn cartan_twist_is_a_twist() {
    let b = catalog::sl2_standard();
    let f = cartan_twist();
    assert!(agrees_with_oracle(&b, &f));
    assert!(twist_defect(&b, &f).unwrap().is_zero());
}

#[test]
fn e_wedge_h_regression_fixture() {
    let b = catalog::sl2_standard();
    let f = wedge(3, E, H);
    assert!(agrees_with_oracle(&b, &f));
    // recorded from the dense expansion: the defect vanishes identically
    assert!(twist_defect(&b, &f).unwrap().is_zero());
    let bf = twist(&b, &f).unwrap();
    assert!(cojacobi_defect(bf.cobracket()).unwrap().is_zero());
}

#[test]
fn non_antisymmetric_is_rejected() {
    let b = catalog::sl2_standard();
    let f = t2(3, &[(E, F, 1)]);
    assert!(matches!(twist_defect(&b, &f), Err(Error::NotAntisymmetric)));
    assert!(twist(&b, &f).is_err());
}

#[test]
fn twisting_by_zero_is_identity() {
    let b = catalog::sl2_standard();
    assert_eq!(twist(&b, &Tensor::zero_square(3, 2)).unwrap(), b);
}

#[test]
fn cartan_twist_matches_transported_cobracket() {
    let b = catalog::sl2_standard();
    let bf = twist(&b, &cartan_twist()).unwrap();
    let th = cartan_theta();
    let inv = th.inverse().unwrap();
    for i in 0..3 {
        // ∧²θ(δ(θ^{-1} x_i))
        let mut want = Tensor::zero_square(3, 2);
        for (&j, c) in inv.image(i).iter() {
            want = want.add(&b.cobracket()[j].scale(c)).unwrap();
        }
        let want = want.map_slot(0, 3, |k| th.image(k).clone()).unwrap();
        let want = want.map_slot(1, 3, |k| th.image(k).clone()).unwrap();
        assert_eq!(bf.cobracket()[i], want, "x_{i}");
    }
    assert!(cojacobi_defect(bf.cobracket()).unwrap().is_zero());
    assert!(cocycle_defect(bf.alg(), bf.cobracket()).unwrap().is_zero());
}

#[test]
fn twisting_back_restores_cobracket() {
    let b = catalog::sl2_standard();
    let f = cartan_twist();
    let bf = twist(&b, &f).unwrap();
    let back = twist(&bf, &negated(&f)).unwrap();
    assert_eq!(back, b);
}

#[test]
fn compose_with_zero() {
    let b = catalog::sl2_standard();
    let f = cartan_twist();
    let zero = Tensor::zero_square(3, 2);
    let p = compose_twists(&b, &f, &zero).unwrap();
    assert_eq!(p.sum(), f);
    let p = compose_twists(&b, &zero, &f).unwrap();
    assert_eq!(p.first, zero);
    assert_eq!(p.second, f);
}

#[test]
fn compose_cartan_with_its_transport_sums_to_zero() {
    let b = catalog::sl2_standard();
    let f = cartan_twist();
    let th = cartan_theta();
    let f2 = f.map_slot(0, 3, |k| th.image(k).clone()).unwrap().map_slot(1, 3, |k| th.image(k).clone()).unwrap();
    let p = compose_twists(&b, &f, &f2).unwrap();
    assert!(p.sum().is_zero());
}

#[test]
fn compose_rejects_non_twist() {
    let b = catalog::sl2_standard();
    let f = cartan_twist();
    let bad = wedge(3, E, H);
    if !twist_defect(&twist(&b, &f).unwrap(), &bad).unwrap().is_zero() {
        assert!(matches!(compose_twists(&b, &f, &bad), Err(Error::Invalid(_))));
    }
}

#[test]
fn twisting_is_associative() {
    let b = catalog::sl2_standard();
    let f = cartan_twist();
    let bf = twist(&b, &f).unwrap();
    let f2 = negated(&f).scale(&q(1, 2));
    if twist_defect(&bf, &f2).unwrap().is_zero() {
        let lhs = twist(&bf, &f2).unwrap();
        let rhs = twist(&b, &f.add(&f2).unwrap()).unwrap();
        assert_eq!(lhs.cobracket(), rhs.cobracket());
    }
    let lhs = twist_unchecked(&twist_unchecked(&b, &f).unwrap(), &f2).unwrap();
    let rhs = twist_unchecked(&b, &f.add(&f2).unwrap()).unwrap();
    assert_eq!(lhs.cobracket(), rhs.cobracket());
}

#[test]
fn double_iso_for_zero_twist_is_identity() {
    let b = catalog::sl2_standard();
    let m = double_twist_iso(&b, &Tensor::zero_square(3, 2)).unwrap();
    assert!(m.is_identity());
}

#[test]
fn double_iso_on_abelian_is_contraction() {
    let b = catalog::abelian(3);
    let f = t2(3, &[(0, 1, 2), (1, 0, -2), (1, 2, -1), (2, 1, 1)]);
    let m = double_twist_iso(&b, &f).unwrap();
    assert_eq!(m, contraction_map(&f, &qi(1)));
}

#[test]
fn double_iso_for_cartan_twist() {
    let b = catalog::sl2_standard();
    let f = cartan_twist();
    let m = double_twist_iso(&b, &f).unwrap();
    assert_eq!(m.dim_in(), 6);
    assert!(m.inverse().is_some());
    for i in 0..3 {
        assert_eq!(m.image(i), &LinComb::basis(i));
    }
    let bf = twist(&b, &f).unwrap();
    let d = drinfeld_double(&b).unwrap();
    let df = drinfeld_double(&bf).unwrap();
    assert!(intertwining_defect(d.alg(), df.alg(), &m).unwrap().is_zero());
}

fn small() -> impl Strategy<Value = i64> {
    -3i64..=3
}

proptest! {
    #[test]
    fn defect_matches_oracle(a in small(), b2 in small(), c in small()) {
        let b = catalog::sl2_standard();
        let f = wedge(3, E, F).scale(&qi(a))
            .add(&wedge(3, E, H).scale(&qi(b2))).unwrap()
            .add(&wedge(3, F, H).scale(&qi(c))).unwrap();
        prop_assert!(agrees_with_oracle(&b, &f));
        let sol = catalog::solvable2();
        let g = wedge(2, 0, 1).scale(&qi(a));
        prop_assert!(agrees_with_oracle(&sol, &g));
    }

    #[test]
    fn scaled_cartan_twists_compose(s in small(), t in small()) {
        let b = catalog::sl2_standard();
        let f = cartan_twist().scale(&qi(s));
        if twist_defect(&b, &f).unwrap().is_zero() {
            let bf = twist(&b, &f).unwrap();
            prop_assert!(cojacobi_defect(bf.cobracket()).unwrap().is_zero());
            prop_assert!(cocycle_defect(bf.alg(), bf.cobracket()).unwrap().is_zero());
            let f2 = cartan_twist().scale(&qi(t));
            if twist_defect(&bf, &f2).unwrap().is_zero() {
                let p = compose_twists(&b, &f, &f2).unwrap();
                prop_assert!(twist_defect(&b, &p.sum()).unwrap().is_zero());
                let lhs = twist(&bf, &f2).unwrap();
                let rhs = twist(&b, &p.sum()).unwrap();
                prop_assert_eq!(lhs.cobracket(), rhs.cobracket());
            }
        }
    }

    #[test]
    fn solvable_twists_give_double_isos(a in small()) {
        let b = catalog::solvable2();
        let f = wedge(2, 0, 1).scale(&qi(a));
        if twist_defect(&b, &f).unwrap().is_zero() {
            let m = double_twist_iso(&b, &f).unwrap();
            prop_assert!(m.inverse().is_some());
        }
    }
}
