//! Group actions and Γ-Lie bialgebras used by the tests, examples and CLI.

use crate::exact::{q, qi, LinComb, LinMap, Scalar, Tensor};
use crate::lie::catalog::{self as lie_catalog, sl2_basis::*};

use super::{quasitriangular_gamma, FiniteGroup, GammaLieBialgebra, GroupAction};

/// Cartan involution of `sl2`: `e ↦ f`, `f ↦ e`, `h ↦ −h`.
pub fn sl2_cartan() -> LinMap {
    LinMap::new(3, vec![LinComb::basis(F), LinComb::basis(E), LinComb::term(H, qi(-1))]).expect("in range")
}

/// `e ↦ f`, `f ↦ e`, `h ↦ h`; not a Lie algebra automorphism.
pub fn sl2_bad_swap() -> LinMap {
    LinMap::new(3, vec![LinComb::basis(F), LinComb::basis(E), LinComb::basis(H)]).expect("in range")
}

/// Conjugation `X ↦ gXg⁻¹` on `sl2 ⊂ gl2` for `g = [[a, b], [c, d]]`.
pub fn pgl2_conjugation(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Option<LinMap> {
    let det = &a * &d - &b * &c;
    if det == qi(0) {
        return None;
    }
    let g = [[a.clone(), b.clone()], [c.clone(), d.clone()]];
    let gi = [[&d / &det, -&b / &det], [-&c / &det, &a / &det]];
    let coords = |x: [[Scalar; 2]; 2]| {
        let mut gx = [[qi(0), qi(0)], [qi(0), qi(0)]];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    gx[i][j] += &g[i][k] * &x[k][j];
                }
            }
        }
        let mut y = [[qi(0), qi(0)], [qi(0), qi(0)]];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    y[i][j] += &gx[i][k] * &gi[k][j];
                }
            }
        }
        LinComb::from_terms([(E, y[0][1].clone()), (F, y[1][0].clone()), (H, y[0][0].clone())])
    };
    let z = || qi(0);
    let e = [[z(), qi(1)], [z(), z()]];
    let f = [[z(), z()], [qi(1), z()]];
    let h = [[qi(1), z()], [z(), qi(-1)]];
    Some(LinMap::new(3, vec![coords(e), coords(f), coords(h)]).expect("in range"))
}

/// `Z/2` acting on `sl2` through the Cartan involution.
pub fn sl2_cartan_action() -> GroupAction {
    let g = FiniteGroup::cyclic(2).expect("order 2");
    GroupAction::new(g, vec![LinMap::identity(3), sl2_cartan()]).expect("invertible")
}

/// `S3 ≅ PGL2(F_2)`-shaped subgroup of `PGL2(Q)` generated by the classes of
/// `[[−1, 1], [0, 1]]` and `[[0, 1], [1, 0]]`, acting by conjugation.
pub fn sl2_s3_action() -> GroupAction {
    let s = pgl2_conjugation(qi(-1), qi(1), qi(0), qi(1)).expect("invertible");
    let t = pgl2_conjugation(qi(0), qi(1), qi(1), qi(0)).expect("invertible");
    GroupAction::generated(3, &[("s", s), ("t", t)]).expect("finite group")
}

/// `x ↦ −x`, `h ↦ h + b·x` on the two-dimensional solvable algebra.
pub fn solvable2_reflection(b: &Scalar) -> LinMap {
    LinMap::new(2, vec![LinComb::from_terms([(0, qi(1)), (1, b.clone())]), LinComb::term(1, qi(-1))])
        .expect("in range")
}

fn solvable2_twist(b: &Scalar) -> Tensor {
    // b·x∧h
    Tensor::from_terms(vec![2, 2], [(vec![1, 0], b.clone()), (vec![0, 1], -b.clone())]).expect("in range")
}

/// `Z/2` acting on the solvable algebra by [`solvable2_reflection`] with
/// twist family `f_σ = b·x∧h`.
pub fn solvable2_z2(b: &Scalar) -> GammaLieBialgebra {
    let g = FiniteGroup::cyclic(2).expect("order 2");
    let action = GroupAction::new(g, vec![LinMap::identity(2), solvable2_reflection(b)]).expect("invertible");
    let twists = vec![Tensor::zero_square(2, 2), solvable2_twist(b)];
    GammaLieBialgebra::new(lie_catalog::solvable2(), action, twists).expect("valid Γ-Lie bialgebra")
}

/// `S3` acting on the solvable algebra through the sign character.
pub fn solvable2_s3(b: &Scalar) -> GammaLieBialgebra {
    let g = FiniteGroup::symmetric3();
    let odd = ["s", "t", "sts"];
    let mut theta = Vec::new();
    let mut twists = Vec::new();
    for l in g.labels() {
        if odd.contains(&l.as_str()) {
            theta.push(solvable2_reflection(b));
            twists.push(solvable2_twist(b));
        } else {
            theta.push(LinMap::identity(2));
            twists.push(Tensor::zero_square(2, 2));
        }
    }
    let action = GroupAction::new(g, theta).expect("invertible");
    GammaLieBialgebra::new(lie_catalog::solvable2(), action, twists).expect("valid Γ-Lie bialgebra")
}

/// Standard `sl2` with the Cartan `Z/2` and `f_σ = f⊗e − e⊗f`.
pub fn sl2_cartan_z2() -> GammaLieBialgebra {
    quasitriangular_gamma(&lie_catalog::sl2_quasitriangular(), &sl2_cartan_action()).expect("t is invariant")
}

/// Standard `sl2` with the conjugation action of `S3`.
pub fn sl2_s3() -> GammaLieBialgebra {
    quasitriangular_gamma(&lie_catalog::sl2_quasitriangular(), &sl2_s3_action()).expect("t is invariant")
}

/// Standard `sl2` with `Z/2` acting trivially.
pub fn sl2_trivial_z2() -> GammaLieBialgebra {
    let g = FiniteGroup::cyclic(2).expect("order 2");
    quasitriangular_gamma(&lie_catalog::sl2_quasitriangular(), &GroupAction::trivial(g, 3)).expect("trivial")
}

/// Standard `sl2` over the trivial group.
pub fn sl2_trivial() -> GammaLieBialgebra {
    quasitriangular_gamma(&lie_catalog::sl2_quasitriangular(), &GroupAction::trivial(FiniteGroup::trivial(), 3))
        .expect("trivial")
}

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] = &["sl2-trivial", "sl2-trivial-z2", "sl2-cartan-z2", "sl2-s3", "solvable2-z2", "solvable2-s3"];

pub fn by_name(name: &str) -> Option<GammaLieBialgebra> {
    Some(match name {
        "sl2-trivial" => sl2_trivial(),
        "sl2-trivial-z2" => sl2_trivial_z2(),
        "sl2-cartan-z2" => sl2_cartan_z2(),
        "sl2-s3" => sl2_s3(),
        "solvable2-z2" => solvable2_z2(&qi(1)),
        "solvable2-s3" => solvable2_s3(&q(1, 2)),
        _ => return None,
    })
}

/// Every named entry, in catalog order.
pub fn test_matrix() -> Vec<(&'static str, GammaLieBialgebra)> {
    NAMES.iter().map(|&n| (n, by_name(n).expect("listed"))).collect()
}
