//! Named example algebras used throughout the tests and examples.

use crate::exact::{q, qi, BasedSpace, Tensor};

use super::{LieAlgebra, LieBialgebra, QuasitriangularData};

/// Basis indices of `sl2` in the order `e, f, h`.
pub mod sl2_basis {
    pub const E: usize = 0;
    pub const F: usize = 1;
    pub const H: usize = 2;
}

/// Abelian Lie algebra of dimension `n` with zero cobracket.
pub fn abelian(n: usize) -> LieBialgebra {
    LieBialgebra::with_zero_cobracket(LieAlgebra::abelian(BasedSpace::numbered("x", n)))
}

/// The two-dimensional non-abelian algebra `[h, x] = x`.
pub fn solvable2_algebra() -> LieAlgebra {
    let space = BasedSpace::new(["h", "x"]).expect("labels");
    LieAlgebra::from_upper(space, [(0, 1, 1, qi(1))]).expect("valid table")
}

/// `[h, x] = x`, `δ(x) = x∧h`, `δ(h) = 0`.
pub fn solvable2() -> LieBialgebra {
    // x∧h = -(h∧x)
    LieBialgebra::from_upper_cobracket(solvable2_algebra(), [(1, 0, 1, qi(-1))]).expect("valid cobracket")
}

/// `sl2` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2_algebra() -> LieAlgebra {
    use sl2_basis::*;
    let space = BasedSpace::new(["e", "f", "h"]).expect("labels");
    LieAlgebra::from_upper(space, [(E, F, H, qi(1)), (E, H, E, qi(-2)), (F, H, F, qi(2))])
        .expect("valid table")
}

/// Standard r-matrix `e⊗f + ¼ h⊗h`.
pub fn sl2_standard_r() -> Tensor {
    use sl2_basis::*;
    Tensor::from_terms(vec![3, 3], [(vec![E, F], qi(1)), (vec![H, H], q(1, 4))]).expect("in range")
}

/// Quasitriangular structure on `sl2` from the standard r-matrix.
pub fn sl2_quasitriangular() -> QuasitriangularData {
    QuasitriangularData::new(sl2_algebra(), sl2_standard_r()).expect("standard r satisfies CYBE")
}

/// `sl2` with the standard coboundary cobracket.
pub fn sl2_standard() -> LieBialgebra {
    sl2_quasitriangular().bialgebra()
}

/// `sl2` with zero cobracket.
pub fn sl2_zero() -> LieBialgebra {
    LieBialgebra::with_zero_cobracket(sl2_algebra())
}

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] = &["abelian2", "abelian3", "solvable2", "sl2", "sl2-zero"];

pub fn by_name(name: &str) -> Option<LieBialgebra> {
    Some(match name {
        "abelian2" => abelian(2),
        "abelian3" => abelian(3),
        "solvable2" => solvable2(),
        "sl2" => sl2_standard(),
        "sl2-zero" => sl2_zero(),
        _ => return None,
    })
}
