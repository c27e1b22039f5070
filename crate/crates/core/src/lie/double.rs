use num_traits::One;

use crate::error::Result;
use crate::exact::{qi, LinComb, Scalar, Tensor};

use super::{LieAlgebra, LieBialgebra, QuasitriangularData, Vector};

/// Signs of the two mixed terms of the double bracket
/// `[x_i, ξ^j] = s_coadj·Σ_k c_ik^j ξ^k + s_dual·Σ_k d_i^{jk} x_k`.
///
/// Fixed by requiring the canonical element `Σ x_i ⊗ ξ^i` to satisfy the
/// classical Yang-Baxter equation; see the sign search test below.
pub const MIXED_SIGNS: (i64, i64) = (-1, 1);

/// Bracket on `𝔞 ⊕ 𝔞*` (basis `x_0..x_{n-1}, ξ^0..ξ^{n-1}`) for given signs.
pub fn double_algebra_with_signs(b: &LieBialgebra, signs: (i64, i64)) -> Result<LieAlgebra> {
    let n = b.dim();
    let alg = b.alg();
    let mut table = vec![vec![Vector::zero(); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            table[i][j] = alg.bracket_basis(i, j).clone();
        }
    }
    // [ξ^i, ξ^j] = Σ_k d_k^{ij} ξ^k
    for (k, t) in b.cobracket().iter().enumerate() {
        for (idx, c) in t.iter() {
            table[n + idx[0]][n + idx[1]].add_term(n + k, c.clone());
        }
    }
    let (s1, s2) = (qi(signs.0), qi(signs.1));
    for i in 0..n {
        for j in 0..n {
            let mut v = LinComb::zero();
            for k in 0..n {
                v.add_term(n + k, &s1 * alg.bracket_basis(i, k).coeff(&j));
                v.add_term(k, &s2 * b.cobracket()[i].coeff(&[j, k]));
            }
            table[j + n][i] = v.neg();
            table[i][j + n] = v;
        }
    }
    let space = alg.space().direct_sum(alg.space(), "*");
    LieAlgebra::from_full(space, table)
}

/// Canonical element `Σ_i x_i ⊗ ξ^i` of the double.
pub fn canonical_r(n: usize) -> Tensor {
    Tensor::from_terms(vec![2 * n, 2 * n], (0..n).map(|i| (vec![i, n + i], Scalar::one())))
        .expect("in range")
}

/// The Drinfeld double `D(𝔞) = 𝔞 ⊕ 𝔞*` with its canonical r-matrix.
///
/// Fails if the input violates a bialgebra axiom or (which would indicate a
/// bug) if the output is not quasitriangular.
pub fn drinfeld_double(b: &LieBialgebra) -> Result<QuasitriangularData> {
    b.check()?;
    let alg = double_algebra_with_signs(b, MIXED_SIGNS)?;
    QuasitriangularData::new(alg, canonical_r(b.dim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{catalog, cybe_defect, jacobi_defect};

    #[test]
    fn sign_search_on_solvable_example() {
        let b = catalog::solvable2();
        let mut passing = Vec::new();
        for s1 in [-1, 1] {
            for s2 in [-1, 1] {
                let d = double_algebra_with_signs(&b, (s1, s2)).unwrap();
                let ok = jacobi_defect(&d).is_zero()
                    && cybe_defect(&d, &canonical_r(b.dim())).unwrap().is_zero();
                if ok {
                    passing.push((s1, s2));
                }
            }
        }
        assert_eq!(passing, vec![MIXED_SIGNS]);
    }

    #[test]
    fn abelian_double_is_abelian() {
        let q = drinfeld_double(&catalog::abelian(2)).unwrap();
        assert!(q.alg().is_abelian());
        assert_eq!(q.alg().dim(), 4);
    }

    #[test]
    fn doubles_of_catalog_are_quasitriangular() {
        for b in [catalog::sl2_standard(), catalog::solvable2(), catalog::sl2_zero()] {
            let q = drinfeld_double(&b).unwrap();
            assert!(jacobi_defect(q.alg()).is_zero());
            assert!(cybe_defect(q.alg(), q.r()).unwrap().is_zero());
        }
        assert_eq!(drinfeld_double(&catalog::sl2_standard()).unwrap().alg().dim(), 6);
    }
}
