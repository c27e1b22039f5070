use crate::error::{Error, Result};
use crate::exact::Tensor;

use super::{coboundary_cobracket, cybe_defect, invariance_defect, LieAlgebra, LieBialgebra};

/// A Lie algebra with `r ∈ 𝔞⊗𝔞` satisfying the classical Yang-Baxter
/// equation and with `t = r + r²¹` invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasitriangularData {
    alg: LieAlgebra,
    r: Tensor,
}

impl QuasitriangularData {
    pub fn new(alg: LieAlgebra, r: Tensor) -> Result<Self> {
        if !cybe_defect(&alg, &r)?.is_zero() {
            return Err(Error::Axiom("r does not satisfy the classical Yang-Baxter equation".into()));
        }
        let q = Self { alg, r };
        if !invariance_defect(&q.alg, &q.t())?.is_zero() {
            return Err(Error::Axiom("r + r21 is not invariant".into()));
        }
        Ok(q)
    }

    pub fn alg(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn r(&self) -> &Tensor {
        &self.r
    }

    /// Symmetric part `t = r + r²¹`.
    pub fn t(&self) -> Tensor {
        self.r.add(&self.r.swap().expect("2-tensor")).expect("same shape")
    }

    /// The coboundary Lie bialgebra `δ(x) = [r, x⊗1 + 1⊗x]`.
    pub fn bialgebra(&self) -> LieBialgebra {
        let cob = coboundary_cobracket(&self.alg, &self.r).expect("shape checked");
        LieBialgebra::new_unchecked(self.alg.clone(), cob).expect("coboundary of r is antisymmetric")
    }
}
