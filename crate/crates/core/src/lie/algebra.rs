use crate::error::{Error, Result};
use crate::exact::{cyclic_sum3, BasedSpace, LinComb, LinMap, Scalar, Tensor};

/// Vector in a based space, by coordinates.
pub type Vector = LinComb<usize>;

/// Lie algebra given by structure constants `[x_i, x_j] = Σ_k c_ij^k x_k`.
///
/// Antisymmetry of the table is enforced on construction; the Jacobi
/// identity is not, so candidates can be inspected with [`jacobi_defect`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    space: BasedSpace,
    table: Vec<Vector>,
}

impl LieAlgebra {
    /// From entries `(i, j, k, c)` with `i < j`, meaning `[x_i, x_j] ∋ c·x_k`.
    pub fn from_upper(
        space: BasedSpace,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let n = space.dim();
        let mut table = vec![Vector::zero(); n * n];
        for (i, j, k, c) in entries {
            if i >= j || j >= n || k >= n {
                return Err(Error::Invalid(format!("bracket entry ({i},{j},{k}) needs i < j < {n}, k < {n}")));
            }
            table[i * n + j].add_term(k, c.clone());
            table[j * n + i].add_term(k, -c);
        }
        Ok(Self { space, table })
    }

    /// From a full table `table[i][j] = [x_i, x_j]`; rejects non-antisymmetric input.
    pub fn from_full(space: BasedSpace, table: Vec<Vec<Vector>>) -> Result<Self> {
        let n = space.dim();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("bracket table must be n×n".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if table[i][j] != table[j][i].neg() {
                    return Err(Error::NotAntisymmetric);
                }
                if table[i][j].keys().any(|&k| k >= n) {
                    return Err(Error::Shape("bracket value out of range".into()));
                }
            }
        }
        Ok(Self { space, table: table.into_iter().flatten().collect() })
    }

    pub fn abelian(space: BasedSpace) -> Self {
        let n = space.dim();
        Self { space, table: vec![Vector::zero(); n * n] }
    }

    pub fn space(&self) -> &BasedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        x.bilinear(y, |&i, &j| self.bracket_basis(i, j).clone())
    }

    /// Entries `(i, j, k, c)` with `i < j`.
    pub fn upper_entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for (&k, c) in self.bracket_basis(i, j) {
                    out.push((i, j, k, c.clone()));
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vector::is_zero)
    }

    /// `ad_x` as a linear map.
    pub fn ad(&self, x: &Vector) -> LinMap {
        let n = self.dim();
        LinMap::new(n, (0..n).map(|j| self.bracket(x, &Vector::basis(j))).collect())
            .expect("bracket stays in range")
    }

    /// `ad_x` acting on one slot of a tensor over this algebra.
    pub fn ad_slot(&self, x: &Vector, t: &Tensor, slot: usize) -> Result<Tensor> {
        let n = self.dim();
        t.map_slot(slot, n, |i| self.bracket(x, &Vector::basis(i)))
    }

    /// `ad_x` acting diagonally on all slots (`ad_x ⊗ id + id ⊗ ad_x` for 2-tensors).
    pub fn ad_all(&self, x: &Vector, t: &Tensor) -> Result<Tensor> {
        let mut out = Tensor::zero(t.dims().to_vec());
        for s in 0..t.arity() {
            out = out.add(&self.ad_slot(x, t, s)?)?;
        }
        Ok(out)
    }

    /// Defect of `m` being an automorphism: `m[x_i,x_j] - [m x_i, m x_j]` as
    /// a (2→1) table.
    pub fn automorphism_defect(&self, m: &LinMap) -> Result<Tensor> {
        let n = self.dim();
        if m.dim_in() != n || m.dim_out() != n {
            return Err(Error::Shape("automorphism must be n×n".into()));
        }
        let mut out = Tensor::zero_square(n, 3);
        for i in 0..n {
            for j in 0..n {
                let lhs = m.apply(self.bracket_basis(i, j));
                let rhs = self.bracket(m.image(i), m.image(j));
                for (&k, c) in &lhs.minus(&rhs) {
                    out.add_term(vec![i, j, k], c.clone())?;
                }
            }
        }
        Ok(out)
    }

    /// Defect of a linear map `m: self → other` being a Lie morphism.
    pub fn morphism_defect(&self, other: &LieAlgebra, m: &LinMap) -> Result<Tensor> {
        let (n, p) = (self.dim(), other.dim());
        if m.dim_in() != n || m.dim_out() != p {
            return Err(Error::Shape(format!("morphism must be {p}×{n}")));
        }
        let mut out = Tensor::zero(vec![n, n, p]);
        for i in 0..n {
            for j in 0..n {
                let d = m.apply(self.bracket_basis(i, j)).minus(&other.bracket(m.image(i), m.image(j)));
                for (&k, c) in &d {
                    out.add_term(vec![i, j, k], c.clone())?;
                }
            }
        }
        Ok(out)
    }
}

/// `[[x,y],z] + [[y,z],x] + [[z,x],y]` on all basis triples, as a (3→1) table.
pub fn jacobi_defect(l: &LieAlgebra) -> Tensor {
    let n = l.dim();
    let mut out = Tensor::zero_square(n, 4);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (x, y, z) = (Vector::basis(i), Vector::basis(j), Vector::basis(k));
                let s = l
                    .bracket(&l.bracket(&x, &y), &z)
                    .plus(&l.bracket(&l.bracket(&y, &z), &x))
                    .plus(&l.bracket(&l.bracket(&z, &x), &y));
                for (&m, c) in &s {
                    out.add_term(vec![i, j, k, m], c.clone()).expect("in range");
                }
            }
        }
    }
    out
}

/// Lie bialgebra: a Lie algebra with a cobracket `δ(x_i) ∈ 𝔞 ⊗ 𝔞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieBialgebra {
    alg: LieAlgebra,
    cobracket: Vec<Tensor>,
}

impl LieBialgebra {
    /// Builds and verifies all axioms.
    pub fn new(alg: LieAlgebra, cobracket: Vec<Tensor>) -> Result<Self> {
        let b = Self::new_unchecked(alg, cobracket)?;
        b.check()?;
        Ok(b)
    }

    /// Checks only shapes and antisymmetry of the cobracket.
    pub fn new_unchecked(alg: LieAlgebra, cobracket: Vec<Tensor>) -> Result<Self> {
        let n = alg.dim();
        if cobracket.len() != n || cobracket.iter().any(|t| t.dims() != [n, n]) {
            return Err(Error::Shape("cobracket must map each basis vector to 𝔞⊗𝔞".into()));
        }
        if cobracket.iter().any(|t| !t.is_zero() && !t.is_antisymmetric()) {
            return Err(Error::NotAntisymmetric);
        }
        Ok(Self { alg, cobracket })
    }

    /// From entries `(i, j, k, c)` with `j < k`, meaning `δ(x_i) ∋ c·x_j∧x_k`.
    pub fn from_upper_cobracket(
        alg: LieAlgebra,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let n = alg.dim();
        let mut cob = vec![Tensor::zero_square(n, 2); n];
        for (i, j, k, c) in entries {
            if j >= k || k >= n || i >= n {
                return Err(Error::Invalid(format!("cobracket entry ({i},{j},{k}) needs j < k < {n}, i < {n}")));
            }
            cob[i].add_term(vec![j, k], c.clone())?;
            cob[i].add_term(vec![k, j], -c)?;
        }
        Self::new_unchecked(alg, cob)
    }

    pub fn with_zero_cobracket(alg: LieAlgebra) -> Self {
        let n = alg.dim();
        Self { alg, cobracket: vec![Tensor::zero_square(n, 2); n] }
    }

    pub fn alg(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn cobracket(&self) -> &[Tensor] {
        &self.cobracket
    }

    pub fn delta(&self, x: &Vector) -> Tensor {
        let n = self.dim();
        let mut out = Tensor::zero_square(n, 2);
        for (&i, c) in x {
            out = out.add(&self.cobracket[i].scale(c)).expect("same shape");
        }
        out
    }

    /// Entries `(i, j, k, c)` with `j < k`.
    pub fn upper_cobracket_entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (i, t) in self.cobracket.iter().enumerate() {
            for (idx, c) in t.iter() {
                if idx[0] < idx[1] {
                    out.push((i, idx[0], idx[1], c.clone()));
                }
            }
        }
        out
    }

    /// Jacobi, co-Jacobi and cocycle defects must all vanish.
    pub fn check(&self) -> Result<()> {
        if !jacobi_defect(&self.alg).is_zero() {
            return Err(Error::Axiom("Jacobi identity fails".into()));
        }
        if !cojacobi_defect(&self.cobracket)?.is_zero() {
            return Err(Error::Axiom("co-Jacobi identity fails".into()));
        }
        if !cocycle_defect(&self.alg, &self.cobracket)?.is_zero() {
            return Err(Error::Axiom("cobracket is not a 1-cocycle".into()));
        }
        Ok(())
    }

    /// Same algebra with the cobracket replaced.
    pub fn with_cobracket(&self, cobracket: Vec<Tensor>) -> Result<Self> {
        Self::new_unchecked(self.alg.clone(), cobracket)
    }

    /// `(𝔞, μ, -δ)`.
    pub fn co_opposite(&self) -> Self {
        Self { alg: self.alg.clone(), cobracket: self.cobracket.iter().map(Tensor::neg).collect() }
    }

    /// Dual bialgebra `(𝔞*, δᵗ, μᵗ)` on the dual basis.
    pub fn dual(&self) -> Result<Self> {
        let n = self.dim();
        let labels: Vec<String> = self.alg.space().labels().iter().map(|l| format!("{l}*")).collect();
        let space = BasedSpace::new(labels)?;
        let mut table = vec![vec![Vector::zero(); n]; n];
        for (k, t) in self.cobracket.iter().enumerate() {
            for (idx, c) in t.iter() {
                table[idx[0]][idx[1]].add_term(k, c.clone());
            }
        }
        let alg = LieAlgebra::from_full(space, table)?;
        let mut cob = vec![Tensor::zero_square(n, 2); n];
        for i in 0..n {
            for j in 0..n {
                for (&k, c) in self.alg.bracket_basis(i, j) {
                    cob[k].add_term(vec![i, j], c.clone())?;
                }
            }
        }
        Self::new_unchecked(alg, cob)
    }
}

/// `cyclic_sum3((δ⊗id)∘δ)` on each basis vector, as a (1→3) table.
pub fn cojacobi_defect(cobracket: &[Tensor]) -> Result<Tensor> {
    let n = cobracket.len();
    if cobracket.iter().any(|t| t.dims() != [n, n]) {
        return Err(Error::Shape("cobracket must map each basis vector to 𝔞⊗𝔞".into()));
    }
    let mut out = Tensor::zero_square(n, 4);
    for (i, d) in cobracket.iter().enumerate() {
        let mut t = Tensor::zero_square(n, 3);
        for (ab, c) in d.iter() {
            for (pq, c2) in cobracket[ab[0]].iter() {
                t.add_term(vec![pq[0], pq[1], ab[1]], c * c2)?;
            }
        }
        for (idx, c) in cyclic_sum3(&t)?.iter() {
            let mut k = vec![i];
            k.extend_from_slice(idx);
            out.add_term(k, c.clone())?;
        }
    }
    Ok(out)
}

/// `δ([x,y]) - ad_x δ(y) + ad_y δ(x)` on basis pairs, as a (2→2) table.
pub fn cocycle_defect(alg: &LieAlgebra, cobracket: &[Tensor]) -> Result<Tensor> {
    let n = alg.dim();
    if cobracket.len() != n {
        return Err(Error::Shape("cobracket dimension mismatch".into()));
    }
    let delta = |v: &Vector| -> Tensor {
        let mut out = Tensor::zero_square(n, 2);
        for (&i, c) in v {
            out = out.add(&cobracket[i].scale(c)).expect("same shape");
        }
        out
    };
    let mut out = Tensor::zero_square(n, 4);
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (Vector::basis(i), Vector::basis(j));
            let d = delta(alg.bracket_basis(i, j))
                .sub(&alg.ad_all(&x, &cobracket[j])?)?
                .add(&alg.ad_all(&y, &cobracket[i])?)?;
            for (idx, c) in d.iter() {
                out.add_term(vec![i, j, idx[0], idx[1]], c.clone())?;
            }
        }
    }
    Ok(out)
}

fn check_square2(alg: &LieAlgebra, r: &Tensor) -> Result<()> {
    let n = alg.dim();
    if r.dims() != [n, n] {
        return Err(Error::Shape(format!("expected a 2-tensor over a {n}-dimensional algebra")));
    }
    Ok(())
}

/// `[r12,r13] + [r12,r23] + [r13,r23]` in `𝔞^{⊗3}`.
pub fn cybe_defect(alg: &LieAlgebra, r: &Tensor) -> Result<Tensor> {
    check_square2(alg, r)?;
    let n = alg.dim();
    let mut out = Tensor::zero_square(n, 3);
    for (ab, c1) in r.iter() {
        for (cd, c2) in r.iter() {
            let c = c1 * c2;
            let (a, b, cc, d) = (ab[0], ab[1], cd[0], cd[1]);
            for (&k, v) in alg.bracket_basis(a, cc) {
                out.add_term(vec![k, b, d], &c * v)?;
            }
            for (&k, v) in alg.bracket_basis(b, cc) {
                out.add_term(vec![a, k, d], &c * v)?;
            }
            for (&k, v) in alg.bracket_basis(b, d) {
                out.add_term(vec![a, cc, k], &c * v)?;
            }
        }
    }
    Ok(out)
}

/// `ad_{x_i}(t)` for each basis vector, as a (1→2) table.
pub fn invariance_defect(alg: &LieAlgebra, t: &Tensor) -> Result<Tensor> {
    check_square2(alg, t)?;
    let n = alg.dim();
    let mut out = Tensor::zero_square(n, 3);
    for i in 0..n {
        for (idx, c) in alg.ad_all(&Vector::basis(i), t)?.iter() {
            out.add_term(vec![i, idx[0], idx[1]], c.clone())?;
        }
    }
    Ok(out)
}

/// `x ↦ [r, x⊗1 + 1⊗x]` on each basis vector.
pub fn coboundary_cobracket(alg: &LieAlgebra, r: &Tensor) -> Result<Vec<Tensor>> {
    check_square2(alg, r)?;
    (0..alg.dim())
        .map(|i| Ok(alg.ad_all(&Vector::basis(i), r)?.neg()))
        .collect()
}
