use std::fmt;

use num_traits::One;

use super::{format_scalar, LinComb, Scalar};
use crate::error::{Error, Result};

/// Sparse element of `V_1 ⊗ ... ⊗ V_k` in coordinates.
///
/// Keys are index tuples in lexicographic order; zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tensor {
    dims: Vec<usize>,
    coeffs: LinComb<Vec<usize>>,
}

impl Tensor {
    pub fn zero(dims: Vec<usize>) -> Self {
        Self { dims, coeffs: LinComb::zero() }
    }

    /// Zero tensor of arity `k` over a single space of dimension `n`.
    pub fn zero_square(n: usize, k: usize) -> Self {
        Self::zero(vec![n; k])
    }

    pub fn from_terms(
        dims: Vec<usize>,
        terms: impl IntoIterator<Item = (Vec<usize>, Scalar)>,
    ) -> Result<Self> {
        let mut t = Self::zero(dims);
        for (idx, c) in terms {
            t.add_term(idx, c)?;
        }
        Ok(t)
    }

    /// Pure tensor `x_{i_1} ⊗ ... ⊗ x_{i_k}` with coefficient one.
    pub fn basis(dims: Vec<usize>, idx: Vec<usize>) -> Result<Self> {
        Self::from_terms(dims, [(idx, Scalar::one())])
    }

    pub fn arity(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn add_term(&mut self, idx: Vec<usize>, c: Scalar) -> Result<()> {
        if idx.len() != self.dims.len() {
            return Err(Error::Arity { expected: self.dims.len(), got: idx.len() });
        }
        if let Some((slot, _)) = idx.iter().zip(&self.dims).enumerate().find(|(_, (i, d))| i >= d) {
            return Err(Error::Shape(format!("index out of range in slot {slot}: {idx:?}")));
        }
        self.coeffs.add_term(idx, c);
        Ok(())
    }

    pub fn coeff(&self, idx: &[usize]) -> Scalar {
        self.coeffs.coeff(&idx.to_vec())
    }

    pub fn terms(&self) -> &LinComb<Vec<usize>> {
        &self.coeffs
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.dims != other.dims {
            return Err(Error::Shape(format!("{:?} vs {:?}", self.dims, other.dims)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self { dims: self.dims.clone(), coeffs: self.coeffs.plus(&other.coeffs) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self { dims: self.dims.clone(), coeffs: self.coeffs.minus(&other.coeffs) })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self { dims: self.dims.clone(), coeffs: self.coeffs.scaled(c) }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    /// `self ⊗ other`.
    pub fn outer(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let coeffs = self.coeffs.bilinear(&other.coeffs, |a, b| {
            let mut k = a.clone();
            k.extend_from_slice(b);
            LinComb::basis(k)
        });
        Self { dims, coeffs }
    }

    /// Applies a linear map to one slot. `map(i)` is the image of the i-th
    /// basis vector of that slot, as a vector in a space of dimension `new_dim`.
    pub fn map_slot(
        &self,
        slot: usize,
        new_dim: usize,
        map: impl Fn(usize) -> LinComb<usize>,
    ) -> Result<Self> {
        if slot >= self.arity() {
            return Err(Error::Arity { expected: slot + 1, got: self.arity() });
        }
        let mut dims = self.dims.clone();
        dims[slot] = new_dim;
        let coeffs = self.coeffs.map_linear(|idx| {
            map(idx[slot]).map_keys(|&j| {
                let mut k = idx.clone();
                k[slot] = j;
                k
            })
        });
        Ok(Self { dims, coeffs })
    }

    /// Swap of a 2-tensor: `a ⊗ b ↦ b ⊗ a`.
    pub fn swap(&self) -> Result<Self> {
        tensor_permute(self, &[1, 0])
    }

    /// Whether `swap(self) = -self`.
    pub fn is_antisymmetric(&self) -> bool {
        self.arity() == 2
            && self.dims[0] == self.dims[1]
            && self.swap().map(|s| s == self.neg()).unwrap_or(false)
    }

    pub fn is_symmetric(&self) -> bool {
        self.arity() == 2 && self.swap().map(|s| &s == self).unwrap_or(false)
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(idx, c)| {
                let idx: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
                format!("{}·[{}]", format_scalar(c), idx.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Moves the factor in slot `p` to slot `sigma[p]`.
///
/// This is a left action: permuting by `sigma` then by `tau` equals permuting
/// by `tau ∘ sigma`.
pub fn tensor_permute(t: &Tensor, sigma: &[usize]) -> Result<Tensor> {
    let k = t.arity();
    if sigma.len() != k {
        return Err(Error::Arity { expected: k, got: sigma.len() });
    }
    let mut seen = vec![false; k];
    for &s in sigma {
        if s >= k || seen[s] {
            return Err(Error::Permutation(sigma.to_vec()));
        }
        seen[s] = true;
    }
    let mut dims = vec![0; k];
    for p in 0..k {
        dims[sigma[p]] = t.dims[p];
    }
    let coeffs = t.coeffs.map_keys(|idx| {
        let mut out = vec![0; k];
        for p in 0..k {
            out[sigma[p]] = idx[p];
        }
        out
    });
    Ok(Tensor { dims, coeffs })
}

/// `T + P(T) + P²(T)` for the cyclic slot rotation `P`.
pub fn cyclic_sum3(t: &Tensor) -> Result<Tensor> {
    if t.arity() != 3 {
        return Err(Error::Arity { expected: 3, got: t.arity() });
    }
    if t.dims[0] != t.dims[1] || t.dims[1] != t.dims[2] {
        return Err(Error::Shape("cyclic sum needs equal slots".into()));
    }
    let p1 = tensor_permute(t, &[1, 2, 0])?;
    let p2 = tensor_permute(t, &[2, 0, 1])?;
    t.add(&p1)?.add(&p2)
}

/// `T - swap(T)`: the embedding `x ∧ y ↦ x ⊗ y - y ⊗ x`.
pub fn alt2(t: &Tensor) -> Result<Tensor> {
    if t.arity() != 2 {
        return Err(Error::Arity { expected: 2, got: t.arity() });
    }
    if t.dims[0] != t.dims[1] {
        return Err(Error::Shape("alt2 needs equal slots".into()));
    }
    t.sub(&t.swap()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};
    use proptest::prelude::*;

    fn t(idx: &[usize]) -> Tensor {
        Tensor::basis(vec![3; idx.len()], idx.to_vec()).unwrap()
    }

    const E: usize = 0;
    const F: usize = 1;
    const H: usize = 2;

    #[test]
    fn swap_and_identity() {
        assert_eq!(tensor_permute(&t(&[E, F]), &[1, 0]).unwrap(), t(&[F, E]));
        let x = t(&[E, H]).add(&t(&[F, F]).scale(&q(3, 2))).unwrap();
        assert_eq!(tensor_permute(&x, &[0, 1]).unwrap(), x);
    }

    #[test]
    fn three_cycle_relabels_slots() {
        // cycle (123): slot 1 → 2, 2 → 3, 3 → 1
        assert_eq!(tensor_permute(&t(&[E, F, H]), &[1, 2, 0]).unwrap(), t(&[H, E, F]));
    }

    #[test]
    fn permutation_errors() {
        assert!(matches!(tensor_permute(&t(&[E, F]), &[0]), Err(Error::Arity { .. })));
        assert!(matches!(tensor_permute(&t(&[E, F]), &[1, 1]), Err(Error::Permutation(_))));
        assert!(cyclic_sum3(&t(&[E, F])).is_err());
        assert!(alt2(&t(&[E, F, H])).is_err());
    }

    #[test]
    fn cyclic_sum_examples() {
        assert!(cyclic_sum3(&Tensor::zero_square(3, 3)).unwrap().is_zero());
        let sym = cyclic_sum3(&t(&[E, F, H])).unwrap();
        assert_eq!(cyclic_sum3(&sym).unwrap(), sym.scale(&qi(3)));
        let expected = t(&[E, F, H]).add(&t(&[F, H, E])).unwrap().add(&t(&[H, E, F])).unwrap();
        assert_eq!(sym, expected);
    }

    #[test]
    fn alt2_examples() {
        assert_eq!(alt2(&t(&[E, F])).unwrap(), t(&[E, F]).sub(&t(&[F, E])).unwrap());
        let s = t(&[E, F]).add(&t(&[F, E])).unwrap();
        assert!(alt2(&s).unwrap().is_zero());
        let a = alt2(&t(&[E, H])).unwrap();
        assert_eq!(alt2(&a).unwrap(), a.scale(&qi(2)));
    }

    fn tensor3() -> impl Strategy<Value = Tensor> {
        proptest::collection::vec(((0usize..3, 0usize..3, 0usize..3), -4i64..5), 0..6).prop_map(|ts| {
            Tensor::from_terms(vec![3; 3], ts.into_iter().map(|((a, b, c), v)| (vec![a, b, c], qi(v))))
                .unwrap()
        })
    }

    fn perm3() -> impl Strategy<Value = Vec<usize>> {
        Just(vec![0usize, 1, 2]).prop_shuffle()
    }

    proptest! {
        #[test]
        fn permute_is_group_action(x in tensor3(), s in perm3(), u in perm3()) {
            let lhs = tensor_permute(&tensor_permute(&x, &s).unwrap(), &u).unwrap();
            let comp: Vec<usize> = (0..3).map(|p| u[s[p]]).collect();
            prop_assert_eq!(lhs, tensor_permute(&x, &comp).unwrap());
        }

        #[test]
        fn alt2_is_antisymmetric(ts in proptest::collection::vec(((0usize..3, 0usize..3), -4i64..5), 0..6)) {
            let x = Tensor::from_terms(vec![3, 3], ts.into_iter().map(|((a, b), v)| (vec![a, b], qi(v)))).unwrap();
            let a = alt2(&x).unwrap();
            prop_assert_eq!(a.swap().unwrap(), a.neg());
        }
    }
}
