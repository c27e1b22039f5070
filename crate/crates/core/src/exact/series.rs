use num_traits::Zero;

use super::Scalar;
use crate::error::{Error, Result};

/// Values that can be added and scaled; the coefficient type of an [`HSeries`].
pub trait Additive: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn scale_ref(&self, c: &Scalar) -> Self;
    fn is_zero_value(&self) -> bool;
}

impl Additive for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn scale_ref(&self, c: &Scalar) -> Self {
        self * c
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

/// Polynomial in ℏ truncated after order `N`: coefficients `c_0 ..= c_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Additive> HSeries<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Shape("series needs an order-0 coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    /// `c_0` followed by zeros up to order `n`.
    pub fn constant(c0: T, n: usize) -> Self {
        let z = c0.zero_like();
        let mut coeffs = vec![c0];
        coeffs.resize(n + 1, z);
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }

    pub fn coeff_mut(&mut self, k: usize) -> &mut T {
        &mut self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Additive::is_zero_value)
    }

    /// Lowest order with a nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero_value())
    }

    pub fn map<U: Additive>(&self, f: impl FnMut(&T) -> U) -> HSeries<U> {
        HSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_assign_ref(b);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_assign_ref(&b.scale_ref(&-num_traits::one::<Scalar>()));
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map(|a| a.scale_ref(c))
    }

    /// Same coefficients cut (or zero-padded) to order `n`.
    pub fn truncate(&self, n: usize) -> Self {
        let z = self.coeffs[0].zero_like();
        let mut coeffs: Vec<T> = self.coeffs.iter().take(n + 1).cloned().collect();
        coeffs.resize(n + 1, z);
        Self { coeffs }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::Shape(format!(
                "series orders differ: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    /// Cauchy product truncated at the common order.
    pub fn mul_with<U: Additive, V: Additive>(
        &self,
        other: &HSeries<U>,
        mult: impl Fn(&T, &U) -> V,
    ) -> Result<HSeries<V>> {
        if self.order() != other.order() {
            return Err(Error::Shape(format!(
                "series orders differ: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        let n = self.order();
        let mut coeffs: Vec<V> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc: Option<V> = None;
            for a in 0..=k {
                let (x, y) = (&self.coeffs[a], &other.coeffs[k - a]);
                if x.is_zero_value() || y.is_zero_value() {
                    continue;
                }
                let term = mult(x, y);
                match acc.as_mut() {
                    Some(s) => s.add_assign_ref(&term),
                    None => acc = Some(term),
                }
            }
            let term = match acc {
                Some(s) => s,
                None => mult(&self.coeffs[0], &other.coeffs[0]).zero_like(),
            };
            coeffs.push(term);
        }
        Ok(HSeries { coeffs })
    }

    /// Inverse for a product whose order-0 coefficient is `unit`.
    ///
    /// Solved order by order: `b_k = -Σ_{j=1..k} a_j · b_{k-j}`.
    pub fn inverse_with(&self, mult: impl Fn(&T, &T) -> T, unit: &T) -> Result<Self> {
        if self.coeffs[0] != *unit {
            return Err(Error::NotInvertible);
        }
        let n = self.order();
        let mut inv: Vec<T> = vec![unit.clone()];
        for k in 1..=n {
            let mut acc = unit.zero_like();
            for j in 1..=k {
                if self.coeffs[j].is_zero_value() || inv[k - j].is_zero_value() {
                    continue;
                }
                acc.add_assign_ref(&mult(&self.coeffs[j], &inv[k - j]));
            }
            inv.push(acc.scale_ref(&-num_traits::one::<Scalar>()));
        }
        Ok(Self { coeffs: inv })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi, LinComb};
    use proptest::prelude::*;

    // Noncommutative words as keys: product is concatenation.
    type Word = LinComb<Vec<u8>>;

    fn w(s: &[u8]) -> Word {
        LinComb::basis(s.to_vec())
    }

    fn concat(a: &Word, b: &Word) -> Word {
        a.bilinear(b, |x, y| {
            let mut z = x.clone();
            z.extend_from_slice(y);
            LinComb::basis(z)
        })
    }

    fn one() -> Word {
        w(&[])
    }

    #[test]
    fn telescoping_product() {
        let a = HSeries::new(vec![one(), w(b"a"), Word::zero()]).unwrap();
        let b = HSeries::new(vec![one(), w(b"a").neg(), Word::zero()]).unwrap();
        let p = a.mul_with(&b, concat).unwrap();
        assert_eq!(p.coeffs(), &[one(), Word::zero(), w(b"aa").neg()]);
    }

    #[test]
    fn unit_and_truncation() {
        let a = HSeries::new(vec![one(), w(b"a")]).unwrap();
        let b = HSeries::new(vec![one(), w(b"b")]).unwrap();
        let u = HSeries::constant(one(), 1);
        assert_eq!(a.mul_with(&u, concat).unwrap(), a);
        let p = a.mul_with(&b, concat).unwrap();
        assert_eq!(p.coeffs(), &[one(), w(b"a").plus(&w(b"b"))]);
    }

    #[test]
    fn geometric_inverse() {
        let a = HSeries::new(vec![one(), w(b"a"), Word::zero()]).unwrap();
        let inv = a.inverse_with(concat, &one()).unwrap();
        assert_eq!(inv.coeffs(), &[one(), w(b"a").neg(), w(b"aa")]);
        let u = HSeries::constant(one(), 2);
        assert_eq!(u.inverse_with(concat, &one()).unwrap(), u);
    }

    #[test]
    fn inverse_with_second_order_term() {
        // (1 + ℏa + ℏ²b)^{-1} = 1 - ℏa + ℏ²(a² - b)
        let a = HSeries::new(vec![one(), w(b"a"), w(b"b")]).unwrap();
        let inv = a.inverse_with(concat, &one()).unwrap();
        assert_eq!(inv.coeffs(), &[one(), w(b"a").neg(), w(b"aa").minus(&w(b"b"))]);
    }

    #[test]
    fn non_unit_leading_term_is_rejected() {
        let a = HSeries::new(vec![qi(2), qi(1)]).unwrap();
        assert_eq!(a.inverse_with(|x, y| x * y, &qi(1)), Err(Error::NotInvertible));
    }

    fn word_series() -> impl Strategy<Value = HSeries<Word>> {
        proptest::collection::vec(
            proptest::collection::vec((proptest::collection::vec(0u8..3, 0..3), -3i64..4), 0..3),
            3,
        )
        .prop_map(|cs| {
            let mut coeffs: Vec<Word> = cs
                .into_iter()
                .map(|ts| ts.into_iter().map(|(k, c)| (k, q(c, 1))).collect())
                .collect();
            coeffs[0] = one();
            HSeries::new(coeffs).unwrap()
        })
    }

    proptest! {
        #[test]
        fn inverse_times_series_is_unit(a in word_series()) {
            let inv = a.inverse_with(concat, &one()).unwrap();
            let u = HSeries::constant(one(), a.order());
            prop_assert_eq!(inv.mul_with(&a, concat).unwrap(), u.clone());
            prop_assert_eq!(a.mul_with(&inv, concat).unwrap(), u);
        }

        #[test]
        fn product_is_associative(a in word_series(), b in word_series(), c in word_series()) {
            let l = a.mul_with(&b, concat).unwrap().mul_with(&c, concat).unwrap();
            let r = a.mul_with(&b.mul_with(&c, concat).unwrap(), concat).unwrap();
            prop_assert_eq!(l, r);
        }
    }
}
