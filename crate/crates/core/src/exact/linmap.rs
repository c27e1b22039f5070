use num_traits::{One, Zero};

use super::{LinComb, Scalar};
use crate::error::{Error, Result};

/// Linear map between based spaces, stored by the images of basis vectors
/// (column convention: `images[j]` is the image of the j-th basis vector).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinMap {
    dim_out: usize,
    images: Vec<LinComb<usize>>,
}

impl LinMap {
    pub fn new(dim_out: usize, images: Vec<LinComb<usize>>) -> Result<Self> {
        if images.iter().any(|v| v.keys().any(|&k| k >= dim_out)) {
            return Err(Error::Shape("image index out of range".into()));
        }
        Ok(Self { dim_out, images })
    }

    pub fn identity(n: usize) -> Self {
        Self { dim_out: n, images: (0..n).map(LinComb::basis).collect() }
    }

    pub fn zero(dim_in: usize, dim_out: usize) -> Self {
        Self { dim_out, images: vec![LinComb::zero(); dim_in] }
    }

    /// From a dense matrix `m[row][col]` acting on coordinate columns.
    pub fn from_matrix(m: &[Vec<Scalar>]) -> Result<Self> {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        if m.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged matrix".into()));
        }
        let images = (0..cols)
            .map(|j| (0..rows).map(|i| (i, m[i][j].clone())).collect())
            .collect();
        Ok(Self { dim_out: rows, images })
    }

    pub fn to_matrix(&self) -> Vec<Vec<Scalar>> {
        let mut m = vec![vec![Scalar::zero(); self.dim_in()]; self.dim_out];
        for (j, img) in self.images.iter().enumerate() {
            for (&i, c) in img {
                m[i][j] = c.clone();
            }
        }
        m
    }

    pub fn dim_in(&self) -> usize {
        self.images.len()
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn image(&self, j: usize) -> &LinComb<usize> {
        &self.images[j]
    }

    pub fn apply(&self, v: &LinComb<usize>) -> LinComb<usize> {
        v.map_linear(|&j| self.images[j].clone())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinMap) -> Result<LinMap> {
        if other.dim_out != self.dim_in() {
            return Err(Error::Shape("composition of incompatible maps".into()));
        }
        Ok(LinMap { dim_out: self.dim_out, images: other.images.iter().map(|v| self.apply(v)).collect() })
    }

    pub fn is_identity(&self) -> bool {
        self.dim_in() == self.dim_out && *self == LinMap::identity(self.dim_out)
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<LinMap> {
        let n = self.dim_out;
        if self.dim_in() != n {
            return None;
        }
        let mut a = self.to_matrix();
        let mut inv: Vec<Vec<Scalar>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, p);
            inv.swap(col, p);
            let f = Scalar::one() / &a[col][col];
            for j in 0..n {
                a[col][j] = &a[col][j] * &f;
                inv[col][j] = &inv[col][j] * &f;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let g = a[r][col].clone();
                    for j in 0..n {
                        let (x, y) = (&a[col][j] * &g, &inv[col][j] * &g);
                        a[r][j] -= x;
                        inv[r][j] -= y;
                    }
                }
            }
        }
        LinMap::from_matrix(&inv).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qi;

    #[test]
    fn inverse_and_compose() {
        let m = LinMap::from_matrix(&[vec![qi(2), qi(1)], vec![qi(1), qi(1)]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.compose(&inv).unwrap().is_identity());
        let s = LinMap::from_matrix(&[vec![qi(1), qi(2)], vec![qi(2), qi(4)]]).unwrap();
        assert!(s.inverse().is_none());
    }
}
