//! Classical twists: the twist equation, twisting of cobrackets, composition
//! of twists and the induced isomorphism of Drinfeld doubles.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{cyclic_sum3, lin_solve, LinComb, LinMap, LinSystem, Scalar, SolveOutcome, Tensor};
use crate::lie::{drinfeld_double, LieAlgebra, LieBialgebra, Vector};

/// `[f¹³, f²³]` for a 2-tensor `f`.
fn bracket_13_23(alg: &LieAlgebra, f: &Tensor) -> Result<Tensor> {
    let n = alg.dim();
    let mut out = Tensor::zero_square(n, 3);
    for (ab, c1) in f.iter() {
        for (cd, c2) in f.iter() {
            for (&k, v) in alg.bracket_basis(ab[1], cd[1]) {
                out.add_term(vec![ab[0], cd[0], k], c1 * c2 * v)?;
            }
        }
    }
    Ok(out)
}

fn check_twist_shape(b: &LieBialgebra, f: &Tensor) -> Result<()> {
    let n = b.dim();
    if f.dims() != [n, n] {
        return Err(Error::Shape(format!("twist must be a 2-tensor over a {n}-dimensional algebra")));
    }
    if !f.is_zero() && !f.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    Ok(())
}

/// Cyclic sum of `(δ⊗id)(f) + [f¹³, f²³]`; zero iff `f` is a twist.
pub fn twist_defect(b: &LieBialgebra, f: &Tensor) -> Result<Tensor> {
    check_twist_shape(b, f)?;
    let n = b.dim();
    let mut t = bracket_13_23(b.alg(), f)?;
    for (ab, c) in f.iter() {
        for (pq, c2) in b.cobracket()[ab[0]].iter() {
            t.add_term(vec![pq[0], pq[1], ab[1]], c * c2)?;
        }
    }
    debug_assert_eq!(t.dims(), [n, n, n]);
    cyclic_sum3(&t)
}

/// `ad(f)(x_i) = [f, x_i⊗1 + 1⊗x_i]` for each basis vector.
pub fn ad_twist(alg: &LieAlgebra, f: &Tensor) -> Result<Vec<Tensor>> {
    (0..alg.dim()).map(|i| Ok(alg.ad_all(&Vector::basis(i), f)?.neg())).collect()
}

/// A verified twist of a Lie bialgebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Twist {
    f: Tensor,
}

impl Twist {
    pub fn new(b: &LieBialgebra, f: Tensor) -> Result<Self> {
        if !twist_defect(b, &f)?.is_zero() {
            return Err(Error::Axiom("twist equation fails".into()));
        }
        Ok(Self { f })
    }

    pub fn tensor(&self) -> &Tensor {
        &self.f
    }
}

/// `(𝔞, μ, δ + ad(f))`, refusing tensors that are not twists.
pub fn twist(b: &LieBialgebra, f: &Tensor) -> Result<LieBialgebra> {
    if !twist_defect(b, f)?.is_zero() {
        return Err(Error::Axiom("twist equation fails".into()));
    }
    twist_unchecked(b, f)
}

/// `(𝔞, μ, δ + ad(f))` without checking the twist equation.
pub fn twist_unchecked(b: &LieBialgebra, f: &Tensor) -> Result<LieBialgebra> {
    let ad = ad_twist(b.alg(), f)?;
    let cob = b.cobracket().iter().zip(&ad).map(|(d, a)| d.add(a)).collect::<Result<Vec<_>>>()?;
    b.with_cobracket(cob)
}

/// A composition of twists: `f` twists `𝔞` and `f′` twists `𝔞_f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistPair {
    pub first: Tensor,
    pub second: Tensor,
}

impl TwistPair {
    pub fn sum(&self) -> Tensor {
        self.first.add(&self.second).expect("same shape")
    }
}

/// Checks that `f′` twists `𝔞_f` and re-verifies that `f + f′` twists `𝔞`.
///
/// A failure of the second check is reported as [`Error::Internal`], since
/// it cannot happen when the first holds.
pub fn compose_twists(b: &LieBialgebra, f: &Tensor, f2: &Tensor) -> Result<TwistPair> {
    let bf = twist(b, f)?;
    if !twist_defect(&bf, f2)?.is_zero() {
        return Err(Error::Invalid("second tensor is not a twist of the twisted bialgebra".into()));
    }
    let sum = f.add(f2)?;
    if !twist_defect(b, &sum)?.is_zero() {
        return Err(Error::Internal("sum of composable twists fails the twist equation".into()));
    }
    Ok(TwistPair { first: f.clone(), second: f2.clone() })
}

/// Defect of `m: D(𝔞) → D(𝔞_f)` intertwining the two double brackets.
pub fn intertwining_defect(src: &LieAlgebra, dst: &LieAlgebra, m: &LinMap) -> Result<Tensor> {
    src.morphism_defect(dst, m)
}

/// Lie algebra isomorphism `D(𝔞) → D(𝔞_f)` that is the identity on `𝔞` and
/// `ξ ↦ ξ + B(ξ)` on `𝔞*`, with `B: 𝔞* → 𝔞` solved from the intertwining
/// equations on mixed pairs and then verified on all pairs.
///
/// Free directions of the solution space are resolved towards the plain
/// contraction `f♯`.
pub fn double_twist_iso(b: &LieBialgebra, f: &Tensor) -> Result<LinMap> {
    let bf = twist(b, f)?;
    let d = drinfeld_double(b)?;
    let df = drinfeld_double(&bf)?;
    let (src, dst) = (d.alg(), df.alg());
    let n = b.dim();
    // unknown B(ξ^j) = Σ_k u[j*n + k] x_k
    let var = |j: usize, k: usize| j * n + k;
    let mut sys = LinSystem::new(n * n);
    // For x_i, ξ^j: M[x_i, ξ^j]_D = [x_i, ξ^j + Bξ^j]_{D_f}.
    // M(v) = v + B(v restricted to 𝔞*).
    for i in 0..n {
        for j in 0..n {
            let lhs = src.bracket_basis(i, n + j);
            // collect coefficients per output basis vector p of D
            let mut rows: std::collections::BTreeMap<usize, (LinComb<usize>, Scalar)> = Default::default();
            let mut add = |p: usize, col: Option<usize>, c: Scalar| {
                let e = rows.entry(p).or_insert_with(|| (LinComb::zero(), Scalar::zero()));
                match col {
                    Some(col) => e.0.add_term(col, c),
                    None => e.1 += c,
                }
            };
            // left side: lhs + B(lhs|𝔞*), unknown part moves to the matrix
            for (&p, c) in lhs {
                add(p, None, c.clone());
                if p >= n {
                    for k in 0..n {
                        add(k, Some(var(p - n, k)), -c.clone());
                    }
                }
            }
            // right side: [x_i, ξ^j]_{D_f} + Σ_k u_{jk} [x_i, x_k]
            for (&p, c) in dst.bracket_basis(i, n + j) {
                add(p, None, -c.clone());
            }
            for k in 0..n {
                for (&p, c) in dst.bracket_basis(i, k) {
                    add(p, Some(var(j, k)), c.clone());
                }
            }
            for (_, (row, mut rhs)) in rows {
                for (&col, a) in row.iter() {
                    rhs -= a * f.coeff(&[col / n, col % n]);
                }
                sys.push_row(row.iter().map(|(&c, v)| (c, v.clone())), rhs)?;
            }
        }
    }
    let u = match lin_solve(&sys) {
        SolveOutcome::Solution(u) => u,
        SolveOutcome::Inconsistent(_) => {
            return Err(Error::Internal("double intertwining system is inconsistent".into()))
        }
    };
    let mut images: Vec<LinComb<usize>> = (0..n).map(LinComb::basis).collect();
    for j in 0..n {
        let mut v = LinComb::basis(n + j);
        for k in 0..n {
            v.add_term(k, &u[var(j, k)] + f.coeff(&[j, k]));
        }
        images.push(v);
    }
    let m = LinMap::new(2 * n, images)?;
    if !intertwining_defect(src, dst, &m)?.is_zero() {
        return Err(Error::Internal("solved double isomorphism fails to intertwine".into()));
    }
    Ok(m)
}

/// `ξ ↦ ξ + s·f♯(ξ)` with `f♯(ξ^j) = Σ_k f^{jk} x_k`, identity on `𝔞`.
pub fn contraction_map(f: &Tensor, s: &Scalar) -> LinMap {
    let n = f.dims()[0];
    let mut images: Vec<LinComb<usize>> = (0..n).map(LinComb::basis).collect();
    for j in 0..n {
        let mut v = LinComb::basis(n + j);
        for k in 0..n {
            v.add_term(k, s * f.coeff(&[j, k]));
        }
        images.push(v);
    }
    LinMap::new(2 * n, images).expect("in range")
}

/// `-f` for convenience in composition tests.
pub fn negated(f: &Tensor) -> Tensor {
    f.scale(&-Scalar::one())
}
