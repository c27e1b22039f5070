//! Exact rational substrate: scalars, based spaces, sparse tensors,
//! truncated series in the deformation parameter and a sparse linear solver.

mod linsolve;
mod lincomb;
mod linmap;
mod scalar;
mod series;
mod space;
mod tensor;

pub use lincomb::LinComb;
pub use linmap::LinMap;
pub use linsolve::{lin_solve, null_space, LinSystem, SolveOutcome};
pub use scalar::{format_scalar, parse_scalar, q, qi, Scalar};
pub use series::{Additive, HSeries};
pub use space::BasedSpace;
pub use tensor::{alt2, cyclic_sum3, tensor_permute, Tensor};
