//! Arithmetic in `F_q`, `F_q[u]` and truncated `F_q((1/u))`.

mod algebra;
mod boxspec;
mod field;
pub(crate) mod fp_poly;
mod laurent;
pub mod linalg;
mod mpoly;
mod poly;

pub use algebra::FqAlgebra;
pub use boxspec::BoxSpec;
pub use field::{Embedding, Field, FqElem, MAX_EXTENSION_ORDER};
pub(crate) use field::is_prime;
pub use laurent::LaurentNum;
pub use mpoly::{Exps, MPoly};
pub use poly::{Degree, Poly};
