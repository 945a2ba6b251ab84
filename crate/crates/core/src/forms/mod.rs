//! The hypersurface, its symmetric tensor and the forms built from it.

mod bidegree;
mod hypersurface;
mod smallchar;
mod smooth;
mod system;
mod tensor;

pub use bidegree::{exponent_identity, split_index, BidegreeForm};
pub use hypersurface::{CoeffSpec, Hypersurface, HypersurfaceConfig, MonomialSpec};
pub use smallchar::{
    carries, fermat_next_form_check, fermat_smallchar_check, leading_binomial_vanishes, smallchar_degree,
    SmallCharReport,
};
pub use smooth::{smoothness_check, SmoothnessReport};
pub use system::{decomposition_check, decomposition_matches, expand_in_v, FormSystem, MorphismCoeffs};
pub use tensor::{multinomial, SymTensor};
