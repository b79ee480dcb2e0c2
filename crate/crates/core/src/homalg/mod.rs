//! Exact integer linear algebra and Tate cohomology of lattices.

mod abelian;
pub(crate) mod coef;
pub(crate) mod cohomology;
mod hom;
mod lll;
pub mod normal;

pub use abelian::AbelianInvariants;
pub use cohomology::{flabby_coflabby, h1, h1_crossed, tate_h0, tate_hm1, FlabbyReport, Invertibility};
pub use hom::{find_isomorphism, hom_lattice, IsoCertificate, IsoSearch};
pub use lll::lll_reduce;
pub use normal::{
    det, elementary_divisors, hnf, hnf_cols, hnf_with_transform, inverse_unimodular, is_saturated, is_unimodular,
    kernel_basis, rank, same_span, saturate, snf, solve, Hnf, SmithDecomposition, Solver,
};
