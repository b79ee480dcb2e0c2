//! Exact lattices over integral group rings: Tate cohomology, flabby and
//! coflabby resolutions, the devissage towers of cyclotomic quotients,
//! cyclotomic class numbers and class groups of maximal orders.

pub mod arith;
pub mod classgroup;
pub mod corpus;
pub mod cyclo;
pub mod devissage;
pub mod error;
pub mod groups;
pub mod homalg;
pub mod lattices;
pub mod mat;
pub mod par;
pub mod resolutions;
pub mod selftest;

pub use error::{Error, Result};
pub use mat::{IMat, Mat};
