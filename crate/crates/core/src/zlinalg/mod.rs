//! Exact linear algebra over the integers: normal forms, lattices, homology
//! and spectral pages.

pub mod homology;
pub mod lattice;
pub mod reduce;
pub mod snf;
pub mod sparse;
pub mod spectral;

pub use homology::{bigraded, format_laurent, jones, total, uct_mod2, Laurent, Table};
pub use lattice::{AbelianGroup, Lattice};
pub use reduce::{Chain, Coefficients};
pub use sparse::SparseMat;
pub use spectral::{spectral_pages, Filtered, PageTable};
