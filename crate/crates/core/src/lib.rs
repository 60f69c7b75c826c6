//! Odd Khovanov homology of link diagrams and the geometric spectral
//! sequence built from higher cube maps, computed exactly over the integers.
//!
//! The crate is organised bottom up:
//!
//! * [`diagram`] parses and validates planar diagram codes.
//! * [`config`] models oriented arc configurations on the sphere.
//! * [`signs`] solves for edge assignments and handles paths in the cube.
//! * [`oddalg`] holds the exterior algebra maps attached to faces.
//! * [`cube`] assembles the filtered chain complex.
//! * [`zlinalg`] does the exact integer linear algebra and spectral pages.
//! * [`oracle`] contains independent reference computations used by tests.

pub mod config;
pub mod cube;
pub mod diagram;
pub mod error;
pub mod fixtures;
pub mod invariants;
pub mod oddalg;
pub mod oracle;
pub mod signs;
pub mod zlinalg;

pub use config::{Configuration, Layout, HigherType};
pub use cube::Complex;
pub use diagram::PlanarDiagram;
pub use error::Error;
pub use signs::{EdgeAssignment, Kind};
