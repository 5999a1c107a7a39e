//! Exact computations with graded modules over weighted and toric
//! polynomial rings: Gröbner bases, minimal free resolutions, Betti tables,
//! local cohomology support, Koszul and weighted regularity.

pub mod error;
pub mod field;
pub mod free_module;
pub mod fuzz;
pub mod grading;
pub mod groebner;
pub mod lattice;
pub mod linalg;
pub mod module;
pub mod monomial;
pub mod bgg;
pub mod poly;
pub mod regularity;
pub mod resolution;
pub mod toric;

pub use error::{Error, Result};
pub use field::{Field, FieldKind, PrimeField, Rationals};
pub use free_module::{FreeModule, ModuleMap};
pub use grading::{Degree, Grading, KoszulBounds};
pub use groebner::GroebnerBasis;
pub use monomial::Monomial;
pub use poly::{ModuleElement, PolyRing, Polynomial};
pub use module::PresentedModule;
