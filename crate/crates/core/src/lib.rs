//! Exact arithmetic for peak algebras, the 0-Hecke-Clifford superalgebras
//! `HCl_n(0)`, their supermodules and Grothendieck groups.

pub mod combinatorics;
pub mod error;
pub mod field;
pub mod grothendieck;
pub mod hclifford;
pub mod heisenberg;
pub mod hopf;
pub mod limits;
pub mod linalg;
pub mod parse;
pub mod supermodules;
pub mod verify;

pub use combinatorics::{Composition, DescentSet, PeakSet, Permutation};
pub use error::{Error, Result};
pub use field::{GaussianRational, Rational};
pub use grothendieck::{ClassGroup, ModuleClass};
pub use heisenberg::DoubleElement;
pub use hopf::{Algebra, Basis, FreeElement, Index, TensorElement};
pub use supermodules::{AlgebraTag, ModuleMap, Supermodule};
pub use verify::{Report, Status, Suite};
