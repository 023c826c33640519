//! Exact computations in the Temperley-Lieb algebra `TL_n(v + v^{-1})`: planar
//! diagrams, black-box induced modules, the complex of planar injective words
//! `W(n)` with its homology at specializations, Jacobsthal elements, and the
//! Dyck/Fine/Jacobsthal/tableau combinatorics around them.

pub mod algebra;
pub mod coeff;
pub mod combin;
pub mod complex;
pub mod diagram;
pub mod error;
pub mod indmod;
pub mod jacobsthal;
pub mod linalg;
pub mod par;
pub mod verify;

pub use algebra::{AlgebraElement, GeneratorKind};
pub use coeff::{Convention, ConventionTag, LaurentPoly, Rational};
pub use combin::{Tableau, TwoColumnPartition};
pub use complex::{build_complex, homology_ranks, ChainComplexData, HomologyReport};
pub use diagram::{Diagram, DyckWord};
pub use error::{Error, Result};
pub use indmod::{BlackBoxBasis, ModuleVector};
pub use jacobsthal::{jacobsthal_element, JacobsthalElement, RatioSign};
pub use linalg::{PolyMatrix, RationalMatrix};
