//! Exact computer algebra for quadric systems, secant varieties, syzygy
//! conditions, cohomology of ideal powers and Picard-lattice arithmetic.

pub mod cohomology;
pub mod conditions;
pub mod corpus;
pub mod error;
pub mod exactalg;
pub mod flipcalc;
pub mod groebner;
pub mod input;
pub mod linalg;
pub mod secant;
pub mod syzygy;

pub use cohomology::{CohomologyEngine, ModuleKind};
pub use conditions::{KdReport, N2Report};
pub use corpus::{CorpusEntry, Family};
pub use error::{Error, Result};
pub use exactalg::{Field, FieldElement, Monomial, MonomialOrder, Polynomial, Ring};
pub use flipcalc::{DivisorClass, Space, Sym};
pub use groebner::{GbOptions, HilbertData, Ideal};
pub use input::{parse_input, parse_polynomial, InputModel};
pub use secant::{FiberKind, SecantReport};
pub use syzygy::{BettiTable, Resolution, SyzygyElement};
