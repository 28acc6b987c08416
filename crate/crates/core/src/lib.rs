//! Exact multiplicities of monomial ideals.
//!
//! The general engine builds the Taylor resolution and reads the
//! multiplicity off an alternating power sum of face degrees. Closed forms
//! cover codimension one, complete intersections, stem ideals, quadratic
//! dominant ideals, dominant ideals with a complete-intersection part, and
//! almost complete intersections. [`oracle`] recomputes every multiplicity
//! from minimal covers and standard-monomial counts without touching the
//! resolution.
//!
//! ```
//! use multmon::{parse_ideal, multiplicity_ps, oracle};
//!
//! let m = parse_ideal("a^3*c, a*b*e^3, a^2*b^2, c^2, d^2*e^2").unwrap();
//! assert_eq!(multiplicity_ps(&m).unwrap(), 18);
//! assert_eq!(oracle::multiplicity_associativity(&m).unwrap(), 18);
//! ```

pub mod decomposition;
pub mod error;
pub mod formulas;
pub mod ideal;
pub mod invariants;
pub mod monomial;
pub mod oracle;
pub mod parse;
pub mod random;
pub mod report;
pub mod taylor;

pub use error::{Error, Result};
pub use ideal::MonomialIdeal;
pub use invariants::{classify, codim, ClassificationReport};
pub use monomial::{Monomial, PolarSet, VariableTable};
pub use parse::{parse_ideal, parse_ideal_with, ParsedIdeal};
pub use taylor::{betti_table, multiplicity_ps, ps_power_sum, BettiTable, TaylorResolution};
