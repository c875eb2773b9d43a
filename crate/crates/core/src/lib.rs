//! Exact integer arithmetic for chromatic, flow and order polynomials, their
//! star vectors (binomial transforms), and symmetric decompositions of those
//! vectors, with brute-force oracles for every quantity.
//!
//! ```
//! use polybinom::{chromatic::chromatic_decomposition, Mode, Multigraph};
//!
//! let r = chromatic_decomposition(&Multigraph::path(3), Mode::Verify).unwrap();
//! assert_eq!(r.chi_star.to_string(), "(0,0,2,4)");
//! assert_eq!(r.acyclic_count, 4);
//! ```

pub mod checks;
pub mod chromatic;
pub mod error;
pub mod flows;
pub mod graph;
pub mod order;
pub mod poly;
pub mod poset;
pub mod report;
pub mod stapledon;
pub mod survey;

pub use checks::{Check, Mode};
pub use error::{Error, Result, SkipReason};
pub use graph::{Multigraph, Orientation};
pub use poly::{binomial_transform, interpolate, inverse_transform, IntPolynomial, Start, StarVector};
pub use poset::Poset;
pub use report::Caps;
pub use stapledon::{stapledon_ab, stapledon_ca, symmetric_split, Family, SymmetricSplit};
pub use survey::{cmd_survey, SurveyConfig, SurveyKind, SurveyMode, SurveyReport};
