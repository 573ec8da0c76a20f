//! Generalized Zeckendorf numeration.
//!
//! A numeration system here is a collection of digit strings (coefficient
//! functions) closed under a lexicographic successor, together with a
//! fundamental sequence the digits weight. Ascending collections number the
//! naturals; descending ones expand reals in `(0, 1)` and p-adic integers.

pub mod coeff;
pub mod collections;
pub mod integer;
pub mod padic;
pub mod real;
pub mod recurrences;
pub mod unique;

pub use coeff::{CoeffError, CoeffFn, IndexBound, IndexInterval};
pub use recurrences::MultiplicityList;
