//! Strongly stable ideals of degree two: tableau encodings, diagonal
//! reductions, the product formula for the core, and an exact graded
//! linear-algebra oracle that certifies every step over the rationals.

pub mod cli;
pub mod corecalc;
pub mod diagonal;
pub mod linalg;
pub mod membership;
pub mod monomial;
pub mod poly;
pub mod stable;

pub use membership::{GradedSpan, IdealPresentation, MembershipCertificate};
pub use monomial::{enumerate_degree, parse_monomial, revlex_compare, Monomial};
pub use poly::{HomogeneousPoly, Rational};
pub use stable::{GdReport, MonomialSet, StableError, StableIdeal2};
