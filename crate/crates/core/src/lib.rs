//! Word calculus and verifiers for dense transfinite products.
//!
//! The crate works with finite truncations of three one-dimensional test
//! spaces: the one-sided Hawaiian earring (words in generators `c_n`), the
//! Cantor-gap semicircle space `W` (support homomorphism into a product of
//! copies of `Z` indexed by the gaps of the Cantor set), and the dyadic arc
//! space `D` (symbolic edge paths over semicircles and a base interval).
//! Each module exposes the computations and a verifier that returns a
//! [`report::VerificationReport`].

pub mod cantor;
pub mod dspace;
pub mod error;
pub mod freegroup;
pub mod hawaiian;
pub mod oracles;
pub mod orders;
pub mod parse;
pub mod report;
pub mod suite;
pub mod wspace;

pub use error::{CantorError, DSpaceError, FreeGroupError, OrderError, ParseError, SuiteError};
pub use report::{CaseResult, Status, VerificationReport};
pub use suite::{run_suite, Suite, SuiteParams};
