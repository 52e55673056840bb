//! Exact construction of the degenerate Bernoulli and Euler polynomial
//! families, their cosine and sine variants, and a checker that verifies
//! the identities relating them as literal polynomial equalities.

pub mod cli;
pub mod combinat;
pub mod egf;
pub mod error;
pub mod families;
pub mod identities;
pub mod multipoly;
pub mod numeric;

pub use error::{Error, Result};
pub use families::{Catalog, FamilyKind, FamilySequence, Kernel};
pub use identities::{IdentityId, IdentityReport, Summary, Verdict, Verifier};
pub use multipoly::{MPoly, Monomial, Var};
pub use numeric::{GaussRat, Rat};
