//! Quotients of path algebras: completion, normal forms, bases, and an
//! independent linear-algebra dimension count.

mod algebra;
mod basis;
mod oracle;
mod rewrite;

pub use algebra::{Algebra, Membership, Mode, FULL_MODE_LIMIT};
pub use basis::{enumerate_basis, QuotientBasis};
pub use oracle::{
    dimension_by_enumeration, dimension_by_macaulay, dimension_oracle, element_rank, span_membership, OracleMethod, OracleResult,
};
pub use rewrite::{CompletionStats, RewriteSystem, Rule};
