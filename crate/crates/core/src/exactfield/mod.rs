//! Exact scalar arithmetic and dense linear algebra.

mod field;
mod mat;
mod span;

pub use field::{
    format_rational, parse_ratio, with_deadline, DeadlineExceeded, Field, FieldSpec, Fp, Rationals, DEFAULT_RATIONAL_BITS,
    RATIONAL_BITS_ENV,
};
pub use mat::{complement_basis, free_columns, kernel_basis, membership, rank, row_reduce, Echelon, Mat};
pub use span::Span;

pub(crate) use mat::kernel_from_echelon;
