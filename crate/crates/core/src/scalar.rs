//! Scalar bound for the exact linear-algebra kernel.
//!
//! Everything downstream of [`crate::matrix::Matrix`] works over any signed
//! integer type with Euclidean division: `i64` and `i128` for small exact
//! computations, `num_bigint::BigInt` (the crate-root alias [`crate::Int`])
//! whenever intermediate growth is unbounded.

use num_integer::Integer;
use num_traits::Signed;
use std::fmt::{Debug, Display};

/// Exact signed integer scalar. Floating point types do not qualify: every
/// operation here must be exact.
pub trait Scalar: Integer + Signed + Clone + Debug + Display {}

impl<T> Scalar for T where T: Integer + Signed + Clone + Debug + Display {}
