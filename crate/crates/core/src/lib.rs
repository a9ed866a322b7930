//! Exact-arithmetic kernels for `(6,10)` complete intersections in the
//! weighted projective space `P(1,2,2,3,5)` and for vector bundles on `P^1`.

pub mod error;
pub mod field;
pub mod hilbert;
pub mod linalg;
pub mod moduli;
pub mod p1sheaf;
pub mod scan;
pub mod surface;
pub mod wring;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
