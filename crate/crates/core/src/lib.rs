//! Exact linear algebra, polynomials and boundary-format tensors, with the
//! Steiner-bundle machinery built on top of them.

pub mod error;
pub mod field;
pub mod groebner;
pub mod io;
pub mod linalg;
pub mod minors;
pub mod poly;
pub mod rng;
pub mod roots;
pub mod steiner;
pub mod tensor;
pub mod upoly;
pub mod zerodim;

pub use error::{Error, Result};
pub use field::{Field, Fp, Rational};
pub use num_traits::{One, Zero};
