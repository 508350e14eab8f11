//! Induced matrix norms `‖A‖_{p,q}` for `p, q ∈ {1, 2, ∞}`.
//!
//! Six of the nine norms have polynomial closed forms (column norms, row
//! norms, the largest singular value). The other three, `(2,1)`, `(∞,1)` and
//! `(∞,2)`, are maxima over sign vectors and are computed by exhaustive
//! Gray-code enumeration. Every result carries a witness vector attaining
//! the value.
//!
//! ```
//! use opnorm::{induced_norm, Matrix, NormIndex, NormPair};
//!
//! let a = Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
//! let r = induced_norm(&a, NormPair::new(NormIndex::Infinity, NormIndex::One)).unwrap();
//! assert_eq!(r.value, 10.0);
//! assert_eq!(r.witness.as_slice(), &[1.0, 1.0]);
//! ```

pub mod bench;
pub mod cli;
pub mod dense;
pub mod error;
pub mod hardness;
pub mod io;
pub mod norms;
pub mod oracle;
pub mod pair;
pub mod rng;
pub mod sign_search;
pub mod spectral;

pub use dense::{basis_vector, vec_norm, Matrix, NormIndex, Vector};
pub use error::{Error, Result};
pub use hardness::{Graph, McMatrix};
pub use norms::{
    induced_norm, induced_norm_with, max_column_norm, max_row_norm, sign_maximized_norm,
    spectral_norm, two_one_norm, NormOptions, NormResult,
};
pub use pair::NormPair;
pub use sign_search::SignVector;
pub use spectral::EigenDecomposition;
