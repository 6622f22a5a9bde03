//! Codes from unit schemes over finite fields.
//!
//! A unit scheme is a pair of matrices with U * V = alpha * I, alpha != 0.
//! Taking rows of U as a generator and deleting the matching columns of V
//! gives a linear block code with its control matrix; splitting the scheme
//! into row blocks gives convolutional codes whose control matrices and
//! right inverses come out of the same block algebra. Orthogonal units give
//! LCD and self-dual codes, Fourier units give mds and dual-containing
//! codes (and CSS quantum parameters), and low-support group-ring units
//! give LDPC codes with certified girth. Distances are always computed by
//! exhaustive enumeration, never estimated.

pub mod block;
pub mod conv;
pub mod field;
pub mod fourier;
pub mod grouprings;
pub mod linalg;
pub mod named;
pub mod poly;
pub mod sampling;
pub mod scheme;

pub use block::{BlockCode, BlockError, CodeReport};
pub use conv::{ConvClass, ConvCode, ConvError, FreeDistance, Twist};
pub use field::{FieldElement, FieldError, FieldSpec};
pub use fourier::FourierScheme;
pub use grouprings::{GroupRingElem, GroupRingError};
pub use linalg::{LinalgError, Mat};
pub use poly::{PolyMat, SmithForm};
pub use scheme::{SchemeError, SchemeSplit, UnitScheme};
