//! Exact construction, verification and analysis of flat affine symplectic
//! Lie algebras over the rationals.

pub mod algebra;
pub mod catalog;
pub mod cohomology;
pub mod cotangent;
pub mod dynamics;
pub mod error;
pub mod extension;
pub mod io;
pub mod linalg;
pub mod sampling;
pub mod scalar;
pub mod verifier;

pub use algebra::{omega_perp, Algebra, FaslaTriple, SymplecticForm, Tensor3};
pub use catalog::{dim2_family, even_dim_family, reference_suite, CatalogEntry};
pub use cohomology::{cohomology_dims, differential_matrix, nijenhuis_differential, Bimodule, Cochain};
pub use cotangent::{detect_lagrangian_ideal, hess_product, twisted_cotangent, CotangentData};
pub use dynamics::{
    central_translations, chu_connection, completeness, etale_representation, AffineSymplecticElement,
    CompletenessReport,
};
pub use error::{Error, Result};
pub use extension::{decompose_to_zero, double_extend, reduce_by_ideal, ExtensionParams};
pub use io::AlgebraFile;
pub use linalg::{Matrix, Vector};
pub use scalar::Scalar;
pub use verifier::{check_fasla, VerificationReport};
