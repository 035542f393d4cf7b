pub mod bounds;
pub mod certificates;
pub mod eigen;
pub mod error;
pub mod families;
pub mod hull;
pub mod irreducibility;
pub mod matrix;
pub mod oracle;
pub mod products;
pub mod sphere;

pub use error::{JsrError, Result};
pub use matrix::{parse_matrix_set, vector_norm, Matrix, MatrixSet, NormKind, Tolerance, Word};
pub use products::{enumerate_products, for_each_product, matrix_set_norm, Limits};
