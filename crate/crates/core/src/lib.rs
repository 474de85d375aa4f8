//! Exact associative geometry over finite fields, ℚ and ℚ(i).
//!
//! The core is generic over the scalar type; the aliases below fix it for
//! the common fields.

pub mod error;
pub mod gamma;
pub mod grassmann;
pub mod homotopes;
pub mod involutions;
pub mod matlin;
pub mod relations;
pub mod report;
pub mod sample;
pub mod scalars;
pub mod suites;

pub use error::{Error, Result};
pub use grassmann::{Form, FormKind, StandardForm, Subspace};
pub use matlin::Matrix;
pub use relations::LinearRelation;
pub use report::{LawResult, Report};
pub use scalars::{Field, FieldSpec, Fp, Fp2, Gauss, Rational};

pub type MatrixQ = Matrix<Rational>;
pub type MatrixFp = Matrix<Fp>;
pub type MatrixFp2 = Matrix<Fp2>;
pub type MatrixGauss = Matrix<Gauss>;

pub type SubspaceQ = Subspace<Rational>;
pub type SubspaceFp = Subspace<Fp>;
pub type SubspaceFp2 = Subspace<Fp2>;
pub type SubspaceGauss = Subspace<Gauss>;

pub type RelationQ = LinearRelation<Rational>;
pub type RelationFp = LinearRelation<Fp>;
pub type RelationFp2 = LinearRelation<Fp2>;
pub type RelationGauss = LinearRelation<Gauss>;
