//! Exact central charges, descent and crepant-resolution bookkeeping on
//! products of smooth projective curves.

pub mod charge;
pub mod cohomology;
pub mod error;
pub mod gaussian;
pub mod group;
pub mod lattice;
pub mod orbifold;
pub mod riemann_roch;
pub mod scenario;

pub use cohomology::{hyperplane_class, Basis, CurveFactor, GradedClass, Monomial, ProductSpace};
pub use error::{Error, Result};
pub use gaussian::{GaussianRational, Rational};
