//! Finite orthospaces, their state spaces, and conditioning in Euclidean
//! Jordan algebras.

pub mod field;
pub mod jordan;
pub mod linalg;
pub mod lp;
pub mod orthospace;
pub mod polytope;
pub mod statespace;
pub mod lueders;
pub mod synthesis;
pub mod instances;
pub mod observables;
pub mod formats;
