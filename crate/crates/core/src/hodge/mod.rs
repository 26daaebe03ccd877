//! Hodge Laplacians, spectra, Betti numbers, Hodge decomposition, spectral
//! kernels and exact characteristic polynomials.

mod charpoly;
mod decompose;
mod kernel;
mod laplacian;
mod spectrum;

pub use charpoly::{char_poly_exact, char_poly_exact_f64, poly_from_roots, poly_mul};
pub use decompose::{hodge_decompose, HodgeDecomposition};
pub use kernel::{spectral_kernel, Regularizer};
pub(crate) use laplacian::upper_degree_weights;
pub use laplacian::{hodge_laplacian, laplacian_parts_exact, HodgeOperator, Variant};
pub use spectrum::{betti, default_zero_tol, spectrum, symmetric_spectrum, Spectrum, SYMMETRY_TOL};
