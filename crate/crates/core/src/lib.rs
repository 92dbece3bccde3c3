//! Exact computations in the spherical Hecke algebra of the degree-4
//! symplectic similitude group, brute-force p-adic lattice oracles at small
//! primes, and level-raising eigenvalue diagnostics.
//!
//! Everything is exact: scalars are Laurent polynomials in `q` with
//! `p = q^2`, lattice counts are integers produced by enumeration, and the
//! level-raising checks are integer congruences.

pub mod cache;
pub mod character;
pub mod coweight;
pub mod dlsurface;
pub mod eigen;
pub mod enumerate;
pub mod error;
pub mod hecke;
pub mod lattice;
pub mod level_raising;
pub mod mpoly;
pub mod scalar;
pub mod satake;

pub use character::{char_decompose, char_mul, weyl_character, weyl_dimension, weyl_orbit, CharacterElement};
pub use cache::{ConvolutionCache, CACHE_DIR_ENV, CACHE_FORMAT_VERSION};
pub use coweight::{dominance_leq, DominantCoweight, Weight};
pub use dlsurface::dl_point_count;
pub use eigen::{load_eigen_records, EigenData};
pub use enumerate::{
    convolve_oracle, coset_size, count_chain_pattern, enumerate_at_position, satake_oracle,
    DEFAULT_WINDOW_BOUND,
};
pub use hecke::HeckeElement;
pub use lattice::{iwasawa_invariant, relative_position, GspClass, PadicLattice, VertexType};
pub use level_raising::{
    check_generic, check_level_raising, det_lr_eval, det_ss_eval, hecke_polynomial, lr_matrix,
    pair_quadratic, ss_matrix, GenericReport, HeckeMatrix, LevelRaisingReport, PairQuadratic,
};
pub use mpoly::MPoly;
pub use satake::{satake_table, verify_hecke_identity, HeckeIdentityCertificate};
pub use scalar::Scalar;
