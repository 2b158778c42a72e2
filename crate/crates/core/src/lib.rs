//! Graph signal processing built around the isometric graph translation
//! operator.
//!
//! The library covers:
//!
//! * validated undirected graphs with deterministic generators
//!   ([`graph`], [`generate`]);
//! * dense symmetric eigendecomposition, the graph Fourier transform,
//!   reduced frequencies, and spectral gaps ([`spectral`]);
//! * exact translation operators for the combinatorial Laplacian, the
//!   normalized Laplacian, and the adjacency matrix, each a unit-modulus
//!   phase per Fourier mode ([`translate`]);
//! * matrix-free truncated-series approximations of those operators, the
//!   closed-form error bounds for them, a corrected Lagrange-remainder
//!   variant, and an eigenvalue-exact sup-error oracle ([`approx`]);
//! * impulse-response energy profiles over hop radii with the envelopes
//!   the approximation bounds imply ([`localize`]);
//! * CSV serialization for all of the above ([`io`]).

pub mod approx;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod localize;
pub mod spectral;
pub mod translate;

pub use approx::{
    apply_adjacency_approx, apply_laplacian_approx, corrected_kappa_r, dc_error_term,
    empirical_sup_error, kappa_c, kappa_r, kappa_s, lagrange_remainder_bound, min_order_search,
    product_bound, total_bound_adjacency, total_bound_laplacian, ApproxOrder, ApproxTranslation,
    BoundReport, MinOrder, ScaledMatrix, SymbolTruncation,
};
pub use error::{Error, Result};
pub use generate::{generate, generate_weighted, GraphKind};
pub use graph::{load_graph, DegreeData, Edge, Graph};
pub use localize::{
    decay_report, impulse_profile, oracle_envelope, paper_envelope, support_radius, DecayRow,
    LocalizationProfile,
};
pub use spectral::{
    eig_sym, epsilon_from_rho, BaseKind, Eigen, FrequencySet, SpectralBasis, SpectralGap,
};
pub use translate::ExactTranslation;
