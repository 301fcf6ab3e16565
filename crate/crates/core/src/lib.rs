//! Exact algebra of one-dimensional cellular automata with a focus on
//! time symmetry: involution detection and enumeration, symmetry
//! certificates and the constructions that produce them, and finite-torus
//! simulations of two classic reversible 2D systems.
//!
//! All equality claims are settled on rule tables extended to a common
//! neighborhood, never on sampled configurations.

pub mod config;
pub mod grid2d;
pub mod involution;
pub mod io;
pub mod perm;
pub mod rule;
pub mod symmetry;
pub mod zoo;

pub use config::{orbit, order_on_cycle, CycleOrder, CyclicConfig, OrbitRecord};
pub use involution::{
    additive_rule, enumerate_involutions, is_involution, is_left_permutative, is_one_way_right,
    is_right_permutative, solve_additive_involutions, AdditiveCoefficients, EnumerationSpec,
    SearchReport,
};
pub use perm::Perm;
pub use rule::{Alphabet, BlockCode, LocalRule1D, Neighborhood, RuleError, State};
pub use symmetry::{
    alternating_orbit, conjugate_certificate, find_symmetry, inverse_certificate, partitioned_ca,
    periodic_embedding, power_certificate, product_ca, radius0_symmetry, verify_certificate,
    AlternatingTrace, CertificateError, Conjugacy, FindSymmetry, SymmetryCertificate,
};
