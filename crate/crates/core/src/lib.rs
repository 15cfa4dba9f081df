//! Enumeration and verification of candidate root posets for Coxeter types.
//!
//! Posets have at most 64 elements and are stored as bit masks. Elements are
//! 0-based in the API and 1-based in the text format.

pub mod error;
pub mod fixtures;
pub mod golden;
pub mod h3_from_d6;
pub mod invariants;
pub mod iso;
pub mod poset;
pub mod profile;
pub mod qt;
pub mod rootdata;
pub mod search;

pub use error::{Error, Result};
pub use golden::{GoldenInt, GoldenVector};
pub use h3_from_d6::{build_h3_poset, d6_positive_roots, epsilon, gamma, tau_pairs, D6Root, H3Construction, TauPair};
pub use invariants::{
    catalan_number, check_properties, h_triangle, ideal_size_genfun, panyushev_orbits, panyushev_step,
    parse_properties, rank_vector_from_degrees, restricted_panyushev_orbits, Checker, HTriangle, Orbit, Property,
    Report,
};
pub use iso::{canonical_form, canonical_poset, is_isomorphic, CanonicalForm};
pub use poset::{Antichain, GradedPoset, OrderIdeal};
pub use profile::RootSystemProfile;
pub use qt::{BivariatePolynomial, HilbertCandidate, UniPoly};
pub use rootdata::CartanType;
pub use search::{search_v1, search_v2, PartialPoset, RankConfiguration, SearchOptions, SearchOutcome};
