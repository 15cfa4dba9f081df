//! Exact polynomial algebra for q,t-brackets and Hilbert series candidates.

mod hilbert;
mod poly;

pub use hilbert::{
    conjecture_h4, conjecture_h4_polynomial, decompose_q2_brackets, enumerate_candidates,
    enumerate_hilbert_candidates, expand_q2_brackets, h4_product_formula, CandidateWindow,
    HilbertCandidate, Summand, H4_BRACKET_LENGTHS,
};
pub use poly::{q2_bracket, q_bracket, qt_bracket, BivariatePolynomial, UniPoly};
