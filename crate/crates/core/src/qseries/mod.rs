//! Exact truncated q-series: arithmetic, q-Pochhammer products, Gaussian
//! binomials, multi-sums and the identity catalogue.

pub mod identities;
pub mod multisum;
pub mod series;

pub use identities::{bilateral_theta, excluded_residue_product, triple_quotient, Identity, IdentityKind};
pub use multisum::{LastDenominator, MultiSum};
pub use series::{inv_poch, poch, qbinom, Count, TruncatedSeries};
