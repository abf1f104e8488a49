//! Sieve weights (beta, linear, pre-sieve and composite minorants), the
//! identities they satisfy, and the functions of the linear sieve.

pub mod chen;
pub mod functions;
pub mod identities;
pub mod minorant;
pub mod weights;

pub use chen::{chen_constants, chen_margin, chen_monte_carlo, ChenConstants, ChenMargin, ChenMonteCarlo, MonteCarloEstimate};
pub use functions::{p3_margin, weighted_margin, LinearSieveFunctions, EULER_GAMMA};
pub use identities::{fundamental_lemma_bound, divisor_sum_identity_check, FundamentalLemmaReport, IdentityReport};
pub use minorant::{fg_exponent, p3_minorant_eval, vector_sieve_lower, P3Minorant};
pub use weights::{
    admissible_pre_sieve, beta_sieve, fundamental_lemma_envelope, linear_sieve, v_of, EnvelopeReport,
    LocalDensity, SieveSign, SieveTerm, SieveWeights, PRE_SIEVE_BETA,
};
