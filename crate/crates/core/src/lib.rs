//! Prime tables, factorization and the arithmetic weights used throughout
//! the workspace.

pub mod arith;
pub mod error;
pub mod factor;
pub mod heath_brown;
pub mod primes;
pub mod weights;

pub use arith::{
    almost_prime_indicator, almost_prime_of, arith_value, arith_value_of, ge_power, le_power,
    real_power, rough_indicator, rough_indicator_of, smooth_rough_split, v_product, ArithContext,
    ArithKind, Multiplicity, C0, C1,
};
pub use error::{Error, Result};
pub use factor::{binomial, gcd, mod_inverse, trial_factor, Factorization};
pub use heath_brown::{heath_brown_coefficients, heath_brown_terms};
pub use primes::{PrimeTable, DEFAULT_BUDGET};
pub use weights::{lambda_weight, three_prime_windows, von_mangoldt_of, LambdaKind, DEFAULT_EPS};
