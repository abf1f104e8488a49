//! Dirichlet characters, Gauss sums and the local kernel `F`.

pub mod bound;
pub mod character;
pub mod closed;
pub mod gauss;
pub mod group;
pub mod hypothesis;
pub mod kernel;
pub mod u_p;

pub use bound::{local_kernel_bound, local_kernel_bound_check};
pub use character::{character_group, e, e_frac, legendre_character, real_characters, DirichletCharacter};
pub use closed::{
    f_p1_closed, f_pp_closed, legendre, local_sigma, sigma_closed, sigma_prime_closed,
    sigma_tilde_closed, LocalKind,
};
pub use gauss::{
    gauss_sum, gauss_sum_formula, GaussFormula, gauss_sums_direct, modified_gauss_sum, modified_gauss_sums_direct,
    modified_gauss_sums_fft, tau,
};
pub use group::{CharacterGroup, GROUP_BUDGET};
pub use hypothesis::ExceptionalZeroHypothesis;
pub use kernel::{f_all_m, f_bruteforce, f_factored, f_factored_table, f_from_sums, local_f_table, kernel_vanishes, local_f, round_integral};
pub use u_p::{u_p, u_p_table};
