//! Singular series for the twin-shifted binary problem and the main-term
//! function under an optional exceptional zero.

mod main_term;
mod singular;

pub use main_term::{exceptional_sums, main_term_m, AssemblyOrder, MainTermReport};
pub use singular::{
    classical_goldbach_series, euler_factor, partial_singular_series, singular_series,
    singular_series_alt, SingularSeries, SingularSeriesValue, DEFAULT_CUTOFF,
};
