//! Additive convolutions of arithmetic sequences: exact (two-prime NTT) and
//! floating-point (FFT) paths, exceptional-set scans, exponential sums and
//! major/minor arc classification.

pub mod arcs;
pub mod convolve;
pub mod ntt;
pub mod scan;
pub mod sequence;

pub use arcs::{classify_arc, classify_arc_with, e, exp_sum, t_direct, t_sums, ArcClassification, ArcWitness, TSums};
pub use convolve::{convolve, convolve_direct, convolve_float, ConvMode};
pub use ntt::convolve_exact_raw;
pub use scan::{exceptional_scan, has_representation, PrimeCondition, ResidueClass, ScanParams, ScanReport, ScanSample};
pub use sequence::{build_sequence, sieve_twisted_sequence, ArithSequence, SequenceKind, Values, FLOAT_LIMIT, INT_LIMIT};
