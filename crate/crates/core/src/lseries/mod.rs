//! The character mod 4, `L(s, chi)`, exact partial sums of its square and
//! the Bernoulli/Euler closed forms.

mod beta;
mod character;
mod partial;
mod tables;

pub use beta::{beta_plain, beta_value, zeta_value};
pub use character::{autoconvolution_coefficient, chi_mod4, divisor_count};
pub use partial::{
    autoconvolution_enclosure, conv_partial_exact, conv_partial_exact_at, decimal_digit_count, denominator_log2,
    regrouped_partial, tail_bound, value_f64, PartialSum, Regrouping, DEFAULT_EXACT_CAP,
};
pub use tables::{
    bernoulli_numbers, closed_form, euler_numbers, exact_number_table, ClosedForm, ClosedFormKind, ExactNumberTable,
    NumberKind,
};
