//! Exact scalars: the cyclotomic field, residue vectors, and q-combinatorics.

mod cyclotomic;
mod qnumbers;
mod residue;

pub use cyclotomic::{cyclotomic_field, cyclotomic_polynomial, CycField, CycNumber, Rational};
pub use qnumbers::{character_sum, ell, gauss_binomial, quantum_binomial_sym, quantum_integer};
pub use residue::ResidueVector;

/// q^k in the field of order `n`.
pub fn q_power(field: &'static CycField, k: i64) -> CycNumber {
    field.q_power(k)
}
