//! Shared fixtures for the benchmarks.

use irred_core::number_field::ImaginaryQuadraticField;

/// The two class-number-two fields the counting benchmarks run on.
pub fn class_two_fields() -> [ImaginaryQuadraticField; 2] {
    [-5, -15].map(|d| ImaginaryQuadraticField::new(d).expect("valid field"))
}

/// Cutoffs for the counting benchmarks.
pub const COUNT_CUTOFFS: [f64; 3] = [1e5, 1e6, 1e7];
