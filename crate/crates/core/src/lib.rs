//! Irreducible-element counting in number fields with small class group.
//!
//! The library splits into the class-group combinatorics (`group`,
//! `cycle_index`), arithmetic of imaginary quadratic fields
//! (`number_field`, `sieve`), the analytic constants (`series`) and exact
//! counts (`counting`).

// `!(x <= bound)` guards also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod counting;
pub mod cycle_index;
pub mod error;
pub mod group;
pub mod number_field;
pub mod series;
pub mod sieve;

pub use counting::{
    brute_force_m, classify_element, compare_report, count_m, count_norm_pairs, AlgebraicInteger, CountReport,
    ElementClass,
};
pub use cycle_index::{cycle_types, evaluate_pk, pk_table, rho, symmetric_sum_oracle, CycleType, CycleTypeTable};
pub use error::{Error, Result};
pub use group::{
    cyclic_extremal_patterns, davenport_constant, enumerate_minimal_zero_sums, make_group, FiniteAbelianGroup,
    GroupElement, ZeroSumPattern,
};
pub use number_field::{
    class_number, class_number_of_discriminant, is_principal, kronecker, prime_ideals_up_to, residue, splitting,
    ImaginaryQuadraticField, PrimeIdealRecord, ReferenceField, ResidueData, Splitting,
};
pub use series::coefficients::{
    asymptotic_cb, asymptotic_cb_via_tauberian, c_mu_general, class_number_two_cb, coefficients_top, cyclic_cb,
    AsymptoticCoefficients, CoefficientSet,
};
pub use series::tauberian::{e_coefficients, im_constants, tauberian_constants, TauberianConstants, EULER_GAMMA};
pub use series::{g_inputs_for_field, g_value_h2, tail_sum_s, GValue, GValueInputs, TruncatedSum};
