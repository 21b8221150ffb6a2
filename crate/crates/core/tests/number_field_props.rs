use irred_core::number_field::{
    class_number_of_discriminant, kronecker, prime_ideals_up_to, splitting, ImaginaryQuadraticField, Splitting,
};
use irred_core::sieve::{small_primes, Primes};
use proptest::prelude::*;

const FIELDS: [i64; 8] = [-1, -2, -3, -5, -6, -7, -10, -15];

/// `p` splits or ramifies iff `X^2 - D` (or `X^2 - X + (1-D)/4`) has a
/// root mod p; ramified iff p divides D.
fn splitting_by_roots(field: &ImaginaryQuadraticField, p: u64) -> Splitting {
    let disc = field.discriminant();
    if disc.rem_euclid(p as i64) == 0 {
        return Splitting::Ramified;
    }
    let (t, n) = field.norm_form();
    let p_i = p as i64;
    if (0..p_i).any(|r| (r * r - t * r + n).rem_euclid(p_i) == 0) {
        Splitting::Split
    } else {
        Splitting::Inert
    }
}

#[test]
fn splitting_matches_root_count() {
    for d in FIELDS {
        let k = ImaginaryQuadraticField::new(d).unwrap();
        for p in small_primes(3000) {
            assert_eq!(splitting(&k, p).unwrap(), splitting_by_roots(&k, p), "d={d} p={p}");
        }
    }
}

#[test]
fn split_inert_density() {
    for d in FIELDS {
        let k = ImaginaryQuadraticField::new(d).unwrap();
        let primes: Vec<u64> = Primes::up_to(100_000).collect();
        let half = primes.len() as f64 / 2.0;
        let split = primes
            .iter()
            .filter(|&&p| splitting(&k, p).unwrap() == Splitting::Split)
            .count() as f64;
        let inert = primes
            .iter()
            .filter(|&&p| splitting(&k, p).unwrap() == Splitting::Inert)
            .count() as f64;
        assert!((split - half).abs() < 0.05 * half, "d={d}");
        assert!((inert - half).abs() < 0.05 * half, "d={d}");
    }
}

#[test]
fn principal_iff_norm_is_represented() {
    // a prime ideal of norm p is principal iff p = N(a + b w)
    for d in [-5, -6, -10, -15] {
        let k = ImaginaryQuadraticField::new(d).unwrap();
        let (t, n) = k.norm_form();
        let limit = 5000i64;
        let mut norms = std::collections::HashSet::new();
        for b in 0..=200i64 {
            for a in -200..=200i64 {
                let v = a * a + t * a * b + n * b * b;
                if v <= limit {
                    norms.insert(v as u64);
                }
            }
        }
        for rec in prime_ideals_up_to(&k, limit as f64).unwrap() {
            if rec.splitting != Splitting::Inert {
                assert_eq!(rec.principal, Some(norms.contains(&rec.p)), "d={d} p={}", rec.p);
            } else {
                assert_eq!(rec.principal, Some(true));
            }
        }
    }
}

#[test]
fn class_numbers_of_known_discriminants() {
    // Gauss's class-number-one list plus a few larger values
    for disc in [-3, -4, -7, -8, -11, -19, -43, -67, -163] {
        assert_eq!(class_number_of_discriminant(disc), 1, "D={disc}");
    }
    for (disc, h) in [
        (-15, 2),
        (-20, 2),
        (-24, 2),
        (-23, 3),
        (-31, 3),
        (-39, 4),
        (-47, 5),
        (-71, 7),
        (-56, 4),
    ] {
        assert_eq!(class_number_of_discriminant(disc), h, "D={disc}");
    }
}

proptest! {
    #[test]
    fn kronecker_is_multiplicative(d_idx in 0usize..8, a in 1u64..500, b in 1u64..500) {
        let k = ImaginaryQuadraticField::new(FIELDS[d_idx]).unwrap();
        let disc = k.discriminant();
        prop_assert_eq!(kronecker(disc, a * b), kronecker(disc, a) * kronecker(disc, b));
    }

    #[test]
    fn norm_matches_ring_formula(d_idx in 0usize..8, a in -1000i64..1000, b in -1000i64..1000) {
        let k = ImaginaryQuadraticField::new(FIELDS[d_idx]).unwrap();
        // 4 N = (2a + t b)^2 + |D| b^2
        let (t, _) = k.norm_form();
        let lhs = 4 * k.norm(a, b);
        let rhs = (2 * a + t * b).pow(2) + k.discriminant().abs() * b * b;
        prop_assert_eq!(lhs, rhs);
    }
}
