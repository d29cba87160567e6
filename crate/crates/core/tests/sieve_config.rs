//! The sieve bound is configurable before first use; this runs in its own
//! process so the override really is the first touch.

use kappa_core::numtheory::{factorize, init_sieve, is_prime, small_primes, ExactInt};

#[test]
fn override_takes_effect_before_first_use() {
    assert!(init_sieve(10_000), "first init wins");
    assert!(!init_sieve(20_000), "second init is a no-op");

    assert_eq!(small_primes().last(), Some(&9973));
    // Primality stays deterministic up to bound^2 via trial division.
    assert!(is_prime(99_991));
    assert!(!is_prime(99_989 * 3));

    // Factorization still splits cofactors whose prime factors all exceed
    // the (smaller) bound.
    let n = ExactInt::from(99_991u64 * 99_991);
    let f = factorize(&n).unwrap();
    assert_eq!(f, std::collections::BTreeMap::from([(99_991, 2)]));
}
