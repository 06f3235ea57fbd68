//! Exact counting quantities appearing in the identities and bounds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::invariants::stick_bound_a2;

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `(n−5)(n−6)(n−1)! / (2·6!)`.
pub fn general_lower_bound(n: u64) -> BigRational {
    assert!(n >= 6);
    BigRational::new(
        BigInt::from((n - 5) * (n - 6)) * factorial(n - 1),
        BigInt::from(2) * factorial(6),
    )
}

/// `3(n−2)(n−5)(n−1)! / (2·6!)`.
pub fn rectilinear_upper_bound(n: u64) -> BigRational {
    assert!(n >= 6);
    BigRational::new(
        BigInt::from(3 * (n - 2) * (n - 5)) * factorial(n - 1),
        BigInt::from(2) * factorial(6),
    )
}

/// Least number of Hamiltonian knots with positive `a₂` forced in every
/// rectilinear `K_n`: the general lower bound divided by the stick bound,
/// rounded up.
pub fn r_n(n: u64) -> BigInt {
    assert!(n >= 7, "r_n is defined for n >= 7");
    let q = general_lower_bound(n) / BigRational::from_integer(BigInt::from(stick_bound_a2(n)));
    q.ceil().to_integer()
}

/// Residue of the Hamiltonian `a₂` sum modulo `(n−5)!`, in `[0, (n−5)!)`.
pub fn hamiltonian_residue(n: u64) -> BigInt {
    assert!(n >= 7);
    let m = factorial(n - 5);
    let half: BigInt = &m / BigInt::from(2);
    let r: BigInt = match n % 8 {
        0 => -(half * binomial(n - 1, 5)),
        7 => half * binomial(n, 6),
        _ => BigInt::zero(),
    };
    r.mod_floor(&m)
}
