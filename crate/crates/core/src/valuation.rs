//! ℓ-adic valuations and multinomial arithmetic.
//!
//! Everything here works away from 2: the prime argument must be odd. Two
//! routes to the valuation of a multinomial coefficient are provided, the
//! factorisation route (`nu` of [`multinomial`]) and Legendre's formula
//! ([`nu_multinomial`]), which never forms the big integer.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Trial-division primality test; adequate for the primes this crate sees.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut k = 3u64;
    while k.saturating_mul(k) <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

pub fn check_odd_prime(l: u64) -> Result<()> {
    if l != 2 && is_prime(l) {
        Ok(())
    } else {
        Err(Error::InvalidPrime(l))
    }
}

/// Odd primes up to and including `bound`, ascending.
pub fn odd_primes_up_to(bound: u64) -> Vec<u64> {
    (3..=bound).step_by(2).filter(|&p| is_prime(p)).collect()
}

/// The largest `e` with `ℓᵉ | n`.
pub fn nu(n: &BigInt, l: u64) -> Result<u32> {
    check_odd_prime(l)?;
    if n.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let l = BigInt::from(l);
    let mut n = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&l);
        if !r.is_zero() {
            return Ok(e);
        }
        n = q;
        e += 1;
    }
}

/// Same as [`nu`] for machine integers.
pub fn nu_u64(n: u64, l: u64) -> Result<u32> {
    check_odd_prime(l)?;
    if n == 0 {
        return Err(Error::ZeroValuation);
    }
    let mut n = n;
    let mut e = 0;
    while n.is_multiple_of(l) {
        n /= l;
        e += 1;
    }
    Ok(e)
}

/// Legendre's formula: `Σ_{i≥1} ⌊n/ℓⁱ⌋`, the valuation of `n!`.
pub fn nu_factorial(n: u64, l: u64) -> Result<u64> {
    check_odd_prime(l)?;
    let mut total = 0;
    let mut q = n / l;
    while q > 0 {
        total += q;
        q /= l;
    }
    Ok(total)
}

fn check_parts(n: u64, parts: &[u64]) -> Result<()> {
    let sum: u64 = parts.iter().sum();
    if sum != n {
        return Err(Error::PartsMismatch { expected: n, sum });
    }
    Ok(())
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `n! / ∏ parts_i!`, computed as a product of binomials.
pub fn multinomial(n: u64, parts: &[u64]) -> Result<BigUint> {
    check_parts(n, parts)?;
    let mut acc = BigUint::one();
    let mut running = 0;
    for &p in parts {
        running += p;
        acc *= binomial(running, p);
    }
    Ok(acc)
}

/// ν_ℓ of the multinomial coefficient, via Legendre's formula.
pub fn nu_multinomial(n: u64, parts: &[u64], l: u64) -> Result<u64> {
    check_parts(n, parts)?;
    let top = nu_factorial(n, l)?;
    let bottom = parts
        .iter()
        .map(|&p| nu_factorial(p, l))
        .sum::<Result<u64>>()?;
    Ok(top - bottom)
}

/// Base-ℓ digits of a non-negative integer, least significant first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LadicDigits {
    prime: u64,
    digits: Vec<u64>,
}

impl LadicDigits {
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn value(&self) -> u64 {
        self.digits
            .iter()
            .rev()
            .fold(0, |acc, &a| acc * self.prime + a)
    }

    pub fn digit_sum(&self) -> u64 {
        self.digits.iter().sum()
    }
}

/// Base-`l` expansion of `n`. The empty digit list encodes zero.
///
/// Panics if `l < 2`.
pub fn ladic_digits(n: u64, l: u64) -> LadicDigits {
    assert!(l >= 2, "base must be at least 2");
    let mut digits = Vec::new();
    let mut n = n;
    while n > 0 {
        digits.push(n % l);
        n /= l;
    }
    LadicDigits { prime: l, digits }
}

/// Returns `Some(r)` with `r ≥ 1` when `n = ℓʳ − 1`.
pub fn power_minus_one_exponent(n: u64, l: u64) -> Option<u32> {
    let target = n.checked_add(1)?;
    let mut power = l;
    let mut r = 1;
    while power < target {
        power = power.checked_mul(l)?;
        r += 1;
    }
    (power == target).then_some(r)
}
