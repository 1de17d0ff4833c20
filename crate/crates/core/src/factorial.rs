//! Binomial coefficients and their p-adic valuations.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::prime::Prime;

/// Legendre's formula: `v_p(n!) = sum_{i>=1} floor(n / p^i)`.
pub fn legendre_factorial_valuation(p: Prime, n: u64) -> u64 {
    let p = p.get();
    let mut total = 0;
    let mut q = n / p;
    while q > 0 {
        total += q;
        q /= p;
    }
    total
}

/// Exact `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> Result<BigUint> {
    if k > n {
        return Err(Error::BinomialRange { n, k });
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // exact at every step: acc = C(n - k + i + 1, i + 1) after the division
        acc *= n - k + i + 1;
        acc /= i + 1;
    }
    Ok(acc)
}

/// `v_p(C(n, k))` as the number of carries when adding `k` and `n - k` in
/// base p (Kummer).
pub fn binomial_valuation(p: Prime, n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Err(Error::BinomialRange { n, k });
    }
    let carries = kummer_carries(p, k, n - k);
    debug_assert_eq!(
        carries,
        legendre_factorial_valuation(p, n)
            - legendre_factorial_valuation(p, k)
            - legendre_factorial_valuation(p, n - k)
    );
    Ok(carries)
}

fn kummer_carries(p: Prime, mut a: u64, mut b: u64) -> u64 {
    let p = p.get();
    let mut carry = 0;
    let mut count = 0;
    while a > 0 || b > 0 || carry > 0 {
        let digit_sum = a % p + b % p + carry;
        carry = u64::from(digit_sum >= p);
        count += carry;
        a /= p;
        b /= p;
    }
    count
}
