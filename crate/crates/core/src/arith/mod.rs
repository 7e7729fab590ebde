//! Exact integer and rational arithmetic: factorization, p-adic valuations
//! and the "largest k-th power divisor" used by every reduction.

mod factor;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use factor::{factorize, is_prime};

pub type Integer = BigInt;

/// Always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// `sign * prod(p^e)` with every `p` prime and every `e >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    pub sign: i8,
    pub factors: BTreeMap<Integer, u32>,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization {
            sign: 1,
            factors: BTreeMap::new(),
        }
    }

    /// Rebuilds the factored integer.
    pub fn value(&self) -> Integer {
        let unsigned = self.unsigned_value();
        if self.sign < 0 {
            -unsigned
        } else {
            unsigned
        }
    }

    /// The positive generator of the ideal.
    pub fn unsigned_value(&self) -> Integer {
        self.factors
            .iter()
            .fold(Integer::one(), |acc, (p, &e)| acc * num_traits::pow(p.clone(), e as usize))
    }

    pub fn exponent(&self, p: &Integer) -> u32 {
        self.factors.get(p).copied().unwrap_or(0)
    }

    pub fn primes(&self) -> impl Iterator<Item = &Integer> {
        self.factors.keys()
    }

    pub(crate) fn insert(&mut self, p: Integer, e: u32) {
        *self.factors.entry(p).or_insert(0) += e;
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.sign < 0 {
            parts.push("-1".to_string());
        }
        for (p, e) in &self.factors {
            if *e == 1 {
                parts.push(p.to_string());
            } else {
                parts.push(format!("{p}^{e}"));
            }
        }
        if parts.is_empty() {
            parts.push("1".to_string());
        }
        f.write_str(&parts.join(" * "))
    }
}

/// The exponent of `p` in `n`.
pub fn valuation(n: &Integer, p: &Integer) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::ZeroValuation);
    }
    if *p < Integer::from(2) || !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    Ok(valuation_unchecked(n, p))
}

/// `v_p(n)` for `n != 0` and `p >= 2`, skipping the primality check.
pub(crate) fn valuation_unchecked(n: &Integer, p: &Integer) -> u32 {
    debug_assert!(!n.is_zero());
    let mut m = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Largest `u > 0` with `u^k | n`, i.e. `prod p^floor(v_p(n) / k)`.
pub fn max_power_unit(n: &Integer, k: u32) -> Result<Integer> {
    if n.is_zero() {
        return Err(Error::ZeroValuation);
    }
    if k == 0 {
        return Err(Error::ZeroExponent);
    }
    let fac = factorize(n)?;
    Ok(fac
        .factors
        .iter()
        .filter(|(_, &e)| e >= k)
        .fold(Integer::one(), |acc, (p, &e)| {
            acc * num_traits::pow(p.clone(), (e / k) as usize)
        }))
}

/// Exact quotient, or `None` when `d` does not divide `n`.
pub(crate) fn exact_div(n: &Integer, d: &Integer) -> Option<Integer> {
    let (q, r) = n.div_rem(d);
    r.is_zero().then_some(q)
}

pub(crate) fn sign_of(n: &Integer) -> i8 {
    match n.sign() {
        Sign::Minus => -1,
        _ => 1,
    }
}

pub(crate) fn pow(base: &Integer, e: u32) -> Integer {
    num_traits::pow(base.clone(), e as usize)
}
