//! Trial division up to 10^6, then Brent's variant of Pollard rho on the
//! cofactor. Every factor that leaves this module has passed `is_prime`.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};

use super::{sign_of, Factorization, Integer};
use crate::error::{Error, Result};

const TRIAL_BOUND: u32 = 1_000_000;

/// Miller-Rabin with these bases is exact below 3.3 * 10^24.
const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_BOUND as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::with_capacity(80_000);
        for i in 2..=n {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

pub fn factorize(n: &Integer) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroFactorization);
    }
    let mut out = Factorization {
        sign: sign_of(n),
        factors: Default::default(),
    };
    let mut m = n.magnitude().clone();

    for &p in small_primes() {
        if m.is_one() {
            break;
        }
        let pp = u64::from(p);
        // p^2 > m means m is 1 or prime
        if m.bits() <= 64 && pp * pp > m.to_u64().unwrap() {
            break;
        }
        if (&m % p).is_zero() {
            let mut e = 0;
            while (&m % p).is_zero() {
                m /= p;
                e += 1;
            }
            out.insert(Integer::from(p), e);
        }
    }

    if !m.is_one() {
        let mut stack = vec![m];
        while let Some(c) = stack.pop() {
            if c.is_one() {
                continue;
            }
            if is_prime_unsigned(&c) {
                out.insert(BigInt::from(c), 1);
                continue;
            }
            if let Some(r) = perfect_square_root(&c) {
                stack.push(r.clone());
                stack.push(r);
                continue;
            }
            let d = split(&c);
            stack.push(&c / &d);
            stack.push(d);
        }
    }
    debug_assert_eq!(&out.value(), n);
    Ok(out)
}

pub fn is_prime(n: &Integer) -> bool {
    match n.to_biguint() {
        Some(m) => is_prime_unsigned(&m),
        None => false,
    }
}

fn is_prime_unsigned(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &small_primes()[..64] {
        if (n % p).is_zero() {
            return false;
        }
    }
    if !MR_BASES.iter().all(|&a| miller_rabin(n, &BigUint::from(a))) {
        return false;
    }
    if n.bits() <= 81 && *n < threshold_mr_exact() {
        return true;
    }
    strong_lucas(n)
}

fn threshold_mr_exact() -> BigUint {
    // 3317044064679887385961981
    BigUint::parse_bytes(b"3317044064679887385961981", 10).unwrap()
}

fn miller_rabin(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == n1 {
            return true;
        }
        if x == one {
            return false;
        }
    }
    false
}

fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    let mut a = a.mod_floor(&BigInt::from(n.clone())).to_biguint().unwrap();
    let mut n = n.clone();
    let mut result = 1;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        a >>= tz;
        let n_mod_8 = (&n % 8u32).to_u32().unwrap();
        if tz % 2 == 1 && (n_mod_8 == 3 || n_mod_8 == 5) {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            result = -result;
        }
        a %= &n;
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with Selfridge's parameters.
fn strong_lucas(n: &BigUint) -> bool {
    if perfect_square_root(n).is_some() {
        return false;
    }
    let mut d_abs = 5i64;
    let d = loop {
        let d = if (d_abs / 2) % 2 == 0 { d_abs } else { -d_abs };
        match jacobi(&BigInt::from(d), n) {
            -1 => break d,
            0 if BigUint::from(d_abs.unsigned_abs()) != *n => return false,
            _ => d_abs += 2,
        }
    };
    let n_int = BigInt::from(n.clone());
    let q = BigInt::from((1 - d) / 4);
    let d_big = BigInt::from(d);
    let modn = |x: BigInt| x.mod_floor(&n_int);
    let half = |x: BigInt| {
        let x = if x.is_odd() { x + &n_int } else { x };
        modn(x >> 1)
    };

    let np1 = n + 1u32;
    let s = np1.trailing_zeros().unwrap_or(0);
    let k = &np1 >> s;

    let mut u = BigInt::one();
    let mut v = BigInt::one();
    let mut qk = modn(q.clone());
    for i in (0..k.bits() - 1).rev() {
        u = modn(&u * &v);
        v = modn(&v * &v - (&qk << 1));
        qk = modn(&qk * &qk);
        if k.bit(i) {
            let nu = half(&u + &v);
            let nv = half(&d_big * &u + &v);
            u = nu;
            v = nv;
            qk = modn(&qk * &q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = modn(&v * &v - (&qk << 1));
        if v.is_zero() {
            return true;
        }
        qk = modn(&qk * &qk);
    }
    false
}

fn perfect_square_root(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// A nontrivial divisor of the composite `n`.
fn split(n: &BigUint) -> BigUint {
    if let Some(small) = n.to_u64() {
        return BigUint::from(rho_u64(small));
    }
    let mut c = 1u32;
    loop {
        if let Some(d) = rho_big(n, &BigUint::from(c)) {
            return d;
        }
        c += 1;
    }
}

fn rho_big(n: &BigUint, c: &BigUint) -> Option<BigUint> {
    let f = |x: &BigUint| (x * x + c) % n;
    let mut y = BigUint::from(2u32);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut g = BigUint::one();
    let mut q = BigUint::one();
    let mut r = 1u64;
    const BATCH: u64 = 128;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..BATCH.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = q * diff % n;
            }
            g = q.gcd(n);
            k += BATCH;
        }
        r *= 2;
    }
    if g == *n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (g != *n).then_some(g)
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn rho_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let (mut x, mut y, mut ys) = (2u64, 2u64, 2u64);
        let (mut g, mut q, mut r) = (1u64, 1u64, 1u64);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..128.min(r - k) {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g != 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}
