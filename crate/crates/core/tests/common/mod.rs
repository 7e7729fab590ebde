//! Test oracles and corpus generators. Nothing here calls into the code paths
//! it is used to check: discriminants come from root products or the
//! b-invariant expansion, and minimality from bounded exhaustive search.
#![allow(dead_code)]

use curvemin::{BinaryForm, Integer, Rational, SuperellipticCurve, WeierstrassEquation};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn ipow(b: &Integer, e: u32) -> Integer {
    num_traits::pow(b.clone(), e as usize)
}

/// `a0^(2d-2) prod_{i<j} (r_i - r_j)^2`.
pub fn root_product_discriminant(a0: &Rational, roots: &[Rational]) -> Rational {
    let d = roots.len() as i32;
    let mut acc = num_traits::pow(a0.clone(), (2 * d - 2) as usize);
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let diff = &roots[i] - &roots[j];
            acc *= &diff * &diff;
        }
    }
    acc
}

/// `a0 prod (X - r_i Z)` expanded, leading-first.
pub fn form_from_roots(a0: &Rational, roots: &[Rational]) -> BinaryForm {
    let mut coeffs = vec![a0.clone()];
    for r in roots {
        let mut next = vec![Rational::zero(); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k] += c;
            next[k + 1] -= c * r;
        }
        coeffs = next;
    }
    BinaryForm::new(coeffs).unwrap()
}

/// Weierstrass discriminant from the b-invariants,
/// `-b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6`.
pub fn b_discriminant(a: &[Integer; 5]) -> Integer {
    let [a1, a2, a3, a4, a6] = a;
    let b2 = a1 * a1 + a2 * 4;
    let b4 = a1 * a3 + a4 * 2;
    let b6 = a3 * a3 + a6 * 4;
    let b8 = a1 * a1 * a6 + a2 * a6 * 4 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    let lead: Integer = &b2 * &b2 * &b8;
    -lead - &b4 * &b4 * &b4 * 8 - &b6 * &b6 * 27 + &b2 * &b4 * &b6 * 9
}

pub fn b_discriminant_i128(a: [i128; 5]) -> i128 {
    let [a1, a2, a3, a4, a6] = a;
    let b2 = a1 * a1 + 4 * a2;
    let b4 = a1 * a3 + 2 * a4;
    let b6 = a3 * a3 + 4 * a6;
    let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
}

/// The model `E` with `transform(E, (u, r, s, t)) == base`, obtained by
/// solving the change-of-variables relations for the unprimed coefficients.
pub fn inflate(base: &[Integer; 5], u: &Integer, r: &Integer, s: &Integer, t: &Integer) -> [Integer; 5] {
    let [b1, b2, b3, b4, b6] = base;
    let a1 = u * b1 - s * 2;
    let a2 = ipow(u, 2) * b2 + s * &a1 - r * 3 + s * s;
    let a3 = ipow(u, 3) * b3 - r * &a1 - t * 2;
    let a4 = ipow(u, 4) * b4 + s * &a3 - r * &a2 * 2 + (t + r * s) * &a1 - r * r * 3 + s * t * 2;
    let a6 = ipow(u, 6) * b6 - r * &a4 - r * r * &a2 - r * r * r + t * &a3 + r * t * &a1 + t * t;
    [a1, a2, a3, a4, a6]
}

pub fn random_weierstrass(rng: &mut impl Rng, bound: i64) -> WeierstrassEquation {
    loop {
        let a = [0; 5].map(|_: i32| int(rng.gen_range(-bound..=bound)));
        if let Ok(e) = WeierstrassEquation::new(a) {
            return e;
        }
    }
}

pub fn to_i128(a: &[Integer; 5]) -> [i128; 5] {
    a.clone().map(|c| i128::try_from(c).expect("fits in i128"))
}

/// Smallest `|delta|` over integral models `transform(E, (u, r, s, t))` with
/// `1 <= u <= max_u` and `|r|, |s|, |t| <= bound`, together with the `u`
/// attaining it. Pure i128 search.
pub fn brute_force_min_delta(a: [i128; 5], max_u: i128, bound: i128) -> (i128, i128) {
    let delta = b_discriminant_i128(a).abs();
    let [a1, a2, a3, a4, a6] = a;
    for u in (1..=max_u).rev() {
        let (u2, u3) = (u * u, u * u * u);
        let (u4, u6) = (u2 * u2, u3 * u3);
        if delta % (u6 * u6) != 0 {
            continue;
        }
        for s in -bound..=bound {
            if (a1 + 2 * s) % u != 0 {
                continue;
            }
            for r in -bound..=bound {
                if (a2 - s * a1 + 3 * r - s * s) % u2 != 0 {
                    continue;
                }
                for t in -bound..=bound {
                    if (a3 + r * a1 + 2 * t) % u3 != 0 {
                        continue;
                    }
                    let n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
                    if n4 % u4 != 0 {
                        continue;
                    }
                    let n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - r * t * a1 - t * t;
                    if n6 % u6 == 0 {
                        return (delta / (u6 * u6), u);
                    }
                }
            }
        }
    }
    unreachable!("u = 1 with r = s = t = 0 is always integral")
}

/// True when no prime power `p^12` divides `n` (brute force over `p`).
pub fn twelfth_power_free(n: i128) -> bool {
    let n = n.abs();
    let mut p = 2i128;
    while p.pow(12) <= n {
        if n % p.pow(12) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Random integral `y^n = f(x)` with `|a_i| <= bound`, `a_0 != 0`,
/// `a_d != 0`, nonzero discriminant. `bound < 64` keeps `a_0` from being
/// divisible by any `p^(n d)`, so no scaling applies.
pub fn random_superelliptic(rng: &mut impl Rng, n: u32, d: usize, bound: i64) -> SuperellipticCurve {
    assert!(bound < 64);
    loop {
        let mut coeffs: Vec<Integer> = (0..=d).map(|_| int(rng.gen_range(-bound..=bound))).collect();
        if coeffs[0].is_zero() || coeffs[d].is_zero() {
            continue;
        }
        if rng.gen_bool(0.3) {
            // sparse middle
            for c in coeffs.iter_mut().take(d).skip(1) {
                if rng.gen_bool(0.5) {
                    *c = Integer::zero();
                }
            }
        }
        if let Ok(c) = SuperellipticCurve::new(n, coeffs) {
            return c;
        }
    }
}

/// `a_i * u^(n(d-i))`, computed independently of the library.
pub fn inflate_superelliptic(c: &SuperellipticCurve, u: &Integer) -> Vec<Integer> {
    let d = c.degree() as u32;
    c.coeffs()
        .iter()
        .enumerate()
        .map(|(i, a)| a * ipow(u, c.n() * (d - i as u32)))
        .collect()
}

fn eval_ascending(coeffs: &[Integer], x: &Integer) -> Integer {
    coeffs.iter().rev().fold(Integer::zero(), |acc, a| acc * x + a)
}

/// Checks `f(u^n X) == u^(n d) f'(X)` at `d + 1` points, i.e. that
/// `x = u^n X`, `y = u^d Y` carries `y^n = f(x)` to `Y^n = f'(X)`.
pub fn is_scaling_isomorphism(f: &[Integer], f_reduced: &[Integer], n: u32, u: &Integer) -> bool {
    let d = f.len() as u32 - 1;
    if f_reduced.len() != f.len() {
        return false;
    }
    let un = ipow(u, n);
    let und = ipow(u, n * d);
    (0..=d as i64 + 1).all(|x| {
        let x = int(x - 1);
        eval_ascending(f, &(&un * &x)) == &und * eval_ascending(f_reduced, &x)
    })
}

/// Exhaustive per-prime check: for `e = 1..=max_e`, is the model scaled by
/// `p^e` integral?
pub fn any_integral_scaling(f: &[Integer], n: u32, p: &Integer, max_e: u32) -> bool {
    let d = f.len() as u32 - 1;
    (1..=max_e).any(|e| {
        f.iter().enumerate().all(|(i, a)| {
            let den = ipow(p, e * n * (d - i as u32));
            (a % den).is_zero()
        })
    })
}

pub fn v_p(n: &Integer, p: &Integer) -> u32 {
    let mut m = n.abs();
    let mut v = 0;
    while !m.is_zero() && (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    v
}

pub fn is_prime_brute(n: &Integer) -> bool {
    let n = u64::try_from(n).expect("small");
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn one() -> Integer {
    Integer::one()
}
