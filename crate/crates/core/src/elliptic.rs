//! Long Weierstrass equations over the integers, the `(u, r, s, t)` change of
//! variables, and Laska's minimal-model search.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, exact_div, factorize, pow, valuation_unchecked, Integer, Rational};
use crate::batch;
use crate::error::{Error, Result};

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeierstrassEquation {
    pub a1: Integer,
    pub a2: Integer,
    pub a3: Integer,
    pub a4: Integer,
    pub a6: Integer,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CInvariants {
    pub c4: Integer,
    pub c6: Integer,
    pub delta: Integer,
}

/// `x = u^2 x' + r`, `y = u^3 y' + u^2 s x' + t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transformation {
    pub u: Integer,
    pub r: Integer,
    pub s: Integer,
    pub t: Integer,
}

impl Transformation {
    pub fn new(u: Integer, r: Integer, s: Integer, t: Integer) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::ZeroScaling);
        }
        Ok(Transformation { u, r, s, t })
    }

    pub fn from_i64(u: i64, r: i64, s: i64, t: i64) -> Result<Self> {
        Self::new(u.into(), r.into(), s.into(), t.into())
    }

    pub fn identity() -> Self {
        Self::scaling(Integer::one())
    }

    pub fn scaling(u: Integer) -> Self {
        Transformation {
            u,
            r: Integer::zero(),
            s: Integer::zero(),
            t: Integer::zero(),
        }
    }

    /// The single transformation equal to applying `self`, then `next`.
    pub fn then(&self, next: &Transformation) -> Transformation {
        let u2 = &self.u * &self.u;
        Transformation {
            u: &self.u * &next.u,
            r: &self.r + &u2 * &next.r,
            s: &self.s + &self.u * &next.s,
            t: &self.t + &u2 * &self.u * &next.t + &u2 * &self.s * &next.r,
        }
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u={} r={} s={} t={}", self.u, self.r, self.s, self.t)
    }
}

impl WeierstrassEquation {
    /// Rejects singular equations.
    pub fn new(coeffs: [Integer; 5]) -> Result<Self> {
        let e = Self::from_coeffs(coeffs);
        if e.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(e)
    }

    /// No nonsingularity check; for discriminant queries on arbitrary input.
    pub fn from_coeffs(coeffs: [Integer; 5]) -> Self {
        let [a1, a2, a3, a4, a6] = coeffs;
        WeierstrassEquation { a1, a2, a3, a4, a6 }
    }

    pub fn from_i64(coeffs: [i64; 5]) -> Result<Self> {
        Self::new(coeffs.map(Integer::from))
    }

    pub fn coeffs(&self) -> [Integer; 5] {
        [
            self.a1.clone(),
            self.a2.clone(),
            self.a3.clone(),
            self.a4.clone(),
            self.a6.clone(),
        ]
    }

    fn c4_c6(&self) -> (Integer, Integer) {
        let b2 = &self.a1 * &self.a1 + &self.a2 * 4;
        let b4 = &self.a1 * &self.a3 + &self.a4 * 2;
        let b6 = &self.a3 * &self.a3 + &self.a6 * 4;
        let c4 = &b2 * &b2 - &b4 * 24;
        let b2_cubed: Integer = &b2 * &b2 * &b2;
        let c6 = -b2_cubed + &b2 * &b4 * 36 - b6 * 216;
        (c4, c6)
    }

    /// `(c4^3 - c6^2) / 1728`; zero for singular equations.
    pub fn discriminant(&self) -> Integer {
        let (c4, c6) = self.c4_c6();
        let num = &c4 * &c4 * &c4 - &c6 * &c6;
        let (delta, rem) = num.div_rem(&Integer::from(1728));
        assert!(rem.is_zero(), "c4^3 - c6^2 not divisible by 1728");
        delta
    }

    pub fn c_invariants(&self) -> Result<CInvariants> {
        let (c4, c6) = self.c4_c6();
        let delta = self.discriminant();
        if delta.is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(CInvariants { c4, c6, delta })
    }

    /// The model `E'` determined by `T`; fails unless every `a_i'` is an
    /// integer.
    pub fn transform(&self, t: &Transformation) -> Result<WeierstrassEquation> {
        if t.u.is_zero() {
            return Err(Error::ZeroScaling);
        }
        let Transformation { u, r, s, t } = t;
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let n1 = a1 + s * 2;
        let n2 = a2 - s * a1 + r * 3 - s * s;
        let n3 = a3 + r * a1 + t * 2;
        let n4 = a4 - s * a3 + r * a2 * 2 - (t + r * s) * a1 + r * r * 3 - s * t * 2;
        let n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - r * t * a1 - t * t;
        let div = |name: &str, num: Integer, e: u32| {
            let den = pow(u, e);
            exact_div(&num, &den).ok_or_else(|| Error::NonIntegral {
                coefficient: name.to_string(),
                value: Rational::new(num, den),
            })
        };
        Ok(WeierstrassEquation {
            a1: div("a1", n1, 1)?,
            a2: div("a2", n2, 2)?,
            a3: div("a3", n3, 3)?,
            a4: div("a4", n4, 4)?,
            a6: div("a6", n6, 6)?,
        })
    }
}

impl fmt::Display for WeierstrassEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}, {}, {}, {}]",
            self.a1, self.a2, self.a3, self.a4, self.a6
        )
    }
}

/// Every `u > 0` with `u^4 | c4`, `u^6 | c6` and `u^12 | delta`, ascending.
/// A zero `c4` or `c6` imposes no condition.
pub fn step2_admissible_set(c: &CInvariants) -> Vec<Integer> {
    let u_max = largest_admissible(c);
    divisors(&u_max)
}

fn largest_admissible(c: &CInvariants) -> Integer {
    let g = c.c4.gcd(&c.c6).gcd(&c.delta);
    let fac = factorize(&g).expect("delta is nonzero");
    let mut u = Integer::one();
    for p in fac.primes() {
        let mut e = valuation_unchecked(&c.delta, p) / 12;
        if !c.c4.is_zero() {
            e = e.min(valuation_unchecked(&c.c4, p) / 4);
        }
        if !c.c6.is_zero() {
            e = e.min(valuation_unchecked(&c.c6, p) / 6);
        }
        u *= pow(p, e);
    }
    u
}

fn divisors(n: &Integer) -> Vec<Integer> {
    let fac = factorize(n).expect("n is positive");
    let mut out = vec![Integer::one()];
    for (p, &e) in &fac.factors {
        let current = out.clone();
        let mut pk = Integer::one();
        for _ in 0..e {
            pk *= p;
            out.extend(current.iter().map(|d| d * &pk));
        }
    }
    out.sort();
    out
}

/// Splits `u` as `2^e2 * 3^e3 * v` with `gcd(v, 6) = 1`.
pub fn split_at_six(u: &Integer) -> (u32, u32, Integer) {
    let mut v = u.abs();
    let e2 = valuation_unchecked(&v, &Integer::from(2));
    v >>= e2 as usize;
    let three = Integer::from(3);
    let e3 = valuation_unchecked(&v, &three);
    v /= pow(&three, e3);
    (e2, e3, v)
}

/// Candidate `(a1', a2', a3')` in the reduced ranges, the ones satisfying
/// the mod-8 / mod-3 congruences first.
fn step4_candidates(xu: &Integer, yu: &Integer) -> Vec<(i64, i64, i64)> {
    let mut all = Vec::with_capacity(12);
    for a1 in [0i64, 1] {
        for a2 in [-1i64, 0, 1] {
            for a3 in [0i64, 1] {
                all.push((a1, a2, a3));
            }
        }
    }
    let eight = Integer::from(8);
    let three = Integer::from(3);
    let congruent = |&(a1, a2, _): &(i64, i64, i64)| {
        let lhs8 = Integer::from(a1.pow(4)) - xu;
        let lhs3 = Integer::from(a2.pow(3) + a1.pow(6)) + yu;
        lhs8.mod_floor(&eight).is_zero() && lhs3.mod_floor(&three).is_zero()
    };
    let (mut preferred, rest): (Vec<_>, Vec<_>) = all.into_iter().partition(congruent);
    preferred.extend(rest);
    preferred
}

/// Steps 4 to 6 at a fixed `u`: pick `a1', a2', a3'`, solve for `a4', a6'`
/// and then for `s, r, t`.
fn reduce_at(
    e: &WeierstrassEquation,
    c: &CInvariants,
    u: &Integer,
) -> Option<(WeierstrassEquation, Transformation)> {
    let xu = exact_div(&c.c4, &pow(u, 4))?;
    let yu = exact_div(&c.c6, &pow(u, 6))?;
    for (a1p, a2p, a3p) in step4_candidates(&xu, &yu) {
        let (a1p, a2p, a3p) = (Integer::from(a1p), Integer::from(a2p), Integer::from(a3p));
        let b2 = &a1p * &a1p + &a2p * 4;
        let Some(b4) = exact_div(&(&b2 * &b2 - &xu), &Integer::from(24)) else {
            continue;
        };
        let Some(a4p) = exact_div(&(&b4 - &a1p * &a3p), &Integer::from(2)) else {
            continue;
        };
        let b2_cubed: Integer = &b2 * &b2 * &b2;
        let num6 = -b2_cubed + &b2 * &b4 * 36 - &yu;
        let Some(b6) = exact_div(&num6, &Integer::from(216)) else {
            continue;
        };
        let Some(a6p) = exact_div(&(&b6 - &a3p * &a3p), &Integer::from(4)) else {
            continue;
        };

        let Some(s) = exact_div(&(u * &a1p - &e.a1), &Integer::from(2)) else {
            continue;
        };
        let Some(r) = exact_div(
            &(u * u * &a2p - &e.a2 + &s * &e.a1 + &s * &s),
            &Integer::from(3),
        ) else {
            continue;
        };
        let Some(t) = exact_div(&(u * u * u * &a3p - &e.a3 - &r * &e.a1), &Integer::from(2))
        else {
            continue;
        };

        let candidate = WeierstrassEquation {
            a1: a1p,
            a2: a2p,
            a3: a3p,
            a4: a4p,
            a6: a6p,
        };
        let transformation = Transformation {
            u: u.clone(),
            r,
            s,
            t,
        };
        match e.transform(&transformation) {
            Ok(image) if image == candidate => return Some((candidate, transformation)),
            _ => continue,
        }
    }
    None
}

/// A model of least `|delta|` among integral models, and the transformation
/// reaching it from `e`.
pub fn laska_minimize(e: &WeierstrassEquation) -> Result<(WeierstrassEquation, Transformation)> {
    let c = e.c_invariants()?;
    let admissible = step2_admissible_set(&c);
    // Failure at the largest u is a 2- or 3-adic obstruction; descend.
    for u in admissible.iter().rev() {
        if let Some(found) = reduce_at(e, &c, u) {
            return Ok(found);
        }
    }
    Err(Error::ReductionFailed(Integer::one()))
}

/// Laska's search restricted to pure scalings `(u, 0, 0, 0)`.
pub fn scaling_minimize(e: &WeierstrassEquation) -> Result<(WeierstrassEquation, Transformation)> {
    let c = e.c_invariants()?;
    for u in step2_admissible_set(&c).into_iter().rev() {
        let t = Transformation::scaling(u);
        if let Ok(image) = e.transform(&t) {
            return Ok((image, t));
        }
    }
    Err(Error::ReductionFailed(Integer::one()))
}

/// Runs `laska_minimize` over a slice, in parallel when enabled. Output order
/// matches input order.
pub fn minimize_all(
    curves: &[WeierstrassEquation],
) -> Vec<Result<(WeierstrassEquation, Transformation)>> {
    batch::map(curves, laska_minimize)
}

/// True when `v_p(delta) < 12` at every prime `p > 3`.
pub fn is_minimal_away_from_six(delta: &Integer) -> bool {
    arith::max_power_unit(delta, 12)
        .map(|u| split_at_six(&u).2.is_one())
        .unwrap_or(false)
}
