//! Binary forms `f(X, Z) = a0 X^d + a1 X^(d-1) Z + ... + ad Z^d`, the
//! substitution action of integer 2x2 matrices, the discriminant, and
//! transvectants.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::arith::{Integer, Rational};
use crate::error::{Error, Result};

/// Coefficients are stored leading-first: `coeffs[k]` multiplies `X^(d-k) Z^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GL2Matrix {
    pub a: Integer,
    pub b: Integer,
    pub c: Integer,
    pub d: Integer,
}

impl GL2Matrix {
    pub fn new(a: Integer, b: Integer, c: Integer, d: Integer) -> Result<Self> {
        let m = GL2Matrix { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        GL2Matrix {
            a: Integer::one(),
            b: Integer::zero(),
            c: Integer::zero(),
            d: Integer::one(),
        }
    }

    pub fn det(&self) -> Integer {
        &self.a * &self.d - &self.b * &self.c
    }
}

/// Ordinary matrix product. With this orientation
/// `f.act(&m).act(&n) == f.act(&(&m * &n))`.
impl Mul for &GL2Matrix {
    type Output = GL2Matrix;

    fn mul(self, rhs: &GL2Matrix) -> GL2Matrix {
        GL2Matrix {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyForm);
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn from_integers<I>(coeffs: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<Integer>,
    {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    /// Builds a form from the coefficients of `f(x, 1)` listed constant term
    /// first.
    pub fn from_ascending<I>(coeffs: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<Integer>,
    {
        let mut v: Vec<Integer> = coeffs.into_iter().map(Into::into).collect();
        v.reverse();
        Self::from_integers(v)
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm {
            coeffs: vec![Rational::zero(); degree + 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficients of `f(x, 1)`, constant term first.
    pub fn ascending(&self) -> Vec<Rational> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    /// `None` unless every coefficient is an integer.
    pub fn integer_coeffs(&self) -> Option<Vec<Integer>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.numer().clone()))
            .collect()
    }

    pub fn scale(&self, lambda: &Rational) -> Self {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|c| c * lambda).collect(),
        }
    }

    pub fn evaluate(&self, x: &Rational, z: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut zpow = Rational::one();
        let d = self.degree();
        let mut xpows = vec![Rational::one(); d + 1];
        for i in 1..=d {
            xpows[i] = &xpows[i - 1] * x;
        }
        for (k, a) in self.coeffs.iter().enumerate() {
            acc += a * &xpows[d - k] * &zpow;
            zpow *= z;
        }
        acc
    }

    /// `f^M(X, Z) = f(aX + bZ, cX + dZ)`.
    pub fn act(&self, m: &GL2Matrix) -> Self {
        let d = self.degree();
        let first = linear_powers(&m.a, &m.b, d);
        let second = linear_powers(&m.c, &m.d, d);
        let mut out = vec![Rational::zero(); d + 1];
        for (k, coeff) in self.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let term = poly_mul(&first[d - k], &second[k]);
            for (slot, t) in out.iter_mut().zip(term) {
                *slot += coeff * Rational::from_integer(t);
            }
        }
        BinaryForm { coeffs: out }
    }

    /// Normalized as `a0^(2d-2) * prod_{i<j} (r_i - r_j)^2` over the roots
    /// of `f(x, 1)`; a polynomial of degree `2d - 2` in the coefficients.
    pub fn discriminant(&self) -> Result<Rational> {
        let d = self.degree();
        if d < 2 {
            return Err(Error::DegreeTooSmall(d));
        }
        if self.coeffs[0].is_zero() {
            return Err(Error::DegenerateLeadingCoefficient);
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(Integer::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<Integer> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let disc = integer_discriminant(&ints);
        let scale = num_traits::pow(lcm, 2 * d - 2);
        Ok(Rational::new(disc, scale))
    }

    /// The r-th transvectant `(f, g)^r` by the Omega process:
    /// `(m-r)!(n-r)!/(m!n!) * sum_k (-1)^k C(r,k) d^r f/dX^(r-k)dZ^k * d^r g/dX^k dZ^(r-k)`.
    pub fn transvectant(&self, other: &BinaryForm, r: usize) -> Result<BinaryForm> {
        let (m, n) = (self.degree(), other.degree());
        if r > m.min(n) {
            return Err(Error::TransvectantOrder { r, m, n });
        }
        let mut acc = vec![Rational::zero(); m + n - 2 * r + 1];
        for k in 0..=r {
            let df = self.partial(r - k, k);
            let dg = other.partial(k, r - k);
            let prod = poly_mul(&df.coeffs, &dg.coeffs);
            let weight = binomial(r, k);
            let weight = if k % 2 == 1 { -weight } else { weight };
            let weight = Rational::from_integer(weight);
            for (slot, t) in acc.iter_mut().zip(prod) {
                *slot += &weight * t;
            }
        }
        let prefactor = Rational::new(
            factorial(m - r) * factorial(n - r),
            factorial(m) * factorial(n),
        );
        Ok(BinaryForm {
            coeffs: acc.into_iter().map(|c| c * &prefactor).collect(),
        })
    }

    /// `d^(i+j) f / dX^i dZ^j`, a form of degree `d - i - j`.
    fn partial(&self, dx: usize, dz: usize) -> BinaryForm {
        let d = self.degree();
        let out_deg = d - dx - dz;
        let mut out = vec![Rational::zero(); out_deg + 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            let xpow = d - k;
            if k < dz || xpow < dx {
                continue;
            }
            let factor = falling(xpow, dx) * falling(k, dz);
            out[k - dz] += a * Rational::from_integer(factor);
        }
        BinaryForm { coeffs: out }
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut vars = Vec::new();
            match d - k {
                0 => {}
                1 => vars.push("X".to_string()),
                e => vars.push(format!("X^{e}")),
            }
            match k {
                0 => {}
                1 => vars.push("Z".to_string()),
                e => vars.push(format!("Z^{e}")),
            }
            let mono = vars.join("*");
            let term = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if *c == -Rational::one() {
                format!("-{mono}")
            } else {
                format!("{c}*{mono}")
            };
            terms.push(term);
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&terms.join(" + ").replace("+ -", "- "))
    }
}

fn falling(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

fn factorial(n: usize) -> BigInt {
    falling(n, n)
}

fn binomial(n: usize, k: usize) -> BigInt {
    falling(n, k) / factorial(k)
}

/// `(p X + q Z)^j` for `j = 0..=d`, leading-first coefficient vectors.
fn linear_powers(p: &Integer, q: &Integer, d: usize) -> Vec<Vec<Integer>> {
    let mut out = Vec::with_capacity(d + 1);
    out.push(vec![Integer::one()]);
    for j in 1..=d {
        out.push(poly_mul(&out[j - 1], &[p.clone(), q.clone()]));
    }
    out
}

fn poly_mul<T>(lhs: &[T], rhs: &[T]) -> Vec<T>
where
    T: Clone + Zero,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    let mut out = vec![T::zero(); lhs.len() + rhs.len() - 1];
    for (i, a) in lhs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in rhs.iter().enumerate() {
            out[i + j] = out[i + j].clone() + a * b;
        }
    }
    out
}

/// Discriminant of an integral form with `coeffs[0] != 0`, via
/// `(-1)^(d(d-1)/2) Res(f, f') / a0`.
pub(crate) fn integer_discriminant(coeffs: &[Integer]) -> Integer {
    let d = coeffs.len() - 1;
    let derivative: Vec<Integer> = coeffs[..d]
        .iter()
        .enumerate()
        .map(|(k, a)| a * BigInt::from(d - k))
        .collect();
    let res = resultant(coeffs, &derivative);
    let (q, r) = res.div_rem(&coeffs[0]);
    debug_assert!(r.is_zero());
    if (d * (d - 1) / 2) % 2 == 1 {
        -q
    } else {
        q
    }
}

/// Sylvester resultant of two leading-first coefficient vectors.
pub fn resultant(p: &[Integer], q: &[Integer]) -> Integer {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    if size == 0 {
        return Integer::one();
    }
    let mut rows = vec![vec![Integer::zero(); size]; size];
    for i in 0..n {
        for (j, c) in p.iter().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in q.iter().enumerate() {
            rows[n + i][i + j] = c.clone();
        }
    }
    bareiss_determinant(rows)
}

/// Fraction-free Gaussian elimination; every division is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<Integer>>) -> Integer {
    let n = m.len();
    if n == 0 {
        return Integer::one();
    }
    let mut negate = false;
    let mut prev = Integer::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Integer::zero();
            };
            m.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}
