//! Superelliptic curves `y^n = f(x)` over the integers and their reduction
//! by weighted scalings `x = u^n X`, `y = u^d Y`.
//!
//! Such a scaling divides the coefficient of `x^i` by `u^(n(d-i))` and the
//! discriminant by `u^(n d (d-1))`. A model is integral after scaling at `p^e`
//! exactly when `p^(e n (d-i)) | a_i` for every `i < d`, so the primes worth
//! looking at are those dividing the gcd of the non-leading coefficients.
//! Every such prime also divides the discriminant, since `f` is then
//! `a_d x^d` modulo `p`.
//!
//! A small discriminant valuation, `v_p(delta) < n d (d-1)`, proves the model
//! minimal at `p`; larger valuations prove nothing either way.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::{exact_div, factorize, is_prime, pow, valuation_unchecked, Factorization, Integer};
use crate::batch;
use crate::error::{Error, Result};
use crate::forms::{integer_discriminant, BinaryForm};

/// The global minimal discriminant as a factored ideal; the sign is carried
/// along for reporting only.
pub type FactoredIdeal = Factorization;

/// `y^n = a_d x^d + ... + a_1 x + a_0`, coefficients stored constant term
/// first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuperellipticCurve {
    n: u32,
    coeffs: Vec<Integer>,
    discriminant: Integer,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScalingReduction {
    pub u: Integer,
    pub old_delta: Integer,
    pub new_delta: Integer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Certificate {
    CertifiedMinimal,
    Inconclusive,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certificate::CertifiedMinimal => "certified_minimal",
            Certificate::Inconclusive => "inconclusive",
        })
    }
}

/// Per-prime status for a discriminant with the given factorization, where
/// `threshold` is the discriminant valuation removed by one unit of scaling.
pub fn certify(delta: &Factorization, threshold: u32) -> BTreeMap<Integer, Certificate> {
    delta
        .factors
        .iter()
        .map(|(p, &e)| {
            let status = if e < threshold {
                Certificate::CertifiedMinimal
            } else {
                Certificate::Inconclusive
            };
            (p.clone(), status)
        })
        .collect()
}

impl SuperellipticCurve {
    /// `coeffs` lists `a_0, ..., a_d`.
    pub fn new(n: u32, coeffs: Vec<Integer>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidCurve(format!("exponent n = {n} must be at least 2")));
        }
        if coeffs.len() < 4 {
            return Err(Error::InvalidCurve(format!(
                "degree {} must be at least 3",
                coeffs.len().saturating_sub(1)
            )));
        }
        if coeffs.last().is_some_and(Zero::is_zero) {
            return Err(Error::DegenerateLeadingCoefficient);
        }
        let leading_first: Vec<Integer> = coeffs.iter().rev().cloned().collect();
        let discriminant = integer_discriminant(&leading_first);
        if discriminant.is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(SuperellipticCurve {
            n,
            coeffs,
            discriminant,
        })
    }

    pub fn from_i64(n: u32, coeffs: &[i64]) -> Result<Self> {
        Self::new(n, coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `a_0, ..., a_d`.
    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn form(&self) -> BinaryForm {
        BinaryForm::from_ascending(self.coeffs.iter().cloned()).expect("nonempty")
    }

    /// Genus of the smooth model, `((n-1)(d-1) - gcd(n, d) + 1) / 2`.
    pub fn genus(&self) -> u64 {
        let n = u64::from(self.n);
        let d = self.degree() as u64;
        ((n - 1) * (d - 1) + 1 - n.gcd(&d)) / 2
    }

    /// `n d (d-1)`: the discriminant valuation removed by scaling with `p`.
    pub fn scaling_weight(&self) -> u32 {
        let d = self.degree() as u32;
        self.n * d * (d - 1)
    }

    /// Discriminant of the binary form `f(X, Z)`; never zero.
    pub fn discriminant(&self) -> &Integer {
        &self.discriminant
    }

    /// Largest `e` such that scaling by `p^e` keeps the model integral.
    pub fn scaling_exponent_at(&self, p: &Integer) -> Result<u32> {
        if *p < Integer::from(2) || !is_prime(p) {
            return Err(Error::NotPrime(p.clone()));
        }
        Ok(self.scaling_exponent_unchecked(p))
    }

    fn scaling_exponent_unchecked(&self, p: &Integer) -> u32 {
        let d = self.degree();
        let e = self.coeffs[..d]
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| valuation_unchecked(a, p) / (self.n * (d - i) as u32))
            .min()
            .expect("a nonzero lower coefficient exists when delta != 0");
        assert!(
            e <= valuation_unchecked(&self.discriminant, p) / self.scaling_weight(),
            "scaling exponent exceeds discriminant bound"
        );
        e
    }

    /// The model `a_i * u^(n(d-i))`; inverse of a reduction by `u`.
    pub fn scale_up(&self, u: &Integer) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::ZeroScaling);
        }
        let d = self.degree();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * pow(u, self.n * (d - i) as u32))
            .collect();
        Ok(SuperellipticCurve {
            n: self.n,
            coeffs,
            discriminant: &self.discriminant * pow(u, self.scaling_weight()),
        })
    }

    /// The model `a_i / u^(n(d-i))`, if integral.
    pub fn scale_down(&self, u: &Integer) -> Option<Self> {
        if u.is_zero() {
            return None;
        }
        let d = self.degree();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| exact_div(a, &pow(u, self.n * (d - i) as u32)))
            .collect::<Option<Vec<_>>>()?;
        let discriminant = exact_div(&self.discriminant, &pow(u, self.scaling_weight()))
            .expect("integral model has integral discriminant");
        Some(SuperellipticCurve {
            n: self.n,
            coeffs,
            discriminant,
        })
    }

    /// Removes every admissible scaling at once.
    pub fn reduce(&self) -> (SuperellipticCurve, ScalingReduction) {
        let d = self.degree();
        let g = self.coeffs[..d]
            .iter()
            .fold(Integer::zero(), |acc, a| acc.gcd(a));
        let mut u = Integer::one();
        if !g.abs().is_one() {
            let fac = factorize(&g).expect("g is nonzero");
            for p in fac.primes() {
                u *= pow(p, self.scaling_exponent_unchecked(p));
            }
        }
        let reduced = self.scale_down(&u).expect("u is admissible at every prime");
        debug_assert_eq!(
            reduced.discriminant,
            integer_discriminant(&reduced.coeffs.iter().rev().cloned().collect::<Vec<_>>())
        );
        let scaling = ScalingReduction {
            u,
            old_delta: self.discriminant.clone(),
            new_delta: reduced.discriminant.clone(),
        };
        (reduced, scaling)
    }

    /// Status at every prime dividing the discriminant. Primes not listed
    /// have valuation zero and are trivially minimal.
    pub fn minimality_certificate(&self) -> BTreeMap<Integer, Certificate> {
        let fac = factorize(&self.discriminant).expect("delta is nonzero");
        certify(&fac, self.scaling_weight())
    }

    pub fn global_minimal_discriminant(&self) -> FactoredIdeal {
        let (reduced, _) = self.reduce();
        factorize(&reduced.discriminant).expect("delta is nonzero")
    }
}

impl fmt::Display for SuperellipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let term = match (mono.is_empty(), a.abs().is_one()) {
                (true, _) => a.to_string(),
                (false, true) if a.is_negative() => format!("-{mono}"),
                (false, true) => mono,
                (false, false) => format!("{a}*{mono}"),
            };
            terms.push(term);
        }
        write!(f, "y^{} = {}", self.n, terms.join(" + ").replace("+ -", "- "))
    }
}

/// `reduce` over a slice, in parallel when enabled.
pub fn reduce_all(curves: &[SuperellipticCurve]) -> Vec<(SuperellipticCurve, ScalingReduction)> {
    batch::map(curves, SuperellipticCurve::reduce)
}
