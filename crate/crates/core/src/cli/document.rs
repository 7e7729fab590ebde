//! Wire documents. Every integer travels as a decimal string so nothing is
//! lost to a consumer's number type. Polynomial coefficients are listed
//! constant term first, and the `order` field says so explicitly.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{Factorization, Integer, Rational};
use crate::elliptic::Transformation;
use crate::superelliptic::Certificate;

/// Arbitrary-precision integer, emitted as a decimal string. Input may also
/// use a JSON integer literal when it fits in 64 bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecimalInt(pub Integer);

impl From<Integer> for DecimalInt {
    fn from(n: Integer) -> Self {
        DecimalInt(n)
    }
}

impl From<i64> for DecimalInt {
    fn from(n: i64) -> Self {
        DecimalInt(n.into())
    }
}

impl fmt::Display for DecimalInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for DecimalInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for DecimalInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct DecimalVisitor;

        impl Visitor<'_> for DecimalVisitor {
            type Value = DecimalInt;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
                Ok(DecimalInt(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
                Ok(DecimalInt(v.into()))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                parse_decimal(v).map(DecimalInt).map_err(E::custom)
            }
        }

        deserializer.deserialize_any(DecimalVisitor)
    }
}

/// Strict decimal: optional leading `-`, then digits only.
pub fn parse_decimal(s: &str) -> Result<Integer, String> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("not a decimal integer: {s:?}"));
    }
    Integer::from_str(s).map_err(|e| e.to_string())
}

/// Rational emitted as `"p"` or `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecimalRational(pub Rational);

impl Serialize for DecimalRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for DecimalRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s.as_str(), "1"),
        };
        let num = parse_decimal(num).map_err(de::Error::custom)?;
        let den = parse_decimal(den).map_err(de::Error::custom)?;
        if den.is_zero() {
            return Err(de::Error::custom("zero denominator"));
        }
        Ok(DecimalRational(Rational::new(num, den)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    #[default]
    Ascending,
    Descending,
}

/// A curve or a bare binary form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CurveDocument {
    Elliptic {
        a: [DecimalInt; 5],
    },
    Superelliptic {
        n: u32,
        #[serde(default)]
        order: Order,
        f: Vec<DecimalInt>,
        /// Marked point; carried through untouched.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        point: Option<serde_json::Value>,
    },
    Form {
        #[serde(default)]
        order: Order,
        f: Vec<DecimalInt>,
    },
}

impl CurveDocument {
    pub fn elliptic(a: [Integer; 5]) -> Self {
        CurveDocument::Elliptic {
            a: a.map(DecimalInt),
        }
    }

    pub fn superelliptic(n: u32, ascending: &[Integer]) -> Self {
        CurveDocument::Superelliptic {
            n,
            order: Order::Ascending,
            f: ascending.iter().cloned().map(DecimalInt).collect(),
            point: None,
        }
    }

    /// Coefficients of `f`, constant term first, whatever order was given.
    pub fn ascending_coeffs(&self) -> Option<Vec<Integer>> {
        match self {
            CurveDocument::Elliptic { .. } => None,
            CurveDocument::Superelliptic { order, f, .. } | CurveDocument::Form { order, f } => {
                let mut v: Vec<Integer> = f.iter().map(|c| c.0.clone()).collect();
                if *order == Order::Descending {
                    v.reverse();
                }
                Some(v)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformationDoc {
    pub u: DecimalInt,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<DecimalInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<DecimalInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<DecimalInt>,
}

impl TransformationDoc {
    pub fn scaling(u: Integer) -> Self {
        TransformationDoc {
            u: DecimalInt(u),
            r: None,
            s: None,
            t: None,
        }
    }
}

impl From<&Transformation> for TransformationDoc {
    fn from(t: &Transformation) -> Self {
        TransformationDoc {
            u: DecimalInt(t.u.clone()),
            r: Some(DecimalInt(t.r.clone())),
            s: Some(DecimalInt(t.s.clone())),
            t: Some(DecimalInt(t.t.clone())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimePower {
    pub p: DecimalInt,
    pub e: u32,
}

/// Primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealDoc {
    pub sign: i8,
    pub factors: Vec<PrimePower>,
}

impl From<&Factorization> for IdealDoc {
    fn from(f: &Factorization) -> Self {
        IdealDoc {
            sign: f.sign,
            factors: f
                .factors
                .iter()
                .map(|(p, &e)| PrimePower {
                    p: DecimalInt(p.clone()),
                    e,
                })
                .collect(),
        }
    }
}

impl IdealDoc {
    pub fn value(&self) -> Integer {
        let unsigned = self
            .factors
            .iter()
            .fold(Integer::from(1), |acc, pp| acc * num_traits::pow(pp.p.0.clone(), pp.e as usize));
        if self.sign < 0 {
            -unsigned
        } else {
            unsigned
        }
    }
}

impl fmt::Display for IdealDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fac = Factorization {
            sign: self.sign,
            factors: self.factors.iter().map(|pp| (pp.p.0.clone(), pp.e)).collect(),
        };
        fac.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    CertifiedMinimal,
    Inconclusive,
}

impl From<Certificate> for Status {
    fn from(c: Certificate) -> Self {
        match c {
            Certificate::CertifiedMinimal => Status::CertifiedMinimal,
            Certificate::Inconclusive => Status::Inconclusive,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateEntry {
    pub p: DecimalInt,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub minimal_model: CurveDocument,
    pub transformation: TransformationDoc,
    pub discriminant_before: DecimalInt,
    pub discriminant_after: DecimalInt,
    pub factored_minimal_discriminant: IdealDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<CertificateEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<serde_json::Value>,
}

impl ResultDocument {
    /// Exponent `k` in `after * u^k = before`: 12 for elliptic models,
    /// `n d (d-1)` for superelliptic ones.
    pub fn scaling_weight(&self) -> Option<u32> {
        match &self.minimal_model {
            CurveDocument::Elliptic { .. } => Some(12),
            CurveDocument::Superelliptic { n, f, .. } => {
                let d = f.len().checked_sub(1)? as u32;
                Some(n * d * d.saturating_sub(1))
            }
            CurveDocument::Form { .. } => None,
        }
    }

    /// `discriminant_after * u^k == discriminant_before`.
    pub fn satisfies_scaling_law(&self) -> bool {
        let Some(k) = self.scaling_weight() else {
            return false;
        };
        let u = &self.transformation.u.0;
        &self.discriminant_after.0 * num_traits::pow(u.clone(), k as usize)
            == self.discriminant_before.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscriminantDoc {
    pub discriminant: DecimalInt,
    /// Absent for a zero discriminant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factorization: Option<IdealDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransvectantDoc {
    pub order: Order,
    pub coefficients: Vec<DecimalRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDoc {
    pub code: i32,
    pub message: String,
}

/// One line of batch output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BatchLine {
    Error { error: ErrorDoc },
    Result(Box<ResultDocument>),
    Discriminant(DiscriminantDoc),
}
