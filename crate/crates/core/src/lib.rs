//! Minimal-discriminant models of elliptic and superelliptic curves over the
//! rationals.
//!
//! * [`arith`]: exact integers, factorization, p-adic valuations.
//! * [`forms`]: binary forms, the GL2 action, discriminants, transvectants.
//! * [`elliptic`]: long Weierstrass equations and Laska's reduction.
//! * [`superelliptic`]: scaling reduction of `y^n = f(x)` and minimality
//!   certificates.
//! * [`cli`]: the document formats and commands behind the `curvemin` binary.

pub mod arith;
pub mod batch;
pub mod cli;
pub mod elliptic;
pub mod error;
pub mod forms;
pub mod superelliptic;

pub use arith::{factorize, max_power_unit, valuation, Factorization, Integer, Rational};
pub use elliptic::{laska_minimize, CInvariants, Transformation, WeierstrassEquation};
pub use error::{Error, Result};
pub use forms::{BinaryForm, GL2Matrix};
pub use superelliptic::{Certificate, FactoredIdeal, ScalingReduction, SuperellipticCurve};
