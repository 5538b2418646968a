//! Semirings with exact arithmetic, plus dense vectors and matrices over them.
//!
//! Four instances are provided: the Boolean semiring, arbitrary-precision
//! integers, exact rationals and the tropical (min, +) semiring over the
//! naturals extended with infinity.

mod laws;
mod matrix;

pub use laws::{check_semiring_laws, LawReport, LawViolation, Sample};
pub use matrix::{dot, mat_mul, mat_vec, vec_mat, Matrix};

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A semiring `(S, +, ·, 0, 1)`.
///
/// `add` must be commutative and associative with unit `zero`, `mul` associative
/// with unit `one`, multiplication must distribute over addition on both sides and
/// `zero` must annihilate.
pub trait Semiring:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    const NAME: &'static str;
    /// Additive inverses exist.
    const IS_RING: bool = false;
    /// Multiplicative inverses of nonzero elements exist.
    const IS_FIELD: bool = false;
    /// Exact division and gcds are available.
    const IS_PID: bool = false;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

/// A semiring with additive inverses.
pub trait Ring: Semiring {
    fn neg(&self) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

/// Names used for semirings in files and on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SemiringKind {
    Bool,
    Int,
    Rational,
    Tropical,
}

impl SemiringKind {
    pub fn name(self) -> &'static str {
        match self {
            SemiringKind::Bool => Boolean::NAME,
            SemiringKind::Int => Integer::NAME,
            SemiringKind::Rational => Rational::NAME,
            SemiringKind::Tropical => Tropical::NAME,
        }
    }
}

impl fmt::Display for SemiringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SemiringKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bool" => Ok(SemiringKind::Bool),
            "int" => Ok(SemiringKind::Int),
            "rational" => Ok(SemiringKind::Rational),
            "tropical" => Ok(SemiringKind::Tropical),
            other => Err(Error::Syntax(format!(
                "unknown semiring `{other}` (expected bool, int, rational or tropical)"
            ))),
        }
    }
}

/// The two-element semiring `({0,1}, ∨, ∧)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Boolean(pub bool);

impl Semiring for Boolean {
    const NAME: &'static str = "bool";

    fn zero() -> Self {
        Boolean(false)
    }
    fn one() -> Self {
        Boolean(true)
    }
    fn add(&self, other: &Self) -> Self {
        Boolean(self.0 || other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Boolean(self.0 && other.0)
    }
}

impl fmt::Display for Boolean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "1" } else { "0" })
    }
}

/// Arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Integer(pub BigInt);

impl Integer {
    pub fn new(v: impl Into<BigInt>) -> Self {
        Integer(v.into())
    }
}

impl From<i64> for Integer {
    fn from(v: i64) -> Self {
        Integer(BigInt::from(v))
    }
}

impl Semiring for Integer {
    const NAME: &'static str = "int";
    const IS_RING: bool = true;
    const IS_PID: bool = true;

    fn zero() -> Self {
        Integer(BigInt::zero())
    }
    fn one() -> Self {
        Integer(BigInt::one())
    }
    fn add(&self, other: &Self) -> Self {
        Integer(&self.0 + &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Integer(&self.0 * &other.0)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl Ring for Integer {
    fn neg(&self) -> Self {
        Integer(-&self.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Integer(&self.0 - &other.0)
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Exact rationals, always kept in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer/denom`; panics on a zero denominator.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    /// `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.0.is_zero() {
            None
        } else {
            Some(Rational(&self.0 / &other.0))
        }
    }

    /// Parses `p`, `-p` or `p/q`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().ok()?;
                let q: BigInt = q.trim().parse().ok()?;
                if q.is_zero() {
                    None
                } else {
                    Some(Rational::new(p, q))
                }
            }
            None => s.parse::<BigInt>().ok().map(Rational::from_integer),
        }
    }
}

impl From<BigRational> for Rational {
    fn from(v: BigRational) -> Self {
        // BigRational::new reduces; from_integer and arithmetic keep the reduced form
        Rational(BigRational::new(v.numer().clone(), v.denom().clone()))
    }
}

impl From<Integer> for Rational {
    fn from(v: Integer) -> Self {
        Rational::from_integer(v.0)
    }
}

impl Semiring for Rational {
    const NAME: &'static str = "rational";
    const IS_RING: bool = true;
    const IS_FIELD: bool = true;
    const IS_PID: bool = true;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn add(&self, other: &Self) -> Self {
        Rational(&self.0 + &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl Ring for Rational {
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Rational(&self.0 - &other.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// The tropical semiring `(ℕ ∪ {∞}, min, +)`.
///
/// Addition is `min` with unit `∞`; multiplication is `+` with unit `0`, and `∞`
/// is absorbing for it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tropical {
    Finite(BigUint),
    Infinity,
}

impl Tropical {
    pub fn finite(v: u64) -> Self {
        Tropical::Finite(BigUint::from(v))
    }
}

impl Semiring for Tropical {
    const NAME: &'static str = "tropical";

    fn zero() -> Self {
        Tropical::Infinity
    }
    fn one() -> Self {
        Tropical::Finite(BigUint::zero())
    }
    fn add(&self, other: &Self) -> Self {
        // derived Ord puts every Finite before Infinity
        std::cmp::min(self, other).clone()
    }
    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Tropical::Finite(a), Tropical::Finite(b)) => Tropical::Finite(a + b),
            _ => Tropical::Infinity,
        }
    }
    fn is_zero(&self) -> bool {
        matches!(self, Tropical::Infinity)
    }
}

impl fmt::Display for Tropical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tropical::Finite(v) => v.fmt(f),
            Tropical::Infinity => f.write_str("inf"),
        }
    }
}

/// Semirings that embed into ℚ.
pub trait ToRational: Semiring {
    fn to_rational(&self) -> Rational;
}

impl ToRational for Integer {
    fn to_rational(&self) -> Rational {
        Rational::from_integer(self.0.clone())
    }
}

impl ToRational for Rational {
    fn to_rational(&self) -> Rational {
        self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_normalised() {
        let r = Rational::new(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(Rational::parse("10/-4"), Some(Rational::new(-5, 2)));
        assert_eq!(Rational::parse("7"), Some(Rational::from_integer(7)));
        assert_eq!(Rational::parse("1/0"), None);
        assert_eq!(
            Rational::new(1, 3).add(&Rational::new(1, 6)),
            Rational::new(1, 2)
        );
    }

    #[test]
    fn tropical_infinity() {
        let inf = Tropical::Infinity;
        let three = Tropical::finite(3);
        assert_eq!(inf.add(&three), three);
        assert_eq!(inf.mul(&three), inf);
        assert_eq!(Tropical::one().mul(&three), three);
        assert_eq!(three.to_string(), "3");
        assert_eq!(inf.to_string(), "inf");
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in [
            SemiringKind::Bool,
            SemiringKind::Int,
            SemiringKind::Rational,
            SemiringKind::Tropical,
        ] {
            assert_eq!(kind.name().parse::<SemiringKind>().unwrap(), kind);
        }
        assert!("nat".parse::<SemiringKind>().is_err());
    }
}
