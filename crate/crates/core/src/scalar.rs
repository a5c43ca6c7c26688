//! Coefficient fields for Chow-ring computations.
//!
//! Everything is exact. [`Rational`] covers the common case; [`Surd`] is the
//! real quadratic field `ℚ(√n)`, needed because the constraint solver produces
//! `u = √ρ` with `ρ` rational but not always a square.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{format_rational, to_f64, Rational};

/// An exact ordered field the Chow ring can be instantiated over.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + From<Rational>
    + Send
    + Sync
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn signum_cmp(&self) -> Ordering;

    fn to_f64(&self) -> f64;

    fn is_gt_zero(&self) -> bool {
        self.signum_cmp() == Ordering::Greater
    }

    fn scale(&self, q: &Rational) -> Self {
        self.clone() * Self::from(q.clone())
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.clone() * r)
    }
}

impl Scalar for Rational {
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn signum_cmp(&self) -> Ordering {
        self.cmp(&Rational::zero())
    }

    fn to_f64(&self) -> f64 {
        to_f64(self)
    }
}

/// `rational + irrational·√radicand` with `radicand` a positive non-square
/// integer, or `radicand == 0` when the irrational part vanishes.
///
/// Values built over different radicands cannot be combined; doing so panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    rational: Rational,
    irrational: Rational,
    radicand: BigInt,
}

impl Surd {
    pub fn from_parts(rational: Rational, irrational: Rational, radicand: BigInt) -> Self {
        assert!(
            !radicand.is_negative(),
            "Surd radicand must be non-negative"
        );
        let mut s = Surd {
            rational,
            irrational,
            radicand,
        };
        s.normalize();
        s
    }

    /// Exact `√q`, or `None` when `q < 0`.
    ///
    /// `√(p/d)` is stored as `(1/d)·√(p·d)`; the result is plain rational
    /// whenever `p·d` is a perfect square.
    pub fn sqrt(q: &Rational) -> Option<Surd> {
        if q.is_negative() {
            return None;
        }
        let pd = q.numer() * q.denom();
        let root = pd.sqrt();
        if &root * &root == pd {
            return Some(Surd::from(Rational::new(root, q.denom().clone())));
        }
        Some(Surd::from_parts(
            Rational::zero(),
            Rational::new(BigInt::one(), q.denom().clone()),
            pd,
        ))
    }

    fn normalize(&mut self) {
        if self.irrational.is_zero() {
            self.radicand = BigInt::zero();
            return;
        }
        let root = self.radicand.sqrt();
        if &root * &root == self.radicand {
            self.rational += &self.irrational * Rational::from_integer(root);
            self.irrational = Rational::zero();
            self.radicand = BigInt::zero();
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.irrational
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.irrational.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.rational.clone())
    }

    /// `(ρ, c)` with `self = c·√ρ`, available when the rational part vanishes
    /// (or the value is rational, reported as `ρ = 1`).
    pub fn as_scaled_root(&self) -> Option<(Rational, Rational)> {
        if self.is_rational() {
            return Some((Rational::one(), self.rational.clone()));
        }
        self.rational.is_zero().then(|| {
            (
                Rational::from_integer(self.radicand.clone()),
                self.irrational.clone(),
            )
        })
    }

    fn conjugate(&self) -> Surd {
        Surd {
            rational: self.rational.clone(),
            irrational: -self.irrational.clone(),
            radicand: self.radicand.clone(),
        }
    }

    fn norm(&self) -> Rational {
        &self.rational * &self.rational
            - &self.irrational * &self.irrational * Rational::from_integer(self.radicand.clone())
    }

    fn joint_radicand(&self, other: &Surd) -> BigInt {
        match (self.irrational.is_zero(), other.irrational.is_zero()) {
            (true, _) => other.radicand.clone(),
            (_, true) => self.radicand.clone(),
            _ => {
                assert_eq!(
                    self.radicand, other.radicand,
                    "cannot combine surds over different radicands"
                );
                self.radicand.clone()
            }
        }
    }
}

impl From<Rational> for Surd {
    fn from(q: Rational) -> Self {
        Surd {
            rational: q,
            irrational: Rational::zero(),
            radicand: BigInt::zero(),
        }
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&format_rational(&self.rational));
        }
        let irr = format!("{}·√{}", format_rational(&self.irrational), self.radicand);
        if self.rational.is_zero() {
            f.write_str(&irr)
        } else {
            write!(f, "{} + {}", format_rational(&self.rational), irr)
        }
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, rhs: Surd) -> Surd {
        let radicand = self.joint_radicand(&rhs);
        Surd::from_parts(
            self.rational + rhs.rational,
            self.irrational + rhs.irrational,
            radicand,
        )
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, rhs: Surd) -> Surd {
        self + (-rhs)
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            rational: -self.rational,
            irrational: -self.irrational,
            radicand: self.radicand,
        }
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        let radicand = self.joint_radicand(&rhs);
        let n = Rational::from_integer(radicand.clone());
        let rational = &self.rational * &rhs.rational + &self.irrational * &rhs.irrational * n;
        let irrational = &self.rational * &rhs.irrational + &self.irrational * &rhs.rational;
        Surd::from_parts(rational, irrational, radicand)
    }
}

impl Div for Surd {
    type Output = Surd;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Surd) -> Surd {
        self * rhs.inv().expect("division of a Surd by zero")
    }
}

impl Zero for Surd {
    fn zero() -> Self {
        Surd::from(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.irrational.is_zero()
    }
}

impl One for Surd {
    fn one() -> Self {
        Surd::from(Rational::one())
    }
}

impl Scalar for Surd {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // n is not a square, so the norm vanishes only at zero.
        let norm = self.norm();
        let conj = self.conjugate();
        Some(Surd::from_parts(
            conj.rational / &norm,
            conj.irrational / &norm,
            conj.radicand,
        ))
    }

    fn signum_cmp(&self) -> Ordering {
        let sa = self.rational.signum_cmp();
        let sb = self.irrational.signum_cmp();
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // Opposite signs: |a| vs |b|·√n.
        let a2 = &self.rational * &self.rational;
        let b2n = &self.irrational
            * &self.irrational
            * Rational::from_integer(self.radicand.clone());
        if a2 > b2n {
            sa
        } else {
            sb
        }
    }

    fn to_f64(&self) -> f64 {
        let root = match self.radicand.sign() {
            Sign::NoSign => 0.0,
            _ => to_f64(&Rational::from_integer(self.radicand.clone())).sqrt(),
        };
        to_f64(&self.rational) + to_f64(&self.irrational) * root
    }
}

/// Wire form of a [`Surd`]: `scale·√radicand + rational`, the last key
/// omitted when zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurdRepr {
    #[serde(with = "crate::rational::serde_rational")]
    pub radicand: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub scale: Rational,
    #[serde(
        default = "Rational::zero",
        skip_serializing_if = "Rational::is_zero",
        with = "crate::rational::serde_rational"
    )]
    pub rational: Rational,
}

impl From<&Surd> for SurdRepr {
    fn from(s: &Surd) -> Self {
        if s.is_rational() {
            return SurdRepr {
                radicand: Rational::one(),
                scale: s.rational.clone(),
                rational: Rational::zero(),
            };
        }
        SurdRepr {
            radicand: Rational::from_integer(s.radicand.clone()),
            scale: s.irrational.clone(),
            rational: s.rational.clone(),
        }
    }
}

impl TryFrom<SurdRepr> for Surd {
    type Error = crate::Error;

    fn try_from(r: SurdRepr) -> Result<Self, Self::Error> {
        let root = Surd::sqrt(&r.radicand)
            .ok_or_else(|| crate::Error::Invalid("negative radicand".into()))?;
        Ok(Surd::from(r.rational) + Surd::from(r.scale) * root)
    }
}

impl Serialize for Surd {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        SurdRepr::from(self).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Surd {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let repr = SurdRepr::deserialize(de)?;
        Surd::try_from(repr).map_err(serde::de::Error::custom)
    }
}
