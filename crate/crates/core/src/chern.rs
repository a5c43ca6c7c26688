//! Chern characters on the fibration, B-field twisting and the cohomological
//! Fourier–Mukai action.
//!
//! On a threefold every Chern character is written as
//!
//! ```text
//! ch₀ = n,  ch₁ = xΘ + p*S,  ch₂ = Θ·p*η + a·f,  ch₃ = s
//! ```
//!
//! with `n, x ∈ ℤ`, `S, η ∈ A¹(Y)` and `a, s ∈ ℚ`. On a surface only
//! `ch₁ = xΘ + S·f` and `ch₂ = s` occur; `η` is empty and `a` is zero.

use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::chow::{self, ChowClass, FibrationModel};
use crate::error::{Error, Result};
use crate::rational::{int, ratio, Rational};

/// Integral Chern data `(n, x, S, η, a, s)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChernData {
    #[serde(rename = "n", with = "crate::rational::serde_bigint")]
    pub rank: BigInt,
    /// Coefficient of `Θ` in `ch₁`.
    #[serde(rename = "x", with = "crate::rational::serde_bigint")]
    pub section_coeff: BigInt,
    /// `S`, the pullback part of `ch₁` (on a surface: the fiber coefficient).
    #[serde(rename = "S", with = "crate::rational::serde_rational_vec")]
    pub ch1_base: Vec<Rational>,
    /// `η`, the `Θ`-part of `ch₂`.
    #[serde(rename = "eta", default, with = "crate::rational::serde_rational_vec")]
    pub ch2_theta: Vec<Rational>,
    /// `a`, the fiber coefficient of `ch₂`.
    #[serde(rename = "a", default = "Rational::zero", with = "crate::rational::serde_rational")]
    pub ch2_fiber: Rational,
    /// `s`, the top-degree part (`ch₃` on a threefold, `ch₂` on a surface).
    #[serde(rename = "s", with = "crate::rational::serde_rational")]
    pub top: Rational,
}

impl ChernData {
    /// Threefold Chern data.
    pub fn threefold(
        rank: i64,
        section_coeff: i64,
        ch1_base: Vec<Rational>,
        ch2_theta: Vec<Rational>,
        ch2_fiber: Rational,
        top: Rational,
    ) -> Self {
        ChernData {
            rank: BigInt::from(rank),
            section_coeff: BigInt::from(section_coeff),
            ch1_base,
            ch2_theta,
            ch2_fiber,
            top,
        }
    }

    /// Surface Chern data `ch = (n, xΘ + S·f, s)`.
    pub fn surface(rank: i64, section_coeff: i64, fiber_coeff: Rational, top: Rational) -> Self {
        ChernData {
            rank: BigInt::from(rank),
            section_coeff: BigInt::from(section_coeff),
            ch1_base: vec![fiber_coeff],
            ch2_theta: Vec::new(),
            ch2_fiber: Rational::zero(),
            top,
        }
    }

    pub fn zero(model: &FibrationModel) -> Self {
        ChernVector::zero(model).to_integral().expect("zero is integral")
    }

    /// `ch(O_X) = (1, 0, …, 0)`.
    pub fn structure_sheaf(model: &FibrationModel) -> Self {
        let mut c = Self::zero(model);
        c.rank = BigInt::one();
        c
    }

    pub fn to_vector(&self) -> ChernVector {
        ChernVector {
            rank: Rational::from_integer(self.rank.clone()),
            section_coeff: Rational::from_integer(self.section_coeff.clone()),
            ch1_base: self.ch1_base.clone(),
            ch2_theta: self.ch2_theta.clone(),
            ch2_fiber: self.ch2_fiber.clone(),
            top: self.top.clone(),
        }
    }

    pub fn validate(&self, model: &FibrationModel) -> Result<()> {
        self.to_vector().validate(model)
    }

    /// The total Chern character as a class in `A*(X)`.
    pub fn to_class(&self, model: &FibrationModel) -> Result<ChowClass> {
        self.to_vector().to_class(model)
    }
}

/// Rational Chern-shaped data; the carrier for twisted characters and
/// residuals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChernVector {
    #[serde(rename = "n", with = "crate::rational::serde_rational")]
    pub rank: Rational,
    #[serde(rename = "x", with = "crate::rational::serde_rational")]
    pub section_coeff: Rational,
    #[serde(rename = "S", with = "crate::rational::serde_rational_vec")]
    pub ch1_base: Vec<Rational>,
    #[serde(rename = "eta", default, with = "crate::rational::serde_rational_vec")]
    pub ch2_theta: Vec<Rational>,
    #[serde(rename = "a", default = "Rational::zero", with = "crate::rational::serde_rational")]
    pub ch2_fiber: Rational,
    #[serde(rename = "s", with = "crate::rational::serde_rational")]
    pub top: Rational,
}

impl ChernVector {
    pub fn zero(model: &FibrationModel) -> Self {
        let m = model.base_rank();
        ChernVector {
            rank: Rational::zero(),
            section_coeff: Rational::zero(),
            ch1_base: vec![Rational::zero(); m],
            ch2_theta: if model.is_threefold() {
                vec![Rational::zero(); m]
            } else {
                Vec::new()
            },
            ch2_fiber: Rational::zero(),
            top: Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank.is_zero()
            && self.section_coeff.is_zero()
            && self.ch1_base.iter().all(Zero::is_zero)
            && self.ch2_theta.iter().all(Zero::is_zero)
            && self.ch2_fiber.is_zero()
            && self.top.is_zero()
    }

    pub fn validate(&self, model: &FibrationModel) -> Result<()> {
        let m = model.base_rank();
        if self.ch1_base.len() != m {
            return Err(Error::Dimension(format!(
                "S has {} coordinates, base rank is {m}",
                self.ch1_base.len()
            )));
        }
        if model.is_threefold() {
            if self.ch2_theta.len() != m {
                return Err(Error::Dimension(format!(
                    "eta has {} coordinates, base rank is {m}",
                    self.ch2_theta.len()
                )));
            }
        } else if !self.ch2_theta.iter().all(Zero::is_zero) || !self.ch2_fiber.is_zero() {
            return Err(Error::Invalid(
                "surface Chern data carries only n, x, S and s".into(),
            ));
        }
        Ok(())
    }

    pub fn to_integral(&self) -> Result<ChernData> {
        if !self.rank.is_integer() || !self.section_coeff.is_integer() {
            return Err(Error::Invalid("n and x must be integers".into()));
        }
        Ok(ChernData {
            rank: self.rank.to_integer(),
            section_coeff: self.section_coeff.to_integer(),
            ch1_base: self.ch1_base.clone(),
            ch2_theta: self.ch2_theta.clone(),
            ch2_fiber: self.ch2_fiber.clone(),
            top: self.top.clone(),
        })
    }

    pub fn to_class(&self, model: &FibrationModel) -> Result<ChowClass> {
        self.validate(model)?;
        let mut c = ChowClass::<Rational>::zero(model);
        let top = model.dim_x();
        {
            let p0 = c.part_mut(0).expect("degree 0");
            p0.pull[0] = self.rank.clone();
        }
        {
            let p1 = c.part_mut(1).expect("degree 1");
            p1.theta[0] = self.section_coeff.clone();
            p1.pull = self.ch1_base.clone();
        }
        if model.is_threefold() {
            let p2 = c.part_mut(2).expect("degree 2");
            p2.theta = self.ch2_theta.clone();
            p2.pull[0] = self.ch2_fiber.clone();
        }
        c.part_mut(top).expect("top degree").theta[0] = self.top.clone();
        Ok(c)
    }

    /// Reads a total Chern class back into the `(n, x, S, η, a, s)` shape.
    pub fn from_class(c: &ChowClass, model: &FibrationModel) -> Result<Self> {
        model.check_shape(c)?;
        let part = |k| c.part(k).expect("checked shape");
        let p0 = part(0);
        let p1 = part(1);
        let (ch2_theta, ch2_fiber) = if model.is_threefold() {
            let p2 = part(2);
            (p2.theta.clone(), p2.pull[0].clone())
        } else {
            (Vec::new(), Rational::zero())
        };
        Ok(ChernVector {
            rank: p0.pull[0].clone(),
            section_coeff: p1.theta[0].clone(),
            ch1_base: p1.pull.clone(),
            ch2_theta,
            ch2_fiber,
            top: chow::degree(c, model),
        })
    }
}

impl ChernVector {
    fn zip_with(&self, rhs: &ChernVector, op: impl Fn(&Rational, &Rational) -> Rational) -> ChernVector {
        let v = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
            assert_eq!(a.len(), b.len(), "Chern data from different models");
            a.iter().zip(b).map(|(x, y)| op(x, y)).collect()
        };
        ChernVector {
            rank: op(&self.rank, &rhs.rank),
            section_coeff: op(&self.section_coeff, &rhs.section_coeff),
            ch1_base: v(&self.ch1_base, &rhs.ch1_base),
            ch2_theta: v(&self.ch2_theta, &rhs.ch2_theta),
            ch2_fiber: op(&self.ch2_fiber, &rhs.ch2_fiber),
            top: op(&self.top, &rhs.top),
        }
    }

    pub fn scaled(&self, c: &Rational) -> ChernVector {
        self.zip_with(self, |x, _| x * c)
    }
}

impl Add for &ChernVector {
    type Output = ChernVector;

    fn add(self, rhs: &ChernVector) -> ChernVector {
        self.zip_with(rhs, |x, y| x + y)
    }
}

impl Sub for &ChernVector {
    type Output = ChernVector;

    fn sub(self, rhs: &ChernVector) -> ChernVector {
        self.zip_with(rhs, |x, y| x - y)
    }
}

/// `ch^B = e^{-B}·ch`, remembering `B`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistedChernData {
    pub components: ChernVector,
    pub twist: ChowClass,
}

impl TwistedChernData {
    /// Twists once more: `e^{-B₂}·ch^{B₁} = ch^{B₁+B₂}`.
    pub fn twist(&self, b: &ChowClass, model: &FibrationModel) -> Result<TwistedChernData> {
        let class = self.components.to_class(model)?;
        let twisted = twist_class(&class, b, model)?;
        Ok(TwistedChernData {
            components: ChernVector::from_class(&twisted, model)?,
            twist: &self.twist + b,
        })
    }

    pub fn to_class(&self, model: &FibrationModel) -> Result<ChowClass> {
        self.components.to_class(model)
    }
}

/// `e^{-B} = Σ_j (−B)^j / j!`, truncated at `dim X`.
pub fn exp_neg(b: &ChowClass, model: &FibrationModel) -> Result<ChowClass> {
    if !b.is_divisor() {
        return Err(Error::Invalid("B-field must be a divisor class".into()));
    }
    let minus_b = -b.clone();
    let mut term = ChowClass::one(model);
    let mut acc = term.clone();
    for j in 1..=model.dim_x() {
        term = chow::mul(&term, &minus_b, model)?.scale(&ratio(1, j as i64));
        acc = acc + term.clone();
    }
    Ok(acc)
}

/// `e^{-B}·c` for an arbitrary class `c`.
pub fn twist_class(c: &ChowClass, b: &ChowClass, model: &FibrationModel) -> Result<ChowClass> {
    chow::mul(&exp_neg(b, model)?, c, model)
}

/// Twisted Chern character `ch^B(E)`.
///
/// `B` may be any divisor here; the hat variables below assume `B = p*V`.
pub fn twist(ch: &ChernData, b: &ChowClass, model: &FibrationModel) -> Result<TwistedChernData> {
    model.check_shape(b)?;
    let class = ch.to_class(model)?;
    Ok(TwistedChernData {
        components: ChernVector::from_class(&twist_class(&class, b, model)?, model)?,
        twist: b.clone(),
    })
}

fn require_threefold(model: &FibrationModel, what: &str) -> Result<()> {
    if model.is_threefold() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("{what} is only defined on a threefold")))
    }
}

fn check_base(v: &[Rational], model: &FibrationModel, name: &str) -> Result<()> {
    if v.len() == model.base_rank() {
        Ok(())
    } else {
        Err(Error::Dimension(format!(
            "{name} has {} coordinates, base rank is {}",
            v.len(),
            model.base_rank()
        )))
    }
}

fn axpy(a: &Rational, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(xi, yi)| a * xi + yi).collect()
}

/// The pullback B-field `p*V`.
pub fn pullback_field(v: &[Rational], model: &FibrationModel) -> Result<ChowClass> {
    check_base(v, model, "V")?;
    ChowClass::pullback(model, 1, v.to_vec())
}

/// `B̄ = p*V − ½p*K_Y`.
pub fn barred_field(v: &[Rational], model: &FibrationModel) -> Result<ChowClass> {
    check_base(v, model, "V")?;
    let shifted = axpy(&ratio(-1, 2), &model.canonical(), v);
    ChowClass::pullback(model, 1, shifted)
}

/// Cohomological Fourier–Mukai transform on a threefold.
///
/// ```text
/// ch₀(ΦE) = x
/// ch₁(ΦE) = −nΘ + p*(η + ½xK)
/// ch₂(ΦE) = −Θp*(S + ½nK) + (s + ½ηK + ⅛xK²)f − (1/24)xK²f
/// ch₃(ΦE) = −(a + ½SK + ⅛nK²) − (1/24)nK²
/// ```
pub fn fm_transform(ch: &ChernData, model: &FibrationModel) -> Result<ChernData> {
    require_threefold(model, "the Fourier–Mukai transform")?;
    ch.validate(model)?;
    let k = model.canonical();
    let k2 = model.canonical_squared();
    let n = Rational::from_integer(ch.rank.clone());
    let x = Rational::from_integer(ch.section_coeff.clone());
    let half = ratio(1, 2);
    let eighth = ratio(1, 8);
    let twenty_fourth = ratio(1, 24);

    let ch1_base = axpy(&(&half * &x), &k, &ch.ch2_theta);
    let ch2_theta: Vec<Rational> = axpy(&(&half * &n), &k, &ch.ch1_base)
        .into_iter()
        .map(|c| -c)
        .collect();
    let ch2_fiber = &ch.top + &half * model.base_dot(&ch.ch2_theta, &k) + &eighth * &x * &k2
        - &twenty_fourth * &x * &k2;
    let top = -(&ch.ch2_fiber + &half * model.base_dot(&ch.ch1_base, &k) + &eighth * &n * &k2)
        - &twenty_fourth * &n * &k2;

    Ok(ChernData {
        rank: ch.section_coeff.clone(),
        section_coeff: -ch.rank.clone(),
        ch1_base,
        ch2_theta,
        ch2_fiber,
        top,
    })
}

/// `(Ŝ, η̂, â, ŝ)`: the components of `ch^{B̄}(E)` for `B = p*V`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HatData {
    #[serde(rename = "S_hat", with = "crate::rational::serde_rational_vec")]
    pub ch1_base: Vec<Rational>,
    #[serde(rename = "eta_hat", with = "crate::rational::serde_rational_vec")]
    pub ch2_theta: Vec<Rational>,
    #[serde(rename = "a_hat", with = "crate::rational::serde_rational")]
    pub ch2_fiber: Rational,
    #[serde(rename = "s_hat", with = "crate::rational::serde_rational")]
    pub top: Rational,
}

/// Hat variables from their defining formulas, with `K_Y = h·H`:
///
/// ```text
/// Ŝ = S − nV + ½nK
/// η̂ = η − xV + ½xK
/// â = a − SV + ½nV² + ½(S − nV)K + ⅛nK²
/// ŝ = s − ηV + ½xV² + ½(η − xV)K + ⅛xK²
/// ```
pub fn hat(ch: &ChernData, v: &[Rational], model: &FibrationModel) -> Result<HatData> {
    require_threefold(model, "the hat variables")?;
    ch.validate(model)?;
    check_base(v, model, "V")?;
    let k = model.canonical();
    let k2 = model.canonical_squared();
    let n = Rational::from_integer(ch.rank.clone());
    let x = Rational::from_integer(ch.section_coeff.clone());
    let half = ratio(1, 2);
    let eighth = ratio(1, 8);
    let dot = |a: &[Rational], b: &[Rational]| model.base_dot(a, b);

    let s_minus_nv = axpy(&-n.clone(), v, &ch.ch1_base);
    let eta_minus_xv = axpy(&-x.clone(), v, &ch.ch2_theta);
    let ch1_base = axpy(&(&half * &n), &k, &s_minus_nv);
    let ch2_theta = axpy(&(&half * &x), &k, &eta_minus_xv);
    let ch2_fiber = &ch.ch2_fiber - dot(&ch.ch1_base, v)
        + &half * &n * dot(v, v)
        + &half * dot(&s_minus_nv, &k)
        + &eighth * &n * &k2;
    let top = &ch.top - dot(&ch.ch2_theta, v)
        + &half * &x * dot(v, v)
        + &half * dot(&eta_minus_xv, &k)
        + &eighth * &x * &k2;

    Ok(HatData {
        ch1_base,
        ch2_theta,
        ch2_fiber,
        top,
    })
}

/// The expected `ch^B(ΦE)` written in hat variables:
/// `(x; −nΘ + p*η̂; −Θp*Ŝ + ŝf − (1/24)xK²f; −â − (1/24)nK²)`.
pub fn twisted_transform_pattern(
    ch: &ChernData,
    v: &[Rational],
    model: &FibrationModel,
) -> Result<ChernVector> {
    let hats = hat(ch, v, model)?;
    let k2 = model.canonical_squared();
    let n = Rational::from_integer(ch.rank.clone());
    let x = Rational::from_integer(ch.section_coeff.clone());
    let t = ratio(1, 24);
    Ok(ChernVector {
        rank: x.clone(),
        section_coeff: -n.clone(),
        ch1_base: hats.ch2_theta,
        ch2_theta: hats.ch1_base.into_iter().map(|c| -c).collect(),
        ch2_fiber: hats.top - &t * &x * &k2,
        top: -hats.ch2_fiber - &t * &n * &k2,
    })
}

/// `ch^B(ΦE)` computed by transforming then twisting by `B = p*V`, minus
/// [`twisted_transform_pattern`]. Identically zero.
pub fn fm_twist_consistency(
    ch: &ChernData,
    v: &[Rational],
    model: &FibrationModel,
) -> Result<ChernVector> {
    let transformed = fm_transform(ch, model)?;
    let lhs = twist(&transformed, &pullback_field(v, model)?, model)?.components;
    let pattern = twisted_transform_pattern(ch, v, model)?;
    Ok(&lhs - &pattern)
}

/// `−(1/6)·h²d`, the top Chern class of `Φ(O_X)`.
pub fn transformed_structure_sheaf_top(model: &FibrationModel) -> Rational {
    -(model.canonical_squared() / int(6))
}
