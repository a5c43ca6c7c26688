//! Numerical Chow ring of a fibration `p: X → Y` of relative dimension one
//! with a section `Θ`.
//!
//! Every class of degree `k` is written as `Θ·p*α + p*β` with
//! `α ∈ A^{k-1}(Y)` and `β ∈ A^k(Y)`. Products reduce with three rules:
//!
//! * `Θ·Θ = h·Θ·p*H` (adjunction, with `K_Y = h·H`),
//! * `Θ·p*α = Θ·p*α`,
//! * `p*α · p*β = p*(α·β)`, products on `Y` taken through the pairing.
//!
//! `Y` is modelled only in the degrees that occur for `dim X ≤ 3`:
//! `A⁰(Y) = ℚ`, `A¹(Y) = ℚ^m` and, for a surface base, `A²(Y) = ℚ` spanned
//! by the point class (so `p*[pt] = f`). Equality is numerical equivalence,
//! i.e. equality of coordinates.
//!
//! ```
//! use fibcat::chow::{self, ChowClass, FibrationModel};
//! use fibcat::rational::int;
//!
//! let model = FibrationModel::preset(int(-1), int(2)).unwrap();
//! let theta: ChowClass = ChowClass::theta(&model);
//! let cube = chow::power(&theta, 3, &model).unwrap();
//! // Θ³ = h²·d
//! assert_eq!(chow::degree(&cube, &model), int(2));
//! ```

use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::scalar::Scalar;

/// Intersection data of the fibration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModelRepr", into = "ModelRepr")]
pub struct FibrationModel {
    dim_x: usize,
    pairing: Vec<Vec<Rational>>,
    base_h: Vec<Rational>,
    h: Rational,
    d: Rational,
}

impl FibrationModel {
    /// Elliptic threefold over a surface with divisor lattice of rank
    /// `pairing.len()`. `d = Hᵀ·pairing·H` is derived.
    pub fn threefold(
        pairing: Vec<Vec<Rational>>,
        base_h: Vec<Rational>,
        h: Rational,
    ) -> Result<Self> {
        let m = pairing.len();
        if m == 0 {
            return Err(Error::Invalid("base rank must be at least 1".into()));
        }
        if pairing.iter().any(|row| row.len() != m) {
            return Err(Error::Dimension("pairing must be square".into()));
        }
        #[allow(clippy::needless_range_loop)]
        for i in 0..m {
            for j in 0..i {
                if pairing[i][j] != pairing[j][i] {
                    return Err(Error::Invalid("pairing must be symmetric".into()));
                }
            }
        }
        if base_h.len() != m {
            return Err(Error::Dimension(format!(
                "H has {} coordinates, pairing has rank {m}",
                base_h.len()
            )));
        }
        let mut model = FibrationModel {
            dim_x: 3,
            pairing,
            base_h,
            h,
            d: Rational::zero(),
        };
        model.d = model.base_dot(&model.base_h, &model.base_h);
        Ok(model)
    }

    /// Rank-one threefold preset: `A¹(Y) = span{H}` with `H·H = d > 0`.
    pub fn preset(h: Rational, d: Rational) -> Result<Self> {
        if !d.is_positive() {
            return Err(Error::Invalid("preset model needs d > 0".into()));
        }
        Self::threefold(vec![vec![d]], vec![Rational::one()], h)
    }

    /// Elliptic surface over a curve: `H` is the point class, so `p*H = f`
    /// and `Θ² = h` (for a Weierstraß surface `h = -e`).
    pub fn surface(h: Rational) -> Self {
        FibrationModel {
            dim_x: 2,
            pairing: Vec::new(),
            base_h: vec![Rational::one()],
            h,
            d: Rational::zero(),
        }
    }

    pub fn dim_x(&self) -> usize {
        self.dim_x
    }

    pub fn dim_y(&self) -> usize {
        self.dim_x - 1
    }

    pub fn is_threefold(&self) -> bool {
        self.dim_x == 3
    }

    /// Rank `m` of the modelled `A¹(Y)`.
    pub fn base_rank(&self) -> usize {
        self.base_h.len()
    }

    pub fn pairing(&self) -> &[Vec<Rational>] {
        &self.pairing
    }

    /// Coordinates of `H` in `A¹(Y)`.
    pub fn base_h(&self) -> &[Rational] {
        &self.base_h
    }

    pub fn h(&self) -> &Rational {
        &self.h
    }

    /// `H·H` on a surface base; zero for the surface model.
    pub fn d(&self) -> &Rational {
        &self.d
    }

    /// Coordinates of `K_Y`, always read as `h·H`.
    pub fn canonical(&self) -> Vec<Rational> {
        self.base_h.iter().map(|c| c * &self.h).collect()
    }

    /// `K_Y² = h²·d`.
    pub fn canonical_squared(&self) -> Rational {
        &self.h * &self.h * &self.d
    }

    /// Dimension of the modelled `A^j(Y)`.
    pub fn rank(&self, j: usize) -> usize {
        match j {
            0 => 1,
            1 if self.dim_y() >= 1 => self.base_rank(),
            2 if self.dim_y() == 2 => 1,
            _ => 0,
        }
    }

    /// Rank of the `Θ·p*(−)` block in degree `k`.
    fn theta_rank(&self, k: usize) -> usize {
        if k == 0 {
            0
        } else {
            self.rank(k - 1)
        }
    }

    /// Intersection pairing `A¹(Y) × A¹(Y) → ℚ` (threefold only).
    pub fn base_dot<F: Scalar>(&self, a: &[F], b: &[F]) -> F {
        let mut acc = F::zero();
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                let p = &self.pairing[i][j];
                if !p.is_zero() {
                    acc = acc + ai.clone() * bj.clone() * F::from(p.clone());
                }
            }
        }
        acc
    }

    /// Product on `Y` of a degree-`p` and a degree-`q` class.
    fn base_mul<F: Scalar>(&self, p: usize, x: &[F], q: usize, y: &[F]) -> Vec<F> {
        let target = self.rank(p + q);
        if target == 0 || x.is_empty() || y.is_empty() {
            return vec![F::zero(); target];
        }
        if p == 0 {
            y.iter().map(|c| x[0].clone() * c.clone()).collect()
        } else if q == 0 {
            x.iter().map(|c| c.clone() * y[0].clone()).collect()
        } else {
            vec![self.base_dot(x, y)]
        }
    }

    pub fn check_shape<F: Scalar>(&self, c: &ChowClass<F>) -> Result<()> {
        if c.parts.len() != self.dim_x + 1 {
            return Err(Error::ModelMismatch(format!(
                "class of a {}-fold used with a {}-fold model",
                c.parts.len() - 1,
                self.dim_x
            )));
        }
        for (k, part) in c.parts.iter().enumerate() {
            if part.theta.len() != self.theta_rank(k) || part.pull.len() != self.rank(k) {
                return Err(Error::ModelMismatch(format!(
                    "degree-{k} component has shape ({}, {}), model expects ({}, {})",
                    part.theta.len(),
                    part.pull.len(),
                    self.theta_rank(k),
                    self.rank(k)
                )));
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ModelRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dim_x: Option<usize>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "opt_matrix"
    )]
    pairing: Option<Vec<Vec<Rational>>>,
    #[serde(
        rename = "H",
        default,
        skip_serializing_if = "Option::is_none",
        with = "opt_vec"
    )]
    base_h: Option<Vec<Rational>>,
    #[serde(with = "crate::rational::serde_rational")]
    h: Rational,
    #[serde(default, skip_serializing, deserialize_with = "opt_rational::deserialize")]
    d: Option<Rational>,
}

impl TryFrom<ModelRepr> for FibrationModel {
    type Error = Error;

    fn try_from(r: ModelRepr) -> Result<Self> {
        match r.dim_x.unwrap_or(3) {
            2 => {
                if let Some(hv) = &r.base_h {
                    if hv.len() != 1 || !hv[0].is_one() {
                        return Err(Error::Invalid(
                            "surface model: H must be the point class [1]".into(),
                        ));
                    }
                }
                Ok(FibrationModel::surface(r.h))
            }
            3 => match (r.pairing, r.d) {
                (Some(pairing), _) => {
                    let base_h = match r.base_h {
                        Some(v) => v,
                        None if pairing.len() == 1 => vec![Rational::one()],
                        None => return Err(Error::Invalid("missing H".into())),
                    };
                    FibrationModel::threefold(pairing, base_h, r.h)
                }
                (None, Some(d)) => FibrationModel::preset(r.h, d),
                (None, None) => Err(Error::Invalid(
                    "threefold model needs either a pairing or d".into(),
                )),
            },
            other => Err(Error::Invalid(format!("dim_x must be 2 or 3, got {other}"))),
        }
    }
}

impl From<FibrationModel> for ModelRepr {
    fn from(m: FibrationModel) -> Self {
        ModelRepr {
            dim_x: Some(m.dim_x),
            pairing: Some(m.pairing),
            base_h: Some(m.base_h),
            h: m.h,
            d: None,
        }
    }
}

mod opt_matrix {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct M(#[serde(with = "crate::rational::serde_rational_matrix")] Vec<Vec<Rational>>);

    pub fn serialize<S: Serializer>(v: &Option<Vec<Vec<Rational>>>, s: S) -> Result<S::Ok, S::Error> {
        v.clone().map(M).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Vec<Rational>>>, D::Error> {
        Ok(Option::<M>::deserialize(d)?.map(|m| m.0))
    }
}

mod opt_vec {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct V(#[serde(with = "crate::rational::serde_rational_vec")] Vec<Rational>);

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        v.clone().map(V).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
        Ok(Option::<V>::deserialize(d)?.map(|v| v.0))
    }
}

mod opt_rational {
    use super::Rational;
    use serde::{Deserialize, Deserializer};

    #[derive(Deserialize)]
    struct R(#[serde(with = "crate::rational::serde_rational")] Rational);

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Ok(Option::<R>::deserialize(d)?.map(|r| r.0))
    }
}

/// Degree-`k` piece `Θ·p*theta + p*pull`.
#[derive(Debug, Clone, PartialEq)]
pub struct Graded<F> {
    /// Coordinates in `A^{k-1}(Y)`; empty in degree 0.
    pub theta: Vec<F>,
    /// Coordinates in `A^k(Y)`; empty once `k > dim Y`.
    pub pull: Vec<F>,
}

impl<F: Scalar> Graded<F> {
    fn zeros(theta: usize, pull: usize) -> Self {
        Graded {
            theta: vec![F::zero(); theta],
            pull: vec![F::zero(); pull],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.theta.iter().chain(&self.pull).all(Zero::is_zero)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(F, F) -> F) -> Self {
        assert!(
            self.theta.len() == other.theta.len() && self.pull.len() == other.pull.len(),
            "Chow classes from different models"
        );
        let z = |a: &[F], b: &[F]| {
            a.iter()
                .zip(b)
                .map(|(x, y)| op(x.clone(), y.clone()))
                .collect()
        };
        Graded {
            theta: z(&self.theta, &other.theta),
            pull: z(&self.pull, &other.pull),
        }
    }

    fn map(&self, f: impl Fn(&F) -> F) -> Self {
        Graded {
            theta: self.theta.iter().map(&f).collect(),
            pull: self.pull.iter().map(&f).collect(),
        }
    }
}

/// Element of `A*(X)`, all degrees `0..=dim X`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChowClass<F = Rational> {
    parts: Vec<Graded<F>>,
}

impl<F: Scalar> ChowClass<F> {
    pub fn zero(model: &FibrationModel) -> Self {
        ChowClass {
            parts: (0..=model.dim_x)
                .map(|k| Graded::zeros(model.theta_rank(k), model.rank(k)))
                .collect(),
        }
    }

    /// The fundamental class `[X]`.
    pub fn one(model: &FibrationModel) -> Self {
        let mut c = Self::zero(model);
        c.parts[0].pull[0] = F::one();
        c
    }

    /// The section `Θ`.
    pub fn theta(model: &FibrationModel) -> Self {
        let mut c = Self::zero(model);
        c.parts[1].theta[0] = F::one();
        c
    }

    /// `p*H`.
    pub fn pullback_h(model: &FibrationModel) -> Self {
        let base: Vec<F> = model.base_h.iter().cloned().map(F::from).collect();
        Self::pullback(model, 1, base).expect("H has the model's shape")
    }

    /// The fiber class `f = p*[pt_Y]`.
    pub fn fiber(model: &FibrationModel) -> Self {
        let mut c = Self::zero(model);
        c.parts[model.dim_y()].pull[0] = F::one();
        c
    }

    /// The class of a point, `Θ·f`.
    pub fn point(model: &FibrationModel) -> Self {
        let mut c = Self::zero(model);
        c.parts[model.dim_x].theta[0] = F::one();
        c
    }

    /// `p*β` for `β ∈ A^j(Y)`.
    pub fn pullback(model: &FibrationModel, j: usize, base: Vec<F>) -> Result<Self> {
        if j > model.dim_y() || base.len() != model.rank(j) {
            return Err(Error::Dimension(format!(
                "A^{j}(Y) has rank {}, got {} coordinates",
                model.rank(j),
                base.len()
            )));
        }
        let mut c = Self::zero(model);
        c.parts[j].pull = base;
        Ok(c)
    }

    /// `Θ·p*α` for `α ∈ A^j(Y)`.
    pub fn theta_pullback(model: &FibrationModel, j: usize, base: Vec<F>) -> Result<Self> {
        if j > model.dim_y() || base.len() != model.rank(j) {
            return Err(Error::Dimension(format!(
                "A^{j}(Y) has rank {}, got {} coordinates",
                model.rank(j),
                base.len()
            )));
        }
        let mut c = Self::zero(model);
        c.parts[j + 1].theta = base;
        Ok(c)
    }

    /// The divisor `c_theta·Θ + p*base`.
    pub fn make_divisor(c_theta: F, base: Vec<F>, model: &FibrationModel) -> Result<Self> {
        let mut c = Self::pullback(model, 1, base)?;
        c.parts[1].theta[0] = c_theta;
        Ok(c)
    }

    /// `u·Θ + v·p*H`.
    pub fn span_divisor(model: &FibrationModel, u: F, v: F) -> Self {
        Self::theta(model).scale(&u) + Self::pullback_h(model).scale(&v)
    }

    pub fn dim_x(&self) -> usize {
        self.parts.len() - 1
    }

    /// Degree-`k` component; `None` outside `0..=dim X`.
    pub fn part(&self, k: usize) -> Option<&Graded<F>> {
        self.parts.get(k)
    }

    pub fn part_mut(&mut self, k: usize) -> Option<&mut Graded<F>> {
        self.parts.get_mut(k)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Graded::is_zero)
    }

    /// True when only the degree-1 component may be nonzero.
    pub fn is_divisor(&self) -> bool {
        self.parts
            .iter()
            .enumerate()
            .all(|(k, p)| k == 1 || p.is_zero())
    }

    /// The degree-`k` component alone.
    pub fn homogeneous(&self, k: usize) -> Self {
        let mut c = self.clone();
        for (j, p) in c.parts.iter_mut().enumerate() {
            if j != k {
                *p = p.map(|_| F::zero());
            }
        }
        c
    }

    pub fn scale(&self, c: &F) -> Self {
        ChowClass {
            parts: self.parts.iter().map(|p| p.map(|x| x.clone() * c.clone())).collect(),
        }
    }

    /// Coefficient of `Θ` in a divisor.
    pub fn theta_coefficient(&self) -> F {
        self.parts[1].theta[0].clone()
    }

    /// `(u, v)` with `self = u·Θ + v·p*H`, if the class lies in that span.
    pub fn span_coordinates(&self, model: &FibrationModel) -> Option<(F, F)> {
        if !self.is_divisor() {
            return None;
        }
        let u = self.theta_coefficient();
        let base = &self.parts[1].pull;
        let pivot = model.base_h.iter().position(|c| !c.is_zero())?;
        let v = base[pivot].scale(&model.base_h[pivot].recip());
        let matches = base
            .iter()
            .zip(&model.base_h)
            .all(|(b, hc)| *b == v.scale(hc));
        matches.then_some((u, v))
    }
}

impl ChowClass<Rational> {
    /// The same class with coefficients in a larger field.
    pub fn lift<F: Scalar>(&self) -> ChowClass<F> {
        ChowClass {
            parts: self
                .parts
                .iter()
                .map(|p| Graded {
                    theta: p.theta.iter().cloned().map(F::from).collect(),
                    pull: p.pull.iter().cloned().map(F::from).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GradedRepr {
    #[serde(default, with = "crate::rational::serde_rational_vec")]
    theta: Vec<Rational>,
    #[serde(default, with = "crate::rational::serde_rational_vec")]
    pull: Vec<Rational>,
}

/// JSON form: one `{theta, pull}` object per degree, degree 0 first. Shapes
/// are checked against a model with [`FibrationModel::check_shape`].
impl Serialize for ChowClass<Rational> {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<GradedRepr> = self
            .parts
            .iter()
            .map(|p| GradedRepr {
                theta: p.theta.clone(),
                pull: p.pull.clone(),
            })
            .collect();
        parts.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ChowClass<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<GradedRepr>::deserialize(de)?;
        if parts.is_empty() {
            return Err(serde::de::Error::custom("a class needs at least degree 0"));
        }
        Ok(ChowClass {
            parts: parts
                .into_iter()
                .map(|p| Graded {
                    theta: p.theta,
                    pull: p.pull,
                })
                .collect(),
        })
    }
}

impl<F: Scalar> Add for ChowClass<F> {
    type Output = ChowClass<F>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<F: Scalar> Add for &ChowClass<F> {
    type Output = ChowClass<F>;
    fn add(self, rhs: Self) -> ChowClass<F> {
        assert_eq!(self.parts.len(), rhs.parts.len(), "Chow classes from different models");
        ChowClass {
            parts: self
                .parts
                .iter()
                .zip(&rhs.parts)
                .map(|(a, b)| a.zip_with(b, |x, y| x + y))
                .collect(),
        }
    }
}

impl<F: Scalar> Sub for ChowClass<F> {
    type Output = ChowClass<F>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<F: Scalar> Sub for &ChowClass<F> {
    type Output = ChowClass<F>;
    fn sub(self, rhs: Self) -> ChowClass<F> {
        assert_eq!(self.parts.len(), rhs.parts.len(), "Chow classes from different models");
        ChowClass {
            parts: self
                .parts
                .iter()
                .zip(&rhs.parts)
                .map(|(a, b)| a.zip_with(b, |x, y| x - y))
                .collect(),
        }
    }
}

impl<F: Scalar> Neg for ChowClass<F> {
    type Output = ChowClass<F>;
    fn neg(self) -> Self {
        ChowClass {
            parts: self.parts.iter().map(|p| p.map(|x| -x.clone())).collect(),
        }
    }
}

fn add_into<F: Scalar>(acc: &mut [F], v: Vec<F>) {
    for (a, x) in acc.iter_mut().zip(v) {
        *a = a.clone() + x;
    }
}

/// Product in `A*(X)`. Components above degree `dim X` vanish.
pub fn mul<F: Scalar>(a: &ChowClass<F>, b: &ChowClass<F>, model: &FibrationModel) -> Result<ChowClass<F>> {
    model.check_shape(a)?;
    model.check_shape(b)?;
    let n = model.dim_x;
    let h_times_h: Vec<F> = model.canonical().into_iter().map(F::from).collect();
    let mut out = ChowClass::zero(model);
    for (i, ai) in a.parts.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.parts.iter().enumerate().take(n + 1 - i) {
            if bj.is_zero() {
                continue;
            }
            let target = &mut out.parts[i + j];
            if i >= 1 && j >= 1 {
                // Θ·Θ·p*(α₁α₂) = Θ·p*(hH·α₁α₂)
                let prod = model.base_mul(i - 1, &ai.theta, j - 1, &bj.theta);
                add_into(&mut target.theta, model.base_mul(1, &h_times_h, i + j - 2, &prod));
            }
            if i >= 1 {
                add_into(&mut target.theta, model.base_mul(i - 1, &ai.theta, j, &bj.pull));
            }
            if j >= 1 {
                add_into(&mut target.theta, model.base_mul(i, &ai.pull, j - 1, &bj.theta));
            }
            add_into(&mut target.pull, model.base_mul(i, &ai.pull, j, &bj.pull));
        }
    }
    Ok(out)
}

/// Degree of the top-dimensional component, `∫_X c`.
///
/// Panics if `c` does not come from `model`.
pub fn degree<F: Scalar>(c: &ChowClass<F>, model: &FibrationModel) -> F {
    assert_eq!(c.dim_x(), model.dim_x, "class and model disagree on dim X");
    c.parts[model.dim_x].theta[0].clone()
}

pub fn power<F: Scalar>(c: &ChowClass<F>, n: u32, model: &FibrationModel) -> Result<ChowClass<F>> {
    model.check_shape(c)?;
    let mut acc = ChowClass::one(model);
    for _ in 0..n {
        acc = mul(&acc, c, model)?;
    }
    Ok(acc)
}

/// Product of several classes.
pub fn product<F: Scalar>(classes: &[ChowClass<F>], model: &FibrationModel) -> Result<ChowClass<F>> {
    classes
        .iter()
        .try_fold(ChowClass::one(model), |acc, c| mul(&acc, c, model))
}

/// Degree of the product of exactly `dim X` divisors.
pub fn intersection_number<F: Scalar>(divisors: &[ChowClass<F>], model: &FibrationModel) -> Result<F> {
    if divisors.len() != model.dim_x {
        return Err(Error::Dimension(format!(
            "need {} divisors, got {}",
            model.dim_x,
            divisors.len()
        )));
    }
    if let Some(i) = divisors.iter().position(|c| !c.is_divisor()) {
        return Err(Error::Invalid(format!("argument {i} is not a divisor")));
    }
    Ok(degree(&product(divisors, model)?, model))
}
